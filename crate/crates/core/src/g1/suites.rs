use nalgebra as na;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::killing::{killing_check, killing_defect, top_degree_defect};
use super::G1Context;
use crate::curvature::{bianchi_b1, decompose_hermitian_curvature, ring_embed, tilde_embed, CurvatureLike};
use crate::error::{Error, Result};
use crate::forms::{
    bul, calj, j_vector, jj, kahler_form, lefschetz, lefschetz_adjoint, proj, pull_j, unit, Form, FormMap,
};
use crate::hermitian::GHComponent;
use crate::model::{ext_d, HomogeneousModel, InvariantConnection};
use crate::report::ResidualReport;

pub const SUITES: [&str; 5] = ["g1", "curvature", "w1w4", "killing", "product"];

/// Runs a named suite. `product` is evaluated on ψ⁻.
pub fn run_suite(name: &str, model: &HomogeneousModel, tol: f64) -> Result<ResidualReport> {
    let ctx = G1Context::new(model, tol)?;
    match name {
        "g1" => Ok(g1_identity_suite(&ctx)),
        "curvature" => curvature_suite(&ctx),
        "w1w4" => w1w4_suite(&ctx),
        "killing" => killing_suite(&ctx),
        "product" => product_rule_suite(&ctx, &ctx.torsion.psi_minus),
        other => Err(Error::Input(format!("unknown suite `{other}` (expected one of {})", SUITES.join(", ")))),
    }
}

fn report(ctx: &G1Context, suite: &str) -> ResidualReport {
    ResidualReport::new(suite, ctx.model.name(), ctx.model.digest())
}

/// [d_D,·] identities on seeded random forms of degree ≤ 4:
/// [𝒥,d_D] = (−1)^p Jd_DJ, [𝒥,d*_D] = (−1)^p Jd*_DJ,
/// Defects over random forms of degree ≤ 4 of [𝒥,d_D] = (−1)^p Jd_DJ,
/// [𝒥,d*_D] = (−1)^p Jd*_DJ, [d_D,L*] = (−1)^{p+1} Jd*_DJ and
/// [d*_D,L] = (−1)^p Jd_DJ, followed by the last two with the opposite sign.
pub fn kahler_identity_defects(conn: &InvariantConnection, seed: u64) -> [f64; 6] {
    let n = conn.model().dim_m();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = [0.0f64; 6];
    for p in 1..=4.min(n) {
        let phi = Form::random(&mut rng, n, p);
        let s = if p % 2 == 0 { 1.0 } else { -1.0 };
        let d = |f: &Form| conn.d(f);
        let ds = |f: &Form| conn.codiff(f);
        let lhs = calj(&d(&phi)) - d(&calj(&phi));
        out[0] = out[0].max(lhs.dist(&pull_j(&d(&pull_j(&phi))).scaled(s)));
        let lhs = calj(&ds(&phi)) - ds(&calj(&phi));
        out[1] = out[1].max(lhs.dist(&pull_j(&ds(&pull_j(&phi))).scaled(s)));
        if p >= 2 {
            let lhs = d(&lefschetz_adjoint(&phi)) - lefschetz_adjoint(&d(&phi));
            let rhs = pull_j(&ds(&pull_j(&phi)));
            out[2] = out[2].max(lhs.dist(&rhs.scaled(-s)));
            out[4] = out[4].max(lhs.dist(&rhs.scaled(s)));
        }
        if p + 2 <= n {
            let lhs = ds(&lefschetz(&phi)) - lefschetz(&ds(&phi));
            let rhs = pull_j(&d(&pull_j(&phi)));
            out[3] = out[3].max(lhs.dist(&rhs.scaled(s)));
            out[5] = out[5].max(lhs.dist(&rhs.scaled(-s)));
        }
    }
    out
}

fn d_of_tensor(conn: &InvariantConnection, nmap: &FormMap) -> f64 {
    (0..nmap.dim()).map(|i| conn.deriv_map(i, nmap).norm()).fold(0.0, f64::max)
}

/// Torsion identities of a 𝒢₁ structure and their differential consequences.
pub fn g1_identity_suite(ctx: &G1Context) -> ResidualReport {
    let tol = ctx.tol;
    let n = ctx.dim();
    let mut r = report(ctx, "g1");
    let td = &ctx.torsion;
    let d = &ctx.d;
    let w = kahler_form(n);
    let t = &td.t;
    let jt = ctx.jt();
    let psi = &td.psi_plus;
    let psim = &td.psi_minus;
    let tdd = &td.td;

    r.check("dω two routes", "dω = a(∇ω)", ext_d(ctx.model, &w).dist(&ctx.point.d_omega()), tol);
    r.check("jet1", "2∇_Xω = −N^J_{JX} + X⌟dω + JX⌟Jdω", ctx.point.jet1_defect(), tol);
    for (name, res) in &td.checks {
        r.check(name, name, *res, tol);
    }
    r.check("𝒢₁ quadratic form", "(∇_{JX}J)JX = (∇_XJ)X", ctx.point.g1_quadratic_defect(), tol);
    r.check("D metric and Hermitian", "Dg = 0, Dω = 0", d.hermitian_defect(), tol);
    r.check("torsion of D", "T^D(X,Y) = D_XY − D_YX − [X,Y]", d.torsion_defect(tdd), tol);
    r.check("2ζ = T^D", "2ζ_X = X⌟T^D", ctx.zeta.scaled(2.0).dist(&FormMap::contraction_of(tdd)), tol);

    let mut comp: f64 = 0.0;
    for phi in [tdd, psi, t] {
        comp = comp.max(d.d(phi).dist(&(ext_d(ctx.model, phi) - bul(tdd, phi))));
    }
    r.check("comparison formula", "d_Dφ = dφ − T^D∙φ", comp, tol);

    let rd = d.curvature();
    let dtd = ext_d(ctx.model, tdd);
    let b1 = FormMap::from_fn(n, 3, |i| d.deriv(i, tdd) + dtd.contract_basis(i).scaled(0.5));
    r.check("Bianchi for D", "b₁(R^D)_X = D_XT^D + ½X⌟dT^D", bianchi_b1(&rd).dist(&b1), tol);
    r.check("R^D Hermitian values", "R^D(X,Y) ∈ λ^{1,1}", rd.value_slot_11_defect(), tol);

    let dt = d.d(t);
    let dpsi = d.d(psi);
    r.check("∂_D t", "∂_D t = 0", proj(&dt, 2, 2).norm(), tol);
    let lhs = proj(&dpsi, 1, 3).scaled(3.0) + proj(&dt, 1, 3).scaled(2.0);
    let rhs = bul(t, &jt).scaled(-4.0) - proj(&bul(&jt, psi), 1, 3).scaled(4.0);
    r.check("∂_Dψ⁺ and ∂̄_D t", "3∂_Dψ⁺ + 2∂̄_Dt = −4(t∙Jt) − 4(Jt∙ψ⁺)_{λ^{1,3}}", lhs.dist(&rhs), tol);
    let rhs = proj(&bul(&jt, psi), 0, 4).scaled(-8.0 / 3.0);
    r.check("∂̄_Dψ⁺", "∂̄_Dψ⁺ = −(8/3)(Jt∙ψ⁺)_{λ⁴}", proj(&dpsi, 0, 4).dist(&rhs), tol);
    r.check("ψ⁻∙t against Jt∙ψ⁺", "J(ψ⁻∙t) = Jt∙ψ⁺", pull_j(&bul(psim, t)).dist(&bul(&jt, psi)), tol);

    let main = FormMap::from_fn(n, 3, |i| d.deriv(i, psim) + proj(&dtd.contract_basis(i), 0, 3).scaled(0.5));
    r.check("D ψ⁻ from dT^D", "D_Xψ⁻ = −½(X⌟dT^D)_{λ³}", main.norm(), tol);
    r.check("ψ⁻ Hermitian Killing", "D_Xψ⁻ = (X⌟A)_{λ³}, A = ∂ψ⁻ + ¼∂̄ψ⁻", killing_defect(d, psim).1, tol);
    r.check("𝒥ψ⁻ Hermitian Killing", "D_X𝒥ψ⁻ = (X⌟A)_{λ³}", killing_defect(d, &calj(psim)).1, tol);

    let dnj = d_of_tensor(d, &td.nj);
    let lam22_off = dtd.dist(&proj(&dtd, 2, 2));
    let dd_psi = dpsi.norm();
    r.note("|DN_J|", "DN_J", dnj, tol);
    r.note("dT^D off λ^{2,2}", "(dT^D)_{λ^{1,3}⊕λ⁴}", lam22_off, tol);
    r.implies("DN_J = 0 ⇒ dT^D ∈ λ^{2,2}", "DN_J = 0 ⇒ dT^D ∈ λ^{2,2}", dnj, lam22_off, tol);
    r.implies("dT^D ∈ λ^{2,2} ⇒ DN_J = 0", "dT^D ∈ λ^{2,2} ⇒ DN_J = 0", lam22_off, dnj, tol);
    r.implies("dT^D ∈ λ^{2,2} ⇒ d_Dψ⁺ = 0", "dT^D ∈ λ^{2,2} ⇒ d_Dψ⁺ = 0", lam22_off, dd_psi, tol);
    r.implies("d_Dψ⁺ = 0 ⇒ dT^D ∈ λ^{2,2}", "d_Dψ⁺ = 0 ⇒ dT^D ∈ λ^{2,2}", dd_psi, lam22_off, tol);

    let [dt_j, dts_j, kid1, kid2, kid1_alt, kid2_alt] = kahler_identity_defects(d, 7);
    r.check("𝒥 and d_D", "[𝒥, d_D] = (−1)^p Jd_DJ", dt_j, tol);
    r.check("𝒥 and d*_D", "[𝒥, d*_D] = (−1)^p Jd*_DJ", dts_j, tol);
    r.check("Kähler identity L*", "[d_D, L*] = (−1)^{p+1} Jd*_DJ", kid1, tol);
    r.check("Kähler identity L", "[d*_D, L] = (−1)^p Jd_DJ", kid2, tol);
    r.note("Kähler identity L*, opposite sign", "[d_D, L*] = (−1)^p Jd*_DJ", kid1_alt, tol);
    r.note("Kähler identity L, opposite sign", "[d*_D, L] = (−1)^{p+1} Jd_DJ", kid2_alt, tol);
    r
}

/// (A ⊗ B)(X,Y) = A(X,Y) B.
fn tensor2(a: &Form, b: &Form) -> CurvatureLike {
    CurvatureLike::from_pairs(a.dim(), |i, j| b.scaled(a.get(&[i, j])))
}

/// Curvature of D split as R^K + Ω̂ + ½R^a + R^m with γ = −½DT^D, compared
/// with the closed forms in the torsion.
pub fn curvature_suite(ctx: &G1Context) -> Result<ResidualReport> {
    let tol = ctx.tol;
    let n = ctx.dim();
    let mut r = report(ctx, "curvature");
    let d = &ctx.d;
    let td = &ctx.torsion;
    let t = &td.t;
    let jt = ctx.jt();
    let psim = &td.psi_minus;
    let rd = d.curvature();
    let gamma = d.deriv_all(&td.td).scaled(-0.5);
    let dec = decompose_hermitian_curvature(&rd, &gamma, tol)?;
    for (name, res) in &dec.checks {
        r.check(&format!("split: {name}"), name, *res, tol);
    }

    let djt = d.d(&jt);
    let del_jt = proj(&djt, 2, 2);
    let delbar_jt = proj(&djt, 1, 3);
    let del_psim = proj(&d.d(psim), 1, 3);
    let omega = del_jt.scaled(1.5) + proj(&bul(&jt, &jt), 2, 2).scaled(2.0) + bul(psim, psim).scaled(0.5);
    r.check("Ω in the torsion", "Ω = (3/2)∂_D(Jt) + 2(Jt∙Jt)_{λ^{2,2}} + ½ψ⁻∙ψ⁻", dec.omega.dist(&omega), tol);
    let dtd = ext_d(ctx.model, &td.td);
    r.check("λ^{2,2} part of dT^D", "½(dT^D)_{λ^{2,2}} = Ω − ½∂_D(Jt)", proj(&dtd, 2, 2).scaled(0.5).dist(&(&dec.omega - del_jt.scaled(0.5))), tol);

    let ra_b1 = FormMap::from_fn(n, 3, |i| {
        let x = unit(n, i);
        d.deriv(i, &jt) - d.deriv_at(&j_vector(&x), t) - del_jt.contract(&x).scaled(0.5)
    });
    r.check("Bianchi of R^a", "½(b₁R^a)_X = D_X(Jt) − D_{JX}t − ½X⌟∂_D(Jt)", bianchi_b1(&dec.ra).scaled(0.5).dist(&ra_b1), tol);
    let rm_b1 = FormMap::from_fn(n, 3, |i| {
        let x = unit(n, i);
        let jx = j_vector(&x);
        let corr = calj(&del_psim).contract(&jx) - del_psim.contract(&x).scaled(2.0);
        d.deriv(i, &jt) + d.deriv_at(&jx, t) + corr.scaled(0.25)
    });
    r.check("Bianchi of R^m", "(b₁R^m)_X = D_X(Jt) + D_{JX}t + ¼(JX⌟𝒥∂_Dψ⁻ − 2X⌟∂_Dψ⁻)", bianchi_b1(&dec.rm).dist(&rm_b1), tol);

    let herm = rd.dist(&rd.precompose_j());
    let cond1 = (0..n)
        .map(|i| {
            let x = unit(n, i);
            let lhs = d.deriv_at(&j_vector(&x), t) + d.deriv(i, &jt);
            lhs.dist(&proj(&delbar_jt.contract(&x), 1, 2).scaled(2.0 / 3.0))
        })
        .fold(0.0, f64::max);
    let cond2 = delbar_jt.scaled(2.0).dist(&del_psim.scaled(3.0));
    r.note("R^D J-invariance defect", "R^D(JX,JY) = R^D(X,Y)", herm, tol);
    r.note("Hermitian curvature condition 1", "D_{JX}t + D_X(Jt) = (2/3)(X⌟∂̄_D(Jt))_{λ^{1,2}}", cond1, tol);
    r.note("Hermitian curvature condition 2", "2∂̄_D(Jt) = 3∂_Dψ⁻", cond2, tol);
    r.implies("R^D Hermitian ⇒ conditions", "R^D(J,J) = R^D ⇒ both conditions", herm, cond1.max(cond2), tol);
    r.implies("conditions ⇒ R^D Hermitian", "both conditions ⇒ R^D(J,J) = R^D", cond1.max(cond2), herm, tol);

    if ctx.class.norms[2] <= tol && n >= 4 {
        w1w4_curvature(ctx, &mut r, &dec.omega, &dec.ra, &dec.rm)?;
    }
    Ok(r)
}

fn w1w4_curvature(ctx: &G1Context, r: &mut ResidualReport, omega: &Form, ra: &CurvatureLike, rm: &CurvatureLike) -> Result<()> {
    let tol = ctx.tol;
    let n = ctx.dim();
    let d = &ctx.d;
    let w = kahler_form(n);
    let theta = ctx.theta();
    let jtheta = pull_j(&theta);
    let psim = &ctx.torsion.psi_minus;
    let djth = d.d(&jtheta);
    let del = proj(&djth, 1, 1);
    let delbar = proj(&djth, 0, 2);
    let del_psim = proj(&d.d(psim), 1, 3);

    let jt = ctx.jt();
    let sq = theta.dot(&theta);
    let jtjt = proj(&bul(&jt, &jt), 2, 2);
    let wtj = w.wedge(&theta).wedge(&jtheta);
    let ww = w.wedge(&w).scaled(sq);
    r.check("Jt∙Jt for t = θ∧ω", "(Jt∙Jt)_{λ^{2,2}} = |θ|²ω∧ω + 2ω∧θ∧Jθ", jtjt.dist(&(&ww + &wtj.scaled(2.0))), tol);
    r.note("Jt∙Jt, opposite sign", "(Jt∙Jt)_{λ^{2,2}} = |θ|²ω∧ω − 2ω∧θ∧Jθ", jtjt.dist(&(&ww - &wtj.scaled(2.0))), tol);
    let base = del.scaled(1.5) + w.scaled(2.0 * sq);
    let tj = theta.wedge(&jtheta).scaled(4.0);
    let psq = bul(psim, psim).scaled(0.5);
    let om = (&base + &tj).wedge(&w) + &psq;
    r.check("W1+W4: Ω", "Ω = [(3/2)∂_D(Jθ) + 2|θ|²ω + 4θ∧Jθ]∧ω + ½ψ⁻∙ψ⁻", omega.dist(&om), tol);
    let om_alt = (&base - &tj).wedge(&w) + &psq;
    r.note("W1+W4: Ω, opposite sign", "Ω = [(3/2)∂_D(Jθ) + 2|θ|²ω − 4θ∧Jθ]∧ω + ½ψ⁻∙ψ⁻", omega.dist(&om_alt), tol);
    let ra_want = tensor2(&del, &w).sub(&tensor2(&w, &del));
    r.check("W1+W4: R^a", "R^a = ∂_D(Jθ)⊗ω − ω⊗∂_D(Jθ)", ra.dist(&ra_want), tol);

    let q = (0..n)
        .map(|i| {
            let x = unit(n, i);
            (d.deriv(i, &jtheta) - d.deriv_at(&j_vector(&x), &theta)).dist(&del.contract(&x))
        })
        .fold(0.0, f64::max);
    r.check("W1+W4: first derivative split", "D_X(Jθ) − D_{JX}θ = X⌟∂_D(Jθ)", q, tol);

    // D̊(Jθ)(X,Y) = ½((D_XJθ)Y + (D_YJθ)X) and S_θ = (1 − J)D̊(Jθ)
    let sym = na::DMatrix::from_fn(n, n, |a, b| 0.5 * (d.deriv(a, &jtheta).get(&[b]) + d.deriv(b, &jtheta).get(&[a])));
    let j = crate::forms::standard_j_matrix(n);
    let s_theta = &sym - j.transpose() * &sym * &j;
    let s2 = (0..n)
        .map(|i| {
            let x = unit(n, i);
            let lhs = d.deriv(i, &jtheta) + d.deriv_at(&j_vector(&x), &theta);
            let sx = Form::covector(&crate::curvature::tensor::mat_vec(&s_theta, &x));
            lhs.dist(&(delbar.contract(&x) + sx))
        })
        .fold(0.0, f64::max);
    r.check("W1+W4: symmetric derivative", "D_X(Jθ) + D_{JX}θ = X⌟∂̄_D(Jθ) + S_θX", s2, tol);
    let rm_want = tensor2(&delbar, &w).scaled(-1.0).add(&ring_embed(&s_theta, 1e-8)?).sub(&tilde_embed(&del_psim, 1e-8)?);
    r.check("W1+W4: R^m", "R^m = −∂̄_D(Jθ)⊗ω + S̊_θ − (∂_Dψ⁻)~", rm.dist(&rm_want), tol);
    Ok(())
}

fn require_w1w4(ctx: &G1Context) -> Result<()> {
    if ctx.class.has(GHComponent::W3) {
        return Err(Error::ClassMismatch(format!(
            "W1+W4 suite needs t = θ∧ω, but |t − θ∧ω| = {:.3e}",
            ctx.class.norms[2]
        )));
    }
    Ok(())
}

/// Differential relations of the class W₁+W₄, where t = θ∧ω.
pub fn w1w4_suite(ctx: &G1Context) -> Result<ResidualReport> {
    require_w1w4(ctx)?;
    let tol = ctx.tol;
    let n = ctx.dim();
    let m = n / 2;
    let mut r = report(ctx, "w1w4");
    let d = &ctx.d;
    let w = kahler_form(n);
    let theta = ctx.theta();
    let jtheta = pull_j(&theta);
    let psi = &ctx.torsion.psi_plus;
    let psim = &ctx.torsion.psi_minus;
    let dth = d.d(&theta);
    let dpsi = d.d(psi);
    r.check("∂_Dθ", "∂_Dθ = 0", proj(&dth, 1, 1).norm(), tol);
    let rhs = (jtheta.wedge(psim) + theta.wedge(psi)).scaled(2.0)
        + (proj(&dth, 0, 2) - psim.contract(&theta.to_vector()).scaled(2.0)).wedge(&w).scaled(2.0 / 3.0);
    r.note(
        "∂_Dψ⁺ in terms of θ",
        "−∂_Dψ⁺ = 2(Jθ∧ψ⁻ + θ∧ψ⁺) + (2/3)(∂̄_Dθ − 2θ⌟ψ⁻)∧ω",
        (-proj(&dpsi, 1, 3)).dist(&rhs),
        tol,
    );
    let rhs = theta.wedge(psi) - jtheta.wedge(psim);
    r.check("∂̄_Dψ⁺", "¼∂̄_Dψ⁺ = θ∧ψ⁺ − Jθ∧ψ⁻", proj(&dpsi, 0, 4).scaled(0.25).dist(&rhs), tol);

    let codw = ctx.lc.codiff(&w);
    let k = (m as f64) - 1.0;
    r.check("Lee form from d*ω", "d*ω = 2(m−1)Jθ", codw.dist(&jtheta.scaled(2.0 * k)), tol);
    r.note("Lee form, printed constant", "(m−1)Jθ = d*ω", codw.dist(&jtheta.scaled(k)), tol);
    r.check("Jθ coclosed", "d*(Jθ) = 0", ctx.lc.codiff(&jtheta).as_scalar().abs(), tol);
    Ok(r)
}

/// Hermitian Killing certificates for the torsion forms.
pub fn killing_suite(ctx: &G1Context) -> Result<ResidualReport> {
    let tol = ctx.tol;
    let mut r = report(ctx, "killing");
    let psim = &ctx.torsion.psi_minus;
    if psim.norm() > tol {
        let c = killing_check(ctx, psim, tol)?;
        r.check("ψ⁻ certificate", "D_Xψ⁻ = (X⌟A)_{λ³}, A = ∂ψ⁻ + ¼∂̄ψ⁻", c.defect, tol);
        r.check("𝒥ψ⁻ certificate", "𝒥φ Killing when φ is", c.jphi_defect, tol);
        r.check("middle characterisation", "D_{JX}φ + D_X𝕁φ = (2/(p+1)) X⌟∂̄_D𝕁φ", c.middle_defect, tol);
        r.check("J-twisted derivative", "D_{JX}φ − D_X𝕁φ = −2(X⌟∂_D𝕁φ)_{λ^p}", c.lemma_defect, tol);
        if ctx.dim() == 6 {
            r.check("top degree", "|φ|²Dφ = ½d|φ|²⊗φ + ½Jd|φ|²⊗𝕁φ", top_degree_defect(&ctx.d, psim), tol);
        }
    }
    let theta = ctx.theta();
    if theta.norm() > tol {
        let c = killing_check(ctx, &pull_j(&theta), tol)?;
        r.note("Jθ Killing test", "D_X(Jθ) = X⌟½d_D(Jθ)", c.defect, tol);
        r.check("J-twisted derivative on Jθ", "D_{JX}φ − D_X𝕁φ = −2(X⌟∂_D𝕁φ)_{λ^p}", c.lemma_defect, tol);
    }
    Ok(r)
}

/// Smallest singular value of X ↦ X⌟φ.
pub fn nondegeneracy(phi: &Form) -> f64 {
    let n = phi.dim();
    let cols: Vec<na::DVector<f64>> =
        (0..n).map(|i| na::DVector::from_column_slice(phi.contract_basis(i).coeffs())).collect();
    let m = na::DMatrix::from_columns(&cols);
    let g = m.transpose() * &m;
    g.symmetric_eigenvalues().min().max(0.0).sqrt()
}

/// Exterior product rules satisfied by Hermitian Killing forms in λ^p, p odd.
pub fn product_rule_suite(ctx: &G1Context, phi: &Form) -> Result<ResidualReport> {
    let p = phi.degree();
    if p < 3 || p % 2 == 0 {
        return Err(Error::Degree { op: "product_rule_suite (needs odd p ≥ 3)", degree: p });
    }
    let tol = ctx.tol;
    let mut r = report(ctx, "product");
    let d = &ctx.d;
    let cert = killing_check(ctx, phi, tol)?;
    let jphi = jj(phi);
    let c = 2.0 / (p + 1) as f64;
    let delbar = proj(&d.d(&jphi), 0, p + 1);
    let lhs = d.codiff(&phi.wedge(&jphi));
    let rhs = d.codiff(phi).wedge(&jphi) - phi.wedge(&d.codiff(&jphi)) - bul(phi, &delbar).scaled(c);
    let rule1 = lhs.dist(&rhs);
    let lhs = -d.d(&bul(phi, phi));
    let rhs = bul(&d.d(phi), phi) + bul(&d.d(&jphi), &jphi) - pull_j(&bul(phi, &delbar)).scaled(c);
    let rule2 = lhs.dist(&rhs);
    let sigma = nondegeneracy(phi);
    let nondeg = sigma > 1e-6 * (1.0 + phi.norm());

    r.note("Killing defect", "D_Xφ = (X⌟A)_{λ^p}", cert.defect, tol);
    r.note("codifferential rule", "d*_D(φ∧𝕁φ) = d*_Dφ∧𝕁φ − φ∧d*_D𝕁φ − (2/(p+1))φ∙∂̄_D𝕁φ", rule1, tol);
    r.note("bullet rule", "−d_D(φ∙φ) = d_Dφ∙φ + d_D𝕁φ∙𝕁φ − (2/(p+1))J(φ∙∂̄_D𝕁φ)", rule2, tol);
    r.note("L*(φ∧𝕁φ) = −φ∙φ", "L*(φ∧𝕁φ) = −φ∙φ", lefschetz_adjoint(&phi.wedge(&jphi)).dist(&-bul(phi, phi)), tol);
    r.note("degenerate flag", "1 when X ↦ X⌟φ is not injective", if nondeg { 0.0 } else { 1.0 }, 0.5);
    r.implies("Killing ⇒ codifferential rule", "Killing ⇒ rule", cert.defect, rule1, tol);
    r.implies("Killing ⇒ bullet rule", "Killing ⇒ rule", cert.defect, rule2, tol);
    let gate = |rule: f64| if nondeg { rule } else { f64::INFINITY };
    r.implies("codifferential rule, nondegenerate ⇒ Killing", "rule ∧ nondegenerate ⇒ Killing", gate(rule1), cert.defect, tol);
    r.implies("bullet rule, nondegenerate ⇒ Killing", "rule ∧ nondegenerate ⇒ Killing", gate(rule2), cert.defect, tol);
    Ok(r)
}
