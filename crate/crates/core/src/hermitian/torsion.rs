use super::{nijenhuis, AHPoint};
use crate::curvature::decompose::Checks;
use crate::error::{Error, Result};
use crate::forms::{calj, j_vector, kahler_form, lefschetz_adjoint, proj, pull_j, unit, Form, FormMap};

/// Intrinsic torsion of a point of class 𝒢₁, split by bidegree.
#[derive(Clone, Debug)]
pub struct TorsionData {
    pub dw: Form,
    pub dw12: Form,
    pub dw3: Form,
    pub t: Form,
    pub psi_plus: Form,
    pub psi_minus: Form,
    pub nj: FormMap,
    pub nj_hat: FormMap,
    pub td: Form,
    pub theta: Option<Form>,
    pub checks: Checks,
}

/// ψ(JX, Y, Z) built slot by slot.
fn first_slot_j(psi: &Form) -> Form {
    let n = psi.dim();
    let mut out = Form::zero(n, 3);
    for a in 0..n {
        let ja = j_vector(&unit(n, a));
        let c = psi.contract(&ja);
        for b in 0..n {
            for k in b + 1..n {
                if a < b {
                    out.add_term(&[a, b, k], c.get(&[b, k]));
                }
            }
        }
    }
    out
}

/// Splits dω into t = ½d^{1,2}ω and ψ⁺ = ⅓d³ω and assembles T^D = 2Jt + ψ⁻.
pub fn torsion_data(pt: &AHPoint, tol: f64) -> Result<TorsionData> {
    let n = pt.dim();
    let (nj, nj_hat) = nijenhuis(pt);
    let hat = nj_hat.norm();
    if hat > tol * (1.0 + nj.norm()) {
        return Err(Error::NotG1(hat));
    }
    let dw = pt.d_omega();
    let dw12 = proj(&dw, 1, 2);
    let dw3 = proj(&dw, 3, 0);
    let t = dw12.scaled(0.5);
    let psi_plus = dw3.scaled(1.0 / 3.0);
    let psi_minus = first_slot_j(&psi_plus);
    let jt = pull_j(&t);
    let td = jt.scaled(2.0) + &psi_minus;
    let theta = if pt.m() > 1 { Some(lee_form(&t)?.0) } else { None };

    let g1 = FormMap::from_fn(n, 2, |i| {
        let x = unit(n, i);
        t.contract(&x) + jt.contract(&j_vector(&x)) + psi_plus.contract(&x)
    });
    let checks = vec![
        ("dω = d¹²ω + d³ω", dw.dist(&(&dw12 + &dw3))),
        ("dω = 2t + 3ψ⁺", dw.dist(&(t.scaled(2.0) + psi_plus.scaled(3.0)))),
        ("ψ⁻ = −Jψ⁺", psi_minus.dist(&-pull_j(&psi_plus))),
        ("ψ⁻ = ⅓𝒥ψ⁺", psi_minus.dist(&calj(&psi_plus).scaled(1.0 / 3.0))),
        ("N^J = (4/3)·Jd³ω", nj.dist(&FormMap::contraction_of(&pull_j(&dw3)).scaled(4.0 / 3.0))),
        ("∇ω = X⌟t + JX⌟Jt + X⌟ψ⁺", pt.nabla_omega().dist(&g1)),
    ];
    Ok(TorsionData { dw, dw12, dw3, t, psi_plus, psi_minus, nj, nj_hat, td, theta, checks })
}

/// Lee form θ of t ∈ λ^{1,2} with L*(θ∧ω) = (m−1)θ, so θ = L*t/(m−1), and
/// the W₃ residual t − θ∧ω.
pub fn lee_form(t: &Form) -> Result<(Form, Form)> {
    let n = t.dim();
    let m = n / 2;
    if t.degree() != 3 {
        return Err(Error::Degree { op: "lee_form", degree: t.degree() });
    }
    if m < 2 {
        return Err(Error::Validation("Lee form needs complex dimension at least 2".into()));
    }
    let theta = lefschetz_adjoint(t).scaled(1.0 / (m - 1) as f64);
    let residual = t - theta.wedge(&kahler_form(n));
    Ok((theta, residual))
}

/// (η, ζ) with η_X = ½(∇_XJ)J and
/// 2ζ_X = X⌟Jd^{1,2}ω − ⅓X⌟Jd³ω + ½N̂^J_X.
pub fn connections(pt: &AHPoint) -> (FormMap, FormMap) {
    let n = pt.dim();
    let (_, hat) = nijenhuis(pt);
    let dw = pt.d_omega();
    let j12 = pull_j(&proj(&dw, 1, 2));
    let j3 = pull_j(&proj(&dw, 3, 0));
    let zeta = FormMap::from_fn(n, 2, |i| {
        let x = unit(n, i);
        (j12.contract(&x) - j3.contract(&x).scaled(1.0 / 3.0) + hat.at_basis(i).scaled(0.5)).scaled(0.5)
    });
    (pt.eta(), zeta)
}

/// max over frame triples of |T(X,Y,Z) + T(X,Z,Y)| for the torsion
/// T(X,Y) = ζ_X Y − ζ_Y X of ∇ + ζ.
pub fn torsion_skew_defect(zeta: &FormMap) -> f64 {
    let n = zeta.dim();
    let tors = |x: usize, y: usize, z: usize| zeta.at_basis(x).get(&[y, z]) - zeta.at_basis(y).get(&[x, z]);
    let mut worst: f64 = 0.0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                worst = worst.max((tors(x, y, z) + tors(x, z, y)).abs());
            }
        }
    }
    worst
}

/// Residual of ∇_Xω + 𝒥ζ_X = 0, i.e. ∇ + ζ preserves ω.
pub fn zeta_hermitian_defect(pt: &AHPoint, zeta: &FormMap) -> f64 {
    pt.nabla_omega().add(&zeta.map(calj)).norm()
}

/// Residual of ∇_Xω + [η_X, ω] = 0.
pub fn eta_hermitian_defect(pt: &AHPoint, eta: &FormMap) -> f64 {
    pt.nabla_omega().add(&eta.map(calj)).norm()
}
