//! Splitting S²(λ^{1,1}) = 𝒦(𝔲(m)) ⊕ λ^{2,2} and the four-part decomposition
//! 𝓡 = 𝓡^K + Ω̂ + ½𝓡^a + 𝓡^m of curvature tensors of Hermitian connections
//! with skew torsion.

use super::consts::{ALT_INVERSE, RA_WEIGHT, TORSION_HALF};
use super::embed::hat_unchecked;
use super::tensor::{bianchi_b1, four_form_tensor, CurvatureLike, OneThreeTensor};
use crate::error::{Error, Result};
use crate::forms::{calj, j_vector, proj, pull_j, unit, Form, FormMap};

/// Residual bundle of a decomposition, in evaluation order.
pub type Checks = Vec<(&'static str, f64)>;

/// Q = R^K + Ω̂ for Q ∈ S²(λ^{1,1}).
pub fn split_s2_lambda11(q: &CurvatureLike, tol: f64) -> Result<(CurvatureLike, Form)> {
    let scale = 1.0 + q.norm();
    let sym = q.pair_symmetry_defect();
    let slot = q.value_slot_11_defect();
    if sym > tol * scale || slot > tol * scale {
        return Err(Error::Membership { what: "split_S2_lambda11: Q not in S²(λ^{1,1})".into(), residual: sym.max(slot) });
    }
    let omega = s2_omega(q);
    let rk = q.sub(&hat_unchecked(&omega));
    Ok((rk, omega))
}

/// Ω = (¼ a(b₁Q))_{λ^{2,2}}, so that b₁(Ω̂) = Ω inverts the embedding.
fn s2_omega(q: &CurvatureLike) -> Form {
    proj(&bianchi_b1(q).alternation().scaled(ALT_INVERSE), 2, 2)
}

/// P(x,y) = γ_x y − γ_y x.
fn gamma_skew(gamma: &OneThreeTensor) -> CurvatureLike {
    CurvatureLike::from_pairs(gamma.dim(), |a, b| {
        gamma.at_basis(a).contract_basis(b) - gamma.at_basis(b).contract_basis(a)
    })
}

/// Defect of 𝓡(x,y,z,u) − 𝓡(z,u,x,y) = γ_x(y,z,u) − γ_y(x,z,u) − γ_z(u,x,y) + γ_u(z,x,y).
pub fn curvvh_defect(r: &CurvatureLike, gamma: &OneThreeTensor) -> f64 {
    let p = gamma_skew(gamma);
    r.sub(&r.transpose()).dist(&p.sub(&p.transpose()))
}

#[derive(Clone, Debug)]
pub struct CurvDecomposition {
    pub rk: CurvatureLike,
    pub omega: Form,
    pub ra: CurvatureLike,
    pub rm: CurvatureLike,
    pub checks: Checks,
}

/// Right-hand sides of the Bianchi identities for 𝓡^a and 𝓡^m, built from
/// γ^{1,2} and the components of T = a(γ).
pub struct BianchiTargets {
    pub a: [Form; 4],
    pub ra: FormMap,
    pub rm: FormMap,
}

pub fn bianchi_targets(gamma: &OneThreeTensor) -> BianchiTargets {
    let n = gamma.dim();
    let g12 = gamma.map(|v| proj(v, 1, 2));
    let jg12 = g12.map(pull_j);
    let t = gamma.alternation();
    let t22 = proj(&t, 2, 2);
    let t13 = proj(&t, 1, 3);
    let a1 = g12.alternation() + jg12.alternation_c() - t22.scaled(4.0);
    let a2 = g12.alternation_c() - jg12.alternation();
    let a3 = g12.alternation() - jg12.alternation_c() - t13.scaled(2.0);
    let a4 = jg12.alternation() + g12.alternation_c() - calj(&t13);
    let ra = FormMap::from_fn(n, 3, |i| {
        let x = unit(n, i);
        let jx = j_vector(&x);
        let sum = g12.at_basis(i) + pull_j(&g12.at(&jx));
        -sum.scaled(2.0) - a1.contract(&x).scaled(0.5) - a2.contract(&jx).scaled(0.5)
    });
    let rm = FormMap::from_fn(n, 3, |i| {
        let x = unit(n, i);
        let jx = j_vector(&x);
        let diff = g12.at_basis(i) - pull_j(&g12.at(&jx));
        -diff - a3.contract(&x).scaled(0.5) + a4.contract(&jx).scaled(0.5)
    });
    BianchiTargets { a: [a1, a2, a3, a4], ra, rm }
}

/// 𝓡^a and 𝓡^m from their closed forms in γ.
pub fn ra_rm(gamma: &OneThreeTensor) -> (CurvatureLike, CurvatureLike) {
    let t = gamma.alternation();
    let t22 = four_form_tensor(&proj(&t, 2, 2));
    let t13 = four_form_tensor(&proj(&t, 1, 3));
    let p11 = gamma_skew(gamma).map_values(|v| proj(v, 1, 1));
    let p11j = p11.precompose_j();
    let ra = p11.add(&p11j).sub(&t22.add(&t22.precompose_j()).scaled(TORSION_HALF));
    let rm = p11.sub(&p11j).sub(&t13.sub(&t13.precompose_j()).scaled(TORSION_HALF));
    (ra, rm)
}

/// Decomposes 𝓡 ∈ Λ²⊗λ^{1,1} satisfying the pair-swap constraint with γ.
pub fn decompose_hermitian_curvature(r: &CurvatureLike, gamma: &OneThreeTensor, tol: f64) -> Result<CurvDecomposition> {
    let scale = 1.0 + r.norm() + gamma.norm();
    let slot = r.value_slot_11_defect();
    if slot > tol * scale {
        return Err(Error::Membership { what: "decompose: values of 𝓡 not in λ^{1,1}".into(), residual: slot });
    }
    let hyp = curvvh_defect(r, gamma);
    if hyp > tol * scale {
        return Err(Error::Membership { what: "decompose: pair-swap constraint with γ violated".into(), residual: hyp });
    }
    let (ra, rm) = ra_rm(gamma);
    let rj = r.precompose_j();
    let q = r.add(&rj).sub(&ra).scaled(0.5);
    let q_defect = q.pair_symmetry_defect().max(q.value_slot_11_defect());
    let omega = s2_omega(&q);
    let rk = q.sub(&hat_unchecked(&omega));

    let recon = rk.add(&hat_unchecked(&omega)).add(&ra.scaled(RA_WEIGHT)).add(&rm);
    let targets = bianchi_targets(gamma);
    let rm_half = r.sub(&rj).scaled(0.5);
    let checks = vec![
        ("curvvh hypothesis", hyp),
        ("Q in S2(λ11)", q_defect),
        ("reconstruction", recon.dist(r)),
        ("RK Bianchi", bianchi_b1(&rk).norm()),
        ("RK pair symmetry", rk.pair_symmetry_defect()),
        ("Omega in λ22", omega.dist(&proj(&omega, 2, 2))),
        ("Ra antisymmetric", ra.add(&ra.transpose()).norm()),
        ("Ra J-invariant", ra.dist(&ra.precompose_j())),
        ("Ra values λ11", ra.value_slot_11_defect()),
        ("Rm J-anti-invariant", rm.add(&rm.precompose_j()).norm()),
        ("Rm values λ11", rm.value_slot_11_defect()),
        ("Rm = ½(R − R(J,J))", rm.dist(&rm_half)),
        ("Ra Bianchi (A1, A2)", bianchi_b1(&ra).dist(&targets.ra)),
        ("Rm Bianchi (A3, A4)", bianchi_b1(&rm).dist(&targets.rm)),
    ];
    Ok(CurvDecomposition { rk, omega, ra, rm, checks })
}
