use serde::Serialize;

use super::G1Context;
use crate::error::{Error, Result};
use crate::forms::{calj, jj, proj, Form};
use crate::model::InvariantConnection;

/// Outcome of testing D_Xφ = (X⌟A)_{λ^p} for φ ∈ λ^p.
#[derive(Clone, Debug, Serialize)]
pub struct KillingCertificate {
    pub degree: usize,
    #[serde(skip)]
    pub phi: Form,
    #[serde(skip)]
    pub a: Form,
    pub defect: f64,
    pub valid: bool,
    /// Defect of the same test applied to 𝒥φ.
    pub jphi_defect: f64,
    /// max_X |D_{JX}φ + D_X𝕁φ − 2/(p+1) X⌟∂̄_D𝕁φ|, an equivalent test for p ≥ 2.
    pub middle_defect: f64,
    /// max_X |D_{JX}φ − D_X𝕁φ + 2(X⌟∂_D𝕁φ)_{λ^p}|, valid for every φ ∈ λ^p.
    pub lemma_defect: f64,
}

/// (A, defect) with A = ∂φ + ∂̄φ/(p+1) for p ≥ 2 and A = ½d_Dφ for p = 1.
pub fn killing_defect(conn: &InvariantConnection, phi: &Form) -> (Form, f64) {
    let n = phi.dim();
    let p = phi.degree();
    let dphi = conn.d(phi);
    let a = if p == 1 {
        dphi.scaled(0.5)
    } else {
        proj(&dphi, 1, p) + proj(&dphi, 0, p + 1).scaled(1.0 / (p + 1) as f64)
    };
    let defect = (0..n)
        .map(|i| conn.deriv(i, phi).dist(&proj(&a.contract_basis(i), 0, p)))
        .fold(0.0, f64::max);
    (a, defect)
}

fn middle_and_lemma(conn: &InvariantConnection, phi: &Form) -> (f64, f64) {
    let n = phi.dim();
    let p = phi.degree();
    let jphi = jj(phi);
    let djphi = conn.d(&jphi);
    let del_bar = proj(&djphi, 0, p + 1);
    let del = proj(&djphi, 1, p);
    let mut middle: f64 = 0.0;
    let mut lemma: f64 = 0.0;
    for i in 0..n {
        let a = conn.deriv_j(i, phi);
        let b = conn.deriv(i, &jphi);
        if p >= 2 {
            let rhs = del_bar.contract_basis(i).scaled(2.0 / (p + 1) as f64);
            middle = middle.max((&a + &b).dist(&rhs));
        }
        let rhs = proj(&del.contract_basis(i), 0, p).scaled(-2.0);
        lemma = lemma.max((&a - &b).dist(&rhs));
    }
    (middle, lemma)
}

/// Certifies φ ∈ λ^p as a Hermitian Killing form for the characteristic
/// connection of `ctx`.
pub fn killing_check(ctx: &G1Context, phi: &Form, tol: f64) -> Result<KillingCertificate> {
    let p = phi.degree();
    if p == 0 || phi.dim() != ctx.dim() {
        return Err(Error::Degree { op: "killing_check", degree: p });
    }
    let off = phi.dist(&proj(phi, 0, p));
    if off > tol * (1.0 + phi.norm()) {
        return Err(Error::Membership { what: format!("killing_check: φ is not in λ^{p}"), residual: off });
    }
    let (a, defect) = killing_defect(&ctx.d, phi);
    let (_, jphi_defect) = killing_defect(&ctx.d, &calj(phi));
    let (middle_defect, lemma_defect) = middle_and_lemma(&ctx.d, phi);
    Ok(KillingCertificate { degree: p, phi: phi.clone(), a, defect, valid: defect <= tol, jphi_defect, middle_defect, lemma_defect })
}

/// max_X | |φ|²D_Xφ − ½d|φ|²(X)φ − ½(Jd|φ|²)(X)𝕁φ | for φ ∈ λ^m.
pub fn top_degree_defect(conn: &InvariantConnection, phi: &Form) -> f64 {
    let n = phi.dim();
    let jphi = jj(phi);
    let sq = phi.dot(phi);
    (0..n)
        .map(|i| {
            let dphi = conn.deriv(i, phi);
            let half_d = dphi.dot(phi);
            let half_jd = conn.deriv_j(i, phi).dot(phi);
            let rhs = phi.scaled(half_d) + jphi.scaled(half_jd);
            dphi.scaled(sq).dist(&rhs)
        })
        .fold(0.0, f64::max)
}
