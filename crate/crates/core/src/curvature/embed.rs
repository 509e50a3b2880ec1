//! Embeddings of forms and endomorphisms into Λ²⊗Λ².

use nalgebra as na;

use super::consts::{HAT, RING, R_OMEGA_THIRD, TILDE};
use super::tensor::{four_form_tensor, mat_vec, CurvatureLike};
use crate::error::{Error, Result};
use crate::forms::{j_vector, proj, standard_j_matrix, Form};

fn require_bidegree(omega: &Form, p: usize, q: usize, what: &str, tol: f64) -> Result<Form> {
    if omega.degree() != 4 {
        return Err(Error::Degree { op: "curvature embedding", degree: omega.degree() });
    }
    let pr = proj(omega, p, q);
    let lost = pr.dist(omega);
    if lost > tol * (1.0 + omega.norm()) {
        return Err(Error::Membership { what: format!("{what}: input outside λ^{{{p},{q}}}"), residual: lost });
    }
    Ok(pr)
}

/// Ω̂(x,y) = −¼(Ω(x,y) + Ω(Jx,Jy)) for Ω ∈ λ^{2,2}.
pub fn hat_embed(omega: &Form, tol: f64) -> Result<CurvatureLike> {
    let om = require_bidegree(omega, 2, 2, "hat_embed", tol)?;
    Ok(hat_unchecked(&om))
}

pub(crate) fn hat_unchecked(omega: &Form) -> CurvatureLike {
    let f = four_form_tensor(omega);
    f.add(&f.precompose_j()).scaled(HAT)
}

/// Ω̌(x,y) = Ω(x,y) − Ω(Jx,Jy) for Ω ∈ λ^{1,3}.
pub fn check_embed(omega: &Form, tol: f64) -> Result<CurvatureLike> {
    let om = require_bidegree(omega, 1, 3, "check_embed", tol)?;
    let f = four_form_tensor(&om);
    Ok(f.sub(&f.precompose_j()))
}

/// Ω̃(X,Y) = ¼(Ω(JX,JY) − Ω(X,Y)) for Ω ∈ λ^{1,3}.
pub fn tilde_embed(omega: &Form, tol: f64) -> Result<CurvatureLike> {
    let om = require_bidegree(omega, 1, 3, "tilde_embed", tol)?;
    let f = four_form_tensor(&om);
    Ok(f.precompose_j().sub(&f).scaled(TILDE))
}

/// R_Ω(x,y) = Ω(Jx,Jy) − ⅓Ω(x,y), an algebraic curvature tensor for Ω ∈ λ^{2,2}.
pub fn r_omega(omega: &Form) -> CurvatureLike {
    let f = four_form_tensor(omega);
    f.precompose_j().sub(&f.scaled(R_OMEGA_THIRD))
}

/// S̊(X,Y) = ½(SJX∧Y + X∧SJY + SX∧JY + JX∧SY) for S symmetric with SJ + JS = 0.
pub fn ring_embed(s: &na::DMatrix<f64>, tol: f64) -> Result<CurvatureLike> {
    let n = s.nrows();
    let j = standard_j_matrix(n);
    let sym = (s - s.transpose()).amax();
    let anti = (s * &j + &j * s).amax();
    let scale = 1.0 + s.amax();
    if sym > tol * scale || anti > tol * scale {
        return Err(Error::Membership {
            what: "ring_embed: S must be symmetric and anticommute with J".into(),
            residual: sym.max(anti),
        });
    }
    let v = |x: &[f64]| Form::covector(x);
    Ok(CurvatureLike::from_bilinear(n, |x, y| {
        let jx = j_vector(x);
        let jy = j_vector(y);
        let terms = v(&mat_vec(s, &jx)).wedge(&v(y))
            + v(x).wedge(&v(&mat_vec(s, &jy)))
            + v(&mat_vec(s, x)).wedge(&v(&jy))
            + v(&jx).wedge(&v(&mat_vec(s, y)));
        terms.scaled(RING)
    }))
}
