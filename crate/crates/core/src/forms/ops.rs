//! The U(m) operator calculus on Λ*: 𝒥, the J-pull-back, Lefschetz
//! operators, the commutator with 2-forms and the bullet product.
//!
//! Everything is written in the Hermitian frame, so Je₂ₖ = e₂ₖ₊₁ and
//! Je₂ₖ₊₁ = −e₂ₖ with 0-based indices.

use nalgebra as na;

use super::basis::{indices, table};
use super::form::Form;
use crate::error::{Error, Result};

/// J applied to a vector.
pub fn j_vector(x: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; x.len()];
    for k in 0..x.len() / 2 {
        out[2 * k + 1] = x[2 * k];
        out[2 * k] = -x[2 * k + 1];
    }
    out
}

/// The 1-form J(X^♯) = −(JX)^♯. This is the only place where a vector is
/// turned into "JX as a 1-form".
pub fn j_covector(x: &[f64]) -> Form {
    -Form::covector(&j_vector(x))
}

pub fn unit(dim: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; dim];
    v[i] = 1.0;
    v
}

/// Kähler form ω = g(J·,·) = Σ e^{2k−1} ∧ e^{2k}.
pub fn kahler_form(dim: usize) -> Form {
    let mut w = Form::zero(dim, 2);
    for k in 0..dim / 2 {
        w.add_term(&[2 * k, 2 * k + 1], 1.0);
    }
    w
}

/// 𝒥α = Σ eᵢ ∧ (Jeᵢ ⌟ α).
pub fn calj(a: &Form) -> Form {
    let n = a.dim();
    let mut out = Form::zero(n, a.degree());
    if a.degree() == 0 {
        return out;
    }
    for k in 0..n / 2 {
        out += &a.contract_basis(2 * k + 1).e_wedge(2 * k);
        out -= &a.contract_basis(2 * k).e_wedge(2 * k + 1);
    }
    out
}

/// 𝕁φ = p⁻¹𝒥φ, which on λ^p is φ(J·,·,…).
pub fn jj(a: &Form) -> Form {
    if a.degree() == 0 {
        return a.scaled(0.0);
    }
    calj(a).scaled(1.0 / a.degree() as f64)
}

/// Index of a sorted tuple together with the sign of the sorting permutation.
fn signed_rank(n: usize, idx: &mut [usize]) -> (usize, f64) {
    let mut sign = 1.0;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    let mask = idx.iter().fold(0u32, |m, &i| m | (1 << i));
    (table(n).rank_of(mask), sign)
}

/// (Jα)(X₁,…,Xₚ) = α(JX₁,…,JXₚ).
pub fn pull_j(a: &Form) -> Form {
    let n = a.dim();
    let p = a.degree();
    let t = table(n);
    let mut out = Form::zero(n, p);
    let mut img = vec![0usize; p];
    for (r, o) in out.coeffs_mut().iter_mut().enumerate() {
        let mut sign = 1.0;
        for (s, i) in indices(t.masks[p][r]).into_iter().enumerate() {
            if i % 2 == 0 {
                img[s] = i + 1;
            } else {
                img[s] = i - 1;
                sign = -sign;
            }
        }
        let (rk, ps) = signed_rank(n, &mut img);
        *o = sign * ps * a.coeffs()[rk];
    }
    out
}

/// L(α) = ω ∧ α.
pub fn lefschetz(a: &Form) -> Form {
    kahler_form(a.dim()).wedge(a)
}

/// L*(α) = Σₖ e₂ₖ ⌟ e₂ₖ₋₁ ⌟ α, the metric adjoint of L.
/// Forms of degree below 2 map to the scalar 0.
pub fn lefschetz_adjoint(a: &Form) -> Form {
    let n = a.dim();
    if a.degree() < 2 {
        return Form::scalar(n, 0.0);
    }
    let mut out = Form::zero(n, a.degree() - 2);
    for k in 0..n / 2 {
        out += &a.contract_basis(2 * k).contract_basis(2 * k + 1);
    }
    out
}

fn frame_sum(a: &Form, b: &Form) -> Form {
    let n = a.dim();
    let mut out = Form::zero(n, a.degree() + b.degree() - 2);
    for i in 0..n {
        out += &a.contract_basis(i).wedge(&b.contract_basis(i));
    }
    out
}

/// [α, φ] = Σ (eᵢ⌟α) ∧ (eᵢ⌟φ) for a 2-form α.
pub fn commutator2(alpha: &Form, phi: &Form) -> Result<Form> {
    alpha.try_same(phi)?;
    if alpha.degree() != 2 {
        return Err(Error::Degree { op: "commutator2", degree: alpha.degree() });
    }
    if phi.degree() == 0 {
        return Ok(Form::scalar(phi.dim(), 0.0));
    }
    Ok(frame_sum(alpha, phi))
}

/// Infallible [α, φ] for callers that already know α is a 2-form.
pub fn comm(alpha: &Form, phi: &Form) -> Form {
    commutator2(alpha, phi).expect("commutator with a 2-form")
}

/// φ₁ ∙ φ₂ = Σ (e_k⌟φ₁) ∧ (e_k⌟φ₂).
pub fn bullet(a: &Form, b: &Form) -> Result<Form> {
    a.try_same(b)?;
    if a.degree() == 0 || b.degree() == 0 {
        return Err(Error::Degree { op: "bullet", degree: 0 });
    }
    Ok(frame_sum(a, b))
}

pub fn bul(a: &Form, b: &Form) -> Form {
    bullet(a, b).expect("bullet of positive-degree forms")
}

/// Skew endomorphism A of a 2-form, ⟨Ax, y⟩ = α(x, y).
pub fn endo_of(alpha: &Form) -> na::DMatrix<f64> {
    assert_eq!(alpha.degree(), 2);
    let n = alpha.dim();
    let mut m = na::DMatrix::zeros(n, n);
    for (idx, v) in alpha.terms(0.0) {
        m[(idx[1], idx[0])] = v;
        m[(idx[0], idx[1])] = -v;
    }
    m
}

/// Inverse of [`endo_of`]; the symmetric part of `a` is discarded.
pub fn form_of_endo(a: &na::DMatrix<f64>) -> Form {
    let n = a.nrows();
    let mut f = Form::zero(n, 2);
    for i in 0..n {
        for j in i + 1..n {
            f.add_term(&[i, j], 0.5 * (a[(j, i)] - a[(i, j)]));
        }
    }
    f
}

/// The vector Ax for the endomorphism of a 2-form.
pub fn endo_apply(alpha: &Form, x: &[f64]) -> Vec<f64> {
    alpha.contract(x).to_vector()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(idx: &[usize]) -> Form {
        Form::basis(6, idx)
    }

    #[test]
    fn calj_examples() {
        assert!(calj(&kahler_form(6)).is_zero(1e-15));
        assert_eq!(calj(&e(&[0, 2])), -(e(&[1, 2]) + e(&[0, 3])));
    }

    #[test]
    fn pull_j_examples() {
        assert_eq!(pull_j(&kahler_form(6)), kahler_form(6));
        assert_eq!(pull_j(&e(&[0])), -e(&[1]));
        assert_eq!(j_covector(&unit(6, 0)), pull_j(&e(&[0])));
    }

    #[test]
    fn lefschetz_adjoint_of_omega() {
        let w = kahler_form(6);
        assert!((lefschetz_adjoint(&w).as_scalar() - 3.0).abs() < 1e-15);
        assert_eq!(lefschetz(&Form::scalar(6, 1.0)), w);
    }

    #[test]
    fn endo_round_trip() {
        let w = kahler_form(6);
        let j = endo_of(&w);
        assert!((j - super::super::space::standard_j(6)).amax() < 1e-15);
        let a = e(&[0, 3]) + 2.0 * e(&[1, 4]);
        assert_eq!(form_of_endo(&endo_of(&a)), a);
    }

    #[test]
    fn commutator_with_omega_on_covector() {
        // [ω, X^♯] = (JX)^♯
        let x = [0.3, -1.0, 0.2, 0.5, 0.0, 2.0];
        let got = comm(&kahler_form(6), &Form::covector(&x));
        assert!(got.dist(&Form::covector(&j_vector(&x))) < 1e-15);
    }
}
