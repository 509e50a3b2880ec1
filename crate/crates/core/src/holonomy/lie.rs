//! Subalgebras of Λ² ≅ 𝔰𝔬(n) given by explicit spanning sets.

use nalgebra as na;
use serde::Serialize;

use super::linalg::{null_space, orth, Mat};
use crate::forms::{comm, endo_of, form_of_endo, Form};

/// [α, β] of 2-forms viewed as skew endomorphisms.
pub fn bracket(a: &Form, b: &Form) -> Form {
    let (x, y) = (endo_of(a), endo_of(b));
    form_of_endo(&(&x * &y - &y * &x))
}

/// Orthonormal span of a family of 2-forms, with the Lie closure defect.
#[derive(Clone, Debug, Serialize)]
pub struct LieAlgebraSpan {
    pub ambient: usize,
    #[serde(skip)]
    pub basis: Vec<Form>,
    pub rank: usize,
    pub closed: bool,
    pub closure_residual: f64,
}

fn coeff_matrix(forms: &[Form], len: usize) -> Mat {
    Mat::from_fn(len, forms.len(), |r, c| forms[c].coeffs()[r])
}

/// Orthonormal basis of span(forms).
pub fn span(ambient: usize, forms: &[Form], rel: f64) -> Vec<Form> {
    let len = ambient * (ambient - 1) / 2;
    let q = orth(&coeff_matrix(forms, len), rel);
    (0..q.ncols()).map(|c| Form::from_coeffs(ambient, 2, q.column(c).iter().copied().collect())).collect()
}

impl LieAlgebraSpan {
    /// The linear span only; `closed` reports whether it is a subalgebra.
    pub fn from_span(ambient: usize, forms: &[Form], rel: f64, tol: f64) -> Self {
        let basis = span(ambient, forms, rel);
        let mut s = LieAlgebraSpan { ambient, rank: basis.len(), basis, closed: false, closure_residual: 0.0 };
        s.closure_residual = s.bracket_defect(&s.clone());
        s.closed = s.closure_residual <= tol;
        s
    }

    /// Smallest subalgebra containing `gens`, by iterated brackets.
    pub fn generated(ambient: usize, gens: &[Form], rel: f64, tol: f64) -> Self {
        let mut basis = span(ambient, gens, rel);
        let cap = ambient * (ambient - 1) / 2;
        loop {
            let mut all = basis.clone();
            for i in 0..basis.len() {
                for j in i + 1..basis.len() {
                    all.push(bracket(&basis[i], &basis[j]));
                }
            }
            let next = span(ambient, &all, rel);
            let done = next.len() == basis.len() || next.len() >= cap;
            basis = next;
            if done {
                break;
            }
        }
        let mut s = LieAlgebraSpan { ambient, rank: basis.len(), basis, closed: false, closure_residual: 0.0 };
        s.closure_residual = s.bracket_defect(&s.clone());
        s.closed = s.closure_residual <= tol;
        s
    }

    pub fn zero(ambient: usize) -> Self {
        LieAlgebraSpan { ambient, basis: Vec::new(), rank: 0, closed: true, closure_residual: 0.0 }
    }

    /// |α − P α| for the orthogonal projection P onto the span.
    pub fn excess(&self, alpha: &Form) -> f64 {
        let mut r = alpha.clone();
        for b in &self.basis {
            r.axpy(-b.dot(alpha), b);
        }
        r.norm()
    }

    /// max |[a, b] − P[a, b]| over a ∈ other, b ∈ self; with other = self this
    /// is the closure defect, otherwise the ideal defect [other, self] ⊆ self.
    pub fn bracket_defect(&self, other: &LieAlgebraSpan) -> f64 {
        let mut worst: f64 = 0.0;
        for a in &other.basis {
            for b in &self.basis {
                worst = worst.max(self.excess(&bracket(a, b)));
            }
        }
        worst
    }

    /// max excess of `other`'s basis, zero when other ⊆ self.
    pub fn containment_defect(&self, other: &LieAlgebraSpan) -> f64 {
        other.basis.iter().map(|b| self.excess(b)).fold(0.0, f64::max)
    }

    /// Rank of span(self ∪ other).
    pub fn joint_rank(&self, other: &LieAlgebraSpan, rel: f64) -> usize {
        let all: Vec<Form> = self.basis.iter().chain(&other.basis).cloned().collect();
        span(self.ambient, &all, rel).len()
    }

    /// Rank of [self, self].
    pub fn derived_rank(&self, rel: f64) -> usize {
        let mut all = Vec::new();
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                all.push(bracket(&self.basis[i], &self.basis[j]));
            }
        }
        if all.is_empty() {
            return 0;
        }
        span(self.ambient, &all, rel).len()
    }

    /// max |[a, b]| over basis pairs.
    pub fn abelian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in &self.basis {
            for b in &self.basis {
                worst = worst.max(bracket(a, b).norm());
            }
        }
        worst
    }

    /// Matrix of the Killing form B(a, b) = tr(ad_a ad_b) in the span basis.
    pub fn killing_form(&self) -> Mat {
        let k = self.basis.len();
        let ad: Vec<Mat> = self
            .basis
            .iter()
            .map(|a| {
                Mat::from_fn(k, k, |r, c| self.basis[r].dot(&bracket(a, &self.basis[c])))
            })
            .collect();
        Mat::from_fn(k, k, |i, j| (&ad[i] * &ad[j]).trace())
    }

    /// Largest eigenvalue of the Killing form; negative for compact semisimple spans.
    pub fn killing_max_eigenvalue(&self) -> f64 {
        if self.basis.is_empty() {
            return 0.0;
        }
        na::SymmetricEigen::new(self.killing_form()).eigenvalues.max()
    }
}

/// {α ∈ Λ² : [α, ψ] = 0}, as the null space of α ↦ comm(α, ψ).
pub fn stabilizer(psi: &Form, rel: f64) -> LieAlgebraSpan {
    let n = psi.dim();
    let len2 = n * (n - 1) / 2;
    let images: Vec<Form> = (0..len2)
        .map(|r| {
            let mut c = vec![0.0; len2];
            c[r] = 1.0;
            comm(&Form::from_coeffs(n, 2, c), psi)
        })
        .collect();
    let len3 = images.first().map_or(0, |f| f.coeffs().len());
    let m = Mat::from_fn(len3, len2, |r, c| images[c].coeffs()[r]);
    let k = null_space(&m, rel);
    let forms: Vec<Form> = (0..k.ncols()).map(|c| Form::from_coeffs(n, 2, k.column(c).iter().copied().collect())).collect();
    LieAlgebraSpan::from_span(n, &forms, rel, 1e-8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{kahler_form, proj};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bracket_is_antisymmetric_and_jacobi() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (a, b, c) = (Form::random(&mut rng, 6, 2), Form::random(&mut rng, 6, 2), Form::random(&mut rng, 6, 2));
        assert!((bracket(&a, &b) + bracket(&b, &a)).norm() < 1e-13);
        let jac = bracket(&a, &bracket(&b, &c)) + bracket(&b, &bracket(&c, &a)) + bracket(&c, &bracket(&a, &b));
        assert!(jac.norm() < 1e-12);
    }

    #[test]
    fn two_generic_forms_generate_so_n() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = LieAlgebraSpan::generated(4, &[Form::random(&mut rng, 4, 2), Form::random(&mut rng, 4, 2)], 1e-9, 1e-9);
        assert_eq!(g.rank, 6);
        assert!(g.closed);
    }

    #[test]
    fn u_m_is_generated_inside_lambda11() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let gens: Vec<Form> = (0..3).map(|_| proj(&Form::random(&mut rng, 6, 2), 1, 1)).collect();
        let g = LieAlgebraSpan::generated(6, &gens, 1e-9, 1e-9);
        assert_eq!(g.rank, 9);
        assert!(g.excess(&kahler_form(6)) < 1e-10);
    }

    #[test]
    fn stabilizer_of_type_three_form_is_su3() {
        let psi = Form::basis(6, &[0, 2, 4]) - Form::basis(6, &[0, 3, 5]) - Form::basis(6, &[1, 2, 5]) - Form::basis(6, &[1, 3, 4]);
        assert!(psi.dist(&proj(&psi, 0, 3)) < 1e-14);
        let g = stabilizer(&psi, 1e-9);
        assert_eq!(g.rank, 8);
        assert!(g.closed);
        assert!(g.killing_max_eigenvalue() < 0.0);
    }
}
