use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use nalgebra as na;
use rand::Rng;

use super::basis::{self, indices, insert_sign, mask_of, table, wedge_sign};
use crate::error::{Error, Result};

/// An alternating p-form on R^n, written in the orthonormal Hermitian frame
/// of its space. Coefficients are dense, indexed by the rank of e^I.
#[derive(Clone, Debug, PartialEq)]
pub struct Form {
    dim: usize,
    degree: usize,
    c: Vec<f64>,
}

impl Form {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Form { dim, degree, c: vec![0.0; basis::binomial(dim, degree)] }
    }

    pub fn scalar(dim: usize, s: f64) -> Self {
        Form { dim, degree: 0, c: vec![s] }
    }

    pub fn from_coeffs(dim: usize, degree: usize, c: Vec<f64>) -> Self {
        assert_eq!(c.len(), basis::binomial(dim, degree));
        Form { dim, degree, c }
    }

    /// e^{i₁} ∧ … ∧ e^{iₚ} for 0-based indices in any order.
    pub fn basis(dim: usize, idx: &[usize]) -> Self {
        let mut f = Form::zero(dim, idx.len());
        f.add_term(idx, 1.0);
        f
    }

    /// The 1-form ⟨x, ·⟩.
    pub fn covector(x: &[f64]) -> Self {
        Form { dim: x.len(), degree: 1, c: x.to_vec() }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, dim: usize, degree: usize) -> Self {
        let n = basis::binomial(dim, degree);
        Form { dim, degree, c: (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect() }
    }

    /// Adds `v · e^{idx}`; unsorted or repeated indices are handled.
    pub fn add_term(&mut self, idx: &[usize], v: f64) {
        assert_eq!(idx.len(), self.degree);
        let mut sorted = idx.to_vec();
        let mut sign = 1.0;
        // insertion sort, tracking the permutation sign
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j - 1] > sorted[j] {
                sorted.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return;
        }
        let r = table(self.dim).rank_of(mask_of(&sorted));
        self.c[r] += sign * v;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.c
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        Form::basis(self.dim, idx).dot(self)
    }

    pub fn as_scalar(&self) -> f64 {
        assert_eq!(self.degree, 0);
        self.c[0]
    }

    /// Nonzero terms as (0-based increasing indices, coefficient).
    pub fn terms(&self, tol: f64) -> Vec<(Vec<usize>, f64)> {
        let t = table(self.dim);
        self.c
            .iter()
            .enumerate()
            .filter(|(_, v)| v.abs() > tol)
            .map(|(r, &v)| (indices(t.masks[self.degree][r]), v))
            .collect()
    }

    pub fn dot(&self, other: &Form) -> f64 {
        self.check(other);
        self.c.iter().zip(&other.c).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.norm() <= tol
    }

    /// Distance |self − other|.
    pub fn dist(&self, other: &Form) -> f64 {
        self.check(other);
        self.c.iter().zip(&other.c).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, s: f64) -> Form {
        Form { dim: self.dim, degree: self.degree, c: self.c.iter().map(|v| v * s).collect() }
    }

    pub fn axpy(&mut self, s: f64, x: &Form) {
        self.check(x);
        for (a, b) in self.c.iter_mut().zip(&x.c) {
            *a += s * b;
        }
    }

    pub fn try_same(&self, other: &Form) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    fn check(&self, other: &Form) {
        assert_eq!(self.dim, other.dim, "forms live on spaces of different dimension");
        assert_eq!(self.degree, other.degree, "degree mismatch");
    }

    pub fn wedge(&self, other: &Form) -> Form {
        assert_eq!(self.dim, other.dim, "forms live on spaces of different dimension");
        let n = self.dim;
        let deg = self.degree + other.degree;
        if deg > n {
            return Form::zero(n, deg);
        }
        let t = table(n);
        let mut out = Form::zero(n, deg);
        for (ra, &a) in self.c.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let ma = t.masks[self.degree][ra];
            for (rb, &b) in other.c.iter().enumerate() {
                if b == 0.0 {
                    continue;
                }
                let mb = t.masks[other.degree][rb];
                if ma & mb != 0 {
                    continue;
                }
                out.c[t.rank_of(ma | mb)] += wedge_sign(ma, mb) * a * b;
            }
        }
        out
    }

    /// e^k ∧ self.
    pub fn e_wedge(&self, k: usize) -> Form {
        let t = table(self.dim);
        let mut out = Form::zero(self.dim, self.degree + 1);
        for (r, &a) in self.c.iter().enumerate() {
            let m = t.masks[self.degree][r];
            if a == 0.0 || m & (1 << k) != 0 {
                continue;
            }
            out.c[t.rank_of(m | (1 << k))] += insert_sign(m, k) * a;
        }
        out
    }

    /// e_k ⌟ self.
    pub fn contract_basis(&self, k: usize) -> Form {
        if self.degree == 0 {
            return Form::scalar(self.dim, 0.0);
        }
        let t = table(self.dim);
        let mut out = Form::zero(self.dim, self.degree - 1);
        for (r, &a) in self.c.iter().enumerate() {
            let m = t.masks[self.degree][r];
            if a == 0.0 || m & (1 << k) == 0 {
                continue;
            }
            out.c[t.rank_of(m & !(1 << k))] += insert_sign(m, k) * a;
        }
        out
    }

    /// x ⌟ self, so that (x⌟α)(Y,…) = α(x,Y,…). Degree 0 yields the scalar 0.
    pub fn contract(&self, x: &[f64]) -> Form {
        assert_eq!(x.len(), self.dim);
        if self.degree == 0 {
            return Form::scalar(self.dim, 0.0);
        }
        let t = table(self.dim);
        let mut out = Form::zero(self.dim, self.degree - 1);
        for (r, &a) in self.c.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let m = t.masks[self.degree][r];
            let mut rest = m;
            while rest != 0 {
                let k = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if x[k] != 0.0 {
                    out.c[t.rank_of(m & !(1 << k))] += insert_sign(m, k) * a * x[k];
                }
            }
        }
        out
    }

    /// Full evaluation α(v₁,…,vₚ).
    pub fn eval(&self, vs: &[&[f64]]) -> f64 {
        assert_eq!(vs.len(), self.degree);
        let mut f = self.clone();
        for v in vs {
            f = f.contract(v);
        }
        f.as_scalar()
    }

    /// The vector dual to a 1-form.
    pub fn to_vector(&self) -> Vec<f64> {
        assert_eq!(self.degree, 1);
        self.c.clone()
    }

    /// Pull-back along a linear map B: R^k → R^n (n×k matrix):
    /// (B*α)(y₁,…) = α(By₁,…).
    pub fn pullback(&self, b: &na::DMatrix<f64>) -> Form {
        assert_eq!(b.nrows(), self.dim);
        let k = b.ncols();
        let p = self.degree;
        if p > k {
            return Form::zero(k, p);
        }
        let tn = table(self.dim);
        let tk = table(k);
        let mut out = Form::zero(k, p);
        let mut sub = na::DMatrix::zeros(p, p);
        for (ri, oc) in out.c.iter_mut().enumerate() {
            let cols = indices(tk.masks[p][ri]);
            let mut acc = 0.0;
            for (rk, &a) in self.c.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                let rows = indices(tn.masks[p][rk]);
                for (u, &r) in rows.iter().enumerate() {
                    for (v, &c) in cols.iter().enumerate() {
                        sub[(u, v)] = b[(r, c)];
                    }
                }
                acc += a * if p == 0 { 1.0 } else { sub.determinant() };
            }
            *oc = acc;
        }
        out
    }
}

impl Add for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Form {
    type Output = Form;
    fn add(mut self, rhs: Form) -> Form {
        self += &rhs;
        self
    }
}

impl Sub for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Form {
    type Output = Form;
    fn sub(mut self, rhs: Form) -> Form {
        self -= &rhs;
        self
    }
}

impl Add<Form> for &Form {
    type Output = Form;
    fn add(self, mut rhs: Form) -> Form {
        rhs += self;
        rhs
    }
}

impl Add<&Form> for Form {
    type Output = Form;
    fn add(mut self, rhs: &Form) -> Form {
        self += rhs;
        self
    }
}

impl Sub<Form> for &Form {
    type Output = Form;
    fn sub(self, rhs: Form) -> Form {
        let mut out = self.clone();
        out -= &rhs;
        out
    }
}

impl Sub<&Form> for Form {
    type Output = Form;
    fn sub(mut self, rhs: &Form) -> Form {
        self -= rhs;
        self
    }
}

impl AddAssign<&Form> for Form {
    fn add_assign(&mut self, rhs: &Form) {
        self.axpy(1.0, rhs);
    }
}

impl SubAssign<&Form> for Form {
    fn sub_assign(&mut self, rhs: &Form) {
        self.axpy(-1.0, rhs);
    }
}

impl Neg for Form {
    type Output = Form;
    fn neg(self) -> Form {
        self.scaled(-1.0)
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        self.scaled(-1.0)
    }
}

impl Mul<&Form> for f64 {
    type Output = Form;
    fn mul(self, rhs: &Form) -> Form {
        rhs.scaled(self)
    }
}

impl Mul<Form> for f64 {
    type Output = Form;
    fn mul(self, rhs: Form) -> Form {
        rhs.scaled(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(idx: &[usize]) -> Form {
        Form::basis(6, idx)
    }

    #[test]
    fn basis_wedge() {
        assert_eq!(e(&[0]).wedge(&e(&[1])), e(&[0, 1]));
        assert_eq!(e(&[1]).wedge(&e(&[0])), -e(&[0, 1]));
        assert_eq!(e(&[1, 0]), -e(&[0, 1]));
        assert!(e(&[0, 0]).is_zero(0.0));
    }

    #[test]
    fn omega_cubed() {
        let w = e(&[0, 1]) + e(&[2, 3]) + e(&[4, 5]);
        let w3 = w.wedge(&w).wedge(&w);
        assert_eq!(w3, 6.0 * e(&[0, 1, 2, 3, 4, 5]));
    }

    #[test]
    fn contraction_examples() {
        let mut x = vec![0.0; 6];
        x[0] = 1.0;
        assert_eq!(e(&[0, 1]).contract(&x), e(&[1]));
        let mut y = vec![0.0; 6];
        y[2] = 1.0;
        assert!(e(&[0, 1]).contract(&y).is_zero(0.0));
        let w = e(&[0, 1]) + e(&[2, 3]) + e(&[4, 5]);
        let got = w.wedge(&w).contract(&x);
        assert_eq!(got, 2.0 * (e(&[1, 2, 3]) + e(&[1, 4, 5])));
        assert_eq!(e(&[2, 0, 1]).contract_basis(1), -e(&[0, 2]));
    }

    #[test]
    fn evaluation_is_determinant() {
        let a = e(&[0, 2]);
        let u = [1.0, 0.0, 2.0, 0.0, 0.0, 0.0];
        let v = [3.0, 0.0, 5.0, 0.0, 0.0, 0.0];
        assert!((a.eval(&[&u, &v]) - (1.0 * 5.0 - 2.0 * 3.0)).abs() < 1e-15);
    }

    #[test]
    fn pullback_by_identity_is_identity() {
        let mut rng = rand::thread_rng();
        let a = Form::random(&mut rng, 6, 3);
        let id = na::DMatrix::identity(6, 6);
        assert!(a.pullback(&id).dist(&a) < 1e-14);
    }
}
