//! Structure constants of a finite-dimensional real Lie algebra.

use nalgebra as na;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = na::DMatrix<Complex64>;

/// [e_i, e_j] = Σ_k c[i][j][k] e_k in a fixed basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    n: usize,
    c: Vec<f64>,
}

impl StructureConstants {
    pub fn zero(n: usize) -> Self {
        StructureConstants { n, c: vec![0.0; n * n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.c[(i * self.n + j) * self.n + k]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: f64) {
        let n = self.n;
        self.c[(i * n + j) * n + k] = v;
    }

    /// Sets c_ij^k and c_ji^k = −c_ij^k.
    pub fn set_antisym(&mut self, i: usize, j: usize, k: usize, v: f64) {
        self.set(i, j, k, v);
        self.set(j, i, k, -v);
    }

    pub fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n];
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                let s = x[i] * y[j];
                if s == 0.0 {
                    continue;
                }
                let base = (i * n + j) * n;
                for (k, o) in out.iter_mut().enumerate() {
                    *o += s * self.c[base + k];
                }
            }
        }
        out
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[f64] {
        let n = self.n;
        &self.c[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn antisymmetry_defect(&self) -> f64 {
        let n = self.n;
        let mut m: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    m = m.max((self.get(i, j, k) + self.get(j, i, k)).abs());
                }
            }
        }
        m
    }

    /// max |[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]|.
    pub fn jacobi_defect(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = vec![0.0; n];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let ab = self.basis_bracket(a, b).to_vec();
                        let mut ec = vec![0.0; n];
                        ec[c] = 1.0;
                        for (s, v) in acc.iter_mut().zip(self.bracket(&ab, &ec)) {
                            *s += v;
                        }
                    }
                    worst = worst.max(acc.iter().fold(0.0, |m, v| m.max(v.abs())));
                }
            }
        }
        worst
    }

    /// Rewrites the constants in the basis f_i = Σ_j B[(j, i)] e_j.
    pub fn change_basis(&self, b: &na::DMatrix<f64>) -> Result<StructureConstants> {
        let n = self.n;
        let binv = b
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Validation("basis change is singular".into()))?;
        let mut out = StructureConstants::zero(n);
        for i in 0..n {
            let fi: Vec<f64> = b.column(i).iter().copied().collect();
            for j in 0..n {
                let fj: Vec<f64> = b.column(j).iter().copied().collect();
                let br = na::DVector::from_vec(self.bracket(&fi, &fj));
                let coords = &binv * br;
                for k in 0..n {
                    out.set(i, j, k, coords[k]);
                }
            }
        }
        Ok(out)
    }
}

/// Frobenius inner product Re tr(A†B).
pub fn frob(a: &CMat, b: &CMat) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).re).sum()
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

/// Structure constants of the real span of `basis`, which must be closed
/// under commutators. Coordinates are found by a Gram solve in `frob`.
pub fn constants_from_matrices(basis: &[CMat]) -> Result<StructureConstants> {
    let n = basis.len();
    let gram = na::DMatrix::from_fn(n, n, |i, j| frob(&basis[i], &basis[j]));
    let chol = na::Cholesky::new(gram)
        .ok_or_else(|| Error::Validation("matrix basis is linearly dependent".into()))?;
    let mut sc = StructureConstants::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            let br = commutator(&basis[i], &basis[j]);
            let rhs = na::DVector::from_fn(n, |k, _| frob(&basis[k], &br));
            let coords = chol.solve(&rhs);
            let mut recon = CMat::zeros(br.nrows(), br.ncols());
            for k in 0..n {
                recon += &basis[k] * Complex64::new(coords[k], 0.0);
            }
            let miss = (recon - &br).iter().fold(0.0f64, |m, z| m.max(z.norm()));
            if miss > 1e-10 {
                return Err(Error::Validation(format!("span is not closed under brackets (defect {miss:.2e})")));
            }
            for k in 0..n {
                sc.set_antisym(i, j, k, coords[k]);
            }
        }
    }
    Ok(sc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn su2_relations() {
        let x1 = CMat::from_row_slice(2, 2, &[c(0., 1.), c(0., 0.), c(0., 0.), c(0., -1.)]);
        let x2 = CMat::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(-1., 0.), c(0., 0.)]);
        let x3 = CMat::from_row_slice(2, 2, &[c(0., 0.), c(0., 1.), c(0., 1.), c(0., 0.)]);
        let sc = constants_from_matrices(&[x1, x2, x3]).unwrap();
        assert!((sc.get(0, 1, 2) - 2.0).abs() < 1e-14);
        assert!((sc.get(1, 2, 0) - 2.0).abs() < 1e-14);
        assert!((sc.get(2, 0, 1) - 2.0).abs() < 1e-14);
        assert!(sc.jacobi_defect() < 1e-14);
        assert!(sc.antisymmetry_defect() == 0.0);
    }
}
