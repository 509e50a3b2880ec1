use nalgebra as na;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::forms::basis::{indices, table};
use crate::forms::{bidegree, pull_j, Form, FormMap};

/// Elements of Λ¹⊗Λ³ (γ, T-type tensors) are linear maps V → Λ³.
pub type OneThreeTensor = FormMap;

/// γ_x y := y ⌟ γ_x.
pub fn gamma_xy(gamma: &OneThreeTensor, x: &[f64], y: &[f64]) -> Form {
    gamma.at(x).contract(y)
}

/// An element of Λ²⊗Λ², viewed as the map x∧y ↦ R(x,y) ∈ Λ².
/// `rows[r]` is R(e_a, e_b) for the pair (a<b) of rank r.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureLike {
    dim: usize,
    rows: Vec<Form>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvatureFlags {
    pub pair_symmetric: bool,
    pub value_slot_11: bool,
}

impl CurvatureLike {
    pub fn zero(dim: usize) -> Self {
        CurvatureLike { dim, rows: vec![Form::zero(dim, 2); table(dim).len(2)] }
    }

    /// Builds R from its values R(e_a, e_b), a < b.
    pub fn from_pairs(dim: usize, mut f: impl FnMut(usize, usize) -> Form) -> Self {
        let rows = table(dim).masks[2]
            .iter()
            .map(|&m| {
                let ij = indices(m);
                f(ij[0], ij[1])
            })
            .collect();
        CurvatureLike { dim, rows }
    }

    /// Builds R from a bilinear rule on vectors; only basis pairs are evaluated.
    pub fn from_bilinear(dim: usize, f: impl Fn(&[f64], &[f64]) -> Form) -> Self {
        CurvatureLike::from_pairs(dim, |a, b| {
            let mut x = vec![0.0; dim];
            let mut y = vec![0.0; dim];
            x[a] = 1.0;
            y[b] = 1.0;
            f(&x, &y)
        })
    }

    pub fn from_rows(dim: usize, rows: Vec<Form>) -> Self {
        assert_eq!(rows.len(), table(dim).len(2));
        CurvatureLike { dim, rows }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Self {
        CurvatureLike::from_pairs(dim, |_, _| Form::random(rng, dim, 2))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Form] {
        &self.rows
    }

    /// R(e_a, e_b) for arbitrary a, b.
    pub fn at_basis(&self, a: usize, b: usize) -> Form {
        use std::cmp::Ordering::*;
        let t = table(self.dim);
        match a.cmp(&b) {
            Equal => Form::zero(self.dim, 2),
            Less => self.rows[t.rank_of((1 << a) | (1 << b))].clone(),
            Greater => -&self.rows[t.rank_of((1 << a) | (1 << b))],
        }
    }

    /// R(x, y) = R(x ∧ y).
    pub fn at(&self, x: &[f64], y: &[f64]) -> Form {
        let t = table(self.dim);
        let mut out = Form::zero(self.dim, 2);
        for (r, row) in self.rows.iter().enumerate() {
            let ij = indices(t.masks[2][r]);
            let c = x[ij[0]] * y[ij[1]] - x[ij[1]] * y[ij[0]];
            if c != 0.0 {
                out.axpy(c, row);
            }
        }
        out
    }

    /// The curvature operator on 2-forms, ℛ(α) = Σ_{a<b} α_{ab} R(e_a, e_b).
    pub fn apply(&self, alpha: &Form) -> Form {
        let mut out = Form::zero(self.dim, 2);
        for (c, row) in alpha.coeffs().iter().zip(&self.rows) {
            if *c != 0.0 {
                out.axpy(*c, row);
            }
        }
        out
    }

    /// R(x, y, z, u) = R(x, y)(z, u).
    pub fn eval4(&self, x: &[f64], y: &[f64], z: &[f64], u: &[f64]) -> f64 {
        self.at(x, y).eval(&[z, u])
    }

    /// Matrix M with M[(s, r)] = coefficient of e^{pair s} in R(pair r).
    pub fn matrix(&self) -> na::DMatrix<f64> {
        let n2 = self.rows.len();
        na::DMatrix::from_fn(n2, n2, |s, r| self.rows[r].coeffs()[s])
    }

    pub fn from_matrix(dim: usize, m: &na::DMatrix<f64>) -> Self {
        let rows = (0..m.ncols())
            .map(|r| Form::from_coeffs(dim, 2, m.column(r).iter().copied().collect()))
            .collect();
        CurvatureLike { dim, rows }
    }

    /// Pair swap: R^T(x,y,z,u) = R(z,u,x,y).
    pub fn transpose(&self) -> CurvatureLike {
        CurvatureLike::from_matrix(self.dim, &self.matrix().transpose())
    }

    /// (x, y) ↦ R(Jx, Jy).
    pub fn precompose_j(&self) -> CurvatureLike {
        let n = self.dim;
        CurvatureLike::from_pairs(n, |a, b| {
            let x = crate::forms::j_vector(&crate::forms::unit(n, a));
            let y = crate::forms::j_vector(&crate::forms::unit(n, b));
            self.at(&x, &y)
        })
    }

    /// J applied to every value.
    pub fn postcompose_j(&self) -> CurvatureLike {
        self.map_values(pull_j)
    }

    pub fn map_values(&self, f: impl Fn(&Form) -> Form) -> CurvatureLike {
        CurvatureLike { dim: self.dim, rows: self.rows.iter().map(f).collect() }
    }

    pub fn norm(&self) -> f64 {
        self.rows.iter().map(|r| r.dot(r)).sum::<f64>().sqrt()
    }

    pub fn dist(&self, other: &CurvatureLike) -> f64 {
        self.rows.iter().zip(&other.rows).map(|(a, b)| a.dist(b).powi(2)).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, s: f64) -> CurvatureLike {
        self.map_values(|v| v.scaled(s))
    }

    pub fn axpy(&mut self, s: f64, other: &CurvatureLike) {
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            a.axpy(s, b);
        }
    }

    pub fn add(&self, other: &CurvatureLike) -> CurvatureLike {
        let mut out = self.clone();
        out.axpy(1.0, other);
        out
    }

    pub fn sub(&self, other: &CurvatureLike) -> CurvatureLike {
        let mut out = self.clone();
        out.axpy(-1.0, other);
        out
    }

    /// |R − R^T|.
    pub fn pair_symmetry_defect(&self) -> f64 {
        self.dist(&self.transpose())
    }

    /// Mass of the values outside λ^{1,1}.
    pub fn value_slot_11_defect(&self) -> f64 {
        self.dist(&self.map_values(|v| bidegree::proj(v, 1, 1)))
    }

    pub fn flags(&self, tol: f64) -> CurvatureFlags {
        CurvatureFlags {
            pair_symmetric: self.pair_symmetry_defect() <= tol,
            value_slot_11: self.value_slot_11_defect() <= tol,
        }
    }

    /// Pull-back along B: R^k → R^n, R'(y₁, y₂) = B*(R(By₁, By₂)).
    pub fn pullback(&self, b: &na::DMatrix<f64>) -> CurvatureLike {
        let k = b.ncols();
        CurvatureLike::from_pairs(k, |a, c| {
            let x: Vec<f64> = b.column(a).iter().copied().collect();
            let y: Vec<f64> = b.column(c).iter().copied().collect();
            self.at(&x, &y).pullback(b)
        })
    }

    /// Full array R[i][j][k][l] = R(e_i, e_j, e_k, e_l).
    pub fn to_array(&self) -> Vec<Vec<Vec<Vec<f64>>>> {
        let n = self.dim;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = self.at_basis(i, j);
                        (0..n)
                            .map(|k| (0..n).map(|l| if k == l { 0.0 } else { pair_coeff(&v, k, l) }).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }
}

fn pair_coeff(v: &Form, k: usize, l: usize) -> f64 {
    let t = table(v.dim());
    let r = t.rank_of((1 << k) | (1 << l));
    if k < l {
        v.coeffs()[r]
    } else {
        -v.coeffs()[r]
    }
}

/// (b₁R)_x = Σ eᵢ ∧ R(eᵢ, x).
pub fn bianchi_b1(r: &CurvatureLike) -> OneThreeTensor {
    let n = r.dim();
    FormMap::from_fn(n, 3, |x| {
        let mut out = Form::zero(n, 3);
        for i in 0..n {
            if i != x {
                out += &r.at_basis(i, x).e_wedge(i);
            }
        }
        out
    })
}

/// Ω(x, y) := y ⌟ x ⌟ Ω for a 4-form, as a tensor in Λ²⊗Λ².
pub fn four_form_tensor(omega: &Form) -> CurvatureLike {
    CurvatureLike::from_pairs(omega.dim(), |a, b| omega.contract_basis(a).contract_basis(b))
}

/// Sx for a matrix S.
pub fn mat_vec(s: &na::DMatrix<f64>, x: &[f64]) -> Vec<f64> {
    (s * na::DVector::from_column_slice(x)).iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn bilinear_access_is_antisymmetric() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let r = CurvatureLike::random(&mut rng, 6);
        let x: Vec<f64> = (0..6).map(|i| i as f64 - 2.0).collect();
        let y: Vec<f64> = (0..6).map(|i| (i * i) as f64 * 0.1).collect();
        assert!(r.at(&x, &y).dist(&-r.at(&y, &x)) < 1e-13);
        let arr = r.to_array();
        assert!((arr[0][1][2][3] + arr[1][0][2][3]).abs() < 1e-15);
        assert!((arr[0][1][2][3] + arr[0][1][3][2]).abs() < 1e-15);
        assert!((arr[2][4][1][5] - r.eval4(&unit(2), &unit(4), &unit(1), &unit(5))).abs() < 1e-15);
    }

    fn unit(i: usize) -> Vec<f64> {
        crate::forms::unit(6, i)
    }

    #[test]
    fn round_sphere_is_in_kernel_of_b1() {
        // R(x,y) = x♭ ∧ y♭ is pair symmetric with vanishing Bianchi map
        let r = CurvatureLike::from_bilinear(6, |x, y| Form::covector(x).wedge(&Form::covector(y)));
        assert!(r.pair_symmetry_defect() < 1e-15);
        assert!(bianchi_b1(&r).norm() < 1e-14);
    }
}
