//! Reductive homogeneous models 𝔤 = 𝔥 ⊕ 𝔪 with an invariant almost-Hermitian
//! structure on 𝔪. Every invariant tensor at the origin, and every covariant
//! derivative of one, is computed exactly from the structure constants.

pub mod builtin;
pub mod connection;
pub mod lie;

use nalgebra as na;

pub use builtin::{builtin, builtin_names};
pub use connection::{ext_d, levi_civita, InvariantConnection};
pub use lie::StructureConstants;

use crate::error::{Error, Result};
use crate::forms::{form_of_endo, Form, HermitianSpace};

/// Basis convention: indices `0..dim_m` span 𝔪 and `dim_m..dim_m+dim_h` span 𝔥.
/// After construction the 𝔪 part is an orthonormal Hermitian frame, so the
/// metric is the identity and J is standard.
#[derive(Clone, Debug)]
pub struct HomogeneousModel {
    name: String,
    dim_m: usize,
    dim_h: usize,
    labels: Vec<String>,
    sc: StructureConstants,
    input_frame: na::DMatrix<f64>,
}

impl HomogeneousModel {
    /// Validates the data and rewrites it in a Hermitian frame of (𝔪, g, J).
    pub fn new(
        name: impl Into<String>,
        dim_m: usize,
        dim_h: usize,
        labels: Vec<String>,
        sc: StructureConstants,
        metric: Option<na::DMatrix<f64>>,
        j: na::DMatrix<f64>,
        tol: f64,
    ) -> Result<Self> {
        let n = dim_m + dim_h;
        if sc.dim() != n {
            return Err(Error::Validation(format!("structure constants have dimension {}, expected {n}", sc.dim())));
        }
        if labels.len() != n {
            return Err(Error::Validation(format!("{} basis labels for a {n}-dimensional algebra", labels.len())));
        }
        let anti = sc.antisymmetry_defect();
        if anti > tol {
            return Err(Error::Validation(format!("brackets are not antisymmetric (defect {anti:.2e})")));
        }
        let jac = sc.jacobi_defect();
        if jac > tol {
            return Err(Error::Validation(format!("Jacobi identity fails (defect {jac:.2e})")));
        }
        let mut leak: f64 = 0.0;
        for a in dim_m..n {
            for b in dim_m..n {
                for k in 0..dim_m {
                    leak = leak.max(sc.get(a, b, k).abs());
                }
            }
        }
        if leak > tol {
            return Err(Error::Validation(format!("[𝔥,𝔥] ⊄ 𝔥 (defect {leak:.2e})")));
        }
        let mut leak: f64 = 0.0;
        for a in dim_m..n {
            for i in 0..dim_m {
                for b in dim_m..n {
                    leak = leak.max(sc.get(a, i, b).abs());
                }
            }
        }
        if leak > tol {
            return Err(Error::Validation(format!("split is not reductive, [𝔥,𝔪] ⊄ 𝔪 (defect {leak:.2e})")));
        }
        let space = HermitianSpace::new(j, metric, tol)?;
        let frame = space.frame().clone();
        let mut b = na::DMatrix::identity(n, n);
        b.view_mut((0, 0), (dim_m, dim_m)).copy_from(&frame);
        let sc = sc.change_basis(&b)?;
        let model = HomogeneousModel { name: name.into(), dim_m, dim_h, labels, sc, input_frame: frame };
        let (skew, jcomm) = model.isotropy_defects();
        if skew > tol {
            return Err(Error::Validation(format!("𝔥 does not act skew-symmetrically on 𝔪 (defect {skew:.2e})")));
        }
        if jcomm > tol {
            return Err(Error::Validation(format!("𝔥 does not commute with J (defect {jcomm:.2e})")));
        }
        Ok(model)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim_m(&self) -> usize {
        self.dim_m
    }

    pub fn dim_h(&self) -> usize {
        self.dim_h
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.sc
    }

    /// Frame of 𝔪 in the coordinates of the input basis.
    pub fn input_frame(&self) -> &na::DMatrix<f64> {
        &self.input_frame
    }

    pub fn space(&self) -> HermitianSpace {
        HermitianSpace::standard(self.dim_m)
    }

    fn embed_m(&self, x: &[f64]) -> Vec<f64> {
        let mut v = vec![0.0; self.dim_m + self.dim_h];
        v[..self.dim_m].copy_from_slice(x);
        v
    }

    /// [X, Y]_𝔪.
    pub fn bracket_m(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let b = self.sc.bracket(&self.embed_m(x), &self.embed_m(y));
        b[..self.dim_m].to_vec()
    }

    /// [X, Y]_𝔥 in the 𝔥 basis.
    pub fn bracket_h(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let b = self.sc.bracket(&self.embed_m(x), &self.embed_m(y));
        b[self.dim_m..].to_vec()
    }

    /// ad(h)|_𝔪 as a matrix, for h given in the 𝔥 basis.
    pub fn ad_h_matrix(&self, h: &[f64]) -> na::DMatrix<f64> {
        let m = self.dim_m;
        let mut a = na::DMatrix::zeros(m, m);
        for (c, &hc) in h.iter().enumerate() {
            if hc == 0.0 {
                continue;
            }
            for i in 0..m {
                let col = self.sc.basis_bracket(m + c, i);
                for k in 0..m {
                    a[(k, i)] += hc * col[k];
                }
            }
        }
        a
    }

    /// ad(h)|_𝔪 as a 2-form on 𝔪.
    pub fn ad_h_form(&self, h: &[f64]) -> Form {
        form_of_endo(&self.ad_h_matrix(h))
    }

    fn isotropy_defects(&self) -> (f64, f64) {
        let j = crate::forms::standard_j_matrix(self.dim_m);
        let mut skew: f64 = 0.0;
        let mut jc: f64 = 0.0;
        for c in 0..self.dim_h {
            let mut h = vec![0.0; self.dim_h];
            h[c] = 1.0;
            let a = self.ad_h_matrix(&h);
            skew = skew.max((&a + a.transpose()).amax());
            jc = jc.max((&a * &j - &j * &a).amax());
        }
        (skew, jc)
    }

    /// SHA-256 over the name, dimensions and structure constants in the
    /// Hermitian frame, rounded to 12 decimals.
    pub fn digest(&self) -> String {
        let mut text = format!("{}|{}|{}|", self.name, self.dim_m, self.dim_h);
        let n = self.dim_m + self.dim_h;
        for i in 0..n {
            for j in i + 1..n {
                for (k, v) in self.sc.basis_bracket(i, j).iter().enumerate() {
                    let r = (v * 1e12).round() / 1e12;
                    if r != 0.0 {
                        text.push_str(&format!("{i},{j},{k}:{r:.12};"));
                    }
                }
            }
        }
        crate::report::digest(text.as_bytes())
    }

    /// True when all brackets vanish.
    pub fn is_abelian(&self) -> bool {
        (0..self.dim_m + self.dim_h).all(|i| {
            (0..self.dim_m + self.dim_h).all(|j| self.sc.basis_bracket(i, j).iter().all(|v| *v == 0.0))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{gh_classify, AHPoint};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// The same model presented in the basis f_i = Σ_j B[(j, i)] e_j of 𝔪, with
    /// the metric and J that this basis induces.
    fn rebased(m: &HomogeneousModel, seed: u64) -> HomogeneousModel {
        let (k, n) = (m.dim_m(), m.dim_m() + m.dim_h());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = na::DMatrix::from_fn(k, k, |r, c| if r == c { 2.0 } else { 0.0 } + rng.gen_range(-0.5..0.5));
        let mut full = na::DMatrix::identity(n, n);
        full.view_mut((0, 0), (k, k)).copy_from(&b);
        let sc = m.constants().change_basis(&full).unwrap();
        let j = crate::forms::standard_j_matrix(k);
        let jb = b.clone().try_inverse().unwrap() * j * &b;
        let g = b.transpose() * &b;
        HomogeneousModel::new(m.name(), k, m.dim_h(), m.labels().to_vec(), sc, Some(g), jb, 1e-9).unwrap()
    }

    #[test]
    fn invariants_do_not_depend_on_the_input_basis() {
        for name in builtin_names() {
            let m = builtin(name).unwrap();
            let r = rebased(&m, 17);
            let (a, b) = (gh_classify(&AHPoint::from_model(&m), 1e-8), gh_classify(&AHPoint::from_model(&r), 1e-8));
            assert_eq!(a.flags, b.flags, "{name}");
            for (x, y) in a.norms.iter().zip(b.norms.iter()) {
                assert!((x - y).abs() < 1e-9, "{name}: {:?} vs {:?}", a.norms, b.norms);
            }
            let lc = (InvariantConnection::levi_civita(&m).curvature().norm(), InvariantConnection::levi_civita(&r).curvature().norm());
            assert!((lc.0 - lc.1).abs() < 1e-9, "{name}");
        }
    }
}
