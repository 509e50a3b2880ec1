//! Pointwise analysis of an almost-Hermitian structure from its first jet ∇ω:
//! the Nijenhuis tensor, the intrinsic torsion, the Gray–Hervella class and
//! the two canonical Hermitian connections.

mod classify;
mod torsion;

pub use classify::{gh_classify, GHClass, GHComponent};
pub use torsion::{connections, eta_hermitian_defect, lee_form, torsion_data, torsion_skew_defect, zeta_hermitian_defect, TorsionData};

use nalgebra as na;

use crate::error::{Error, Result};
use crate::forms::{endo_apply, endo_of, form_of_endo, j_vector, kahler_form, proj, pull_j, unit, Form, FormMap, HermitianSpace};
use crate::model::{HomogeneousModel, InvariantConnection};

/// Frame values X ↦ ∇_Xω of the Levi-Civita derivative of ω at a point.
#[derive(Clone, Debug)]
pub struct AHPoint {
    space: HermitianSpace,
    nabla_omega: FormMap,
}

impl AHPoint {
    /// ∇ω is given in the Hermitian frame of `space`.
    pub fn new(space: HermitianSpace, nabla_omega: FormMap, tol: f64) -> Result<Self> {
        let n = space.dim();
        if nabla_omega.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: nabla_omega.dim() });
        }
        if nabla_omega.degree() != 2 {
            return Err(Error::Degree { op: "AHPoint ∇ω", degree: nabla_omega.degree() });
        }
        let off = nabla_omega.vals().iter().map(|v| v.dist(&proj(v, 2, 0))).fold(0.0, f64::max);
        if off > tol * (1.0 + nabla_omega.norm()) {
            return Err(Error::Membership { what: "AHPoint: ∇ω has values outside λ²".into(), residual: off });
        }
        Ok(AHPoint { space, nabla_omega })
    }

    /// The point at the origin of a homogeneous model.
    pub fn from_model(model: &HomogeneousModel) -> Self {
        let lc = InvariantConnection::levi_civita(model);
        let w = kahler_form(model.dim_m());
        AHPoint { space: model.space(), nabla_omega: lc.deriv_all(&w) }
    }

    pub fn space(&self) -> &HermitianSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn m(&self) -> usize {
        self.space.dim() / 2
    }

    pub fn nabla_omega(&self) -> &FormMap {
        &self.nabla_omega
    }

    /// ∇_X J as a matrix, from ⟨(∇_XJ)Y, Z⟩ = (∇_Xω)(Y,Z).
    pub fn nabla_j(&self, x: &[f64]) -> na::DMatrix<f64> {
        endo_of(&self.nabla_omega.at(x))
    }

    /// (∇_XJ)Y.
    pub fn nabla_j_apply(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        endo_apply(&self.nabla_omega.at(x), y)
    }

    /// dω = a(∇ω).
    pub fn d_omega(&self) -> Form {
        self.nabla_omega.alternation()
    }

    /// Intrinsic torsion η_X = ½(∇_XJ)J, i.e. η_X(Y,Z) = ½(∇_Xω)(JY,Z).
    pub fn eta(&self) -> FormMap {
        let n = self.dim();
        let j = crate::forms::standard_j_matrix(n);
        FormMap::from_fn(n, 2, |i| form_of_endo(&(endo_of(self.nabla_omega.at_basis(i)) * &j * 0.5)))
    }

    /// N_J(X,Y) = −[(∇_{JX}J)Y − (∇_{JY}J)X] + J[(∇_XJ)Y − (∇_YJ)X].
    pub fn nijenhuis_vector(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let jx = j_vector(x);
        let jy = j_vector(y);
        let a = self.nabla_j_apply(&jx, y);
        let b = self.nabla_j_apply(&jy, x);
        let c = self.nabla_j_apply(x, y);
        let d = self.nabla_j_apply(y, x);
        let inner: Vec<f64> = c.iter().zip(&d).map(|(c, d)| c - d).collect();
        let jinner = j_vector(&inner);
        (0..x.len()).map(|k| -(a[k] - b[k]) + jinner[k]).collect()
    }

    /// N^J_X(Y,Z) = ⟨N_J(Y,Z), X⟩.
    pub fn nijenhuis_tensor(&self) -> FormMap {
        let n = self.dim();
        let mut vals = vec![Form::zero(n, 2); n];
        for y in 0..n {
            for z in y + 1..n {
                let v = self.nijenhuis_vector(&unit(n, y), &unit(n, z));
                for (x, val) in vals.iter_mut().enumerate() {
                    val.add_term(&[y, z], v[x]);
                }
            }
        }
        FormMap::from_vals(vals)
    }

    /// Residual of 2∇_Xω = −N^J_{JX} + X⌟dω + JX⌟Jdω over the frame.
    pub fn jet1_defect(&self) -> f64 {
        let n = self.dim();
        let nj = self.nijenhuis_tensor();
        let dw = self.d_omega();
        let jdw = pull_j(&dw);
        let rhs = FormMap::from_fn(n, 2, |i| {
            let x = unit(n, i);
            let jx = j_vector(&x);
            -nj.at(&jx) + dw.contract(&x) + jdw.contract(&jx)
        });
        self.nabla_omega.scaled(2.0).dist(&rhs)
    }

    /// Polarised defect of (∇_{JX}J)JX = (∇_XJ)X over frame pairs. This
    /// quadratic identity holds exactly on class 𝒢₁.
    pub fn g1_quadratic_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in a..n {
                let x = unit(n, a);
                let y = unit(n, b);
                let (jx, jy) = (j_vector(&x), j_vector(&y));
                let (p, q) = (self.nabla_j_apply(&jx, &jy), self.nabla_j_apply(&jy, &jx));
                let (r, u) = (self.nabla_j_apply(&x, &y), self.nabla_j_apply(&y, &x));
                let s: f64 = (0..n).map(|k| (p[k] + q[k] - r[k] - u[k]).powi(2)).sum();
                worst = worst.max(s.sqrt());
            }
        }
        worst
    }
}

/// N̂^J_X = N^J_X − (4/3) X⌟Jd³ω.
pub fn nijenhuis(pt: &AHPoint) -> (FormMap, FormMap) {
    let nj = pt.nijenhuis_tensor();
    let jd3 = pull_j(&proj(&pt.d_omega(), 3, 0));
    let hat = nj.sub(&FormMap::contraction_of(&jd3).scaled(4.0 / 3.0));
    (nj, hat)
}

/// Defect of the Nijenhuis symmetries N(Y,Z) = −N(Z,Y), N(JY,JZ) = −N(Y,Z)
/// and N(JY,Z) = −JN(Y,Z) over the frame.
pub fn nijenhuis_symmetry_defect(pt: &AHPoint) -> f64 {
    let n = pt.dim();
    let mut worst: f64 = 0.0;
    let diff = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
    for a in 0..n {
        for b in 0..n {
            let (y, z) = (unit(n, a), unit(n, b));
            let (jy, jz) = (j_vector(&y), j_vector(&z));
            let nyz = pt.nijenhuis_vector(&y, &z);
            let neg: Vec<f64> = nyz.iter().map(|v| -v).collect();
            let jn: Vec<f64> = j_vector(&nyz).iter().map(|v| -v).collect();
            worst = worst
                .max(diff(&pt.nijenhuis_vector(&z, &y), &neg))
                .max(diff(&pt.nijenhuis_vector(&jy, &jz), &neg))
                .max(diff(&pt.nijenhuis_vector(&jy, &z), &jn));
        }
    }
    worst
}
