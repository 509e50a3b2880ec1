//! Identity suites for structures of class 𝒢₁ realised on homogeneous
//! models: Hermitian Killing forms, the differential relations between the
//! torsion components, and the u(m)-split of the curvature of D.

mod killing;
mod suites;

pub use killing::{killing_check, killing_defect, KillingCertificate};
pub use suites::{curvature_suite, g1_identity_suite, kahler_identity_defects, nondegeneracy, product_rule_suite, run_suite, w1w4_suite, SUITES};

use crate::error::Result;
use crate::forms::{FormMap, Form};
use crate::hermitian::{connections, gh_classify, torsion_data, AHPoint, GHClass, TorsionData};
use crate::model::{HomogeneousModel, InvariantConnection};

/// Everything the suites need about a 𝒢₁ model: the jet of ω, its torsion
/// data and the characteristic connection D = ∇ + ζ.
pub struct G1Context<'a> {
    pub model: &'a HomogeneousModel,
    pub point: AHPoint,
    pub torsion: TorsionData,
    pub class: GHClass,
    pub zeta: FormMap,
    pub d: InvariantConnection<'a>,
    pub lc: InvariantConnection<'a>,
    pub tol: f64,
}

impl<'a> G1Context<'a> {
    /// Fails with `NotG1` when N̂^J exceeds `tol`.
    pub fn new(model: &'a HomogeneousModel, tol: f64) -> Result<Self> {
        let point = AHPoint::from_model(model);
        let torsion = torsion_data(&point, tol)?;
        let class = gh_classify(&point, tol);
        let (_, zeta) = connections(&point);
        let lc = InvariantConnection::levi_civita(model);
        let d = InvariantConnection::new(model, lc.potential().add(&zeta))?;
        Ok(G1Context { model, point, torsion, class, zeta, d, lc, tol })
    }

    pub fn dim(&self) -> usize {
        self.model.dim_m()
    }

    /// Jt.
    pub fn jt(&self) -> Form {
        crate::forms::pull_j(&self.torsion.t)
    }

    /// The Lee form, zero when m = 1.
    pub fn theta(&self) -> Form {
        self.torsion.theta.clone().unwrap_or_else(|| Form::zero(self.dim(), 1))
    }
}

#[cfg(test)]
mod tests;
