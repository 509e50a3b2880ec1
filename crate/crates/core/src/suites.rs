//! Named suites runnable on a model.

use crate::error::{Error, Result};
use crate::holonomy::{holonomy_suite, nk_suite, HolonomySystem};
use crate::model::HomogeneousModel;
use crate::report::ResidualReport;

pub const ALL: [&str; 7] = ["g1", "curvature", "w1w4", "killing", "product", "nk", "holonomy"];

/// Suites over random algebraic inputs; they take a dimension instead of a model.
pub const ALGEBRA: [&str; 2] = ["operators", "curvature-algebra"];

/// Default residual threshold of an [`ALGEBRA`] suite.
pub fn algebra_tol(name: &str) -> f64 {
    if name == "operators" {
        1e-9
    } else {
        crate::tol::IDENTITY
    }
}

/// Runs an [`ALGEBRA`] suite with its acceptance sample count.
pub fn run_algebra(name: &str, dim: usize, seed: u64, tol: f64) -> Result<ResidualReport> {
    match name {
        "operators" => crate::forms::operator_suite(dim, 200, seed, tol),
        "curvature-algebra" => crate::curvature::curvature_algebra_suite(dim, 100, seed, tol),
        other => Err(Error::Input(format!("unknown algebra suite `{other}` (expected one of {})", ALGEBRA.join(", ")))),
    }
}

/// `nk` and `holonomy` need a non-Kähler nearly-Kähler model; `seed` only
/// affects `holonomy`.
pub fn run(name: &str, model: &HomogeneousModel, seed: u64, tol: f64) -> Result<ResidualReport> {
    match name {
        "nk" => nk_suite(model, tol),
        "holonomy" => {
            let sys = HolonomySystem::from_model(model, tol)?;
            holonomy_suite(&sys, model.name(), seed, tol)
        }
        s if crate::g1::SUITES.contains(&s) => crate::g1::run_suite(s, model, tol),
        other => Err(Error::Input(format!("unknown suite `{other}` (expected one of {})", ALL.join(", ")))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{builtin, builtin_names};

    #[test]
    fn every_suite_passes_or_refuses_by_class() {
        for name in builtin_names() {
            let m = builtin(name).unwrap();
            for s in ["nk", "holonomy"] {
                match run(s, &m, 0, crate::tol::MODEL) {
                    Ok(r) => assert!(r.all_pass(), "{}", r.render()),
                    Err(Error::ClassMismatch(_)) => assert!(!["ledger_obata6", "flag6", "twistor6"].contains(name)),
                    Err(e) => panic!("{name} {s}: {e}"),
                }
            }
        }
        assert!(run_algebra("curvature-algebra", 6, 0, 1e-10).unwrap().all_pass());
        assert!(matches!(run("nope", &builtin("torus6").unwrap(), 0, 1e-8), Err(Error::Input(_))));
    }
}
