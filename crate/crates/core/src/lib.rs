//! Numerical workbench for almost-Hermitian geometry with skew torsion.
//!
//! The crate is organised bottom-up: [`forms`] provides the exterior algebra
//! and U(m) operator calculus, [`curvature`] the algebraic curvature spaces,
//! [`hermitian`] the pointwise intrinsic-torsion analysis, [`model`] the
//! homogeneous-space oracle that produces exact instances, [`g1`] the residual
//! suites, and [`holonomy`] the nearly-Kähler holonomy reduction. [`io`]
//! holds the JSON schemas, [`report`] the residual reports and [`suites`] the
//! name-based dispatch used by the command line.

pub mod curvature;
pub mod error;
pub mod forms;
pub mod g1;
pub mod hermitian;
pub mod holonomy;
pub mod io;
pub mod model;
pub mod report;
pub mod suites;
pub mod tol;

pub use error::{Error, Result};
