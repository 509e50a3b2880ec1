//! Default tolerances.

/// Absolute residual threshold for algebraic identities.
pub const IDENTITY: f64 = 1e-10;
/// Relative threshold for rank and eigenvalue-cluster decisions.
pub const RANK: f64 = 1e-7;
/// Norm threshold for intrinsic-torsion class flags.
pub const CLASS: f64 = 1e-8;
/// Residual threshold for model-derived (multi-step) identities.
pub const MODEL: f64 = 1e-8;
/// Eigenvalue gap used when clustering spectra of symmetric panels.
pub const CLUSTER_GAP: f64 = 1e-6;
