//! Exterior algebra over a Hermitian vector space.

pub mod basis;
pub mod bidegree;
pub mod form;
pub mod map;
pub mod ops;
pub mod space;
pub mod suite;

pub use bidegree::{bidegree_project, labels, proj, split, BidegreeLabel};
pub use form::Form;
pub use map::FormMap;
pub use ops::{
    bul, bullet, calj, comm, commutator2, endo_apply, endo_of, form_of_endo, j_covector, j_vector, jj,
    kahler_form, lefschetz, lefschetz_adjoint, pull_j, unit,
};
pub use space::{standard_j as standard_j_matrix, HermitianSpace};
pub use suite::{bidegree_basis, operator_suite};
