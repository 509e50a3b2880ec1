//! Nearly-Kähler holonomy systems (V, g, J, ψ⁺, R) and their reduction into
//! irreducible and special factors.

pub mod lie;
pub mod linalg;
mod panel;
mod reduce;
mod riemannian;
mod subspace;
mod suite;

pub use lie::{bracket, stabilizer, LieAlgebraSpan};
pub use panel::{nk_suite, r_tensor, ricci_contraction, ricci_panel, SymmetricPanel, TableFit};
pub use reduce::{reduce_system, FactorNode, NodeKind};
pub use riemannian::{r_h, riemannian_reduction, RiemannianReduction};
pub use suite::{clause_report, holonomy_suite};
pub use subspace::{
    classify_subspace, commutant, h_invariance_defect, invariant_splitting, psi_components, record, subspace_suite, SubspaceKind,
    SubspaceRecord,
};

use nalgebra as na;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curvature::{bianchi_b1, split_s2_lambda11, CurvatureLike};
use crate::error::{Error, Result};
use crate::forms::{bul, comm, endo_of, proj, standard_j_matrix, Form};
use crate::g1::{nondegeneracy, G1Context};
use crate::model::HomogeneousModel;
use linalg::{hermitian_basis, Mat};

/// Validated holonomy system in an orthonormal Hermitian frame.
#[derive(Clone, Debug)]
pub struct HolonomySystem {
    psi: Form,
    r: CurvatureLike,
    rk: CurvatureLike,
    omega: Form,
    sigma_min: f64,
    checks: Vec<(&'static str, f64)>,
}

impl HolonomySystem {
    /// Certifies every clause of the definition; the first failing clause is
    /// reported by name.
    pub fn new(psi: Form, r: CurvatureLike, tol: f64) -> Result<Self> {
        let n = psi.dim();
        if r.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: r.dim() });
        }
        if psi.degree() != 3 {
            return Err(Error::Degree { op: "holonomy system ψ⁺", degree: psi.degree() });
        }
        let pn = psi.norm();
        if pn <= tol {
            return Err(Error::Validation("clause (ii): ψ⁺ must be a non-zero 3-form".into()));
        }
        let off = psi.dist(&proj(&psi, 0, 3));
        if off > tol * (1.0 + pn) {
            return Err(Error::Validation(format!("clause (ii): ψ⁺ is not in λ³ (residual {off:.3e})")));
        }
        let scale = 1.0 + r.norm();
        let (rk, omega) = split_s2_lambda11(&r, tol).map_err(|e| {
            Error::Validation(format!("clause (iii): R must lie in S²(λ^{{1,1}}) ({e})"))
        })?;
        let want = bul(&psi, &psi).scaled(0.5);
        let om_res = omega.dist(&want);
        if om_res > tol * scale {
            return Err(Error::Validation(format!("clause (iii): Ω = ½ψ⁺∙ψ⁺ fails (residual {om_res:.3e})")));
        }
        let kahler = bianchi_b1(&rk).norm();
        if kahler > tol * scale {
            return Err(Error::Validation(format!("clause (iii): R^K is not in 𝒦(𝔲(m)) (residual {kahler:.3e})")));
        }
        let inv = r.rows().iter().map(|row| comm(row, &psi).norm()).fold(0.0, f64::max);
        if inv > tol * scale * (1.0 + pn) {
            return Err(Error::Validation(format!("clause (iii): [R(x,y), ψ⁺] = 0 fails (residual {inv:.3e})")));
        }
        let checks = vec![
            ("ψ⁺ ∈ λ³", off),
            ("R ∈ S²(λ^{1,1})", r.pair_symmetry_defect().max(r.value_slot_11_defect())),
            ("Ω = ½ψ⁺∙ψ⁺", om_res),
            ("R^K ∈ 𝒦(𝔲(m))", kahler),
            ("[R(x,y), ψ⁺] = 0", inv),
        ];
        let sigma_min = nondegeneracy(&psi);
        Ok(HolonomySystem { psi, r, rk, omega, sigma_min, checks })
    }

    /// ψ⁺ and the curvature of the characteristic connection at the origin
    /// of a nearly-Kähler model.
    pub fn from_model(model: &HomogeneousModel, tol: f64) -> Result<Self> {
        let ctx = G1Context::new(model, tol)?;
        let t = ctx.torsion.t.norm();
        if t > tol || ctx.torsion.psi_plus.norm() <= tol {
            return Err(Error::ClassMismatch(format!(
                "holonomy systems need a non-Kähler nearly-Kähler model; {} has |t| = {t:.3e}, |ψ⁺| = {:.3e}",
                model.name(),
                ctx.torsion.psi_plus.norm()
            )));
        }
        HolonomySystem::new(ctx.torsion.psi_plus.clone(), ctx.d.curvature(), tol)
    }

    pub fn dim(&self) -> usize {
        self.psi.dim()
    }

    pub fn psi(&self) -> &Form {
        &self.psi
    }

    pub fn curvature(&self) -> &CurvatureLike {
        &self.r
    }

    pub fn kahler_part(&self) -> &CurvatureLike {
        &self.rk
    }

    pub fn omega(&self) -> &Form {
        &self.omega
    }

    pub fn checks(&self) -> &[(&'static str, f64)] {
        &self.checks
    }

    /// Smallest singular value of x ↦ x⌟ψ⁺.
    pub fn sigma_min(&self) -> f64 {
        self.sigma_min
    }

    /// x⌟ψ⁺ = 0 forces x = 0.
    pub fn is_strict(&self) -> bool {
        self.sigma_min > crate::tol::RANK * (1.0 + self.psi.norm())
    }

    /// SHA-256 of ψ⁺ and R rounded to 12 significant digits.
    pub fn digest(&self) -> String {
        let mut s = String::new();
        for c in self.psi.coeffs().iter().chain(self.r.rows().iter().flat_map(|f| f.coeffs().iter())) {
            s.push_str(&format!("{:.11e};", crate::report::round_sig(*c)));
        }
        crate::report::digest(s.as_bytes())
    }

    /// The vector ψ⁺_x y = ψ⁺(x, y, ·).
    pub fn psi_xy(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        self.psi.contract(x).contract(y).to_vector()
    }

    /// x⌟ψ⁺ as a 2-form.
    pub fn psi_x(&self, x: &[f64]) -> Form {
        self.psi.contract(x)
    }

    /// The skew endomorphism ψ⁺_x.
    pub fn psi_endo(&self, x: &[f64]) -> Mat {
        endo_of(&self.psi.contract(x))
    }

    /// Orthogonal sum; the frame of `a` comes first.
    pub fn direct_sum(a: &HolonomySystem, b: &HolonomySystem, tol: f64) -> Result<Self> {
        let (na_, nb) = (a.dim(), b.dim());
        let n = na_ + nb;
        if n > crate::forms::basis::MAX_DIM {
            return Err(Error::Validation(format!("direct sum of dimension {n} exceeds the supported maximum")));
        }
        let pa = Mat::from_fn(na_, n, |r, c| if r == c { 1.0 } else { 0.0 });
        let pb = Mat::from_fn(nb, n, |r, c| if r + na_ == c { 1.0 } else { 0.0 });
        let psi = a.psi.pullback(&pa) + b.psi.pullback(&pb);
        let r = a.r.pullback(&pa).add(&b.r.pullback(&pb));
        HolonomySystem::new(psi, r, tol)
    }

    /// The system transported by an orthogonal, J-commuting q: subspaces W
    /// of `self` correspond to qW.
    pub fn transform(&self, q: &Mat, tol: f64) -> Result<Self> {
        let qt = q.transpose();
        HolonomySystem::new(self.psi.pullback(&qt), self.r.pullback(&qt), tol)
    }

    /// Restriction to a J-invariant subspace, re-expressed in a Hermitian
    /// basis of it; the basis (columns in the ambient frame) is returned too.
    pub fn restrict(&self, b: &Mat, tol: f64) -> Result<(Self, Mat)> {
        let hb = hermitian_basis(b);
        let sys = HolonomySystem::new(self.psi.pullback(&hb), self.r.pullback(&hb), tol)?;
        Ok((sys, hb))
    }
}

/// A seeded orthogonal map commuting with J (Cayley transform of a random
/// element of 𝔲(m)).
pub fn random_unitary(n: usize, seed: u64) -> Mat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = Mat::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    let skew = (&x - x.transpose()) * 0.5;
    let j = standard_j_matrix(n);
    let a = (&skew - &j * &skew * &j) * 0.5;
    let id = Mat::identity(n, n);
    let inv = (&id + &a).try_inverse().expect("I + A is invertible for skew A");
    (&id - &a) * inv
}

/// Orthogonality and J-commutation defect of q.
pub fn unitary_defect(q: &Mat) -> f64 {
    let n = q.nrows();
    let j = standard_j_matrix(n);
    (q.transpose() * q - na::DMatrix::identity(n, n)).norm().max((q * &j - &j * q).norm())
}

#[cfg(test)]
mod tests;
