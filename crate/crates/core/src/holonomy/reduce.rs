use serde::{Serialize, Serializer};

use super::lie::LieAlgebraSpan;
use super::linalg::{col, complement, hcat, hermitian_basis, j_invariance_defect, max_angle_sin, null_space, orth, sym_commutant, Mat};
use super::riemannian::riemannian_reduction;
use super::subspace::{classify_subspace, commutant, invariant_splitting, psi_components, psi_coupling, subspace_suite, SubspaceKind, SubspaceRecord};
use super::HolonomySystem;
use crate::error::{Error, Result};
use crate::forms::endo_of;
use crate::report::round_sig;
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Split,
    Irreducible,
    Special,
}

fn ser_basis<S: Serializer>(m: &Mat, s: S) -> std::result::Result<S::Ok, S::Error> {
    let cols: Vec<Vec<f64>> = (0..m.ncols()).map(|c| col(m, c).into_iter().map(round_sig).collect()).collect();
    cols.serialize(s)
}

fn ser_opt_basis<S: Serializer>(m: &Option<Mat>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match m {
        Some(m) => ser_basis(m, s),
        None => s.serialize_none(),
    }
}

fn ser_certs<S: Serializer>(c: &[(String, f64)], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<(&str, f64)> = c.iter().map(|(n, x)| (n.as_str(), round_sig(*x))).collect();
    v.serialize(s)
}

/// A node of the factorization tree. Bases are columns in the coordinates of
/// the root system.
#[derive(Clone, Debug, Serialize)]
pub struct FactorNode {
    pub dim: usize,
    pub kind: NodeKind,
    #[serde(serialize_with = "ser_basis")]
    pub basis: Mat,
    #[serde(serialize_with = "ser_certs")]
    pub certificates: Vec<(String, f64)>,
    #[serde(serialize_with = "ser_opt_basis")]
    pub special: Option<Mat>,
    pub children: Vec<FactorNode>,
}

impl FactorNode {
    pub fn leaves(&self) -> Vec<&FactorNode> {
        if self.children.is_empty() {
            vec![self]
        } else {
            self.children.iter().flat_map(|c| c.leaves()).collect()
        }
    }

    /// Largest certificate residual in the tree.
    pub fn worst_certificate(&self) -> f64 {
        self.certificates
            .iter()
            .map(|(_, v)| *v)
            .chain(self.children.iter().map(|c| c.worst_certificate()))
            .fold(0.0, f64::max)
    }
}

struct Ctx {
    tol: f64,
    budget: usize,
}

/// Factorization of a strict system into irreducible factors and factors
/// carrying a special subspace whose Riemannian system is irreducible.
pub fn reduce_system(sys: &HolonomySystem, seed: u64, tol: f64) -> Result<FactorNode> {
    if !sys.is_strict() {
        return Err(Error::Validation(format!(
            "reduce: the system is not strict (σ_min(x ↦ x⌟ψ⁺) = {:.3e})",
            sys.sigma_min()
        )));
    }
    let n = sys.dim();
    let mut ctx = Ctx { tol, budget: n };
    node(sys, &Mat::identity(n, n), seed, &mut ctx)
}

fn holonomy_of(sys: &HolonomySystem, tol: f64) -> LieAlgebraSpan {
    LieAlgebraSpan::generated(sys.dim(), sys.curvature().rows(), tol::RANK, tol)
}

fn node(sys: &HolonomySystem, embed: &Mat, seed: u64, ctx: &mut Ctx) -> Result<FactorNode> {
    let n = sys.dim();
    if ctx.budget == 0 {
        return Err(Error::CannotCertify(format!("reduce: iteration cap reached at a factor of dimension {n}")));
    }
    ctx.budget -= 1;
    let tol = ctx.tol;
    let h = holonomy_of(sys, tol);
    let records = invariant_splitting(sys, &h, seed, tol);
    let comps = psi_components(sys, &records, tol);
    if comps.len() > 1 {
        return split(sys, embed, &comps, seed, ctx, "ψ⁺-components");
    }
    if records.len() == 1 {
        let cdim = commutant(&h, n).len();
        let certs = vec![
            ("J-commuting symmetric commutant of 𝔥, minus 1".to_string(), cdim as f64 - 1.0),
            ("𝔥 closure".to_string(), h.closure_residual),
        ];
        return Ok(FactorNode { dim: n, kind: NodeKind::Irreducible, basis: embed.clone(), certificates: certs, special: None, children: vec![] });
    }
    let Some(v) = find_special(sys, &records, tol) else {
        return Err(Error::CannotCertify(format!(
            "reduce: factor of dimension {n} has {} invariant pieces of dimensions {:?} but no special invariant subspace was certified",
            records.len(),
            records.iter().map(|r| r.dim).collect::<Vec<_>>()
        )));
    };
    let rr = riemannian_reduction(sys, &v, "factor", tol)?;
    if !rr.report.all_pass() {
        let failed: Vec<&str> = rr.report.items.iter().filter(|i| i.gated && !i.pass).map(|i| i.name.as_str()).collect();
        return Err(Error::CannotCertify(format!("reduce: Riemannian reduction checks failed: {failed:?}")));
    }
    if rr.is_irreducible() {
        let sub = subspace_suite(sys, &v, "factor", tol)?;
        let mut certs: Vec<(String, f64)> = Vec::new();
        for it in sub.items.iter().chain(&rr.report.items).filter(|i| i.gated) {
            certs.push((it.name.clone(), it.residual));
        }
        let hv = restricted_commutant_dim(sys, &h, &v);
        certs.push(("commutant of (𝔥, 𝒱), minus 1".into(), hv as f64 - 1.0));
        if hv != 1 {
            return Err(Error::CannotCertify(format!("reduce: (𝔥, 𝒱) is reducible (commutant dimension {hv})")));
        }
        let worst = certs.iter().map(|(_, x)| *x).fold(0.0, f64::max);
        if worst > 0.5 || sub.items.iter().any(|i| i.gated && !i.pass) {
            return Err(Error::CannotCertify("reduce: special leaf certificates failed".into()));
        }
        return Ok(FactorNode {
            dim: n,
            kind: NodeKind::Special,
            basis: embed.clone(),
            certificates: certs,
            special: Some(embed * &v),
            children: vec![],
        });
    }
    // 𝔥^H reducible: H = H₁ ⊕ H₂ and V_k = ψ⁺(H_k, H_k) ⊕ H_k.
    let hb = rr.h_basis.clone();
    let ops: Vec<Mat> = rr.hh.basis.iter().map(endo_of).collect();
    let comm = sym_commutant(&ops, hb.ncols());
    let pieces = eigen_pieces(&comm, seed);
    let h1 = &hb * &pieces[0];
    let h2 = complement(&hcat(&h1, &v));
    let mut parts = Vec::new();
    for hk in [&h1, &h2] {
        let mut vecs = Vec::new();
        for a in 0..hk.ncols() {
            for b in 0..hk.ncols() {
                vecs.push(sys.psi_xy(&col(hk, a), &col(hk, b)));
            }
        }
        let m = Mat::from_fn(n, vecs.len(), |r, c| vecs[c][r]);
        parts.push(hermitian_basis(&hcat(&orth(&m, tol::RANK), hk)));
    }
    split(sys, embed, &parts, seed, ctx, "H₁ ⊕ H₂ refinement")
}

/// Orthonormal eigenspace bases of a seeded random element of the span.
fn eigen_pieces(span: &[Mat], seed: u64) -> Vec<Mat> {
    use rand::{Rng, SeedableRng};
    let n = span[0].nrows();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let a = span.iter().fold(Mat::zeros(n, n), |acc, b| acc + b * rng.gen_range(-1.0..1.0));
    let eig = nalgebra::SymmetricEigen::new(a);
    let vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let scale = 1.0 + vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    super::linalg::clusters(&vals, tol::RANK * scale)
        .into_iter()
        .map(|g| Mat::from_fn(n, g.len(), |r, c| eig.eigenvectors[(r, g[c])]))
        .collect()
}

fn restricted_commutant_dim(sys: &HolonomySystem, h: &LieAlgebraSpan, v: &Mat) -> usize {
    let k = v.ncols();
    let j = crate::forms::standard_j_matrix(sys.dim());
    let ops: Vec<Mat> = std::iter::once(&j).chain(h.basis.iter().map(endo_of).collect::<Vec<_>>().iter()).map(|a| v.transpose() * a * v).collect();
    sym_commutant(&ops, k).len()
}

/// Null invariant candidates, by the F₀ construction and the r₁-kernel, and
/// the first of them that is special.
fn find_special(sys: &HolonomySystem, records: &[SubspaceRecord], tol: f64) -> Option<Mat> {
    let n = sys.dim();
    let k = records.len().min(12);
    let mut subsets: Vec<u32> = (1..(1u32 << k) - 1).collect();
    let dim_of = |s: u32| (0..k).filter(|i| s >> i & 1 == 1).map(|i| records[i].dim).sum::<usize>();
    subsets.sort_by_key(|&s| (dim_of(s), s));
    let mut candidates: Vec<Mat> = Vec::new();
    let push = |c: Mat, out: &mut Vec<Mat>| {
        if c.ncols() == 0 || c.ncols() >= n || j_invariance_defect(&c) > tol {
            return;
        }
        if out.iter().any(|o| max_angle_sin(o, &c) < 1e-6) {
            return;
        }
        out.push(c);
    };
    for s in subsets {
        let e = (0..k).filter(|i| s >> i & 1 == 1).fold(Mat::zeros(n, 0), |acc, i| hcat(&acc, &records[i].basis));
        let f = complement(&e);
        if psi_coupling(sys, &e, &e) <= tol * (1.0 + sys.psi().norm()) {
            push(hermitian_basis(&e), &mut candidates);
        }
        // F₀ = span{(ψ⁺_v w)_F : v, w ∈ E}.
        let mut vecs = Vec::new();
        for a in 0..e.ncols() {
            for b in a + 1..e.ncols() {
                let p = sys.psi_xy(&col(&e, a), &col(&e, b));
                vecs.push((f.transpose() * nalgebra::DVector::from_column_slice(&p)).iter().copied().collect::<Vec<f64>>());
            }
        }
        if !vecs.is_empty() {
            let m = Mat::from_fn(f.ncols(), vecs.len(), |r, c| vecs[c][r]);
            let f0 = orth(&m, tol::RANK);
            if f0.ncols() > 0 {
                push(hermitian_basis(&(&f * f0)), &mut candidates);
            } else {
                // E isotropic: 𝒱₀ = ker r₁ is null.
                let r1 = r1_on(sys, &e);
                let ker = null_space(&r1, tol::RANK);
                if ker.ncols() > 0 {
                    push(hermitian_basis(&(&e * ker)), &mut candidates);
                }
            }
        }
    }
    candidates.into_iter().find(|c| matches!(classify_subspace(sys, c, tol), Ok((SubspaceKind::Special, _))))
}

/// ⟨r₁v, w⟩ = Tr_E(ψ⁺_v ∘ ψ⁺_w) in the basis of E.
fn r1_on(sys: &HolonomySystem, e: &Mat) -> Mat {
    let k = e.ncols();
    let pe: Vec<Mat> = (0..k).map(|a| e.transpose() * sys.psi_endo(&col(e, a)) * e).collect();
    Mat::from_fn(k, k, |a, b| (&pe[a] * &pe[b]).trace())
}

fn split(sys: &HolonomySystem, embed: &Mat, parts: &[Mat], seed: u64, ctx: &mut Ctx, why: &str) -> Result<FactorNode> {
    let n = sys.dim();
    let tol = ctx.tol;
    let mut certs = Vec::new();
    for p in parts {
        if p.ncols() <= 4 {
            return Err(Error::CannotCertify(format!("reduce: {why} produced a factor of dimension {} (≤ 4)", p.ncols())));
        }
    }
    let total: usize = parts.iter().map(|p| p.ncols()).sum();
    let all = parts.iter().fold(Mat::zeros(n, 0), |acc, p| hcat(&acc, p));
    let orth_res = (all.transpose() * &all - Mat::identity(total, total)).norm();
    if total != n || orth_res > tol::RANK {
        return Err(Error::CannotCertify(format!("reduce: {why} does not give an orthogonal decomposition (ranks sum to {total} of {n})")));
    }
    let mut psi_sum = crate::forms::Form::zero(n, 3);
    let mut r_sum = crate::curvature::CurvatureLike::zero(n);
    for p in parts {
        psi_sum += &sys.psi().pullback(p).pullback(&p.transpose());
        r_sum = r_sum.add(&sys.curvature().pullback(p).pullback(&p.transpose()));
    }
    certs.push(("ψ⁺ ∈ ⊕ λ³(V_k)".to_string(), sys.psi().dist(&psi_sum)));
    certs.push(("R ∈ ⊕ S²(λ^{1,1}V_k)".to_string(), sys.curvature().dist(&r_sum)));
    let scale = 1.0 + sys.psi().norm() + sys.curvature().norm();
    if certs.iter().any(|(_, v)| *v > tol * scale) {
        return Err(Error::CannotCertify(format!("reduce: {why} is not a product splitting ({certs:?})")));
    }
    let mut children = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        let (sub, hb) = sys.restrict(p, tol)?;
        children.push(node(&sub, &(embed * &hb), seed.wrapping_add(i as u64 + 1), ctx)?);
    }
    Ok(FactorNode { dim: n, kind: NodeKind::Split, basis: embed.clone(), certificates: certs, special: None, children })
}
