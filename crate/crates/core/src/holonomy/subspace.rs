use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::lie::LieAlgebraSpan;
use super::linalg::{clusters, col, complement, coords, hcat, hermitian_basis, j_invariance_defect, off, orth, sym_commutant, vec_norm, Mat};
use super::HolonomySystem;
use crate::error::{Error, Result};
use crate::forms::{endo_of, standard_j_matrix};
use crate::report::ResidualReport;
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SubspaceKind {
    Generic,
    Isotropic,
    Null,
    Special,
}

impl std::fmt::Display for SubspaceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SubspaceKind::Generic => "generic",
            SubspaceKind::Isotropic => "isotropic",
            SubspaceKind::Null => "null",
            SubspaceKind::Special => "special",
        };
        f.write_str(s)
    }
}

/// A J-invariant subspace with its certified kind.
#[derive(Clone, Debug, Serialize)]
pub struct SubspaceRecord {
    #[serde(skip)]
    pub basis: Mat,
    pub dim: usize,
    pub kind: SubspaceKind,
    pub j_invariant: bool,
    pub h_invariant: bool,
    pub residuals: Vec<(String, f64)>,
}

/// max |(1 − P)AB| over the elements A of 𝔥.
pub fn h_invariance_defect(h: &LieAlgebraSpan, b: &Mat) -> f64 {
    h.basis
        .iter()
        .map(|a| {
            let ab = endo_of(a) * b;
            (&ab - b * (b.transpose() * &ab)).norm()
        })
        .fold(0.0, f64::max)
}

/// Symmetric endomorphisms commuting with J and with every element of 𝔥.
pub fn commutant(h: &LieAlgebraSpan, n: usize) -> Vec<Mat> {
    let ops: Vec<Mat> = std::iter::once(standard_j_matrix(n)).chain(h.basis.iter().map(endo_of)).collect();
    sym_commutant(&ops, n)
}

/// Eigenspaces of a seeded random element of the symmetric J-commuting
/// commutant of 𝔥, ordered by eigenvalue.
pub fn invariant_splitting(sys: &HolonomySystem, h: &LieAlgebraSpan, seed: u64, tol: f64) -> Vec<SubspaceRecord> {
    let n = sys.dim();
    let basis = commutant(h, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = basis.iter().fold(Mat::zeros(n, n), |acc, b| acc + b * rng.gen_range(-1.0..1.0));
    let eig = nalgebra::SymmetricEigen::new(a);
    let vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let scale = 1.0 + vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    clusters(&vals, tol::RANK * scale)
        .into_iter()
        .map(|g| {
            let b = Mat::from_fn(n, g.len(), |r, c| eig.eigenvectors[(r, g[c])]);
            record(sys, h, &hermitian_basis(&b), tol)
        })
        .collect()
}

/// Builds the record of a J-invariant subspace; the whole space is `generic`.
pub fn record(sys: &HolonomySystem, h: &LieAlgebraSpan, b: &Mat, tol: f64) -> SubspaceRecord {
    let jd = j_invariance_defect(b);
    let hd = h_invariance_defect(h, b);
    let (kind, mut residuals) = if b.ncols() < sys.dim() {
        classify_subspace(sys, b, tol).unwrap_or((SubspaceKind::Generic, Vec::new()))
    } else {
        (SubspaceKind::Generic, Vec::new())
    };
    residuals.insert(0, ("J-invariance".into(), jd));
    residuals.insert(1, ("𝔥-invariance".into(), hd));
    SubspaceRecord { dim: b.ncols(), basis: b.clone(), kind, j_invariant: jd <= tol, h_invariant: hd <= tol, residuals }
}

fn max_over<F: Fn(&[f64], &[f64]) -> f64>(a: &Mat, b: &Mat, f: F) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..a.ncols() {
        for j in 0..b.ncols() {
            worst = worst.max(f(&col(a, i), &col(b, j)));
        }
    }
    worst
}

/// Rank of the family {P_target ψ⁺(a_i, b_j)}.
fn image_rank(sys: &HolonomySystem, a: &Mat, b: &Mat, target: &Mat) -> usize {
    let mut vecs = Vec::new();
    for i in 0..a.ncols() {
        for j in 0..b.ncols() {
            vecs.push(coords(target, &sys.psi_xy(&col(a, i), &col(b, j))));
        }
    }
    let k = target.ncols();
    if vecs.is_empty() || k == 0 {
        return 0;
    }
    let m = Mat::from_fn(k, vecs.len(), |r, c| vecs[c][r]);
    orth(&m, tol::RANK).ncols()
}

/// Kind of a proper J-invariant subspace 𝒱 with H = 𝒱^⊥, by the defining
/// residuals: null ψ⁺(𝒱,𝒱) = 0, isotropic ψ⁺(𝒱,𝒱) ⊆ 𝒱, special null with
/// ψ⁺(H,H) = 𝒱. Special subspaces also carry ψ⁺(𝒱,H) = H.
pub fn classify_subspace(sys: &HolonomySystem, v: &Mat, tol: f64) -> Result<(SubspaceKind, Vec<(String, f64)>)> {
    let n = sys.dim();
    let k = v.ncols();
    if k == 0 || k >= n || v.nrows() != n {
        return Err(Error::Validation(format!("classify_subspace: subspace of rank {k} in dimension {n} is not proper")));
    }
    let jd = j_invariance_defect(v);
    if jd > tol {
        return Err(Error::Validation(format!("classify_subspace: subspace is not J-invariant (residual {jd:.3e})")));
    }
    let h = complement(v);
    let scale = 1.0 + sys.psi().norm();
    let t = tol * scale;
    let null = max_over(v, v, |a, b| vec_norm(&sys.psi_xy(a, b)));
    let iso = max_over(v, v, |a, b| vec_norm(&off(v, &sys.psi_xy(a, b))));
    let hh = max_over(&h, &h, |a, b| vec_norm(&off(v, &sys.psi_xy(a, b))));
    let hh_rank = image_rank(sys, &h, &h, v);
    let mut res = vec![
        ("ψ⁺(𝒱,𝒱) = 0".to_string(), null),
        ("ψ⁺(𝒱,𝒱) ⊆ 𝒱".to_string(), iso),
        ("ψ⁺(H,H) ⊆ 𝒱".to_string(), hh),
        ("rank deficit of ψ⁺(H,H) in 𝒱".to_string(), (k - hh_rank) as f64),
    ];
    let kind = if null <= t && hh <= t && hh_rank == k {
        let vh = max_over(v, &h, |a, b| vec_norm(&off(&h, &sys.psi_xy(a, b))));
        let vh_rank = image_rank(sys, v, &h, &h);
        res.push(("ψ⁺(𝒱,H) ⊆ H".to_string(), vh));
        res.push(("rank deficit of ψ⁺(𝒱,H) in H".to_string(), (h.ncols() - vh_rank) as f64));
        SubspaceKind::Special
    } else if null <= t {
        SubspaceKind::Null
    } else if iso <= t {
        SubspaceKind::Isotropic
    } else {
        SubspaceKind::Generic
    };
    Ok((kind, res))
}

/// Groups of records coupled by ψ⁺: W_i ~ W_j when ψ⁺(W_i, W_j) ≠ 0. The
/// merged subspaces carry ψ⁺ ∈ ⊕ λ³(V_k).
pub fn psi_components(sys: &HolonomySystem, records: &[SubspaceRecord], tol: f64) -> Vec<Mat> {
    let k = records.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    let t = tol * (1.0 + sys.psi().norm());
    for i in 0..k {
        for j in i + 1..k {
            let c = max_over(&records[i].basis, &records[j].basis, |a, b| vec_norm(&sys.psi_xy(a, b)));
            if c > t {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<(usize, Mat)> = Vec::new();
    for i in 0..k {
        let root = find(&mut parent, i);
        match groups.iter_mut().find(|(r, _)| *r == root) {
            Some((_, m)) => *m = hcat(m, &records[i].basis),
            None => groups.push((root, records[i].basis.clone())),
        }
    }
    groups.into_iter().map(|(_, m)| m).collect()
}

/// max |ψ⁺(a, b, ·)| over a ∈ A, b ∈ B.
pub fn psi_coupling(sys: &HolonomySystem, a: &Mat, b: &Mat) -> f64 {
    max_over(a, b, |x, y| vec_norm(&sys.psi_xy(x, y)))
}

/// Structure of ψ⁺ relative to an 𝔥-invariant J-invariant subspace 𝒱, and
/// the curvature along 𝒱 × H.
pub fn subspace_suite(sys: &HolonomySystem, v: &Mat, name: &str, tol: f64) -> Result<ResidualReport> {
    let n = sys.dim();
    if v.ncols() == 0 || v.ncols() >= n {
        return Err(Error::Validation("subspace_suite: subspace is not proper".into()));
    }
    let h = complement(v);
    let all = Mat::identity(n, n);
    let mut r = ResidualReport::new("subspace", name, sys.digest());
    // (ψ_a ∘ ψ_b)c = ψ⁺(a, ψ⁺(b, c, ·), ·)
    let chain = |a: &[f64], b: &[f64], c: &[f64]| sys.psi_xy(a, &sys.psi_xy(b, c));
    let mut i1: f64 = 0.0;
    let mut i2: f64 = 0.0;
    let mut i3: f64 = 0.0;
    let mut i4: f64 = 0.0;
    for x in 0..h.ncols() {
        let hx = col(&h, x);
        for a in 0..v.ncols() {
            let va = col(v, a);
            for b in 0..v.ncols() {
                let vb = col(v, b);
                i1 = i1.max(vec_norm(&chain(&hx, &va, &vb)));
                i3 = i3.max(vec_norm(&off(&h, &chain(&va, &vb, &hx))));
            }
        }
        for y in 0..h.ncols() {
            let hy = col(&h, y);
            for z in 0..h.ncols() {
                i2 = i2.max(vec_norm(&off(&h, &chain(&hx, &hy, &col(&h, z)))));
            }
            for a in 0..v.ncols() {
                i4 = i4.max(vec_norm(&off(v, &chain(&hx, &hy, &col(v, a)))));
            }
        }
    }
    r.check("(ψ_x∘ψ_v)w = 0", "(ψ⁺_x∘ψ⁺_v)w = 0 for x ∈ H, v,w ∈ 𝒱", i1, tol);
    r.check("(ψ_x∘ψ_y)z ∈ H", "(ψ⁺_x∘ψ⁺_y)z ∈ H for x,y,z ∈ H", i2, tol);
    r.check("(ψ_v∘ψ_w)x ∈ H", "(ψ⁺_v∘ψ⁺_w)x ∈ H for x ∈ H, v,w ∈ 𝒱", i3, tol);
    r.check("(ψ_x∘ψ_y)v ∈ 𝒱", "(ψ⁺_x∘ψ⁺_y)v ∈ 𝒱 for x,y ∈ H, v ∈ 𝒱", i4, tol);

    let rc = sys.curvature();
    let vh = max_over(v, &h, |a, b| rc.at(a, b).norm());
    r.check("R(𝒱,H) = 0", "R(v, x) = 0 for v ∈ 𝒱, x ∈ H", vh, tol);
    let mut cvh: f64 = 0.0;
    for x in 0..h.ncols() {
        let hx = col(&h, x);
        for y in 0..n {
            let ey = col(&all, y);
            let pxy = sys.psi_xy(&hx, &ey);
            for a in 0..v.ncols() {
                let va = col(v, a);
                let pa = sys.psi_endo(&va);
                for b in 0..v.ncols() {
                    let vb = col(v, b);
                    let pb = sys.psi_endo(&vb);
                    let br = &pa * &pb - &pb * &pa;
                    let bx = &br * nalgebra::DVector::from_column_slice(&hx);
                    let lhs = rc.eval4(&hx, &ey, &va, &vb);
                    let pvw = sys.psi_xy(&va, &vb);
                    let rhs = bx.dot(&nalgebra::DVector::from_column_slice(&ey))
                        - pvw.iter().zip(&pxy).map(|(p, q)| p * q).sum::<f64>();
                    cvh = cvh.max((lhs - rhs).abs());
                }
            }
        }
    }
    r.implies(
        "curvature along 𝒱 × H",
        "R(𝒱,H) = 0 ⇒ R(x,y,v,w) = ⟨[ψ⁺_v,ψ⁺_w]x,y⟩ − ⟨ψ⁺_vw, ψ⁺_xy⟩",
        vh,
        cvh,
        tol,
    );

    let (kind, res) = classify_subspace(sys, v, tol)?;
    for (name, val) in &res {
        r.note(name, name, *val, tol);
    }
    if kind == SubspaceKind::Special {
        let get = |k: &str| res.iter().find(|(n, _)| n == k).map_or(f64::INFINITY, |(_, v)| *v);
        r.check("Lemma: ψ⁺(𝒱,H) ⊆ H", "null, ψ⁺(H,H) ⊆ 𝒱 ⇒ ψ⁺(𝒱,H) ⊆ H", get("ψ⁺(𝒱,H) ⊆ H"), tol);
        r.check("Lemma: ψ⁺(𝒱,H) = H", "null, ψ⁺(H,H) ⊆ 𝒱 ⇒ ψ⁺(𝒱,H) = H", get("rank deficit of ψ⁺(𝒱,H) in H"), 0.5);
    }
    Ok(r)
}
