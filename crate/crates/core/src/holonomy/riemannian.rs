use serde::Serialize;

use super::lie::{bracket, LieAlgebraSpan};
use super::linalg::{col, complement, hermitian_basis, sym_commutant, Mat};
use super::panel::r_tensor;
use super::subspace::{classify_subspace, SubspaceKind};
use super::HolonomySystem;
use crate::curvature::{bianchi_b1, CurvatureLike};
use crate::error::{Error, Result};
use crate::forms::{endo_of, Form};
use crate::report::ResidualReport;
use crate::tol;

/// The Riemannian holonomy system (H, R^H, 𝔥^H) attached to a special
/// subspace 𝒱, with the algebras 𝔭 = {ψ⁺_v|_H}, 𝔮 = [𝔭, 𝔭] and 𝔯 = 𝔭 ⊕ 𝔮.
#[derive(Clone, Debug, Serialize)]
pub struct RiemannianReduction {
    pub dim_h: usize,
    pub dim_v: usize,
    #[serde(skip)]
    pub h_basis: Mat,
    #[serde(skip)]
    pub rh: CurvatureLike,
    pub hh: LieAlgebraSpan,
    pub p: LieAlgebraSpan,
    pub q: LieAlgebraSpan,
    pub r: LieAlgebraSpan,
    /// r|_𝒱 = ν·1.
    pub nu: f64,
    /// Dimension of the symmetric commutant of 𝔥^H on H; 1 when irreducible.
    pub commutant_dim: usize,
    pub r_derived_rank: usize,
    pub r_killing_max: f64,
    pub report: ResidualReport,
}

impl RiemannianReduction {
    pub fn is_irreducible(&self) -> bool {
        self.commutant_dim == 1
    }

    /// 𝔯 is three-dimensional, perfect and has negative definite Killing form.
    pub fn r_is_sp1(&self) -> bool {
        self.r.rank == 3 && self.r_derived_rank == 3 && self.r_killing_max < 0.0
    }
}

/// R^H(x, y) = R(x, y) + ψ⁺_{ψ⁺_x y}, restricted to H and written in the
/// Hermitian basis `hb` of H.
pub fn r_h(sys: &HolonomySystem, hb: &Mat) -> CurvatureLike {
    let n = sys.dim();
    let full = CurvatureLike::from_bilinear(n, |x, y| {
        let mut v = sys.curvature().at(x, y);
        v += &sys.psi_x(&sys.psi_xy(x, y));
        v
    });
    full.pullback(hb)
}

pub fn riemannian_reduction(sys: &HolonomySystem, v: &Mat, name: &str, tol: f64) -> Result<RiemannianReduction> {
    let (kind, _) = classify_subspace(sys, v, tol)?;
    if kind != SubspaceKind::Special {
        return Err(Error::Validation(format!("riemannian_reduction: the subspace is {kind}, not special")));
    }
    let hb = hermitian_basis(&complement(v));
    let (dh, dv) = (hb.ncols(), v.ncols());
    let rh = r_h(sys, &hb);
    let scale = 1.0 + rh.norm();
    let mut rep = ResidualReport::new("riemannian", name, sys.digest());
    rep.check("b₁(R^H) = 0", "R^H is an algebraic curvature tensor on H", bianchi_b1(&rh).norm(), tol * scale);
    rep.check("R^H pair symmetry", "R^H ∈ S²(Λ²H)", rh.pair_symmetry_defect(), tol * scale);

    let pv: Vec<Form> = (0..dv).map(|k| sys.psi_x(&col(v, k)).pullback(&hb)).collect();
    let p = LieAlgebraSpan::from_span(dh, &pv, tol::RANK, tol);
    let mut qg = Vec::new();
    for i in 0..p.basis.len() {
        for j in i + 1..p.basis.len() {
            qg.push(bracket(&p.basis[i], &p.basis[j]));
        }
    }
    let q = LieAlgebraSpan::from_span(dh, &qg, tol::RANK, tol);
    let joint = p.joint_rank(&q, tol::RANK);
    rep.check("𝔭 ∩ 𝔮 = 0", "rank 𝔭 + rank 𝔮 − rank(𝔭 + 𝔮)", (p.rank + q.rank - joint) as f64, 0.5);
    rep.check("rank 𝔭 = dim 𝒱", "v ↦ ψ⁺_v|_H is injective", (dv as f64 - p.rank as f64).abs(), 0.5);
    rep.check("[𝔭,[𝔭,𝔭]] ⊆ 𝔭", "𝔭 is a Lie triple system", p.bracket_defect(&q), tol * scale);
    let all: Vec<Form> = p.basis.iter().chain(&q.basis).cloned().collect();
    let r = LieAlgebraSpan::from_span(dh, &all, tol::RANK, tol);
    rep.check("𝔯 closed", "𝔯 = 𝔭 ⊕ 𝔮 is a subalgebra of Λ²H", r.closure_residual, tol * scale);

    let hh = LieAlgebraSpan::generated(dh, rh.rows(), tol::RANK, tol);
    rep.check("𝔯 ⊆ 𝔥^H", "𝔯 ⊆ Lie{R^H(x,y)}", hh.containment_defect(&r), tol * scale);
    rep.check("[𝔥^H, 𝔯] ⊆ 𝔯", "𝔯 is an ideal in 𝔥^H", r.bracket_defect(&hh), tol * scale);

    let rmat = r_tensor(sys);
    let mut rp: f64 = 0.0;
    for k in 0..dv {
        let vk = col(v, k);
        let rv: Vec<f64> = (&rmat * nalgebra::DVector::from_column_slice(&vk)).iter().copied().collect();
        let want = sys.psi_x(&rv).pullback(&hb).scaled(0.5);
        rp = rp.max(rh.apply(&pv[k]).dist(&want));
    }
    rep.check("R^H(ψ⁺_v) = ½ψ⁺_{rv}", "R^H(ψ⁺_v) = ½ψ⁺_{rv} on H, v ∈ 𝒱", rp, tol * scale);

    let rv = v.transpose() * &rmat * v;
    let nu = rv.trace() / dv as f64;
    rep.check("r|_𝒱 = ν·1", "r preserves 𝒱 and acts as a multiple of the identity", (&rv - Mat::identity(dv, dv) * nu).norm(), tol * scale);
    let on_r = r.basis.iter().map(|a| rh.apply(a).dist(&a.scaled(0.5 * nu))).fold(0.0, f64::max);
    rep.check("R^H = ν/2 on 𝔯", "R^H = (ν/2)·1 on 𝔯", on_r, tol * scale);

    let mut cs: f64 = 0.0;
    let mut cs_j: f64 = 0.0;
    let j = crate::forms::standard_j_matrix(sys.dim());
    let pe: Vec<Mat> = (0..dv).map(|k| sys.psi_endo(&col(v, k))).collect();
    for a in 0..dh {
        let x = nalgebra::DVector::from_column_slice(&col(&hb, a));
        for b in 0..dh {
            let y = nalgebra::DVector::from_column_slice(&col(&hb, b));
            let jy = &j * &y;
            let pxy = sys.psi_xy(x.as_slice(), y.as_slice());
            for i in 0..dv {
                for jj in 0..dv {
                    for k in 0..dv {
                        let inner = &pe[jj] * &pe[k] - &pe[k] * &pe[jj];
                        let ox = (&pe[i] * &inner - &inner * &pe[i]) * &x;
                        let lhs = sys.curvature().eval4(&pxy, &col(v, i), &col(v, jj), &col(v, k));
                        cs = cs.max((lhs - ox.dot(&y)).abs());
                        cs_j = cs_j.max((lhs - ox.dot(&jy)).abs());
                    }
                }
            }
        }
    }
    rep.check(
        "curvature along 𝒱",
        "R(ψ⁺_xy, v₁, v₂, v₃) = ⟨[ψ⁺_{v₁},[ψ⁺_{v₂},ψ⁺_{v₃}]]x, y⟩",
        cs,
        tol * scale,
    );
    rep.note(
        "curvature along 𝒱 (Jy)",
        "R(ψ⁺_xy, v₁, v₂, v₃) = ⟨[ψ⁺_{v₁},[ψ⁺_{v₂},ψ⁺_{v₃}]]x, Jy⟩",
        cs_j,
        tol * scale,
    );

    let ops: Vec<Mat> = hh.basis.iter().map(endo_of).collect();
    let commutant_dim = sym_commutant(&ops, dh).len();
    rep.note("commutant of 𝔥^H on H", "dimension of the symmetric commutant, 1 when irreducible", commutant_dim as f64 - 1.0, 0.5);
    let r_derived_rank = r.derived_rank(tol::RANK);
    let r_killing_max = r.killing_max_eigenvalue();
    Ok(RiemannianReduction {
        dim_h: dh,
        dim_v: dv,
        h_basis: hb,
        rh,
        hh,
        p,
        q,
        r,
        nu,
        commutant_dim,
        r_derived_rank,
        r_killing_max,
        report: rep,
    })
}
