use nalgebra as na;
use serde::Serialize;

use super::linalg::{clusters, col, complement, spectrum, Mat};
use super::HolonomySystem;
use crate::curvature::tensor::mat_vec;
use crate::curvature::CurvatureLike;
use crate::error::{Error, Result};
use crate::forms::{endo_apply, standard_j_matrix, unit, Form, FormMap};
use crate::g1::G1Context;
use crate::model::HomogeneousModel;
use crate::report::ResidualReport;
use crate::tol;

/// ⟨rX, Y⟩ = ⟨X⌟ψ⁺, Y⌟ψ⁺⟩ with the tensor inner product on 2-forms,
/// Σ_{i,j} α(eᵢ,eⱼ)β(eᵢ,eⱼ).
pub fn r_tensor(sys: &HolonomySystem) -> Mat {
    let n = sys.dim();
    let c: Vec<Form> = (0..n).map(|a| sys.psi().contract_basis(a)).collect();
    Mat::from_fn(n, n, |a, b| 2.0 * c[a].dot(&c[b]))
}

/// ⟨Ric X, Y⟩ = Σᵢ R(X, eᵢ, Y, eᵢ).
pub fn ricci_contraction(r: &CurvatureLike) -> Mat {
    let n = r.dim();
    Mat::from_fn(n, n, |a, b| (0..n).map(|i| r.eval4(&unit(n, a), &unit(n, i), &unit(n, b), &unit(n, i))).sum())
}

/// Symmetric, J-commuting defect  |S − Sᵀ| + |SJ − JS|.
fn hermitian_defect(s: &Mat) -> f64 {
    let j = standard_j_matrix(s.nrows());
    (s - s.transpose()).norm() + (s * &j - &j * s).norm()
}

/// One reading of the two-eigenvalue table with its fit against the
/// computed eigenvalues of r, Ric and C on 𝒱 and H.
#[derive(Clone, Debug, Serialize)]
pub struct TableFit {
    pub interpretation: String,
    pub n: f64,
    pub d: f64,
    pub k: f64,
    /// Rows 𝒱, H; columns r, Ric, C.
    pub predicted: [[f64; 3]; 2],
    pub observed: [[f64; 3]; 2],
    pub residual: f64,
}

fn table_row(n: f64, d: f64, k: f64) -> [[f64; 3]; 2] {
    [
        [(n - d) / d * k, (n + 7.0 * d) / (4.0 * d) * k, 4.0 * (n - 3.0 * d) / d * k],
        [2.0 * k, (n + 2.0 * d) / (2.0 * d) * k, -2.0 * (n - 3.0 * d) / d * k],
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetricPanel {
    #[serde(skip)]
    pub r: Mat,
    #[serde(skip)]
    pub ric_bar: Mat,
    #[serde(skip)]
    pub ric: Mat,
    #[serde(skip)]
    pub c: Mat,
    #[serde(skip)]
    pub r_v: Option<Mat>,
    /// (name, [(eigenvalue, multiplicity)]) for each tensor, and for C on 𝒱 and H.
    pub spectra: Vec<(String, Vec<(f64, usize)>)>,
    pub c_eigenvalue_count: usize,
    pub table: Vec<TableFit>,
    pub report: ResidualReport,
}

impl SymmetricPanel {
    pub fn best_fit(&self) -> Option<&TableFit> {
        self.table.iter().min_by(|a, b| a.residual.total_cmp(&b.residual))
    }

    pub fn spectrum(&self, name: &str) -> Option<&[(f64, usize)]> {
        self.spectra.iter().find(|(n, _)| n == name).map(|(_, s)| s.as_slice())
    }
}

fn cluster_count(s: &Mat) -> usize {
    let vals: Vec<f64> = na::SymmetricEigen::new(s.clone()).eigenvalues.iter().copied().collect();
    clusters(&vals, 1e-6).len()
}

/// r, Ric̄, Ric = Ric̄ + ¼r and C = Ric̄ − r, with the ricf identity and the
/// Chern obstruction as residuals. With a special subspace 𝒱 also r^𝒱 and
/// the eigenvalue table comparison.
pub fn ricci_panel(sys: &HolonomySystem, special: Option<&Mat>, name: &str, tol: f64) -> Result<SymmetricPanel> {
    let n = sys.dim();
    let r = r_tensor(sys);
    let ric_bar = ricci_contraction(sys.curvature());
    let ric = &ric_bar + &r * 0.25;
    let c = &ric_bar - &r;
    let scale = 1.0 + r.norm() + ric_bar.norm();
    let mut rep = ResidualReport::new("panel", name, sys.digest());
    for (label, m) in [("r", &r), ("Ric̄", &ric_bar), ("C", &c)] {
        rep.check(&format!("{label} Hermitian"), &format!("{label} is symmetric and J-commuting"), hermitian_defect(m), tol * scale);
    }

    let e: Vec<Vec<f64>> = (0..n).map(|i| unit(n, i)).collect();
    let mut ricf: f64 = 0.0;
    let mut chern: f64 = 0.0;
    for x in &e {
        let lhs = sys.psi_x(&mat_vec(&ric_bar, x));
        let mut rhs = Form::zero(n, 2);
        for ek in &e {
            rhs += &Form::covector(&sys.psi_xy(x, ek)).wedge(&Form::covector(&mat_vec(&r, ek)));
        }
        ricf = ricf.max(lhs.dist(&rhs.scaled(-0.5)));
        let cx = mat_vec(&c, x);
        for y in &e {
            let l: Vec<f64> = mat_vec(&c, &sys.psi_xy(x, y)).iter().map(|v| -v).collect();
            let a = sys.psi_xy(x, &mat_vec(&c, y));
            let b = sys.psi_xy(&cx, y);
            let d = l.iter().zip(a.iter().zip(&b)).map(|(l, (a, b))| (l - a - b).powi(2)).sum::<f64>().sqrt();
            chern = chern.max(d);
        }
    }
    rep.check("ricf", "ψ⁺_{Ric̄X} = −½ Σ ψ⁺_Xe_k ∧ re_k", ricf, tol * scale);
    rep.check("chern", "−C(ψ⁺_XY) = ψ⁺_XCY + ψ⁺_{CX}Y", chern, tol * scale);
    let c_eigenvalue_count = cluster_count(&c);
    rep.check("C has at most 3 eigenvalues", "eigenvalue clusters of C (gap 1e−6), beyond 3", c_eigenvalue_count.saturating_sub(3) as f64, 0.5);

    let gap = 1e-6;
    let mut spectra = vec![
        ("r".to_string(), spectrum(&r, gap)),
        ("Ric̄".to_string(), spectrum(&ric_bar, gap)),
        ("Ric".to_string(), spectrum(&ric, gap)),
        ("C".to_string(), spectrum(&c, gap)),
    ];
    let mut table = Vec::new();
    let mut r_v = None;
    if let Some(v) = special {
        let h = complement(v);
        let (dv, dh) = (v.ncols(), h.ncols());
        let mut rv = Mat::zeros(dh, dh);
        for k in 0..dv {
            let p = sys.psi_endo(&col(v, k));
            rv -= h.transpose() * &p * &p * &h;
        }
        let rh = h.transpose() * &r * &h;
        rep.check("r|_H = 2r^𝒱", "r restricted to H equals 2r^𝒱", (&rh - &rv * 2.0).norm(), tol * scale);
        rep.check("r^𝒱 Hermitian", "r^𝒱 is symmetric", (&rv - rv.transpose()).norm(), tol * scale);
        let on = |m: &Mat, b: &Mat| b.transpose() * m * b;
        let c_v = on(&c, v);
        let c_h = on(&c, &h);
        let preserves = (v.transpose() * &c * &h).norm();
        rep.check("C preserves 𝒱 ⊕ H", "C maps 𝒱 to 𝒱 and H to H", preserves, tol * scale);
        spectra.push(("C|𝒱".into(), spectrum(&c_v, gap)));
        spectra.push(("C|H".into(), spectrum(&c_h, gap)));
        spectra.push(("r^𝒱".into(), spectrum(&rv, gap)));

        let mean = |m: &Mat| m.trace() / m.nrows() as f64;
        let k = mean(&rv);
        let observed = [
            [mean(&on(&r, v)), mean(&on(&ric, v)), mean(&c_v)],
            [mean(&rh), mean(&on(&ric, &h)), mean(&c_h)],
        ];
        let (fh, fv) = (dh as f64, dv as f64);
        for (label, nn, dd) in [
            ("dim H = 2n, dim 𝒱 = 2d", fh / 2.0, fv / 2.0),
            ("dim H = n, dim 𝒱 = d", fh, fv),
            ("dim V = 2n, dim 𝒱 = 2d", (fh + fv) / 2.0, fv / 2.0),
            ("dim V = n, dim 𝒱 = d", fh + fv, fv),
        ] {
            let predicted = table_row(nn, dd, k);
            let mut res: f64 = 0.0;
            for i in 0..2 {
                for j in 0..3 {
                    res = res.max((predicted[i][j] - observed[i][j]).abs() / (1.0 + observed[i][j].abs()));
                }
            }
            table.push(TableFit { interpretation: label.into(), n: nn, d: dd, k, predicted, observed, residual: res });
        }
        let best = table.iter().map(|t| t.residual).fold(f64::INFINITY, f64::min);
        rep.note("eigenvalue table, best reading", "relative mismatch of the best (n, d) reading", best, 1e-6);
        r_v = Some(rv);
    }
    Ok(SymmetricPanel { r, ric_bar, ric, c, r_v, spectra, c_eigenvalue_count, table, report: rep })
}

/// ψ⁻_X as an endomorphism.
fn psi_minus_endo(psi_minus: &Form, x: &[f64]) -> Mat {
    crate::forms::endo_of(&psi_minus.contract(x))
}

/// Identities of a non-Kähler nearly-Kähler model: Dψ⁺ = 0, N^J = −4ψ⁻, the
/// curvature symmetries of the characteristic connection, and the Ricci
/// comparison with the Levi-Civita curvature.
pub fn nk_suite(model: &HomogeneousModel, tol: f64) -> Result<ResidualReport> {
    let ctx = G1Context::new(model, tol)?;
    let td = &ctx.torsion;
    if td.t.norm() > tol || td.psi_plus.norm() <= tol {
        return Err(Error::ClassMismatch(format!("{} is not a non-Kähler nearly-Kähler model", model.name())));
    }
    let n = ctx.dim();
    let mut rep = ResidualReport::new("nk", model.name(), model.digest());
    let dpsi = ctx.d.deriv_all(&td.psi_plus).norm();
    rep.check("Dψ⁺ = 0", "D_Xψ⁺ = 0", dpsi, 1e-10);
    let nj = td.nj.dist(&FormMap::contraction_of(&td.psi_minus).scaled(-4.0));
    rep.check("N^J = −4ψ⁻", "N^J_X = −4 X⌟ψ⁻", nj, 1e-10);

    let rb = ctx.d.curvature();
    let scale = 1.0 + rb.norm();
    rep.check("Gray (i)", "R̄(X,Y,Z,U) = R̄(Z,U,X,Y)", rb.pair_symmetry_defect(), 1e-9 * scale);
    rep.check("Gray (ii)", "R̄(JX,JY) = R̄(X,Y)", rb.precompose_j().dist(&rb), 1e-9 * scale);
    let e: Vec<Vec<f64>> = (0..n).map(|i| unit(n, i)).collect();
    let pm: Vec<Mat> = e.iter().map(|x| psi_minus_endo(&td.psi_minus, x)).collect();
    let mut cyc: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            let pxy = td.psi_minus.contract(&e[a]).contract(&e[b]).to_vector();
            let pp = psi_minus_endo(&td.psi_minus, &pxy);
            let br = &pm[a] * &pm[b] - &pm[b] * &pm[a];
            for z in 0..n {
                let lhs: Vec<f64> = (0..n)
                    .map(|i| {
                        endo_apply(&rb.at(&e[a], &e[b]), &e[z])[i]
                            + endo_apply(&rb.at(&e[b], &e[z]), &e[a])[i]
                            + endo_apply(&rb.at(&e[z], &e[a]), &e[b])[i]
                    })
                    .collect();
                let rhs = (&br - &pp) * na::DVector::from_column_slice(&e[z]);
                let d = lhs.iter().zip(rhs.iter()).map(|(l, r)| (l - r).powi(2)).sum::<f64>().sqrt();
                cyc = cyc.max(d);
            }
        }
    }
    rep.check("Gray (iii)", "𝔖 R̄(X,Y)Z = [ψ⁻_X,ψ⁻_Y]Z − ψ⁻_{ψ⁻_XY}Z", cyc, 1e-9 * scale);

    let ric = ricci_contraction(&ctx.lc.curvature());
    let ric_min = na::SymmetricEigen::new((&ric + ric.transpose()) * 0.5).eigenvalues.min();
    rep.check("Ric > 0", "smallest eigenvalue of Ric, negated", (-ric_min).max(0.0) + if ric_min > tol::RANK { 0.0 } else { 1.0 }, tol);
    let sys = HolonomySystem::new(td.psi_plus.clone(), rb.clone(), tol)?;
    let r = r_tensor(&sys);
    let ric_bar = ricci_contraction(&rb);
    rep.check("Ric̄ = Ric − ¼r", "Ric̄ from R̄, Ric from the Levi-Civita curvature", (&ric_bar - (&ric - &r * 0.25)).norm(), 1e-10);
    rep.note("Ric̄ = Ric − ¾r", "the same comparison with coefficient ¾", (&ric_bar - (&ric - &r * 0.75)).norm(), 1e-10);
    Ok(rep)
}
