//! JSON schemas for forms, spaces, curvature tensors, models, points and
//! holonomy systems. Indices in files are 1-based; floats are written with
//! 12 significant digits so output is byte-stable.

use nalgebra as na;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::curvature::{CurvatureFlags, CurvatureLike};
use crate::error::{Error, Result};
use crate::forms::{basis::table, Form, FormMap, HermitianSpace};
use crate::hermitian::AHPoint;
use crate::holonomy::HolonomySystem;
use crate::model::{HomogeneousModel, StructureConstants};
use crate::report::round_sig;

/// Coefficients at or below this magnitude are omitted from sparse output.
pub const DROP: f64 = 1e-13;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub idx: Vec<usize>,
    pub c: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub degree: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpaceJson {
    pub dim: usize,
    #[serde(rename = "J")]
    pub j: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurvatureJson {
    pub dim: usize,
    pub values: Vec<Vec<Vec<Vec<f64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flags: Option<CurvatureFlags>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim_m: usize,
    pub dim_h: usize,
    pub basis_labels: Vec<String>,
    pub brackets: Vec<BracketJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<f64>>,
    #[serde(rename = "J")]
    pub j: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointJson {
    pub space: SpaceJson,
    pub nabla_omega: Vec<FormJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SystemJson {
    pub space: SpaceJson,
    pub psi_plus: FormJson,
    #[serde(rename = "R")]
    pub r: CurvatureJson,
}

/// Parses JSON, reporting line and column on syntax or schema errors.
pub fn parse<T: serde::de::DeserializeOwned>(text: &str, source: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("{source}: line {}, column {}: {e}", e.line(), e.column())))
}

/// Rounds every float in a JSON value to 12 significant digits.
pub fn canonicalize(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().unwrap_or(0.0));
            let x = if x == 0.0 { 0.0 } else { x };
            if let Some(m) = serde_json::Number::from_f64(x) {
                *n = m;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(canonicalize),
        Value::Object(o) => o.values_mut().for_each(canonicalize),
        _ => {}
    }
}

/// Pretty JSON with rounded floats and a trailing newline.
pub fn to_canonical_json<T: Serialize>(x: &T) -> Result<String> {
    let mut v = serde_json::to_value(x).map_err(|e| Error::Input(e.to_string()))?;
    canonicalize(&mut v);
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Input(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn square(v: &[f64], n: usize, what: &str) -> Result<na::DMatrix<f64>> {
    if v.len() != n * n {
        return Err(Error::Input(format!("{what}: expected {} entries for a {n}×{n} matrix, found {}", n * n, v.len())));
    }
    Ok(na::DMatrix::from_row_slice(n, n, v))
}

fn row_major(m: &na::DMatrix<f64>) -> Vec<f64> {
    (0..m.nrows()).flat_map(|r| (0..m.ncols()).map(move |c| m[(r, c)])).collect()
}

pub fn form_to_json(f: &Form) -> FormJson {
    FormJson {
        dim: Some(f.dim()),
        degree: f.degree(),
        terms: f.terms(DROP).into_iter().map(|(idx, c)| TermJson { idx: idx.iter().map(|i| i + 1).collect(), c }).collect(),
    }
}

/// Repeated indices are rejected; unsorted ones are sorted with the sign of
/// the permutation.
pub fn form_from_json(j: &FormJson, dim: usize) -> Result<Form> {
    if let Some(d) = j.dim {
        if d != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: d });
        }
    }
    if j.degree > dim {
        return Err(Error::Degree { op: "form", degree: j.degree });
    }
    let mut f = Form::zero(dim, j.degree);
    for t in &j.terms {
        if t.idx.len() != j.degree {
            return Err(Error::Input(format!("term {:?} has {} indices, degree is {}", t.idx, t.idx.len(), j.degree)));
        }
        if t.idx.iter().any(|&i| i == 0 || i > dim) {
            return Err(Error::Input(format!("term {:?}: indices are 1-based and at most {dim}", t.idx)));
        }
        let mut idx: Vec<usize> = t.idx.iter().map(|i| i - 1).collect();
        let mut sign = 1.0;
        for a in 0..idx.len() {
            for b in 0..idx.len() - 1 - a {
                if idx[b] > idx[b + 1] {
                    idx.swap(b, b + 1);
                    sign = -sign;
                }
            }
        }
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Input(format!("term {:?} repeats an index", t.idx)));
        }
        f.add_term(&idx, sign * t.c);
    }
    Ok(f)
}

pub fn space_to_json(s: &HermitianSpace) -> SpaceJson {
    SpaceJson {
        dim: s.dim(),
        j: row_major(s.j_matrix()),
        metric: if s.is_standard() { None } else { Some(row_major(s.metric())) },
    }
}

pub fn space_from_json(j: &SpaceJson, tol: f64) -> Result<HermitianSpace> {
    let jm = square(&j.j, j.dim, "J")?;
    let g = j.metric.as_ref().map(|m| square(m, j.dim, "metric")).transpose()?;
    HermitianSpace::new(jm, g, tol)
}

pub fn curvature_to_json(r: &CurvatureLike, tol: f64) -> CurvatureJson {
    CurvatureJson { dim: r.dim(), values: r.to_array(), flags: Some(r.flags(tol)) }
}

/// Reads R[a][b][c][d] = R(e_a, e_b, e_c, e_d), which must be skew in (a, b)
/// and in (c, d).
pub fn curvature_from_json(j: &CurvatureJson, tol: f64) -> Result<CurvatureLike> {
    let n = j.dim;
    let shape_ok = j.values.len() == n
        && j.values.iter().all(|a| a.len() == n && a.iter().all(|b| b.len() == n && b.iter().all(|c| c.len() == n)));
    if !shape_ok {
        return Err(Error::Input(format!("curvature values must be a {n}×{n}×{n}×{n} array")));
    }
    let v = &j.values;
    let scale = 1.0 + v.iter().flatten().flatten().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut skew: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    skew = skew.max((v[a][b][c][d] + v[b][a][c][d]).abs()).max((v[a][b][c][d] + v[a][b][d][c]).abs());
                }
            }
        }
    }
    if skew > tol * scale {
        return Err(Error::Input(format!("curvature values are not skew in each pair (defect {skew:.3e})")));
    }
    let t = table(n);
    Ok(CurvatureLike::from_pairs(n, |a, b| {
        let coeffs = t.masks[2]
            .iter()
            .map(|&m| {
                let cd = crate::forms::basis::indices(m);
                v[a][b][cd[0]][cd[1]]
            })
            .collect();
        Form::from_coeffs(n, 2, coeffs)
    }))
}

/// Emitted in the Hermitian frame of 𝔪, so J is standard and the metric is
/// omitted.
pub fn model_to_json(m: &HomogeneousModel) -> ModelJson {
    let n = m.dim_m() + m.dim_h();
    let sc = m.constants();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let c = sc.get(i, j, k);
                if c.abs() > DROP {
                    brackets.push(BracketJson { i: i + 1, j: j + 1, k: k + 1, c });
                }
            }
        }
    }
    ModelJson {
        name: Some(m.name().to_string()),
        dim_m: m.dim_m(),
        dim_h: m.dim_h(),
        basis_labels: m.labels().to_vec(),
        brackets,
        metric: None,
        j: row_major(&crate::forms::standard_j_matrix(m.dim_m())),
    }
}

/// Brackets are given for i < j (or both orders, consistently); the other
/// order is filled in by antisymmetry.
pub fn model_from_json(j: &ModelJson, tol: f64) -> Result<HomogeneousModel> {
    let n = j.dim_m + j.dim_h;
    let mut sc = StructureConstants::zero(n);
    for b in &j.brackets {
        if [b.i, b.j, b.k].iter().any(|&x| x == 0 || x > n) {
            return Err(Error::Input(format!("bracket ({}, {}, {}): indices are 1-based and at most {n}", b.i, b.j, b.k)));
        }
        let (i, jj, k) = (b.i - 1, b.j - 1, b.k - 1);
        if i == jj {
            return Err(Error::Input(format!("bracket ({}, {}, {}) pairs a basis vector with itself", b.i, b.j, b.k)));
        }
        let prev = sc.get(i, jj, k);
        if prev != 0.0 && (prev - b.c).abs() > tol {
            return Err(Error::Input(format!("bracket ({}, {}, {}) is given twice with different values", b.i, b.j, b.k)));
        }
        sc.set_antisym(i, jj, k, b.c);
    }
    let jm = square(&j.j, j.dim_m, "J")?;
    let g = j.metric.as_ref().map(|m| square(m, j.dim_m, "metric")).transpose()?;
    let name = j.name.clone().unwrap_or_else(|| "model".into());
    HomogeneousModel::new(name, j.dim_m, j.dim_h, j.basis_labels.clone(), sc, g, jm, tol)
}

pub fn point_to_json(p: &AHPoint) -> PointJson {
    PointJson { space: space_to_json(p.space()), nabla_omega: p.nabla_omega().vals().iter().map(form_to_json).collect() }
}

/// ∇ω is read in the input basis and rewritten in the Hermitian frame.
pub fn point_from_json(j: &PointJson, tol: f64) -> Result<AHPoint> {
    let space = space_from_json(&j.space, tol)?;
    let n = space.dim();
    if j.nabla_omega.len() != n {
        return Err(Error::Input(format!("nabla_omega needs {n} forms, found {}", j.nabla_omega.len())));
    }
    let vals = j.nabla_omega.iter().map(|f| form_from_json(f, n)).collect::<Result<Vec<_>>>()?;
    let fr = space.frame().clone();
    let framed = FormMap::from_fn(n, 2, |i| {
        let mut acc = Form::zero(n, 2);
        for (k, v) in vals.iter().enumerate() {
            acc.axpy(fr[(k, i)], v);
        }
        acc.pullback(&fr)
    });
    AHPoint::new(HermitianSpace::standard(n), framed, tol)
}

/// Written in the orthonormal Hermitian frame of the system.
pub fn system_to_json(s: &HolonomySystem, tol: f64) -> SystemJson {
    SystemJson {
        space: space_to_json(&HermitianSpace::standard(s.dim())),
        psi_plus: form_to_json(s.psi()),
        r: curvature_to_json(s.curvature(), tol),
    }
}

/// ψ⁺ and R read in the input basis and rewritten in the Hermitian frame,
/// without certifying the defining clauses.
pub fn system_parts_from_json(j: &SystemJson, tol: f64) -> Result<(Form, CurvatureLike)> {
    let space = space_from_json(&j.space, tol)?;
    let n = space.dim();
    if j.r.dim != n {
        return Err(Error::DimensionMismatch { expected: n, found: j.r.dim });
    }
    let psi = form_from_json(&j.psi_plus, n)?;
    let r = curvature_from_json(&j.r, tol)?;
    let fr = space.frame();
    Ok((psi.pullback(fr), r.pullback(fr)))
}

pub fn system_from_json(j: &SystemJson, tol: f64) -> Result<HolonomySystem> {
    let (psi, r) = system_parts_from_json(j, tol)?;
    HolonomySystem::new(psi, r, tol)
}
