//! Built-in models, generated from matrix realisations of their Lie algebras.

use std::f64::consts::PI;

use nalgebra as na;
use num_complex::Complex64;

use super::lie::{constants_from_matrices, frob, CMat};
use super::HomogeneousModel;
use crate::error::{Error, Result};

const NAMES: [&str; 7] = ["torus6", "hopf4", "hopf6", "calabi_eckmann6", "ledger_obata6", "flag6", "twistor6"];

pub fn builtin_names() -> &'static [&'static str] {
    &NAMES
}

pub fn builtin(name: &str) -> Result<HomogeneousModel> {
    match name {
        "torus6" => torus6(),
        "hopf4" => hopf4(),
        "hopf6" => hopf6(),
        "calabi_eckmann6" => calabi_eckmann6(),
        "ledger_obata6" => ledger_obata6(),
        "flag6" => flag6(),
        "twistor6" => twistor6(),
        other => Err(Error::UnknownModel(other.to_string())),
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// n×n matrix from (row, col, re, im) entries.
fn cm(n: usize, entries: &[(usize, usize, f64, f64)]) -> CMat {
    let mut m = CMat::zeros(n, n);
    for &(r, k, re, im) in entries {
        m[(r, k)] += c(re, im);
    }
    m
}

fn block_diag(blocks: &[CMat]) -> CMat {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut m = CMat::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        m.view_mut((off, off), (b.nrows(), b.ncols())).copy_from(b);
        off += b.nrows();
    }
    m
}

/// The standard su(2) basis with [X₁,X₂] = 2X₃ and cyclic.
fn su2() -> [CMat; 3] {
    [
        cm(2, &[(0, 0, 0., 1.), (1, 1, 0., -1.)]),
        cm(2, &[(0, 1, 1., 0.), (1, 0, -1., 0.)]),
        cm(2, &[(0, 1, 0., 1.), (1, 0, 0., 1.)]),
    ]
}

fn scaled(m: &CMat, s: f64) -> CMat {
    m * c(s, 0.0)
}

enum JSpec {
    /// J m₂ₖ = m₂ₖ₊₁ in the given basis.
    Pairs,
    /// J = (2θ + 1)/√3 for an order-3 automorphism θ preserving 𝔪.
    Theta(Box<dyn Fn(&CMat) -> CMat>),
}

struct MatrixModel {
    name: &'static str,
    m: Vec<CMat>,
    h: Vec<CMat>,
    labels: Vec<String>,
    /// Inner product on 𝔪; Frobenius when absent.
    metric: Option<Box<dyn Fn(&CMat, &CMat) -> f64>>,
    j: JSpec,
}

impl MatrixModel {
    fn build(self) -> Result<HomogeneousModel> {
        let dm = self.m.len();
        let dh = self.h.len();
        let ip = |a: &CMat, b: &CMat| match &self.metric {
            Some(f) => f(a, b),
            None => frob(a, b),
        };
        let gram = na::DMatrix::from_fn(dm, dm, |i, k| ip(&self.m[i], &self.m[k]));
        let jmat = match &self.j {
            JSpec::Pairs => crate::forms::standard_j_matrix(dm),
            JSpec::Theta(theta) => {
                let chol = na::Cholesky::new(gram.clone())
                    .ok_or_else(|| Error::Validation("𝔪 metric not positive".into()))?;
                let mut t = na::DMatrix::zeros(dm, dm);
                for a in 0..dm {
                    let img = theta(&self.m[a]);
                    let rhs = na::DVector::from_fn(dm, |k, _| ip(&self.m[k], &img));
                    t.set_column(a, &chol.solve(&rhs));
                }
                (t * 2.0 + na::DMatrix::identity(dm, dm)) / 3f64.sqrt()
            }
        };
        let all: Vec<CMat> = self.m.iter().chain(self.h.iter()).cloned().collect();
        let sc = constants_from_matrices(&all)?;
        HomogeneousModel::new(self.name, dm, dh, self.labels, sc, Some(gram), jmat, 1e-10)
    }
}

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn torus6() -> Result<HomogeneousModel> {
    let m = (0..6).map(|k| cm(6, &[(k, k, 0., 1.)])).collect();
    MatrixModel {
        name: "torus6",
        m,
        h: vec![],
        labels: labels(&["t1", "t2", "t3", "t4", "t5", "t6"]),
        metric: None,
        j: JSpec::Pairs,
    }
    .build()
}

/// S³×S¹ as the group SU(2)×U(1), J T = X₁ and J X₂ = X₃.
fn hopf4() -> Result<HomogeneousModel> {
    let s = 1.0 / 2f64.sqrt();
    let z = CMat::zeros(1, 1);
    let [x1, x2, x3] = su2();
    let t = block_diag(&[CMat::zeros(2, 2), cm(1, &[(0, 0, 0., 1.)])]);
    let emb = |x: &CMat| block_diag(&[scaled(x, s), z.clone()]);
    MatrixModel {
        name: "hopf4",
        m: vec![t, emb(&x1), emb(&x2), emb(&x3)],
        h: vec![],
        labels: labels(&["T", "X1", "X2", "X3"]),
        metric: None,
        j: JSpec::Pairs,
    }
    .build()
}

/// S⁵×S¹ = (SU(3)×U(1))/SU(2) with the round S⁵ factor and J T = Z.
fn hopf6() -> Result<HomogeneousModel> {
    // 𝔪 vectors X_v with X_v e₃ = v, Z = diag(−i/2, −i/2, i), and the central T
    let xv = |a: usize, re: f64, im: f64| cm(4, &[(a, 2, re, im), (2, a, -re, im)]);
    let zz = cm(4, &[(0, 0, 0., -0.5), (1, 1, 0., -0.5), (2, 2, 0., 1.)]);
    let t = cm(4, &[(3, 3, 0., 1.)]);
    let [h1, h2, h3] = su2();
    let emb = |x: &CMat| block_diag(&[x.clone(), CMat::zeros(2, 2)]);
    let metric = |a: &CMat, b: &CMat| -> f64 {
        (0..3).map(|r| (a[(r, 2)].conj() * b[(r, 2)]).re).sum::<f64>() + (a[(3, 3)].conj() * b[(3, 3)]).re
    };
    MatrixModel {
        name: "hopf6",
        m: vec![xv(0, 1., 0.), xv(0, 0., 1.), xv(1, 1., 0.), xv(1, 0., 1.), t, zz],
        h: vec![emb(&h1), emb(&h2), emb(&h3)],
        labels: labels(&["X(e1)", "X(ie1)", "X(e2)", "X(ie2)", "T", "Z", "H1", "H2", "H3"]),
        metric: Some(Box::new(metric)),
        j: JSpec::Pairs,
    }
    .build()
}

/// S³×S³ = SU(2)×SU(2) with J X₁ = Y₁, J X₂ = X₃, J Y₂ = Y₃.
fn calabi_eckmann6() -> Result<HomogeneousModel> {
    let s = 1.0 / 2f64.sqrt();
    let [x1, x2, x3] = su2();
    let z = CMat::zeros(2, 2);
    let l = |x: &CMat| block_diag(&[scaled(x, s), z.clone()]);
    let r = |x: &CMat| block_diag(&[z.clone(), scaled(x, s)]);
    MatrixModel {
        name: "calabi_eckmann6",
        m: vec![l(&x1), r(&x1), l(&x2), l(&x3), r(&x2), r(&x3)],
        h: vec![],
        labels: labels(&["X1", "Y1", "X2", "X3", "Y2", "Y3"]),
        metric: None,
        j: JSpec::Pairs,
    }
    .build()
}

/// Conjugation by a fixed invertible matrix.
fn ad_by(g: CMat) -> Box<dyn Fn(&CMat) -> CMat> {
    let ginv = g.clone().try_inverse().expect("invertible");
    Box::new(move |a: &CMat| &g * a * &ginv)
}

/// SU(2)³/ΔSU(2) with the cyclic permutation of factors as θ.
fn ledger_obata6() -> Result<HomogeneousModel> {
    let z = CMat::zeros(2, 2);
    let tri = |a: &CMat, b: &CMat, c: &CMat| block_diag(&[a.clone(), b.clone(), c.clone()]);
    let mut m = Vec::new();
    let mut h = Vec::new();
    for x in su2() {
        m.push(tri(&x, &(-&x), &z));
        m.push(tri(&x, &x, &scaled(&x, -2.0)));
        h.push(tri(&x, &x, &x));
    }
    // block permutation (A, B, C) ↦ (C, A, B)
    let mut p = CMat::zeros(6, 6);
    for b in 0..3 {
        let to = (b + 1) % 3;
        p[(2 * to, 2 * b)] = c(1., 0.);
        p[(2 * to + 1, 2 * b + 1)] = c(1., 0.);
    }
    MatrixModel {
        name: "ledger_obata6",
        m,
        h,
        labels: labels(&["A1", "B1", "A2", "B2", "A3", "B3", "H1", "H2", "H3"]),
        metric: None,
        j: JSpec::Theta(ad_by(p)),
    }
    .build()
}

fn omega3() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 3.0)
}

/// SU(3)/T² with θ = Ad diag(1, ω, ω²).
fn flag6() -> Result<HomogeneousModel> {
    let mut m = Vec::new();
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        m.push(cm(3, &[(a, b, 1., 0.), (b, a, -1., 0.)]));
        m.push(cm(3, &[(a, b, 0., 1.), (b, a, 0., 1.)]));
    }
    let h = vec![cm(3, &[(0, 0, 0., 1.), (1, 1, 0., -1.)]), cm(3, &[(1, 1, 0., 1.), (2, 2, 0., -1.)])];
    let w = omega3();
    let g = CMat::from_diagonal(&na::DVector::from_vec(vec![c(1., 0.), w, w * w]));
    MatrixModel {
        name: "flag6",
        m,
        h,
        labels: labels(&["E12", "iE12", "E13", "iE13", "E23", "iE23", "H1", "H2"]),
        metric: None,
        j: JSpec::Theta(ad_by(g)),
    }
    .build()
}

/// Complex 2×2 form of a quaternion unit: 1, i, j, k.
fn quat(unit: usize) -> CMat {
    match unit {
        0 => cm(2, &[(0, 0, 1., 0.), (1, 1, 1., 0.)]),
        1 => cm(2, &[(0, 0, 0., 1.), (1, 1, 0., -1.)]),
        2 => cm(2, &[(0, 1, 1., 0.), (1, 0, -1., 0.)]),
        _ => cm(2, &[(0, 1, 0., 1.), (1, 0, 0., 1.)]),
    }
}

/// 4×4 complex matrix with the quaternion unit u at quaternionic position (r, k).
fn quat_entry(r: usize, k: usize, u: usize) -> CMat {
    let mut m = CMat::zeros(4, 4);
    m.view_mut((2 * r, 2 * k), (2, 2)).copy_from(&quat(u));
    m
}

/// Sp(2)/Sp(1)×U(1) = CP³ with θ = Ad diag(1, 1, e^{iα}, e^{−iα}), α = 2π/3.
fn twistor6() -> Result<HomogeneousModel> {
    let mut m: Vec<CMat> = (0..4).map(off_diag).collect();
    m.push(quat_entry(1, 1, 2));
    m.push(quat_entry(1, 1, 3));
    let h = vec![quat_entry(0, 0, 1), quat_entry(0, 0, 2), quat_entry(0, 0, 3), quat_entry(1, 1, 1)];
    let e = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let g = CMat::from_diagonal(&na::DVector::from_vec(vec![c(1., 0.), c(1., 0.), e, e.conj()]));
    MatrixModel {
        name: "twistor6",
        m,
        h,
        labels: labels(&["P1", "Pi", "Pj", "Pk", "Qj", "Qk", "Ai", "Aj", "Ak", "Bi"]),
        metric: None,
        j: JSpec::Theta(ad_by(g)),
    }
    .build()
}

/// [[0, h], [−h̄, 0]] for the quaternion unit h.
fn off_diag(u: usize) -> CMat {
    let q = quat(u);
    let mut x = CMat::zeros(4, 4);
    x.view_mut((0, 2), (2, 2)).copy_from(&q);
    x.view_mut((2, 0), (2, 2)).copy_from(&(-q.adjoint()));
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_builtins_validate() {
        for name in builtin_names() {
            let m = builtin(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(m.dim_m() % 2, 0);
        }
        assert!(matches!(builtin("nope"), Err(Error::UnknownModel(_))));
    }

    #[test]
    fn dimensions() {
        let dims: Vec<(usize, usize)> =
            builtin_names().iter().map(|n| builtin(n).map(|m| (m.dim_m(), m.dim_h())).unwrap()).collect();
        assert_eq!(dims, vec![(6, 0), (4, 0), (6, 3), (6, 0), (6, 3), (6, 2), (6, 4)]);
    }
}
