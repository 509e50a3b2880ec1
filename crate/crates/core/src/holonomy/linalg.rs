//! Small dense helpers: spans, null spaces, complements and Hermitian bases.

use nalgebra as na;

use crate::forms::standard_j_matrix;

pub type Mat = na::DMatrix<f64>;

/// Orthonormal basis (as columns) of the column space of `a`, by
/// Gram–Schmidt with column pivoting and reorthogonalisation. A column is
/// dropped once its residual falls below `rel` times the largest column norm.
pub fn orth(a: &Mat, rel: f64) -> Mat {
    let n = a.nrows();
    let mut res = a.clone();
    let top = (0..a.ncols()).map(|c| a.column(c).norm()).fold(0.0, f64::max);
    let mut q: Vec<na::DVector<f64>> = Vec::new();
    if top == 0.0 {
        return Mat::zeros(n, 0);
    }
    while q.len() < n {
        let (j, best) = (0..res.ncols()).map(|c| (c, res.column(c).norm())).fold((0, 0.0), |m, x| if x.1 > m.1 { x } else { m });
        if best <= rel * top {
            break;
        }
        let mut v: na::DVector<f64> = res.column(j) / best;
        for _ in 0..2 {
            for u in &q {
                let d = u.dot(&v);
                v.axpy(-d, u, 1.0);
            }
            v /= v.norm();
        }
        for c in 0..res.ncols() {
            let d = v.dot(&res.column(c));
            res.column_mut(c).axpy(-d, &v, 1.0);
        }
        q.push(v);
    }
    Mat::from_fn(n, q.len(), |r, c| q[c][r])
}

/// Orthonormal basis of ker(a), the complement of the row space of `a`.
pub fn null_space(a: &Mat, rel: f64) -> Mat {
    complement(&orth(&a.transpose(), rel))
}

pub fn projector(b: &Mat) -> Mat {
    b * b.transpose()
}

/// Orthonormal basis of the orthogonal complement of span(b).
pub fn complement(b: &Mat) -> Mat {
    let n = b.nrows();
    let p = Mat::identity(n, n) - projector(b);
    orth(&p, 1e-8)
}

/// Columns of `a` followed by those of `b`.
pub fn hcat(a: &Mat, b: &Mat) -> Mat {
    let mut out = Mat::zeros(a.nrows(), a.ncols() + b.ncols());
    out.view_mut((0, 0), (a.nrows(), a.ncols())).copy_from(a);
    out.view_mut((0, a.ncols()), (b.nrows(), b.ncols())).copy_from(b);
    out
}

/// |(1 − P_b) a|, zero when span(a) ⊆ span(b) for orthonormal b.
pub fn excess(a: &Mat, b: &Mat) -> f64 {
    if a.ncols() == 0 {
        return 0.0;
    }
    (a - projector(b) * a).norm()
}

/// Sine of the largest principal angle between two subspaces of equal rank.
pub fn max_angle_sin(a: &Mat, b: &Mat) -> f64 {
    if a.ncols() != b.ncols() {
        return 1.0;
    }
    if a.ncols() == 0 {
        return 0.0;
    }
    let r = b - projector(a) * b;
    let g = r.transpose() * &r;
    g.symmetric_eigenvalues().max().max(0.0).sqrt().min(1.0)
}

/// Residual |J B − P_B J B| of J-invariance of span(B).
pub fn j_invariance_defect(b: &Mat) -> f64 {
    let j = standard_j_matrix(b.nrows());
    excess(&(&j * b), b)
}

/// Orthonormal basis (f₁, Jf₁, f₂, Jf₂, …) of a J-invariant subspace, so that
/// pulled-back tensors are again in a Hermitian frame.
pub fn hermitian_basis(b: &Mat) -> Mat {
    let n = b.nrows();
    let j = standard_j_matrix(n);
    let mut out: Vec<na::DVector<f64>> = Vec::new();
    for c in 0..b.ncols() {
        let mut v: na::DVector<f64> = b.column(c).into_owned();
        for _ in 0..2 {
            for u in &out {
                let d = u.dot(&v);
                v -= u * d;
            }
        }
        let nv = v.norm();
        if nv < 1e-8 {
            continue;
        }
        let v = v / nv;
        let mut jv = &j * &v;
        for u in &out {
            let d = u.dot(&jv);
            jv -= u * d;
        }
        let jv = jv.normalize();
        out.push(v);
        out.push(jv);
        if out.len() >= b.ncols() {
            break;
        }
    }
    Mat::from_columns(&out)
}

/// Symmetric basis matrices E_{ij} + E_{ji} (scaled to unit Frobenius norm).
pub fn sym_basis(n: usize) -> Vec<Mat> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut m = Mat::zeros(n, n);
            if i == j {
                m[(i, i)] = 1.0;
            } else {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                m[(i, j)] = s;
                m[(j, i)] = s;
            }
            out.push(m);
        }
    }
    out
}

/// Groups of indices of sorted `vals` separated by gaps larger than `gap`.
pub fn clusters(vals: &[f64], gap: f64) -> Vec<Vec<usize>> {
    let mut idx: Vec<usize> = (0..vals.len()).collect();
    idx.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in idx {
        match out.last_mut() {
            Some(g) if (vals[i] - vals[*g.last().expect("non-empty")]).abs() <= gap => g.push(i),
            _ => out.push(vec![i]),
        }
    }
    out
}

/// (value, multiplicity) of the spectrum of a symmetric matrix.
pub fn spectrum(s: &Mat, gap: f64) -> Vec<(f64, usize)> {
    let eig = na::SymmetricEigen::new(s.clone());
    let vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    clusters(&vals, gap)
        .into_iter()
        .map(|g| (g.iter().map(|&i| vals[i]).sum::<f64>() / g.len() as f64, g.len()))
        .collect()
}

/// Symmetric n×n matrices commuting with every element of `ops`.
pub fn sym_commutant(ops: &[Mat], n: usize) -> Vec<Mat> {
    let sb = sym_basis(n);
    let m = Mat::from_fn(n * n * ops.len().max(1), sb.len(), |r, c| {
        let (k, rest) = (r / (n * n), r % (n * n));
        let (i, j) = (rest / n, rest % n);
        match ops.get(k) {
            Some(a) => {
                let s = &sb[c];
                (0..n).map(|t| s[(i, t)] * a[(t, j)] - a[(i, t)] * s[(t, j)]).sum()
            }
            None => 0.0,
        }
    });
    let k = null_space(&m, 1e-9);
    (0..k.ncols())
        .map(|c| sb.iter().enumerate().fold(Mat::zeros(n, n), |acc, (i, s)| acc + s * k[(i, c)]))
        .collect()
}

pub fn col(b: &Mat, c: usize) -> Vec<f64> {
    b.column(c).iter().copied().collect()
}

pub fn vec_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Coordinates P_B v of a vector in the orthonormal basis B.
pub fn coords(b: &Mat, v: &[f64]) -> Vec<f64> {
    (b.transpose() * na::DVector::from_column_slice(v)).iter().copied().collect()
}

/// v − B Bᵀ v.
pub fn off(b: &Mat, v: &[f64]) -> Vec<f64> {
    let x = na::DVector::from_column_slice(v);
    (&x - b * (b.transpose() * &x)).iter().copied().collect()
}
