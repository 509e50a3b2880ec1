use nalgebra as na;

use super::basis::MAX_DIM;
use crate::error::{Error, Result};

/// A real vector space of dimension 2m with metric g and orthogonal complex
/// structure J, together with an orthonormal frame satisfying Je₂ₖ₋₁ = e₂ₖ.
///
/// All tensors in this crate are expressed in that frame, where g is the
/// identity and J is block diagonal. The input basis is only needed for I/O.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianSpace {
    dim: usize,
    metric: na::DMatrix<f64>,
    j: na::DMatrix<f64>,
    /// Columns are the frame vectors in input coordinates.
    frame: na::DMatrix<f64>,
}

impl HermitianSpace {
    /// R^{2m} with the standard metric and Je₂ₖ₋₁ = e₂ₖ.
    pub fn standard(dim: usize) -> Self {
        assert!(dim % 2 == 0 && dim >= 2 && dim <= MAX_DIM, "unsupported dimension {dim}");
        HermitianSpace {
            dim,
            metric: na::DMatrix::identity(dim, dim),
            j: standard_j(dim),
            frame: na::DMatrix::identity(dim, dim),
        }
    }

    /// Validates (g, J) and builds the Hermitian frame by Gram–Schmidt
    /// followed by J-alignment.
    pub fn new(j: na::DMatrix<f64>, metric: Option<na::DMatrix<f64>>, tol: f64) -> Result<Self> {
        let dim = j.nrows();
        if j.ncols() != dim {
            return Err(Error::InvalidSpace("J is not square".into()));
        }
        if dim % 2 != 0 || dim < 2 || dim > MAX_DIM {
            return Err(Error::InvalidSpace(format!("dimension {dim} must be even and at most {MAX_DIM}")));
        }
        let g = metric.unwrap_or_else(|| na::DMatrix::identity(dim, dim));
        if g.nrows() != dim || g.ncols() != dim {
            return Err(Error::InvalidSpace("metric has the wrong shape".into()));
        }
        let scale = 1.0 + g.amax();
        if (&g - g.transpose()).amax() > tol * scale {
            return Err(Error::InvalidSpace("metric is not symmetric".into()));
        }
        if na::SymmetricEigen::new(g.clone()).eigenvalues.min() <= tol * scale {
            return Err(Error::InvalidSpace("metric is not positive definite".into()));
        }
        let jj = &j * &j + na::DMatrix::identity(dim, dim);
        if jj.amax() > tol * (1.0 + j.amax() * j.amax()) {
            return Err(Error::InvalidSpace("J∘J ≠ −1".into()));
        }
        let compat = j.transpose() * &g * &j - &g;
        if compat.amax() > tol * scale * (1.0 + j.amax() * j.amax()) {
            return Err(Error::InvalidSpace("g(Jx,Jy) ≠ g(x,y)".into()));
        }
        let frame = hermitian_frame(&g, &j)?;
        Ok(HermitianSpace { dim, metric: g, j, frame })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Complex dimension m.
    pub fn m(&self) -> usize {
        self.dim / 2
    }

    pub fn metric(&self) -> &na::DMatrix<f64> {
        &self.metric
    }

    pub fn j_matrix(&self) -> &na::DMatrix<f64> {
        &self.j
    }

    pub fn frame(&self) -> &na::DMatrix<f64> {
        &self.frame
    }

    pub fn is_standard(&self) -> bool {
        self.frame == na::DMatrix::identity(self.dim, self.dim)
    }
}

pub fn standard_j(dim: usize) -> na::DMatrix<f64> {
    let mut j = na::DMatrix::zeros(dim, dim);
    for k in 0..dim / 2 {
        j[(2 * k + 1, 2 * k)] = 1.0;
        j[(2 * k, 2 * k + 1)] = -1.0;
    }
    j
}

fn hermitian_frame(g: &na::DMatrix<f64>, j: &na::DMatrix<f64>) -> Result<na::DMatrix<f64>> {
    let n = g.nrows();
    let ip = |a: &na::DVector<f64>, b: &na::DVector<f64>| (a.transpose() * g * b)[(0, 0)];
    let mut frame: Vec<na::DVector<f64>> = Vec::with_capacity(n);
    for k in 0..n {
        if frame.len() == n {
            break;
        }
        let mut v = na::DVector::zeros(n);
        v[k] = 1.0;
        // two passes of modified Gram–Schmidt
        for _ in 0..2 {
            for e in &frame {
                let c = ip(e, &v);
                v -= e * c;
            }
        }
        let nv = ip(&v, &v).sqrt();
        if nv < 1e-6 {
            continue;
        }
        v /= nv;
        let jv = j * &v;
        frame.push(v);
        frame.push(jv);
    }
    if frame.len() != n {
        return Err(Error::InvalidSpace("could not build a Hermitian frame".into()));
    }
    Ok(na::DMatrix::from_columns(&frame))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_is_orthonormal_and_aligned() {
        // a non-standard J: conjugate the standard one by a fixed invertible map
        let n = 6;
        let a = na::DMatrix::from_fn(n, n, |i, k| if i == k { 2.0 } else { 0.1 * (i + 2 * k) as f64 });
        let ainv = a.clone().try_inverse().unwrap();
        let j = &a * standard_j(n) * &ainv;
        let g = ainv.transpose() * &ainv;
        let s = HermitianSpace::new(j.clone(), Some(g.clone()), 1e-10).unwrap();
        let f = s.frame();
        let gram = f.transpose() * &g * f;
        assert!((gram - na::DMatrix::<f64>::identity(n, n)).amax() < 1e-10);
        let jf = &j * f;
        for k in 0..3 {
            assert!((jf.column(2 * k) - f.column(2 * k + 1)).amax() < 1e-10);
        }
    }

    #[test]
    fn rejects_bad_j() {
        let j = na::DMatrix::<f64>::identity(6, 6);
        assert!(HermitianSpace::new(j, None, 1e-10).is_err());
    }
}
