//! Splitting Λ^s = ⊕ λ^{p,q} into eigenspaces of 𝒥².
//!
//! λ^{p,q} is the −(p−q)² eigenspace; the projections are the Lagrange
//! interpolation polynomials of 𝒥² over the eigenvalues present in degree s.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::form::Form;
use super::ops::calj;
use crate::error::{Error, Result};

/// Unordered bidegree label: λ^{p,q} = λ^{q,p}. Stored with `lo ≤ hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BidegreeLabel {
    lo: usize,
    hi: usize,
}

impl BidegreeLabel {
    pub fn new(p: usize, q: usize) -> Self {
        BidegreeLabel { lo: p.min(q), hi: p.max(q) }
    }

    /// λ^p = λ^{p,0}.
    pub fn pure(p: usize) -> Self {
        BidegreeLabel::new(p, 0)
    }

    pub fn degree(&self) -> usize {
        self.lo + self.hi
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    /// |p − q|; the 𝒥² eigenvalue is −gap².
    pub fn gap(&self) -> usize {
        self.hi - self.lo
    }

    pub fn eigenvalue(&self) -> f64 {
        -((self.gap() * self.gap()) as f64)
    }
}

impl fmt::Display for BidegreeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == 0 {
            write!(f, "λ^{}", self.hi)
        } else {
            write!(f, "λ^{{{},{}}}", self.lo, self.hi)
        }
    }
}

/// All labels occurring in degree s for complex dimension m, ordered by
/// decreasing gap.
pub fn labels(m: usize, s: usize) -> Vec<BidegreeLabel> {
    (0..=s / 2)
        .map(|lo| BidegreeLabel::new(lo, s - lo))
        .filter(|l| l.hi <= m)
        .collect()
}

pub fn calj2(a: &Form) -> Form {
    calj(&calj(a))
}

/// Orthogonal projection onto λ^{p,q}.
pub fn bidegree_project(a: &Form, label: BidegreeLabel) -> Result<Form> {
    if label.degree() != a.degree() {
        return Err(Error::Degree { op: "bidegree_project", degree: a.degree() });
    }
    let m = a.dim() / 2;
    let all = labels(m, a.degree());
    if !all.contains(&label) {
        return Ok(Form::zero(a.dim(), a.degree()));
    }
    let target = label.eigenvalue();
    let mut out = a.clone();
    for other in all.iter().filter(|l| **l != label) {
        let mu = other.eigenvalue();
        // (𝒥² − μ) / (target − μ)
        let mut next = calj2(&out);
        next.axpy(-mu, &out);
        out = next.scaled(1.0 / (target - mu));
    }
    Ok(out)
}

/// Infallible projection for callers that control the label.
pub fn proj(a: &Form, p: usize, q: usize) -> Form {
    bidegree_project(a, BidegreeLabel::new(p, q)).expect("label matches degree")
}

/// All nonzero-label components of a.
pub fn split(a: &Form) -> Vec<(BidegreeLabel, Form)> {
    labels(a.dim() / 2, a.degree())
        .into_iter()
        .map(|l| (l, bidegree_project(a, l).expect("label matches degree")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::ops::{kahler_form, pull_j};

    #[test]
    fn labels_respect_complex_dimension() {
        assert_eq!(labels(3, 4), vec![BidegreeLabel::new(1, 3), BidegreeLabel::new(2, 2)]);
        assert_eq!(labels(3, 3), vec![BidegreeLabel::pure(3), BidegreeLabel::new(1, 2)]);
        assert_eq!(BidegreeLabel::new(3, 1), BidegreeLabel::new(1, 3));
        assert_eq!(BidegreeLabel::new(1, 2).to_string(), "λ^{1,2}");
        assert_eq!(BidegreeLabel::pure(3).to_string(), "λ^3");
    }

    #[test]
    fn projection_examples() {
        let w = kahler_form(6);
        assert!(proj(&w, 1, 1).dist(&w) < 1e-14);
        assert!(proj(&w, 2, 0).is_zero(1e-14));
        let a = Form::basis(6, &[0, 2]);
        let b = Form::basis(6, &[1, 3]);
        assert!(proj(&a, 2, 0).dist(&(&a - &b).scaled(0.5)) < 1e-14);
        assert!(proj(&a, 1, 1).dist(&(&a + &b).scaled(0.5)) < 1e-14);
        assert!(proj(&a, 1, 1).dist(&(&a + &pull_j(&a)).scaled(0.5)) < 1e-14);
    }

    #[test]
    fn label_degree_mismatch_is_an_error() {
        let a = Form::basis(6, &[0, 2]);
        assert!(bidegree_project(&a, BidegreeLabel::new(1, 2)).is_err());
    }
}
