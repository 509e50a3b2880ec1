use std::fmt;

use serde::Serialize;

use super::{lee_form, nijenhuis, AHPoint};
use crate::forms::{proj, Form};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum GHComponent {
    W1,
    W2,
    W3,
    W4,
}

impl fmt::Display for GHComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Gray–Hervella components of the intrinsic torsion.
#[derive(Clone, Debug, Serialize)]
pub struct GHClass {
    pub flags: Vec<GHComponent>,
    /// |ψ⁺|, |N̂^J|, |t − θ∧ω|, |θ|.
    pub norms: [f64; 4],
    #[serde(skip)]
    pub theta: Form,
}

impl GHClass {
    pub fn is_kahler(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn has(&self, c: GHComponent) -> bool {
        self.flags.contains(&c)
    }

    /// "W1+W4", or "Kähler" for the empty class.
    pub fn label(&self) -> String {
        if self.flags.is_empty() {
            return "Kähler".into();
        }
        self.flags.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("+")
    }
}

pub fn gh_classify(pt: &AHPoint, tol: f64) -> GHClass {
    let n = pt.dim();
    let (_, hat) = nijenhuis(pt);
    let dw = pt.d_omega();
    let t = proj(&dw, 1, 2).scaled(0.5);
    let psi = proj(&dw, 3, 0).scaled(1.0 / 3.0);
    let (theta, w3) = match lee_form(&t) {
        Ok(pair) => pair,
        // complex dimension 1: λ^{1,2} = 0
        Err(_) => (Form::zero(n, 1), t.clone()),
    };
    let norms = [psi.norm(), hat.norm(), w3.norm(), theta.norm()];
    let all = [GHComponent::W1, GHComponent::W2, GHComponent::W3, GHComponent::W4];
    let flags = all.iter().zip(norms).filter(|(_, v)| *v > tol).map(|(c, _)| *c).collect();
    GHClass { flags, norms, theta }
}
