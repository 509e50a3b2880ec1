//! Invariant connections on a reductive model, given by their connection
//! function Λ: 𝔪 → 𝔰𝔬(𝔪) stored as 2-forms.
//!
//! For an invariant tensor P the covariant derivative at the origin is the
//! derivation action (∇_X P)_o = Λ(X)·P, which on forms is [Λ(X), ·].

use super::HomogeneousModel;
use crate::curvature::CurvatureLike;
use crate::error::{Error, Result};
use crate::forms::basis::{indices, table};
use crate::forms::{comm, endo_apply, j_vector, proj, unit, BidegreeLabel, Form, FormMap};

/// Levi-Civita connection function:
/// ⟨Λ(X)Y, Z⟩ = ½(⟨[X,Y]_𝔪,Z⟩ − ⟨[Y,Z]_𝔪,X⟩ + ⟨[Z,X]_𝔪,Y⟩).
pub fn levi_civita(model: &HomogeneousModel) -> FormMap {
    let n = model.dim_m();
    FormMap::from_fn(n, 2, |x| {
        let ex = unit(n, x);
        let mut f = Form::zero(n, 2);
        for y in 0..n {
            let ey = unit(n, y);
            let xy = model.bracket_m(&ex, &ey);
            for z in y + 1..n {
                let ez = unit(n, z);
                let yz = model.bracket_m(&ey, &ez);
                let zx = model.bracket_m(&ez, &ex);
                let v = 0.5 * (xy[z] - yz[x] + zx[y]);
                f.add_term(&[y, z], v);
            }
        }
        f
    })
}

/// Differential of an invariant form through the 𝔪-projected brackets:
/// dφ(X₀,…,Xₚ) = Σ_{i<j} (−1)^{i+j} φ([Xᵢ,Xⱼ]_𝔪, X₀,…,X̂ᵢ,…,X̂ⱼ,…,Xₚ).
pub fn ext_d(model: &HomogeneousModel, phi: &Form) -> Form {
    let n = model.dim_m();
    let p = phi.degree();
    if p + 1 > n {
        return Form::zero(n, p + 1);
    }
    let t = table(n);
    let mut out = Form::zero(n, p + 1);
    let mut brackets = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            brackets[i][j] = model.bracket_m(&unit(n, i), &unit(n, j));
        }
    }
    for (r, o) in out.coeffs_mut().iter_mut().enumerate() {
        let idx = indices(t.masks[p + 1][r]);
        let mut acc = 0.0;
        for s in 0..idx.len() {
            for u in s + 1..idx.len() {
                let br = &brackets[idx[s]][idx[u]];
                let rest: Vec<usize> =
                    idx.iter().enumerate().filter(|(k, _)| *k != s && *k != u).map(|(_, &v)| v).collect();
                // φ(v, e_rest) = Σ_k v_k φ(e_k, e_rest)
                let mut val = 0.0;
                for (k, &bk) in br.iter().enumerate() {
                    if bk == 0.0 || rest.contains(&k) {
                        continue;
                    }
                    let mut full = vec![k];
                    full.extend_from_slice(&rest);
                    val += bk * phi.get(&full);
                }
                let sign = if (s + u) % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * val;
            }
        }
        *o = acc;
    }
    out
}

/// An invariant metric connection Λ on a model, with its derivative suite.
#[derive(Clone, Debug)]
pub struct InvariantConnection<'a> {
    model: &'a HomogeneousModel,
    pot: FormMap,
}

impl<'a> InvariantConnection<'a> {
    pub fn new(model: &'a HomogeneousModel, pot: FormMap) -> Result<Self> {
        if pot.degree() != 2 || pot.dim() != model.dim_m() {
            return Err(Error::Degree { op: "connection potential", degree: pot.degree() });
        }
        Ok(InvariantConnection { model, pot })
    }

    pub fn levi_civita(model: &'a HomogeneousModel) -> Self {
        InvariantConnection { model, pot: levi_civita(model) }
    }

    pub fn potential(&self) -> &FormMap {
        &self.pot
    }

    pub fn model(&self) -> &HomogeneousModel {
        self.model
    }

    fn dim(&self) -> usize {
        self.model.dim_m()
    }

    /// D_{eᵢ} φ.
    pub fn deriv(&self, i: usize, phi: &Form) -> Form {
        if phi.degree() == 0 {
            return phi.scaled(0.0);
        }
        comm(self.pot.at_basis(i), phi)
    }

    /// D_X φ.
    pub fn deriv_at(&self, x: &[f64], phi: &Form) -> Form {
        if phi.degree() == 0 {
            return phi.scaled(0.0);
        }
        comm(&self.pot.at(x), phi)
    }

    /// X ↦ D_X φ.
    pub fn deriv_all(&self, phi: &Form) -> FormMap {
        FormMap::from_fn(self.dim(), phi.degree(), |i| self.deriv(i, phi))
    }

    /// D_{eᵢ} of a tensor N ∈ Λ¹⊗Λ^p: (D_X N)_Y = D_X(N_Y) − N_{D_X Y}.
    pub fn deriv_map(&self, i: usize, nmap: &FormMap) -> FormMap {
        let a = self.pot.at_basis(i);
        FormMap::from_fn(self.dim(), nmap.degree(), |y| {
            let dy = endo_apply(a, &unit(self.dim(), y));
            self.deriv(i, nmap.at_basis(y)) - nmap.at(&dy)
        })
    }

    /// Vector D_X Y.
    pub fn deriv_vector(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        endo_apply(&self.pot.at(x), y)
    }

    /// d_D φ = Σ eᵢ ∧ D_{eᵢ}φ.
    pub fn d(&self, phi: &Form) -> Form {
        if phi.degree() == 0 {
            return Form::zero(self.dim(), 1);
        }
        self.deriv_all(phi).alternation()
    }

    /// d*_D φ = −Σ eᵢ ⌟ D_{eᵢ}φ.
    pub fn codiff(&self, phi: &Form) -> Form {
        let n = self.dim();
        if phi.degree() == 0 {
            return Form::scalar(n, 0.0);
        }
        let mut out = Form::zero(n, phi.degree() - 1);
        for i in 0..n {
            out -= &self.deriv(i, phi).contract_basis(i);
        }
        out
    }

    /// (∂_D φ, ∂̄_D φ) for φ of pure type λ^{p,q}, p ≠ q: ∂ raises the smaller
    /// index and ∂̄ the larger one.
    pub fn del(&self, phi: &Form, label: BidegreeLabel) -> Result<(Form, Form)> {
        if label.degree() != phi.degree() || label.lo() == label.hi() {
            return Err(Error::Degree { op: "∂_D", degree: phi.degree() });
        }
        let dphi = self.d(phi);
        let up_lo = proj(&dphi, label.lo() + 1, label.hi());
        let up_hi = proj(&dphi, label.lo(), label.hi() + 1);
        Ok((up_lo, up_hi))
    }

    /// Torsion T(X,Y) = Λ(X)Y − Λ(Y)X − [X,Y]_𝔪.
    pub fn torsion(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let a = self.deriv_vector(x, y);
        let b = self.deriv_vector(y, x);
        let c = self.model.bracket_m(x, y);
        a.iter().zip(&b).zip(&c).map(|((a, b), c)| a - b - c).collect()
    }

    /// max over frame pairs of |T(eᵢ,eⱼ) − T₃(eᵢ,eⱼ,·)|.
    pub fn torsion_defect(&self, t3: &Form) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                let t = self.torsion(&unit(n, i), &unit(n, j));
                let want = t3.contract_basis(i).contract_basis(j).to_vector();
                let d = t.iter().zip(&want).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Curvature with R(X,Y) = −[D_X, D_Y] + D_{[X,Y]}, i.e. minus the
    /// Nomizu expression [Λ(X),Λ(Y)] − Λ([X,Y]_𝔪) − ad([X,Y]_𝔥).
    pub fn curvature(&self) -> CurvatureLike {
        let n = self.dim();
        CurvatureLike::from_pairs(n, |a, b| {
            let x = unit(n, a);
            let y = unit(n, b);
            let la = self.pot.at_basis(a);
            let lb = self.pot.at_basis(b);
            let std = comm(la, lb) - self.pot.at(&self.model.bracket_m(&x, &y)) - self.model.ad_h_form(&self.model.bracket_h(&x, &y));
            -std
        })
    }

    /// |Dω| over the frame; zero exactly for Hermitian connections.
    pub fn hermitian_defect(&self) -> f64 {
        let w = crate::forms::kahler_form(self.dim());
        self.deriv_all(&w).norm()
    }

    /// D_{Jeᵢ} φ.
    pub fn deriv_j(&self, i: usize, phi: &Form) -> Form {
        self.deriv_at(&j_vector(&unit(self.dim(), i)), phi)
    }
}
