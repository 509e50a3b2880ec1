use rand::Rng;

use super::form::Form;
use super::ops::j_vector;

/// A linear map V → Λ^p, x ↦ F_x, stored by its values on the frame.
/// Elements of Λ¹⊗Λ^p such as ∇ω, N^J, η, ζ and DT are of this type.
#[derive(Clone, Debug, PartialEq)]
pub struct FormMap {
    degree: usize,
    vals: Vec<Form>,
}

impl FormMap {
    pub fn zero(dim: usize, degree: usize) -> Self {
        FormMap { degree, vals: vec![Form::zero(dim, degree); dim] }
    }

    pub fn from_fn(dim: usize, degree: usize, mut f: impl FnMut(usize) -> Form) -> Self {
        let vals: Vec<Form> = (0..dim).map(&mut f).collect();
        assert!(vals.iter().all(|v| v.degree() == degree && v.dim() == dim));
        FormMap { degree, vals }
    }

    pub fn from_vals(vals: Vec<Form>) -> Self {
        let degree = vals[0].degree();
        let dim = vals.len();
        assert!(vals.iter().all(|v| v.degree() == degree && v.dim() == dim));
        FormMap { degree, vals }
    }

    /// x ↦ x ⌟ Ψ.
    pub fn contraction_of(psi: &Form) -> Self {
        let n = psi.dim();
        FormMap::from_fn(n, psi.degree() - 1, |i| psi.contract_basis(i))
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, dim: usize, degree: usize) -> Self {
        FormMap::from_fn(dim, degree, |_| Form::random(rng, dim, degree))
    }

    pub fn dim(&self) -> usize {
        self.vals.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn vals(&self) -> &[Form] {
        &self.vals
    }

    pub fn at_basis(&self, i: usize) -> &Form {
        &self.vals[i]
    }

    pub fn at(&self, x: &[f64]) -> Form {
        let mut out = Form::zero(self.dim(), self.degree);
        for (xi, v) in x.iter().zip(&self.vals) {
            if *xi != 0.0 {
                out.axpy(*xi, v);
            }
        }
        out
    }

    /// F_{Je_i}.
    pub fn at_j_basis(&self, i: usize) -> Form {
        if i % 2 == 0 {
            self.vals[i + 1].clone()
        } else {
            -&self.vals[i - 1]
        }
    }

    pub fn at_j(&self, x: &[f64]) -> Form {
        self.at(&j_vector(x))
    }

    /// Applies `f` to every value.
    pub fn map(&self, f: impl Fn(&Form) -> Form) -> FormMap {
        FormMap::from_vals(self.vals.iter().map(f).collect())
    }

    /// x ↦ F_{Jx}.
    pub fn precompose_j(&self) -> FormMap {
        FormMap::from_fn(self.dim(), self.degree, |i| self.at_j_basis(i))
    }

    /// Total alternation a(F) = Σ eᵢ ∧ F_{eᵢ}.
    pub fn alternation(&self) -> Form {
        let mut out = Form::zero(self.dim(), self.degree + 1);
        for (i, v) in self.vals.iter().enumerate() {
            out += &v.e_wedge(i);
        }
        out
    }

    /// Complex alternation a^c(F) = Σ e_k ∧ F_{Je_k}.
    pub fn alternation_c(&self) -> Form {
        let mut out = Form::zero(self.dim(), self.degree + 1);
        for i in 0..self.dim() {
            out += &self.at_j_basis(i).e_wedge(i);
        }
        out
    }

    pub fn norm(&self) -> f64 {
        self.vals.iter().map(|v| v.dot(v)).sum::<f64>().sqrt()
    }

    pub fn dist(&self, other: &FormMap) -> f64 {
        self.vals.iter().zip(&other.vals).map(|(a, b)| a.dist(b).powi(2)).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, s: f64) -> FormMap {
        self.map(|v| v.scaled(s))
    }

    pub fn axpy(&mut self, s: f64, other: &FormMap) {
        for (a, b) in self.vals.iter_mut().zip(&other.vals) {
            a.axpy(s, b);
        }
    }

    pub fn add(&self, other: &FormMap) -> FormMap {
        let mut out = self.clone();
        out.axpy(1.0, other);
        out
    }

    pub fn sub(&self, other: &FormMap) -> FormMap {
        let mut out = self.clone();
        out.axpy(-1.0, other);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn alternation_of_contraction_map() {
        // γ_x = x⌟Ψ for Ψ ∈ Λ⁴ gives a(γ) = 4Ψ
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let psi = Form::random(&mut rng, 6, 4);
        let g = FormMap::contraction_of(&psi);
        assert!(g.alternation().dist(&psi.scaled(4.0)) < 1e-13);
    }
}
