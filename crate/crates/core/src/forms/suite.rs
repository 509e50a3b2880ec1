//! Randomised residual suite for the U(m) operator calculus.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::basis::{binomial, table};
use super::bidegree::{calj2, labels, proj, split};
use super::ops::{bul, calj, comm, jj, kahler_form, lefschetz, lefschetz_adjoint, pull_j};
use super::Form;
use crate::error::{Error, Result};
use crate::holonomy::linalg::{null_space, orth, Mat};
use crate::report::{digest, ResidualReport};

/// Running maximum of a residual over samples.
struct Worst(f64);

impl Worst {
    fn see(&mut self, r: f64) {
        if r > self.0 || r.is_nan() {
            self.0 = r;
        }
    }
}

/// Distance from `a` to the sum of the listed bidegree components.
fn outside(a: &Form, allowed: &[(usize, usize)]) -> f64 {
    let mut kept = Form::zero(a.dim(), a.degree());
    for &(p, q) in allowed {
        kept += &proj(a, p, q);
    }
    a.dist(&kept)
}

/// Operator-calculus checks on `samples` random forms per degree ≤ 4.
pub fn operator_suite(dim: usize, samples: usize, seed: u64, tol: f64) -> Result<ResidualReport> {
    if dim % 2 != 0 || !(6..=16).contains(&dim) {
        return Err(Error::Input(format!("operator suite needs an even dimension in 6..=16, got {dim}")));
    }
    let m = dim / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = format!("dim{dim}/samples{samples}/seed{seed}");
    let mut rep = ResidualReport::new("operators", format!("R^{dim}"), digest(id.as_bytes()));
    let omega = kahler_form(dim);

    for p in 0..=4 {
        let (mut complete, mut eigen, mut omega_c, mut lef, mut pj) = (Worst(0.0), Worst(0.0), Worst(0.0), Worst(0.0), Worst(0.0));
        for _ in 0..samples {
            let a = Form::random(&mut rng, dim, p);
            let parts = split(&a);
            let mut sum = Form::zero(dim, p);
            for (label, c) in &parts {
                sum += c;
                eigen.see(calj2(c).dist(&c.scaled(label.eigenvalue())));
            }
            complete.see(sum.dist(&a));
            omega_c.see(comm(&omega, &a).dist(&calj(&a).scaled(-1.0)));
            let mut bracket = lefschetz_adjoint(&lefschetz(&a));
            if p >= 2 {
                bracket -= &lefschetz(&lefschetz_adjoint(&a));
            }
            lef.see(bracket.dist(&a.scaled(m as f64 - p as f64)));
            if p >= 1 && p <= m {
                let l = proj(&a, p, 0);
                let x: Vec<Vec<f64>> = (0..p).map(|_| random_vec(&mut rng, dim)).collect();
                let jx0 = super::ops::j_vector(&x[0]);
                let mut args: Vec<&[f64]> = x.iter().map(|v| v.as_slice()).collect();
                args[0] = &jx0;
                let lhs = l.eval(&args);
                let rhs = jj(&l).eval(&x.iter().map(|v| v.as_slice()).collect::<Vec<_>>());
                pj.see((lhs - rhs).abs());
            }
        }
        rep.check(&format!("completeness, degree {p}"), "Σ over bidegrees of the projections returns the form", complete.0, tol);
        rep.check(&format!("𝒥² eigenvalues, degree {p}"), "𝒥² = −(p−q)² on λ^{p,q}", eigen.0, tol);
        rep.check(&format!("[ω,φ] = −𝒥φ, degree {p}"), "commutator with the Kähler form", omega_c.0, tol);
        rep.check(&format!("[L*,L] = m−p, degree {p}"), "Lefschetz commutator", lef.0, tol);
        if p >= 1 && p <= m {
            rep.check(&format!("𝕁 = p⁻¹𝒥 on λ^{p}"), "α(JX₁,X₂,…) = p⁻¹(𝒥α)(X₁,X₂,…)", pj.0, tol);
        }
    }

    let mut deriv = Worst(0.0);
    for _ in 0..samples {
        for (p, q) in [(1, 2), (2, 2), (1, 3), (2, 3)] {
            let a = Form::random(&mut rng, dim, p);
            let b = Form::random(&mut rng, dim, q);
            let lhs = calj(&a.wedge(&b));
            let rhs = calj(&a).wedge(&b) + a.wedge(&calj(&b));
            deriv.see(lhs.dist(&rhs));
        }
    }
    rep.check("𝒥 derivation law", "𝒥(a∧b) = 𝒥a∧b + a∧𝒥b", deriv.0, tol);

    let rnd = |rng: &mut ChaCha8Rng, p: usize, q: usize| proj(&Form::random(rng, dim, p + q), p, q);
    let [mut parity4, mut jeq, mut b1, mut b2, mut b3, mut b4, mut b5, mut c1, mut c2, mut c3] = std::array::from_fn(|_| Worst(0.0));
    for _ in 0..samples {
        let w = Form::random(&mut rng, dim, 4);
        let plus = proj(&w, 2, 2) + proj(&w, 4, 0);
        let minus = proj(&w, 1, 3);
        parity4.see(pull_j(&plus).dist(&plus).max(pull_j(&minus).dist(&minus.scaled(-1.0))));

        let phi = rnd(&mut rng, 1, 2);
        let phi2 = rnd(&mut rng, 1, 2);
        let psi = rnd(&mut rng, 3, 0);
        let psi2 = rnd(&mut rng, 3, 0);
        jeq.see(calj(&phi).dist(&pull_j(&phi)));
        b1.see(outside(&bul(&phi, &phi2), &[(2, 2), (1, 3)]));
        b2.see(outside(&bul(&phi, &pull_j(&phi)), &[(1, 3)]));
        b3.see(outside(&bul(&phi, &psi), &[(1, 3), (4, 0)]));
        b4.see(outside(&bul(&psi, &psi2), &[(2, 2), (4, 0)]));
        b5.see(bul(&psi, &pull_j(&psi)).norm());

        let a11 = rnd(&mut rng, 1, 1);
        let a20 = rnd(&mut rng, 2, 0);
        c1.see(outside(&comm(&a11, &psi), &[(3, 0)]));
        c2.see(outside(&comm(&a11, &phi), &[(1, 2)]));
        c3.see(outside(&comm(&a20, &psi), &[(1, 2)]));
    }
    rep.check("J parity on Λ⁴", "J = 1 on λ^{2,2}⊕λ⁴ and −1 on λ^{1,3}", parity4.0, tol);
    rep.check("𝒥 = J on λ^{1,2}", "the two actions agree on λ^{1,2}", jeq.0, tol);
    rep.check("bullet (i)", "φ₁∙φ₂ ∈ λ^{2,2}⊕λ^{1,3} for φ₁,φ₂ ∈ λ^{1,2}", b1.0, tol);
    rep.check("bullet (ii)", "φ∙Jφ ∈ λ^{1,3} for φ ∈ λ^{1,2}", b2.0, tol);
    rep.check("bullet (iii)", "φ∙ψ ∈ λ^{1,3}⊕λ⁴ for φ ∈ λ^{1,2}, ψ ∈ λ³", b3.0, tol);
    rep.check("bullet (iv)", "ψ₁∙ψ₂ ∈ λ^{2,2}⊕λ⁴ for ψ₁,ψ₂ ∈ λ³", b4.0, tol);
    rep.check("bullet (v)", "ψ∙Jψ = 0 for ψ ∈ λ³", b5.0, tol);
    rep.check("[λ^{1,1}, λ³] ⊆ λ³", "commutator inclusion", c1.0, tol);
    rep.check("[λ^{1,1}, λ^{1,2}] ⊆ λ^{1,2}", "commutator inclusion", c2.0, tol);
    rep.check("[λ², λ³] ⊆ λ^{1,2}", "commutator inclusion", c3.0, tol);

    alternation_checks(&mut rep, dim, tol);
    Ok(rep)
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    use rand::Rng;
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

/// Orthonormal basis of λ^{p,q} as forms.
pub fn bidegree_basis(dim: usize, p: usize, q: usize) -> Vec<Form> {
    let s = p + q;
    let len = binomial(dim, s);
    let t = table(dim);
    let cols: Vec<Vec<f64>> = (0..len)
        .map(|r| {
            let idx = super::basis::indices(t.masks[s][r]);
            proj(&Form::basis(dim, &idx), p, q).coeffs().to_vec()
        })
        .collect();
    let a = Mat::from_fn(len, len, |r, c| cols[c][r]);
    let b = orth(&a, 1e-9);
    (0..b.ncols()).map(|c| Form::from_coeffs(dim, s, b.column(c).iter().copied().collect())).collect()
}

/// Matrix of 𝕁 on an orthonormal basis: column a holds the coordinates of 𝕁uₐ.
fn jj_matrix(basis: &[Form]) -> Mat {
    let images: Vec<Form> = basis.iter().map(jj).collect();
    Mat::from_fn(basis.len(), basis.len(), |c, a| basis[c].dot(&images[a]))
}

/// Alternation data for λ^p⊗λ^q with Q = Σ M_{ba} uₐ⊗v_b, M stored column-major.
struct Tensors {
    u: Vec<Form>,
    v: Vec<Form>,
    a: Mat,
    b: Mat,
}

impl Tensors {
    fn new(dim: usize, p: usize, q: usize) -> Self {
        let u = bidegree_basis(dim, p, 0);
        let v = bidegree_basis(dim, q, 0);
        let a = jj_matrix(&u);
        let b = jj_matrix(&v);
        Tensors { u, v, a, b }
    }

    fn len(&self) -> usize {
        self.u.len() * self.v.len()
    }

    fn unvec(&self, x: &[f64]) -> Mat {
        Mat::from_column_slice(self.v.len(), self.u.len(), x)
    }

    /// (𝕁⊗1)Q + sign·(1⊗𝕁)Q; sign = +1 cuts out ⊗₁, −1 cuts out ⊗₂.
    fn constraint(&self, mm: &Mat, sign: f64) -> Mat {
        mm * self.a.transpose() + &self.b * mm * sign
    }

    fn constraint_matrix(&self, sign: f64) -> Mat {
        let n = self.len();
        let mut k = Mat::zeros(n, n);
        for c in 0..n {
            let mut e = vec![0.0; n];
            e[c] = 1.0;
            let img = self.constraint(&self.unvec(&e), sign);
            k.column_mut(c).copy_from_slice(img.as_slice());
        }
        k
    }

    fn alternate(&self, x: &[f64]) -> Form {
        let mm = self.unvec(x);
        let dim = self.u[0].dim();
        let mut out = Form::zero(dim, self.u[0].degree() + self.v[0].degree());
        for (ai, ua) in self.u.iter().enumerate() {
            for (bi, vb) in self.v.iter().enumerate() {
                out.axpy(mm[(bi, ai)], &ua.wedge(vb));
            }
        }
        out
    }

    fn alternation_matrix(&self) -> Mat {
        let n = self.len();
        let cols: Vec<Form> = (0..n)
            .map(|c| {
                let mut e = vec![0.0; n];
                e[c] = 1.0;
                self.alternate(&e)
            })
            .collect();
        Mat::from_fn(cols[0].coeffs().len(), n, |r, c| cols[c].coeffs()[r])
    }
}

fn rank(a: &Mat) -> usize {
    orth(a, 1e-9).ncols()
}

/// Image, injectivity and kernel statements for the alternation λ^p⊗λ^q → Λ^{p+q}.
fn alternation_checks(rep: &mut ResidualReport, dim: usize, tol: f64) {
    let m = dim / 2;
    for p in 1..=m.min(3) {
        for q in p..=m.min(3) {
            if p + q > 4 {
                continue;
            }
            let t = Tensors::new(dim, p, q);
            let sub1 = null_space(&t.constraint_matrix(1.0), 1e-9);
            let sub2 = null_space(&t.constraint_matrix(-1.0), 1e-9);
            let alt = t.alternation_matrix();
            let mut img1 = 0.0f64;
            let mut img2 = 0.0f64;
            for c in 0..sub1.ncols() {
                let f = t.alternate(sub1.column(c).as_slice());
                img1 = img1.max(outside(&f, &[(p, q)]));
            }
            for c in 0..sub2.ncols() {
                let f = t.alternate(sub2.column(c).as_slice());
                img2 = img2.max(if labels(m, p + q).iter().any(|l| l.lo() == 0) { outside(&f, &[(p + q, 0)]) } else { f.norm() });
            }
            let tag = format!("λ^{p}⊗λ^{q}");
            rep.check(&format!("alternation (i) on {tag}"), "a(λ^p⊗₁λ^q) ⊆ λ^{p,q}", img1, tol);
            rep.check(&format!("alternation (ii) on {tag}"), "a(λ^p⊗₂λ^q) ⊆ λ^{p+q}", img2, tol);
            if p != q {
                let restricted = &alt * &sub1;
                let defect = (sub1.ncols() - rank(&restricted).min(sub1.ncols())) as f64;
                rep.check(&format!("alternation (iii) on {tag}"), "a is injective on λ^p⊗₁λ^q for p ≠ q (rank deficit)", defect, tol);
            }
            let ker = null_space(&alt, 1e-9);
            let mut off = 0.0f64;
            for c in 0..ker.ncols() {
                let mm = t.unvec(ker.column(c).as_slice());
                off = off.max(t.constraint(&mm, -1.0).norm());
            }
            if p != q {
                rep.check(&format!("alternation (iv) on {tag}"), "ker a ⊆ λ^p⊗₂λ^q", off, tol);
            } else {
                rep.note(&format!("alternation (iv) on {tag}"), "ker a ⊆ λ^p⊗₂λ^q; symmetric tensors in ⊗₁ lie in the kernel when p = q", off, tol);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_suite_passes_in_dim_6() {
        let rep = operator_suite(6, 20, 1, 1e-9).unwrap();
        assert!(rep.all_pass(), "{}", rep.render());
    }

    #[test]
    fn operator_suite_passes_in_dim_8() {
        let rep = operator_suite(8, 5, 2, 1e-9).unwrap();
        assert!(rep.all_pass(), "{}", rep.render());
    }

    #[test]
    fn bidegree_bases_have_expected_sizes() {
        assert_eq!(bidegree_basis(6, 3, 0).len(), 2);
        assert_eq!(bidegree_basis(6, 1, 1).len(), 9);
        assert_eq!(bidegree_basis(6, 2, 0).len(), 6);
        assert_eq!(bidegree_basis(6, 1, 2).len(), 18);
    }
}
