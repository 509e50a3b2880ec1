//! Randomised residual suite for the curvature embeddings and the S²(λ^{1,1}) split.

use nalgebra as na;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::decompose::split_s2_lambda11;
use super::embed::{check_embed, hat_embed, ring_embed, tilde_embed};
use super::tensor::{bianchi_b1, mat_vec, CurvatureLike};
use super::{kso_defect, random_kahler_curvature, random_s2_lambda11};
use crate::error::{Error, Result};
use crate::forms::{calj, j_vector, kahler_form, proj, pull_j, standard_j_matrix, unit, Form, FormMap};
use crate::report::{digest, ResidualReport};

fn worst(acc: &mut f64, r: f64) {
    if r > *acc || r.is_nan() {
        *acc = r;
    }
}

/// A random symmetric S with SJ + JS = 0.
pub fn random_s2_minus<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> na::DMatrix<f64> {
    let a = na::DMatrix::from_fn(dim, dim, |_, _| rng.gen_range(-1.0..1.0));
    let j = standard_j_matrix(dim);
    let sym = &a + a.transpose();
    (&sym + &j * &sym * &j) * 0.5
}

/// H₁(x,y) = (x⌟η_y − y⌟η_x)_{λ^{1,1}}.
fn h1(eta: &FormMap) -> CurvatureLike {
    CurvatureLike::from_pairs(eta.dim(), |a, b| {
        let v = eta.at_basis(b).contract_basis(a) - eta.at_basis(a).contract_basis(b);
        proj(&v, 1, 1)
    })
}

/// Split, embedding and b₁-lemma checks on `samples` random inputs.
pub fn curvature_algebra_suite(dim: usize, samples: usize, seed: u64, tol: f64) -> Result<ResidualReport> {
    if dim % 2 != 0 || !(6..=16).contains(&dim) {
        return Err(Error::Input(format!("curvature suite needs an even dimension in 6..=16, got {dim}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = format!("dim{dim}/samples{samples}/seed{seed}");
    let mut rep = ResidualReport::new("curvature-algebra", format!("R^{dim}"), digest(id.as_bytes()));
    let w = kahler_form(dim);
    let basis = |i: usize| unit(dim, i);

    let [mut recon, mut kahler, mut orth, mut repeat, mut unique, mut hat, mut check, mut ring, mut tilde_a, mut tilde_b, mut lemma1, mut lemma2] =
        [0.0f64; 12];
    for _ in 0..samples {
        let q = random_s2_lambda11(&mut rng, dim);
        let (rk, om) = split_s2_lambda11(&q, tol)?;
        let back = rk.add(&hat_embed(&om, tol)?);
        worst(&mut recon, q.dist(&back));
        worst(&mut kahler, kso_defect(&rk).max(rk.pair_symmetry_defect()).max(rk.value_slot_11_defect()));
        let h = hat_embed(&om, tol)?;
        let ip: f64 = rk.rows().iter().zip(h.rows()).map(|(a, b)| a.dot(b)).sum();
        worst(&mut orth, ip.abs());
        let (rk2, om2) = split_s2_lambda11(&q, tol)?;
        worst(&mut repeat, rk.dist(&rk2).max(om.dist(&om2)));

        // A planted split must be recovered exactly.
        let rk0 = random_kahler_curvature(&mut rng, dim);
        let om0 = proj(&Form::random(&mut rng, dim, 4), 2, 2);
        let planted = rk0.add(&hat_embed(&om0, tol)?);
        let (rk1, om1) = split_s2_lambda11(&planted, tol)?;
        worst(&mut unique, rk1.dist(&rk0).max(om1.dist(&om0)));

        let o22 = proj(&Form::random(&mut rng, dim, 4), 2, 2);
        worst(&mut hat, bianchi_b1(&hat_embed(&o22, tol)?).dist(&FormMap::contraction_of(&o22)));

        let o13 = proj(&Form::random(&mut rng, dim, 4), 1, 3);
        let co = calj(&o13);
        let want_check = FormMap::from_fn(dim, 3, |i| co.contract(&j_vector(&basis(i))) - o13.contract_basis(i).scaled(2.0));
        worst(&mut check, bianchi_b1(&check_embed(&o13, tol)?).dist(&want_check));

        let b_tilde = bianchi_b1(&tilde_embed(&o13, tol)?);
        let by_projection = FormMap::from_fn(dim, 3, |i| proj(&o13.contract_basis(i), 1, 2));
        let by_formula = FormMap::from_fn(dim, 3, |i| {
            (o13.contract_basis(i).scaled(2.0) - co.contract(&j_vector(&basis(i)))).scaled(0.25)
        });
        worst(&mut tilde_a, b_tilde.dist(&by_projection));
        worst(&mut tilde_b, b_tilde.dist(&by_formula));

        let s = random_s2_minus(&mut rng, dim);
        let want_ring = FormMap::from_fn(dim, 3, |i| Form::covector(&mat_vec(&s, &basis(i))).wedge(&w));
        worst(&mut ring, bianchi_b1(&ring_embed(&s, tol)?).dist(&want_ring));

        let eta = FormMap::from_fn(dim, 3, |_| proj(&Form::random(&mut rng, dim, 3), 1, 2));
        let jeta = eta.map(pull_j);
        let a_eta = eta.alternation();
        let a_jeta = jeta.alternation();
        let b = bianchi_b1(&h1(&eta)).scaled(2.0);
        let want1 = FormMap::from_fn(dim, 3, |i| {
            let x = basis(i);
            let jx = j_vector(&x);
            eta.at_basis(i).scaled(3.0) + pull_j(&eta.at(&jx)) + a_eta.contract(&x) - a_jeta.contract(&jx)
        });
        worst(&mut lemma1, b.dist(&want1));
        let h2 = h1(&eta).precompose_j();
        let ac_eta = eta.alternation_c();
        let ac_jeta = jeta.alternation_c();
        let want2 = FormMap::from_fn(dim, 3, |i| {
            let x = basis(i);
            let jx = j_vector(&x);
            eta.at_basis(i) + pull_j(&eta.at(&jx)).scaled(3.0) + ac_eta.contract(&jx) + ac_jeta.contract(&x)
        });
        worst(&mut lemma2, bianchi_b1(&h2).scaled(2.0).dist(&want2));
    }
    rep.check("split reconstruction", "Q = R^K + Ω̂ for random Q ∈ S²(λ^{1,1})", recon, tol);
    rep.check("R^K ∈ 𝒦(𝔲(m))", "b₁R^K = 0 with R^K pair-symmetric of type (1,1)", kahler, tol);
    rep.check("split orthogonality", "⟨R^K, Ω̂⟩ = 0", orth, tol);
    rep.check("split repeatability", "two runs on the same Q agree", repeat, tol.min(1e-12));
    rep.check("split uniqueness", "a planted R^K + Ω̂ is recovered", unique, tol);
    rep.check("b₁(Ω̂) = Ω", "(b₁Ω̂)ₓ = x⌟Ω for Ω ∈ λ^{2,2}", hat, tol);
    rep.check("b₁(Ω̌)", "(b₁Ω̌)ₓ = Jx⌟𝒥Ω − 2x⌟Ω for Ω ∈ λ^{1,3}", check, tol);
    rep.check("b₁(S̊)", "(b₁S̊)ₓ = Sx∧ω for S ∈ S^{2,−}", ring, tol);
    rep.check("b₁(Ω̃) by projection", "(b₁Ω̃)ₓ = (x⌟Ω)_{λ^{1,2}}", tilde_a, tol);
    rep.check("b₁(Ω̃) by formula", "(b₁Ω̃)ₓ = ¼(2x⌟Ω − Jx⌟𝒥Ω)", tilde_b, tol);
    rep.check("b₁H₁ lemma", "2(b₁H₁)ₓ = 3ηₓ + Jη_{Jx} + x⌟a(η) − Jx⌟a(Jη)", lemma1, tol);
    rep.check("b₁H₂ lemma", "2(b₁H₂)ₓ = ηₓ + 3Jη_{Jx} + Jx⌟a^c(η) + x⌟a^c(Jη) with H₂(x,y) = H₁(Jx,Jy)", lemma2, tol);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curvature_suite_passes_in_dim_6() {
        let rep = curvature_algebra_suite(6, 10, 3, 1e-10).unwrap();
        assert!(rep.all_pass(), "{}", rep.render());
    }
}
