//! Algebraic curvature tensors over a Hermitian vector space.

pub mod consts;
pub mod decompose;
pub mod embed;
pub mod suite;
pub mod tensor;

use rand::Rng;

pub use decompose::{
    bianchi_targets, curvvh_defect, decompose_hermitian_curvature, ra_rm, split_s2_lambda11, CurvDecomposition,
};
pub use embed::{check_embed, hat_embed, r_omega, ring_embed, tilde_embed};
pub use suite::{curvature_algebra_suite, random_s2_minus};
pub use tensor::{bianchi_b1, four_form_tensor, gamma_xy, CurvatureFlags, CurvatureLike, OneThreeTensor};

use crate::forms::proj;

/// A random element of S²(λ^{1,1}).
pub fn random_s2_lambda11<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CurvatureLike {
    let m = CurvatureLike::random(rng, dim);
    let sym = m.add(&m.transpose());
    let half = sym.map_values(|v| proj(v, 1, 1));
    half.transpose().map_values(|v| proj(v, 1, 1))
}

/// A random Kähler curvature tensor, the 𝒦(𝔲(m)) part of a random Q.
pub fn random_kahler_curvature<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CurvatureLike {
    let q = random_s2_lambda11(rng, dim);
    split_s2_lambda11(&q, 1e-9).expect("S²(λ^{1,1}) by construction").0
}

/// Membership residual for 𝒦(𝔰𝔬): |b₁R|.
pub fn kso_defect(r: &CurvatureLike) -> f64 {
    bianchi_b1(r).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{calj, j_vector, kahler_form, unit, Form, FormMap};
    use nalgebra as na;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hat_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let om = proj(&Form::random(&mut rng, 6, 4), 2, 2);
        let hat = hat_embed(&om, 1e-10).unwrap();
        let b = bianchi_b1(&hat);
        assert!(b.dist(&FormMap::contraction_of(&om)) < 1e-12);
        assert!(hat.pair_symmetry_defect() < 1e-13);
        let (rk, back) = split_s2_lambda11(&hat, 1e-10).unwrap();
        assert!(rk.norm() < 1e-12);
        assert!(back.dist(&om) < 1e-12);
    }

    #[test]
    fn check_embed_bianchi() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let om = proj(&Form::random(&mut rng, 6, 4), 1, 3);
        let c = check_embed(&om, 1e-10).unwrap();
        let cj = calj(&om);
        let want = FormMap::from_fn(6, 3, |i| {
            let x = unit(6, i);
            cj.contract(&j_vector(&x)) - om.contract(&x).scaled(2.0)
        });
        assert!(bianchi_b1(&c).dist(&want) < 1e-12);
    }

    #[test]
    fn wrong_bidegree_is_refused() {
        let om = kahler_form(6).wedge(&kahler_form(6));
        assert!(check_embed(&om, 1e-10).is_err());
        assert!(hat_embed(&om, 1e-10).is_ok());
    }

    #[test]
    fn ring_embed_bianchi() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let a = na::DMatrix::from_fn(6, 6, |_, _| rng.gen_range(-1.0..1.0));
        let j = crate::forms::standard_j_matrix(6);
        let sym = &a + a.transpose();
        // S + JSJ anticommutes with J
        let s = (&sym + &j * &sym * &j) * 0.5;
        assert!((&s * &j + &j * &s).amax() < 1e-13);
        let r = ring_embed(&s, 1e-10).unwrap();
        let w = kahler_form(6);
        let want = FormMap::from_fn(6, 3, |i| {
            Form::covector(&tensor::mat_vec(&s, &unit(6, i))).wedge(&w)
        });
        assert!(bianchi_b1(&r).dist(&want) < 1e-12);
    }

    #[test]
    fn tilde_embed_bianchi() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let om = proj(&Form::random(&mut rng, 6, 4), 1, 3);
        let r = tilde_embed(&om, 1e-10).unwrap();
        let want = FormMap::from_fn(6, 3, |i| proj(&om.contract(&unit(6, i)), 1, 2));
        assert!(bianchi_b1(&r).dist(&want) < 1e-12);
    }

    #[test]
    fn r_omega_is_algebraic_curvature() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let om = proj(&Form::random(&mut rng, 6, 4), 2, 2);
        let r = r_omega(&om);
        assert!(kso_defect(&r) < 1e-12);
    }

    #[test]
    fn kahler_part_has_no_bianchi_defect() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let rk = random_kahler_curvature(&mut rng, 6);
        assert!(kso_defect(&rk) < 1e-12);
        assert!(rk.value_slot_11_defect() < 1e-12);
        assert!(rk.pair_symmetry_defect() < 1e-12);
    }
}
