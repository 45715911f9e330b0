//! Seeded, counter-based random generation.
//!
//! Every stochastic routine takes a 64-bit seed and derives one independent
//! stream per sample index, so results are identical regardless of execution
//! order or thread count. Streams come from ChaCha8 with the sample index as
//! the stream id.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::exterior::{basis_masks, pullback, AltForm, LinearMap, MultiIndex, Vector};
use crate::grass::Subspace;
use crate::linalg::Mat;
use crate::scalar::{rat, Rat};
use crate::tol;

/// Independent generator for sample `index` under `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Stable 64-bit hash for deriving per-suite seeds from names.
pub fn mix_name(seed: u64, name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed.rotate_left(17);
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x1000_0000_01b3);
    }
    h
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn gaussian_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| gaussian(rng)).collect()
}

/// Dense Gaussian `k`-form on `R^n`, coefficients scaled by `scale`.
pub fn random_form(rng: &mut ChaCha8Rng, n: usize, k: usize, scale: f64) -> AltForm<f64> {
    let mut out = AltForm::zero(n, k);
    for mask in basis_masks(n, k) {
        out.add_term(MultiIndex::from_mask(mask), gaussian(rng) * scale);
    }
    out
}

/// Small random rational with numerator in `-9..=9` and denominator in `1..=9`.
pub fn random_rational(rng: &mut ChaCha8Rng) -> Rat {
    let p = rng.gen_range(-9_i64..=9);
    let q = rng.gen_range(1_i64..=9);
    rat(p, q)
}

pub fn random_rational_form(rng: &mut ChaCha8Rng, n: usize, k: usize) -> AltForm<Rat> {
    let mut out = AltForm::zero(n, k);
    for mask in basis_masks(n, k) {
        out.add_term(MultiIndex::from_mask(mask), random_rational(rng));
    }
    out
}

/// Well-conditioned random element of `GL+(6)`: identity plus a Frobenius-
/// normalised Gaussian perturbation of size `spread` (< 1 keeps the
/// determinant positive and the condition number bounded).
pub fn conditioned_gl6(rng: &mut ChaCha8Rng, spread: f64) -> Mat<f64> {
    let raw = Mat::from_fn(6, 6, |_, _| gaussian(rng));
    let mut norm = 0.0;
    for i in 0..6 {
        for j in 0..6 {
            norm += raw[(i, j)] * raw[(i, j)];
        }
    }
    let norm = norm.sqrt().max(1e-12);
    Mat::from_fn(6, 6, |i, j| {
        let base = if i == j { 1.0 } else { 0.0 };
        base + raw[(i, j)] * spread / norm
    })
}

/// Random stable form as a pullback of the reference form under a
/// conditioned change of basis.
pub fn random_stable_form(rng: &mut ChaCha8Rng, spread: f64) -> AltForm<f64> {
    let reference = crate::verify::fixtures::rho_plus().to_f64();
    let g = LinearMap::new(conditioned_gl6(rng, spread));
    pullback(&g, &reference).expect("pullback on R^6")
}

pub fn random_subspace(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Subspace<f64> {
    loop {
        let vecs: Vec<Vector<f64>> = (0..k)
            .map(|_| Vector::new(gaussian_vec(rng, n)))
            .collect();
        let s = Subspace::span(n, &vecs, tol::RANK_REL);
        if s.dim() == k {
            return s;
        }
    }
}

pub fn random_hyperplane(rng: &mut ChaCha8Rng, n: usize) -> Subspace<f64> {
    loop {
        let theta = Vector::new(gaussian_vec(rng, n));
        if let Ok(h) = Subspace::hyperplane(&theta, tol::RANK_REL) {
            if h.dim() == n - 1 {
                return h;
            }
        }
    }
}

/// Random element of the block-diagonal special linear pair over the
/// rationals: a product of elementary shears in each 3x3 block, so the
/// determinant of each block is exactly one.
pub fn random_sl3_pair(rng: &mut ChaCha8Rng, shears: usize) -> Mat<Rat> {
    let mut m: Mat<Rat> = Mat::identity(6);
    for block in [0usize, 3] {
        for _ in 0..shears {
            let mut i = rng.gen_range(0..3);
            let mut j = rng.gen_range(0..3);
            while i == j {
                i = rng.gen_range(0..3);
                j = rng.gen_range(0..3);
            }
            let c = random_rational(rng);
            let mut shear: Mat<Rat> = Mat::identity(6);
            shear[(block + i, block + j)] = c;
            m = m.mul(&shear);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rint;

    #[test]
    fn streams_are_reproducible_and_independent() {
        let a: Vec<f64> = {
            let mut r = stream(7, 3);
            (0..5).map(|_| gaussian(&mut r)).collect()
        };
        let b: Vec<f64> = {
            let mut r = stream(7, 3);
            (0..5).map(|_| gaussian(&mut r)).collect()
        };
        assert_eq!(a, b);
        let c: Vec<f64> = {
            let mut r = stream(7, 4);
            (0..5).map(|_| gaussian(&mut r)).collect()
        };
        assert_ne!(a, c);
    }

    #[test]
    fn conditioned_gl6_has_positive_determinant() {
        for idx in 0..32 {
            let mut rng = stream(11, idx);
            let g = conditioned_gl6(&mut rng, 0.3);
            assert!(g.det(1e-12) > 0.0);
        }
    }

    #[test]
    fn sl3_pair_blocks_have_unit_determinant() {
        let mut rng = stream(5, 0);
        let m = random_sl3_pair(&mut rng, 6);
        let top = Mat::from_fn(3, 3, |i, j| m[(i, j)].clone());
        let bottom = Mat::from_fn(3, 3, |i, j| m[(i + 3, j + 3)].clone());
        assert_eq!(top.det(0.0), rint(1));
        assert_eq!(bottom.det(0.0), rint(1));
        // off-diagonal blocks vanish
        for i in 0..3 {
            for j in 3..6 {
                assert!(m[(i, j)].is_zero());
                assert!(m[(j, i)].is_zero());
            }
        }
    }
}
