//! Seeded generation of random test objects.
//!
//! Every randomized suite derives one independent ChaCha stream per trial
//! from a root seed and the trial index, so results do not depend on
//! evaluation order or thread count.

use nalgebra::ComplexField;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::{complex, real, ComplexMatrix};
use crate::products::ProjectionPair;
use crate::subspace::{Subspace, Tolerances};

/// SplitMix64 step, used to decorrelate per-trial seeds.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent RNG for trial `index` under a root seed.
pub fn trial_rng(root_seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(root_seed ^ splitmix64(index.wrapping_add(1))))
}

/// Standard complex Gaussian entry (Box-Muller on two uniforms).
pub fn gaussian<R: Rng>(rng: &mut R) -> crate::matrix::Complex64 {
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random();
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = 2.0 * std::f64::consts::PI * u2;
    complex(r * theta.cos(), r * theta.sin())
}

pub fn gaussian_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Haar-distributed orthonormal frame: QR of a Gaussian matrix with the
/// phase of R's diagonal absorbed into Q.
pub fn random_frame<R: Rng>(rng: &mut R, n: usize, r: usize) -> ComplexMatrix {
    assert!(r <= n);
    if r == 0 {
        return ComplexMatrix::zeros(n, 0);
    }
    let g = gaussian_matrix(rng, n, r);
    let qr = g.qr();
    let mut q = qr.q();
    let rr = qr.r();
    for j in 0..r {
        let d = rr[(j, j)];
        let phase = if d.abs() > 0.0 { d / real(d.abs()) } else { real(1.0) };
        let col = q.column(j) * phase.conjugate();
        q.set_column(j, &col);
    }
    q
}

pub fn random_subspace<R: Rng>(rng: &mut R, n: usize, dim: usize) -> Subspace {
    Subspace::from_orthonormal(random_frame(rng, n, dim))
}

/// Random orthogonal projection of uniformly chosen rank `0..=n`.
pub fn random_projection<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let rank = rng.random_range(0..=n);
    let f = random_frame(rng, n, rank);
    if rank == 0 {
        ComplexMatrix::zeros(n, n)
    } else {
        &f * f.adjoint()
    }
}

pub fn random_projection_pair<R: Rng>(
    rng: &mut R,
    n: usize,
    tol: &Tolerances,
) -> ProjectionPair {
    let p1 = random_projection(rng, n);
    let p2 = random_projection(rng, n);
    ProjectionPair::new(p1, p2, tol).expect("random projections are valid")
}

/// Largest eigenvalue of P₁P₂P₁ strictly below 1. This is the geometric
/// contraction ratio of the alternating iteration, cos² of the Friedrichs
/// angle between the ranges.
pub fn contraction_ratio(pair: &ProjectionPair) -> f64 {
    let m = crate::matrix::hermitian_part(&(pair.p1() * pair.p2() * pair.p1()));
    let eig = nalgebra::linalg::SymmetricEigen::new(m);
    eig.eigenvalues
        .iter()
        .copied()
        .filter(|&l| l < 1.0 - 1e-9)
        .fold(0.0, f64::max)
}

/// Random pair whose alternating iteration contracts at ratio ≤ `max_ratio`.
///
/// Uniform subspace pairs put positive mass on arbitrarily flat Friedrichs
/// angles, for which a norm-convergence test with a fixed iteration budget
/// cannot terminate; rejection keeps the suites meaningful at every seed.
pub fn random_pair_with_gap<R: Rng>(
    rng: &mut R,
    n: usize,
    max_ratio: f64,
    tol: &Tolerances,
) -> ProjectionPair {
    loop {
        let pair = random_projection_pair(rng, n, tol);
        if contraction_ratio(&pair) <= max_ratio {
            return pair;
        }
    }
}

/// Random strict contraction: Gaussian matrix rescaled to the given norm.
pub fn random_contraction<R: Rng>(rng: &mut R, n: usize, norm: f64) -> ComplexMatrix {
    let g = gaussian_matrix(rng, n, n);
    let sigma = crate::matrix::operator_norm(&g);
    g * real(norm / sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{identity, operator_distance};

    #[test]
    fn frames_are_orthonormal() {
        let mut rng = trial_rng(42, 0);
        let f = random_frame(&mut rng, 8, 5);
        let gram = f.adjoint() * &f;
        assert!(operator_distance(&gram, &identity(5)) < 1e-12);
    }

    #[test]
    fn trial_streams_are_independent_of_order() {
        let a: Vec<u64> = (0..4).map(|i| trial_rng(9, i).random()).collect();
        let b: Vec<u64> = (0..4).rev().map(|i| trial_rng(9, i).random()).collect();
        let b_rev: Vec<u64> = b.into_iter().rev().collect();
        assert_eq!(a, b_rev);
    }

    #[test]
    fn contraction_norm_is_exact() {
        let mut rng = trial_rng(1, 1);
        let c = random_contraction(&mut rng, 6, 0.9);
        assert!((crate::matrix::operator_norm(&c) - 0.9).abs() < 1e-10);
    }

    #[test]
    fn gap_bounded_pair_respects_bound() {
        let tol = Tolerances::default();
        let mut rng = trial_rng(3, 5);
        let pair = random_pair_with_gap(&mut rng, 6, 0.99, &tol);
        assert!(contraction_ratio(&pair) <= 0.99);
    }
}
