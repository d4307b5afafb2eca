//! Finite Blaschke products.
//!
//! A product is a unimodular constant together with a finite multiset of
//! zeros in the open disc, `φ(z) = c · ∏ (z − αⱼ)/(1 − ᾱⱼz)`. Zeros are kept
//! with repetition; divisibility, lcm, and gcd act on the zero multisets,
//! with zeros closer than `tol_zero` identified.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{complex, real, Complex64};

/// Zeros are kept strictly inside this radius; it bounds the geometric tail
/// `ρ^N` of every truncated series.
pub const DEFAULT_MAX_ZERO_MODULUS: f64 = 0.95;

/// Zeros closer than this are treated as one zero with multiplicity.
pub const DEFAULT_TOL_ZERO: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum BlaschkeError {
    #[error("constant must be unimodular, |c| = {modulus}")]
    NotUnimodular { modulus: f64 },
    #[error("zero {index} has modulus {modulus} > {max}")]
    ZeroTooLarge {
        index: usize,
        modulus: f64,
        max: f64,
    },
    #[error("zero {index} is not finite")]
    NonFinite { index: usize },
    #[error("evaluation point has modulus {modulus} > 1")]
    OutsideDisc { modulus: f64 },
    #[error("evaluation point hits the pole of the factor at zero {zero}")]
    PoleHit { zero: Complex64 },
}

/// A finite Blaschke product. Serialized through [`BlaschkeJson`].
#[derive(Debug, Clone)]
pub struct BlaschkeProduct {
    constant: Complex64,
    zeros: Vec<Complex64>,
}

impl BlaschkeProduct {
    /// Validate moduli against `max_modulus` and renormalize the constant
    /// exactly to the unit circle.
    pub fn with_limit(
        constant: Complex64,
        zeros: Vec<Complex64>,
        max_modulus: f64,
    ) -> Result<Self, BlaschkeError> {
        let modulus = constant.norm();
        if !modulus.is_finite() || (modulus - 1.0).abs() > 1e-8 {
            return Err(BlaschkeError::NotUnimodular { modulus });
        }
        for (index, z) in zeros.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(BlaschkeError::NonFinite { index });
            }
            let m = z.norm();
            if m > max_modulus {
                return Err(BlaschkeError::ZeroTooLarge {
                    index,
                    modulus: m,
                    max: max_modulus,
                });
            }
        }
        Ok(BlaschkeProduct {
            constant: constant / real(modulus),
            zeros,
        })
    }

    pub fn new(constant: Complex64, zeros: Vec<Complex64>) -> Result<Self, BlaschkeError> {
        Self::with_limit(constant, zeros, DEFAULT_MAX_ZERO_MODULUS)
    }

    /// The monic product with the given zeros.
    pub fn from_zeros(zeros: Vec<Complex64>) -> Result<Self, BlaschkeError> {
        Self::new(real(1.0), zeros)
    }

    /// The constant function 1 (empty product).
    pub fn one() -> Self {
        BlaschkeProduct {
            constant: real(1.0),
            zeros: Vec::new(),
        }
    }

    /// The coordinate function z.
    pub fn shift() -> Self {
        BlaschkeProduct {
            constant: real(1.0),
            zeros: vec![complex(0.0, 0.0)],
        }
    }

    /// Single factor `b_α`.
    pub fn factor(alpha: Complex64) -> Result<Self, BlaschkeError> {
        Self::from_zeros(vec![alpha])
    }

    pub fn constant(&self) -> Complex64 {
        self.constant
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    /// Number of zeros counted with multiplicity.
    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_constant(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn max_zero_modulus(&self) -> f64 {
        self.zeros.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &BlaschkeProduct) -> BlaschkeProduct {
        let mut zeros = self.zeros.clone();
        zeros.extend_from_slice(&other.zeros);
        BlaschkeProduct {
            constant: self.constant * other.constant,
            zeros,
        }
    }

    /// Evaluate at `|z| ≤ 1`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, BlaschkeError> {
        let m = z.norm();
        if m > 1.0 + 1e-12 {
            return Err(BlaschkeError::OutsideDisc { modulus: m });
        }
        let mut value = self.constant;
        for &alpha in &self.zeros {
            let denom = real(1.0) - alpha.conj() * z;
            if denom.norm() < 1e-14 {
                return Err(BlaschkeError::PoleHit { zero: alpha });
            }
            value *= (z - alpha) / denom;
        }
        Ok(value)
    }

    /// First `n` Taylor coefficients at the origin.
    ///
    /// Each factor `b_α` has the closed-form series with coefficients
    /// `−α` and then `(1 − |α|²) ᾱ^(k−1)` for `k ≥ 1`; the product is the
    /// truncated convolution of the factor series.
    pub fn taylor_coeffs(&self, n: usize) -> Vec<Complex64> {
        let mut series = vec![complex(0.0, 0.0); n];
        if n == 0 {
            return series;
        }
        series[0] = self.constant;
        for &alpha in &self.zeros {
            let factor = factor_series(alpha, n);
            series = convolve_truncated(&series, &factor, n);
        }
        series
    }

    /// Multiset containment of zeros within `tol_zero`.
    pub fn divides(&self, other: &BlaschkeProduct, tol_zero: f64) -> bool {
        multiset_contains(&other.zeros, &self.zeros, tol_zero)
    }

    /// Least common multiple: per zero cluster, the larger multiplicity.
    /// The constant is normalized to 1.
    pub fn lcm(&self, other: &BlaschkeProduct, tol_zero: f64) -> BlaschkeProduct {
        let clusters = cluster_zeros(&self.zeros, &other.zeros, tol_zero);
        let mut zeros = Vec::new();
        for c in &clusters {
            for _ in 0..c.mult_left.max(c.mult_right) {
                zeros.push(c.representative);
            }
        }
        BlaschkeProduct {
            constant: real(1.0),
            zeros,
        }
    }

    /// Greatest common divisor: per zero cluster, the smaller multiplicity.
    pub fn gcd(&self, other: &BlaschkeProduct, tol_zero: f64) -> BlaschkeProduct {
        let clusters = cluster_zeros(&self.zeros, &other.zeros, tol_zero);
        let mut zeros = Vec::new();
        for c in &clusters {
            for _ in 0..c.mult_left.min(c.mult_right) {
                zeros.push(c.representative);
            }
        }
        BlaschkeProduct {
            constant: real(1.0),
            zeros,
        }
    }

    /// Zero multisets agree within `tol_zero` (constants ignored).
    pub fn same_zeros(&self, other: &BlaschkeProduct, tol_zero: f64) -> bool {
        self.degree() == other.degree() && self.divides(other, tol_zero)
    }
}

fn factor_series(alpha: Complex64, n: usize) -> Vec<Complex64> {
    let mut coeffs = vec![complex(0.0, 0.0); n];
    coeffs[0] = -alpha;
    if n > 1 {
        let head = 1.0 - alpha.norm_sqr();
        let mut power = real(1.0);
        for c in coeffs.iter_mut().skip(1) {
            *c = real(head) * power;
            power *= alpha.conj();
        }
    }
    coeffs
}

fn convolve_truncated(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![complex(0.0, 0.0); n];
    for (i, &ai) in a.iter().enumerate() {
        if ai.norm_sqr() == 0.0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(n - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Maximum bipartite matching between `needles` and `haystack` under the
/// distance-`tol` relation; containment holds when the matching is perfect.
fn multiset_contains(haystack: &[Complex64], needles: &[Complex64], tol: f64) -> bool {
    if needles.len() > haystack.len() {
        return false;
    }
    let mut matched: Vec<Option<usize>> = vec![None; haystack.len()];
    fn augment(
        i: usize,
        needles: &[Complex64],
        haystack: &[Complex64],
        tol: f64,
        matched: &mut Vec<Option<usize>>,
        visited: &mut Vec<bool>,
    ) -> bool {
        for (j, h) in haystack.iter().enumerate() {
            if visited[j] || (needles[i] - h).norm() > tol {
                continue;
            }
            visited[j] = true;
            if matched[j].is_none()
                || augment(matched[j].unwrap(), needles, haystack, tol, matched, visited)
            {
                matched[j] = Some(i);
                return true;
            }
        }
        false
    }
    for i in 0..needles.len() {
        let mut visited = vec![false; haystack.len()];
        if !augment(i, needles, haystack, tol, &mut matched, &mut visited) {
            return false;
        }
    }
    true
}

struct ZeroCluster {
    representative: Complex64,
    mult_left: usize,
    mult_right: usize,
}

/// Greedy chaining of the combined zero list into clusters of diameter
/// ~`tol`, tracking how many members came from each side.
fn cluster_zeros(left: &[Complex64], right: &[Complex64], tol: f64) -> Vec<ZeroCluster> {
    let mut points: Vec<(Complex64, bool)> = left
        .iter()
        .map(|&z| (z, true))
        .chain(right.iter().map(|&z| (z, false)))
        .collect();
    // deterministic processing order
    points.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut clusters: Vec<(Vec<Complex64>, usize, usize)> = Vec::new();
    for (z, is_left) in points {
        let mut target = None;
        for (i, (members, _, _)) in clusters.iter().enumerate() {
            if members.iter().any(|m| (m - z).norm() <= tol) {
                target = Some(i);
                break;
            }
        }
        match target {
            Some(i) => {
                clusters[i].0.push(z);
                if is_left {
                    clusters[i].1 += 1;
                } else {
                    clusters[i].2 += 1;
                }
            }
            None => clusters.push((vec![z], usize::from(is_left), usize::from(!is_left))),
        }
    }
    clusters
        .into_iter()
        .map(|(members, mult_left, mult_right)| {
            let sum = members
                .iter()
                .fold(complex(0.0, 0.0), |acc, &z| acc + z);
            ZeroCluster {
                representative: sum / real(members.len() as f64),
                mult_left,
                mult_right,
            }
        })
        .collect()
}

/// Wire format: `{"constant": [re, im], "zeros": [[re, im], ...]}` with
/// multiplicity by repetition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlaschkeJson {
    pub constant: [f64; 2],
    pub zeros: Vec<[f64; 2]>,
}

impl BlaschkeJson {
    pub fn from_product(b: &BlaschkeProduct) -> Self {
        BlaschkeJson {
            constant: [b.constant.re, b.constant.im],
            zeros: b.zeros.iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_product(&self) -> Result<BlaschkeProduct, BlaschkeError> {
        BlaschkeProduct::new(
            complex(self.constant[0], self.constant[1]),
            self.zeros.iter().map(|&[re, im]| complex(re, im)).collect(),
        )
    }
}
