//! The alternating-projection iteration `(P₁P₂)^m`.
//!
//! In finite dimension the iterates converge in operator norm to the
//! projection onto `ran P₁ ∩ ran P₂`, which is the unitary part of the
//! canonical decomposition of `P₁P₂`; the block on the complement is a C₀₀
//! contraction, so its forward and adjoint powers decay to zero. The trace
//! records the residual path and the power norms of that block.
//!
//! Measuring convergence in operator norm instead of strong-operator
//! sampling is a strengthening that is valid only in finite dimension,
//! where the two notions coincide.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::matrix::{identity, operator_distance, operator_norm, ComplexMatrix};
use crate::products::{canonical_decomposition, unitary_part, ProductError, ProjectionPair};
use crate::subspace::Tolerances;

pub const DEFAULT_TOL_CONV: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 10_000;

#[derive(Debug, Error)]
pub enum AlternatingError {
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error("tol_conv must be positive, got {0}")]
    BadTolConv(f64),
    #[error("cnu block power norms did not fall below {tol:.3e} within {m_max} steps (last forward {forward:.3e}, adjoint {adjoint:.3e})")]
    DecayExhausted {
        tol: f64,
        m_max: usize,
        forward: f64,
        adjoint: f64,
    },
    #[error("csv write failed: {0}")]
    Io(#[from] std::io::Error),
}

/// One row of the iteration trace.
#[derive(Debug, Clone, Copy)]
pub struct IterationStep {
    pub m: usize,
    /// `||(P₁P₂)^m − P_limit||`.
    pub residual: f64,
    /// `||B^m||` for the cnu block B.
    pub cnu_norm: f64,
    /// `||(B*)^m||`.
    pub cnu_adjoint_norm: f64,
}

#[derive(Debug, Clone)]
pub struct IterationTrace {
    pub steps: Vec<IterationStep>,
    pub converged: bool,
    /// The identified limit projector `P_{H_u}`.
    pub limit: ComplexMatrix,
    /// Fitted geometric residual ratio (informational diagnostic; related to
    /// the Friedrichs angle between the ranges, not a convergence proof).
    pub geometric_ratio: Option<f64>,
}

impl IterationTrace {
    pub fn final_residual(&self) -> f64 {
        self.steps.last().map(|s| s.residual).unwrap_or(0.0)
    }

    /// CSV with header `m,residual,cnu_norm,cnu_adjoint_norm`, 17 significant
    /// digits per value.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,residual,cnu_norm,cnu_adjoint_norm\n");
        for s in &self.steps {
            let _ = writeln!(
                out,
                "{},{:.16e},{:.16e},{:.16e}",
                s.m, s.residual, s.cnu_norm, s.cnu_adjoint_norm
            );
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), AlternatingError> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }
}

/// `(P₁P₂)^m` by binary exponentiation; `m = 0` returns the identity.
pub fn iterate_product(pair: &ProjectionPair, m: usize) -> ComplexMatrix {
    let mut result = identity(pair.dim());
    let mut base = pair.product();
    let mut e = m;
    while e > 0 {
        if e & 1 == 1 {
            result = &result * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    result
}

/// Run the alternating iteration until `||(P₁P₂)^m − P_{H_u}|| ≤ tol_conv`
/// or `max_iter` is reached. Exhausting the budget is reported through
/// `converged = false`, not as an error.
pub fn von_neumann_limit(
    pair: &ProjectionPair,
    tol_conv: f64,
    max_iter: usize,
    tol: &Tolerances,
) -> Result<IterationTrace, AlternatingError> {
    if !(tol_conv > 0.0) {
        return Err(AlternatingError::BadTolConv(tol_conv));
    }
    let limit = unitary_part(pair, tol)?.projector();
    let decomposition = canonical_decomposition(pair, tol)?;
    let b = decomposition.cnu_block;
    let b_star = b.adjoint();

    let t = pair.product();
    let mut power = t.clone();
    let mut b_power = b.clone();
    let mut b_star_power = b_star.clone();
    let mut steps = Vec::new();
    let mut converged = false;

    for m in 1..=max_iter {
        let residual = operator_distance(&power, &limit);
        steps.push(IterationStep {
            m,
            residual,
            cnu_norm: operator_norm(&b_power),
            cnu_adjoint_norm: operator_norm(&b_star_power),
        });
        if residual <= tol_conv {
            converged = true;
            break;
        }
        if m < max_iter {
            power = &power * &t;
            b_power = &b_power * &b;
            b_star_power = &b_star_power * &b_star;
        }
    }

    let geometric_ratio = fit_ratio(&steps);
    Ok(IterationTrace {
        steps,
        converged,
        limit,
        geometric_ratio,
    })
}

/// Median of the trailing residual ratios.
fn fit_ratio(steps: &[IterationStep]) -> Option<f64> {
    let tail: Vec<f64> = steps
        .windows(2)
        .rev()
        .take(10)
        .filter(|w| w[0].residual > 0.0 && w[1].residual > 0.0)
        .map(|w| w[1].residual / w[0].residual)
        .collect();
    if tail.is_empty() {
        return None;
    }
    let mut sorted = tail;
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Some(sorted[sorted.len() / 2])
}

/// Power norms `(||B^m||)` and `(||(B*)^m||)` of the cnu block, recorded
/// until both fall below `tol_eq`. A sequence still above the threshold at
/// `m_max` contradicts C₀₀ decay in finite dimension and is an error.
pub fn c00_decay_check(
    pair: &ProjectionPair,
    m_max: usize,
    tol: &Tolerances,
) -> Result<(Vec<f64>, Vec<f64>), AlternatingError> {
    let decomposition = canonical_decomposition(pair, tol)?;
    let b = decomposition.cnu_block;
    if b.nrows() == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let b_star = b.adjoint();
    let mut forward = Vec::new();
    let mut adjoint = Vec::new();
    let mut bp = b.clone();
    let mut bsp = b_star.clone();
    for _ in 1..=m_max {
        let nf = operator_norm(&bp);
        let na = operator_norm(&bsp);
        forward.push(nf);
        adjoint.push(na);
        if nf <= tol.tol_eq && na <= tol.tol_eq {
            return Ok((forward, adjoint));
        }
        bp = &bp * &b;
        bsp = &bsp * &b_star;
    }
    Err(AlternatingError::DecayExhausted {
        tol: tol.tol_eq,
        m_max,
        forward: *forward.last().unwrap(),
        adjoint: *adjoint.last().unwrap(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::from_real_rows;
    use crate::random::{random_pair_with_gap, trial_rng};
    use crate::subspace::{intersect, orthonormal_range};

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    fn pair_45() -> ProjectionPair {
        let p1 = from_real_rows(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let p2 = from_real_rows(2, 2, &[0.5, 0.5, 0.5, 0.5]);
        ProjectionPair::new(p1, p2, &tols()).unwrap()
    }

    #[test]
    fn iterate_matches_hand_computation() {
        let pair = pair_45();
        // T² = ½T, so T³ = ¼T = ⅛[[1,1],[0,0]]
        let t3 = iterate_product(&pair, 3);
        let expect = from_real_rows(2, 2, &[0.125, 0.125, 0.0, 0.0]);
        assert!(operator_distance(&t3, &expect) < 1e-14);

        let t1 = iterate_product(&pair, 1);
        assert!(operator_distance(&t1, &pair.product()) < 1e-15);

        let t0 = iterate_product(&pair, 0);
        assert!(operator_distance(&t0, &identity(2)) < 1e-15);
    }

    #[test]
    fn iterate_of_single_projection_is_constant() {
        let p = from_real_rows(2, 2, &[0.5, 0.5, 0.5, 0.5]);
        let pair = ProjectionPair::new(p.clone(), p.clone(), &tols()).unwrap();
        for m in 1..6 {
            assert!(operator_distance(&iterate_product(&pair, m), &p) < 1e-14);
        }
    }

    #[test]
    fn von_neumann_45_degrees_closed_form() {
        let pair = pair_45();
        let trace = von_neumann_limit(&pair, 1e-10, 200, &tols()).unwrap();
        assert!(trace.converged);
        // residual at step m is (1/2)^(m-1) / sqrt(2)
        for s in trace.steps.iter().take(30) {
            let expect = 0.5f64.powi(s.m as i32 - 1) / 2f64.sqrt();
            assert!(
                (s.residual - expect).abs() < 1e-12,
                "m={} got {} want {}",
                s.m,
                s.residual,
                expect
            );
        }
        assert!(operator_norm(&trace.limit) < 1e-12);
        let ratio = trace.geometric_ratio.unwrap();
        assert!((ratio - 0.5).abs() < 1e-6);
    }

    #[test]
    fn von_neumann_identical_projections_converges_immediately() {
        let p = from_real_rows(2, 2, &[0.5, 0.5, 0.5, 0.5]);
        let pair = ProjectionPair::new(p.clone(), p, &tols()).unwrap();
        let trace = von_neumann_limit(&pair, 1e-10, 10, &tols()).unwrap();
        assert!(trace.converged);
        assert_eq!(trace.steps.len(), 1);
        assert!(trace.final_residual() < 1e-14);
    }

    #[test]
    fn von_neumann_commuting_diagonals() {
        let p1 = from_real_rows(3, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        let p2 = from_real_rows(3, 3, &[0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
        let pair = ProjectionPair::new(p1, p2, &tols()).unwrap();
        let trace = von_neumann_limit(&pair, 1e-10, 10, &tols()).unwrap();
        assert!(trace.converged);
        assert_eq!(trace.steps.len(), 1);
        let expect = from_real_rows(3, 3, &[0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(operator_distance(&trace.limit, &expect) < 1e-12);
    }

    #[test]
    fn limit_is_projector_onto_intersection() {
        let t = tols();
        for seed in 0..12 {
            let mut rng = trial_rng(seed, 0);
            let pair = random_pair_with_gap(&mut rng, 7, 0.995, &t);
            let trace = von_neumann_limit(&pair, 1e-10, DEFAULT_MAX_ITER, &t).unwrap();
            assert!(trace.converged, "seed {seed}");
            let r1 = orthonormal_range(pair.p1(), &t).unwrap();
            let r2 = orthonormal_range(pair.p2(), &t).unwrap();
            let meet = intersect(&r1, &r2, &t).unwrap();
            assert!(operator_distance(&trace.limit, &meet.projector()) < 1e-8);

            // monotone residuals
            for w in trace.steps.windows(2) {
                assert!(w[1].residual <= w[0].residual + 10.0 * t.tol_eq);
            }
        }
    }

    #[test]
    fn c00_decay_for_45_degrees() {
        let pair = pair_45();
        let (forward, adjoint) = c00_decay_check(&pair, 100, &tols()).unwrap();
        // ||B^m|| = (1/2)^(m-1)/sqrt(2): below 1e-8 at m = 29
        assert_eq!(forward.len(), 29);
        assert!((forward[0] - 1.0 / 2f64.sqrt()).abs() < 1e-12);
        for (i, (f, a)) in forward.iter().zip(adjoint.iter()).enumerate() {
            let expect = 0.5f64.powi(i as i32) / 2f64.sqrt();
            assert!((f - expect).abs() < 1e-12);
            assert!((a - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn c00_decay_trivial_for_equal_projections() {
        let p = from_real_rows(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let pair = ProjectionPair::new(p.clone(), p, &tols()).unwrap();
        let (forward, adjoint) = c00_decay_check(&pair, 10, &tols()).unwrap();
        // cnu block is zero: sequences terminate at the first step
        assert!(forward.iter().all(|&x| x == 0.0));
        assert!(adjoint.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn csv_format() {
        let pair = pair_45();
        let trace = von_neumann_limit(&pair, 1e-3, 10, &tols()).unwrap();
        let csv = trace.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "m,residual,cnu_norm,cnu_adjoint_norm");
        let first = lines.next().unwrap();
        assert!(first.starts_with("1,"));
        assert_eq!(first.split(',').count(), 4);
    }
}
