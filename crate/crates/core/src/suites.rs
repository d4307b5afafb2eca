//! Named verification suites over seeded random or exhaustive inputs.
//!
//! Each suite pins its thresholds in code and reports, per named check, the
//! trial count, failure count, and worst residual. Trials run through
//! [`map_trials`], which fans out over rayon when the `parallel` feature is
//! enabled; per-trial RNG streams are derived from the root seed by trial
//! index, so the report is identical either way.

use serde::Serialize;

use crate::alternating::{c00_decay_check, von_neumann_limit};
use crate::blaschke::{BlaschkeProduct, DEFAULT_TOL_ZERO};
use crate::hardy::{
    backward_shift_matrix, inner_projection_matrix, inner_space, intersection_dimension,
    model_inner_intersection, model_space_frame, product_inner_check, product_model_check,
    recover_inner_functions, recover_model_product, HardyError, HardyTruncation, InnerPair,
};
use crate::matrix::{
    complex, identity, operator_distance, operator_norm, real, ComplexMatrix,
};
use crate::products::{classify, kernel_decomposition, ProjectionPair};
use crate::random::{random_contraction, random_pair_with_gap, random_projection_pair, trial_rng};
use crate::subspace::{
    intersect, join, kernel, orthonormal_range, projector_distance, Subspace, Tolerances,
};

/// Spectral-gap bound for the von Neumann suite sampler; keeps the iteration
/// budget of 10⁴ steps sufficient at every seed.
pub const VON_NEUMANN_MAX_RATIO: f64 = 0.995;

/// Run parameters shared by all suites.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub dim: usize,
    pub truncation: usize,
    pub tolerances: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 42,
            trials: 1000,
            dim: 8,
            truncation: 256,
            tolerances: Tolerances::default(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.trials < 1 {
            return Err("trials must be at least 1".into());
        }
        if self.dim < 1 {
            return Err("dim must be at least 1".into());
        }
        if self.truncation < 2 {
            return Err("truncation must be at least 2".into());
        }
        self.tolerances.validate().map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Crimmins,
    Decomposition,
    VonNeumann,
    Hardy,
    BlaschkeLemma,
}

pub const ALL_SUITES: [Suite; 5] = [
    Suite::Crimmins,
    Suite::Decomposition,
    Suite::VonNeumann,
    Suite::Hardy,
    Suite::BlaschkeLemma,
];

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Crimmins => "crimmins",
            Suite::Decomposition => "decomposition",
            Suite::VonNeumann => "vonneumann",
            Suite::Hardy => "hardy",
            Suite::BlaschkeLemma => "blaschke-lemma",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_SUITES
            .iter()
            .find(|suite| suite.name() == s)
            .copied()
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

/// One named check inside a suite.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub trials: usize,
    pub failures: usize,
    pub worst_residual: f64,
    pub bound: f64,
    pub passed: bool,
}

impl CheckResult {
    fn from_residuals(name: &str, residuals: &[f64], bound: f64) -> Self {
        let failures = residuals.iter().filter(|&&r| !(r <= bound)).count();
        let worst = residuals.iter().copied().fold(0.0, f64::max);
        CheckResult {
            name: name.to_string(),
            trials: residuals.len(),
            failures,
            worst_residual: worst,
            bound,
            passed: failures == 0,
        }
    }

    fn from_flags(name: &str, ok_flags: &[bool]) -> Self {
        let failures = ok_flags.iter().filter(|&&ok| !ok).count();
        CheckResult {
            name: name.to_string(),
            trials: ok_flags.len(),
            failures,
            worst_residual: if failures == 0 { 0.0 } else { f64::INFINITY },
            bound: 0.0,
            passed: failures == 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: RunConfig,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl SuiteReport {
    fn new(suite: Suite, config: &RunConfig, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        SuiteReport {
            suite: suite.name().to_string(),
            config: config.clone(),
            checks,
            passed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite report serializes")
    }

    /// One line per check, `PASS`/`FAIL` plus the worst residual.
    pub fn summary(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(
                out,
                "[{}] {}: {} ({} trials, {} failures, worst {:.3e}, bound {:.1e})",
                self.suite,
                c.name,
                if c.passed { "PASS" } else { "FAIL" },
                c.trials,
                c.failures,
                c.worst_residual,
                c.bound,
            );
        }
        out
    }
}

/// Map a closure over trial indices, in parallel when the `parallel` feature
/// is active. Results come back in index order.
#[cfg(feature = "parallel")]
pub fn map_trials<T: Send, F: Fn(u64) -> T + Sync + Send>(trials: usize, f: F) -> Vec<T> {
    use rayon::prelude::*;
    (0..trials as u64).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_trials<T, F: Fn(u64) -> T + Sync + Send>(trials: usize, f: F) -> Vec<T> {
    (0..trials as u64).map(f).collect()
}

/// Sequential twin of [`map_trials`], always available; the benchmark suite
/// compares the two.
pub fn map_trials_seq<T, F: Fn(u64) -> T>(trials: usize, f: F) -> Vec<T> {
    (0..trials as u64).map(f).collect()
}

pub fn run_suite(suite: Suite, config: &RunConfig) -> SuiteReport {
    match suite {
        Suite::Crimmins => run_crimmins(config),
        Suite::Decomposition => run_decomposition(config),
        Suite::VonNeumann => run_von_neumann(config),
        Suite::Hardy => run_hardy(config),
        Suite::BlaschkeLemma => run_blaschke_lemma(config),
    }
}

/// Equivalence of the three product-of-projections criteria on random pairs,
/// plus rejection of operators that are not products.
fn run_crimmins(config: &RunConfig) -> SuiteReport {
    let tol = config.tolerances;
    let results = map_trials(config.trials, |i| {
        let mut rng = trial_rng(config.seed, i);
        let pair = random_projection_pair(&mut rng, config.dim, &tol);
        let t = pair.product();
        match classify(&t, &tol) {
            Ok(r) => [
                r.crimmins_residual,
                r.factor_residual,
                r.sebestyen_residual,
                if r.is_contraction { 0.0 } else { f64::INFINITY },
            ],
            Err(_) => [f64::INFINITY; 4],
        }
    });
    let crimmins: Vec<f64> = results.iter().map(|r| r[0]).collect();
    let factor: Vec<f64> = results.iter().map(|r| r[1]).collect();
    let sebestyen: Vec<f64> = results.iter().map(|r| r[2]).collect();
    let contraction: Vec<f64> = results.iter().map(|r| r[3]).collect();

    // negative side: scaled identities and random strict contractions with a
    // clearly nonzero Crimmins residual must be rejected
    let mut negative_flags = Vec::new();
    for c in [0.3, 0.5, 0.9] {
        let t = identity(config.dim) * real(c);
        negative_flags.push(matches!(classify(&t, &tol), Ok(r) if !r.is_product));
    }
    let negatives = map_trials(100, |i| {
        let mut rng = trial_rng(config.seed ^ 0xC0FF_EE00, i);
        loop {
            let t = random_contraction(&mut rng, config.dim, 0.95);
            match classify(&t, &tol) {
                Ok(r) if r.crimmins_residual > 1e-4 => return !r.is_product,
                Ok(_) => continue,
                Err(_) => return false,
            }
        }
    });
    negative_flags.extend(negatives);

    SuiteReport::new(
        Suite::Crimmins,
        config,
        vec![
            CheckResult::from_residuals("crimmins residual ||TT*T - T^2||", &crimmins, 1e-8),
            CheckResult::from_residuals("factorization residual ||T - P_ranT P_ranT*||", &factor, 1e-8),
            CheckResult::from_residuals("sebestyen residual ||TT* - T P_ranT||", &sebestyen, 1e-8),
            CheckResult::from_residuals("contraction necessity", &contraction, 1e-8),
            CheckResult::from_flags("non-products rejected", &negative_flags),
        ],
    )
}

/// Canonical decomposition identities and the kernel decomposition.
fn run_decomposition(config: &RunConfig) -> SuiteReport {
    let tol = config.tolerances;
    let results = map_trials(config.trials, |i| {
        let mut rng = trial_rng(config.seed, i);
        let pair = random_projection_pair(&mut rng, config.dim, &tol);
        let t = pair.product();
        let t_star = t.adjoint();
        let n = config.dim;

        let run = || -> Result<[f64; 5], String> {
            let hu_kernel = kernel(&(&t - identity(n)), &tol).map_err(|e| e.to_string())?;
            let r1 = orthonormal_range(pair.p1(), &tol).map_err(|e| e.to_string())?;
            let r2 = orthonormal_range(pair.p2(), &tol).map_err(|e| e.to_string())?;
            let hu_meet = intersect(&r1, &r2, &tol).map_err(|e| e.to_string())?;
            let hu_agreement = projector_distance(&hu_kernel, &hu_meet);

            let cnu = join(
                &kernel(&t, &tol).map_err(|e| e.to_string())?,
                &kernel(&t_star, &tol).map_err(|e| e.to_string())?,
                &tol,
            )
            .map_err(|e| e.to_string())?;
            let cnu_agreement = projector_distance(&cnu, &hu_kernel.complement(&tol));

            let fu = hu_kernel.frame();
            let ublock = fu.adjoint() * &t * fu;
            let unitarity =
                operator_distance(&(ublock.adjoint() * &ublock), &identity(ublock.nrows()));

            let (a, b) = kernel_decomposition(&pair, &tol).map_err(|e| e.to_string())?;
            let orthogonality = if a.is_trivial() || b.is_trivial() {
                0.0
            } else {
                operator_norm(&(a.frame().adjoint() * b.frame()))
            };
            let joined = join(&a, &b, &tol).map_err(|e| e.to_string())?;
            let ker_t = kernel(&t, &tol).map_err(|e| e.to_string())?;
            let kernel_identity = projector_distance(&joined, &ker_t);

            Ok([
                hu_agreement,
                cnu_agreement,
                unitarity,
                orthogonality,
                kernel_identity,
            ])
        };
        run().unwrap_or([f64::INFINITY; 5])
    });

    let col = |k: usize| -> Vec<f64> { results.iter().map(|r| r[k]).collect() };
    SuiteReport::new(
        Suite::Decomposition,
        config,
        vec![
            CheckResult::from_residuals("H_u: ker(P1P2 - I) vs ranP1 ∩ ranP2", &col(0), 1e-8),
            CheckResult::from_residuals("H_cnu: ker T ∨ ker T* vs complement of H_u", &col(1), 1e-8),
            CheckResult::from_residuals("unitary block ||U*U - I||", &col(2), 1e-7),
            CheckResult::from_residuals("kernel summands orthogonal", &col(3), 1e-8),
            CheckResult::from_residuals("kernel decomposition identity", &col(4), 1e-8),
        ],
    )
}

/// Alternating-projection convergence, limit identification, and C₀₀ decay.
fn run_von_neumann(config: &RunConfig) -> SuiteReport {
    let tol = config.tolerances;
    const TOL_CONV: f64 = 1e-10;
    const MAX_ITER: usize = 10_000;

    // closed-form fixture: lines at 45 degrees
    let fixture_deviation = {
        let p1 = ComplexMatrix::from_row_slice(
            2,
            2,
            &[real(1.0), real(0.0), real(0.0), real(0.0)],
        );
        let p2 = ComplexMatrix::from_row_slice(
            2,
            2,
            &[real(0.5), real(0.5), real(0.5), real(0.5)],
        );
        let pair = ProjectionPair::new(p1, p2, &tol).expect("fixture projections");
        match von_neumann_limit(&pair, TOL_CONV, MAX_ITER, &tol) {
            Ok(trace) => trace
                .steps
                .iter()
                .take(30)
                .map(|s| {
                    let expect = 0.5f64.powi(s.m as i32 - 1) / 2f64.sqrt();
                    (s.residual - expect).abs()
                })
                .fold(0.0, f64::max),
            Err(_) => f64::INFINITY,
        }
    };

    let results = map_trials(config.trials, |i| {
        let mut rng = trial_rng(config.seed, i);
        let pair = random_pair_with_gap(&mut rng, config.dim, VON_NEUMANN_MAX_RATIO, &tol);
        let run = || -> Result<[f64; 3], String> {
            let trace =
                von_neumann_limit(&pair, TOL_CONV, MAX_ITER, &tol).map_err(|e| e.to_string())?;
            if !trace.converged {
                return Err("not converged".into());
            }
            let r1 = orthonormal_range(pair.p1(), &tol).map_err(|e| e.to_string())?;
            let r2 = orthonormal_range(pair.p2(), &tol).map_err(|e| e.to_string())?;
            let meet = intersect(&r1, &r2, &tol).map_err(|e| e.to_string())?;
            let limit_residual = operator_distance(&trace.limit, &meet.projector());

            let (forward, adjoint) = c00_decay_check(&pair, MAX_ITER, &tol).map_err(|e| e.to_string())?;
            let decay = match (forward.last(), adjoint.last()) {
                (Some(&f), Some(&a)) => f.max(a),
                _ => 0.0, // trivial cnu block
            };
            Ok([trace.final_residual(), limit_residual, decay])
        };
        run().unwrap_or([f64::INFINITY; 3])
    });

    let col = |k: usize| -> Vec<f64> { results.iter().map(|r| r[k]).collect() };
    SuiteReport::new(
        Suite::VonNeumann,
        config,
        vec![
            CheckResult::from_residuals(
                "45-degree fixture matches (1/2)^(m-1)/sqrt(2)",
                &[fixture_deviation],
                1e-12,
            ),
            CheckResult::from_residuals("iteration residual at convergence", &col(0), 1e-10),
            CheckResult::from_residuals("limit equals projector onto intersection", &col(1), 1e-8),
            CheckResult::from_residuals("C00 decay of cnu block within budget", &col(2), 1e-8),
        ],
    )
}

/// The six-product pool for the recovery checks: at most 3 zeros each, all
/// moduli at most 0.8.
pub fn recovery_pool() -> Vec<BlaschkeProduct> {
    let b = |zeros: Vec<crate::matrix::Complex64>| {
        BlaschkeProduct::from_zeros(zeros).expect("pool zeros are inside the disc")
    };
    vec![
        b(vec![complex(0.0, 0.0)]),
        b(vec![complex(0.5, 0.0)]),
        b(vec![complex(0.0, 0.0), complex(0.0, 0.0)]),
        b(vec![complex(0.0, 0.0), complex(0.5, 0.0)]),
        b(vec![complex(0.3, 0.4), complex(-0.8, 0.0)]),
        b(vec![complex(0.0, 0.0), complex(0.5, 0.0), complex(0.0, -0.3)]),
    ]
}

/// The four-product exactness pool `{z, z², b_½, z·b_½}`.
pub fn exactness_pool() -> Vec<BlaschkeProduct> {
    let b = |zeros: Vec<crate::matrix::Complex64>| {
        BlaschkeProduct::from_zeros(zeros).expect("pool zeros are inside the disc")
    };
    vec![
        b(vec![complex(0.0, 0.0)]),
        b(vec![complex(0.0, 0.0), complex(0.0, 0.0)]),
        b(vec![complex(0.5, 0.0)]),
        b(vec![complex(0.0, 0.0), complex(0.5, 0.0)]),
    ]
}

/// Match recovered zero multisets within `tol`; returns the worst pairing
/// distance (infinite when the counts differ).
pub fn zero_multiset_distance(a: &[crate::matrix::Complex64], b: &[crate::matrix::Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    if a.is_empty() {
        return 0.0;
    }
    // greedy minimal matching; adequate for well-separated recovered zeros
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for &za in a {
        let mut best = f64::INFINITY;
        let mut best_j = usize::MAX;
        for (j, &zb) in b.iter().enumerate() {
            if !used[j] {
                let d = (za - zb).norm();
                if d < best {
                    best = d;
                    best_j = j;
                }
            }
        }
        used[best_j] = true;
        worst = worst.max(best);
    }
    worst
}

/// Hardy-layer exactness and the §5/§6 recovery checks.
fn run_hardy(config: &RunConfig) -> SuiteReport {
    let tol = config.tolerances;
    let trunc = match HardyTruncation::new(config.truncation) {
        Ok(t) => t,
        Err(e) => {
            return SuiteReport::new(
                Suite::Hardy,
                config,
                vec![CheckResult::from_flags(&format!("truncation: {e}"), &[false])],
            )
        }
    };
    let n = trunc.order();

    // exactness of inner projections over the fixed pool
    let pool = exactness_pool();
    let exact = map_trials(pool.len(), |i| {
        let b = &pool[i as usize];
        let run = || -> Result<[f64; 3], HardyError> {
            let p = inner_projection_matrix(b, trunc, &tol)?;
            let herm = operator_distance(&p, &p.adjoint());
            let idem = operator_distance(&(&p * &p), &p);
            let frame = model_space_frame(b, trunc, &tol)?;
            let dim_ok = if frame.space.dim() == b.degree() { 0.0 } else { f64::INFINITY };
            Ok([herm, idem, dim_ok])
        };
        run().unwrap_or([f64::INFINITY; 3])
    });

    // intersections of Beurling spaces vs the lcm over all ordered pairs
    let pairs: Vec<(usize, usize)> = (0..pool.len())
        .flat_map(|i| (0..pool.len()).map(move |j| (i, j)))
        .collect();
    let meet_residuals = map_trials(pairs.len(), |k| {
        let (i, j) = pairs[k as usize];
        let run = || -> Result<f64, HardyError> {
            let s1 = inner_space(&pool[i], trunc, &tol)?;
            let s2 = inner_space(&pool[j], trunc, &tol)?;
            let meet = intersect(&s1, &s2, &tol)?;
            let lcm = pool[i].lcm(&pool[j], DEFAULT_TOL_ZERO);
            let lcm_space = inner_space(&lcm, trunc, &tol)?;
            Ok(projector_distance(&meet, &lcm_space))
        };
        run().unwrap_or(f64::INFINITY)
    });

    // §5 recovery over the six-product pool, zeros checked against the
    // double-resolution reference
    let rec_pool = recovery_pool();
    let rec_pairs: Vec<(usize, usize)> = (0..rec_pool.len())
        .flat_map(|i| (0..rec_pool.len()).map(move |j| (i, j)))
        .collect();
    let oracle_trunc = HardyTruncation::new(2 * n).expect("doubled truncation");
    let inner_results = map_trials(rec_pairs.len(), |k| {
        let (i, j) = rec_pairs[k as usize];
        let run = || -> Result<[f64; 2], HardyError> {
            let pair = InnerPair::new(rec_pool[i].clone(), rec_pool[j].clone(), trunc)?;
            let report = product_inner_check(&pair, &tol)?;
            let (ref_t, ref_t_star) =
                recover_inner_functions(&rec_pool[i], &rec_pool[j], oracle_trunc, &tol)?;
            let zero_dev = zero_multiset_distance(
                &report.phi_t_product().zeros().to_vec(),
                &ref_t.zeros().to_vec(),
            )
            .max(zero_multiset_distance(
                &report.phi_t_star_product().zeros().to_vec(),
                &ref_t_star.zeros().to_vec(),
            ));
            Ok([report.max_residual(), zero_dev])
        };
        run().unwrap_or([f64::INFINITY; 2])
    });

    // §6 recovery over the same pool
    let model_results = map_trials(rec_pairs.len(), |k| {
        let (i, j) = rec_pairs[k as usize];
        let run = || -> Result<f64, HardyError> {
            let pair = InnerPair::new(rec_pool[i].clone(), rec_pool[j].clone(), trunc)?;
            let report = product_model_check(&pair, &tol)?;
            Ok(report.max_residual())
        };
        run().unwrap_or(f64::INFINITY)
    });

    // a co-isometry has empty J_T and must be classified, not recovered
    let coisometry_classified = matches!(
        recover_model_product(&backward_shift_matrix(n), trunc, &tol),
        Err(HardyError::JtEmpty { .. })
    );

    let col2 = |k: usize| -> Vec<f64> { inner_results.iter().map(|r| r[k]).collect() };
    SuiteReport::new(
        Suite::Hardy,
        config,
        vec![
            CheckResult::from_residuals(
                "inner projections Hermitian",
                &exact.iter().map(|r| r[0]).collect::<Vec<_>>(),
                1e-10,
            ),
            CheckResult::from_residuals(
                "inner projections idempotent",
                &exact.iter().map(|r| r[1]).collect::<Vec<_>>(),
                1e-10,
            ),
            CheckResult::from_residuals(
                "dim Q_b equals |Z(b)|",
                &exact.iter().map(|r| r[2]).collect::<Vec<_>>(),
                0.0,
            ),
            CheckResult::from_residuals("b1H² ∩ b2H² = lcm(b1,b2)H²", &meet_residuals, 1e-8),
            CheckResult::from_residuals("inner-product recovery residuals", &col2(0), 1e-6),
            CheckResult::from_residuals(
                "recovered zeros match double-resolution reference",
                &col2(1),
                1e-4,
            ),
            CheckResult::from_residuals("model-product recovery residuals", &model_results, 1e-6),
            CheckResult::from_flags("co-isometry classified as J_T empty", &[coisometry_classified]),
        ],
    )
}

/// Exhaustive zero-count sweep of the model/Beurling intersection lemma.
fn run_blaschke_lemma(config: &RunConfig) -> SuiteReport {
    let tol = config.tolerances;
    let trunc = match HardyTruncation::new(config.truncation) {
        Ok(t) => t,
        Err(e) => {
            return SuiteReport::new(
                Suite::BlaschkeLemma,
                config,
                vec![CheckResult::from_flags(&format!("truncation: {e}"), &[false])],
            )
        }
    };

    // nested pool with zero counts 1..=4
    let base = [
        complex(0.4, 0.0),
        complex(-0.3, 0.0),
        complex(0.0, 0.2),
        complex(0.0, -0.5),
    ];
    let pool: Vec<BlaschkeProduct> = (1..=4)
        .map(|m| BlaschkeProduct::from_zeros(base[..m].to_vec()).expect("pool zeros"))
        .collect();

    let pairs: Vec<(usize, usize)> = (0..pool.len())
        .flat_map(|i| (0..pool.len()).map(move |j| (i, j)))
        .collect();
    let sweep = map_trials(pairs.len(), |k| {
        let (i, j) = pairs[k as usize];
        let m1 = pool[i].degree();
        let m2 = pool[j].degree();
        match intersection_dimension(&pool[i], &pool[j], trunc, &tol) {
            Ok(dim) => (dim == 0) == (m1 <= m2),
            Err(_) => false,
        }
    });

    // witness for (m1, m2) = (2, 1): Q_{z²} ∩ b_½H² = span{z - 1/2}
    let witness = (|| -> Result<f64, HardyError> {
        let b1 = BlaschkeProduct::from_zeros(vec![complex(0.0, 0.0); 2])?;
        let b2 = BlaschkeProduct::from_zeros(vec![complex(0.5, 0.0)])?;
        let meet = model_inner_intersection(&b1, &b2, trunc, &tol)?;
        if meet.dim() != 1 {
            return Ok(f64::INFINITY);
        }
        let n = trunc.order();
        let mut v = vec![complex(0.0, 0.0); n];
        v[0] = complex(-0.5, 0.0);
        v[1] = complex(1.0, 0.0);
        let expect = Subspace::line(&v);
        Ok(projector_distance(&meet, &expect))
    })()
    .unwrap_or(f64::INFINITY);

    SuiteReport::new(
        Suite::BlaschkeLemma,
        config,
        vec![
            CheckResult::from_flags("dim = 0 iff m1 <= m2, all m1, m2 <= 4", &sweep),
            CheckResult::from_residuals("witness for (2,1) is span{z - 1/2}", &[witness], 1e-8),
        ],
    )
}
