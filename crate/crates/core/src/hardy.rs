//! Truncated Hardy space of the disc.
//!
//! The Hardy space is identified with coefficient space: index `k`
//! corresponds to the monomial `z^k`, `0 ≤ k < N`. For a finite Blaschke
//! product `b` the model space `Q_b = (bH²)^⊥` is spanned by reproducing
//! kernels `k_λ` (coefficients `λ̄^k`) and their derivative kernels at the
//! zeros of `b`; it has dimension `|Z(b)|` and all truncation errors decay
//! like `ρ^N` with `ρ = max |zero|`.
//!
//! Inner-function recovery works through shift-invariant subspaces. The
//! smallest shift-invariant subspace containing a set `S` is a Beurling
//! space `φH²`; its inner function is read off the compression of the shift
//! to the orthocomplement, whose eigenvalues are the zeros of `φ`. Large
//! subspaces are handled through their orthocomplements: `V ↦ V ∨ ZV` on one
//! side is `K ↦ {f ∈ K : Z*f ∈ K}` on the other, so either side can be
//! iterated on whichever frame is small.

use serde::Serialize;
use thiserror::Error;

use crate::blaschke::{BlaschkeError, BlaschkeJson, BlaschkeProduct, DEFAULT_TOL_ZERO};
use crate::matrix::{
    complex, identity, operator_distance, operator_norm, real, Complex64, ComplexMatrix,
};
use crate::subspace::{
    intersect, join, kernel, orthonormal_range, projector_distance, Subspace, SubspaceError,
    Tolerances,
};

/// Truncated series tails must be below this mass.
pub const DEFAULT_TOL_TRUNC: f64 = 1e-12;

/// Zeros recovered from compressed-shift spectra may exceed the input
/// modulus limit slightly; reject only when they leave the disc.
const RECOVERED_ZERO_LIMIT: f64 = 0.999;

#[derive(Debug, Error)]
pub enum HardyError {
    #[error(transparent)]
    Blaschke(#[from] BlaschkeError),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
    #[error("truncation order {order} too small: need at least {required} (tail {tail:.3e} vs {tol:.3e})")]
    TruncationTooSmall {
        order: usize,
        required: usize,
        tail: f64,
        tol: f64,
    },
    #[error("kernel vectors nearly dependent (condition {condition:.3e}); zeros closer than the merge tolerance")]
    DegenerateKernels { condition: f64 },
    #[error("inner projection disagrees with the Toeplitz product on the leading block (residual {residual:.3e})")]
    ToeplitzMismatch { residual: f64 },
    #[error("eigensolver failed on the compressed shift")]
    EigensolverFailed,
    #[error("{0}")]
    EmptyInput(&'static str),
    #[error("recovered zero count changed under refinement: {at_order} at N, {refined} at N+m")]
    TruncationUnstable { at_order: usize, refined: usize },
    #[error("no inner function fits: {reason}")]
    JtEmpty { reason: String },
    #[error("internal consistency failure in {context}: residual {residual:.3e}")]
    Inconsistent { context: &'static str, residual: f64 },
}

/// Identification of H² with `span{z⁰, …, z^(N−1)}`.
#[derive(Debug, Clone, Copy)]
pub struct HardyTruncation {
    order: usize,
}

impl HardyTruncation {
    pub fn new(order: usize) -> Result<Self, HardyError> {
        if order < 2 {
            return Err(HardyError::TruncationTooSmall {
                order,
                required: 2,
                tail: 1.0,
                tol: DEFAULT_TOL_TRUNC,
            });
        }
        Ok(HardyTruncation { order })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Enforce `N ≥ 2·deg(b)` and `ρ^N < tol_trunc`.
    pub fn validate_for(&self, b: &BlaschkeProduct) -> Result<(), HardyError> {
        let n = self.order;
        let deg = b.degree();
        let rho = b.max_zero_modulus();
        let tail = if deg == 0 { 0.0 } else { rho.powi(n as i32) };
        if n < 2 * deg || tail >= DEFAULT_TOL_TRUNC {
            return Err(HardyError::TruncationTooSmall {
                order: n,
                required: required_order(deg, rho),
                tail,
                tol: DEFAULT_TOL_TRUNC,
            });
        }
        Ok(())
    }
}

/// Smallest order satisfying both truncation constraints.
pub fn required_order(degree: usize, rho: f64) -> usize {
    let by_degree = 2 * degree.max(1);
    if rho <= 0.0 {
        return by_degree;
    }
    let by_tail = (DEFAULT_TOL_TRUNC.ln() / rho.ln()).ceil() as usize + 1;
    by_degree.max(by_tail)
}

/// A pair of finite Blaschke products sharing one truncation.
#[derive(Debug, Clone)]
pub struct InnerPair {
    phi1: BlaschkeProduct,
    phi2: BlaschkeProduct,
    trunc: HardyTruncation,
}

impl InnerPair {
    pub fn new(
        phi1: BlaschkeProduct,
        phi2: BlaschkeProduct,
        trunc: HardyTruncation,
    ) -> Result<Self, HardyError> {
        trunc.validate_for(&phi1)?;
        trunc.validate_for(&phi2)?;
        Ok(InnerPair { phi1, phi2, trunc })
    }

    pub fn phi1(&self) -> &BlaschkeProduct {
        &self.phi1
    }

    pub fn phi2(&self) -> &BlaschkeProduct {
        &self.phi2
    }

    pub fn trunc(&self) -> HardyTruncation {
        self.trunc
    }
}

/// First `N` Taylor coefficients of `b`.
pub fn blaschke_taylor(
    b: &BlaschkeProduct,
    trunc: HardyTruncation,
) -> Result<Vec<Complex64>, HardyError> {
    trunc.validate_for(b)?;
    Ok(b.taylor_coeffs(trunc.order()))
}

/// Multiplication by z, truncated: rows move down one step.
fn shift_frame(f: &ComplexMatrix) -> ComplexMatrix {
    let (n, m) = f.shape();
    let mut out = ComplexMatrix::zeros(n, m);
    if n > 1 {
        out.rows_mut(1, n - 1).copy_from(&f.rows(0, n - 1));
    }
    out
}

/// The backward shift `Z*`: rows move up one step.
fn backshift_frame(f: &ComplexMatrix) -> ComplexMatrix {
    let (n, m) = f.shape();
    let mut out = ComplexMatrix::zeros(n, m);
    if n > 1 {
        out.rows_mut(0, n - 1).copy_from(&f.rows(1, n - 1));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shift {
    Forward,
    Backward,
}

fn apply_shift(f: &ComplexMatrix, dir: Shift) -> ComplexMatrix {
    match dir {
        Shift::Forward => shift_frame(f),
        Shift::Backward => backshift_frame(f),
    }
}

/// Model space frame together with conditioning diagnostics of the raw
/// kernel set it was orthonormalized from.
#[derive(Debug, Clone)]
pub struct ModelFrame {
    pub space: Subspace,
    pub kernel_condition: f64,
    pub conditioning_warning: bool,
}

/// Orthonormal frame of `Q_b = (bH²)^⊥`, built from the truncated
/// reproducing kernels at the zeros of `b` (derivative kernels for multiple
/// zeros). The dimension equals the zero count.
pub fn model_space_frame(
    b: &BlaschkeProduct,
    trunc: HardyTruncation,
    tol: &Tolerances,
) -> Result<ModelFrame, HardyError> {
    trunc.validate_for(b)?;
    let n = trunc.order();
    let m = b.degree();
    if m == 0 {
        return Ok(ModelFrame {
            space: Subspace::trivial(n),
            kernel_condition: 1.0,
            conditioning_warning: false,
        });
    }

    let clusters = cluster_with_multiplicity(b.zeros(), DEFAULT_TOL_ZERO);
    let mut raw = ComplexMatrix::zeros(n, m);
    let mut col = 0;
    for (lambda, mult) in &clusters {
        let lbar = lambda.conj();
        for j in 0..*mult {
            // (d/dλ̄)^j k_λ has k-th coefficient k(k−1)…(k−j+1) λ̄^(k−j)
            let mut v = ComplexMatrix::zeros(n, 1);
            let mut power = real(1.0);
            for k in j..n {
                let mut fall = 1.0;
                for i in 0..j {
                    fall *= (k - i) as f64;
                }
                v[(k, 0)] = real(fall) * power;
                power *= lbar;
            }
            let norm = v.norm();
            if norm > 0.0 {
                v /= real(norm);
            }
            raw.set_column(col, &v.column(0));
            col += 1;
        }
    }

    let svd = raw.clone().svd(true, false);
    let sv = svd.singular_values;
    let sigma_max = sv[0];
    let sigma_min = sv[sv.len() - 1];
    let kernel_condition = if sigma_min > 0.0 {
        sigma_max / sigma_min
    } else {
        f64::INFINITY
    };
    if !(sigma_min > 1e-13 * sigma_max) {
        return Err(HardyError::DegenerateKernels {
            condition: kernel_condition,
        });
    }
    let u = svd.u.expect("svd with u");
    let space = Subspace::from_orthonormal(u.columns(0, m).into_owned());
    let _ = tol;
    Ok(ModelFrame {
        space,
        kernel_condition,
        conditioning_warning: kernel_condition > 1e8,
    })
}

fn cluster_with_multiplicity(zeros: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let mut clusters: Vec<(Vec<Complex64>, usize)> = Vec::new();
    let mut sorted = zeros.to_vec();
    sorted.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    for z in sorted {
        match clusters
            .iter_mut()
            .find(|(members, _)| members.iter().any(|m| (m - z).norm() <= tol))
        {
            Some((members, count)) => {
                members.push(z);
                *count += 1;
            }
            None => clusters.push((vec![z], 1)),
        }
    }
    clusters
        .into_iter()
        .map(|(members, count)| {
            let sum = members.iter().fold(complex(0.0, 0.0), |acc, &z| acc + z);
            (sum / real(members.len() as f64), count)
        })
        .collect()
}

/// Projection onto the model space `Q_b`.
pub fn model_projection_matrix(
    b: &BlaschkeProduct,
    trunc: HardyTruncation,
    tol: &Tolerances,
) -> Result<ComplexMatrix, HardyError> {
    Ok(model_space_frame(b, trunc, tol)?.space.projector())
}

/// Projection onto the Beurling space `bH²`, as `I − P_{Q_b}`, cross-checked
/// against the truncated Toeplitz product `T_b T_b*` on the leading block.
pub fn inner_projection_matrix(
    b: &BlaschkeProduct,
    trunc: HardyTruncation,
    tol: &Tolerances,
) -> Result<ComplexMatrix, HardyError> {
    let n = trunc.order();
    let m = b.degree();
    let p = identity(n) - model_projection_matrix(b, trunc, tol)?;

    let toeplitz = toeplitz_inner_projection(b, trunc)?;
    let lead = n - m;
    let residual = operator_norm(
        &(p.view((0, 0), (lead, lead)) - toeplitz.view((0, 0), (lead, lead))).into_owned(),
    );
    if residual > 1e3 * DEFAULT_TOL_TRUNC {
        return Err(HardyError::ToeplitzMismatch { residual });
    }
    Ok(p)
}

/// The truncated analytic Toeplitz product `T_b T_b*`. Its entries agree with
/// the infinite-dimensional projection onto `bH²` wherever the defining sums
/// have already terminated.
pub fn toeplitz_inner_projection(
    b: &BlaschkeProduct,
    trunc: HardyTruncation,
) -> Result<ComplexMatrix, HardyError> {
    let n = trunc.order();
    let coeffs = blaschke_taylor(b, trunc)?;
    let mut t = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            t[(i, j)] = coeffs[i - j];
        }
    }
    Ok(&t * t.adjoint())
}

/// Orthonormal frame of the truncated Beurling space `bH² = (Q_b)^⊥`.
pub fn inner_space(
    b: &BlaschkeProduct,
    trunc: HardyTruncation,
    tol: &Tolerances,
) -> Result<Subspace, HardyError> {
    Ok(model_space_frame(b, trunc, tol)?.space.complement(tol))
}

/// Saturate `V ← V ∨ (shift V)` until the dimension stabilizes.
fn grow_invariant(seed: &Subspace, dir: Shift, tol: &Tolerances) -> Result<Subspace, HardyError> {
    let n = seed.ambient_dim();
    let mut current = seed.clone();
    for _ in 0..=n {
        if current.dim() == n {
            return Ok(current);
        }
        let shifted = apply_shift(current.frame(), dir);
        let mut stacked = ComplexMatrix::zeros(n, 2 * current.dim());
        stacked.columns_mut(0, current.dim()).copy_from(current.frame());
        stacked
            .columns_mut(current.dim(), current.dim())
            .copy_from(&shifted);
        let next = orthonormal_range(&stacked, tol)?;
        if next.dim() == current.dim() {
            return Ok(next);
        }
        current = next;
    }
    Err(HardyError::Inconsistent {
        context: "invariant-subspace saturation did not stabilize",
        residual: f64::NAN,
    })
}

/// Shrink `V ← {f ∈ V : shift·f ∈ V}` until the dimension stabilizes,
/// yielding the largest shift-invariant subspace inside the input.
fn shrink_invariant(space: &Subspace, dir: Shift, tol: &Tolerances) -> Result<Subspace, HardyError> {
    let mut current = space.clone();
    loop {
        if current.is_trivial() {
            return Ok(current);
        }
        let f = current.frame();
        let shifted = apply_shift(f, dir);
        // residual of shift·f against V, in frame coefficients
        let outside = &shifted - f * (f.adjoint() * &shifted);
        let coeff_null = kernel(&outside, tol)?;
        if coeff_null.dim() == current.dim() {
            return Ok(current);
        }
        let next_frame = f * coeff_null.frame();
        current = Subspace::from_orthonormal(next_frame);
    }
}

/// Zeros of the inner function of `Q^⊥` read from the compressed shift on
/// the model space `Q`: eigenvalues of `F* Z F`.
fn zeros_from_model_space(q: &Subspace) -> Result<Vec<Complex64>, HardyError> {
    let m = q.dim();
    if m == 0 {
        return Ok(Vec::new());
    }
    let f = q.frame();
    let compressed = f.adjoint() * shift_frame(f);
    if m == 1 {
        return Ok(vec![compressed[(0, 0)]]);
    }
    let schur = nalgebra::linalg::Schur::try_new(compressed, 1e-14, 100_000)
        .ok_or(HardyError::EigensolverFailed)?;
    if let Some(ev) = schur.eigenvalues() {
        return Ok(ev.iter().copied().collect());
    }
    let (_, t) = schur.unpack();
    Ok((0..m).map(|i| t[(i, i)]).collect())
}

fn blaschke_from_zeros(zeros: Vec<Complex64>) -> Result<BlaschkeProduct, HardyError> {
    Ok(BlaschkeProduct::with_limit(
        real(1.0),
        zeros,
        RECOVERED_ZERO_LIMIT,
    )?)
}

/// Model space of the smallest Beurling space containing `s`, computed on
/// whichever side of the orthocomplement duality keeps the frames small.
fn beurling_model_space(s: &Subspace, tol: &Tolerances) -> Result<Subspace, HardyError> {
    let n = s.ambient_dim();
    if 2 * s.dim() <= n {
        let v = grow_invariant(s, Shift::Forward, tol)?;
        Ok(v.complement(tol))
    } else {
        shrink_invariant(&s.complement(tol), Shift::Backward, tol)
    }
}

/// Model space dual used by [`largest_invariant_inside`]: the smallest
/// backward-shift-invariant subspace containing `k^⊥`.
fn invariant_model_space_from_complement(
    k_perp: &Subspace,
    tol: &Tolerances,
) -> Result<Subspace, HardyError> {
    let n = k_perp.ambient_dim();
    if 2 * k_perp.dim() <= n {
        grow_invariant(k_perp, Shift::Backward, tol)
    } else {
        // largest forward-invariant inside k, complemented
        let k = k_perp.complement(tol);
        Ok(shrink_invariant(&k, Shift::Forward, tol)?.complement(tol))
    }
}

/// The inner function `φ` with `φH²` the smallest shift-invariant subspace
/// containing `s` (the lcm of all inner functions whose Beurling space
/// contains `s`). Saturation reaching the full space yields the empty
/// product `φ = 1`.
pub fn smallest_beurling_containing(
    s: &Subspace,
    trunc: HardyTruncation,
    tol: &Tolerances,
) -> Result<BlaschkeProduct, HardyError> {
    if s.is_trivial() {
        return Err(HardyError::EmptyInput(
            "smallest Beurling space of the zero subspace is undefined",
        ));
    }
    let b = beurling_from_model_space_of(s, trunc, tol, true)?;
    Ok(b)
}

fn beurling_from_model_space_of(
    s: &Subspace,
    trunc: HardyTruncation,
    tol: &Tolerances,
    check_stability: bool,
) -> Result<BlaschkeProduct, HardyError> {
    let n = trunc.order();
    debug_assert_eq!(s.ambient_dim(), n);
    let q = beurling_model_space(s, tol)?;
    let m = q.dim();
    if m == 0 {
        return Ok(BlaschkeProduct::one());
    }
    if 2 * m > n {
        return Err(HardyError::TruncationTooSmall {
            order: n,
            required: 2 * m,
            tail: f64::NAN,
            tol: DEFAULT_TOL_TRUNC,
        });
    }
    let zeros = zeros_from_model_space(&q)?;
    let phi = blaschke_from_zeros(zeros)?;

    // containment: S ⊥ Q
    let containment = operator_norm(&(q.frame().adjoint() * s.frame()));
    if containment > tol.tol_eq {
        return Err(HardyError::Inconsistent {
            context: "recovered Beurling space does not contain the input",
            residual: containment,
        });
    }

    // minimality: no single-zero augmentation still contains S
    for (alpha, _) in cluster_with_multiplicity(phi.zeros(), DEFAULT_TOL_ZERO) {
        let mut zeros = phi.zeros().to_vec();
        zeros.push(alpha);
        let bigger = BlaschkeProduct::with_limit(real(1.0), zeros, RECOVERED_ZERO_LIMIT)?;
        if let Ok(frame) = raw_model_frame(&bigger, n, tol) {
            let leak = operator_norm(&(frame.space.frame().adjoint() * s.frame()));
            if leak <= tol.tol_eq {
                return Err(HardyError::Inconsistent {
                    context: "a proper super-divisor still contains the input",
                    residual: leak,
                });
            }
        }
    }

    if check_stability {
        let refined_order = n + m;
        let mut padded = ComplexMatrix::zeros(refined_order, s.dim());
        padded.rows_mut(0, n).copy_from(s.frame());
        let refined_s = Subspace::from_orthonormal(padded);
        let refined_trunc = HardyTruncation::new(refined_order)?;
        let refined = beurling_from_model_space_of(&refined_s, refined_trunc, tol, false)?;
        if refined.degree() != phi.degree() {
            return Err(HardyError::TruncationUnstable {
                at_order: phi.degree(),
                refined: refined.degree(),
            });
        }
    }
    Ok(phi)
}

/// Model frame without the truncation-order validation; recovery paths may
/// probe products right at the representable edge.
fn raw_model_frame(
    b: &BlaschkeProduct,
    order: usize,
    tol: &Tolerances,
) -> Result<ModelFrame, HardyError> {
    let permissive = HardyTruncation { order };
    if order < 2 * b.degree() {
        return Err(HardyError::TruncationTooSmall {
            order,
            required: 2 * b.degree(),
            tail: f64::NAN,
            tol: DEFAULT_TOL_TRUNC,
        });
    }
    model_space_frame_unvalidated(b, permissive, tol)
}

fn model_space_frame_unvalidated(
    b: &BlaschkeProduct,
    trunc: HardyTruncation,
    tol: &Tolerances,
) -> Result<ModelFrame, HardyError> {
    // same construction as model_space_frame, minus the tail check
    let n = trunc.order();
    let m = b.degree();
    if m == 0 {
        return Ok(ModelFrame {
            space: Subspace::trivial(n),
            kernel_condition: 1.0,
            conditioning_warning: false,
        });
    }
    let clusters = cluster_with_multiplicity(b.zeros(), DEFAULT_TOL_ZERO);
    let mut raw = ComplexMatrix::zeros(n, m);
    let mut col = 0;
    for (lambda, mult) in &clusters {
        let lbar = lambda.conj();
        for j in 0..*mult {
            let mut v = ComplexMatrix::zeros(n, 1);
            let mut power = real(1.0);
            for k in j..n {
                let mut fall = 1.0;
                for i in 0..j {
                    fall *= (k - i) as f64;
                }
                v[(k, 0)] = real(fall) * power;
                power *= lbar;
            }
            let norm = v.norm();
            if norm > 0.0 {
                v /= real(norm);
            }
            raw.set_column(col, &v.column(0));
            col += 1;
        }
    }
    let svd = raw.svd(true, false);
    let sv = &svd.singular_values;
    let condition = if sv[sv.len() - 1] > 0.0 {
        sv[0] / sv[sv.len() - 1]
    } else {
        f64::INFINITY
    };
    if !(sv[sv.len() - 1] > 1e-13 * sv[0]) {
        return Err(HardyError::DegenerateKernels { condition });
    }
    let u = svd.u.expect("svd with u");
    let _ = tol;
    Ok(ModelFrame {
        space: Subspace::from_orthonormal(u.columns(0, m).into_owned()),
        kernel_condition: condition,
        conditioning_warning: condition > 1e8,
    })
}

/// The inner function `ψ` with `ψH²` the largest shift-invariant subspace
/// inside `k` (the gcd of all inner functions whose Beurling space sits in
/// `k`). Collapse to the trivial subspace, or a recovered inner function too
/// large for the truncation, means no inner function fits.
pub fn largest_invariant_inside(
    k: &Subspace,
    trunc: HardyTruncation,
    tol: &Tolerances,
) -> Result<BlaschkeProduct, HardyError> {
    let k_perp = k.complement(tol);
    largest_invariant_from_complement(&k_perp, trunc, tol, true)
}

fn largest_invariant_from_complement(
    k_perp: &Subspace,
    trunc: HardyTruncation,
    tol: &Tolerances,
    check_stability: bool,
) -> Result<BlaschkeProduct, HardyError> {
    let n = trunc.order();
    let q = invariant_model_space_from_complement(k_perp, tol)?;
    let m = q.dim();
    if m == n {
        return Err(HardyError::JtEmpty {
            reason: "largest invariant subspace is trivial".into(),
        });
    }
    if 2 * m > n {
        return Err(HardyError::JtEmpty {
            reason: format!(
                "recovered inner function needs {m} zeros at truncation {n}; no genuine inner function fits"
            ),
        });
    }
    let psi = blaschke_from_zeros(zeros_from_model_space(&q)?)?;

    // ψH² ⊆ K is equivalent to K^⊥ ⊆ Q_ψ
    let coeff = q.frame().adjoint() * k_perp.frame();
    let leak = operator_norm(&(k_perp.frame() - q.frame() * coeff));
    if leak > tol.tol_eq {
        return Err(HardyError::Inconsistent {
            context: "recovered invariant subspace leaves the target",
            residual: leak,
        });
    }

    if check_stability {
        let refined_order = n + m.max(1);
        let mut padded = ComplexMatrix::zeros(refined_order, k_perp.dim());
        padded.rows_mut(0, n).copy_from(k_perp.frame());
        let refined = largest_invariant_from_complement(
            &Subspace::from_orthonormal(padded),
            HardyTruncation::new(refined_order)?,
            tol,
            false,
        )?;
        if refined.degree() != psi.degree() {
            return Err(HardyError::TruncationUnstable {
                at_order: psi.degree(),
                refined: refined.degree(),
            });
        }
    }
    Ok(psi)
}

/// Ranges and kernels of `T` from one SVD.
struct OperatorSpaces {
    range: Subspace,
    kernel: Subspace,
    range_adjoint: Subspace,
    kernel_adjoint: Subspace,
}

fn operator_spaces(t: &ComplexMatrix, tol: &Tolerances) -> OperatorSpaces {
    let n = t.nrows();
    let svd = t.clone().svd(true, true);
    let sv = &svd.singular_values;
    let sigma_max = sv[0];
    let rank = if sigma_max <= 0.0 {
        0
    } else {
        sv.iter().filter(|&&s| s > tol.tol_rank * sigma_max).count()
    };
    let u = svd.u.expect("svd with u");
    let v = svd.v_t.expect("svd with v_t").adjoint();
    OperatorSpaces {
        range: Subspace::from_orthonormal(u.columns(0, rank).into_owned()),
        kernel: Subspace::from_orthonormal(v.columns(rank, n - rank).into_owned()),
        range_adjoint: Subspace::from_orthonormal(v.columns(0, rank).into_owned()),
        kernel_adjoint: Subspace::from_orthonormal(u.columns(rank, n - rank).into_owned()),
    }
}

/// Verification report for `T = P_{φ₁H²} P_{φ₂H²}`.
///
/// `T` must equal `P_{φ_T H²} P_{φ_T* H²}` for the recovered inner hull
/// functions, satisfy the Sebestyén identity `TT* = P_{φ_T H²} T*`, split its
/// kernel as `[φ_T*H² ∩ Q_{φ_T}] ⊕ Q_{φ_T*}`, and have unitary part
/// `φ₁H² ∩ φ₂H² = lcm(φ₁,φ₂)H²`.
#[derive(Debug, Clone, Serialize)]
pub struct InnerProductReport {
    pub truncation: usize,
    pub phi_t: BlaschkeJson,
    pub phi_t_star: BlaschkeJson,
    pub factorization_residual: f64,
    pub sebestyen_residual: f64,
    pub kernel_identity_residual: f64,
    pub kernel_orthogonality: f64,
    pub unitary_part_residual: f64,
    pub unitary_part_dim: usize,
    pub conditioning_warning: bool,
}

impl InnerProductReport {
    pub fn max_residual(&self) -> f64 {
        self.factorization_residual
            .max(self.sebestyen_residual)
            .max(self.kernel_identity_residual)
            .max(self.kernel_orthogonality)
            .max(self.unitary_part_residual)
    }

    pub fn phi_t_product(&self) -> BlaschkeProduct {
        self.phi_t.to_product().expect("recovered product is valid")
    }

    pub fn phi_t_star_product(&self) -> BlaschkeProduct {
        self.phi_t_star
            .to_product()
            .expect("recovered product is valid")
    }
}

/// Form `T = P_{φ₁H²} P_{φ₂H²}`, recover `φ_T` and `φ_T*`, and measure all
/// §5/§6 identities for inner projections.
pub fn product_inner_check(
    pair: &InnerPair,
    tol: &Tolerances,
) -> Result<InnerProductReport, HardyError> {
    let trunc = pair.trunc();
    let n = trunc.order();
    let p1 = inner_projection_matrix(&pair.phi1, trunc, tol)?;
    let p2 = inner_projection_matrix(&pair.phi2, trunc, tol)?;
    let t = &p1 * &p2;
    let t_star = t.adjoint();
    let spaces = operator_spaces(&t, tol);

    // φ_T from the backward-invariant core of ker T*, which is Q_{φ_T}
    let q_t = shrink_invariant(&spaces.kernel_adjoint, Shift::Backward, tol)?;
    let q_t_star = shrink_invariant(&spaces.kernel, Shift::Backward, tol)?;
    let phi_t = blaschke_from_zeros(zeros_from_model_space(&q_t)?)?;
    let phi_t_star = blaschke_from_zeros(zeros_from_model_space(&q_t_star)?)?;

    let frame_t = model_space_frame(&phi_t, trunc, tol)?;
    let frame_t_star = model_space_frame(&phi_t_star, trunc, tol)?;
    let p_hull = identity(n) - frame_t.space.projector();
    let p_hull_star = identity(n) - frame_t_star.space.projector();

    let factorization_residual = operator_distance(&t, &(&p_hull * &p_hull_star));
    let sebestyen_residual = operator_distance(&(&t * &t_star), &(&p_hull * &t_star));

    // ker T = [φ_T* H² ∩ Q_{φ_T}] ⊕ Q_{φ_T*}
    let inner_t_star = frame_t_star.space.complement(tol);
    let first = intersect(&inner_t_star, &frame_t.space, tol)?;
    let second = frame_t_star.space.clone();
    let kernel_orthogonality = if first.is_trivial() || second.is_trivial() {
        0.0
    } else {
        operator_norm(&(first.frame().adjoint() * second.frame()))
    };
    let joined = join(&first, &second, tol)?;
    let kernel_identity_residual = projector_distance(&joined, &spaces.kernel);

    // H_u = ker(T − I) = lcm(φ₁, φ₂)H²
    let hu = kernel(&(&t - identity(n)), tol)?;
    let lcm = pair.phi1.lcm(&pair.phi2, DEFAULT_TOL_ZERO);
    let lcm_space = inner_space(&lcm, trunc, tol)?;
    let unitary_part_residual = projector_distance(&hu, &lcm_space);

    Ok(InnerProductReport {
        truncation: n,
        phi_t: BlaschkeJson::from_product(&phi_t),
        phi_t_star: BlaschkeJson::from_product(&phi_t_star),
        factorization_residual,
        sebestyen_residual,
        kernel_identity_residual,
        kernel_orthogonality,
        unitary_part_residual,
        unitary_part_dim: hu.dim(),
        conditioning_warning: frame_t.conditioning_warning || frame_t_star.conditioning_warning,
    })
}

/// Recover `(φ_T, φ_T*)` for `T = P_{φ₁H²} P_{φ₂H²}` without forming `T`:
/// the kernels are assembled from the kernel-decomposition identity, so all
/// frames stay small. Used as a high-order reference for the recovery in
/// [`product_inner_check`].
pub fn recover_inner_functions(
    phi1: &BlaschkeProduct,
    phi2: &BlaschkeProduct,
    trunc: HardyTruncation,
    tol: &Tolerances,
) -> Result<(BlaschkeProduct, BlaschkeProduct), HardyError> {
    trunc.validate_for(phi1)?;
    trunc.validate_for(phi2)?;
    let q1 = model_space_frame(phi1, trunc, tol)?.space;
    let q2 = model_space_frame(phi2, trunc, tol)?.space;

    // ker T* = [Q_{φ₂} ∩ φ₁H²] ⊕ Q_{φ₁}; membership of f ∈ Q₂ in φ₁H² is
    // the vanishing of its Q₁ component.
    let ker_star = {
        let overlap = q1.frame().adjoint() * q2.frame();
        let coeff_null = kernel(&pad_rows(&overlap, q2.dim()), tol)?;
        let inside = Subspace::from_orthonormal(q2.frame() * coeff_null.frame());
        join(&inside, &q1, tol)?
    };
    let ker = {
        let overlap = q2.frame().adjoint() * q1.frame();
        let coeff_null = kernel(&pad_rows(&overlap, q1.dim()), tol)?;
        let inside = Subspace::from_orthonormal(q1.frame() * coeff_null.frame());
        join(&inside, &q2, tol)?
    };

    let q_t = shrink_invariant(&ker_star, Shift::Backward, tol)?;
    let q_t_star = shrink_invariant(&ker, Shift::Backward, tol)?;
    Ok((
        blaschke_from_zeros(zeros_from_model_space(&q_t)?)?,
        blaschke_from_zeros(zeros_from_model_space(&q_t_star)?)?,
    ))
}

fn pad_rows(m: &ComplexMatrix, cols: usize) -> ComplexMatrix {
    if m.nrows() >= cols {
        return m.clone();
    }
    let mut out = ComplexMatrix::zeros(cols, cols);
    out.rows_mut(0, m.nrows()).copy_from(m);
    out
}

/// Verification report for `T = P_{Q_{φ₁}} P_{Q_{φ₂}}`.
#[derive(Debug, Clone, Serialize)]
pub struct ModelProductReport {
    pub truncation: usize,
    pub psi_t: BlaschkeJson,
    pub psi_t_star: BlaschkeJson,
    pub factorization_residual: f64,
    pub kernel_identity_residual: f64,
    pub kernel_orthogonality: f64,
}

impl ModelProductReport {
    pub fn max_residual(&self) -> f64 {
        self.factorization_residual
            .max(self.kernel_identity_residual)
            .max(self.kernel_orthogonality)
    }
}

/// Form `T = P_{Q_{φ₁}} P_{Q_{φ₂}}`, recover `ψ_T = gcd J_T` and `ψ_T*`, and
/// measure the model-projection identities. An empty `J_T` (no inner
/// function with `φH² ⊆ ker T*`) surfaces as [`HardyError::JtEmpty`].
pub fn product_model_check(
    pair: &InnerPair,
    tol: &Tolerances,
) -> Result<ModelProductReport, HardyError> {
    let trunc = pair.trunc();
    let p1 = model_projection_matrix(&pair.phi1, trunc, tol)?;
    let p2 = model_projection_matrix(&pair.phi2, trunc, tol)?;
    let t = &p1 * &p2;
    recover_model_product(&t, trunc, tol)
}

/// The model-product verification for an arbitrary operator on the truncated
/// space (the `product_model_check` core, also used to classify operators
/// such as co-isometries for which `J_T` is empty).
pub fn recover_model_product(
    t: &ComplexMatrix,
    trunc: HardyTruncation,
    tol: &Tolerances,
) -> Result<ModelProductReport, HardyError> {
    let n = trunc.order();
    let spaces = operator_spaces(t, tol);

    // ψ_T H² = largest invariant inside ker T*: dual seed is ran T
    let q_psi_t = grow_invariant(&spaces.range, Shift::Backward, tol)?;
    let q_psi_t_star = grow_invariant(&spaces.range_adjoint, Shift::Backward, tol)?;
    for (q, which) in [(&q_psi_t, "J_T"), (&q_psi_t_star, "J_T*")] {
        let m = q.dim();
        if m == n || 2 * m > n {
            return Err(HardyError::JtEmpty {
                reason: format!(
                    "{which}: no inner function fits (invariant core needs {m} zeros at truncation {n})"
                ),
            });
        }
    }
    let psi_t = blaschke_from_zeros(zeros_from_model_space(&q_psi_t)?)?;
    let psi_t_star = blaschke_from_zeros(zeros_from_model_space(&q_psi_t_star)?)?;

    let factorization_residual =
        operator_distance(t, &(q_psi_t.projector() * q_psi_t_star.projector()));

    // ker T = [Q_{ψ_T*} ∩ ψ_T H²] ⊕ ψ_T* H²
    let inner_t = q_psi_t.complement(tol);
    let inner_t_star = q_psi_t_star.complement(tol);
    let first = intersect(&q_psi_t_star, &inner_t, tol)?;
    let second = inner_t_star;
    let kernel_orthogonality = if first.is_trivial() || second.is_trivial() {
        0.0
    } else {
        operator_norm(&(first.frame().adjoint() * second.frame()))
    };
    let joined = join(&first, &second, tol)?;
    let kernel_identity_residual = projector_distance(&joined, &spaces.kernel);

    Ok(ModelProductReport {
        truncation: n,
        psi_t: BlaschkeJson::from_product(&psi_t),
        psi_t_star: BlaschkeJson::from_product(&psi_t_star),
        factorization_residual,
        kernel_identity_residual,
        kernel_orthogonality,
    })
}

/// `dim (Q_{b₁} ∩ b₂H²)`; zero exactly when `|Z(b₁)| ≤ |Z(b₂)|`.
pub fn intersection_dimension(
    b1: &BlaschkeProduct,
    b2: &BlaschkeProduct,
    trunc: HardyTruncation,
    tol: &Tolerances,
) -> Result<usize, HardyError> {
    Ok(model_inner_intersection(b1, b2, trunc, tol)?.dim())
}

/// The witness subspace `Q_{b₁} ∩ b₂H²` itself.
pub fn model_inner_intersection(
    b1: &BlaschkeProduct,
    b2: &BlaschkeProduct,
    trunc: HardyTruncation,
    tol: &Tolerances,
) -> Result<Subspace, HardyError> {
    let q1 = model_space_frame(b1, trunc, tol)?.space;
    let s2 = inner_space(b2, trunc, tol)?;
    Ok(intersect(&q1, &s2, tol)?)
}

/// Randomized search for a counterexample to the mismatched-range
/// proposition: a product of two inner projections with
/// `ran T = b₁H²` and `ran T* = b₂H²` despite `|Z(b₁)| ≠ |Z(b₂)|`.
#[derive(Debug, Clone, Serialize)]
pub struct MismatchReport {
    pub trials: usize,
    /// Trials where both range equalities held; nonzero would falsify the
    /// proposition at this instance.
    pub both_hold: usize,
    /// Trials where exactly one range equality held.
    pub near_misses: usize,
    pub consistent: bool,
}

pub fn mismatched_range_verifier(
    b1: &BlaschkeProduct,
    b2: &BlaschkeProduct,
    trials: usize,
    zero_pool: &[Complex64],
    seed: u64,
    trunc: HardyTruncation,
    tol: &Tolerances,
) -> Result<MismatchReport, HardyError> {
    use rand::Rng;
    if b1.degree() == b2.degree() {
        return Err(HardyError::EmptyInput(
            "range mismatch requires differing zero counts",
        ));
    }
    if zero_pool.is_empty() {
        return Err(HardyError::EmptyInput("empty zero pool"));
    }
    trunc.validate_for(b1)?;
    trunc.validate_for(b2)?;
    let target1 = inner_space(b1, trunc, tol)?;
    let target2 = inner_space(b2, trunc, tol)?;

    let mut both_hold = 0;
    let mut near_misses = 0;
    for trial in 0..trials {
        let mut rng = crate::random::trial_rng(seed, trial as u64);
        let sample = |rng: &mut rand_chacha::ChaCha8Rng| -> Result<BlaschkeProduct, HardyError> {
            let count = rng.random_range(1..=3usize);
            let zeros = (0..count)
                .map(|_| zero_pool[rng.random_range(0..zero_pool.len())])
                .collect();
            Ok(BlaschkeProduct::from_zeros(zeros)?)
        };
        let phi_a = sample(&mut rng)?;
        let phi_b = sample(&mut rng)?;
        let pa = inner_projection_matrix(&phi_a, trunc, tol)?;
        let pb = inner_projection_matrix(&phi_b, trunc, tol)?;
        let t = &pa * &pb;
        let spaces = operator_spaces(&t, tol);
        let hit1 = projector_distance(&spaces.range, &target1) <= tol.tol_eq;
        let hit2 = projector_distance(&spaces.range_adjoint, &target2) <= tol.tol_eq;
        if hit1 && hit2 {
            both_hold += 1;
        } else if hit1 || hit2 {
            near_misses += 1;
        }
    }
    Ok(MismatchReport {
        trials,
        both_hold,
        near_misses,
        consistent: both_hold == 0,
    })
}

/// For `T = P_{φ₁H²} P_{φ₂H²}`: no nonconstant inner function divides
/// `ker T` (i.e. `ker T ⊄ φH²` for every candidate), and `ker T` is not
/// shift-invariant unless `T = 0`.
#[derive(Debug, Clone, Serialize)]
pub struct KernelDivisorReport {
    /// Per candidate: largest model-space component of a kernel frame
    /// vector; positive means the kernel is not contained in that `φH²`.
    pub outside_components: Vec<f64>,
    pub no_candidate_contains_kernel: bool,
    pub shift_invariance_residual: f64,
    pub kernel_is_shift_invariant: bool,
    pub operator_is_zero: bool,
}

pub fn kernel_inner_divisor_check(
    pair: &InnerPair,
    candidates: &[BlaschkeProduct],
    tol: &Tolerances,
) -> Result<KernelDivisorReport, HardyError> {
    if candidates.iter().any(|c| c.is_constant()) {
        return Err(HardyError::EmptyInput(
            "divisor candidates must be nonconstant",
        ));
    }
    let trunc = pair.trunc();
    let p1 = inner_projection_matrix(&pair.phi1, trunc, tol)?;
    let p2 = inner_projection_matrix(&pair.phi2, trunc, tol)?;
    let t = &p1 * &p2;
    let spaces = operator_spaces(&t, tol);
    let ker = &spaces.kernel;

    let mut outside_components = Vec::with_capacity(candidates.len());
    for cand in candidates {
        let q = model_space_frame(cand, trunc, tol)?.space;
        let overlay = q.frame().adjoint() * ker.frame();
        // max column norm: the largest model-space component of any kernel
        // basis vector
        let worst = (0..overlay.ncols())
            .map(|j| overlay.column(j).norm())
            .fold(0.0, f64::max);
        outside_components.push(worst);
    }
    let no_candidate_contains_kernel = outside_components.iter().all(|&c| c > tol.tol_eq);

    let shifted = shift_frame(ker.frame());
    let residual = &shifted - ker.frame() * (ker.frame().adjoint() * &shifted);
    let shift_invariance_residual = operator_norm(&residual);

    Ok(KernelDivisorReport {
        outside_components,
        no_candidate_contains_kernel,
        shift_invariance_residual,
        kernel_is_shift_invariant: shift_invariance_residual <= tol.tol_eq,
        operator_is_zero: operator_norm(&t) <= tol.tol_eq,
    })
}

/// The truncated backward shift `Z*`, the standard co-isometry instance for
/// which `J_T` is empty.
pub fn backward_shift_matrix(n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n - 1 {
        m[(i, i + 1)] = real(1.0);
    }
    m
}
