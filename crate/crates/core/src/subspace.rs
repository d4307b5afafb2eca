//! Closed subspaces of finite-dimensional complex Hilbert space and the
//! lattice operations on them.
//!
//! A subspace is stored as an orthonormal frame (a matrix whose columns form
//! an orthonormal basis). The trivial subspace is a frame with zero columns.
//! Numerical rank decisions use a relative singular-value cutoff.

use nalgebra::linalg::SymmetricEigen;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{
    self, identity, operator_distance, operator_norm, validate_finite, ComplexMatrix, MatrixError,
    MatrixJson,
};

/// Numerical tolerances shared by every operation in the crate.
///
/// `tol_rank` is the relative singular-value cutoff for rank decisions,
/// `tol_eq` bounds operator-norm residuals of matrix identities, and
/// `tol_orth` bounds the orthonormality defect of stored frames.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Tolerances {
    pub tol_rank: f64,
    pub tol_eq: f64,
    pub tol_orth: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tol_rank: 1e-10,
            tol_eq: 1e-8,
            tol_orth: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<(), SubspaceError> {
        for (name, v) in [
            ("tol_rank", self.tol_rank),
            ("tol_eq", self.tol_eq),
            ("tol_orth", self.tol_orth),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(SubspaceError::BadTolerance {
                    name,
                    value: v,
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum SubspaceError {
    #[error("tolerance {name} = {value} out of range (0, 1)")]
    BadTolerance { name: &'static str, value: f64 },
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("frame of {cols} columns in ambient dimension {ambient} is not orthonormal (defect {defect:.3e})")]
    NotOrthonormal {
        ambient: usize,
        cols: usize,
        defect: f64,
    },
    #[error("ambient dimension must be positive")]
    ZeroAmbient,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("intersection cross-check failed: spectral dim {spectral} vs kernel dim {kernel}")]
    IntersectionMismatch { spectral: usize, kernel: usize },
}

/// An orthonormal frame spanning a closed subspace of ℂⁿ.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    frame: ComplexMatrix,
}

impl Subspace {
    /// Wrap a frame after checking orthonormality within `tol_orth`.
    pub fn from_frame(frame: ComplexMatrix, tol: &Tolerances) -> Result<Self, SubspaceError> {
        let ambient = frame.nrows();
        if ambient == 0 {
            return Err(SubspaceError::ZeroAmbient);
        }
        let cols = frame.ncols();
        if cols > 0 {
            validate_finite(&frame)?;
            let gram = frame.adjoint() * &frame;
            let defect = operator_distance(&gram, &identity(cols));
            if defect > tol.tol_orth {
                return Err(SubspaceError::NotOrthonormal {
                    ambient,
                    cols,
                    defect,
                });
            }
        }
        Ok(Subspace {
            ambient_dim: ambient,
            frame,
        })
    }

    /// Internal constructor for frames produced by SVD/eigen routines, which
    /// are orthonormal by construction.
    pub(crate) fn from_orthonormal(frame: ComplexMatrix) -> Self {
        debug_assert!(frame.nrows() > 0);
        Subspace {
            ambient_dim: frame.nrows(),
            frame,
        }
    }

    pub fn trivial(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            frame: ComplexMatrix::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            frame: identity(ambient_dim),
        }
    }

    /// Span of a single nonzero vector.
    pub fn line(v: &[crate::matrix::Complex64]) -> Self {
        let mut col = ComplexMatrix::from_column_slice(v.len(), 1, v);
        let norm = col.norm();
        assert!(norm > 0.0, "line() needs a nonzero vector");
        col /= matrix::real(norm);
        Subspace {
            ambient_dim: v.len(),
            frame: col,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.frame.ncols()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    pub fn frame(&self) -> &ComplexMatrix {
        &self.frame
    }

    /// The orthogonal projection onto this subspace, `P = F F*`.
    pub fn projector(&self) -> ComplexMatrix {
        if self.is_trivial() {
            return ComplexMatrix::zeros(self.ambient_dim, self.ambient_dim);
        }
        &self.frame * self.frame.adjoint()
    }

    /// The orthogonal complement.
    pub fn complement(&self, tol: &Tolerances) -> Subspace {
        if self.is_trivial() {
            return Subspace::full(self.ambient_dim);
        }
        if self.dim() == self.ambient_dim {
            return Subspace::trivial(self.ambient_dim);
        }
        // S^⊥ = ker F*, with F* a dim x ambient matrix.
        nullspace(&self.frame.adjoint(), tol)
    }

    /// True when every column of `other`'s frame lies in this subspace.
    pub fn contains(&self, other: &Subspace, tol: &Tolerances) -> bool {
        if other.is_trivial() {
            return true;
        }
        if other.dim() > self.dim() {
            return false;
        }
        // (I - P) f = f - F (F* f)
        let coeff = self.frame.adjoint() * other.frame();
        let residual = other.frame() - &self.frame * coeff;
        operator_norm(&residual) <= tol.tol_eq
    }

    pub fn to_json(&self) -> SubspaceJson {
        SubspaceJson {
            ambient_dim: self.ambient_dim,
            frame: MatrixJson::from_matrix(&self.frame),
        }
    }
}

/// Wire format: the frame matrix plus the ambient dimension.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub ambient_dim: usize,
    pub frame: MatrixJson,
}

fn rank_from_singular_values(sv: &[f64], tol: &Tolerances) -> usize {
    let sigma_max = sv.first().copied().unwrap_or(0.0);
    if sigma_max <= 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol.tol_rank * sigma_max).count()
}

/// Orthonormal frame for the column space of `t`.
pub fn orthonormal_range(t: &ComplexMatrix, tol: &Tolerances) -> Result<Subspace, SubspaceError> {
    validate_finite(t)?;
    let svd = t.clone().svd(true, false);
    let rank = rank_from_singular_values(svd.singular_values.as_slice(), tol);
    let u = svd.u.expect("svd computed with u");
    Ok(Subspace::from_orthonormal(u.columns(0, rank).into_owned()))
}

/// Orthonormal frame for the null space of `t`.
pub fn kernel(t: &ComplexMatrix, tol: &Tolerances) -> Result<Subspace, SubspaceError> {
    validate_finite(t)?;
    nullspace_unchecked(t, tol)
}

/// Null space via SVD. When the matrix is wide, the thin SVD does not carry
/// the full right factor, so pad with zero rows first (the singular values
/// are unchanged).
fn nullspace(t: &ComplexMatrix, tol: &Tolerances) -> Subspace {
    nullspace_unchecked(t, tol).expect("nullspace of validated matrix")
}

fn nullspace_unchecked(t: &ComplexMatrix, tol: &Tolerances) -> Result<Subspace, SubspaceError> {
    let cols = t.ncols();
    if cols == 0 {
        return Err(MatrixError::Empty.into());
    }
    let padded = if t.nrows() < cols {
        let mut p = ComplexMatrix::zeros(cols, cols);
        p.rows_mut(0, t.nrows()).copy_from(t);
        p
    } else {
        t.clone()
    };
    let svd = padded.svd(false, true);
    let rank = rank_from_singular_values(svd.singular_values.as_slice(), tol);
    let v = svd.v_t.expect("svd computed with v_t").adjoint();
    Ok(Subspace::from_orthonormal(
        v.columns(rank, cols - rank).into_owned(),
    ))
}

fn check_ambient(s1: &Subspace, s2: &Subspace) -> Result<usize, SubspaceError> {
    if s1.ambient_dim() != s2.ambient_dim() {
        return Err(SubspaceError::AmbientMismatch {
            left: s1.ambient_dim(),
            right: s2.ambient_dim(),
        });
    }
    Ok(s1.ambient_dim())
}

/// Intersection of two subspaces.
///
/// Computed spectrally as the eigenvalue-1 eigenspace of the Hermitian
/// operator P₁P₂P₁ (eigenvalues ≥ 1 − tol_rank), and cross-checked against
/// the null space of I − P₁P₂.
pub fn intersect(
    s1: &Subspace,
    s2: &Subspace,
    tol: &Tolerances,
) -> Result<Subspace, SubspaceError> {
    let n = check_ambient(s1, s2)?;
    if s1.is_trivial() || s2.is_trivial() {
        return Ok(Subspace::trivial(n));
    }
    let p1 = s1.projector();
    let p2 = s2.projector();
    let m = matrix::hermitian_part(&(&p1 * &p2 * &p1));
    let eig = SymmetricEigen::new(m);
    let selected: Vec<usize> = (0..n)
        .filter(|&i| eig.eigenvalues[i] >= 1.0 - tol.tol_rank)
        .collect();
    let mut frame = ComplexMatrix::zeros(n, selected.len());
    for (j, &i) in selected.iter().enumerate() {
        frame.set_column(j, &eig.eigenvectors.column(i));
    }
    let spectral = Subspace::from_orthonormal(frame);

    let residual = identity(n) - &p1 * &p2;
    let cross = nullspace(&residual, tol);
    if cross.dim() != spectral.dim() {
        return Err(SubspaceError::IntersectionMismatch {
            spectral: spectral.dim(),
            kernel: cross.dim(),
        });
    }
    Ok(spectral)
}

/// Closed span of the union of two subspaces.
pub fn join(s1: &Subspace, s2: &Subspace, tol: &Tolerances) -> Result<Subspace, SubspaceError> {
    let n = check_ambient(s1, s2)?;
    if s1.is_trivial() {
        return Ok(s2.clone());
    }
    if s2.is_trivial() {
        return Ok(s1.clone());
    }
    let mut stacked = ComplexMatrix::zeros(n, s1.dim() + s2.dim());
    stacked.columns_mut(0, s1.dim()).copy_from(s1.frame());
    stacked.columns_mut(s1.dim(), s2.dim()).copy_from(s2.frame());
    orthonormal_range(&stacked, tol)
}

/// True iff the two subspaces agree: `||P₁ − P₂|| ≤ tol_eq`.
pub fn subspace_equal(
    s1: &Subspace,
    s2: &Subspace,
    tol: &Tolerances,
) -> Result<bool, SubspaceError> {
    check_ambient(s1, s2)?;
    Ok(projector_distance(s1, s2) <= tol.tol_eq)
}

/// `||P₁ − P₂||` in operator norm; the residual behind [`subspace_equal`].
pub fn projector_distance(s1: &Subspace, s2: &Subspace) -> f64 {
    operator_distance(&s1.projector(), &s2.projector())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{complex, from_real_rows, real, Complex64};
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    fn e(n: usize, i: usize) -> Vec<Complex64> {
        let mut v = vec![complex(0.0, 0.0); n];
        v[i] = complex(1.0, 0.0);
        v
    }

    fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| {
            complex(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        })
    }

    #[test]
    fn range_of_axis_projection() {
        let t = from_real_rows(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let s = orthonormal_range(&t, &tols()).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(subspace_equal(&s, &Subspace::line(&e(2, 0)), &tols()).unwrap());
    }

    #[test]
    fn range_of_zero_matrix_is_trivial() {
        let t = ComplexMatrix::zeros(3, 3);
        let s = orthonormal_range(&t, &tols()).unwrap();
        assert!(s.is_trivial());
    }

    #[test]
    fn range_of_rank_one_product() {
        // ½[[1,1],[0,0]] has range span{e1}
        let t = from_real_rows(2, 2, &[0.5, 0.5, 0.0, 0.0]);
        let s = orthonormal_range(&t, &tols()).unwrap();
        assert!(subspace_equal(&s, &Subspace::line(&e(2, 0)), &tols()).unwrap());
    }

    #[test]
    fn kernel_examples() {
        let id = identity(2);
        assert!(kernel(&id, &tols()).unwrap().is_trivial());

        let t = from_real_rows(2, 2, &[0.5, 0.5, 0.0, 0.0]);
        let k = kernel(&t, &tols()).unwrap();
        let expect = Subspace::line(&[complex(1.0, 0.0), complex(-1.0, 0.0)]);
        assert!(subspace_equal(&k, &expect, &tols()).unwrap());

        let z = ComplexMatrix::zeros(2, 2);
        assert_eq!(kernel(&z, &tols()).unwrap().dim(), 2);
    }

    #[test]
    fn kernel_of_wide_matrix() {
        // 1x3 matrix [1, 1, 1]: kernel has dimension 2
        let t = from_real_rows(1, 3, &[1.0, 1.0, 1.0]);
        let k = kernel(&t, &tols()).unwrap();
        assert_eq!(k.dim(), 2);
        // every kernel column is orthogonal to (1,1,1)
        let resid = &t * k.frame();
        assert!(operator_norm(&resid) < 1e-12);
    }

    #[test]
    fn projector_examples() {
        let s = Subspace::line(&e(2, 0));
        assert!(operator_distance(&s.projector(), &from_real_rows(2, 2, &[1.0, 0.0, 0.0, 0.0])) < 1e-14);

        let diag = Subspace::line(&[complex(1.0, 0.0), complex(1.0, 0.0)]);
        let p = diag.projector();
        assert!(operator_distance(&p, &from_real_rows(2, 2, &[0.5, 0.5, 0.5, 0.5])) < 1e-14);

        assert!(operator_norm(&Subspace::trivial(3).projector()) == 0.0);
    }

    #[test]
    fn intersect_examples() {
        let t = tols();
        // span{e1} ∩ span{e1,e2} in C^3
        let s1 = Subspace::line(&e(3, 0));
        let mut f = ComplexMatrix::zeros(3, 2);
        f[(0, 0)] = complex(1.0, 0.0);
        f[(1, 1)] = complex(1.0, 0.0);
        let s2 = Subspace::from_frame(f, &t).unwrap();
        let m = intersect(&s1, &s2, &t).unwrap();
        assert!(subspace_equal(&m, &s1, &t).unwrap());

        // distinct lines meet trivially
        let l1 = Subspace::line(&e(2, 0));
        let l2 = Subspace::line(&[complex(1.0, 0.0), complex(1.0, 0.0)]);
        assert!(intersect(&l1, &l2, &t).unwrap().is_trivial());

        // idempotence
        let m2 = intersect(&l2, &l2, &t).unwrap();
        assert!(subspace_equal(&m2, &l2, &t).unwrap());
    }

    #[test]
    fn join_examples() {
        let t = tols();
        let s = join(&Subspace::line(&e(2, 0)), &Subspace::line(&e(2, 1)), &t).unwrap();
        assert_eq!(s.dim(), 2);

        let anti = Subspace::line(&[complex(1.0, 0.0), complex(-1.0, 0.0)]);
        let s2 = join(&anti, &Subspace::line(&e(2, 1)), &t).unwrap();
        assert!(subspace_equal(&s2, &Subspace::full(2), &t).unwrap());

        let s3 = join(&anti, &Subspace::trivial(2), &t).unwrap();
        assert!(subspace_equal(&s3, &anti, &t).unwrap());
    }

    #[test]
    fn complement_examples() {
        let t = tols();
        let c = Subspace::line(&e(2, 0)).complement(&t);
        assert!(subspace_equal(&c, &Subspace::line(&e(2, 1)), &t).unwrap());

        assert!(Subspace::full(2).complement(&t).is_trivial());

        let diag = Subspace::line(&[complex(1.0, 0.0), complex(1.0, 0.0)]);
        let anti = Subspace::line(&[complex(1.0, 0.0), complex(-1.0, 0.0)]);
        assert!(subspace_equal(&diag.complement(&t), &anti, &t).unwrap());
    }

    #[test]
    fn subspace_equal_sign_invariance() {
        let t = tols();
        let plus = Subspace::line(&e(2, 0));
        let minus = Subspace::line(&[complex(-1.0, 0.0), complex(0.0, 0.0)]);
        assert!(subspace_equal(&plus, &minus, &t).unwrap());
        assert!(!subspace_equal(&plus, &Subspace::line(&e(2, 1)), &t).unwrap());
    }

    #[test]
    fn range_invariant_under_column_operations() {
        let t = tols();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_matrix(&mut rng, 6, 4);
            // invertible 4x4 (random matrices are generically invertible)
            let g = random_matrix(&mut rng, 4, 4) + identity(4) * real(2.0);
            let s1 = orthonormal_range(&a, &t).unwrap();
            let s2 = orthonormal_range(&(&a * &g), &t).unwrap();
            assert!(subspace_equal(&s1, &s2, &t).unwrap());
        }
    }

    #[test]
    fn duality_range_kernel() {
        // (ran T)^⊥ = ker T*
        let t = tols();
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..20 {
            let a = random_matrix(&mut rng, 5, 7);
            let c = orthonormal_range(&a, &t).unwrap().complement(&t);
            let k = kernel(&a.adjoint(), &t).unwrap();
            assert!(subspace_equal(&c, &k, &t).unwrap());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn rank_nullity(seed in 0u64..1000, rows in 1usize..7, cols in 1usize..7) {
            let t = tols();
            let mut rng = StdRng::seed_from_u64(seed);
            let a = random_matrix(&mut rng, rows, cols);
            let r = orthonormal_range(&a, &t).unwrap();
            let k = kernel(&a, &t).unwrap();
            prop_assert_eq!(r.dim() + k.dim(), cols);
        }

        #[test]
        fn lattice_containments(seed in 0u64..1000) {
            let t = tols();
            let mut rng = StdRng::seed_from_u64(seed);
            let n = 6;
            let da = rng.random_range(1..=n);
            let db = rng.random_range(1..=n);
            let a = random_matrix(&mut rng, n, da);
            let b = random_matrix(&mut rng, n, db);
            let s1 = orthonormal_range(&a, &t).unwrap();
            let s2 = orthonormal_range(&b, &t).unwrap();
            let meet = intersect(&s1, &s2, &t).unwrap();
            let jn = join(&s1, &s2, &t).unwrap();
            prop_assert!(s1.contains(&meet, &t));
            prop_assert!(s2.contains(&meet, &t));
            prop_assert!(jn.contains(&s1, &t));
            prop_assert!(jn.contains(&s2, &t));
        }

        #[test]
        fn complement_involution(seed in 0u64..1000) {
            let t = tols();
            let mut rng = StdRng::seed_from_u64(seed);
            let n = 6;
            let da = rng.random_range(1..=n);
            let a = random_matrix(&mut rng, n, da);
            let s = orthonormal_range(&a, &t).unwrap();
            let cc = s.complement(&t).complement(&t);
            prop_assert!(subspace_equal(&s, &cc, &t).unwrap());
        }
    }
}
