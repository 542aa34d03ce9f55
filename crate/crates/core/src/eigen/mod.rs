//! Ground states and spectra of real symmetric operators.
//!
//! Small operators go through a dense cyclic Jacobi decomposition, which also
//! serves as the reference for the Lanczos path used on larger sectors.
//! Every returned eigenvector has its first non-negligible component
//! positive.

mod jacobi;
mod lanczos;
mod tridiag;

use crate::error::{Error, Result};
use crate::hamiltonian::SparseOperator;
use crate::scalar::{canonicalize_sign, Scalar};
use serde::Serialize;

pub const DEFAULT_DENSE_LIMIT: usize = 512;
const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Dense,
    Lanczos,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig<T> {
    /// Largest dimension handled by the dense path.
    pub dense_limit: usize,
    /// Residual tolerance, relative to `max(1, ‖H‖∞)`.
    pub tol: T,
    /// Lanczos step cap; `None` means `10 · dim`.
    pub max_iter: Option<usize>,
    pub seed: u64,
    /// Ground level counts as degenerate when `E₁ − E₀ ≤ rtol · (E_max − E₀)`.
    pub degeneracy_rtol: T,
}

impl<T: Scalar> Default for SolverConfig<T> {
    fn default() -> Self {
        Self {
            dense_limit: DEFAULT_DENSE_LIMIT,
            tol: T::default_tol(1e-12),
            max_iter: None,
            seed: 0,
            degeneracy_rtol: T::default_tol(1e-9),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroundStateResult<T> {
    pub energy: T,
    pub vector: Vec<T>,
    pub degenerate: bool,
    /// `E₁ − E₀`; infinite for a one-dimensional operator.
    pub degeneracy_gap: T,
    pub iterations: usize,
    /// `‖Hv − Ev‖`
    pub residual: T,
    pub solver: SolverKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult<T> {
    /// Ascending.
    pub eigenvalues: Vec<T>,
    /// `eigenvectors[k]` belongs to `eigenvalues[k]`.
    pub eigenvectors: Option<Vec<Vec<T>>>,
}

/// Full spectrum by cyclic Jacobi rotations.
pub fn dense_eigh<T: Scalar>(
    op: &SparseOperator<T>,
    dense_limit: usize,
) -> Result<SpectrumResult<T>> {
    dense_eigh_with_sweeps(op, dense_limit).map(|(s, _)| s)
}

fn dense_eigh_with_sweeps<T: Scalar>(
    op: &SparseOperator<T>,
    dense_limit: usize,
) -> Result<(SpectrumResult<T>, usize)> {
    let n = op.dim();
    if n > dense_limit {
        return Err(Error::DenseLimitExceeded {
            dim: n,
            limit: dense_limit,
        });
    }
    let (vals, vecs, sweeps) =
        jacobi::jacobi_eigh(op.to_dense(), T::default_tol(1e-13), JACOBI_MAX_SWEEPS).ok_or(
            Error::NotConverged {
                iterations: JACOBI_MAX_SWEEPS,
                residual: f64::NAN,
            },
        )?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| vals[a].partial_cmp(&vals[b]).expect("finite eigenvalues"));
    let eigenvalues = order.iter().map(|&k| vals[k]).collect();
    let eigenvectors = order
        .iter()
        .map(|&k| {
            let mut v: Vec<T> = vecs.iter().map(|row| row[k]).collect();
            canonicalize_sign(&mut v);
            v
        })
        .collect();
    Ok((
        SpectrumResult {
            eigenvalues,
            eigenvectors: Some(eigenvectors),
        },
        sweeps,
    ))
}

/// Lowest eigenpair by Lanczos with full reorthogonalization, plus a
/// second pass deflated against the ground vector to measure the gap.
///
/// `tol` is relative to `max(1, ‖H‖∞)`. Deterministic for a given `seed`.
pub fn lanczos_ground<T: Scalar>(
    op: &SparseOperator<T>,
    tol: T,
    max_iter: usize,
    seed: u64,
) -> Result<GroundStateResult<T>> {
    lanczos_with_gap(op, tol, max_iter, seed, T::default_tol(1e-9))
}

fn lanczos_with_gap<T: Scalar>(
    op: &SparseOperator<T>,
    tol: T,
    max_iter: usize,
    seed: u64,
    degeneracy_rtol: T,
) -> Result<GroundStateResult<T>> {
    if op.dim() < 2 {
        return Err(Error::InvalidParams("Lanczos needs dim >= 2".into()));
    }
    if tol.is_nan() || tol <= T::zero() {
        return Err(Error::InvalidParams("tolerance must be positive".into()));
    }
    let abs_tol = tol * op.inf_norm().max(T::one());
    let first = lanczos::lanczos_lowest(op, abs_tol, max_iter, seed, &[])?;
    let second = lanczos::lanczos_lowest(
        op,
        abs_tol,
        max_iter,
        seed.wrapping_add(1),
        &[first.vector.as_slice()],
    )?;
    let gap = second.energy - first.energy;
    let width = first.ritz_max.max(second.ritz_max) - first.energy;
    let mut vector = first.vector;
    canonicalize_sign(&mut vector);
    Ok(GroundStateResult {
        energy: first.energy,
        vector,
        degenerate: gap <= degeneracy_rtol * width,
        degeneracy_gap: gap,
        iterations: first.iterations + second.iterations,
        residual: first.residual,
        solver: SolverKind::Lanczos,
    })
}

/// Dense path up to `cfg.dense_limit`, Lanczos beyond.
pub fn ground_state<T: Scalar>(
    op: &SparseOperator<T>,
    cfg: &SolverConfig<T>,
) -> Result<GroundStateResult<T>> {
    let n = op.dim();
    if n == 0 {
        return Err(Error::InvalidParams("empty operator".into()));
    }
    if n > cfg.dense_limit {
        let max_iter = cfg.max_iter.unwrap_or(10 * n);
        return lanczos_with_gap(op, cfg.tol, max_iter, cfg.seed, cfg.degeneracy_rtol);
    }
    let (spec, sweeps) = dense_eigh_with_sweeps(op, cfg.dense_limit)?;
    let vector = spec
        .eigenvectors
        .expect("dense path returns vectors")
        .swap_remove(0);
    let energy = spec.eigenvalues[0];
    let (gap, width) = if n > 1 {
        (
            spec.eigenvalues[1] - energy,
            spec.eigenvalues[n - 1] - energy,
        )
    } else {
        (T::infinity(), T::zero())
    };
    let hv = op.apply(&vector)?;
    let residual = hv
        .iter()
        .zip(&vector)
        .fold(T::zero(), |acc, (&h, &v)| {
            acc + (h - energy * v) * (h - energy * v)
        })
        .sqrt();
    let abs_tol = cfg.tol * op.inf_norm().max(T::one());
    if residual > abs_tol {
        return Err(Error::NotConverged {
            iterations: sweeps,
            residual: residual.to_f64_lossy(),
        });
    }
    Ok(GroundStateResult {
        energy,
        vector,
        degenerate: n > 1 && gap <= cfg.degeneracy_rtol * width,
        degeneracy_gap: gap,
        iterations: sweeps,
        residual,
        solver: SolverKind::Dense,
    })
}
