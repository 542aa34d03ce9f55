use crate::eigen::tridiag::tridiagonal_eigh;
use crate::error::{Error, Result};
use crate::hamiltonian::SparseOperator;
use crate::scalar::{axpy, dot, norm, scale, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub(crate) struct LanczosOutcome<T> {
    pub energy: T,
    pub vector: Vec<T>,
    pub iterations: usize,
    pub residual: T,
    /// Largest Ritz value seen; a lower bound on the top of the spectrum.
    pub ritz_max: T,
}

/// Lowest eigenpair of `op` restricted to the orthogonal complement of
/// `deflate` (which must be orthonormal). Full reorthogonalization against
/// every Krylov vector and every deflation vector.
///
/// `tol` is absolute on `‖Hv − Ev‖`.
pub(crate) fn lanczos_lowest<T: Scalar>(
    op: &SparseOperator<T>,
    tol: T,
    max_iter: usize,
    seed: u64,
    deflate: &[&[T]],
) -> Result<LanczosOutcome<T>> {
    let n = op.dim();
    let reachable = n.saturating_sub(deflate.len());
    if reachable == 0 {
        return Err(Error::InvalidParams("no space left after deflation".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h_norm = op.inf_norm();
    let breakdown = T::lit(16.0) * T::epsilon() * h_norm.max(T::one());

    let mut basis: Vec<Vec<T>> = Vec::new();
    let mut alpha: Vec<T> = Vec::new();
    let mut beta: Vec<T> = Vec::new();
    let mut best = T::infinity();
    let mut ritz_max = -T::infinity();
    let mut w = vec![T::zero(); n];

    let mut next = fresh_vector(&mut rng, n, &basis, deflate)
        .ok_or_else(|| Error::InvalidParams("could not draw a starting vector".into()))?;

    loop {
        basis.push(next);
        let j = basis.len() - 1;
        op.apply_into(&basis[j], &mut w)?;
        let a = dot(&basis[j], &w);
        alpha.push(a);
        axpy(-a, &basis[j], &mut w);
        if j > 0 {
            axpy(-beta[j - 1], &basis[j - 1], &mut w);
        }
        for _ in 0..2 {
            orthogonalize(&mut w, basis.iter().map(|b| b.as_slice()));
            orthogonalize(&mut w, deflate.iter().copied());
        }
        let b = norm(&w);
        let m = basis.len();

        if should_check(m) || m == reachable || m >= max_iter || b <= breakdown {
            let (_, s) = lowest_ritz(&alpha, &beta, &mut ritz_max)?;
            let estimate = (b * s[m - 1]).abs();
            best = best.min(estimate);
            if estimate <= tol || m == reachable || b <= breakdown || m >= max_iter {
                let mut y = vec![T::zero(); n];
                for (coef, v) in s.iter().zip(&basis) {
                    axpy(*coef, v, &mut y);
                }
                let ny = norm(&y);
                scale(T::one() / ny, &mut y);
                let hy = op.apply(&y)?;
                let energy = dot(&y, &hy);
                let residual = hy
                    .iter()
                    .zip(&y)
                    .fold(T::zero(), |acc, (&h, &v)| {
                        acc + (h - energy * v) * (h - energy * v)
                    })
                    .sqrt();
                best = best.min(residual);
                if residual <= tol {
                    return Ok(LanczosOutcome {
                        energy,
                        vector: y,
                        iterations: m,
                        residual,
                        ritz_max,
                    });
                }
                if m == reachable || m >= max_iter {
                    return Err(Error::NotConverged {
                        iterations: m,
                        residual: best.to_f64_lossy(),
                    });
                }
            }
        }

        if b <= breakdown {
            // Invariant subspace: continue the Krylov sequence from a fresh
            // vector orthogonal to everything found so far.
            beta.push(T::zero());
            next = match fresh_vector(&mut rng, n, &basis, deflate) {
                Some(v) => v,
                None => {
                    return Err(Error::NotConverged {
                        iterations: m,
                        residual: best.to_f64_lossy(),
                    })
                }
            };
        } else {
            beta.push(b);
            next = w.iter().map(|&x| x / b).collect();
        }
    }
}

fn should_check(m: usize) -> bool {
    m <= 32 || m.is_multiple_of(m / 16)
}

fn lowest_ritz<T: Scalar>(alpha: &[T], beta: &[T], ritz_max: &mut T) -> Result<(T, Vec<T>)> {
    let m = alpha.len();
    let (vals, vecs) = tridiagonal_eigh(alpha, &beta[..m - 1]).ok_or(Error::NotConverged {
        iterations: m,
        residual: f64::NAN,
    })?;
    let (k, theta) = vals
        .iter()
        .copied()
        .enumerate()
        .fold(
            (0, T::infinity()),
            |acc, (i, v)| if v < acc.1 { (i, v) } else { acc },
        );
    for &v in &vals {
        *ritz_max = ritz_max.max(v);
    }
    Ok((theta, vecs.iter().map(|row| row[k]).collect()))
}

fn orthogonalize<'a, T: Scalar>(w: &mut [T], against: impl Iterator<Item = &'a [T]>) {
    for v in against {
        let c = dot(v, w);
        axpy(-c, v, w);
    }
}

fn fresh_vector<T: Scalar>(
    rng: &mut ChaCha8Rng,
    n: usize,
    basis: &[Vec<T>],
    deflate: &[&[T]],
) -> Option<Vec<T>> {
    for _ in 0..8 {
        let mut v: Vec<T> = (0..n).map(|_| T::lit(rng.gen_range(-1.0..1.0))).collect();
        for _ in 0..2 {
            orthogonalize(&mut v, basis.iter().map(|b| b.as_slice()));
            orthogonalize(&mut v, deflate.iter().copied());
        }
        let nv = norm(&v);
        if nv > T::epsilon().sqrt() {
            scale(T::one() / nv, &mut v);
            return Some(v);
        }
    }
    None
}
