use crate::scalar::Scalar;

/// Eigen-decomposition of a symmetric tridiagonal matrix by implicit QL
/// with Wilkinson-type shifts.
///
/// `diag` has length `m`, `off` has length `m - 1` (`off[i]` couples `i`
/// and `i + 1`). Returns eigenvalues and row-major eigenvectors (column `k`
/// belongs to eigenvalue `k`), both unsorted. `None` if an eigenvalue fails
/// to converge within 60 iterations.
pub(crate) fn tridiagonal_eigh<T: Scalar>(diag: &[T], off: &[T]) -> Option<(Vec<T>, Vec<Vec<T>>)> {
    let m = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![T::zero(); m];
    e[..m.saturating_sub(1)].copy_from_slice(&off[..m.saturating_sub(1)]);
    let mut z = vec![vec![T::zero(); m]; m];
    for (i, row) in z.iter_mut().enumerate() {
        row[i] = T::one();
    }
    let two = T::lit(2.0);

    for l in 0..m {
        let mut iter = 0;
        loop {
            let mut mm = l;
            while mm + 1 < m {
                let dd = d[mm].abs() + d[mm + 1].abs();
                if e[mm].abs() <= T::epsilon() * dd {
                    break;
                }
                mm += 1;
            }
            if mm == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return None;
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[mm] - d[l] + e[l] / (g + if g >= T::zero() { r.abs() } else { -r.abs() });
            let mut s = T::one();
            let mut c = T::one();
            let mut p = T::zero();
            let mut i = mm;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] -= p;
                    e[mm] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in z.iter_mut() {
                    let zf = row[i + 1];
                    row[i + 1] = s * row[i] + c * zf;
                    row[i] = c * row[i] - s * zf;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[mm] = T::zero();
        }
    }
    Some((d, z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::jacobi::jacobi_eigh;

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    #[test]
    fn matches_jacobi_on_random_tridiagonal() {
        let diag = [0.3, -1.2, 2.5, 0.0, 1.1, -0.4];
        let off = [0.9, -0.2, 1.7, 0.05, -0.6];
        let (ql, z) = tridiagonal_eigh(&diag, &off).unwrap();
        let n = diag.len();
        let mut dense = vec![vec![0.0; n]; n];
        for i in 0..n {
            dense[i][i] = diag[i];
            if i + 1 < n {
                dense[i][i + 1] = off[i];
                dense[i + 1][i] = off[i];
            }
        }
        let (jac, _, _) = jacobi_eigh(dense.clone(), 1e-15, 100).unwrap();
        for (a, b) in sorted(ql.clone()).iter().zip(sorted(jac)) {
            assert!((a - b).abs() < 1e-12);
        }
        // residual of each eigenpair
        for k in 0..n {
            for i in 0..n {
                let hv: f64 = (0..n).map(|j| dense[i][j] * z[j][k]).sum();
                assert!((hv - ql[k] * z[i][k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn single_element() {
        let (d, z) = tridiagonal_eigh(&[4.0f64], &[]).unwrap();
        assert_eq!(d, vec![4.0]);
        assert_eq!(z, vec![vec![1.0]]);
    }
}
