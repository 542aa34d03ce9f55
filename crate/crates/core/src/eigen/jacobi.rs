use crate::scalar::Scalar;

/// Cyclic Jacobi sweep state. Returns `(eigenvalues, eigenvectors, sweeps)`
/// unsorted; eigenvectors are the columns of the returned row-major matrix.
///
/// Stops once the off-diagonal Frobenius norm falls below
/// `rtol * ‖A‖_F`. Returns `None` if `max_sweeps` is exhausted first.
#[allow(clippy::needless_range_loop)]
pub(crate) fn jacobi_eigh<T: Scalar>(
    mut a: Vec<Vec<T>>,
    rtol: T,
    max_sweeps: usize,
) -> Option<(Vec<T>, Vec<Vec<T>>, usize)> {
    let n = a.len();
    let mut v = vec![vec![T::zero(); n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = T::one();
    }
    let total = frobenius(&a);
    let threshold = rtol * total;

    let two = T::lit(2.0);
    for sweep in 0..=max_sweeps {
        if off_diagonal(&a) <= threshold {
            let eig = (0..n).map(|i| a[i][i]).collect();
            return Some((eig, v, sweep));
        }
        if sweep == max_sweeps {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq == T::zero() {
                    continue;
                }
                // Rutishauser's stable rotation: t = sgn(θ)/(|θ| + √(θ²+1)).
                let theta = (a[q][q] - a[p][p]) / (two * apq);
                let t = if theta.is_infinite() {
                    T::zero()
                } else {
                    let s = if theta >= T::zero() {
                        T::one()
                    } else {
                        -T::one()
                    };
                    s / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                if t == T::zero() {
                    a[p][q] = T::zero();
                    a[q][p] = T::zero();
                    continue;
                }
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                let tau = s / (T::one() + c);

                a[p][p] -= t * apq;
                a[q][q] += t * apq;
                a[p][q] = T::zero();
                a[q][p] = T::zero();
                for r in 0..n {
                    if r != p && r != q {
                        let arp = a[r][p];
                        let arq = a[r][q];
                        let new_rp = arp - s * (arq + tau * arp);
                        let new_rq = arq + s * (arp - tau * arq);
                        a[r][p] = new_rp;
                        a[p][r] = new_rp;
                        a[r][q] = new_rq;
                        a[q][r] = new_rq;
                    }
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = vp - s * (vq + tau * vp);
                    row[q] = vq + s * (vp - tau * vq);
                }
            }
        }
    }
    None
}

fn frobenius<T: Scalar>(a: &[Vec<T>]) -> T {
    a.iter()
        .flat_map(|r| r.iter())
        .fold(T::zero(), |acc, &x| acc + x * x)
        .sqrt()
}

fn off_diagonal<T: Scalar>(a: &[Vec<T>]) -> T {
    let mut s = T::zero();
    for (i, row) in a.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if i != j {
                s += x * x;
            }
        }
    }
    s.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_closed_form() {
        let (a, b, c) = (1.5f64, -0.7, 0.3);
        let (eig, _, _) = jacobi_eigh(vec![vec![a, b], vec![b, c]], 1e-14, 50).unwrap();
        let mean = 0.5 * (a + c);
        let r = (0.25 * (a - c) * (a - c) + b * b).sqrt();
        let mut e = eig.clone();
        e.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert!((e[0] - (mean - r)).abs() < 1e-14);
        assert!((e[1] - (mean + r)).abs() < 1e-14);
    }

    #[test]
    fn already_diagonal_takes_zero_sweeps() {
        let m = vec![vec![3.0f64, 0.0], vec![0.0, -1.0]];
        let (eig, v, sweeps) = jacobi_eigh(m, 1e-13, 10).unwrap();
        assert_eq!(sweeps, 0);
        assert_eq!(eig, vec![3.0, -1.0]);
        assert_eq!(v, vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
    }

    #[test]
    fn zero_sweeps_allowed_reports_failure() {
        let m = vec![vec![0.0f64, 1.0], vec![1.0, 0.0]];
        assert!(jacobi_eigh(m, 1e-13, 0).is_none());
    }
}
