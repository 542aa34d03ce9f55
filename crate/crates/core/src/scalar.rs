use num_traits::{Float, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display, LowerExp};

/// Real scalar type the whole crate is generic over.
///
/// Implemented for `f32` and `f64`. Default tolerances are derived from
/// [`Scalar::default_tol`], which never asks for more than the type can
/// represent.
pub trait Scalar:
    'static + Float + FromPrimitive + NumAssign + Default + Debug + Display + LowerExp + Send + Sync
{
    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Requested tolerance clamped to a small multiple of machine epsilon.
    fn default_tol(requested: f64) -> Self {
        Self::lit(requested).max(Self::epsilon() * Self::lit(64.0))
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

pub(crate) fn norm<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// `y += alpha * x`
pub(crate) fn axpy<T: Scalar>(alpha: T, x: &[T], y: &mut [T]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub(crate) fn scale<T: Scalar>(alpha: T, x: &mut [T]) {
    for xi in x.iter_mut() {
        *xi *= alpha;
    }
}

/// Flip the sign of `v` so its first component of non-negligible magnitude
/// is positive.
pub fn canonicalize_sign<T: Scalar>(v: &mut [T]) {
    let cutoff = T::epsilon().sqrt();
    if let Some(&first) = v.iter().find(|x| x.abs() > cutoff) {
        if first < T::zero() {
            scale(-T::one(), v);
        }
    }
}
