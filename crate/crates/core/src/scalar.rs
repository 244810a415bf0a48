//! Scalar abstraction for the numeric kernels.
//!
//! Everything in this crate is written against [`Scalar`], a thin alias over
//! `num_traits::Float`, so the same code instantiates at `f32` and `f64`.
//! Reference tolerances in the test suite are stated for `f64`; the `f64`
//! aliases at the crate root are what the CLI and most callers should use.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, NumCast};

/// Floating-point scalar the library is generic over.
///
/// Implemented for `f32` and `f64` via the blanket impl below.
pub trait Scalar:
    Float + FromPrimitive + NumCast + Debug + Display + Send + Sync + 'static
{
    /// Lifts an `f64` constant into the scalar type.
    ///
    /// Panics only if the target type cannot represent ordinary finite
    /// constants, which no supported scalar type triggers.
    #[inline]
    fn cst(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 constant must convert")
    }

    /// Lifts a count into the scalar type (exact for counts below 2^53).
    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize must convert to scalar")
    }

    /// Lossy view as `f64` (identity for `f64`).
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + NumCast + Debug + Display + Send + Sync + 'static
{
}

/// Sums a slice left-to-right in index order.
///
/// Deliberately *not* a tree/pairwise reduction: several contracts in this
/// crate (seed determinism, bit-identical nesting) require a fixed evaluation
/// order regardless of thread count or chunking.
#[inline]
pub fn ordered_sum<F: Scalar>(xs: &[F]) -> F {
    xs.iter().fold(F::zero(), |acc, &x| acc + x)
}

/// Sample mean (ordered accumulation).
#[inline]
pub fn mean<F: Scalar>(xs: &[F]) -> F {
    debug_assert!(!xs.is_empty());
    ordered_sum(xs) / F::of_usize(xs.len())
}

/// Unbiased (n−1) sample variance, the convention used across the crate.
#[inline]
pub fn sample_variance<F: Scalar>(xs: &[F]) -> F {
    debug_assert!(xs.len() >= 2);
    let m = mean(xs);
    let ss = xs.iter().fold(F::zero(), |acc, &x| acc + (x - m) * (x - m));
    ss / F::of_usize(xs.len() - 1)
}
