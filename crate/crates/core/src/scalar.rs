//! Scalar abstraction for the real field underlying all complex arithmetic.
//!
//! Everything in this crate is generic over a floating-point type `T: Real`;
//! the crate root exposes `f64`-backed aliases which are what the CLI and the
//! test suites use. `f32` works too but leaves little tolerance headroom for
//! the default thresholds.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar usable as the real field for states, operators and
/// bound values.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + 'static
{
    /// Lossy conversion from an `f64` constant (tolerances, grid steps).
    fn of(value: f64) -> Self {
        Self::from_f64(value).expect("finite f64 constant must convert")
    }
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + 'static
{
}

/// Default validation tolerance used when an operation does not take an
/// explicit one. All quantities handled here are O(1), so double precision
/// leaves several orders of magnitude of headroom below this.
pub fn default_tol<T: Real>() -> T {
    T::of(1e-10)
}

/// Default slack when checking that a chain of bounds is weakly decreasing.
pub fn chain_slack<T: Real>() -> T {
    T::of(1e-12)
}
