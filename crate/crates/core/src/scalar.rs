//! Scalar abstraction for all score arithmetic.
//!
//! Every score-carrying type in this crate (DSCHI tables, voting state,
//! SIR trajectories, benchmark records) is generic over [`Real`] so the
//! same code runs in `f32` or `f64`. Concrete `f64` aliases live at the
//! crate root.

use std::fmt;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar used by the score pipeline.
pub trait Real:
    Float + FloatConst + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

/// Converts a count into the scalar type.
pub(crate) fn from_count<F: Real>(n: usize) -> F {
    F::from_usize(n).expect("count representable as scalar")
}

/// Converts an `f64` constant into the scalar type.
pub(crate) fn from_f64<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("constant representable as scalar")
}
