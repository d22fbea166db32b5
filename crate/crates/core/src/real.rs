//! Scalar abstraction shared by the interval, jet and special-function layers.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
///
/// Everything numeric in the crate is written against this trait. The accuracy
/// contracts documented on the special functions are stated for `f64`; `f32`
/// instantiations work but are correspondingly coarser.
pub trait Real:
    'static
    + Send
    + Sync
    + Default
    + Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Debug
    + Display
    + LowerExp
{
    /// Absolute floor added to every outward widening.
    fn widen_floor() -> Self;

    /// Lossy conversion of an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    #[inline]
    fn widen_floor() -> Self {
        1e-300
    }
}

impl Real for f32 {
    #[inline]
    fn widen_floor() -> Self {
        1e-37
    }
}
