use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar used for amplitudes and probabilities: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    fn from_int(v: u64) -> Self {
        <Self as FromPrimitive>::from_u64(v).expect("u64 is representable in every Real")
    }
}

impl Real for f32 {}
impl Real for f64 {}
