use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar the whole library is generic over.
///
/// Implemented for `f32` and `f64`. The bound set is what the closed-form
/// expressions actually need: ordinary float arithmetic, pi, and conversion
/// from literal constants.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal to the scalar type.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal must convert to the scalar type")
    }
}

impl Real for f32 {}
impl Real for f64 {}
