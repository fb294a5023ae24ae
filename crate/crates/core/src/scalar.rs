use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar underlying every complex matrix and state in this crate.
///
/// The tolerances are precision dependent: `f64` carries the thresholds used
/// throughout the pipeline, `f32` gets looser ones that its mantissa can meet.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Entrywise bound on `|U†U - I|` for a matrix to count as unitary.
    fn unitarity_tol() -> Self;

    /// Default residual bound for equivalence checks.
    fn equivalence_tol() -> Self;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }
}

impl Real for f64 {
    fn unitarity_tol() -> Self {
        1e-10
    }

    fn equivalence_tol() -> Self {
        1e-9
    }
}

impl Real for f32 {
    fn unitarity_tol() -> Self {
        1e-5
    }

    fn equivalence_tol() -> Self {
        1e-4
    }
}
