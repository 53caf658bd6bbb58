//! Scalar abstraction shared by the exact and numeric paths.
//!
//! Exact code instantiates with [`crate::Rat`]; the floating-point side
//! uses `f64` or [`crate::Cplx`]. The bound is deliberately a plain
//! num-traits composition so that all four concrete scalars (including
//! [`crate::Int`] for integer matrices) satisfy it without glue code.

use num_traits::{FromPrimitive, Num, NumAssign};
use std::fmt::Debug;
use std::ops::Neg;

pub trait Scalar:
    Num + NumAssign + Neg<Output = Self> + FromPrimitive + Clone + PartialEq + Debug + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Num
        + NumAssign
        + Neg<Output = T>
        + FromPrimitive
        + Clone
        + PartialEq
        + Debug
        + Send
        + Sync
        + 'static
{
}

/// Small nonnegative integer lifted into the scalar type.
pub fn small<S: Scalar>(v: u64) -> S {
    S::from_u64(v).expect("small integer must embed into the scalar type")
}

/// n! as a scalar (n stays tiny: it is the tensor order minus one).
pub fn factorial<S: Scalar>(n: usize) -> S {
    let mut acc = S::one();
    for i in 2..=n {
        acc *= small::<S>(i as u64);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    #[test]
    fn factorial_values() {
        assert_eq!(factorial::<f64>(0), 1.0);
        assert_eq!(factorial::<f64>(3), 6.0);
        assert_eq!(factorial::<Rat>(5), small::<Rat>(120));
    }
}
