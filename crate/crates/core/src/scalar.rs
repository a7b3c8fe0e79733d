//! Scalar types for the quantitative checks.
//!
//! Every inequality in the verifier, the schedule builder and the Hall audit
//! is written against [`Scalar`]. Exact rationals are the default (see
//! [`crate::Rational`]); floats are accepted for exploratory runs but ties
//! are then subject to rounding.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

pub trait Scalar: Num + Clone + PartialOrd + Debug + Display + Send + Sync + 'static {
    /// Embeds a cardinality.
    fn from_count(n: usize) -> Self;

    fn ratio(num: usize, den: usize) -> Self {
        Self::from_count(num) / Self::from_count(den)
    }

    fn is_negative_value(&self) -> bool {
        *self < Self::zero()
    }
}

impl Scalar for f32 {
    fn from_count(n: usize) -> Self {
        n as f32
    }
}

impl Scalar for f64 {
    fn from_count(n: usize) -> Self {
        n as f64
    }
}

macro_rules! ratio_scalar {
    ($($int:ty),*) => {$(
        impl Scalar for Ratio<$int>
        where
            $int: Integer + Signed,
        {
            fn from_count(n: usize) -> Self {
                Ratio::from_integer(<$int>::try_from(n).expect("count fits the rational's integer type"))
            }
        }
    )*};
}

ratio_scalar!(i32, i64, i128);
