use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Exact signed integer scalar used by the counting formulas.
///
/// `BigInt` is the default (see [`crate::Count`]); machine integers such as `i128`
/// work as long as the counts fit, which they do for the desk-scale grids.
pub trait ExactInt: Clone + Ord + Debug + Display + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync {
    fn from_u64(v: u64) -> Self {
        <Self as FromPrimitive>::from_u64(v).expect("u64 fits every supported count scalar")
    }

    fn pow_u64(base: u64, exp: u64) -> Self {
        num_traits::pow(<Self as ExactInt>::from_u64(base), exp as usize)
    }
}

impl<T> ExactInt for T where T: Clone + Ord + Debug + Display + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync {}
