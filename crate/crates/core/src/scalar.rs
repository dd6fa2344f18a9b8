//! Exact coefficient fields.
//!
//! Every computation in this crate is a rank statement over ℚ, so the
//! coefficient type is restricted to exact fractions. [`Scalar`] is
//! implemented for `Ratio<T>` over any signed integer type; the crate root
//! fixes `Ratio<BigInt>` as the default.

use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

pub trait Scalar:
    Num + Neg<Output = Self> + PartialOrd + Clone + Debug + Display + FromStr + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self;

    fn from_frac(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }

    /// `(-1)^k` as a scalar.
    fn sign(negative: bool) -> Self {
        if negative {
            -Self::one()
        } else {
            Self::one()
        }
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Integer + Signed + Clone + Debug + Display + FromStr + FromPrimitive + Send + Sync + 'static,
{
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(T::from_i64(n).expect("integer type cannot hold i64 value"))
    }
}

/// Parses `"3"`, `"-1/2"` style literals.
pub fn parse_scalar<F: Scalar>(s: &str) -> Option<F> {
    F::from_str(s.trim()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::{BigRational, Rational64};

    #[test]
    fn parses_fractions() {
        let q: BigRational = parse_scalar("-3/6").unwrap();
        assert_eq!(q, Ratio::new(BigInt::from(-1), BigInt::from(2)));
        let r: Rational64 = parse_scalar(" 4 ").unwrap();
        assert_eq!(r, Rational64::from_integer(4));
        assert!(parse_scalar::<Rational64>("x").is_none());
    }

    #[test]
    fn sign_helper() {
        assert_eq!(Rational64::sign(true), Rational64::from_integer(-1));
        assert_eq!(BigRational::from_frac(1, 2) * BigRational::from_int(2), BigRational::from_int(1));
    }
}
