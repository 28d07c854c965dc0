//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders `p/q` in lowest terms, omitting `/q` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_one(r: &Rational) -> bool {
    r.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_reduce() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(format_rational(&rat(2, 4)), "1/2");
        assert_eq!(format_rational(&rat(-3, 1)), "-3");
        assert_eq!(format_rational(&rat(3, -6)), "-1/2");
        assert_eq!(format_rational(&rat_int(0)), "0");
    }
}
