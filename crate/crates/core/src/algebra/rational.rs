//! Exact rationals for numeric specialization of `L`.

use num_bigint::BigInt;

pub type ExactRational = num_rational::BigRational;

pub fn rational(num: i64, den: i64) -> ExactRational {
    ExactRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(n))
}
