use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::prime::is_perfect_square;
use super::{Field, SquareClassKind};
use crate::error::{Error, Result};

/// ℚ with no canonical square-class reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

/// ℚ viewed inside ℝ: square classes are signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Reals;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_is_square(q: &BigRational) -> Result<bool> {
    if q.is_zero() {
        return Err(Error::ZeroSquareClass);
    }
    Ok(is_perfect_square(q.numer()) && is_perfect_square(q.denom()))
}

macro_rules! rational_arith {
    () => {
        type Elem = BigRational;

        fn zero(&self) -> BigRational {
            BigRational::zero()
        }
        fn one(&self) -> BigRational {
            BigRational::one()
        }
        fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
            a + b
        }
        fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
            a - b
        }
        fn neg(&self, a: &BigRational) -> BigRational {
            -a
        }
        fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
            a * b
        }
        fn inv(&self, a: &BigRational) -> Option<BigRational> {
            if a.is_zero() {
                None
            } else {
                Some(a.recip())
            }
        }
        fn from_bigint(&self, n: &BigInt) -> BigRational {
            BigRational::from_integer(n.clone())
        }
        fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
            Some(q.clone())
        }
        fn characteristic(&self) -> u64 {
            0
        }
        fn fmt_elem(&self, a: &BigRational) -> String {
            fmt_rational(a)
        }
        fn is_zero(&self, a: &BigRational) -> bool {
            a.is_zero()
        }
    };
}

impl Field for Rationals {
    rational_arith!();

    fn is_square(&self, a: &BigRational) -> Result<bool> {
        rational_is_square(a)
    }
    fn square_class_kind(&self) -> SquareClassKind {
        SquareClassKind::Opaque
    }
    fn describe(&self) -> String {
        "Q".into()
    }
    fn sign(&self, a: &BigRational) -> Option<i8> {
        Some(sign_of(a))
    }
}

impl Field for Reals {
    rational_arith!();

    fn is_square(&self, a: &BigRational) -> Result<bool> {
        if a.is_zero() {
            return Err(Error::ZeroSquareClass);
        }
        Ok(a.is_positive())
    }
    fn square_class_kind(&self) -> SquareClassKind {
        SquareClassKind::Real
    }
    fn describe(&self) -> String {
        "R".into()
    }
    fn sign(&self, a: &BigRational) -> Option<i8> {
        Some(sign_of(a))
    }
}

pub fn sign_of(a: &BigRational) -> i8 {
    if a.is_zero() {
        0
    } else if a.is_positive() {
        1
    } else {
        -1
    }
}
