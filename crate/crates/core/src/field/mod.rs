//! Exact base and residue fields.
//!
//! Every field is a cheap-to-clone context object; elements are plain values
//! in canonical form so that `==` on elements is field equality.

pub mod algebraic;
pub mod descriptor;
pub mod extension;
pub mod prime;
pub mod ratfunc;
pub mod rational;

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::Result;

pub use algebraic::{algebraic_sign, AlgebraicReal};
pub use descriptor::FieldDescriptor;
pub use extension::Extension;
pub use prime::{legendre_symbol, Fp};
pub use ratfunc::{LaurentView, RatFn, RationalFunctions};
pub use rational::{Rationals, Reals};

/// How square classes of a field reduce to computable invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareClassKind {
    /// Signs of rational representatives.
    Real,
    /// Discriminant modulo squares of a finite field.
    Finite,
    /// Parity of the t-adic valuation, constants being squares.
    Laurent,
    /// Number fields and function fields without a canonical reduction.
    Opaque,
}

pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly when `a` is not a unit.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    fn is_square(&self, a: &Self::Elem) -> Result<bool>;
    fn square_class_kind(&self) -> SquareClassKind;
    fn describe(&self) -> String;
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    /// `None` when the denominator vanishes in the field.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem> {
        let d = self.inv(&self.from_bigint(q.denom()))?;
        Some(self.mul(&self.from_bigint(q.numer()), &d))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn pow_big(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Sign of an element of an ordered field.
    fn sign(&self, _a: &Self::Elem) -> Option<i8> {
        None
    }

    /// t-adic valuation for function-field viewpoints.
    fn valuation(&self, _a: &Self::Elem) -> Option<i64> {
        None
    }

    /// Integer representative in `0..p` for prime fields.
    fn integral_lift(&self, _a: &Self::Elem) -> Option<BigInt> {
        None
    }

    /// Number of elements for finite fields.
    fn finite_order(&self) -> Option<BigUint> {
        None
    }
}

pub trait FiniteField: Field {
    fn order(&self) -> BigUint {
        self.finite_order().expect("finite field has an order")
    }

    /// Degree over the prime field.
    fn absolute_degree(&self) -> usize;

    /// The element whose coordinates are the base-p digits of `i`.
    fn element_at(&self, i: u64) -> Self::Elem;

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Square root by Tonelli–Shanks; `None` for non-squares.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        let q1 = self.order() - BigUint::one();
        let mut s = 0u64;
        let mut t = q1.clone();
        while (&t & BigUint::one()).is_zero() {
            t >>= 1;
            s += 1;
        }
        let half = &q1 >> 1;
        if !self.is_one(&self.pow_big(a, &half)) {
            return None;
        }
        let minus_one = self.neg(&self.one());
        let mut z = None;
        for i in 2u64.. {
            let c = self.element_at(i);
            if !self.is_zero(&c) && self.pow_big(&c, &half) == minus_one {
                z = Some(c);
                break;
            }
        }
        let z = z.expect("a non-residue exists in odd characteristic");
        let mut m = s;
        let mut c = self.pow_big(&z, &t);
        let mut tt = self.pow_big(a, &t);
        let mut r = self.pow_big(a, &((&t + BigUint::one()) >> 1));
        while !self.is_one(&tt) {
            let mut i = 0u64;
            let mut t2 = tt.clone();
            while !self.is_one(&t2) {
                t2 = self.square(&t2);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = self.square(&b);
            }
            m = i;
            c = self.square(&b);
            tt = self.mul(&tt, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }
}

/// Exact binomial coefficient C(n, k) as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// C(n, 2) for small arguments.
pub fn choose2(n: i64) -> i64 {
    n * (n - 1) / 2
}
