//! Rational function fields F(t) and the ℂ((t)) square-class viewpoint on ℚ(t).

use std::fmt;

use num_bigint::{BigInt, BigUint};

use super::{Field, Rationals, SquareClassKind};
use crate::error::{Error, Result};
use crate::poly::{raw, DensePoly};

/// num/den with den monic and gcd(num, den) = 1; zero is 0/1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn<E> {
    num: Vec<E>,
    den: Vec<E>,
}

impl<E: fmt::Debug> fmt::Debug for RatFn<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.num, self.den)
    }
}

impl<E> RatFn<E> {
    pub fn numer(&self) -> &[E] {
        &self.num
    }
    pub fn denom(&self) -> &[E] {
        &self.den
    }
}

#[derive(Clone, PartialEq)]
pub struct RationalFunctions<F: Field> {
    base: F,
    var: String,
}

impl<F: Field> fmt::Debug for RationalFunctions<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl<F: Field> RationalFunctions<F> {
    pub fn new(base: &F, var: &str) -> Self {
        RationalFunctions {
            base: base.clone(),
            var: var.to_string(),
        }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// The transcendental generator t.
    pub fn gen(&self) -> RatFn<F::Elem> {
        self.from_poly(&DensePoly::x(&self.base))
    }

    pub fn from_poly(&self, p: &DensePoly<F>) -> RatFn<F::Elem> {
        RatFn {
            num: p.coeffs().to_vec(),
            den: vec![self.base.one()],
        }
    }

    pub fn from_base(&self, c: &F::Elem) -> RatFn<F::Elem> {
        self.make(vec![c.clone()], vec![self.base.one()])
    }

    pub fn numer_poly(&self, a: &RatFn<F::Elem>) -> DensePoly<F> {
        DensePoly::new(&self.base, a.num.clone())
    }

    pub fn denom_poly(&self, a: &RatFn<F::Elem>) -> DensePoly<F> {
        DensePoly::new(&self.base, a.den.clone())
    }

    /// Polynomial value, if the denominator is constant.
    pub fn as_poly(&self, a: &RatFn<F::Elem>) -> Option<DensePoly<F>> {
        (a.den.len() == 1).then(|| self.numer_poly(a))
    }

    /// Specializes t ↦ v; `None` at a pole.
    pub fn eval(&self, a: &RatFn<F::Elem>, v: &F::Elem) -> Option<F::Elem> {
        let d = raw::eval(&self.base, &a.den, v);
        self.base.div(&raw::eval(&self.base, &a.num, v), &d)
    }

    pub fn make(&self, num: Vec<F::Elem>, den: Vec<F::Elem>) -> RatFn<F::Elem> {
        let b = &self.base;
        let num = raw::trim(b, num);
        let den = raw::trim(b, den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return RatFn {
                num,
                den: vec![b.one()],
            };
        }
        if den.len() == 1 {
            let inv = b.inv(&den[0]).expect("unit");
            return RatFn {
                num: raw::scale(b, &num, &inv),
                den: vec![b.one()],
            };
        }
        let (q, r) = raw::divrem(b, &num, &den).expect("unit leading coefficient");
        if r.is_empty() {
            return RatFn {
                num: q,
                den: vec![b.one()],
            };
        }
        let g = raw::gcd(b, &num, &den);
        let (num, den) = if g.len() > 1 {
            (
                raw::divrem(b, &num, &g).expect("unit").0,
                raw::divrem(b, &den, &g).expect("unit").0,
            )
        } else {
            (num, den)
        };
        let inv = b.inv(den.last().expect("nonzero")).expect("unit");
        RatFn {
            num: raw::scale(b, &num, &inv),
            den: raw::scale(b, &den, &inv),
        }
    }

    fn ord0(&self, v: &[F::Elem]) -> i64 {
        v.iter().take_while(|c| self.base.is_zero(c)).count() as i64
    }

    /// Order of vanishing at t = 0.
    pub fn ord_at_zero(&self, a: &RatFn<F::Elem>) -> Option<i64> {
        if a.num.is_empty() {
            None
        } else {
            Some(self.ord0(&a.num) - self.ord0(&a.den))
        }
    }
}

impl<F: Field> Field for RationalFunctions<F> {
    type Elem = RatFn<F::Elem>;

    fn zero(&self) -> RatFn<F::Elem> {
        RatFn {
            num: Vec::new(),
            den: vec![self.base.one()],
        }
    }
    fn one(&self) -> RatFn<F::Elem> {
        RatFn {
            num: vec![self.base.one()],
            den: vec![self.base.one()],
        }
    }
    fn is_zero(&self, a: &RatFn<F::Elem>) -> bool {
        a.num.is_empty()
    }
    fn add(&self, a: &RatFn<F::Elem>, b: &RatFn<F::Elem>) -> RatFn<F::Elem> {
        let f = &self.base;
        if a.den == b.den {
            if a.den.len() == 1 {
                return RatFn {
                    num: raw::add(f, &a.num, &b.num),
                    den: a.den.clone(),
                };
            }
            return self.make(raw::add(f, &a.num, &b.num), a.den.clone());
        }
        let num = raw::add(f, &raw::mul(f, &a.num, &b.den), &raw::mul(f, &b.num, &a.den));
        self.make(num, raw::mul(f, &a.den, &b.den))
    }
    fn sub(&self, a: &RatFn<F::Elem>, b: &RatFn<F::Elem>) -> RatFn<F::Elem> {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &RatFn<F::Elem>) -> RatFn<F::Elem> {
        RatFn {
            num: raw::neg(&self.base, &a.num),
            den: a.den.clone(),
        }
    }
    fn mul(&self, a: &RatFn<F::Elem>, b: &RatFn<F::Elem>) -> RatFn<F::Elem> {
        let f = &self.base;
        if a.num.is_empty() || b.num.is_empty() {
            return self.zero();
        }
        if a.den.len() == 1 && b.den.len() == 1 {
            return RatFn {
                num: raw::mul(f, &a.num, &b.num),
                den: a.den.clone(),
            };
        }
        self.make(raw::mul(f, &a.num, &b.num), raw::mul(f, &a.den, &b.den))
    }
    fn inv(&self, a: &RatFn<F::Elem>) -> Option<RatFn<F::Elem>> {
        if a.num.is_empty() {
            return None;
        }
        Some(self.make(a.den.clone(), a.num.clone()))
    }
    fn from_bigint(&self, n: &BigInt) -> RatFn<F::Elem> {
        self.from_base(&self.base.from_bigint(n))
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn is_square(&self, a: &RatFn<F::Elem>) -> Result<bool> {
        if a.num.is_empty() {
            return Err(Error::ZeroSquareClass);
        }
        Err(Error::UnsupportedField(self.describe()))
    }
    fn square_class_kind(&self) -> SquareClassKind {
        SquareClassKind::Opaque
    }
    fn describe(&self) -> String {
        format!("{}({})", self.base.describe(), self.var)
    }
    fn fmt_elem(&self, a: &RatFn<F::Elem>) -> String {
        let n = self.numer_poly(a).fmt_var(&self.var);
        if a.den.len() == 1 {
            n
        } else {
            let d = self.denom_poly(a).fmt_var(&self.var);
            format!("({n})/({d})")
        }
    }
    fn finite_order(&self) -> Option<BigUint> {
        None
    }
}

/// ℚ(t) arithmetic with ℂ((t)) square classes: a is a square iff ν_t(a) is even.
#[derive(Clone, PartialEq)]
pub struct LaurentView {
    inner: RationalFunctions<Rationals>,
}

impl fmt::Debug for LaurentView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl LaurentView {
    pub fn new(var: &str) -> Self {
        LaurentView {
            inner: RationalFunctions::new(&Rationals, var),
        }
    }

    pub fn functions(&self) -> &RationalFunctions<Rationals> {
        &self.inner
    }

    pub fn gen(&self) -> RatFn<num_rational::BigRational> {
        self.inner.gen()
    }
}

impl Field for LaurentView {
    type Elem = RatFn<num_rational::BigRational>;

    fn zero(&self) -> Self::Elem {
        self.inner.zero()
    }
    fn one(&self) -> Self::Elem {
        self.inner.one()
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.inner.is_zero(a)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.inner.add(a, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.inner.sub(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.inner.neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.inner.mul(a, b)
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.inner.inv(a)
    }
    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        self.inner.from_bigint(n)
    }
    fn from_rational(&self, q: &num_rational::BigRational) -> Option<Self::Elem> {
        Some(self.inner.from_base(q))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn is_square(&self, a: &Self::Elem) -> Result<bool> {
        match self.inner.ord_at_zero(a) {
            None => Err(Error::ZeroSquareClass),
            Some(v) => Ok(v % 2 == 0),
        }
    }
    fn square_class_kind(&self) -> SquareClassKind {
        SquareClassKind::Laurent
    }
    fn describe(&self) -> String {
        format!("C(({}))", self.inner.var())
    }
    fn fmt_elem(&self, a: &Self::Elem) -> String {
        self.inner.fmt_elem(a)
    }
    fn valuation(&self, a: &Self::Elem) -> Option<i64> {
        self.inner.ord_at_zero(a)
    }
}
