//! Dense univariate polynomials with Hasse derivatives.

pub mod factor;
pub mod raw;
pub mod resultant;
pub mod series;
pub mod sturm;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::field::{binomial, Field};

pub use factor::{factor_over_fq, squarefree_decomposition};
pub use resultant::{discriminant, resultant};
pub use series::TruncatedSeries;
pub use sturm::isolate_real_roots;

/// Coefficients lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq)]
pub struct DensePoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> DensePoly<F> {
    pub fn new(field: &F, coeffs: Vec<F::Elem>) -> Self {
        let coeffs = raw::trim(field, coeffs);
        DensePoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_i64s(field: &F, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn from_bigints(field: &F, coeffs: &[BigInt]) -> Self {
        Self::new(field, coeffs.iter().map(|c| field.from_bigint(c)).collect())
    }

    pub fn zero(field: &F) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    pub fn x(field: &F) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &F, c: F::Elem, k: usize) -> Self {
        let mut v = vec![field.zero(); k];
        v.push(c);
        Self::new(field, v)
    }

    /// `x - a`.
    pub fn linear_root(field: &F, a: &F::Elem) -> Self {
        Self::new(field, vec![field.neg(a), field.one()])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial at -1.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn lc(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| self.field.is_one(c))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn wrap(&self, coeffs: Vec<F::Elem>) -> Self {
        DensePoly {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.wrap(raw::scale(&self.field, &self.coeffs, c))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Panics on a zero divisor; fields always have unit leading coefficients.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let (q, r) = raw::divrem(&self.field, &self.coeffs, &d.coeffs)
            .expect("division by a polynomial with unit leading coefficient");
        (self.wrap(q), self.wrap(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    pub fn monic(&self) -> Self {
        self.wrap(raw::monic(&self.field, &self.coeffs))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        self.wrap(raw::gcd(&self.field, &self.coeffs, &other.coeffs))
    }

    /// `(g, s, t)` with `s·self + t·other = g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let (g, s, t) = raw::xgcd(&self.field, &self.coeffs, &other.coeffs);
        (self.wrap(g), self.wrap(s), self.wrap(t))
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        raw::eval(&self.field, &self.coeffs, x)
    }

    /// Usual formal derivative.
    pub fn derivative(&self) -> Self {
        let f = &self.field;
        self.wrap(raw::trim(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
                .collect(),
        ))
    }

    /// D^k: Σ_{i≥k} C(i,k)·a_i·x^{i−k} with integer binomials mapped into the field.
    pub fn hasse(&self, k: usize) -> Self {
        let f = &self.field;
        if k == 0 {
            return self.clone();
        }
        self.wrap(raw::trim(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(k)
                .map(|(i, c)| f.mul(&f.from_bigint(&binomial(i, k)), c))
                .collect(),
        ))
    }

    /// Coefficients `(D^i p)(a)` of the expansion in powers of `x − a`.
    pub fn taylor(&self, a: &F::Elem) -> Vec<F::Elem> {
        // Repeated synthetic division by x − a.
        let f = &self.field;
        let mut work = self.coeffs.clone();
        let mut out = Vec::with_capacity(work.len());
        while !work.is_empty() {
            let mut carry = f.zero();
            for c in work.iter_mut().rev() {
                let v = f.add(c, &f.mul(&carry, a));
                carry = v.clone();
                *c = v;
            }
            out.push(work.remove(0));
        }
        out
    }

    /// Recomposes Σ c_i (x − a)^i.
    pub fn from_taylor(field: &F, coeffs: &[F::Elem], a: &F::Elem) -> Self {
        let shift = Self::linear_root(field, a);
        let mut acc = Self::zero(field);
        for c in coeffs.iter().rev() {
            acc = &(&acc * &shift) + &Self::constant(field, c.clone());
        }
        acc
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(&self.field, c.clone());
        }
        acc
    }

    pub fn map<G: Field>(&self, target: &G, phi: impl Fn(&F::Elem) -> G::Elem) -> DensePoly<G> {
        DensePoly::new(target, self.coeffs.iter().map(phi).collect())
    }

    /// Fallible coefficient map, e.g. reduction of rationals modulo p.
    pub fn try_map<G: Field>(
        &self,
        target: &G,
        phi: impl Fn(&F::Elem) -> Option<G::Elem>,
    ) -> Option<DensePoly<G>> {
        let v: Option<Vec<_>> = self.coeffs.iter().map(phi).collect();
        v.map(|v| DensePoly::new(target, v))
    }

    /// Multiplicity of `a` as a root.
    pub fn root_multiplicity(&self, a: &F::Elem) -> usize {
        let t = self.taylor(a);
        t.iter().take_while(|c| self.field.is_zero(c)).count()
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let cs = f.fmt_elem(c);
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = if i == 0 {
                wrap_coeff(&cs)
            } else if cs == "1" {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else {
                format!("{}*{mono}", wrap_coeff(&cs))
            };
            terms.push(term);
        }
        let mut out = String::new();
        for (k, t) in terms.iter().enumerate() {
            if k == 0 {
                out.push_str(t);
            } else if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        out
    }
}

fn wrap_coeff(s: &str) -> String {
    let body = s.strip_prefix('-').unwrap_or(s);
    if body.contains(['+', ' ', '*']) || body[1.min(body.len())..].contains('-') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

impl<F: Field> fmt::Debug for DensePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("x"))
    }
}

impl<F: Field> fmt::Display for DensePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("x"))
    }
}

impl<F: Field> Add for &DensePoly<F> {
    type Output = DensePoly<F>;
    fn add(self, rhs: Self) -> DensePoly<F> {
        self.wrap(raw::add(&self.field, &self.coeffs, &rhs.coeffs))
    }
}

impl<F: Field> Sub for &DensePoly<F> {
    type Output = DensePoly<F>;
    fn sub(self, rhs: Self) -> DensePoly<F> {
        self.wrap(raw::sub(&self.field, &self.coeffs, &rhs.coeffs))
    }
}

impl<F: Field> Mul for &DensePoly<F> {
    type Output = DensePoly<F>;
    fn mul(self, rhs: Self) -> DensePoly<F> {
        self.wrap(raw::mul(&self.field, &self.coeffs, &rhs.coeffs))
    }
}

impl<F: Field> Neg for &DensePoly<F> {
    type Output = DensePoly<F>;
    fn neg(self) -> DensePoly<F> {
        self.wrap(raw::neg(&self.field, &self.coeffs))
    }
}

impl<F: Field> Add for DensePoly<F> {
    type Output = DensePoly<F>;
    fn add(self, rhs: Self) -> DensePoly<F> {
        &self + &rhs
    }
}

impl<F: Field> Sub for DensePoly<F> {
    type Output = DensePoly<F>;
    fn sub(self, rhs: Self) -> DensePoly<F> {
        &self - &rhs
    }
}

impl<F: Field> Mul for DensePoly<F> {
    type Output = DensePoly<F>;
    fn mul(self, rhs: Self) -> DensePoly<F> {
        &self * &rhs
    }
}

impl<F: Field> Neg for DensePoly<F> {
    type Output = DensePoly<F>;
    fn neg(self) -> DensePoly<F> {
        -&self
    }
}

/// Polynomials over `F` as a ring, for division-free determinants.
pub struct PolyRing<'a, F: Field>(pub &'a F);

impl<F: Field> crate::linalg::Ring for PolyRing<'_, F> {
    type E = DensePoly<F>;
    fn zero(&self) -> DensePoly<F> {
        DensePoly::zero(self.0)
    }
    fn one(&self) -> DensePoly<F> {
        DensePoly::one(self.0)
    }
    fn add(&self, a: &DensePoly<F>, b: &DensePoly<F>) -> DensePoly<F> {
        a + b
    }
    fn sub(&self, a: &DensePoly<F>, b: &DensePoly<F>) -> DensePoly<F> {
        a - b
    }
    fn mul(&self, a: &DensePoly<F>, b: &DensePoly<F>) -> DensePoly<F> {
        a * b
    }
    fn neg(&self, a: &DensePoly<F>) -> DensePoly<F> {
        -a
    }
}
