//! Power series truncated at a fixed precision.

use super::DensePoly;
use crate::field::{binomial, Field};
use crate::linalg::Ring;

/// Σ c_i t^i mod t^prec. `coeffs.len() == prec` always.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
    prec: usize,
}

impl<F: Field> std::fmt::Debug for TruncatedSeries<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let p = DensePoly::new(&self.field, self.coeffs.clone());
        write!(f, "{} + O(t^{})", p.fmt_var("t"), self.prec)
    }
}

impl<F: Field> TruncatedSeries<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>, prec: usize) -> Self {
        coeffs.resize(prec, field.zero());
        TruncatedSeries {
            field: field.clone(),
            coeffs,
            prec,
        }
    }

    pub fn zero(field: &F, prec: usize) -> Self {
        Self::new(field, Vec::new(), prec)
    }

    pub fn constant(field: &F, c: F::Elem, prec: usize) -> Self {
        Self::new(field, vec![c], prec)
    }

    /// The uniformizer t itself.
    pub fn var(field: &F, prec: usize) -> Self {
        Self::new(field, vec![field.zero(), field.one()], prec)
    }

    pub fn from_poly(p: &DensePoly<F>, prec: usize) -> Self {
        Self::new(p.field(), p.coeffs().iter().take(prec).cloned().collect(), prec)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Index of the first nonzero coefficient; `None` if zero to this precision.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.field.is_zero(c))
    }

    pub fn leading(&self) -> Option<(usize, F::Elem)> {
        self.valuation().map(|v| (v, self.coeffs[v].clone()))
    }

    pub fn truncate(&self, prec: usize) -> Self {
        let prec = prec.min(self.prec);
        Self::new(&self.field, self.coeffs[..prec].to_vec(), prec)
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        let f = &self.field;
        let c = (0..prec).map(|i| f.add(&self.coeffs[i], &o.coeffs[i])).collect();
        Self::new(f, c, prec)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        let f = &self.field;
        let c = (0..prec).map(|i| f.sub(&self.coeffs[i], &o.coeffs[i])).collect();
        Self::new(f, c, prec)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|c| f.neg(c)).collect(), self.prec)
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|c| f.mul(c, s)).collect(), self.prec)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        let f = &self.field;
        let mut c = vec![f.zero(); prec];
        for (i, a) in self.coeffs.iter().enumerate().take(prec) {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(prec - i) {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, c, prec)
    }

    /// Multiplicative inverse; `None` unless the constant term is a unit.
    pub fn inverse(&self) -> Option<Self> {
        let f = &self.field;
        let c0 = f.inv(self.coeffs.first()?)?;
        let mut out = vec![f.zero(); self.prec];
        out[0] = c0.clone();
        for n in 1..self.prec {
            let mut s = f.zero();
            for k in 1..=n {
                s = f.add(&s, &f.mul(&self.coeffs[k], &out[n - k]));
            }
            out[n] = f.neg(&f.mul(&s, &c0));
        }
        Some(Self::new(f, out, self.prec))
    }

    /// p(self) by Horner.
    pub fn compose_poly(p: &DensePoly<F>, s: &Self) -> Self {
        let f = p.field();
        let mut acc = Self::zero(f, s.prec);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(s);
            acc.coeffs[0] = f.add(&acc.coeffs[0], c);
        }
        acc
    }

    /// Hasse derivative in t; the precision drops by k.
    pub fn hasse(&self, k: usize) -> Self {
        let f = &self.field;
        let prec = self.prec.saturating_sub(k);
        let c = (0..prec)
            .map(|i| f.mul(&f.from_bigint(&binomial(i + k, k)), &self.coeffs[i + k]))
            .collect();
        Self::new(f, c, prec)
    }
}

/// Ring of series with a common precision, for determinants.
pub struct SeriesRing<'a, F: Field> {
    pub field: &'a F,
    pub prec: usize,
}

impl<F: Field> Ring for SeriesRing<'_, F> {
    type E = TruncatedSeries<F>;

    fn zero(&self) -> Self::E {
        TruncatedSeries::zero(self.field, self.prec)
    }

    fn one(&self) -> Self::E {
        TruncatedSeries::constant(self.field, self.field.one(), self.prec)
    }

    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E {
        a.add(b)
    }

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        a.sub(b)
    }

    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E {
        a.mul(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    #[test]
    fn inverse_of_one_minus_t() {
        let f = Fp::new(13).unwrap();
        let s = TruncatedSeries::new(&f, vec![1, 12], 6);
        let inv = s.inverse().unwrap();
        assert_eq!(inv.coeffs(), &[1, 1, 1, 1, 1, 1]);
        assert_eq!(s.mul(&inv).coeffs(), &[1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn hasse_lowers_precision() {
        let f = Fp::new(7).unwrap();
        let s = TruncatedSeries::new(&f, vec![0, 0, 0, 1], 5);
        let d = s.hasse(2);
        assert_eq!(d.prec(), 3);
        assert_eq!(d.coeffs(), &[0, 3, 0]);
    }
}
