//! Real algebraic numbers as (squarefree minpoly, isolating interval).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::rational::{fmt_rational, sign_of};
use super::Rationals;
use crate::poly::sturm::{primitive_positive, SturmSequence};
use crate::poly::DensePoly;

/// Either an exact rational root, or an open interval (lo, hi) with
/// q(lo)·q(hi) < 0 containing exactly one root of the squarefree q.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicReal {
    minpoly: DensePoly<Rationals>,
    lo: BigRational,
    hi: BigRational,
    exact: bool,
}

impl AlgebraicReal {
    pub fn exact(minpoly: DensePoly<Rationals>, r: BigRational) -> Self {
        debug_assert!(minpoly.eval(&r).is_zero());
        AlgebraicReal {
            minpoly,
            lo: r.clone(),
            hi: r,
            exact: true,
        }
    }

    /// Caller guarantees exactly one root in (lo, hi) and a sign change.
    pub fn from_isolating(minpoly: DensePoly<Rationals>, lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(sign_of(&minpoly.eval(&lo)) * sign_of(&minpoly.eval(&hi)) < 0);
        AlgebraicReal {
            minpoly,
            lo,
            hi,
            exact: false,
        }
    }

    /// Checked constructor for user-supplied data.
    pub fn new(minpoly: DensePoly<Rationals>, lo: BigRational, hi: BigRational) -> Option<Self> {
        if lo > hi {
            return None;
        }
        let q = primitive_positive(&minpoly);
        if lo == hi {
            return q.eval(&lo).is_zero().then(|| Self::exact(q, lo));
        }
        let slo = sign_of(&q.eval(&lo));
        let shi = sign_of(&q.eval(&hi));
        if slo * shi >= 0 {
            return None;
        }
        let sq = q.gcd(&q.derivative());
        if sq.degree() != Some(0) {
            return None;
        }
        let st = SturmSequence::new(&q);
        (st.count_in(&lo, &hi) == 1).then(|| Self::from_isolating(q, lo, hi))
    }

    pub fn minpoly(&self) -> &DensePoly<Rationals> {
        &self.minpoly
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Halves the interval, or pins the root when the midpoint hits it.
    pub fn refine(&mut self) {
        if self.exact {
            return;
        }
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        let sm = sign_of(&self.minpoly.eval(&mid));
        if sm == 0 {
            self.lo = mid.clone();
            self.hi = mid;
            self.exact = true;
        } else if sm == sign_of(&self.minpoly.eval(&self.lo)) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    pub fn refined_below(&self, width: &BigRational) -> Self {
        let mut r = self.clone();
        while !r.exact && &r.width() > width {
            r.refine();
        }
        r
    }

    pub fn describe(&self) -> String {
        if self.exact {
            fmt_rational(&self.lo)
        } else {
            format!(
                "root of {} in ({}, {})",
                self.minpoly,
                fmt_rational(&self.lo),
                fmt_rational(&self.hi)
            )
        }
    }
}

/// Exact sign of g(γ).
pub fn algebraic_sign(gamma: &AlgebraicReal, g: &DensePoly<Rationals>) -> i8 {
    if g.is_zero() {
        return 0;
    }
    if gamma.exact {
        return sign_of(&g.eval(&gamma.lo));
    }
    let d = gamma.minpoly.gcd(g);
    if d.degree().unwrap_or(0) > 0
        && sign_of(&d.eval(&gamma.lo)) * sign_of(&d.eval(&gamma.hi)) < 0
    {
        return 0;
    }
    let gs = SturmSequence::new(g);
    let mut r = gamma.clone();
    loop {
        if r.exact {
            return sign_of(&g.eval(&r.lo));
        }
        let s = sign_of(&g.eval(&r.lo));
        if s != 0 && gs.count_in(&r.lo, &r.hi) == 0 {
            return s;
        }
        r.refine();
    }
}
