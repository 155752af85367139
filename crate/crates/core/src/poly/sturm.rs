//! Sturm sequences over ℚ and real-root isolation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::DensePoly;
use crate::error::{Error, Result};
use crate::field::rational::sign_of;
use crate::field::{AlgebraicReal, Rationals};

/// Positive rational multiple of `p` with coprime integer coefficients.
pub fn primitive_positive(p: &DensePoly<Rationals>) -> DensePoly<Rationals> {
    if p.is_zero() {
        return p.clone();
    }
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    DensePoly::new(
        &Rationals,
        ints.into_iter()
            .map(|c| BigRational::from_integer(c / &g))
            .collect(),
    )
}

/// p / gcd(p, p′), made primitive with the sign of p's leading coefficient.
pub fn squarefree_part(p: &DensePoly<Rationals>) -> DensePoly<Rationals> {
    let g = p.gcd(&p.derivative());
    let q = if g.degree().unwrap_or(0) == 0 {
        p.clone()
    } else {
        p.exact_div(&g).expect("gcd divides")
    };
    primitive_positive(&q)
}

#[derive(Debug, Clone)]
pub struct SturmSequence {
    seq: Vec<DensePoly<Rationals>>,
}

impl SturmSequence {
    pub fn new(p: &DensePoly<Rationals>) -> Self {
        let mut seq = vec![primitive_positive(p)];
        if p.is_zero() {
            return SturmSequence { seq };
        }
        let mut next = primitive_positive(&p.derivative());
        while !next.is_zero() {
            let r = seq.last().expect("nonempty").rem(&next);
            seq.push(next);
            next = primitive_positive(&-&r);
        }
        SturmSequence { seq }
    }

    fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::count_variations(self.seq.iter().map(|p| sign_of(&p.eval(x))))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::count_variations(self.seq.iter().map(|p| {
            let s = sign_of(p.lc().expect("nonzero"));
            let odd = p.degree().unwrap_or(0) % 2 == 1;
            if !positive && odd {
                -s
            } else {
                s
            }
        }))
    }

    /// Distinct roots in (lo, hi].
    pub fn count_in(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations_at(lo) - self.variations_at(hi)
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

/// Cauchy bound: all real roots lie in (−B, B).
pub fn root_bound(p: &DensePoly<Rationals>) -> BigRational {
    let lc = p.lc().expect("nonzero").abs();
    let m = p
        .coeffs()
        .iter()
        .map(|c| c.abs() / &lc)
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    (m + BigRational::one()).ceil()
}

/// One isolating interval or exact rational per distinct real root, in increasing order.
pub fn isolate_real_roots(p: &DensePoly<Rationals>) -> Result<Vec<AlgebraicReal>> {
    if p.is_zero() {
        return Err(Error::ZeroIsolation);
    }
    let q = squarefree_part(p);
    if q.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let sturm = SturmSequence::new(&q);
    let b = root_bound(&q);
    let lo = -b.clone();
    let mut out = Vec::new();
    let n = sturm.count_in(&lo, &b);
    bisect(&q, &sturm, lo, b, n, &mut out);
    Ok(out)
}

/// Invariant: q(lo) ≠ 0 and (lo, hi] holds exactly n roots.
fn bisect(
    q: &DensePoly<Rationals>,
    sturm: &SturmSequence,
    lo: BigRational,
    hi: BigRational,
    n: usize,
    out: &mut Vec<AlgebraicReal>,
) {
    if n == 0 {
        return;
    }
    if n == 1 {
        if q.eval(&hi).is_zero() {
            out.push(AlgebraicReal::exact(q.clone(), hi));
        } else {
            out.push(AlgebraicReal::from_isolating(q.clone(), lo, hi));
        }
        return;
    }
    let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
    if q.eval(&mid).is_zero() {
        // mid is a root: split into (lo, mid), {mid}, (mid, hi].
        let left = sturm.count_in(&lo, &mid) - 1;
        let right = n - left - 1;
        // Shrink towards mid from the left with a non-root endpoint.
        let mut eps = (&mid - &lo) / BigRational::from_integer(BigInt::from(2));
        let mut left_hi = &mid - &eps;
        while q.eval(&left_hi).is_zero() || sturm.count_in(&left_hi, &mid) != 1 {
            eps /= BigRational::from_integer(BigInt::from(2));
            left_hi = &mid - &eps;
        }
        bisect(q, sturm, lo, left_hi.clone(), left, out);
        out.push(AlgebraicReal::exact(q.clone(), mid.clone()));
        let mut eps = (&hi - &mid) / BigRational::from_integer(BigInt::from(2));
        let mut right_lo = &mid + &eps;
        while q.eval(&right_lo).is_zero() || sturm.count_in(&mid, &right_lo) != 0 {
            eps /= BigRational::from_integer(BigInt::from(2));
            right_lo = &mid + &eps;
        }
        bisect(q, sturm, right_lo, hi, right, out);
    } else {
        let left = sturm.count_in(&lo, &mid);
        bisect(q, sturm, lo, mid.clone(), left, out);
        bisect(q, sturm, mid, hi, n - left, out);
    }
}

pub fn sign_at(p: &DensePoly<Rationals>, x: &BigRational) -> i8 {
    sign_of(&p.eval(x))
}
