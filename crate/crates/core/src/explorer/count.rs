//! Projective point counts of plane curves over 𝔽_p, and the genus-one
//! comparison for C_2.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{fraction_cell, integer_cell, weierstrass_p, BivariatePoly, Table};
use crate::error::{Error, Result};
use crate::field::prime::{is_prime, primes_in};

fn reduce(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn horner(c: &[u64], x: u64, p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, v| (mulmod(acc, x, p) + v) % p)
}

fn count_roots(c: &[u64], p: u64) -> u64 {
    if c.iter().all(|v| *v == 0) {
        return p;
    }
    (0..p).filter(|&x| horner(c, x, p) == 0).count() as u64
}

/// Projective points of the closure of P(x, a) = 0 in ℙ²_{x,a,z} over 𝔽_p.
///
/// Good reduction here means: p odd, p prime to every denominator, and the
/// top-degree form nonzero mod p.
pub fn count_points_projective(poly: &BivariatePoly, p: u64) -> Result<u64> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not an odd prime")));
    }
    let d = poly
        .total_degree()
        .ok_or_else(|| Error::Precondition("zero polynomial".into()))?;
    let (ints, den) = poly.integral();
    if (&den % BigInt::from(p)).is_zero() {
        return Err(Error::BadReductionPrime(p));
    }
    let dx = poly.degree_x().unwrap_or(0);
    let da = ints.keys().map(|(_, j)| *j).max().unwrap_or(0);
    // rows[i][j] = c_{ij} mod p
    let mut rows = vec![vec![0u64; da + 1]; dx + 1];
    for ((i, j), c) in &ints {
        rows[*i][*j] = reduce(c, p);
    }
    let mut top = vec![0u64; d + 1];
    for ((i, j), c) in &ints {
        if i + j == d {
            top[*i] = reduce(c, p);
        }
    }
    if top.iter().all(|v| *v == 0) {
        return Err(Error::BadReductionPrime(p));
    }
    let mut count = 0u64;
    let mut cx = vec![0u64; dx + 1];
    for a in 0..p {
        for (i, r) in rows.iter().enumerate() {
            cx[i] = horner(r, a, p);
        }
        count += count_roots(&cx, p);
    }
    // z = 0: (x : 1 : 0) with F_d(x, 1) = 0, and (1 : 0 : 0) if F_d(1, 0) = 0.
    count += count_roots(&top, p);
    if top[d] == 0 {
        count += 1;
    }
    Ok(count)
}

/// #E(𝔽_p) for E: y² = −x³/4 + 1728, point at infinity included.
pub fn elliptic_cm_count(p: u64) -> Result<u64> {
    if p <= 3 || !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not a prime > 3")));
    }
    let inv4 = crate::field::Fp::new(p)?.powmod(4, p - 2);
    let c = (p - inv4) % p;
    let k = 1728 % p;
    let half = (p - 1) / 2;
    let fp = crate::field::Fp::new(p)?;
    let mut count = 1u64;
    for x in 0..p {
        let v = (mulmod(c, mulmod(mulmod(x, x, p), x, p), p) + k) % p;
        count += if v == 0 {
            1
        } else if fp.powmod(v, half) == 1 {
            2
        } else {
            0
        };
    }
    Ok(count)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointCountRecord {
    pub n: usize,
    pub p: u64,
    pub count: u64,
    /// count − p − 1.
    pub e: i64,
}

impl PointCountRecord {
    pub fn new(n: usize, p: u64, count: u64) -> Self {
        PointCountRecord {
            n,
            p,
            count,
            e: count as i64 - p as i64 - 1,
        }
    }

    /// (2n−1)(2n−2), twice the arithmetic genus of a plane curve of degree 2n.
    pub fn scale(&self) -> i64 {
        (2 * self.n as i64 - 1) * (2 * self.n as i64 - 2)
    }

    /// ẽ·√p = e/((2n−1)(2n−2)).
    pub fn e_normalized_numerator(&self) -> BigRational {
        BigRational::new(self.e.into(), self.scale().into())
    }

    /// e² ≤ ((2n−1)(2n−2))²·p.
    pub fn hasse_weil_ok(&self) -> bool {
        let e = BigInt::from(self.e);
        let s = BigInt::from(self.scale());
        &e * &e <= &s * &s * BigInt::from(self.p)
    }
}

pub fn points_table(records: &[PointCountRecord]) -> Table {
    Table {
        header: ["n", "p", "count", "e", "e_normalized_numerator", "denominator_convention"]
            .map(String::from)
            .to_vec(),
        rows: records
            .iter()
            .map(|r| {
                vec![
                    integer_cell(r.n as i64),
                    integer_cell(r.p),
                    integer_cell(r.count),
                    integer_cell(r.e),
                    fraction_cell(&r.e_normalized_numerator()),
                    "sqrt(p)".to_string(),
                ]
            })
            .collect(),
    }
}

/// Compares a with b·√p exactly.
pub fn cmp_with_sqrt(a: &BigInt, b: &BigInt, p: u64) -> Ordering {
    let sa = a.signum();
    let sb = b.signum();
    if sa != sb {
        return sa.cmp(&sb);
    }
    let lhs = a * a;
    let rhs = b * b * BigInt::from(p);
    if sa.is_negative() {
        rhs.cmp(&lhs)
    } else {
        lhs.cmp(&rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Histogram {
    pub bins: usize,
    pub counts: Vec<u64>,
}

impl Histogram {
    /// [lo, hi) of bin k on [−1, 1]; the last bin is closed.
    pub fn edges(&self, k: usize) -> (BigRational, BigRational) {
        let w = BigRational::new(2.into(), (self.bins as i64).into());
        let lo = BigRational::from_integer((-1).into()) + &w * BigRational::from_integer((k as i64).into());
        let hi = &lo + &w;
        (lo, hi)
    }

    pub fn table(&self) -> Table {
        Table {
            header: ["bin_lo", "bin_hi", "frequency"].map(String::from).to_vec(),
            rows: (0..self.bins)
                .map(|k| {
                    let (lo, hi) = self.edges(k);
                    vec![fraction_cell(&lo), fraction_cell(&hi), integer_cell(self.counts[k])]
                })
                .collect(),
        }
    }
}

/// Bins ẽ/2 = e/(2(2n−1)(2n−2)√p) into `bins` uniform bins on [−1, 1].
pub fn histogram(records: &[PointCountRecord], bins: usize) -> Histogram {
    let mut h = Histogram {
        bins,
        counts: vec![0; bins],
    };
    for r in records {
        // v ≥ lo_k  ⇔  e·den ≥ num·2(2n−1)(2n−2)·√p with lo_k = num/den.
        let scale = BigInt::from(2 * r.scale());
        let e = BigInt::from(r.e);
        let mut bin = None;
        for k in (0..bins).rev() {
            let (lo, _) = h.edges(k);
            let ord = cmp_with_sqrt(&(&e * lo.denom()), &(lo.numer() * &scale), r.p);
            if ord != Ordering::Less {
                bin = Some(k);
                break;
            }
        }
        // ẽ/2 < −1 cannot occur within the Hasse–Weil bound.
        if let Some(k) = bin {
            h.counts[k] += 1;
        }
    }
    h
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub p: u64,
    pub c2_count: u64,
    pub elliptic_count: u64,
    pub legendre_3: i8,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SatoTateReport {
    pub records: Vec<PointCountRecord>,
    pub identities: Vec<IdentityCheck>,
    /// Over primes p ≡ 1 mod 3 only.
    pub histogram: Histogram,
}

impl SatoTateReport {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|c| c.holds)
    }
}

/// #C_2(𝔽_p) against #E(𝔽_p) − (3|p) for all primes 3 < p ≤ bound.
pub fn sato_tate_c2(prime_bound: u64) -> Result<SatoTateReport> {
    if prime_bound < 5 {
        return Err(Error::Precondition("prime bound must be ≥ 5".into()));
    }
    let c2 = weierstrass_p(2)?;
    let mut records = Vec::new();
    let mut identities = Vec::new();
    for p in primes_in(5, prime_bound) {
        let count = count_points_projective(&c2, p)?;
        let ec = elliptic_cm_count(p)?;
        let leg = crate::field::legendre_symbol(&BigInt::from(3), p)?;
        identities.push(IdentityCheck {
            p,
            c2_count: count,
            elliptic_count: ec,
            legendre_3: leg,
            holds: count as i64 == ec as i64 - leg as i64,
        });
        records.push(PointCountRecord::new(2, p, count));
    }
    let split: Vec<PointCountRecord> = records.iter().filter(|r| r.p % 3 == 1).cloned().collect();
    Ok(SatoTateReport {
        histogram: histogram(&split, 40),
        records,
        identities,
    })
}

/// Point counts of C_n for all good primes 3 ≤ p ≤ bound.
pub fn count_family(n: usize, prime_bound: u64) -> Result<Vec<PointCountRecord>> {
    let pn = weierstrass_p(n)?;
    let mut out = Vec::new();
    for p in primes_in(3, prime_bound) {
        match count_points_projective(&pn, p) {
            Ok(c) => out.push(PointCountRecord::new(n, p, c)),
            Err(Error::BadReductionPrime(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conic_and_line() {
        let conic = BivariatePoly::from_i64_terms(&[((2, 0), 1), ((0, 2), 1), ((0, 0), 1)]);
        assert_eq!(count_points_projective(&conic, 3).unwrap(), 4);
        let line = BivariatePoly::from_i64_terms(&[((1, 0), 2), ((0, 1), -1), ((0, 0), 5)]);
        for p in [3, 7, 11] {
            assert_eq!(count_points_projective(&line, p).unwrap(), p + 1);
        }
    }

    #[test]
    fn bad_reduction() {
        let c2 = weierstrass_p(2).unwrap();
        assert_eq!(count_points_projective(&c2, 3), Err(Error::BadReductionPrime(3)));
        assert!(count_points_projective(&c2, 4).is_err());
    }

    #[test]
    fn sqrt_comparison() {
        assert_eq!(cmp_with_sqrt(&3.into(), &1.into(), 9), Ordering::Equal);
        assert_eq!(cmp_with_sqrt(&(-3).into(), &(-1).into(), 8), Ordering::Less);
        assert_eq!(cmp_with_sqrt(&(-2).into(), &1.into(), 2), Ordering::Less);
    }
}
