//! Experiments on the atomic inflection polynomials of the Weierstrass
//! family y² = x³ + ax + 2: real-root sweeps over a, and point counts of
//! the plane curves C_n = (P_n(x, a) = 0) over prime fields.

pub mod count;
pub mod sweep;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Rationals, RationalFunctions};
use crate::inflection::{atomic_p, legendre_family, weierstrass_family};
use crate::poly::DensePoly;

pub use count::{
    count_family, count_points_projective, elliptic_cm_count, histogram, points_table, sato_tate_c2,
    Histogram, IdentityCheck, PointCountRecord, SatoTateReport,
};
pub use sweep::{
    conjecture_report, rational_grid, sweep_weierstrass, ConjectureReport, SweepResult, SweepSample,
};

/// Σ c_{ij} x^i a^j over ℚ.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(usize, usize), BigRational>,
}

impl BivariatePoly {
    pub fn new(terms: impl IntoIterator<Item = ((usize, usize), BigRational)>) -> Self {
        let mut out = BTreeMap::new();
        for (k, c) in terms {
            let e: &mut BigRational = out.entry(k).or_insert_with(BigRational::zero);
            *e += c;
        }
        out.retain(|_, c| !c.is_zero());
        BivariatePoly { terms: out }
    }

    pub fn from_i64_terms(terms: &[((usize, usize), i64)]) -> Self {
        Self::new(
            terms
                .iter()
                .map(|&(k, c)| (k, BigRational::from_integer(c.into()))),
        )
    }

    /// A polynomial in x whose coefficients are polynomials in the generator.
    pub fn from_family(p: &DensePoly<RationalFunctions<Rationals>>) -> Result<Self> {
        let qa = p.field();
        let mut terms = Vec::new();
        for (i, c) in p.coeffs().iter().enumerate() {
            let cp = qa
                .as_poly(c)
                .ok_or_else(|| Error::Precondition("coefficient is not polynomial in a".into()))?;
            for (j, cj) in cp.coeffs().iter().enumerate() {
                terms.push(((i, j), cj.clone()));
            }
        }
        Ok(Self::new(terms))
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.terms.keys().map(|(i, _)| *i).max()
    }

    pub fn specialize_a(&self, a: &BigRational) -> DensePoly<Rationals> {
        let n = self.degree_x().map_or(0, |d| d + 1);
        let mut c = vec![BigRational::zero(); n];
        for ((i, j), v) in &self.terms {
            c[*i] += v * num_traits::pow(a.clone(), *j);
        }
        DensePoly::new(&Rationals, c)
    }

    /// The same polynomial as an element of ℚ(a)[x].
    pub fn to_family(&self, qa: &RationalFunctions<Rationals>) -> DensePoly<RationalFunctions<Rationals>> {
        let n = self.degree_x().map_or(0, |d| d + 1);
        let mut rows: Vec<Vec<BigRational>> = vec![Vec::new(); n];
        for ((i, j), v) in &self.terms {
            if rows[*i].len() <= *j {
                rows[*i].resize(j + 1, BigRational::zero());
            }
            rows[*i][*j] = v.clone();
        }
        let coeffs = rows
            .into_iter()
            .map(|r| qa.from_poly(&DensePoly::new(&Rationals, r)))
            .collect();
        DensePoly::new(qa, coeffs)
    }

    /// Integer multiple with content 1, and the lcm of the denominators removed.
    pub fn integral(&self) -> (BTreeMap<(usize, usize), BigInt>, BigInt) {
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: BTreeMap<_, _> = self
            .terms
            .iter()
            .map(|(k, c)| (*k, (c * BigRational::from_integer(den.clone())).to_integer()))
            .collect();
        let content = ints.values().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let ints = if content.is_zero() {
            ints
        } else {
            ints.into_iter().map(|(k, c)| (k, c / &content)).collect()
        };
        (ints, den)
    }
}

impl std::fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j), c) in self.terms.iter().rev() {
            let neg = c < &BigRational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono: Vec<String> = [("x", *i), ("a", *j)]
                .iter()
                .filter(|(_, e)| *e > 0)
                .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect();
            let coef = crate::field::rational::fmt_rational(&abs);
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{coef}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{coef}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// P_n for y² = x³ + ax + 2, as a polynomial in (x, a).
pub fn weierstrass_p(n: usize) -> Result<BivariatePoly> {
    let qa = RationalFunctions::new(&Rationals, "a");
    BivariatePoly::from_family(&atomic_p(n, &weierstrass_family(&qa))?)
}

/// P_n for y² = x(x−1)(x−κ), with κ in the second slot.
pub fn legendre_p(n: usize) -> Result<BivariatePoly> {
    let qk = RationalFunctions::new(&Rationals, "k");
    BivariatePoly::from_family(&atomic_p(n, &legendre_family(&qk))?)
}

/// x³ + ax + 2 in the same (x, a) form.
pub fn weierstrass_cubic() -> BivariatePoly {
    BivariatePoly::from_i64_terms(&[((3, 0), 1), ((1, 1), 1), ((0, 0), 2)])
}

/// "num/den" with den ≥ 1, for CSV cells.
pub fn fraction_cell(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn integer_cell(n: impl Into<BigInt>) -> String {
    format!("{}/1", n.into())
}

/// A CSV table as header and rows of already-formatted cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::rat;

    #[test]
    fn p2_bivariate() {
        let p = weierstrass_p(2).unwrap();
        let expect = BivariatePoly::new([
            ((4, 0), rat(3, 8)),
            ((2, 1), rat(6, 8)),
            ((1, 0), rat(24, 8)),
            ((0, 2), rat(-1, 8)),
        ]);
        assert_eq!(p, expect);
        assert_eq!(p.total_degree(), Some(4));
        let (ints, den) = p.integral();
        assert_eq!(den, BigInt::from(8));
        assert_eq!(ints[&(4, 0)], BigInt::from(3));
    }

    #[test]
    fn specialization_matches_direct() {
        let p = weierstrass_p(3).unwrap();
        let a = rat(-5, 2);
        let f = weierstrass_cubic().specialize_a(&a);
        assert_eq!(p.specialize_a(&a), atomic_p(3, &f).unwrap());
    }
}
