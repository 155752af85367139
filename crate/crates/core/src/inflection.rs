//! Atomic inflection polynomials P_n (D^n y = P_n·f^{−n}·y) and the
//! inflection polynomials P_{g,ℓ} of |2ℓ∞| for ℓ > g.
//!
//! Three independent constructions are provided:
//! - the recursion P_{n+1} = ((D¹P_n)f + (½ − n)P_n·D¹f)/(n+1);
//! - the Toeplitz determinant det(P_{ℓ+1+j−i}) of size μ = ℓ − g;
//! - the Wronskian minor det(D^j(x^i y)) with P_n from the binomial
//!   expansion of √(f(x+t)), divided by f^{C(μ,2)}.

use std::any::Any;
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{binomial, choose2, Field, Rationals};
use crate::linalg::{berkowitz_det, SquareMatrix};
use crate::poly::{DensePoly, PolyRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Recursion,
    Determinant,
    Direct,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InflectionPolynomial<F: Field> {
    pub g: usize,
    pub ell: usize,
    pub poly: DensePoly<F>,
    pub provenance: Provenance,
}

type CacheMap = HashMap<String, Arc<dyn Any + Send + Sync>>;

fn cache() -> &'static RwLock<CacheMap> {
    static CACHE: OnceLock<RwLock<CacheMap>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn cache_key<F: Field>(f: &DensePoly<F>) -> String {
    format!(
        "{}|{}|{:?}",
        std::any::type_name::<F>(),
        f.field().describe(),
        f.coeffs()
    )
}

/// (P_0, …, P_n) by the recursion; `None` when some m+1 ≤ n is not invertible.
fn recursion_table<F: Field>(n: usize, f: &DensePoly<F>) -> Option<Vec<DensePoly<F>>> {
    let key = cache_key(f);
    if let Some(hit) = cache().read().expect("cache lock").get(&key) {
        if let Some(v) = hit.downcast_ref::<Vec<DensePoly<F>>>() {
            if v.len() > n {
                return Some(v[..=n].to_vec());
            }
        }
    }
    let field = f.field();
    let half = field.inv(&field.from_i64(2))?;
    let df = f.hasse(1);
    let mut table = vec![DensePoly::one(field)];
    if n >= 1 {
        table.push(df.scale(&half));
    }
    for m in 1..n {
        let pm = &table[m];
        // ½ − m
        let c = field.sub(&half, &field.from_i64(m as i64));
        let num = &(&pm.hasse(1) * f) + &(pm * &df).scale(&c);
        let inv = field.inv(&field.from_i64(m as i64 + 1))?;
        table.push(num.scale(&inv));
    }
    let mut w = cache().write().expect("cache lock");
    let keep_existing = w
        .get(&key)
        .and_then(|e| e.downcast_ref::<Vec<DensePoly<F>>>())
        .is_some_and(|e| e.len() >= table.len());
    if !keep_existing {
        w.insert(key, Arc::new(table.clone()));
    }
    Some(table)
}

/// P_n by the recursion over a field where 2, …, n are invertible.
pub fn atomic_p<F: Field>(n: usize, f: &DensePoly<F>) -> Result<DensePoly<F>> {
    recursion_table(n, f)
        .map(|mut t| t.swap_remove(n))
        .ok_or(Error::LiftRequired {
            p: f.field().characteristic(),
            n,
        })
}

/// P_n over a prime field through the integral lift f̂ with coefficients in 0..p.
pub fn atomic_p_charp<F: Field>(n: usize, f: &DensePoly<F>) -> Result<DensePoly<F>> {
    let lift = lift_to_q(f)?;
    atomic_p_charp_with_lift(n, f.field(), &lift)
}

/// P_n over a prime field from a caller supplied integral lift.
pub fn atomic_p_charp_with_lift<F: Field>(
    n: usize,
    field: &F,
    lift: &DensePoly<Rationals>,
) -> Result<DensePoly<F>> {
    let p = field.characteristic();
    let pq = atomic_p(n, lift)?;
    pq.try_map(field, |c| field.from_rational(c))
        .ok_or(Error::NonIntegralLift { p, n })
}

fn lift_to_q<F: Field>(f: &DensePoly<F>) -> Result<DensePoly<Rationals>> {
    let field = f.field();
    let n = f.degree().unwrap_or(0);
    let v: Option<Vec<BigRational>> = f
        .coeffs()
        .iter()
        .map(|c| field.integral_lift(c).map(BigRational::from_integer))
        .collect();
    v.map(|v| DensePoly::new(&Rationals, v))
        .ok_or(Error::LiftRequired {
            p: field.characteristic(),
            n,
        })
}

/// P_n choosing the recursion when it is defined and the lift otherwise.
pub fn atomic_p_any<F: Field>(n: usize, f: &DensePoly<F>) -> Result<DensePoly<F>> {
    let p = f.field().characteristic();
    if p == 2 {
        return Err(Error::CharacteristicTwo);
    }
    if p == 0 || (n as u64) < p {
        atomic_p(n, f)
    } else {
        atomic_p_charp(n, f)
    }
}

/// C(½, m) = ½(½−1)…(½−m+1)/m!.
pub fn binomial_half(m: usize) -> BigRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut acc = BigRational::one();
    for i in 0..m {
        acc = acc * (&half - BigRational::from_integer(BigInt::from(i))) / BigRational::from_integer(BigInt::from(i + 1));
    }
    acc
}

/// P_n = Σ_{m=1..n} C(½,m)·f^{n−m}·[t^n](Σ_{k≥1} D^k f·t^k)^m.
/// Only powers of 2 appear in denominators, so this is valid in odd characteristic.
pub fn atomic_p_binomial<F: Field>(n: usize, f: &DensePoly<F>) -> Result<DensePoly<F>> {
    let field = f.field();
    if field.characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    if n == 0 {
        return Ok(DensePoly::one(field));
    }
    // s[k] = D^k f for k = 1..=n, as t-series with polynomial coefficients.
    let s: Vec<DensePoly<F>> = (0..=n)
        .map(|k| if k == 0 { DensePoly::zero(field) } else { f.hasse(k) })
        .collect();
    let mut power = s.clone();
    let mut fpow = vec![DensePoly::one(field)];
    for _ in 1..n {
        let next = fpow.last().expect("nonempty") * f;
        fpow.push(next);
    }
    let mut total = DensePoly::zero(field);
    for m in 1..=n {
        if m > 1 {
            let mut next = vec![DensePoly::zero(field); n + 1];
            for (i, a) in power.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in s.iter().enumerate().take(n + 1 - i) {
                    if !b.is_zero() {
                        next[i + j] = &next[i + j] + &(a * b);
                    }
                }
            }
            power = next;
        }
        let c = field
            .from_rational(&binomial_half(m))
            .ok_or(Error::CharacteristicTwo)?;
        total = &total + &(&fpow[n - m] * &power[n]).scale(&c);
    }
    Ok(total)
}

fn check_range(g: usize, ell: usize) -> Result<usize> {
    if g == 0 || ell <= g {
        return Err(Error::Precondition(format!(
            "inflection polynomial needs ℓ > g ≥ 1, got g = {g}, ℓ = {ell}"
        )));
    }
    Ok(ell - g)
}

fn toeplitz<F: Field>(field: &F, mu: usize, entry: impl Fn(usize) -> DensePoly<F>) -> DensePoly<F> {
    let m = SquareMatrix::from_fn(mu, |i, j| entry(mu + j - i));
    berkowitz_det(&PolyRing(field), &m)
}

/// P_{g,ℓ} = det(P_{ℓ+1+j−i})_{0≤i,j<μ}.
pub fn inflection_poly<F: Field>(g: usize, ell: usize, f: &DensePoly<F>) -> Result<DensePoly<F>> {
    let mu = check_range(g, ell)?;
    let top = ell + mu;
    let table: Vec<DensePoly<F>> = (0..=top).map(|n| atomic_p_any(n, f)).collect::<Result<_>>()?;
    // entry index s = μ + j − i runs over 1..2μ−1; P index is ℓ+1+s−μ.
    Ok(toeplitz(f.field(), mu, |s| table[ell + 1 + s - mu].clone()))
}

/// The double index printed for the substitution, read literally:
/// t_i ↦ P_{g',ℓ'} with g' = ℓ+1+i, ℓ' = ℓ+2+i, i.e. the atomic P_{ℓ+3+i}.
pub fn inflection_poly_printed_index<F: Field>(
    g: usize,
    ell: usize,
    f: &DensePoly<F>,
) -> Result<DensePoly<F>> {
    let mu = check_range(g, ell)?;
    let table: Vec<DensePoly<F>> = (0..=ell + 2 + mu)
        .map(|n| atomic_p_any(n, f))
        .collect::<Result<_>>()?;
    Ok(toeplitz(f.field(), mu, |s| table[ell + 3 + s - mu].clone()))
}

/// det(D^j(x^i y))_{i<μ, ℓ<j≤ℓ+μ} with the factor (f^{−(ℓ+1)}y)^μ cleared.
pub fn inflection_poly_direct<F: Field>(
    g: usize,
    ell: usize,
    f: &DensePoly<F>,
) -> Result<DensePoly<F>> {
    let mu = check_range(g, ell)?;
    let field = f.field();
    let table: Vec<DensePoly<F>> = (0..=ell + mu)
        .map(|n| atomic_p_binomial(n, f))
        .collect::<Result<_>>()?;
    let fpow: Vec<DensePoly<F>> = (0..mu).map(|k| f.pow(k as u32)).collect();
    // Row i, column j: Σ_k C(i,k)·x^{i−k}·P_{j−k}·f^k = f^j·y^{−1}·D^j(x^i y).
    let m = SquareMatrix::from_fn(mu, |i, jj| {
        let j = ell + 1 + jj;
        let mut acc = DensePoly::zero(field);
        for k in 0..=i {
            let c = field.from_bigint(&binomial(i, k));
            let term = &(&DensePoly::monomial(field, c, i - k) * &table[j - k]) * &fpow[k];
            acc = &acc + &term;
        }
        acc
    });
    let det = berkowitz_det(&PolyRing(field), &m);
    let cleared = f.pow(choose2(mu as i64) as u32);
    det.exact_div(&cleared).ok_or_else(|| {
        Error::InternalInconsistency(format!(
            "f^{} does not divide the Wronskian minor for g = {g}, ℓ = {ell}",
            choose2(mu as i64)
        ))
    })
}

/// Same value through each construction, tagged.
pub fn inflection_poly_with<F: Field>(
    g: usize,
    ell: usize,
    f: &DensePoly<F>,
    provenance: Provenance,
) -> Result<InflectionPolynomial<F>> {
    let poly = match provenance {
        Provenance::Recursion => {
            check_range(g, ell)?;
            if ell != g + 1 {
                return Err(Error::Precondition(
                    "the recursion alone only yields the atomic case ℓ = g + 1".into(),
                ));
            }
            atomic_p_any(g + 2, f)?
        }
        Provenance::Determinant => inflection_poly(g, ell, f)?,
        Provenance::Direct => inflection_poly_direct(g, ell, f)?,
    };
    Ok(InflectionPolynomial {
        g,
        ell,
        poly,
        provenance,
    })
}

/// The atomic index n of P_{g,g+1}.
pub fn atomic_index(g: usize) -> usize {
    g + 2
}

/// x³ + a·x + 2 over ℚ(a).
pub fn weierstrass_family(
    qa: &crate::field::RationalFunctions<Rationals>,
) -> DensePoly<crate::field::RationalFunctions<Rationals>> {
    DensePoly::new(
        qa,
        vec![qa.from_base(&BigRational::from_integer(2.into())), qa.gen(), qa.zero(), qa.one()],
    )
}

/// x(x−1)(x−κ) over ℚ(κ).
pub fn legendre_family(
    qk: &crate::field::RationalFunctions<Rationals>,
) -> DensePoly<crate::field::RationalFunctions<Rationals>> {
    let k = qk.gen();
    let one = qk.one();
    // x³ − (1+κ)x² + κx
    DensePoly::new(
        qk,
        vec![qk.zero(), k.clone(), qk.neg(&qk.add(&one, &k)), one],
    )
}

/// Denominators of P_n are powers of two.
pub fn is_two_integral(p: &DensePoly<Rationals>) -> bool {
    p.coeffs().iter().all(|c| {
        let mut d = c.denom().clone();
        while (&d % 2u32).is_zero() {
            d /= 2u32;
        }
        d.is_one()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::rat;
    use crate::field::{Fp, RationalFunctions};

    #[test]
    fn p1_is_half_derivative() {
        let f = DensePoly::from_i64s(&Rationals, &[2, 1, 0, 1]);
        let p1 = atomic_p(1, &f).unwrap();
        assert_eq!(p1, DensePoly::new(&Rationals, vec![rat(1, 2), rat(0, 1), rat(3, 2)]));
    }

    #[test]
    fn binomial_half_values() {
        assert_eq!(binomial_half(1), rat(1, 2));
        assert_eq!(binomial_half(2), rat(-1, 8));
        assert_eq!(binomial_half(3), rat(1, 16));
    }

    #[test]
    fn recursion_matches_binomial_over_q() {
        let f = DensePoly::from_i64s(&Rationals, &[1, -2, 0, 3, 0, 1]);
        for n in 0..7 {
            assert_eq!(atomic_p(n, &f).unwrap(), atomic_p_binomial(n, &f).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn weierstrass_p2() {
        let qa = RationalFunctions::new(&Rationals, "a");
        let f = weierstrass_family(&qa);
        let p2 = atomic_p(2, &f).unwrap();
        let a = qa.gen();
        let c = |q: BigRational| qa.from_base(&q);
        let expect = DensePoly::new(
            &qa,
            vec![
                qa.neg(&qa.mul(&qa.mul(&a, &a), &c(rat(1, 8)))),
                c(rat(3, 1)),
                qa.mul(&a, &c(rat(3, 4))),
                qa.zero(),
                c(rat(3, 8)),
            ],
        );
        assert_eq!(p2, expect);
    }

    #[test]
    fn charp_needs_lift_beyond_p() {
        let f5 = Fp::new(5).unwrap();
        let f = DensePoly::from_i64s(&f5, &[2, 1, 0, 1]);
        assert_eq!(atomic_p(5, &f), Err(Error::LiftRequired { p: 5, n: 5 }));
        let lifted = atomic_p_charp(5, &f).unwrap();
        assert_eq!(lifted, atomic_p_binomial(5, &f).unwrap());
        assert_eq!(atomic_p_charp(2, &f).unwrap(), atomic_p(2, &f).unwrap());
    }

    #[test]
    fn mu_one_is_atomic() {
        let f = DensePoly::from_i64s(&Rationals, &[1, 1, 0, 1]);
        assert_eq!(inflection_poly(1, 2, &f).unwrap(), atomic_p(3, &f).unwrap());
        assert_eq!(inflection_poly_direct(1, 2, &f).unwrap(), atomic_p(3, &f).unwrap());
    }

    #[test]
    fn rejects_l_le_g() {
        let f = DensePoly::from_i64s(&Rationals, &[1, 1, 0, 1]);
        assert!(matches!(inflection_poly(1, 1, &f), Err(Error::Precondition(_))));
    }
}
