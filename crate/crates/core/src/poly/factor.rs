//! Squarefree decomposition, and complete factorization over finite fields
//! (distinct-degree, then Cantor–Zassenhaus equal-degree splitting).

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{raw, DensePoly};
use crate::error::{Error, Result};
use crate::field::{Field, FiniteField};

/// Default seed for the randomized splitting.
pub const DEFAULT_SEED: u64 = 0x5eed_f00d;

#[derive(Debug, Clone, PartialEq)]
pub struct Factorization<F: Field> {
    pub unit: F::Elem,
    /// Monic irreducible factors with multiplicities.
    pub factors: Vec<(DensePoly<F>, usize)>,
}

impl<F: Field> Factorization<F> {
    pub fn product(&self, field: &F) -> DensePoly<F> {
        let mut acc = DensePoly::constant(field, self.unit.clone());
        for (g, m) in &self.factors {
            acc = &acc * &g.pow(*m as u32);
        }
        acc
    }
}

/// Yun's algorithm; valid in characteristic 0 (and in characteristic p
/// whenever every multiplicity is below p). Factors are monic and the
/// multiplicities strictly increase.
pub fn squarefree_decomposition<F: Field>(p: &DensePoly<F>) -> Vec<(DensePoly<F>, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let f = p.monic();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y).expect("gcd divides");
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac, i));
        }
        c = c.exact_div(&y).expect("gcd divides");
        w = y;
        i += 1;
    }
    out
}

/// Squarefree decomposition over 𝔽_q, handling p-th powers.
pub fn squarefree_decomposition_fq<F: FiniteField>(p: &DensePoly<F>) -> Vec<(DensePoly<F>, usize)> {
    let field = p.field().clone();
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let f = p.monic();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y).expect("gcd divides");
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac, i));
        }
        c = c.exact_div(&y).expect("gcd divides");
        w = y;
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        let ch = field.characteristic() as usize;
        let e = field.order() / BigUint::from(ch as u64);
        let root: Vec<F::Elem> = c
            .coeffs()
            .iter()
            .step_by(ch)
            .map(|a| field.pow_big(a, &e))
            .collect();
        for (g, m) in squarefree_decomposition_fq(&DensePoly::new(&field, root)) {
            out.push((g, m * ch));
        }
    }
    merge_multiplicities(out)
}

fn merge_multiplicities<F: Field>(mut v: Vec<(DensePoly<F>, usize)>) -> Vec<(DensePoly<F>, usize)> {
    v.sort_by_key(|(_, m)| *m);
    let mut out: Vec<(DensePoly<F>, usize)> = Vec::new();
    for (g, m) in v {
        match out.last_mut() {
            Some((h, k)) if *k == m => *h = &*h * &g,
            _ => out.push((g, m)),
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree<F: FiniteField>(f: &DensePoly<F>) -> Vec<(DensePoly<F>, usize)> {
    let field = f.field().clone();
    let q = field.order();
    let x = DensePoly::x(&field);
    let mut rest = f.monic();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = DensePoly::new(&field, raw::powmod(&field, h.coeffs(), &q, rest.coeffs()));
        let g = rest.gcd(&(&h - &x));
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(k) = rest.degree() {
        if k > 0 {
            out.push((rest, k));
        }
    }
    out
}

/// Splits a monic squarefree product of degree-d irreducibles.
pub fn equal_degree<F: FiniteField>(
    g: &DensePoly<F>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<DensePoly<F>> {
    let n = g.degree().unwrap_or(0);
    if n == d {
        return vec![g.clone()];
    }
    let field = g.field().clone();
    let e = (field.order().pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let a: Vec<F::Elem> = (0..n).map(|_| field.random_elem(rng)).collect();
        let a = DensePoly::new(&field, a);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = DensePoly::new(&field, raw::powmod(&field, a.coeffs(), &e, g.coeffs()));
        let h = g.gcd(&(&b - &DensePoly::one(&field)));
        let k = h.degree().unwrap_or(0);
        if k > 0 && k < n {
            let other = g.exact_div(&h).expect("gcd divides");
            let mut out = equal_degree(&h, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

/// Complete factorization with the default seed.
pub fn factor_over_fq<F: FiniteField>(p: &DensePoly<F>) -> Result<Factorization<F>> {
    factor_over_fq_seeded(p, DEFAULT_SEED)
}

pub fn factor_over_fq_seeded<F: FiniteField>(p: &DensePoly<F>, seed: u64) -> Result<Factorization<F>> {
    if p.is_zero() {
        return Err(Error::ZeroFactorization);
    }
    let field = p.field().clone();
    let unit = p.lc().expect("nonzero").clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (sq, m) in squarefree_decomposition_fq(p) {
        for (g, d) in distinct_degree(&sq) {
            for h in equal_degree(&g, d, &mut rng) {
                factors.push((h, m));
            }
        }
    }
    factors.sort_by_cached_key(|(g, m)| (g.degree(), *m, canonical_key(&field, g)));
    Ok(Factorization { unit, factors })
}

fn canonical_key<F: Field>(field: &F, g: &DensePoly<F>) -> Vec<String> {
    g.coeffs().iter().rev().map(|c| field.fmt_elem(c)).collect()
}

pub fn is_irreducible<F: FiniteField>(f: &DensePoly<F>) -> bool {
    let Some(n) = f.degree() else {
        return false;
    };
    if n == 0 {
        return false;
    }
    let m = f.monic();
    if m.gcd(&m.derivative()).degree() != Some(0) {
        return false;
    }
    let dd = distinct_degree(&m);
    dd.len() == 1 && dd[0].1 == n
}

/// Lexicographically first monic irreducible of degree n.
pub fn first_irreducible<F: FiniteField>(field: &F, n: usize) -> Result<DensePoly<F>> {
    if n == 0 {
        return Err(Error::Precondition("degree must be ≥ 1".into()));
    }
    let q = field.order();
    let q64: u64 = q
        .try_into()
        .map_err(|_| Error::Precondition("base field too large to enumerate".into()))?;
    let mut i: u64 = 0;
    loop {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut k = i;
        for _ in 0..n {
            coeffs.push(field.element_at(k % q64));
            k /= q64;
        }
        if k > 0 {
            return Err(Error::InternalInconsistency("no irreducible found".into()));
        }
        coeffs.push(field.one());
        let f = DensePoly::new(field, coeffs);
        if is_irreducible(&f) {
            return Ok(f);
        }
        i += 1;
    }
}
