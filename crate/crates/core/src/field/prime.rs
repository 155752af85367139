use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::Rng;

use super::{Field, FiniteField, SquareClassKind};
use crate::error::{Error, Result};

/// The prime field 𝔽_p with residues stored as `u64` in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        Ok(Fp { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn powmod(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(acc, a);
            }
            a = self.mulmod(a, a);
            e >>= 1;
        }
        acc
    }
}

impl Field for Fp {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mulmod(*a, *b)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let (g, x, _) = ext_gcd(*a as i128, self.p as i128);
        debug_assert_eq!(g, 1);
        Some(x.rem_euclid(self.p as i128) as u64)
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits")
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.elem(n)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn is_square(&self, a: &u64) -> Result<bool> {
        if *a == 0 {
            return Err(Error::ZeroSquareClass);
        }
        Ok(self.powmod(*a, (self.p - 1) / 2) == 1)
    }
    fn square_class_kind(&self) -> SquareClassKind {
        SquareClassKind::Finite
    }
    fn describe(&self) -> String {
        format!("F_{}", self.p)
    }
    fn fmt_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn pow(&self, a: &u64, e: u64) -> u64 {
        self.powmod(*a, e)
    }
    fn integral_lift(&self, a: &u64) -> Option<BigInt> {
        Some(BigInt::from(*a))
    }
    fn finite_order(&self) -> Option<BigUint> {
        Some(BigUint::from(self.p))
    }
}

impl FiniteField for Fp {
    fn absolute_degree(&self) -> usize {
        1
    }
    fn element_at(&self, i: u64) -> u64 {
        i % self.p
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes in `lo..=hi`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Legendre symbol (a | p) by Euler's criterion.
pub fn legendre_symbol(a: &BigInt, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not an odd prime")));
    }
    let f = Fp { p };
    let r = f.from_bigint(a);
    if r == 0 {
        return Ok(0);
    }
    let e = f.powmod(r, (p - 1) / 2);
    Ok(if e == 1 { 1 } else { -1 })
}

/// Square test for integers, used by the rational fields.
pub(crate) fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}
