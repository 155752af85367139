//! F[α]/(m(α)) for a monic modulus m. With m irreducible this is a residue
//! field k(γ); with m squarefree it is the étale algebra of the roots of m.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rand::Rng;

use super::{Field, FiniteField, SquareClassKind};
use crate::error::{Error, Result};
use crate::linalg::det_gauss;
use crate::poly::{raw, DensePoly};

struct ExtInner<F: Field> {
    base: F,
    modulus: Vec<F::Elem>,
    var: String,
    power_traces: OnceLock<Vec<F::Elem>>,
}

#[derive(Clone)]
pub struct Extension<F: Field> {
    inner: Arc<ExtInner<F>>,
}

impl<F: Field> PartialEq for Extension<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base == other.inner.base && self.inner.modulus == other.inner.modulus)
    }
}

impl<F: Field> fmt::Debug for Extension<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl<F: Field> Extension<F> {
    /// Irreducibility of `modulus` is the caller's claim; only the degree is checked.
    pub fn new(base: &F, modulus: &DensePoly<F>) -> Result<Self> {
        Self::with_var(base, modulus, "α")
    }

    pub fn with_var(base: &F, modulus: &DensePoly<F>, var: &str) -> Result<Self> {
        if modulus.degree().unwrap_or(0) == 0 {
            return Err(Error::Precondition("extension modulus must have degree ≥ 1".into()));
        }
        Ok(Extension {
            inner: Arc::new(ExtInner {
                base: base.clone(),
                modulus: modulus.monic().into_coeffs(),
                var: var.to_string(),
                power_traces: OnceLock::new(),
            }),
        })
    }

    pub fn base(&self) -> &F {
        &self.inner.base
    }

    pub fn degree(&self) -> usize {
        self.inner.modulus.len() - 1
    }

    pub fn modulus(&self) -> DensePoly<F> {
        DensePoly::new(&self.inner.base, self.inner.modulus.clone())
    }

    /// The class of the variable, i.e. the root γ of the modulus.
    pub fn generator(&self) -> Vec<F::Elem> {
        self.reduce(vec![self.base().zero(), self.base().one()])
    }

    pub fn embed(&self, c: &F::Elem) -> Vec<F::Elem> {
        raw::trim(self.base(), vec![c.clone()])
    }

    pub fn reduce(&self, v: Vec<F::Elem>) -> Vec<F::Elem> {
        raw::rem(self.base(), &raw::trim(self.base(), v), &self.inner.modulus)
    }

    /// Evaluates a base polynomial at the generator.
    pub fn from_poly(&self, p: &DensePoly<F>) -> Vec<F::Elem> {
        self.reduce(p.coeffs().to_vec())
    }

    pub fn to_poly(&self, a: &[F::Elem]) -> DensePoly<F> {
        DensePoly::new(self.base(), a.to_vec())
    }

    /// Coordinates of `a` in the power basis, padded to the degree.
    pub fn coordinates(&self, a: &[F::Elem]) -> Vec<F::Elem> {
        let mut v = a.to_vec();
        v.resize(self.degree(), self.base().zero());
        v
    }

    fn power_traces(&self) -> &[F::Elem] {
        self.inner.power_traces.get_or_init(|| {
            let d = self.degree();
            let b = self.base();
            let x = self.generator();
            let mut pw = self.one();
            let mut out = Vec::with_capacity(d);
            for _ in 0..d {
                // Trace of multiplication by pw on the power basis.
                let mut tr = b.zero();
                let mut basis = self.one();
                for i in 0..d {
                    let prod = self.mul(&pw, &basis);
                    if let Some(c) = prod.get(i) {
                        tr = b.add(&tr, c);
                    }
                    basis = self.mul(&basis, &x);
                }
                out.push(tr);
                pw = self.mul(&pw, &x);
            }
            out
        })
    }

    pub fn trace(&self, a: &[F::Elem]) -> F::Elem {
        let b = self.base();
        let t = self.power_traces();
        a.iter()
            .zip(t.iter())
            .fold(b.zero(), |acc, (c, tk)| b.add(&acc, &b.mul(c, tk)))
    }

    /// Matrix of multiplication by `a`; column i is a·α^i.
    pub fn multiplication_matrix(&self, a: &[F::Elem]) -> Vec<Vec<F::Elem>> {
        let d = self.degree();
        let x = self.generator();
        let mut cols = Vec::with_capacity(d);
        let mut basis = self.one();
        for _ in 0..d {
            cols.push(self.coordinates(&self.mul(&a.to_vec(), &basis)));
            basis = self.mul(&basis, &x);
        }
        (0..d)
            .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
            .collect()
    }

    pub fn norm(&self, a: &[F::Elem]) -> F::Elem {
        det_gauss(self.base(), &self.multiplication_matrix(a))
    }

    /// Gram matrix of (u, v) ↦ Tr(a·u·v) on the power basis.
    pub fn trace_form(&self, a: &[F::Elem]) -> Vec<Vec<F::Elem>> {
        let d = self.degree();
        let x = self.generator();
        let mut powers = Vec::with_capacity(2 * d);
        let mut cur = a.to_vec();
        for _ in 0..(2 * d).saturating_sub(1) {
            powers.push(self.trace(&cur));
            cur = self.mul(&cur, &x);
        }
        (0..d)
            .map(|i| (0..d).map(|j| powers[i + j].clone()).collect())
            .collect()
    }
}

impl<F: Field> Field for Extension<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Vec<F::Elem> {
        Vec::new()
    }
    fn one(&self) -> Vec<F::Elem> {
        vec![self.base().one()]
    }
    fn add(&self, a: &Vec<F::Elem>, b: &Vec<F::Elem>) -> Vec<F::Elem> {
        raw::add(self.base(), a, b)
    }
    fn sub(&self, a: &Vec<F::Elem>, b: &Vec<F::Elem>) -> Vec<F::Elem> {
        raw::sub(self.base(), a, b)
    }
    fn neg(&self, a: &Vec<F::Elem>) -> Vec<F::Elem> {
        raw::neg(self.base(), a)
    }
    fn mul(&self, a: &Vec<F::Elem>, b: &Vec<F::Elem>) -> Vec<F::Elem> {
        raw::rem(self.base(), &raw::mul(self.base(), a, b), &self.inner.modulus)
    }
    fn inv(&self, a: &Vec<F::Elem>) -> Option<Vec<F::Elem>> {
        if a.is_empty() {
            return None;
        }
        let (g, s, _) = raw::xgcd(self.base(), a, &self.inner.modulus);
        (g.len() == 1).then(|| self.reduce(s))
    }
    fn from_bigint(&self, n: &BigInt) -> Vec<F::Elem> {
        self.embed(&self.base().from_bigint(n))
    }
    fn characteristic(&self) -> u64 {
        self.base().characteristic()
    }
    fn is_square(&self, a: &Vec<F::Elem>) -> Result<bool> {
        if a.is_empty() {
            return Err(Error::ZeroSquareClass);
        }
        match self.finite_order() {
            Some(q) => {
                let e = (q - 1u32) >> 1;
                Ok(self.is_one(&self.pow_big(a, &e)))
            }
            None => Err(Error::UnsupportedField(self.describe())),
        }
    }
    fn square_class_kind(&self) -> SquareClassKind {
        if self.base().finite_order().is_some() {
            SquareClassKind::Finite
        } else {
            SquareClassKind::Opaque
        }
    }
    fn describe(&self) -> String {
        format!(
            "{}[{}]/({})",
            self.base().describe(),
            self.inner.var,
            self.modulus().fmt_var(&self.inner.var)
        )
    }
    fn fmt_elem(&self, a: &Vec<F::Elem>) -> String {
        self.to_poly(a).fmt_var(&self.inner.var)
    }
    fn finite_order(&self) -> Option<BigUint> {
        self.base()
            .finite_order()
            .map(|q| q.pow(self.degree() as u32))
    }
}

impl<F: FiniteField> FiniteField for Extension<F> {
    fn absolute_degree(&self) -> usize {
        self.base().absolute_degree() * self.degree()
    }

    fn element_at(&self, i: u64) -> Vec<F::Elem> {
        let q = self.base().order();
        let mut v = Vec::with_capacity(self.degree());
        match q.to_u64() {
            Some(q) => {
                let mut i = i;
                for _ in 0..self.degree() {
                    v.push(self.base().element_at(i % q));
                    i /= q;
                }
            }
            None => v.push(self.base().element_at(i)),
        }
        raw::trim(self.base(), v)
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<F::Elem> {
        let v = (0..self.degree())
            .map(|_| self.base().random_elem(rng))
            .collect();
        raw::trim(self.base(), v)
    }
}

/// 𝔽_{p^n} from the lexicographically first monic irreducible of degree n.
pub fn prime_power_field(p: u64, n: usize) -> Result<Extension<super::Fp>> {
    let fp = super::Fp::new(p)?;
    let m = crate::poly::factor::first_irreducible(&fp, n)?;
    Extension::with_var(&fp, &m, "α")
}
