//! The curve y² = f(x) with deg f = 2g+1, its chart at infinity
//! w² = h(z) with h(z) = z^{2g+2}f(1/z), and functions a(x) + b(x)·y.

pub mod expansion;
pub mod paths;
pub mod wronskian;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::inflection::atomic_p_any;
use crate::linalg::Ring;
use crate::poly::DensePoly;

pub use expansion::{expand_at_point, expand_on_chart, CurvePoint, LocalExpansion};
pub use paths::{det_m, gv_path_count, matrix_m};
pub use wronskian::{hasse_wronskian, hasse_wronskian_chart, Wronskian};

#[derive(Debug, Clone, PartialEq)]
pub struct HyperellipticCurve<F: Field> {
    f: DensePoly<F>,
    g: usize,
}

impl<F: Field> HyperellipticCurve<F> {
    /// Requires odd degree ≥ 3, f squarefree, characteristic ≠ 2.
    pub fn new(f: DensePoly<F>) -> Result<Self> {
        if f.field().characteristic() == 2 {
            return Err(Error::CharacteristicTwo);
        }
        let d = f.degree().unwrap_or(0);
        if d < 3 || d % 2 == 0 {
            return Err(Error::Precondition(format!(
                "f must have odd degree ≥ 3, got degree {d}"
            )));
        }
        if f.gcd(&f.derivative()).degree() != Some(0) {
            return Err(Error::Precondition("f is not squarefree".into()));
        }
        Ok(HyperellipticCurve { g: (d - 1) / 2, f })
    }

    pub fn f(&self) -> &DensePoly<F> {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn field(&self) -> &F {
        self.f.field()
    }

    pub fn at_infinity(&self) -> DensePoly<F> {
        curve_at_infinity(&self.f)
    }

    pub fn ring(&self) -> CurveRing<F> {
        CurveRing::new(self.f.clone())
    }

    pub fn ring_at(&self, chart: Coordinate) -> CurveRing<F> {
        match chart {
            Coordinate::X => self.ring(),
            Coordinate::Z => CurveRing::new(self.at_infinity()),
        }
    }
}

/// h(z) = z·(reversal of f); no squarefree check so that f = x³ maps to z.
pub fn curve_at_infinity<F: Field>(f: &DensePoly<F>) -> DensePoly<F> {
    let field = f.field();
    let mut c = vec![field.zero()];
    c.extend(f.coeffs().iter().rev().cloned());
    DensePoly::new(field, c)
}

/// Étale coordinate of a chart: x on the affine chart, z at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Coordinate {
    X,
    Z,
}

/// x^x·y^y with y ∈ {0, 1}; on the chart at infinity read as z^x·w^y.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Monomial {
    pub x: usize,
    pub y: u8,
}

impl Monomial {
    pub fn x_pow(a: usize) -> Self {
        Monomial { x: a, y: 0 }
    }

    pub fn xy(a: usize) -> Self {
        Monomial { x: a, y: 1 }
    }

    /// Image under x = 1/z, y = w/z^{g+1}, multiplied by z^ℓ.
    pub fn at_infinity(&self, g: usize, ell: usize) -> Self {
        let shift = self.x + (g + 1) * self.y as usize;
        debug_assert!(shift <= ell);
        Monomial {
            x: ell - shift,
            y: self.y,
        }
    }
}

/// λ = (1, x, …, x^ℓ) for ℓ ≤ g, and
/// (1, y, x, xy, …, x^{μ−1}, x^{μ−1}y; x^μ, …, x^ℓ) with μ = ℓ − g otherwise.
pub fn monomial_basis(g: usize, ell: usize) -> Vec<Monomial> {
    if ell <= g {
        return (0..=ell).map(Monomial::x_pow).collect();
    }
    let mu = ell - g;
    let mut out = Vec::with_capacity(2 * ell - g + 1);
    for i in 0..mu {
        out.push(Monomial::x_pow(i));
        out.push(Monomial::xy(i));
    }
    out.extend((mu..=ell).map(Monomial::x_pow));
    out
}

/// The same sections in the chart at infinity, in λ order.
pub fn monomial_basis_at_infinity(g: usize, ell: usize) -> Vec<Monomial> {
    monomial_basis(g, ell)
        .into_iter()
        .map(|m| m.at_infinity(g, ell))
        .collect()
}

/// a(x) + b(x)·y.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveFunction<F: Field> {
    pub a: DensePoly<F>,
    pub b: DensePoly<F>,
}

impl<F: Field> CurveFunction<F> {
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

/// k[x, y]/(y² − f), for any f (also the even-degree h at infinity).
#[derive(Debug, Clone, PartialEq)]
pub struct CurveRing<F: Field> {
    f: DensePoly<F>,
}

impl<F: Field> CurveRing<F> {
    pub fn new(f: DensePoly<F>) -> Self {
        CurveRing { f }
    }

    pub fn f(&self) -> &DensePoly<F> {
        &self.f
    }

    pub fn field(&self) -> &F {
        self.f.field()
    }

    pub fn from_poly(&self, a: DensePoly<F>) -> CurveFunction<F> {
        CurveFunction {
            a,
            b: DensePoly::zero(self.field()),
        }
    }

    pub fn y(&self) -> CurveFunction<F> {
        CurveFunction {
            a: DensePoly::zero(self.field()),
            b: DensePoly::one(self.field()),
        }
    }

    pub fn monomial(&self, m: Monomial) -> CurveFunction<F> {
        let xa = DensePoly::monomial(self.field(), self.field().one(), m.x);
        if m.y == 0 {
            self.from_poly(xa)
        } else {
            CurveFunction {
                a: DensePoly::zero(self.field()),
                b: xa,
            }
        }
    }

    /// y^k reduced with y² = f.
    pub fn y_pow(&self, k: usize) -> CurveFunction<F> {
        let base = self.f.pow((k / 2) as u32);
        if k % 2 == 0 {
            self.from_poly(base)
        } else {
            CurveFunction {
                a: DensePoly::zero(self.field()),
                b: base,
            }
        }
    }
}

impl<F: Field> Ring for CurveRing<F> {
    type E = CurveFunction<F>;

    fn zero(&self) -> Self::E {
        self.from_poly(DensePoly::zero(self.field()))
    }

    fn one(&self) -> Self::E {
        self.from_poly(DensePoly::one(self.field()))
    }

    fn add(&self, u: &Self::E, v: &Self::E) -> Self::E {
        CurveFunction {
            a: &u.a + &v.a,
            b: &u.b + &v.b,
        }
    }

    fn sub(&self, u: &Self::E, v: &Self::E) -> Self::E {
        CurveFunction {
            a: &u.a - &v.a,
            b: &u.b - &v.b,
        }
    }

    fn mul(&self, u: &Self::E, v: &Self::E) -> Self::E {
        let bb = &u.b * &v.b;
        CurveFunction {
            a: &(&u.a * &v.a) + &(&bb * &self.f),
            b: &(&u.a * &v.b) + &(&u.b * &v.a),
        }
    }

    fn neg(&self, u: &Self::E) -> Self::E {
        CurveFunction {
            a: -&u.a,
            b: -&u.b,
        }
    }
}

/// D^n y = P_n·f^{−n}·y, returned as (P_n, n).
pub fn hasse_derivative_y<F: Field>(f: &DensePoly<F>, n: usize) -> Result<(DensePoly<F>, usize)> {
    Ok((atomic_p_any(n, f)?, n))
}
