//! Hasse Wronskians over the coordinate ring, with f-denominators tracked
//! as an exponent instead of a fraction field.

use super::{monomial_basis, monomial_basis_at_infinity, Coordinate, CurveFunction, CurveRing, HyperellipticCurve, Monomial};
use crate::error::{Error, Result};
use crate::field::{binomial, choose2, Field};
use crate::inflection::atomic_p_any;
use crate::linalg::{berkowitz_det, SquareMatrix};
use crate::poly::DensePoly;

/// w(λ) = numerator · f^{−f_exponent}.
#[derive(Debug, Clone, PartialEq)]
pub struct Wronskian<F: Field> {
    pub numerator: CurveFunction<F>,
    pub f_exponent: usize,
}

impl<F: Field> Wronskian<F> {
    /// Cancels common powers of f.
    pub fn normalized(&self, f: &DensePoly<F>) -> Self {
        let mut w = self.clone();
        while w.f_exponent > 0 {
            let (Some(a), Some(b)) = (w.numerator.a.exact_div(f), w.numerator.b.exact_div(f)) else {
                break;
            };
            w.numerator = CurveFunction { a, b };
            w.f_exponent -= 1;
        }
        w
    }
}

/// det(D^i λ_j) in the coordinate of `ring`; row i is scaled by f^i so
/// every entry is a polynomial function.
pub fn hasse_wronskian<F: Field>(ring: &CurveRing<F>, basis: &[Monomial]) -> Result<Wronskian<F>> {
    let field = ring.field().clone();
    let f = ring.f();
    let n = basis.len();
    if n == 0 {
        return Err(Error::Precondition("empty basis".into()));
    }
    let r = n - 1;
    let ps: Vec<DensePoly<F>> = (0..=r).map(|k| atomic_p_any(k, f)).collect::<Result<_>>()?;
    let fpow: Vec<DensePoly<F>> = (0..=r).map(|k| f.pow(k as u32)).collect();
    let m = SquareMatrix::from_fn(n, |i, j| {
        let mon = basis[j];
        if mon.y == 0 {
            let c = field.from_bigint(&binomial(mon.x, i));
            let a = if i <= mon.x {
                &DensePoly::monomial(&field, c, mon.x - i) * &fpow[i]
            } else {
                DensePoly::zero(&field)
            };
            ring.from_poly(a)
        } else {
            // f^i·D^i(x^a y) = Σ_k C(a,k) x^{a−k} P_{i−k} f^k · y
            let mut b = DensePoly::zero(&field);
            for k in 0..=i.min(mon.x) {
                let c = field.from_bigint(&binomial(mon.x, k));
                let t = &(&DensePoly::monomial(&field, c, mon.x - k) * &ps[i - k]) * &fpow[k];
                b = &b + &t;
            }
            CurveFunction {
                a: DensePoly::zero(&field),
                b,
            }
        }
    });
    let numerator = berkowitz_det(ring, &m);
    if numerator.is_zero() {
        return Err(Error::DependentBasis);
    }
    Ok(Wronskian {
        numerator,
        f_exponent: choose2(n as i64) as usize,
    })
}

/// Wronskian of λ for |2ℓ∞| in the x chart or the z chart.
pub fn hasse_wronskian_chart<F: Field>(
    curve: &HyperellipticCurve<F>,
    ell: usize,
    coordinate: Coordinate,
) -> Result<Wronskian<F>> {
    let g = curve.genus();
    let basis = match coordinate {
        Coordinate::X => monomial_basis(g, ell),
        Coordinate::Z => monomial_basis_at_infinity(g, ell),
    };
    hasse_wronskian(&curve.ring_at(coordinate), &basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::linalg::Ring;

    #[test]
    fn one_x_has_wronskian_one() {
        let f = DensePoly::from_i64s(&Rationals, &[1, 2, 0, 0, 0, 1]);
        let r = CurveRing::new(f);
        let w = hasse_wronskian(&r, &[Monomial::x_pow(0), Monomial::x_pow(1)]).unwrap();
        assert_eq!(w.f_exponent, 1);
        assert_eq!(w.normalized(r.f()).numerator, r.one());
    }

    #[test]
    fn repeated_element_is_dependent() {
        let f = DensePoly::from_i64s(&Rationals, &[1, 2, 0, 1]);
        let r = CurveRing::new(f);
        let e = hasse_wronskian(&r, &[Monomial::xy(0), Monomial::xy(0)]);
        assert_eq!(e, Err(Error::DependentBasis));
    }
}
