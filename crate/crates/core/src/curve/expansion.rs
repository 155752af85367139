//! Local expansions in the uniformizer t = (y − b·x) − (y₀ − b·x₀) by
//! Newton iteration on (t + u₀ + b·X)² = f(X).

use super::{Coordinate, HyperellipticCurve};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{DensePoly, TruncatedSeries};

#[derive(Debug, Clone, PartialEq)]
pub enum CurvePoint<F: Field> {
    Affine { x: F::Elem, y: F::Elem },
    /// (z, w) = (0, 0) on w² = h(z).
    Infinity,
}

#[derive(Debug, Clone)]
pub struct LocalExpansion<F: Field> {
    pub chart: Coordinate,
    pub b: F::Elem,
    /// x(t), or z(t) at infinity.
    pub x: TruncatedSeries<F>,
    /// y(t), or w(t) at infinity.
    pub y: TruncatedSeries<F>,
}

/// Expansion of the chart coordinates on v² = poly(u) at (x0, y0).
pub fn expand_on_chart<F: Field>(
    poly: &DensePoly<F>,
    x0: &F::Elem,
    y0: &F::Elem,
    b: &F::Elem,
    prec: usize,
) -> Result<(TruncatedSeries<F>, TruncatedSeries<F>)> {
    let field = poly.field();
    if prec == 0 {
        return Err(Error::Precondition("expansion order must be ≥ 1".into()));
    }
    if field.square(y0) != poly.eval(x0) {
        return Err(Error::Precondition("point is not on the curve".into()));
    }
    let dpoly = poly.derivative();
    let two_b = field.mul(&field.from_i64(2), b);
    let d0 = field.sub(&field.mul(&two_b, y0), &dpoly.eval(x0));
    if field.is_zero(&d0) {
        return Err(Error::SingularExpansion);
    }
    let u0 = field.sub(y0, &field.mul(b, x0));
    let t = TruncatedSeries::var(field, prec);
    let base = TruncatedSeries::constant(field, u0, prec).add(&t);
    let ycur = |x: &TruncatedSeries<F>| base.add(&x.scale(b));
    let mut x = TruncatedSeries::constant(field, x0.clone(), prec);
    // Correct digits double per step.
    let mut steps = 1;
    while (1usize << (steps - 1)) < prec {
        steps += 1;
    }
    for _ in 0..=steps {
        let y = ycur(&x);
        let fx = TruncatedSeries::compose_poly(poly, &x);
        let residual = y.mul(&y).sub(&fx);
        if residual.valuation().is_none() {
            break;
        }
        let deriv = y.scale(&two_b).sub(&TruncatedSeries::compose_poly(&dpoly, &x));
        let inv = deriv.inverse().ok_or(Error::SingularExpansion)?;
        x = x.sub(&residual.mul(&inv));
    }
    let y = ycur(&x);
    Ok((x, y))
}

pub fn expand_at_point<F: Field>(
    curve: &HyperellipticCurve<F>,
    point: &CurvePoint<F>,
    b: &F::Elem,
    prec: usize,
) -> Result<LocalExpansion<F>> {
    let field = curve.field();
    let (chart, poly, x0, y0) = match point {
        CurvePoint::Affine { x, y } => (Coordinate::X, curve.f().clone(), x.clone(), y.clone()),
        CurvePoint::Infinity => (Coordinate::Z, curve.at_infinity(), field.zero(), field.zero()),
    };
    let (x, y) = expand_on_chart(&poly, &x0, &y0, b, prec)?;
    Ok(LocalExpansion {
        chart,
        b: b.clone(),
        x,
        y,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::rat_int;
    use crate::field::{Fp, Rationals};

    #[test]
    fn x_cubed_minus_x_at_origin() {
        let f = DensePoly::from_i64s(&Rationals, &[0, -1, 0, 1]);
        let c = HyperellipticCurve::new(f.clone()).unwrap();
        let p = CurvePoint::Affine { x: rat_int(0), y: rat_int(0) };
        let e = expand_at_point(&c, &p, &rat_int(0), 8).unwrap();
        assert_eq!(e.x.coeff(2), rat_int(-1));
        for k in (1..8).step_by(2) {
            assert_eq!(e.x.coeff(k), rat_int(0));
        }
        // y(t)² = f(x(t)) to the stated order.
        let lhs = e.y.mul(&e.y);
        let rhs = TruncatedSeries::compose_poly(&f, &e.x);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn infinity_linear_term() {
        let f13 = Fp::new(13).unwrap();
        let f = DensePoly::from_i64s(&f13, &[2, 1, 0, 1]);
        let c = HyperellipticCurve::new(f).unwrap();
        let e = expand_at_point(&c, &CurvePoint::Infinity, &0, 6).unwrap();
        // w² = z + …, so z = w² + O(w⁴).
        assert_eq!(e.x.coeff(1), 0);
        assert_eq!(e.x.coeff(2), 1);
    }

    #[test]
    fn singular_projection_is_reported() {
        let f7 = Fp::new(7).unwrap();
        // f = x³ + 1, point (0, 1): with b = 0 the derivative 2b·y₀ − f′(0) vanishes.
        let f = DensePoly::from_i64s(&f7, &[1, 0, 0, 1]);
        let c = HyperellipticCurve::new(f).unwrap();
        let p = CurvePoint::Affine { x: 0, y: 1 };
        assert!(matches!(expand_at_point(&c, &p, &0, 4), Err(Error::SingularExpansion)));
        assert!(expand_at_point(&c, &p, &1, 4).is_ok());
    }
}
