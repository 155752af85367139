//! Local indices read off the Wronskian expanded in a local uniformizer,
//! without the closed forms.

use super::{
    index_infinity, index_ramified, index_unramified_at, with_policy, FormulaUsed, LocalIndexReport, PointDescriptor,
    PointKind,
};
use crate::curve::{
    expand_at_point, monomial_basis, monomial_basis_at_infinity, CurvePoint, HyperellipticCurve, Monomial,
};
use crate::error::{Error, Result};
use crate::field::{choose2, Field, FiniteField};
use crate::inflection::inflection_poly;
use crate::linalg::{berkowitz_det, SquareMatrix};
use crate::poly::series::SeriesRing;
use crate::poly::TruncatedSeries;

use super::local_index_1d;

#[derive(Debug, Clone)]
pub struct OracleOptions {
    /// Fixed projection slope; otherwise 1, 2, 3, … until the projection is étale.
    pub b: Option<i64>,
    pub start_prec: Option<usize>,
    pub max_prec: usize,
    pub max_b: i64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            b: None,
            start_prec: None,
            max_prec: 512,
            max_b: 64,
        }
    }
}

fn power<F: Field>(s: &TruncatedSeries<F>, k: usize) -> TruncatedSeries<F> {
    let mut acc = TruncatedSeries::constant(s.field(), s.field().one(), s.prec());
    for _ in 0..k {
        acc = acc.mul(s);
    }
    acc
}

/// det(D_t^i λ_j) modulo t^{prec − r}, r + 1 = |λ|.
pub fn series_wronskian<F: Field>(
    curve: &HyperellipticCurve<F>,
    ell: usize,
    point: &CurvePoint<F>,
    b: &F::Elem,
    prec: usize,
) -> Result<TruncatedSeries<F>> {
    Ok(series_wronskian_with_chart(curve, ell, point, b, prec)?.0)
}

/// Also returns dX/dt at the point, X the x-coordinate of the chart.
fn series_wronskian_with_chart<F: Field>(
    curve: &HyperellipticCurve<F>,
    ell: usize,
    point: &CurvePoint<F>,
    b: &F::Elem,
    prec: usize,
) -> Result<(TruncatedSeries<F>, F::Elem)> {
    let g = curve.genus();
    let basis: Vec<Monomial> = match point {
        CurvePoint::Infinity => monomial_basis_at_infinity(g, ell),
        CurvePoint::Affine { .. } => monomial_basis(g, ell),
    };
    let r = basis.len() - 1;
    if prec <= r {
        return Err(Error::TruncationTooShort(prec));
    }
    let e = expand_at_point(curve, point, b, prec)?;
    let cols: Vec<TruncatedSeries<F>> = basis
        .iter()
        .map(|m| {
            let xs = power(&e.x, m.x);
            if m.y == 0 {
                xs
            } else {
                xs.mul(&e.y)
            }
        })
        .collect();
    let out_prec = prec - r;
    let mat = SquareMatrix::from_fn(basis.len(), |i, j| cols[j].hasse(i).truncate(out_prec));
    let ring = SeriesRing {
        field: curve.field(),
        prec: out_prec,
    };
    Ok((berkowitz_det(&ring, &mat), e.x.coeff(1)))
}

fn descriptor<F: Field>(curve: &HyperellipticCurve<F>, point: &CurvePoint<F>) -> PointDescriptor {
    let field = curve.field();
    match point {
        CurvePoint::Infinity => PointDescriptor {
            kind: PointKind::Infinity,
            locus: "inf".into(),
            residue_degree: 1,
            sheet: None,
            aggregate: false,
        },
        CurvePoint::Affine { x, y } => PointDescriptor {
            kind: if field.is_zero(y) {
                PointKind::Ramified
            } else {
                PointKind::Unramified
            },
            locus: format!("(x, y) = ({}, {})", field.fmt_elem(x), field.fmt_elem(y)),
            residue_degree: 1,
            sheet: None,
            aggregate: false,
        },
    }
}

/// Index at an F-rational point from the expanded Wronskian.
///
/// At ramification points and ∞ the uniformizer t agrees with y (resp. w)
/// to first order. At unramified points the closed forms use x, and the
/// leading coefficient changes by (dx/dt)^{m + C(r+1,2)}; that factor is
/// removed so both sides refer to the same coordinate.
pub fn index_by_series_oracle<F: Field>(
    curve: &HyperellipticCurve<F>,
    ell: usize,
    point: &CurvePoint<F>,
    opts: &OracleOptions,
) -> Result<LocalIndexReport<F>> {
    let field = curve.field();
    let slopes: Vec<i64> = match opts.b {
        Some(b) => vec![b],
        None => {
            let p = field.characteristic();
            let cap = if p == 0 { opts.max_b } else { opts.max_b.min(p as i64 - 1) };
            (1..=cap).collect()
        }
    };
    let mut prec = opts
        .start_prec
        .unwrap_or(choose2(ell as i64 + 1) as usize + 4);
    let r = match point {
        CurvePoint::Infinity => monomial_basis_at_infinity(curve.genus(), ell).len() - 1,
        CurvePoint::Affine { .. } => monomial_basis(curve.genus(), ell).len() - 1,
    };
    prec = prec.max(r + 2);
    for &bv in &slopes {
        let b = field.from_i64(bv);
        let mut n = prec;
        loop {
            match series_wronskian_with_chart(curve, ell, point, &b, n) {
                Err(Error::SingularExpansion) => break,
                Err(e) => return Err(e),
                Ok((w, dxdt)) => match local_index_1d(&w) {
                    Ok(mut index) => {
                        let m = w.valuation().expect("nonzero");
                        let mut notes = vec![format!("b = {bv}, N = {n}")];
                        let unramified = matches!(point, CurvePoint::Affine { y, .. } if !field.is_zero(y));
                        if unramified && (m + choose2(r as i64 + 1) as usize) % 2 == 1 {
                            let c = field.inv(&dxdt).ok_or(Error::SingularExpansion)?;
                            index = index.scale(&c)?;
                            notes.push(format!("transition factor dt/dx = {}", field.fmt_elem(&c)));
                        }
                        let mut rep = LocalIndexReport {
                            point: descriptor(curve, point),
                            multiplicity: m,
                            rank: index.rank(),
                            index: Some(index),
                            naive_index: None,
                            formula_used: FormulaUsed::SeriesOracle,
                            disc_indeterminate: false,
                            rank_only: false,
                            notes,
                        };
                        rep = with_policy(rep, ell);
                        return Ok(rep);
                    }
                    Err(Error::TruncationTooShort(_)) if n * 2 <= opts.max_prec => n *= 2,
                    Err(e) => return Err(e),
                },
            }
        }
    }
    Err(Error::SingularExpansion)
}

/// (closed form, oracle) at ∞, at every rational root of f and at both
/// sheets over every rational root of P_{g,ℓ} with f(γ) a nonzero square.
pub fn cross_check_rational_points<F: FiniteField>(
    curve: &HyperellipticCurve<F>,
    ell: usize,
    opts: &OracleOptions,
) -> Result<Vec<(LocalIndexReport<F>, LocalIndexReport<F>)>> {
    let field = curve.field();
    let f = curve.f();
    let p = if ell > curve.genus() {
        Some(inflection_poly(curve.genus(), ell, f)?)
    } else {
        None
    };
    let mut pairs = vec![(
        index_infinity(curve, ell)?,
        index_by_series_oracle(curve, ell, &CurvePoint::Infinity, opts)?,
    )];
    let q: u64 = field
        .order()
        .try_into()
        .map_err(|_| Error::Precondition("field too large to enumerate".into()))?;
    for i in 0..q {
        let x = field.element_at(i);
        let fx = f.eval(&x);
        if field.is_zero(&fx) {
            let pt = CurvePoint::Affine {
                x: x.clone(),
                y: field.zero(),
            };
            pairs.push((index_ramified(curve, ell, &x)?, index_by_series_oracle(curve, ell, &pt, opts)?));
            continue;
        }
        let Some(p) = &p else { continue };
        if !field.is_zero(&p.eval(&x)) {
            continue;
        }
        let Some(s) = field.sqrt(&fx) else { continue };
        for y in [s.clone(), field.neg(&s)] {
            let pt = CurvePoint::Affine {
                x: x.clone(),
                y: y.clone(),
            };
            pairs.push((
                index_unramified_at(curve, ell, &x, &y)?,
                index_by_series_oracle(curve, ell, &pt, opts)?,
            ));
        }
    }
    Ok(pairs)
}

/// Same multiplicity and equivalent classes.
pub fn reports_agree<F: Field>(a: &LocalIndexReport<F>, b: &LocalIndexReport<F>) -> Result<bool> {
    match (&a.index, &b.index) {
        (Some(x), Some(y)) => Ok(a.multiplicity == b.multiplicity && x.equivalent(y)?),
        _ => Ok(false),
    }
}
