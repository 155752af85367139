//! Local Euler indices of the Wronskian section of |2ℓ∞| and the global
//! inflection class.

pub mod audit;
pub mod oracle;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::curve::{det_m, HyperellipticCurve};
use crate::error::{Error, Result};
use crate::field::{choose2, Extension, Field, FiniteField};
use crate::gw::{gw_trace, GWClass};
use crate::inflection::inflection_poly;
use crate::poly::{DensePoly, TruncatedSeries};

pub use audit::{audit_etale, audit_finite, audit_reals, Check, GlobalAudit, Verdict, VerdictMode};
pub use oracle::{
    cross_check_rational_points, index_by_series_oracle, reports_agree, series_wronskian, OracleOptions,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FormulaUsed {
    #[serde(rename = "lemma_locEuler")]
    LemmaLocEuler,
    #[serde(rename = "thm_l_leq_g")]
    ThmLLeqG,
    #[serde(rename = "thm_l_gt_g")]
    ThmLGtG,
    #[serde(rename = "thm_infty_l_leq_g")]
    ThmInftyLLeqG,
    #[serde(rename = "thm_infty_l_gt_g")]
    ThmInftyLGtG,
    #[serde(rename = "prop_infl_poly")]
    PropInflPoly,
    #[serde(rename = "series_oracle")]
    SeriesOracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    Ramified,
    Infinity,
    Unramified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointDescriptor {
    pub kind: PointKind,
    /// Minimal polynomial, interval, or algebra describing the point(s).
    pub locus: String,
    /// [k(point) : F]; for aggregated reports the total degree.
    pub residue_degree: usize,
    /// Sign of the chosen square root of f(γ) for unramified points.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sheet: Option<i8>,
    /// True when one report stands for several closed points.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub aggregate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct LocalIndexReport<F: Field> {
    pub point: PointDescriptor,
    pub multiplicity: usize,
    pub rank: i64,
    pub index: Option<GWClass<F>>,
    /// For disc-indeterminate points: the formula evaluated over k(γ, √f(γ))
    /// and traced down. Diagnostic only, never used in a verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub naive_index: Option<GWClass<F>>,
    pub formula_used: FormulaUsed,
    pub disc_indeterminate: bool,
    pub rank_only: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl<F: Field> LocalIndexReport<F> {
    fn determined(point: PointDescriptor, multiplicity: usize, index: GWClass<F>, formula: FormulaUsed) -> Self {
        LocalIndexReport {
            point,
            multiplicity,
            rank: index.rank(),
            index: Some(index),
            naive_index: None,
            formula_used: formula,
            disc_indeterminate: false,
            rank_only: false,
            notes: Vec::new(),
        }
    }
}

/// GW-level output is only claimed for ℓ ≡ 1 mod 4.
pub fn orientation_ok(ell: usize) -> bool {
    ell % 4 == 1
}

/// (m/2)·ℍ for m even, ((m−1)/2)·ℍ + ⟨a⟩ for m odd.
pub fn lemma_class<F: Field>(field: &F, m: usize, a: &F::Elem) -> Result<GWClass<F>> {
    if m % 2 == 0 {
        Ok(GWClass::hyperbolic(field, (m / 2) as i64))
    } else {
        Ok(GWClass::hyperbolic(field, ((m - 1) / 2) as i64).add(&GWClass::diag1(field, a.clone())?)?)
    }
}

/// Index of a one-variable zero x^m(a + x·g(x)).
pub fn local_index_1d<F: Field>(sigma: &TruncatedSeries<F>) -> Result<GWClass<F>> {
    let (m, a) = sigma
        .leading()
        .ok_or(Error::TruncationTooShort(sigma.prec()))?;
    lemma_class(sigma.field(), m, &a)
}

fn display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn display_opt<T: std::fmt::Display, S: serde::Serializer>(
    v: &Option<T>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

/// coeff·β^exponent where β is (D¹f)(γ) or (D¹h)(0).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorForm {
    #[serde(serialize_with = "display")]
    pub coeff: BigRational,
    pub exponent: u64,
}

/// Index shape at a ramification point: hyperbolic·ℍ (+ ⟨generator⟩).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    pub multiplicity: usize,
    pub hyperbolic: usize,
    pub generator: Option<GeneratorForm>,
    /// det M(ℓ,g) for ℓ > g; must be nonzero in the base field.
    #[serde(serialize_with = "display_opt")]
    pub det_m: Option<BigInt>,
}

impl ClosedForm {
    /// Evaluates in a residue field K at β.
    pub fn evaluate<K: Field>(&self, k: &K, beta: &K::Elem) -> Result<GWClass<K>> {
        if let Some(d) = &self.det_m {
            if k.is_zero(&k.from_bigint(d)) {
                return Err(Error::TheoremHypothesisFailed(format!(
                    "det M = {d} vanishes in {}",
                    k.describe()
                )));
            }
        }
        let mut u = GWClass::hyperbolic(k, self.hyperbolic as i64);
        if let Some(gf) = &self.generator {
            let c = k
                .from_rational(&gf.coeff)
                .ok_or_else(|| Error::TheoremHypothesisFailed("coefficient not defined".into()))?;
            let v = k.mul(&c, &k.pow(beta, gf.exponent));
            u = u.add(&GWClass::diag1(k, v)?)?;
        }
        Ok(u)
    }

    /// Sign of the generator given the sign of β.
    pub fn generator_sign(&self, beta_sign: i8) -> Option<i8> {
        self.generator.as_ref().map(|gf| {
            let cs: i8 = if gf.coeff > BigRational::zero() { 1 } else { -1 };
            if gf.exponent % 2 == 1 {
                cs * beta_sign
            } else {
                cs
            }
        })
    }
}

fn pow2(e: usize) -> BigRational {
    BigRational::from_integer(BigInt::one() << e)
}

/// Affine ramification points. ℓ ≤ g: m = C(ℓ+1,2), generator f′(γ)/2.
/// ℓ > g: m = C(g+1,2), generator det M·2^m·f′(γ)^{m+ℓμ}.
pub fn ramified_form(g: usize, ell: usize) -> Result<ClosedForm> {
    form(g, ell, false)
}

/// ∞: ℓ ≤ g generator −h′(0)/2; ℓ > g generator (−1)^{1+C(μ,2)}·det M·2^m·h′(0)^{m+ℓμ}.
pub fn infinity_form(g: usize, ell: usize) -> Result<ClosedForm> {
    form(g, ell, true)
}

fn form(g: usize, ell: usize, infinity: bool) -> Result<ClosedForm> {
    if g == 0 || ell == 0 {
        return Err(Error::Precondition("need g ≥ 1 and ℓ ≥ 1".into()));
    }
    if ell <= g {
        let m = choose2(ell as i64 + 1) as usize;
        let sign = if infinity { -1 } else { 1 };
        return Ok(ClosedForm {
            multiplicity: m,
            hyperbolic: m / 2,
            generator: (m % 2 == 1).then(|| GeneratorForm {
                coeff: BigRational::new(sign.into(), 2.into()),
                exponent: 1,
            }),
            det_m: None,
        });
    }
    let mu = ell - g;
    let c = choose2(g as i64 + 1) as usize;
    let d = det_m(ell, g)?;
    let mut coeff = BigRational::from_integer(d.clone()) * pow2(c);
    if infinity && (1 + choose2(mu as i64)) % 2 == 1 {
        coeff = -coeff;
    }
    Ok(ClosedForm {
        multiplicity: c,
        hyperbolic: c / 2,
        generator: (c % 2 == 1).then(|| GeneratorForm {
            coeff,
            exponent: (c + ell * mu) as u64,
        }),
        det_m: Some(d),
    })
}

/// Sign ε in w(λ) = ε·(f^{−(ℓ+1)}y)^μ·P_{g,ℓ}(x) for the basis order of λ.
pub fn wronskian_sign(g: usize, mu: usize) -> i8 {
    if (choose2(mu as i64) + (mu * (g + 1)) as i64) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The sign (−1)^{C(μ+1,2)} as printed; equals `wronskian_sign` iff μ·g is even.
pub fn printed_wronskian_sign(mu: usize) -> i8 {
    if choose2(mu as i64 + 1) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Class (α/2)·ℍ with α = g(2ℓ−g+1)² for ℓ > g and ℓ(ℓ+1)(g+1) for ℓ ≤ g.
pub fn global_class<F: Field>(g: usize, ell: usize, field: &F) -> Result<GWClass<F>> {
    let alpha = global_rank(g, ell)?;
    if alpha % 2 != 0 {
        return Err(Error::ImpossibleClass(format!("odd rank {alpha}")));
    }
    Ok(GWClass::hyperbolic(field, alpha / 2))
}

pub fn global_rank(g: usize, ell: usize) -> Result<i64> {
    if g == 0 || ell == 0 {
        return Err(Error::Precondition("need g ≥ 1 and ℓ ≥ 1".into()));
    }
    let (g, l) = (g as i64, ell as i64);
    Ok(if l > g {
        g * (2 * l - g + 1).pow(2)
    } else {
        l * (l + 1) * (g + 1)
    })
}

fn ramified_descriptor(locus: String, d: usize) -> PointDescriptor {
    PointDescriptor {
        kind: PointKind::Ramified,
        locus,
        residue_degree: d,
        sheet: None,
        aggregate: false,
    }
}

fn infinity_descriptor() -> PointDescriptor {
    PointDescriptor {
        kind: PointKind::Infinity,
        locus: "inf".into(),
        residue_degree: 1,
        sheet: None,
        aggregate: false,
    }
}

/// Closed-form index at an F-rational root γ of f.
pub fn index_ramified<F: Field>(
    curve: &HyperellipticCurve<F>,
    ell: usize,
    gamma: &F::Elem,
) -> Result<LocalIndexReport<F>> {
    let field = curve.field();
    if !field.is_zero(&curve.f().eval(gamma)) {
        return Err(Error::Precondition("γ is not a root of f".into()));
    }
    let form = ramified_form(curve.genus(), ell)?;
    let beta = curve.f().hasse(1).eval(gamma);
    let index = form.evaluate(field, &beta)?;
    let formula = if ell <= curve.genus() {
        FormulaUsed::ThmLLeqG
    } else {
        FormulaUsed::ThmLGtG
    };
    Ok(with_policy(
        LocalIndexReport::determined(
            ramified_descriptor(format!("x = {}", field.fmt_elem(gamma)), 1),
            form.multiplicity,
            index,
            formula,
        ),
        ell,
    ))
}

pub fn index_infinity<F: Field>(curve: &HyperellipticCurve<F>, ell: usize) -> Result<LocalIndexReport<F>> {
    let field = curve.field();
    let form = infinity_form(curve.genus(), ell)?;
    let beta = curve.at_infinity().hasse(1).eval(&field.zero());
    let index = form.evaluate(field, &beta)?;
    let formula = if ell <= curve.genus() {
        FormulaUsed::ThmInftyLLeqG
    } else {
        FormulaUsed::ThmInftyLGtG
    };
    Ok(with_policy(
        LocalIndexReport::determined(infinity_descriptor(), form.multiplicity, index, formula),
        ell,
    ))
}

/// ε·(f(γ)^{−(ℓ+1)}·s)^μ·lemma(m, (D^m P)(γ)) in the residue field K of γ,
/// where s² = f(γ) selects the sheet.
pub fn unramified_class<K: Field>(
    k: &K,
    g: usize,
    ell: usize,
    p: &DensePoly<K>,
    f: &DensePoly<K>,
    gamma: &K::Elem,
    s: &K::Elem,
) -> Result<(usize, GWClass<K>)> {
    let m = p.root_multiplicity(gamma);
    if m == 0 {
        return Err(Error::NotAnInflectionPoint);
    }
    let fg = f.eval(gamma);
    if k.is_zero(&fg) || k.square(s) != fg {
        return Err(Error::Precondition("s² ≠ f(γ) or f(γ) = 0".into()));
    }
    let mu = ell - g;
    let finv = k.inv(&fg).expect("nonzero");
    let base = k.mul(&k.pow(&finv, ell as u64 + 1), s);
    let mut pre = k.pow(&base, mu as u64);
    if wronskian_sign(g, mu) < 0 {
        pre = k.neg(&pre);
    }
    let lead = p.hasse(m).eval(gamma);
    Ok((m, lemma_class(k, m, &lead)?.scale(&pre)?))
}

/// Closed-form index at an F-rational unramified point (γ, y) with P_{g,ℓ}(γ) = 0.
pub fn index_unramified_at<F: Field>(
    curve: &HyperellipticCurve<F>,
    ell: usize,
    gamma: &F::Elem,
    y: &F::Elem,
) -> Result<LocalIndexReport<F>> {
    let g = curve.genus();
    let field = curve.field();
    let p = inflection_poly(g, ell, curve.f())?;
    let (m, index) = unramified_class(field, g, ell, &p, curve.f(), gamma, y)?;
    let point = PointDescriptor {
        kind: PointKind::Unramified,
        locus: format!("(x, y) = ({}, {})", field.fmt_elem(gamma), field.fmt_elem(y)),
        residue_degree: 1,
        sheet: None,
        aggregate: false,
    };
    Ok(with_policy(
        LocalIndexReport::determined(point, m, index, FormulaUsed::PropInflPoly),
        ell,
    ))
}

/// Both sheets over an F-rational root γ of P_{g,ℓ} of a curve over 𝔽_q.
/// If f(γ) is not a square the single closed point is reported rank-only.
pub fn index_unramified<F: FiniteField>(
    curve: &HyperellipticCurve<F>,
    ell: usize,
    gamma: &F::Elem,
) -> Result<Vec<LocalIndexReport<F>>> {
    let field = curve.field();
    let fg = curve.f().eval(gamma);
    let p = inflection_poly(curve.genus(), ell, curve.f())?;
    let m = p.root_multiplicity(gamma);
    if m == 0 {
        return Err(Error::NotAnInflectionPoint);
    }
    match field.sqrt(&fg) {
        Some(s) => {
            let mut out = Vec::new();
            for (sign, y) in [(1i8, s.clone()), (-1, field.neg(&s))] {
                let mut r = index_unramified_at(curve, ell, gamma, &y)?;
                r.point.sheet = Some(sign);
                out.push(r);
            }
            Ok(out)
        }
        None => {
            let mut r = indeterminate_report(
                format!("x = {}, y² = {}", field.fmt_elem(gamma), field.fmt_elem(&fg)),
                2,
                m,
                ell,
            );
            r.naive_index = Some(naive_unramified(field, curve.genus(), ell, &p, curve.f(), gamma)?);
            Ok(vec![r])
        }
    }
}

/// Tr_{K(s)/K} of the unramified formula with s² = f(γ) adjoined.
pub fn naive_unramified<K: FiniteField>(
    k: &K,
    g: usize,
    ell: usize,
    p: &DensePoly<K>,
    f: &DensePoly<K>,
    gamma: &K::Elem,
) -> Result<GWClass<K>> {
    let fg = f.eval(gamma);
    let modulus = DensePoly::new(k, vec![k.neg(&fg), k.zero(), k.one()]);
    let k2 = Extension::with_var(k, &modulus, "s")?;
    let lift = |q: &DensePoly<K>| q.map(&k2, |c| k2.embed(c));
    let (_, class) = unramified_class(&k2, g, ell, &lift(p), &lift(f), &k2.embed(gamma), &k2.generator())?;
    gw_trace(&k2, &class)
}

fn indeterminate_report<F: Field>(locus: String, degree: usize, m: usize, ell: usize) -> LocalIndexReport<F> {
    let mut r = LocalIndexReport {
        point: PointDescriptor {
            kind: PointKind::Unramified,
            locus,
            residue_degree: degree,
            sheet: None,
            aggregate: false,
        },
        multiplicity: m,
        rank: (m * degree) as i64,
        index: None,
        naive_index: None,
        formula_used: FormulaUsed::PropInflPoly,
        disc_indeterminate: true,
        rank_only: true,
        notes: vec!["sqrt(f(gamma)) is not in k(gamma)".into()],
    };
    if !orientation_ok(ell) {
        r.notes.push("ℓ ≢ 1 mod 4".into());
    }
    r
}

pub(crate) fn with_policy<F: Field>(mut r: LocalIndexReport<F>, ell: usize) -> LocalIndexReport<F> {
    if !orientation_ok(ell) {
        r.rank_only = true;
        r.notes.push("ℓ ≢ 1 mod 4".into());
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rationals};

    #[test]
    fn lemma_examples() {
        let q = Rationals;
        let s = TruncatedSeries::new(&q, vec![BigRational::zero(), BigRational::one()], 4);
        assert_eq!(local_index_1d(&s).unwrap(), GWClass::diag1(&q, BigRational::one()).unwrap());
        let f13 = Fp::new(13).unwrap();
        let s = TruncatedSeries::new(&f13, vec![0, 0, 5, 1], 6);
        assert_eq!(local_index_1d(&s).unwrap(), GWClass::hyperbolic(&f13, 1));
        let s = TruncatedSeries::new(&f13, vec![0, 0, 0, 3], 6);
        let expect = GWClass::hyperbolic(&f13, 1).add(&GWClass::diag1(&f13, 3).unwrap()).unwrap();
        assert_eq!(local_index_1d(&s).unwrap(), expect);
        let z = TruncatedSeries::zero(&f13, 5);
        assert_eq!(local_index_1d(&z), Err(Error::TruncationTooShort(5)));
    }

    #[test]
    fn global_ranks() {
        let q = Rationals;
        assert_eq!(global_class(1, 5, &q).unwrap(), GWClass::hyperbolic(&q, 50));
        assert_eq!(global_class(2, 5, &q).unwrap(), GWClass::hyperbolic(&q, 81));
        assert_eq!(global_rank(2, 1).unwrap(), 6);
    }

    #[test]
    fn forms() {
        let r = ramified_form(1, 2).unwrap();
        assert_eq!(r.multiplicity, 1);
        let gf = r.generator.unwrap();
        assert_eq!(gf.coeff, BigRational::from_integer(4.into()));
        assert_eq!(gf.exponent, 1 + 2);
        let i = infinity_form(1, 2).unwrap();
        assert_eq!(i.generator.unwrap().coeff, BigRational::from_integer((-4).into()));
        let l = ramified_form(2, 1).unwrap();
        assert_eq!(l.multiplicity, 1);
        assert_eq!(l.hyperbolic, 0);
    }

    #[test]
    fn sign_conventions() {
        assert_eq!(wronskian_sign(1, 1), 1);
        assert_eq!(printed_wronskian_sign(1), -1);
        for g in 1..6 {
            for mu in 1..6 {
                assert_eq!(wronskian_sign(g, mu) == printed_wronskian_sign(mu), (mu * g) % 2 == 0);
            }
        }
    }
}
