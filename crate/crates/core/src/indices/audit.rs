//! Sum of all local indices of the Wronskian section, compared with the
//! global class.

use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use super::{
    global_class, global_rank, index_infinity, index_ramified, index_unramified, indeterminate_report,
    infinity_form, naive_unramified, lemma_class, orientation_ok, ramified_descriptor, ramified_form, unramified_class,
    with_policy, wronskian_sign, FormulaUsed, LocalIndexReport, PointDescriptor, PointKind,
};
use crate::curve::HyperellipticCurve;
use crate::error::{Error, Result};
use crate::field::{algebraic_sign, Extension, Field, FiniteField, Rationals, Reals};
use crate::gw::{gw_trace, GWClass};
use crate::inflection::inflection_poly;
use crate::poly::{factor_over_fq, isolate_real_roots, squarefree_decomposition, DensePoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictMode {
    Full,
    RankOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub mode: VerdictMode,
    pub rank: Check,
    pub signature: Check,
    pub disc: Check,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.rank == Check::Pass && self.signature != Check::Fail && self.disc != Check::Fail
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound = "")]
pub struct GlobalAudit<F: Field> {
    pub field: String,
    pub curve: String,
    pub g: usize,
    pub ell: usize,
    pub points: Vec<LocalIndexReport<F>>,
    /// Σ of all local indices; `None` if some report is rank-only without a class.
    pub total: Option<GWClass<F>>,
    pub total_rank: i64,
    pub expected: GWClass<F>,
    pub verdict: Verdict,
    pub reasons: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub subtraction_used: bool,
    /// Σ with `naive_index` substituted at disc-indeterminate points.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub naive_total: Option<GWClass<F>>,
    /// Disc comparison of `naive_total` with the expected class; not part of the verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub naive_disc: Option<Check>,
}

impl<F: Field> GlobalAudit<F> {
    pub fn total_description(&self) -> String {
        self.total
            .as_ref()
            .map(|t| t.describe())
            .unwrap_or_else(|| format!("rank {}", self.total_rank))
    }
}

fn signature<F: Field>(u: &GWClass<F>) -> Option<i64> {
    let f = u.field();
    u.generators()
        .iter()
        .map(|a| f.sign(a).map(i64::from))
        .sum::<Option<i64>>()
}

/// Π generators · (−1)^h.
fn disc<F: Field>(u: &GWClass<F>) -> F::Elem {
    let f = u.field();
    let mut d = u.generators().iter().fold(f.one(), |acc, a| f.mul(&acc, a));
    if u.hyperbolic_count().rem_euclid(2) == 1 {
        d = f.neg(&d);
    }
    d
}

fn compare<F: Field>(total: &GWClass<F>, expected: &GWClass<F>) -> (Check, Check) {
    let sig = match (signature(total), signature(expected)) {
        (Some(a), Some(b)) => {
            if a == b {
                Check::Pass
            } else {
                Check::Fail
            }
        }
        _ => Check::Skipped,
    };
    let f = total.field();
    let d = match f.is_square(&f.mul(&disc(total), &disc(expected))) {
        Ok(true) => Check::Pass,
        Ok(false) => Check::Fail,
        Err(_) => Check::Skipped,
    };
    (sig, d)
}

fn finish<F: Field>(curve: &HyperellipticCurve<F>, ell: usize, points: Vec<LocalIndexReport<F>>) -> Result<GlobalAudit<F>> {
    let field = curve.field();
    let g = curve.genus();
    let total_rank: i64 = points.iter().map(|p| p.rank).sum();
    let mut total = Some(GWClass::zero(field));
    for p in &points {
        total = match (total, &p.index) {
            (Some(t), Some(u)) => Some(t.add(u)?),
            _ => None,
        };
    }
    let mut naive_total = (total.is_none() && points.iter().any(|p| p.naive_index.is_some()))
        .then(|| GWClass::zero(field));
    for p in &points {
        naive_total = match (naive_total, p.index.as_ref().or(p.naive_index.as_ref())) {
            (Some(t), Some(u)) => Some(t.add(u)?),
            _ => None,
        };
    }
    let expected = global_class(g, ell, field)?;
    let naive_disc = naive_total.as_ref().map(|t| compare(t, &expected).1);
    let target = global_rank(g, ell)?;
    let mut reasons = Vec::new();
    if !orientation_ok(ell) {
        reasons.push("ℓ ≢ 1 mod 4".to_string());
    }
    let indeterminate = points.iter().filter(|p| p.disc_indeterminate).count();
    if indeterminate > 0 {
        reasons.push(format!("sqrt(f(gamma)) not in k(gamma) at {indeterminate} point(s)"));
    }
    if points.iter().any(|p| p.index.is_none() && !p.disc_indeterminate) {
        reasons.push(format!("unramified points over {} reported rank-only", field.describe()));
    }
    let mut notes = Vec::new();
    if ell <= g {
        let paper = g as i64 * (2 * ell as i64 - g as i64 + 1).pow(2);
        notes.push(format!(
            "ℓ ≤ g: rank target ℓ(ℓ+1)(g+1) = {target} used; g(2ℓ−g+1)² would give {paper}"
        ));
    }
    let rank = if total_rank == target { Check::Pass } else { Check::Fail };
    let (mode, sig, d) = match (&total, reasons.is_empty()) {
        (Some(t), true) => {
            let (s, d) = compare(t, &expected);
            (VerdictMode::Full, s, d)
        }
        _ => (VerdictMode::RankOnly, Check::Skipped, Check::Skipped),
    };
    let subtraction_used = total.as_ref().is_some_and(|t| t.subtraction_used());
    Ok(GlobalAudit {
        field: field.describe(),
        curve: format!("y^2 = {}", curve.f()),
        g,
        ell,
        points,
        total,
        total_rank,
        expected,
        verdict: Verdict {
            mode,
            rank,
            signature: sig,
            disc: d,
        },
        reasons,
        notes,
        subtraction_used,
        naive_total,
        naive_disc,
    })
}

fn ramified_formula(g: usize, ell: usize) -> FormulaUsed {
    if ell <= g {
        FormulaUsed::ThmLLeqG
    } else {
        FormulaUsed::ThmLGtG
    }
}

fn unramified_poly<F: Field>(curve: &HyperellipticCurve<F>, ell: usize) -> Result<DensePoly<F>> {
    let p = inflection_poly(curve.genus(), ell, curve.f())?;
    if p.is_zero() {
        return Err(Error::TheoremHypothesisFailed(
            "inflection polynomial vanishes identically".into(),
        ));
    }
    if p.gcd(curve.f()).degree().unwrap_or(0) > 0 {
        return Err(Error::InternalInconsistency(
            "inflection polynomial shares a root with f".into(),
        ));
    }
    Ok(p)
}

fn report<F: Field>(point: PointDescriptor, m: usize, index: GWClass<F>, formula: FormulaUsed, ell: usize) -> LocalIndexReport<F> {
    with_policy(
        LocalIndexReport {
            point,
            multiplicity: m,
            rank: index.rank(),
            index: Some(index),
            naive_index: None,
            formula_used: formula,
            disc_indeterminate: false,
            rank_only: false,
            notes: Vec::new(),
        },
        ell,
    )
}

/// Every closed point of X over 𝔽_q, each index traced down to 𝔽_q.
pub fn audit_finite<F: FiniteField>(curve: &HyperellipticCurve<F>, ell: usize) -> Result<GlobalAudit<F>> {
    let field = curve.field();
    let g = curve.genus();
    let f = curve.f();
    let mut points = Vec::new();
    for (phi, _) in factor_over_fq(f)?.factors {
        let d = phi.degree().expect("nonconstant factor");
        if d == 1 {
            let gamma = field.neg(&phi.coeff(0));
            points.push(index_ramified(curve, ell, &gamma)?);
            continue;
        }
        let k = Extension::new(field, &phi)?;
        let gamma = k.generator();
        let fk = f.map(&k, |c| k.embed(c));
        let form = ramified_form(g, ell)?;
        let local = form.evaluate(&k, &fk.hasse(1).eval(&gamma))?;
        let index = gw_trace(&k, &local)?;
        points.push(report(
            ramified_descriptor(format!("{phi}"), d),
            form.multiplicity,
            index,
            ramified_formula(g, ell),
            ell,
        ));
    }
    points.push(index_infinity(curve, ell)?);
    if ell > g {
        let p = unramified_poly(curve, ell)?;
        for (phi, m) in factor_over_fq(&p)?.factors {
            let d = phi.degree().expect("nonconstant factor");
            if d == 1 {
                let gamma = field.neg(&phi.coeff(0));
                points.extend(index_unramified(curve, ell, &gamma)?);
                continue;
            }
            let k = Extension::new(field, &phi)?;
            let gamma = k.generator();
            let fk = f.map(&k, |c| k.embed(c));
            let pk = p.map(&k, |c| k.embed(c));
            let fg = fk.eval(&gamma);
            match k.sqrt(&fg) {
                Some(s) => {
                    for (sheet, y) in [(1i8, s.clone()), (-1, k.neg(&s))] {
                        let (mk, local) = unramified_class(&k, g, ell, &pk, &fk, &gamma, &y)?;
                        if mk != m {
                            return Err(Error::InternalInconsistency(format!(
                                "multiplicity {mk} over the residue field, {m} in the factorization"
                            )));
                        }
                        let point = PointDescriptor {
                            kind: PointKind::Unramified,
                            locus: format!("{phi}"),
                            residue_degree: d,
                            sheet: Some(sheet),
                            aggregate: false,
                        };
                        points.push(report(point, m, gw_trace(&k, &local)?, FormulaUsed::PropInflPoly, ell));
                    }
                }
                None => {
                    let mut r = indeterminate_report(format!("{phi}"), 2 * d, m, ell);
                    r.naive_index = Some(gw_trace(&k, &naive_unramified(&k, g, ell, &pk, &fk, &gamma)?)?);
                    points.push(r);
                }
            }
        }
    }
    finish(curve, ell, points)
}

fn unit_class(field: &Reals, sign: i8) -> Result<GWClass<Reals>> {
    GWClass::diag1(field, BigRational::from_integer(sign.into()))
}

fn signed_lemma(m: usize, sign: i8) -> Result<GWClass<Reals>> {
    lemma_class(&Reals, m, &BigRational::from_integer(sign.into()))
}

/// A curve over ℚ viewed over ℝ: real points exactly, complex ones as ℍ's.
pub fn audit_reals(curve: &HyperellipticCurve<Rationals>, ell: usize) -> Result<GlobalAudit<Reals>> {
    let g = curve.genus();
    let f = curve.f();
    let fr = f.map(&Reals, |c| c.clone());
    let real_curve = HyperellipticCurve::new(fr)?;
    let mut points = Vec::new();

    let form = ramified_form(g, ell)?;
    let fprime = f.hasse(1);
    let roots = isolate_real_roots(f)?;
    for gamma in &roots {
        let beta = algebraic_sign(gamma, &fprime);
        let mut index = GWClass::hyperbolic(&Reals, form.hyperbolic as i64);
        if let Some(s) = form.generator_sign(beta) {
            index = index.add(&unit_class(&Reals, s)?)?;
        }
        points.push(report(
            ramified_descriptor(gamma.describe(), 1),
            form.multiplicity,
            index,
            ramified_formula(g, ell),
            ell,
        ));
    }
    let pairs = (f.degree().expect("odd degree") - roots.len()) / 2;
    if pairs > 0 {
        let m = form.multiplicity;
        let mut point = ramified_descriptor(format!("{pairs} complex pair(s)"), 2 * pairs);
        point.aggregate = true;
        let index = GWClass::hyperbolic(&Reals, (m * pairs) as i64);
        points.push(report(point, m, index, ramified_formula(g, ell), ell));
    }

    let inf = infinity_form(g, ell)?;
    let lc_sign: i8 = if f.lc().expect("nonzero").is_positive() { 1 } else { -1 };
    let mut index = GWClass::hyperbolic(&Reals, inf.hyperbolic as i64);
    if let Some(s) = inf.generator_sign(lc_sign) {
        index = index.add(&unit_class(&Reals, s)?)?;
    }
    let formula = if ell <= g {
        FormulaUsed::ThmInftyLLeqG
    } else {
        FormulaUsed::ThmInftyLGtG
    };
    points.push(report(super::infinity_descriptor(), inf.multiplicity, index, formula, ell));

    if ell > g {
        let p = unramified_poly(curve, ell)?;
        let mu = ell - g;
        let eps = wronskian_sign(g, mu);
        for (q, m) in squarefree_decomposition(&p) {
            let real = isolate_real_roots(&q)?;
            let lead = p.hasse(m);
            for gamma in &real {
                let fs = algebraic_sign(gamma, f);
                if fs > 0 {
                    let ls = algebraic_sign(gamma, &lead);
                    for sheet in [1i8, -1] {
                        let pre = eps * if mu % 2 == 1 { sheet } else { 1 };
                        let index = signed_lemma(m, pre * ls)?;
                        let point = PointDescriptor {
                            kind: PointKind::Unramified,
                            locus: gamma.describe(),
                            residue_degree: 1,
                            sheet: Some(sheet),
                            aggregate: false,
                        };
                        points.push(report(point, m, index, FormulaUsed::PropInflPoly, ell));
                    }
                } else {
                    let point = PointDescriptor {
                        kind: PointKind::Unramified,
                        locus: format!("{} (f < 0)", gamma.describe()),
                        residue_degree: 2,
                        sheet: None,
                        aggregate: false,
                    };
                    let index = GWClass::hyperbolic(&Reals, m as i64);
                    points.push(report(point, m, index, FormulaUsed::PropInflPoly, ell));
                }
            }
            let pairs = (q.degree().expect("nonconstant") - real.len()) / 2;
            if pairs > 0 {
                let point = PointDescriptor {
                    kind: PointKind::Unramified,
                    locus: format!("{pairs} complex pair(s) of {q}"),
                    residue_degree: 4 * pairs,
                    sheet: None,
                    aggregate: true,
                };
                let index = GWClass::hyperbolic(&Reals, (2 * m * pairs) as i64);
                points.push(report(point, m, index, FormulaUsed::PropInflPoly, ell));
            }
        }
    }
    finish(&real_curve, ell, points)
}

/// Over fields without point-by-point factorization (ℚ, ℂ((t))): ramified
/// points traced through the étale algebra F[x]/(f), unramified points
/// aggregated rank-only.
pub fn audit_etale<F: Field>(curve: &HyperellipticCurve<F>, ell: usize) -> Result<GlobalAudit<F>> {
    let field = curve.field();
    let g = curve.genus();
    let f = curve.f();
    let n = f.degree().expect("odd degree");
    let mut points = Vec::new();

    let a = Extension::with_var(field, &f.monic(), "x")?;
    let x = a.generator();
    let fa = f.map(&a, |c| a.embed(c));
    let form = ramified_form(g, ell)?;
    let local = form.evaluate(&a, &fa.hasse(1).eval(&x))?;
    let mut point = ramified_descriptor(format!("{}", f.monic()), n);
    point.aggregate = true;
    points.push(report(point, form.multiplicity, gw_trace(&a, &local)?, ramified_formula(g, ell), ell));

    points.push(index_infinity(curve, ell)?);

    if ell > g {
        let p = unramified_poly(curve, ell)?;
        let deg = p.degree().unwrap_or(0);
        if deg == 0 {
            return finish(curve, ell, points);
        }
        let r = LocalIndexReport {
            point: PointDescriptor {
                kind: PointKind::Unramified,
                locus: format!("{}", p.monic()),
                residue_degree: 2 * deg,
                sheet: None,
                aggregate: true,
            },
            multiplicity: 1,
            rank: (2 * deg) as i64,
            index: None,
            naive_index: None,
            formula_used: FormulaUsed::PropInflPoly,
            disc_indeterminate: false,
            rank_only: true,
            notes: vec!["roots of the inflection polynomial not resolved".into()],
        };
        points.push(with_policy(r, ell));
    }
    finish(curve, ell, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    #[test]
    fn rank_only_below_orientation() {
        let f13 = Fp::new(13).unwrap();
        let c = HyperellipticCurve::new(DensePoly::from_i64s(&f13, &[2, 1, 0, 1])).unwrap();
        let a = audit_finite(&c, 2).unwrap();
        assert_eq!(a.verdict.mode, VerdictMode::RankOnly);
        assert!(a.reasons.iter().any(|r| r == "ℓ ≢ 1 mod 4"));
        assert_eq!(a.total_rank, 16);
        assert_eq!(a.verdict.rank, Check::Pass);
    }

    #[test]
    fn reals_genus_two_ell_one() {
        let q = Rationals;
        let c = HyperellipticCurve::new(DensePoly::from_i64s(&q, &[1, 2, 0, 0, 0, 1])).unwrap();
        let a = audit_reals(&c, 1).unwrap();
        assert_eq!(a.total_rank, 6);
        assert_eq!(a.verdict.mode, VerdictMode::Full);
        assert_eq!(a.verdict.signature, Check::Pass);
        assert_eq!(signature(a.total.as_ref().unwrap()), Some(0));
    }

    #[test]
    fn etale_over_q_is_rank_only_above_genus() {
        let q = Rationals;
        let c = HyperellipticCurve::new(DensePoly::from_i64s(&q, &[2, 1, 0, 1])).unwrap();
        let a = audit_etale(&c, 5).unwrap();
        assert_eq!(a.total_rank, 100);
        assert_eq!(a.verdict.mode, VerdictMode::RankOnly);
        assert!(a.total.is_none());
    }
}
