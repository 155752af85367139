//! Real roots of P_n(x, a) along a grid of a-values.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{fraction_cell, integer_cell, weierstrass_cubic, weierstrass_p, BivariatePoly, Table};
use crate::error::{Error, Result};
use crate::field::{algebraic_sign, AlgebraicReal, Rationals, RationalFunctions};
use crate::poly::{discriminant, isolate_real_roots, DensePoly};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSample {
    #[serde(serialize_with = "ser_fraction")]
    pub a: BigRational,
    /// Δ(a, 2) = 0: the cubic is singular and nothing else is recorded.
    pub excluded: bool,
    /// Distinct real roots of P_n(·, a).
    pub root_count: usize,
    /// Sign of f at each real root, in increasing order of the root.
    pub f_signs: Vec<i8>,
    pub separable: bool,
}

impl SweepSample {
    pub fn positive_count(&self) -> usize {
        self.f_signs.iter().filter(|s| **s > 0).count()
    }
}

fn ser_fraction<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fraction_cell(q))
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub n: usize,
    pub samples: Vec<SweepSample>,
    /// disc_x(P_n) as a polynomial in a.
    pub disc: DensePoly<Rationals>,
    /// Real roots of `disc`.
    pub separability_locus: Vec<AlgebraicReal>,
    /// Real a with Δ(a, 2) = 0.
    pub singular_locus: Vec<AlgebraicReal>,
    /// Points of `separability_locus` across which the number of real roots
    /// of P_n(·, a) changes: a real double root appears or disappears there.
    pub peaks: Vec<AlgebraicReal>,
}

impl SweepResult {
    pub fn table(&self) -> Table {
        let rows = self
            .samples
            .iter()
            .map(|s| {
                let signs: String = s.f_signs.iter().map(|v| if *v > 0 { '+' } else { '-' }).collect();
                vec![
                    fraction_cell(&s.a),
                    if s.excluded { "excluded".into() } else { integer_cell(s.root_count as i64) },
                    signs,
                    s.separable.to_string(),
                ]
            })
            .collect();
        Table {
            header: ["a", "root_count", "signs", "separable"].map(String::from).to_vec(),
            rows,
        }
    }
}

/// Δ(a, 2) = −4a³ − 108 for x³ + ax + 2.
fn weierstrass_delta() -> DensePoly<Rationals> {
    DensePoly::from_i64s(&Rationals, &[-108, 0, 0, -4])
}

/// disc_x of a polynomial in (x, a), as a polynomial in a.
pub fn discriminant_in_a(p: &BivariatePoly) -> Result<DensePoly<Rationals>> {
    let qa = RationalFunctions::new(&Rationals, "a");
    let d = discriminant(&p.to_family(&qa))?;
    qa.as_poly(&d)
        .ok_or_else(|| Error::InternalInconsistency("discriminant is not polynomial in a".into()))
}

pub fn sweep(
    n: usize,
    pn: &BivariatePoly,
    f: &BivariatePoly,
    delta: &DensePoly<Rationals>,
    grid: &[BigRational],
) -> Result<SweepResult> {
    let mut samples = Vec::with_capacity(grid.len());
    for a in grid {
        if delta.eval(a).is_zero() {
            samples.push(SweepSample {
                a: a.clone(),
                excluded: true,
                root_count: 0,
                f_signs: Vec::new(),
                separable: false,
            });
            continue;
        }
        let p = pn.specialize_a(a);
        let fa = f.specialize_a(a);
        let roots = isolate_real_roots(&p)?;
        let f_signs = roots.iter().map(|r| algebraic_sign(r, &fa)).collect();
        let separable = p.gcd(&p.derivative()).degree() == Some(0);
        samples.push(SweepSample {
            a: a.clone(),
            excluded: false,
            root_count: roots.len(),
            f_signs,
            separable,
        });
    }
    let disc = discriminant_in_a(pn)?;
    let separability_locus = if disc.is_zero() { Vec::new() } else { isolate_real_roots(&disc)? };
    let peaks = count_changes(pn, &separability_locus)?;
    Ok(SweepResult {
        n,
        samples,
        disc,
        separability_locus,
        singular_locus: isolate_real_roots(delta)?,
        peaks,
    })
}

/// Roots in `locus` (sorted, isolating) where the real-root count of
/// P_n(·, a) differs between rational points just left and right.
fn count_changes(pn: &BivariatePoly, locus: &[AlgebraicReal]) -> Result<Vec<AlgebraicReal>> {
    if locus.is_empty() {
        return Ok(Vec::new());
    }
    let mut roots = locus.to_vec();
    // Separate neighbouring intervals so a rational point fits strictly between.
    for i in 1..roots.len() {
        while roots[i - 1].hi() >= roots[i].lo() {
            roots[i - 1].refine();
            roots[i].refine();
        }
    }
    let one = BigRational::from_integer(BigInt::from(1));
    let two = BigRational::from_integer(BigInt::from(2));
    let mut probes = vec![roots[0].lo() - &one];
    for w in roots.windows(2) {
        probes.push((w[0].hi() + w[1].lo()) / &two);
    }
    probes.push(roots[roots.len() - 1].hi() + &one);
    let counts = probes
        .iter()
        .map(|a| isolate_real_roots(&pn.specialize_a(a)).map(|r| r.len()))
        .collect::<Result<Vec<_>>>()?;
    Ok(roots
        .into_iter()
        .enumerate()
        .filter(|(i, _)| counts[*i] != counts[i + 1])
        .map(|(_, r)| r)
        .collect())
}

pub fn sweep_weierstrass(n: usize, grid: &[BigRational]) -> Result<SweepResult> {
    if n < 2 {
        return Err(Error::Precondition("sweep needs n ≥ 2".into()));
    }
    sweep(n, &weierstrass_p(n)?, &weierstrass_cubic(), &weierstrass_delta(), grid)
}

/// Uniform grid lo, lo+step, …, ≤ hi.
pub fn rational_grid(lo: &BigRational, hi: &BigRational, step: &BigRational) -> Vec<BigRational> {
    let mut out = Vec::new();
    let mut a = lo.clone();
    while &a <= hi {
        out.push(a.clone());
        a += step;
    }
    out
}

/// Comparison of a sweep with the conjectured root-count table, the
/// number of non-separable a-values and monotonicity on (−3, ∞).
#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub separability_values: Vec<String>,
    /// Real roots of disc_x(P_n) that are not singular parameters.
    pub separability_count: usize,
    pub predicted_separability: usize,
    pub table_violations: Vec<String>,
    /// Non-separable values where the real-root count changes; reported
    /// alongside `separability_values`, not required to coincide with them.
    pub peak_values: Vec<String>,
    /// Every non-singular non-separable value is a peak (peaks ⊆ locus always).
    pub peaks_are_separability_locus: bool,
    pub monotone: bool,
    pub monotonicity_violations: Vec<String>,
}

impl ConjectureReport {
    pub fn discrepancies(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.separability_count != self.predicted_separability {
            out.push(format!(
                "n = {}: {} non-separable a-values, predicted {}",
                self.n, self.separability_count, self.predicted_separability
            ));
        }
        out.extend(self.table_violations.iter().cloned());
        out.extend(self.monotonicity_violations.iter().cloned());
        out
    }
}

fn is_singular(a: &AlgebraicReal, singular: &[AlgebraicReal]) -> bool {
    singular.iter().any(|s| {
        let common = a.minpoly().gcd(s.minpoly());
        common.degree().unwrap_or(0) > 0 && algebraic_sign(a, &common) == 0
    })
}

pub fn conjecture_report(s: &SweepResult) -> ConjectureReport {
    let n = s.n;
    let minus3 = BigRational::from_integer(BigInt::from(-3));
    let (imax, predicted) = if n % 2 == 0 { (n / 2, n / 2 - 1) } else { ((n - 1) / 2, (n - 1) / 2 - 1) };
    let locus: Vec<&AlgebraicReal> = s
        .separability_locus
        .iter()
        .filter(|r| !is_singular(r, &s.singular_locus))
        .collect();
    let peaks: Vec<&AlgebraicReal> = s.peaks.iter().filter(|r| !is_singular(r, &s.singular_locus)).collect();
    let mut table_violations = Vec::new();
    for smp in s.samples.iter().filter(|x| !x.excluded && x.separable) {
        let (rc, pos) = (smp.root_count, smp.positive_count());
        let a = fraction_cell(&smp.a);
        if smp.a < minus3 {
            let (want, want_pos) = if n % 2 == 1 { (4, 2) } else { (2, 1) };
            if rc != want || pos != want_pos {
                table_violations.push(format!(
                    "n = {n}, a = {a}: {rc} real roots ({pos} with f > 0), table says {want} ({want_pos})"
                ));
            }
        } else {
            let ok = rc % 2 == 0 && rc >= 2 && rc / 2 <= imax && pos + 1 == rc;
            if !ok {
                table_violations.push(format!(
                    "n = {n}, a = {a}: {rc} real roots ({pos} with f > 0), table says 2i (2i−1), 1 ≤ i ≤ {imax}"
                ));
            }
        }
    }
    let mut monotonicity_violations = Vec::new();
    let right: Vec<&SweepSample> = s
        .samples
        .iter()
        .filter(|x| !x.excluded && x.a > minus3)
        .collect();
    for w in right.windows(2) {
        if w[1].a > w[0].a && w[1].root_count > w[0].root_count {
            monotonicity_violations.push(format!(
                "n = {n}: root count rises from {} at a = {} to {} at a = {}",
                w[0].root_count,
                fraction_cell(&w[0].a),
                w[1].root_count,
                fraction_cell(&w[1].a)
            ));
        }
    }
    ConjectureReport {
        n,
        separability_values: locus.iter().map(|r| r.describe()).collect(),
        separability_count: locus.len(),
        predicted_separability: predicted,
        table_violations,
        peak_values: peaks.iter().map(|r| r.describe()).collect(),
        peaks_are_separability_locus: peaks.len() == locus.len(),
        monotone: monotonicity_violations.is_empty(),
        monotonicity_violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::rat_int;

    #[test]
    fn singular_parameter_is_excluded() {
        let r = sweep_weierstrass(2, &[rat_int(-3), rat_int(0)]).unwrap();
        assert!(r.samples[0].excluded);
        assert!(!r.samples[1].excluded);
        assert_eq!(r.singular_locus.len(), 1);
    }

    #[test]
    fn a_below_minus_three_even_n() {
        let r = sweep_weierstrass(4, &[rat_int(-4)]).unwrap();
        let s = &r.samples[0];
        assert!(s.root_count == 2 || s.root_count == 4);
    }
}
