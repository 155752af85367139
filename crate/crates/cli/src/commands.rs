//! Subcommand implementations. Each returns what to print and the exit code;
//! files are written into the configured output directory.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use hypinfl::curve::{det_m, gv_path_count, matrix_m, HyperellipticCurve};
use hypinfl::explorer::{
    conjecture_report, count_family, legendre_p, points_table, rational_grid, sato_tate_c2, sweep_weierstrass,
    weierstrass_p, BivariatePoly, Table,
};
use hypinfl::field::extension::prime_power_field;
use hypinfl::field::{Field, FieldDescriptor, FiniteField, Fp, LaurentView, Rationals, RationalFunctions};
use hypinfl::indices::{
    audit_etale, audit_finite, audit_reals, cross_check_rational_points, reports_agree, GlobalAudit,
    LocalIndexReport, OracleOptions, PointKind,
};
use hypinfl::inflection::inflection_poly;
use hypinfl::poly::DensePoly;
use hypinfl::Error;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::config::RunConfig;
use crate::expr::parse_poly;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_DISCREPANCY: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Indices,
    Audit,
    Poly,
    MatrixM,
    Sweep,
    Count,
    SatoTate,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub files: Vec<PathBuf>,
    pub code: i32,
}

impl Outcome {
    fn text(stdout: String, code: i32) -> Self {
        Outcome {
            stdout,
            files: Vec::new(),
            code,
        }
    }
}

/// Exit code for an error surfaced by the library.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TheoremHypothesisFailed(_) => EXIT_HYPOTHESIS,
        _ => EXIT_FAILED,
    }
}

pub fn run(cmd: Command, cfg: &RunConfig) -> Result<Outcome, Error> {
    cfg.validate()?;
    match cmd {
        Command::Indices => audit_cmd(cfg, true),
        Command::Audit => audit_cmd(cfg, false),
        Command::Poly => poly_cmd(cfg),
        Command::MatrixM => matrix_m_cmd(cfg),
        Command::Sweep => sweep_cmd(cfg),
        Command::Count => count_cmd(cfg),
        Command::SatoTate => sato_tate_cmd(cfg),
        Command::Oracle => oracle_cmd(cfg),
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(v).map_err(|e| Error::InternalInconsistency(e.to_string()))
}

fn write_file(dir: &Path, name: &str, contents: &[u8]) -> Result<PathBuf, Error> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Precondition(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

pub fn write_csv(dir: &Path, name: &str, table: &Table) -> Result<PathBuf, Error> {
    let io = |e: csv::Error| Error::Precondition(format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.header).map_err(io)?;
    for row in &table.rows {
        w.write_record(row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Precondition(format!("csv: {e}")))?;
    write_file(dir, name, &bytes)
}

/// Writes `<name>.json` when an output directory was chosen explicitly.
fn persist_json(cfg: &RunConfig, name: &str, text: &str, out: &mut Outcome) -> Result<(), Error> {
    if cfg.out_dir.is_some() || std::env::var_os(crate::config::OUT_DIR_ENV).is_some() {
        let mut bytes = text.as_bytes().to_vec();
        bytes.push(b'\n');
        out.files.push(write_file(&cfg.out_dir(), &format!("{name}.json"), &bytes)?);
    }
    Ok(())
}

/// Small-coefficient monic squarefree f of degree 2g+1, deterministic in `seed`.
pub fn random_curve<F: Field>(field: &F, g: usize, seed: u64) -> Result<HyperellipticCurve<F>, Error> {
    if g == 0 {
        return Err(Error::Precondition("need g ≥ 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let mut coeffs: Vec<F::Elem> = (0..=2 * g).map(|_| field.from_i64(rng.gen_range(-9..=9))).collect();
        coeffs.push(field.one());
        let f = DensePoly::new(field, coeffs);
        if let Ok(c) = HyperellipticCurve::new(f) {
            return Ok(c);
        }
    }
    Err(Error::Precondition("no squarefree curve found in 1000 draws".into()))
}

fn curve_from<F: Field>(
    cfg: &RunConfig,
    field: &F,
    params: &[(&str, F::Elem)],
) -> Result<HyperellipticCurve<F>, Error> {
    match (&cfg.f, cfg.g) {
        (Some(text), _) => {
            let mut vars = vec!["x"];
            vars.extend(params.iter().map(|(v, _)| *v));
            let consts: HashMap<String, F::Elem> = params.iter().map(|(v, e)| (v.to_string(), e.clone())).collect();
            let f = parse_poly(text, &vars)?.to_poly(field, "x", &consts)?;
            let curve = HyperellipticCurve::new(f)?;
            if let Some(g) = cfg.g {
                if g != curve.genus() {
                    return Err(Error::Precondition(format!("--g {g} but f has genus {}", curve.genus())));
                }
            }
            Ok(curve)
        }
        (None, Some(g)) => random_curve(field, g, cfg.seed.unwrap_or(0)),
        (None, None) => Err(Error::Precondition("need --f or --g".into())),
    }
}

#[derive(Serialize)]
#[serde(bound = "")]
struct IndicesOut<'a, F: Field> {
    field: &'a str,
    curve: &'a str,
    g: usize,
    ell: usize,
    points: &'a [LocalIndexReport<F>],
}

fn emit_audit<F: Field>(cfg: &RunConfig, audit: &GlobalAudit<F>, indices: bool) -> Result<Outcome, Error> {
    let (name, text, code) = if indices {
        let out = IndicesOut {
            field: &audit.field,
            curve: &audit.curve,
            g: audit.g,
            ell: audit.ell,
            points: &audit.points,
        };
        ("indices", to_json(&out)?, EXIT_OK)
    } else {
        let code = if audit.verdict.passed() { EXIT_OK } else { EXIT_FAILED };
        ("audit", to_json(audit)?, code)
    };
    let mut out = Outcome::text(text.clone(), code);
    persist_json(cfg, name, &text, &mut out)?;
    Ok(out)
}

fn audit_cmd(cfg: &RunConfig, indices: bool) -> Result<Outcome, Error> {
    let ell = cfg.require_ell()?;
    match cfg.field_descriptor()? {
        FieldDescriptor::PrimePower { p, n: 1 } => {
            let field = Fp::new(p)?;
            emit_audit(cfg, &audit_finite(&curve_from(cfg, &field, &[])?, ell)?, indices)
        }
        FieldDescriptor::PrimePower { p, n } => {
            let field = prime_power_field(p, n)?;
            emit_audit(cfg, &audit_finite(&curve_from(cfg, &field, &[])?, ell)?, indices)
        }
        FieldDescriptor::RealsViaRationals => {
            emit_audit(cfg, &audit_reals(&curve_from(cfg, &Rationals, &[])?, ell)?, indices)
        }
        FieldDescriptor::Rationals => emit_audit(cfg, &audit_etale(&curve_from(cfg, &Rationals, &[])?, ell)?, indices),
        FieldDescriptor::RationalFunctions { var } => {
            let field = RationalFunctions::new(&Rationals, &var);
            let curve = curve_from(cfg, &field, &[(var.as_str(), field.gen())])?;
            emit_audit(cfg, &audit_etale(&curve, ell)?, indices)
        }
        FieldDescriptor::LaurentViewpoint { var } => {
            let field = LaurentView::new(&var);
            let curve = curve_from(cfg, &field, &[(var.as_str(), field.gen())])?;
            emit_audit(cfg, &audit_etale(&curve, ell)?, indices)
        }
    }
}

/// "(3*x^4 + 6*a*x^2 + 24*x - a^2)/8": primitive integral part over the
/// remaining rational factor. The result parses back with variables x, `param`.
pub fn render_family(p: &BivariatePoly, param: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let den = p.terms().values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: BTreeMap<(usize, usize), BigInt> = p
        .terms()
        .iter()
        .map(|(k, c)| (*k, (c * BigRational::from_integer(den.clone())).to_integer()))
        .collect();
    let content = ints.values().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let factor = BigRational::new(content.clone(), den);
    let mut body = String::new();
    for (i, ((ex, ea), c)) in ints.iter().rev().enumerate() {
        let c = c / &content;
        let sign = if c.is_negative() { "-" } else { "+" };
        if i == 0 {
            if c.is_negative() {
                body.push('-');
            }
        } else {
            body.push_str(&format!(" {sign} "));
        }
        let mut parts = Vec::new();
        let abs = c.abs();
        if !abs.is_one() || (*ex == 0 && *ea == 0) {
            parts.push(abs.to_string());
        }
        for (v, e) in [("x", *ex), (param, *ea)] {
            match e {
                0 => {}
                1 => parts.push(v.to_string()),
                _ => parts.push(format!("{v}^{e}")),
            }
        }
        body.push_str(&parts.join("*"));
    }
    match (factor.numer().is_one(), factor.denom().is_one()) {
        (true, true) => body,
        (true, false) => format!("({body})/{}", factor.denom()),
        (false, true) => format!("{}*({body})", factor.numer()),
        (false, false) => format!("{}/{}*({body})", factor.numer(), factor.denom()),
    }
}

fn poly_text<F: Field>(cfg: &RunConfig, field: &F, params: &[(&str, F::Elem)]) -> Result<String, Error> {
    let ell = cfg.require_ell()?;
    let curve = curve_from(cfg, field, params)?;
    Ok(format!("{}", inflection_poly(curve.genus(), ell, curve.f())?))
}

fn poly_cmd(cfg: &RunConfig) -> Result<Outcome, Error> {
    if let Some(family) = &cfg.family {
        let n = cfg.n.ok_or_else(|| Error::Precondition("--n is required with --family".into()))?;
        let text = match family.as_str() {
            "weierstrass" => render_family(&weierstrass_p(n)?, "a"),
            "legendre" => render_family(&legendre_p(n)?, "k"),
            other => return Err(Error::Precondition(format!("unknown family {other:?}"))),
        };
        return Ok(Outcome::text(text, EXIT_OK));
    }
    let text = match cfg.field_descriptor()? {
        FieldDescriptor::PrimePower { p, n: 1 } => poly_text(cfg, &Fp::new(p)?, &[])?,
        FieldDescriptor::PrimePower { p, n } => poly_text(cfg, &prime_power_field(p, n)?, &[])?,
        FieldDescriptor::Rationals | FieldDescriptor::RealsViaRationals => poly_text(cfg, &Rationals, &[])?,
        FieldDescriptor::RationalFunctions { var } => {
            let field = RationalFunctions::new(&Rationals, &var);
            poly_text(cfg, &field, &[(var.as_str(), field.gen())])?
        }
        FieldDescriptor::LaurentViewpoint { var } => {
            let field = LaurentView::new(&var);
            poly_text(cfg, &field, &[(var.as_str(), field.gen())])?
        }
    };
    Ok(Outcome::text(text, EXIT_OK))
}

fn matrix_m_cmd(cfg: &RunConfig) -> Result<Outcome, Error> {
    let ell = cfg.require_ell()?;
    let g = cfg.g.ok_or_else(|| Error::Precondition("--g is required".into()))?;
    let m = matrix_m(ell, g)?;
    let det = det_m(ell, g)?;
    let gv = gv_path_count(ell, g)?;
    let mut report = json!({
        "ell": ell,
        "g": g,
        "matrix": m.rows().iter().map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "det": det.to_string(),
        "gv": gv.to_string(),
        "agree": det == BigInt::from(gv),
    });
    let mut code = if det == BigInt::from(gv) { EXIT_OK } else { EXIT_FAILED };
    let p = cfg.field_descriptor()?.characteristic();
    if p != 0 {
        let residue = det.mod_floor(&BigInt::from(p));
        report["det_mod_p"] = json!(residue.to_string());
        if residue.is_zero() && code == EXIT_OK {
            report["hypothesis"] = json!(format!("det M({ell},{g}) vanishes in characteristic {p}"));
            code = EXIT_HYPOTHESIS;
        }
    }
    let text = to_json(&report)?;
    let mut out = Outcome::text(text.clone(), code);
    persist_json(cfg, "matrix_m", &text, &mut out)?;
    Ok(out)
}

/// "lo:hi:step" with exact rational entries.
pub fn parse_grid(spec: &str) -> Result<Vec<BigRational>, Error> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("grid must be lo:hi:step, got {spec:?}"),
        });
    }
    let mut vals = Vec::new();
    let mut offset = 0;
    for part in &parts {
        let e = parse_poly(part, &[]).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
            other => other,
        })?;
        let q = e.to_poly(&Rationals, "x", &HashMap::new())?.coeff(0);
        vals.push(q);
        offset += part.chars().count() + 1;
    }
    if !vals[2].is_positive() || vals[1] < vals[0] {
        return Err(Error::Precondition("grid needs lo ≤ hi and step > 0".into()));
    }
    Ok(rational_grid(&vals[0], &vals[1], &vals[2]))
}

fn sweep_cmd(cfg: &RunConfig) -> Result<Outcome, Error> {
    let n = cfg.n.unwrap_or(4);
    let grid = parse_grid(cfg.grid.as_deref().unwrap_or("-10:10:1/4"))?;
    let result = sweep_weierstrass(n, &grid)?;
    let report = conjecture_report(&result);
    let dir = cfg.out_dir();
    let mut files = vec![write_csv(&dir, &format!("sweep_n{n}.csv"), &result.table())?];
    let discrepancies = report.discrepancies();
    let text = to_json(&json!({
        "report": report,
        "disc_degree": result.disc.degree(),
        "discrepancies": discrepancies,
    }))?;
    let mut bytes = text.as_bytes().to_vec();
    bytes.push(b'\n');
    files.push(write_file(&dir, &format!("conjecture_n{n}.json"), &bytes)?);
    Ok(Outcome {
        stdout: text,
        files,
        code: if discrepancies.is_empty() { EXIT_OK } else { EXIT_DISCREPANCY },
    })
}

fn count_cmd(cfg: &RunConfig) -> Result<Outcome, Error> {
    let n = cfg.n.unwrap_or(2);
    let bound = cfg.prime_bound.unwrap_or(200);
    let records = count_family(n, bound)?;
    let violations: Vec<u64> = records.iter().filter(|r| !r.hasse_weil_ok()).map(|r| r.p).collect();
    let files = vec![write_csv(&cfg.out_dir(), &format!("points_n{n}.csv"), &points_table(&records))?];
    let text = to_json(&json!({
        "n": n,
        "prime_bound": bound,
        "primes": records.len(),
        "hasse_weil_violations": violations,
    }))?;
    Ok(Outcome {
        stdout: text,
        files,
        code: if violations.is_empty() { EXIT_OK } else { EXIT_FAILED },
    })
}

fn sato_tate_cmd(cfg: &RunConfig) -> Result<Outcome, Error> {
    let bound = cfg.prime_bound.unwrap_or(500);
    let report = sato_tate_c2(bound)?;
    let dir = cfg.out_dir();
    let identities = Table {
        header: ["p", "c2_count", "elliptic_count", "legendre_3", "holds"].map(String::from).to_vec(),
        rows: report
            .identities
            .iter()
            .map(|c| {
                vec![
                    format!("{}/1", c.p),
                    format!("{}/1", c.c2_count),
                    format!("{}/1", c.elliptic_count),
                    format!("{}/1", c.legendre_3),
                    c.holds.to_string(),
                ]
            })
            .collect(),
    };
    let files = vec![
        write_csv(&dir, "points.csv", &points_table(&report.records))?,
        write_csv(&dir, "identities.csv", &identities)?,
        write_csv(&dir, "histogram.csv", &report.histogram.table())?,
    ];
    let failures: Vec<u64> = report.identities.iter().filter(|c| !c.holds).map(|c| c.p).collect();
    let text = to_json(&json!({
        "prime_bound": bound,
        "primes": report.records.len(),
        "identity_failures": failures,
        "histogram_primes": report.histogram.counts.iter().sum::<u64>(),
    }))?;
    Ok(Outcome {
        stdout: text,
        files,
        code: if report.all_hold() { EXIT_OK } else { EXIT_FAILED },
    })
}

#[derive(Serialize)]
#[serde(bound = "")]
struct OracleRow<F: Field> {
    closed_form: LocalIndexReport<F>,
    oracle: LocalIndexReport<F>,
    agree: bool,
    /// ∞ with ℓ ≢ 1 mod 4: the index depends on the local frame, so a
    /// disagreement here is not counted against the run.
    chart_dependent: bool,
}

fn oracle_report<F: FiniteField>(cfg: &RunConfig, curve: &HyperellipticCurve<F>) -> Result<Outcome, Error> {
    let ell = cfg.require_ell()?;
    let mut opts = OracleOptions::default();
    if let Some(m) = cfg.max_prec {
        opts.max_prec = m;
    }
    let mut rows = Vec::new();
    for (closed, oracle) in cross_check_rational_points(curve, ell, &opts)? {
        let agree = reports_agree(&closed, &oracle)?;
        let chart_dependent = closed.point.kind == PointKind::Infinity && ell % 4 != 1;
        rows.push(OracleRow {
            closed_form: closed,
            oracle,
            agree,
            chart_dependent,
        });
    }
    let all = rows.iter().all(|r| r.agree || r.chart_dependent);
    let text = to_json(&json!({
        "field": curve.field().describe(),
        "curve": format!("y^2 = {}", curve.f()),
        "ell": ell,
        "all_agree": all,
        "points": rows,
    }))?;
    let mut out = Outcome::text(text.clone(), if all { EXIT_OK } else { EXIT_FAILED });
    persist_json(cfg, "oracle", &text, &mut out)?;
    Ok(out)
}

fn oracle_cmd(cfg: &RunConfig) -> Result<Outcome, Error> {
    match cfg.field_descriptor()? {
        FieldDescriptor::PrimePower { p, n: 1 } => {
            let field = Fp::new(p)?;
            oracle_report(cfg, &curve_from(cfg, &field, &[])?)
        }
        FieldDescriptor::PrimePower { p, n } => {
            let field = prime_power_field(p, n)?;
            oracle_report(cfg, &curve_from(cfg, &field, &[])?)
        }
        other => Err(Error::UnsupportedField(format!(
            "{other}: the oracle cross-check enumerates rational points of a finite field"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hypinfl::field::rational::rat;

    #[test]
    fn render_p2() {
        assert_eq!(render_family(&weierstrass_p(2).unwrap(), "a"), "(3*x^4 + 6*x^2*a + 24*x - a^2)/8");
    }

    #[test]
    fn render_content() {
        let p = BivariatePoly::new([((1, 0), rat(2, 3)), ((0, 0), rat(4, 3))]);
        assert_eq!(render_family(&p, "a"), "2/3*(x + 2)");
    }

    #[test]
    fn grid_is_exact() {
        let g = parse_grid("-1:1:1/2").unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g[1], rat(-1, 2));
        assert!(matches!(parse_grid("0:1:0.5"), Err(Error::Parse { pos: 5, .. })));
    }
}
