//! Commands behind the `wlc` binary. Each command takes file contents and
//! returns the text to print, so the binary only handles I/O and exit codes.

use std::fmt::Write as _;

use rayon::prelude::*;
use wlc_core::dynamics::{detect_period, random_map_from, space_size, MAX_TABLE};
use wlc_core::formats::{
    parse_csv_vector, parse_map, parse_mpoly, parse_sequence, parse_sequence_file, write_mpoly,
    write_sequence, FormatError,
};
use wlc_core::oracle::MAX_CANDIDATES;
use wlc_core::poly::{poly_divides, poly_order};
use wlc_core::sampling::random_vector;
use wlc_core::{
    component_minpoly_lcm, compute_wlc, euclid_divide, exhaustive_scalar_minpoly,
    hankel_scalar_minpoly, independent_matrix_minpoly, iterate_map,
    local_inverse_from_matrix_minpoly, local_inverse_from_scalar_minpoly, local_invert,
    matpoly_det, Error, Field, Matrix, MatrixPoly, ScalarPoly, Side, SplitMix64, VectorSequence,
    WlcReport,
};

pub mod args;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const VERIFY_FAILED: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const DATA: u8 = 3;
    pub const NOT_PERIODIC: u8 = 4;
    pub const EXHAUSTED: u8 = 5;
    pub const SINGULAR: u8 = 6;
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        Self {
            code: exit::PARSE,
            message: message.into(),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        Self::parse(e.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotPeriodic(_) | Error::ZeroConstantTerm => exit::NOT_PERIODIC,
            Error::Exhausted(_) => exit::EXHAUSTED,
            Error::Singular
            | Error::SingularLeadingCoefficient
            | Error::SingularConstantCoefficient => exit::SINGULAR,
            Error::NotPrime(_)
            | Error::TooLarge(_)
            | Error::InvalidArgument(_)
            | Error::DimensionMismatch(_)
            | Error::ModulusMismatch(..)
            | Error::EncodingOutOfRange(_) => exit::PARSE,
            _ => exit::DATA,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Text for stdout plus warnings for stderr.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub warnings: Vec<String>,
    /// Set by `verify` when a check fails.
    pub failed: bool,
}

impl Output {
    fn text(stdout: String) -> Self {
        Self {
            stdout,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Kv,
}

fn csv(values: &[u32]) -> String {
    values
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "none".to_string(), |x| x.to_string())
}

pub fn cmd_lc(seq_text: &str) -> CliResult<Output> {
    let v = parse_sequence(seq_text)?;
    let m = hankel_scalar_minpoly(&v)?;
    Ok(Output::text(format!(
        "lc={}\nminpoly={}\n",
        m.degree().unwrap_or(0),
        m.descending_csv()
    )))
}

/// `wlc` report. The `kv` field order is fixed: `lc`, `minpoly`,
/// `divisible`, `block_rank`, `nontrivial`, `wlc`, then `A0`, `A1`, ...
/// (row-major, only when nontrivial), then one `diagnostic` line per note.
pub fn cmd_wlc(seq_text: &str, format: ReportFormat) -> CliResult<Output> {
    let v = parse_sequence(seq_text)?;
    let r = compute_wlc(&v)?;
    Ok(Output::text(match format {
        ReportFormat::Kv => wlc_kv(&r),
        ReportFormat::Text => wlc_text(&r),
    }))
}

fn wlc_kv(r: &WlcReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "lc={}", r.lc);
    let _ = writeln!(out, "minpoly={}", r.scalar_minpoly.descending_csv());
    let _ = writeln!(out, "divisible={}", r.divisible);
    let _ = writeln!(out, "block_rank={}", opt(r.block_rank));
    let _ = writeln!(out, "nontrivial={}", r.nontrivial);
    let _ = writeln!(out, "wlc={}", opt(r.wlc));
    for (i, a) in r.coefficients().iter().enumerate() {
        let _ = writeln!(out, "A{i}={}", csv(a.as_slice()));
    }
    for d in &r.diagnostics {
        let _ = writeln!(out, "diagnostic={d}");
    }
    out
}

fn wlc_text(r: &WlcReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "linear complexity: {}", r.lc);
    let _ = writeln!(out, "minimal polynomial: {}", r.scalar_minpoly);
    let _ = writeln!(out, "n = {} divides lc: {}", r.n, r.divisible);
    let _ = writeln!(out, "block Hankel rank: {}", opt(r.block_rank));
    let _ = writeln!(
        out,
        "nontrivial matrix minimal polynomial: {}",
        r.nontrivial
    );
    let _ = writeln!(out, "word linear complexity: {}", opt(r.wlc));
    for (i, a) in r.coefficients().iter().enumerate() {
        let _ = writeln!(out, "A{i} =");
        for row in 0..a.rows() {
            let _ = writeln!(out, "  {}", csv(a.row(row)).replace(',', " "));
        }
    }
    if r.nontrivial {
        let _ = writeln!(out, "M(X) = {}", r.matrix_minpoly);
    }
    for d in &r.diagnostics {
        let _ = writeln!(out, "note: {d}");
    }
    out
}

pub fn cmd_invert(map_text: &str, y: &str, max_terms: usize) -> CliResult<Output> {
    let parsed = parse_map(map_text)?;
    let f = parsed.map;
    let y = parse_csv_vector(f.field(), f.dim(), y)?;
    let y = Matrix::column(f.field(), &y);
    let inv = local_invert(&f, &y, max_terms)?;
    let mut out = String::new();
    let _ = writeln!(out, "x={}", csv(inv.x.as_slice()));
    let _ = writeln!(out, "verified=true");
    let _ = writeln!(out, "route={}", inv.route.as_str());
    let _ = writeln!(out, "terms={}", inv.terms);
    let _ = writeln!(out, "lc={}", inv.report.lc);
    let _ = writeln!(out, "wlc={}", opt(inv.report.wlc));
    Ok(Output {
        stdout: out,
        warnings: parsed.warnings,
        failed: false,
    })
}

/// Sequence file holding `y, F(y), ..., F^(count-1)(y)`.
pub fn cmd_iterate(map_text: &str, y: &str, count: usize) -> CliResult<Output> {
    let parsed = parse_map(map_text)?;
    let f = parsed.map;
    let y = parse_csv_vector(f.field(), f.dim(), y)?;
    let seq = iterate_map(&f, &Matrix::column(f.field(), &y), count)?;
    Ok(Output {
        stdout: write_sequence(&seq),
        warnings: parsed.warnings,
        failed: false,
    })
}

/// Quotient and remainder, each in the matrix polynomial format.
pub fn divide(dividend: &str, divisor: &str, side: Side) -> CliResult<(MatrixPoly, MatrixPoly)> {
    let p = parse_mpoly(dividend)?;
    let d = parse_mpoly(divisor)?;
    if p.field() != d.field() || p.dim() != d.dim() {
        return Err(CliError::parse("dividend and divisor differ in p or n"));
    }
    Ok(euclid_divide(&p, &d, side)?)
}

pub fn cmd_divide(dividend: &str, divisor: &str, side: Side) -> CliResult<Output> {
    let (q, r) = divide(dividend, divisor, side)?;
    Ok(Output::text(format!(
        "# quotient\n{}# remainder\n{}",
        write_mpoly(&q),
        write_mpoly(&r)
    )))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Pass,
    Fail(String),
    Skip(String),
}

struct Checks(Vec<(&'static str, Check)>);

impl Checks {
    fn push(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let c = if ok {
            Check::Pass
        } else {
            Check::Fail(detail())
        };
        self.0.push((name, c));
    }

    fn skip(&mut self, names: &[&'static str], reason: &str) {
        for &n in names {
            self.0.push((n, Check::Skip(reason.to_string())));
        }
    }
}

const SCALAR_CHECKS: &[&str] = &[
    "scalar_routes_agree",
    "scalar_oracle_agrees",
    "minpoly_annihilates",
    "minpoly_divides_x^N-1",
    "order_divides_period",
    "scalar_prefix_correct",
];

const MATRIX_CHECKS: &[&str] = &[
    "n_wlc_equals_lc",
    "a0_nonsingular",
    "wlc_at_most_lc",
    "det_divides_minpoly_power",
    "det_order_divides_nN",
    "left_division_exact",
    "right_division_exact",
    "matrix_annihilates",
    "matrix_oracle_agrees",
    "route_agreement",
    "matrix_prefix_correct",
];

/// Runs every invariant check on a periodic sequence file.
pub fn verify_checks(seq_text: &str) -> CliResult<Vec<(&'static str, Check)>> {
    let file = parse_sequence_file(seq_text)?;
    let Some(period) = file.period else {
        return Err(CliError::parse("verify needs a header with `period <N>`"));
    };
    let mut checks = Checks(Vec::new());
    if let Some(i) = file.period_violation() {
        checks.push("period_consistent", false, || {
            format!("term {i} differs from term {}", i - period)
        });
        checks.skip(SCALAR_CHECKS, "period inconsistent");
        checks.skip(MATRIX_CHECKS, "period inconsistent");
        return Ok(checks.0);
    }
    checks.push("period_consistent", true, String::new);
    let v = file.sequence()?;
    let field = v.field();
    let n = v.dim();

    let m = hankel_scalar_minpoly(&v)?;
    let lc = m.degree().unwrap_or(0);
    let bm = component_minpoly_lcm(&v)?;
    checks.push("scalar_routes_agree", bm == m, || {
        format!("hankel {m} vs berlekamp-massey {bm}")
    });
    if (field.p() as u64)
        .checked_pow(lc as u32)
        .is_some_and(|c| c <= MAX_CANDIDATES)
    {
        let ex = exhaustive_scalar_minpoly(&v, lc)?;
        checks.push("scalar_oracle_agrees", ex == m, || {
            format!("hankel {m} vs exhaustive {ex}")
        });
    } else {
        checks.skip(&["scalar_oracle_agrees"], "search space above 2^20");
    }
    checks.push("minpoly_annihilates", v.annihilated_by(&m), || {
        format!("{m} does not annihilate")
    });
    checks.push(
        "minpoly_divides_x^N-1",
        poly_divides(&m, &ScalarPoly::x_pow_minus_one(field, period)),
        || format!("{m} does not divide X^{period} - 1"),
    );
    let last = v.term_vector(period - 1).expect("periodic");
    if m.coeff(0) == 0 {
        checks.skip(
            &["order_divides_period", "scalar_prefix_correct"],
            "minimal polynomial has zero constant term",
        );
    } else {
        let ord = poly_order(&m, period)?;
        checks.push("order_divides_period", period % ord == 0, || {
            format!("order {ord} does not divide {period}")
        });
        let x = local_inverse_from_scalar_minpoly(&v, &m)?;
        checks.push("scalar_prefix_correct", x == last, || {
            format!(
                "V_-1 = {} but V_(N-1) = {}",
                csv(x.as_slice()),
                csv(last.as_slice())
            )
        });
    }

    let r = compute_wlc(&v)?;
    if !r.divisible {
        checks.skip(MATRIX_CHECKS, "divisible=false");
        return Ok(checks.0);
    }
    if !r.nontrivial {
        let reason = format!(
            "nontrivial=false (block_rank={} < lc={lc})",
            opt(r.block_rank)
        );
        checks.skip(MATRIX_CHECKS, &reason);
        return Ok(checks.0);
    }
    let mp = &r.matrix_minpoly;
    let wlc = r.wlc.expect("nontrivial");
    checks.push("n_wlc_equals_lc", n * wlc == lc, || {
        format!("n*wlc = {} != {lc}", n * wlc)
    });
    checks.push(
        "a0_nonsingular",
        wlc_core::inverse(&mp.coeff(0)).is_ok(),
        || "A0 is singular".into(),
    );
    checks.push("wlc_at_most_lc", wlc <= lc, || format!("{wlc} > {lc}"));
    let det = matpoly_det(mp);
    checks.push(
        "det_divides_minpoly_power",
        poly_divides(&det, &m.pow(n as u32)) && det.degree().unwrap_or(0) <= n * lc,
        || format!("det M = {det}"),
    );
    let bound = n * period;
    match poly_order(&det, bound) {
        Ok(ord) => checks.push("det_order_divides_nN", bound % ord == 0, || {
            format!("order {ord} does not divide {bound}")
        }),
        Err(e) => checks.push("det_order_divides_nN", false, || e.to_string()),
    }
    let target = MatrixPoly::from_scalar(&ScalarPoly::x_pow_minus_one(field, period), n);
    for (name, side) in [
        ("left_division_exact", Side::Left),
        ("right_division_exact", Side::Right),
    ] {
        let (_, rem) = euclid_divide(&target, mp, side)?;
        checks.push(name, rem.is_zero(), || format!("remainder {rem}"));
    }
    checks.push("matrix_annihilates", wlc_core::annihilates(mp, &v)?, || {
        "M(X) fails the recurrence".into()
    });
    let oracle = independent_matrix_minpoly(&v, wlc)?;
    checks.push("matrix_oracle_agrees", oracle.as_ref() == Some(mp), || {
        format!("oracle gives {oracle:?}")
    });
    let xm = local_inverse_from_matrix_minpoly(&v, mp)?;
    let xs = local_inverse_from_scalar_minpoly(&v, &m)?;
    checks.push("route_agreement", xm == xs, || {
        format!(
            "matrix {} vs scalar {}",
            csv(xm.as_slice()),
            csv(xs.as_slice())
        )
    });
    checks.push("matrix_prefix_correct", xm == last, || {
        format!(
            "V_-1 = {} but V_(N-1) = {}",
            csv(xm.as_slice()),
            csv(last.as_slice())
        )
    });
    Ok(checks.0)
}

/// One line per check (`name=pass`, `name=FAIL: ...`, `name=skip: ...`)
/// followed by `verified=true|false`.
pub fn cmd_verify(seq_text: &str) -> CliResult<Output> {
    let checks = verify_checks(seq_text)?;
    let mut out = String::new();
    let mut failed = false;
    for (name, c) in &checks {
        match c {
            Check::Pass => {
                let _ = writeln!(out, "{name}=pass");
            }
            Check::Fail(d) => {
                failed = true;
                let _ = writeln!(out, "{name}=FAIL: {d}");
            }
            Check::Skip(r) => {
                let _ = writeln!(out, "{name}=skip: {r}");
            }
        }
    }
    let _ = writeln!(out, "verified={}", !failed);
    Ok(Output {
        stdout: out,
        warnings: Vec::new(),
        failed,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct BenchParams {
    pub p: u64,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub permutation: bool,
}

/// Result of one benchmark trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trial {
    pub seed: u64,
    pub period: usize,
    pub preperiod: usize,
    pub lc: Option<usize>,
    pub nontrivial: bool,
    pub wlc: Option<usize>,
    pub inverse_verified: bool,
}

/// Trial `t` uses seed `seed + t`: the map is drawn first, then `y`.
pub fn run_trial(field: Field, n: usize, seed: u64, permutation: bool) -> CliResult<Trial> {
    let mut rng = SplitMix64::new(seed);
    let f = random_map_from(&mut rng, field, n, permutation)?;
    let y = Matrix::column(field, &random_vector(&mut rng, field, n));
    let size = space_size(field, n).expect("checked") as usize;
    let orbit = detect_period(&f, &y, size + 1)?;
    let mut trial = Trial {
        seed,
        period: orbit.period,
        preperiod: orbit.preperiod,
        lc: None,
        nontrivial: false,
        wlc: None,
        inverse_verified: false,
    };
    let seq = if orbit.preperiod == 0 {
        let s = iterate_map(&f, &y, orbit.period)?;
        VectorSequence::from_flat(
            field,
            n,
            s.stored().flatten().copied().collect(),
            Some(orbit.period),
        )?
    } else {
        iterate_map(&f, &y, 2 * (orbit.preperiod + orbit.period) + 2)?
    };
    if let Ok(r) = compute_wlc(&seq) {
        trial.lc = Some(r.lc);
        trial.nontrivial = r.nontrivial;
        trial.wlc = r.wlc;
    } else if let Ok(m) = hankel_scalar_minpoly(&seq) {
        trial.lc = m.degree();
    }
    if orbit.preperiod == 0 {
        let max_terms = (4 * orbit.period).max(16);
        if let Ok(inv) = local_invert(&f, &y, max_terms) {
            trial.inverse_verified = wlc_core::apply_map(&f, &inv.x)? == y;
        }
    }
    Ok(trial)
}

fn rate(k: usize, total: usize) -> String {
    if total == 0 {
        "n/a".into()
    } else {
        format!("{:.2}%", 100.0 * k as f64 / total as f64)
    }
}

/// CSV with header `seed,period,lc,wlc_nontrivial,wlc,inverse_verified`,
/// one line per trial in trial order, then a `# summary` line.
pub fn cmd_bench(params: BenchParams) -> CliResult<Output> {
    let field = Field::new(params.p)?;
    if params.n == 0 {
        return Err(CliError::parse("dim must be at least 1"));
    }
    if space_size(field, params.n).is_none_or(|s| s > MAX_TABLE) {
        return Err(CliError::parse(format!("p^n must be at most {MAX_TABLE}")));
    }
    let trials: Vec<Trial> = (0..params.trials)
        .into_par_iter()
        .map(|t| {
            run_trial(
                field,
                params.n,
                params.seed.wrapping_add(t as u64),
                params.permutation,
            )
        })
        .collect::<CliResult<_>>()?;
    let mut out = String::from("seed,period,lc,wlc_nontrivial,wlc,inverse_verified\n");
    for t in &trials {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            t.seed,
            t.period,
            opt(t.lc),
            t.nontrivial,
            opt(t.wlc),
            t.inverse_verified
        );
    }
    let total = trials.len();
    let periodic = trials.iter().filter(|t| t.preperiod == 0).count();
    let nontrivial = trials.iter().filter(|t| t.nontrivial).count();
    let verified = trials.iter().filter(|t| t.inverse_verified).count();
    let _ = writeln!(
        out,
        "# summary trials={total} periodic={} wlc_nontrivial={} inverse_verified={}",
        rate(periodic, total),
        rate(nontrivial, total),
        rate(verified, total)
    );
    Ok(Output::text(out))
}
