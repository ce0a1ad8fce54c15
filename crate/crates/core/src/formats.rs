//! Text file formats for sequences, maps and matrix polynomials.
//!
//! All three are line oriented with whitespace-separated base-10 integers.
//! Everything after `#` on a line is ignored, as are blank lines.
//!
//! ```text
//! seq <p> <n> <M> [period <N>]      then M lines of n integers
//! map affine|table                   then `field <p>`, `dim <n>`, body
//! mpoly <p> <n> <deg>               then deg+1 blocks of n lines of n integers
//! ```

use std::fmt::Write as _;

use crate::dynamics::{decode, space_size, MapKind, MapSpec, MAX_TABLE};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::matpoly::MatrixPoly;
use crate::poly::{period_violation, VectorSequence};

/// A malformed file; `line` is 1-based when known.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

type Parsed<T> = std::result::Result<T, FormatError>;

fn fail<T>(line: usize, message: impl Into<String>) -> Parsed<T> {
    Err(FormatError {
        line,
        message: message.into(),
    })
}

struct Lines<'a> {
    inner: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let inner = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let content = raw.split('#').next().unwrap_or("");
                let tokens: Vec<&str> = content.split_whitespace().collect();
                (!tokens.is_empty()).then_some((i + 1, tokens))
            })
            .collect();
        Self { inner, pos: 0 }
    }

    fn next(&mut self, what: &str) -> Parsed<(usize, Vec<&'a str>)> {
        let last = self.inner.last().map_or(0, |l| l.0);
        match self.inner.get(self.pos) {
            Some(l) => {
                self.pos += 1;
                Ok(l.clone())
            }
            None => fail(last + 1, format!("unexpected end of file, expected {what}")),
        }
    }

    fn finish(&self) -> Parsed<()> {
        match self.inner.get(self.pos) {
            Some((line, _)) => fail(*line, "unexpected trailing data"),
            None => Ok(()),
        }
    }
}

fn int(line: usize, tok: &str) -> Parsed<i64> {
    tok.parse::<i64>()
        .or_else(|_| fail(line, format!("not an integer: {tok:?}")))
}

fn count(line: usize, tok: &str, what: &str) -> Parsed<usize> {
    tok.parse::<usize>().or_else(|_| {
        fail(
            line,
            format!("{what} must be a non-negative integer, got {tok:?}"),
        )
    })
}

fn field_of(line: usize, tok: &str) -> Parsed<Field> {
    let p = tok
        .parse::<u64>()
        .or_else(|_| fail(line, format!("bad modulus {tok:?}")))?;
    Field::new(p).or_else(|e| fail(line, e.to_string()))
}

/// Canonical entries only: every value must already lie in `[0, p)`.
fn canonical_row(line: usize, tokens: &[&str], n: usize, field: Field) -> Parsed<Vec<u32>> {
    if tokens.len() != n {
        return fail(
            line,
            format!("expected {n} integers, found {}", tokens.len()),
        );
    }
    tokens
        .iter()
        .map(|t| {
            let v = int(line, t)?;
            if v < 0 || v >= field.p() as i64 {
                fail(line, format!("entry {v} outside [0, {})", field.p()))
            } else {
                Ok(v as u32)
            }
        })
        .collect()
}

/// Rows that are reduced mod `p`, recording a warning for each change.
fn reduced_row(
    line: usize,
    tokens: &[&str],
    n: usize,
    field: Field,
    warnings: &mut Vec<String>,
) -> Parsed<Vec<u32>> {
    if tokens.len() != n {
        return fail(
            line,
            format!("expected {n} integers, found {}", tokens.len()),
        );
    }
    tokens
        .iter()
        .map(|t| {
            let v = int(line, t)?;
            let r = field.reduce(v);
            if r as i64 != v {
                warnings.push(format!("line {line}: {v} reduced to {r} mod {}", field.p()));
            }
            Ok(r)
        })
        .collect()
}

/// Contents of a sequence file before the declared period is checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceFile {
    pub field: Field,
    pub n: usize,
    /// `M * n` values, term by term.
    pub data: Vec<u32>,
    pub period: Option<usize>,
}

impl SequenceFile {
    pub fn len(&self) -> usize {
        self.data.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// First stored term that contradicts the declared period.
    pub fn period_violation(&self) -> Option<usize> {
        period_violation(self.n, &self.data, self.period)
            .ok()
            .flatten()
    }

    /// The sequence, failing if the body breaks the declared period.
    pub fn sequence(&self) -> crate::error::Result<VectorSequence> {
        VectorSequence::from_flat(self.field, self.n, self.data.clone(), self.period)
    }

    /// The stored terms alone, ignoring the declared period.
    pub fn prefix(&self) -> crate::error::Result<VectorSequence> {
        VectorSequence::from_flat(self.field, self.n, self.data.clone(), None)
    }
}

pub fn parse_sequence_file(text: &str) -> Parsed<SequenceFile> {
    let mut lines = Lines::new(text);
    let (ln, head) = lines.next("header `seq <p> <n> <M> [period <N>]`")?;
    if head[0] != "seq" || !(head.len() == 4 || head.len() == 6) {
        return fail(ln, "header must be `seq <p> <n> <M> [period <N>]`");
    }
    let field = field_of(ln, head[1])?;
    let n = count(ln, head[2], "n")?;
    let m = count(ln, head[3], "M")?;
    if n == 0 {
        return fail(ln, "n must be at least 1");
    }
    if m == 0 {
        return fail(ln, "M must be at least 1");
    }
    let period = if head.len() == 6 {
        if head[4] != "period" {
            return fail(ln, format!("expected `period`, found {:?}", head[4]));
        }
        let p = count(ln, head[5], "period")?;
        if p == 0 || p > m {
            return fail(ln, format!("period {p} must be in 1..={m}"));
        }
        Some(p)
    } else {
        None
    };
    let mut data = Vec::with_capacity(m * n);
    for i in 0..m {
        let (l, tokens) = lines.next(&format!("term {i} of {m}"))?;
        data.extend(canonical_row(l, &tokens, n, field)?);
    }
    lines.finish()?;
    Ok(SequenceFile {
        field,
        n,
        data,
        period,
    })
}

/// Parses a sequence file into a [`VectorSequence`], treating a broken
/// period as a format error.
pub fn parse_sequence(text: &str) -> Parsed<VectorSequence> {
    let file = parse_sequence_file(text)?;
    if let Some(i) = file.period_violation() {
        return fail(0, format!("term {i} breaks the declared period"));
    }
    file.sequence().or_else(|e| fail(0, e.to_string()))
}

pub fn write_sequence(v: &VectorSequence) -> String {
    let mut out = format!("seq {} {} {}", v.field().p(), v.dim(), v.len());
    if let Some(p) = v.period() {
        let _ = write!(out, " period {p}");
    }
    out.push('\n');
    for t in v.stored() {
        push_row(&mut out, t);
    }
    out
}

fn push_row(out: &mut String, values: &[u32]) {
    let row: Vec<String> = values.iter().map(u32::to_string).collect();
    out.push_str(&row.join(" "));
    out.push('\n');
}

/// A parsed map together with warnings about values reduced mod `p`.
#[derive(Debug, Clone)]
pub struct MapFile {
    pub map: MapSpec,
    pub warnings: Vec<String>,
}

pub fn parse_map(text: &str) -> Parsed<MapFile> {
    let mut lines = Lines::new(text);
    let (ln, head) = lines.next("`map affine` or `map table`")?;
    let affine = match head.as_slice() {
        ["map", "affine"] => true,
        ["map", "table"] => false,
        _ => return fail(ln, "first line must be `map affine` or `map table`"),
    };
    let (ln, fl) = lines.next("`field <p>`")?;
    let field = match fl.as_slice() {
        ["field", p] => field_of(ln, p)?,
        _ => return fail(ln, "expected `field <p>`"),
    };
    let (ln, dl) = lines.next("`dim <n>`")?;
    let n = match dl.as_slice() {
        ["dim", n] => count(ln, n, "n")?,
        _ => return fail(ln, "expected `dim <n>`"),
    };
    if n == 0 {
        return fail(ln, "n must be at least 1");
    }
    let mut warnings = Vec::new();
    let map = if affine {
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            let (l, tokens) = lines.next(&format!("row {i} of A"))?;
            rows.extend(reduced_row(l, &tokens, n, field, &mut warnings)?);
        }
        let (l, tokens) = lines.next("offset b")?;
        let b = reduced_row(l, &tokens, n, field, &mut warnings)?;
        let a = Matrix::from_values(field, n, n, rows).or_else(|e| fail(l, e.to_string()))?;
        MapSpec::affine(a, b).or_else(|e| fail(l, e.to_string()))?
    } else {
        let size = match space_size(field, n).filter(|&s| s <= MAX_TABLE) {
            Some(s) => s as usize,
            None => return fail(ln, format!("table of p^n entries exceeds {MAX_TABLE}")),
        };
        let mut images = Vec::with_capacity(size * n);
        for k in 0..size {
            let (l, tokens) = lines.next(&format!("table line {k} of {size}"))?;
            images.extend(reduced_row(l, &tokens, n, field, &mut warnings)?);
        }
        MapSpec::table(field, n, images).or_else(|e| fail(ln, e.to_string()))?
    };
    lines.finish()?;
    Ok(MapFile { map, warnings })
}

pub fn write_map(f: &MapSpec) -> String {
    let field = f.field();
    let n = f.dim();
    let mut out = String::new();
    match f.kind() {
        MapKind::Affine { a, b } => {
            let _ = writeln!(out, "map affine\nfield {}\ndim {n}", field.p());
            for i in 0..n {
                push_row(&mut out, a.row(i));
            }
            push_row(&mut out, b);
        }
        MapKind::Table(t) => {
            let _ = writeln!(out, "map table\nfield {}\ndim {n}", field.p());
            for img in t.chunks(n) {
                push_row(&mut out, img);
            }
        }
    }
    out
}

/// Parses a matrix polynomial; a zero polynomial is `deg 0` with a zero block.
pub fn parse_mpoly(text: &str) -> Parsed<MatrixPoly> {
    let mut lines = Lines::new(text);
    let (ln, head) = lines.next("header `mpoly <p> <n> <deg>`")?;
    if head.len() != 4 || head[0] != "mpoly" {
        return fail(ln, "header must be `mpoly <p> <n> <deg>`");
    }
    let field = field_of(ln, head[1])?;
    let n = count(ln, head[2], "n")?;
    let deg = count(ln, head[3], "deg")?;
    if n == 0 {
        return fail(ln, "n must be at least 1");
    }
    let mut blocks = Vec::with_capacity(deg + 1);
    for k in 0..=deg {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            let (l, tokens) = lines.next(&format!("row {i} of coefficient {k}"))?;
            data.extend(canonical_row(l, &tokens, n, field)?);
        }
        blocks.push(Matrix::from_values(field, n, n, data).or_else(|e| fail(ln, e.to_string()))?);
    }
    lines.finish()?;
    if deg > 0 && blocks[deg].is_zero() {
        return fail(ln, format!("leading coefficient of degree {deg} is zero"));
    }
    MatrixPoly::new(field, n, blocks).or_else(|e| fail(ln, e.to_string()))
}

pub fn write_mpoly(m: &MatrixPoly) -> String {
    let n = m.dim();
    let deg = m.degree().unwrap_or(0);
    let mut out = format!("mpoly {} {n} {deg}\n", m.field().p());
    for k in 0..=deg {
        let c = m.coeff(k);
        for i in 0..n {
            push_row(&mut out, c.row(i));
        }
    }
    out
}

/// Parses `a,b,c` (or whitespace separated) into `n` values reduced mod `p`.
pub fn parse_csv_vector(field: Field, n: usize, text: &str) -> Parsed<Vec<u32>> {
    let tokens: Vec<&str> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect();
    if tokens.len() != n {
        return fail(1, format!("expected {n} values, found {}", tokens.len()));
    }
    tokens
        .iter()
        .map(|t| int(1, t).map(|v| field.reduce(v)))
        .collect()
}

/// Encoded point list of a table map, useful for writing permutation files.
pub fn table_points(f: &MapSpec) -> Vec<Vec<u32>> {
    let size = space_size(f.field(), f.dim()).unwrap_or(0);
    (0..size).map(|k| decode(f.field(), f.dim(), k)).collect()
}
