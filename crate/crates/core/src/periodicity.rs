//! Grundy sequences `f(k) = 𝒢_L(G·u·k)` and empirical period detection.
//!
//! Text form: preperiod, then the period in parentheses. A part whose values
//! all fit in one digit is written as digits (`00112203(102)`), otherwise as
//! a bracketed list (`([11,0])`).

use std::fmt;
use std::str::FromStr;

use crate::error::{CsgError, Result};
use crate::graph::{self, AppendSpec, Graph, VertexSet, MAX_VERTICES};
use crate::solver::{GraphSolver, GrundyValue, StarSolver};
use crate::star::SubdividedStar;
use crate::subtraction::SubtractionSet;

/// An eventually periodic sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrundySequence {
    preperiod: Vec<GrundyValue>,
    period: Vec<GrundyValue>,
}

impl GrundySequence {
    /// Builds the sequence with its shortest period and preperiod.
    pub fn new(preperiod: Vec<GrundyValue>, period: Vec<GrundyValue>) -> Result<Self> {
        if period.is_empty() {
            return Err(CsgError::Precondition("the period must be nonempty".into()));
        }
        let p = period.len();
        let t = (1..=p)
            .find(|&t| p.is_multiple_of(t) && (t..p).all(|i| period[i] == period[i - t]))
            .unwrap_or(p);
        let mut period = period[..t].to_vec();
        let mut preperiod = preperiod;
        while let Some(&last) = preperiod.last() {
            if last != period[t - 1] {
                break;
            }
            preperiod.pop();
            period.rotate_right(1);
        }
        Ok(GrundySequence { preperiod, period })
    }

    pub fn preperiod(&self) -> &[GrundyValue] {
        &self.preperiod
    }

    pub fn period(&self) -> &[GrundyValue] {
        &self.period
    }

    pub fn preperiod_len(&self) -> usize {
        self.preperiod.len()
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    pub fn value_at(&self, k: usize) -> GrundyValue {
        match k.checked_sub(self.preperiod.len()) {
            None => self.preperiod[k],
            Some(j) => self.period[j % self.period.len()],
        }
    }

    /// The first `len` terms.
    pub fn expand(&self, len: usize) -> Vec<GrundyValue> {
        (0..len).map(|k| self.value_at(k)).collect()
    }
}

fn write_part(f: &mut fmt::Formatter<'_>, part: &[GrundyValue]) -> fmt::Result {
    if part.iter().all(|v| v.0 < 10) {
        for v in part {
            write!(f, "{}", v.0)?;
        }
        return Ok(());
    }
    f.write_str("[")?;
    for (i, v) in part.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{}", v.0)?;
    }
    f.write_str("]")
}

impl fmt::Display for GrundySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_part(f, &self.preperiod)?;
        f.write_str("(")?;
        write_part(f, &self.period)?;
        f.write_str(")")
    }
}

pub fn format_sequence(gs: &GrundySequence) -> String {
    gs.to_string()
}

fn parse_part(input: &str, part: &str) -> Result<Vec<GrundyValue>> {
    if let Some(inner) = part.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| CsgError::parse(input, "unclosed `[`"))?;
        let values = inner
            .split(',')
            .map(|t| {
                let canonical = !t.is_empty() && (t == "0" || !t.starts_with('0'));
                t.parse::<u32>()
                    .ok()
                    .filter(|_| canonical)
                    .map(GrundyValue)
                    .ok_or_else(|| CsgError::parse(input, format!("`{t}` is not a value")))
            })
            .collect::<Result<Vec<_>>>()?;
        if values.iter().all(|v| v.0 < 10) {
            return Err(CsgError::parse(
                input,
                "single-digit parts are written without brackets",
            ));
        }
        return Ok(values);
    }
    part.chars()
        .map(|c| {
            c.to_digit(10)
                .map(GrundyValue)
                .ok_or_else(|| CsgError::parse(input, format!("unexpected `{c}`")))
        })
        .collect()
}

/// Inverse of [`format_sequence`]. The result must already be in shortest
/// form, so that formatting gives back the input.
pub fn parse_sequence(text: &str) -> Result<GrundySequence> {
    let (pre, rest) = text
        .split_once('(')
        .ok_or_else(|| CsgError::parse(text, "missing `(`"))?;
    let period = rest
        .strip_suffix(')')
        .ok_or_else(|| CsgError::parse(text, "missing closing `)`"))?;
    let preperiod = parse_part(text, pre)?;
    let period = parse_part(text, period)?;
    if period.is_empty() {
        return Err(CsgError::parse(text, "empty period"));
    }
    let gs = GrundySequence::new(preperiod.clone(), period.clone())?;
    if gs.preperiod != preperiod || gs.period != period {
        return Err(CsgError::parse(
            text,
            format!("not in shortest form; write `{gs}`"),
        ));
    }
    Ok(gs)
}

impl FromStr for GrundySequence {
    type Err = CsgError;

    fn from_str(s: &str) -> Result<Self> {
        parse_sequence(s)
    }
}

/// A detected period, backed only by the terms inspected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalPeriod {
    pub sequence: GrundySequence,
    /// Number of terms the period was checked against.
    pub observed: usize,
}

impl fmt::Display for EmpiricalPeriod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (empirical, {} terms)", self.sequence, self.observed)
    }
}

/// Smallest `T`, then smallest `k0`, such that `seq[k + T] = seq[k]` for
/// every observed `k >= k0`, accepted only when the repetition is seen over
/// at least `confirm_window + 2T` further terms.
pub fn detect_period(seq: &[GrundyValue], confirm_window: usize) -> Result<EmpiricalPeriod> {
    let len = seq.len();
    for t in 1..len {
        let mut k0 = len - t;
        while k0 > 0 && seq[k0 - 1] == seq[k0 - 1 + t] {
            k0 -= 1;
        }
        if len - t - k0 >= confirm_window + 2 * t {
            let sequence = GrundySequence::new(seq[..k0].to_vec(), seq[k0..k0 + t].to_vec())?;
            return Ok(EmpiricalPeriod {
                sequence,
                observed: len,
            });
        }
    }
    Err(CsgError::NoPeriod(format!(
        "no period confirmed over {len} terms with window {confirm_window}"
    )))
}

/// `f(0..=k_max)` for the family `G·u·k`; an empty base gives the path
/// sequence. One realized graph serves every `k`, so the memo is shared.
/// Star bases anchored at their centre fall back to the star solver when
/// the realized graph would exceed the vertex capacity.
pub fn appended_sequence(
    base: &Graph,
    anchor: Option<usize>,
    l: &SubtractionSet,
    k_max: usize,
) -> Result<Vec<GrundyValue>> {
    let spec = AppendSpec::new(base.clone(), anchor, k_max)?;
    let n = base.order();
    if n + k_max > MAX_VERTICES {
        let star = match anchor {
            None => Some(SubdividedStar::single_vertex()),
            Some(u) => graph::branch_lengths(base, u).map(SubdividedStar::new),
        };
        let Some(star) = star else {
            return Err(CsgError::Capacity {
                needed: n + k_max,
                max: MAX_VERTICES,
            });
        };
        let mut solver = StarSolver::new(l.clone());
        return Ok((0..=k_max)
            .map(|k| match anchor {
                None if k == 0 => GrundyValue::ZERO,
                None => solver.grundy(&SubdividedStar::path(k)),
                Some(_) => solver.grundy(&star.with_branch(k)),
            })
            .collect());
    }
    let mut solver = GraphSolver::new(spec.realize()?, l.clone());
    Ok((0..=k_max)
        .map(|k| solver.grundy(VertexSet::full(n + k)))
        .collect())
}
