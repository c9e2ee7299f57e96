use std::fmt;
use std::str::FromStr;

use crate::error::{CsgError, Result};

/// Largest removal size a subtraction set may contain.
pub const MAX_REMOVAL: usize = 64;

/// The set `L` of legal removal sizes: nonempty, positive, at most 64.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubtractionSet {
    values: Vec<usize>,
    mask: u128,
}

impl SubtractionSet {
    pub fn new<I: IntoIterator<Item = usize>>(values: I) -> Result<Self> {
        let mut values: Vec<usize> = values.into_iter().collect();
        values.sort_unstable();
        values.dedup();
        if values.is_empty() {
            return Err(CsgError::InvalidSubtractionSet("set is empty".into()));
        }
        if values[0] == 0 {
            return Err(CsgError::InvalidSubtractionSet(
                "0 is not a removal size".into(),
            ));
        }
        if let Some(&big) = values.last().filter(|&&v| v > MAX_REMOVAL) {
            return Err(CsgError::InvalidSubtractionSet(format!(
                "{big} exceeds the maximum removal size {MAX_REMOVAL}"
            )));
        }
        let mask = values.iter().fold(0u128, |m, &v| m | 1 << v);
        Ok(SubtractionSet { values, mask })
    }

    /// `I_N = {1, .., N}`.
    pub fn interval(n: usize) -> Result<Self> {
        Self::new(1..=n)
    }

    /// `I_N ∪ {M}`.
    pub fn interval_plus(n: usize, extra: usize) -> Result<Self> {
        Self::new((1..=n).chain(std::iter::once(extra)))
    }

    #[inline]
    pub fn contains(&self, size: usize) -> bool {
        size <= MAX_REMOVAL && self.mask >> size & 1 == 1
    }

    #[inline]
    pub fn max(&self) -> usize {
        *self.values.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.iter().copied()
    }

    /// `Some(N)` when the set is exactly `I_N`.
    pub fn as_interval(&self) -> Option<usize> {
        (self.values.len() == self.max()).then(|| self.max())
    }
}

impl fmt::Display for SubtractionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.values {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for SubtractionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// Accepts `1,2,4`, `I:4` for `I_4`, and `I:8+20` for `I_8 ∪ {20}`.
impl FromStr for SubtractionSet {
    type Err = CsgError;

    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| CsgError::parse(s, format!("`{t}` is not a nonnegative integer")))
        };
        let s_trim = s.trim();
        if let Some(rest) = s_trim.strip_prefix("I:") {
            let mut parts = rest.split('+');
            let n = num(parts.next().unwrap_or(""))?;
            let extras = parts.map(num).collect::<Result<Vec<_>>>()?;
            return Self::new((1..=n).chain(extras)).map_err(|e| CsgError::parse(s, e.to_string()));
        }
        let values = s_trim.split(',').map(num).collect::<Result<Vec<_>>>()?;
        Self::new(values).map_err(|e| CsgError::parse(s, e.to_string()))
    }
}
