//! A small text language for graphs and appended-path families.
//!
//! ```text
//! path:7                    P_7
//! star:1^4                  four branches of length 1
//! sstar:1,2,3               S(1,2,3), branches in the order written
//! append(path:3,u=0,k=2)    G·u·k
//! edges:0-1,1-2             explicit edge list on vertices 0..=max
//! ```
//!
//! Parsing is strict (no whitespace, no leading zeros) so that formatting a
//! parsed spec gives back the input byte for byte.

use std::fmt;
use std::str::FromStr;

use crate::error::{CsgError, Result};
use crate::graph::{self, AppendSpec, Graph};
use crate::star::SubdividedStar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GraphSpec {
    Path(usize),
    /// `count` branches, each of length `len`.
    Star {
        len: usize,
        count: usize,
    },
    SStar(Vec<usize>),
    Append {
        base: Box<GraphSpec>,
        u: usize,
        k: usize,
    },
    Edges(Vec<(usize, usize)>),
}

impl GraphSpec {
    pub fn realize(&self) -> Result<Graph> {
        match self {
            GraphSpec::Path(k) => graph::make_path(*k),
            GraphSpec::Star { len, count } => graph::make_subdivided_star(&vec![*len; *count]),
            GraphSpec::SStar(b) => graph::make_subdivided_star(b),
            GraphSpec::Append { base, u, k } => {
                AppendSpec::new(base.realize()?, Some(*u), *k)?.realize()
            }
            GraphSpec::Edges(edges) => {
                let n = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
                Graph::from_edges(n, edges)
            }
        }
    }

    pub fn from_star(star: &SubdividedStar) -> Self {
        GraphSpec::SStar(star.branches().to_vec())
    }
}

fn number(input: &str, t: &str) -> Result<usize> {
    let digits = !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits || (t.len() > 1 && t.starts_with('0')) {
        return Err(CsgError::parse(
            input,
            format!("`{t}` is not a canonical nonnegative integer"),
        ));
    }
    t.parse()
        .map_err(|_| CsgError::parse(input, format!("`{t}` is out of range")))
}

fn parse_graph(input: &str, s: &str) -> Result<GraphSpec> {
    if let Some(rest) = s.strip_prefix("path:") {
        return Ok(GraphSpec::Path(number(input, rest)?));
    }
    if let Some(rest) = s.strip_prefix("star:") {
        let (len, count) = rest
            .split_once('^')
            .ok_or_else(|| CsgError::parse(input, "expected `star:<len>^<count>`"))?;
        return Ok(GraphSpec::Star {
            len: number(input, len)?,
            count: number(input, count)?,
        });
    }
    if let Some(rest) = s.strip_prefix("sstar:") {
        if rest.is_empty() {
            return Ok(GraphSpec::SStar(Vec::new()));
        }
        let b = rest
            .split(',')
            .map(|t| number(input, t))
            .collect::<Result<_>>()?;
        return Ok(GraphSpec::SStar(b));
    }
    if let Some(rest) = s.strip_prefix("edges:") {
        if rest.is_empty() {
            return Ok(GraphSpec::Edges(Vec::new()));
        }
        let edges = rest
            .split(',')
            .map(|e| {
                let (a, b) = e
                    .split_once('-')
                    .ok_or_else(|| CsgError::parse(input, format!("`{e}` is not an edge `a-b`")))?;
                Ok((number(input, a)?, number(input, b)?))
            })
            .collect::<Result<_>>()?;
        return Ok(GraphSpec::Edges(edges));
    }
    if let Some(rest) = s.strip_prefix("append(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| CsgError::parse(input, "unbalanced `append(`"))?;
        let mut parts = inner.rsplitn(3, ',');
        let k_part = parts.next().unwrap_or("");
        let u_part = parts.next().unwrap_or("");
        let base = parts
            .next()
            .ok_or_else(|| CsgError::parse(input, "expected `append(<spec>,u=<idx>,k=<n>)`"))?;
        let u = u_part
            .strip_prefix("u=")
            .ok_or_else(|| CsgError::parse(input, "expected `u=<idx>`"))?;
        let k = k_part
            .strip_prefix("k=")
            .ok_or_else(|| CsgError::parse(input, "expected `k=<n>`"))?;
        return Ok(GraphSpec::Append {
            base: Box::new(parse_graph(input, base)?),
            u: number(input, u)?,
            k: number(input, k)?,
        });
    }
    Err(CsgError::parse(input, "unknown graph form"))
}

impl FromStr for GraphSpec {
    type Err = CsgError;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph(s, s)
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[usize]) -> fmt::Result {
    for (i, v) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Path(k) => write!(f, "path:{k}"),
            GraphSpec::Star { len, count } => write!(f, "star:{len}^{count}"),
            GraphSpec::SStar(b) => {
                f.write_str("sstar:")?;
                write_list(f, b)
            }
            GraphSpec::Append { base, u, k } => write!(f, "append({base},u={u},k={k})"),
            GraphSpec::Edges(edges) => {
                f.write_str("edges:")?;
                for (i, (a, b)) in edges.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}-{b}")?;
                }
                Ok(())
            }
        }
    }
}

/// Where the path of a family is appended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AnchorSpec {
    Index(usize),
    /// Vertex 0, the centre of a star.
    Center,
}

/// `<graphspec>[@<idx>|@center]`, or `path` for the empty base whose
/// family is the bare path sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub base: Option<GraphSpec>,
    pub anchor: Option<AnchorSpec>,
}

impl FamilySpec {
    pub fn empty_base() -> Self {
        FamilySpec {
            base: None,
            anchor: None,
        }
    }

    pub fn base_graph(&self) -> Result<Graph> {
        self.base
            .as_ref()
            .map_or(Ok(Graph::empty()), GraphSpec::realize)
    }

    /// Anchor index; `None` for the empty base. Defaults to vertex 0.
    pub fn anchor_index(&self) -> Option<usize> {
        self.base.as_ref()?;
        Some(match self.anchor {
            Some(AnchorSpec::Index(u)) => u,
            Some(AnchorSpec::Center) | None => 0,
        })
    }

    pub fn append_spec(&self, k: usize) -> Result<AppendSpec> {
        AppendSpec::new(self.base_graph()?, self.anchor_index(), k)
    }
}

impl FromStr for FamilySpec {
    type Err = CsgError;

    fn from_str(s: &str) -> Result<Self> {
        if s == "path" || s == "empty" {
            return Ok(Self::empty_base());
        }
        let (g, anchor) = match s.rsplit_once('@') {
            Some((g, "center")) => (g, Some(AnchorSpec::Center)),
            Some((g, u)) => (g, Some(AnchorSpec::Index(number(s, u)?))),
            None => (s, None),
        };
        let base = parse_graph(s, g)?;
        let spec = FamilySpec {
            base: Some(base),
            anchor,
        };
        spec.append_spec(0)?;
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.base {
            None => f.write_str("path"),
            Some(g) => {
                write!(f, "{g}")?;
                match self.anchor {
                    Some(AnchorSpec::Index(u)) => write!(f, "@{u}"),
                    Some(AnchorSpec::Center) => f.write_str("@center"),
                    None => Ok(()),
                }
            }
        }
    }
}
