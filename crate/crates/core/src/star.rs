//! Subdivided stars `S(l1, .., lt)` and their moves.
//!
//! A star is stored in canonical form: positive branch lengths sorted in
//! descending order. `S()` is the single vertex; a star with at most two
//! positive branches is a path.

use std::fmt;

use crate::error::Result;
use crate::graph::{self, Graph, VertexSet};
use crate::subtraction::SubtractionSet;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubdividedStar {
    branches: Vec<usize>,
}

impl SubdividedStar {
    /// Canonicalizes: zero-length branches are dropped and the rest sorted
    /// in descending order.
    pub fn new<I: IntoIterator<Item = usize>>(branches: I) -> Self {
        let mut branches: Vec<usize> = branches.into_iter().filter(|&b| b > 0).collect();
        branches.sort_unstable_by(|a, b| b.cmp(a));
        SubdividedStar { branches }
    }

    /// `S()`, a single vertex.
    pub fn single_vertex() -> Self {
        SubdividedStar {
            branches: Vec::new(),
        }
    }

    /// `S(1^t)`, the simple star with `t` leaves.
    pub fn simple(t: usize) -> Self {
        SubdividedStar {
            branches: vec![1; t],
        }
    }

    /// The path `P_k` for `k >= 1`, centred at one endpoint.
    pub fn path(k: usize) -> Self {
        assert!(k >= 1, "P_0 is the empty graph, not a star");
        Self::new([k - 1])
    }

    pub fn branches(&self) -> &[usize] {
        &self.branches
    }

    /// Number of vertices, centre included.
    pub fn order(&self) -> usize {
        1 + self.branches.iter().sum::<usize>()
    }

    pub fn is_path(&self) -> bool {
        self.branches.len() <= 2
    }

    /// Adds `extra` vertices to the `index`-th branch (canonical order); an
    /// index one past the end starts a new branch.
    pub fn extend_branch(&self, index: usize, extra: usize) -> Self {
        let mut b = self.branches.clone();
        if index == b.len() {
            b.push(extra);
        } else {
            b[index] += extra;
        }
        Self::new(b)
    }

    /// Appends one more branch of length `len`.
    pub fn with_branch(&self, len: usize) -> Self {
        Self::new(self.branches.iter().copied().chain(std::iter::once(len)))
    }

    /// Reduces every branch modulo `m`.
    pub fn reduce_mod(&self, m: usize) -> Self {
        Self::new(self.branches.iter().map(|b| b % m))
    }

    /// Key merging isomorphic positions: paths collapse to a single branch.
    pub fn shape_key(&self) -> SubdividedStar {
        if self.is_path() {
            Self::path(self.order())
        } else {
            self.clone()
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        graph::make_subdivided_star(&self.branches)
    }

    /// Recognizes the subgraph of `g` induced by `live` as a subdivided star,
    /// returning its [`shape_key`](Self::shape_key). `None` for the empty set
    /// and for anything that is not a tree with at most one vertex of degree
    /// three or more.
    pub fn recognize(g: &Graph, live: VertexSet) -> Option<SubdividedStar> {
        let n = live.len();
        if n == 0 || !g.is_connected(live) {
            return None;
        }
        let degree = |v: usize| g.neighbors(v).intersection(live).len();
        let edges: usize = live.iter().map(degree).sum::<usize>() / 2;
        if edges + 1 != n {
            return None;
        }
        let mut hubs = live.iter().filter(|&v| degree(v) >= 3);
        let center = match (hubs.next(), hubs.next()) {
            (None, _) => return Some(Self::path(n)),
            (Some(c), None) => c,
            _ => return None,
        };
        let mut lengths = Vec::new();
        for first in g.neighbors(center).intersection(live).iter() {
            let (mut prev, mut cur, mut len) = (center, first, 1);
            loop {
                let onward = g.neighbors(cur).intersection(live).remove(prev);
                match onward.first() {
                    None => break,
                    Some(next) => {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                }
            }
            lengths.push(len);
        }
        Some(Self::new(lengths))
    }
}

impl fmt::Display for SubdividedStar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("S(")?;
        for (i, b) in self.branches.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for SubdividedStar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// How a star option was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// `removed` vertices taken from the tip of branch `branch`.
    Tip { branch: usize },
    /// The centre, every branch but `branch`, and a centre-side prefix of
    /// `branch`; what is left is a path.
    CenterTake { branch: usize },
    /// The whole star.
    Whole,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarMove {
    pub kind: MoveKind,
    pub removed: usize,
    /// `None` when the move empties the graph.
    pub result: Option<SubdividedStar>,
}

/// Every legal CSG(L) move from `star`, one entry per removed vertex set.
///
/// A removed set avoiding the centre must be a tip segment of one branch. A
/// removed set containing the centre must swallow all branches except at most
/// one, which keeps a tail: the option is a path, or nothing at all.
pub fn star_removals(star: &SubdividedStar, l: &SubtractionSet) -> Vec<StarMove> {
    let order = star.order();
    let branches = star.branches();
    let mut moves = Vec::new();
    for (j, &len) in branches.iter().enumerate() {
        for i in l.iter().take_while(|&i| i <= len) {
            let mut rest = branches.to_vec();
            rest[j] -= i;
            moves.push(StarMove {
                kind: MoveKind::Tip { branch: j },
                removed: i,
                result: Some(SubdividedStar::new(rest)),
            });
        }
    }
    for (j, &len) in branches.iter().enumerate() {
        for tail in 1..=len {
            let removed = order - tail;
            if l.contains(removed) {
                moves.push(StarMove {
                    kind: MoveKind::CenterTake { branch: j },
                    removed,
                    result: Some(SubdividedStar::path(tail)),
                });
            }
        }
    }
    if l.contains(order) {
        moves.push(StarMove {
            kind: MoveKind::Whole,
            removed: order,
            result: None,
        });
    }
    moves
}
