//! Small simple undirected graphs stored as per-vertex adjacency words.
//!
//! Every graph holds at most [`MAX_VERTICES`] vertices so that a vertex subset
//! fits in one `u64`. Game positions are subsets of a parent graph: a move only
//! ever deletes vertices, so the surviving set is all a position needs.

use std::fmt;

use crate::error::{CsgError, Result};
use crate::subtraction::SubtractionSet;

pub const MAX_VERTICES: usize = 64;

/// A subset of the vertices of some [`Graph`], one bit per vertex index.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        VertexSet(vertices.into_iter().fold(0, |acc, v| acc | (1u64 << v)))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[inline]
    pub fn remove(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Lowest vertex index in the set.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A simple undirected graph on vertices `0..n`.
///
/// Non-empty graphs built through the public constructors are connected, the
/// adjacency is symmetric and there are no loops.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty() -> Self {
        Graph { adj: Vec::new() }
    }

    /// Builds a connected graph from an edge list over vertices `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let g = Self::from_edges_unchecked(n, edges)?;
        if n > 0 && !g.is_connected(g.vertices()) {
            return Err(CsgError::InvalidGraph("graph is not connected".into()));
        }
        Ok(g)
    }

    /// Like [`Graph::from_edges`] but allows a disconnected result.
    pub(crate) fn from_edges_unchecked(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        check_capacity(n)?;
        let mut adj = vec![0u64; n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(CsgError::InvalidGraph(format!(
                    "edge {a}-{b} out of range for {n} vertices"
                )));
            }
            if a == b {
                return Err(CsgError::InvalidGraph(format!("loop at vertex {a}")));
            }
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Ok(Graph { adj })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.order() && self.adj[a] >> b & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|a| a.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for a in 0..self.order() {
            for b in VertexSet(self.adj[a]).iter().filter(|&b| b > a) {
                out.push((a, b));
            }
        }
        out
    }

    /// Union of the neighbourhoods of the vertices in `s`.
    #[inline]
    pub fn neighborhood(&self, s: VertexSet) -> VertexSet {
        VertexSet(s.iter().fold(0, |acc, v| acc | self.adj[v]))
    }

    /// Whether the subgraph induced by `s` is connected. The empty set counts
    /// as connected, which makes removing the whole graph a legal move.
    pub fn is_connected(&self, s: VertexSet) -> bool {
        let Some(start) = s.first() else {
            return true;
        };
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = self.neighborhood(frontier).intersection(s).difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen == s
    }

    /// Every connected subset of `live` with between 1 and `max_size` vertices.
    ///
    /// Each set is grown from its minimum vertex by branching on one frontier
    /// vertex at a time (take it, or forbid it), so no set is produced twice
    /// and sets larger than `max_size` are never visited. Output is sorted by
    /// bitset value.
    pub fn connected_subsets(&self, live: VertexSet, max_size: usize) -> Vec<VertexSet> {
        let mut out = Vec::new();
        if max_size == 0 {
            return out;
        }
        let mut below = VertexSet::EMPTY;
        for v in live.iter() {
            let allowed = live.difference(below);
            self.grow(
                VertexSet::singleton(v),
                allowed,
                VertexSet::singleton(v),
                max_size,
                &mut out,
            );
            below = below.insert(v);
        }
        out.sort_unstable();
        out
    }

    fn grow(
        &self,
        set: VertexSet,
        allowed: VertexSet,
        forbidden: VertexSet,
        max_size: usize,
        out: &mut Vec<VertexSet>,
    ) {
        let frontier = self
            .neighborhood(set)
            .intersection(allowed)
            .difference(forbidden.union(set));
        match frontier.first() {
            Some(w) if set.len() < max_size => {
                self.grow(set.insert(w), allowed, forbidden, max_size, out);
                self.grow(set, allowed, forbidden.insert(w), max_size, out);
            }
            _ => out.push(set),
        }
    }

    /// Legal moves of CSG(L) from the position `live`: every connected
    /// `S ⊆ live` with `|S| ∈ L` whose complement in `live` is connected
    /// (possibly empty). Sorted by bitset value, no duplicates.
    pub fn enumerate_removals(&self, live: VertexSet, l: &SubtractionSet) -> Vec<VertexSet> {
        let cap = l.max().min(live.len());
        self.connected_subsets(live, cap)
            .into_iter()
            .filter(|s| l.contains(s.len()) && self.is_connected(live.difference(*s)))
            .collect()
    }

    /// The subgraph induced by `s`, with vertices renumbered in increasing
    /// order of their original index.
    pub fn induced(&self, s: VertexSet) -> Graph {
        let index: Vec<usize> = s.iter().collect();
        let mut adj = vec![0u64; index.len()];
        for (i, &v) in index.iter().enumerate() {
            for (j, &w) in index.iter().enumerate() {
                if self.has_edge(v, w) {
                    adj[i] |= 1 << j;
                }
            }
        }
        Graph { adj }
    }

    /// Disjoint union; used only for sums, so connectivity is not required.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.order();
        check_capacity(n + other.order())?;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&a| a << n));
        Ok(Graph { adj })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges())
    }
}

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(CsgError::Capacity {
            needed: n,
            max: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

/// The path on `k` vertices, `0 - 1 - .. - (k-1)`. `k = 0` is the empty graph.
pub fn make_path(k: usize) -> Result<Graph> {
    check_capacity(k)?;
    let edges: Vec<_> = (1..k).map(|v| (v - 1, v)).collect();
    Graph::from_edges(k, &edges)
}

/// Subdivided star with centre 0. Branch `i` occupies a contiguous index
/// range, listed from the centre outwards, in the order given. Zero-length
/// branches contribute nothing.
pub fn make_subdivided_star(branches: &[usize]) -> Result<Graph> {
    let n = 1 + branches.iter().sum::<usize>();
    check_capacity(n)?;
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = 1;
    for &len in branches {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

/// Reads the branch lengths of a subdivided star back from the layout used by
/// [`make_subdivided_star`]: branches in order of their first vertex. Returns
/// `None` when `g` is not a tree hanging off `center` as disjoint paths.
pub fn branch_lengths(g: &Graph, center: usize) -> Option<Vec<usize>> {
    if center >= g.order() {
        return None;
    }
    let mut seen = VertexSet::singleton(center);
    let mut lengths = Vec::new();
    for first in g.neighbors(center).iter() {
        let (mut prev, mut cur, mut len) = (center, first, 1);
        loop {
            if seen.contains(cur) {
                return None;
            }
            seen = seen.insert(cur);
            let onward = g.neighbors(cur).remove(prev);
            match onward.len() {
                0 => break,
                1 => {
                    prev = cur;
                    cur = onward.first().unwrap();
                    len += 1;
                }
                _ => return None,
            }
        }
        lengths.push(len);
    }
    (seen == g.vertices()).then_some(lengths)
}

/// `G·u·k`: the base graph with a fresh path of `k` vertices hanging from the
/// anchor. An empty base (anchor `None`) realizes the bare path `P_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppendSpec {
    pub base: Graph,
    pub anchor: Option<usize>,
    pub k: usize,
}

impl AppendSpec {
    pub fn new(base: Graph, anchor: Option<usize>, k: usize) -> Result<Self> {
        check_anchor(&base, anchor)?;
        Ok(AppendSpec { base, anchor, k })
    }

    /// Vertex indices of the appended path, nearest the anchor first.
    pub fn path_vertices(&self) -> std::ops::Range<usize> {
        self.base.order()..self.base.order() + self.k
    }

    pub fn realize(&self) -> Result<Graph> {
        append_path(self)
    }
}

pub(crate) fn check_anchor(base: &Graph, anchor: Option<usize>) -> Result<()> {
    let ok = match anchor {
        None => base.is_empty(),
        Some(u) => u < base.order(),
    };
    if ok {
        Ok(())
    } else {
        Err(CsgError::InvalidAnchor {
            anchor,
            n: base.order(),
        })
    }
}

/// Realizes an [`AppendSpec`]: base vertices keep their indices and the new
/// path occupies `n..n+k`, with `n` adjacent to the anchor.
pub fn append_path(spec: &AppendSpec) -> Result<Graph> {
    check_anchor(&spec.base, spec.anchor)?;
    let n = spec.base.order();
    let total = n + spec.k;
    check_capacity(total)?;
    let mut edges = spec.base.edges();
    let mut prev = spec.anchor;
    for v in n..total {
        if let Some(p) = prev {
            edges.push((p, v));
        }
        prev = Some(v);
    }
    Graph::from_edges(total, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Graph {
        // Vertices 1..7 of the usual drawing are indices 0..6.
        Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (1, 4), (4, 6), (6, 5), (5, 1)]).unwrap()
    }

    #[test]
    fn path_constructor() {
        assert!(make_path(0).unwrap().is_empty());
        let p3 = make_path(3).unwrap();
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);
        let p7 = make_path(7).unwrap();
        assert_eq!(p7.edge_count(), 6);
        assert!(matches!(make_path(65), Err(CsgError::Capacity { .. })));
    }

    #[test]
    fn star_constructor() {
        assert_eq!(make_subdivided_star(&[]).unwrap().order(), 1);
        let s = make_subdivided_star(&[1, 1, 1]).unwrap();
        assert_eq!(s.order(), 4);
        assert_eq!(s.degree(0), 3);
        let spider = make_subdivided_star(&[3, 3, 3]).unwrap();
        assert_eq!(spider.order(), 10);
        assert_eq!(branch_lengths(&spider, 0), Some(vec![3, 3, 3]));
        assert!(make_subdivided_star(&[40, 30]).is_err());
    }

    #[test]
    fn append_constructor() {
        let p5 = append_path(&AppendSpec::new(Graph::empty(), None, 5).unwrap()).unwrap();
        assert_eq!(p5, make_path(5).unwrap());

        let star = make_subdivided_star(&[1, 1, 1]).unwrap();
        let g = append_path(&AppendSpec::new(star, Some(0), 2).unwrap()).unwrap();
        assert_eq!(g, make_subdivided_star(&[1, 1, 1, 2]).unwrap());

        // N = 2: star with N+2 leaves, path of N+1 at the centre.
        let star = make_subdivided_star(&[1; 4]).unwrap();
        let g = append_path(&AppendSpec::new(star, Some(0), 3).unwrap()).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(branch_lengths(&g, 0), Some(vec![1, 1, 1, 1, 3]));

        assert!(AppendSpec::new(make_path(2).unwrap(), Some(2), 1).is_err());
        assert!(AppendSpec::new(make_path(2).unwrap(), None, 1).is_err());
    }

    #[test]
    fn connectivity() {
        let p4 = make_path(4).unwrap();
        assert!(p4.is_connected(VertexSet::from_vertices([0, 1, 2, 3])));
        assert!(!p4.is_connected(VertexSet::from_vertices([0, 2])));
        assert!(p4.is_connected(VertexSet::EMPTY));
        let g = sample();
        assert!(g.is_connected(VertexSet::from_vertices([4, 5, 6])));
        assert!(g.is_connected(VertexSet::from_vertices([0, 1, 2, 3])));
        assert!(Graph::from_edges(3, &[(0, 1)]).is_err());
    }

    #[test]
    fn removals_small() {
        let l12 = SubtractionSet::new([1, 2]).unwrap();
        let p2 = make_path(2).unwrap();
        let r = p2.enumerate_removals(p2.vertices(), &l12);
        assert_eq!(r, vec![VertexSet(0b01), VertexSet(0b10), VertexSet(0b11)]);

        let l1 = SubtractionSet::new([1]).unwrap();
        let p3 = make_path(3).unwrap();
        let r = p3.enumerate_removals(p3.vertices(), &l1);
        assert_eq!(r, vec![VertexSet::singleton(0), VertexSet::singleton(2)]);

        let l124 = SubtractionSet::new([1, 2, 4]).unwrap();
        let s = make_subdivided_star(&[1, 1, 1]).unwrap();
        let r = s.enumerate_removals(s.vertices(), &l124);
        let sizes: Vec<usize> = r.iter().map(|s| s.len()).collect();
        assert_eq!(sizes.iter().filter(|&&x| x == 1).count(), 3);
        assert_eq!(sizes.iter().filter(|&&x| x == 2).count(), 0);
        assert_eq!(sizes.iter().filter(|&&x| x == 4).count(), 1);
    }

    #[test]
    fn sample_opening_move_is_legal() {
        let g = sample();
        let l = SubtractionSet::new([1, 2, 4]).unwrap();
        let moves = g.enumerate_removals(g.vertices(), &l);
        assert!(moves.contains(&VertexSet::from_vertices([0, 1, 2, 3])));
    }

    #[test]
    fn induced_renumbers() {
        let g = make_path(5).unwrap();
        let h = g.induced(VertexSet::from_vertices([1, 2, 3]));
        assert_eq!(h, make_path(3).unwrap());
    }
}
