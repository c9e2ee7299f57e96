//! Exact Grundy values by memoized game-tree search.
//!
//! Two searches share the same shape: [`GraphSolver`] works on vertex
//! subsets of one parent graph, [`StarSolver`] on canonical subdivided stars
//! (isomorphic positions merged). Both walk an explicit stack so long paths do
//! not exhaust the call stack.

use std::collections::HashMap;
use std::fmt;
use std::ops::BitXor;

use crate::graph::{Graph, VertexSet};
use crate::star::{star_removals, SubdividedStar};
use crate::subtraction::SubtractionSet;

/// A nimber.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrundyValue(pub u32);

impl GrundyValue {
    pub const ZERO: GrundyValue = GrundyValue(0);

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    pub fn outcome(self) -> Outcome {
        if self.0 == 0 {
            Outcome::P
        } else {
            Outcome::N
        }
    }
}

impl BitXor for GrundyValue {
    type Output = GrundyValue;

    fn bitxor(self, rhs: Self) -> Self {
        GrundyValue(self.0 ^ rhs.0)
    }
}

impl From<u32> for GrundyValue {
    fn from(v: u32) -> Self {
        GrundyValue(v)
    }
}

impl fmt::Display for GrundyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for GrundyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "*{}", self.0)
    }
}

/// `P`: the player to move loses. `N`: the player to move wins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    P,
    N,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::P => "P",
            Outcome::N => "N",
        })
    }
}

/// Minimum excluded value.
pub fn mex<I: IntoIterator<Item = u32>>(values: I) -> u32 {
    let mut low = 0u128;
    let mut high: Vec<u32> = Vec::new();
    for v in values {
        if v < 128 {
            low |= 1 << v;
        } else {
            high.push(v);
        }
    }
    let m = (!low).trailing_zeros();
    if m < 128 {
        return m;
    }
    high.sort_unstable();
    high.dedup();
    let mut m = 128;
    for v in high {
        if v == m {
            m += 1;
        } else if v > m {
            break;
        }
    }
    m
}

/// XOR of the values: the Grundy value of a sum of games.
pub fn nim_sum<I: IntoIterator<Item = GrundyValue>>(values: I) -> GrundyValue {
    values.into_iter().fold(GrundyValue::ZERO, |a, b| a ^ b)
}

/// A position: surviving vertices of a parent graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Position {
    pub graph: Graph,
    pub live: VertexSet,
}

impl Position {
    pub fn new(graph: Graph, live: VertexSet) -> Self {
        debug_assert!(live.is_subset(graph.vertices()));
        Position { graph, live }
    }

    /// The whole graph.
    pub fn whole(graph: Graph) -> Self {
        let live = graph.vertices();
        Position { graph, live }
    }

    pub fn is_valid(&self) -> bool {
        self.live.is_subset(self.graph.vertices()) && self.graph.is_connected(self.live)
    }
}

struct Frame<K, O = K> {
    key: K,
    options: Vec<O>,
    next: usize,
}

/// Memoized Grundy search over subsets of one parent graph.
#[derive(Clone, Debug)]
pub struct GraphSolver {
    graph: Graph,
    l: SubtractionSet,
    memo: HashMap<u64, u32>,
}

impl GraphSolver {
    pub fn new(graph: Graph, l: SubtractionSet) -> Self {
        GraphSolver {
            graph,
            l,
            memo: HashMap::new(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn subtraction_set(&self) -> &SubtractionSet {
        &self.l
    }

    /// The positions reachable in one move from `live`.
    pub fn options(&self, live: VertexSet) -> Vec<VertexSet> {
        self.graph
            .enumerate_removals(live, &self.l)
            .into_iter()
            .map(|s| live.difference(s))
            .collect()
    }

    pub fn grundy_whole(&mut self) -> GrundyValue {
        self.grundy(self.graph.vertices())
    }

    /// Grundy value of the position `live`, which must induce a connected
    /// subgraph (or be empty).
    pub fn grundy(&mut self, live: VertexSet) -> GrundyValue {
        GrundyValue(solve_grundy_graph(
            &self.graph,
            &self.l,
            &mut self.memo,
            live,
        ))
    }

    pub fn outcome(&mut self, live: VertexSet) -> Outcome {
        self.grundy(live).outcome()
    }

    /// Every solved position and its value.
    pub fn memo_entries(&self) -> impl Iterator<Item = (VertexSet, GrundyValue)> + '_ {
        self.memo
            .iter()
            .map(|(&k, &v)| (VertexSet(k), GrundyValue(v)))
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}

fn solve_grundy_graph(
    graph: &Graph,
    l: &SubtractionSet,
    memo: &mut HashMap<u64, u32>,
    root: VertexSet,
) -> u32 {
    if root.is_empty() {
        return 0;
    }
    if let Some(&v) = memo.get(&root.bits()) {
        return v;
    }
    let options = |live: VertexSet| -> Vec<VertexSet> {
        graph
            .enumerate_removals(live, l)
            .into_iter()
            .map(|s| live.difference(s))
            .collect()
    };
    let mut stack = vec![Frame {
        key: root,
        options: options(root),
        next: 0,
    }];
    while let Some(top) = stack.last_mut() {
        while let Some(&o) = top.options.get(top.next) {
            if o.is_empty() || memo.contains_key(&o.bits()) {
                top.next += 1;
            } else {
                break;
            }
        }
        match top.options.get(top.next) {
            Some(&child) => {
                let frame = Frame {
                    key: child,
                    options: options(child),
                    next: 0,
                };
                stack.push(frame);
            }
            None => {
                let g = mex(top
                    .options
                    .iter()
                    .map(|o| if o.is_empty() { 0 } else { memo[&o.bits()] }));
                debug_assert!(g as usize <= top.key.len());
                memo.insert(top.key.bits(), g);
                stack.pop();
            }
        }
    }
    memo[&root.bits()]
}

/// Memoized Grundy search over subdivided stars; isomorphic positions share
/// one entry.
#[derive(Clone, Debug)]
pub struct StarSolver {
    l: SubtractionSet,
    memo: HashMap<SubdividedStar, u32>,
}

impl StarSolver {
    pub fn new(l: SubtractionSet) -> Self {
        StarSolver {
            l,
            memo: HashMap::new(),
        }
    }

    pub fn subtraction_set(&self) -> &SubtractionSet {
        &self.l
    }

    /// Distinct option shapes of `star` (`None` for the empty graph).
    pub fn option_shapes(&self, star: &SubdividedStar) -> Vec<Option<SubdividedStar>> {
        let mut shapes: Vec<_> = star_removals(star, &self.l)
            .into_iter()
            .map(|m| m.result.map(|s| s.shape_key()))
            .collect();
        shapes.sort();
        shapes.dedup();
        shapes
    }

    pub fn grundy(&mut self, star: &SubdividedStar) -> GrundyValue {
        let root = star.shape_key();
        if let Some(&v) = self.memo.get(&root) {
            return GrundyValue(v);
        }
        let mut stack = vec![Frame {
            options: self.option_shapes(&root),
            key: root.clone(),
            next: 0,
        }];
        while let Some(top) = stack.last_mut() {
            while let Some(o) = top.options.get(top.next) {
                match o {
                    Some(s) if !self.memo.contains_key(s) => break,
                    _ => top.next += 1,
                }
            }
            match top.options.get(top.next) {
                Some(Some(child)) => {
                    let child = child.clone();
                    let options = self.option_shapes(&child);
                    stack.push(Frame {
                        key: child,
                        options,
                        next: 0,
                    });
                }
                _ => {
                    let memo = &self.memo;
                    let g = mex(top
                        .options
                        .iter()
                        .map(|o| o.as_ref().map_or(0, |s| memo[s])));
                    debug_assert!(g as usize <= top.key.order());
                    let key = top.key.clone();
                    self.memo.insert(key, g);
                    stack.pop();
                }
            }
        }
        GrundyValue(self.memo[&root])
    }

    /// Grundy value of a position that may be empty.
    pub fn grundy_opt(&mut self, star: Option<&SubdividedStar>) -> GrundyValue {
        star.map_or(GrundyValue::ZERO, |s| self.grundy(s))
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}

/// Transposition table keyed by parent graph, subtraction set and live set.
#[derive(Default, Debug)]
pub struct TranspositionTable {
    graphs: HashMap<(Graph, SubtractionSet), HashMap<u64, u32>>,
    stars: HashMap<SubtractionSet, StarSolver>,
}

impl TranspositionTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.graphs.values().map(HashMap::len).sum::<usize>()
            + self.stars.values().map(StarSolver::memo_len).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn star_solver(&mut self, l: &SubtractionSet) -> &mut StarSolver {
        self.stars
            .entry(l.clone())
            .or_insert_with(|| StarSolver::new(l.clone()))
    }
}

/// Grundy value of `pos` under CSG(L).
pub fn grundy(pos: &Position, l: &SubtractionSet, memo: &mut TranspositionTable) -> GrundyValue {
    if pos.live.is_empty() {
        return GrundyValue::ZERO;
    }
    let table = memo
        .graphs
        .entry((pos.graph.clone(), l.clone()))
        .or_default();
    GrundyValue(solve_grundy_graph(&pos.graph, l, table, pos.live))
}

/// Grundy value of a subdivided star, through the star-shaped fast path.
pub fn grundy_star(
    star: &SubdividedStar,
    l: &SubtractionSet,
    memo: &mut TranspositionTable,
) -> GrundyValue {
    memo.star_solver(l).grundy(star)
}

pub fn outcome(pos: &Position, l: &SubtractionSet, memo: &mut TranspositionTable) -> Outcome {
    grundy(pos, l, memo).outcome()
}

/// Grundy value of a sum of independent positions.
pub fn grundy_sum(
    parts: &[Position],
    l: &SubtractionSet,
    memo: &mut TranspositionTable,
) -> GrundyValue {
    nim_sum(parts.iter().map(|p| grundy(p, l, memo)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_path, make_subdivided_star};

    fn i(n: usize) -> SubtractionSet {
        SubtractionSet::interval(n).unwrap()
    }

    fn l124() -> SubtractionSet {
        SubtractionSet::new([1, 2, 4]).unwrap()
    }

    #[test]
    fn mex_examples() {
        assert_eq!(mex([]), 0);
        assert_eq!(mex([0, 1, 2]), 3);
        assert_eq!(mex([1, 1, 1, 3, 1]), 0);
        assert_eq!(mex([0, 1, 2, 3, 0, 1]), 4);
        assert_eq!(mex((0..200).filter(|&v| v != 150)), 150);
        assert_eq!(mex(0..130), 130);
    }

    #[test]
    fn nim_sum_examples() {
        assert_eq!(nim_sum([GrundyValue(5), GrundyValue(6)]), GrundyValue(3));
        assert_eq!(nim_sum([GrundyValue(7), GrundyValue(7)]), GrundyValue(0));
        assert_eq!(nim_sum([GrundyValue(0)]), GrundyValue(0));
        assert_eq!(nim_sum([]), GrundyValue(0));
    }

    #[test]
    fn grundy_examples() {
        let mut tt = TranspositionTable::new();
        let p4 = Position::whole(make_path(4).unwrap());
        assert_eq!(grundy(&p4, &i(3), &mut tt), GrundyValue(0));

        let s = Position::whole(make_subdivided_star(&[1, 1, 1, 2]).unwrap());
        assert_eq!(grundy(&s, &l124(), &mut tt), GrundyValue(3));

        let fig1 = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (1, 4), (4, 6), (6, 5), (5, 1)])
            .unwrap();
        let g = grundy(&Position::whole(fig1), &l124(), &mut tt);
        assert_ne!(g, GrundyValue(0));
        assert!(!tt.is_empty());
    }

    #[test]
    fn star_examples() {
        let mut tt = TranspositionTable::new();
        assert_eq!(
            grundy_star(&SubdividedStar::new([2, 2, 3]), &l124(), &mut tt),
            GrundyValue(2)
        );
        assert_eq!(
            grundy_star(&SubdividedStar::single_vertex(), &i(1), &mut tt),
            GrundyValue(1)
        );
        assert_eq!(
            grundy_star(&SubdividedStar::new([1, 8, 11]), &i(8), &mut tt),
            GrundyValue(6)
        );
        assert_eq!(
            grundy_star(&SubdividedStar::new([1, 8, 2]), &i(8), &mut tt),
            GrundyValue(10)
        );
    }

    #[test]
    fn outcome_examples() {
        let mut tt = TranspositionTable::new();
        let p4 = Position::whole(make_path(4).unwrap());
        assert_eq!(outcome(&p4, &i(3), &mut tt), Outcome::P);
        let empty = Position::whole(Graph::empty());
        assert_eq!(outcome(&empty, &i(2), &mut tt), Outcome::P);
    }

    #[test]
    fn sum_examples() {
        let mut tt = TranspositionTable::new();
        let p = |k| Position::whole(make_path(k).unwrap());
        assert_eq!(grundy_sum(&[p(1), p(1)], &i(3), &mut tt), GrundyValue(0));
        assert_eq!(grundy_sum(&[p(5), p(9)], &i(3), &mut tt), GrundyValue(0));
        let s112 = Position::whole(make_subdivided_star(&[1, 1, 2]).unwrap());
        assert_eq!(grundy_sum(&[s112, p(1)], &i(3), &mut tt), GrundyValue(0));
    }

    #[test]
    fn deep_path_does_not_overflow() {
        let mut solver = GraphSolver::new(make_path(64).unwrap(), i(3));
        assert_eq!(solver.grundy_whole(), GrundyValue(0));
    }
}
