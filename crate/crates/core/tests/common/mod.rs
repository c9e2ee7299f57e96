//! Reference implementations shared by the integration tests. They use
//! plain adjacency lists and subset scans, nothing from the library's
//! solvers.
#![allow(dead_code)]

use std::collections::HashMap;

use csg::{Graph, SubtractionSet};

pub struct Brute {
    pub adj: Vec<Vec<usize>>,
    pub sizes: Vec<usize>,
    memo: HashMap<u64, u32>,
}

impl Brute {
    pub fn new(g: &Graph, l: &SubtractionSet) -> Self {
        let mut adj = vec![Vec::new(); g.order()];
        for (a, b) in g.edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
        Brute {
            adj,
            sizes: l.values().to_vec(),
            memo: HashMap::new(),
        }
    }

    pub fn connected(&self, set: u64) -> bool {
        if set == 0 {
            return true;
        }
        let start = set.trailing_zeros() as usize;
        let mut seen = 1u64 << start;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if set >> w & 1 == 1 && seen >> w & 1 == 0 {
                    seen |= 1 << w;
                    stack.push(w);
                }
            }
        }
        seen == set
    }

    /// Every subset of `live` is inspected.
    pub fn removals(&self, live: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut sub = live;
        while sub != 0 {
            let size = sub.count_ones() as usize;
            if self.sizes.contains(&size) && self.connected(sub) && self.connected(live & !sub) {
                out.push(sub);
            }
            sub = (sub - 1) & live;
        }
        out.sort_unstable();
        out
    }

    pub fn grundy(&mut self, live: u64) -> u32 {
        if let Some(&v) = self.memo.get(&live) {
            return v;
        }
        let opts: Vec<u32> = self
            .removals(live)
            .into_iter()
            .map(|s| self.grundy(live & !s))
            .collect();
        let v = (0..).find(|x| !opts.contains(x)).unwrap();
        self.memo.insert(live, v);
        v
    }

    pub fn whole(&mut self) -> u32 {
        let n = self.adj.len();
        self.grundy(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }
}

/// Value of the sum `G + H` by searching pairs of positions directly.
pub fn brute_sum(g: &Graph, h: &Graph, l: &SubtractionSet) -> u32 {
    fn go(a: &Brute, b: &Brute, x: u64, y: u64, memo: &mut HashMap<(u64, u64), u32>) -> u32 {
        if let Some(&v) = memo.get(&(x, y)) {
            return v;
        }
        let mut opts = Vec::new();
        for s in a.removals(x) {
            opts.push(go(a, b, x & !s, y, memo));
        }
        for s in b.removals(y) {
            opts.push(go(a, b, x, y & !s, memo));
        }
        let v = (0..).find(|v| !opts.contains(v)).unwrap();
        memo.insert((x, y), v);
        v
    }
    let (a, b) = (Brute::new(g, l), Brute::new(h, l));
    go(
        &a,
        &b,
        (1u64 << g.order()) - 1,
        (1u64 << h.order()) - 1,
        &mut HashMap::new(),
    )
}

/// A connected graph: a random tree on `n` vertices plus the listed extra
/// edges where they are new.
pub fn graph_from(n: usize, parents: &[usize], extra: &[(usize, usize)]) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (parents[v - 1] % v, v)).collect();
    for &(a, b) in extra {
        let (a, b) = (a % n, b % n);
        if a != b
            && !edges.contains(&(a.min(b), a.max(b)))
            && !edges.contains(&(a.max(b), a.min(b)))
        {
            edges.push((a.min(b), a.max(b)));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// `mex` straight from the definition.
pub fn mex_def(values: &[u32]) -> u32 {
    (0..).find(|v| !values.contains(v)).unwrap()
}

/// Path sequence by the heap recurrence.
pub fn heap_values(l: &[usize], k_max: usize) -> Vec<u32> {
    let mut v: Vec<u32> = Vec::new();
    for k in 0..=k_max {
        let opts: Vec<u32> = l.iter().filter(|&&i| i <= k).map(|&i| v[k - i]).collect();
        v.push(mex_def(&opts));
    }
    v
}
