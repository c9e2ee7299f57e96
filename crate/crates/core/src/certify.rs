//! Certified periodicity of `f(k) = 𝒢_L(G·u·k)`.
//!
//! For `k >= max L` every option of `G·u·k` is one of
//!
//! * `G·u·(k-i)`, `i ∈ L` (a tip of the path removed),
//! * `G'·u·k`, `G' = G - S` for a removal `S` avoiding `u`,
//! * `P_j`, when `u` and all of `G` go together with part of the path.
//!
//! So once every `G'` family and the path sequence are certified periodic,
//! `f` is determined by its last `max L` values and the phase of `k` modulo
//! the common period. A repeated (window, phase) pair certifies a period.
//! Families are vertex sets `W ∋ u` of the base graph and are certified in
//! order of size.

use std::collections::hash_map::{Entry, HashMap};
use std::fmt;

use crate::error::{CsgError, Result};
use crate::graph::{AppendSpec, Graph, VertexSet, MAX_VERTICES};
use crate::periodicity::appended_sequence;
use crate::solver::{mex, GraphSolver, GrundyValue};
use crate::subtraction::SubtractionSet;

/// Default largest `k` scanned per family.
pub const DEFAULT_BOUND: usize = 5000;

/// A sequence proven periodic with `period` from index `start` on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedSequence {
    pub period: usize,
    pub start: usize,
    /// Exact values `f(0..seed.len())`, covering the recurrence's start and
    /// the window at `start`.
    pub seed: Vec<GrundyValue>,
    /// `f(start..start + period)`.
    pub cycle: Vec<GrundyValue>,
}

impl CertifiedSequence {
    pub fn value_at(&self, k: usize) -> GrundyValue {
        if k < self.start {
            self.seed[k]
        } else {
            self.cycle[(k - self.start) % self.period]
        }
    }

    /// Smallest period of the periodic part.
    pub fn minimal_period(&self) -> usize {
        let p = self.period;
        (1..=p)
            .find(|&d| p.is_multiple_of(d) && (d..p).all(|i| self.cycle[i] == self.cycle[i - d]))
            .unwrap_or(p)
    }
}

/// One family `W·u·k` and the families its type-2 options lead to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCertificate {
    pub members: VertexSet,
    /// Indices into [`PeriodCertificate::families`], all smaller than this
    /// family's own index.
    pub dependencies: Vec<usize>,
    pub sequence: CertifiedSequence,
}

/// Whether the subject's period matches the path's. Reported, never assumed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeriodObservation {
    pub minimal_period: usize,
    pub path_period: usize,
}

impl PeriodObservation {
    pub fn same_as_path(&self) -> bool {
        self.minimal_period == self.path_period
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodCertificate {
    pub subject: String,
    pub base: Graph,
    pub anchor: Option<usize>,
    pub l: SubtractionSet,
    pub path: CertifiedSequence,
    /// Build order; the subject is last. Empty for the bare path family.
    pub families: Vec<FamilyCertificate>,
}

impl PeriodCertificate {
    fn subject_sequence(&self) -> &CertifiedSequence {
        self.families.last().map_or(&self.path, |f| &f.sequence)
    }

    pub fn t_f(&self) -> usize {
        self.subject_sequence().period
    }

    pub fn k_start(&self) -> usize {
        self.subject_sequence().start
    }

    pub fn value_at(&self, k: usize) -> GrundyValue {
        self.subject_sequence().value_at(k)
    }

    pub fn observation(&self) -> PeriodObservation {
        PeriodObservation {
            minimal_period: self.subject_sequence().minimal_period(),
            path_period: self.path.minimal_period(),
        }
    }

    /// Recomputes `f(0..=upto)` from the seed by the mex recurrence, reading
    /// dependency values from their certificates.
    pub fn replay(&self, upto: usize) -> Vec<GrundyValue> {
        match self.families.last() {
            None => replay_path(&self.path.seed, &self.l, upto),
            Some(_) => replay_family(self, self.families.len() - 1, upto),
        }
    }

    /// Checks the certificate against itself: the replay is periodic from
    /// `k_start` over three periods.
    pub fn check(&self) -> bool {
        let (t, s) = (self.t_f(), self.k_start());
        let values = self.replay(s + 4 * t + self.l.max());
        (s..s + 3 * t + self.l.max()).all(|k| values[k] == values[k + t])
    }

    /// Line-oriented text form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let obs = self.observation();
        out.push_str(&format!("subject {}\n", self.subject));
        out.push_str(&format!("L {}\n", self.l));
        out.push_str(&format!("T_f {}\n", self.t_f()));
        out.push_str(&format!("k_start {}\n", self.k_start()));
        out.push_str(&format!("window {}\n", values_text(&self.window())));
        out.push_str(&format!(
            "path T={} start={}\n",
            self.path.period, self.path.start
        ));
        if let Some((_, deps)) = self.families.split_last() {
            for (i, f) in deps.iter().enumerate() {
                out.push_str(&format!(
                    "dep {} W={:?} T={} start={} uses={:?}\n",
                    i, f.members, f.sequence.period, f.sequence.start, f.dependencies
                ));
            }
        }
        out.push_str(&format!(
            "observation minimal_period={} path_period={} same={}\n",
            obs.minimal_period,
            obs.path_period,
            obs.same_as_path()
        ));
        out
    }

    /// `f(k_start..k_start + max L)`.
    pub fn window(&self) -> Vec<GrundyValue> {
        let s = self.k_start();
        (s..s + self.l.max()).map(|k| self.value_at(k)).collect()
    }
}

impl fmt::Display for PeriodCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn values_text(v: &[GrundyValue]) -> String {
    v.iter()
        .map(|g| g.0.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn replay_path(seed: &[GrundyValue], l: &SubtractionSet, upto: usize) -> Vec<GrundyValue> {
    let mut v: Vec<GrundyValue> = seed.iter().copied().take(upto + 1).collect();
    while v.len() <= upto {
        let k = v.len();
        let g = mex(l.iter().filter(|&i| i <= k).map(|i| v[k - i].0));
        v.push(GrundyValue(g));
    }
    v
}

/// Options of `W·u·k` for `k >= max L`, excluding the tip moves.
fn side_options(
    path: &CertifiedSequence,
    families: &[FamilyCertificate],
    deps: &[usize],
    w_len: usize,
    l: &SubtractionSet,
    k: usize,
) -> Vec<u32> {
    let from_deps = deps.iter().map(|&d| families[d].sequence.value_at(k).0);
    let from_path = l
        .iter()
        .filter(|&i| i >= w_len)
        .map(|i| path.value_at(k + w_len - i).0);
    from_deps.chain(from_path).collect()
}

fn replay_family(cert: &PeriodCertificate, idx: usize, upto: usize) -> Vec<GrundyValue> {
    let fam = &cert.families[idx];
    let w_len = fam.members.len();
    let mut v: Vec<GrundyValue> = fam.sequence.seed.iter().copied().take(upto + 1).collect();
    while v.len() <= upto {
        let k = v.len();
        let tips = cert.l.iter().map(|i| v[k - i].0);
        let side = side_options(
            &cert.path,
            &cert.families,
            &fam.dependencies,
            w_len,
            &cert.l,
            k,
        );
        v.push(GrundyValue(mex(tips.chain(side))));
    }
    v
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Scans `values` (extended on demand by `next`) for a repeated
/// (window, phase) pair at positions `>= min_start`, then lowers the start
/// as far as the computed values allow.
fn find_cycle(
    mut values: Vec<GrundyValue>,
    w: usize,
    phase_mod: usize,
    min_start: usize,
    bound: usize,
    mut next: impl FnMut(&[GrundyValue]) -> GrundyValue,
) -> Result<(usize, usize, Vec<GrundyValue>)> {
    let mut seen: HashMap<(Vec<GrundyValue>, usize), usize> = HashMap::new();
    let mut s = min_start;
    loop {
        if s + w > bound {
            return Err(CsgError::SearchBound { bound });
        }
        while values.len() < s + w {
            let g = next(&values);
            values.push(g);
        }
        let key = (values[s..s + w].to_vec(), s % phase_mod);
        if let Some(&s1) = seen.get(&key) {
            let period = s - s1;
            let mut start = s1;
            while start > 0 && values[start - 1] == values[start - 1 + period] {
                start -= 1;
            }
            return Ok((period, start, values));
        }
        seen.insert(key, s);
        s += 1;
    }
}

fn certified(
    values: &[GrundyValue],
    period: usize,
    start: usize,
    seed_len: usize,
) -> CertifiedSequence {
    CertifiedSequence {
        period,
        start,
        seed: values[..seed_len].to_vec(),
        cycle: values[start..start + period].to_vec(),
    }
}

/// Certificate for the path sequence `𝒢_L(P_k)`.
pub fn certify_path(l: &SubtractionSet, bound: usize) -> Result<CertifiedSequence> {
    let w = l.max();
    let (period, start, values) = find_cycle(Vec::new(), w, 1, 0, bound, |v| {
        let k = v.len();
        GrundyValue(mex(l.iter().filter(|&i| i <= k).map(|i| v[k - i].0)))
    })?;
    Ok(certified(&values, period, start, start + w))
}

/// Certifies `f(k) = 𝒢_L(G·u·k)`. `anchor = None` (empty base) certifies the
/// path sequence itself.
pub fn certify_period(
    base: &Graph,
    anchor: Option<usize>,
    l: &SubtractionSet,
    bound: usize,
) -> Result<PeriodCertificate> {
    certify_labeled(base, anchor, l, bound, None)
}

/// As [`certify_period`], with `subject` as the certificate's label.
pub fn certify_labeled(
    base: &Graph,
    anchor: Option<usize>,
    l: &SubtractionSet,
    bound: usize,
    subject: Option<String>,
) -> Result<PeriodCertificate> {
    AppendSpec::new(base.clone(), anchor, 0)?;
    let w = l.max();
    let path = certify_path(l, bound)?;
    let subject = subject.unwrap_or_else(|| match anchor {
        None => "path".to_string(),
        Some(u) => format!("{}@{u}", crate::notation::GraphSpec::Edges(base.edges())),
    });
    let Some(u) = anchor else {
        return Ok(PeriodCertificate {
            subject,
            base: base.clone(),
            anchor,
            l: l.clone(),
            path,
            families: Vec::new(),
        });
    };

    let n = base.order();
    if n + w > MAX_VERTICES {
        return Err(CsgError::Capacity {
            needed: n + w,
            max: MAX_VERTICES,
        });
    }

    // Every family reachable from the whole base by removals sparing u.
    let root = base.vertices();
    let mut members = vec![root];
    let mut index: HashMap<VertexSet, usize> = HashMap::from([(root, 0)]);
    let mut raw_deps: Vec<Vec<VertexSet>> = Vec::new();
    let mut i = 0;
    while i < members.len() {
        let wset = members[i];
        let mut deps: Vec<VertexSet> = base
            .enumerate_removals(wset, l)
            .into_iter()
            .filter(|s| !s.contains(u))
            .map(|s| wset.difference(s))
            .collect();
        deps.sort();
        deps.dedup();
        for &d in &deps {
            if let Entry::Vacant(e) = index.entry(d) {
                e.insert(members.len());
                members.push(d);
            }
        }
        raw_deps.push(deps);
        i += 1;
    }
    let mut order: Vec<usize> = (0..members.len()).collect();
    order.sort_by_key(|&i| (members[i].len(), members[i].bits()));
    let mut position = vec![0; members.len()];
    for (pos, &i) in order.iter().enumerate() {
        position[i] = pos;
    }

    // One realized graph answers every k < max L.
    let realized = AppendSpec::new(base.clone(), Some(u), w - 1)?.realize()?;
    let mut solver = GraphSolver::new(realized, l.clone());

    let mut families: Vec<FamilyCertificate> = Vec::with_capacity(members.len());
    for &i in &order {
        let wset = members[i];
        let w_len = wset.len();
        let mut dependencies: Vec<usize> = raw_deps[i].iter().map(|d| position[index[d]]).collect();
        dependencies.sort_unstable();
        let phase_mod = dependencies
            .iter()
            .map(|&d| families[d].sequence.period)
            .fold(path.period, lcm);
        let min_start = dependencies
            .iter()
            .map(|&d| families[d].sequence.start)
            .fold(path.start.max(w), usize::max);
        let seed: Vec<GrundyValue> = (0..w)
            .map(|k| {
                solver.grundy(wset.union(VertexSet::full(n + k).difference(VertexSet::full(n))))
            })
            .collect();
        let (period, start, values) = find_cycle(seed, w, phase_mod, min_start, bound, |v| {
            let k = v.len();
            let tips = l.iter().map(|i| v[k - i].0);
            let side = side_options(&path, &families, &dependencies, w_len, l, k);
            GrundyValue(mex(tips.chain(side)))
        })?;
        let seed_len = (start + w).max(w);
        families.push(FamilyCertificate {
            members: wset,
            dependencies,
            sequence: certified(&values, period, start, seed_len),
        });
    }

    Ok(PeriodCertificate {
        subject,
        base: base.clone(),
        anchor,
        l: l.clone(),
        path,
        families,
    })
}

/// Compares the certificate's replay with direct solving for every `k` up
/// to three periods past `k_start`. Returns the first disagreeing index.
pub fn replay_against_solver(cert: &PeriodCertificate) -> Result<Option<usize>> {
    let upto = cert.k_start() + 3 * cert.t_f() + cert.l.max();
    let replayed = cert.replay(upto);
    let direct = appended_sequence(&cert.base, cert.anchor, &cert.l, upto)?;
    Ok((0..=upto).find(|&k| replayed[k] != direct[k]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_path, make_subdivided_star};

    #[test]
    fn path_certificates() {
        for n in 1..=6 {
            let l = SubtractionSet::interval(n).unwrap();
            let c = certify_path(&l, 1000).unwrap();
            assert_eq!((c.period, c.start), (n + 1, 0));
        }
        let l = SubtractionSet::new([2, 4, 7]).unwrap();
        let c = certify_path(&l, 1000).unwrap();
        assert_eq!(c.minimal_period(), 3);
        assert_eq!(c.start, 8);
    }

    #[test]
    fn single_vertex_base() {
        let l = SubtractionSet::interval(3).unwrap();
        let c = certify_period(&make_path(1).unwrap(), Some(0), &l, 1000).unwrap();
        assert_eq!((c.t_f(), c.k_start()), (4, 0));
        assert!(c.check());
        assert_eq!(replay_against_solver(&c).unwrap(), None);
    }

    #[test]
    fn simple_star_certificate() {
        let l = SubtractionSet::interval(4).unwrap();
        let s = make_subdivided_star(&[1, 1, 1]).unwrap();
        let c = certify_period(&s, Some(0), &l, 1000).unwrap();
        assert_eq!(5 % c.t_f(), 0);
        assert_eq!(c.families.len(), 8);
        assert_eq!(replay_against_solver(&c).unwrap(), None);
        assert!(c.to_text().contains("T_f 5"));
    }

    #[test]
    fn bound_is_reported() {
        let l = SubtractionSet::new([2, 4, 7]).unwrap();
        assert_eq!(certify_path(&l, 5), Err(CsgError::SearchBound { bound: 5 }));
    }
}
