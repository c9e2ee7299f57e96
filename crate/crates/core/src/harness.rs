//! Executable checks of the closed forms and reductions against the exact
//! solvers. Each check yields a [`VerificationReport`]; a mismatch names the
//! instance in the graph mini-language.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use crate::certify::{certify_period, replay_against_solver, DEFAULT_BOUND};
use crate::closed_forms::{
    claim_star1kn_grundy, csg124_family_formula, s1kl_small_formula, ClaimParams, ClosedForms,
    Family124,
};
use crate::error::{CsgError, Result};
use crate::graph::{self, make_subdivided_star, AppendSpec, Graph, VertexSet};
use crate::notation::GraphSpec;
use crate::periodicity::{appended_sequence, detect_period};
use crate::solver::{GraphSolver, GrundyValue, StarSolver};
use crate::star::SubdividedStar;
use crate::subtraction::SubtractionSet;

/// `𝒢_{I_4}(S(1^t, k))`, rows `k = 0..=8`, columns `t = 0..=10`.
pub const TABLE_S1TK_I4: [[u32; 11]; 9] = [
    [1, 2, 3, 2, 0, 1, 0, 1, 0, 1, 0],
    [2, 3, 2, 0, 1, 0, 1, 0, 1, 0, 1],
    [3, 4, 0, 1, 2, 3, 2, 3, 2, 3, 2],
    [4, 0, 1, 4, 3, 2, 3, 2, 3, 2, 3],
    [0, 1, 5, 3, 4, 5, 4, 5, 4, 5, 4],
    [1, 2, 3, 2, 0, 1, 0, 1, 0, 1, 0],
    [2, 3, 2, 0, 1, 0, 1, 0, 1, 0, 1],
    [3, 4, 0, 1, 2, 3, 2, 3, 2, 3, 2],
    [4, 0, 1, 4, 3, 2, 3, 2, 3, 2, 3],
];

/// Stars reachable from `S(3,3,3)` under `{1,2,4}` with their values, and
/// `S(2,2,3)`.
pub const S333_REACHABLE: [(&[usize], u32); 12] = [
    (&[3, 3, 3], 1),
    (&[3, 3, 2], 0),
    (&[3, 3, 1], 2),
    (&[3, 2, 2], 2),
    (&[3, 2, 1], 1),
    (&[3, 3], 1),
    (&[3, 1, 1], 0),
    (&[2, 2, 2], 1),
    (&[2, 2, 1], 0),
    (&[3, 2], 0),
    (&[2, 2], 2),
    (&[2, 2, 3], 2),
];

/// Small stars with `𝒢_{1,2,4} = |G| mod 3`.
pub const SMALL_ONES_124: [&[usize]; 8] = [
    &[1, 1, 1],
    &[1, 1, 2],
    &[1, 1, 3],
    &[1, 1, 1, 3],
    &[1, 2, 2],
    &[1, 2, 3],
    &[1, 1, 2, 2],
    &[1, 1, 2, 3],
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub instance: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub id: String,
    pub instances: usize,
    pub mismatches: Vec<Mismatch>,
    pub millis: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// `id pass|fail count millis`.
    pub fn line(&self) -> String {
        format!(
            "{} {} {} {}",
            self.id,
            if self.passed() { "pass" } else { "fail" },
            self.instances,
            self.millis
        )
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.line())?;
        for m in &self.mismatches {
            write!(
                f,
                "\n  {}: expected {}, got {}",
                m.instance, m.expected, m.got
            )?;
        }
        Ok(())
    }
}

struct Recorder {
    id: String,
    instances: usize,
    mismatches: Vec<Mismatch>,
    started: Instant,
}

impl Recorder {
    fn new(id: impl Into<String>) -> Self {
        Recorder {
            id: id.into(),
            instances: 0,
            mismatches: Vec::new(),
            started: Instant::now(),
        }
    }

    fn check<T: PartialEq + fmt::Display>(
        &mut self,
        instance: impl fmt::Display,
        expected: T,
        got: T,
    ) {
        self.instances += 1;
        if expected != got {
            self.mismatches.push(Mismatch {
                instance: instance.to_string(),
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }

    fn finish(self) -> VerificationReport {
        VerificationReport {
            id: self.id,
            instances: self.instances,
            mismatches: self.mismatches,
            millis: self.started.elapsed().as_millis(),
        }
    }
}

fn spec_of(star: &SubdividedStar) -> GraphSpec {
    GraphSpec::from_star(star)
}

/// Canonical stars with at most `max_branches` branches of length at most
/// `max_len` and at most `size_cap` vertices, the single vertex included.
pub fn stars_in_range(max_branches: usize, max_len: usize, size_cap: usize) -> Vec<SubdividedStar> {
    fn grow(
        prefix: &mut Vec<usize>,
        max_branches: usize,
        top: usize,
        size: usize,
        size_cap: usize,
        out: &mut Vec<SubdividedStar>,
    ) {
        out.push(SubdividedStar::new(prefix.iter().copied()));
        if prefix.len() == max_branches {
            return;
        }
        for len in 1..=top {
            if size + len > size_cap {
                break;
            }
            prefix.push(len);
            grow(prefix, max_branches, len, size + len, size_cap, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if size_cap >= 1 {
        grow(
            &mut Vec::new(),
            max_branches,
            max_len,
            1,
            size_cap,
            &mut out,
        );
    }
    out
}

/// One star per distinct way of adding `inc` to a branch, a new branch
/// included.
fn extensions(star: &SubdividedStar, inc: usize) -> Vec<SubdividedStar> {
    let b = star.branches();
    let mut out: Vec<SubdividedStar> = (0..=b.len()).map(|j| star.extend_branch(j, inc)).collect();
    out.sort();
    out.dedup();
    out
}

/// Lengths of legal removals from the whole of `g`, reduced mod `t`.
fn removal_residues(g: &Graph, l: &SubtractionSet, t: usize) -> BTreeSet<usize> {
    g.enumerate_removals(g.vertices(), l)
        .into_iter()
        .map(|s| s.len() % t)
        .collect()
}

/// Checks, on concrete graphs, the rule that lifts `𝒢(G) = α_{|G| mod T}`
/// from a family to probe graphs whose removal sizes cover every nonzero
/// residue mod `T`.
pub fn verify_lifting_hypothesis(
    family: &[Graph],
    t: usize,
    alphas: &[u32],
    probe: &[Graph],
    l: &SubtractionSet,
) -> Result<VerificationReport> {
    let mut sorted = alphas.to_vec();
    sorted.sort_unstable();
    if t == 0 || sorted != (0..t as u32).collect::<Vec<_>>() {
        return Err(CsgError::Precondition(format!(
            "alphas {alphas:?} must be a permutation of 0..{t}"
        )));
    }
    if let Some(g) = family.iter().chain(probe).find(|g| g.order() > 12) {
        return Err(CsgError::Precondition(format!(
            "graphs are limited to 12 vertices, got {}",
            g.order()
        )));
    }
    let mut r = Recorder::new("lifting");
    let expected = |g: &Graph| GrundyValue(alphas[g.order() % t]);
    for g in family {
        let got = GraphSolver::new(g.clone(), l.clone()).grundy_whole();
        r.check(
            format!("family {}", GraphSpec::Edges(g.edges())),
            expected(g),
            got,
        );
    }
    let want: BTreeSet<usize> = (1..t).collect();
    for g in probe {
        let name = GraphSpec::Edges(g.edges());
        let residues = removal_residues(g, l, t);
        r.check(
            format!("probe {name} removal residues"),
            format!("{want:?}"),
            format!("{residues:?}"),
        );
        let got = GraphSolver::new(g.clone(), l.clone()).grundy_whole();
        r.check(format!("probe {name}"), expected(g), got);
    }
    Ok(r.finish())
}

/// Path sequences: `k mod (N+1)` under `I_N` for `N <= n_max`, and the
/// `{2,4,7}` sequence.
pub fn verify_paths(n_max: usize, k_max: usize) -> VerificationReport {
    let mut r = Recorder::new("paths");
    for n in 1..=n_max {
        let l = SubtractionSet::interval(n).expect("valid interval");
        match appended_sequence(&Graph::empty(), None, &l, k_max) {
            Ok(seq) => {
                for (k, g) in seq.into_iter().enumerate() {
                    r.check(
                        format!("path:{k} L=I:{n}"),
                        GrundyValue((k % (n + 1)) as u32),
                        g,
                    );
                }
            }
            Err(e) => r.check(format!("I:{n}"), "a sequence".to_string(), e.to_string()),
        }
    }
    let l = SubtractionSet::new([2, 4, 7]).expect("valid set");
    let got = appended_sequence(&Graph::empty(), None, &l, k_max)
        .and_then(|seq| detect_period(&seq, l.max()))
        .map(|p| p.sequence.to_string())
        .unwrap_or_else(|e| e.to_string());
    r.check("path L=2,4,7", "00112203(102)".to_string(), got);
    r.finish()
}

/// All cells of the `S(1^t, k)` table under `I_4`, by brute force on one
/// realized graph and by the periodic reduction.
pub fn verify_table_s1tk_i4() -> VerificationReport {
    let mut r = Recorder::new("table-s1tk-i4");
    let l = SubtractionSet::interval(4).expect("valid interval");
    let cf = ClosedForms::new();
    // Leaves are 1..=10, the long branch 11..=18.
    let mut branches = vec![1; 10];
    branches.push(8);
    let g = make_subdivided_star(&branches).expect("19 vertices fit");
    let mut solver = GraphSolver::new(g, l);
    for (k, row) in TABLE_S1TK_I4.iter().enumerate() {
        for (t, &want) in row.iter().enumerate() {
            let live = VertexSet::from_vertices(std::iter::once(0).chain(1..=t).chain(11..11 + k));
            let name = spec_of(&SubdividedStar::simple(t).with_branch(k));
            r.check(
                format!("{name} brute"),
                GrundyValue(want),
                solver.grundy(live),
            );
            let reduced = cf
                .simple_star_appended_grundy(t, k, 4)
                .unwrap_or(GrundyValue(u32::MAX));
            r.check(format!("{name} reduced"), GrundyValue(want), reduced);
        }
    }
    r.finish()
}

/// `S(1,k,ℓ)` for `k, ℓ < N`: small-case formula against the solver.
pub fn verify_s1kl_small(n: usize) -> VerificationReport {
    let mut r = Recorder::new(format!("s1kl-small-n{n}"));
    let l = SubtractionSet::interval(n).expect("valid interval");
    let mut solver = StarSolver::new(l);
    for k in 0..n {
        for ell in 0..n {
            let star = SubdividedStar::new([1, k, ell]);
            let want = solver.grundy(&star);
            let got = s1kl_small_formula(k, ell, n).unwrap_or(GrundyValue(u32::MAX));
            r.check(format!("{} L=I:{n}", spec_of(&star)), want, got);
        }
    }
    r.finish()
}

/// The `S(1,k,ℓ)` evaluator against the solver over a box of `k, ℓ`, plus
/// the two `I_8` anchors when `n = 8`.
pub fn verify_s1kl_theorem(n: usize, k_max: usize, l_max: usize) -> VerificationReport {
    let mut r = Recorder::new(format!("s1kl-n{n}"));
    let l = SubtractionSet::interval(n).expect("valid interval");
    let cf = ClosedForms::new();
    let mut solver = StarSolver::new(l);
    for k in 0..=k_max {
        for ell in 0..=l_max {
            let star = SubdividedStar::new([1, k, ell]);
            let want = solver.grundy(&star);
            let got = cf.s1kl_grundy(k, ell, n).unwrap_or(GrundyValue(u32::MAX));
            r.check(format!("{} L=I:{n}", spec_of(&star)), want, got);
        }
    }
    if n == 8 {
        for (k, ell, v) in [(8, 2, 10), (8, 11, 6)] {
            let star = SubdividedStar::new([1, k, ell]);
            r.check(
                format!("{} anchor", spec_of(&star)),
                GrundyValue(v),
                solver.grundy(&star),
            );
        }
    }
    r.finish()
}

/// The `S(1,k,N)` column claim against the solver, every admissible `k`.
pub fn verify_claim_2n(n: usize) -> VerificationReport {
    let mut r = Recorder::new(format!("claim-column-n{n}"));
    let cf = ClosedForms::new();
    let l = SubtractionSet::interval(n).expect("valid interval");
    match ClaimParams::compute(n, &cf) {
        Ok(params) => {
            for k in (1..=2 * n).filter(|&k| k != n && k != n + 1) {
                let star = SubdividedStar::new([1, k, n]);
                let got = claim_star1kn_grundy(k, &params).unwrap_or(GrundyValue(u32::MAX));
                r.check(
                    format!("{} L=I:{n}", spec_of(&star)),
                    cf.grundy_star(&star, &l),
                    got,
                );
            }
        }
        Err(e) => r.check(format!("N={n}"), "parameters".to_string(), e.to_string()),
    }
    r.finish()
}

fn verify_branch_period(
    id: &str,
    l: SubtractionSet,
    inc: usize,
    max_branches: usize,
    max_len: usize,
    size_cap: usize,
    reducer: impl Fn(&ClosedForms, &SubdividedStar) -> GrundyValue,
) -> VerificationReport {
    let mut r = Recorder::new(id);
    let cf = ClosedForms::new();
    let mut solver = StarSolver::new(l.clone());
    for star in stars_in_range(max_branches, max_len, size_cap) {
        let base = solver.grundy(&star);
        for ext in extensions(&star, inc) {
            r.check(
                format!("{} vs {} L={}", spec_of(&star), spec_of(&ext), l),
                base,
                solver.grundy(&ext),
            );
        }
        r.check(
            format!("{} reduced L={}", spec_of(&star), l),
            base,
            reducer(&cf, &star),
        );
    }
    r.finish()
}

/// `CSG(1,2,3)`: adding 4 to any branch keeps the value.
pub fn verify_theorem_123(
    max_branches: usize,
    max_len: usize,
    size_cap: usize,
) -> VerificationReport {
    let l = SubtractionSet::interval(3).expect("valid interval");
    verify_branch_period(
        "branch-mod-4-i3",
        l,
        4,
        max_branches,
        max_len,
        size_cap,
        |cf, s| cf.csg123_star_grundy(s),
    )
}

/// `CSG(1,2,4)`: adding 3 to any branch keeps the value.
pub fn verify_theorem_124(
    max_branches: usize,
    max_len: usize,
    size_cap: usize,
) -> VerificationReport {
    let l = SubtractionSet::new([1, 2, 4]).expect("valid set");
    verify_branch_period(
        "branch-mod-3-124",
        l,
        3,
        max_branches,
        max_len,
        size_cap,
        |cf, s| cf.csg124_star_grundy(s),
    )
}

/// Fixed star values under `{1,2,4}`: the `S(3,3,3)` analysis and the small
/// stars.
pub fn verify_124_fixtures() -> VerificationReport {
    let mut r = Recorder::new("fixtures-124");
    let l = SubtractionSet::new([1, 2, 4]).expect("valid set");
    let mut solver = StarSolver::new(l);
    for (branches, v) in S333_REACHABLE {
        let star = SubdividedStar::new(branches.iter().copied());
        r.check(spec_of(&star), GrundyValue(v), solver.grundy(&star));
    }
    for branches in SMALL_ONES_124 {
        let star = SubdividedStar::new(branches.iter().copied());
        let want = GrundyValue((star.order() % 3) as u32);
        r.check(spec_of(&star), want, solver.grundy(&star));
    }
    for (branches, v) in [(&[1, 1, 1, 1], 0), (&[1, 1, 1, 2], 3)] {
        let star = SubdividedStar::new(branches.iter().copied());
        r.check(spec_of(&star), GrundyValue(v), solver.grundy(&star));
    }
    r.finish()
}

/// Each `{1,2,4}` family formula against the solver for `k <= k_max`.
pub fn verify_124_families(k_max: usize) -> VerificationReport {
    let mut r = Recorder::new("families-124");
    let l = SubtractionSet::new([1, 2, 4]).expect("valid set");
    let mut solver = StarSolver::new(l);
    for family in Family124::ALL {
        for k in 0..=k_max {
            let star = family.star(k);
            r.check(
                format!("{family} k={k} {}", spec_of(&star)),
                solver.grundy(&star),
                csg124_family_formula(family, k),
            );
        }
    }
    r.finish()
}

/// `(𝒢(S), 𝒢(S·u·(N+1)))` for `S = S(1^{N+2})` under `I_N ∪ {m}`.
pub fn plus_m_values(n: usize, m: usize) -> Result<(GrundyValue, GrundyValue)> {
    let l = SubtractionSet::interval_plus(n, m)?;
    let s = make_subdivided_star(&vec![1; n + 2])?;
    let big = AppendSpec::new(s, Some(0), n + 1)?.realize()?;
    let mut solver = GraphSolver::new(big, l);
    let small = solver.grundy(VertexSet::full(n + 3));
    Ok((small, solver.grundy_whole()))
}

/// With `M = 2N + 4` appending `N+1` vertices changes the value of the star
/// with `N+2` leaves; with `M = 2(N+1)` it does not.
pub fn verify_obs_plus_m(n: usize) -> VerificationReport {
    let mut r = Recorder::new(format!("plus-m-n{n}"));
    for (m, differ) in [(2 * n + 4, true), (2 * (n + 1), false)] {
        let name = format!(
            "star:1^{} vs append(star:1^{},u=0,k={}) L=I:{n}+{m}",
            n + 2,
            n + 2,
            n + 1
        );
        match plus_m_values(n, m) {
            Ok((a, b)) => {
                let got = if a != b {
                    "different values"
                } else {
                    "equal values"
                };
                let want = if differ {
                    "different values"
                } else {
                    "equal values"
                };
                r.check(format!("{name} ({a} vs {b})"), want, got);
            }
            Err(e) => r.check(name, "values".to_string(), e.to_string()),
        }
    }
    r.finish()
}

/// Certifies each family and replays the certificate against the solver.
pub fn verify_certificates(cases: &[(Graph, Option<usize>, SubtractionSet)]) -> VerificationReport {
    let mut r = Recorder::new("certificates");
    for (base, anchor, l) in cases {
        let name = match anchor {
            None => format!("path L={l}"),
            Some(u) => format!("{}@{u} L={l}", GraphSpec::Edges(base.edges())),
        };
        let outcome = certify_period(base, *anchor, l, DEFAULT_BOUND).and_then(|c| {
            let bad = replay_against_solver(&c)?;
            Ok((c.check(), bad))
        });
        let got = match outcome {
            Ok((true, None)) => "certified".to_string(),
            Ok((false, _)) => "certificate not periodic on replay".to_string(),
            Ok((true, Some(k))) => format!("replay differs at k={k}"),
            Err(e) => e.to_string(),
        };
        r.check(name, "certified".to_string(), got);
    }
    r.finish()
}

/// The certification cases of the default suite.
pub fn default_certificate_cases() -> Vec<(Graph, Option<usize>, SubtractionSet)> {
    let mut cases = Vec::new();
    for n in 1..=4 {
        let l = SubtractionSet::interval(n).expect("valid interval");
        cases.push((Graph::empty(), None, l.clone()));
        for t in 1..=4 {
            let s = make_subdivided_star(&vec![1; t]).expect("fits");
            cases.push((s, Some(0), l.clone()));
        }
    }
    let s11 = make_subdivided_star(&[1, 1]).expect("fits");
    cases.push((
        s11,
        Some(0),
        SubtractionSet::new([2, 4, 7]).expect("valid set"),
    ));
    cases
}

/// Graphs `S(1,1,k)` used as lifting probes.
pub fn s11k_graphs(ks: impl IntoIterator<Item = usize>) -> Vec<Graph> {
    ks.into_iter()
        .map(|k| make_subdivided_star(&[1, 1, k]).expect("fits"))
        .collect()
}

/// Paths `P_1 ..= P_max`.
pub fn paths(max: usize) -> Vec<Graph> {
    (1..=max)
        .map(|k| graph::make_path(k).expect("fits"))
        .collect()
}

pub type Check = fn() -> VerificationReport;

/// The default verification suite, by id.
pub fn default_suite() -> Vec<(&'static str, Check)> {
    vec![
        ("paths", || verify_paths(6, 60)),
        ("table-s1tk-i4", verify_table_s1tk_i4),
        ("s1kl-small", || {
            merge("s1kl-small", (3..=8).map(verify_s1kl_small))
        }),
        ("s1kl", || {
            merge(
                "s1kl",
                (3..=8).map(|n| verify_s1kl_theorem(n, 4 * (n + 1), 4 * (n + 1))),
            )
        }),
        ("claim-column", || {
            merge("claim-column", (3..=8).map(verify_claim_2n))
        }),
        ("branch-mod-4-i3", || verify_theorem_123(4, 7, 20)),
        ("branch-mod-3-124", || verify_theorem_124(4, 7, 20)),
        ("fixtures-124", verify_124_fixtures),
        ("families-124", || verify_124_families(30)),
        ("plus-m", || merge("plus-m", [2, 3].map(verify_obs_plus_m))),
        ("lifting", || {
            let i3 = SubtractionSet::interval(3).expect("valid interval");
            let l124 = SubtractionSet::new([1, 2, 4]).expect("valid set");
            let a =
                verify_lifting_hypothesis(&paths(10), 4, &[0, 1, 2, 3], &s11k_graphs(2..=7), &i3);
            let mut family124 = paths(10);
            family124.extend(s11k_graphs(0..=3));
            let b =
                verify_lifting_hypothesis(&family124, 3, &[0, 1, 2], &s11k_graphs(4..=9), &l124);
            merge(
                "lifting",
                [a, b].into_iter().map(|r| r.expect("valid alphas")),
            )
        }),
        ("certificates", || {
            verify_certificates(&default_certificate_cases())
        }),
    ]
}

/// Folds several reports into one under `id`.
pub fn merge(
    id: &str,
    reports: impl IntoIterator<Item = VerificationReport>,
) -> VerificationReport {
    let mut out = VerificationReport {
        id: id.to_string(),
        instances: 0,
        mismatches: Vec::new(),
        millis: 0,
    };
    for r in reports {
        out.instances += r.instances;
        out.millis += r.millis;
        out.mismatches.extend(r.mismatches);
    }
    out
}

/// Runs the selected checks on up to `jobs` threads, keeping suite order.
pub fn run_suite(checks: &[(&'static str, Check)], jobs: usize) -> Vec<VerificationReport> {
    let jobs = jobs.max(1);
    let mut results: Vec<Option<VerificationReport>> = vec![None; checks.len()];
    for (chunk_checks, chunk_out) in checks.chunks(jobs).zip(results.chunks_mut(jobs)) {
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunk_checks.iter().map(|(_, f)| scope.spawn(f)).collect();
            for (slot, h) in chunk_out.iter_mut().zip(handles) {
                *slot = Some(h.join().expect("check panicked"));
            }
        });
    }
    results.into_iter().flatten().collect()
}
