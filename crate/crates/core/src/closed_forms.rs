//! Closed forms and reductions for paths and subdivided stars.
//!
//! Stateless formulas are free functions. Evaluators that need solver values
//! for a bounded base table live on [`ClosedForms`], which caches those
//! tables and is safe to share between threads.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use crate::error::{CsgError, Result};
use crate::graph::{check_anchor, Graph};
use crate::solver::{mex, GrundyValue, StarSolver};
use crate::star::SubdividedStar;
use crate::subtraction::SubtractionSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartialValue {
    Exact(GrundyValue),
    AtLeast(GrundyValue),
    Unknown,
}

impl PartialValue {
    /// Whether `v` is compatible with this partial knowledge.
    pub fn admits(self, v: GrundyValue) -> bool {
        match self {
            PartialValue::Exact(e) => e == v,
            PartialValue::AtLeast(lo) => v >= lo,
            PartialValue::Unknown => true,
        }
    }

    pub fn exact(self) -> Option<GrundyValue> {
        match self {
            PartialValue::Exact(v) => Some(v),
            _ => None,
        }
    }
}

fn gv(v: usize) -> GrundyValue {
    GrundyValue(v as u32)
}

/// Grundy values of the subtraction game on a heap, `k = 0..=k_max`. This is
/// CSG(L) on paths: a legal removal from a path takes a segment at one end.
pub fn subtraction_sequence(l: &SubtractionSet, k_max: usize) -> Vec<GrundyValue> {
    let mut g: Vec<u32> = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let v = mex(l.iter().take_while(|&i| i <= k).map(|i| g[k - i]));
        g.push(v);
    }
    g.into_iter().map(GrundyValue).collect()
}

/// `𝒢_L(P_k)`.
pub fn path_grundy(k: usize, l: &SubtractionSet) -> GrundyValue {
    if let Some(n) = l.as_interval() {
        return gv(k % (n + 1));
    }
    if l.values() == [1, 2, 4] {
        return gv(k % 3);
    }
    subtraction_sequence(l, k)[k]
}

fn size_table(size: usize, n: usize) -> PartialValue {
    match size {
        0 | 1 => PartialValue::Exact(gv(size)),
        s if s <= n => PartialValue::AtLeast(GrundyValue(2)),
        s if s == n + 1 => PartialValue::Exact(GrundyValue(0)),
        s if s == n + 2 => PartialValue::Exact(GrundyValue(1)),
        _ => PartialValue::Unknown,
    }
}

/// What the order of `g` alone says about `𝒢_{I_N}(g)`.
pub fn size_based_value(g: &Graph, n: usize) -> PartialValue {
    size_table(g.order(), n)
}

/// What the order of `g` alone says about `𝒢_{I_N}(G·u·(N+1))`.
pub fn appended_size_based_value(g: &Graph, u: Option<usize>, n: usize) -> Result<PartialValue> {
    check_anchor(g, u)?;
    Ok(size_table(g.order(), n))
}

fn require_n3(n: usize) -> Result<()> {
    if n < 3 {
        Err(CsgError::Domain(format!(
            "N = {n}; this formula needs N >= 3"
        )))
    } else {
        Ok(())
    }
}

/// `𝒢_{I_N}(S(1^t))` for `t >= 1`, `N >= 3`.
pub fn simple_star_grundy(t: usize, n: usize) -> Result<GrundyValue> {
    require_n3(n)?;
    if t == 0 {
        return Err(CsgError::Domain("the simple star needs t >= 1".into()));
    }
    Ok(GrundyValue(match t {
        t if t < n && t % 2 == 1 => 2,
        t if t < n => 3,
        t => ((t - n) % 2) as u32,
    }))
}

/// `𝒢_{I_N}(S(1,k,ℓ))` for `k, ℓ < N`.
pub fn s1kl_small_formula(k: usize, l: usize, n: usize) -> Result<GrundyValue> {
    require_n3(n)?;
    if k >= n || l >= n {
        return Err(CsgError::Domain(format!(
            "k = {k}, l = {l} must both be below N = {n}"
        )));
    }
    let small = k + l + 2 <= n;
    Ok(gv(if small && k % 2 == 1 && l % 2 == 1 {
        k + l
    } else if small && k == l && k != 0 && k.is_multiple_of(2) {
        k + 1
    } else {
        (k + l + 2) % (n + 1)
    }))
}

/// Values 0 and 1 of `S(1,k,ℓ)` under `I_N` are fixed by its order mod `N+1`.
pub fn s1kl_residue01(k: usize, l: usize, n: usize) -> PartialValue {
    match (k + l + 2) % (n + 1) {
        0 => PartialValue::Exact(GrundyValue(0)),
        1 => PartialValue::Exact(GrundyValue(1)),
        _ => PartialValue::AtLeast(GrundyValue(2)),
    }
}

/// Stars with a periodic closed form under `{1,2,4}`; the last branch `k`
/// varies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family124 {
    S11k,
    S111k,
    S12k,
    S112k,
    S22k,
    S122k,
    S1111k,
}

impl Family124 {
    pub const ALL: [Family124; 7] = [
        Family124::S11k,
        Family124::S111k,
        Family124::S12k,
        Family124::S112k,
        Family124::S22k,
        Family124::S122k,
        Family124::S1111k,
    ];

    /// The fixed branches.
    pub fn prefix(self) -> &'static [usize] {
        match self {
            Family124::S11k => &[1, 1],
            Family124::S111k => &[1, 1, 1],
            Family124::S12k => &[1, 2],
            Family124::S112k => &[1, 1, 2],
            Family124::S22k => &[2, 2],
            Family124::S122k => &[1, 2, 2],
            Family124::S1111k => &[1, 1, 1, 1],
        }
    }

    /// The repeating block `(v(0), v(1), v(2))`.
    pub fn period(self) -> [u32; 3] {
        match self {
            Family124::S11k => [0, 1, 2],
            Family124::S111k => [1, 0, 3],
            Family124::S12k => [1, 2, 0],
            Family124::S112k => [2, 3, 1],
            Family124::S22k => [2, 0, 1],
            Family124::S122k => [0, 1, 2],
            Family124::S1111k => [0, 1, 2],
        }
    }

    pub fn star(self, k: usize) -> SubdividedStar {
        SubdividedStar::new(self.prefix().iter().copied().chain([k]))
    }
}

impl fmt::Display for Family124 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family124::S11k => "S11k",
            Family124::S111k => "S111k",
            Family124::S12k => "S12k",
            Family124::S112k => "S112k",
            Family124::S22k => "S22k",
            Family124::S122k => "S122k",
            Family124::S1111k => "S1111k",
        };
        f.write_str(name)
    }
}

impl FromStr for Family124 {
    type Err = CsgError;

    fn from_str(s: &str) -> Result<Self> {
        Family124::ALL
            .into_iter()
            .find(|f| f.to_string() == s)
            .ok_or_else(|| CsgError::UnknownFamily(s.to_string()))
    }
}

/// `𝒢_{1,2,4}` of the family member with last branch `k`.
pub fn csg124_family_formula(family: Family124, k: usize) -> GrundyValue {
    GrundyValue(family.period()[k % 3])
}

/// Parses a family id and evaluates it.
pub fn csg124_family_formula_by_id(id: &str, k: usize) -> Result<GrundyValue> {
    Ok(csg124_family_formula(id.parse()?, k))
}

/// Finds a family whose member is `reduced` (every branch already below 3).
fn match_family(reduced: &SubdividedStar) -> Option<(Family124, usize)> {
    let b = reduced.branches();
    Family124::ALL.into_iter().find_map(|f| {
        (0..3).find_map(|k| {
            let member = f.star(k);
            (member.branches() == b).then_some((f, k))
        })
    })
}

/// Parameters of the `S(1,k,N)` column claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimParams {
    pub n: usize,
    pub r_n: usize,
    /// `x_k` for `k = a(N+1) + b`, `1 <= b <= N-1`, `k <= 2N`.
    pub x: BTreeMap<usize, usize>,
    /// `mex{𝒢(S(1,k,i)) : i < N}` for `k` in `1..=2N`.
    pub row_mex: BTreeMap<usize, u32>,
}

pub fn r_n(n: usize) -> usize {
    if matches!(n % 4, 2 | 3) {
        n / 2
    } else {
        n.saturating_sub(2) / 2
    }
}

impl ClaimParams {
    /// Computes `x_k` and the row mexes from exact solver values.
    pub fn compute(n: usize, cf: &ClosedForms) -> Result<Self> {
        require_n3(n)?;
        let l = SubtractionSet::interval(n)?;
        let column: Vec<u32> = (0..=2 * n)
            .map(|i| cf.grundy_star(&SubdividedStar::new([1, i, n]), &l).0)
            .collect();
        let mut x = BTreeMap::new();
        let mut row_mex = BTreeMap::new();
        for k in 1..=2 * n {
            let (a, b) = (k / (n + 1), k % (n + 1));
            if (1..n).contains(&b) {
                let from = a * (n + 1) + 1;
                let count = (from..k).filter(|&i| column[i] as usize > n).count();
                x.insert(k, count);
            }
            let m = mex((0..n).map(|i| cf.grundy_star(&SubdividedStar::new([1, k, i]), &l).0));
            row_mex.insert(k, m);
        }
        Ok(ClaimParams {
            n,
            r_n: r_n(n),
            x,
            row_mex,
        })
    }
}

/// The case table for `𝒢_{I_N}(S(1,k,N))`, `k` in `1..=2N`, `k ∉ {N, N+1}`.
/// A cross-check only; production values come from [`ClosedForms::s1kl_grundy`].
pub fn claim_star1kn_grundy(k: usize, params: &ClaimParams) -> Result<GrundyValue> {
    let n = params.n;
    if k == 0 || k > 2 * n || k == n || k == n + 1 {
        return Err(CsgError::Precondition(format!(
            "k = {k} must lie in 1..={} and avoid {n} and {}",
            2 * n,
            n + 1
        )));
    }
    if k + 1 == n || k == 2 * n {
        return Ok(gv(n));
    }
    if k + 2 == n || k + 1 == 2 * n {
        return Ok(gv(n - 1));
    }
    let m = params.row_mex[&k];
    if (1..=params.r_n).contains(&k) || m as usize + 1 >= n {
        let xk = *params
            .x
            .get(&k)
            .ok_or_else(|| CsgError::Precondition(format!("x_{k} is undefined for N = {n}")))?;
        return Ok(gv(n + xk + 1));
    }
    Ok(GrundyValue(m))
}

/// Base values of `S(1,a,b)` under `I_N`: every `a, b <= N`, plus
/// `S(1,a,N)` for `a` in `N+1..=2N+1`.
#[derive(Clone, Debug)]
pub struct S1klTable {
    n: usize,
    core: Vec<u32>,
    ext: Vec<u32>,
}

impl S1klTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize) -> Option<GrundyValue> {
        let n = self.n;
        let v = if a <= n && b <= n {
            self.core[a * (n + 1) + b]
        } else if b == n && (n + 1..=2 * n + 1).contains(&a) {
            self.ext[a - n - 1]
        } else if a == n && (n + 1..=2 * n + 1).contains(&b) {
            self.ext[b - n - 1]
        } else {
            return None;
        };
        Some(GrundyValue(v))
    }
}

/// Rows of `S(1^t, k)` values keyed by `(N, t)`.
type SimpleRows = HashMap<(usize, usize), Arc<Vec<u32>>>;

/// Evaluators backed by lazily filled, cached base tables.
#[derive(Default)]
pub struct ClosedForms {
    stars: Mutex<HashMap<SubtractionSet, StarSolver>>,
    simple: Mutex<SimpleRows>,
    s1kl: Mutex<HashMap<usize, Arc<S1klTable>>>,
}

impl fmt::Debug for ClosedForms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClosedForms").finish_non_exhaustive()
    }
}

impl ClosedForms {
    pub fn new() -> Self {
        Self::default()
    }

    /// Exact star value through a cached [`StarSolver`] for `l`.
    pub fn grundy_star(&self, star: &SubdividedStar, l: &SubtractionSet) -> GrundyValue {
        let mut stars = self.stars.lock().unwrap_or_else(|e| e.into_inner());
        stars
            .entry(l.clone())
            .or_insert_with(|| StarSolver::new(l.clone()))
            .grundy(star)
    }

    /// `𝒢_{I_N}(S(1^t)·u·k)` with `u` the centre.
    pub fn simple_star_appended_grundy(&self, t: usize, k: usize, n: usize) -> Result<GrundyValue> {
        let l = SubtractionSet::interval(n)?;
        let star = SubdividedStar::simple(t).with_branch(k);
        if n < 3 {
            return Ok(self.grundy_star(&star, &l));
        }
        let cached = self
            .simple
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .get(&(n, t))
            .cloned();
        let row = match cached {
            Some(row) => row,
            None => {
                let row: Vec<u32> = (0..=n)
                    .map(|k0| match (t, k0) {
                        (0, 0) => 1,
                        (_, 0) => simple_star_grundy(t, n).map(|v| v.0).unwrap_or(0),
                        _ => {
                            self.grundy_star(&SubdividedStar::simple(t).with_branch(k0), &l)
                                .0
                        }
                    })
                    .collect();
                let row = Arc::new(row);
                self.simple
                    .lock()
                    .unwrap_or_else(|e| e.into_inner())
                    .insert((n, t), row.clone());
                row
            }
        };
        Ok(GrundyValue(row[k % (n + 1)]))
    }

    /// The base table for `N >= 3`, filled on first use.
    pub fn s1kl_table(&self, n: usize) -> Result<Arc<S1klTable>> {
        require_n3(n)?;
        if let Some(t) = self.s1kl.lock().unwrap_or_else(|e| e.into_inner()).get(&n) {
            return Ok(t.clone());
        }
        let l = SubtractionSet::interval(n)?;
        let base = |a: usize, b: usize| -> u32 {
            if a < n && b < n {
                if let Ok(v) = s1kl_small_formula(a, b, n) {
                    return v.0;
                }
            }
            if let Some(v) = s1kl_residue01(a, b, n).exact() {
                return v.0;
            }
            self.grundy_star(&SubdividedStar::new([1, a, b]), &l).0
        };
        let mut core = vec![0; (n + 1) * (n + 1)];
        for a in 0..=n {
            for b in 0..=n {
                core[a * (n + 1) + b] = base(a, b);
            }
        }
        let ext = (n + 1..=2 * n + 1).map(|a| base(a, n)).collect();
        let table = Arc::new(S1klTable { n, core, ext });
        self.s1kl
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .insert(n, table.clone());
        Ok(table)
    }

    /// `𝒢_{I_N}(S(1,k,ℓ))`: branches reduced mod `N+1`, except that a branch
    /// congruent to `N` keeps the other branch in `N+1..=2N+1`.
    pub fn s1kl_grundy(&self, k: usize, l: usize, n: usize) -> Result<GrundyValue> {
        if n < 3 {
            let set = SubtractionSet::interval(n)?;
            return Ok(self.grundy_star(&SubdividedStar::new([1, k, l]), &set));
        }
        let m = n + 1;
        let (k0, l0) = (k % m, l % m);
        let (a, b) = if k > n && l0 == n {
            (k0 + m, n)
        } else if l > n && k0 == n {
            (n, l0 + m)
        } else {
            (k0, l0)
        };
        let table = self.s1kl_table(n)?;
        Ok(table
            .get(a, b)
            .expect("reduced indices lie in the base table"))
    }

    /// `CSG(1,2,3)`: every branch reduces mod 4.
    pub fn csg123_star_grundy(&self, star: &SubdividedStar) -> GrundyValue {
        let l = SubtractionSet::interval(3).expect("I_3 is valid");
        self.grundy_star(&star.reduce_mod(4), &l)
    }

    /// `CSG(1,2,4)`: every branch reduces mod 3; known families are read off
    /// their periodic formula.
    pub fn csg124_star_grundy(&self, star: &SubdividedStar) -> GrundyValue {
        let reduced = star.reduce_mod(3);
        if reduced.is_path() {
            return gv(reduced.order() % 3);
        }
        if let Some((family, k)) = match_family(&reduced) {
            return csg124_family_formula(family, k);
        }
        let l = SubtractionSet::new([1, 2, 4]).expect("{1,2,4} is valid");
        self.grundy_star(&reduced, &l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_path;

    fn i(n: usize) -> SubtractionSet {
        SubtractionSet::interval(n).unwrap()
    }

    #[test]
    fn path_values() {
        assert_eq!(path_grundy(2, &i(3)), GrundyValue(2));
        assert_eq!(
            path_grundy(0, &SubtractionSet::new([5]).unwrap()),
            GrundyValue(0)
        );
        let l247 = SubtractionSet::new([2, 4, 7]).unwrap();
        assert_eq!(path_grundy(10, &l247), GrundyValue(2));
        let got: Vec<u32> = subtraction_sequence(&l247, 12)
            .iter()
            .map(|g| g.0)
            .collect();
        assert_eq!(got, [0, 0, 1, 1, 2, 2, 0, 3, 1, 0, 2, 1, 0]);
    }

    #[test]
    fn size_tables() {
        assert_eq!(
            size_based_value(&make_path(1).unwrap(), 4),
            PartialValue::Exact(GrundyValue(1))
        );
        assert_eq!(
            size_based_value(&make_path(5).unwrap(), 4),
            PartialValue::Exact(GrundyValue(0))
        );
        assert_eq!(
            size_based_value(&make_path(6).unwrap(), 4),
            PartialValue::Exact(GrundyValue(1))
        );
        assert_eq!(
            size_based_value(&make_path(3).unwrap(), 4),
            PartialValue::AtLeast(GrundyValue(2))
        );
        assert_eq!(
            size_based_value(&make_path(7).unwrap(), 4),
            PartialValue::Unknown
        );
        let p1 = make_path(1).unwrap();
        assert_eq!(
            appended_size_based_value(&p1, Some(0), 3),
            Ok(PartialValue::Exact(GrundyValue(1)))
        );
        assert!(appended_size_based_value(&p1, Some(1), 3).is_err());
    }

    #[test]
    fn simple_stars() {
        assert_eq!(simple_star_grundy(3, 4), Ok(GrundyValue(2)));
        assert_eq!(simple_star_grundy(4, 4), Ok(GrundyValue(0)));
        for n in 3..8 {
            assert_eq!(simple_star_grundy(n + 1, n), Ok(GrundyValue(1)));
        }
        assert!(simple_star_grundy(3, 2).is_err());
        assert!(simple_star_grundy(0, 4).is_err());

        let cf = ClosedForms::new();
        assert_eq!(cf.simple_star_appended_grundy(3, 2, 4), Ok(GrundyValue(1)));
        assert_eq!(cf.simple_star_appended_grundy(2, 4, 4), Ok(GrundyValue(5)));
        assert_eq!(cf.simple_star_appended_grundy(5, 9, 4), Ok(GrundyValue(5)));
    }

    #[test]
    fn s1kl_formulas() {
        assert_eq!(s1kl_small_formula(2, 2, 6), Ok(GrundyValue(3)));
        assert_eq!(s1kl_small_formula(0, 0, 5), Ok(GrundyValue(2)));
        assert_eq!(s1kl_small_formula(3, 5, 10), Ok(GrundyValue(8)));
        assert!(s1kl_small_formula(5, 1, 5).is_err());

        assert_eq!(s1kl_residue01(4, 4, 4), PartialValue::Exact(GrundyValue(0)));
        assert_eq!(s1kl_residue01(4, 5, 4), PartialValue::Exact(GrundyValue(1)));
        assert_eq!(s1kl_residue01(1, 2, 3), PartialValue::Exact(GrundyValue(1)));
        assert_eq!(s1kl_residue01(1, 1, 3), PartialValue::Exact(GrundyValue(0)));
        assert_eq!(
            s1kl_residue01(1, 1, 4),
            PartialValue::AtLeast(GrundyValue(2))
        );

        let cf = ClosedForms::new();
        assert_eq!(cf.s1kl_grundy(1, 1, 5), Ok(GrundyValue(2)));
        assert_eq!(cf.s1kl_grundy(8, 2, 8), Ok(GrundyValue(10)));
        assert_eq!(cf.s1kl_grundy(8, 11, 8), Ok(GrundyValue(6)));
    }

    #[test]
    fn claim_edges() {
        let cf = ClosedForms::new();
        let p = ClaimParams::compute(8, &cf).unwrap();
        assert_eq!(p.r_n, 3);
        assert_eq!(claim_star1kn_grundy(7, &p), Ok(GrundyValue(8)));
        assert_eq!(claim_star1kn_grundy(15, &p), Ok(GrundyValue(7)));
        assert!(claim_star1kn_grundy(8, &p).is_err());
        assert!(claim_star1kn_grundy(9, &p).is_err());
        assert_eq!(r_n(6), 3);
        assert_eq!(r_n(7), 3);
        assert_eq!(r_n(4), 1);
        assert_eq!(r_n(5), 1);
    }

    #[test]
    fn star_reducers() {
        let cf = ClosedForms::new();
        assert_eq!(
            cf.csg123_star_grundy(&SubdividedStar::new([1, 1, 5])),
            GrundyValue(0)
        );
        assert_eq!(
            cf.csg123_star_grundy(&SubdividedStar::new([1, 2, 3])),
            GrundyValue(3)
        );
        assert_eq!(
            cf.csg123_star_grundy(&SubdividedStar::new([6, 9, 4, 8])),
            GrundyValue(0)
        );

        assert_eq!(
            cf.csg124_star_grundy(&SubdividedStar::new([1, 1, 1, 5])),
            GrundyValue(3)
        );
        assert_eq!(
            cf.csg124_star_grundy(&SubdividedStar::new([1, 1, 2, 6])),
            GrundyValue(2)
        );
        assert_eq!(
            cf.csg124_star_grundy(&SubdividedStar::new([3, 3, 1])),
            GrundyValue(2)
        );
    }

    #[test]
    fn family_formulas() {
        assert_eq!(csg124_family_formula(Family124::S22k, 0), GrundyValue(2));
        assert_eq!(csg124_family_formula(Family124::S1111k, 1), GrundyValue(1));
        assert_eq!(csg124_family_formula(Family124::S12k, 4), GrundyValue(2));
        assert_eq!(csg124_family_formula_by_id("S112k", 3), Ok(GrundyValue(2)));
        assert!(matches!(
            csg124_family_formula_by_id("S9k", 0),
            Err(CsgError::UnknownFamily(_))
        ));
    }
}
