mod common;

use csg::certify::certify_period;
use csg::closed_forms::{
    csg124_family_formula, path_grundy, s1kl_residue01, simple_star_grundy, size_based_value,
    subtraction_sequence,
};
use csg::{
    appended_sequence, detect_period, format_sequence, make_subdivided_star, parse_sequence,
    ClosedForms, Family124, GraphSolver, GraphSpec, GrundySequence, GrundyValue, StarSolver,
    SubdividedStar, SubtractionSet,
};
use proptest::prelude::*;

use common::{heap_values, Brute};

fn values(v: Vec<u32>) -> Vec<GrundyValue> {
    v.into_iter().map(GrundyValue).collect()
}

fn small_set() -> impl Strategy<Value = SubtractionSet> {
    prop::collection::btree_set(1usize..=7, 1..=4).prop_map(|s| SubtractionSet::new(s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed), ..ProptestConfig::default() })]

    #[test]
    fn path_values_follow_the_heap_recurrence(l in small_set(), k in 0usize..200) {
        let heap = heap_values(l.values(), k);
        prop_assert_eq!(path_grundy(k, &l).0, heap[k]);
        prop_assert_eq!(subtraction_sequence(&l, k), values(heap));
    }

    #[test]
    fn interval_paths(n in 1usize..=10, k in 0usize..500) {
        let l = SubtractionSet::interval(n).unwrap();
        prop_assert_eq!(path_grundy(k, &l).0 as usize, k % (n + 1));
    }

    #[test]
    fn simple_star_formula(t in 1usize..=8, n in 3usize..=7) {
        let g = make_subdivided_star(&vec![1; t]).unwrap();
        let want = Brute::new(&g, &SubtractionSet::interval(n).unwrap()).whole();
        prop_assert_eq!(simple_star_grundy(t, n).unwrap().0, want);
    }

    #[test]
    fn size_bound_is_admitted(branches in prop::collection::vec(1usize..=4, 1..=3), n in 1usize..=6) {
        let g = make_subdivided_star(&branches).unwrap();
        let v = GraphSolver::new(g.clone(), SubtractionSet::interval(n).unwrap()).grundy_whole();
        prop_assert!(size_based_value(&g, n).admits(v));
    }

    #[test]
    fn s1kl_matches_solver(n in 3usize..=6, k in 0usize..40, l in 0usize..40) {
        let mut solver = StarSolver::new(SubtractionSet::interval(n).unwrap());
        let want = solver.grundy(&SubdividedStar::new([1, k, l]));
        prop_assert_eq!(ClosedForms::new().s1kl_grundy(k, l, n).unwrap(), want);
        prop_assert!(s1kl_residue01(k, l, n).admits(want));
    }

    #[test]
    fn simple_star_reduction(t in 0usize..=14, k in 0usize..=30, n in 3usize..=5) {
        let mut solver = StarSolver::new(SubtractionSet::interval(n).unwrap());
        let want = solver.grundy(&SubdividedStar::simple(t).with_branch(k));
        prop_assert_eq!(ClosedForms::new().simple_star_appended_grundy(t, k, n).unwrap(), want);
    }

    #[test]
    fn reducers_match_solver(branches in prop::collection::vec(0usize..=14, 0..=4)) {
        let star = SubdividedStar::new(branches);
        let cf = ClosedForms::new();
        let mut s123 = StarSolver::new(SubtractionSet::interval(3).unwrap());
        let mut s124 = StarSolver::new(SubtractionSet::new([1, 2, 4]).unwrap());
        prop_assert_eq!(cf.csg123_star_grundy(&star), s123.grundy(&star));
        prop_assert_eq!(cf.csg124_star_grundy(&star), s124.grundy(&star));
    }

    #[test]
    fn family_formulas(i in 0usize..7, k in 0usize..60) {
        let family = Family124::ALL[i];
        let mut solver = StarSolver::new(SubtractionSet::new([1, 2, 4]).unwrap());
        prop_assert_eq!(csg124_family_formula(family, k), solver.grundy(&family.star(k)));
        prop_assert_eq!(family.to_string().parse::<Family124>().unwrap(), family);
    }

    #[test]
    fn sequence_text_round_trip(
        pre in prop::collection::vec(0u32..14, 0..6),
        period in prop::collection::vec(0u32..14, 1..6),
    ) {
        let gs = GrundySequence::new(values(pre), values(period)).unwrap();
        let text = format_sequence(&gs);
        prop_assert_eq!(parse_sequence(&text).unwrap(), gs.clone());
        // Enough terms for the detector to confirm the period.
        let len = gs.preperiod_len() + 4 * gs.period_len() + 10;
        let found = detect_period(&gs.expand(len), 2).unwrap().sequence;
        prop_assert_eq!(found.period_len(), gs.period_len());
        prop_assert!(found.preperiod_len() <= gs.preperiod_len());
    }

    #[test]
    fn certificates_replay(
        branches in prop::collection::vec(1usize..=2, 1..=3),
        anchor_pick in 0usize..8,
        l in small_set(),
    ) {
        let base = make_subdivided_star(&branches).unwrap();
        let anchor = anchor_pick % base.order();
        let cert = certify_period(&base, Some(anchor), &l, 20_000).unwrap();
        prop_assert!(cert.check());
        let upto = cert.k_start() + 3 * cert.t_f() + l.max();
        prop_assume!(base.order() + upto <= 64);
        let direct = appended_sequence(&base, Some(anchor), &l, upto).unwrap();
        prop_assert_eq!(cert.replay(upto), direct.clone());
        let long_k = (upto + 2 * cert.t_f() + 2 * l.max()).min(64 - base.order());
        let long = appended_sequence(&base, Some(anchor), &l, long_k).unwrap();
        if let Ok(found) = detect_period(&long, l.max()) {
            prop_assert_eq!(cert.t_f() % found.sequence.period_len(), 0);
            prop_assert!(found.sequence.preperiod_len() <= cert.k_start());
        }
    }

    #[test]
    fn graph_spec_display_parses_back(branches in prop::collection::vec(0usize..=20, 0..=5), k in 0usize..9) {
        let star = GraphSpec::SStar(branches);
        let spec = GraphSpec::Append { base: Box::new(star), u: 0, k };
        let text = spec.to_string();
        prop_assert_eq!(text.parse::<GraphSpec>().unwrap(), spec);
    }
}

#[test]
fn star_solver_handles_long_branches() {
    let mut solver = StarSolver::new(SubtractionSet::interval(3).unwrap());
    for k in [100, 1001, 10_002] {
        let v = solver.grundy(&SubdividedStar::new([1, 1, k]));
        let reduced = solver.grundy(&SubdividedStar::new([1, 1, k % 4]));
        assert_eq!(v, reduced, "S(1,1,{k})");
    }
}
