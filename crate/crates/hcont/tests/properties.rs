//! Randomized law checking: order axioms, operator identities, and duality
//! facts that must hold on every input, probed with shrinking generators.

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use hcont::envelope::{h, h_inv};
use hcont::space::{FiniteTopology, PointSet, SampledMetricSpace};
use hcont::{baire, hausdorff, lattice, oracle};
use hcont::{ExtReal, FunctionFamily, Interval, IntervalFunction, Space};

// --- generators -------------------------------------------------------------

fn ext(v: f64) -> ExtReal {
    ExtReal::new(v).unwrap()
}

fn arb_extreal() -> impl Strategy<Value = ExtReal> {
    prop_oneof![
        8 => (-10i32..=10).prop_map(|k| ext(k as f64 * 0.5)),
        1 => Just(ExtReal::INFINITY),
        1 => Just(ExtReal::NEG_INFINITY),
    ]
}

fn arb_interval() -> impl Strategy<Value = Interval> {
    (arb_extreal(), arb_extreal()).prop_map(|(a, b)| {
        if a <= b {
            Interval::new(a, b).unwrap()
        } else {
            Interval::new(b, a).unwrap()
        }
    })
}

/// A random topology on 1..=4 points: seed subsets saturated under union and
/// intersection, so every generated family really is a topology.
fn arb_topology() -> impl Strategy<Value = Arc<Space>> {
    (1usize..=4).prop_flat_map(|n| {
        let full = (1u64 << n) - 1;
        proptest::collection::vec(0..=full, 0..5).prop_map(move |seeds| {
            let mut opens: BTreeSet<u64> = seeds.into_iter().collect();
            opens.insert(0);
            opens.insert(full);
            loop {
                let snapshot: Vec<u64> = opens.iter().copied().collect();
                let before = opens.len();
                for &a in &snapshot {
                    for &b in &snapshot {
                        opens.insert(a | b);
                        opens.insert(a & b);
                    }
                }
                if opens.len() == before {
                    break;
                }
            }
            let sets = opens
                .iter()
                .map(|&m| PointSet::from_indices((0..n).filter(|&i| m & (1 << i) != 0)))
                .collect();
            Space::finite(FiniteTopology::from_sets(n, sets).unwrap())
        })
    })
}

/// The 6 intervals with endpoints in {0, 1, 2}.
fn options() -> Vec<Interval> {
    let c = [ext(0.0), ext(1.0), ext(2.0)];
    let mut out = Vec::new();
    for i in 0..3 {
        for j in i..3 {
            out.push(Interval::new(c[i], c[j]).unwrap());
        }
    }
    out
}

fn function_on(space: Arc<Space>) -> impl Strategy<Value = IntervalFunction> {
    let n = space.len();
    proptest::collection::vec(0usize..6, n).prop_map(move |idx| {
        let opts = options();
        IntervalFunction::new(space.clone(), idx.into_iter().map(|i| opts[i]).collect()).unwrap()
    })
}

/// A topology plus one chain-valued function on it.
fn arb_topology_function() -> impl Strategy<Value = IntervalFunction> {
    arb_topology().prop_flat_map(function_on)
}

/// A topology plus two chain-valued functions on it.
fn arb_topology_pair() -> impl Strategy<Value = (IntervalFunction, IntervalFunction)> {
    arb_topology().prop_flat_map(|space| (function_on(space.clone()), function_on(space)))
}

/// A small 1D grid plus finite interval values on it.
fn arb_grid_function() -> impl Strategy<Value = IntervalFunction> {
    (3usize..40).prop_flat_map(|n| {
        let space = Space::metric(SampledMetricSpace::grid1d(-1.0, 1.0, n).unwrap());
        proptest::collection::vec((-8i32..=8, 0i32..=6), n).prop_map(move |pairs| {
            let values = pairs
                .into_iter()
                .map(|(lo, w)| {
                    Interval::new(ext(lo as f64 * 0.25), ext((lo + w) as f64 * 0.25)).unwrap()
                })
                .collect();
            IntervalFunction::new(space.clone(), values).unwrap()
        })
    })
}

/// Widens `f` pointwise into a random superset function.
fn widen(f: &IntervalFunction, picks: &[usize]) -> IntervalFunction {
    let opts = options();
    let values = f
        .values()
        .iter()
        .zip(picks)
        .map(|(&v, &p)| {
            let sup: Vec<Interval> = opts.iter().copied().filter(|o| v.subset(*o)).collect();
            sup[p % sup.len()]
        })
        .collect();
    IntervalFunction::new(f.space().clone(), values).unwrap()
}

// --- order axioms -------------------------------------------------------------

proptest! {
    #[test]
    fn interval_leq_is_a_partial_order(
        a in arb_interval(), b in arb_interval(), c in arb_interval()
    ) {
        prop_assert!(a.leq(a));
        if a.leq(b) && b.leq(a) {
            prop_assert_eq!(a, b);
        }
        if a.leq(b) && b.leq(c) {
            prop_assert!(a.leq(c));
        }
    }

    #[test]
    fn interval_subset_is_a_partial_order(
        a in arb_interval(), b in arb_interval(), c in arb_interval()
    ) {
        prop_assert!(a.subset(a));
        if a.subset(b) && b.subset(a) {
            prop_assert_eq!(a, b);
        }
        if a.subset(b) && b.subset(c) {
            prop_assert!(a.subset(c));
        }
    }

    #[test]
    fn point_membership_and_embedding(x in arb_extreal(), b in arb_interval()) {
        let p = Interval::point(x);
        prop_assert_eq!(p.subset(b), b.lo() <= x && x <= b.hi());
        let q = Interval::point(b.lo());
        prop_assert_eq!(p.leq(q), x <= b.lo());
    }

    #[test]
    fn mutual_function_subset_means_equality((f, g) in arb_topology_pair()) {
        if f.subset(&g).unwrap() && g.subset(&f).unwrap() {
            prop_assert_eq!(f, g);
        }
    }
}

// --- operator laws on the exact backend ------------------------------------

proptest! {
    #[test]
    fn operators_sandwich_the_function(f in arb_topology_function()) {
        let i = baire::lower_baire(&f).unwrap().output;
        let s = baire::upper_baire(&f).unwrap().output;
        for x in 0..f.len() {
            prop_assert!(i.lower(x) <= f.lower(x));
            prop_assert!(f.upper(x) <= s.lower(x));
        }
    }

    #[test]
    fn operators_are_idempotent(f in arb_topology_function()) {
        let i = baire::lower_baire(&f).unwrap().output;
        let s = baire::upper_baire(&f).unwrap().output;
        let c = baire::graph_completion(&f).unwrap().output;
        prop_assert_eq!(baire::lower_baire(&i).unwrap().output, i.clone());
        prop_assert_eq!(baire::upper_baire(&s).unwrap().output, s.clone());
        prop_assert_eq!(baire::graph_completion(&c).unwrap().output, c.clone());
    }

    #[test]
    fn completion_is_inclusion_monotone(
        (f, picks) in arb_topology_function()
            .prop_flat_map(|f| {
                let n = f.len();
                (Just(f), proptest::collection::vec(0usize..6, n))
            })
    ) {
        let g = widen(&f, &picks);
        prop_assert!(f.subset(&g).unwrap());
        let cf = baire::graph_completion(&f).unwrap().output;
        let cg = baire::graph_completion(&g).unwrap().output;
        prop_assert!(cf.subset(&cg).unwrap());
    }

    #[test]
    fn envelopes_are_semicontinuous(f in arb_topology_function()) {
        let i = baire::lower_baire(&f).unwrap().output;
        let s = baire::upper_baire(&f).unwrap().output;
        prop_assert!(baire::is_lower_semicontinuous(&i).unwrap().passed);
        prop_assert!(baire::is_upper_semicontinuous(&s).unwrap().passed);
    }

    #[test]
    fn pointwise_max_of_lsc_functions_is_lsc(
        (f, g) in arb_topology_pair()
    ) {
        let a = baire::lower_baire(&f).unwrap().output;
        let b = baire::lower_baire(&g).unwrap().output;
        let max = IntervalFunction::from_points(
            f.space().clone(),
            (0..f.len()).map(|x| a.lower(x).max(b.lower(x))).collect(),
        ).unwrap();
        prop_assert!(baire::is_lower_semicontinuous(&max).unwrap().passed);
    }

    #[test]
    fn production_operators_agree_with_the_oracle(f in arb_topology_function()) {
        let i = baire::lower_baire(&f).unwrap().output;
        let s = baire::upper_baire(&f).unwrap().output;
        prop_assert_eq!(i.lower_values(), oracle::oracle_lower_baire(&f).unwrap());
        prop_assert_eq!(s.lower_values(), oracle::oracle_upper_baire(&f).unwrap());
    }

    #[test]
    fn regularizations_land_in_the_h_continuous_class(f in arb_topology_function()) {
        let lower = hausdorff::regularize_lower(&f).unwrap().output;
        let upper = hausdorff::regularize_upper(&f).unwrap().output;
        prop_assert!(hausdorff::is_h_continuous(&lower).unwrap().verdict);
        prop_assert!(hausdorff::is_h_continuous(&upper).unwrap().verdict);
    }

    #[test]
    fn infimum_is_the_order_dual_of_supremum(
        fs in arb_topology().prop_flat_map(|space| {
            proptest::collection::vec(function_on(space), 1..4)
        })
    ) {
        let members: Vec<IntervalFunction> = fs
            .iter()
            .map(|f| hausdorff::regularize_lower(f).unwrap().output)
            .collect();
        let space = members[0].space().clone();
        let top = IntervalFunction::constant(space.clone(), Interval::point(ext(2.0)));
        let bot = IntervalFunction::constant(space.clone(), Interval::point(ext(0.0)));
        let fam = FunctionFamily::new(members.clone()).unwrap();
        let neg = FunctionFamily::new(members.iter().map(|m| m.negate()).collect()).unwrap();
        let inf = lattice::family_inf(&fam, &bot).unwrap();
        let sup_of_neg = lattice::family_sup(&neg, &bot.negate()).unwrap();
        prop_assert_eq!(inf.clone(), sup_of_neg.negate());
        // and the supremum dominates while the infimum is dominated
        let sup = lattice::family_sup(&fam, &top).unwrap();
        for m in fam.members() {
            prop_assert!(m.leq(&sup).unwrap());
            prop_assert!(inf.leq(m).unwrap());
        }
    }
}

// --- sampled backend -------------------------------------------------------

proptest! {
    #[test]
    fn sandwich_holds_on_grids(f in arb_grid_function()) {
        let i = baire::lower_baire(&f).unwrap().output;
        let s = baire::upper_baire(&f).unwrap().output;
        for x in 0..f.len() {
            prop_assert!(i.lower(x) <= f.lower(x));
            prop_assert!(f.upper(x) <= s.lower(x));
        }
    }

    #[test]
    fn balls_are_monotone_in_the_radius(
        n in 3usize..30, x in 0usize..30, bump in 0.1f64..3.0
    ) {
        let s = SampledMetricSpace::grid1d(0.0, 1.0, n).unwrap();
        let x = x % n;
        let r = s.finest_radius();
        let small = s.ball_points(x, r).unwrap();
        let large = s.ball_points(x, r + bump).unwrap();
        prop_assert!(small.members.iter().all(|m| large.members.contains(m)));
        prop_assert!(small.members.contains(&x));
    }

    #[test]
    fn transform_round_trips_within_tolerance(
        z in -30.0f64..30.0, w in -0.96f64..0.96
    ) {
        prop_assert!((h_inv(h(z)) - z).abs() <= 1e-12);
        prop_assert!((h(h_inv(w)) - w).abs() <= 1e-12);
        prop_assert!(h(z) > -1.0 && h(z) < 1.0);
    }

    #[test]
    fn transform_is_weakly_monotone(a in -50.0f64..50.0, b in -50.0f64..50.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(h(lo) <= h(hi));
    }
}

// --- wire format -------------------------------------------------------------

proptest! {
    #[test]
    fn interval_json_round_trips(a in arb_interval()) {
        let s = serde_json::to_string(&a).unwrap();
        let back: Interval = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(a, back);
    }

    #[test]
    fn grid_function_files_round_trip(f in arb_grid_function()) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.json");
        hcont::io::save_function(&f, &path).unwrap();
        prop_assert_eq!(hcont::io::load_function(&path).unwrap(), f);
    }
}
