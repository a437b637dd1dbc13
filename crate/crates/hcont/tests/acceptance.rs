//! Acceptance battery: eleven end-to-end guarantees, one test per line item.
//!
//! Each test prints a single `criterion NN PASS` line with its measured cost.
//! The corpus sizes, tolerances, and runtime budgets here are part of the
//! shipped contract; none of them may be loosened to make a failure go away.

use std::sync::Arc;
use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use hcont::envelope::{self, approximating_family_bounded, approximating_family_cm, h, h_inv};
use hcont::hausdorff::{self, PointClass};
use hcont::oracle::{self, EnumerationBudget};
use hcont::space::{Coords, FiniteTopology, Metric, PointSet, SampledMetricSpace};
use hcont::{baire, convergence, plot};
use hcont::{ExtReal, Interval, IntervalFunction, Space};

// --- shared corpus machinery ----------------------------------------------

fn ext(v: f64) -> ExtReal {
    ExtReal::new(v).unwrap()
}

fn iv(lo: f64, hi: f64) -> Interval {
    Interval::new(ext(lo), ext(hi)).unwrap()
}

fn chain(values: &[f64]) -> Vec<ExtReal> {
    values.iter().map(|&v| ext(v)).collect()
}

/// All intervals with endpoints in the sorted `chain`.
fn chain_intervals(chain: &[ExtReal]) -> Vec<Interval> {
    let mut out = Vec::new();
    for (i, &a) in chain.iter().enumerate() {
        for &b in &chain[i..] {
            out.push(Interval::new(a, b).unwrap());
        }
    }
    out
}

/// Every topology on 1..=`max_points` labeled points, as spaces.
fn topology_corpus(max_points: usize) -> Vec<Arc<Space>> {
    let mut out = Vec::new();
    for n in 1..=max_points {
        for t in oracle::enumerate_topologies(n).unwrap() {
            out.push(Space::finite(t));
        }
    }
    out
}

fn random_function(
    space: &Arc<Space>,
    options: &[Interval],
    rng: &mut ChaCha8Rng,
) -> IntervalFunction {
    let values = (0..space.len())
        .map(|_| options[rng.gen_range(0..options.len())])
        .collect();
    IntervalFunction::new(space.clone(), values).unwrap()
}

/// A random `g >= f` drawn from the same chain options.
fn random_dominating(
    f: &IntervalFunction,
    options: &[Interval],
    rng: &mut ChaCha8Rng,
) -> IntervalFunction {
    let values = f
        .values()
        .iter()
        .map(|&v| {
            let admissible: Vec<Interval> = options.iter().copied().filter(|&o| v.leq(o)).collect();
            admissible[rng.gen_range(0..admissible.len())]
        })
        .collect();
    IntervalFunction::new(f.space().clone(), values).unwrap()
}

// --- criteria ---------------------------------------------------------------

#[test]
fn criterion_01_operators_match_the_exhaustive_oracle() {
    let start = Instant::now();
    let spaces = topology_corpus(4);
    let options = chain_intervals(&chain(&[0.0, 1.0, 2.0]));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let space = &spaces[rng.gen_range(0..spaces.len())];
        let f = random_function(space, &options, &mut rng);
        let i = baire::lower_baire(&f).unwrap().output;
        let s = baire::upper_baire(&f).unwrap().output;
        let fc = baire::graph_completion(&f).unwrap().output;
        let oi = oracle::oracle_lower_baire(&f).unwrap();
        let os = oracle::oracle_upper_baire(&f).unwrap();
        let of = oracle::oracle_graph_completion(&f).unwrap();
        assert_eq!(i.lower_values(), oi, "I disagrees with oracle on {f:?}");
        assert_eq!(i.upper_values(), oi, "I output must be point-valued");
        assert_eq!(s.lower_values(), os, "S disagrees with oracle on {f:?}");
        assert_eq!(s.upper_values(), os, "S output must be point-valued");
        assert_eq!(fc, of, "F disagrees with oracle on {f:?}");
    }
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 5.0, "budget 5 s exceeded: {dt:?}");
    println!(
        "criterion 01 PASS: I/S/F equal the exhaustive-neighborhood oracle \
         on 200 random topology/function pairs ({dt:?})"
    );
}

#[test]
fn criterion_02_idempotency_and_monotonicity() {
    let start = Instant::now();
    let spaces = topology_corpus(4);
    let options = chain_intervals(&chain(&[0.0, 1.0, 2.0]));
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let space = &spaces[rng.gen_range(0..spaces.len())];
        let f = random_function(space, &options, &mut rng);
        let g = random_dominating(&f, &options, &mut rng);
        assert!(f.leq(&g).unwrap());

        let fi = baire::lower_baire(&f).unwrap().output;
        let fs = baire::upper_baire(&f).unwrap().output;
        let ff = baire::graph_completion(&f).unwrap().output;
        assert_eq!(
            baire::lower_baire(&fi).unwrap().output,
            fi,
            "I not idempotent"
        );
        assert_eq!(
            baire::upper_baire(&fs).unwrap().output,
            fs,
            "S not idempotent"
        );
        assert_eq!(
            baire::graph_completion(&ff).unwrap().output,
            ff,
            "F not idempotent"
        );

        let gi = baire::lower_baire(&g).unwrap().output;
        let gs = baire::upper_baire(&g).unwrap().output;
        let gf = baire::graph_completion(&g).unwrap().output;
        assert!(fi.leq(&gi).unwrap(), "I not monotone");
        assert!(fs.leq(&gs).unwrap(), "S not monotone");
        assert!(ff.leq(&gf).unwrap(), "F not monotone");
    }
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 5.0, "budget 5 s exceeded: {dt:?}");
    println!(
        "criterion 02 PASS: idempotency and order monotonicity of I/S/F \
         hold exactly on 200 random pairs ({dt:?})"
    );
}

#[test]
fn criterion_03_h_continuity_criteria_are_equivalent() {
    let start = Instant::now();
    let budget = EnumerationBudget::default();
    let chain01 = chain(&[0.0, 1.0]);
    let topologies = oracle::enumerate_topologies(3).unwrap();
    assert_eq!(topologies.len(), 29);
    let mut checked = 0usize;
    for t in topologies {
        let space = Space::finite(t);
        for f in oracle::all_chain_functions(&space, &chain01, &budget).unwrap() {
            let by_def_oracle = oracle::oracle_is_h_continuous(&f, &chain01, &budget).unwrap();
            let by_def = hausdorff::is_h_continuous_by_definition(&f, &chain01)
                .unwrap()
                .verdict;
            let by_completion = hausdorff::is_h_continuous_by_endpoint_completion(&f)
                .unwrap()
                .verdict;
            let by_exchange = hausdorff::is_h_continuous(&f).unwrap().verdict;
            assert_eq!(by_def_oracle, by_def, "definition paths split on {f:?}");
            assert_eq!(by_def, by_completion, "definition vs completion on {f:?}");
            assert_eq!(by_def, by_exchange, "definition vs exchange on {f:?}");
            checked += 1;
        }
    }
    assert_eq!(checked, 29 * 27);
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 60.0, "budget 60 s exceeded: {dt:?}");
    println!(
        "criterion 03 PASS: all three H-continuity criteria agree on every \
         function with endpoints in {{0,1}} over all 29 three-point topologies \
         ({checked} cases, {dt:?})"
    );
}

#[test]
fn criterion_04_regularizations_are_h_continuous() {
    let start = Instant::now();
    let spaces = topology_corpus(4);
    let options = chain_intervals(&chain(&[0.0, 1.0, 2.0]));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..500 {
        let space = &spaces[rng.gen_range(0..spaces.len())];
        let f = random_function(space, &options, &mut rng);
        let lower = hausdorff::regularize_lower(&f).unwrap().output;
        let upper = hausdorff::regularize_upper(&f).unwrap().output;
        assert!(
            hausdorff::is_h_continuous(&lower).unwrap().verdict,
            "F(S(I(f))) not H-continuous for {f:?}"
        );
        assert!(
            hausdorff::is_h_continuous(&upper).unwrap().verdict,
            "F(I(S(f))) not H-continuous for {f:?}"
        );
    }
    let dt = start.elapsed();
    println!(
        "criterion 04 PASS: both regularizations produce H-continuous output \
         on 500 random inputs, zero failures ({dt:?})"
    );
}

#[test]
fn criterion_05_point_values_coincide_with_endpoint_continuity() {
    let start = Instant::now();
    let budget = EnumerationBudget::default();
    let chain01 = chain(&[0.0, 1.0]);
    let mut functions = 0usize;
    for t in oracle::enumerate_topologies(3).unwrap() {
        let space = Space::finite(t);
        for f in oracle::enumerate_h_continuous(&space, &chain01, &budget).unwrap() {
            let lo_cont = hausdorff::point_continuity(&f.lower_selection()).unwrap();
            let hi_cont = hausdorff::point_continuity(&f.upper_selection()).unwrap();
            let classes = hausdorff::continuity_classes(&f).unwrap();
            for x in 0..f.len() {
                let point_valued = f.lower(x) == f.upper(x);
                assert_eq!(
                    point_valued,
                    lo_cont[x] && hi_cont[x],
                    "dichotomy fails at point {x} of {f:?}"
                );
                assert_eq!(
                    classes[x] == PointClass::PointValued,
                    point_valued,
                    "classification disagrees at point {x} of {f:?}"
                );
            }
            functions += 1;
        }
    }
    let dt = start.elapsed();
    println!(
        "criterion 05 PASS: a value is degenerate exactly where both endpoint \
         functions are continuous, across {functions} enumerated H-continuous \
         functions on the three-point corpus ({dt:?})"
    );
}

#[test]
fn criterion_06_order_on_a_dense_set_extends_everywhere() {
    let start = Instant::now();
    let spaces = topology_corpus(4);
    let options = chain_intervals(&chain(&[0.0, 1.0, 2.0]));
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut done = 0usize;
    let mut attempts = 0usize;
    while done < 500 {
        attempts += 1;
        assert!(attempts < 200_000, "rejection sampling stalled");
        let space = &spaces[rng.gen_range(0..spaces.len())];
        let n = space.len();
        let t = space.as_finite().unwrap();
        let f = hausdorff::regularize_lower(&random_function(space, &options, &mut rng))
            .unwrap()
            .output;
        let g = hausdorff::regularize_lower(&random_function(space, &options, &mut rng))
            .unwrap()
            .output;
        let dense = loop {
            let mask = rng.gen_range(1u64..(1u64 << n));
            let d = PointSet::from_indices((0..n).filter(|&i| mask & (1 << i) != 0));
            if t.is_dense(d) {
                break d;
            }
        };
        if !dense.iter().all(|x| f.value(x).leq(g.value(x))) {
            continue; // premise does not hold; draw again
        }
        let report = hausdorff::dense_agreement(&f, &g, dense).unwrap();
        assert!(
            report.passed,
            "f <= g on dense {dense:?} but not everywhere: {:?}",
            report.failures
        );
        done += 1;
    }
    let dt = start.elapsed();
    println!(
        "criterion 06 PASS: 500 H-continuous pairs ordered on a dense subset \
         are ordered globally, zero violations ({attempts} draws, {dt:?})"
    );
}

#[test]
fn criterion_07_dedekind_completeness_is_exhaustive() {
    let start = Instant::now();
    let budget = EnumerationBudget::default();
    let chain01 = chain(&[0.0, 1.0]);
    for t in oracle::enumerate_topologies(3).unwrap() {
        let space = Space::finite(t);
        let report = oracle::verify_dedekind_completeness(&space, &chain01, &budget).unwrap();
        assert!(
            report.passed,
            "completeness fails on {space:?}: {:?}",
            report.failures
        );
    }
    let discrete2 = Space::finite(
        FiniteTopology::from_sets(
            2,
            vec![
                PointSet::EMPTY,
                PointSet::singleton(0),
                PointSet::singleton(1),
                PointSet::full(2),
            ],
        )
        .unwrap(),
    );
    let report =
        oracle::verify_dedekind_completeness(&discrete2, &chain(&[0.0, 1.0, 2.0]), &budget)
            .unwrap();
    assert!(report.passed, "{:?}", report.failures);
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 120.0, "budget 120 s exceeded: {dt:?}");
    println!(
        "criterion 07 PASS: every family supremum/infimum is a least upper / \
         greatest lower bound across all 29 three-point topologies (chain \
         {{0,1}}) and the discrete pair (chain {{0,1,2}}) ({dt:?})"
    );
}

#[test]
fn criterion_08_approximating_families_recover_the_step() {
    let start = Instant::now();
    let space = Space::metric(SampledMetricSpace::grid1d(-1.0, 1.0, 401).unwrap());
    let f = hcont::funcs::make_example("step", &space).unwrap();
    let minorant = envelope::continuous_minorant(&f).unwrap().envelope;
    for eps in [0.1, 0.05] {
        let bounded = approximating_family_bounded(&f, 1.0, eps).unwrap();
        let sandwiched = approximating_family_cm(&f, &minorant, eps).unwrap();
        for (label, fam) in [("bounded", &bounded), ("sandwiched", &sandwiched)] {
            for (k, member) in fam.family.members().iter().enumerate() {
                for x in 0..f.len() {
                    assert!(
                        member.lower(x) <= f.lower(x),
                        "{label} member {k} exceeds the target at point {x} (eps {eps})"
                    );
                }
            }
            for x in 0..f.len() {
                let sup = fam
                    .family
                    .members()
                    .iter()
                    .map(|m| m.lower(x).get())
                    .fold(f64::NEG_INFINITY, f64::max);
                assert!(
                    sup >= f.lower(x).get() - eps,
                    "{label} family max {sup} at point {x} misses the floor \
                     {} - {eps}",
                    f.lower(x)
                );
            }
        }
    }
    let dt = start.elapsed();
    println!(
        "criterion 08 PASS: on the 401-point step both continuous families \
         stay below the target and their pointwise max recovers the lower \
         endpoint within eps at every grid point, eps in {{0.1, 0.05}} ({dt:?})"
    );
}

#[test]
fn criterion_09_envelopes_certify_their_invariants() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);

    for _ in 0..10_000 {
        let w = rng.gen_range(-0.999..0.999);
        assert!((h(h_inv(w)) - w).abs() <= 1e-12, "h(h_inv({w})) drifts");
    }

    for case in 0..50 {
        let space = if rng.gen_bool(0.5) {
            let n = rng.gen_range(40..=2000);
            let b = rng.gen_range(1.0..10.0);
            Space::metric(SampledMetricSpace::grid1d(-b, b, n).unwrap())
        } else {
            let nx = rng.gen_range(5..=44);
            let ny = rng.gen_range(5..=44);
            let metric = if rng.gen_bool(0.5) {
                Metric::Euclidean
            } else {
                Metric::Manhattan
            };
            let b = rng.gen_range(1.0..5.0);
            Space::metric(SampledMetricSpace::grid2d(-b, b, nx, 0.0, b, ny, metric).unwrap())
        };
        let n = space.len();
        let values: Vec<Interval> = (0..n)
            .map(|_| {
                let lo: f64 = rng.gen_range(-20.0..20.0);
                let width: f64 = if rng.gen_bool(0.3) {
                    rng.gen_range(0.0..10.0)
                } else {
                    0.0
                };
                iv(lo, lo + width)
            })
            .collect();
        let f = IntervalFunction::new(space.clone(), values).unwrap();
        let s = space.as_metric().unwrap();

        let minorant = envelope::continuous_minorant(&f).unwrap();
        let majorant = envelope::continuous_majorant(&f).unwrap();
        for x in 0..n {
            assert!(
                minorant.envelope.lower(x) <= f.lower(x),
                "minorant above the function at {x} (case {case})"
            );
            assert!(
                majorant.envelope.lower(x) >= f.upper(x),
                "majorant below the function at {x} (case {case})"
            );
            let p = minorant.psi.lower(x).get();
            assert!(p > -1.0 && p < 1.0, "psi out of (-1,1) at {x}");
            assert!(p <= h(f.lower(x).get()), "psi above h(lower) at {x}");
            let q = majorant.psi.lower(x).get();
            assert!(q > -1.0 && q < 1.0, "dual psi out of (-1,1) at {x}");
            assert!(q >= h(f.upper(x).get()), "dual psi below h(upper) at {x}");
        }
        for _ in 0..10_000 {
            let x = rng.gen_range(0..n);
            let y = rng.gen_range(0..n);
            let d = s.distance(x, y);
            let dp = (minorant.psi.lower(x).get() - minorant.psi.lower(y).get()).abs();
            assert!(dp <= d + 1e-12, "psi not 1-Lipschitz: {dp} over {d}");
            let dq = (majorant.psi.lower(x).get() - majorant.psi.lower(y).get()).abs();
            assert!(dq <= d + 1e-12, "dual psi not 1-Lipschitz: {dq} over {d}");
        }
    }
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 30.0, "budget 30 s exceeded: {dt:?}");
    println!(
        "criterion 09 PASS: on 50 random grids the minorant/majorant bound the \
         function, psi is 1-Lipschitz on 10^4 random pairs each, psi stays \
         inside (-1,1) against h of the endpoints, and h o h_inv is the \
         identity to 1e-12 ({dt:?})"
    );
}

#[test]
fn criterion_10_refinement_studies_recover_the_closed_forms() {
    let start = Instant::now();
    let step = convergence::run_convergence_study("step", &[101, 201, 401]).unwrap();
    for row in &step.rows {
        assert_eq!(
            row.max_dev_stencil_exact, 0.0,
            "step drifts at plateau points"
        );
        assert_eq!(row.locus_points.len(), 1, "step jump sampled once");
        assert_eq!(row.locus_values, vec![iv(-1.0, 1.0)]);
        assert_eq!(row.max_dev_locus, 0.0);
        assert_eq!(
            row.max_dev_transitional, 2.0,
            "stencil smear is one jump wide"
        );
    }
    assert!(step.deviations_non_increasing());

    let shock = convergence::run_convergence_study("shock", &[41, 81, 161]).unwrap();
    for row in &shock.rows {
        assert_eq!(
            row.max_dev_stencil_exact, 0.0,
            "shock drifts at plateau points"
        );
        assert!(!row.locus_points.is_empty(), "no sampled locus point");
        assert_eq!(row.locus_values, vec![iv(0.0, 1.0)]);
        assert_eq!(row.max_dev_locus, 0.0);
        assert!(row.max_dev_transitional <= 1.0);
    }
    assert!(shock.deviations_non_increasing());
    let dt = start.elapsed();
    println!(
        "criterion 10 PASS: refining grids keep plateau points exact, report \
         [-1,1] at the step jump and [0,1] on the sampled shock locus, with \
         non-increasing deviations ({dt:?})"
    );
}

#[test]
fn criterion_11_plot_exposes_the_sampled_shock_line() {
    let start = Instant::now();
    let space = Space::metric(
        SampledMetricSpace::grid2d(-1.0, 1.0, 81, 0.0, 2.0, 81, Metric::Euclidean).unwrap(),
    );
    let f = hcont::funcs::make_example("shock", &space).unwrap();
    let csv = plot::csv_string(&f).unwrap();

    let mut from_plot: Vec<(f64, f64)> = Vec::new();
    for line in csv.lines().skip(1) {
        let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let [x, y, lo, hi] = cells[..] else {
            panic!("bad row {line}")
        };
        if lo != hi {
            assert_eq!((lo, hi), (0.0, 1.0), "locus value is the unit interval");
            from_plot.push((x, y));
        }
    }

    let s = space.as_metric().unwrap();
    let Coords::Two(cs) = s.coords() else {
        panic!("2D grid expected")
    };
    let from_closed_form: Vec<(f64, f64)> = cs
        .iter()
        .filter(|&&[x, t]| t >= 1.0 && x == (t - 1.0) / 2.0)
        .map(|&[x, t]| (x, t))
        .collect();

    assert!(!from_closed_form.is_empty());
    assert_eq!(from_plot, from_closed_form, "plotted locus differs");
    for &(x, t) in &from_plot {
        assert!(x >= 0.0);
        assert_eq!(t, 1.0 + 2.0 * x, "locus leaves the line t = 1 + 2x");
    }
    let dt = start.elapsed();
    println!(
        "criterion 11 PASS: the plotted interval-valued locus equals the \
         sampled half-line x = (t-1)/2, t >= 1 — the line t = 1 + 2x — with \
         {} points ({dt:?})",
        from_plot.len()
    );
}
