//! Hausdorff continuity: tests, regularizations, and the structure theorems.
//!
//! An interval-valued `f` is *Hausdorff continuous* (H-continuous) when every
//! interval function `g` squeezed inside it (`g(x)` inside `f(x)` everywhere)
//! graph-completes back to `f`: `F(g) = f`. Minimality of the graph makes
//! these functions behave like continuous ones — they are determined on dense
//! sets and form a Dedekind complete lattice.
//!
//! Three equivalent criteria are implemented:
//!
//! * **definition**: enumerate every inscribed `g` over a value chain and
//!   check `F(g) = f` (exponential; oracle-grade, finite backend only);
//! * **endpoint completion** (used in tests): `F(f_lo) = F(f_hi) = f`;
//! * **envelope exchange** (the production test): `S(f_lo) = f_hi` and
//!   `I(f_hi) = f_lo`.
//!
//! On the sampled backend the envelope-exchange test runs on ball stencils,
//! so a `true` verdict means *discrete*-H-continuous at the finest schedule
//! radius; the report carries that radius and the CLI prints it.

use serde::Serialize;

use crate::baire::{self, OperatorResult};
use crate::error::Error;
use crate::extreal::{ExtReal, Interval};
use crate::funcs::IntervalFunction;
use crate::report::{CheckReport, Witness};
use crate::space::{PointSet, Space};
use crate::tol;
use crate::Result;

/// Which of the equivalent criteria produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    /// Every inscribed `g` graph-completes to `f` (exhaustive enumeration).
    Definition,
    /// `F(f_lo) = F(f_hi) = f`.
    EndpointCompletion,
    /// `S(f_lo) = f_hi` and `I(f_hi) = f_lo`.
    EnvelopeExchange,
}

/// One pointwise equality violation.
#[derive(Debug, Clone, Serialize)]
pub struct HContFailure {
    pub point: usize,
    /// Which equality broke, e.g. `"S(f_lo) = f_hi"`.
    pub equality: String,
    pub lhs: Interval,
    pub rhs: Interval,
}

/// Verdict of an H-continuity test.
#[derive(Debug, Clone, Serialize)]
pub struct HContReport {
    pub verdict: bool,
    pub criterion: Criterion,
    pub failures: Vec<HContFailure>,
    /// Finest schedule radius, when the test ran on ball stencils. A `true`
    /// verdict with a radius means "discrete-H-continuous at that radius",
    /// never bare H-continuity.
    pub ball_radius: Option<f64>,
}

fn ball_radius_of(space: &Space) -> Option<f64> {
    space.as_metric().map(|s| s.finest_radius())
}

/// The production H-continuity test, via envelope exchange.
pub fn is_h_continuous(f: &IntervalFunction) -> Result<HContReport> {
    let lo = f.lower_values();
    let hi = f.upper_values();
    let s_of_lo = baire::usc_envelope(f.space(), &lo)?;
    let i_of_hi = baire::lsc_envelope(f.space(), &hi)?;

    let mut failures = Vec::new();
    for x in 0..f.len() {
        if s_of_lo[x] != hi[x] {
            failures.push(HContFailure {
                point: x,
                equality: "S(f_lo) = f_hi".into(),
                lhs: Interval::point(s_of_lo[x]),
                rhs: Interval::point(hi[x]),
            });
        }
        if i_of_hi[x] != lo[x] {
            failures.push(HContFailure {
                point: x,
                equality: "I(f_hi) = f_lo".into(),
                lhs: Interval::point(i_of_hi[x]),
                rhs: Interval::point(lo[x]),
            });
        }
    }
    Ok(HContReport {
        verdict: failures.is_empty(),
        criterion: Criterion::EnvelopeExchange,
        failures,
        ball_radius: ball_radius_of(f.space()),
    })
}

/// `F(f_lo) = f` and `F(f_hi) = f`: the endpoint-completion criterion.
/// Exposed so the criterion-equivalence theorem can be machine-checked.
pub fn is_h_continuous_by_endpoint_completion(f: &IntervalFunction) -> Result<HContReport> {
    let mut failures = Vec::new();
    for (selection, tag) in [
        (f.lower_selection(), "F(f_lo) = f"),
        (f.upper_selection(), "F(f_hi) = f"),
    ] {
        let completed = baire::graph_completion(&selection)?.output;
        for x in 0..f.len() {
            if completed.value(x) != f.value(x) {
                failures.push(HContFailure {
                    point: x,
                    equality: tag.into(),
                    lhs: completed.value(x),
                    rhs: f.value(x),
                });
            }
        }
    }
    Ok(HContReport {
        verdict: failures.is_empty(),
        criterion: Criterion::EndpointCompletion,
        failures,
        ball_radius: ball_radius_of(f.space()),
    })
}

/// Enumeration cap for the definition-based test: beyond this many inscribed
/// candidates the test refuses to run rather than hang.
const DEFINITION_CANDIDATE_CAP: u128 = 10_000_000;

/// The literal definition, checked exhaustively: every `g` with endpoints in
/// `chain` and `g(x)` inside `f(x)` must graph-complete to `f`.
///
/// Finite backend only; the endpoints of `f` must themselves lie in `chain`
/// (otherwise the enumeration cannot even represent `g = f_lo`, and the test
/// would be vacuous rather than meaningful).
pub fn is_h_continuous_by_definition(
    f: &IntervalFunction,
    chain: &[ExtReal],
) -> Result<HContReport> {
    if f.space().as_finite().is_none() {
        return Err(Error::WrongBackend {
            op: "definition-based H-continuity",
            needs: "exact (finite topology)",
        });
    }
    let mut chain: Vec<ExtReal> = chain.to_vec();
    chain.sort();
    chain.dedup();
    if chain.is_empty() {
        return Err(Error::EmptyChain);
    }
    for x in 0..f.len() {
        if !chain.contains(&f.lower(x)) || !chain.contains(&f.upper(x)) {
            return Err(Error::NotInChain { point: x });
        }
    }

    // Per point: all chain intervals inscribed in f(x), in lexicographic
    // (lo, hi) order. The enumeration below walks their product in that
    // order, so counterexamples are found deterministically.
    let mut options: Vec<Vec<Interval>> = Vec::with_capacity(f.len());
    for x in 0..f.len() {
        let mut opts = Vec::new();
        for (i, &a) in chain.iter().enumerate() {
            for &b in &chain[i..] {
                let candidate = Interval::new(a, b).expect("chain is sorted");
                if candidate.subset(f.value(x)) {
                    opts.push(candidate);
                }
            }
        }
        debug_assert!(!opts.is_empty(), "f(x) itself is always inscribed");
        options.push(opts);
    }

    let total: u128 = options.iter().map(|o| o.len() as u128).product();
    if total > DEFINITION_CANDIDATE_CAP {
        return Err(Error::BudgetExceeded(format!(
            "{total} inscribed candidates exceed the cap of {DEFINITION_CANDIDATE_CAP}"
        )));
    }

    // Odometer over the per-point options.
    let mut idx = vec![0usize; f.len()];
    loop {
        let g = IntervalFunction::new(
            f.space().clone(),
            idx.iter()
                .enumerate()
                .map(|(x, &i)| options[x][i])
                .collect(),
        )?;
        let completed = baire::graph_completion(&g)?.output;
        if completed != *f {
            let x = (0..f.len())
                .find(|&x| completed.value(x) != f.value(x))
                .expect("some point differs");
            return Ok(HContReport {
                verdict: false,
                criterion: Criterion::Definition,
                failures: vec![HContFailure {
                    point: x,
                    equality: format!("F(g) = f for inscribed g = {:?}", g.values()),
                    lhs: completed.value(x),
                    rhs: f.value(x),
                }],
                ball_radius: None,
            });
        }
        // advance the odometer
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(HContReport {
                    verdict: true,
                    criterion: Criterion::Definition,
                    failures: vec![],
                    ball_radius: None,
                });
            }
            idx[k] += 1;
            if idx[k] < options[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// `F(S(I(f)))`: the lower regularization. Always lands in the
/// H-continuous class on the exact backend.
pub fn regularize_lower(f: &IntervalFunction) -> Result<OperatorResult> {
    let i = baire::lower_baire(f)?.output;
    let si = baire::upper_baire(&i)?.output;
    baire::graph_completion(&si)
}

/// `F(I(S(f)))`: the upper regularization, the order dual.
pub fn regularize_upper(f: &IntervalFunction) -> Result<OperatorResult> {
    let s = baire::upper_baire(f)?.output;
    let is = baire::lower_baire(&s)?.output;
    baire::graph_completion(&is)
}

/// Classification of a point of an H-continuous function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointClass {
    /// `f(a)` is degenerate — equivalently, both endpoint functions are
    /// continuous at `a`.
    PointValued,
    /// `f(a)` is a genuine interval — both endpoints jump at `a`.
    IntervalValued,
}

/// Classifies every point of an H-continuous `f` as degenerate or genuinely
/// interval-valued. The dichotomy theorem makes this the same thing as
/// continuity of the endpoint functions (see [`point_continuity`]); on the
/// sampled backend a width up to the tie tolerance counts as degenerate, so
/// stencil noise is not misread as a jump.
pub fn continuity_classes(f: &IntervalFunction) -> Result<Vec<PointClass>> {
    if !is_h_continuous(f)?.verdict {
        return Err(Error::NotHContinuous {
            op: "continuity classification",
        });
    }
    let exact = f.space().as_finite().is_some();
    Ok(f.values()
        .iter()
        .map(|v| {
            let wide = if exact {
                !v.is_point()
            } else {
                v.width() > tol::WIDTH_TIE
            };
            if wide {
                PointClass::IntervalValued
            } else {
                PointClass::PointValued
            }
        })
        .collect())
}

/// Pointwise continuity of a point-valued function: `x` is a continuity
/// point iff both envelopes agree with the value, `I(g)(x) = g(x) = S(g)(x)`.
pub fn point_continuity(g: &IntervalFunction) -> Result<Vec<bool>> {
    if let Some(p) = g.first_interval_point() {
        return Err(Error::NotPointValued { point: p });
    }
    let values = g.lower_values();
    let i = baire::lsc_envelope(g.space(), &values)?;
    let s = baire::usc_envelope(g.space(), &values)?;
    Ok((0..g.len())
        .map(|x| i[x] == values[x] && s[x] == values[x])
        .collect())
}

/// Rigidity on dense sets: for H-continuous `f <= g` on a dense `d`, the
/// order must hold everywhere. The premise is enforced as a precondition;
/// any pointwise violation found after that falsifies the theorem and is
/// reported as a witness.
///
/// Exact backend only — density is a topological notion.
pub fn dense_agreement(
    f: &IntervalFunction,
    g: &IntervalFunction,
    dense: PointSet,
) -> Result<CheckReport> {
    f.require_same_space(g)?;
    let t = match f.space().as_ref() {
        Space::Finite(t) => t,
        Space::Metric(_) => {
            return Err(Error::WrongBackend {
                op: "dense agreement",
                needs: "exact (finite topology)",
            })
        }
    };
    if !is_h_continuous(f)?.verdict || !is_h_continuous(g)?.verdict {
        return Err(Error::NotHContinuous {
            op: "dense agreement",
        });
    }
    if !t.is_dense(dense) {
        return Err(Error::NotDense);
    }
    for x in dense.iter() {
        if x >= f.len() {
            return Err(Error::UnknownPoint {
                point: x,
                len: f.len(),
            });
        }
        if !f.value(x).leq(g.value(x)) {
            return Err(Error::PremiseFailed { point: x });
        }
    }
    let mut failures = Vec::new();
    for x in 0..f.len() {
        if !f.value(x).leq(g.value(x)) {
            failures.push(Witness::at(
                x,
                format!(
                    "theorem falsified: f({lbl}) = {fv} exceeds g({lbl}) = {gv} \
                     despite f <= g on a dense set",
                    lbl = f.space().point_label(x),
                    fv = f.value(x),
                    gv = g.value(x),
                ),
            ));
        }
    }
    Ok(CheckReport::new("dense-agreement", failures))
}
