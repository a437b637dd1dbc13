//! The lower and upper Baire operators and graph completion.
//!
//! For an interval-valued `f = [f_lo, f_hi]` and a point `x` with
//! neighborhood filter `V_x`,
//!
//! ```text
//! I(f)(x) = sup_{V in V_x}  inf { z in f(y) : y in V }
//! S(f)(x) = inf_{V in V_x}  sup { z in f(y) : y in V }
//! ```
//!
//! Only one endpoint ever matters: `I(f) = I(f_lo)` and `S(f) = S(f_hi)`.
//! The graph completion brackets a function between its two envelopes,
//! `F(f) = [I(f), S(f)]`.
//!
//! Backends:
//!
//! * **exact** (finite topology): the sup/inf over the filter is attained on
//!   the minimal open set containing `x`, so `I(f)(x)` is a plain `min` over
//!   that set. All operator laws (idempotency, monotonicity, the
//!   semicontinuity fixed-point characterisations) hold *exactly*.
//! * **sampled** (metric): neighborhoods become balls from the radius
//!   schedule. By ball monotonicity the sup over the schedule of the ball
//!   minimum is attained at the finest radius, so one stencil pass at that
//!   radius suffices. These are honest morphological envelopes, not the
//!   topological limits: iterating them keeps spreading by one stencil
//!   radius, so idempotency holds only on the exact backend.

use crate::error::Error;
use crate::extreal::{ExtReal, Interval};
use crate::funcs::IntervalFunction;
use crate::report::{CheckReport, Witness};
use crate::space::Space;
use crate::Result;

/// An operator application together with how it was evaluated.
#[derive(Debug, Clone)]
pub struct OperatorResult {
    pub output: IntervalFunction,
    /// `"exact"` or `"sampled"`.
    pub backend: &'static str,
    /// The ball radius the stencil ran at; `None` on the exact backend.
    pub radius_used: Option<f64>,
}

impl OperatorResult {
    fn wrap(output: IntervalFunction) -> OperatorResult {
        let (backend, radius_used) = match output.space().as_ref() {
            Space::Finite(_) => ("exact", None),
            Space::Metric(s) => ("sampled", Some(s.finest_radius())),
        };
        OperatorResult {
            output,
            backend,
            radius_used,
        }
    }
}

/// Lower semicontinuous envelope of a scalar field: `I` applied to the
/// point-valued function given by `values`.
pub(crate) fn lsc_envelope(space: &Space, values: &[ExtReal]) -> Result<Vec<ExtReal>> {
    extremal_envelope(space, values, true)
}

/// Upper semicontinuous envelope: `S` on a scalar field.
pub(crate) fn usc_envelope(space: &Space, values: &[ExtReal]) -> Result<Vec<ExtReal>> {
    extremal_envelope(space, values, false)
}

fn extremal_envelope(space: &Space, values: &[ExtReal], take_min: bool) -> Result<Vec<ExtReal>> {
    let pick = |acc: ExtReal, v: ExtReal| if take_min { acc.min(v) } else { acc.max(v) };
    match space {
        Space::Finite(t) => {
            let mut out = Vec::with_capacity(values.len());
            for x in 0..values.len() {
                let nbhd = t.minimal_neighborhood(x)?;
                let mut acc = values[x];
                for y in nbhd.iter() {
                    acc = pick(acc, values[y]);
                }
                out.push(acc);
            }
            Ok(out)
        }
        Space::Metric(s) => {
            // The sup over the schedule of ball minima is attained at the
            // finest radius (smaller ball, larger minimum), and dually for
            // maxima, so a single pass at the finest radius is exact.
            let r = s.finest_radius();
            let mut out = Vec::with_capacity(values.len());
            for x in 0..values.len() {
                let mut acc = values[x];
                s.scan_ball(x, r, |y| acc = pick(acc, values[y]));
                out.push(acc);
            }
            Ok(out)
        }
    }
}

/// `I(f)`: the lower Baire operator. Point-valued output.
pub fn lower_baire(f: &IntervalFunction) -> Result<OperatorResult> {
    let env = lsc_envelope(f.space(), &f.lower_values())?;
    let out = IntervalFunction::from_points(f.space().clone(), env)?;
    Ok(OperatorResult::wrap(out))
}

/// `S(f)`: the upper Baire operator. Point-valued output.
pub fn upper_baire(f: &IntervalFunction) -> Result<OperatorResult> {
    let env = usc_envelope(f.space(), &f.upper_values())?;
    let out = IntervalFunction::from_points(f.space().clone(), env)?;
    Ok(OperatorResult::wrap(out))
}

/// `F(f) = [I(f), S(f)]`: the graph completion.
pub fn graph_completion(f: &IntervalFunction) -> Result<OperatorResult> {
    let lo = lsc_envelope(f.space(), &f.lower_values())?;
    let hi = usc_envelope(f.space(), &f.upper_values())?;
    let values = lo
        .into_iter()
        .zip(hi)
        .map(|(l, h)| Interval::new(l, h).expect("I(f) <= S(f): both scans include x itself"))
        .collect();
    let out = IntervalFunction::new(f.space().clone(), values)?;
    Ok(OperatorResult::wrap(out))
}

fn semicontinuity_check(f: &IntervalFunction, lower: bool) -> Result<CheckReport> {
    if let Some(p) = f.first_interval_point() {
        return Err(Error::NotPointValued { point: p });
    }
    let values = f.lower_values(); // == upper_values: f is point-valued
    let env = if lower {
        lsc_envelope(f.space(), &values)?
    } else {
        usc_envelope(f.space(), &values)?
    };
    let (name, op) = if lower { ("lsc", "I") } else { ("usc", "S") };
    let mut failures = Vec::new();
    for (x, (&e, &v)) in env.iter().zip(&values).enumerate() {
        if e != v {
            failures.push(Witness::at(
                x,
                format!(
                    "{op}(f)({label}) = {e} but f({label}) = {v}",
                    label = f.space().point_label(x)
                ),
            ));
        }
    }
    let check = match f.space().as_ref() {
        Space::Finite(_) => name.to_string(),
        Space::Metric(s) => format!("{name} (ball radius {})", s.finest_radius()),
    };
    Ok(CheckReport::new(check, failures))
}

/// Is the point-valued `f` a fixed point of `I` (lower semicontinuous)?
pub fn is_lower_semicontinuous(f: &IntervalFunction) -> Result<CheckReport> {
    semicontinuity_check(f, true)
}

/// Is the point-valued `f` a fixed point of `S` (upper semicontinuous)?
pub fn is_upper_semicontinuous(f: &IntervalFunction) -> Result<CheckReport> {
    semicontinuity_check(f, false)
}
