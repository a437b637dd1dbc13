//! Interval-valued functions on a space, and finite families of them.
//!
//! An [`IntervalFunction`] assigns a closed interval `[lo(x), hi(x)]` of
//! extended reals to every point of its space. The pointwise extensions of
//! the two interval relations drive everything downstream: [`IntervalFunction::leq`]
//! (componentwise order, the lattice order) and [`IntervalFunction::subset`]
//! (pointwise containment, the order graph completion works against).
//!
//! The module also carries the builtin example catalog ([`make_example`]):
//! closed-form functions whose discontinuity loci are known exactly, used by
//! the convergence studies and the plotting output. Locus membership is an
//! exact coordinate match (tolerance zero): a grid either hits the locus or
//! it does not, which keeps sampling deterministic.

use std::sync::Arc;

use crate::error::Error;
use crate::extreal::{ExtReal, Interval};
use crate::space::{Coords, Space};
use crate::Result;

/// An interval-valued function: one closed interval per point of the space.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalFunction {
    space: Arc<Space>,
    values: Vec<Interval>,
}

impl IntervalFunction {
    pub fn new(space: Arc<Space>, values: Vec<Interval>) -> Result<IntervalFunction> {
        if values.len() != space.len() {
            return Err(Error::WrongValueCount {
                expected: space.len(),
                got: values.len(),
            });
        }
        Ok(IntervalFunction { space, values })
    }

    /// The constant function with the given value everywhere.
    pub fn constant(space: Arc<Space>, value: Interval) -> IntervalFunction {
        let values = vec![value; space.len()];
        IntervalFunction { space, values }
    }

    /// Builds a point-valued function from scalar values.
    pub fn from_points(space: Arc<Space>, points: Vec<ExtReal>) -> Result<IntervalFunction> {
        let values = points.into_iter().map(Interval::point).collect();
        IntervalFunction::new(space, values)
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // spaces have at least one point
    }

    pub fn values(&self) -> &[Interval] {
        &self.values
    }

    pub fn value(&self, i: usize) -> Interval {
        self.values[i]
    }

    pub fn lower(&self, i: usize) -> ExtReal {
        self.values[i].lo()
    }

    pub fn upper(&self, i: usize) -> ExtReal {
        self.values[i].hi()
    }

    /// Lower endpoints as a vector (the `f̲` selection, point by point).
    pub fn lower_values(&self) -> Vec<ExtReal> {
        self.values.iter().map(|v| v.lo()).collect()
    }

    /// Upper endpoints as a vector.
    pub fn upper_values(&self) -> Vec<ExtReal> {
        self.values.iter().map(|v| v.hi()).collect()
    }

    /// The point-valued function of lower endpoints.
    pub fn lower_selection(&self) -> IntervalFunction {
        IntervalFunction {
            space: self.space.clone(),
            values: self
                .values
                .iter()
                .map(|v| Interval::point(v.lo()))
                .collect(),
        }
    }

    /// The point-valued function of upper endpoints.
    pub fn upper_selection(&self) -> IntervalFunction {
        IntervalFunction {
            space: self.space.clone(),
            values: self
                .values
                .iter()
                .map(|v| Interval::point(v.hi()))
                .collect(),
        }
    }

    /// True iff two functions live on the same space. Arc identity is taken
    /// as a fast path; otherwise the spaces are compared structurally.
    pub fn same_space(&self, other: &IntervalFunction) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || *self.space == *other.space
    }

    pub(crate) fn require_same_space(&self, other: &IntervalFunction) -> Result<()> {
        if self.same_space(other) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    /// First point where the function is genuinely interval-valued, if any.
    pub fn first_interval_point(&self) -> Option<usize> {
        self.values.iter().position(|v| !v.is_point())
    }

    pub fn is_point_valued(&self) -> bool {
        self.first_interval_point().is_none()
    }

    /// All points where the function is interval-valued — for the builtin
    /// examples, exactly the sampled discontinuity locus.
    pub fn interval_valued_points(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| !self.values[i].is_point())
            .collect()
    }

    /// Pointwise componentwise order: `self(x) <= other(x)` at every point.
    pub fn leq(&self, other: &IntervalFunction) -> Result<bool> {
        self.require_same_space(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .all(|(a, b)| a.leq(*b)))
    }

    /// Pointwise containment: `self(x)` inside `other(x)` at every point.
    pub fn subset(&self, other: &IntervalFunction) -> Result<bool> {
        self.require_same_space(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .all(|(a, b)| a.subset(*b)))
    }

    /// First point where `self(x) <= other(x)` fails, for witness reporting.
    pub fn first_leq_violation(&self, other: &IntervalFunction) -> Result<Option<usize>> {
        self.require_same_space(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .position(|(a, b)| !a.leq(*b)))
    }

    /// Order dual: `(-f)(x) = [-hi(x), -lo(x)]`. Satisfies
    /// `f <= g  iff  -g <= -f`, which turns every supremum statement into the
    /// corresponding infimum statement.
    pub fn negate(&self) -> IntervalFunction {
        let values = self
            .values
            .iter()
            .map(|v| {
                Interval::new(
                    ExtReal::new(-v.hi().get()).unwrap(),
                    ExtReal::new(-v.lo().get()).unwrap(),
                )
                .unwrap()
            })
            .collect();
        IntervalFunction {
            space: self.space.clone(),
            values,
        }
    }

    /// Global range: `(min lo, max hi)` over all points.
    pub fn bounds(&self) -> (ExtReal, ExtReal) {
        let lo = self.values.iter().map(|v| v.lo()).min().unwrap();
        let hi = self.values.iter().map(|v| v.hi()).max().unwrap();
        (lo, hi)
    }
}

/// A non-empty finite family of interval functions on one shared space.
#[derive(Debug, Clone)]
pub struct FunctionFamily {
    members: Vec<IntervalFunction>,
}

impl FunctionFamily {
    pub fn new(members: Vec<IntervalFunction>) -> Result<FunctionFamily> {
        let first = members.first().ok_or(Error::EmptyFamily)?;
        for m in &members[1..] {
            first.require_same_space(m)?;
        }
        Ok(FunctionFamily { members })
    }

    pub fn members(&self) -> &[IntervalFunction] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn space(&self) -> &Arc<Space> {
        self.members[0].space()
    }
}

// ---------------------------------------------------------------------------
// Builtin example catalog.
// ---------------------------------------------------------------------------

fn point(v: f64) -> Interval {
    Interval::point(ExtReal::new(v).expect("finite example value"))
}

fn step_value(x: f64) -> Interval {
    if x > 0.0 {
        point(1.0)
    } else if x < 0.0 {
        point(-1.0)
    } else {
        Interval::new(ExtReal::new(-1.0).unwrap(), ExtReal::new(1.0).unwrap()).unwrap()
    }
}

/// Oscillation `sign(sin(1/|x|))` with the jump pair `[-1, 1]` at every sign
/// change and at the origin, where every neighborhood oscillates through both
/// values.
fn sin_reciprocal_value(x: f64, y: f64) -> Interval {
    let r = x.hypot(y);
    if r == 0.0 {
        return step_value(0.0);
    }
    step_value((1.0 / r).sin())
}

/// Piecewise shock profile on `(x, t)`, `t >= 0`: a ramp from 1 down to 0
/// over `t - 1 <= x <= 0` while `t < 1`, which sharpens into a jump along
/// the half-line `x = (t-1)/2, t >= 1`. On the jump locus the value is the
/// interval `[0, 1]` spanned by the one-sided limits.
fn shock_value(x: f64, t: f64) -> Interval {
    if t < 1.0 {
        if x <= t - 1.0 {
            point(1.0)
        } else if x >= 0.0 {
            point(0.0)
        } else {
            point(x / (t - 1.0))
        }
    } else {
        let m = (t - 1.0) / 2.0;
        if x < m {
            point(1.0)
        } else if x > m {
            point(0.0)
        } else {
            Interval::new(ExtReal::ZERO, ExtReal::new(1.0).unwrap()).unwrap()
        }
    }
}

/// Builds a builtin example on the given space.
///
/// Catalog: `step` (1D), `sin-reciprocal` (2D), `shock` (2D over `(x, t)`
/// with `t >= 0`), and `constant:c` for any finite real `c` (any backend).
pub fn make_example(name: &str, space: &Arc<Space>) -> Result<IntervalFunction> {
    if let Some(c) = name.strip_prefix("constant:") {
        let c: f64 = c
            .parse()
            .map_err(|_| Error::UnknownExample(name.to_string()))?;
        if !c.is_finite() {
            return Err(Error::UnknownExample(name.to_string()));
        }
        return Ok(IntervalFunction::constant(space.clone(), point(c)));
    }

    let metric = |example: &str| -> Result<&crate::space::SampledMetricSpace> {
        space.as_metric().ok_or_else(|| Error::DimensionMismatch {
            example: example.to_string(),
            detail: "defined on sampled metric spaces only".to_string(),
        })
    };

    match name {
        "step" => {
            let s = metric("step")?;
            match s.coords() {
                Coords::One(xs) => Ok(IntervalFunction {
                    space: space.clone(),
                    values: xs.iter().map(|&x| step_value(x)).collect(),
                }),
                Coords::Two(_) => Err(Error::DimensionMismatch {
                    example: "step".into(),
                    detail: "needs a 1D space".into(),
                }),
            }
        }
        "sin-reciprocal" => {
            let s = metric("sin-reciprocal")?;
            match s.coords() {
                Coords::Two(cs) => Ok(IntervalFunction {
                    space: space.clone(),
                    values: cs
                        .iter()
                        .map(|&[x, y]| sin_reciprocal_value(x, y))
                        .collect(),
                }),
                Coords::One(_) => Err(Error::DimensionMismatch {
                    example: "sin-reciprocal".into(),
                    detail: "needs a 2D space".into(),
                }),
            }
        }
        "shock" => {
            let s = metric("shock")?;
            match s.coords() {
                Coords::Two(cs) => {
                    if let Some(c) = cs.iter().find(|c| c[1] < 0.0) {
                        return Err(Error::DimensionMismatch {
                            example: "shock".into(),
                            detail: format!(
                                "defined for t >= 0 only; space has a point with t = {}",
                                c[1]
                            ),
                        });
                    }
                    Ok(IntervalFunction {
                        space: space.clone(),
                        values: cs.iter().map(|&[x, t]| shock_value(x, t)).collect(),
                    })
                }
                Coords::One(_) => Err(Error::DimensionMismatch {
                    example: "shock".into(),
                    detail: "needs a 2D space over (x, t)".into(),
                }),
            }
        }
        _ => Err(Error::UnknownExample(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{FiniteTopology, Metric, PointSet, SampledMetricSpace};

    fn xr(v: f64) -> ExtReal {
        ExtReal::new(v).unwrap()
    }

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(xr(lo), xr(hi)).unwrap()
    }

    fn grid(n: usize) -> Arc<Space> {
        Space::metric(SampledMetricSpace::grid1d(-1.0, 1.0, n).unwrap())
    }

    #[test]
    fn value_count_must_match_space() {
        let s = grid(5);
        assert!(matches!(
            IntervalFunction::new(s, vec![iv(0.0, 1.0); 4]),
            Err(Error::WrongValueCount {
                expected: 5,
                got: 4
            })
        ));
    }

    #[test]
    fn pointwise_order_and_containment() {
        let s = grid(3);
        let f = IntervalFunction::new(s.clone(), vec![iv(0.0, 1.0); 3]).unwrap();
        let g = IntervalFunction::new(s.clone(), vec![iv(0.0, 2.0); 3]).unwrap();
        let h = IntervalFunction::new(s.clone(), vec![iv(-1.0, 2.0); 3]).unwrap();
        assert!(f.leq(&g).unwrap());
        assert!(!g.leq(&f).unwrap());
        assert!(f.subset(&h).unwrap());
        assert!(!h.subset(&f).unwrap());

        let other = grid(4);
        let k = IntervalFunction::new(other, vec![iv(0.0, 1.0); 4]).unwrap();
        assert!(matches!(f.leq(&k), Err(Error::SpaceMismatch)));
        assert!(matches!(f.subset(&k), Err(Error::SpaceMismatch)));
    }

    #[test]
    fn step_values_on_a_grid_containing_zero() {
        let s = grid(5); // -1, -0.5, 0, 0.5, 1
        let f = make_example("step", &s).unwrap();
        assert_eq!(
            f.values(),
            &[
                iv(-1.0, -1.0),
                iv(-1.0, -1.0),
                iv(-1.0, 1.0),
                iv(1.0, 1.0),
                iv(1.0, 1.0)
            ]
        );
        assert_eq!(f.interval_valued_points(), vec![2]);
        assert_eq!(f.bounds(), (xr(-1.0), xr(1.0)));
    }

    #[test]
    fn step_off_locus_grid_is_point_valued() {
        // 4 points: -1, -1/3, 1/3, 1 — zero is not sampled
        let s = grid(4);
        let f = make_example("step", &s).unwrap();
        assert!(f.is_point_valued());
    }

    #[test]
    fn sin_reciprocal_at_origin() {
        let s = Space::metric(
            SampledMetricSpace::grid2d(-1.0, 1.0, 3, -1.0, 1.0, 3, Metric::Euclidean).unwrap(),
        );
        let f = make_example("sin-reciprocal", &s).unwrap();
        // origin is index 4 (center of the 3x3 grid)
        assert_eq!(f.value(4), iv(-1.0, 1.0));
    }

    #[test]
    fn shock_branch_values() {
        // grid over x in [-1, 1], t in [0, 2], 9x9: includes (-0.5, 0.5),
        // the locus point (0, 1), and off-locus points on both sides.
        let s = Space::metric(
            SampledMetricSpace::grid2d(-1.0, 1.0, 9, 0.0, 2.0, 9, Metric::Euclidean).unwrap(),
        );
        let f = make_example("shock", &s).unwrap();
        let idx = |ix: usize, iy: usize| iy * 9 + ix;
        // (x, t) = (-0.5, 0.5): on the ramp edge, x = t - 1, value 1
        assert_eq!(f.value(idx(2, 2)), iv(1.0, 1.0));
        // (x, t) = (-0.25, 0.5): ramp interior, x/(t-1) = 0.5
        assert_eq!(f.value(idx(3, 2)), iv(0.5, 0.5));
        // (x, t) = (0.25, 0.5): right of the ramp, value 0
        assert_eq!(f.value(idx(5, 2)), iv(0.0, 0.0));
        // (x, t) = (0, 1): start of the shock locus, interval [0, 1]
        assert_eq!(f.value(idx(4, 4)), iv(0.0, 1.0));
        // (x, t) = (0.5, 2): on the locus x = (t-1)/2
        assert_eq!(f.value(idx(6, 8)), iv(0.0, 1.0));
        // (x, t) = (-0.5, 2): left of the locus, value 1
        assert_eq!(f.value(idx(2, 8)), iv(1.0, 1.0));
        // the sampled locus is exactly where the function is interval-valued
        for &i in &f.interval_valued_points() {
            assert_eq!(f.value(i), iv(0.0, 1.0));
        }
    }

    #[test]
    fn shock_rejects_negative_time() {
        let s = Space::metric(
            SampledMetricSpace::grid2d(-1.0, 1.0, 3, -1.0, 1.0, 3, Metric::Euclidean).unwrap(),
        );
        assert!(matches!(
            make_example("shock", &s),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn constant_and_unknown_examples() {
        let s = grid(3);
        let f = make_example("constant:2.5", &s).unwrap();
        assert_eq!(f.values(), &[iv(2.5, 2.5); 3]);
        assert!(matches!(
            make_example("constant:oops", &s),
            Err(Error::UnknownExample(_))
        ));
        assert!(matches!(
            make_example("bogus", &s),
            Err(Error::UnknownExample(_))
        ));
        // dimension mismatches
        assert!(matches!(
            make_example("sin-reciprocal", &s),
            Err(Error::DimensionMismatch { .. })
        ));
        let fin = Space::finite(
            FiniteTopology::from_sets(2, vec![PointSet::EMPTY, PointSet::full(2)]).unwrap(),
        );
        assert!(matches!(
            make_example("step", &fin),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn negation_reverses_the_order() {
        let s = grid(3);
        let f = IntervalFunction::new(s.clone(), vec![iv(0.0, 1.0); 3]).unwrap();
        let g = IntervalFunction::new(s.clone(), vec![iv(0.5, 2.0); 3]).unwrap();
        assert!(f.leq(&g).unwrap());
        assert!(g.negate().leq(&f.negate()).unwrap());
        assert_eq!(f.negate().negate(), f);
        // infinities negate cleanly
        let h = IntervalFunction::constant(s, Interval::point(ExtReal::NEG_INFINITY));
        assert_eq!(h.negate().value(0), Interval::point(ExtReal::INFINITY));
    }

    #[test]
    fn family_construction() {
        let s = grid(3);
        let f = IntervalFunction::new(s.clone(), vec![iv(0.0, 1.0); 3]).unwrap();
        assert!(matches!(
            FunctionFamily::new(vec![]),
            Err(Error::EmptyFamily)
        ));
        let fam = FunctionFamily::new(vec![f.clone(), f.clone()]).unwrap();
        assert_eq!(fam.len(), 2);
        let other = grid(4);
        let k = IntervalFunction::new(other, vec![iv(0.0, 1.0); 4]).unwrap();
        assert!(matches!(
            FunctionFamily::new(vec![f, k]),
            Err(Error::SpaceMismatch)
        ));
    }
}
