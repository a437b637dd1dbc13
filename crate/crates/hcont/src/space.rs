//! The two space backends every operator runs on.
//!
//! * [`FiniteTopology`]: an explicit topology on at most 64 named points.
//!   Here the Baire operators are *exact*: the supremum over neighborhoods
//!   of a point `x` is always attained on the minimal open set containing
//!   `x` (the intersection of all opens through `x`), so every operator
//!   reduces to a scan of that set.
//! * [`SampledMetricSpace`]: finitely many points of a metric space (a 1D/2D
//!   grid or an explicit cloud) with a strictly decreasing schedule of ball
//!   radii standing in for the neighborhood filter. Operators on this
//!   backend are ball stencils; they approximate the true topological
//!   operators and converge to them under grid refinement.
//!
//! Default radius schedule for a grid of spacing `d`: `(8d, 4d, 2d, 1.5d)`.
//! The finest radius is deliberately `1.5d`, not `d`: a ball of radius
//! exactly `d` flickers between including and excluding equidistant
//! neighbors under floating-point rounding of the coordinates.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::report::{CheckReport, Witness};
use crate::Result;

/// A set of point indices, stored as a 64-bit mask. Finite topologies are
/// capped at [`PointSet::MAX_POINTS`] points, which is far beyond what the
/// exhaustive oracles can enumerate anyway.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    bits: u64,
}

impl PointSet {
    pub const MAX_POINTS: usize = 64;
    pub const EMPTY: PointSet = PointSet { bits: 0 };

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> PointSet {
        debug_assert!((1..=Self::MAX_POINTS).contains(&n));
        PointSet {
            bits: u64::MAX >> (64 - n),
        }
    }

    pub fn singleton(i: usize) -> PointSet {
        debug_assert!(i < Self::MAX_POINTS);
        PointSet { bits: 1 << i }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> PointSet {
        let mut s = PointSet::EMPTY;
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < Self::MAX_POINTS);
        self.bits |= 1 << i;
    }

    pub fn contains(self, i: usize) -> bool {
        i < Self::MAX_POINTS && self.bits & (1 << i) != 0
    }

    pub fn union(self, other: PointSet) -> PointSet {
        PointSet {
            bits: self.bits | other.bits,
        }
    }

    pub fn inter(self, other: PointSet) -> PointSet {
        PointSet {
            bits: self.bits & other.bits,
        }
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// An explicit topology: named points plus the list of open sets.
///
/// Construction only checks shape (point cap, index range); whether the
/// family of opens actually *is* a topology is the job of
/// [`FiniteTopology::validate`], so that invalid candidates can be
/// represented and reported on. Operators assume a valid topology.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteTopology {
    names: Vec<String>,
    /// Deduplicated and sorted by mask, so equal topologies compare equal.
    opens: Vec<PointSet>,
}

impl FiniteTopology {
    pub fn new(names: Vec<String>, opens: Vec<PointSet>) -> Result<FiniteTopology> {
        if names.is_empty() {
            return Err(Error::EmptySpace);
        }
        if names.len() > PointSet::MAX_POINTS {
            return Err(Error::TooManyPoints {
                got: names.len(),
                max: PointSet::MAX_POINTS,
            });
        }
        let full = PointSet::full(names.len());
        for o in &opens {
            if !o.is_subset(full) {
                return Err(Error::InvalidSpace(format!(
                    "open set {o:?} mentions points beyond the {} declared",
                    names.len()
                )));
            }
        }
        let mut opens = opens;
        opens.sort();
        opens.dedup();
        Ok(FiniteTopology { names, opens })
    }

    /// Convenience constructor with synthesized point names `p0, p1, ..`.
    pub fn from_sets(n: usize, opens: Vec<PointSet>) -> Result<FiniteTopology> {
        let names = (0..n).map(|i| format!("p{i}")).collect();
        FiniteTopology::new(names, opens)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false // constructors reject zero points
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    fn set_to_string(&self, s: PointSet) -> String {
        let mut out = String::from("{");
        for (k, i) in s.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(&self.names[i]);
        }
        out.push('}');
        out
    }

    /// Checks the topology axioms: `{}` and the full set are open, and opens
    /// are closed under pairwise union and intersection. Every missing set is
    /// reported as a witness; the candidate is a topology iff none are found.
    pub fn validate(&self) -> CheckReport {
        let mut failures = Vec::new();
        let full = PointSet::full(self.len());
        if !self.opens.contains(&PointSet::EMPTY) {
            failures.push(Witness::global("empty set is not open"));
        }
        if !self.opens.contains(&full) {
            failures.push(Witness::global(format!(
                "whole space {} is not open",
                self.set_to_string(full)
            )));
        }
        for (i, &a) in self.opens.iter().enumerate() {
            for &b in &self.opens[i + 1..] {
                let u = a.union(b);
                if !self.opens.contains(&u) {
                    failures.push(Witness::global(format!(
                        "union {} of {} and {} is not open",
                        self.set_to_string(u),
                        self.set_to_string(a),
                        self.set_to_string(b)
                    )));
                }
                let v = a.inter(b);
                if !self.opens.contains(&v) {
                    failures.push(Witness::global(format!(
                        "intersection {} of {} and {} is not open",
                        self.set_to_string(v),
                        self.set_to_string(a),
                        self.set_to_string(b)
                    )));
                }
            }
        }
        CheckReport::new("topology", failures)
    }

    /// The minimal open set containing `x`: the intersection of all opens
    /// through `x`. Every neighborhood of `x` contains it, so infima/suprema
    /// over the neighborhood filter of `x` are attained on it.
    pub fn minimal_neighborhood(&self, x: usize) -> Result<PointSet> {
        if x >= self.len() {
            return Err(Error::UnknownPoint {
                point: x,
                len: self.len(),
            });
        }
        let mut m = PointSet::full(self.len());
        let mut found = false;
        for &o in &self.opens {
            if o.contains(x) {
                m = m.inter(o);
                found = true;
            }
        }
        if !found {
            // Only possible when the candidate fails validation (no open
            // covers x); refuse to make up an answer.
            return Err(Error::InvalidSpace(format!(
                "no open set contains point {}",
                self.names[x]
            )));
        }
        Ok(m)
    }

    /// True iff `d` meets every non-empty open set.
    pub fn is_dense(&self, d: PointSet) -> bool {
        self.opens
            .iter()
            .all(|&o| o.is_empty() || !o.inter(d).is_empty())
    }
}

/// Metric on a sampled space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Euclidean,
    Manhattan,
    /// `rho(x, y) = 1` for distinct points: makes every singleton a ball.
    Discrete,
}

/// Point coordinates of a sampled space: one- or two-dimensional.
#[derive(Debug, Clone, PartialEq)]
pub enum Coords {
    One(Vec<f64>),
    Two(Vec<[f64; 2]>),
}

impl Coords {
    pub fn len(&self) -> usize {
        match self {
            Coords::One(v) => v.len(),
            Coords::Two(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        match self {
            Coords::One(_) => 1,
            Coords::Two(_) => 2,
        }
    }
}

/// How a sampled space was built; kept so files round-trip through the same
/// compact description they were written with.
#[derive(Debug, Clone, PartialEq)]
enum SampledSource {
    Grid1d {
        min: f64,
        max: f64,
        n: usize,
    },
    Grid2d {
        xmin: f64,
        xmax: f64,
        nx: usize,
        ymin: f64,
        ymax: f64,
        ny: usize,
    },
    Explicit,
}

/// Finitely many sampled points of a metric space, together with the radius
/// schedule that stands in for the neighborhood filter.
#[derive(Debug, Clone)]
pub struct SampledMetricSpace {
    coords: Coords,
    metric: Metric,
    /// Strictly decreasing positive radii; operators use the last (finest).
    radii: Vec<f64>,
    /// Smallest positive pairwise distance, if the space has two points.
    min_gap: Option<f64>,
    source: SampledSource,
}

// Identity of a sampled space is its points, metric and schedule; how it was
// described on disk does not matter.
impl PartialEq for SampledMetricSpace {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.metric == other.metric && self.radii == other.radii
    }
}

/// A ball scan result: which sampled points lie within `radius` of `center`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: usize,
    pub radius: f64,
    /// Ascending point indices with `rho(center, y) <= radius`.
    pub members: Vec<usize>,
}

fn default_radii(spacing: f64) -> Vec<f64> {
    vec![8.0 * spacing, 4.0 * spacing, 2.0 * spacing, 1.5 * spacing]
}

impl SampledMetricSpace {
    /// Uniform 1D grid of `n >= 2` points on `[min, max]`, Euclidean metric,
    /// default radius schedule derived from the spacing.
    pub fn grid1d(min: f64, max: f64, n: usize) -> Result<SampledMetricSpace> {
        if n < 2 {
            return Err(Error::InvalidSpace(format!(
                "grid1d needs at least 2 points, got {n}"
            )));
        }
        if !min.is_finite() || !max.is_finite() || min >= max {
            return Err(Error::InvalidSpace(format!(
                "grid1d needs finite min < max, got [{min}, {max}]"
            )));
        }
        let step = (max - min) / (n - 1) as f64;
        let coords = (0..n).map(|i| min + i as f64 * step).collect();
        SampledMetricSpace::from_parts(
            Coords::One(coords),
            Metric::Euclidean,
            default_radii(step),
            SampledSource::Grid1d { min, max, n },
        )
    }

    /// Uniform 2D grid, row-major with `x` fastest: the point `(ix, iy)` has
    /// index `iy * nx + ix`. The default schedule uses the *larger* of the
    /// two spacings, so the finest ball always reaches the immediate axis
    /// neighbors in both directions.
    pub fn grid2d(
        xmin: f64,
        xmax: f64,
        nx: usize,
        ymin: f64,
        ymax: f64,
        ny: usize,
        metric: Metric,
    ) -> Result<SampledMetricSpace> {
        if nx < 2 || ny < 2 {
            return Err(Error::InvalidSpace(format!(
                "grid2d needs at least 2 points per axis, got {nx} x {ny}"
            )));
        }
        if !(xmin.is_finite() && xmax.is_finite() && ymin.is_finite() && ymax.is_finite())
            || xmin >= xmax
            || ymin >= ymax
        {
            return Err(Error::InvalidSpace(
                "grid2d needs finite xmin < xmax and ymin < ymax".into(),
            ));
        }
        if nx * ny > 1 << 22 {
            return Err(Error::InvalidSpace(format!(
                "grid2d with {nx} x {ny} points is unreasonably large"
            )));
        }
        let dx = (xmax - xmin) / (nx - 1) as f64;
        let dy = (ymax - ymin) / (ny - 1) as f64;
        let mut coords = Vec::with_capacity(nx * ny);
        for iy in 0..ny {
            for ix in 0..nx {
                coords.push([xmin + ix as f64 * dx, ymin + iy as f64 * dy]);
            }
        }
        SampledMetricSpace::from_parts(
            Coords::Two(coords),
            metric,
            default_radii(dx.max(dy)),
            SampledSource::Grid2d {
                xmin,
                xmax,
                nx,
                ymin,
                ymax,
                ny,
            },
        )
    }

    /// Explicit point cloud with a caller-supplied schedule.
    pub fn explicit(coords: Coords, metric: Metric, radii: Vec<f64>) -> Result<SampledMetricSpace> {
        SampledMetricSpace::from_parts(coords, metric, radii, SampledSource::Explicit)
    }

    /// Replaces the radius schedule, revalidating it against the points.
    pub fn with_radii(&self, radii: Vec<f64>) -> Result<SampledMetricSpace> {
        SampledMetricSpace::from_parts(self.coords.clone(), self.metric, radii, self.source.clone())
    }

    fn from_parts(
        coords: Coords,
        metric: Metric,
        radii: Vec<f64>,
        source: SampledSource,
    ) -> Result<SampledMetricSpace> {
        if coords.is_empty() {
            return Err(Error::EmptySpace);
        }
        match &coords {
            Coords::One(v) => {
                if v.iter().any(|c| !c.is_finite()) {
                    return Err(Error::InvalidSpace("non-finite coordinate".into()));
                }
            }
            Coords::Two(v) => {
                if v.iter().any(|c| !c[0].is_finite() || !c[1].is_finite()) {
                    return Err(Error::InvalidSpace("non-finite coordinate".into()));
                }
            }
        }
        if radii.is_empty() {
            return Err(Error::InvalidSpace("radius schedule is empty".into()));
        }
        if radii.iter().any(|r| !r.is_finite() || *r <= 0.0) {
            return Err(Error::InvalidSpace(
                "radius schedule must be positive and finite".into(),
            ));
        }
        if radii.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidSpace(
                "radius schedule must be strictly decreasing".into(),
            ));
        }

        let mut space = SampledMetricSpace {
            coords,
            metric,
            radii,
            min_gap: None,
            source,
        };
        space.min_gap = space.compute_min_gap()?;
        if let Some(gap) = space.min_gap {
            let finest = *space.radii.last().unwrap();
            if finest < gap {
                return Err(Error::InvalidSpace(format!(
                    "finest radius {finest} is below the minimal point gap {gap}; \
                     every ball would be a singleton and the operators degenerate"
                )));
            }
        }
        Ok(space)
    }

    fn compute_min_gap(&self) -> Result<Option<f64>> {
        let n = self.len();
        if n < 2 {
            return Ok(None);
        }
        // Grids cannot contain duplicates, and their gap is the spacing
        // (Euclidean/Manhattan agree on axis-aligned neighbors).
        match (&self.source, self.metric) {
            (SampledSource::Grid1d { min, max, n }, _) => {
                return Ok(Some((max - min) / (*n - 1) as f64));
            }
            (
                SampledSource::Grid2d {
                    xmin,
                    xmax,
                    nx,
                    ymin,
                    ymax,
                    ny,
                },
                m,
            ) => {
                if m == Metric::Discrete {
                    return Ok(Some(1.0));
                }
                let dx = (xmax - xmin) / (*nx - 1) as f64;
                let dy = (ymax - ymin) / (*ny - 1) as f64;
                return Ok(Some(dx.min(dy)));
            }
            (SampledSource::Explicit, _) => {}
        }
        let mut gap = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                let d = self.distance(i, j);
                if d == 0.0 {
                    // The metric identity axiom fails on duplicates; reject
                    // rather than let "distinct points at distance zero"
                    // corrupt ball scans.
                    return Err(Error::InvalidSpace(format!("points {i} and {j} coincide")));
                }
                gap = gap.min(d);
            }
        }
        Ok(Some(gap))
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    /// The smallest (last) radius of the schedule: the working resolution.
    pub fn finest_radius(&self) -> f64 {
        *self.radii.last().unwrap()
    }

    /// Smallest positive pairwise distance; `None` for a single point.
    pub fn min_gap(&self) -> Option<f64> {
        self.min_gap
    }

    /// Grid dimensions `(nx, ny)` when the space was built as a 2D grid.
    pub fn grid_shape(&self) -> Option<(usize, usize)> {
        match self.source {
            SampledSource::Grid2d { nx, ny, .. } => Some((nx, ny)),
            _ => None,
        }
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        match (&self.coords, self.metric) {
            (_, Metric::Discrete) => {
                if i == j {
                    0.0
                } else {
                    1.0
                }
            }
            (Coords::One(v), _) => (v[i] - v[j]).abs(),
            (Coords::Two(v), Metric::Euclidean) => {
                let dx = v[i][0] - v[j][0];
                let dy = v[i][1] - v[j][1];
                (dx * dx + dy * dy).sqrt()
            }
            (Coords::Two(v), Metric::Manhattan) => {
                (v[i][0] - v[j][0]).abs() + (v[i][1] - v[j][1]).abs()
            }
        }
    }

    /// All sampled points within distance `radius` of `x` (closed ball).
    pub fn ball_points(&self, x: usize, radius: f64) -> Result<Ball> {
        if x >= self.len() {
            return Err(Error::UnknownPoint {
                point: x,
                len: self.len(),
            });
        }
        if radius.is_nan() || radius <= 0.0 {
            return Err(Error::InvalidSpace(format!(
                "ball radius must be positive, got {radius}"
            )));
        }
        let mut members = Vec::new();
        self.scan_ball(x, radius, |y| members.push(y));
        Ok(Ball {
            center: x,
            radius,
            members,
        })
    }

    /// Visits every member of the closed ball around `x` in ascending index
    /// order. Membership is always the exact `distance(x, y) <= radius` test;
    /// grid sources merely skip candidates whose index offset already puts
    /// them strictly outside the ball, so a stencil pass over an `n`-point
    /// grid costs `O(n * ball)` instead of `O(n^2)`.
    pub(crate) fn scan_ball(&self, x: usize, radius: f64, mut visit: impl FnMut(usize)) {
        let n = self.len();
        if self.metric == Metric::Discrete {
            // Every pair of distinct points is at distance exactly 1.
            if radius >= 1.0 {
                (0..n).for_each(visit);
            } else {
                visit(x);
            }
            return;
        }
        match &self.source {
            SampledSource::Grid1d { min, max, n: np } => {
                let step = (max - min) / (*np - 1) as f64;
                let k = index_reach(radius, step, n);
                let lo = x.saturating_sub(k);
                let hi = (x + k).min(n - 1);
                for y in lo..=hi {
                    if self.distance(x, y) <= radius {
                        visit(y);
                    }
                }
            }
            SampledSource::Grid2d {
                xmin,
                xmax,
                nx,
                ymin,
                ymax,
                ny,
            } => {
                let dx = (xmax - xmin) / (*nx - 1) as f64;
                let dy = (ymax - ymin) / (*ny - 1) as f64;
                let kx = index_reach(radius, dx, *nx);
                let ky = index_reach(radius, dy, *ny);
                let (ix, iy) = (x % nx, x / nx);
                for jy in iy.saturating_sub(ky)..=(iy + ky).min(ny - 1) {
                    let row = jy * nx;
                    for jx in ix.saturating_sub(kx)..=(ix + kx).min(nx - 1) {
                        let y = row + jx;
                        if self.distance(x, y) <= radius {
                            visit(y);
                        }
                    }
                }
            }
            SampledSource::Explicit => {
                for y in 0..n {
                    if self.distance(x, y) <= radius {
                        visit(y);
                    }
                }
            }
        }
    }
}

/// How many grid steps an axis-aligned walk can take before the accumulated
/// distance certainly exceeds `radius`. Two slack steps absorb coordinate
/// rounding; both Euclidean and Manhattan distances dominate the per-axis
/// coordinate difference, so skipping farther candidates is sound.
fn index_reach(radius: f64, step: f64, n: usize) -> usize {
    let k = (radius / step).floor() + 2.0;
    if k.is_finite() && k < n as f64 {
        k as usize
    } else {
        n - 1
    }
}

/// A space one of the two backends.
#[derive(Debug, Clone, PartialEq)]
pub enum Space {
    Finite(FiniteTopology),
    Metric(SampledMetricSpace),
}

impl Space {
    pub fn finite(t: FiniteTopology) -> Arc<Space> {
        Arc::new(Space::Finite(t))
    }

    pub fn metric(s: SampledMetricSpace) -> Arc<Space> {
        Arc::new(Space::Metric(s))
    }

    pub fn len(&self) -> usize {
        match self {
            Space::Finite(t) => t.len(),
            Space::Metric(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Backend name as used in reports: `"exact"` or `"sampled"`.
    pub fn backend(&self) -> &'static str {
        match self {
            Space::Finite(_) => "exact",
            Space::Metric(_) => "sampled",
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteTopology> {
        match self {
            Space::Finite(t) => Some(t),
            Space::Metric(_) => None,
        }
    }

    pub fn as_metric(&self) -> Option<&SampledMetricSpace> {
        match self {
            Space::Finite(_) => None,
            Space::Metric(s) => Some(s),
        }
    }

    /// Human-readable label for a point, for witnesses and error messages.
    pub fn point_label(&self, i: usize) -> String {
        match self {
            Space::Finite(t) => t.name(i).to_string(),
            Space::Metric(s) => match s.coords() {
                Coords::One(v) => format!("x={}", v[i]),
                Coords::Two(v) => format!("(x={}, y={})", v[i][0], v[i][1]),
            },
        }
    }
}

// ---------------------------------------------------------------------------
// Wire format. Spaces are written back in the same shape they came from:
// grids stay grids (with the schedule made explicit), explicit clouds use
// the points1d/points2d forms.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum SpaceSpec {
    Finite {
        points: Vec<String>,
        opens: Vec<Vec<String>>,
    },
    Grid1d {
        min: f64,
        max: f64,
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radii: Option<Vec<f64>>,
    },
    Grid2d {
        xmin: f64,
        xmax: f64,
        nx: usize,
        ymin: f64,
        ymax: f64,
        ny: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        metric: Option<Metric>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radii: Option<Vec<f64>>,
    },
    Points1d {
        coords: Vec<f64>,
        metric: Metric,
        radii: Vec<f64>,
    },
    Points2d {
        coords: Vec<[f64; 2]>,
        metric: Metric,
        radii: Vec<f64>,
    },
}

impl Space {
    fn to_spec(&self) -> SpaceSpec {
        match self {
            Space::Finite(t) => SpaceSpec::Finite {
                points: t.names.clone(),
                opens: t
                    .opens
                    .iter()
                    .map(|o| o.iter().map(|i| t.names[i].clone()).collect())
                    .collect(),
            },
            Space::Metric(s) => match (&s.source, &s.coords) {
                (&SampledSource::Grid1d { min, max, n }, _) => SpaceSpec::Grid1d {
                    min,
                    max,
                    n,
                    radii: Some(s.radii.clone()),
                },
                (
                    &SampledSource::Grid2d {
                        xmin,
                        xmax,
                        nx,
                        ymin,
                        ymax,
                        ny,
                    },
                    _,
                ) => SpaceSpec::Grid2d {
                    xmin,
                    xmax,
                    nx,
                    ymin,
                    ymax,
                    ny,
                    metric: Some(s.metric),
                    radii: Some(s.radii.clone()),
                },
                (SampledSource::Explicit, Coords::One(v)) => SpaceSpec::Points1d {
                    coords: v.clone(),
                    metric: s.metric,
                    radii: s.radii.clone(),
                },
                (SampledSource::Explicit, Coords::Two(v)) => SpaceSpec::Points2d {
                    coords: v.clone(),
                    metric: s.metric,
                    radii: s.radii.clone(),
                },
            },
        }
    }

    fn from_spec(spec: SpaceSpec) -> Result<Space> {
        match spec {
            SpaceSpec::Finite { points, opens } => {
                let index_of = |name: &str| -> Result<usize> {
                    points.iter().position(|p| p == name).ok_or_else(|| {
                        Error::InvalidSpace(format!("unknown point '{name}' in opens"))
                    })
                };
                let mut sets = Vec::with_capacity(opens.len());
                for open in &opens {
                    let mut s = PointSet::EMPTY;
                    for name in open {
                        let i = index_of(name)?;
                        if i >= PointSet::MAX_POINTS {
                            return Err(Error::TooManyPoints {
                                got: points.len(),
                                max: PointSet::MAX_POINTS,
                            });
                        }
                        s.insert(i);
                    }
                    sets.push(s);
                }
                {
                    let mut seen = std::collections::HashSet::new();
                    for p in &points {
                        if !seen.insert(p) {
                            return Err(Error::InvalidSpace(format!("duplicate point name '{p}'")));
                        }
                    }
                }
                Ok(Space::Finite(FiniteTopology::new(points, sets)?))
            }
            SpaceSpec::Grid1d { min, max, n, radii } => {
                let g = SampledMetricSpace::grid1d(min, max, n)?;
                let g = match radii {
                    Some(r) => g.with_radii(r)?,
                    None => g,
                };
                Ok(Space::Metric(g))
            }
            SpaceSpec::Grid2d {
                xmin,
                xmax,
                nx,
                ymin,
                ymax,
                ny,
                metric,
                radii,
            } => {
                let g = SampledMetricSpace::grid2d(
                    xmin,
                    xmax,
                    nx,
                    ymin,
                    ymax,
                    ny,
                    metric.unwrap_or(Metric::Euclidean),
                )?;
                let g = match radii {
                    Some(r) => g.with_radii(r)?,
                    None => g,
                };
                Ok(Space::Metric(g))
            }
            SpaceSpec::Points1d {
                coords,
                metric,
                radii,
            } => Ok(Space::Metric(SampledMetricSpace::explicit(
                Coords::One(coords),
                metric,
                radii,
            )?)),
            SpaceSpec::Points2d {
                coords,
                metric,
                radii,
            } => Ok(Space::Metric(SampledMetricSpace::explicit(
                Coords::Two(coords),
                metric,
                radii,
            )?)),
        }
    }
}

impl Serialize for Space {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.to_spec().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Space {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let spec = SpaceSpec::deserialize(deserializer)?;
        Space::from_spec(spec).map_err(serde::de::Error::custom)
    }
}
