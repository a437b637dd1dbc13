//! Constructive approximation on sampled metric spaces: bump functions,
//! the two families of continuous minorants whose supremum recovers a
//! Hausdorff-continuous function from below, and globally continuous
//! minorant/majorant envelopes built through the bounded transform
//! `h(z) = z / (1 + |z|)`.
//!
//! A bump at `x` with radius `r` is `max(0, 1 - rho(x, y)/r)`: value 1 at
//! the center, linear decay, zero outside the ball. For a bounded function
//! (`|f| <= M`) the family member centered at `x` is
//! `(m_x + M) * bump - M`, where `m_x` is the ball minimum of the lower
//! endpoint; it equals `m_x` at the center, `-M` off the support, and stays
//! below `f` everywhere in between. The sandwiched variant replaces the
//! floor `-M` by an arbitrary continuous minorant `phi`:
//! `(m_x - phi(y)) * bump + phi(y)`.
//!
//! The per-center radius is the largest of the schedule for which the ball
//! minimum of the lower endpoint stays above `f_lo(x) - eps`; when even the
//! finest schedule radius fails (the sampled jump sits next door), the ball
//! is shrunk to the singleton `{x}` — the discrete stand-in for a "small
//! enough neighborhood", where the requirement holds with full margin.
//!
//! Envelopes: `psi(x) = min over t of [h(f_lo(t)) + rho(t, x)]` is a
//! 1-Lipschitz function with `-1 < psi <= h(f_lo) < 1` (strict inequalities
//! hold in floating point for values up to about `1/epsilon`); mapping back
//! through `h`'s inverse gives a continuous minorant below `f_lo`
//! everywhere. The majorant is the mirror image built from sup-convolution
//! of the upper endpoint.

use std::sync::Arc;

use crate::error::Error;
use crate::extreal::ExtReal;
use crate::funcs::{FunctionFamily, IntervalFunction};
use crate::space::{Ball, SampledMetricSpace, Space};
use crate::Result;

/// The bounded transform `h(z) = z / (1 + |z|)`: an increasing bijection
/// from the reals onto `(-1, 1)`. Finite input expected.
pub fn h(z: f64) -> f64 {
    z / (1.0 + z.abs())
}

/// Inverse of [`h`]: `w / (1 - |w|)` on the open interval `(-1, 1)`.
pub fn h_inv(w: f64) -> f64 {
    w / (1.0 - w.abs())
}

/// A linear-decay bump: 1 at the center, 0 outside the closed ball.
#[derive(Debug, Clone)]
pub struct BumpFunction {
    pub center: usize,
    /// The closed ball the bump lives on; the profile is positive exactly on
    /// its interior.
    pub support: Ball,
    /// Point-valued profile `max(0, 1 - rho(center, y)/radius)` over the
    /// whole space.
    pub profile: IntervalFunction,
}

fn metric_of<'a>(space: &'a Space, op: &'static str) -> Result<&'a SampledMetricSpace> {
    match space {
        Space::Metric(s) => Ok(s),
        Space::Finite(_) => Err(Error::WrongBackend {
            op,
            needs: "sampled (metric)",
        }),
    }
}

/// Builds the bump at `center` with the given radius.
pub fn make_bump(space: &Arc<Space>, center: usize, radius: f64) -> Result<BumpFunction> {
    let s = metric_of(space, "bump construction")?;
    if center >= s.len() {
        return Err(Error::UnknownPoint {
            point: center,
            len: s.len(),
        });
    }
    if !radius.is_finite() || radius <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "bump radius must be positive and finite, got {radius}"
        )));
    }
    let support = s.ball_points(center, radius)?;
    let profile: Vec<ExtReal> = (0..s.len())
        .map(|y| {
            let t = 1.0 - s.distance(center, y) / radius;
            ExtReal::new(t.max(0.0)).expect("bump profile is finite")
        })
        .collect();
    Ok(BumpFunction {
        center,
        support,
        profile: IntervalFunction::from_points(space.clone(), profile)?,
    })
}

/// One continuous minorant per sampled point, together with the radius each
/// center ended up using. Members are point-valued, ordered by center index,
/// and verified `<= f` before being returned.
#[derive(Debug, Clone)]
pub struct ApproximatingFamily {
    pub family: FunctionFamily,
    /// Radius used by the member centered at each point: a schedule radius,
    /// or half the minimal point gap when the schedule was too coarse.
    pub radii: Vec<f64>,
    pub eps: f64,
}

fn finite_values(f: &IntervalFunction, lower: bool) -> Result<Vec<f64>> {
    (0..f.len())
        .map(|x| {
            let v = if lower { f.lower(x) } else { f.upper(x) };
            if v.is_finite() {
                Ok(v.get())
            } else {
                Err(Error::InfiniteEndpoint { point: x })
            }
        })
        .collect()
}

fn check_eps(eps: f64) -> Result<()> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "eps must be positive and finite, got {eps}"
        )));
    }
    Ok(())
}

/// Largest schedule radius whose ball keeps the minimum of `lows` above
/// `lows[x] - eps`; falls back to a singleton ball when none qualifies.
fn chosen_radius(s: &SampledMetricSpace, lows: &[f64], x: usize, eps: f64) -> f64 {
    let threshold = lows[x] - eps;
    for &r in s.radii() {
        let mut min = f64::INFINITY;
        s.scan_ball(x, r, |y| min = min.min(lows[y]));
        if min > threshold {
            return r;
        }
    }
    match s.min_gap() {
        Some(gap) => 0.5 * gap,
        None => s.finest_radius(),
    }
}

fn ball_min(s: &SampledMetricSpace, lows: &[f64], x: usize, r: f64) -> f64 {
    let mut min = f64::INFINITY;
    s.scan_ball(x, r, |y| min = min.min(lows[y]));
    min
}

/// Shared construction. `floor_of(y)` is the value off the support: the
/// constant `-M` for the bounded family, `phi(y)` for the sandwiched one.
fn build_family(
    f: &IntervalFunction,
    floor_of: impl Fn(usize) -> f64,
    eps: f64,
    op: &'static str,
) -> Result<ApproximatingFamily> {
    let s = metric_of(f.space(), op)?;
    check_eps(eps)?;
    let lows = finite_values(f, true)?;
    let n = s.len();
    let mut members = Vec::with_capacity(n);
    let mut radii = Vec::with_capacity(n);
    for x in 0..n {
        let r = chosen_radius(s, &lows, x, eps);
        let m = ball_min(s, &lows, x, r);
        let values: Vec<ExtReal> = (0..n)
            .map(|y| {
                let t = 1.0 - s.distance(x, y) / r;
                let t = t.max(0.0);
                // The boundary cases are returned exactly — the center gets
                // the ball minimum, points off the support get the floor —
                // so the containment scan below can be exact as well.
                let v = if t == 0.0 {
                    floor_of(y)
                } else if t == 1.0 {
                    m
                } else {
                    let floor = floor_of(y);
                    (m - floor) * t + floor
                };
                ExtReal::new(v).expect("family member value is finite")
            })
            .collect();
        let member = IntervalFunction::from_points(f.space().clone(), values)?;
        if let Some(point) = member.first_leq_violation(f)? {
            return Err(Error::BoundViolated { member: x, point });
        }
        members.push(member);
        radii.push(r);
    }
    Ok(ApproximatingFamily {
        family: FunctionFamily::new(members)?,
        radii,
        eps,
    })
}

/// Approximating family for a bounded function: one member per point, each
/// below `f`, with the member centered at `x` reaching the ball minimum of
/// the lower endpoint at `x` — hence the family's pointwise supremum stays
/// within `eps` of the lower endpoint. `bound` must dominate `|f|`.
pub fn approximating_family_bounded(
    f: &IntervalFunction,
    bound: f64,
    eps: f64,
) -> Result<ApproximatingFamily> {
    metric_of(f.space(), "bounded approximating family")?;
    if !bound.is_finite() || bound < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "bound must be non-negative and finite, got {bound}"
        )));
    }
    let lows = finite_values(f, true)?;
    let ups = finite_values(f, false)?;
    for x in 0..f.len() {
        if lows[x] < -bound {
            return Err(Error::MinorantNotBelow { point: x });
        }
        if ups[x] > bound {
            return Err(Error::MajorantNotAbove { point: x });
        }
    }
    build_family(f, |_| -bound, eps, "bounded approximating family")
}

/// Approximating family for a function sandwiched from below by a continuous
/// minorant `phi`: members interpolate between the ball minimum at the
/// center and `phi` off the support. With `phi` constantly `-M` this
/// reproduces [`approximating_family_bounded`] value for value.
pub fn approximating_family_cm(
    f: &IntervalFunction,
    minorant: &IntervalFunction,
    eps: f64,
) -> Result<ApproximatingFamily> {
    metric_of(f.space(), "sandwiched approximating family")?;
    f.require_same_space(minorant)?;
    if let Some(point) = minorant.first_interval_point() {
        return Err(Error::NotPointValued { point });
    }
    let phi = finite_values(minorant, true)?;
    let lows = finite_values(f, true)?;
    for x in 0..f.len() {
        if phi[x] > lows[x] {
            return Err(Error::MinorantNotBelow { point: x });
        }
    }
    build_family(f, |y| phi[y], eps, "sandwiched approximating family")
}

/// A continuous envelope with its transform-space certificate.
#[derive(Debug, Clone)]
pub struct EnvelopeResult {
    /// The minorant (or majorant): point-valued, finite.
    pub envelope: IntervalFunction,
    /// The 1-Lipschitz transform-space function the envelope came from.
    pub psi: IntervalFunction,
    /// Largest observed slope of the envelope over finest-ball neighbor
    /// pairs; reported as a continuity certificate, not thresholded.
    pub lipschitz_bound: f64,
}

fn envelope_lipschitz(s: &SampledMetricSpace, env: &[f64]) -> f64 {
    let r = s.finest_radius();
    let mut lip = 0.0f64;
    for x in 0..env.len() {
        s.scan_ball(x, r, |y| {
            if y != x {
                let d = s.distance(x, y);
                if d > 0.0 {
                    lip = lip.max((env[x] - env[y]).abs() / d);
                }
            }
        });
    }
    lip
}

fn envelope_result(
    f: &IntervalFunction,
    psi: Vec<f64>,
    env: Vec<f64>,
    s: &SampledMetricSpace,
) -> Result<EnvelopeResult> {
    let lipschitz_bound = envelope_lipschitz(s, &env);
    let to_points = |vals: Vec<f64>| -> Result<IntervalFunction> {
        let pts = vals
            .into_iter()
            .map(|v| ExtReal::new(v).expect("envelope value is finite"))
            .collect();
        IntervalFunction::from_points(f.space().clone(), pts)
    };
    Ok(EnvelopeResult {
        envelope: to_points(env)?,
        psi: to_points(psi)?,
        lipschitz_bound,
    })
}

/// Greatest 1-Lipschitz-in-transform-space minorant of the lower endpoint:
/// `psi(x) = min over t of [h(f_lo(t)) + rho(t, x)]`, mapped back through
/// `h`'s inverse. The result is point-valued, continuous with the reported
/// modulus, and `<= f_lo` at every sampled point exactly.
pub fn continuous_minorant(f: &IntervalFunction) -> Result<EnvelopeResult> {
    let s = metric_of(f.space(), "continuous minorant")?;
    let lows = finite_values(f, true)?;
    let hs: Vec<f64> = lows.iter().map(|&v| h(v)).collect();
    let n = lows.len();
    let mut psi = Vec::with_capacity(n);
    for x in 0..n {
        let mut best = f64::INFINITY;
        for (t, &ht) in hs.iter().enumerate() {
            let cand = ht + s.distance(t, x);
            if cand < best {
                best = cand;
            }
        }
        psi.push(best);
    }
    let env: Vec<f64> = (0..n)
        .map(|x| {
            // psi[x] <= h(lows[x]) exactly (the t == x term adds a zero
            // distance), so in exact arithmetic the inverse sits below
            // lows[x]; the min repairs the at-most-few-ulp overshoot of a
            // floating-point roundtrip and never moves a conforming value.
            h_inv(psi[x]).min(lows[x])
        })
        .collect();
    envelope_result(f, psi, env, s)
}

/// Mirror image of [`continuous_minorant`]: `psi(x) = max over t of
/// [h(f_hi(t)) - rho(t, x)]`, mapped back through `h`'s inverse, giving a
/// continuous majorant `>= f_hi` at every sampled point exactly.
pub fn continuous_majorant(f: &IntervalFunction) -> Result<EnvelopeResult> {
    let s = metric_of(f.space(), "continuous majorant")?;
    let ups = finite_values(f, false)?;
    let hs: Vec<f64> = ups.iter().map(|&v| h(v)).collect();
    let n = ups.len();
    let mut psi = Vec::with_capacity(n);
    for x in 0..n {
        let mut best = f64::NEG_INFINITY;
        for (t, &ht) in hs.iter().enumerate() {
            let cand = ht - s.distance(t, x);
            if cand > best {
                best = cand;
            }
        }
        psi.push(best);
    }
    let env: Vec<f64> = (0..n).map(|x| h_inv(psi[x]).max(ups[x])).collect();
    envelope_result(f, psi, env, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::Interval;
    use crate::funcs::make_example;
    use crate::space::{Coords, FiniteTopology, Metric, PointSet};

    fn grid(n: usize) -> Arc<Space> {
        Space::metric(SampledMetricSpace::grid1d(-1.0, 1.0, n).unwrap())
    }

    fn halves() -> Arc<Space> {
        // Exact binary coordinates so bump profiles are exact.
        let s = SampledMetricSpace::explicit(
            Coords::One(vec![0.0, 0.5, 1.0, 1.5, 2.0]),
            Metric::Euclidean,
            vec![1.0, 0.5],
        )
        .unwrap();
        Space::metric(s)
    }

    #[test]
    fn transform_is_odd_bounded_and_invertible() {
        assert_eq!(h(0.0), 0.0);
        assert_eq!(h(1.0), 0.5);
        assert_eq!(h(-1.0), -0.5);
        assert_eq!(h_inv(0.5), 1.0);
        for k in -300..=300 {
            let z = k as f64 * 0.1;
            assert!((h_inv(h(z)) - z).abs() <= 1e-12, "roundtrip at {z}");
            assert!(h(z).abs() < 1.0);
            assert_eq!(h(-z), -h(z));
        }
        for k in -99..=99 {
            let w = k as f64 * 0.01;
            assert!((h(h_inv(w)) - w).abs() <= 1e-12, "inverse roundtrip at {w}");
        }
    }

    #[test]
    fn bump_profile_is_exact_on_binary_coordinates() {
        let space = halves();
        let b = make_bump(&space, 2, 1.0).unwrap();
        assert_eq!(b.support.members, vec![0, 1, 2, 3, 4]);
        let got: Vec<f64> = (0..5).map(|y| b.profile.lower(y).get()).collect();
        assert_eq!(got, vec![0.0, 0.5, 1.0, 0.5, 0.0]);
        let b = make_bump(&space, 0, 0.5).unwrap();
        assert_eq!(b.support.members, vec![0, 1]);
        let got: Vec<f64> = (0..5).map(|y| b.profile.lower(y).get()).collect();
        assert_eq!(got, vec![1.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn bump_rejects_bad_arguments() {
        let space = halves();
        assert!(matches!(
            make_bump(&space, 9, 1.0),
            Err(Error::UnknownPoint { point: 9, .. })
        ));
        assert!(matches!(
            make_bump(&space, 0, 0.0),
            Err(Error::InvalidArgument(_))
        ));
        let finite = Space::finite(
            FiniteTopology::from_sets(1, vec![PointSet::EMPTY, PointSet::full(1)]).unwrap(),
        );
        assert!(matches!(
            make_bump(&finite, 0, 1.0),
            Err(Error::WrongBackend { .. })
        ));
    }

    #[test]
    fn bounded_family_on_the_step_stays_below_and_recovers_within_eps() {
        let space = grid(101);
        let f = make_example("step", &space).unwrap();
        let eps = 0.1;
        let fam = approximating_family_bounded(&f, 1.0, eps).unwrap();
        assert_eq!(fam.family.len(), 101);
        for member in fam.family.members() {
            assert!(member.leq(&f).unwrap(), "member must sit below f");
        }
        for x in 0..101 {
            let sup = fam
                .family
                .members()
                .iter()
                .map(|m| m.lower(x).get())
                .fold(f64::NEG_INFINITY, f64::max);
            assert!(
                sup >= f.lower(x).get() - eps,
                "family supremum misses f_lo - eps at point {x}"
            );
        }
        // Far from the jump the widest schedule radius qualifies; next to it
        // nothing from the schedule does and the singleton ball takes over.
        let schedule_or_singleton = |r: f64| {
            r == 0.5 * 0.02
                || match space.as_ref() {
                    Space::Metric(s) => s.radii().contains(&r),
                    _ => false,
                }
        };
        assert!(fam.radii.iter().all(|&r| schedule_or_singleton(r)));
        assert_eq!(fam.radii[50], 8.0 * 0.02);
        assert_eq!(fam.radii[51], 0.5 * 0.02);
    }

    #[test]
    fn bounded_family_rejects_a_bound_that_is_too_small() {
        let space = grid(11);
        let f = make_example("step", &space).unwrap();
        // The step leaves [-0.5, 0.5] on both sides; the low side is hit
        // first in point order.
        assert!(matches!(
            approximating_family_bounded(&f, 0.5, 0.1),
            Err(Error::MinorantNotBelow { point: 0 })
        ));
        let g = make_example("constant:0.8", &space).unwrap();
        assert!(matches!(
            approximating_family_bounded(&g, 0.5, 0.1),
            Err(Error::MajorantNotAbove { point: 0 })
        ));
        assert!(matches!(
            approximating_family_bounded(&f, 1.0, 0.0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn sandwiched_family_with_constant_floor_matches_the_bounded_one() {
        let space = grid(101);
        let f = make_example("step", &space).unwrap();
        let phi =
            IntervalFunction::constant(space.clone(), Interval::point(ExtReal::new(-1.0).unwrap()));
        let a = approximating_family_bounded(&f, 1.0, 0.05).unwrap();
        let b = approximating_family_cm(&f, &phi, 0.05).unwrap();
        assert_eq!(a.radii, b.radii);
        for (ma, mb) in a.family.members().iter().zip(b.family.members()) {
            assert_eq!(ma, mb, "identical formulas must agree value for value");
        }
    }

    #[test]
    fn sandwiched_family_tracks_an_unbounded_flavored_identity() {
        // f(x) = x on [-10, 10]; the global bound construction would need
        // M = 10, but the sandwiched one works from the minorant x - 1.
        let s = SampledMetricSpace::grid1d(-10.0, 10.0, 41).unwrap();
        let space = Space::metric(s);
        let xs: Vec<f64> = match space.as_ref() {
            Space::Metric(s) => match s.coords() {
                Coords::One(v) => v.clone(),
                _ => unreachable!(),
            },
            _ => unreachable!(),
        };
        let f = IntervalFunction::from_points(
            space.clone(),
            xs.iter().map(|&x| ExtReal::new(x).unwrap()).collect(),
        )
        .unwrap();
        let phi = IntervalFunction::from_points(
            space.clone(),
            xs.iter().map(|&x| ExtReal::new(x - 1.0).unwrap()).collect(),
        )
        .unwrap();
        let eps = 0.75;
        let fam = approximating_family_cm(&f, &phi, eps).unwrap();
        for member in fam.family.members() {
            assert!(member.leq(&f).unwrap());
        }
        for x in 0..f.len() {
            let sup = fam
                .family
                .members()
                .iter()
                .map(|m| m.lower(x).get())
                .fold(f64::NEG_INFINITY, f64::max);
            assert!(sup >= f.lower(x).get() - eps);
        }
        // A minorant that pokes above f is rejected with a witness.
        let bad = IntervalFunction::from_points(
            space.clone(),
            xs.iter().map(|&x| ExtReal::new(x + 1.0).unwrap()).collect(),
        )
        .unwrap();
        assert!(matches!(
            approximating_family_cm(&f, &bad, eps),
            Err(Error::MinorantNotBelow { point: 0 })
        ));
    }

    #[test]
    fn minorant_envelope_of_the_step_is_exact_at_the_plateaus() {
        let space = grid(101);
        let f = make_example("step", &space).unwrap();
        let r = continuous_minorant(&f).unwrap();
        assert!(r.envelope.leq(&f).unwrap(), "minorant must sit below f");
        // psi = -1/2 on the left plateau, and climbs to 1/2 exactly at x = 1.
        assert_eq!(r.psi.lower(0).get(), -0.5);
        assert_eq!(r.psi.lower(50).get(), -0.5);
        assert_eq!(r.psi.lower(100).get(), 0.5);
        assert_eq!(r.envelope.lower(0).get(), -1.0);
        assert_eq!(r.envelope.lower(100).get(), 1.0);
        // 1-Lipschitz in transform space, with float slack.
        let s = match space.as_ref() {
            Space::Metric(s) => s,
            _ => unreachable!(),
        };
        for x in 0..f.len() {
            let hx = h(f.lower(x).get());
            let px = r.psi.lower(x).get();
            assert!(px <= hx, "psi must not exceed h(f_lo) at {x}");
            assert!(px > -1.0 && px < 1.0);
            for y in 0..f.len() {
                let py = r.psi.lower(y).get();
                assert!((px - py).abs() <= s.distance(x, y) + 1e-12);
            }
        }
    }

    #[test]
    fn majorant_envelope_mirrors_the_minorant() {
        let space = grid(101);
        let f = make_example("step", &space).unwrap();
        let maj = continuous_majorant(&f).unwrap();
        assert!(f.leq(&maj.envelope).unwrap(), "majorant must sit above f");
        // Mirror symmetry: majorant of f == -(minorant of -f).
        let min_of_neg = continuous_minorant(&f.negate()).unwrap();
        assert_eq!(maj.envelope, min_of_neg.envelope.negate());
    }

    #[test]
    fn envelopes_reject_bad_inputs() {
        let finite = Space::finite(
            FiniteTopology::from_sets(1, vec![PointSet::EMPTY, PointSet::full(1)]).unwrap(),
        );
        let g = IntervalFunction::constant(finite, Interval::point(ExtReal::new(0.0).unwrap()));
        assert!(matches!(
            continuous_minorant(&g),
            Err(Error::WrongBackend { .. })
        ));
        let f = IntervalFunction::constant(grid(5), Interval::point(ExtReal::NEG_INFINITY));
        assert!(matches!(
            continuous_minorant(&f),
            Err(Error::InfiniteEndpoint { point: 0 })
        ));
        assert!(matches!(
            continuous_majorant(&f),
            Err(Error::InfiniteEndpoint { point: 0 })
        ));
    }
}
