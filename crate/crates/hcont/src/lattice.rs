//! Order-theoretic operations on the H-continuous functions: suprema and
//! infima of bounded families, membership classification for the three
//! nested classes (finite-valued, bounded, continuously sandwiched), and an
//! exhaustive least-upper-bound verification for small finite topologies.
//!
//! The supremum construction follows the completion argument directly: the
//! pointwise supremum `g` of the lower endpoints is lower semicontinuous as
//! a supremum of lower semicontinuous functions, and `F(S(g))` is the least
//! H-continuous function dominating the family. The infimum is its exact
//! order dual.

use crate::baire;
use crate::envelope;
use crate::error::Error;
use crate::extreal::ExtReal;
use crate::funcs::{FunctionFamily, IntervalFunction};
use crate::hausdorff;
use crate::oracle;
use crate::report::{CheckReport, Witness};
use crate::space::Space;
use crate::Result;

/// Least upper bound of a bounded family: `F(S(g))` for `g` the pointwise
/// supremum of lower endpoints. The `bound` argument is the caller's
/// evidence that the family is bounded above; each member must sit below it,
/// but the result is computed from the family alone.
pub fn family_sup(family: &FunctionFamily, bound: &IntervalFunction) -> Result<IntervalFunction> {
    family.members()[0].require_same_space(bound)?;
    for (k, m) in family.members().iter().enumerate() {
        if let Some(point) = m.first_leq_violation(bound)? {
            return Err(Error::BoundViolated { member: k, point });
        }
    }
    let space = family.space();
    let g: Vec<ExtReal> = (0..space.len())
        .map(|x| {
            family
                .members()
                .iter()
                .map(|m| m.lower(x))
                .max()
                .expect("family is non-empty")
        })
        .collect();
    let g = IntervalFunction::from_points(space.clone(), g)?;
    let sg = baire::upper_baire(&g)?.output;
    Ok(baire::graph_completion(&sg)?.output)
}

/// Greatest lower bound of a family bounded below: `F(I(h))` for `h` the
/// pointwise infimum of upper endpoints. Exact order dual of [`family_sup`].
pub fn family_inf(family: &FunctionFamily, bound: &IntervalFunction) -> Result<IntervalFunction> {
    family.members()[0].require_same_space(bound)?;
    for (k, m) in family.members().iter().enumerate() {
        if let Some(point) = bound.first_leq_violation(m)? {
            return Err(Error::BoundViolated { member: k, point });
        }
    }
    let space = family.space();
    let h: Vec<ExtReal> = (0..space.len())
        .map(|x| {
            family
                .members()
                .iter()
                .map(|m| m.upper(x))
                .min()
                .expect("family is non-empty")
        })
        .collect();
    let h = IntervalFunction::from_points(space.clone(), h)?;
    let ih = baire::lower_baire(&h)?.output;
    Ok(baire::graph_completion(&ih)?.output)
}

/// Where an H-continuous function sits in the chain of classes
/// finite-valued ⊇ bounded ⊇ continuously sandwiched.
#[derive(Debug, Clone)]
pub struct Classification {
    /// All endpoints finite.
    pub hft: bool,
    /// Uniform bound witness `max(|lo|, |hi|)` over all points, when finite.
    /// Over finitely many sampled points this coincides with `hft`; the two
    /// classes differ only on genuinely infinite domains.
    pub hb: Option<f64>,
    /// Continuous sandwich status; see [`HcmStatus`].
    pub hcm: HcmStatus,
}

/// Outcome of the continuous-sandwich test.
#[derive(Debug, Clone)]
pub enum HcmStatus {
    /// Exact backend: there is no metric, so continuous minorants and
    /// majorants are not defined and membership is not decidable here.
    NotApplicable,
    /// Infinite endpoints: no finite continuous pair can sandwich them.
    No,
    /// A constructed pair `minorant <= f <= majorant` of certified-modulus
    /// point-valued functions.
    Witnessed {
        minorant: IntervalFunction,
        majorant: IntervalFunction,
    },
}

impl HcmStatus {
    pub fn is_witnessed(&self) -> bool {
        matches!(self, HcmStatus::Witnessed { .. })
    }
}

/// Classifies an H-continuous function. Errors if the input fails the
/// H-continuity test, since the classes are only defined inside that space.
pub fn classify(f: &IntervalFunction) -> Result<Classification> {
    if !hausdorff::is_h_continuous(f)?.verdict {
        return Err(Error::NotHContinuous {
            op: "classification",
        });
    }
    let hft = (0..f.len()).all(|x| f.lower(x).is_finite() && f.upper(x).is_finite());
    let hb = if hft {
        let m = (0..f.len())
            .map(|x| f.lower(x).get().abs().max(f.upper(x).get().abs()))
            .fold(0.0f64, f64::max);
        Some(m)
    } else {
        None
    };
    let hcm = match f.space().as_ref() {
        Space::Finite(_) => HcmStatus::NotApplicable,
        Space::Metric(_) => {
            if hft {
                let minorant = envelope::continuous_minorant(f)?.envelope;
                let majorant = envelope::continuous_majorant(f)?.envelope;
                HcmStatus::Witnessed { minorant, majorant }
            } else {
                HcmStatus::No
            }
        }
    };
    Ok(Classification { hft, hb, hcm })
}

const LUB_MAX_POINTS: usize = 4;
const LUB_MAX_CHAIN: usize = 4;

/// Exhaustively certifies that `u` is the least upper bound of `family`
/// within the chain-valued H-continuous functions: (A) `u` dominates every
/// member, and (B) `u` sits below every enumerated H-continuous upper bound.
/// Only feasible on small finite topologies, hence the hard guards.
pub fn least_upper_bound_check(
    family: &FunctionFamily,
    u: &IntervalFunction,
    chain: &[ExtReal],
) -> Result<CheckReport> {
    let space = family.space();
    family.members()[0].require_same_space(u)?;
    if !matches!(space.as_ref(), Space::Finite(_)) {
        return Err(Error::WrongBackend {
            op: "least upper bound check",
            needs: "exact (finite topology)",
        });
    }
    if space.len() > LUB_MAX_POINTS {
        return Err(Error::BudgetExceeded(format!(
            "least upper bound check on {} points; limit is {LUB_MAX_POINTS}",
            space.len()
        )));
    }
    let mut chain_sorted = chain.to_vec();
    chain_sorted.sort();
    chain_sorted.dedup();
    if chain_sorted.len() > LUB_MAX_CHAIN {
        return Err(Error::BudgetExceeded(format!(
            "least upper bound check with a {}-value chain; limit is {LUB_MAX_CHAIN}",
            chain_sorted.len()
        )));
    }

    let mut failures = Vec::new();
    for (k, m) in family.members().iter().enumerate() {
        if let Some(point) = m.first_leq_violation(u)? {
            failures.push(Witness::at(
                point,
                format!("candidate does not dominate member {k}"),
            ));
        }
    }

    let budget = oracle::EnumerationBudget::default();
    for (j, h) in oracle::all_chain_functions(space, &chain_sorted, &budget)?
        .iter()
        .enumerate()
    {
        if !hausdorff::is_h_continuous(h)?.verdict {
            continue;
        }
        let mut upper = true;
        for m in family.members() {
            if !m.leq(h)? {
                upper = false;
                break;
            }
        }
        if !upper {
            continue;
        }
        if let Some(point) = u.first_leq_violation(h)? {
            failures.push(Witness::at(
                point,
                format!("candidate exceeds the enumerated upper bound {j}"),
            ));
        }
    }
    Ok(CheckReport::new("least-upper-bound", failures))
}
