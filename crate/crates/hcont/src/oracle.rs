//! Brute-force reference implementations used to cross-check the operator
//! and lattice modules on small finite topologies.
//!
//! Everything here is written directly against the defining formulas:
//! envelopes scan *every* open set containing a point rather than the
//! minimal neighborhood, H-continuity is decided by enumerating every
//! inscribed function and graph-completing it, and suprema are checked
//! against an exhaustive search over an enumerated function lattice. None of
//! this code is shared with the production paths it validates, so agreement
//! between the two is meaningful evidence of correctness.
//!
//! All enumerations are capped by an [`EnumerationBudget`]; exceeding it is
//! an error, never a silent truncation.

use std::sync::Arc;

use crate::error::Error;
use crate::extreal::{ExtReal, Interval};
use crate::funcs::{FunctionFamily, IntervalFunction};
use crate::lattice;
use crate::report::{CheckReport, Witness};
use crate::space::{FiniteTopology, PointSet, Space};
use crate::Result;

/// Caps for the exhaustive searches. Enumeration cost grows as
/// `(k(k+1)/2)^n` for `n` points and a `k`-value chain, and the completeness
/// check walks every non-empty subset of the enumerated lattice, so the
/// defaults keep everything comfortably in the millions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnumerationBudget {
    /// Largest space the oracle will enumerate functions over.
    pub max_points: usize,
    /// Longest endpoint chain (after deduplication).
    pub max_chain: usize,
    /// Largest number of candidate functions or subsets to visit.
    pub max_candidates: u128,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_points: 5,
            max_chain: 5,
            max_candidates: 1_000_000,
        }
    }
}

impl EnumerationBudget {
    fn check_points(&self, n: usize) -> Result<()> {
        if n > self.max_points {
            return Err(Error::BudgetExceeded(format!(
                "space has {n} points, budget allows {}",
                self.max_points
            )));
        }
        Ok(())
    }

    fn check_chain(&self, k: usize) -> Result<()> {
        if k > self.max_chain {
            return Err(Error::BudgetExceeded(format!(
                "chain has {k} values, budget allows {}",
                self.max_chain
            )));
        }
        Ok(())
    }

    fn check_candidates(&self, count: u128, what: &str) -> Result<()> {
        if count > self.max_candidates {
            return Err(Error::BudgetExceeded(format!(
                "{what} needs {count} candidates, budget allows {}",
                self.max_candidates
            )));
        }
        Ok(())
    }
}

fn finite_of<'a>(f: &'a IntervalFunction, op: &'static str) -> Result<&'a FiniteTopology> {
    match f.space().as_ref() {
        Space::Finite(t) => Ok(t),
        Space::Metric(_) => Err(Error::WrongBackend {
            op,
            needs: "exact (finite topology)",
        }),
    }
}

/// `I(f)(x) = sup over open U containing x of inf over U of the lower
/// endpoint`, evaluated literally over every open set.
pub fn oracle_lower_baire(f: &IntervalFunction) -> Result<Vec<ExtReal>> {
    let t = finite_of(f, "oracle lower Baire operator")?;
    let mut out = Vec::with_capacity(f.len());
    for x in 0..f.len() {
        let mut best = ExtReal::NEG_INFINITY;
        for &u in t.opens() {
            if !u.contains(x) {
                continue;
            }
            let mut inf = ExtReal::INFINITY;
            for y in u.iter() {
                inf = inf.min(f.lower(y));
            }
            best = best.max(inf);
        }
        out.push(best);
    }
    Ok(out)
}

/// `S(f)(x) = inf over open U containing x of sup over U of the upper
/// endpoint`, evaluated literally over every open set.
pub fn oracle_upper_baire(f: &IntervalFunction) -> Result<Vec<ExtReal>> {
    let t = finite_of(f, "oracle upper Baire operator")?;
    let mut out = Vec::with_capacity(f.len());
    for x in 0..f.len() {
        let mut best = ExtReal::INFINITY;
        for &u in t.opens() {
            if !u.contains(x) {
                continue;
            }
            let mut sup = ExtReal::NEG_INFINITY;
            for y in u.iter() {
                sup = sup.max(f.upper(y));
            }
            best = best.min(sup);
        }
        out.push(best);
    }
    Ok(out)
}

/// `F(f) = [I(f), S(f)]` built from the literal scans above.
pub fn oracle_graph_completion(f: &IntervalFunction) -> Result<IntervalFunction> {
    let lo = oracle_lower_baire(f)?;
    let hi = oracle_upper_baire(f)?;
    let values = lo
        .into_iter()
        .zip(hi)
        .map(|(l, h)| {
            Interval::new(l, h).expect("I(f) <= S(f): every open scan includes the point itself")
        })
        .collect();
    IntervalFunction::new(f.space().clone(), values)
}

/// Sorted, deduplicated chain values.
fn normalize_chain(chain: &[ExtReal]) -> Result<Vec<ExtReal>> {
    if chain.is_empty() {
        return Err(Error::EmptyChain);
    }
    let mut c = chain.to_vec();
    c.sort();
    c.dedup();
    Ok(c)
}

/// All intervals `[a, b]` with both endpoints in the chain and `a <= b`,
/// in lexicographic `(lo, hi)` order.
fn chain_intervals(chain: &[ExtReal]) -> Vec<Interval> {
    let mut out = Vec::new();
    for (i, &a) in chain.iter().enumerate() {
        for &b in &chain[i..] {
            out.push(Interval::new(a, b).unwrap());
        }
    }
    out
}

/// Every interval-valued function on `space` whose endpoints all come from
/// `chain`, ordered lexicographically by point index and then by the
/// `(lo, hi)` pair at each point.
pub fn all_chain_functions(
    space: &Arc<Space>,
    chain: &[ExtReal],
    budget: &EnumerationBudget,
) -> Result<Vec<IntervalFunction>> {
    let n = space.len();
    let chain = normalize_chain(chain)?;
    budget.check_points(n)?;
    budget.check_chain(chain.len())?;
    let options = chain_intervals(&chain);
    let total = (options.len() as u128)
        .checked_pow(n as u32)
        .ok_or_else(|| Error::BudgetExceeded("candidate count overflows".into()))?;
    budget.check_candidates(total, "chain function enumeration")?;

    let mut out = Vec::new();
    // Odometer over per-point option indices, last point fastest, so the
    // output is lexicographic in the per-point (lo, hi) tuples.
    let mut digits = vec![0usize; n];
    loop {
        let values: Vec<Interval> = digits.iter().map(|&d| options[d]).collect();
        out.push(IntervalFunction::new(space.clone(), values)?);
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < options.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Decides H-continuity by the definition alone: `f` is H-continuous iff
/// every chain-valued `g` inscribed in `f` graph-completes to `f`. Both the
/// inscribed enumeration and the completion use only oracle code.
///
/// Restricting `g` to chain endpoints is exhaustive for chain-valued `f`
/// because the two endpoint selections, which drive the completion, are
/// themselves chain-valued; `f`'s own endpoints must therefore appear in
/// `chain`.
pub fn oracle_is_h_continuous(
    f: &IntervalFunction,
    chain: &[ExtReal],
    budget: &EnumerationBudget,
) -> Result<bool> {
    finite_of(f, "oracle H-continuity test")?;
    let chain = normalize_chain(chain)?;
    budget.check_points(f.len())?;
    budget.check_chain(chain.len())?;
    for x in 0..f.len() {
        if !chain.contains(&f.lower(x)) || !chain.contains(&f.upper(x)) {
            return Err(Error::NotInChain { point: x });
        }
    }
    let all = chain_intervals(&chain);
    let options: Vec<Vec<Interval>> = (0..f.len())
        .map(|x| {
            all.iter()
                .copied()
                .filter(|iv| iv.subset(f.value(x)))
                .collect()
        })
        .collect();
    let total: u128 = options
        .iter()
        .try_fold(1u128, |acc, o| acc.checked_mul(o.len() as u128))
        .ok_or_else(|| Error::BudgetExceeded("candidate count overflows".into()))?;
    budget.check_candidates(total, "inscribed function enumeration")?;

    let n = f.len();
    let mut digits = vec![0usize; n];
    loop {
        let values: Vec<Interval> = digits
            .iter()
            .enumerate()
            .map(|(x, &d)| options[x][d])
            .collect();
        let g = IntervalFunction::new(f.space().clone(), values)?;
        if oracle_graph_completion(&g)? != *f {
            return Ok(false);
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(true);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < options[pos].len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// All H-continuous chain-valued functions on `space`, in the deterministic
/// order of [`all_chain_functions`].
pub fn enumerate_h_continuous(
    space: &Arc<Space>,
    chain: &[ExtReal],
    budget: &EnumerationBudget,
) -> Result<Vec<IntervalFunction>> {
    let mut out = Vec::new();
    for f in all_chain_functions(space, chain, budget)? {
        if oracle_is_h_continuous(&f, chain, budget)? {
            out.push(f);
        }
    }
    Ok(out)
}

/// Exhaustively verifies that the family supremum and infimum really are
/// least upper and greatest lower bounds within the enumerated H-continuous
/// lattice: for every non-empty subset of the enumeration, the computed
/// supremum must be in the enumeration, dominate every member, and sit below
/// every enumerated upper bound; dually for the infimum. Every violation is
/// reported as a witness.
pub fn verify_dedekind_completeness(
    space: &Arc<Space>,
    chain: &[ExtReal],
    budget: &EnumerationBudget,
) -> Result<CheckReport> {
    let chain_sorted = normalize_chain(chain)?;
    let hs = enumerate_h_continuous(space, chain, budget)?;
    let count = hs.len();
    if count >= 127 {
        return Err(Error::BudgetExceeded(format!(
            "{count} lattice members; subset walk is infeasible"
        )));
    }
    let subsets = (1u128 << count) - 1;
    budget.check_candidates(subsets, "subset walk")?;

    let top = IntervalFunction::constant(
        space.clone(),
        Interval::point(*chain_sorted.last().unwrap()),
    );
    let bot = IntervalFunction::constant(
        space.clone(),
        Interval::point(*chain_sorted.first().unwrap()),
    );

    let subset_label = |mask: u128| {
        let ids: Vec<String> = (0..count)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| i.to_string())
            .collect();
        format!("{{{}}}", ids.join(","))
    };

    let mut failures = Vec::new();
    for mask in 1..=subsets {
        let members: Vec<IntervalFunction> = (0..count)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| hs[i].clone())
            .collect();
        let family = FunctionFamily::new(members)?;
        let label = subset_label(mask);

        let u = lattice::family_sup(&family, &top)?;
        if !hs.contains(&u) {
            failures.push(Witness::global(format!(
                "supremum of subset {label} is not in the enumerated lattice"
            )));
        }
        for (k, m) in family.members().iter().enumerate() {
            if !m.leq(&u)? {
                failures.push(Witness::global(format!(
                    "supremum of subset {label} does not dominate member {k}"
                )));
            }
        }
        for (j, h) in hs.iter().enumerate() {
            let mut upper = true;
            for m in family.members() {
                if !m.leq(h)? {
                    upper = false;
                    break;
                }
            }
            if upper && !u.leq(h)? {
                failures.push(Witness::global(format!(
                    "supremum of subset {label} exceeds the enumerated upper bound {j}"
                )));
            }
        }

        let v = lattice::family_inf(&family, &bot)?;
        if !hs.contains(&v) {
            failures.push(Witness::global(format!(
                "infimum of subset {label} is not in the enumerated lattice"
            )));
        }
        for (k, m) in family.members().iter().enumerate() {
            if !v.leq(m)? {
                failures.push(Witness::global(format!(
                    "infimum of subset {label} does not sit below member {k}"
                )));
            }
        }
        for (j, h) in hs.iter().enumerate() {
            let mut lower = true;
            for m in family.members() {
                if !h.leq(m)? {
                    lower = false;
                    break;
                }
            }
            if lower && !h.leq(&v)? {
                failures.push(Witness::global(format!(
                    "infimum of subset {label} sits below the enumerated lower bound {j}"
                )));
            }
        }
    }
    Ok(CheckReport::new("dedekind-completeness", failures))
}

/// Every topology on `n <= 4` labeled points, generated by filtering all
/// `2^(2^n)` subset families through the closure axioms rather than by a
/// hardcoded list, so the count itself is a checkable fact (29 for `n = 3`).
/// Families are visited in ascending bitmask order, which makes the output
/// deterministic.
pub fn enumerate_topologies(n: usize) -> Result<Vec<FiniteTopology>> {
    if n == 0 {
        return Err(Error::EmptySpace);
    }
    if n > 4 {
        return Err(Error::BudgetExceeded(format!(
            "enumerating topologies on {n} points means 2^(2^{n}) families"
        )));
    }
    let subsets = 1usize << n; // subset index == point bitmask
    let families = 1u64 << subsets;
    let empty_bit = 1u64;
    let full_bit = 1u64 << (subsets - 1);

    let mut out = Vec::new();
    'family: for family in 0..families {
        if family & empty_bit == 0 || family & full_bit == 0 {
            continue;
        }
        for a in 0..subsets {
            if family & (1 << a) == 0 {
                continue;
            }
            for b in a + 1..subsets {
                if family & (1 << b) == 0 {
                    continue;
                }
                if family & (1 << (a | b)) == 0 || family & (1 << (a & b)) == 0 {
                    continue 'family;
                }
            }
        }
        let opens: Vec<PointSet> = (0..subsets)
            .filter(|s| family & (1 << s) != 0)
            .map(|s| PointSet::from_indices((0..n).filter(|p| s & (1 << p) != 0)))
            .collect();
        out.push(FiniteTopology::from_sets(n, opens)?);
    }
    Ok(out)
}
