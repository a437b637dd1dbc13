//! Centralized numeric tolerances.
//!
//! Everything the crate compares is either *combinatorially exact* (min/max
//! picks of stored floats, which justify zero-tolerance equality) or a
//! genuine floating-point computation (the bounded transform, Lipschitz
//! ratios), which gets an explicit slack pinned here. Tests reference these
//! constants instead of burying magic numbers.

/// Slack for checks that are identities in real arithmetic but pick up a few
/// ulps of rounding: the `h` / `h_inv` round trip and the 1-Lipschitz bound
/// on the transformed distance envelope.
pub const TRANSFORM_SLACK: f64 = 1e-12;

/// Sampled-backend tie policy: a value interval is reported as genuinely
/// interval-valued only when its width exceeds this, so stencil noise at
/// the last ulp is not misread as a discontinuity.
pub const WIDTH_TIE: f64 = 1e-12;

/// Default tolerance for CLI-level value comparisons (convergence deviation
/// columns and similar diagnostics). Operator outputs on the exact backend
/// are compared with zero tolerance instead, since they are min/max picks
/// of stored values.
pub const DEFAULT_COMPARE: f64 = 1e-9;

// The command-line comparison tolerance is deliberately the loosest of the
// three; checked at compile time.
const _: () = {
    assert!(TRANSFORM_SLACK > 0.0);
    assert!(WIDTH_TIE > 0.0);
    assert!(DEFAULT_COMPARE > TRANSFORM_SLACK);
    assert!(DEFAULT_COMPARE > WIDTH_TIE);
};
