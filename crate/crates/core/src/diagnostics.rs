//! Global solver sanity counters.
//!
//! Every accepted proximal-gradient step, block-coordinate update and outer
//! IRLS iteration is required to move its objective in the right direction
//! (down for minimization, up for the penalized log-likelihood) within a
//! 1e-10 slack. Violations are counted here so test suites can assert that
//! none occurred across an entire run.

use std::sync::atomic::{AtomicU64, Ordering};

/// Slack allowed before a step counts as a descent (or ascent) violation.
pub const DESCENT_SLACK: f64 = 1e-10;

static DESCENT_VIOLATIONS: AtomicU64 = AtomicU64::new(0);

/// Total number of descent/ascent violations recorded since process start.
pub fn descent_violations() -> u64 {
    DESCENT_VIOLATIONS.load(Ordering::Relaxed)
}

/// Record a step whose objective moved the wrong way beyond [`DESCENT_SLACK`].
pub(crate) fn record_descent_violation(context: &str, old: f64, new: f64) {
    DESCENT_VIOLATIONS.fetch_add(1, Ordering::Relaxed);
    log::warn!("descent violation in {context}: objective {old} -> {new}");
    debug_assert!(false, "descent violation in {context}: {old} -> {new}");
}

/// Check a minimization step; counts a violation when `new > old + slack`.
pub(crate) fn check_descent(context: &str, old: f64, new: f64) {
    if new > old + DESCENT_SLACK * old.abs().max(1.0) {
        record_descent_violation(context, old, new);
    }
}

/// Check a maximization step; counts a violation when `new < old - slack`.
pub(crate) fn check_ascent(context: &str, old: f64, new: f64) {
    if new < old - DESCENT_SLACK * old.abs().max(1.0) {
        record_descent_violation(context, old, new);
    }
}
