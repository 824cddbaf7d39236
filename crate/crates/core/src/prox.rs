//! Proximal operator of the monotone-nonnegative ℓ1 penalty
//! `h(u) = λ Σ uⱼ + 𝟙{u₁ ≥ u₂ ≥ … ≥ uₙ ≥ 0}`.
//!
//! The operator has a closed form: shift the point by the penalty, run
//! isotonic regression for the non-increasing order, and clip negatives to
//! zero. With a finite relaxation parameter the isotonic step is replaced by
//! near-isotonic regression, and with per-coordinate weights the quadratic
//! term becomes `½ Σ wᵢ (uᵢ − βᵢ)²`, handled by shifting each coordinate by
//! `λ / wᵢ` and running weighted isotonic regression.

use crate::error::{Error, Result};
use crate::isotonic::{self, NearIsoConfig, WeightedSequence};

/// One proximal evaluation request.
#[derive(Debug, Clone)]
pub struct ProxRequest<'a> {
    /// The point to be mapped (the β of the gradient step).
    pub point: &'a [f64],
    /// Effective penalty, i.e. λ times the step size. Must be non-negative.
    pub lam: f64,
    /// Optional positive weights on the quadratic term (IRLS).
    pub weights: Option<&'a [f64]>,
    /// Optional near-isotonic relaxation; `None` or `+∞` means the exact
    /// order constraint.
    pub theta: Option<f64>,
}

impl<'a> ProxRequest<'a> {
    pub fn new(point: &'a [f64], lam: f64) -> Self {
        Self {
            point,
            lam,
            weights: None,
            theta: None,
        }
    }
}

/// Evaluates `argmin_u { λ Σ uⱼ + 𝟙_C(u) + ½ Σ wᵢ (uᵢ − βᵢ)² }` where `C` is
/// the non-increasing nonnegative cone.
pub fn prox_monotone_nonneg(req: &ProxRequest) -> Result<Vec<f64>> {
    if req.point.is_empty() {
        return Err(Error::EmptySequence);
    }
    if req.lam < 0.0 || req.lam.is_nan() {
        return Err(Error::NegativePenalty(req.lam));
    }

    let n = req.point.len();
    let shifted: Vec<f64> = match req.weights {
        None => req.point.iter().map(|&b| b - req.lam).collect(),
        Some(w) => {
            if w.len() != n {
                return Err(Error::DimensionMismatch {
                    context: "prox weights vs point",
                    expected: n,
                    got: w.len(),
                });
            }
            req.point
                .iter()
                .zip(w)
                .map(|(&b, &wi)| b - req.lam / wi)
                .collect()
        }
    };
    let seq = match req.weights {
        None => WeightedSequence::new(shifted),
        Some(w) => WeightedSequence::with_weights(shifted, w.to_vec())?,
    };

    let fit = match req.theta {
        None => isotonic::pava_nonincreasing(&seq)?,
        Some(theta) => isotonic::near_iso(&seq, &NearIsoConfig::new(theta)?)?,
    };

    // Values at or below zero map to zero (the indicator's boundary).
    Ok(fit.fitted.iter().map(|&v| v.max(0.0)).collect())
}

/// Convenience wrapper: unweighted prox with an optional relaxation.
pub fn prox_shift_clip(point: &[f64], lam: f64, theta: Option<f64>) -> Result<Vec<f64>> {
    prox_monotone_nonneg(&ProxRequest {
        point,
        lam,
        weights: None,
        theta,
    })
}
