//! Weighted isotonic regression for the non-increasing order, plus the
//! near-isotonic relaxation.
//!
//! The non-increasing orientation is implemented natively (no negate–flip
//! dance) because the plateau structure of the fit is a first-class output:
//! plateau counts feed the degrees-of-freedom estimate in
//! [`crate::modelsel`].

use serde::Serialize;

use crate::error::{Error, Result};

/// A sequence of observations with positive weights.
///
/// Weights default to 1; they matter for the IRLS subproblems where each
/// residual carries its own variance weight.
#[derive(Debug, Clone)]
pub struct WeightedSequence {
    pub values: Vec<f64>,
    pub weights: Vec<f64>,
}

impl WeightedSequence {
    /// Unit-weight sequence.
    pub fn new(values: Vec<f64>) -> Self {
        let weights = vec![1.0; values.len()];
        Self { values, weights }
    }

    pub fn with_weights(values: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != values.len() {
            return Err(Error::DimensionMismatch {
                context: "weights length vs values length",
                expected: values.len(),
                got: weights.len(),
            });
        }
        let seq = Self { values, weights };
        seq.validate()?;
        Ok(seq)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::EmptySequence);
        }
        for (i, &w) in self.weights.iter().enumerate() {
            if !(w > 0.0) {
                return Err(Error::NonPositiveWeight { index: i, value: w });
            }
        }
        Ok(())
    }
}

/// A maximal run of equal fitted values; indices are 0-based and inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Plateau {
    pub start: usize,
    pub end: usize,
    pub value: f64,
}

/// Result of an isotonic (or near-isotonic) fit.
///
/// For an exact PAVA fit the fitted sequence is non-increasing, plateau
/// values are strictly decreasing, and each plateau value is the weighted
/// mean of the inputs it covers. A near-isotonic fit with finite `theta` may
/// retain order violations; adjacent plateaus then have distinct but not
/// necessarily decreasing values.
#[derive(Debug, Clone)]
pub struct IsotonicFit {
    pub fitted: Vec<f64>,
    pub plateaus: Vec<Plateau>,
}

impl IsotonicFit {
    /// True if the fitted sequence is non-increasing (no tolerance).
    pub fn is_nonincreasing(&self) -> bool {
        self.fitted.windows(2).all(|w| w[0] >= w[1])
    }
}

/// Configuration for the near-isotonic relaxation.
///
/// A single `theta` is used for both sign halves; `f64::INFINITY` selects
/// the exact PAVA fit and `0.0` leaves the data untouched.
#[derive(Debug, Clone, Copy)]
pub struct NearIsoConfig {
    pub theta: f64,
}

impl NearIsoConfig {
    pub fn new(theta: f64) -> Result<Self> {
        if theta < 0.0 || theta.is_nan() {
            return Err(Error::NegativeTheta(theta));
        }
        Ok(Self { theta })
    }

    /// The sentinel selecting exact isotonic regression.
    pub fn exact() -> Self {
        Self {
            theta: f64::INFINITY,
        }
    }
}

// Internal pooled block: weighted sum, total weight, covered index range,
// and (for the near-iso path) the current fitted value.
#[derive(Debug, Clone, Copy)]
struct Block {
    wy: f64,
    w: f64,
    start: usize,
    end: usize,
    value: f64,
}

impl Block {
    fn mean(&self) -> f64 {
        self.wy / self.w
    }
}

fn blocks_to_fit(blocks: &[Block], n: usize) -> IsotonicFit {
    let mut fitted = vec![0.0; n];
    let mut plateaus: Vec<Plateau> = Vec::with_capacity(blocks.len());
    for b in blocks {
        for slot in &mut fitted[b.start..=b.end] {
            *slot = b.value;
        }
        // Coalesce blocks that ended up at exactly the same value so that
        // the plateau list reflects maximal runs.
        match plateaus.last_mut() {
            Some(last) if last.value == b.value => last.end = b.end,
            _ => plateaus.push(Plateau {
                start: b.start,
                end: b.end,
                value: b.value,
            }),
        }
    }
    IsotonicFit { fitted, plateaus }
}

/// Exact weighted isotonic regression for the non-increasing order.
///
/// Returns the unique minimizer of `½ Σ wᵢ (yᵢ − θᵢ)²` subject to
/// `θ₁ ≥ θ₂ ≥ … ≥ θₙ`, by pooling adjacent violators in a single left-to-right
/// pass (linear time).
pub fn pava_nonincreasing(seq: &WeightedSequence) -> Result<IsotonicFit> {
    seq.validate()?;
    let n = seq.len();
    let mut blocks: Vec<Block> = Vec::with_capacity(n);
    for i in 0..n {
        let w = seq.weights[i];
        let mut b = Block {
            wy: w * seq.values[i],
            w,
            start: i,
            end: i,
            value: seq.values[i],
        };
        // Pool while the new block violates (or equals) its predecessor;
        // pooling equal neighbors keeps plateau values strictly decreasing.
        while let Some(prev) = blocks.last() {
            if b.value >= prev.value {
                b.wy += prev.wy;
                b.w += prev.w;
                b.start = prev.start;
                b.value = b.wy / b.w;
                blocks.pop();
            } else {
                break;
            }
        }
        blocks.push(b);
    }
    Ok(blocks_to_fit(&blocks, n))
}

/// Near-isotonic regression: minimizes
/// `½ Σ wᵢ (yᵢ − θᵢ)² + theta · Σ (θᵢ₊₁ − θᵢ)₊`,
/// penalizing violations of the non-increasing order instead of forbidding
/// them.
///
/// As `theta → ∞` the penalty forces monotonicity and the solution matches
/// [`pava_nonincreasing`]; at `theta = 0` the data are returned unchanged.
/// Solved by the plateau-merging path algorithm: block values move linearly
/// in the penalty until adjacent blocks collide and merge, and the path is
/// followed until the requested `theta`.
pub fn near_iso(seq: &WeightedSequence, cfg: &NearIsoConfig) -> Result<IsotonicFit> {
    seq.validate()?;
    if cfg.theta < 0.0 || cfg.theta.is_nan() {
        return Err(Error::NegativeTheta(cfg.theta));
    }
    if cfg.theta.is_infinite() {
        return pava_nonincreasing(seq);
    }
    let n = seq.len();
    if cfg.theta == 0.0 {
        // Penalty vanishes: the fit is the data itself.
        let mut blocks: Vec<Block> = Vec::with_capacity(n);
        for i in 0..n {
            blocks.push(Block {
                wy: seq.weights[i] * seq.values[i],
                w: seq.weights[i],
                start: i,
                end: i,
                value: seq.values[i],
            });
        }
        return Ok(blocks_to_fit(&blocks, n));
    }

    let mut blocks: Vec<Block> = (0..n)
        .map(|i| Block {
            wy: seq.weights[i] * seq.values[i],
            w: seq.weights[i],
            start: i,
            end: i,
            value: seq.values[i],
        })
        .collect();
    let mut lambda = 0.0;

    // Follow the solution path in the penalty parameter. At a fixed merge
    // pattern each block value is affine in the penalty with slope
    // (a_b − a_{b−1}) / W_b, where a_b indicates an up-jump (violation) at
    // the boundary after block b.
    loop {
        if blocks.len() == 1 {
            break;
        }
        let m = blocks.len();
        let up: Vec<bool> = (0..m - 1)
            .map(|b| blocks[b + 1].value > blocks[b].value)
            .collect();
        let slope = |b: usize| -> f64 {
            let right = if b < m - 1 && up[b] { 1.0 } else { 0.0 };
            let left = if b > 0 && up[b - 1] { 1.0 } else { 0.0 };
            (right - left) / blocks[b].w
        };
        let slopes: Vec<f64> = (0..m).map(slope).collect();

        // Earliest collision of adjacent block values.
        let mut dt_min = f64::INFINITY;
        for b in 0..m - 1 {
            let gap = blocks[b + 1].value - blocks[b].value;
            let ds = slopes[b + 1] - slopes[b];
            if gap == 0.0 {
                // Equal neighbors should have been merged already.
                dt_min = 0.0;
                break;
            }
            if ds != 0.0 {
                let dt = -gap / ds;
                if dt > 0.0 && dt < dt_min {
                    dt_min = dt;
                }
            }
        }

        let remaining = cfg.theta - lambda;
        if dt_min >= remaining {
            for (b, s) in slopes.iter().enumerate() {
                blocks[b].value += s * remaining;
            }
            lambda = cfg.theta;
            break;
        }

        for (b, s) in slopes.iter().enumerate() {
            blocks[b].value += s * dt_min;
        }
        lambda += dt_min;

        // Merge every adjacent pair that has (numerically) collided.
        let mut merged: Vec<Block> = Vec::with_capacity(blocks.len());
        for b in blocks.drain(..) {
            match merged.last_mut() {
                Some(prev) if touching(prev.value, b.value) => {
                    // Value at the collision point; the weighted combination
                    // keeps the merge consistent under roundoff.
                    prev.value = (prev.value * prev.w + b.value * b.w) / (prev.w + b.w);
                    prev.wy += b.wy;
                    prev.w += b.w;
                    prev.end = b.end;
                }
                _ => merged.push(b),
            }
        }
        blocks = merged;
    }
    let _ = lambda;
    Ok(blocks_to_fit(&blocks, n))
}

fn touching(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

/// Value of the near-isotonic objective
/// `½ Σ wᵢ (yᵢ − θᵢ)² + theta · Σ (θᵢ₊₁ − θᵢ)₊` at `fitted`.
pub fn near_iso_objective(seq: &WeightedSequence, theta: f64, fitted: &[f64]) -> f64 {
    let quad: f64 = seq
        .values
        .iter()
        .zip(&seq.weights)
        .zip(fitted)
        .map(|((&y, &w), &f)| 0.5 * w * (y - f) * (y - f))
        .sum();
    let pen: f64 = fitted
        .windows(2)
        .map(|p| (p[1] - p[0]).max(0.0))
        .sum::<f64>()
        * theta;
    quad + pen
}
