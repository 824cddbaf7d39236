//! Time-lagged regression: lag-structured design construction and blockwise
//! coordinate descent for static and rolling prediction.
//!
//! The rolling design `Z` has one width-`K` block per predictor; row `t`
//! holds `x_{t−1,j}, …, x_{t−K,j}` for each predictor `j`, aligned with
//! response `y_t`. Fitting cycles over blocks, solving an ordered lasso per
//! block against the partial residuals of the others.

use ndarray::{s, Array1, Array2};
use serde::Serialize;

use crate::dataset::{center, Dataset};
use crate::diagnostics;
use crate::error::{Error, Result};
use crate::solver::{self, FitConfig, SplitCoefficients};

/// Number of predictors and maximum lag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LagSpec {
    pub p: usize,
    pub max_lag: usize,
}

impl LagSpec {
    pub fn new(p: usize, max_lag: usize) -> Result<Self> {
        if p == 0 || max_lag == 0 {
            return Err(Error::InvalidConfig(
                "LagSpec needs p ≥ 1 and max_lag ≥ 1".into(),
            ));
        }
        Ok(Self { p, max_lag })
    }

    pub fn n_cols(&self) -> usize {
        self.p * self.max_lag
    }

    /// Column range of block `j`.
    pub fn block(&self, j: usize) -> std::ops::Range<usize> {
        j * self.max_lag..(j + 1) * self.max_lag
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DesignOrigin {
    Static,
    Rolling,
}

/// Expanded `M × (K·p)` lagged feature matrix with block metadata.
#[derive(Debug, Clone)]
pub struct LagDesign {
    pub z: Array2<f64>,
    pub spec: LagSpec,
    pub origin: DesignOrigin,
    /// Leading time points dropped for lack of full history.
    pub dropped_rows: usize,
    /// Smallest lag present in each block: 1 for the strict rolling design,
    /// 0 when same-period values are included.
    pub min_lag: usize,
}

/// Builds the rolling design with lags `1..=K`: usable rows are the times
/// `t = K+1..N` (1-based), each row laid out block-by-block as
/// `{x_{t−1,j}, …, x_{t−K,j}}`, with the response aligned to `y_t`.
pub fn build_rolling_design(
    predictors: &Array2<f64>,
    response: &Array1<f64>,
    spec: &LagSpec,
) -> Result<(LagDesign, Array1<f64>)> {
    build_lag_design(predictors, response, spec, false)
}

/// As [`build_rolling_design`], but optionally including the same-period
/// value (lags `0..K`), as used when current-day measurements are legitimate
/// predictors.
pub fn build_lag_design(
    predictors: &Array2<f64>,
    response: &Array1<f64>,
    spec: &LagSpec,
    include_current: bool,
) -> Result<(LagDesign, Array1<f64>)> {
    let n = predictors.nrows();
    if response.len() != n {
        return Err(Error::DimensionMismatch {
            context: "response length vs predictor rows",
            expected: n,
            got: response.len(),
        });
    }
    if predictors.ncols() != spec.p {
        return Err(Error::DimensionMismatch {
            context: "predictor columns vs LagSpec.p",
            expected: spec.p,
            got: predictors.ncols(),
        });
    }
    let k = spec.max_lag;
    let min_lag = if include_current { 0 } else { 1 };
    // With lag 0 included the first usable time is K−1 (0-based); otherwise K.
    let first_t = if include_current { k - 1 } else { k };
    if n <= first_t {
        return Err(Error::SeriesTooShort {
            length: n,
            max_lag: k,
        });
    }
    let m = n - first_t;
    let mut z = Array2::zeros((m, spec.n_cols()));
    let mut y = Array1::zeros(m);
    for (row, t) in (first_t..n).enumerate() {
        for j in 0..spec.p {
            for (offset, lag) in (min_lag..min_lag + k).enumerate() {
                z[[row, j * k + offset]] = predictors[[t - lag, j]];
            }
        }
        y[row] = response[t];
    }
    Ok((
        LagDesign {
            z,
            spec: *spec,
            origin: DesignOrigin::Rolling,
            dropped_rows: first_t,
            min_lag,
        },
        y,
    ))
}

/// Configuration for the blockwise coordinate descent layer.
#[derive(Debug, Clone, Copy)]
pub struct BlockConfig {
    pub fit: FitConfig,
    /// Relative tolerance on the full objective across cycles.
    pub cycle_tol: f64,
    pub max_cycles: usize,
}

impl BlockConfig {
    pub fn new(fit: FitConfig) -> Self {
        Self {
            fit,
            cycle_tol: 1e-7,
            max_cycles: 200,
        }
    }
}

/// A fitted blockwise ordered lasso.
#[derive(Debug, Clone, Serialize)]
pub struct BlockFit {
    /// One split-coefficient pair of length `K` per predictor.
    pub blocks: Vec<SplitCoefficients>,
    pub intercept: f64,
    pub lam: f64,
    pub objective: f64,
    pub cycles: usize,
    pub converged: bool,
    /// Largest lag with an exactly nonzero coefficient per block (1-based;
    /// 0 for an all-zero block).
    pub effective_lags: Vec<usize>,
}

impl BlockFit {
    /// Flattened effective coefficients in design-column order.
    pub fn effective(&self) -> Vec<f64> {
        self.blocks.iter().flat_map(|b| b.effective()).collect()
    }

    /// Total penalty mass Σ over blocks of Σ (β⁺+β⁻).
    pub fn penalty_sum(&self) -> f64 {
        self.blocks.iter().map(|b| b.penalty_sum()).sum()
    }
}

/// Objective of the blockwise problem (same form as the single-block
/// objective, with the penalty summed over every block).
pub fn block_objective(
    x: &Array2<f64>,
    y: &Array1<f64>,
    blocks: &[SplitCoefficients],
    lam: f64,
) -> f64 {
    let eff = Array1::from_vec(blocks.iter().flat_map(|b| b.effective()).collect());
    let resid = &x.dot(&eff) - y;
    0.5 * resid.dot(&resid) + lam * blocks.iter().map(|b| b.penalty_sum()).sum::<f64>()
}

fn effective_lag_of(block: &SplitCoefficients, tol: f64) -> usize {
    block
        .effective()
        .iter()
        .rposition(|v| v.abs() > tol)
        .map(|i| i + 1)
        .unwrap_or(0)
}

/// Per-block effective lags at the given tolerance: the largest `k` with
/// `|β̂_kj| > tol`, or 0 for an all-zero block.
pub fn effective_lags(fit: &BlockFit, tol: f64) -> Vec<usize> {
    fit.blocks
        .iter()
        .map(|b| effective_lag_of(b, tol))
        .collect()
}

/// Fits the blockwise ordered lasso on a matrix already in lag layout.
///
/// Cycles blocks `j = 1..p`; each update forms the partial residual against
/// all other blocks' current fits (recomputed from scratch) and solves an
/// ordered lasso on the block's columns, warm-started from the block's
/// current coefficients so the full objective never increases.
pub fn fit_static(data: &Dataset, spec: &LagSpec, cfg: &BlockConfig) -> Result<BlockFit> {
    if data.n_cols() != spec.n_cols() {
        return Err(Error::DimensionMismatch {
            context: "design columns vs K·p",
            expected: spec.n_cols(),
            got: data.n_cols(),
        });
    }
    cfg.fit.validate()?;
    data.require_centered()?;

    // Degenerate block count: the problem is a single ordered lasso.
    if spec.p == 1 {
        let fit = solver::fit_ordered_lasso(data, &cfg.fit, None)?;
        let effective_lags = vec![effective_lag_of(&fit.coefficients, 0.0)];
        return Ok(BlockFit {
            blocks: vec![fit.coefficients],
            intercept: fit.intercept,
            lam: fit.lam,
            objective: fit.objective,
            cycles: fit.iterations,
            converged: fit.converged,
            effective_lags,
        });
    }

    let k = spec.max_lag;
    let mut blocks: Vec<SplitCoefficients> = vec![SplitCoefficients::zeros(k); spec.p];
    let mut obj = block_objective(&data.x, &data.y, &blocks, cfg.fit.lam);
    let mut cycles = 0;
    let mut converged = false;

    while cycles < cfg.max_cycles {
        cycles += 1;
        let cycle_start_obj = obj;
        for j in 0..spec.p {
            // Partial residual against every other block, from scratch.
            let mut fitted_other: Array1<f64> = Array1::zeros(data.n_rows());
            for (l, block) in blocks.iter().enumerate() {
                if l == j {
                    continue;
                }
                let eff = Array1::from_vec(block.effective());
                fitted_other = fitted_other + data.x.slice(s![.., spec.block(l)]).dot(&eff);
            }
            let r = &data.y - &fitted_other;
            let sub = Dataset {
                x: data.x.slice(s![.., spec.block(j)]).to_owned(),
                y: r,
                column_means: Array1::zeros(k),
                y_mean: 0.0,
                centered: true,
            };
            let fit = solver::fit_ordered_lasso(&sub, &cfg.fit, Some(&blocks[j]))?;
            blocks[j] = fit.coefficients;

            let new_obj = block_objective(&data.x, &data.y, &blocks, cfg.fit.lam);
            diagnostics::check_descent("fit_static block update", obj, new_obj);
            obj = new_obj;
        }
        if (cycle_start_obj - obj).abs() <= cfg.cycle_tol * (1.0 + obj.abs()) {
            converged = true;
            break;
        }
    }

    let eff: Vec<f64> = blocks.iter().flat_map(|b| b.effective()).collect();
    let intercept = data.intercept_for(&eff);
    let effective_lags = blocks.iter().map(|b| effective_lag_of(b, 0.0)).collect();
    Ok(BlockFit {
        blocks,
        intercept,
        lam: cfg.fit.lam,
        objective: obj,
        cycles,
        converged,
        effective_lags,
    })
}

/// Rolling prediction: builds the lag design from the raw series, centers
/// globally over the usable rows, and runs [`fit_static`].
pub fn fit_rolling(
    predictors: &Array2<f64>,
    response: &Array1<f64>,
    spec: &LagSpec,
    cfg: &BlockConfig,
) -> Result<BlockFit> {
    let (design, y) = build_rolling_design(predictors, response, spec)?;
    let data = center(&Dataset::new(design.z, y)?);
    fit_static(&data, spec, cfg)
}
