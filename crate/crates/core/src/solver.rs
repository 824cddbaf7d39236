//! The ordered lasso on a single ordered coefficient block.
//!
//! Solves
//! `min ½ Σᵢ (yᵢ − Σⱼ xᵢⱼ(βⱼ⁺−βⱼ⁻))² + λ Σⱼ (βⱼ⁺+βⱼ⁻)`
//! subject to each half being non-increasing and nonnegative, by alternating
//! proximal-gradient steps on β⁺ (holding β⁻) and β⁻ (holding β⁺). Each step
//! backtracks until the quadratic upper-bound condition holds, which
//! guarantees the objective never increases. Step sizes for the two halves
//! are tracked independently.

use ndarray::{Array1, Array2};
use serde::Serialize;

use crate::dataset::Dataset;
use crate::diagnostics;
use crate::error::{Error, Result};
use crate::prox;

/// Split representation β = β⁺ − β⁻ with both halves in the
/// non-increasing nonnegative cone.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitCoefficients {
    pub plus: Vec<f64>,
    pub minus: Vec<f64>,
}

impl SplitCoefficients {
    pub fn zeros(p: usize) -> Self {
        Self {
            plus: vec![0.0; p],
            minus: vec![0.0; p],
        }
    }

    pub fn len(&self) -> usize {
        self.plus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty()
    }

    /// Effective coefficients βⱼ = βⱼ⁺ − βⱼ⁻.
    pub fn effective(&self) -> Vec<f64> {
        self.plus
            .iter()
            .zip(&self.minus)
            .map(|(p, m)| p - m)
            .collect()
    }

    /// Penalty value Σⱼ (βⱼ⁺ + βⱼ⁻).
    pub fn penalty_sum(&self) -> f64 {
        self.plus.iter().sum::<f64>() + self.minus.iter().sum::<f64>()
    }

    /// Both halves non-increasing and nonnegative (no tolerance).
    pub fn is_feasible(&self) -> bool {
        let ok = |v: &[f64]| v.iter().all(|&x| x >= 0.0) && v.windows(2).all(|w| w[0] >= w[1]);
        ok(&self.plus) && ok(&self.minus)
    }
}

/// Solver configuration.
#[derive(Debug, Clone, Copy)]
pub struct FitConfig {
    /// Penalty λ ≥ 0.
    pub lam: f64,
    pub max_iter: usize,
    /// Convergence tolerance on the objective change, relative as
    /// `|Δ| ≤ tol · (1 + |objective|)`.
    pub tol: f64,
    /// Near-isotonic relaxation for the prox; `None` (or `+∞`) keeps the
    /// exact order constraint, `0` drops it (plain lasso).
    pub theta: Option<f64>,
    /// Backtracking shrink factor in (0, 1).
    pub backtrack_shrink: f64,
    /// Initial step size for both halves.
    pub initial_step: f64,
}

impl FitConfig {
    pub fn new(lam: f64) -> Self {
        Self {
            lam,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.lam < 0.0 || self.lam.is_nan() {
            return Err(Error::NegativePenalty(self.lam));
        }
        if let Some(t) = self.theta {
            if t < 0.0 || t.is_nan() {
                return Err(Error::NegativeTheta(t));
            }
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be positive".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig("tol must be positive".into()));
        }
        if !(self.backtrack_shrink > 0.0 && self.backtrack_shrink < 1.0) {
            return Err(Error::InvalidConfig(
                "backtrack_shrink must lie in (0, 1)".into(),
            ));
        }
        if !(self.initial_step > 0.0) {
            return Err(Error::InvalidConfig("initial_step must be positive".into()));
        }
        Ok(())
    }
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            lam: 1.0,
            max_iter: 10_000,
            tol: 1e-8,
            theta: None,
            backtrack_shrink: 0.5,
            initial_step: 1.0,
        }
    }
}

/// A fitted ordered lasso.
#[derive(Debug, Clone, Serialize)]
pub struct OrderedLassoFit {
    pub coefficients: SplitCoefficients,
    /// Intercept on the original (uncentered) scale.
    pub intercept: f64,
    pub lam: f64,
    /// Objective value at the stored solution.
    pub objective: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Whether |β̂ⱼ| is non-increasing. The constraints strongly encourage
    /// this but do not force it: both halves of a pair can be positive.
    pub monotone_magnitudes: bool,
}

/// True when the magnitude sequence is non-increasing, within a slack
/// proportional to its scale.
pub fn magnitudes_nonincreasing(effective: &[f64]) -> bool {
    let scale = effective.iter().fold(1.0f64, |a, &b| a.max(b.abs()));
    effective
        .windows(2)
        .all(|w| w[0].abs() >= w[1].abs() - 1e-10 * scale)
}

/// Objective of the split problem at the given coefficients.
pub fn objective(data: &Dataset, coef: &SplitCoefficients, lam: f64) -> Result<f64> {
    if coef.len() != data.n_cols() {
        return Err(Error::DimensionMismatch {
            context: "coefficient length vs columns of X",
            expected: data.n_cols(),
            got: coef.len(),
        });
    }
    if coef.minus.len() != coef.plus.len() {
        return Err(Error::DimensionMismatch {
            context: "minus half vs plus half",
            expected: coef.plus.len(),
            got: coef.minus.len(),
        });
    }
    let eff = Array1::from_vec(coef.effective());
    let resid = &data.x.dot(&eff) - &data.y;
    Ok(0.5 * resid.dot(&resid) + lam * coef.penalty_sum())
}

/// One backtracked proximal-gradient step on a single half.
///
/// Shrinks the step until the quadratic upper bound
/// `g(z) ≤ g(u) + ∇g(u)ᵀ(z−u) + ‖z−u‖²/(2t)` holds, which implies the full
/// objective decreases. Returns the new point, the accepted step size (kept
/// for the next iteration), and g at the new point.
fn prox_gradient_step<G>(
    u: &[f64],
    grad: &[f64],
    g_u: f64,
    mut t: f64,
    lam: f64,
    theta: Option<f64>,
    shrink: f64,
    g: G,
) -> Result<(Vec<f64>, f64, f64)>
where
    G: Fn(&[f64]) -> f64,
{
    let slack = 1e-12 * g_u.abs().max(1.0);
    loop {
        let point: Vec<f64> = u.iter().zip(grad).map(|(&ui, &gi)| ui - t * gi).collect();
        let z = prox::prox_shift_clip(&point, t * lam, theta)?;
        let g_z = g(&z);
        let mut linear = 0.0;
        let mut dist2 = 0.0;
        for ((&zi, &ui), &gi) in z.iter().zip(u).zip(grad) {
            let d = zi - ui;
            linear += gi * d;
            dist2 += d * d;
        }
        if g_z <= g_u + linear + dist2 / (2.0 * t) + slack {
            return Ok((z, t, g_z));
        }
        t *= shrink;
        if t < 1e-20 {
            // Step underflow: no move is possible that satisfies the
            // sufficient-decrease test; stay put.
            return Ok((u.to_vec(), t, g_u));
        }
    }
}

/// Fits the ordered lasso by alternating proximal-gradient descent on the
/// split coefficients.
///
/// `data` must be centered. Starts from zeros unless `warm` is given (path
/// fitting warm-starts from the previous λ).
pub fn fit_ordered_lasso(
    data: &Dataset,
    cfg: &FitConfig,
    warm: Option<&SplitCoefficients>,
) -> Result<OrderedLassoFit> {
    cfg.validate()?;
    data.require_centered()?;
    let p = data.n_cols();
    if let Some(w) = warm {
        if w.len() != p {
            return Err(Error::DimensionMismatch {
                context: "warm start length vs columns of X",
                expected: p,
                got: w.len(),
            });
        }
    }

    let mut coef = warm.cloned().unwrap_or_else(|| SplitCoefficients::zeros(p));
    let x = &data.x;
    let xt = data.x.t();
    let y = &data.y;

    let g_of = |eff: &Array1<f64>| -> f64 {
        let resid = &x.dot(eff) - y;
        0.5 * resid.dot(&resid)
    };

    let mut eff = Array1::from_vec(coef.effective());
    let mut g_cur = g_of(&eff);
    let mut obj = g_cur + cfg.lam * coef.penalty_sum();

    let mut t_plus = cfg.initial_step;
    let mut t_minus = cfg.initial_step;
    let mut iterations = 0;
    let mut converged = false;

    for _ in 0..cfg.max_iter {
        iterations += 1;

        // β⁺ step, holding β⁻ fixed.
        let resid = &x.dot(&eff) - y;
        let grad_plus = xt.dot(&resid);
        let minus = coef.minus.clone();
        let (new_plus, t_p, g_new) = prox_gradient_step(
            &coef.plus,
            grad_plus.as_slice().unwrap(),
            g_cur,
            t_plus,
            cfg.lam,
            cfg.theta,
            cfg.backtrack_shrink,
            |z| {
                let eff_z = Array1::from_iter(z.iter().zip(&minus).map(|(a, b)| a - b));
                g_of(&eff_z)
            },
        )?;
        coef.plus = new_plus;
        t_plus = t_p;
        g_cur = g_new;
        eff = Array1::from_vec(coef.effective());

        // β⁻ step, holding β⁺ fixed.
        let resid = &x.dot(&eff) - y;
        let grad_minus = -xt.dot(&resid);
        let plus = coef.plus.clone();
        let (new_minus, t_m, g_new) = prox_gradient_step(
            &coef.minus,
            grad_minus.as_slice().unwrap(),
            g_cur,
            t_minus,
            cfg.lam,
            cfg.theta,
            cfg.backtrack_shrink,
            |z| {
                let eff_z = Array1::from_iter(plus.iter().zip(z).map(|(a, b)| a - b));
                g_of(&eff_z)
            },
        )?;
        coef.minus = new_minus;
        t_minus = t_m;
        g_cur = g_new;
        eff = Array1::from_vec(coef.effective());

        let new_obj = g_cur + cfg.lam * coef.penalty_sum();
        diagnostics::check_descent("fit_ordered_lasso", obj, new_obj);
        let delta = obj - new_obj;
        obj = new_obj;
        if delta.abs() <= cfg.tol * (1.0 + obj.abs()) {
            converged = true;
            break;
        }
    }

    let effective = coef.effective();
    let monotone_magnitudes = magnitudes_nonincreasing(&effective);
    let intercept = data.intercept_for(&effective);
    let objective = objective(data, &coef, cfg.lam)?;

    Ok(OrderedLassoFit {
        coefficients: coef,
        intercept,
        lam: cfg.lam,
        objective,
        iterations,
        converged,
        monotone_magnitudes,
    })
}

/// The standard lasso through the same machinery: the order constraint is
/// dropped by setting the relaxation to zero, so the prox reduces to
/// soft-thresholding of each nonnegative half.
pub fn fit_lasso(
    data: &Dataset,
    cfg: &FitConfig,
    warm: Option<&SplitCoefficients>,
) -> Result<OrderedLassoFit> {
    let cfg = FitConfig {
        theta: Some(0.0),
        ..*cfg
    };
    fit_ordered_lasso(data, &cfg, warm)
}

/// Upper bound on λ above which the zero solution is optimal: at
/// `λ ≥ ‖Xᵀy‖_∞` the shifted gradient is non-positive everywhere, so the
/// prox of a step from zero stays at zero.
pub fn lambda_max(x: &Array2<f64>, y: &Array1<f64>) -> f64 {
    x.t().dot(y).iter().fold(0.0f64, |a, &v| a.max(v.abs()))
}
