//! Ordered lasso: least-squares regression with an ℓ1 penalty and a
//! monotone-nonincreasing constraint on coefficient magnitudes, solved by
//! proximal gradient descent with isotonic regression (PAVA) as the proximal
//! operator.
//!
//! The crate covers the full workflow around the core solver:
//!
//! * [`isotonic`] — exact weighted isotonic regression (non-increasing) and
//!   the near-isotonic relaxation.
//! * [`prox`] — the proximal operator of the monotone-nonnegative ℓ1 penalty.
//! * [`solver`] — the ordered lasso on a single ordered coefficient block.
//! * [`timelag`] — lagged design construction and blockwise coordinate
//!   descent for static and rolling time-lagged regression.
//! * [`autoregress`] — AR fitting with automatic order selection (ordered
//!   lasso vs. least squares + AIC).
//! * [`glm`] — logistic regression with the ordered penalty via IRLS.
//! * [`modelsel`] — regularization paths, cross-validation, and
//!   plateau-count degrees of freedom.
//! * [`experiments`] — seeded simulation and real-data runners that emit
//!   tabular results.

pub mod autoregress;
pub mod dataset;
pub mod diagnostics;
pub mod error;
pub mod experiments;
pub mod glm;
pub mod io;
pub mod isotonic;
pub mod modelsel;
pub mod prox;
pub mod solver;
pub mod timelag;

pub use dataset::Dataset;
pub use error::{Error, Result};
pub use isotonic::{IsotonicFit, NearIsoConfig, WeightedSequence};
pub use prox::ProxRequest;
pub use solver::{FitConfig, OrderedLassoFit, SplitCoefficients};
pub use timelag::{BlockConfig, BlockFit, LagDesign, LagSpec};
