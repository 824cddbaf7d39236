//! Design matrix and response with centering metadata.

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};

/// Tolerance on column means for a dataset to count as centered.
pub const CENTERING_TOL: f64 = 1e-10;

/// An `N × p` design matrix with its response, plus the column means removed
/// by centering (needed to recover the intercept on the original scale).
#[derive(Debug, Clone)]
pub struct Dataset {
    pub x: Array2<f64>,
    pub y: Array1<f64>,
    pub column_means: Array1<f64>,
    pub y_mean: f64,
    pub centered: bool,
}

impl Dataset {
    /// Wraps raw (uncentered) data.
    pub fn new(x: Array2<f64>, y: Array1<f64>) -> Result<Self> {
        if x.nrows() != y.len() {
            return Err(Error::DimensionMismatch {
                context: "rows of X vs length of y",
                expected: x.nrows(),
                got: y.len(),
            });
        }
        if x.nrows() == 0 || x.ncols() == 0 {
            return Err(Error::EmptySequence);
        }
        let p = x.ncols();
        Ok(Self {
            x,
            y,
            column_means: Array1::zeros(p),
            y_mean: 0.0,
            centered: false,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.x.nrows()
    }

    pub fn n_cols(&self) -> usize {
        self.x.ncols()
    }

    /// Largest absolute column mean (including the response).
    pub fn max_abs_mean(&self) -> f64 {
        let n = self.n_rows() as f64;
        let mut worst = (self.y.sum() / n).abs();
        for col in self.x.columns() {
            worst = worst.max((col.sum() / n).abs());
        }
        worst
    }

    /// Errors unless the data are centered within [`CENTERING_TOL`].
    pub fn require_centered(&self) -> Result<()> {
        if !self.centered {
            let worst = self.max_abs_mean();
            if worst > CENTERING_TOL {
                return Err(Error::NotCentered(worst));
            }
        }
        Ok(())
    }

    /// Recovers the intercept on the original scale:
    /// `β₀ = ȳ − Σⱼ x̄ⱼ β̂ⱼ`.
    pub fn intercept_for(&self, coefficients: &[f64]) -> f64 {
        let dot: f64 = self
            .column_means
            .iter()
            .zip(coefficients)
            .map(|(m, b)| m * b)
            .sum();
        self.y_mean - dot
    }
}

/// Centers every column of `X` and the response, storing the removed means.
pub fn center(data: &Dataset) -> Dataset {
    let n = data.n_rows() as f64;
    let mut x = data.x.clone();
    let mut column_means = Array1::zeros(data.n_cols());
    for (j, mut col) in x.columns_mut().into_iter().enumerate() {
        let mean = col.sum() / n;
        col -= mean;
        column_means[j] = mean;
    }
    let y_mean = data.y.sum() / n;
    let y = &data.y - y_mean;
    Dataset {
        x,
        y,
        column_means: &column_means + &data.column_means,
        y_mean: y_mean + data.y_mean,
        centered: true,
    }
}

/// Centers the columns of a bare matrix, returning the means.
pub fn center_columns(x: &Array2<f64>) -> (Array2<f64>, Array1<f64>) {
    let n = x.nrows() as f64;
    let mut out = x.clone();
    let mut means = Array1::zeros(x.ncols());
    for (j, mut col) in out.columns_mut().into_iter().enumerate() {
        let mean = col.sum() / n;
        col -= mean;
        means[j] = mean;
    }
    (out, means)
}
