//! Least-squares fits in log-log space.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    /// Number of points used.
    pub points: usize,
}

impl Fit {
    pub fn predict(&self, x: f64) -> f64 {
        (self.intercept + self.slope * x.ln()).exp()
    }
}

/// Fits `ln y = intercept + slope · ln x`. Points with a non-positive
/// coordinate are skipped; fewer than three usable points, or all with the
/// same `x`, is a [`Error::DegenerateFit`].
pub fn fit_loglog(points: &[(f64, f64)]) -> Result<Fit> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(x, y)| x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite())
        .map(|&(x, y)| (x.ln(), y.ln()))
        .collect();
    let n = logs.len();
    if n < 3 {
        return Err(Error::DegenerateFit { points: n });
    }
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n as f64;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n as f64;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx <= f64::EPSILON * n as f64 {
        return Err(Error::DegenerateFit { points: n });
    }
    let slope = sxy / sxx;
    Ok(Fit { slope, intercept: my - slope * mx, points: n })
}
