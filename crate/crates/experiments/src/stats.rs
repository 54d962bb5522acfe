use serde::Serialize;

use crate::error::{ExperimentError, Result};

/// Right-continuous empirical distribution function.
#[derive(Debug, Clone, PartialEq)]
pub struct Ecdf {
    sorted: Vec<f64>,
}

impl Ecdf {
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(ExperimentError::Refused("empty sample".into()));
        }
        if samples.iter().any(|v| v.is_nan()) {
            return Err(ExperimentError::Refused("sample contains NaN".into()));
        }
        samples.sort_by(f64::total_cmp);
        Ok(Self { sorted: samples })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.sorted
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&v| v <= x) as f64 / self.sorted.len() as f64
    }

    pub fn quantile(&self, p: f64) -> f64 {
        let i = ((p * self.sorted.len() as f64).ceil() as usize).clamp(1, self.sorted.len());
        self.sorted[i - 1]
    }

    pub fn median(&self) -> f64 {
        self.quantile(0.5)
    }
}

/// sup |ECDF - F| over the jump points, both sides of every step. The left
/// side uses F just below the jump, so distributions with atoms are handled.
pub fn ks_distance(ecdf: &Ecdf, cdf: impl Fn(f64) -> f64) -> f64 {
    let n = ecdf.len() as f64;
    let v = ecdf.values();
    let mut d = 0.0f64;
    let mut i = 0;
    while i < v.len() {
        let mut j = i;
        while j + 1 < v.len() && v[j + 1] == v[i] {
            j += 1;
        }
        let below = cdf(v[i].next_down());
        d = d.max((below - i as f64 / n).abs()).max(((j + 1) as f64 / n - cdf(v[i])).abs());
        i = j + 1;
    }
    d
}

/// Half-width of the two-sided 95% Kolmogorov band the spec's thresholds
/// are written against.
pub fn ks_band(n: usize) -> f64 {
    1.63 / (n as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Proportion {
    pub hits: usize,
    pub trials: usize,
    pub estimate: f64,
    pub lo: f64,
    pub hi: f64,
}

impl Proportion {
    /// Wilson score interval at 95%.
    pub fn wilson(hits: usize, trials: usize) -> Self {
        let n = trials as f64;
        if trials == 0 {
            return Self { hits, trials, estimate: f64::NAN, lo: 0.0, hi: 1.0 };
        }
        let p = hits as f64 / n;
        let z = 1.959_963_984_540_054;
        let z2 = z * z;
        let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
        let half = z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
        Self { hits, trials, estimate: p, lo: (centre - half).max(0.0), hi: (centre + half).min(1.0) }
    }

    pub fn count<T>(items: &[T], pred: impl Fn(&T) -> bool) -> Self {
        Self::wilson(items.iter().filter(|x| pred(x)).count(), items.len())
    }

    pub fn standard_error(&self) -> f64 {
        (self.estimate * (1.0 - self.estimate) / self.trials as f64).sqrt()
    }

    /// Both interval edges inside target +- tol.
    pub fn within(&self, target: f64, tol: f64) -> bool {
        self.lo >= target - tol && self.hi <= target + tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub points: usize,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<LinearFit> {
    let n = xs.len();
    if n < 2 || ys.len() != n {
        return None;
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Some(LinearFit { slope, intercept: my - slope * mx, r2, points: n })
}

pub fn non_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] <= w[0])
}

pub fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}
