//! The finite-time kernel in shock scaling,
//!
//!   x(s) = (alpha - 1/2) t - 2 eta t^{1/2} - s sigma t^{1/2},
//!   n    = floor((1 - alpha) t / 2 + eta t^{1/2}),
//!
//! multiplied by sigma t^{1/2} and conjugated so that it has a finite limit.
//! Positions are integers, so x(s) is rounded and each grid point is
//! reported at the s it actually corresponds to.
//!
//! The w contour is a circle of radius 1/alpha + delta/sqrt(t) with nodes
//! bunched near the saddle; z runs over a small circle around 1/alpha and a
//! circle around 1 that stays off 0.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::critical::f0;
use crate::error::FredholmError;
use crate::quadrature::ContourRule;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RescaledParams {
    pub t: f64,
    pub alpha: f64,
    pub eta: f64,
    pub m: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RescaledQuadrature {
    pub w_nodes: usize,
    pub z_nodes: usize,
    pub delta: f64,
    /// Clustering strength; None picks min(1, 3/sqrt(t)).
    pub lambda: Option<f64>,
}

impl Default for RescaledQuadrature {
    fn default() -> Self {
        Self { w_nodes: 400, z_nodes: 200, delta: 1.0, lambda: None }
    }
}

pub fn sigma(alpha: f64) -> f64 {
    (alpha * (1.0 - 2.0 * alpha) / (2.0 * (1.0 - alpha))).sqrt()
}

pub fn step_count(p: &RescaledParams) -> u64 {
    ((1.0 - p.alpha) * p.t / 2.0 + p.eta * p.t.sqrt()).floor() as u64
}

/// Integer site closest to x(s), and the s it corresponds to exactly.
pub fn site_of(s: f64, p: &RescaledParams) -> (i64, f64) {
    let rt = p.t.sqrt();
    let sig = sigma(p.alpha);
    let base = (p.alpha - 0.5) * p.t - 2.0 * p.eta * rt;
    let x = (base - s * sig * rt).round();
    (x as i64, (base - x) / (sig * rt))
}

#[derive(Debug, Clone)]
pub struct RescaledKernel {
    pub values: DMatrix<Complex64>,
    pub s1: Vec<f64>,
    pub s2: Vec<f64>,
}

pub fn rescaled_kernel(s1: &[f64], s2: &[f64], p: &RescaledParams, q: &RescaledQuadrature) -> Result<RescaledKernel, FredholmError> {
    if !(p.alpha > 0.0 && p.alpha < 0.5) || !(p.t > 0.0) {
        return Err(FredholmError::InvalidParameter(format!("need alpha in (0, 1/2) and t > 0; got alpha={}, t={}", p.alpha, p.t)));
    }
    let (t, a) = (p.t, p.alpha);
    let rt = t.sqrt();
    let n = step_count(p) as f64;
    let m = p.m as f64;
    let pole = 1.0 / a;
    let lambda = q.lambda.unwrap_or((3.0 / rt).min(1.0));
    let small = q.delta / (2.0 * rt);
    if small > 0.5 * (pole - 1.0) {
        return Err(FredholmError::ContourTooClose { separation: pole - 1.0 - small, minimum: small });
    }
    let wc = ContourRule::clustered_circle(pole + q.delta / rt, q.w_nodes, lambda);
    let zc = ContourRule::circle(Complex64::new(pole, 0.0), small, q.z_nodes)
        .chain(ContourRule::circle(Complex64::new(1.0, 0.0), 0.999, q.z_nodes));

    let one = Complex64::new(1.0, 0.0);
    let reference = f0(Complex64::new(pole, 0.0), a).re;
    let x0 = (a - 0.5) * t;
    let la = a.ln();
    let sites1: Vec<(i64, f64)> = s1.iter().map(|&s| site_of(s, p)).collect();
    let sites2: Vec<(i64, f64)> = s2.iter().map(|&s| site_of(s, p)).collect();

    let a_mat = DMatrix::from_fn(sites1.len(), wc.len(), |i, k| {
        let w = wc.nodes[k];
        let x = sites1[i].0 as f64;
        let lg = t / w + x * w.ln() + n * (one - w).ln() + m * (one / w - a).ln() - t * reference + (x - x0) * la;
        wc.weights[k] * lg.exp()
    });
    let b_mat = DMatrix::from_fn(zc.len(), sites2.len(), |k, j| {
        let z = zc.nodes[k];
        let y = sites2[j].0 as f64;
        let lg = -t / z - (y + 1.0) * z.ln() - n * (one - z).ln() - m * (one / z - a).ln() + t * reference - (y - x0) * la;
        zc.weights[k] * lg.exp()
    });
    let c_mat = DMatrix::from_fn(wc.len(), zc.len(), |k, l| one / (wc.nodes[k] - zc.nodes[l]));
    let values = (a_mat * c_mat * b_mat) * Complex64::new(sigma(a) * rt, 0.0);
    if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(FredholmError::NonFinite);
    }
    Ok(RescaledKernel { values, s1: sites1.iter().map(|v| v.1).collect(), s2: sites2.iter().map(|v| v.1).collect() })
}

/// Largest |K_resc - target| over grid x grid, the target evaluated at the
/// realised s values.
pub fn rescaled_kernel_gap(
    p: &RescaledParams,
    grid: &[f64],
    q: &RescaledQuadrature,
    target: impl Fn(f64, f64) -> f64,
) -> Result<f64, FredholmError> {
    let k = rescaled_kernel(grid, grid, p, q)?;
    let mut gap = 0.0f64;
    for (i, &a) in k.s1.iter().enumerate() {
        for (j, &b) in k.s2.iter().enumerate() {
            gap = gap.max((k.values[(i, j)] - target(a, b)).norm());
        }
    }
    Ok(gap)
}
