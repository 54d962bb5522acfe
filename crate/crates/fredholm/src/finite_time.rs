//! Finite-time kernel for M slow particles (rate alpha) in front of a step
//! of n unit-rate particles, slow particles at 0..M-1 and step particles at
//! -1..-n. With
//!
//!   K(x, y) = \oint_w \oint_z e^{t/w} w^x (1-w)^n (1/w - alpha)^M
//!             / (e^{t/z} z^{y+1} (1-z)^n (1/z - alpha)^M) / (w - z)
//!
//! the probability P(x_n(t) >= xi) is det(I - K) on {xi-1, ..., -n}; the
//! rows below -n vanish, so the finite section is exact and the only
//! numerical error comes from the contour quadrature.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::FredholmError;
use crate::quadrature::ContourRule;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteTimeParams {
    pub n: u32,
    pub t: f64,
    pub alpha: f64,
    pub m: u32,
}

/// z runs on a circle around {1, 1/alpha} that excludes 0, w on a larger
/// circle around 0 that contains the z circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contours {
    pub z_center: f64,
    pub z_radius: f64,
    pub w_radius: f64,
    pub nodes: usize,
    pub min_separation: f64,
}

impl Contours {
    pub fn for_alpha(alpha: f64) -> Self {
        let c = 0.5 * (1.0 + 1.0 / alpha);
        let r = c - 0.4;
        Self { z_center: c, z_radius: r, w_radius: 1.5 * (c + r), nodes: 256, min_separation: 0.05 }
    }

    pub fn validate(&self, alpha: f64) -> Result<(), FredholmError> {
        let (c, r) = (self.z_center, self.z_radius);
        let gaps = [
            // 0 outside the z circle
            c - r,
            // 1 and 1/alpha inside it
            r - (c - 1.0).abs(),
            r - (c - 1.0 / alpha).abs(),
            // z circle inside the w circle
            self.w_radius - (c + r),
        ];
        let separation = gaps.iter().copied().fold(f64::INFINITY, f64::min);
        if separation < self.min_separation {
            return Err(FredholmError::ContourTooClose { separation, minimum: self.min_separation });
        }
        Ok(())
    }
}

fn check(p: &FiniteTimeParams) -> Result<(), FredholmError> {
    if p.n == 0 || !(p.t > 0.0) || !(p.alpha > 0.0 && p.alpha < 1.0) {
        return Err(FredholmError::InvalidParameter(format!(
            "need n >= 1, t > 0, alpha in (0,1); got n={}, t={}, alpha={}",
            p.n, p.t, p.alpha
        )));
    }
    Ok(())
}

/// Kernel matrix K(xs[i], ys[j]), optionally conjugated by e^{c (x - y)}.
pub fn finite_time_matrix(
    xs: &[i64],
    ys: &[i64],
    p: &FiniteTimeParams,
    contours: &Contours,
    conjugation: f64,
) -> Result<DMatrix<Complex64>, FredholmError> {
    check(p)?;
    contours.validate(p.alpha)?;
    let zc = ContourRule::circle(Complex64::new(contours.z_center, 0.0), contours.z_radius, contours.nodes);
    let wc = ContourRule::circle(Complex64::new(0.0, 0.0), contours.w_radius, contours.nodes);
    let (n, m, t, a) = (p.n as f64, p.m as f64, p.t, p.alpha);
    let one = Complex64::new(1.0, 0.0);

    let a_mat = DMatrix::from_fn(xs.len(), wc.len(), |i, k| {
        let w = wc.nodes[k];
        let lg = t / w + xs[i] as f64 * w.ln() + n * (one - w).ln() + m * (one / w - a).ln() + conjugation * xs[i] as f64;
        wc.weights[k] * lg.exp()
    });
    let b_mat = DMatrix::from_fn(zc.len(), ys.len(), |k, j| {
        let z = zc.nodes[k];
        let y = ys[j] as f64;
        let lg = -t / z - (y + 1.0) * z.ln() - n * (one - z).ln() - m * (one / z - a).ln() - conjugation * y;
        zc.weights[k] * lg.exp()
    });
    let c_mat = DMatrix::from_fn(wc.len(), zc.len(), |k, l| one / (wc.nodes[k] - zc.nodes[l]));
    let k = a_mat * c_mat * b_mat;
    if k.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(FredholmError::NonFinite);
    }
    Ok(k)
}

pub fn finite_time_kernel(x: i64, y: i64, p: &FiniteTimeParams) -> Result<Complex64, FredholmError> {
    let k = finite_time_matrix(&[x], &[y], p, &Contours::for_alpha(p.alpha), 0.0)?;
    Ok(k[(0, 0)])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdfValue {
    pub value: f64,
    pub error: f64,
    pub max_imag: f64,
}

fn section_det(xi: i64, p: &FiniteTimeParams, contours: &Contours, conjugation: f64) -> Result<(Complex64, f64), FredholmError> {
    let sites: Vec<i64> = (-(p.n as i64)..xi).rev().collect();
    if sites.is_empty() {
        return Ok((Complex64::new(1.0, 0.0), 0.0));
    }
    let mut k = finite_time_matrix(&sites, &sites, p, contours, conjugation)?;
    let max_imag = k.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    k.neg_mut();
    for i in 0..sites.len() {
        k[(i, i)] += 1.0;
    }
    Ok((k.lu().determinant(), max_imag))
}

/// P(x_n(t) >= xi). The error estimate is the change when the contour
/// node count is doubled.
pub fn finite_time_cdf(xi: i64, p: &FiniteTimeParams) -> Result<CdfValue, FredholmError> {
    finite_time_cdf_with(xi, p, &Contours::for_alpha(p.alpha), 0.0)
}

pub fn finite_time_cdf_with(xi: i64, p: &FiniteTimeParams, contours: &Contours, conjugation: f64) -> Result<CdfValue, FredholmError> {
    let (d1, _) = section_det(xi, p, contours, conjugation)?;
    let fine = Contours { nodes: 2 * contours.nodes, ..*contours };
    let (d2, max_imag) = section_det(xi, p, &fine, conjugation)?;
    Ok(CdfValue { value: d2.re, error: (d1 - d2).norm().max(d2.im.abs()), max_imag })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_contours_are_valid() {
        for a in [0.1, 0.25, 0.3, 0.5, 0.9] {
            Contours::for_alpha(a).validate(a).unwrap();
        }
        let bad = Contours { z_radius: 0.1, ..Contours::for_alpha(0.3) };
        assert!(matches!(bad.validate(0.3), Err(FredholmError::ContourTooClose { .. })));
    }

    #[test]
    fn trivial_below_the_step() {
        let p = FiniteTimeParams { n: 3, t: 1.0, alpha: 0.3, m: 1 };
        assert_eq!(finite_time_cdf(-3, &p).unwrap().value, 1.0);
    }

    #[test]
    fn single_step_particle_no_slow() {
        // M = 0, n = 1: x_1(t) = -1 + Poisson(t).
        let p = FiniteTimeParams { n: 1, t: 2.0, alpha: 0.3, m: 0 };
        let v = finite_time_cdf(0, &p).unwrap().value;
        assert!((v - (1.0 - (-2f64).exp())).abs() < 1e-10, "{v}");
    }
}
