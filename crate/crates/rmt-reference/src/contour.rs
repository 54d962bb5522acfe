//! K_GUE(M) as a double contour integral,
//!
//!   K(s1, s2) = \oint dz/(2 pi i) \int dw/(2 pi i)
//!               e^{w^2/2 - w s1} / e^{z^2/2 - z s2} (w/z)^M / (w - z),
//!
//! z anticlockwise on |z| = eps/2 and w upward on eps + iR. Only the pole of
//! the z integrand at 0 is enclosed; with this orientation the determinant
//! on (s, oo) reproduces the Hermite projection formula. On the line
//! |e^{w^2/2}| = e^{(eps^2 - y^2)/2}, so the line is cut at a height where
//! that factor is negligible.

use fredholm::{ContourRule, DetEstimate, Domain, KernelSpec, fredholm_det};
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::RmtError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourQuadrature {
    pub eps: f64,
    pub height: f64,
    pub line_panels: usize,
    pub line_nodes: usize,
    pub circle_nodes: usize,
    /// Gauss–Legendre nodes on (s, s + length).
    pub nodes: usize,
    pub length: Option<f64>,
    pub tolerance: f64,
}

impl Default for ContourQuadrature {
    fn default() -> Self {
        Self { eps: 1.0, height: 12.0, line_panels: 48, line_nodes: 16, circle_nodes: 64, nodes: 64, length: None, tolerance: 1e-9 }
    }
}

impl ContourQuadrature {
    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    /// Bound on the discarded part of the line integral for |s1| <= smax.
    pub fn tail_bound(&self, m: usize, smax: f64) -> f64 {
        let h = self.height;
        let modulus = (0.5 * (self.eps * self.eps - h * h) + self.eps * smax).exp() * (h + self.eps).powi(m as i32);
        modulus / (h * std::f64::consts::PI) * (2.0 / self.eps).powi(m as i32) / (0.5 * self.eps)
    }
}

pub fn gue_kernel_matrix(xs: &[f64], ys: &[f64], m: usize, q: &ContourQuadrature) -> DMatrix<Complex64> {
    let line = ContourRule::vertical_line(q.eps, q.height, q.line_panels, q.line_nodes);
    let circle = ContourRule::circle(Complex64::new(0.0, 0.0), 0.5 * q.eps, q.circle_nodes);
    let mi = m as i32;
    let a = DMatrix::from_fn(xs.len(), line.len(), |i, k| {
        let w = line.nodes[k];
        line.weights[k] * (w * w / 2.0 - w * xs[i]).exp() * w.powi(mi)
    });
    let c = DMatrix::from_fn(line.len(), circle.len(), |k, l| 1.0 / (line.nodes[k] - circle.nodes[l]));
    let b = DMatrix::from_fn(circle.len(), ys.len(), |l, j| {
        let z = circle.nodes[l];
        circle.weights[l] * (-z * z / 2.0 + z * ys[j]).exp() * z.powi(-mi)
    });
    a * c * b
}

pub fn gue_kernel(s1: f64, s2: f64, m: usize, q: &ContourQuadrature) -> Complex64 {
    gue_kernel_matrix(&[s1], &[s2], m, q)[(0, 0)]
}

fn upper_cutoff(s: f64, m: usize) -> f64 {
    s.max(0.0) + 2.0 * (m as f64).sqrt() + 10.0
}

pub fn gue_m_cdf_contour(s: f64, m: usize, q: &ContourQuadrature) -> Result<DetEstimate, RmtError> {
    if m == 0 || !(q.eps > 0.0) || !s.is_finite() {
        return Err(RmtError::InvalidParameter(format!("need M >= 1, eps > 0 and finite s; got M={m}, eps={}, s={s}", q.eps)));
    }
    let length = q.length.unwrap_or(upper_cutoff(s, m) - s);
    let tail = q.tail_bound(m, s.abs().max((s + length).abs()));
    if tail > q.tolerance {
        return Err(RmtError::Tolerance { achieved: tail, requested: q.tolerance });
    }
    let quad = *q;
    let spec = KernelSpec::batch(Box::new(move |xs: &[f64], ys: &[f64]| gue_kernel_matrix(xs, ys, m, &quad)), Domain::Interval { a: s, length })
        .with_nodes(q.nodes)
        .with_tolerance(q.tolerance);
    let mut est = fredholm_det(&spec)?;
    est.error = est.error.max(tail);
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one_kernel() {
        let q = ContourQuadrature::default();
        for (s1, s2) in [(0.0, 0.0), (1.3, -0.4), (-2.0, 3.0)] {
            let k = gue_kernel(s1, s2, 1, &q);
            let want = (-0.5 * s1 * s1).exp() / (2.0 * std::f64::consts::PI).sqrt();
            assert!((k.re - want).abs() < 1e-12 && k.im.abs() < 1e-12, "{k} vs {want}");
        }
    }

    #[test]
    fn symmetric_value() {
        let v = gue_m_cdf_contour(0.0, 1, &ContourQuadrature::default()).unwrap();
        assert!((v.value - 0.5).abs() < 1e-6);
    }
}
