//! Quadrature rules: Gauss–Legendre on intervals and trapezoid rules on
//! circles (weights already include the 1/(2 pi i) of a contour integral).

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

/// Nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let rule = GaussLegendre::new(NonZeroUsize::new(n.max(1)).unwrap());
    let mut pairs: Vec<(f64, f64)> = rule.as_node_weight_pairs().to_vec();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Nodes and weights on [a, b].
pub fn gauss_legendre_on(a: f64, b: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let h = 0.5 * (b - a);
    let m = 0.5 * (b + a);
    (x.iter().map(|&x| m + h * x).collect(), w.iter().map(|&w| h * w).collect())
}

/// Composite rule: `panels` equal pieces of [a, b], `n` nodes each.
pub fn composite_gauss_legendre(a: f64, b: f64, panels: usize, n: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let h = (b - a) / panels as f64;
    let mut xs = Vec::with_capacity(panels * n);
    let mut ws = Vec::with_capacity(panels * n);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        for (xi, wi) in x.iter().zip(&w) {
            xs.push(lo + 0.5 * h * (xi + 1.0));
            ws.push(0.5 * h * wi);
        }
    }
    (xs, ws)
}

/// Points on an anticlockwise circle, with weights for (1/2 pi i) \oint dz.
#[derive(Debug, Clone)]
pub struct ContourRule {
    pub nodes: Vec<Complex64>,
    pub weights: Vec<Complex64>,
}

impl ContourRule {
    pub fn circle(center: Complex64, radius: f64, n: usize) -> Self {
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for k in 0..n {
            let e = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
            nodes.push(center + radius * e);
            weights.push(radius * e / n as f64);
        }
        Self { nodes, weights }
    }

    /// Circle around 0 with nodes bunched near the positive real axis. The
    /// angle is theta = 2 atan(lambda tan(u/2)) with u uniform, which keeps
    /// the rule spectrally accurate while resolving a peak of width ~lambda.
    pub fn clustered_circle(radius: f64, n: usize, lambda: f64) -> Self {
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for k in 0..n {
            let u = 2.0 * PI * (k as f64 + 0.5) / n as f64 - PI;
            let tn = (0.5 * u).tan();
            let theta = 2.0 * (lambda * tn).atan();
            let dtheta = lambda * (1.0 + tn * tn) / (1.0 + lambda * lambda * tn * tn) * 2.0 * PI / n as f64;
            let z = Complex64::from_polar(radius, theta);
            nodes.push(z);
            // dz/(2 pi i) = i z dtheta / (2 pi i)
            weights.push(z * dtheta / (2.0 * PI));
        }
        Self { nodes, weights }
    }

    /// Upward vertical line eps + i y, |y| <= height, with Gauss–Legendre
    /// nodes; weights for (1/2 pi i) \int dw.
    pub fn vertical_line(eps: f64, height: f64, panels: usize, n: usize) -> Self {
        let (y, w) = composite_gauss_legendre(-height, height, panels, n);
        Self {
            nodes: y.iter().map(|&y| Complex64::new(eps, y)).collect(),
            weights: w.iter().map(|&w| Complex64::new(w / (2.0 * PI), 0.0)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn chain(mut self, other: ContourRule) -> Self {
        self.nodes.extend(other.nodes);
        self.weights.extend(other.weights);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre_on(0.0, 2.0, 5);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(9)).sum();
        assert!((s - 2f64.powi(10) / 10.0).abs() < 1e-11);
        let (x, w) = composite_gauss_legendre(-1.0, 3.0, 4, 8);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.exp()).sum();
        assert!((s - (3f64.exp() - (-1f64).exp())).abs() < 1e-12);
    }

    #[test]
    fn circle_residues() {
        for rule in [ContourRule::circle(Complex64::new(0.5, 0.0), 2.0, 64), ContourRule::clustered_circle(2.0, 128, 0.3)] {
            // (1/2 pi i) \oint e^z / z^3 dz = 1/2
            let s: Complex64 = rule.nodes.iter().zip(&rule.weights).map(|(z, w)| w * z.exp() / z.powi(3)).sum();
            assert!((s - 0.5).norm() < 1e-12, "{s}");
        }
    }

    #[test]
    fn vertical_line_gaussian() {
        // (1/2 pi i) \int_{1+iR} e^{w^2/2} dw = (1/2 pi) \int e^{(1+iy)^2/2} dy = 1/sqrt(2 pi)
        let r = ContourRule::vertical_line(1.0, 12.0, 8, 16);
        let s: Complex64 = r.nodes.iter().zip(&r.weights).map(|(w, c)| c * (w * w / 2.0).exp()).sum();
        assert!((s.re - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-13 && s.im.abs() < 1e-13);
    }
}
