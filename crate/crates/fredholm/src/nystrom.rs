//! Fredholm determinants by Nyström discretisation.
//!
//! Continuous kernels on (a, a + length) use Gauss–Legendre nodes and
//! det(I - sqrt(w) K sqrt(w)). Lattice kernels on {a-1, a-2, ...} use a
//! finite section. In both cases the error estimate is the change under
//! doubling the node count (or the section length).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::FredholmError;
use crate::quadrature::gauss_legendre_on;

pub type BatchKernel<'a> = Box<dyn Fn(&[f64], &[f64]) -> DMatrix<Complex64> + 'a>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    /// (a, a + length); `length` is the truncation of a half-line.
    Interval { a: f64, length: f64 },
    /// {top - 1, top - 2, ..., top - count}.
    Lattice { top: i64, count: usize },
}

/// A kernel together with everything needed to discretise it.
pub struct KernelSpec<'a> {
    pub evaluator: BatchKernel<'a>,
    pub domain: Domain,
    /// Log-weight kappa: the kernel is used as e^{kappa(x) - kappa(y)} K(x, y).
    pub conjugation: Option<Box<dyn Fn(f64) -> f64 + 'a>>,
    pub nodes: usize,
    pub tolerance: f64,
}

impl<'a> KernelSpec<'a> {
    pub fn pointwise<F>(f: F, domain: Domain) -> Self
    where
        F: Fn(f64, f64) -> f64 + 'a,
    {
        let evaluator: BatchKernel<'a> = Box::new(move |xs: &[f64], ys: &[f64]| {
            DMatrix::from_fn(xs.len(), ys.len(), |i, j| Complex64::new(f(xs[i], ys[j]), 0.0))
        });
        Self { evaluator, domain, conjugation: None, nodes: 64, tolerance: 1e-10 }
    }

    pub fn batch(evaluator: BatchKernel<'a>, domain: Domain) -> Self {
        Self { evaluator, domain, conjugation: None, nodes: 64, tolerance: 1e-10 }
    }

    pub fn with_nodes(mut self, nodes: usize) -> Self {
        self.nodes = nodes;
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    pub fn with_conjugation(mut self, kappa: impl Fn(f64) -> f64 + 'a) -> Self {
        self.conjugation = Some(Box::new(kappa));
        self
    }

    fn points(&self, refine: usize) -> (Vec<f64>, Vec<f64>) {
        match self.domain {
            Domain::Interval { a, length } => gauss_legendre_on(a, a + length, self.nodes * refine),
            Domain::Lattice { top, count } => {
                let pts = (1..=(count * refine) as i64).map(|k| (top - k) as f64).collect::<Vec<_>>();
                let w = vec![1.0; pts.len()];
                (pts, w)
            }
        }
    }

    /// Determinant at one resolution (`refine` multiplies nodes or section).
    pub fn det_at(&self, refine: usize) -> Result<Complex64, FredholmError> {
        let (x, w) = self.points(refine);
        let mut k = (self.evaluator)(&x, &x);
        let sw: Vec<f64> = w.iter().map(|v| v.sqrt()).collect();
        let kap: Option<Vec<f64>> = self.conjugation.as_ref().map(|c| x.iter().map(|&p| c(p)).collect());
        for i in 0..x.len() {
            for j in 0..x.len() {
                let mut v = k[(i, j)] * sw[i] * sw[j];
                if let Some(kp) = &kap {
                    v *= (kp[i] - kp[j]).exp();
                }
                k[(i, j)] = -v;
            }
            k[(i, i)] += 1.0;
        }
        if k.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(FredholmError::NonFinite);
        }
        Ok(k.lu().determinant())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetEstimate {
    pub value: f64,
    pub error: f64,
}

/// det(I - K) with an error estimate from doubling.
pub fn fredholm_det(spec: &KernelSpec) -> Result<DetEstimate, FredholmError> {
    let d1 = spec.det_at(1)?;
    let d2 = spec.det_at(2)?;
    let error = (d1 - d2).norm();
    if error > spec.tolerance {
        return Err(FredholmError::NotConverged { value: d2.re, estimate: error, tolerance: spec.tolerance });
    }
    Ok(DetEstimate { value: d2.re, error })
}

/// Plain real Nyström determinant of a kernel on [a, b] with `n` nodes.
pub fn det_on_interval(kernel: impl Fn(f64, f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let (x, w) = gauss_legendre_on(a, b, n);
    let sw: Vec<f64> = w.iter().map(|v| v.sqrt()).collect();
    let m = DMatrix::from_fn(n, n, |i, j| (i == j) as u8 as f64 - sw[i] * kernel(x[i], x[j]) * sw[j]);
    m.lu().determinant()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_kernel_is_one() {
        let spec = KernelSpec::pointwise(|_, _| 0.0, Domain::Interval { a: 0.0, length: 5.0 });
        let d = fredholm_det(&spec).unwrap();
        assert_eq!(d.value, 1.0);
        let spec = KernelSpec::pointwise(|_, _| 0.0, Domain::Lattice { top: 0, count: 4 });
        assert_eq!(fredholm_det(&spec).unwrap().value, 1.0);
    }

    #[test]
    fn rank_one_exponential() {
        let spec = KernelSpec::pointwise(|x, y| (-x - y).exp(), Domain::Interval { a: 0.0, length: 40.0 }).with_nodes(128);
        let d = fredholm_det(&spec).unwrap();
        assert!((d.value - 0.5).abs() < 1e-10, "{d:?}");
    }

    #[test]
    fn conjugation_leaves_det_unchanged() {
        let k = |x: f64, y: f64| 0.3 * (-(x - y).powi(2)).exp() * (-x * x).exp();
        let plain = KernelSpec::pointwise(k, Domain::Interval { a: -1.0, length: 6.0 });
        let conj = KernelSpec::pointwise(k, Domain::Interval { a: -1.0, length: 6.0 }).with_conjugation(|x| 0.7 * x);
        let a = fredholm_det(&plain).unwrap().value;
        let b = fredholm_det(&conj).unwrap().value;
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn lattice_section() {
        // K(x, y) = 2^{x + y} on {-1, -2, ...}: rank one, trace 1/3.
        let spec = KernelSpec::pointwise(|x, y| 2f64.powf(x + y), Domain::Lattice { top: 0, count: 30 });
        let d = fredholm_det(&spec).unwrap();
        assert!((d.value - 2.0 / 3.0).abs() < 1e-12);
    }
}
