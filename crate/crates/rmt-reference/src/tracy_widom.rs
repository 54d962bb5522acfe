//! Tracy–Widom laws as Fredholm determinants of Airy kernels:
//! beta = 2 uses the Airy kernel on (s, oo), beta = 1 uses Ai(x + y + s)
//! on (0, oo). The half-lines are cut where Ai^2 has fallen below 1e-30
//! and mapped affinely onto Gauss–Legendre nodes.

use fredholm::{DetEstimate, Domain, KernelSpec, fredholm_det};
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::airy::airy_unchecked;
use crate::error::RmtError;

/// Ai is below 1e-16 to the right of this point.
const AIRY_EDGE: f64 = 12.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Beta {
    Goe,
    Gue,
}

impl Beta {
    pub fn from_index(beta: u32) -> Result<Self, RmtError> {
        match beta {
            1 => Ok(Beta::Goe),
            2 => Ok(Beta::Gue),
            _ => Err(RmtError::InvalidParameter(format!("beta must be 1 or 2, got {beta}"))),
        }
    }

    pub fn index(self) -> u32 {
        match self {
            Beta::Goe => 1,
            Beta::Gue => 2,
        }
    }
}

pub fn airy_kernel(x: f64, y: f64) -> f64 {
    let (ax, dx) = airy_unchecked(x);
    if x == y {
        return dx * dx - x * ax * ax;
    }
    let (ay, dy) = airy_unchecked(y);
    (ax * dy - dx * ay) / (x - y)
}

fn airy_kernel_matrix(xs: &[f64], ys: &[f64]) -> DMatrix<Complex64> {
    let fx: Vec<(f64, f64)> = xs.iter().map(|&x| airy_unchecked(x)).collect();
    let fy: Vec<(f64, f64)> = ys.iter().map(|&y| airy_unchecked(y)).collect();
    DMatrix::from_fn(xs.len(), ys.len(), |i, j| {
        let (x, y) = (xs[i], ys[j]);
        let v = if x == y {
            fx[i].1 * fx[i].1 - x * fx[i].0 * fx[i].0
        } else {
            (fx[i].0 * fy[j].1 - fx[i].1 * fy[j].0) / (x - y)
        };
        Complex64::new(v, 0.0)
    })
}

pub fn tracy_widom_estimate(s: f64, beta: Beta, nodes: usize, tolerance: f64) -> Result<DetEstimate, RmtError> {
    if !s.is_finite() {
        return Err(RmtError::InvalidParameter(format!("s must be finite, got {s}")));
    }
    if s < -40.0 + AIRY_EDGE {
        return Err(RmtError::InvalidParameter(format!("s = {s} is below the tabulated Airy range")));
    }
    let spec = match beta {
        Beta::Gue => {
            if s >= AIRY_EDGE {
                return Ok(DetEstimate { value: 1.0, error: 0.0 });
            }
            KernelSpec::batch(Box::new(airy_kernel_matrix), Domain::Interval { a: s, length: AIRY_EDGE - s })
        }
        Beta::Goe => {
            if s >= 2.0 * AIRY_EDGE {
                return Ok(DetEstimate { value: 1.0, error: 0.0 });
            }
            let length = (AIRY_EDGE - s).max(1.0);
            KernelSpec::pointwise(move |x, y| airy_unchecked(x + y + s).0, Domain::Interval { a: 0.0, length })
        }
    };
    let spec = spec.with_nodes(nodes).with_tolerance(tolerance);
    Ok(fredholm_det(&spec)?)
}

pub fn tracy_widom_cdf(s: f64, beta: u32) -> Result<f64, RmtError> {
    let est = tracy_widom_estimate(s, Beta::from_index(beta)?, 64, 1e-8)?;
    Ok(est.value.clamp(0.0, 1.0))
}
