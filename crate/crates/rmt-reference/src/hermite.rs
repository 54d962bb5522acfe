//! F_GUE(M)(s) = det(delta_jk - \int_s^\infty phi_j phi_k), j, k < M, with
//! phi_j the orthonormal functions for the weight e^{-x^2/2}.

use fredholm::{DetEstimate, composite_gauss_legendre};
use nalgebra::DMatrix;

use crate::error::RmtError;

/// phi_0(x), ..., phi_{m-1}(x).
pub fn oscillator_functions(x: f64, m: usize) -> Vec<f64> {
    let mut phi = Vec::with_capacity(m);
    if m == 0 {
        return phi;
    }
    phi.push((-x * x / 4.0).exp() / (2.0 * std::f64::consts::PI).powf(0.25));
    if m > 1 {
        phi.push(x * phi[0]);
    }
    for j in 1..m.saturating_sub(1) {
        let next = (x * phi[j] - (j as f64).sqrt() * phi[j - 1]) / ((j + 1) as f64).sqrt();
        phi.push(next);
    }
    phi
}

/// Beyond this the functions are below double precision.
fn support_edge(m: usize) -> f64 {
    2.0 * (m as f64).sqrt() + 12.0
}

/// For s left of the origin the determinant is taken of the Gram matrix of
/// the phi_j on (-oo, s), which equals delta - G but keeps tiny values
/// accurate; to the right, delta - G is formed directly.
fn overlap_det(s: f64, m: usize, panels: usize) -> f64 {
    let edge = support_edge(m);
    if s >= edge {
        return 1.0;
    }
    if s <= -edge {
        return 0.0;
    }
    let left = s < 0.0;
    let (lo, hi) = if left { (-edge, s) } else { (s, edge) };
    let (x, w) = composite_gauss_legendre(lo, hi, panels, 20);
    let mut g = DMatrix::<f64>::zeros(m, m);
    for (&xi, &wi) in x.iter().zip(&w) {
        let phi = oscillator_functions(xi, m);
        for j in 0..m {
            for k in 0..=j {
                g[(j, k)] += wi * phi[j] * phi[k];
            }
        }
    }
    g.fill_upper_triangle_with_lower_triangle();
    if left {
        return g.determinant().max(0.0);
    }
    (DMatrix::<f64>::identity(m, m) - g).determinant()
}

/// Value with the change under halving the panel width as error estimate.
pub fn gue_m_cdf_estimate(s: f64, m: usize) -> Result<DetEstimate, RmtError> {
    if m == 0 {
        return Err(RmtError::InvalidParameter("M must be at least 1".into()));
    }
    if !s.is_finite() {
        return Err(RmtError::InvalidParameter(format!("s must be finite, got {s}")));
    }
    let width = if s < 0.0 { s + support_edge(m) } else { support_edge(m) - s };
    let panels = (width.ceil() as usize).max(1);
    let coarse = overlap_det(s, m, panels);
    let fine = overlap_det(s, m, 2 * panels);
    Ok(DetEstimate { value: fine.clamp(0.0, 1.0), error: (fine - coarse).abs() })
}

pub fn gue_m_cdf(s: f64, m: usize) -> Result<f64, RmtError> {
    let est = gue_m_cdf_estimate(s, m)?;
    if est.error > 1e-10 {
        return Err(RmtError::Tolerance { achieved: est.error, requested: 1e-10 });
    }
    Ok(est.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthonormal() {
        let m = 6;
        let (x, w) = composite_gauss_legendre(-20.0, 20.0, 40, 20);
        let mut gram = DMatrix::<f64>::zeros(m, m);
        for (&xi, &wi) in x.iter().zip(&w) {
            let phi = oscillator_functions(xi, m);
            for j in 0..m {
                for k in 0..m {
                    gram[(j, k)] += wi * phi[j] * phi[k];
                }
            }
        }
        assert!((gram - DMatrix::identity(m, m)).abs().max() < 1e-13);
    }

    #[test]
    fn one_by_one_is_normal() {
        assert!((gue_m_cdf(0.0, 1).unwrap() - 0.5).abs() < 1e-14);
        assert!((gue_m_cdf(1.959964, 1).unwrap() - 0.975).abs() < 1e-6);
    }

    #[test]
    fn concentrated() {
        assert!(gue_m_cdf(-10.0, 3).unwrap() < 1e-6);
        assert!(gue_m_cdf(10.0, 3).unwrap() > 1.0 - 1e-6);
    }
}
