//! f0(w) = 1/w + (alpha - 1/2) ln w + (1 - alpha)/2 ln(1 - w), the leading
//! exponent of the rescaled kernel. Its critical points are 2 and 1/alpha.

use num_complex::Complex64;

use crate::error::FredholmError;

pub fn f0(w: Complex64, alpha: f64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    one / w + (alpha - 0.5) * w.ln() + 0.5 * (1.0 - alpha) * (one - w).ln()
}

pub fn f0_prime(w: Complex64, alpha: f64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    -one / (w * w) + (alpha - 0.5) / w - 0.5 * (1.0 - alpha) / (one - w)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoints {
    /// 1/alpha, where the contours are placed.
    pub dominant: f64,
    pub other: f64,
    pub re_f0_dominant: f64,
    pub re_f0_other: f64,
    pub max_residual: f64,
}

impl CriticalPoints {
    pub fn ordered(&self) -> bool {
        self.re_f0_dominant < self.re_f0_other
    }
}

pub fn critical_points(alpha: f64) -> Result<CriticalPoints, FredholmError> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(FredholmError::InvalidParameter(format!("alpha must lie in (0, 1/2), got {alpha}")));
    }
    let p = 1.0 / alpha;
    if p - 2.0 < 1e-6 {
        return Err(FredholmError::InvalidParameter("critical points merge as alpha -> 1/2".into()));
    }
    let wp = Complex64::new(p, 0.0);
    let w2 = Complex64::new(2.0, 0.0);
    Ok(CriticalPoints {
        dominant: p,
        other: 2.0,
        re_f0_dominant: f0(wp, alpha).re,
        re_f0_other: f0(w2, alpha).re,
        max_residual: f0_prime(wp, alpha).norm().max(f0_prime(w2, alpha).norm()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_and_two_fifths() {
        let c = critical_points(0.25).unwrap();
        assert_eq!((c.other, c.dominant), (2.0, 4.0));
        assert!(c.ordered() && c.max_residual <= 1e-10);
        let c = critical_points(0.4).unwrap();
        assert!((c.dominant - 2.5).abs() < 1e-15);
        assert!(c.ordered() && c.max_residual <= 1e-10);
    }

    #[test]
    fn degenerate_and_out_of_range() {
        assert!(critical_points(0.5).is_err());
        assert!(critical_points(0.6).is_err());
        assert!(critical_points(0.0).is_err());
    }
}
