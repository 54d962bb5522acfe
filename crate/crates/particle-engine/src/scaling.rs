//! Shock constants and the diffusive scaling window.

use crate::error::EngineError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockScaling {
    pub alpha: f64,
    pub m: usize,
    pub eta: f64,
    pub t: f64,
    pub sigma: f64,
    pub xi_c: f64,
    pub shock_speed: f64,
}

pub fn shock_constants(alpha: f64, m: usize, eta: f64, t: f64) -> Result<ShockScaling, EngineError> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(EngineError::AlphaOutOfShockRegime(alpha));
    }
    if m == 0 {
        return Err(EngineError::InvalidParameter("M must be at least 1".into()));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(EngineError::NonPositiveHorizon(t));
    }
    Ok(ShockScaling {
        alpha,
        m,
        eta,
        t,
        sigma: (alpha * (1.0 - 2.0 * alpha) / (2.0 * (1.0 - alpha))).sqrt(),
        xi_c: eta * (2.0 * (1.0 - 2.0 * alpha) / (alpha * (1.0 - alpha))).sqrt(),
        shock_speed: alpha - 0.5,
    })
}

impl ShockScaling {
    /// Tracked label, floor of (1 - alpha) t / 2 + eta sqrt(t).
    pub fn n_of_t(&self) -> i64 {
        ((1.0 - self.alpha) * self.t / 2.0 + self.eta * self.t.sqrt()).floor() as i64
    }

    /// Position with no slow particles, shifted by the eta correction.
    pub fn center(&self) -> f64 {
        (self.alpha - 0.5) * self.t - 2.0 * self.eta * self.t.sqrt()
    }

    pub fn x_of_xi(&self, xi: f64) -> f64 {
        self.center() - self.sigma * xi * self.t.sqrt()
    }

    /// Inverse of `x_of_xi`: the rescaled variable of a position.
    pub fn xi_of_x(&self, x: f64) -> f64 {
        -(x - self.center()) / (self.sigma * self.t.sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter() {
        let s = shock_constants(0.25, 1, 1.0, 100.0).unwrap();
        assert_eq!(s.shock_speed, -0.25);
        assert!((s.sigma - 1.0 / 12f64.sqrt()).abs() < 1e-15);
        assert!((s.xi_c - 4.0 / 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(s.n_of_t(), 47);
        assert!((s.xi_of_x(s.x_of_xi(0.7)) - 0.7).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_shock_alpha() {
        assert!(shock_constants(0.5, 1, 0.0, 1.0).is_err());
        assert!(shock_constants(0.0, 1, 0.0, 1.0).is_err());
    }
}
