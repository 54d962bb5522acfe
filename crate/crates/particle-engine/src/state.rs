//! Particle configurations and the initial data used throughout.
//!
//! Labels are contiguous. Smaller labels sit further right, so particle
//! `l - 1` is the one directly ahead of particle `l`.

use crate::error::EngineError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialKind {
    /// Rate-1 particles at -2n (n >= 1) behind M slow particles packed at
    /// 0, 1, ..., M-1 with rate alpha.
    Shock { m: usize, alpha: f64 },
    /// x_n = -2n for n >= 1, all rates 1.
    HalfFlatA,
    /// x_n = -n for n >= -M+1, slow labels (<= 0) at rate alpha.
    SlowStepB { m: usize, alpha: f64 },
    /// x_n = -n + 1 for n >= 1.
    Step,
    /// x_n = -2n for all n, truncated ahead of the tracked label.
    Flat,
}

/// Labels ahead of `tracked` kept for flat data over a horizon `t`. The
/// front of influence moves like a rate-one Poisson process, so six standard
/// deviations plus a constant leaves a negligible chance of reaching it.
pub fn light_cone_pad(t: f64) -> i64 {
    (t + 6.0 * (t * (t + std::f64::consts::E).ln()).sqrt() + 10.0).ceil() as i64
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemState {
    first_label: i64,
    positions: Vec<i64>,
    rates: Vec<f64>,
    pub time: f64,
    pub suppression_log: Vec<(f64, i64)>,
    jump_log: Option<Vec<(f64, i64)>>,
}

impl SystemState {
    /// Builds a state from explicit data. Positions must be strictly
    /// decreasing in label and rates must lie in (0, 1].
    pub fn from_parts(first_label: i64, positions: Vec<i64>, rates: Vec<f64>) -> Result<Self, EngineError> {
        if positions.len() != rates.len() || positions.is_empty() {
            return Err(EngineError::InvalidParameter("positions and rates must be non-empty and of equal length".into()));
        }
        if positions.windows(2).any(|w| w[1] >= w[0]) {
            return Err(EngineError::InvalidParameter("positions must decrease strictly with label".into()));
        }
        if rates.iter().any(|&r| !(r > 0.0 && r <= 1.0)) {
            return Err(EngineError::InvalidParameter("rates must lie in (0, 1]".into()));
        }
        Ok(Self { first_label, positions, rates, time: 0.0, suppression_log: Vec::new(), jump_log: None })
    }

    pub fn first_label(&self) -> i64 {
        self.first_label
    }

    pub fn last_label(&self) -> i64 {
        self.first_label + self.positions.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, label: i64) -> bool {
        label >= self.first_label && label <= self.last_label()
    }

    #[inline]
    pub(crate) fn index(&self, label: i64) -> Option<usize> {
        self.contains(label).then(|| (label - self.first_label) as usize)
    }

    pub fn position(&self, label: i64) -> Option<i64> {
        self.index(label).map(|i| self.positions[i])
    }

    pub fn rate(&self, label: i64) -> Option<f64> {
        self.index(label).map(|i| self.rates[i])
    }

    pub fn positions(&self) -> &[i64] {
        &self.positions
    }

    pub fn rates(&self) -> &[f64] {
        &self.rates
    }

    pub(crate) fn positions_mut(&mut self) -> &mut [i64] {
        &mut self.positions
    }

    pub fn labels(&self) -> impl Iterator<Item = i64> + '_ {
        self.first_label..=self.last_label()
    }

    /// Starts recording successful jumps, for trajectory export.
    pub fn record_jumps(&mut self) {
        self.jump_log.get_or_insert_with(Vec::new);
    }

    pub fn jump_log(&self) -> Option<&[(f64, i64)]> {
        self.jump_log.as_deref()
    }

    pub(crate) fn log_jump(&mut self, time: f64, label: i64) {
        if let Some(log) = self.jump_log.as_mut() {
            log.push((time, label));
        }
    }

    pub fn is_ordered(&self) -> bool {
        self.positions.windows(2).all(|w| w[1] < w[0])
    }

    /// Drops every particle with label greater than `label`.
    pub fn truncate_after(&mut self, label: i64) {
        if let Some(i) = self.index(label) {
            self.positions.truncate(i + 1);
            self.rates.truncate(i + 1);
        }
    }
}

/// Instantiates the labels that can influence `tracked_label` up to
/// `horizon`. Particles only feel smaller labels, so the range always ends at
/// the tracked label.
pub fn make_initial(kind: InitialKind, tracked_label: i64, horizon: f64) -> Result<SystemState, EngineError> {
    if !(horizon > 0.0) || !horizon.is_finite() {
        return Err(EngineError::NonPositiveHorizon(horizon));
    }
    let (first, pos, rate): (i64, Box<dyn Fn(i64) -> i64>, Box<dyn Fn(i64) -> f64>) = match kind {
        InitialKind::Shock { m, alpha } => {
            check_slow(m, alpha)?;
            let first = 1 - m as i64;
            (first, Box::new(|n| if n >= 1 { -2 * n } else { -n }), Box::new(move |n| if n >= 1 { 1.0 } else { alpha }))
        }
        InitialKind::HalfFlatA => (1, Box::new(|n| -2 * n), Box::new(|_| 1.0)),
        InitialKind::SlowStepB { m, alpha } => {
            check_slow(m, alpha)?;
            (1 - m as i64, Box::new(|n| -n), Box::new(move |n| if n >= 1 { 1.0 } else { alpha }))
        }
        InitialKind::Step => (1, Box::new(|n| -n + 1), Box::new(|_| 1.0)),
        InitialKind::Flat => (tracked_label - light_cone_pad(horizon), Box::new(|n| -2 * n), Box::new(|_| 1.0)),
    };
    if tracked_label < first {
        return Err(EngineError::TrackedOutOfRange { label: tracked_label, lo: first, hi: tracked_label });
    }
    let labels = first..=tracked_label;
    let positions = labels.clone().map(&pos).collect();
    let rates = labels.map(&rate).collect();
    SystemState::from_parts(first, positions, rates)
}

fn check_slow(m: usize, alpha: f64) -> Result<(), EngineError> {
    if m == 0 {
        return Err(EngineError::InvalidParameter("M must be at least 1".into()));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(EngineError::InvalidParameter(format!("alpha = {alpha} must lie in (0, 1]")));
    }
    Ok(())
}
