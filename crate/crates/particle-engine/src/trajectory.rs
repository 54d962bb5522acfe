//! Full per-label histories of a run.

use crate::state::SystemState;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    Jump,
    Suppressed,
}

impl EventKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::Jump => "jump",
            EventKind::Suppressed => "suppressed",
        }
    }
}

/// Jump and suppression times of every label over `[t_start, t_end]`.
/// Positions are right-continuous: a jump at `s` is already counted at `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub first_label: i64,
    pub initial: Vec<i64>,
    pub rates: Vec<f64>,
    pub t_start: f64,
    pub t_end: f64,
    pub jumps: Vec<Vec<f64>>,
    pub suppressions: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn last_label(&self) -> i64 {
        self.first_label + self.initial.len() as i64 - 1
    }

    pub fn contains(&self, label: i64) -> bool {
        label >= self.first_label && label <= self.last_label()
    }

    #[inline]
    fn idx(&self, label: i64) -> usize {
        assert!(self.contains(label), "label {label} not in trajectory");
        (label - self.first_label) as usize
    }

    pub fn position_at(&self, label: i64, s: f64) -> i64 {
        let i = self.idx(label);
        self.initial[i] + self.jumps[i].partition_point(|&t| t <= s) as i64
    }

    pub fn final_position(&self, label: i64) -> i64 {
        let i = self.idx(label);
        self.initial[i] + self.jumps[i].len() as i64
    }

    pub fn jumps_of(&self, label: i64) -> &[f64] {
        &self.jumps[self.idx(label)]
    }

    pub fn suppressions_of(&self, label: i64) -> &[f64] {
        &self.suppressions[self.idx(label)]
    }

    /// The state at `t_end`, with the merged suppression log.
    pub fn final_state(&self) -> SystemState {
        let positions = (0..self.initial.len()).map(|i| self.initial[i] + self.jumps[i].len() as i64).collect();
        let mut s = SystemState::from_parts(self.first_label, positions, self.rates.clone())
            .expect("trajectory keeps exclusion");
        s.time = self.t_end;
        s.suppression_log = self.merged_log(EventKind::Suppressed).into_iter().map(|(t, l, _)| (t, l)).collect();
        s
    }

    /// All events of one kind as (time, label, position after the event),
    /// sorted by time.
    pub fn merged_log(&self, kind: EventKind) -> Vec<(f64, i64, i64)> {
        let mut out = Vec::new();
        for (i, (jumps, supp)) in self.jumps.iter().zip(&self.suppressions).enumerate() {
            let label = self.first_label + i as i64;
            match kind {
                EventKind::Jump => {
                    out.extend(jumps.iter().enumerate().map(|(k, &t)| (t, label, self.initial[i] + k as i64 + 1)));
                }
                EventKind::Suppressed => {
                    out.extend(supp.iter().map(|&t| (t, label, self.initial[i] + jumps.partition_point(|&j| j <= t) as i64)));
                }
            }
        }
        out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        out
    }

    /// Rebuilds a trajectory from a state evolved by the event-queue engine
    /// with jump recording switched on before the run.
    pub fn from_logs(initial: &SystemState, evolved: &SystemState) -> Option<Self> {
        let jl = evolved.jump_log()?;
        let n = initial.len();
        let mut jumps = vec![Vec::new(); n];
        let mut suppressions = vec![Vec::new(); n];
        for &(t, l) in jl {
            jumps[(l - initial.first_label()) as usize].push(t);
        }
        for &(t, l) in &evolved.suppression_log {
            if t > initial.time {
                suppressions[(l - initial.first_label()) as usize].push(t);
            }
        }
        Some(Self {
            first_label: initial.first_label(),
            initial: initial.positions().to_vec(),
            rates: initial.rates().to_vec(),
            t_start: initial.time,
            t_end: evolved.time,
            jumps,
            suppressions,
        })
    }
}
