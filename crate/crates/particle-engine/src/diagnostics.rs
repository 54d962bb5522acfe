//! Pathwise diagnostics: the min identity, the influence process, the
//! backward index process and the repacked auxiliary system.

use crate::clock::ClockSource;
use crate::error::EngineError;
use crate::state::SystemState;
use crate::sweep::{sweep, Observed};
use crate::trajectory::Trajectory;

/// x_n = min(x^A_n, x^B_n) at time `t` for each requested label.
pub fn min_identity_check(shock: &Trajectory, a: &Trajectory, b: &Trajectory, labels: &[i64], t: f64) -> Vec<bool> {
    labels
        .iter()
        .map(|&n| shock.position_at(n, t) == a.position_at(n, t).min(b.position_at(n, t)))
        .collect()
}

/// Same check on observation snapshots; returns the number of violations
/// over all labels >= 1 present in all three runs and all observation times.
pub fn min_identity_violations(shock: &Observed, a: &Observed, b: &Observed) -> usize {
    let lo = 1.max(shock.first_label).max(a.first_label).max(b.first_label);
    let hi = (shock.first_label + shock.final_positions.len() as i64 - 1)
        .min(a.first_label + a.final_positions.len() as i64 - 1)
        .min(b.first_label + b.final_positions.len() as i64 - 1);
    let mut bad = 0;
    for k in 0..shock.times.len() {
        for n in lo..=hi {
            if shock.position(k, n) != a.position(k, n).min(b.position(k, n)) {
                bad += 1;
            }
        }
    }
    for n in lo..=hi {
        if shock.final_position(n) != a.final_position(n).min(b.final_position(n)) {
            bad += 1;
        }
    }
    bad
}

/// I(s): starts at 0 and steps from m to m + 1 when particle m + 1 is
/// blocked by particle m while I = m.
#[derive(Debug, Clone, PartialEq)]
pub struct InfluencePath {
    pub jump_times: Vec<f64>,
}

impl InfluencePath {
    pub fn value(&self, s: f64) -> i64 {
        self.jump_times.partition_point(|&t| t <= s) as i64
    }
}

/// Builds I from the shock run. Slow-slow blocking never moves I: the chain
/// starts at label 0 and only follows labels m + 1 >= 1.
pub fn influence_path(shock: &Trajectory) -> Result<InfluencePath, EngineError> {
    if !shock.contains(0) {
        return Err(EngineError::MissingLabel(0));
    }
    let mut jump_times = Vec::new();
    let mut now = shock.t_start;
    let mut m = 0i64;
    while shock.contains(m + 1) {
        let supp = shock.suppressions_of(m + 1);
        let k = supp.partition_point(|&t| t <= now);
        match supp.get(k) {
            Some(&t) => {
                jump_times.push(t);
                now = t;
                m += 1;
            }
            None => break,
        }
    }
    Ok(InfluencePath { jump_times })
}

/// Counts (label, time) pairs where the shock system disagrees with the
/// system predicted by I: A while I < n, B once I >= n. Each label is checked
/// at every breakpoint of any of the paths involved, which covers all times.
pub fn influence_dichotomy_violations(shock: &Trajectory, a: &Trajectory, b: &Trajectory, path: &InfluencePath) -> usize {
    let hi = shock.last_label().min(a.last_label()).min(b.last_label());
    let mut bad = 0;
    let mut times = Vec::new();
    for n in 1..=hi {
        times.clear();
        times.push(shock.t_start);
        times.extend_from_slice(shock.jumps_of(n));
        times.extend_from_slice(a.jumps_of(n));
        times.extend_from_slice(b.jumps_of(n));
        times.extend_from_slice(&path.jump_times);
        for &s in &times {
            let x = shock.position_at(n, s);
            let expected = if path.value(s) < n { a.position_at(n, s) } else { b.position_at(n, s) };
            if x != expected {
                bad += 1;
            }
        }
    }
    bad
}

/// N(s) on [t_start, t], built backwards from N(t) = N. At a suppression of
/// the current label at time s~, N(s~) drops by one; the path is
/// left-continuous at its breakpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct BackwardIndexPath {
    pub top: i64,
    pub t: f64,
    /// Breakpoints in decreasing time order.
    pub drops: Vec<f64>,
}

impl BackwardIndexPath {
    pub fn value(&self, s: f64) -> i64 {
        // drops is decreasing; count those >= s.
        self.top - self.drops.partition_point(|&d| d >= s) as i64
    }

    pub fn bottom(&self) -> i64 {
        self.top - self.drops.len() as i64
    }
}

pub fn backward_index_path(run: &Trajectory, n: i64, t: f64) -> Result<BackwardIndexPath, EngineError> {
    if !run.contains(n) {
        return Err(EngineError::MissingLabel(n));
    }
    if t > run.t_end || t < run.t_start {
        return Err(EngineError::InvalidParameter(format!("time {t} outside the run")));
    }
    let mut drops = Vec::new();
    let mut cur = n;
    let mut s = t;
    while run.contains(cur) {
        let supp = run.suppressions_of(cur);
        let k = supp.partition_point(|&x| x < s);
        if k == 0 {
            break;
        }
        s = supp[k - 1];
        drops.push(s);
        cur -= 1;
    }
    Ok(BackwardIndexPath { top: n, t, drops })
}

/// The state at time `u` in which labels `front..=back` are packed densely
/// behind x_front(u), keeping their rates.
pub fn repacked_state(run: &Trajectory, front: i64, back: i64, u: f64) -> Result<SystemState, EngineError> {
    for l in [front, back] {
        if !run.contains(l) {
            return Err(EngineError::MissingLabel(l));
        }
    }
    if back < front {
        return Err(EngineError::InvalidParameter("back label precedes front label".into()));
    }
    let x0 = run.position_at(front, u);
    let positions = (front..=back).map(|n| x0 - (n - front)).collect();
    let first = (front - run.first_label) as usize;
    let rates = run.rates[first..=first + (back - front) as usize].to_vec();
    let mut s = SystemState::from_parts(front, positions, rates)?;
    s.time = u;
    Ok(s)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuxiliaryOutcome {
    pub holds: bool,
    pub n_at_u: i64,
    /// x~_N(t) - x~_{N(u)}(u)
    pub increment: i64,
    pub x_n_t: i64,
}

/// Repacks at time u behind N(u), evolves to t under the same clocks and
/// compares x_N(t) with x_{N(u)}(u) + [x~_N(t) - x~_{N(u)}(u)].
pub fn auxiliary_identity_check<C: ClockSource>(
    run: &Trajectory,
    clocks: &C,
    n: i64,
    u: f64,
    t: f64,
) -> Result<AuxiliaryOutcome, EngineError> {
    if t > clocks.horizon() {
        return Err(EngineError::BeyondHorizon { t_end: t, horizon: clocks.horizon() });
    }
    if !(u >= run.t_start && u <= t) {
        return Err(EngineError::InvalidParameter(format!("u = {u} must lie in [start, t]")));
    }
    let path = backward_index_path(run, n, t)?;
    let nu = path.value(u);
    let packed = repacked_state(run, nu, n, u)?;
    let aux = sweep(&packed, clocks, t)?;
    let increment = aux.final_position(n) - packed.position(nu).unwrap();
    let x_n_t = run.position_at(n, t);
    Ok(AuxiliaryOutcome { holds: x_n_t == run.position_at(nu, u) + increment, n_at_u: nu, increment, x_n_t })
}
