//! Label-by-label evolution.
//!
//! Because a particle only ever feels the one directly ahead of it, the whole
//! history of label `l` follows from its own clock and the jump times of
//! `l - 1`. Sweeping labels front to back therefore reproduces the event-queue
//! dynamics exactly while touching each clock ring once. The shared ring
//! buffer of a label is reused across all coupled systems.

use crate::clock::{ClockEvent, ClockSource};
use crate::engine::check_common_time;
use crate::error::EngineError;
use crate::state::SystemState;
use crate::trajectory::Trajectory;

/// Positions at a list of observation times, without keeping full histories.
#[derive(Debug, Clone, PartialEq)]
pub struct Observed {
    pub first_label: i64,
    pub times: Vec<f64>,
    /// `at[k][i]` is the position of label `first_label + i` at `times[k]`.
    pub at: Vec<Vec<i64>>,
    pub final_positions: Vec<i64>,
}

impl Observed {
    pub fn position(&self, time_index: usize, label: i64) -> i64 {
        self.at[time_index][(label - self.first_label) as usize]
    }

    pub fn final_position(&self, label: i64) -> i64 {
        self.final_positions[(label - self.first_label) as usize]
    }
}

/// Runs one label given the jump times of the particle ahead. Returns the
/// final position and fills `jumps` (and `supp` if given).
#[inline]
fn run_label(
    events: &[ClockEvent],
    rate: f64,
    start: i64,
    ahead: Option<(i64, &[f64])>,
    jumps: &mut Vec<f64>,
    mut supp: Option<&mut Vec<f64>>,
) -> i64 {
    jumps.clear();
    let mut pos = start;
    match ahead {
        None => {
            for ev in events {
                if ev.mark < rate {
                    pos += 1;
                    jumps.push(ev.time);
                }
            }
        }
        Some((mut front, front_jumps)) => {
            let mut k = 0;
            for ev in events {
                if ev.mark >= rate {
                    continue;
                }
                while k < front_jumps.len() && front_jumps[k] < ev.time {
                    front += 1;
                    k += 1;
                }
                if pos + 1 == front {
                    if let Some(s) = supp.as_deref_mut() {
                        s.push(ev.time);
                    }
                } else {
                    pos += 1;
                    jumps.push(ev.time);
                }
            }
        }
    }
    pos
}

/// Evolves coupled systems to `t_end`, keeping every jump and suppression.
pub fn sweep_coupled<C: ClockSource>(states: &[&SystemState], clocks: &C, t_end: f64) -> Result<Vec<Trajectory>, EngineError> {
    let now = check_common_time(states.iter().map(|s| s.time), clocks, t_end)?;
    let mut out: Vec<Trajectory> = states
        .iter()
        .map(|s| Trajectory {
            first_label: s.first_label(),
            initial: s.positions().to_vec(),
            rates: s.rates().to_vec(),
            t_start: now,
            t_end,
            jumps: Vec::with_capacity(s.len()),
            suppressions: Vec::with_capacity(s.len()),
        })
        .collect();
    let lo = states.iter().map(|s| s.first_label()).min().unwrap();
    let hi = states.iter().map(|s| s.last_label()).max().unwrap();
    let mut buf = Vec::new();
    for label in lo..=hi {
        clocks.fill_window(label, now, t_end, &mut buf);
        for (s, tr) in states.iter().zip(out.iter_mut()) {
            let Some(i) = s.index(label) else { continue };
            let mut jumps = Vec::new();
            let mut supp = Vec::new();
            let ahead = (i > 0).then(|| (tr.initial[i - 1], tr.jumps[i - 1].as_slice()));
            run_label(&buf, tr.rates[i], tr.initial[i], ahead, &mut jumps, Some(&mut supp));
            tr.jumps.push(jumps);
            tr.suppressions.push(supp);
        }
    }
    Ok(out)
}

pub fn sweep<C: ClockSource>(state: &SystemState, clocks: &C, t_end: f64) -> Result<Trajectory, EngineError> {
    Ok(sweep_coupled(&[state], clocks, t_end)?.pop().unwrap())
}

/// Evolves coupled systems to `t_end` and reports positions at `times`
/// (each within `[now, t_end]`). Memory stays proportional to the number of
/// labels times the number of observation times.
pub fn sweep_observe<C: ClockSource>(
    states: &[&SystemState],
    clocks: &C,
    t_end: f64,
    times: &[f64],
) -> Result<Vec<Observed>, EngineError> {
    let now = check_common_time(states.iter().map(|s| s.time), clocks, t_end)?;
    if let Some(&bad) = times.iter().find(|&&t| t < now || t > t_end) {
        return Err(EngineError::InvalidParameter(format!("observation time {bad} outside [{now}, {t_end}]")));
    }
    let lo = states.iter().map(|s| s.first_label()).min().unwrap();
    let hi = states.iter().map(|s| s.last_label()).max().unwrap();
    let mut out: Vec<Observed> = states
        .iter()
        .map(|s| Observed {
            first_label: s.first_label(),
            times: times.to_vec(),
            at: vec![Vec::with_capacity(s.len()); times.len()],
            final_positions: Vec::with_capacity(s.len()),
        })
        .collect();
    // Per system: jump times of the previous label and scratch for the current.
    let mut prev: Vec<Vec<f64>> = vec![Vec::new(); states.len()];
    let mut cur: Vec<Vec<f64>> = vec![Vec::new(); states.len()];
    let mut buf = Vec::new();
    for label in lo..=hi {
        clocks.fill_window(label, now, t_end, &mut buf);
        for (j, s) in states.iter().enumerate() {
            let Some(i) = s.index(label) else { continue };
            let start = s.positions()[i];
            let ahead = (i > 0).then(|| (s.positions()[i - 1], prev[j].as_slice()));
            let fin = run_label(&buf, s.rates()[i], start, ahead, &mut cur[j], None);
            let o = &mut out[j];
            for (k, &t) in times.iter().enumerate() {
                o.at[k].push(start + cur[j].partition_point(|&x| x <= t) as i64);
            }
            o.final_positions.push(fin);
            std::mem::swap(&mut prev[j], &mut cur[j]);
        }
    }
    Ok(out)
}

/// Final position of the last label only. The cheapest entry point, used by
/// the large Monte Carlo loops.
pub fn sweep_final<C: ClockSource>(state: &SystemState, clocks: &C, t_end: f64) -> Result<Vec<i64>, EngineError> {
    Ok(sweep_observe(&[state], clocks, t_end, &[])?.pop().unwrap().final_positions)
}
