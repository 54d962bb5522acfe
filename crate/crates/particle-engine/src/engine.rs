//! Event-queue evolution of coupled systems.
//!
//! A min-heap holds the next ring of each label. When label `l` rings with
//! mark `u`, every system containing `l` with `u < rate(l)` attempts the jump.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::clock::{ClockEvent, ClockSource};
use crate::error::EngineError;
use crate::state::SystemState;

#[derive(Debug, Clone, Copy, PartialEq)]
struct Pending {
    time: f64,
    label: i64,
    mark: f64,
}

impl Eq for Pending {}

impl Ord for Pending {
    fn cmp(&self, other: &Self) -> Ordering {
        self.time.total_cmp(&other.time).then(self.label.cmp(&other.label))
    }
}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn check_common_time(
    mut times: impl Iterator<Item = f64>,
    clocks: &dyn ClockSource,
    t_end: f64,
) -> Result<f64, EngineError> {
    let now = times.next().ok_or_else(|| EngineError::InvalidParameter("no systems given".into()))?;
    for t in times {
        if t != now {
            return Err(EngineError::TimeMismatch(now, t));
        }
    }
    if t_end > clocks.horizon() {
        return Err(EngineError::BeyondHorizon { t_end, horizon: clocks.horizon() });
    }
    if t_end < now {
        return Err(EngineError::BackwardsInTime { t_end, now });
    }
    Ok(now)
}

/// Advances all systems to `t_end` under the shared clocks.
pub fn advance_coupled<C: ClockSource>(systems: &mut [SystemState], clocks: &C, t_end: f64) -> Result<(), EngineError> {
    let now = check_common_time(systems.iter().map(|s| s.time), clocks, t_end)?;
    let lo = systems.iter().map(|s| s.first_label()).min().unwrap();
    let hi = systems.iter().map(|s| s.last_label()).max().unwrap();

    let mut streams: Vec<Box<dyn Iterator<Item = ClockEvent> + '_>> = Vec::with_capacity((hi - lo + 1) as usize);
    let mut heap = BinaryHeap::new();
    for label in lo..=hi {
        let mut st = clocks.events_after(label, now);
        if let Some(ev) = st.next() {
            if ev.time <= t_end {
                heap.push(Reverse(Pending { time: ev.time, label, mark: ev.mark }));
            }
        }
        streams.push(st);
    }

    while let Some(Reverse(ev)) = heap.pop() {
        for sys in systems.iter_mut() {
            attempt(sys, ev);
        }
        let st = &mut streams[(ev.label - lo) as usize];
        if let Some(next) = st.next() {
            if next.time <= t_end {
                heap.push(Reverse(Pending { time: next.time, label: ev.label, mark: next.mark }));
            }
        }
    }
    for sys in systems.iter_mut() {
        sys.time = t_end;
    }
    Ok(())
}

#[inline]
fn attempt(sys: &mut SystemState, ev: Pending) {
    let Some(i) = sys.index(ev.label) else { return };
    if ev.mark >= sys.rates()[i] {
        return;
    }
    let target = sys.positions()[i] + 1;
    let blocked = i > 0 && sys.positions()[i - 1] == target;
    if blocked {
        sys.suppression_log.push((ev.time, ev.label));
    } else {
        sys.positions_mut()[i] = target;
        sys.log_jump(ev.time, ev.label);
        debug_assert!(sys.is_ordered());
    }
}

/// Convenience wrapper for a single system.
pub fn advance<C: ClockSource>(system: &mut SystemState, clocks: &C, t_end: f64) -> Result<(), EngineError> {
    advance_coupled(std::slice::from_mut(system), clocks, t_end)
}
