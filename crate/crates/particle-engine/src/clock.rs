//! Per-label Poisson clocks with thinning marks.
//!
//! Every label owns an independent ChaCha8 stream (nonce = label) under a key
//! derived from the seed, so event `k` of label `l` is a pure function of
//! `(seed, salt, l, k)`. Two 64-bit words are consumed per event: one for the
//! exponential waiting time and one for the mark.

use rand_chacha::ChaCha8Rng;
use rand_core::{Rng, SeedableRng};

use crate::error::EngineError;

/// One ring of a label's clock.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClockEvent {
    pub time: f64,
    pub mark: f64,
}

/// Shared randomness for a coupled family of systems.
#[derive(Debug, Clone, PartialEq)]
pub struct ClockField {
    seed: u64,
    salt: u64,
    horizon: f64,
}

const WORDS_PER_EVENT: u128 = 4;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child seed, used to give each Monte Carlo trial its own field.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut s = seed ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03);
    splitmix64(&mut s);
    splitmix64(&mut s)
}

impl ClockField {
    pub fn new(seed: u64, horizon: f64) -> Result<Self, EngineError> {
        if !(horizon > 0.0) || !horizon.is_finite() {
            return Err(EngineError::NonPositiveHorizon(horizon));
        }
        Ok(Self { seed, salt: 0, horizon })
    }

    /// A field whose streams are independent of the unsalted field with the
    /// same seed. Used to break the coupling deliberately.
    pub fn salted(&self, salt: u64) -> Self {
        Self { salt, ..self.clone() }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn key(&self) -> [u8; 32] {
        let mut s = self.seed ^ self.salt.rotate_left(17) ^ 0x5348_4F43_4B4C_494E;
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut s).to_le_bytes());
        }
        key
    }

    fn rng_for(&self, label: i64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::from_seed(self.key());
        rng.set_stream(label as u64);
        rng
    }

    /// The clock of `label`, starting from time 0 and stopping at the horizon.
    pub fn stream(&self, label: i64) -> ClockStream {
        ClockStream { rng: self.rng_for(label), time: 0.0, horizon: self.horizon, index: 0 }
    }

    /// The raw uniforms of event `index` of `label`, without walking the
    /// stream. The event time itself is cumulative and needs the prefix.
    pub fn event_uniforms(&self, label: i64, index: u64) -> (f64, f64) {
        let mut rng = self.rng_for(label);
        rng.set_word_pos(u128::from(index) * WORDS_PER_EVENT);
        draw(&mut rng)
    }

}

/// Anything that can hand out per-label rings. Engines are generic over it
/// so hand-written event scripts can drive them in tests.
pub trait ClockSource {
    fn horizon(&self) -> f64;

    /// Rings of `label` strictly after `from`, in increasing time.
    fn events_after(&self, label: i64, from: f64) -> Box<dyn Iterator<Item = ClockEvent> + '_>;

    /// Fills `buf` with all rings of `label` in the window `(from, to]`.
    fn fill_window(&self, label: i64, from: f64, to: f64, buf: &mut Vec<ClockEvent>) {
        buf.clear();
        buf.extend(self.events_after(label, from).take_while(|e| e.time <= to));
    }
}

impl ClockSource for ClockField {
    fn horizon(&self) -> f64 {
        self.horizon
    }

    fn events_after(&self, label: i64, from: f64) -> Box<dyn Iterator<Item = ClockEvent> + '_> {
        Box::new(self.stream(label).skip_while(move |e| e.time <= from))
    }

    fn fill_window(&self, label: i64, from: f64, to: f64, buf: &mut Vec<ClockEvent>) {
        buf.clear();
        for ev in self.stream(label) {
            if ev.time > to {
                break;
            }
            if ev.time > from {
                buf.push(ev);
            }
        }
    }
}

/// Explicit event lists, for hand traces.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScriptedClocks {
    pub horizon: f64,
    pub streams: std::collections::BTreeMap<i64, Vec<ClockEvent>>,
}

impl ScriptedClocks {
    pub fn new(horizon: f64) -> Self {
        Self { horizon, streams: Default::default() }
    }

    pub fn ring(mut self, label: i64, time: f64, mark: f64) -> Self {
        let s = self.streams.entry(label).or_default();
        s.push(ClockEvent { time, mark });
        s.sort_by(|a, b| a.time.total_cmp(&b.time));
        self
    }
}

impl ClockSource for ScriptedClocks {
    fn horizon(&self) -> f64 {
        self.horizon
    }

    fn events_after(&self, label: i64, from: f64) -> Box<dyn Iterator<Item = ClockEvent> + '_> {
        match self.streams.get(&label) {
            Some(v) => Box::new(v.iter().copied().filter(move |e| e.time > from)),
            None => Box::new(std::iter::empty()),
        }
    }
}

#[inline]
fn unit_open_closed(x: u64) -> f64 {
    ((x >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[inline]
fn unit_closed_open(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[inline]
fn draw(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let a = rng.next_u64();
    let b = rng.next_u64();
    (unit_open_closed(a), unit_closed_open(b))
}

/// Iterator over the events of one label, in increasing time.
#[derive(Debug, Clone)]
pub struct ClockStream {
    rng: ChaCha8Rng,
    time: f64,
    horizon: f64,
    index: u64,
}

impl ClockStream {
    pub fn events_drawn(&self) -> u64 {
        self.index
    }
}

impl Iterator for ClockStream {
    type Item = ClockEvent;

    #[inline]
    fn next(&mut self) -> Option<ClockEvent> {
        let (u, mark) = draw(&mut self.rng);
        let dt = -u.ln();
        // u is never 1 for practical purposes but dt = 0 would tie with the
        // previous event; nudge it to keep times strictly increasing.
        let next = self.time + dt;
        self.time = if next > self.time { next } else { f64::from_bits(self.time.to_bits() + 1) };
        self.index += 1;
        if self.time > self.horizon {
            None
        } else {
            Some(ClockEvent { time: self.time, mark })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let a: Vec<_> = ClockField::new(7, 50.0).unwrap().stream(3).collect();
        let b: Vec<_> = ClockField::new(7, 50.0).unwrap().stream(3).collect();
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }

    #[test]
    fn times_strictly_increase_and_stay_below_horizon() {
        let f = ClockField::new(11, 200.0).unwrap();
        for label in -3..5 {
            let ev: Vec<_> = f.stream(label).collect();
            assert!(ev.windows(2).all(|w| w[0].time < w[1].time));
            assert!(ev.iter().all(|e| e.time <= 200.0 && (0.0..1.0).contains(&e.mark)));
        }
    }

    #[test]
    fn labels_and_salts_give_different_streams() {
        let f = ClockField::new(1, 10.0).unwrap();
        let a: Vec<_> = f.stream(0).collect();
        let b: Vec<_> = f.stream(1).collect();
        let c: Vec<_> = f.salted(9).stream(0).collect();
        assert_ne!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn counter_access_matches_sequential_draws() {
        let f = ClockField::new(99, 30.0).unwrap();
        let mut t = 0.0;
        for (k, ev) in f.stream(-2).enumerate() {
            let (u, mark) = f.event_uniforms(-2, k as u64);
            t += -u.ln();
            assert!((t - ev.time).abs() < 1e-9);
            assert_eq!(mark, ev.mark);
        }
    }

    #[test]
    fn rejects_bad_horizon() {
        assert!(ClockField::new(1, 0.0).is_err());
        assert!(ClockField::new(1, f64::NAN).is_err());
    }

    #[test]
    fn event_count_is_poisson_like() {
        let f = ClockField::new(5, 1000.0).unwrap();
        let n = f.stream(0).count() as f64;
        assert!((n - 1000.0).abs() < 5.0 * 1000f64.sqrt());
    }
}
