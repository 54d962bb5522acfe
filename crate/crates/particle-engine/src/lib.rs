//! TASEP under the graphical construction.
//!
//! All systems of a coupled family read the same [`ClockField`]. The
//! event-queue engine in [`engine`] is the reference implementation; the
//! label sweep in [`sweep`] computes the same histories much faster and is
//! what the Monte Carlo loops use.

pub mod clock;
pub mod diagnostics;
pub mod engine;
pub mod error;
pub mod export;
pub mod scaling;
pub mod state;
pub mod sweep;
pub mod trajectory;

pub use clock::{derive_seed, ClockEvent, ClockField, ClockSource, ScriptedClocks};
pub use engine::{advance, advance_coupled};
pub use error::EngineError;
pub use scaling::{shock_constants, ShockScaling};
pub use state::{light_cone_pad, make_initial, InitialKind, SystemState};
pub use sweep::{sweep, sweep_coupled, sweep_final, sweep_observe, Observed};
pub use trajectory::{EventKind, Trajectory};
