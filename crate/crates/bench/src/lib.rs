//! Shared fixtures for the benchmark suite.

use spintop_core::{FieldSchedule, SpinState};

/// Meridian pole-to-pole sweep at the first resonance.
pub fn first_resonance_sweep() -> (FieldSchedule, SpinState) {
    let lambda = spintop_core::resonance::meridian_resonance_lambda(1).unwrap();
    (FieldSchedule::meridian_sweep(lambda).unwrap(), SpinState::ket0())
}
