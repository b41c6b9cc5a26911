//! Simulator and verification harness for the sneaky Angel and Devil game.
//!
//! * [`game`]: rules engine, delayed-information view, traces.
//! * [`devil`]: the row strategy, its walled variant and the full trap.
//! * [`adversaries`]: Angel strategies and the exhaustive search oracle.
//! * [`verification`]: runtime monitors for the row strategy's invariants.

pub mod adversaries;
pub mod devil;
pub mod game;
pub mod verification;
