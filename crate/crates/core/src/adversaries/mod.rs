//! Angel strategies used to attack the Devil, and the exhaustive oracle.

mod angels;
mod battery;
mod search;

pub use angels::{greedy_escape_move, Adversary, AdversaryKind, ParseAngelError, GREEDY_SIGHT};
pub use battery::{run_battery, BatteryReport, BatterySpec, Counterexample, Family};
pub use search::{
    bounded_check_side_to_side, bounded_check_side_to_side_with, exhaustive_check_upward,
    exhaustive_check_upward_with, search, side_to_side_config, upward_config, SearchLimits,
    SearchStats, Verdict,
};
