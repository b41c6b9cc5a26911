//! Rules engine for the sneaky Angel and Devil game.
//!
//! The Angel moves `s` times before the Devil's first deletion; after that
//! the players alternate, one Angel move between consecutive deletions.
//! Before deletion `r` the Devil sees `p_0 ..= p_{r-1}` while the Angel
//! actually stands on `p_{s+r-1}`.

mod board;
mod runner;
mod square;
mod state;
mod strategy;
mod trace;

pub use board::Board;
pub use runner::{run_game, run_game_observed, RunError, RunFailure};
pub use square::{AngelVariant, Offset, Square};
pub use state::{
    legal_angel_moves, DevilView, GameConfig, GameError, GameState, GameStatus, Phase,
};
pub use strategy::{AngelStrategy, DevilStrategy, GameObserver, ScriptedDevil, StrategyError};
pub use trace::{Trace, TraceError, TraceEvent};
