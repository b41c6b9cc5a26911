use thiserror::Error;

use super::{
    AngelStrategy, DevilStrategy, GameConfig, GameError, GameObserver, GameState, GameStatus,
    StrategyError, Trace, TraceEvent,
};

#[derive(Debug, Error)]
pub enum RunFailure {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("angel strategy failed after {moves} moves: {source}")]
    Angel {
        moves: usize,
        #[source]
        source: StrategyError,
    },
    #[error("devil strategy failed in round {round}: {source}")]
    Devil {
        round: u64,
        #[source]
        source: StrategyError,
    },
}

/// A game that stopped on a rule violation or strategy failure, together
/// with everything recorded up to that point.
#[derive(Debug, Error)]
#[error("{failure}")]
pub struct RunError {
    #[source]
    pub failure: RunFailure,
    pub partial: Box<Trace>,
}

pub fn run_game(
    config: GameConfig,
    angel: &mut dyn AngelStrategy,
    devil: &mut dyn DevilStrategy,
) -> Result<Trace, RunError> {
    run_game_observed(config, angel, devil, &mut ())
}

/// Drives one game to completion, handing the Devil nothing but its view.
pub fn run_game_observed(
    config: GameConfig,
    angel: &mut dyn AngelStrategy,
    devil: &mut dyn DevilStrategy,
    observer: &mut dyn GameObserver,
) -> Result<Trace, RunError> {
    let mut trace = Trace {
        config: config.clone(),
        angel: Some(angel.describe()),
        devil: Some(devil.describe()),
        events: Vec::new(),
        outcome: GameStatus::AwaitingAngel,
        monitors: None,
    };
    let mut state = match GameState::new(config) {
        Ok(s) => s,
        Err(e) => {
            return Err(RunError {
                failure: e.into(),
                partial: Box::new(trace),
            })
        }
    };
    match drive(&mut state, &mut trace.events, angel, devil, observer) {
        Ok(()) => {
            trace.outcome = state.status();
            Ok(trace)
        }
        Err(failure) => {
            trace.outcome = state.status();
            Err(RunError {
                failure,
                partial: Box::new(trace),
            })
        }
    }
}

fn drive(
    state: &mut GameState,
    events: &mut Vec<TraceEvent>,
    angel: &mut dyn AngelStrategy,
    devil: &mut dyn DevilStrategy,
    observer: &mut dyn GameObserver,
) -> Result<(), RunFailure> {
    loop {
        match state.status() {
            GameStatus::AwaitingAngel => {
                let to = angel.next_move(state).map_err(|source| RunFailure::Angel {
                    moves: state.angel_moves_made(),
                    source,
                })?;
                state.apply_angel_move(to)?;
                events.push(TraceEvent::AngelMove {
                    i: state.angel_moves_made(),
                    to,
                });
            }
            GameStatus::AwaitingDevil => {
                let view = state.devil_view()?;
                let round = view.round();
                let del = devil
                    .next_deletion(&view)
                    .map_err(|source| RunFailure::Devil { round, source })?;
                state.apply_devil_delete(del)?;
                events.push(TraceEvent::DevilDelete { r: round, del });
                observer.after_deletion(state);
            }
            GameStatus::DevilWon { .. } | GameStatus::AngelSurvived { .. } => return Ok(()),
        }
    }
}
