use thiserror::Error;

use super::{DevilView, GameState, Square};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    /// Every candidate square the strategy may play is already deleted.
    #[error("no candidate square left in round {round}: {detail}")]
    NoCandidate { round: u64, detail: String },
    /// The strategy has nothing left to delete at all.
    #[error("strategy exhausted in round {round}")]
    Exhausted { round: u64 },
    /// The Angel strategy was asked to move from a trapped position.
    #[error("angel has no legal move")]
    NoLegalMove,
}

/// An Angel player. Sees the whole true state.
pub trait AngelStrategy {
    fn next_move(&mut self, state: &GameState) -> Result<Square, StrategyError>;

    fn describe(&self) -> String {
        String::from("angel")
    }
}

/// A Devil player. Only ever handed a [`DevilView`].
pub trait DevilStrategy {
    fn next_deletion(&mut self, view: &DevilView<'_>) -> Result<Square, StrategyError>;

    fn describe(&self) -> String {
        String::from("devil")
    }
}

impl<T: AngelStrategy + ?Sized> AngelStrategy for Box<T> {
    fn next_move(&mut self, state: &GameState) -> Result<Square, StrategyError> {
        (**self).next_move(state)
    }

    fn describe(&self) -> String {
        (**self).describe()
    }
}

impl<T: DevilStrategy + ?Sized> DevilStrategy for Box<T> {
    fn next_deletion(&mut self, view: &DevilView<'_>) -> Result<Square, StrategyError> {
        (**self).next_deletion(view)
    }

    fn describe(&self) -> String {
        (**self).describe()
    }
}

/// Hook called by the runner after every deletion has been applied.
pub trait GameObserver {
    fn after_deletion(&mut self, state: &GameState);
}

impl GameObserver for () {
    fn after_deletion(&mut self, _state: &GameState) {}
}

/// Replays a fixed list of squares, for tests and trace replays.
#[derive(Clone, Debug)]
pub struct ScriptedDevil {
    moves: Vec<Square>,
    next: usize,
}

impl ScriptedDevil {
    pub fn new(moves: Vec<Square>) -> Self {
        ScriptedDevil { moves, next: 0 }
    }
}

impl DevilStrategy for ScriptedDevil {
    fn next_deletion(&mut self, view: &DevilView<'_>) -> Result<Square, StrategyError> {
        let sq = self
            .moves
            .get(self.next)
            .copied()
            .ok_or(StrategyError::Exhausted { round: view.round() })?;
        self.next += 1;
        Ok(sq)
    }

    fn describe(&self) -> String {
        String::from("scripted")
    }
}
