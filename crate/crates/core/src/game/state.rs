use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{AngelVariant, Board, Offset, Square};

/// Legal destinations for an Angel standing on `from`, in the variant's
/// offset order.
pub fn legal_angel_moves(variant: AngelVariant, from: Square, deleted: &Board) -> Vec<Square> {
    variant
        .offsets()
        .iter()
        .map(|&o| from + o)
        .filter(|sq| !deleted.contains(*sq))
        .collect()
}

fn has_legal_move(variant: AngelVariant, from: Square, deleted: &Board) -> bool {
    variant
        .offsets()
        .iter()
        .any(|&o| !deleted.contains(from + o))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameConfig {
    pub variant: AngelVariant,
    /// How many Angel moves the Devil's knowledge lags behind.
    pub sneak: u32,
    /// Walls present before the first round.
    #[serde(default)]
    pub preset_deleted: Vec<Square>,
    #[serde(default = "origin")]
    pub start: Square,
    /// Devil rounds after which the Angel is declared to have survived.
    pub horizon: u64,
}

fn origin() -> Square {
    Square::ORIGIN
}

impl GameConfig {
    pub fn new(variant: AngelVariant, sneak: u32, horizon: u64) -> Self {
        GameConfig {
            variant,
            sneak,
            preset_deleted: Vec::new(),
            start: Square::ORIGIN,
            horizon,
        }
    }

    pub fn with_walls(mut self, walls: impl IntoIterator<Item = Square>) -> Self {
        self.preset_deleted.extend(walls);
        self.preset_deleted.sort_unstable();
        self.preset_deleted.dedup();
        self
    }

    pub fn with_start(mut self, start: Square) -> Self {
        self.start = start;
        self
    }

    pub fn validate(&self) -> Result<(), GameError> {
        if self.horizon == 0 {
            return Err(GameError::InvalidConfig("horizon must be at least 1".into()));
        }
        let walls: Board = self.preset_deleted.iter().copied().collect();
        if !has_legal_move(self.variant, self.start, &walls) {
            return Err(GameError::InvalidConfig(format!(
                "start square {} has no legal move",
                self.start
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GameStatus {
    AwaitingAngel,
    AwaitingDevil,
    /// The Angel had to move and could not, right after deletion `round`.
    DevilWon { round: u64 },
    AngelSurvived { horizon: u64 },
}

impl GameStatus {
    pub fn is_over(self) -> bool {
        matches!(self, GameStatus::DevilWon { .. } | GameStatus::AngelSurvived { .. })
    }
}

impl fmt::Display for GameStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameStatus::AwaitingAngel => f.write_str("awaiting angel"),
            GameStatus::AwaitingDevil => f.write_str("awaiting devil"),
            GameStatus::DevilWon { round } => write!(f, "devil won in round {round}"),
            GameStatus::AngelSurvived { horizon } => {
                write!(f, "angel survived {horizon} devil rounds")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Angel,
    Devil,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("illegal angel move {move_index}: {from} -> {to}")]
    IllegalMove {
        move_index: usize,
        from: Square,
        to: Square,
    },
    #[error("devil round {round}: square {square} is already deleted")]
    DuplicateDeletion { round: u64, square: Square },
    #[error("expected {expected:?} to move, game is {status}")]
    WrongPhase { expected: Phase, status: GameStatus },
    #[error("invalid config: {0}")]
    InvalidConfig(String),
}

/// The full, referee-side state of one game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    config: GameConfig,
    positions: Vec<Square>,
    deleted: Board,
    devil_moves: Vec<Square>,
    status: GameStatus,
}

impl GameState {
    pub fn new(config: GameConfig) -> Result<Self, GameError> {
        config.validate()?;
        let deleted: Board = config.preset_deleted.iter().copied().collect();
        let status = if config.sneak == 0 {
            GameStatus::AwaitingDevil
        } else {
            GameStatus::AwaitingAngel
        };
        Ok(GameState {
            positions: vec![config.start],
            deleted,
            devil_moves: Vec::new(),
            status,
            config,
        })
    }

    pub fn config(&self) -> &GameConfig {
        &self.config
    }

    pub fn positions(&self) -> &[Square] {
        &self.positions
    }

    pub fn deleted(&self) -> &Board {
        &self.deleted
    }

    pub fn devil_moves(&self) -> &[Square] {
        &self.devil_moves
    }

    pub fn status(&self) -> GameStatus {
        self.status
    }

    pub fn true_position(&self) -> Square {
        *self.positions.last().expect("positions always holds the start")
    }

    pub fn angel_moves_made(&self) -> usize {
        self.positions.len() - 1
    }

    pub fn devil_rounds(&self) -> u64 {
        self.devil_moves.len() as u64
    }

    /// Angel moves still owed before the Devil's next deletion.
    pub fn pending_angel_moves(&self) -> usize {
        let due = self.config.sneak as usize + self.devil_moves.len();
        due.saturating_sub(self.angel_moves_made())
    }

    pub fn legal_moves(&self) -> Vec<Square> {
        legal_angel_moves(self.config.variant, self.true_position(), &self.deleted)
    }

    /// Positions the Devil has seen so far: `p_0 ..= p_r` after `r`
    /// deletions, capped by the moves actually made.
    pub fn revealed(&self) -> &[Square] {
        let seen = (self.devil_moves.len() + 1).min(self.positions.len());
        &self.positions[..seen]
    }

    pub fn apply_angel_move(&mut self, to: Square) -> Result<(), GameError> {
        if self.status != GameStatus::AwaitingAngel {
            return Err(GameError::WrongPhase {
                expected: Phase::Angel,
                status: self.status,
            });
        }
        let from = self.true_position();
        if !self.config.variant.allows(Offset::between(from, to)) || self.deleted.contains(to) {
            return Err(GameError::IllegalMove {
                move_index: self.positions.len(),
                from,
                to,
            });
        }
        self.positions.push(to);
        if self.pending_angel_moves() == 0 {
            self.status = GameStatus::AwaitingDevil;
        } else if !has_legal_move(self.config.variant, to, &self.deleted) {
            // Still inside the opening burst and already stuck.
            self.status = GameStatus::DevilWon {
                round: self.devil_rounds(),
            };
        }
        Ok(())
    }

    pub fn apply_devil_delete(&mut self, sq: Square) -> Result<(), GameError> {
        if self.status != GameStatus::AwaitingDevil {
            return Err(GameError::WrongPhase {
                expected: Phase::Devil,
                status: self.status,
            });
        }
        let round = self.devil_rounds() + 1;
        if !self.deleted.insert(sq) {
            return Err(GameError::DuplicateDeletion { round, square: sq });
        }
        self.devil_moves.push(sq);
        self.status = if !has_legal_move(self.config.variant, self.true_position(), &self.deleted) {
            GameStatus::DevilWon { round }
        } else if round >= self.config.horizon {
            GameStatus::AngelSurvived {
                horizon: self.config.horizon,
            }
        } else {
            GameStatus::AwaitingAngel
        };
        Ok(())
    }

    /// The information the Devil is entitled to before its next deletion.
    pub fn devil_view(&self) -> Result<DevilView<'_>, GameError> {
        if self.status != GameStatus::AwaitingDevil {
            return Err(GameError::WrongPhase {
                expected: Phase::Devil,
                status: self.status,
            });
        }
        let round = self.devil_rounds() + 1;
        Ok(DevilView {
            revealed: &self.positions[..round as usize],
            deletions: &self.devil_moves,
            board: &self.deleted,
            config: &self.config,
            round,
        })
    }
}

/// What the Devil may see before choosing deletion number `round`.
///
/// `revealed` is `p_0 ..= p_{round-1}`; the Angel's true position is
/// `sneak` moves further along and never reachable from here. `board`
/// holds exactly the preset walls plus the Devil's own deletions.
#[derive(Clone, Copy, Debug)]
pub struct DevilView<'a> {
    revealed: &'a [Square],
    deletions: &'a [Square],
    board: &'a Board,
    config: &'a GameConfig,
    round: u64,
}

impl<'a> DevilView<'a> {
    pub fn revealed(&self) -> &'a [Square] {
        self.revealed
    }

    pub fn last_revealed(&self) -> Square {
        *self.revealed.last().expect("revealed always holds the start")
    }

    pub fn deletions(&self) -> &'a [Square] {
        self.deletions
    }

    pub fn preset_deleted(&self) -> &'a [Square] {
        &self.config.preset_deleted
    }

    pub fn is_deleted(&self, sq: Square) -> bool {
        self.board.contains(sq)
    }

    pub fn board(&self) -> &'a Board {
        self.board
    }

    pub fn variant(&self) -> AngelVariant {
        self.config.variant
    }

    pub fn sneak(&self) -> u32 {
        self.config.sneak
    }

    /// 1-based index of the deletion about to be chosen.
    pub fn round(&self) -> u64 {
        self.round
    }
}
