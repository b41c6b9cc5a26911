//! Exhaustive enumeration of every Angel behaviour against a deterministic
//! Devil.
//!
//! The Devil side is a fixed strategy, so the game tree only branches on
//! Angel moves. The search walks it depth first and stops at the first
//! escape, returning a replayable witness.

use std::hash::Hash;

use rustc_hash::FxHashSet;

use crate::devil::{side_walls, Sigma, SigmaHat};
use crate::game::{
    AngelVariant, DevilStrategy, GameConfig, GameState, GameStatus, Square, Trace, TraceEvent,
};

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// Every explored line ends with the Angel trapped.
    AllCaptured {
        max_devil_rounds: u64,
        paths_explored: u64,
    },
    /// A line where the Angel reached the Devil's target row or outlived the
    /// round bound.
    Escape { witness: Box<Trace> },
    /// The node budget ran out first.
    Inconclusive { node_budget: u64, nodes: u64 },
}

impl Verdict {
    pub fn is_all_captured(&self) -> bool {
        matches!(self, Verdict::AllCaptured { .. })
    }

    pub fn is_escape(&self) -> bool {
        matches!(self, Verdict::Escape { .. })
    }
}

#[derive(Clone, Debug)]
pub struct SearchLimits {
    /// Reaching this row counts as an escape.
    pub escape_row: i64,
    /// Stop with `Inconclusive` after expanding this many nodes.
    pub node_budget: Option<u64>,
    /// Skip Angel decision points whose Devil-relevant state was already
    /// explored.
    pub memo: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub leaves: u64,
    pub memo_hits: u64,
    pub max_devil_rounds: u64,
}

/// Everything the Devil's future play and the Angel's options depend on,
/// assuming the strategy decides from its own state, the board and the last
/// revealed square only (true of the row strategies).
#[derive(Clone, PartialEq, Eq, Hash)]
struct MemoKey<D> {
    devil: D,
    deletions: Vec<Square>,
    last_revealed: Square,
    hidden: Vec<Square>,
}

fn memo_key<D: Clone>(state: &GameState, devil: &D) -> MemoKey<D> {
    let mut deletions = state.devil_moves().to_vec();
    deletions.sort_unstable();
    let revealed = state.revealed().len();
    MemoKey {
        devil: devil.clone(),
        deletions,
        last_revealed: state.positions()[revealed - 1],
        hidden: state.positions()[revealed..].to_vec(),
    }
}

enum Stop {
    Escape(Box<Trace>),
    Budget,
}

struct Search<'a, D> {
    config: GameConfig,
    limits: SearchLimits,
    stats: SearchStats,
    seen: FxHashSet<MemoKey<D>>,
    events: Vec<TraceEvent>,
    on_deletion: &'a mut dyn FnMut(&GameState),
    devil_name: String,
}

impl<D> Search<'_, D>
where
    D: DevilStrategy + Clone + Eq + Hash,
{
    fn witness(&self, state: &GameState) -> Box<Trace> {
        Box::new(Trace {
            config: self.config.clone(),
            angel: Some(String::from("search witness")),
            devil: Some(self.devil_name.clone()),
            events: self.events.clone(),
            outcome: state.status(),
            monitors: None,
        })
    }

    fn visit(&mut self, mut state: GameState, mut devil: D) -> Result<(), Stop> {
        self.stats.nodes += 1;
        if self.limits.node_budget.is_some_and(|b| self.stats.nodes > b) {
            return Err(Stop::Budget);
        }
        match state.status() {
            GameStatus::DevilWon { round } => {
                self.stats.leaves += 1;
                self.stats.max_devil_rounds = self.stats.max_devil_rounds.max(round);
                Ok(())
            }
            GameStatus::AngelSurvived { .. } => Err(Stop::Escape(self.witness(&state))),
            GameStatus::AwaitingDevil => {
                let view = state.devil_view().expect("awaiting devil");
                let round = view.round();
                // A strategy that runs dry or repeats itself has lost control
                // of the game; report the line as an escape.
                let Ok(del) = devil.next_deletion(&view) else {
                    return Err(Stop::Escape(self.witness(&state)));
                };
                if state.apply_devil_delete(del).is_err() {
                    return Err(Stop::Escape(self.witness(&state)));
                }
                self.events.push(TraceEvent::DevilDelete { r: round, del });
                (self.on_deletion)(&state);
                let result = self.visit(state, devil);
                self.events.pop();
                result
            }
            GameStatus::AwaitingAngel => {
                if self.limits.memo && !self.seen.insert(memo_key(&state, &devil)) {
                    self.stats.memo_hits += 1;
                    return Ok(());
                }
                for to in state.legal_moves() {
                    let mut child = state.clone();
                    child
                        .apply_angel_move(to)
                        .expect("legal_moves only yields legal squares");
                    self.events.push(TraceEvent::AngelMove {
                        i: child.angel_moves_made(),
                        to,
                    });
                    let result = if to.y >= self.limits.escape_row {
                        Err(Stop::Escape(self.witness(&child)))
                    } else {
                        self.visit(child, devil.clone())
                    };
                    self.events.pop();
                    result?;
                }
                Ok(())
            }
        }
    }
}

/// Explores every Angel line from a fresh game under `config` against
/// `devil`, calling `on_deletion` after each Devil move.
pub fn search<D>(
    config: GameConfig,
    devil: D,
    limits: SearchLimits,
    on_deletion: &mut dyn FnMut(&GameState),
) -> (Verdict, SearchStats)
where
    D: DevilStrategy + Clone + Eq + Hash,
{
    let state = GameState::new(config.clone()).expect("search config must be valid");
    let devil_name = devil.describe();
    let node_budget = limits.node_budget.unwrap_or(u64::MAX);
    let mut s = Search {
        config,
        limits,
        stats: SearchStats::default(),
        seen: FxHashSet::default(),
        events: Vec::new(),
        on_deletion,
        devil_name,
    };
    let verdict = match s.visit(state, devil) {
        Ok(()) => Verdict::AllCaptured {
            max_devil_rounds: s.stats.max_devil_rounds,
            paths_explored: s.stats.leaves,
        },
        Err(Stop::Escape(witness)) => Verdict::Escape { witness },
        Err(Stop::Budget) => Verdict::Inconclusive {
            node_budget,
            nodes: s.stats.nodes,
        },
    };
    (verdict, s.stats)
}

/// Game setup for the upward-only oracle: the Devil gets enough rounds for
/// the Angel to either be trapped below row `n` or reach it.
pub fn upward_config(n: u32, s: u32) -> GameConfig {
    GameConfig::new(AngelVariant::UpwardOnly, s, n as u64 + s as u64 + 2)
}

/// Every upward-only Angel against the row strategy on row `n`.
pub fn exhaustive_check_upward(n: u32, s: u32) -> Verdict {
    exhaustive_check_upward_with(n, s, false, &mut |_| {}).0
}

pub fn exhaustive_check_upward_with(
    n: u32,
    s: u32,
    memo: bool,
    on_deletion: &mut dyn FnMut(&GameState),
) -> (Verdict, SearchStats) {
    let limits = SearchLimits {
        escape_row: n as i64,
        node_budget: None,
        memo,
    };
    search(upward_config(n, s), Sigma::new(n), limits, on_deletion)
}

pub fn side_to_side_config(n: u32, m: i64, s: u32, max_devil_rounds: u64) -> GameConfig {
    GameConfig::new(AngelVariant::SideToSide, s, max_devil_rounds).with_walls(side_walls(n, m))
}

/// Budgeted, memoised search of the side-to-side game inside walls at `±m`.
pub fn bounded_check_side_to_side(
    n: u32,
    m: i64,
    s: u32,
    max_devil_rounds: u64,
    node_budget: u64,
) -> Verdict {
    bounded_check_side_to_side_with(n, m, s, max_devil_rounds, node_budget, true).0
}

pub fn bounded_check_side_to_side_with(
    n: u32,
    m: i64,
    s: u32,
    max_devil_rounds: u64,
    node_budget: u64,
    memo: bool,
) -> (Verdict, SearchStats) {
    let limits = SearchLimits {
        escape_row: n as i64,
        node_budget: Some(node_budget),
        memo,
    };
    search(
        side_to_side_config(n, m, s, max_devil_rounds),
        SigmaHat::new(n, m),
        limits,
        &mut |_| {},
    )
}
