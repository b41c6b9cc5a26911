use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{AngelVariant, GameConfig, GameError, GameState, GameStatus, Square};
use crate::verification::MonitorReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceEvent {
    /// The Angel's `i`-th move (1-based).
    AngelMove { i: usize, to: Square },
    /// The Devil's `r`-th deletion (1-based).
    DevilDelete { r: u64, del: Square },
}

/// A complete, replayable record of one game.
#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub config: GameConfig,
    pub angel: Option<String>,
    pub devil: Option<String>,
    pub events: Vec<TraceEvent>,
    pub outcome: GameStatus,
    pub monitors: Option<MonitorReport>,
}

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("replay failed: {0}")]
    Replay(#[from] GameError),
    #[error("round {round} out of range (trace has {rounds} deletions)")]
    RoundOutOfRange { round: u64, rounds: u64 },
    #[error("replay ended in {got} but trace records {recorded}")]
    OutcomeMismatch { recorded: GameStatus, got: GameStatus },
}

/// One line of the JSON-lines wire format. Field order is part of the format.
#[derive(Serialize, Deserialize)]
#[serde(tag = "t", rename_all = "snake_case")]
enum Line {
    Config {
        variant: AngelVariant,
        s: u32,
        start: Square,
        horizon: u64,
        preset: Vec<Square>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        angel: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        devil: Option<String>,
    },
    Angel {
        i: usize,
        to: Square,
    },
    Devil {
        r: u64,
        del: Square,
    },
    Outcome {
        outcome: GameStatus,
        angel_moves: usize,
        devil_rounds: u64,
    },
    Monitors {
        report: MonitorReport,
    },
}

impl Trace {
    pub fn angel_moves(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, TraceEvent::AngelMove { .. }))
            .count()
    }

    pub fn devil_rounds(&self) -> u64 {
        self.events
            .iter()
            .filter(|e| matches!(e, TraceEvent::DevilDelete { .. }))
            .count() as u64
    }

    pub fn to_jsonl(&self) -> String {
        let mut lines = Vec::with_capacity(self.events.len() + 3);
        lines.push(Line::Config {
            variant: self.config.variant,
            s: self.config.sneak,
            start: self.config.start,
            horizon: self.config.horizon,
            preset: self.config.preset_deleted.clone(),
            angel: self.angel.clone(),
            devil: self.devil.clone(),
        });
        lines.extend(self.events.iter().map(|e| match *e {
            TraceEvent::AngelMove { i, to } => Line::Angel { i, to },
            TraceEvent::DevilDelete { r, del } => Line::Devil { r, del },
        }));
        lines.push(Line::Outcome {
            outcome: self.outcome,
            angel_moves: self.angel_moves(),
            devil_rounds: self.devil_rounds(),
        });
        if let Some(report) = &self.monitors {
            lines.push(Line::Monitors {
                report: report.clone(),
            });
        }
        let mut out = String::new();
        for line in &lines {
            out.push_str(&serde_json::to_string(line).expect("trace lines always serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Trace, TraceError> {
        let mut config = None;
        let mut angel = None;
        let mut devil = None;
        let mut events = Vec::new();
        let mut outcome = None;
        let mut monitors = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let parsed: Line =
                serde_json::from_str(raw).map_err(|source| TraceError::Json { line, source })?;
            match parsed {
                Line::Config {
                    variant,
                    s,
                    start,
                    horizon,
                    preset,
                    angel: a,
                    devil: d,
                } => {
                    if config.is_some() {
                        return Err(TraceError::Format {
                            line,
                            msg: "duplicate config header".into(),
                        });
                    }
                    config = Some(
                        GameConfig::new(variant, s, horizon)
                            .with_start(start)
                            .with_walls(preset),
                    );
                    angel = a;
                    devil = d;
                }
                Line::Angel { i, to } => events.push(TraceEvent::AngelMove { i, to }),
                Line::Devil { r, del } => events.push(TraceEvent::DevilDelete { r, del }),
                Line::Outcome { outcome: o, .. } => outcome = Some(o),
                Line::Monitors { report } => monitors = Some(report),
            }
        }
        let config = config.ok_or(TraceError::Format {
            line: 1,
            msg: "missing config header".into(),
        })?;
        let outcome = outcome.ok_or(TraceError::Format {
            line: text.lines().count(),
            msg: "missing outcome line".into(),
        })?;
        Ok(Trace {
            config,
            angel,
            devil,
            events,
            outcome,
            monitors,
        })
    }

    /// State after the first `limit` events (all of them when `None`).
    pub fn replay_prefix(&self, limit: Option<usize>) -> Result<GameState, GameError> {
        let mut state = GameState::new(self.config.clone())?;
        let take = limit.unwrap_or(self.events.len());
        for event in self.events.iter().take(take) {
            match *event {
                TraceEvent::AngelMove { to, .. } => state.apply_angel_move(to)?,
                TraceEvent::DevilDelete { del, .. } => state.apply_devil_delete(del)?,
            }
        }
        Ok(state)
    }

    /// Replays every event through the engine and checks the recorded outcome.
    pub fn replay(&self) -> Result<GameState, TraceError> {
        let state = self.replay_prefix(None)?;
        if state.status() != self.outcome {
            return Err(TraceError::OutcomeMismatch {
                recorded: self.outcome,
                got: state.status(),
            });
        }
        Ok(state)
    }

    /// State right after deletion `round` (round 0: before any deletion).
    pub fn state_at_round(&self, round: u64) -> Result<GameState, TraceError> {
        if round == 0 {
            let first_delete = self
                .events
                .iter()
                .position(|e| matches!(e, TraceEvent::DevilDelete { .. }))
                .unwrap_or(self.events.len());
            return Ok(self.replay_prefix(Some(first_delete))?);
        }
        let idx = self
            .events
            .iter()
            .position(|e| matches!(e, TraceEvent::DevilDelete { r, .. } if *r == round));
        match idx {
            Some(i) => Ok(self.replay_prefix(Some(i + 1))?),
            None => Err(TraceError::RoundOutOfRange {
                round,
                rounds: self.devil_rounds(),
            }),
        }
    }
}
