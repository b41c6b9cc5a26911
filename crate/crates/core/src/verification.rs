//! Runtime monitors for the row strategy and the full trap.
//!
//! Each monitor is a plain predicate plus a schedule saying after which
//! deletion it applies. Monitors observe the referee state (they need the
//! hidden Angel position for some checks) and never influence play.
//!
//! Half-integral centres are handled by comparing doubled quantities, so all
//! checks are exact integer arithmetic.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::devil::{sustained_radius, ResolvedDevil};
use crate::game::{
    run_game_observed, AngelStrategy, AngelVariant, DevilStrategy, GameConfig, GameObserver,
    GameState, RunError, Square, Trace,
};

/// The even-step block: sorted `a_list` is `min, min+2, ..., min+2(k-1)`.
pub fn check_lemon(a_list: &[i64]) -> bool {
    if a_list.is_empty() {
        return false;
    }
    let mut sorted = a_list.to_vec();
    sorted.sort_unstable();
    sorted.iter().enumerate().all(|(i, &a)| a == sorted[0] + 2 * i as i64)
}

/// `2c = min + max`, returned doubled to stay integral.
fn doubled_center(a_list: &[i64]) -> i64 {
    let min = *a_list.iter().min().expect("non-empty block");
    let max = *a_list.iter().max().expect("non-empty block");
    min + max
}

/// `|c - last_x| <= 1` with `c` the midpoint of the block.
pub fn check_lime(a_list: &[i64], last_x: i64) -> bool {
    !a_list.is_empty() && (doubled_center(a_list) - 2 * last_x).abs() <= 2
}

/// `|c - true_x| <= s + 1`.
pub fn check_hidden_bound(a_list: &[i64], true_x: i64, s: u32) -> bool {
    !a_list.is_empty() && (doubled_center(a_list) - 2 * true_x).abs() <= 2 * (s as i64 + 1)
}

/// Every column in `[center - radius, center + radius]` is deleted. A
/// negative radius is an empty interval.
pub fn check_interval_deleted(deleted: impl Fn(i64) -> bool, center: i64, radius: i64) -> bool {
    (center - radius..=center + radius).all(deleted)
}

/// Every column in `[x1 - (k-2), x1 + (k-2)]` is deleted.
pub fn check_orange(deleted: impl Fn(i64) -> bool, x1: i64, k: i64) -> bool {
    assert!(k >= 2, "interval coverage is stated for k >= 2");
    check_interval_deleted(deleted, x1, k - 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonitorId {
    /// Even-step block during stage one.
    Lemon,
    /// Block centre within one column of the last known position.
    Lime,
    /// Block centre within `s + 1` of the true position.
    HiddenBound,
    /// Growing interval of deletions around the last known column.
    Orange,
    /// Sustained interval radius after the growth phase.
    Melon,
    /// The Angel is still inside the inner box when the corners are done.
    Containment,
}

impl MonitorId {
    pub const ROW: [MonitorId; 5] = [
        MonitorId::Lemon,
        MonitorId::Lime,
        MonitorId::HiddenBound,
        MonitorId::Orange,
        MonitorId::Melon,
    ];

    pub fn is_row_monitor(self) -> bool {
        self != MonitorId::Containment
    }
}

/// Enough to re-run a check in isolation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonitorContext {
    pub a_list: Vec<i64>,
    pub last_revealed: Square,
    pub true_position: Square,
    /// Deleted columns of the target row near the last known column.
    pub row: Vec<i64>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonitorEntry {
    pub monitor: MonitorId,
    pub round: u64,
    pub pass: bool,
    pub context: MonitorContext,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonitorReport {
    pub passed: bool,
    pub entries: Vec<MonitorEntry>,
}

impl MonitorReport {
    pub fn failures(&self) -> impl Iterator<Item = &MonitorEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn count(&self, id: MonitorId) -> usize {
        self.entries.iter().filter(|e| e.monitor == id).count()
    }
}

/// Schedules the row-strategy monitors against deletion indices.
#[derive(Clone, Debug)]
pub struct RowSchedule {
    pub n: u32,
    pub sneak: u32,
}

impl RowSchedule {
    pub fn half(&self) -> u64 {
        self.n.div_ceil(2) as u64
    }

    /// `⌊⌊n/2⌋/2⌋`, the last `k` the interval-growth check covers.
    pub fn k_max(&self) -> u64 {
        ((self.n / 2) / 2) as u64
    }

    /// Monitors due after deletion `round`, with the `k` for the growth check.
    pub fn due(&self, round: u64) -> Vec<(MonitorId, i64)> {
        let mut out = Vec::new();
        if round == 0 {
            return out;
        }
        if round <= self.half() {
            out.push((MonitorId::Lemon, 0));
            out.push((MonitorId::Lime, 0));
            out.push((MonitorId::HiddenBound, 0));
        }
        let after_half = round as i64 - self.half() as i64 - 1;
        if after_half >= 2 && after_half <= self.k_max() as i64 {
            out.push((MonitorId::Orange, after_half));
        }
        if round >= self.half() + self.k_max() + 2 {
            out.push((MonitorId::Melon, 0));
        }
        out
    }

    /// Evaluates every due row monitor in `wanted` on a state that has just
    /// absorbed a deletion.
    pub fn evaluate(&self, state: &GameState, wanted: &[MonitorId]) -> Vec<MonitorEntry> {
        let round = state.devil_rounds();
        let due = self.due(round);
        if due.is_empty() {
            return Vec::new();
        }
        let y = self.n as i64;
        let a_list: Vec<i64> = state
            .devil_moves()
            .iter()
            .filter(|sq| sq.y == y)
            .map(|sq| sq.x)
            .collect();
        let last = state.positions()[round as usize - 1];
        let true_pos = state.true_position();
        let board = state.deleted();
        let on_row = |a: i64| board.contains(Square::new(a, y));
        let mut out = Vec::new();
        for (id, k) in due {
            if !wanted.contains(&id) {
                continue;
            }
            let (pass, detail) = match id {
                MonitorId::Lemon => (check_lemon(&a_list), String::from("even-step block")),
                MonitorId::Lime => (
                    check_lime(&a_list, last.x),
                    format!("doubled centre {}", doubled_center_or_zero(&a_list)),
                ),
                MonitorId::HiddenBound => (
                    check_hidden_bound(&a_list, true_pos.x, self.sneak),
                    format!("s = {}", self.sneak),
                ),
                MonitorId::Orange => (
                    check_orange(on_row, last.x, k),
                    format!("k = {k}, radius {}", k - 2),
                ),
                MonitorId::Melon => {
                    let r = sustained_radius(self.n);
                    (check_interval_deleted(on_row, last.x, r), format!("radius {r}"))
                }
                MonitorId::Containment => continue,
            };
            let span = sustained_radius(self.n).max(0) + self.sneak as i64 + 2;
            out.push(MonitorEntry {
                monitor: id,
                round,
                pass,
                context: MonitorContext {
                    a_list: a_list.clone(),
                    last_revealed: last,
                    true_position: true_pos,
                    row: board.row_range(y, last.x - span, last.x + span).collect(),
                    detail,
                },
            });
        }
        out
    }
}

fn doubled_center_or_zero(a_list: &[i64]) -> i64 {
    if a_list.is_empty() {
        0
    } else {
        doubled_center(a_list)
    }
}

/// After deletion `8n + 4` the true position lies in the open box `(-9n, 9n)^2`.
pub fn check_containment(state: &GameState, n: u32) -> Option<MonitorEntry> {
    let round = state.devil_rounds();
    if round != 8 * n as u64 + 4 {
        return None;
    }
    let inner = 9 * n as i64;
    let p = state.true_position();
    let pass = p.x.abs() < inner && p.y.abs() < inner;
    Some(MonitorEntry {
        monitor: MonitorId::Containment,
        round,
        pass,
        context: MonitorContext {
            a_list: Vec::new(),
            last_revealed: state.revealed().last().copied().unwrap_or(p),
            true_position: p,
            row: Vec::new(),
            detail: format!("open box (-{inner}, {inner})^2"),
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("monitor {monitor:?} cannot be scheduled against {devil} with the {variant} angel")]
    MonitorMisapplied {
        monitor: MonitorId,
        devil: String,
        variant: AngelVariant,
    },
}

/// Observer that evaluates monitors as a game is played.
#[derive(Clone, Debug)]
pub struct MonitorObserver {
    row: Option<RowSchedule>,
    containment_n: Option<u32>,
    wanted: Vec<MonitorId>,
    report: MonitorReport,
}

impl MonitorObserver {
    pub fn into_report(mut self) -> MonitorReport {
        self.report.passed = self.report.entries.iter().all(|e| e.pass);
        self.report
    }
}

impl GameObserver for MonitorObserver {
    fn after_deletion(&mut self, state: &GameState) {
        if let Some(row) = &self.row {
            let entries = row.evaluate(state, &self.wanted);
            self.report.entries.extend(entries);
        }
        if let Some(n) = self.containment_n {
            if let Some(e) = check_containment(state, n) {
                self.report.entries.push(e);
            }
        }
    }
}

/// A game set up with monitors; see [`attach_monitors`].
#[derive(Clone, Debug)]
pub struct MonitoredRun {
    config: GameConfig,
    devil: ResolvedDevil,
    observer: MonitorObserver,
}

/// Checks that every requested monitor has a schedule against `devil` and
/// the configured variant, and prepares an instrumented run.
pub fn attach_monitors(
    config: GameConfig,
    devil: ResolvedDevil,
    monitors: &[MonitorId],
) -> Result<MonitoredRun, VerifyError> {
    let misapplied = |monitor| VerifyError::MonitorMisapplied {
        monitor,
        devil: devil.to_string(),
        variant: config.variant,
    };
    let mut row = None;
    let mut containment_n = None;
    for &id in monitors {
        match (id.is_row_monitor(), devil) {
            (true, ResolvedDevil::Sigma { n }) if config.variant == AngelVariant::UpwardOnly => {
                row = Some(RowSchedule {
                    n,
                    sneak: config.sneak,
                })
            }
            (false, ResolvedDevil::BigSigma { n }) => containment_n = Some(n),
            _ => return Err(misapplied(id)),
        }
    }
    Ok(MonitoredRun {
        config,
        devil,
        observer: MonitorObserver {
            row,
            containment_n,
            wanted: monitors.to_vec(),
            report: MonitorReport::default(),
        },
    })
}

impl MonitoredRun {
    pub fn run(self, angel: &mut dyn AngelStrategy) -> Result<Trace, RunError> {
        let mut devil = self.devil.build();
        self.run_with(angel, &mut devil)
    }

    /// Runs against a caller-supplied Devil that claims to play the resolved
    /// strategy (for mutation tests).
    pub fn run_with(
        self,
        angel: &mut dyn AngelStrategy,
        devil: &mut dyn DevilStrategy,
    ) -> Result<Trace, RunError> {
        let MonitoredRun {
            config,
            mut observer,
            ..
        } = self;
        let mut trace = run_game_observed(config, angel, devil, &mut observer)?;
        trace.monitors = Some(observer.into_report());
        Ok(trace)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    #[test]
    fn lemon_cases() {
        assert!(check_lemon(&[0, 2, 4]));
        assert!(!check_lemon(&[0, 2, 6]));
        assert!(check_lemon(&[-2, 0]));
        assert!(check_lemon(&[4, 0, 2]));
        assert!(!check_lemon(&[]));
    }

    #[test]
    fn lime_cases() {
        assert!(check_lime(&[0, 2], 2));
        assert!(!check_lime(&[0], 2));
        assert!(check_lime(&[-2, 0, 2, 4], 0));
        assert!(!check_lime(&[-2, 0, 2, 4], -1));
    }

    #[test]
    fn hidden_bound_cases() {
        assert!(check_hidden_bound(&[0, 2], 2, 0));
        assert!(!check_hidden_bound(&[0], 3, 1));
        assert!(check_hidden_bound(&[0], 2, 1));
    }

    #[test]
    fn orange_cases() {
        let set = |v: &[i64]| v.iter().copied().collect::<HashSet<i64>>();
        let d = set(&[4]);
        assert!(check_orange(|a| d.contains(&a), 4, 2));
        let d = set(&[3, 5]);
        assert!(!check_orange(|a| d.contains(&a), 4, 3));
        let d = set(&[3, 4, 5]);
        assert!(check_orange(|a| d.contains(&a), 4, 3));
        assert!(check_interval_deleted(|_| false, 0, -1));
    }

    #[test]
    fn schedule_for_n12() {
        let s = RowSchedule { n: 12, sneak: 1 };
        assert_eq!(s.half(), 6);
        assert_eq!(s.k_max(), 3);
        for r in 1..=6 {
            assert!(s.due(r).iter().any(|(m, _)| *m == MonitorId::Lemon));
        }
        assert!(s.due(7).is_empty());
        assert!(s.due(8).is_empty());
        assert_eq!(s.due(9), vec![(MonitorId::Orange, 2)]);
        assert_eq!(s.due(10), vec![(MonitorId::Orange, 3)]);
        assert_eq!(s.due(11), vec![(MonitorId::Melon, 0)]);
    }

    #[test]
    fn misapplied_monitors_are_rejected() {
        let cfg = GameConfig::new(AngelVariant::Unrestricted, 0, 10);
        let err = attach_monitors(cfg.clone(), ResolvedDevil::Sigma { n: 8 }, &[MonitorId::Lemon]);
        assert!(matches!(err, Err(VerifyError::MonitorMisapplied { .. })));
        let err = attach_monitors(cfg, ResolvedDevil::Sigma { n: 8 }, &[MonitorId::Containment]);
        assert!(matches!(err, Err(VerifyError::MonitorMisapplied { .. })));
    }
}
