//! The two-stage row strategy.
//!
//! Every deletion lands on a single target row. For the first `⌈n/2⌉`
//! deletions the strategy builds a block of every-other squares centred
//! over the Angel's last known column; after that it deletes the undeleted
//! square nearest that column, breaking ties toward the side of the block
//! the Angel had fewer deletions on when it was halfway up.

use serde::{Deserialize, Serialize};

use crate::game::{Board, DevilStrategy, DevilView, Square, StrategyError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    One,
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// Right iff `x` lies strictly right of the mean of `a_list`.
///
/// Compared as `x * len > sum` so the mean never has to be rounded.
pub fn light_side(a_list: &[i64], x: i64) -> Side {
    assert!(!a_list.is_empty(), "light side of an empty block");
    let sum: i128 = a_list.iter().map(|&a| a as i128).sum();
    if (x as i128) * (a_list.len() as i128) > sum {
        Side::Right
    } else {
        Side::Left
    }
}

/// Read access to the strategy's target row, in the row's own column
/// coordinates.
pub trait TargetRow {
    fn is_deleted(&self, a: i64) -> bool;

    /// Nearest undeleted columns `<= x` and `>= x` inside the open bounds.
    fn nearest_free(&self, x: i64, lo: Option<i64>, hi: Option<i64>) -> (Option<i64>, Option<i64>) {
        let inside = |a: i64| lo.is_none_or(|l| a > l) && hi.is_none_or(|h| a < h);
        let mut left = x;
        while inside(left) && self.is_deleted(left) {
            left -= 1;
        }
        let mut right = x;
        while inside(right) && self.is_deleted(right) {
            right += 1;
        }
        (inside(left).then_some(left), inside(right).then_some(right))
    }
}

/// A horizontal board row, scanned through the board's row index.
pub struct BoardRow<'a> {
    pub board: &'a Board,
    pub y: i64,
}

impl TargetRow for BoardRow<'_> {
    fn is_deleted(&self, a: i64) -> bool {
        self.board.contains(Square::new(a, self.y))
    }

    fn nearest_free(&self, x: i64, lo: Option<i64>, hi: Option<i64>) -> (Option<i64>, Option<i64>) {
        self.board.nearest_free_in_row(self.y, x, lo, hi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SigmaState {
    n: u32,
    a_list: Vec<i64>,
    stage: Stage,
    light: Option<Side>,
}

impl SigmaState {
    pub fn new(n: u32) -> Self {
        assert!(n >= 1, "target row must be at least 1");
        SigmaState {
            n,
            a_list: Vec::new(),
            stage: Stage::One,
            light: None,
        }
    }

    /// Rebuilds a state from a known deletion history, e.g. for tests.
    pub fn from_parts(n: u32, a_list: Vec<i64>, light: Option<Side>) -> Self {
        let stage = if light.is_some() { Stage::Two } else { Stage::One };
        SigmaState {
            n,
            a_list,
            stage,
            light,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a_list(&self) -> &[i64] {
        &self.a_list
    }

    pub fn stage(&self) -> Stage {
        self.stage
    }

    pub fn light(&self) -> Option<Side> {
        self.light
    }

    pub fn stage_one_len(&self) -> usize {
        self.n.div_ceil(2) as usize
    }

    /// Chooses and records the next column to delete, given the Angel's last
    /// known column `x`. `lo`/`hi` are exclusive bounds (side walls).
    pub fn next_column(
        &mut self,
        x: i64,
        row: &dyn TargetRow,
        lo: Option<i64>,
        hi: Option<i64>,
    ) -> Result<i64, StrategyError> {
        if self.stage == Stage::One && self.a_list.len() >= self.stage_one_len() {
            self.stage = Stage::Two;
            self.light = Some(light_side(&self.a_list, x));
        }
        let a = match self.stage {
            Stage::One => self.stage_one_pick(x, row, lo, hi),
            Stage::Two => self.stage_two_pick(x, row, lo, hi),
        }
        .ok_or_else(|| StrategyError::NoCandidate {
            round: self.a_list.len() as u64 + 1,
            detail: format!("row {} has no admissible square near column {x}", self.n),
        })?;
        self.a_list.push(a);
        Ok(a)
    }

    /// Closest column to `x` not adjacent to any earlier pick; leftmost on ties.
    fn stage_one_pick(
        &self,
        x: i64,
        row: &dyn TargetRow,
        lo: Option<i64>,
        hi: Option<i64>,
    ) -> Option<i64> {
        let inside = |a: i64| lo.is_none_or(|l| a > l) && hi.is_none_or(|h| a < h);
        let admissible = |a: i64| {
            inside(a) && self.a_list.iter().all(|&p| (a - p).abs() > 1) && !row.is_deleted(a)
        };
        let mut d = 0i64;
        loop {
            if admissible(x - d) {
                return Some(x - d);
            }
            if admissible(x + d) {
                return Some(x + d);
            }
            if !inside(x - d) && !inside(x + d) {
                return None;
            }
            d += 1;
        }
    }

    /// Closest undeleted column to `x`; ties go to the light side.
    fn stage_two_pick(
        &self,
        x: i64,
        row: &dyn TargetRow,
        lo: Option<i64>,
        hi: Option<i64>,
    ) -> Option<i64> {
        match row.nearest_free(x, lo, hi) {
            (None, None) => None,
            (Some(l), None) => Some(l),
            (None, Some(r)) => Some(r),
            (Some(l), Some(r)) => {
                let (dl, dr) = (x - l, r - x);
                if dl < dr {
                    Some(l)
                } else if dr < dl {
                    Some(r)
                } else {
                    match self.light.unwrap_or(Side::Left) {
                        Side::Left => Some(l),
                        Side::Right => Some(r),
                    }
                }
            }
        }
    }
}

/// The row strategy as a Devil: deletes only on row `y = n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sigma {
    state: SigmaState,
}

impl Sigma {
    pub fn new(n: u32) -> Self {
        Sigma {
            state: SigmaState::new(n),
        }
    }

    pub fn from_state(state: SigmaState) -> Self {
        Sigma { state }
    }

    pub fn state(&self) -> &SigmaState {
        &self.state
    }
}

/// One step of the row strategy against the view's last revealed column.
pub fn sigma_next(st: &mut SigmaState, view: &DevilView<'_>) -> Result<Square, StrategyError> {
    let y = st.n as i64;
    let x = view.last_revealed().x;
    let row = BoardRow {
        board: view.board(),
        y,
    };
    let a = st.next_column(x, &row, None, None)?;
    Ok(Square::new(a, y))
}

impl DevilStrategy for Sigma {
    fn next_deletion(&mut self, view: &DevilView<'_>) -> Result<Square, StrategyError> {
        sigma_next(&mut self.state, view)
    }

    fn describe(&self) -> String {
        format!("sigma:n={}", self.state.n)
    }
}
