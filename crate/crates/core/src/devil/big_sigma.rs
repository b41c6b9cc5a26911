//! The full trap for the unrestricted Angel.
//!
//! Four L-shaped corner walls go down first, turning the ring between the
//! `9n` and `10n` boxes into four walled rectangles. After that the Devil
//! fills `[-10n, 10n]^2` row by row while the Angel's last known square is in
//! the inner box, and runs a wall-assisted row strategy in whichever
//! rectangle the Angel was last seen in.

use serde::{Deserialize, Serialize};

use super::sigma_hat::{Direction, Frame, SigmaHatState};
use crate::game::{DevilStrategy, DevilView, Square, StrategyError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    InnerBox,
    North,
    South,
    East,
    West,
    Outside,
}

impl Region {
    pub fn direction(self) -> Option<Direction> {
        match self {
            Region::North => Some(Direction::North),
            Region::South => Some(Direction::South),
            Region::East => Some(Direction::East),
            Region::West => Some(Direction::West),
            Region::InnerBox | Region::Outside => None,
        }
    }
}

pub fn region_of(sq: Square, n: u32) -> Region {
    let (inner, outer) = (9 * n as i64, 10 * n as i64);
    let (x, y) = (sq.x, sq.y);
    if x.abs() < inner && y.abs() < inner {
        Region::InnerBox
    } else if x.abs() < inner && (inner..outer).contains(&y) {
        Region::North
    } else if x.abs() < inner && (inner..outer).contains(&-y) {
        Region::South
    } else if y.abs() < inner && (inner..outer).contains(&x) {
        Region::East
    } else if y.abs() < inner && (inner..outer).contains(&-x) {
        Region::West
    } else {
        Region::Outside
    }
}

/// The `8n + 4` corner wall squares in deletion order: quadrants
/// `(1,1), (-1,1), (-1,-1), (1,-1)`, each as the horizontal arm `k = 0..=n`
/// then the vertical arm `k = 1..=n`.
pub fn corner_squares(n: u32) -> Vec<Square> {
    assert!(n >= 1);
    let (inner, n) = (9 * n as i64, n as i64);
    let mut out = Vec::with_capacity((8 * n + 4) as usize);
    for (a, b) in [(1, 1), (-1, 1), (-1, -1), (1, -1)] {
        for k in 0..=n {
            out.push(Square::new(a * (inner + k), b * inner));
        }
        for k in 1..=n {
            out.push(Square::new(a * inner, b * (inner + k)));
        }
    }
    out
}

/// Frame for the rectangle beyond the inner box in `dir`.
pub fn region_frame(n: u32, dir: Direction) -> Frame {
    let inner = 9 * n as i64;
    let origin = match dir {
        Direction::North => Square::new(0, inner),
        Direction::South => Square::new(0, -inner),
        Direction::East => Square::new(inner, 0),
        Direction::West => Square::new(-inner, 0),
    };
    Frame::new(origin, dir, inner)
}

/// Total deletions the strategy can ever make.
pub fn big_sigma_horizon(n: u32) -> u64 {
    let side = 20 * n as u64 + 1;
    side * side + 8 * n as u64 + 4
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BigPhase {
    Corners,
    BoxFill,
    Region(Direction),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigSigmaState {
    n: u32,
    phase: BigPhase,
    corners: Vec<Square>,
    corner_cursor: usize,
    /// Next box square to try, row-major over `[-10n, 10n]^2`.
    box_cursor: Square,
    region_states: [Option<SigmaHatState>; 4],
}

impl BigSigmaState {
    pub fn new(n: u32) -> Self {
        let outer = 10 * n as i64;
        BigSigmaState {
            n,
            phase: BigPhase::Corners,
            corners: corner_squares(n),
            corner_cursor: 0,
            box_cursor: Square::new(-outer, -outer),
            region_states: [None, None, None, None],
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn phase(&self) -> BigPhase {
        self.phase
    }

    pub fn region_state(&self, dir: Direction) -> Option<&SigmaHatState> {
        self.region_states[dir.index()].as_ref()
    }

    fn next_box_square(&mut self, deleted: &impl Fn(Square) -> bool) -> Option<Square> {
        let outer = 10 * self.n as i64;
        while self.box_cursor.y <= outer {
            let sq = self.box_cursor;
            self.box_cursor.x += 1;
            if self.box_cursor.x > outer {
                self.box_cursor = Square::new(-outer, sq.y + 1);
            }
            if !deleted(sq) {
                return Some(sq);
            }
        }
        None
    }

    pub fn next_square(
        &mut self,
        last_known: Square,
        round: u64,
        deleted: impl Fn(Square) -> bool,
    ) -> Result<Square, StrategyError> {
        while self.corner_cursor < self.corners.len() {
            let sq = self.corners[self.corner_cursor];
            self.corner_cursor += 1;
            if !deleted(sq) {
                self.phase = BigPhase::Corners;
                return Ok(sq);
            }
        }

        if let Some(dir) = region_of(last_known, self.n).direction() {
            let n = self.n;
            let st = self.region_states[dir.index()]
                .get_or_insert_with(|| SigmaHatState::new(n, region_frame(n, dir)));
            match st.next_square(last_known, &deleted) {
                Ok(sq) => {
                    self.phase = BigPhase::Region(dir);
                    return Ok(sq);
                }
                // Rectangle exhausted: fall back to the box fill.
                Err(StrategyError::NoCandidate { .. }) => {}
                Err(e) => return Err(e),
            }
        }

        self.phase = BigPhase::BoxFill;
        self.next_box_square(&deleted)
            .ok_or(StrategyError::Exhausted { round })
    }
}

pub fn big_sigma_next(
    st: &mut BigSigmaState,
    view: &DevilView<'_>,
) -> Result<Square, StrategyError> {
    let board = view.board();
    st.next_square(view.last_revealed(), view.round(), |sq| board.contains(sq))
}

#[derive(Clone, Debug)]
pub struct BigSigma {
    state: BigSigmaState,
}

impl BigSigma {
    pub fn new(n: u32) -> Self {
        BigSigma {
            state: BigSigmaState::new(n),
        }
    }

    pub fn state(&self) -> &BigSigmaState {
        &self.state
    }
}

impl DevilStrategy for BigSigma {
    fn next_deletion(&mut self, view: &DevilView<'_>) -> Result<Square, StrategyError> {
        big_sigma_next(&mut self.state, view)
    }

    fn describe(&self) -> String {
        format!("big_sigma:n={}", self.state.n)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::devil::sigma::SigmaState;
    use crate::game::Board;

    #[test]
    fn corner_count_is_8n_plus_4() {
        for n in 1..=20 {
            let c = corner_squares(n);
            let distinct: HashSet<_> = c.iter().collect();
            assert_eq!(c.len(), (8 * n + 4) as usize);
            assert_eq!(distinct.len(), c.len());
        }
    }

    /// Expand the defining formula directly and compare as sets.
    #[test]
    fn corners_match_formula() {
        for n in 1..=6i64 {
            let mut formula = HashSet::new();
            for a in [-1, 1] {
                for b in [-1, 1] {
                    for k in 0..=n {
                        formula.insert(Square::new(a * (9 * n + k), b * 9 * n));
                        formula.insert(Square::new(a * 9 * n, b * (9 * n + k)));
                    }
                }
            }
            let got: HashSet<_> = corner_squares(n as u32).into_iter().collect();
            assert_eq!(got, formula);
        }
        let c1: HashSet<_> = corner_squares(1).into_iter().collect();
        assert!(c1.contains(&Square::new(9, 9)));
        assert!(c1.contains(&Square::new(10, 9)));
        assert!(c1.contains(&Square::new(9, 10)));
        assert!(!c1.contains(&Square::new(10, 10)));
        assert_eq!(c1.len(), 12);
    }

    #[test]
    fn regions() {
        assert_eq!(region_of(Square::new(0, 0), 8), Region::InnerBox);
        assert_eq!(region_of(Square::new(0, 75), 8), Region::North);
        assert_eq!(region_of(Square::new(100, 0), 8), Region::Outside);
        assert_eq!(region_of(Square::new(0, -72), 8), Region::South);
        assert_eq!(region_of(Square::new(79, 71), 8), Region::East);
        assert_eq!(region_of(Square::new(-72, 0), 8), Region::West);
        assert_eq!(region_of(Square::new(71, -71), 8), Region::InnerBox);
        assert_eq!(region_of(Square::new(0, 80), 8), Region::Outside);
        assert_eq!(region_of(Square::new(75, 75), 8), Region::Outside);
    }

    #[test]
    fn region_walls_are_corner_arms() {
        let corners: HashSet<_> = corner_squares(8).into_iter().collect();
        for dir in Direction::ALL {
            for w in region_frame(8, dir).side_walls(8) {
                assert!(corners.contains(&w), "{dir:?} wall {w} not a corner square");
            }
        }
    }

    #[test]
    fn corners_then_box_cursor() {
        let n = 2;
        let mut st = BigSigmaState::new(n);
        let mut board = Board::new();
        let corners = corner_squares(n);
        for (i, want) in corners.iter().enumerate() {
            let sq = st
                .next_square(Square::ORIGIN, i as u64 + 1, |s| board.contains(s))
                .unwrap();
            assert_eq!(sq, *want);
            assert_eq!(st.phase(), BigPhase::Corners);
            board.insert(sq);
        }
        let sq = st
            .next_square(Square::ORIGIN, 8 * n as u64 + 5, |s| board.contains(s))
            .unwrap();
        assert_eq!(sq, Square::new(-20, -20));
        assert_eq!(st.phase(), BigPhase::BoxFill);
    }

    #[test]
    fn north_region_delegates_to_frame() {
        let n = 8u32;
        let mut st = BigSigmaState::new(n);
        let board: Board = corner_squares(n).into_iter().collect();
        // Skip the corner phase: every corner is already on the board.
        let last = Square::new(3, 9 * n as i64 + 1);
        let sq = st.next_square(last, 69, |s| board.contains(s)).unwrap();
        // A fresh inner row strategy deletes straight above the lateral
        // coordinate, on the row at depth n of the north frame.
        let mut inner = SigmaState::new(n);
        struct Free;
        impl crate::devil::sigma::TargetRow for Free {
            fn is_deleted(&self, _: i64) -> bool {
                false
            }
        }
        let a = inner.next_column(3, &Free, None, None).unwrap();
        assert_eq!(sq, Square::new(a, 10 * n as i64));
        assert_eq!(st.phase(), BigPhase::Region(Direction::North));
        assert_eq!(st.region_state(Direction::North).unwrap().virtual_round(), 1);
    }

    #[test]
    fn box_cursor_skips_deleted_and_exhausts() {
        let n = 1;
        let mut st = BigSigmaState::new(n);
        let mut board = Board::new();
        let mut count = 0;
        loop {
            match st.next_square(Square::ORIGIN, count + 1, |s| board.contains(s)) {
                Ok(sq) => {
                    assert!(board.insert(sq), "duplicate {sq}");
                    count += 1;
                }
                Err(StrategyError::Exhausted { .. }) => break,
                Err(e) => panic!("{e}"),
            }
        }
        assert_eq!(count, 21 * 21);
    }
}
