use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::game::{AngelStrategy, GameState, Offset, Square, StrategyError};

/// Distance beyond which the greedy Angel treats every square as equally safe.
pub const GREEDY_SIGHT: i64 = 3;

/// Compass order used by the wall follower, clockwise from north.
const COMPASS: [Offset; 8] = [
    Offset::new(0, 1),
    Offset::new(1, 1),
    Offset::new(1, 0),
    Offset::new(1, -1),
    Offset::new(0, -1),
    Offset::new(-1, -1),
    Offset::new(-1, 0),
    Offset::new(-1, 1),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdversaryKind {
    /// Cycles through a fixed list of offsets.
    Scripted(Vec<Offset>),
    /// Uniform over legal moves.
    Random { seed: u64 },
    /// Keeps as far from deletions as it can see.
    GreedyEscape,
    /// `period` moves up-left, then `period` moves up-right, repeated.
    ZigZag { period: u32 },
    /// Left-hand wall follower.
    WallHugger,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad angel strategy `{input}`: {reason}")]
pub struct ParseAngelError {
    pub input: String,
    pub reason: String,
}

fn parse_offset(token: &str) -> Option<Offset> {
    let o = match token.trim().to_ascii_uppercase().as_str() {
        "U" | "N" => Offset::new(0, 1),
        "D" | "S" => Offset::new(0, -1),
        "L" | "W" => Offset::new(-1, 0),
        "R" | "E" => Offset::new(1, 0),
        "UL" | "NW" => Offset::new(-1, 1),
        "UR" | "NE" => Offset::new(1, 1),
        "DL" | "SW" => Offset::new(-1, -1),
        "DR" | "SE" => Offset::new(1, -1),
        _ => return None,
    };
    Some(o)
}

fn offset_name(o: Offset) -> &'static str {
    match (o.dx, o.dy) {
        (0, 1) => "U",
        (0, -1) => "D",
        (-1, 0) => "L",
        (1, 0) => "R",
        (-1, 1) => "UL",
        (1, 1) => "UR",
        (-1, -1) => "DL",
        (1, -1) => "DR",
        _ => "?",
    }
}

impl FromStr for AdversaryKind {
    type Err = ParseAngelError;

    /// `script:U,UR,L`, `random:seed=42`, `greedy`, `zigzag:period=3`,
    /// `wall_hugger`.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| ParseAngelError {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let (name, params) = input.trim().split_once(':').unwrap_or((input.trim(), ""));
        let param = |key: &str| -> Result<Option<u64>, ParseAngelError> {
            let mut found = None;
            for kv in params.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let (k, v) = kv.split_once('=').ok_or_else(|| err("expected key=value"))?;
                if k.trim() != key {
                    return Err(err(&format!("unknown parameter `{}`", k.trim())));
                }
                let v = v
                    .trim()
                    .parse()
                    .map_err(|_| err(&format!("{key} must be a non-negative integer")))?;
                found = Some(v);
            }
            Ok(found)
        };
        match name.trim() {
            "script" => {
                let moves = params
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| parse_offset(t).ok_or_else(|| err(&format!("unknown move `{t}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                if moves.is_empty() {
                    return Err(err("script needs at least one move"));
                }
                Ok(AdversaryKind::Scripted(moves))
            }
            "random" => Ok(AdversaryKind::Random {
                seed: param("seed")?.unwrap_or(0),
            }),
            "greedy" | "greedy_escape" => Ok(AdversaryKind::GreedyEscape),
            "zigzag" => {
                let period = param("period")?.unwrap_or(1);
                if period == 0 {
                    return Err(err("period must be at least 1"));
                }
                Ok(AdversaryKind::ZigZag {
                    period: period as u32,
                })
            }
            "wall_hugger" | "wallhugger" => Ok(AdversaryKind::WallHugger),
            other => Err(err(&format!("unknown angel `{other}`"))),
        }
    }
}

impl fmt::Display for AdversaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdversaryKind::Scripted(moves) => {
                let names: Vec<_> = moves.iter().map(|&o| offset_name(o)).collect();
                write!(f, "script:{}", names.join(","))
            }
            AdversaryKind::Random { seed } => write!(f, "random:seed={seed}"),
            AdversaryKind::GreedyEscape => f.write_str("greedy"),
            AdversaryKind::ZigZag { period } => write!(f, "zigzag:period={period}"),
            AdversaryKind::WallHugger => f.write_str("wall_hugger"),
        }
    }
}

/// An Angel player. Randomness (the random kind and the optional opening)
/// comes from ChaCha8 seeded with an explicit 64-bit seed, so games replay
/// identically on every platform.
#[derive(Clone, Debug)]
pub struct Adversary {
    kind: AdversaryKind,
    rng: ChaCha8Rng,
    opening: u32,
    opening_seed: Option<u64>,
    moves: u64,
    heading: usize,
}

impl Adversary {
    pub fn new(kind: AdversaryKind) -> Self {
        let seed = match kind {
            AdversaryKind::Random { seed } => seed,
            _ => 0,
        };
        Adversary {
            kind,
            rng: ChaCha8Rng::seed_from_u64(seed),
            opening: 0,
            opening_seed: None,
            moves: 0,
            heading: 0,
        }
    }

    /// Plays `len` uniformly random moves (from `seed`) before switching to
    /// the kind's own policy.
    pub fn with_opening(mut self, seed: u64, len: u32) -> Self {
        self.opening = len;
        self.opening_seed = Some(seed);
        if !matches!(self.kind, AdversaryKind::Random { .. }) {
            self.rng = ChaCha8Rng::seed_from_u64(seed);
        }
        self
    }

    /// Initial wall-follower heading as a compass index (0 = north, clockwise).
    pub fn with_heading(mut self, heading: usize) -> Self {
        self.heading = heading % 8;
        self
    }

    pub fn kind(&self) -> &AdversaryKind {
        &self.kind
    }

    fn random_move(&mut self, legal: &[Square]) -> Square {
        legal[self.rng.random_range(0..legal.len())]
    }
}

impl AngelStrategy for Adversary {
    fn next_move(&mut self, state: &GameState) -> Result<Square, StrategyError> {
        let legal = state.legal_moves();
        if legal.is_empty() {
            return Err(StrategyError::NoLegalMove);
        }
        let step = self.moves;
        self.moves += 1;
        if step < self.opening as u64 {
            return Ok(self.random_move(&legal));
        }
        let step = step - self.opening as u64;
        let from = state.true_position();
        let mv = match &self.kind {
            AdversaryKind::Scripted(script) => {
                let want = from + script[(step % script.len() as u64) as usize];
                if legal.contains(&want) {
                    want
                } else {
                    legal[0]
                }
            }
            AdversaryKind::Random { .. } => self.random_move(&legal),
            AdversaryKind::GreedyEscape => greedy_escape_move(state),
            AdversaryKind::ZigZag { period } => {
                let leg = (step / *period as u64) % 2;
                let prefs = if leg == 0 {
                    [Offset::new(-1, 1), Offset::new(0, 1), Offset::new(1, 1)]
                } else {
                    [Offset::new(1, 1), Offset::new(0, 1), Offset::new(-1, 1)]
                };
                prefs
                    .iter()
                    .map(|&o| from + o)
                    .find(|sq| legal.contains(sq))
                    .unwrap_or(legal[0])
            }
            AdversaryKind::WallHugger => {
                let (sq, heading) = wall_hugger_move(state, self.heading);
                self.heading = heading;
                sq
            }
        };
        Ok(mv)
    }

    fn describe(&self) -> String {
        match self.opening_seed {
            Some(seed) if self.opening > 0 => {
                format!("{}+opening:seed={seed},len={}", self.kind, self.opening)
            }
            _ => self.kind.to_string(),
        }
    }
}

/// Chebyshev distance from `(ox, oy)` (relative to the window centre) to the
/// nearest deleted square, capped at [`GREEDY_SIGHT`] + 1. `rows[i]` holds
/// the deletions of row `i - r`, bit `j` for column `j - r`.
fn clearance(rows: &[u64], r: i64, ox: i64, oy: i64) -> i64 {
    for d in 1..=GREEDY_SIGHT {
        // The box of radius d - 1 is already known to be clear.
        let cols = ((1u64 << (2 * d + 1)) - 1) << (ox - d + r);
        if (oy - d..=oy + d).any(|y| rows[(y + r) as usize] & cols != 0) {
            return d;
        }
    }
    GREEDY_SIGHT + 1
}

/// The legal move farthest from any deletion; ties go to the larger `dy`,
/// then the smaller `x`.
pub fn greedy_escape_move(state: &GameState) -> Square {
    let legal = state.legal_moves();
    let center = state.true_position();
    let r = GREEDY_SIGHT + 1;
    let w = (2 * r + 1) as u32;
    let rows: Vec<u64> = (-r..=r)
        .map(|dy| state.deleted().row_mask(center.y + dy, center.x - r, w))
        .collect();
    *legal
        .iter()
        .max_by_key(|&&sq| {
            (
                clearance(&rows, r, sq.x - center.x, sq.y - center.y),
                sq.y - center.y,
                -sq.x,
            )
        })
        .expect("caller checked for a legal move")
}

fn touches_wall(state: &GameState, sq: Square) -> bool {
    COMPASS.iter().any(|&o| state.deleted().contains(sq + o))
}

/// Left-hand rule: scan clockwise from 90 degrees left of the heading and
/// take the first legal move that keeps a deleted square adjacent; with no
/// wall in reach, keep going straight.
fn wall_hugger_move(state: &GameState, heading: usize) -> (Square, usize) {
    let from = state.true_position();
    let variant = state.config().variant;
    let legal = state.legal_moves();
    let candidates: Vec<(usize, Square)> = (0..8)
        .map(|i| (heading + 6 + i) % 8)
        .filter(|&d| variant.allows(COMPASS[d]))
        .map(|d| (d, from + COMPASS[d]))
        .filter(|(_, sq)| legal.contains(sq))
        .collect();
    if let Some(&(d, sq)) = candidates.iter().find(|(_, sq)| touches_wall(state, *sq)) {
        return (sq, d);
    }
    if let Some(&(d, sq)) = candidates.iter().find(|(d, _)| *d == heading) {
        return (sq, d);
    }
    match candidates.first() {
        Some(&(d, sq)) => (sq, d),
        None => (legal[0], heading),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{AngelVariant, GameConfig, ScriptedDevil};

    fn fresh(variant: AngelVariant, walls: &[(i64, i64)]) -> GameState {
        let cfg = GameConfig::new(variant, 1, 100).with_walls(walls.iter().map(|&p| p.into()));
        GameState::new(cfg).unwrap()
    }

    #[test]
    fn greedy_on_empty_board_goes_up_left() {
        let g = fresh(AngelVariant::UpwardOnly, &[]);
        assert_eq!(greedy_escape_move(&g), Square::new(-1, 1));
    }

    #[test]
    fn greedy_moves_away_from_deletion() {
        let g = fresh(AngelVariant::UpwardOnly, &[(1, 1)]);
        // Candidates (-1,1) at distance 2 and (0,1) at distance 1.
        assert_eq!(greedy_escape_move(&g), Square::new(-1, 1));
        let g = fresh(AngelVariant::Unrestricted, &[(-2, 2)]);
        let mv = greedy_escape_move(&g);
        assert_eq!(mv, Square::new(1, 1));
    }

    #[test]
    fn greedy_takes_the_only_move() {
        let g = fresh(AngelVariant::UpwardOnly, &[(-1, 1), (0, 1)]);
        assert_eq!(greedy_escape_move(&g), Square::new(1, 1));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["script:U,UR,L", "random:seed=42", "greedy", "zigzag:period=3", "wall_hugger"] {
            let k: AdversaryKind = s.parse().unwrap();
            assert_eq!(k.to_string(), s);
        }
        assert!("script:Q".parse::<AdversaryKind>().is_err());
        assert!("zigzag:period=0".parse::<AdversaryKind>().is_err());
        assert!("random:sed=1".parse::<AdversaryKind>().is_err());
    }

    #[test]
    fn every_kind_returns_legal_moves() {
        let kinds = [
            AdversaryKind::Scripted(vec![Offset::new(0, -1)]),
            AdversaryKind::Random { seed: 3 },
            AdversaryKind::GreedyEscape,
            AdversaryKind::ZigZag { period: 2 },
            AdversaryKind::WallHugger,
        ];
        for variant in [
            AngelVariant::Unrestricted,
            AngelVariant::UpwardOnly,
            AngelVariant::SideToSide,
        ] {
            for kind in &kinds {
                let cfg = GameConfig::new(variant, 0, 40).with_walls([Square::new(0, 1)]);
                let devil_moves = (0..40).map(|i| Square::new(i - 20, 3)).collect();
                let mut devil = ScriptedDevil::new(devil_moves);
                let mut angel = Adversary::new(kind.clone()).with_opening(9, 2);
                let res = crate::game::run_game(cfg, &mut angel, &mut devil);
                let trace = res.unwrap_or_else(|e| panic!("{kind} / {variant}: {e}"));
                trace.replay().unwrap();
            }
        }
    }

    #[test]
    fn random_is_reproducible() {
        let play = |seed| {
            let cfg = GameConfig::new(AngelVariant::Unrestricted, 0, 30);
            let mut devil = crate::devil::FarAwayDevil;
            let mut angel = Adversary::new(AdversaryKind::Random { seed });
            crate::game::run_game(cfg, &mut angel, &mut devil).unwrap().to_jsonl()
        };
        assert_eq!(play(5), play(5));
        assert_ne!(play(5), play(6));
    }
}
