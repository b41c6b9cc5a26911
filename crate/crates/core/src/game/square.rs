use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

/// A lattice point on the unbounded board.
///
/// Serialized as a two element array `[x, y]`, which is the form used on the
/// trace wire format and by the HTTP API.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Square {
    pub x: i64,
    pub y: i64,
}

impl Square {
    pub const ORIGIN: Square = Square { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Square { x, y }
    }

    pub fn offset(self, dx: i64, dy: i64) -> Self {
        Square::new(self.x + dx, self.y + dy)
    }

    /// King-move distance.
    pub fn chebyshev(self, other: Square) -> i64 {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }
}

impl From<[i64; 2]> for Square {
    fn from([x, y]: [i64; 2]) -> Self {
        Square { x, y }
    }
}

impl From<Square> for [i64; 2] {
    fn from(sq: Square) -> Self {
        [sq.x, sq.y]
    }
}

impl From<(i64, i64)> for Square {
    fn from((x, y): (i64, i64)) -> Self {
        Square { x, y }
    }
}

impl Add<Offset> for Square {
    type Output = Square;

    fn add(self, o: Offset) -> Square {
        self.offset(o.dx, o.dy)
    }
}

/// Row-major: by `y`, then by `x`.
impl Ord for Square {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Square {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Offset {
    pub dx: i64,
    pub dy: i64,
}

impl Offset {
    pub const fn new(dx: i64, dy: i64) -> Self {
        Offset { dx, dy }
    }

    pub fn between(from: Square, to: Square) -> Self {
        Offset::new(to.x - from.x, to.y - from.y)
    }
}

const KING: [Offset; 8] = [
    Offset::new(-1, 1),
    Offset::new(0, 1),
    Offset::new(1, 1),
    Offset::new(-1, 0),
    Offset::new(1, 0),
    Offset::new(-1, -1),
    Offset::new(0, -1),
    Offset::new(1, -1),
];

const UPWARD: [Offset; 3] = [Offset::new(-1, 1), Offset::new(0, 1), Offset::new(1, 1)];

const SIDE_TO_SIDE: [Offset; 5] = [
    Offset::new(-1, 1),
    Offset::new(0, 1),
    Offset::new(1, 1),
    Offset::new(-1, 0),
    Offset::new(1, 0),
];

/// Which moves the Angel piece is allowed to make.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AngelVariant {
    /// Any of the eight king moves.
    Unrestricted,
    /// Must increase `y` on every move.
    UpwardOnly,
    /// May never decrease `y`.
    SideToSide,
}

impl AngelVariant {
    /// Move offsets in a fixed order: forward row left to right, then the
    /// sideways moves, then the backward row.
    pub fn offsets(self) -> &'static [Offset] {
        match self {
            AngelVariant::Unrestricted => &KING,
            AngelVariant::UpwardOnly => &UPWARD,
            AngelVariant::SideToSide => &SIDE_TO_SIDE,
        }
    }

    pub fn allows(self, o: Offset) -> bool {
        self.offsets().contains(&o)
    }

    pub fn name(self) -> &'static str {
        match self {
            AngelVariant::Unrestricted => "unrestricted",
            AngelVariant::UpwardOnly => "upward",
            AngelVariant::SideToSide => "side_to_side",
        }
    }
}

impl std::str::FromStr for AngelVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "unrestricted" | "king" => Ok(AngelVariant::Unrestricted),
            "upward" | "upward_only" | "up" => Ok(AngelVariant::UpwardOnly),
            "side_to_side" | "sidetoside" | "sts" => Ok(AngelVariant::SideToSide),
            other => Err(format!("unknown angel variant `{other}`")),
        }
    }
}

impl fmt::Display for AngelVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_row_major() {
        let mut v = vec![Square::new(1, 0), Square::new(-5, 1), Square::new(0, 0)];
        v.sort();
        assert_eq!(v, vec![Square::new(0, 0), Square::new(1, 0), Square::new(-5, 1)]);
    }

    #[test]
    fn offsets_match_variant_shapes() {
        assert_eq!(AngelVariant::Unrestricted.offsets().len(), 8);
        assert!(AngelVariant::UpwardOnly.offsets().iter().all(|o| o.dy == 1));
        assert!(AngelVariant::SideToSide.offsets().iter().all(|o| o.dy >= 0));
        assert!(!AngelVariant::Unrestricted.allows(Offset::new(0, 0)));
    }

    #[test]
    fn square_serializes_as_pair() {
        let s = serde_json::to_string(&Square::new(-3, 7)).unwrap();
        assert_eq!(s, "[-3,7]");
        let back: Square = serde_json::from_str(&s).unwrap();
        assert_eq!(back, Square::new(-3, 7));
    }
}
