use rustc_hash::FxHashMap;

use super::Square;

const CHUNK: i64 = 8;

/// Sparse set of deleted squares on the unbounded board.
///
/// Stored as 8x8 bit blocks keyed by block coordinates, so membership is a
/// single hash lookup and row scans test whole bytes at a time.
#[derive(Clone, Debug, Default)]
pub struct Board {
    chunks: FxHashMap<(i64, i64), u64>,
    len: usize,
}

fn locate(x: i64, y: i64) -> ((i64, i64), u32) {
    let key = (x.div_euclid(CHUNK), y.div_euclid(CHUNK));
    let bit = (y.rem_euclid(CHUNK) * CHUNK + x.rem_euclid(CHUNK)) as u32;
    (key, bit)
}

impl Board {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, sq: Square) -> bool {
        let (key, bit) = locate(sq.x, sq.y);
        self.chunks.get(&key).is_some_and(|c| c >> bit & 1 == 1)
    }

    /// Returns `false` if the square was already deleted.
    pub fn insert(&mut self, sq: Square) -> bool {
        let (key, bit) = locate(sq.x, sq.y);
        let c = self.chunks.entry(key).or_insert(0);
        if *c >> bit & 1 == 1 {
            return false;
        }
        *c |= 1 << bit;
        self.len += 1;
        true
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Square> + '_ {
        self.chunks.iter().flat_map(|(&(cx, cy), &bits)| {
            (0..64u32).filter(move |b| bits >> b & 1 == 1).map(move |b| {
                let (dx, dy) = ((b as i64) % CHUNK, (b as i64) / CHUNK);
                Square::new(cx * CHUNK + dx, cy * CHUNK + dy)
            })
        })
    }

    /// All deleted squares in row-major order.
    pub fn sorted(&self) -> Vec<Square> {
        let mut v: Vec<Square> = self.iter().collect();
        v.sort_unstable();
        v
    }

    /// The 8 cells of row `y` in the block starting at column `8 * cx`.
    fn row_byte(&self, cx: i64, y: i64) -> u64 {
        let key = (cx, y.div_euclid(CHUNK));
        let shift = y.rem_euclid(CHUNK) * CHUNK;
        self.chunks.get(&key).map_or(0, |c| c >> shift & 0xff)
    }

    /// Bit `i` is set iff `(x0 + i, y)` is deleted, for `i < width <= 56`.
    pub fn row_mask(&self, y: i64, x0: i64, width: u32) -> u64 {
        assert!(width <= 56, "row mask too wide");
        let first = x0.div_euclid(CHUNK);
        let last = (x0 + width as i64 - 1).div_euclid(CHUNK);
        let mut acc: u128 = 0;
        for (k, cx) in (first..=last).enumerate() {
            acc |= (self.row_byte(cx, y) as u128) << (8 * k);
        }
        let shifted = acc >> x0.rem_euclid(CHUNK);
        (shifted as u64) & ((1u64 << width) - 1)
    }

    /// Deleted x-coordinates on row `y` within `lo..=hi`, ascending.
    pub fn row_range(&self, y: i64, lo: i64, hi: i64) -> impl Iterator<Item = i64> + '_ {
        let (first, last) = (lo.div_euclid(CHUNK), hi.div_euclid(CHUNK));
        (first..=last.max(first - 1)).flat_map(move |cx| {
            let byte = self.row_byte(cx, y);
            (0..CHUNK)
                .filter(move |b| byte >> b & 1 == 1)
                .map(move |b| cx * CHUNK + b)
                .filter(move |&a| a >= lo && a <= hi)
        })
    }

    pub fn row_count(&self, y: i64, lo: i64, hi: i64) -> usize {
        self.row_range(y, lo, hi).count()
    }

    /// The undeleted squares of row `y` nearest to column `x`, restricted to
    /// the open interval `(lo, hi)`.
    ///
    /// Returns `(left, right)`: the nearest free column `<= x` and the nearest
    /// free column `>= x`, each `None` if the run of deletions reaches the
    /// bound. When `x` itself is free both are `Some(x)`.
    pub fn nearest_free_in_row(
        &self,
        y: i64,
        x: i64,
        lo: Option<i64>,
        hi: Option<i64>,
    ) -> (Option<i64>, Option<i64>) {
        let in_bounds = |a: i64| lo.is_none_or(|l| a > l) && hi.is_none_or(|h| a < h);
        let left = {
            let mut a = x;
            loop {
                if !in_bounds(a) {
                    break None;
                }
                let cx = a.div_euclid(CHUNK);
                let free = !self.row_byte(cx, y) & 0xff;
                // Free cells of this block at or left of `a`.
                let below = free & ((2u64 << a.rem_euclid(CHUNK)) - 1);
                if below != 0 {
                    let found = cx * CHUNK + 63 - below.leading_zeros() as i64;
                    break in_bounds(found).then_some(found);
                }
                a = cx * CHUNK - 1;
            }
        };
        let right = {
            let mut a = x;
            loop {
                if !in_bounds(a) {
                    break None;
                }
                let cx = a.div_euclid(CHUNK);
                let free = !self.row_byte(cx, y) & 0xff;
                let above = free >> a.rem_euclid(CHUNK) << a.rem_euclid(CHUNK);
                if above != 0 {
                    let found = cx * CHUNK + above.trailing_zeros() as i64;
                    break in_bounds(found).then_some(found);
                }
                a = (cx + 1) * CHUNK;
            }
        };
        (left, right)
    }
}

impl PartialEq for Board {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.chunks.iter().all(|(k, c)| other.chunks.get(k).copied().unwrap_or(0) == *c)
    }
}

impl Eq for Board {}

impl FromIterator<Square> for Board {
    fn from_iter<T: IntoIterator<Item = Square>>(iter: T) -> Self {
        let mut b = Board::new();
        for sq in iter {
            b.insert(sq);
        }
        b
    }
}

impl Extend<Square> for Board {
    fn extend<T: IntoIterator<Item = Square>>(&mut self, iter: T) {
        for sq in iter {
            self.insert(sq);
        }
    }
}
