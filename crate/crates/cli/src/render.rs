use std::fmt;
use std::str::FromStr;

use angel_core::game::{GameState, Square, Trace, TraceError};

/// Inclusive board rectangle `x0,y0,x1,y1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Viewport {
    pub x0: i64,
    pub y0: i64,
    pub x1: i64,
    pub y1: i64,
}

impl Viewport {
    pub fn around(center: Square, radius: i64) -> Self {
        Viewport {
            x0: center.x - radius,
            y0: center.y - radius,
            x1: center.x + radius,
            y1: center.y + radius,
        }
    }

    pub fn contains(&self, sq: Square) -> bool {
        (self.x0..=self.x1).contains(&sq.x) && (self.y0..=self.y1).contains(&sq.y)
    }
}

impl FromStr for Viewport {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<i64> = s
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|e| format!("viewport `{s}`: {e}"))?;
        let [x0, y0, x1, y1] = parts[..] else {
            return Err(format!("viewport `{s}`: expected x0,y0,x1,y1"));
        };
        if x0 > x1 || y0 > y1 {
            return Err(format!("viewport `{s}`: need x0 <= x1 and y0 <= y1"));
        }
        if (x1 - x0 + 1).saturating_mul(y1 - y0 + 1) > 4_000_000 {
            return Err(format!("viewport `{s}` is too large"));
        }
        Ok(Viewport { x0, y0, x1, y1 })
    }
}

impl fmt::Display for Viewport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.x0, self.y0, self.x1, self.y1)
    }
}

/// The square the Devil based its latest deletion on: `p_{max(r-1, 0)}`
/// after `r` deletions.
pub fn last_seen(state: &GameState) -> Square {
    let r = state.devil_rounds() as usize;
    state.positions()[r.saturating_sub(1).min(state.positions().len() - 1)]
}

/// One text line per board row, top row first: `#` deleted, `A` the Angel,
/// `a` where the Devil last saw it, `.` intact.
pub fn render_state(state: &GameState, vp: Viewport) -> String {
    let angel = state.true_position();
    let seen = last_seen(state);
    let width = (vp.x1 - vp.x0 + 2) as usize;
    let mut out = String::with_capacity(width * (vp.y1 - vp.y0 + 1) as usize);
    for y in (vp.y0..=vp.y1).rev() {
        for x in vp.x0..=vp.x1 {
            let sq = Square::new(x, y);
            out.push(if sq == angel {
                'A'
            } else if sq == seen {
                'a'
            } else if state.deleted().contains(sq) {
                '#'
            } else {
                '.'
            });
        }
        out.push('\n');
    }
    out
}

/// Renders a trace after `at` deletions (default: the end), centred on the
/// Angel unless a viewport is given.
pub fn render_trace(trace: &Trace, at: Option<u64>, vp: Option<Viewport>) -> Result<String, TraceError> {
    let state = match at {
        Some(r) => trace.state_at_round(r)?,
        None => trace.replay_prefix(None)?,
    };
    let vp = vp.unwrap_or_else(|| Viewport::around(state.true_position(), 10));
    Ok(render_state(&state, vp))
}
