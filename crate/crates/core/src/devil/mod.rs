//! Devil strategies and the strategy-string grammar.

mod big_sigma;
mod sigma;
mod sigma_hat;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use big_sigma::{
    big_sigma_horizon, big_sigma_next, corner_squares, region_frame, region_of, BigPhase,
    BigSigma, BigSigmaState, Region,
};
pub use sigma::{light_side, sigma_next, BoardRow, Side, Sigma, SigmaState, Stage, TargetRow};
pub use sigma_hat::{
    side_walls, sigma_hat_next, Direction, FillCursor, Frame, HatPhase, SigmaHat, SigmaHatState,
};

use crate::game::{AngelVariant, DevilStrategy, DevilView, Square, StrategyError};

/// Least `n` with `⌊⌊n/2⌋/2⌋ - 2 >= s`, i.e. `n = 4s + 8`.
pub fn min_n_for_sneak(s: u32) -> u32 {
    4 * s + 8
}

/// The guaranteed radius of the deleted interval on the target row once
/// the row strategy is three quarters of the way through.
pub fn sustained_radius(n: u32) -> i64 {
    ((n / 2) / 2) as i64 - 2
}

/// Deletes `(10^6, 10^6 + r)` in round `r`; never touches anything nearby.
#[derive(Clone, Debug, Default)]
pub struct FarAwayDevil;

impl DevilStrategy for FarAwayDevil {
    fn next_deletion(&mut self, view: &DevilView<'_>) -> Result<Square, StrategyError> {
        Ok(Square::new(1_000_000, 1_000_000 + view.round() as i64))
    }

    fn describe(&self) -> String {
        String::from("far")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad devil strategy `{input}`: {reason}")]
pub struct ParseDevilError {
    pub input: String,
    pub reason: String,
}

/// A parsed strategy string such as `sigma:n=8` or `sigma_hat:n=8,m=72`.
///
/// Omitted `n` is filled in from the sneak parameter by [`DevilSpec::resolve`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DevilSpec {
    Sigma { n: Option<u32> },
    SigmaHat { n: Option<u32>, m: Option<i64> },
    BigSigma { n: Option<u32> },
    Far,
}

/// A [`DevilSpec`] with every parameter fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResolvedDevil {
    Sigma { n: u32 },
    SigmaHat { n: u32, m: i64 },
    BigSigma { n: u32 },
    Far,
}

impl FromStr for DevilSpec {
    type Err = ParseDevilError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| ParseDevilError {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let (name, params) = match input.trim().split_once(':') {
            Some((name, params)) => (name.trim(), params.trim()),
            None => (input.trim(), ""),
        };
        let mut n = None;
        let mut m = None;
        for kv in params.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| err(&format!("expected key=value, got `{kv}`")))?;
            match k.trim() {
                "n" => {
                    let v: u32 = v.trim().parse().map_err(|_| err("n must be a positive integer"))?;
                    if v == 0 {
                        return Err(err("n must be at least 1"));
                    }
                    n = Some(v);
                }
                "m" => {
                    let v: i64 = v.trim().parse().map_err(|_| err("m must be a positive integer"))?;
                    if v < 1 {
                        return Err(err("m must be at least 1"));
                    }
                    m = Some(v);
                }
                other => return Err(err(&format!("unknown parameter `{other}`"))),
            }
        }
        let spec = match name {
            "sigma" => DevilSpec::Sigma { n },
            "sigma_hat" => DevilSpec::SigmaHat { n, m },
            "big_sigma" => DevilSpec::BigSigma { n },
            "far" => DevilSpec::Far,
            other => return Err(err(&format!("unknown strategy `{other}`"))),
        };
        if m.is_some() && !matches!(spec, DevilSpec::SigmaHat { .. }) {
            return Err(err("only sigma_hat takes m"));
        }
        if n.is_some() && spec == DevilSpec::Far {
            return Err(err("far takes no parameters"));
        }
        Ok(spec)
    }
}

impl DevilSpec {
    pub fn resolve(self, sneak: u32) -> ResolvedDevil {
        let default_n = min_n_for_sneak(sneak);
        match self {
            DevilSpec::Sigma { n } => ResolvedDevil::Sigma {
                n: n.unwrap_or(default_n),
            },
            DevilSpec::SigmaHat { n, m } => {
                let n = n.unwrap_or(default_n);
                ResolvedDevil::SigmaHat {
                    n,
                    m: m.unwrap_or(9 * n as i64),
                }
            }
            DevilSpec::BigSigma { n } => ResolvedDevil::BigSigma {
                n: n.unwrap_or(default_n),
            },
            DevilSpec::Far => ResolvedDevil::Far,
        }
    }
}

impl ResolvedDevil {
    pub fn build(self) -> Box<dyn DevilStrategy + Send> {
        match self {
            ResolvedDevil::Sigma { n } => Box::new(Sigma::new(n)),
            ResolvedDevil::SigmaHat { n, m } => Box::new(SigmaHat::new(n, m)),
            ResolvedDevil::BigSigma { n } => Box::new(BigSigma::new(n)),
            ResolvedDevil::Far => Box::new(FarAwayDevil),
        }
    }

    /// Walls that must be on the board before the game starts.
    pub fn preset_walls(self) -> Vec<Square> {
        match self {
            ResolvedDevil::SigmaHat { n, m } => side_walls(n, m),
            _ => Vec::new(),
        }
    }

    /// Devil rounds after which the strategy cannot have anything left to do.
    pub fn default_horizon(self, sneak: u32) -> u64 {
        match self {
            ResolvedDevil::Sigma { n } => 2 * n as u64 + sneak as u64,
            ResolvedDevil::SigmaHat { n, m } => (2 * m as u64 - 1) * (n as u64 + 1),
            ResolvedDevil::BigSigma { n } => big_sigma_horizon(n),
            ResolvedDevil::Far => 1000,
        }
    }

    /// The Angel variant each strategy is built for.
    pub fn certified_variant(self) -> Option<AngelVariant> {
        match self {
            ResolvedDevil::Sigma { .. } => Some(AngelVariant::UpwardOnly),
            ResolvedDevil::SigmaHat { .. } => Some(AngelVariant::SideToSide),
            ResolvedDevil::BigSigma { .. } => Some(AngelVariant::Unrestricted),
            ResolvedDevil::Far => None,
        }
    }

    pub fn n(self) -> Option<u32> {
        match self {
            ResolvedDevil::Sigma { n }
            | ResolvedDevil::SigmaHat { n, .. }
            | ResolvedDevil::BigSigma { n } => Some(n),
            ResolvedDevil::Far => None,
        }
    }
}

impl fmt::Display for ResolvedDevil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolvedDevil::Sigma { n } => write!(f, "sigma:n={n}"),
            ResolvedDevil::SigmaHat { n, m } => write!(f, "sigma_hat:n={n},m={m}"),
            ResolvedDevil::BigSigma { n } => write!(f, "big_sigma:n={n}"),
            ResolvedDevil::Far => f.write_str("far"),
        }
    }
}
