use std::str::FromStr;

use angel_core::adversaries::{Adversary, AdversaryKind};
use angel_core::devil::{min_n_for_sneak, DevilSpec, ResolvedDevil};
use angel_core::game::{AngelVariant, GameConfig};
use anyhow::{bail, Context, Result};

/// A game ready to run: the configuration plus the Devil that goes with it.
#[derive(Clone, Debug)]
pub struct GameSetup {
    pub config: GameConfig,
    pub devil: ResolvedDevil,
    /// Combinations outside the strategies' certified range. Reported, not
    /// rejected.
    pub warnings: Vec<String>,
}

impl GameSetup {
    pub fn new(variant: AngelVariant, s: u32, devil: &str, horizon: Option<u64>) -> Result<Self> {
        let spec = DevilSpec::from_str(devil)?;
        let devil = spec.resolve(s);
        if horizon == Some(0) {
            bail!("horizon must be at least 1");
        }
        let horizon = horizon.unwrap_or_else(|| devil.default_horizon(s));
        let config = GameConfig::new(variant, s, horizon).with_walls(devil.preset_walls());
        config.validate().context("invalid game setup")?;
        let warnings = warnings(variant, s, devil);
        Ok(GameSetup {
            config,
            devil,
            warnings,
        })
    }
}

pub fn warnings(variant: AngelVariant, s: u32, devil: ResolvedDevil) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(v) = devil.certified_variant() {
        if v != variant {
            out.push(format!(
                "{devil} is built for the {v} angel, not {variant}; capture is not guaranteed"
            ));
        }
    }
    if let Some(n) = devil.n() {
        let need = min_n_for_sneak(s);
        if n < need {
            out.push(format!(
                "n = {n} is below {need}, the smallest n certified for s = {s}"
            ));
        }
    }
    out
}

/// Parses an Angel strategy string; `seed` replaces the seed of a random
/// Angel when given.
pub fn angel(spec: &str, seed: Option<u64>) -> Result<Adversary> {
    let mut kind = AdversaryKind::from_str(spec)?;
    if let (AdversaryKind::Random { seed: s }, Some(seed)) = (&mut kind, seed) {
        *s = seed;
    }
    Ok(Adversary::new(kind))
}
