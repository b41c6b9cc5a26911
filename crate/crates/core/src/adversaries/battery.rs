//! Many-game property sweeps of a Devil strategy against the adversary suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Adversary, AdversaryKind};
use crate::devil::ResolvedDevil;
use crate::game::{GameConfig, GameStatus, Trace};
use crate::verification::{attach_monitors, MonitorId};

/// The adversary families a battery cycles through.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Random,
    Greedy,
    ZigZag,
    WallHugger,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Random,
        Family::Greedy,
        Family::ZigZag,
        Family::WallHugger,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Random => "random",
            Family::Greedy => "greedy",
            Family::ZigZag => "zigzag",
            Family::WallHugger => "wall_hugger",
        }
    }

    /// The `game`-th member of the family. Deterministic kinds are varied by
    /// a seeded random opening (and period or starting heading) so that the
    /// games differ.
    pub fn member(self, base_seed: u64, game: u64, max_opening: u32) -> Adversary {
        let seed = base_seed
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(game)
            .wrapping_add(self as u64 * 1_000_003);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let opening = if game == 0 { 0 } else { rng.random_range(0..=max_opening) };
        match self {
            Family::Random => Adversary::new(AdversaryKind::Random { seed }),
            Family::Greedy => Adversary::new(AdversaryKind::GreedyEscape).with_opening(seed, opening),
            Family::ZigZag => {
                let period = rng.random_range(1..=8);
                Adversary::new(AdversaryKind::ZigZag { period }).with_opening(seed, opening)
            }
            Family::WallHugger => {
                let heading = rng.random_range(0..8);
                Adversary::new(AdversaryKind::WallHugger)
                    .with_heading(heading)
                    .with_opening(seed, opening)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct BatterySpec {
    pub config: GameConfig,
    pub devil: ResolvedDevil,
    pub family: Family,
    pub games: u64,
    pub seed: u64,
    /// Longest random opening used to diversify deterministic families.
    pub max_opening: u32,
    /// Devil rounds within which every game must be won.
    pub round_bound: u64,
    /// Reaching this row is a counterexample (side-to-side games).
    pub forbidden_row: Option<i64>,
    pub monitors: Vec<MonitorId>,
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub game: u64,
    pub reason: String,
    pub trace: Box<Trace>,
}

#[derive(Clone, Debug, Default)]
pub struct BatteryReport {
    pub games: u64,
    pub devil_won: u64,
    pub max_rounds: u64,
    pub monitor_checks: u64,
    pub monitor_failures: u64,
    pub errors: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl BatteryReport {
    pub fn all_passed(&self) -> bool {
        self.devil_won == self.games
            && self.monitor_failures == 0
            && self.errors == 0
            && self.counterexamples.is_empty()
    }
}

/// Keep at most this many witness traces.
const MAX_WITNESSES: usize = 4;

pub fn run_battery(spec: &BatterySpec) -> BatteryReport {
    let mut report = BatteryReport::default();
    let record = |report: &mut BatteryReport, game: u64, reason: String, trace: Trace| {
        if report.counterexamples.len() < MAX_WITNESSES {
            report.counterexamples.push(Counterexample {
                game,
                reason,
                trace: Box::new(trace),
            });
        }
    };
    for game in 0..spec.games {
        report.games += 1;
        let mut angel = spec.family.member(spec.seed, game, spec.max_opening);
        let run = attach_monitors(spec.config.clone(), spec.devil, &spec.monitors)
            .expect("battery monitors must match the devil");
        let trace = match run.run(&mut angel) {
            Ok(t) => t,
            Err(e) => {
                report.errors += 1;
                record(&mut report, game, e.failure.to_string(), *e.partial);
                continue;
            }
        };
        let mut problems = Vec::new();
        match trace.outcome {
            GameStatus::DevilWon { round } => {
                report.max_rounds = report.max_rounds.max(round);
                if round <= spec.round_bound {
                    report.devil_won += 1;
                } else {
                    problems.push(format!("won only in round {round}"));
                }
            }
            other => problems.push(format!("game ended {other}")),
        }
        if let Some(row) = spec.forbidden_row {
            if let Some(p) = trace_positions(&trace).find(|p| p.y >= row) {
                problems.push(format!("angel reached row {row} at {p}"));
            }
        }
        if let Some(m) = &trace.monitors {
            report.monitor_checks += m.entries.len() as u64;
            let failed = m.failures().count() as u64;
            if failed > 0 {
                report.monitor_failures += failed;
                problems.push(format!("{failed} monitor failures"));
            }
        }
        if !problems.is_empty() {
            record(&mut report, game, problems.join("; "), trace);
        }
    }
    report
}

fn trace_positions(trace: &Trace) -> impl Iterator<Item = crate::game::Square> + '_ {
    trace.events.iter().filter_map(|e| match e {
        crate::game::TraceEvent::AngelMove { to, .. } => Some(*to),
        _ => None,
    })
}
