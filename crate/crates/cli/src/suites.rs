//! The `verify` suites. Each returns a report whose `pass` flag alone
//! decides the exit code.

use std::time::Instant;

use angel_core::adversaries::{
    bounded_check_side_to_side, exhaustive_check_upward_with, run_battery, side_to_side_config,
    BatteryReport, BatterySpec, Family, Verdict,
};
use angel_core::devil::{big_sigma_horizon, ResolvedDevil};
use angel_core::game::{AngelVariant, GameConfig, Trace};
use angel_core::verification::{MonitorEntry, MonitorId, RowSchedule};

#[derive(Debug)]
pub struct SuiteReport {
    pub pass: bool,
    pub lines: Vec<String>,
    /// First counterexample, replayable.
    pub witness: Option<Trace>,
}

impl SuiteReport {
    fn new() -> Self {
        SuiteReport {
            pass: true,
            lines: Vec::new(),
            witness: None,
        }
    }

    fn fail(&mut self, line: String) {
        self.pass = false;
        self.lines.push(line);
    }

    fn keep_witness(&mut self, trace: &Trace) {
        if self.witness.is_none() {
            self.witness = Some(trace.clone());
        }
    }
}

fn verdict_line(v: &Verdict) -> String {
    match v {
        Verdict::AllCaptured {
            max_devil_rounds,
            paths_explored,
        } => format!("AllCaptured: {paths_explored} paths, at most {max_devil_rounds} devil rounds"),
        Verdict::Escape { witness } => format!(
            "Escape after {} angel moves and {} devil rounds",
            witness.angel_moves(),
            witness.devil_rounds()
        ),
        Verdict::Inconclusive { node_budget, nodes } => {
            format!("Inconclusive: {nodes} nodes, budget {node_budget}")
        }
    }
}

/// Every upward-only Angel against the row strategy on row `n`.
pub fn exhaustive_upward(n: u32, s: u32) -> SuiteReport {
    let mut report = SuiteReport::new();
    let start = Instant::now();
    let (verdict, stats) = exhaustive_check_upward_with(n, s, false, &mut |_| {});
    let line = format!(
        "exhaustive-upward n={n} s={s}: {} ({} nodes, {:.3?})",
        verdict_line(&verdict),
        stats.nodes,
        start.elapsed()
    );
    match &verdict {
        Verdict::AllCaptured { .. } => report.lines.push(line),
        Verdict::Escape { witness } => {
            report.keep_witness(witness);
            report.fail(line);
        }
        Verdict::Inconclusive { .. } => report.fail(line),
    }
    report
}

/// The row strategy's block and interval monitors over every state of the
/// exhaustive sweep.
pub fn lemmas(n: u32, s: u32) -> SuiteReport {
    let mut report = SuiteReport::new();
    let schedule = RowSchedule { n, sneak: s };
    let mut counts = [0u64; 5];
    let mut failures: Vec<MonitorEntry> = Vec::new();
    let (verdict, _) = exhaustive_check_upward_with(n, s, false, &mut |st| {
        for e in schedule.evaluate(st, &MonitorId::ROW) {
            counts[MonitorId::ROW.iter().position(|&m| m == e.monitor).unwrap()] += 1;
            if !e.pass {
                failures.push(e);
            }
        }
    });
    for (id, count) in MonitorId::ROW.iter().zip(counts) {
        let failed = failures.iter().filter(|e| e.monitor == *id).count();
        report
            .lines
            .push(format!("{id:?}: {count} checks, {failed} failures"));
    }
    report.lines.push(format!("sweep: {}", verdict_line(&verdict)));
    if counts.iter().sum::<u64>() == 0 {
        report.fail(String::from("no monitor was due in any state"));
    }
    if let Some(first) = failures.first() {
        report.fail(format!(
            "first failure: {:?} at round {}: {}",
            first.monitor,
            first.round,
            serde_json::to_string(&first.context).unwrap_or_default()
        ));
    }
    if let Verdict::Escape { witness } = &verdict {
        report.keep_witness(witness);
    }
    report
}

fn battery_line(label: &str, r: &BatteryReport) -> String {
    format!(
        "{label}: {}/{} DevilWon, max {} rounds, {} monitor checks, {} monitor failures, {} errors",
        r.devil_won, r.games, r.max_rounds, r.monitor_checks, r.monitor_failures, r.errors
    )
}

fn absorb(report: &mut SuiteReport, label: &str, r: &BatteryReport) {
    let line = battery_line(label, r);
    if r.all_passed() {
        report.lines.push(line);
        return;
    }
    report.fail(line);
    for c in &r.counterexamples {
        report.lines.push(format!("  game {}: {}", c.game, c.reason));
    }
    if let Some(c) = r.counterexamples.first() {
        report.keep_witness(&c.trace);
    }
}

/// The full trap against seeded random Angels.
pub fn big_sigma_random(n: u32, s: u32, games: u64, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new();
    let bound = big_sigma_horizon(n);
    let spec = BatterySpec {
        config: GameConfig::new(AngelVariant::Unrestricted, s, bound),
        devil: ResolvedDevil::BigSigma { n },
        family: Family::Random,
        games,
        seed,
        max_opening: 0,
        round_bound: bound,
        forbidden_row: None,
        monitors: vec![MonitorId::Containment],
    };
    let r = run_battery(&spec);
    absorb(&mut report, &format!("big_sigma n={n} s={s} random"), &r);
    report
}

/// The walled row strategy against every adversary family, then a
/// budgeted search for an escape.
pub fn sigma_hat_bounded(
    n: u32,
    m: i64,
    s: u32,
    games: u64,
    seed: u64,
    node_budget: u64,
) -> SuiteReport {
    let mut report = SuiteReport::new();
    let devil = ResolvedDevil::SigmaHat { n, m };
    let horizon = devil.default_horizon(s);
    for family in Family::ALL {
        let spec = BatterySpec {
            config: side_to_side_config(n, m, s, horizon),
            devil,
            family,
            games,
            seed,
            max_opening: 12,
            round_bound: horizon,
            forbidden_row: Some(n as i64),
            monitors: Vec::new(),
        };
        let r = run_battery(&spec);
        absorb(&mut report, &format!("sigma_hat n={n} m={m} s={s} {}", family.name()), &r);
    }
    if node_budget > 0 {
        let verdict = bounded_check_side_to_side(n, m, s, horizon, node_budget);
        let line = format!("bounded search: {}", verdict_line(&verdict));
        match &verdict {
            Verdict::Escape { witness } => {
                report.keep_witness(witness);
                report.fail(line);
            }
            _ => report.lines.push(line),
        }
    }
    report
}
