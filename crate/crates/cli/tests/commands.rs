use std::collections::HashSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use angel_cli::render::{render_state, render_trace, Viewport};
use angel_core::devil::corner_squares;
use angel_core::game::{AngelVariant, GameConfig, GameState, GameStatus, Square, Trace};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_angel-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("angel-lab-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn simulate_to(path: &PathBuf, args: &[&str]) -> (Output, Trace) {
    let mut full = vec!["simulate", "--out", path.to_str().unwrap()];
    full.extend_from_slice(args);
    let out = lab(&full);
    let text = std::fs::read_to_string(path).expect("trace written");
    (out, Trace::from_jsonl(&text).expect("trace parses"))
}

#[test]
fn straight_up_angel_is_caught_by_row_five() {
    let path = tmp("up.jsonl");
    let (out, trace) = simulate_to(
        &path,
        &["--variant", "upward", "--s", "0", "--devil", "sigma:n=5", "--angel", "script:U,U,U,U,U"],
    );
    assert!(out.status.success());
    match trace.outcome {
        GameStatus::DevilWon { round } => assert!(round <= 5, "round {round}"),
        other => panic!("unexpected {other}"),
    }
    assert!(String::from_utf8_lossy(&out.stdout).contains("Devil won"));
}

#[test]
fn full_trap_beats_random_seed_42() {
    let path = tmp("big.jsonl");
    let (out, trace) = simulate_to(
        &path,
        &["--variant", "unrestricted", "--s", "0", "--devil", "big_sigma:n=8", "--angel", "random:seed=42"],
    );
    assert!(out.status.success());
    assert!(matches!(trace.outcome, GameStatus::DevilWon { .. }));
    trace.replay().unwrap();
}

#[test]
fn unreachable_row_lets_angel_survive_the_horizon() {
    let path = tmp("far.jsonl");
    let (out, trace) = simulate_to(
        &path,
        &["--horizon", "10", "--devil", "sigma:n=100", "--angel", "random:seed=1", "--variant", "upward"],
    );
    assert!(out.status.success());
    assert_eq!(trace.outcome, GameStatus::AngelSurvived { horizon: 10 });
}

#[test]
fn identical_flags_give_identical_trace_files() {
    let args = ["--s", "1", "--devil", "big_sigma:n=12", "--angel", "random", "--seed", "77", "--horizon", "3000"];
    let (a, b) = (tmp("det-a.jsonl"), tmp("det-b.jsonl"));
    simulate_to(&a, &args);
    simulate_to(&b, &args);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn trace_goes_to_stdout_without_out() {
    let out = lab(&["simulate", "--variant", "upward", "--devil", "sigma:n=5", "--angel", "script:U"]);
    assert!(out.status.success());
    let trace = Trace::from_jsonl(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(matches!(trace.outcome, GameStatus::DevilWon { .. }));
    let first = String::from_utf8_lossy(&out.stderr);
    assert!(first.contains("Devil won"), "{first}");
}

#[test]
fn uncertified_combination_warns_but_runs() {
    let out = lab(&["simulate", "--variant", "unrestricted", "--devil", "sigma:n=5", "--angel", "random:seed=3", "--out", tmp("warn.jsonl").to_str().unwrap()]);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("warning"), "{err}");
}

#[test]
fn bad_strategy_string_is_an_error() {
    let out = lab(&["simulate", "--devil", "sigma:q=5"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown parameter"));
}

#[test]
fn verify_exhaustive_upward_small_cases_pass() {
    for (n, s) in [("5", "0"), ("12", "1")] {
        let out = lab(&["verify", "exhaustive-upward", "--n", n, "--s", s]);
        let stdout = String::from_utf8_lossy(&out.stdout);
        assert!(out.status.success(), "{stdout}");
        assert!(stdout.contains("AllCaptured"));
        assert!(stdout.trim_end().ends_with("PASS"));
    }
}

#[test]
fn verify_reports_an_escape_with_exit_one_and_witness() {
    let path = tmp("witness.jsonl");
    let out = lab(&["verify", "exhaustive-upward", "--n", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.trim_end().ends_with("FAIL"), "{stdout}");
    let witness = Trace::from_jsonl(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert!(witness.replay_prefix(None).unwrap().true_position().y >= 1);
}

#[test]
fn verify_lemmas_passes() {
    let out = lab(&["verify", "lemmas", "--n", "8", "--s", "0"]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{stdout}");
    assert!(stdout.contains("Melon"));
}

#[test]
fn verify_big_sigma_random_thousand_games() {
    let out = lab(&["verify", "big-sigma-random", "--n", "8", "--s", "0", "--games", "1000", "--seed", "7"]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{stdout}");
    assert!(stdout.contains("1000/1000 DevilWon"), "{stdout}");
}

#[test]
fn verify_sigma_hat_bounded_small() {
    let out = lab(&["verify", "sigma-hat-bounded", "--n", "8", "--m", "72", "--games", "20", "--node-budget", "20000"]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{stdout}");
    assert!(stdout.contains("20/20 DevilWon"), "{stdout}");
}

#[test]
fn corners_lists_eight_n_plus_four_squares() {
    let out = lab(&["corners", "--n", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 28);
    assert_eq!(v["squares"].as_array().unwrap().len(), 28);
}

#[test]
fn fresh_game_renders_angel_in_the_centre() {
    let state = GameState::new(GameConfig::new(AngelVariant::Unrestricted, 0, 10)).unwrap();
    let text = render_state(&state, Viewport::around(Square::ORIGIN, 2));
    assert_eq!(text, ".....\n.....\n..A..\n.....\n.....\n");
}

#[test]
fn walled_start_renders_wall_columns() {
    let path = tmp("hat.jsonl");
    simulate_to(&path, &["--variant", "side_to_side", "--devil", "sigma_hat:n=4,m=6", "--angel", "random:seed=5"]);
    let out = lab(&["render", path.to_str().unwrap(), "--at", "0", "--viewport", "-7,-1,7,5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 7);
    for (i, row) in rows.iter().enumerate() {
        let y = 5 - i as i64;
        let chars: Vec<char> = row.chars().collect();
        let wall = (0..=4).contains(&y);
        assert_eq!(chars[1] == '#', wall, "y={y}: {row}");
        assert_eq!(chars[13] == '#', wall, "y={y}: {row}");
        assert_eq!(chars.iter().filter(|&&c| c == '#').count(), if wall { 2 } else { 0 });
    }
    assert_eq!(rows[5].chars().nth(7), Some('A'));
}

#[test]
fn full_trap_corners_render_after_the_corner_phase() {
    let n = 2u32;
    let path = tmp("corners.jsonl");
    simulate_to(&path, &["--devil", "big_sigma:n=2", "--angel", "random:seed=9"]);
    let trace = Trace::from_jsonl(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let outer = 10 * n as i64;
    let vp = Viewport { x0: -outer, y0: -outer, x1: outer, y1: outer };
    let text = render_trace(&trace, Some(8 * n as u64 + 4), Some(vp)).unwrap();
    let corners: HashSet<Square> = corner_squares(n).into_iter().collect();
    for (i, row) in text.lines().enumerate() {
        let y = outer - i as i64;
        for (j, c) in row.chars().enumerate() {
            let sq = Square::new(-outer + j as i64, y);
            if c == '#' {
                assert!(corners.contains(&sq), "{sq} drawn but not a corner");
            }
            if corners.contains(&sq) {
                assert!(c != '.', "{sq} is a corner but drawn intact");
            }
        }
    }
}

#[test]
fn lag_marker_trails_by_s() {
    let path = tmp("lag.jsonl");
    let (_, trace) = simulate_to(&path, &["--s", "2", "--devil", "big_sigma:n=16", "--angel", "random:seed=4", "--horizon", "50"]);
    for r in 1..=50u64 {
        let st = trace.state_at_round(r).unwrap();
        let seen = angel_cli::render::last_seen(&st);
        let p = st.positions();
        assert_eq!(p.len() as u64 - 1, 2 + r - 1);
        assert_eq!(seen, p[r as usize - 1]);
        assert_eq!(p.len() - 1 - (r as usize - 1), 2);
    }
}

#[test]
fn render_rejects_out_of_range_round() {
    let path = tmp("short.jsonl");
    simulate_to(&path, &["--variant", "upward", "--devil", "sigma:n=5", "--angel", "script:U"]);
    let out = lab(&["render", path.to_str().unwrap(), "--at", "99"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of range"));
}
