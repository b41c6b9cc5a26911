use std::fs;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use angel_cli::render::{render_state, render_trace, Viewport};
use angel_cli::setup::{self, GameSetup};
use angel_cli::suites::{self, SuiteReport};
use angel_core::devil::{corner_squares, min_n_for_sneak};
use angel_core::game::{run_game, AngelVariant, GameConfig, GameState, GameStatus, Trace};
use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "angel-lab", version, about = "Simulator and verification lab for the sneaky Angel and Devil game")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one game and write its JSON-lines trace.
    Simulate {
        /// unrestricted | upward | side_to_side
        #[arg(long, default_value = "unrestricted")]
        variant: AngelVariant,
        /// Sneakiness: how many moves the Devil's information lags behind.
        #[arg(long, default_value_t = 0)]
        s: u32,
        /// sigma:n=N | sigma_hat:n=N,m=M | big_sigma:n=N | far
        #[arg(long)]
        devil: String,
        /// script:U,UR,.. | random:seed=N | greedy | zigzag:period=N | wall_hugger
        #[arg(long, default_value = "random")]
        angel: String,
        /// Devil rounds the Angel must survive (default: the strategy's own bound).
        #[arg(long)]
        horizon: Option<u64>,
        /// Seed for a random Angel.
        #[arg(long)]
        seed: Option<u64>,
        /// Trace file; without it the trace goes to stdout and the summary to stderr.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite; exit status 0 iff it passes.
    Verify {
        suite: Suite,
        /// Target row (default 4s + 8).
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = 0)]
        s: u32,
        /// Wall half-width for sigma-hat-bounded (default 9n).
        #[arg(long)]
        m: Option<i64>,
        #[arg(long, default_value_t = 1000)]
        games: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Node budget for the bounded search (0 skips it).
        #[arg(long, default_value_t = 200_000)]
        node_budget: u64,
        /// Where to write a counterexample trace, if one is found.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the 8n+4 corner squares of the full trap, or draw them.
    Corners {
        #[arg(long)]
        n: u32,
        /// Draw the squares instead of listing them.
        #[arg(long)]
        render: bool,
        #[arg(long, allow_hyphen_values = true)]
        viewport: Option<Viewport>,
    },
    /// Draw a trace as an ASCII board.
    Render {
        trace: PathBuf,
        /// Devil round to show (default: end of the trace).
        #[arg(long)]
        at: Option<u64>,
        /// x0,y0,x1,y1 (default: 21x21 around the Angel).
        #[arg(long, allow_hyphen_values = true)]
        viewport: Option<Viewport>,
    },
    /// Serve the HTTP/JSON play API on the loopback interface.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        bind: std::net::IpAddr,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Lemmas,
    ExhaustiveUpward,
    SigmaHatBounded,
    BigSigmaRandom,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Simulate {
            variant,
            s,
            devil,
            angel,
            horizon,
            seed,
            out,
        } => simulate(variant, s, &devil, &angel, horizon, seed, out),
        Command::Verify {
            suite,
            n,
            s,
            m,
            games,
            seed,
            node_budget,
            out,
        } => {
            let n = n.unwrap_or_else(|| min_n_for_sneak(s));
            let report = match suite {
                Suite::Lemmas => suites::lemmas(n, s),
                Suite::ExhaustiveUpward => suites::exhaustive_upward(n, s),
                Suite::SigmaHatBounded => {
                    let m = m.unwrap_or(9 * n as i64);
                    suites::sigma_hat_bounded(n, m, s, games, seed, node_budget)
                }
                Suite::BigSigmaRandom => suites::big_sigma_random(n, s, games, seed),
            };
            finish_verify(report, out)
        }
        Command::Corners {
            n,
            render,
            viewport,
        } => {
            let corners = corner_squares(n);
            if render {
                let config = GameConfig::new(AngelVariant::Unrestricted, 0, 1).with_walls(corners);
                let state = GameState::new(config)?;
                let outer = 10 * n as i64;
                let vp = viewport.unwrap_or(Viewport {
                    x0: -outer,
                    y0: -outer,
                    x1: outer,
                    y1: outer,
                });
                print!("{}", render_state(&state, vp));
            } else {
                println!(
                    "{}",
                    serde_json::json!({ "n": n, "count": corners.len(), "squares": corners })
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Render {
            trace,
            at,
            viewport,
        } => {
            let text = fs::read_to_string(&trace)
                .with_context(|| format!("reading {}", trace.display()))?;
            let trace = Trace::from_jsonl(&text)?;
            print!("{}", render_trace(&trace, at, viewport)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Serve { port, bind } => {
            let addr = SocketAddr::new(bind, port);
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(async {
                let listener = tokio::net::TcpListener::bind(addr)
                    .await
                    .with_context(|| format!("binding {addr}"))?;
                eprintln!("serving on http://{}", listener.local_addr()?);
                axum::serve(listener, angel_cli::server::router()).await?;
                Ok::<_, anyhow::Error>(())
            })?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn simulate(
    variant: AngelVariant,
    s: u32,
    devil: &str,
    angel: &str,
    horizon: Option<u64>,
    seed: Option<u64>,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    let setup = GameSetup::new(variant, s, devil, horizon)?;
    for w in &setup.warnings {
        eprintln!("warning: {w}");
    }
    let mut angel = setup::angel(angel, seed)?;
    let mut devil = setup.devil.build();
    let (trace, failure) = match run_game(setup.config.clone(), &mut angel, &mut devil) {
        Ok(t) => (t, None),
        Err(e) => (*e.partial, Some(e.failure)),
    };
    let summary = match (&failure, trace.outcome) {
        (Some(f), _) => format!("error: {f}"),
        (None, GameStatus::DevilWon { round }) => {
            format!("Devil won in round {round} ({} angel moves)", trace.angel_moves())
        }
        (None, GameStatus::AngelSurvived { horizon }) => {
            format!("Angel survived {horizon} devil rounds")
        }
        (None, other) => format!("game stopped: {other}"),
    };
    match out {
        Some(path) => {
            fs::write(&path, trace.to_jsonl())
                .with_context(|| format!("writing {}", path.display()))?;
            println!("{summary}");
        }
        None => {
            print!("{}", trace.to_jsonl());
            eprintln!("{summary}");
        }
    }
    Ok(if failure.is_some() {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    })
}

fn finish_verify(report: SuiteReport, out: Option<PathBuf>) -> Result<ExitCode> {
    for line in &report.lines {
        println!("{line}");
    }
    if let Some(w) = &report.witness {
        match out {
            Some(path) => {
                fs::write(&path, w.to_jsonl())
                    .with_context(|| format!("writing {}", path.display()))?;
                println!("counterexample written to {}", path.display());
            }
            None => print!("counterexample:\n{}", w.to_jsonl()),
        }
    }
    println!("{}", if report.pass { "PASS" } else { "FAIL" });
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
