use angel_core::adversaries::{Adversary, AdversaryKind};
use angel_core::devil::{BigSigma, FarAwayDevil, Sigma, SigmaHat};
use angel_core::game::{
    run_game, AngelStrategy, AngelVariant, DevilStrategy, GameConfig, GameState, GameStatus,
    Square, StrategyError, Trace, TraceEvent,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Plays from `shared` for its first `split` moves and from `own` after.
struct ForkingAngel {
    shared: ChaCha8Rng,
    own: ChaCha8Rng,
    split: usize,
}

impl AngelStrategy for ForkingAngel {
    fn next_move(&mut self, state: &GameState) -> Result<Square, StrategyError> {
        let legal = state.legal_moves();
        if legal.is_empty() {
            return Err(StrategyError::NoLegalMove);
        }
        let rng = if state.angel_moves_made() < self.split {
            &mut self.shared
        } else {
            &mut self.own
        };
        Ok(legal[rng.random_range(0..legal.len())])
    }
}

fn devil_for(kind: u8, s: u32) -> (AngelVariant, Box<dyn DevilStrategy>, u64) {
    match kind % 3 {
        0 => (AngelVariant::UpwardOnly, Box::new(Sigma::new(4 * s + 8)), 30),
        1 => (AngelVariant::SideToSide, Box::new(SigmaHat::new(8, 72)), 200),
        _ => (AngelVariant::Unrestricted, Box::new(BigSigma::new(8)), 400),
    }
}

fn deletions(trace: &Trace) -> Vec<Square> {
    trace
        .events
        .iter()
        .filter_map(|e| match e {
            TraceEvent::DevilDelete { del, .. } => Some(*del),
            _ => None,
        })
        .collect()
}

fn positions(trace: &Trace) -> Vec<Square> {
    let mut out = vec![trace.config.start];
    out.extend(trace.events.iter().filter_map(|e| match e {
        TraceEvent::AngelMove { to, .. } => Some(*to),
        _ => None,
    }));
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// Two Angels that agree on p_0..p_{d-1} and then diverge: deletion r
    /// only sees p_0..p_{r-1}, so deletions 1..=d must coincide even though
    /// the true positions already differ when s > 0.
    #[test]
    fn devil_cannot_see_hidden_suffix(
        seed in any::<u64>(),
        other in any::<u64>(),
        s in 0u32..4,
        split in 1usize..40,
        kind in 0u8..3,
    ) {
        let run = |own: u64| {
            let (variant, mut devil, horizon) = devil_for(kind, s);
            let mut angel = ForkingAngel {
                shared: ChaCha8Rng::seed_from_u64(seed),
                own: ChaCha8Rng::seed_from_u64(own),
                split,
            };
            let config = GameConfig::new(variant, s, horizon);
            let config = match kind % 3 {
                1 => config.with_walls(angel_core::devil::side_walls(8, 72)),
                _ => config,
            };
            run_game(config, &mut angel, &mut devil).expect("game runs")
        };
        let a = run(seed ^ 1);
        let b = run(other.wrapping_add(seed).wrapping_add(2));
        let (pa, pb) = (positions(&a), positions(&b));
        let d = pa.iter().zip(&pb).position(|(x, y)| x != y).unwrap_or(pa.len().min(pb.len()));
        let (da, db) = (deletions(&a), deletions(&b));
        let agreed = d.min(da.len()).min(db.len());
        prop_assert_eq!(&da[..agreed], &db[..agreed]);
    }

    #[test]
    fn identical_seeds_give_identical_bytes(seed in any::<u64>(), s in 0u32..3, kind in 0u8..3) {
        let run = || {
            let (variant, mut devil, horizon) = devil_for(kind, s);
            let mut angel = Adversary::new(AdversaryKind::Random { seed });
            run_game(GameConfig::new(variant, s, horizon), &mut angel, &mut devil)
                .expect("game runs")
                .to_jsonl()
        };
        prop_assert_eq!(run(), run());
    }

    #[test]
    fn traces_round_trip_and_replay(seed in any::<u64>(), s in 0u32..3, kind in 0u8..3) {
        let (variant, mut devil, horizon) = devil_for(kind, s);
        let mut angel = Adversary::new(AdversaryKind::Random { seed });
        let trace = run_game(GameConfig::new(variant, s, horizon), &mut angel, &mut devil)
            .expect("game runs");
        let text = trace.to_jsonl();
        let parsed = Trace::from_jsonl(&text).expect("parses");
        prop_assert_eq!(&parsed, &trace);
        prop_assert_eq!(parsed.to_jsonl(), text);
        let state = parsed.replay().expect("replays");
        prop_assert_eq!(state.status(), trace.outcome);
    }

    /// Before deletion r the Angel has made exactly s + r - 1 moves, the
    /// Devil has seen p_0..p_{r-1}, and deletions never shrink.
    #[test]
    fn sequencing_and_monotone_board(seed in any::<u64>(), s in 0u32..4) {
        let mut devil = BigSigma::new(8);
        let mut angel = Adversary::new(AdversaryKind::Random { seed });
        let mut state = GameState::new(GameConfig::new(AngelVariant::Unrestricted, s, 200)).unwrap();
        let mut deleted = 0usize;
        while !state.status().is_over() {
            match state.status() {
                GameStatus::AwaitingDevil => {
                    let r = state.devil_rounds() + 1;
                    prop_assert_eq!(state.angel_moves_made() as u64, s as u64 + r - 1);
                    let view = state.devil_view().unwrap();
                    prop_assert_eq!(view.revealed(), &state.positions()[..r as usize]);
                    prop_assert_eq!(view.round(), r);
                    let del = devil.next_deletion(&view).unwrap();
                    let before: Vec<Square> = state.deleted().sorted();
                    state.apply_devil_delete(del).unwrap();
                    prop_assert!(before.iter().all(|&sq| state.deleted().contains(sq)));
                    prop_assert_eq!(state.deleted().len(), deleted + 1);
                    deleted += 1;
                }
                GameStatus::AwaitingAngel => {
                    let to = angel.next_move(&state).unwrap();
                    prop_assert!(state.apply_angel_move(to).is_ok());
                }
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn angel_never_lands_on_a_deleted_square(seed in any::<u64>(), s in 0u32..3) {
        let mut devil = BigSigma::new(8);
        let mut angel = Adversary::new(AdversaryKind::Random { seed });
        let trace = run_game(GameConfig::new(AngelVariant::Unrestricted, s, 500), &mut angel, &mut devil).unwrap();
        let mut state = GameState::new(trace.config.clone()).unwrap();
        for e in &trace.events {
            match *e {
                TraceEvent::AngelMove { to, .. } => {
                    prop_assert!(!state.deleted().contains(to));
                    state.apply_angel_move(to).unwrap();
                }
                TraceEvent::DevilDelete { del, .. } => state.apply_devil_delete(del).unwrap(),
            }
        }
    }
}

#[test]
fn far_devil_lets_angel_survive_to_horizon() {
    let mut angel = Adversary::new(AdversaryKind::Random { seed: 3 });
    let trace = run_game(
        GameConfig::new(AngelVariant::Unrestricted, 1, 25),
        &mut angel,
        &mut FarAwayDevil,
    )
    .unwrap();
    assert_eq!(trace.outcome, GameStatus::AngelSurvived { horizon: 25 });
    assert_eq!(trace.devil_rounds(), 25);
}

#[test]
fn state_at_round_matches_prefix() {
    let mut angel = Adversary::new(AdversaryKind::Random { seed: 11 });
    let mut devil = BigSigma::new(8);
    let trace = run_game(
        GameConfig::new(AngelVariant::Unrestricted, 2, 100),
        &mut angel,
        &mut devil,
    )
    .unwrap();
    for r in [0, 1, 17, 68, 100] {
        let st = trace.state_at_round(r).unwrap();
        assert_eq!(st.devil_rounds(), r);
        assert_eq!(st.devil_moves(), &deletions(&trace)[..r as usize]);
    }
    assert!(trace.state_at_round(101).is_err());
}
