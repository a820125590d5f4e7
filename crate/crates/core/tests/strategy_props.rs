use std::f64::consts::TAU;

use proptest::prelude::*;
use pursuit::experiments::{GameSampler, SamplerConfig};
use pursuit::geometry::Line;
use pursuit::strategies::Perturbation;
use pursuit::{
    e_strategy_plan, game_length, lower_bound, play, DTeam, Direction, EStrategyEvader, EvaderPolicy,
    FixedHeadingEvader, GameState, GreedyVertexEvader, PlayerSet, Point, PursuerTeam, SimParams, StepInfo,
};
use rayon::prelude::*;

fn sampler() -> GameSampler {
    GameSampler::new(SamplerConfig::well_conditioned(), 17).unwrap()
}

fn game() -> impl Strategy<Value = PlayerSet> {
    (0..5000u64).prop_map(|i| sampler().sample(i).unwrap())
}

fn step_info() -> StepInfo {
    StepInfo { dt: 1e-3, capture_radius: 2e-3 }
}

proptest! {
    #[test]
    fn pursuer_heading_ignores_teammates(
        p in game(),
        theta in 0.0..TAU,
        which in 0..3usize,
        shift in (-1.0..1.0f64, -1.0..1.0f64),
    ) {
        let e = Direction::from_angle(theta);
        let state = GameState::initial(&p);
        let mut moved = state;
        for j in (0..3).filter(|&j| j != which) {
            moved.pursuers[j] += Point::new(shift.0, shift.1);
        }
        let mut swapped = state;
        let others: Vec<usize> = (0..3).filter(|&j| j != which).collect();
        swapped.pursuers.swap(others[0], others[1]);
        let mut team = DTeam::d_strategy();
        let base = team.headings(&state, e, &step_info()).unwrap()[which];
        for other in [moved, swapped] {
            let h = team.headings(&other, e, &step_info()).unwrap()[which];
            prop_assert_eq!(h.dx().to_bits(), base.dx().to_bits());
            prop_assert_eq!(h.dy().to_bits(), base.dy().to_bits());
        }
        prop_assert!(team.is_decentralized());
    }

    #[test]
    fn plan_duration_is_game_length(p in game()) {
        let plan = e_strategy_plan(&p).unwrap();
        let m_d = game_length(&p).unwrap();
        prop_assert!((plan.total() - m_d).abs() <= 1e-12 * m_d);
        prop_assert!(plan.leg_durations.iter().all(|&t| t >= 0.0));
    }

    /// Approached pursuers keep their bisector; retreated-from ones move it
    /// parallel to itself without bringing it closer.
    #[test]
    fn bisectors_under_fixed_heading(p in game(), theta in 0.0..TAU) {
        let e = Direction::from_angle(theta);
        let mut state = GameState::initial(&p);
        let mut team = DTeam::d_strategy();
        let dt = 1e-3 * p.hull_diameter();
        let start = state.pursuers.map(|q| Line::bisector(state.evader, q).unwrap());
        let approached = state.pursuers.map(|q| (q - state.evader).dot(e.vector()) > 0.0);
        let probe = state.evader;
        for _ in 0..50 {
            let h = team.headings(&state, e, &StepInfo { dt, capture_radius: 0.0 }).unwrap();
            state.evader += e.vector() * dt;
            for (q, hi) in state.pursuers.iter_mut().zip(h) {
                *q += hi.vector() * dt;
            }
            if state.pursuers.iter().any(|q| q.distance(state.evader) < 10.0 * dt) {
                break;
            }
            for i in 0..3 {
                let now = Line::bisector(state.evader, state.pursuers[i]).unwrap();
                prop_assert!(now.normal.dot(start[i].normal.vector()) >= 1.0 - 1e-12);
                let (d0, d) = (start[i].signed_distance(p.evader), now.signed_distance(state.evader));
                if approached[i] {
                    prop_assert!((now.signed_distance(probe) - start[i].signed_distance(probe)).abs() <= 1e-9 * dt.max(1.0));
                } else {
                    prop_assert!(d <= d0 + 1e-9 && (d - d0).abs() <= 1e-9);
                }
            }
        }
    }
}

#[test]
fn every_evader_is_caught_within_four_game_lengths() {
    let s = sampler();
    let failures: Vec<String> = (0..1000u64)
        .into_par_iter()
        .flat_map_iter(|i| {
            let p = s.sample(i).unwrap();
            let params = SimParams::defaults_for(&p).unwrap();
            let evaders: Vec<(&str, Box<dyn EvaderPolicy>)> = vec![
                ("e", Box::new(EStrategyEvader::new())),
                ("e-replanning", Box::new(EStrategyEvader::new().replanning(true))),
                (
                    "e-perturbed",
                    Box::new(
                        EStrategyEvader::new().with_perturbation(Perturbation { leg: (i % 3) as usize, angle: 0.2 }),
                    ),
                ),
                ("greedy", Box::new(GreedyVertexEvader::new(&p).unwrap())),
                ("fixed", Box::new(FixedHeadingEvader::new(&p, TAU * (i as f64 * 0.618_034).fract()).unwrap())),
            ];
            evaders
                .into_iter()
                .filter_map(move |(name, mut ev)| {
                    let out = play(&p, &mut ev, &mut DTeam::d_strategy(), &params).unwrap();
                    match out.capture_time() {
                        Some(t) if t <= params.max_time => None,
                        _ => Some(format!("game {i}, {name}")),
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn optimal_reply_is_not_beaten_by_fixed_headings() {
    let s = sampler();
    for i in 0..20 {
        let p = s.sample(i).unwrap();
        let params =
            SimParams::new(1e-3 * p.hull_diameter(), 1e-4 * p.hull_diameter(), 8.0 * game_length(&p).unwrap()).unwrap();
        let best =
            play(&p, &mut EStrategyEvader::new(), &mut DTeam::d_strategy(), &params).unwrap().capture_time().unwrap();
        for k in 0..12 {
            let mut ev = FixedHeadingEvader::new(&p, TAU * k as f64 / 12.0).unwrap();
            let t = play(&p, &mut ev, &mut DTeam::d_strategy(), &params).unwrap().capture_time().unwrap();
            assert!(t <= best + 2.0 * params.dt, "game {i}, heading {k}: {t} > {best}");
        }
    }
}

#[test]
fn greedy_survives_its_derived_floor() {
    let s = sampler();
    for i in 0..200 {
        let p = s.sample(i).unwrap();
        let params = SimParams::defaults_for(&p).unwrap();
        let mut g = GreedyVertexEvader::new(&p).unwrap();
        let lb = lower_bound(&p).unwrap();
        let phi = pursuit::voronoi_cell(&p).unwrap().angles[lb.i_star - 1];
        let t = play(&p, &mut g, &mut DTeam::d_strategy(), &params).unwrap().capture_time().unwrap();
        let r = params.capture_radius;
        let floor = lb.value - pursuit::strategies::MARGIN_FACTOR * r / (0.5 * phi).sin() - 0.5 * r - 2.0 * params.dt;
        assert!(t >= floor, "game {i}: {t} < {floor}");
    }
}
