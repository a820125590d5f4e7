use proptest::prelude::*;
use pursuit::experiments::{GameSampler, SamplerConfig};
use pursuit::{pursuers_from_cell, run_game, voronoi_cell, DTeam, EStrategyEvader, Point, SimParams, Triangle};

fn point(r: f64) -> impl Strategy<Value = Point> {
    (-r..r, -r..r).prop_map(|(x, y)| Point::new(x, y))
}

/// Triangles with no angle below 2 degrees and an interior point kept away
/// from the edges.
fn triangle_and_point() -> impl Strategy<Value = (Triangle, Point)> {
    (point(10.0), point(10.0), point(10.0), 0.02..1.0f64, 0.02..1.0f64, 0.02..1.0f64)
        .prop_filter("thin triangle", |(a, b, c, ..)| min_angle(*a, *b, *c) > 2f64.to_radians())
        .prop_map(|(a, b, c, u, v, w)| {
            let t = u + v + w;
            (Triangle::new(a, b, c), a * (u / t) + b * (v / t) + c * (w / t))
        })
}

fn min_angle(a: Point, b: Point, c: Point) -> f64 {
    let at = |p: Point, q: Point, r: Point| {
        let (u, v) = (q - p, r - p);
        u.cross(v).abs().atan2(u.dot(v))
    };
    at(a, b, c).min(at(b, c, a)).min(at(c, a, b))
}

/// Every vertex of `a` is within `tol` of some vertex of `b`, and vice versa.
fn same_vertex_set(a: [Point; 3], b: [Point; 3], tol: f64) -> bool {
    let covered = |x: &[Point; 3], y: &[Point; 3]| x.iter().all(|p| y.iter().any(|q| p.distance(*q) <= tol));
    covered(&a, &b) && covered(&b, &a)
}

proptest! {
    #[test]
    fn cell_of_constructed_pursuers_is_the_triangle((tri, e) in triangle_and_point()) {
        let players = pursuers_from_cell(&tri, e).unwrap();
        let cell = voronoi_cell(&players).unwrap();
        let scale = tri.diameter();
        prop_assert!(same_vertex_set(cell.vertices, tri.vertices, 1e-9 * scale));
    }

    #[test]
    fn labels_order_edges((tri, e) in triangle_and_point()) {
        let cell = voronoi_cell(&pursuers_from_cell(&tri, e).unwrap()).unwrap();
        let [v1, v2, v3] = cell.vertices;
        let tol = 1e-9 * cell.l;
        prop_assert!(v1.distance(v2) + tol >= v1.distance(v3));
        prop_assert!(v1.distance(v3) + tol >= v2.distance(v3));
        prop_assert!((cell.angles.iter().sum::<f64>() - std::f64::consts::PI).abs() < 1e-9);
    }

    #[test]
    fn assigned_pursuer_is_farther_than_evader((tri, e) in triangle_and_point()) {
        let cell = voronoi_cell(&pursuers_from_cell(&tri, e).unwrap()).unwrap();
        for i in 0..3 {
            let v = cell.vertices[i];
            prop_assert!(v.distance(cell.pursuers[i]) > v.distance(cell.evader));
            // P_i is the pursuer farthest from V_i
            for j in 0..3 {
                prop_assert!(v.distance(cell.pursuers[i]) + 1e-12 * cell.l >= v.distance(cell.pursuers[j]));
            }
        }
    }

    #[test]
    fn cell_moves_with_the_players((tri, e) in triangle_and_point(), shift in point(100.0), k in 0.01..100.0f64) {
        let players = pursuers_from_cell(&tri, e).unwrap();
        let a = voronoi_cell(&players).unwrap();
        let b = voronoi_cell(&players.translated(shift).scaled(k)).unwrap();
        prop_assert_eq!(a.assignment, b.assignment);
        for i in 0..3 {
            prop_assert!(((a.vertices[i] + shift) * k).distance(b.vertices[i]) <= 1e-9 * k * (a.l + shift.norm()));
        }
    }
}

#[test]
fn seeded_roundtrip_ten_thousand() {
    let sampler = GameSampler::new(SamplerConfig::default(), 99).unwrap();
    for i in 0..10_000 {
        let players = sampler.sample(i).unwrap();
        let cell = voronoi_cell(&players).unwrap();
        let back = voronoi_cell(&pursuers_from_cell(&cell.triangle(), players.evader).unwrap()).unwrap();
        assert!(same_vertex_set(cell.vertices, back.vertices, 1e-9 * cell.l), "game {i}");
    }
}

#[test]
fn cells_stay_similar_under_decentralized_play() {
    let sampler = GameSampler::new(SamplerConfig::well_conditioned(), 3).unwrap();
    for i in 0..20 {
        let players = sampler.sample(i).unwrap();
        let trace = run_game(
            &players,
            &mut EStrategyEvader::new(),
            &mut DTeam::d_strategy(),
            &SimParams::defaults_for(&players).unwrap(),
        )
        .unwrap();
        let first = voronoi_cell(&players).unwrap().angles;
        // the last few samples are too close to capture for a sharp cell
        let usable = trace.samples.len().saturating_sub(20);
        for s in trace.samples[..usable].iter().step_by(50) {
            let Ok(cell) = voronoi_cell(&s.players()) else { continue };
            for k in 0..3 {
                assert!(
                    (cell.angles[k] - first[k]).abs() <= 1e-6,
                    "game {i} t = {}: {:?} vs {:?}",
                    s.t,
                    cell.angles,
                    first
                );
            }
        }
    }
}
