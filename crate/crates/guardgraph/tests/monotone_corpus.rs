//! The monotone edge guard procedure on a random corpus and on hand-made
//! fixtures: the guard count stays within `ceil((n + 1) / 4)` and the
//! sampled verifier finds no unseen point.

use guardgraph::geometry::{bulging_arc, verify_guard_set, ArcKind, PiecewiseConvexPolygon, Point};
use guardgraph::lowerbounds::gen_monotone_lb;
use guardgraph::monotone::{decompose, is_x_monotone, monotone_edge_guards};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORPUS: usize = 50;
const DENSITY: usize = 50;

fn grid(p: [f64; 2]) -> Point {
    Point::rounded(p[0], p[1], 1_000_000)
}

fn build(pts: &[[f64; 2]], bulges: &[f64]) -> Option<PiecewiseConvexPolygon> {
    let n = pts.len();
    let v: Vec<Point> = pts.iter().map(|&p| grid(p)).collect();
    let arcs = (0..n)
        .map(|i| if bulges[i] > 0.0 { bulging_arc(v[i].to_f64(), v[(i + 1) % n].to_f64(), bulges[i]) } else { ArcKind::Segment })
        .collect();
    PiecewiseConvexPolygon::new(v, arcs).ok().filter(is_x_monotone)
}

/// A random x-monotone polygon: vertices at jittered integer abscissae,
/// randomly split between an upper band and a lower band, with some arcs
/// bulging. The two leftmost and the two rightmost vertices lie on
/// different bands so that the closing edges are short. Bulges are halved
/// until the polygon is valid and monotone.
fn random_monotone(rng: &mut ChaCha8Rng) -> PiecewiseConvexPolygon {
    let n = rng.gen_range(4..=60);
    let pts: Vec<([f64; 2], bool)> = (0..n)
        .map(|i| {
            let upper = match i {
                0 => false,
                1 => true,
                _ if i == n - 2 => false,
                _ if i == n - 1 => true,
                _ => rng.gen_bool(0.5),
            };
            let y = rng.gen_range(1.0..3.0);
            ([i as f64 + rng.gen_range(0.0..0.4), if upper { y } else { -y }], upper)
        })
        .collect();
    let lower = pts.iter().filter(|p| !p.1).map(|p| p.0);
    let upper = pts.iter().rev().filter(|p| p.1).map(|p| p.0);
    let order: Vec<[f64; 2]> = lower.chain(upper).collect();
    let mut bulges: Vec<f64> =
        (0..n).map(|_| if rng.gen_bool(0.5) { rng.gen_range(0.05..0.3) } else { 0.0 }).collect();
    for _ in 0..4 {
        if let Some(p) = build(&order, &bulges) {
            return p;
        }
        bulges.iter_mut().for_each(|b| *b /= 2.0);
    }
    build(&order, &vec![0.0; n]).expect("straight monotone polygon")
}

fn fixtures() -> Vec<PiecewiseConvexPolygon> {
    let hexagon: Vec<[f64; 2]> = (0..6)
        .map(|i| {
            let a = std::f64::consts::TAU * (i as f64 + 0.5) / 6.0;
            [3.0 * a.cos(), 3.0 * a.sin()]
        })
        .collect();
    vec![
        build(&[[0.0, 0.0], [2.0, 0.0]], &[0.3, 0.3]).unwrap(),
        build(&hexagon, &[0.15; 6]).unwrap(),
        build(&[[0.0, 0.0], [6.0, 0.0], [6.0, 2.0], [0.0, 2.0]], &[0.2, 0.1, 0.2, 0.1]).unwrap(),
        build(
            &[[0.0, 1.0], [2.0, -1.0], [4.0, 0.5], [6.0, -1.5], [8.0, 1.0], [7.0, 3.0], [5.0, 1.5], [3.0, 3.5], [1.0, 2.0]],
            &[0.1, 0.1, 0.1, 0.1, 0.2, 0.1, 0.1, 0.1, 0.2],
        )
        .unwrap(),
        gen_monotone_lb(1, 0).unwrap(),
    ]
}

fn check(p: &PiecewiseConvexPolygon) {
    let g = monotone_edge_guards(p).unwrap();
    assert!(g.len() <= (p.n() + 1).div_ceil(4), "n={} guards={}", p.n(), g.len());
    let r = verify_guard_set(p, &g, DENSITY);
    assert!(r.covered, "n={} witnesses {:?}\n{}", p.n(), &r.witnesses[..r.witnesses.len().min(3)], p.to_json_string());
}

#[test]
fn random_monotone_polygons_are_guarded_within_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..CORPUS {
        let p = random_monotone(&mut rng);
        assert!((4..=60).contains(&p.n()));
        check(&p);
    }
}

#[test]
fn locally_convex_fixtures_are_guarded_within_bound() {
    for p in fixtures() {
        check(&p);
    }
}

#[test]
fn decompositions_have_two_extremal_points_and_sorted_abscissae() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..CORPUS {
        let d = decompose(&random_monotone(&mut rng)).unwrap();
        let s = d.sigmas();
        assert_eq!((s[0], s[s.len() - 1]), (0, 0));
        assert_eq!(s.iter().filter(|&&x| x == 0).count(), 2);
        assert!(d.points.windows(2).all(|w| w[0].point[0] <= w[1].point[0] + 1e-9));
    }
}
