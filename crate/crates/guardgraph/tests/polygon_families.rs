//! Guarding the lower-bound polygon families with the pipelines and the
//! sampled verifier.

use guardgraph::geometry::{build_constrained_triangulation, guard_piecewise_convex, verify_guard_set, Guard, GuardMode, GuardSet, Strategy};
use guardgraph::lowerbounds::{gen_fan_polygon, gen_monotone_lb, gen_spike_polygon};
use guardgraph::monotone::monotone_edge_guards;

#[test]
fn spike_polygon_takes_one_mobile_guard_per_spike() {
    for k in [3, 5] {
        let p = gen_spike_polygon(k).unwrap();
        let g = guard_piecewise_convex(&p, Strategy::MobileN3).unwrap();
        assert_eq!(g.len(), k);
        let r = verify_guard_set(&p, &g, 50);
        assert!(r.covered, "k={k} witnesses {:?}", &r.witnesses[..r.witnesses.len().min(3)]);
    }
}

#[test]
fn spike_guard_sets_missing_a_spike_are_refuted() {
    let k = 3;
    let n = 3 * k;
    let p = gen_spike_polygon(k).unwrap();
    let ct = build_constrained_triangulation(&p).unwrap();
    for j in 0..k {
        let spike = |v: usize| v / 3 == j;
        let arcs = (0..n).filter(|&i| !spike(i) && !spike((i + 1) % n)).map(|index| Guard::Arc { index });
        let diagonals =
            ct.graph.diagonals().iter().filter(|&&(a, b)| !spike(a) && !spike(b)).map(|&(a, b)| Guard::Diagonal { a, b });
        let g = GuardSet { guards: arcs.chain(diagonals).collect(), mode: GuardMode::MobileGuards };
        let r = verify_guard_set(&p, &g, 50);
        assert!(!r.covered, "spike {j}");
    }
}

#[test]
fn fan_polygon_edge_pipeline_within_bound() {
    let p = gen_fan_polygon(9).unwrap();
    let g = guard_piecewise_convex(&p, Strategy::EdgeQ).unwrap();
    assert!(g.len() <= 3, "{g:?}");
    assert!(verify_guard_set(&p, &g, 50).covered);
}

#[test]
fn fan_polygon_refutes_gaps_over_a_spike() {
    let n = 9;
    let p = gen_fan_polygon(n).unwrap();
    for s in (0..n).step_by(3) {
        let guards = (0..n).filter(|i| (i + n - s) % n >= 3).map(|index| Guard::Arc { index }).collect();
        let g = GuardSet { guards, mode: GuardMode::EdgeGuards };
        assert!(!verify_guard_set(&p, &g, 50).covered, "gap at {s}");
    }
}

#[test]
fn first_monotone_polygon_needs_every_guard() {
    let p = gen_monotone_lb(1, 4).unwrap();
    let g = monotone_edge_guards(&p).unwrap();
    assert_eq!(g.len(), 4);
    assert!(verify_guard_set(&p, &g, 100).covered);
    for i in 0..g.len() {
        assert!(!verify_guard_set(&p, &g.without(i), 100).covered, "guard {i}");
    }
}

#[test]
fn second_monotone_polygon_is_covered_by_four_guards() {
    let p = gen_monotone_lb(2, 4).unwrap();
    let g = monotone_edge_guards(&p).unwrap();
    assert_eq!(g.len(), 4);
    assert!(verify_guard_set(&p, &g, 100).covered);
}
