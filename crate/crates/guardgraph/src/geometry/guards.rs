//! Guard sets, the mappings from 2-dominating sets of the constrained
//! triangulation graph, the end-to-end pipeline and the sampled verifier.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::polygon::PiecewiseConvexPolygon;
use super::triangulate::{build_constrained_triangulation, ConstrainedTriangulation, EdgeKind};
use super::visibility::{FlatPolygon, Location};
use super::GeometryError;
use crate::diag_dominate::diag_2dominate_linear;
use crate::edge_dominate::{edge_2dominate_linear, edge_2dominate_quadratic};
use crate::trigraph::{is_2_dominated, DominatingSet, Edge};

/// Number of points sampled along every guard.
const GUARD_SAMPLES: usize = 64;

/// Interior samples closer than this to the boundary are discarded.
const BOUNDARY_CLEARANCE: f64 = 1e-7;

/// Relative depths of the sample band inside every circular arc.
const ARC_BAND: [f64; 6] = [0.01, 0.05, 0.15, 0.35, 0.6, 0.9];

/// Samples per work unit of the parallel verifier; consecutive samples are
/// close together, so each one first tries the guard point that saw the
/// previous sample.
const SAMPLE_CHUNK: usize = 64;

/// Relative offsets of the samples placed inside every vertex corner.
const CORNER_OFFSETS: [f64; 3] = [0.002, 0.02, 0.1];

const CAVEAT: &str = "sampled check: a reported witness refutes coverage up to floating-point tolerance; \
                      covered = true only means no sample point was found unguarded";

/// A single guard.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Guard {
    /// The whole arc from vertex `index` to vertex `index + 1`.
    Arc { index: usize },
    /// The straight segment between two vertices.
    Diagonal { a: usize, b: usize },
}

/// Whether guards may only patrol boundary arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GuardMode {
    EdgeGuards,
    MobileGuards,
}

/// A set of guards for a polygon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuardSet {
    pub guards: Vec<Guard>,
    pub mode: GuardMode,
}

impl GuardSet {
    /// Number of guards.
    pub fn len(&self) -> usize {
        self.guards.len()
    }

    /// Whether there is no guard.
    pub fn is_empty(&self) -> bool {
        self.guards.is_empty()
    }

    /// The set with guard `i` removed.
    pub fn without(&self, i: usize) -> GuardSet {
        let mut guards = self.guards.clone();
        guards.remove(i);
        GuardSet { guards, mode: self.mode }
    }
}

/// Which 2-domination algorithm drives the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Linear diagonal 2-domination, at most `floor((n+1)/3)` mobile guards.
    MobileN3,
    /// Quadratic edge 2-domination, at most `floor((2n+1)/5)` edge guards.
    EdgeQ,
    /// Linear edge 2-domination, at most `floor(3n/7)` edge guards.
    EdgeLinear,
}

impl Strategy {
    /// The kind of guards the strategy produces.
    pub fn mode(self) -> GuardMode {
        match self {
            Strategy::MobileN3 => GuardMode::MobileGuards,
            Strategy::EdgeQ | Strategy::EdgeLinear => GuardMode::EdgeGuards,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::MobileN3 => "mobile-n3",
            Strategy::EdgeQ => "edge-q",
            Strategy::EdgeLinear => "edge-linear",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mobile-n3" | "mobile" => Ok(Strategy::MobileN3),
            "edge-q" | "edge" => Ok(Strategy::EdgeQ),
            "edge-linear" => Ok(Strategy::EdgeLinear),
            _ => Err(format!("unknown strategy '{s}' (expected mobile-n3, edge-q or edge-linear)")),
        }
    }
}

/// Index of the arc joining the endpoints of a boundary edge.
fn arc_of(n: usize, (a, b): Edge) -> Option<usize> {
    if b == a + 1 {
        Some(a)
    } else if a == 0 && b == n - 1 {
        Some(n - 1)
    } else {
        None
    }
}

fn check_dominating(ct: &ConstrainedTriangulation, d: &DominatingSet) -> Result<(), GeometryError> {
    match is_2_dominated(&ct.graph, d) {
        Ok(true) => Ok(()),
        _ => Err(GeometryError::NotDominating),
    }
}

/// Turns a 2-dominating set of the constrained triangulation graph into a
/// mobile guard set: edges become their arcs, weak diagonals become the arc
/// of their crescent and other diagonals stay as straight guards.
pub fn mobile_guards_from_diag_set(ct: &ConstrainedTriangulation, d: &DominatingSet) -> Result<GuardSet, GeometryError> {
    check_dominating(ct, d)?;
    let n = ct.graph.n();
    let guards: BTreeSet<Guard> = d
        .members
        .iter()
        .map(|&e| match arc_of(n, e) {
            Some(index) => Guard::Arc { index },
            None => match (ct.kind(e.0, e.1), ct.weak_room(e.0, e.1)) {
                (Some(EdgeKind::WeakDiagonal), Some(index)) => Guard::Arc { index },
                _ => Guard::Diagonal { a: e.0, b: e.1 },
            },
        })
        .collect();
    debug_assert!(guards.len() <= d.len());
    Ok(GuardSet { guards: guards.into_iter().collect(), mode: GuardMode::MobileGuards })
}

/// Turns an edge 2-dominating set into an edge guard set, one arc per
/// edge.
pub fn edge_guards_from_edge_set(ct: &ConstrainedTriangulation, d: &DominatingSet) -> Result<GuardSet, GeometryError> {
    let n = ct.graph.n();
    let mut guards = Vec::with_capacity(d.len());
    for &e in &d.members {
        match arc_of(n, e) {
            Some(index) => guards.push(Guard::Arc { index }),
            None => return Err(GeometryError::NonEdgeMember(e.0, e.1)),
        }
    }
    check_dominating(ct, d)?;
    Ok(GuardSet { guards, mode: GuardMode::EdgeGuards })
}

/// Guards a piecewise-convex polygon: builds the constrained triangulation
/// graph, 2-dominates it with the chosen algorithm and maps the result back
/// to the polygon.
pub fn guard_piecewise_convex(poly: &PiecewiseConvexPolygon, strategy: Strategy) -> Result<GuardSet, GeometryError> {
    let n = poly.n();
    if n == 2 {
        return Ok(GuardSet { guards: vec![Guard::Arc { index: 0 }], mode: strategy.mode() });
    }
    let ct = build_constrained_triangulation(poly)?;
    log::debug!("constrained triangulation: {} rooms, {} edges", ct.rooms.len(), ct.edges.len());
    match strategy {
        Strategy::MobileN3 => mobile_guards_from_diag_set(&ct, &diag_2dominate_linear(&ct.graph)),
        Strategy::EdgeQ => edge_guards_from_edge_set(&ct, &edge_2dominate_quadratic(&ct.graph)),
        Strategy::EdgeLinear => edge_guards_from_edge_set(&ct, &edge_2dominate_linear(&ct.graph)),
    }
}

/// Outcome of [`verify_guard_set`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub covered: bool,
    /// Number of interior sample points tested.
    pub samples: usize,
    /// Sample points that no guard sample sees.
    pub witnesses: Vec<[f64; 2]>,
    pub caveat: String,
}

fn guard_points(poly: &PiecewiseConvexPolygon, flat: &FlatPolygon, g: &Guard) -> Vec<[f64; 2]> {
    let steps = (0..=GUARD_SAMPLES).map(|s| s as f64 / GUARD_SAMPLES as f64);
    match *g {
        Guard::Arc { index } => steps.map(|s| flat.arcs[index % poly.n()].at(s)).collect(),
        Guard::Diagonal { a, b } => {
            let (p, q) = (poly.vertices()[a].to_f64(), poly.vertices()[b].to_f64());
            steps.map(|t| [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]).collect()
        }
    }
}

/// Interior sample points: a `density` by `density` grid over the bounding
/// box, a band of points inside every circular arc and points inside every
/// vertex corner.
fn interior_samples(poly: &PiecewiseConvexPolygon, flat: &FlatPolygon, density: usize) -> Vec<[f64; 2]> {
    let [x0, y0, x1, y1] = flat.bbox;
    let density = density.max(2);
    let mut pts = Vec::new();
    for i in 0..density {
        for j in 0..density {
            let fx = (i as f64 + 0.5) / density as f64;
            let fy = (j as f64 + 0.5) / density as f64;
            pts.push([x0 + fx * (x1 - x0), y0 + fy * (y1 - y0)]);
        }
    }
    for arc in &flat.arcs {
        let Some(c) = arc.circle else { continue };
        let mid = [(arc.p[0] + arc.q[0]) / 2.0, (arc.p[1] + arc.q[1]) / 2.0];
        let sag = c.r - (mid[0] - c.c[0]).hypot(mid[1] - c.c[1]);
        for k in 1..density {
            let s = k as f64 / density as f64;
            let x = arc.at(s);
            let nrm = arc.inward_normal(s);
            for f in ARC_BAND {
                pts.push([x[0] + f * sag * nrm[0], x[1] + f * sag * nrm[1]]);
            }
        }
    }
    let v: Vec<[f64; 2]> = poly.vertices().iter().map(|p| p.to_f64()).collect();
    let n = v.len();
    for i in 0..n {
        let (p, a, b) = (v[i], v[(i + n - 1) % n], v[(i + 1) % n]);
        for f in CORNER_OFFSETS {
            pts.push([p[0] + f * ((a[0] - p[0]) + (b[0] - p[0])), p[1] + f * ((a[1] - p[1]) + (b[1] - p[1]))]);
        }
    }
    pts.retain(|&x| flat.locate(x) == Location::Inside && flat.boundary_distance(x) > BOUNDARY_CLEARANCE);
    pts
}

/// Samples the interior of `poly` and reports every sample point that no
/// sampled guard point sees.
///
/// One-sided: witnesses refute coverage, but a clean report is evidence
/// rather than proof.
pub fn verify_guard_set(poly: &PiecewiseConvexPolygon, g: &GuardSet, density: usize) -> VerifyReport {
    let flat = FlatPolygon::new(poly);
    let guard_pts: Vec<[f64; 2]> = g.guards.iter().flat_map(|gd| guard_points(poly, &flat, gd)).collect();
    let samples = interior_samples(poly, &flat, density);
    let witnesses: Vec<[f64; 2]> = samples
        .par_chunks(SAMPLE_CHUNK)
        .flat_map_iter(|chunk| {
            let mut last = 0;
            let mut unseen = Vec::new();
            for &x in chunk {
                let order = (last..guard_pts.len()).chain(0..last);
                match order.into_iter().find(|&k| flat.sees_inner_point(guard_pts[k], x)) {
                    Some(k) => last = k,
                    None => unseen.push(x),
                }
            }
            unseen
        })
        .collect();
    log::debug!("verified {} samples against {} guard points: {} witnesses", samples.len(), guard_pts.len(), witnesses.len());
    VerifyReport { covered: witnesses.is_empty(), samples: samples.len(), witnesses, caveat: CAVEAT.to_string() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{bulging_arc, ArcKind, Point};
    use crate::trigraph::{edge, Mode};

    fn square() -> PiecewiseConvexPolygon {
        PiecewiseConvexPolygon::straight(vec![Point::int(0, 0), Point::int(4, 0), Point::int(4, 4), Point::int(0, 4)])
            .unwrap()
    }

    fn lens() -> PiecewiseConvexPolygon {
        let p = [0.0, 0.0];
        let q = [4.0, 0.0];
        PiecewiseConvexPolygon::new(
            vec![Point::int(0, 0), Point::int(4, 0)],
            vec![bulging_arc(p, q, 0.3), bulging_arc(q, p, 0.3)],
        )
        .unwrap()
    }

    #[test]
    fn boundary_edges_map_to_their_arcs() {
        let poly = square();
        let ct = build_constrained_triangulation(&poly).unwrap();
        let d = DominatingSet::from_edges(Mode::DiagonalAllowed, [edge(0, 1), edge(2, 3)]);
        let g = mobile_guards_from_diag_set(&ct, &d).unwrap();
        assert_eq!(g.guards, vec![Guard::Arc { index: 0 }, Guard::Arc { index: 2 }]);
        let e = DominatingSet::from_edges(Mode::EdgeOnly, [edge(0, 3), edge(1, 2)]);
        assert_eq!(edge_guards_from_edge_set(&ct, &e).unwrap().guards, vec![Guard::Arc { index: 3 }, Guard::Arc { index: 1 }]);
    }

    #[test]
    fn non_dominating_and_non_edge_sets_are_rejected() {
        let poly = PiecewiseConvexPolygon::straight(vec![
            Point::int(0, 0),
            Point::int(2, 0),
            Point::int(3, 2),
            Point::int(2, 4),
            Point::int(0, 4),
            Point::int(-1, 2),
        ])
        .unwrap();
        let ct = build_constrained_triangulation(&poly).unwrap();
        let d = DominatingSet::from_edges(Mode::EdgeOnly, [edge(0, 1)]);
        assert_eq!(edge_guards_from_edge_set(&ct, &d), Err(GeometryError::NotDominating));
        let diag = ct.graph.diagonals()[0];
        let d = DominatingSet::from_edges(Mode::EdgeOnly, [diag]);
        assert_eq!(edge_guards_from_edge_set(&ct, &d), Err(GeometryError::NonEdgeMember(diag.0, diag.1)));
    }

    #[test]
    fn triangle_is_guarded_by_one_edge() {
        let poly =
            PiecewiseConvexPolygon::straight(vec![Point::int(0, 0), Point::int(3, 0), Point::int(0, 3)]).unwrap();
        let ct = build_constrained_triangulation(&poly).unwrap();
        let d = DominatingSet::from_edges(Mode::EdgeOnly, [edge(0, 1)]);
        assert_eq!(edge_guards_from_edge_set(&ct, &d).unwrap().guards, vec![Guard::Arc { index: 0 }]);
    }

    #[test]
    fn lens_takes_one_guard() {
        for s in [Strategy::MobileN3, Strategy::EdgeQ, Strategy::EdgeLinear] {
            let g = guard_piecewise_convex(&lens(), s).unwrap();
            assert_eq!(g.len(), 1);
            assert!(verify_guard_set(&lens(), &g, 30).covered);
        }
    }

    #[test]
    fn all_arcs_cover() {
        let poly = square();
        let g = GuardSet { guards: (0..4).map(|index| Guard::Arc { index }).collect(), mode: GuardMode::EdgeGuards };
        let r = verify_guard_set(&poly, &g, 20);
        assert!(r.covered);
        assert!(r.samples >= 400);
    }

    #[test]
    fn empty_guard_set_is_refuted() {
        let g = GuardSet { guards: vec![], mode: GuardMode::MobileGuards };
        let r = verify_guard_set(&square(), &g, 10);
        assert!(!r.covered);
        assert_eq!(r.witnesses.len(), r.samples);
    }

    #[test]
    fn guard_set_json_round_trip() {
        let g = GuardSet {
            guards: vec![Guard::Arc { index: 2 }, Guard::Diagonal { a: 0, b: 3 }],
            mode: GuardMode::MobileGuards,
        };
        let s = serde_json::to_string(&g).unwrap();
        assert!(s.contains("\"type\":\"arc\""));
        assert_eq!(serde_json::from_str::<GuardSet>(&s).unwrap(), g);
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in [Strategy::MobileN3, Strategy::EdgeQ, Strategy::EdgeLinear] {
            assert_eq!(s.to_string().parse::<Strategy>(), Ok(s));
        }
        assert!("nope".parse::<Strategy>().is_err());
    }

    #[test]
    fn arc_kind_of_lens_is_circular() {
        assert!(lens().arcs().iter().all(|a| matches!(a, ArcKind::Circular { .. })));
    }
}
