//! Rooms and the constrained triangulation graph of a piecewise-convex
//! polygon.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use serde::Serialize;

use super::polygon::{orient, strictly_between, ArcKind, PiecewiseConvexPolygon, Point, EPS};
use super::GeometryError;
use crate::trigraph::{build_from_diagonals, edge, Edge, TriangulationGraph};

/// Whether a room is a straight edge, holds no vertex, or holds some.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RoomStatus {
    Degenerate,
    Empty,
    NonEmpty,
}

/// The region between arc `index` and its chord.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Room {
    pub index: usize,
    pub status: RoomStatus,
    /// Vertices in the interior of the chord.
    pub x: Vec<usize>,
    /// Vertices in the interior of the room or of the chord.
    pub r: Vec<usize>,
    /// The hull chain from vertex `index` to vertex `index + 1`, both
    /// included; just the two endpoints unless the room is non-empty.
    pub chain: Vec<usize>,
}

impl Room {
    /// The chain without its two endpoints.
    pub fn chain_interior(&self) -> &[usize] {
        &self.chain[1..self.chain.len() - 1]
    }
}

/// Role of an edge of the constrained triangulation graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EdgeKind {
    BoundaryArc,
    ChainDiagonal,
    WeakDiagonal,
    StarDiagonal,
}

/// Which part of the polygon a triangle lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TriangleClass {
    StarTriangle,
    CrescentTriangle,
    WeakTriangle,
}

/// A triangulation graph over the polygon's vertices with the role of each
/// edge and triangle.
#[derive(Debug, Clone)]
pub struct ConstrainedTriangulation {
    pub graph: TriangulationGraph,
    pub rooms: Vec<Room>,
    /// Role and owning room (for crescent edges) of every edge.
    pub edges: BTreeMap<Edge, (EdgeKind, Option<usize>)>,
    /// Class of `graph.triangles()[i]`.
    pub triangle_class: Vec<TriangleClass>,
}

impl ConstrainedTriangulation {
    /// Role of the edge `{a, b}`.
    pub fn kind(&self, a: usize, b: usize) -> Option<EdgeKind> {
        self.edges.get(&edge(a, b)).map(|e| e.0)
    }

    /// The room whose crescent contains the weak diagonal `{a, b}`.
    pub fn weak_room(&self, a: usize, b: usize) -> Option<usize> {
        match self.edges.get(&edge(a, b)) {
            Some((EdgeKind::WeakDiagonal, r)) => *r,
            _ => None,
        }
    }
}

fn dot_from(p: &Point, d: (&BigRational, &BigRational), v: &Point) -> BigRational {
    (&v.x - &p.x) * d.0 + (&v.y - &p.y) * d.1
}

/// Classifies the room of every arc.
///
/// A vertex is in room `i` when it lies strictly on the arc side of the
/// chord (exact test) and strictly inside the circle (tolerance `EPS`);
/// vertices on the open chord form `X_i`.
pub fn classify_rooms(poly: &PiecewiseConvexPolygon) -> Vec<Room> {
    let n = poly.n();
    let v = poly.vertices();
    (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            let (p, q) = (&v[i], &v[j]);
            let center = match &poly.arcs()[i] {
                ArcKind::Segment => {
                    return Room { index: i, status: RoomStatus::Degenerate, x: vec![], r: vec![], chain: vec![i, j] };
                }
                ArcKind::Circular { center, .. } => center.to_f64(),
            };
            let pf = p.to_f64();
            let radius = (pf[0] - center[0]).hypot(pf[1] - center[1]);
            let mut x = Vec::new();
            let mut inner = Vec::new();
            for k in (0..n).filter(|&k| k != i && k != j) {
                let o = orient(p, q, &v[k]);
                if o == 0 && strictly_between(p, q, &v[k]) {
                    x.push(k);
                } else if o < 0 {
                    let w = v[k].to_f64();
                    if (w[0] - center[0]).hypot(w[1] - center[1]) < radius - EPS {
                        inner.push(k);
                    }
                }
            }
            let d = (&q.x - &p.x, &q.y - &p.y);
            let key = |k: usize| dot_from(p, (&d.0, &d.1), &v[k]);
            let mut r: Vec<usize> = inner.iter().chain(&x).copied().collect();
            r.sort_unstable();
            if r.is_empty() {
                return Room { index: i, status: RoomStatus::Empty, x, r, chain: vec![i, j] };
            }
            let chain = if inner.is_empty() {
                let mut c = x.clone();
                c.sort_by_key(|&k| key(k));
                std::iter::once(i).chain(c).chain(std::iter::once(j)).collect()
            } else {
                let mut pts: Vec<usize> = inner.clone();
                pts.sort_by(|&a, &b| {
                    key(a).cmp(&key(b)).then_with(|| {
                        let h = |k: usize| (&v[k].y - &p.y) * &d.0 - (&v[k].x - &p.x) * &d.1;
                        h(a).cmp(&h(b))
                    })
                });
                let mut hull: Vec<usize> = vec![i];
                for k in pts.into_iter().chain(std::iter::once(j)) {
                    while hull.len() >= 2 && orient(&v[hull[hull.len() - 2]], &v[hull[hull.len() - 1]], &v[k]) <= 0 {
                        hull.pop();
                    }
                    hull.push(k);
                }
                hull
            };
            x.sort_by_key(|&k| key(k));
            Room { index: i, status: RoomStatus::NonEmpty, x, r, chain }
        })
        .collect()
}

/// Splits the face cycles of the boundary cycle by non-crossing chords.
fn faces(n: usize, chords: &BTreeSet<Edge>) -> Vec<Vec<usize>> {
    let mut done = Vec::new();
    let mut todo = vec![(0..n).collect::<Vec<usize>>()];
    while let Some(face) = todo.pop() {
        let m = face.len();
        let pos: BTreeMap<usize, usize> = face.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let split = chords.iter().find_map(|&(a, b)| {
            let (i, j) = (*pos.get(&a)?, *pos.get(&b)?);
            let gap = (j + m - i) % m;
            (gap != 1 && gap != m - 1).then_some((i.min(j), i.max(j)))
        });
        match split {
            Some((i, j)) => {
                todo.push(face[i..=j].to_vec());
                todo.push(face[j..].iter().chain(&face[..=i]).copied().collect());
            }
            None => done.push(face),
        }
    }
    done
}

/// Ear clipping with exact orientation tests on a counterclockwise cycle
/// of vertex labels.
fn ear_clip(v: &[Point], cycle: &[usize]) -> Result<Vec<[usize; 3]>, GeometryError> {
    let mut poly = cycle.to_vec();
    let mut out = Vec::with_capacity(poly.len().saturating_sub(2));
    let mut start = 0;
    while poly.len() > 3 {
        let m = poly.len();
        let ear = (0..m).map(|s| (start + s) % m).find(|&i| {
            let (a, b, c) = (poly[(i + m - 1) % m], poly[i], poly[(i + 1) % m]);
            orient(&v[a], &v[b], &v[c]) > 0
                && poly.iter().all(|&w| {
                    w == a
                        || w == b
                        || w == c
                        || !(orient(&v[a], &v[b], &v[w]) >= 0
                            && orient(&v[b], &v[c], &v[w]) >= 0
                            && orient(&v[c], &v[a], &v[w]) >= 0)
                })
        });
        let Some(i) = ear else {
            return Err(GeometryError::NonSimple(format!("no ear in star {cycle:?}")));
        };
        out.push([poly[(i + m - 1) % m], poly[i], poly[(i + 1) % m]]);
        poly.remove(i);
        start = i.saturating_sub(1);
    }
    out.push([poly[0], poly[1], poly[2]]);
    Ok(out)
}

fn sorted(t: [usize; 3]) -> [usize; 3] {
    let mut t = t;
    t.sort_unstable();
    t
}

/// Builds the constrained triangulation graph: boundary edges, hull-chain
/// diagonals and weak diagonals of every non-empty room, crescents fanned
/// from their first arc endpoint, and stars triangulated by ear clipping.
pub fn build_constrained_triangulation(poly: &PiecewiseConvexPolygon) -> Result<ConstrainedTriangulation, GeometryError> {
    let n = poly.n();
    if n < 3 {
        return Err(GeometryError::DegenerateInput(n));
    }
    let v = poly.vertices();
    let rooms = classify_rooms(poly);
    let is_boundary = |a: usize, b: usize| (a + 1) % n == b || (b + 1) % n == a;
    let mut edges: BTreeMap<Edge, (EdgeKind, Option<usize>)> = BTreeMap::new();
    for (i, r) in rooms.iter().enumerate() {
        let room = (r.status == RoomStatus::NonEmpty).then_some(i);
        edges.insert(edge(i, (i + 1) % n), (EdgeKind::BoundaryArc, room));
    }
    let mut chords = BTreeSet::new();
    for room in rooms.iter().filter(|r| r.status == RoomStatus::NonEmpty) {
        for w in room.chain.windows(2) {
            if !is_boundary(w[0], w[1]) {
                chords.insert(edge(w[0], w[1]));
                edges.entry(edge(w[0], w[1])).or_insert((EdgeKind::ChainDiagonal, Some(room.index)));
            }
        }
    }
    let mut class: BTreeMap<[usize; 3], TriangleClass> = BTreeMap::new();
    for face in faces(n, &chords) {
        let m = face.len();
        let crescent = rooms.iter().find(|r| {
            r.status == RoomStatus::NonEmpty
                && (0..m).any(|k| edge(face[k], face[(k + 1) % m]) == edge(r.index, (r.index + 1) % n))
        });
        match crescent {
            Some(room) => {
                let mut want: Vec<usize> = room.chain.clone();
                want.sort_unstable();
                let mut got = face.clone();
                got.sort_unstable();
                if want != got {
                    return Err(GeometryError::NonSimple(format!("crescent of room {} is not bounded by its chain", room.index)));
                }
                let c = &room.chain;
                let apex = room.index;
                for &w in c.iter().take(c.len() - 1).skip(2) {
                    edges.insert(edge(apex, w), (EdgeKind::WeakDiagonal, Some(room.index)));
                }
                for j in 1..c.len() - 1 {
                    let t = sorted([apex, c[j], c[j + 1]]);
                    let weak = (j >= 2) || (j + 1 < c.len() - 1);
                    class.insert(t, if weak { TriangleClass::WeakTriangle } else { TriangleClass::CrescentTriangle });
                }
            }
            None => {
                for t in ear_clip(v, &face)? {
                    for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                        edges.entry(edge(a, b)).or_insert((EdgeKind::StarDiagonal, None));
                    }
                    class.insert(sorted(t), TriangleClass::StarTriangle);
                }
            }
        }
    }
    let diagonals: Vec<Edge> = edges.keys().copied().filter(|&(a, b)| !is_boundary(a, b)).collect();
    let graph = build_from_diagonals(n, &diagonals).map_err(|e| GeometryError::NonSimple(e.to_string()))?;
    let triangle_class = graph
        .triangles()
        .iter()
        .map(|&t| class.get(&sorted(t)).copied().ok_or_else(|| GeometryError::NonSimple(format!("unclassified triangle {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ConstrainedTriangulation { graph, rooms, edges, triangle_class })
}

#[cfg(test)]
mod tests {
    use super::super::polygon::bulging_arc;
    use super::*;

    fn regular(n: usize, r: f64) -> Vec<[f64; 2]> {
        (0..n)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / n as f64;
                [r * a.cos(), r * a.sin()]
            })
            .collect()
    }

    fn pts(v: &[[f64; 2]]) -> Vec<Point> {
        v.iter().map(|p| Point::from_f64(p[0], p[1])).collect()
    }

    #[test]
    fn convex_polygon_has_only_stars() {
        let p = PiecewiseConvexPolygon::straight(pts(&regular(7, 5.0))).unwrap();
        assert!(classify_rooms(&p).iter().all(|r| r.status == RoomStatus::Degenerate));
        let ct = build_constrained_triangulation(&p).unwrap();
        assert!(ct.graph.check_invariants().is_ok());
        assert!(ct.triangle_class.iter().all(|&c| c == TriangleClass::StarTriangle));
    }

    #[test]
    fn bulging_arc_without_vertices_is_empty() {
        let v = regular(5, 5.0);
        let mut arcs = vec![ArcKind::Segment; 5];
        arcs[0] = bulging_arc(v[0], v[1], 0.2);
        let p = PiecewiseConvexPolygon::new(pts(&v), arcs).unwrap();
        assert_eq!(classify_rooms(&p)[0].status, RoomStatus::Empty);
    }

    /// A crescent: a deep arc from `(0, 0)` to `(10, 0)` and a straight
    /// chain back through two vertices inside the arc's room.
    fn crescent() -> PiecewiseConvexPolygon {
        let v = [[0.0, 0.0], [10.0, 0.0], [7.0, -2.0], [3.0, -2.0]];
        let mut arcs = vec![ArcKind::Segment; 4];
        arcs[0] = bulging_arc(v[0], v[1], 0.4);
        PiecewiseConvexPolygon::new(pts(&v), arcs).unwrap()
    }

    #[test]
    fn crescent_room_holds_its_chain() {
        let p = crescent();
        let room = &classify_rooms(&p)[0];
        assert_eq!(room.status, RoomStatus::NonEmpty);
        assert_eq!(room.chain, vec![0, 3, 2, 1]);
        let ct = build_constrained_triangulation(&p).unwrap();
        assert_eq!(ct.graph.triangles().len(), p.n() - 2);
        assert!(ct.graph.check_invariants().is_ok());
        assert!(ct.triangle_class.iter().all(|&c| c != TriangleClass::StarTriangle));
    }
}
