//! x-monotone piecewise-convex polygons: the monotonicity test, the
//! decomposition into sorted vertices with chain indices, and the edge
//! guard set of size at most `ceil((n + 1) / 4)`.
//!
//! A polygon is x-monotone when its boundary splits into a lower chain
//! running left to right and an upper chain running right to left. Arcs
//! are cut at the interior points where their tangent is vertical, so a
//! circular arc containing the leftmost or rightmost point of the polygon
//! is allowed, while an arc that bends back inside a chain is not.

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{FlatArc, Guard, GuardMode, GuardSet, PiecewiseConvexPolygon};

/// Relative tolerance for comparing x-coordinates of boundary points.
const X_TOL: f64 = 1e-12;

/// Errors raised by the monotone procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonotoneError {
    #[error("polygon is not x-monotone")]
    NotMonotone,
}

/// The chain of the boundary a point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Chain {
    Lower,
    Upper,
}

/// A piece of an arc between consecutive vertical-tangent points.
#[derive(Debug, Clone, Copy)]
struct Piece {
    arc: usize,
    s0: f64,
    x0: f64,
    x1: f64,
    dir: i8,
}

/// A point of the sorted sequence `u_0, ..., u_{n+1}` with its index and
/// incident edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SortedPoint {
    /// Coordinates of the point.
    pub point: [f64; 2],
    /// The polygon vertex at this point, absent for the two extremal points.
    pub vertex: Option<usize>,
    /// `+1` on the upper chain, `-1` on the lower chain, `0` for the
    /// extremal points.
    pub sigma: i8,
    /// The arc leaving the point to the left along its chain.
    pub left_edge: Option<usize>,
    /// The arc leaving the point to the right along its chain.
    pub right_edge: Option<usize>,
    /// The arc of the other chain met by the vertical line through the point.
    pub opposite_edge: Option<usize>,
}

/// The sorted points `u_0, ..., u_{n+1}` of an x-monotone polygon. The
/// region between the vertical lines through `u_j` and `u_{j+1}` is
/// identified by the index pair `(j, j + 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotoneDecomposition {
    pub points: Vec<SortedPoint>,
}

impl MonotoneDecomposition {
    /// The indices `sigma_0, ..., sigma_{n+1}`.
    pub fn sigmas(&self) -> Vec<i8> {
        self.points.iter().map(|p| p.sigma).collect()
    }
}

fn sign(v: f64, scale: f64) -> i8 {
    if v > X_TOL * scale {
        1
    } else if v < -X_TOL * scale {
        -1
    } else {
        0
    }
}

/// Cuts every arc at its interior vertical-tangent points.
fn pieces(poly: &PiecewiseConvexPolygon) -> Vec<Piece> {
    let mut out = Vec::new();
    for i in 0..poly.n() {
        let arc = FlatArc::new(poly, i);
        let mut cuts = vec![0.0, 1.0];
        if let Some(c) = arc.circle {
            for a in [0.0, PI] {
                let s = (a - c.a0).rem_euclid(TAU) / c.sweep;
                if s > 1e-12 && s < 1.0 - 1e-12 {
                    cuts.push(s);
                }
            }
        }
        cuts.sort_by(f64::total_cmp);
        for w in cuts.windows(2) {
            let (p, q) = (arc.at(w[0]), arc.at(w[1]));
            let scale = 1.0 + p[0].abs().max(q[0].abs());
            out.push(Piece { arc: i, s0: w[0], x0: p[0], x1: q[0], dir: sign(q[0] - p[0], scale) });
        }
    }
    out
}

/// Positions in `pieces` where the lower chain starts and ends, if the
/// boundary has exactly one run of rightward and one run of leftward pieces.
fn chain_split(pieces: &[Piece]) -> Option<(usize, usize)> {
    let moving: Vec<usize> = (0..pieces.len()).filter(|&i| pieces[i].dir != 0).collect();
    let m = moving.len();
    let mut start = None;
    let mut end = None;
    let mut changes = 0;
    for k in 0..m {
        let (a, b) = (pieces[moving[k]].dir, pieces[moving[(k + 1) % m]].dir);
        if a != b {
            changes += 1;
            if b == 1 {
                start = Some(moving[(k + 1) % m]);
            } else {
                end = Some(moving[(k + 1) % m]);
            }
        }
    }
    if changes != 2 {
        return None;
    }
    Some((start?, end?))
}

/// Whether every vertical line meets `poly` in at most two points or
/// segments, equivalently whether the boundary consists of one chain
/// moving right and one chain moving left.
pub fn is_x_monotone(poly: &PiecewiseConvexPolygon) -> bool {
    chain_split(&pieces(poly)).is_some()
}

/// Pieces of one chain, ordered left to right, without vertical pieces.
fn chain_pieces(pieces: &[Piece], chain: &[bool], which: Chain) -> Vec<Piece> {
    let mut v: Vec<Piece> = pieces
        .iter()
        .zip(chain)
        .filter(|(p, &lower)| p.dir != 0 && lower == (which == Chain::Lower))
        .map(|(p, _)| *p)
        .collect();
    v.sort_by(|a, b| a.x0.min(a.x1).total_cmp(&b.x0.min(b.x1)));
    v
}

/// The arc of `chain` met by the vertical line at `x`; at a vertex of the
/// chain the arc to the right of it is chosen.
fn arc_at(chain: &[Piece], x: f64) -> Option<usize> {
    let tol = X_TOL * (1.0 + x.abs());
    chain
        .iter()
        .find(|p| {
            let (lo, hi) = (p.x0.min(p.x1), p.x0.max(p.x1));
            lo - tol <= x && x < hi - tol
        })
        .or_else(|| chain.last().filter(|p| (p.x0.max(p.x1) - x).abs() <= tol))
        .map(|p| p.arc)
}

/// Sorts the vertices and the two extremal points by x with lexicographic
/// tie-breaking, and assigns chain indices and incident edges.
///
/// # Errors
/// [`MonotoneError::NotMonotone`] if `poly` is not x-monotone.
pub fn decompose(poly: &PiecewiseConvexPolygon) -> Result<MonotoneDecomposition, MonotoneError> {
    let n = poly.n();
    let pieces = pieces(poly);
    let (start, end) = chain_split(&pieces).ok_or(MonotoneError::NotMonotone)?;
    let np = pieces.len();
    let mut lower = vec![false; np];
    let mut k = start;
    while k != end {
        lower[k] = true;
        k = (k + 1) % np;
    }
    let first_piece: Vec<usize> = (0..n).map(|i| pieces.iter().position(|p| p.arc == i).expect("arc piece")).collect();
    let last_piece: Vec<usize> = (0..n).map(|i| pieces.iter().rposition(|p| p.arc == i).expect("arc piece")).collect();
    let lower_chain = chain_pieces(&pieces, &lower, Chain::Lower);
    let upper_chain = chain_pieces(&pieces, &lower, Chain::Upper);

    let extremal = |k: usize| FlatArc::new(poly, pieces[k].arc).at(pieces[k].s0);
    let u0 = SortedPoint {
        point: extremal(start),
        vertex: None,
        sigma: 0,
        left_edge: None,
        right_edge: Some(pieces[start].arc),
        opposite_edge: None,
    };
    let last_lower = (end + np - 1) % np;
    let un1 = SortedPoint {
        point: extremal(end),
        vertex: None,
        sigma: 0,
        left_edge: Some(pieces[last_lower].arc),
        right_edge: None,
        opposite_edge: None,
    };

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| poly.vertices()[a].cmp(&poly.vertices()[b]));
    let mut points = vec![u0];
    for &i in &order {
        let prev = (i + n - 1) % n;
        let on_lower = lower[first_piece[i]];
        let incoming_same = lower[last_piece[prev]] == on_lower;
        let point = poly.vertices()[i].to_f64();
        let (left_edge, right_edge, opposite) = if on_lower {
            (incoming_same.then_some(prev), Some(i), &upper_chain)
        } else {
            (Some(i), incoming_same.then_some(prev), &lower_chain)
        };
        points.push(SortedPoint {
            point,
            vertex: Some(i),
            sigma: if on_lower { -1 } else { 1 },
            left_edge,
            right_edge,
            opposite_edge: arc_at(opposite, point[0]),
        });
    }
    points.push(un1);
    Ok(MonotoneDecomposition { points })
}

/// The edge guard set of the group rules applied to the sorted points of
/// an x-monotone polygon: at most one guard per group of four consecutive
/// regions, hence at most `ceil((n + 1) / 4)` guards.
///
/// # Errors
/// [`MonotoneError::NotMonotone`] if `poly` is not x-monotone.
pub fn monotone_edge_guards(poly: &PiecewiseConvexPolygon) -> Result<GuardSet, MonotoneError> {
    let d = decompose(poly)?;
    Ok(guards_from_decomposition(&d))
}

/// Applies the five selection rules to each group of sorted points.
pub fn guards_from_decomposition(d: &MonotoneDecomposition) -> GuardSet {
    let pts = &d.points;
    let n = pts.len() - 2;
    let sigma = |j: usize| pts.get(j).map_or(0, |p| p.sigma);
    let left = |j: usize| pts.get(j).and_then(|p| p.left_edge);
    let right = |j: usize| pts.get(j).and_then(|p| p.right_edge);
    let opposite = |j: usize| pts.get(j).and_then(|p| p.opposite_edge);
    let mut chosen = BTreeSet::new();
    for g in 0..(n + 1).div_ceil(4) {
        let b = 4 * g;
        let rules = [
            (sigma(b + 1) != sigma(b + 2), right(b + 1)),
            (sigma(b + 2) != sigma(b + 3), left(b + 3)),
            (sigma(b) != sigma(b + 1), right(b)),
            (sigma(b + 3) != sigma(b + 4), left(b + 4)),
            (true, opposite(b + 2)),
        ];
        let pick = rules
            .iter()
            .find_map(|&(applies, e)| if applies { e } else { None })
            .or_else(|| right(b).or(left(b + 1)).or(right(b + 1)));
        if let Some(e) = pick {
            chosen.insert(e);
        }
    }
    GuardSet { guards: chosen.into_iter().map(|index| Guard::Arc { index }).collect(), mode: GuardMode::EdgeGuards }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{bulging_arc, verify_guard_set, ArcKind, Point};

    fn poly(pts: &[[f64; 2]], bulges: &[f64]) -> PiecewiseConvexPolygon {
        let n = pts.len();
        let verts = pts.iter().map(|p| Point::rounded(p[0], p[1], 1_000_000)).collect::<Vec<_>>();
        let arcs = (0..n)
            .map(|i| {
                if bulges[i] == 0.0 {
                    ArcKind::Segment
                } else {
                    bulging_arc(verts[i].to_f64(), verts[(i + 1) % n].to_f64(), bulges[i])
                }
            })
            .collect();
        PiecewiseConvexPolygon::new(verts, arcs).unwrap()
    }

    fn hexagon() -> PiecewiseConvexPolygon {
        poly(&[[0.0, 0.0], [2.0, -1.0], [4.0, 0.0], [4.0, 2.0], [2.0, 3.0], [0.0, 2.0]], &[0.0; 6])
    }

    /// Nine vertices with upper vertices at sorted positions 1, 2, 3, 7, 9,
    /// the leftmost point inside the arc from the first upper vertex to the
    /// first lower vertex.
    fn nine() -> PiecewiseConvexPolygon {
        let lower = [[4.0, 0.0], [5.0, -0.2], [6.0, -0.2], [8.0, 0.0]];
        let upper = [[9.0, 2.0], [7.0, 2.3], [3.0, 2.4], [2.0, 2.3], [1.0, 2.0]];
        let pts: Vec<[f64; 2]> = lower.iter().chain(upper.iter()).copied().collect();
        let mut b = vec![0.0; 9];
        b[8] = 0.4;
        poly(&pts, &b)
    }

    fn lens() -> PiecewiseConvexPolygon {
        poly(&[[0.0, 0.0], [2.0, 0.0]], &[0.3, 0.3])
    }

    #[test]
    fn convex_polygon_is_monotone_with_two_chains() {
        let d = decompose(&hexagon()).unwrap();
        assert_eq!(d.sigmas(), vec![0, -1, 1, -1, 1, -1, 1, 0]);
    }

    #[test]
    fn figure_topology_gives_expected_sigmas() {
        let p = nine();
        assert!(is_x_monotone(&p));
        let d = decompose(&p).unwrap();
        assert_eq!(d.sigmas(), vec![0, 1, 1, 1, -1, -1, -1, 1, -1, 1, 0]);
        assert!(d.points[0].point[0] < 1.0);
        assert_eq!(d.points[0].vertex, None);
    }

    #[test]
    fn exactly_two_zero_indices() {
        for p in [hexagon(), nine(), lens()] {
            let d = decompose(&p).unwrap();
            assert_eq!(d.sigmas().iter().filter(|&&s| s == 0).count(), 2);
            assert_eq!(d.points.len(), p.n() + 2);
        }
    }

    #[test]
    fn sorted_points_are_nondecreasing_in_x() {
        let d = decompose(&nine()).unwrap();
        assert!(d.points.windows(2).all(|w| w[0].point[0] <= w[1].point[0]));
    }

    #[test]
    fn opposite_edges_lie_on_the_other_chain() {
        let p = nine();
        let d = decompose(&p).unwrap();
        for sp in &d.points[1..=p.n()] {
            let e = sp.opposite_edge.unwrap();
            let on_lower = (0..4).contains(&e) || (e == 8 && sp.point[0] > 0.0);
            assert_eq!(sp.sigma == 1, on_lower, "vertex {:?} opposite {e}", sp.vertex);
        }
    }

    #[test]
    fn bent_back_polygon_is_not_monotone() {
        let p = poly(&[[0.0, 0.0], [4.0, 0.0], [4.0, 4.0], [2.0, 1.0], [0.0, 4.0]], &[0.0; 5]);
        assert!(is_x_monotone(&p));
        let c = poly(&[[0.0, 0.0], [4.0, 0.0], [1.0, 1.0], [4.0, 2.0], [0.0, 3.0]], &[0.0; 5]);
        assert!(!is_x_monotone(&c));
        assert_eq!(decompose(&c), Err(MonotoneError::NotMonotone));
        assert_eq!(monotone_edge_guards(&c), Err(MonotoneError::NotMonotone));
    }

    #[test]
    fn lens_takes_one_guard() {
        let g = monotone_edge_guards(&lens()).unwrap();
        assert_eq!(g.len(), 1);
        assert!(verify_guard_set(&lens(), &g, 30).covered);
    }

    #[test]
    fn guards_cover_fixtures_within_bound() {
        for p in [hexagon(), nine(), lens()] {
            let g = monotone_edge_guards(&p).unwrap();
            assert!(g.len() <= (p.n() + 1).div_ceil(4));
            assert!(verify_guard_set(&p, &g, 40).covered);
        }
    }

    #[test]
    fn uniform_group_takes_the_opposite_edge() {
        let mut pts: Vec<[f64; 2]> = (0..9).map(|i| [i as f64, 0.05 * ((i - 4) * (i - 4)) as f64 - 0.8]).collect();
        pts.push([1.5, 3.0]);
        let p = poly(&pts, &[0.0; 10]);
        let d = decompose(&p).unwrap();
        assert_eq!(d.sigmas(), vec![0, -1, -1, 1, -1, -1, -1, -1, -1, -1, 1, 0]);
        assert_eq!(d.points[6].opposite_edge, Some(8));
        let g = monotone_edge_guards(&p).unwrap();
        assert!(g.guards.contains(&Guard::Arc { index: 8 }));
        assert!(verify_guard_set(&p, &g, 40).covered);
    }
}
