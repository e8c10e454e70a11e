//! Generators for the lower-bound families: triangulation graphs that need
//! many diagonals or edges to 2-dominate, and polygons that need many
//! guards.
//!
//! Every graph is a chain of small gadgets glued along chords to a central
//! polygon, and the central polygon is fan-triangulated from vertex 0.
//! Polygon vertices lie on a grid of spacing `1e-6` and arc centres on a
//! grid of spacing `1e-12`.

use std::f64::consts::TAU;

use num_rational::BigRational;
use thiserror::Error;

use crate::geometry::{bulging_arc, ArcKind, GeometryError, PiecewiseConvexPolygon, Point};
use crate::trigraph::{build_from_diagonals, edge, Edge, GraphError, TriangulationGraph};

/// Grid denominator for generated polygon vertices.
const VERTEX_GRID: i64 = 1_000_000;

/// Circle radius of the spike and fan polygons.
const RADIUS: f64 = 10.0;

/// Errors raised by the generators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LowerBoundError {
    #[error("parameter m = {0} is too small")]
    MTooSmall(usize),
    #[error("need at least 3 spikes, got {0}")]
    KTooSmall(usize),
    #[error("need at least 3 vertices, got {0}")]
    NTooSmall(usize),
    #[error("unsupported variant {0}")]
    BadVariant(usize),
    #[error("unsupported residue {0}")]
    BadResidue(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Diagonals of a gadget whose boundary path is `path[0], ..., path[L]`,
/// closed by the chord `path[0] path[L]`: the zigzag `path[1] path[L]`,
/// `path[1] path[L-1]`, `path[2] path[L-1]`, ...
fn zigzag(path: &[usize]) -> Vec<Edge> {
    let (mut a, mut b) = (1, path.len() - 1);
    let mut out = Vec::new();
    let mut step_b = true;
    while b - a >= 2 {
        out.push(edge(path[a], path[b]));
        if step_b {
            b -= 1;
        } else {
            a += 1;
        }
        step_b = !step_b;
    }
    out
}

/// Chords joining consecutive gadget endpoints plus the fan of the central
/// polygon from its first vertex. `hubs` lists the gadget endpoints in
/// boundary order; the last one is joined back to the first.
fn central(hubs: &[usize], n: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    for (i, &h) in hubs.iter().enumerate() {
        let next = hubs[(i + 1) % hubs.len()];
        if (h + 1) % n != next {
            out.push(edge(h, next));
        }
        if i >= 2 && i + 1 < hubs.len() {
            out.push(edge(hubs[0], h));
        }
    }
    if hubs.len() >= 4 {
        out.push(edge(hubs[0], hubs[hubs.len() - 2]));
    }
    out
}

fn finish(n: usize, mut diagonals: Vec<Edge>) -> Result<TriangulationGraph, LowerBoundError> {
    diagonals.retain(|&(a, b)| b - a >= 2 && !(a == 0 && b == n - 1));
    diagonals.sort_unstable();
    diagonals.dedup();
    Ok(build_from_diagonals(n, &diagonals)?)
}

/// The graph `T_variant` on `n = 3m + variant - 1` vertices that needs
/// `floor((n + 1) / 3)` diagonals to 2-dominate.
///
/// Quadrilaterals `v_{3i} v_{3i+1} v_{3i+2} v_{3i+3}` with diagonal
/// `v_{3i} v_{3i+2}` hang off a central polygon. In `T_1` the last
/// quadrilateral closes at `v_0`; in `T_2` the edge `v_{3m} v_0` closes the
/// boundary; in `T_3` the last quadrilateral is replaced by the hexagon
/// `v_0 v_{3m-3} v_{3m-2} v_{3m-1} v_{3m} v_{3m+1}`, fan-triangulated from
/// `v_{3m-3}`.
///
/// # Errors
/// [`LowerBoundError::MTooSmall`] if `m < 2`, [`LowerBoundError::BadVariant`]
/// unless `variant` is 1, 2 or 3.
pub fn gen_diag_lb(m: usize, variant: usize) -> Result<TriangulationGraph, LowerBoundError> {
    if m < 2 {
        return Err(LowerBoundError::MTooSmall(m));
    }
    if !(1..=3).contains(&variant) {
        return Err(LowerBoundError::BadVariant(variant));
    }
    let n = 3 * m + variant - 1;
    let quads = if variant == 3 { m - 1 } else { m };
    let mut diagonals: Vec<Edge> = (0..quads).map(|i| edge(3 * i, 3 * i + 2)).collect();
    let mut hubs: Vec<usize> = (0..quads).map(|i| 3 * i).collect();
    match variant {
        1 => {}
        2 => hubs.push(3 * m),
        _ => {
            let b = 3 * m - 3;
            hubs.push(b);
            diagonals.extend([edge(b, b + 2), edge(b, b + 3), edge(b, b + 4)]);
        }
    }
    diagonals.extend(central(&hubs, n));
    finish(n, diagonals)
}

/// Boundary length of the terminal gadget for each residue.
fn terminal_length(residue: usize) -> Option<usize> {
    match residue {
        0 => Some(5),
        1 => Some(6),
        3 => Some(8),
        4 => Some(9),
        _ => None,
    }
}

/// The graph `Gamma` that needs `floor((2n + 1) / 5)` boundary edges to
/// 2-dominate: `m` hexagons followed by a terminal hexagon, heptagon,
/// enneagon or decagon for residue 0, 1, 3 or 4, so `n = 5(m + 1) + residue`.
/// Each gadget is zigzag-triangulated and closed by a chord to the central
/// polygon.
///
/// # Errors
/// [`LowerBoundError::MTooSmall`] if `m < 1`, [`LowerBoundError::BadResidue`]
/// for residues other than 0, 1, 3, 4.
pub fn gen_edge_lb(m: usize, residue: usize) -> Result<TriangulationGraph, LowerBoundError> {
    if m < 1 {
        return Err(LowerBoundError::MTooSmall(m));
    }
    let last = terminal_length(residue).ok_or(LowerBoundError::BadResidue(residue))?;
    let n = 5 * m + last;
    let mut diagonals = Vec::new();
    let mut hubs = Vec::new();
    let mut start = 0;
    for len in std::iter::repeat_n(5, m).chain([last]) {
        let path: Vec<usize> = (0..=len).map(|k| (start + k) % n).collect();
        diagonals.extend(zigzag(&path));
        hubs.push(start);
        start += len;
    }
    diagonals.extend(central(&hubs, n));
    finish(n, diagonals)
}

/// Internal diagonals of the seven-vertex graph `Gamma_7`. They contain the
/// triangle `v_0 v_2 v_5`.
pub const GAMMA7_DIAGONALS: [Edge; 4] = [(0, 2), (0, 5), (2, 4), (2, 5)];

/// The graph `Gamma_{5m+2}`: `Gamma_7` for `m = 1`, and for larger `m` a
/// fresh copy of `Gamma_7` glued to `Gamma_{5m-3}` by identifying the edge
/// `v_0 v_1` of the latter with the edge `v_6 v_0` of the copy. The
/// identified edge becomes a diagonal.
///
/// # Errors
/// [`LowerBoundError::MTooSmall`] if `m < 1`.
pub fn gen_edge_lb_glued(m: usize) -> Result<TriangulationGraph, LowerBoundError> {
    if m < 1 {
        return Err(LowerBoundError::MTooSmall(m));
    }
    let mut n = 7;
    let mut diagonals: Vec<Edge> = GAMMA7_DIAGONALS.to_vec();
    for _ in 1..m {
        let relabel = |v: usize| if v == 0 { 0 } else { v + 5 };
        let mut next: Vec<Edge> = GAMMA7_DIAGONALS.to_vec();
        next.extend(diagonals.iter().map(|&(a, b)| edge(relabel(a), relabel(b))));
        next.push((0, 6));
        diagonals = next;
        n += 5;
    }
    finish(n, diagonals)
}

fn polar(r: f64, a: f64) -> Point {
    Point::rounded(r * a.cos(), r * a.sin(), VERTEX_GRID)
}

/// Builds a polygon from grid vertices, bulging each arc with a positive
/// entry of `bulges` and keeping a segment for zero entries.
fn assemble(vertices: Vec<Point>, bulges: &[f64]) -> Result<PiecewiseConvexPolygon, LowerBoundError> {
    let n = vertices.len();
    let arcs = (0..n)
        .map(|i| match bulges[i] {
            b if b > 0.0 => bulging_arc(vertices[i].to_f64(), vertices[(i + 1) % n].to_f64(), b),
            _ => ArcKind::Segment,
        })
        .collect();
    Ok(PiecewiseConvexPolygon::new(vertices, arcs)?)
}

/// One spike of angular width `2 pi / k` at angle `theta`: the base vertex
/// on the circle, the tip reached by a circular arc that overhangs the next
/// spike's base, and an inner vertex tucked under the overhang.
fn spike(theta: f64, k: usize) -> ([Point; 3], [f64; 3]) {
    let d = TAU / k as f64;
    let depth = 0.2 * RADIUS * d * d;
    let overhang = 0.6 * d;
    let inner = (0.03 * RADIUS * d * d, 0.05 * d);
    (
        [
            polar(RADIUS, theta),
            polar(RADIUS + depth, theta + d + overhang),
            polar(RADIUS + inner.0, theta + d + inner.1),
        ],
        [0.2 * d, 0.0, 0.0],
    )
}

/// The polygon of `k` spikes on a circle of radius 10, `n = 3k` vertices.
/// Each spike consists of a circular arc from its base to its tip and two
/// segments back to the next base; the room of the arc holds the next
/// base and a pocket under the tip that only guards of the same spike see.
///
/// # Errors
/// [`LowerBoundError::KTooSmall`] if `k < 3`.
pub fn gen_spike_polygon(k: usize) -> Result<PiecewiseConvexPolygon, LowerBoundError> {
    if k < 3 {
        return Err(LowerBoundError::KTooSmall(k));
    }
    let mut vertices = Vec::with_capacity(3 * k);
    let mut bulges = Vec::with_capacity(3 * k);
    for j in 0..k {
        let (v, b) = spike(TAU * j as f64 / k as f64, k);
        vertices.extend(v);
        bulges.extend(b);
    }
    assemble(vertices, &bulges)
}

/// The edge-guard lower-bound polygon on `n` vertices: `floor(n / 3)`
/// spikes as in [`gen_spike_polygon`], with the `n mod 3` remaining
/// vertices placed on the last segment of the first spike, bent slightly
/// outwards. Polygons with fewer than nine vertices are regular polygons
/// with bulging arcs.
///
/// # Errors
/// [`LowerBoundError::NTooSmall`] if `n < 3`.
pub fn gen_fan_polygon(n: usize) -> Result<PiecewiseConvexPolygon, LowerBoundError> {
    if n < 3 {
        return Err(LowerBoundError::NTooSmall(n));
    }
    if n < 9 {
        let vertices = (0..n).map(|i| polar(RADIUS, TAU * i as f64 / n as f64)).collect();
        return assemble(vertices, &vec![0.1; n]);
    }
    let k = n / 3;
    let mut vertices = Vec::with_capacity(n);
    let mut bulges = Vec::with_capacity(n);
    for j in 0..k {
        let (v, b) = spike(TAU * j as f64 / k as f64, k);
        vertices.extend(v.iter().cloned());
        bulges.extend(b);
        if j == 0 {
            let (x, p) = (v[2].to_f64(), polar(RADIUS, TAU / k as f64).to_f64());
            let extra = n % 3;
            for t in 1..=extra {
                let s = t as f64 / (extra + 1) as f64;
                let (mx, my) = (x[0] + s * (p[0] - x[0]), x[1] + s * (p[1] - x[1]));
                let norm = mx.hypot(my);
                let push = 0.02 * (p[0] - x[0]).hypot(p[1] - x[1]);
                vertices.push(Point::rounded(mx + push * mx / norm, my + push * my / norm, VERTEX_GRID));
                bulges.push(0.0);
            }
        }
    }
    assemble(vertices, &bulges)
}

/// The monotone polygon `M_1` (`variant = 1`, `n = 2m + 5`) or `M_2`
/// (`variant = 2`, `n = 2m + 4`).
///
/// Vertex `u_j` sits at `(j, 3/10)` for even `j` on the lower chain and at
/// `(j, -3/10)` for odd `j` on the upper chain, so the two chains
/// interlock. Consecutive vertices of a chain are joined by deep arcs, and
/// for every pair `u_j, u_{j+1}` the region between their arcs holds a
/// pocket `s_j` seen only by guards incident to `u_j` or `u_{j+1}`.
///
/// # Errors
/// [`LowerBoundError::BadVariant`] unless `variant` is 1 or 2.
pub fn gen_monotone_lb(variant: usize, m: usize) -> Result<PiecewiseConvexPolygon, LowerBoundError> {
    let n = match variant {
        1 => 2 * m + 5,
        2 => 2 * m + 4,
        _ => return Err(LowerBoundError::BadVariant(variant)),
    };
    let lower = (2..=n).step_by(2);
    let upper = (1..=n).rev().filter(|j| !j.is_multiple_of(2));
    let order: Vec<usize> = lower.chain(upper).collect();
    let y = |j: usize| if j.is_multiple_of(2) { (3, 10) } else { (-3, 10) };
    let vertices: Vec<Point> = order
        .iter()
        .map(|&j| {
            let (num, den) = y(j);
            Point::new(BigRational::from_integer(j.into()), BigRational::new(num.into(), den.into()))
        })
        .collect();
    let bulges: Vec<f64> = (0..n)
        .map(|i| if order[i] % 2 == order[(i + 1) % n] % 2 { 0.4 } else { 0.2 })
        .collect();
    assemble(vertices, &bulges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monotone::is_x_monotone;
    use crate::oracle::min_2dominating_set;
    use crate::trigraph::Mode;

    fn optimum(t: &TriangulationGraph, mode: Mode) -> usize {
        min_2dominating_set(t, mode).unwrap().0
    }

    #[test]
    fn diag_graphs_have_expected_sizes_and_optima() {
        for (m, v, n) in [(2, 3, 8), (3, 1, 9), (3, 2, 10), (2, 1, 6), (2, 2, 7)] {
            let t = gen_diag_lb(m, v).unwrap();
            assert_eq!(t.n(), n);
            t.check_invariants().unwrap();
            assert_eq!(optimum(&t, Mode::DiagonalAllowed), (n + 1) / 3, "m={m} variant={v}");
        }
    }

    #[test]
    fn edge_graphs_have_expected_sizes_and_optima() {
        for (m, r, n) in [(1, 0, 10), (1, 1, 11), (1, 3, 13)] {
            let t = gen_edge_lb(m, r).unwrap();
            assert_eq!(t.n(), n);
            t.check_invariants().unwrap();
            assert_eq!(optimum(&t, Mode::EdgeOnly), (2 * n + 1) / 5, "m={m} residue={r}");
        }
    }

    #[test]
    fn glued_graphs_match_the_bound() {
        for (m, want) in [(1, 3), (2, 5)] {
            let t = gen_edge_lb_glued(m).unwrap();
            assert_eq!(t.n(), 5 * m + 2);
            t.check_invariants().unwrap();
            assert_eq!(optimum(&t, Mode::EdgeOnly), want);
        }
    }

    #[test]
    fn gluing_adds_five_vertices_and_the_copy_edges() {
        let (a, b) = (gen_edge_lb_glued(2).unwrap(), gen_edge_lb_glued(3).unwrap());
        assert_eq!(b.n(), a.n() + 7 - 2);
        assert_eq!(b.diagonals().len(), a.diagonals().len() + GAMMA7_DIAGONALS.len() + 1);
        assert_eq!(b.triangles().len(), a.triangles().len() + 5);
    }

    #[test]
    fn parameters_are_checked() {
        assert_eq!(gen_diag_lb(1, 1).unwrap_err(), LowerBoundError::MTooSmall(1));
        assert_eq!(gen_diag_lb(2, 4).unwrap_err(), LowerBoundError::BadVariant(4));
        assert_eq!(gen_edge_lb(0, 0).unwrap_err(), LowerBoundError::MTooSmall(0));
        assert_eq!(gen_edge_lb(1, 2).unwrap_err(), LowerBoundError::BadResidue(2));
        assert_eq!(gen_edge_lb_glued(0).unwrap_err(), LowerBoundError::MTooSmall(0));
        assert_eq!(gen_spike_polygon(2).unwrap_err(), LowerBoundError::KTooSmall(2));
        assert_eq!(gen_fan_polygon(2).unwrap_err(), LowerBoundError::NTooSmall(2));
        assert_eq!(gen_monotone_lb(3, 0).unwrap_err(), LowerBoundError::BadVariant(3));
    }

    #[test]
    fn spike_polygons_are_valid() {
        for k in 3..=8 {
            assert_eq!(gen_spike_polygon(k).unwrap().n(), 3 * k);
        }
        assert!(!is_x_monotone(&gen_spike_polygon(5).unwrap()));
    }

    #[test]
    fn fan_polygons_are_valid() {
        for n in 3..=20 {
            assert_eq!(gen_fan_polygon(n).unwrap().n(), n);
        }
    }

    #[test]
    fn monotone_polygons_have_the_stated_sizes() {
        for m in 0..=4 {
            let p1 = gen_monotone_lb(1, m).unwrap();
            let p2 = gen_monotone_lb(2, m).unwrap();
            assert_eq!((p1.n(), p2.n()), (2 * m + 5, 2 * m + 4));
            assert!(is_x_monotone(&p1) && is_x_monotone(&p2));
        }
    }
}
