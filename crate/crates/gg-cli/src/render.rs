//! Deterministic SVG drawings of triangulation graphs and polygons.
//!
//! The y axis points up and the view box is the bounding box grown by a 5%
//! margin on every side. Boundary pieces are solid, diagonals are dashed
//! and members of a dominating or guard set are drawn thick.

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::fmt::Write;

use guardgraph::geometry::{ArcKind, ConstrainedTriangulation, Guard, GuardSet, PiecewiseConvexPolygon};
use guardgraph::trigraph::{DominatingSet, Edge, TriangulationGraph};

const MARGIN: f64 = 0.05;
const THIN: f64 = 0.004;
const THICK: f64 = 0.016;
const DASH: f64 = 0.03;

struct Canvas {
    view: [f64; 4],
    scale: f64,
    body: String,
}

impl Canvas {
    fn new(points: &[[f64; 2]]) -> Self {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for p in points {
            x0 = x0.min(p[0]);
            y0 = y0.min(p[1]);
            x1 = x1.max(p[0]);
            y1 = y1.max(p[1]);
        }
        let scale = (x1 - x0).max(y1 - y0).max(1e-9);
        let (mx, my) = ((x1 - x0).max(1e-9) * MARGIN, (y1 - y0).max(1e-9) * MARGIN);
        Canvas { view: [x0 - mx, y0 - my, x1 + mx, y1 + my], scale, body: String::new() }
    }

    /// Screen coordinates of a point: the y axis is flipped inside the box.
    fn at(&self, p: [f64; 2]) -> String {
        format!("{:.4} {:.4}", p[0], self.view[1] + self.view[3] - p[1])
    }

    fn stroke(&self, thick: bool, dashed: bool) -> String {
        let w = if thick { THICK } else { THIN } * self.scale;
        let dash = if dashed { format!(" stroke-dasharray=\"{:.4} {:.4}\"", DASH * self.scale, DASH * self.scale) } else { String::new() };
        let class = if thick { " class=\"member\"" } else { "" };
        format!("fill=\"none\" stroke=\"black\" stroke-width=\"{w:.4}\"{dash}{class}")
    }

    fn segment(&mut self, p: [f64; 2], q: [f64; 2], thick: bool, dashed: bool) {
        let s = self.stroke(thick, dashed);
        let _ = writeln!(self.body, "<path d=\"M {} L {}\" {s}/>", self.at(p), self.at(q));
    }

    /// A counterclockwise arc of less than half a circle; the flip of the y
    /// axis turns it clockwise on screen.
    fn arc(&mut self, p: [f64; 2], q: [f64; 2], r: f64, thick: bool) {
        let s = self.stroke(thick, false);
        let _ = writeln!(self.body, "<path d=\"M {} A {r:.4} {r:.4} 0 0 1 {}\" {s}/>", self.at(p), self.at(q));
    }

    fn dot(&mut self, p: [f64; 2], label: usize) {
        let r = THICK * self.scale;
        let _ = writeln!(self.body, "<circle cx=\"{}\" r=\"{r:.4}\"/>", self.at(p).replacen(' ', "\" cy=\"", 1));
        let size = 4.0 * THICK * self.scale;
        let pos = self.at([p[0] + r, p[1] + r]).replacen(' ', "\" y=\"", 1);
        let _ = writeln!(self.body, "<text x=\"{pos}\" font-size=\"{size:.4}\">{label}</text>");
    }

    fn finish(self) -> String {
        let [x0, y0, x1, y1] = self.view;
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x0:.4} {y0:.4} {:.4} {:.4}\">\n{}</svg>\n",
            x1 - x0,
            y1 - y0,
            self.body
        )
    }
}

/// A triangulation graph drawn on a regular convex polygon, with the
/// members of `set` thick.
pub fn graph_svg(t: &TriangulationGraph, set: Option<&DominatingSet>) -> String {
    let n = t.n();
    let pos: Vec<[f64; 2]> =
        (0..n).map(|i| TAU * i as f64 / n as f64 - TAU / 4.0).map(|a| [a.cos(), a.sin()]).collect();
    let members: BTreeSet<Edge> = set.map(|s| s.members.clone()).unwrap_or_default();
    let mut c = Canvas::new(&pos);
    for (a, b) in t.boundary_edges() {
        c.segment(pos[a], pos[b], members.contains(&(a.min(b), a.max(b))), false);
    }
    for &(a, b) in t.diagonals() {
        c.segment(pos[a], pos[b], members.contains(&(a, b)), true);
    }
    for (i, &p) in pos.iter().enumerate() {
        c.dot(p, i);
    }
    c.finish()
}

/// A polygon with the diagonals of its constrained triangulation dashed
/// and the guards of `guards` thick.
pub fn polygon_svg(p: &PiecewiseConvexPolygon, ct: Option<&ConstrainedTriangulation>, guards: Option<&GuardSet>) -> String {
    let n = p.n();
    let v: Vec<[f64; 2]> = p.vertices().iter().map(|x| x.to_f64()).collect();
    let mut extent = v.clone();
    for (i, a) in p.arcs().iter().enumerate() {
        if let (ArcKind::Circular { center, .. }, Some(r)) = (a, p.arc(i).radius()) {
            let c = center.to_f64();
            let mid = [(v[i][0] + v[(i + 1) % n][0]) / 2.0 - c[0], (v[i][1] + v[(i + 1) % n][1]) / 2.0 - c[1]];
            let len = mid[0].hypot(mid[1]).max(1e-12);
            extent.push([c[0] + r * mid[0] / len, c[1] + r * mid[1] / len]);
        }
    }
    let mut c = Canvas::new(&extent);
    let guards = guards.map(|g| g.guards.as_slice()).unwrap_or_default();
    let arc_guarded = |i: usize| guards.contains(&Guard::Arc { index: i });
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        match p.arc(i).radius() {
            Some(r) => c.arc(a, b, r, arc_guarded(i)),
            None => c.segment(a, b, arc_guarded(i), false),
        }
    }
    let diagonal_guards: BTreeSet<Edge> = guards
        .iter()
        .filter_map(|g| match *g {
            Guard::Diagonal { a, b } => Some((a.min(b), a.max(b))),
            Guard::Arc { .. } => None,
        })
        .collect();
    if let Some(ct) = ct {
        for &(a, b) in ct.graph.diagonals() {
            if !diagonal_guards.contains(&(a, b)) {
                c.segment(v[a], v[b], false, true);
            }
        }
    }
    for &(a, b) in &diagonal_guards {
        c.segment(v[a], v[b], true, true);
    }
    for (i, &x) in v.iter().enumerate() {
        c.dot(x, i);
    }
    c.finish()
}
