//! Floating-point view of a polygon: arc intersections, point location
//! and segment visibility.

use std::f64::consts::{PI, TAU};

use super::polygon::{orient, strictly_between, ArcKind, PiecewiseConvexPolygon, Point, EPS};
use super::GeometryError;

/// Parameter tolerance for intersections near arc endpoints.
const PARAM_EPS: f64 = 1e-10;

/// Sub-segments shorter than this (in segment parameter) are not probed.
const GAP_EPS: f64 = 1e-9;

/// A circle with the angular range of an arc on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub c: [f64; 2],
    pub r: f64,
    /// Angle of the first endpoint.
    pub a0: f64,
    /// Counterclockwise angular extent, in `(0, pi)`.
    pub sweep: f64,
}

/// An arc in floating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatArc {
    pub p: [f64; 2],
    pub q: [f64; 2],
    pub circle: Option<Circle>,
    bbox: [f64; 4],
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn lerp(a: [f64; 2], b: [f64; 2], t: f64) -> [f64; 2] {
    [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

impl FlatArc {
    /// The floating-point form of arc `i` of `poly`.
    pub fn new(poly: &PiecewiseConvexPolygon, i: usize) -> Self {
        let arc = poly.arc(i);
        let (p, q) = (arc.p.to_f64(), arc.q.to_f64());
        let circle = match &arc.kind {
            ArcKind::Segment => None,
            ArcKind::Circular { center, .. } => {
                let c = center.to_f64();
                let r = dist(p, c);
                let a0 = (p[1] - c[1]).atan2(p[0] - c[0]);
                let a1 = (q[1] - c[1]).atan2(q[0] - c[0]);
                Some(Circle { c, r, a0, sweep: (a1 - a0).rem_euclid(TAU) })
            }
        };
        let bbox = match circle {
            None => [p[0].min(q[0]), p[1].min(q[1]), p[0].max(q[0]), p[1].max(q[1])],
            Some(Circle { c, r, .. }) => [c[0] - r, c[1] - r, c[0] + r, c[1] + r],
        };
        FlatArc { p, q, circle, bbox }
    }

    /// The point at parameter `s` in `[0, 1]`.
    pub fn at(&self, s: f64) -> [f64; 2] {
        match self.circle {
            None => lerp(self.p, self.q, s),
            Some(Circle { c, r, a0, sweep }) => {
                let a = a0 + s * sweep;
                [c[0] + r * a.cos(), c[1] + r * a.sin()]
            }
        }
    }

    /// Arc parameter of a point on the supporting circle, possibly outside
    /// `[0, 1]`.
    fn circle_param(c: &Circle, x: [f64; 2]) -> f64 {
        let a = (x[1] - c.c[1]).atan2(x[0] - c.c[0]);
        let mut d = (a - c.a0).rem_euclid(TAU);
        if d > c.sweep / 2.0 + PI {
            d -= TAU;
        }
        d / c.sweep
    }

    /// Unit normal pointing into the polygon at parameter `s`.
    pub fn inward_normal(&self, s: f64) -> [f64; 2] {
        match self.circle {
            None => {
                let d = sub(self.q, self.p);
                let l = d[0].hypot(d[1]);
                [-d[1] / l, d[0] / l]
            }
            Some(c) => {
                let x = self.at(s);
                let d = sub(c.c, x);
                let l = d[0].hypot(d[1]);
                [d[0] / l, d[1] / l]
            }
        }
    }

    /// Distance from `x` to the arc.
    pub fn distance(&self, x: [f64; 2]) -> f64 {
        match self.circle {
            None => {
                let d = sub(self.q, self.p);
                let t = (dot(sub(x, self.p), d) / dot(d, d)).clamp(0.0, 1.0);
                dist(x, lerp(self.p, self.q, t))
            }
            Some(c) => {
                let s = Self::circle_param(&c, x);
                if (0.0..=1.0).contains(&s) {
                    (dist(x, c.c) - c.r).abs()
                } else {
                    dist(x, self.p).min(dist(x, self.q))
                }
            }
        }
    }

    /// Intersections with the segment `ab` as `(t, s)` pairs: `t` along
    /// the segment, `s` along the arc. A collinear overlap with a straight
    /// arc reports the overlap's two ends.
    pub fn intersect_segment(&self, a: [f64; 2], b: [f64; 2]) -> Vec<(f64, f64)> {
        let (lo, hi) = ([a[0].min(b[0]), a[1].min(b[1])], [a[0].max(b[0]), a[1].max(b[1])]);
        let pad = EPS;
        if hi[0] < self.bbox[0] - pad || lo[0] > self.bbox[2] + pad || hi[1] < self.bbox[1] - pad || lo[1] > self.bbox[3] + pad {
            return Vec::new();
        }
        let d = sub(b, a);
        match self.circle {
            None => {
                let e = sub(self.q, self.p);
                let den = cross(d, e);
                let w = sub(self.p, a);
                let scale = d[0].hypot(d[1]) * e[0].hypot(e[1]);
                if den.abs() <= 1e-12 * scale {
                    if cross(w, d).abs() > EPS * d[0].hypot(d[1]) {
                        return Vec::new();
                    }
                    let dd = dot(d, d);
                    let tp = dot(sub(self.p, a), d) / dd;
                    let tq = dot(sub(self.q, a), d) / dd;
                    let (t0, t1) = (tp.min(tq).max(0.0), tp.max(tq).min(1.0));
                    if t0 > t1 + PARAM_EPS {
                        return Vec::new();
                    }
                    let s_of = |t: f64| {
                        let x = lerp(a, b, t);
                        dot(sub(x, self.p), e) / dot(e, e)
                    };
                    return vec![(t0, s_of(t0)), (t1, s_of(t1))];
                }
                let t = cross(w, e) / den;
                let s = cross(w, d) / den;
                if (-PARAM_EPS..=1.0 + PARAM_EPS).contains(&t) && (-PARAM_EPS..=1.0 + PARAM_EPS).contains(&s) {
                    vec![(t.clamp(0.0, 1.0), s.clamp(0.0, 1.0))]
                } else {
                    Vec::new()
                }
            }
            Some(c) => {
                let f = sub(a, c.c);
                let qa = dot(d, d);
                let qb = 2.0 * dot(f, d);
                let qc = dot(f, f) - c.r * c.r;
                let disc = qb * qb - 4.0 * qa * qc;
                if disc < 0.0 || qa == 0.0 {
                    return Vec::new();
                }
                let sq = disc.sqrt();
                let mut out = Vec::with_capacity(2);
                for t in [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)] {
                    if !(-PARAM_EPS..=1.0 + PARAM_EPS).contains(&t) {
                        continue;
                    }
                    let s = Self::circle_param(&c, lerp(a, b, t));
                    if (-PARAM_EPS..=1.0 + PARAM_EPS).contains(&s) {
                        out.push((t.clamp(0.0, 1.0), s.clamp(0.0, 1.0)));
                    }
                }
                out
            }
        }
    }

    /// Intersection points with another arc.
    fn intersect_arc(&self, other: &FlatArc) -> Vec<[f64; 2]> {
        match (self.circle, other.circle) {
            (None, _) => other.intersect_segment(self.p, self.q).into_iter().map(|(t, _)| lerp(self.p, self.q, t)).collect(),
            (_, None) => self.intersect_segment(other.p, other.q).into_iter().map(|(t, _)| lerp(other.p, other.q, t)).collect(),
            (Some(c1), Some(c2)) => {
                let d = dist(c1.c, c2.c);
                if d < 1e-12 {
                    if (c1.r - c2.r).abs() > EPS {
                        return Vec::new();
                    }
                    let mut out = Vec::new();
                    for x in [other.p, other.q] {
                        let s = FlatArc::circle_param(&c1, x);
                        if (-PARAM_EPS..=1.0 + PARAM_EPS).contains(&s) {
                            out.push(x);
                        }
                    }
                    for x in [self.p, self.q] {
                        let s = FlatArc::circle_param(&c2, x);
                        if (-PARAM_EPS..=1.0 + PARAM_EPS).contains(&s) {
                            out.push(x);
                        }
                    }
                    if out.len() > 2 {
                        out.push(self.at(0.5));
                    }
                    return out;
                }
                if d > c1.r + c2.r + EPS || d < (c1.r - c2.r).abs() - EPS {
                    return Vec::new();
                }
                let a = (c1.r * c1.r - c2.r * c2.r + d * d) / (2.0 * d);
                let h = (c1.r * c1.r - a * a).max(0.0).sqrt();
                let u = [(c2.c[0] - c1.c[0]) / d, (c2.c[1] - c1.c[1]) / d];
                let m = [c1.c[0] + a * u[0], c1.c[1] + a * u[1]];
                let pts = [[m[0] - h * u[1], m[1] + h * u[0]], [m[0] + h * u[1], m[1] - h * u[0]]];
                pts.into_iter()
                    .filter(|&x| {
                        let s1 = FlatArc::circle_param(&c1, x);
                        let s2 = FlatArc::circle_param(&c2, x);
                        (-PARAM_EPS..=1.0 + PARAM_EPS).contains(&s1) && (-PARAM_EPS..=1.0 + PARAM_EPS).contains(&s2)
                    })
                    .collect()
            }
        }
    }
}

/// Where a point lies relative to a polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Floating-point view of a polygon used by the sampled predicates.
#[derive(Debug, Clone)]
pub struct FlatPolygon {
    pub arcs: Vec<FlatArc>,
    pub bbox: [f64; 4],
    ray: [f64; 2],
}

impl FlatPolygon {
    /// Converts every arc to floating point.
    pub fn new(poly: &PiecewiseConvexPolygon) -> Self {
        let arcs: Vec<FlatArc> = (0..poly.n()).map(|i| FlatArc::new(poly, i)).collect();
        let mut bbox = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
        for a in &arcs {
            for s in 0..=32 {
                let x = a.at(s as f64 / 32.0);
                bbox = [bbox[0].min(x[0]), bbox[1].min(x[1]), bbox[2].max(x[0]), bbox[3].max(x[1])];
            }
        }
        let diam = (bbox[2] - bbox[0]).hypot(bbox[3] - bbox[1]);
        let angle: f64 = 0.587_785_252_292_473;
        FlatPolygon { arcs, bbox, ray: [4.0 * diam * angle.cos(), 4.0 * diam * angle.sin()] }
    }

    /// Distance from `x` to the boundary.
    pub fn boundary_distance(&self, x: [f64; 2]) -> f64 {
        self.arcs.iter().map(|a| a.distance(x)).fold(f64::INFINITY, f64::min)
    }

    /// Locates `x`, reporting `Boundary` within `EPS` of an arc.
    pub fn locate(&self, x: [f64; 2]) -> Location {
        if self.boundary_distance(x) <= EPS {
            return Location::Boundary;
        }
        let far = [x[0] + self.ray[0], x[1] + self.ray[1]];
        let mut crossings = 0;
        for a in &self.arcs {
            for (_, s) in a.intersect_segment(x, far) {
                if s < 1.0 - PARAM_EPS {
                    crossings += 1;
                }
            }
        }
        if crossings % 2 == 1 {
            Location::Inside
        } else {
            Location::Outside
        }
    }

    /// Whether the closed segment `pq` stays in the closure of the polygon.
    /// Symmetric in `p` and `q`.
    pub fn visible(&self, p: [f64; 2], q: [f64; 2]) -> bool {
        let (a, b) = if (p[0], p[1]) <= (q[0], q[1]) { (p, q) } else { (q, p) };
        let mut ts = vec![0.0, 1.0];
        for arc in &self.arcs {
            ts.extend(arc.intersect_segment(a, b).into_iter().map(|(t, _)| t));
        }
        ts.sort_by(f64::total_cmp);
        let len = dist(a, b);
        ts.windows(2).all(|w| (w[1] - w[0]) * len <= GAP_EPS || self.locate(lerp(a, b, (w[0] + w[1]) / 2.0)) != Location::Outside)
    }

    /// Whether `p` sees the point `x`, which must lie inside the polygon at
    /// distance more than `GAP_EPS` from the boundary. Agrees with
    /// [`FlatPolygon::visible`] and skips point location when the segment
    /// meets the boundary only at its ends.
    pub fn sees_inner_point(&self, p: [f64; 2], x: [f64; 2]) -> bool {
        let tol = GAP_EPS / dist(p, x).max(GAP_EPS);
        let crosses = self.arcs.iter().any(|a| a.intersect_segment(p, x).iter().any(|&(t, _)| t > tol && t < 1.0 - tol));
        !crosses || self.visible(p, x)
    }
}

/// Whether the segment `pq` lies in the closure of `poly`.
///
/// Floating-point predicate with absolute tolerance `EPS`; both points
/// must lie in the closed polygon.
pub fn is_visible(poly: &PiecewiseConvexPolygon, p: [f64; 2], q: [f64; 2]) -> Result<bool, GeometryError> {
    let flat = FlatPolygon::new(poly);
    for x in [p, q] {
        if flat.locate(x) == Location::Outside {
            return Err(GeometryError::PointOutside(x));
        }
    }
    Ok(flat.visible(p, q))
}

/// Checks that arcs meet only at shared endpoints. Straight pairs use
/// exact arithmetic; pairs involving a circle use the tolerance `EPS`.
pub(crate) fn check_simple(poly: &PiecewiseConvexPolygon) -> Result<(), GeometryError> {
    let n = poly.n();
    let flat: Vec<FlatArc> = (0..n).map(|i| FlatArc::new(poly, i)).collect();
    let v = poly.vertices();
    let err = |i: usize, j: usize| Err(GeometryError::NonSimple(format!("arcs {i} and {j} intersect")));
    for i in 0..n {
        for j in i + 1..n {
            let shared: Vec<[f64; 2]> = [i, (i + 1) % n]
                .into_iter()
                .filter(|&x| x == j || x == (j + 1) % n)
                .map(|x| v[x].to_f64())
                .collect();
            let straight = poly.arcs()[i] == ArcKind::Segment && poly.arcs()[j] == ArcKind::Segment;
            if straight {
                if segments_meet_elsewhere(&v[i], &v[(i + 1) % n], &v[j], &v[(j + 1) % n], shared.len()) {
                    return err(i, j);
                }
                continue;
            }
            let tol = 1e-7 * (1.0 + poly_scale(&flat));
            if flat[i].intersect_arc(&flat[j]).iter().any(|&x| shared.iter().all(|&s| dist(x, s) > tol)) {
                return err(i, j);
            }
        }
    }
    Ok(())
}

fn poly_scale(flat: &[FlatArc]) -> f64 {
    flat.iter().map(|a| a.p[0].abs().max(a.p[1].abs())).fold(0.0, f64::max)
}

/// Exact test for straight arcs `ab` and `cd` meeting anywhere other than
/// a shared endpoint.
fn segments_meet_elsewhere(a: &Point, b: &Point, c: &Point, d: &Point, shared: usize) -> bool {
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    if shared > 0 {
        if o1 == 0 && o2 == 0 {
            return strictly_between(a, b, c) || strictly_between(a, b, d) || strictly_between(c, d, a) || strictly_between(c, d, b)
                || (a == c && b == d)
                || (a == d && b == c);
        }
        return false;
    }
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    let on = |o: i32, p: &Point, q: &Point, x: &Point| o == 0 && (strictly_between(p, q, x) || x == p || x == q);
    on(o1, a, b, c) || on(o2, a, b, d) || on(o3, c, d, a) || on(o4, c, d, b)
}

#[cfg(test)]
mod tests {
    use super::super::polygon::bulging_arc;
    use super::*;

    fn square() -> PiecewiseConvexPolygon {
        PiecewiseConvexPolygon::straight(vec![Point::int(0, 0), Point::int(4, 0), Point::int(4, 4), Point::int(0, 4)]).unwrap()
    }

    fn notch() -> PiecewiseConvexPolygon {
        let pts = [(0, 0), (4, 0), (4, 4), (2, 1), (0, 4)];
        PiecewiseConvexPolygon::straight(pts.iter().map(|&(x, y)| Point::int(x, y)).collect()).unwrap()
    }

    #[test]
    fn locates_points() {
        let f = FlatPolygon::new(&square());
        assert_eq!(f.locate([1.0, 1.0]), Location::Inside);
        assert_eq!(f.locate([5.0, 1.0]), Location::Outside);
        assert_eq!(f.locate([4.0, 2.0]), Location::Boundary);
        assert_eq!(f.locate([0.0, 0.0]), Location::Boundary);
    }

    #[test]
    fn reflex_vertex_blocks_sight() {
        let p = notch();
        assert!(is_visible(&p, [0.2, 3.5], [0.5, 0.5]).unwrap());
        assert!(!is_visible(&p, [0.2, 3.5], [3.8, 3.5]).unwrap());
        assert!(is_visible(&p, [1.0, 1.0], [1.0, 1.0]).unwrap());
        assert!(is_visible(&p, [0.0, 0.0], [4.0, 0.0]).unwrap());
        assert!(is_visible(&p, [0.0, 4.0], [2.0, 1.0]).unwrap());
        assert_eq!(is_visible(&p, [9.0, 9.0], [1.0, 1.0]), Err(GeometryError::PointOutside([9.0, 9.0])));
    }

    #[test]
    fn arcs_bound_the_region() {
        let pts = vec![Point::int(0, 0), Point::int(4, 0), Point::int(4, 4), Point::int(0, 4)];
        let arcs = vec![bulging_arc([0.0, 0.0], [4.0, 0.0], 0.25), ArcKind::Segment, ArcKind::Segment, ArcKind::Segment];
        let p = PiecewiseConvexPolygon::new(pts, arcs).unwrap();
        let f = FlatPolygon::new(&p);
        assert_eq!(f.locate([2.0, -0.5]), Location::Inside);
        assert_eq!(f.locate([2.0, -1.0]), Location::Boundary);
        assert_eq!(f.locate([2.0, -1.1]), Location::Outside);
        assert!(f.visible([2.0, -0.9], [2.0, 3.0]));
        assert!(f.visible(f.arcs[0].at(0.3), [1.0, 3.0]));
    }

    #[test]
    fn crossing_polygon_is_rejected() {
        let pts = vec![Point::int(0, 0), Point::int(4, 0), Point::int(0, 4), Point::int(4, 4)];
        assert!(matches!(PiecewiseConvexPolygon::straight(pts), Err(GeometryError::NonSimple(_))));
        let pts = vec![Point::int(0, 0), Point::int(4, 0), Point::int(4, 1), Point::int(2, 0), Point::int(0, 1)];
        assert!(matches!(PiecewiseConvexPolygon::straight(pts), Err(GeometryError::NonSimple(_))));
    }
}
