//! Points with rational coordinates, convex arcs and piecewise-convex
//! polygons, with validation and the JSON format.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::GeometryError;

/// Absolute tolerance of the floating-point circle predicates.
pub const EPS: f64 = 1e-9;

/// A planar point with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point {
    /// A point from rational coordinates.
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Point { x, y }
    }

    /// A point from integer coordinates.
    pub fn int(x: i64, y: i64) -> Self {
        Point { x: BigRational::from_integer(x.into()), y: BigRational::from_integer(y.into()) }
    }

    /// The exact rational value of a floating-point pair.
    ///
    /// # Panics
    /// Panics on non-finite input.
    pub fn from_f64(x: f64, y: f64) -> Self {
        let r = |v: f64| BigRational::from_float(v).expect("finite coordinate");
        Point { x: r(x), y: r(y) }
    }

    /// The point on the grid of spacing `1 / denom` nearest to `(x, y)`.
    ///
    /// # Panics
    /// Panics on non-finite input or a non-positive `denom`.
    pub fn rounded(x: f64, y: f64, denom: i64) -> Self {
        assert!(denom > 0, "grid denominator must be positive");
        let r = |v: f64| {
            let k = BigInt::from_f64((v * denom as f64).round()).expect("finite coordinate");
            BigRational::new(k, denom.into())
        };
        Point { x: r(x), y: r(y) }
    }

    /// Nearest floating-point coordinates.
    pub fn to_f64(&self) -> [f64; 2] {
        [self.x.to_f64().unwrap_or(f64::NAN), self.y.to_f64().unwrap_or(f64::NAN)]
    }
}

/// Sign of the exact orientation determinant of `a, b, c`: positive for a
/// left turn, negative for a right turn, zero when collinear.
pub fn orient(a: &Point, b: &Point, c: &Point) -> i32 {
    let d = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    if d.is_positive() {
        1
    } else if d.is_negative() {
        -1
    } else {
        0
    }
}

/// Whether `p` lies strictly inside the segment `ab`, assuming collinearity.
pub fn strictly_between(a: &Point, b: &Point, p: &Point) -> bool {
    let dot = (&p.x - &a.x) * (&b.x - &a.x) + (&p.y - &a.y) * (&b.y - &a.y);
    let len = (&b.x - &a.x) * (&b.x - &a.x) + (&b.y - &a.y) * (&b.y - &a.y);
    dot.is_positive() && dot < len
}

/// Parses a decimal (`-1.25`, `3`, `2.5e-3`) or fraction (`1/3`) string.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        return (!q.is_zero()).then(|| BigRational::new(p, q));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() || !(int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())) {
        return None;
    }
    let digits = BigInt::from_str(&format!("{int}{frac}")).ok()?;
    let scale = exp - frac.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut v = BigRational::from_integer(digits);
    if scale >= 0 {
        v *= num_traits::pow(ten, scale as usize);
    } else {
        v /= num_traits::pow(ten, (-scale) as usize);
    }
    Some(if neg { -v } else { v })
}

/// Formats a rational as a terminating decimal when possible, else as
/// `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    let mut den = r.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let (mut a, mut b) = (0usize, 0usize);
    while (&den % &two).is_zero() {
        den /= &two;
        a += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        b += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let k = a.max(b);
    if k == 0 {
        return r.numer().to_string();
    }
    let scaled = r * BigRational::from_integer(num_traits::pow(BigInt::from(10), k));
    let digits = scaled.to_integer().abs().to_string();
    let digits = format!("{digits:0>width$}", width = k + 1);
    let (int, frac) = digits.split_at(digits.len() - k);
    let frac = frac.trim_end_matches('0');
    let sign = if r.is_negative() { "-" } else { "" };
    if frac.is_empty() {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Coord {
    Str(String),
    Num(serde_json::Number),
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [format_rational(&self.x), format_rational(&self.y)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[Coord; 2]>::deserialize(d)?;
        let conv = |c: Coord| {
            let s = match c {
                Coord::Str(s) => s,
                Coord::Num(n) => n.to_string(),
            };
            parse_rational(&s).ok_or_else(|| serde::de::Error::custom(format!("bad coordinate {s:?}")))
        };
        Ok(Point { x: conv(x)?, y: conv(y)? })
    }
}

/// Direction of travel around the circle when walking an arc from its
/// first to its second endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcOrientation {
    Ccw,
    Cw,
}

/// The shape of the boundary piece between two consecutive vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ArcKind {
    Segment,
    Circular { center: Point, orientation: ArcOrientation },
}

/// A convex arc with its endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexArc {
    pub kind: ArcKind,
    pub p: Point,
    pub q: Point,
}

impl ConvexArc {
    /// Radius of a circular arc, `None` for a segment.
    pub fn radius(&self) -> Option<f64> {
        match &self.kind {
            ArcKind::Segment => None,
            ArcKind::Circular { center, .. } => {
                let (c, p) = (center.to_f64(), self.p.to_f64());
                Some((p[0] - c[0]).hypot(p[1] - c[1]))
            }
        }
    }
}

/// A piecewise-convex polygon: vertices in counterclockwise order, with
/// `arcs[i]` joining `vertices[i]` to `vertices[(i + 1) % n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiecewiseConvexPolygon {
    vertices: Vec<Point>,
    arcs: Vec<ArcKind>,
}

#[derive(Deserialize)]
struct PolygonJson {
    vertices: Vec<Point>,
    arcs: Vec<ArcKind>,
}

impl<'de> Deserialize<'de> for PiecewiseConvexPolygon {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolygonJson::deserialize(d)?;
        PiecewiseConvexPolygon::new(raw.vertices, raw.arcs).map_err(serde::de::Error::custom)
    }
}

impl PiecewiseConvexPolygon {
    /// Validates and builds a polygon.
    ///
    /// Checks: at least two distinct vertices and one arc per vertex;
    /// circular arcs have equidistant endpoints, turn counterclockwise and
    /// span less than a half circle (so they bulge outwards and the polygon
    /// is locally convex); arcs meet only at shared endpoints; the enclosed
    /// area is positive.
    pub fn new(vertices: Vec<Point>, arcs: Vec<ArcKind>) -> Result<Self, GeometryError> {
        let n = vertices.len();
        let invalid = |m: String| Err(GeometryError::InvalidPolygon(m));
        if n < 2 {
            return invalid(format!("{n} vertices, need at least 2"));
        }
        if arcs.len() != n {
            return invalid(format!("{} arcs for {n} vertices", arcs.len()));
        }
        let mut sorted: Vec<&Point> = vertices.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return invalid("repeated vertex".into());
        }
        for (i, a) in arcs.iter().enumerate() {
            if let ArcKind::Circular { center, orientation } = a {
                let (p, q) = (&vertices[i], &vertices[(i + 1) % n]);
                if *orientation != ArcOrientation::Ccw {
                    return invalid(format!("arc {i} turns clockwise and bulges inwards"));
                }
                if orient(p, q, center) <= 0 {
                    return invalid(format!("arc {i} spans at least a half circle or bulges inwards"));
                }
                let (c, pf, qf) = (center.to_f64(), p.to_f64(), q.to_f64());
                let (rp, rq) = ((pf[0] - c[0]).hypot(pf[1] - c[1]), (qf[0] - c[0]).hypot(qf[1] - c[1]));
                if (rp - rq).abs() > EPS * rp.max(1.0) {
                    return invalid(format!("arc {i} endpoints are not equidistant from the centre"));
                }
            }
        }
        let poly = PiecewiseConvexPolygon { vertices, arcs };
        if n == 2 && poly.arcs.iter().all(|a| *a == ArcKind::Segment) {
            return invalid("two straight edges enclose no area".into());
        }
        super::visibility::check_simple(&poly)?;
        if poly.signed_area() <= 0.0 {
            return invalid("vertices are not in counterclockwise order".into());
        }
        Ok(poly)
    }

    /// A polygon with straight edges only.
    pub fn straight(vertices: Vec<Point>) -> Result<Self, GeometryError> {
        let n = vertices.len();
        PiecewiseConvexPolygon::new(vertices, vec![ArcKind::Segment; n])
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// The vertices in counterclockwise order.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// The arc kinds; `arcs()[i]` joins vertex `i` to vertex `i + 1`.
    pub fn arcs(&self) -> &[ArcKind] {
        &self.arcs
    }

    /// Arc `i` with its endpoints.
    pub fn arc(&self, i: usize) -> ConvexArc {
        let n = self.n();
        ConvexArc { kind: self.arcs[i].clone(), p: self.vertices[i].clone(), q: self.vertices[(i + 1) % n].clone() }
    }

    /// Enclosed area: the chord polygon plus every circular segment.
    pub fn signed_area(&self) -> f64 {
        let n = self.n();
        let pts: Vec<[f64; 2]> = self.vertices.iter().map(Point::to_f64).collect();
        let mut area = 0.0;
        for i in 0..n {
            let (p, q) = (pts[i], pts[(i + 1) % n]);
            area += 0.5 * (p[0] * q[1] - q[0] * p[1]);
            if let ArcKind::Circular { center, .. } = &self.arcs[i] {
                let c = center.to_f64();
                let r = (p[0] - c[0]).hypot(p[1] - c[1]);
                let chord = (q[0] - p[0]).hypot(q[1] - p[1]);
                let theta = 2.0 * (chord / (2.0 * r)).clamp(-1.0, 1.0).asin();
                area += 0.5 * r * r * (theta - theta.sin());
            }
        }
        area
    }

    /// Serialises to the polygon JSON format.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("polygon serialises")
    }

    /// Parses and validates the polygon JSON format.
    pub fn from_json_str(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Grid denominator for the centres produced by [`bulging_arc`].
const CENTER_GRID: i64 = 1_000_000_000_000;

/// The circle through `p` and `q` whose arc from `p` to `q` bulges to the
/// right of the chord by `bulge` times the chord length. Used to build
/// outward-bulging arcs of counterclockwise polygons.
pub fn bulging_arc(p: [f64; 2], q: [f64; 2], bulge: f64) -> ArcKind {
    let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
    let len = dx.hypot(dy);
    let h = bulge * len;
    let half = len / 2.0;
    let offset = (half * half - h * h) / (2.0 * h);
    let (mx, my) = ((p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0);
    let (lx, ly) = (-dy / len, dx / len);
    let c = [mx + lx * offset, my + ly * offset];
    ArcKind::Circular { center: Point::rounded(c[0], c[1], CENTER_GRID), orientation: ArcOrientation::Ccw }
}
