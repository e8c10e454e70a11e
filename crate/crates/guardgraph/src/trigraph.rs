//! Triangulation graphs (maximal outerplanar graphs) of polygons.
//!
//! Vertices are labelled `0..n` in boundary order. Every edge is stored as an
//! unordered label pair normalised to `(min, max)`. The graph keeps a
//! half-edge incidence structure next to the plain diagonal and triangle
//! lists so that both walking and set queries are cheap.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An unordered vertex pair, always stored as `(min, max)`.
pub type Edge = (usize, usize);

/// Normalises a vertex pair into an [`Edge`].
#[inline]
pub fn edge(a: usize, b: usize) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Largest `n` accepted by [`enumerate_triangulations`].
pub const MAX_ENUMERATION_N: usize = 14;

/// Errors raised while building or manipulating triangulation graphs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a triangulation graph needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("expected {expected} diagonals, got {got}")]
    WrongDiagonalCount { expected: usize, got: usize },
    #[error("diagonals {0:?} and {1:?} cross")]
    CrossingDiagonals(Edge, Edge),
    #[error("diagonal {0:?} appears more than once")]
    DuplicateDiagonal(Edge),
    #[error("pair {0:?} is not a diagonal: its endpoints are equal or adjacent")]
    AdjacentPair(Edge),
    #[error("label {label} out of range for n = {n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("n = {n} exceeds the enumeration limit {max}")]
    NTooLarge { n: usize, max: usize },
    #[error("{0:?} is not a diagonal of the graph")]
    NotADiagonal(Edge),
    #[error("{0:?} is not a boundary edge of the graph")]
    NotBoundary(Edge),
    #[error("graph with {0} vertices is too small for this operation")]
    TooSmall(usize),
    #[error("{0:?} is not an edge of the graph")]
    ForeignMember(Edge),
    #[error("n = {n} is smaller than 2 * lambda = {}", 2 * lambda)]
    SeparationTooFewVertices { n: usize, lambda: usize },
    #[error("invalid lambda {0}")]
    InvalidLambda(usize),
    #[error("malformed graph JSON: {0}")]
    Parse(String),
}

/// One directed half of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfEdge {
    pub origin: usize,
    pub twin: usize,
    pub next: usize,
    /// Index of the incident triangle, `None` for the outer face.
    pub face: Option<usize>,
    pub is_boundary: bool,
    pub in_set: bool,
}

/// A triangulation graph of a convex `n`-gon.
#[derive(Clone, PartialEq, Eq)]
pub struct TriangulationGraph {
    n: usize,
    diagonals: Vec<Edge>,
    triangles: Vec<[usize; 3]>,
    half_edges: Vec<HalfEdge>,
    directed: HashMap<(usize, usize), usize>,
}

impl fmt::Debug for TriangulationGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TriangulationGraph")
            .field("n", &self.n)
            .field("diagonals", &self.diagonals)
            .finish()
    }
}

/// Serialised graph format: `{"n": .., "diagonals": [[i, j], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub diagonals: Vec<[usize; 2]>,
}

/// Whether two chords of a convex polygon cross in their interiors.
#[inline]
pub fn chords_cross(p: Edge, q: Edge) -> bool {
    let (a, b) = p;
    let (c, d) = q;
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Checks that `diagonals` form a set of pairwise non-crossing proper chords
/// of a convex `n`-gon. Runs in `O(m log m)` with a parenthesis stack.
fn check_chords(n: usize, diagonals: &[Edge]) -> Result<(), GraphError> {
    let mut seen = BTreeSet::new();
    for &(a, b) in diagonals {
        for x in [a, b] {
            if x >= n {
                return Err(GraphError::LabelOutOfRange { label: x, n });
            }
        }
        let d = edge(a, b);
        if d.0 == d.1 || d.1 - d.0 == 1 || (d.0 == 0 && d.1 == n - 1) {
            return Err(GraphError::AdjacentPair(d));
        }
        if !seen.insert(d) {
            return Err(GraphError::DuplicateDiagonal(d));
        }
    }
    let mut opening: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in &seen {
        opening[a].push(b);
        closing[b].push(a);
    }
    let mut stack: Vec<Edge> = Vec::new();
    for v in 0..n {
        // Chords ending at v must be on top, closing the innermost first.
        closing[v].sort_unstable_by(|x, y| y.cmp(x));
        for &a in &closing[v] {
            match stack.pop() {
                Some(top) if top == (a, v) => {}
                Some(top) => return Err(GraphError::CrossingDiagonals(top, (a, v))),
                None => unreachable!("every chord is opened before it is closed"),
            }
        }
        opening[v].sort_unstable_by(|x, y| y.cmp(x));
        for &b in &opening[v] {
            stack.push((v, b));
        }
    }
    Ok(())
}

impl TriangulationGraph {
    /// Builds a graph from its `n - 3` diagonals.
    pub fn from_diagonals(n: usize, diagonals: &[Edge]) -> Result<Self, GraphError> {
        build_from_diagonals(n, diagonals)
    }

    /// Vertex count.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Diagonals sorted lexicographically.
    pub fn diagonals(&self) -> &[Edge] {
        &self.diagonals
    }

    /// Triangles with vertices listed in increasing label order.
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Half-edge records.
    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    /// Boundary edges `e_i = (i, i + 1 mod n)` in index order.
    pub fn boundary_edges(&self) -> Vec<Edge> {
        (0..self.n).map(|i| edge(i, (i + 1) % self.n)).collect()
    }

    /// All `2n - 3` edges, boundary edges first.
    pub fn all_edges(&self) -> Vec<Edge> {
        let mut out = self.boundary_edges();
        out.extend_from_slice(&self.diagonals);
        out
    }

    /// Whether `{a, b}` is a boundary edge.
    #[inline]
    pub fn is_boundary(&self, a: usize, b: usize) -> bool {
        let (a, b) = edge(a, b);
        a != b && b < self.n && (b - a == 1 || (a == 0 && b == self.n - 1))
    }

    /// Whether `{a, b}` is an edge or a diagonal of the graph.
    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.directed.contains_key(&(a, b))
    }

    /// Whether `{a, b}` is a diagonal of the graph.
    #[inline]
    pub fn is_diagonal(&self, a: usize, b: usize) -> bool {
        self.has_edge(a, b) && !self.is_boundary(a, b)
    }

    /// Index of the half-edge `a -> b`.
    pub fn half_edge(&self, a: usize, b: usize) -> Option<usize> {
        self.directed.get(&(a, b)).copied()
    }

    /// Triangles incident to the edge `{a, b}`: one for a boundary edge,
    /// two for a diagonal.
    pub fn edge_triangles(&self, a: usize, b: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(2);
        for (x, y) in [(a, b), (b, a)] {
            if let Some(&h) = self.directed.get(&(x, y)) {
                if let Some(f) = self.half_edges[h].face {
                    out.push(f);
                }
            }
        }
        out
    }

    /// Apex of the triangle on the edge `{a, b}` that lies on the side of
    /// the labels strictly between `a` and `b` going forward from `a`.
    pub fn apex_towards(&self, a: usize, b: usize) -> Option<usize> {
        // The triangle containing the half-edge b -> a lies on the side of
        // a+1, ..., b-1 because triangles are oriented counterclockwise.
        let h = *self.directed.get(&(b, a))?;
        let f = self.half_edges[h].face?;
        self.triangles[f].iter().copied().find(|&x| x != a && x != b)
    }

    /// Neighbours of `v` in counterclockwise order starting at `v + 1`.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let n = self.n;
        let he = &self.half_edges;
        let mut out: Vec<usize> = Vec::new();
        let mut h = self.directed[&(v, (v + 1) % n)];
        loop {
            out.push(he[he[h].twin].origin);
            let prev = he[he[h].next].next;
            let back = he[prev].twin;
            if he[back].face.is_none() {
                out.push(he[prev].origin);
                break;
            }
            h = back;
        }
        out
    }

    /// Returns the graph as its JSON value.
    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            diagonals: self.diagonals.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    /// Serialises the graph to a JSON string.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("graph JSON serialisation cannot fail")
    }

    /// Parses and validates a graph from its JSON representation.
    pub fn from_json_str(s: &str) -> Result<Self, GraphError> {
        let raw: GraphJson = serde_json::from_str(s).map_err(|e| GraphError::Parse(e.to_string()))?;
        Self::try_from(raw)
    }

    /// Checks every structural invariant and returns the first violation.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.n;
        if n < 3 {
            return Err(format!("n = {n} < 3"));
        }
        if self.diagonals.len() != n - 3 {
            return Err(format!("{} diagonals, expected {}", self.diagonals.len(), n - 3));
        }
        if self.all_edges().len() != 2 * n - 3 {
            return Err("edge count differs from 2n - 3".into());
        }
        if self.triangles.len() != n - 2 {
            return Err(format!("{} triangles, expected {}", self.triangles.len(), n - 2));
        }
        for i in 0..self.diagonals.len() {
            for j in i + 1..self.diagonals.len() {
                if chords_cross(self.diagonals[i], self.diagonals[j]) {
                    return Err(format!("{:?} crosses {:?}", self.diagonals[i], self.diagonals[j]));
                }
            }
        }
        let mut incidence: HashMap<Edge, usize> = HashMap::new();
        for t in &self.triangles {
            if !(t[0] < t[1] && t[1] < t[2]) {
                return Err(format!("triangle {t:?} is not sorted"));
            }
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                if !self.has_edge(a, b) {
                    return Err(format!("triangle side {:?} is not an edge", (a, b)));
                }
                *incidence.entry((a, b)).or_default() += 1;
            }
        }
        for e in self.boundary_edges() {
            if incidence.get(&e).copied() != Some(1) {
                return Err(format!("boundary edge {e:?} is not in exactly one triangle"));
            }
        }
        for &d in &self.diagonals {
            if incidence.get(&d).copied() != Some(2) {
                return Err(format!("diagonal {d:?} is not in exactly two triangles"));
            }
        }
        if self.half_edges.len() != 2 * (2 * n - 3) {
            return Err("half-edge count differs from 2(2n - 3)".into());
        }
        for (i, h) in self.half_edges.iter().enumerate() {
            let t = &self.half_edges[h.twin];
            if t.twin != i || t.origin == h.origin {
                return Err(format!("half-edge {i} has an inconsistent twin"));
            }
            if h.is_boundary != self.is_boundary(h.origin, t.origin) {
                return Err(format!("half-edge {i} has a wrong boundary flag"));
            }
            if h.face.is_some() {
                let a = self.half_edges[h.next];
                let b = self.half_edges[a.next];
                if b.next != i || a.face != h.face || b.face != h.face {
                    return Err(format!("face cycle at half-edge {i} is not a triangle"));
                }
            }
        }
        Ok(())
    }

    /// Returns a copy whose `in_set` flags mark the members of `set`.
    pub fn with_marked_set(&self, set: &DominatingSet) -> Result<Self, GraphError> {
        let mut g = self.clone();
        for h in g.half_edges.iter_mut() {
            h.in_set = false;
        }
        for &(a, b) in &set.members {
            for (x, y) in [(a, b), (b, a)] {
                let h = *g.directed.get(&(x, y)).ok_or(GraphError::ForeignMember((a, b)))?;
                g.half_edges[h].in_set = true;
            }
        }
        Ok(g)
    }
}

impl TryFrom<GraphJson> for TriangulationGraph {
    type Error = GraphError;

    fn try_from(raw: GraphJson) -> Result<Self, Self::Error> {
        let diagonals: Vec<Edge> = raw.diagonals.iter().map(|p| (p[0], p[1])).collect();
        build_from_diagonals(raw.n, &diagonals)
    }
}

impl Serialize for TriangulationGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for TriangulationGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        TriangulationGraph::try_from(raw).map_err(serde::de::Error::custom)
    }
}

/// Builds a triangulation graph on `n` vertices from its diagonals.
pub fn build_from_diagonals(n: usize, diagonals: &[Edge]) -> Result<TriangulationGraph, GraphError> {
    if n < 3 {
        return Err(GraphError::TooFewVertices(n));
    }
    if diagonals.len() != n - 3 {
        return Err(GraphError::WrongDiagonalCount { expected: n - 3, got: diagonals.len() });
    }
    check_chords(n, diagonals)?;
    let mut diags: Vec<Edge> = diagonals.iter().map(|&(a, b)| edge(a, b)).collect();
    diags.sort_unstable();

    // Neighbours of every vertex sorted by counterclockwise offset; each pair
    // of consecutive neighbours spans one triangle.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let j = (i + 1) % n;
        adj[i].push(j);
        adj[j].push(i);
    }
    for &(a, b) in &diags {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut triangles = Vec::with_capacity(n - 2);
    for (v, nb) in adj.iter_mut().enumerate() {
        nb.sort_unstable_by_key(|&u| (u + n - v) % n);
        for w in nb.windows(2) {
            let mut t = [v, w[0], w[1]];
            t.sort_unstable();
            if t[0] == v {
                triangles.push(t);
            }
        }
    }
    triangles.sort_unstable();
    debug_assert_eq!(triangles.len(), n - 2);

    let mut half_edges: Vec<HalfEdge> = Vec::with_capacity(2 * (2 * n - 3));
    let mut directed: HashMap<(usize, usize), usize> = HashMap::with_capacity(2 * (2 * n - 3));
    let is_boundary = |a: usize, b: usize| {
        let (a, b) = edge(a, b);
        b - a == 1 || (a == 0 && b == n - 1)
    };
    for (f, t) in triangles.iter().enumerate() {
        let base = half_edges.len();
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            half_edges.push(HalfEdge {
                origin: a,
                twin: usize::MAX,
                next: base + (k + 1) % 3,
                face: Some(f),
                is_boundary: is_boundary(a, b),
                in_set: false,
            });
            directed.insert((a, b), base + k);
        }
    }
    // Outer face: the clockwise cycle n-1 -> n-2 -> ... -> 0 -> n-1.
    let outer_base = half_edges.len();
    for i in 0..n {
        let a = (i + 1) % n;
        half_edges.push(HalfEdge {
            origin: a,
            twin: usize::MAX,
            next: outer_base + (i + n - 1) % n,
            face: None,
            is_boundary: true,
            in_set: false,
        });
        directed.insert((a, i), outer_base + i);
    }
    for idx in 0..half_edges.len() {
        let a = half_edges[idx].origin;
        let b = half_edges[half_edges[idx].next].origin;
        let b = if half_edges[idx].face.is_none() { (a + n - 1) % n } else { b };
        half_edges[idx].twin = directed[&(b, a)];
    }
    Ok(TriangulationGraph { n, diagonals: diags, triangles, half_edges, directed })
}

/// The fan triangulation with every diagonal incident to vertex 0.
pub fn fan_triangulation(n: usize) -> Result<TriangulationGraph, GraphError> {
    if n < 3 {
        return Err(GraphError::TooFewVertices(n));
    }
    let diags: Vec<Edge> = (2..n - 1).map(|j| (0, j)).collect();
    build_from_diagonals(n, &diags)
}

/// A pseudo-random triangulation, deterministic for a fixed seed.
///
/// Starting from a triangle, each step picks a uniformly random boundary
/// edge with a ChaCha8 generator and glues a new ear onto it. The final
/// boundary walk from the first vertex fixes the labels.
pub fn random_triangulation(n: usize, seed: u64) -> Result<TriangulationGraph, GraphError> {
    if n < 3 {
        return Err(GraphError::TooFewVertices(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut succ: Vec<usize> = vec![1, 2, 0];
    let mut chords: Vec<Edge> = Vec::with_capacity(n - 3);
    for v in 3..n {
        let a = rng.gen_range(0..v);
        let b = succ[a];
        chords.push((a, b));
        succ.push(b);
        succ[a] = v;
    }
    let mut label = vec![0usize; n];
    let mut cur = 0;
    for i in 0..n {
        label[cur] = i;
        cur = succ[cur];
    }
    let diags: Vec<Edge> = chords.iter().map(|&(a, b)| edge(label[a], label[b])).collect();
    build_from_diagonals(n, &diags)
}

/// Diagonal lists of every triangulation of the convex polygon with
/// vertices `0..=m`, in the order of the apex recursion over the root edge
/// `(0, m)`.
fn triangulations_of_chain(m: usize, memo: &mut HashMap<usize, Vec<Vec<Edge>>>) -> Vec<Vec<Edge>> {
    if let Some(v) = memo.get(&m) {
        return v.clone();
    }
    let out = if m <= 1 {
        vec![Vec::new()]
    } else {
        let mut out = Vec::new();
        for apex in 1..m {
            let left = triangulations_of_chain(apex, memo);
            let right = triangulations_of_chain(m - apex, memo);
            for l in &left {
                for r in &right {
                    let mut d = Vec::with_capacity(m.saturating_sub(2));
                    if apex >= 2 {
                        d.push((0, apex));
                    }
                    if m - apex >= 2 {
                        d.push((apex, m));
                    }
                    d.extend_from_slice(l);
                    d.extend(r.iter().map(|&(a, b)| (a + apex, b + apex)));
                    out.push(d);
                }
            }
        }
        out
    };
    memo.insert(m, out.clone());
    out
}

/// Diagonal lists of every triangulation of the convex `n`-gon.
pub fn enumerate_diagonal_sets(n: usize) -> Result<Vec<Vec<Edge>>, GraphError> {
    if n < 3 {
        return Err(GraphError::TooFewVertices(n));
    }
    if n > MAX_ENUMERATION_N {
        return Err(GraphError::NTooLarge { n, max: MAX_ENUMERATION_N });
    }
    let mut memo = HashMap::new();
    Ok(triangulations_of_chain(n - 1, &mut memo))
}

/// Every triangulation of the convex `n`-gon exactly once, `C(n - 2)` in
/// total.
pub fn enumerate_triangulations(
    n: usize,
) -> Result<impl Iterator<Item = TriangulationGraph>, GraphError> {
    let sets = enumerate_diagonal_sets(n)?;
    Ok(sets
        .into_iter()
        .map(move |d| build_from_diagonals(n, &d).expect("enumerated diagonals are valid")))
}

/// The Catalan number `C(m)`.
pub fn catalan(m: usize) -> u64 {
    let mut c: u64 = 1;
    for i in 0..m as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

/// The dual tree: one node per triangle, one link per diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualTree {
    /// Triangle of each node.
    pub nodes: Vec<[usize; 3]>,
    /// Links as `(node, node, diagonal)`.
    pub links: Vec<(usize, usize, Edge)>,
    /// Link indices incident to each node.
    pub adjacency: Vec<Vec<usize>>,
}

impl DualTree {
    /// Node degree.
    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    /// Whether the tree is a path.
    pub fn is_path(&self) -> bool {
        self.adjacency.iter().all(|a| a.len() <= 2)
    }

    /// Whether the links form a connected acyclic graph over the nodes.
    pub fn is_tree(&self) -> bool {
        let m = self.nodes.len();
        if m == 0 || self.links.len() + 1 != m {
            return false;
        }
        let mut seen = vec![false; m];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &l in &self.adjacency[x] {
                let (p, q, _) = self.links[l];
                let y = if p == x { q } else { p };
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == m
    }
}

/// Builds the dual tree of `t`.
pub fn dual_tree(t: &TriangulationGraph) -> DualTree {
    let nodes = t.triangles.clone();
    let mut links = Vec::with_capacity(t.diagonals.len());
    let mut adjacency = vec![Vec::new(); nodes.len()];
    for &(a, b) in &t.diagonals {
        let tris = t.edge_triangles(a, b);
        debug_assert_eq!(tris.len(), 2);
        let l = links.len();
        links.push((tris[0], tris[1], (a, b)));
        adjacency[tris[0]].push(l);
        adjacency[tris[1]].push(l);
    }
    DualTree { nodes, links, adjacency }
}

/// A diagonal together with the side it splits off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub diagonal: Edge,
    /// Number of boundary edges on the split-off side.
    pub k: usize,
    /// Labels `v_0, .., v_k` of the split-off side in boundary order, so the
    /// diagonal is `(v_0, v_k)`.
    pub side: Vec<usize>,
}

/// Labels of the side of `{a, b}` walking forward from `a` to `b`.
pub fn side_labels(n: usize, a: usize, b: usize) -> Vec<usize> {
    let k = (b + n - a) % n;
    (0..=k).map(|i| (a + i) % n).collect()
}

/// Finds a diagonal that splits off `k` boundary edges where `k` is the
/// smallest such count that is at least `lambda` over all diagonals.
///
/// Ties are broken by the smallest diagonal, then by the side starting at
/// the smaller label.
pub fn find_separating_diagonal(
    t: &TriangulationGraph,
    lambda: usize,
) -> Result<Separation, GraphError> {
    if lambda < 2 {
        return Err(GraphError::InvalidLambda(lambda));
    }
    let n = t.n;
    if n < 2 * lambda {
        return Err(GraphError::SeparationTooFewVertices { n, lambda });
    }
    let mut best: Option<(usize, Edge, bool)> = None;
    for &(a, b) in &t.diagonals {
        for forward in [true, false] {
            let k = if forward { b - a } else { n - (b - a) };
            if k < lambda {
                continue;
            }
            let better = match best {
                None => true,
                Some((bk, _, _)) => k < bk,
            };
            if better {
                best = Some((k, (a, b), forward));
            }
        }
    }
    let (k, (a, b), forward) = best.expect("a polygon with n >= 2 lambda has a separating diagonal");
    let side = if forward { side_labels(n, a, b) } else { side_labels(n, b, a) };
    Ok(Separation { diagonal: (a, b), k, side })
}

/// A graph obtained from a parent graph, with the parent label of every
/// local vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubGraph {
    pub graph: TriangulationGraph,
    /// `labels[i]` is the parent label of local vertex `i`.
    pub labels: Vec<usize>,
}

impl SubGraph {
    /// Maps a local edge to the parent graph.
    pub fn lift_edge(&self, e: Edge) -> Edge {
        edge(self.labels[e.0], self.labels[e.1])
    }
}

/// Subgraph induced by the polygon piece with vertices `side` (consecutive
/// in boundary order, first and last joined by an edge of `t`).
pub fn extract_side(t: &TriangulationGraph, side: &[usize]) -> SubGraph {
    extract_polygon(t, side)
}

/// Splits `t` along the diagonal `d = (a, b)` with `a < b`. The first piece
/// holds the labels `a..=b`, the second the labels `b, .., n - 1, 0, .., a`.
pub fn split_along(t: &TriangulationGraph, d: Edge) -> Result<(SubGraph, SubGraph), GraphError> {
    let (a, b) = edge(d.0, d.1);
    if !t.is_diagonal(a, b) {
        return Err(GraphError::NotADiagonal((a, b)));
    }
    let n = t.n;
    Ok((extract_side(t, &side_labels(n, a, b)), extract_side(t, &side_labels(n, b, a))))
}

/// Glues two pieces back together along their shared edge, using the
/// retained parent labels.
pub fn glue(first: &SubGraph, second: &SubGraph, n: usize) -> Result<TriangulationGraph, GraphError> {
    let mut diags = BTreeSet::new();
    for piece in [first, second] {
        for &e in piece.graph.diagonals() {
            diags.insert(piece.lift_edge(e));
        }
    }
    let shared = edge(first.labels[0], *first.labels.last().expect("non-empty piece"));
    let is_boundary = |e: Edge| e.1 - e.0 == 1 || (e.0 == 0 && e.1 == n - 1);
    if !is_boundary(shared) {
        diags.insert(shared);
    }
    build_from_diagonals(n, &diags.into_iter().collect::<Vec<_>>())
}

/// Correspondence between a graph and the result of contracting one of its
/// boundary edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeMap {
    /// Endpoints of the contracted edge, `v` following `u` in boundary order.
    pub u: usize,
    pub v: usize,
    /// Third vertex of the triangle on the contracted edge.
    pub w: usize,
    /// Label of the merged vertex in the contracted graph.
    pub x: usize,
    /// Contracted label of every original vertex (`u` and `v` map to `x`).
    pub old_to_new: Vec<usize>,
    /// Original label of every contracted vertex other than `x`.
    pub new_to_old: Vec<usize>,
}

/// Contracts the boundary edge `e`. The result has `n - 1` vertices; both
/// endpoints merge into one vertex `x`.
pub fn contract_edge(
    t: &TriangulationGraph,
    e: Edge,
) -> Result<(TriangulationGraph, MergeMap), GraphError> {
    let n = t.n;
    let (p, q) = edge(e.0, e.1);
    if !t.is_boundary(p, q) {
        return Err(GraphError::NotBoundary((p, q)));
    }
    if n < 4 {
        return Err(GraphError::TooSmall(n));
    }
    let (u, v) = if (p + 1) % n == q { (p, q) } else { (q, p) };
    let w = t.apex_towards(v, u).expect("boundary edge has one triangle");
    let old_to_new: Vec<usize> =
        (0..n).map(|y| if y == v { if v == 0 { n - 2 } else { v - 1 } } else if y > v { y - 1 } else { y }).collect();
    let x = old_to_new[u];
    let mut new_to_old = vec![0usize; n - 1];
    for y in 0..n {
        if y != v {
            new_to_old[old_to_new[y]] = y;
        }
    }
    let m = n - 1;
    let mut diags = BTreeSet::new();
    for &(a, b) in &t.diagonals {
        let d = edge(old_to_new[a], old_to_new[b]);
        if d.1 - d.0 == 1 || (d.0 == 0 && d.1 == m - 1) {
            continue;
        }
        diags.insert(d);
    }
    let g = build_from_diagonals(m, &diags.into_iter().collect::<Vec<_>>())?;
    Ok((g, MergeMap { u, v, w, x, old_to_new, new_to_old }))
}

/// A set lifted from a contracted graph back to the original graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedSet {
    pub set: DominatingSet,
    /// Endpoint of the contracted edge that still has to be covered by the
    /// caller, or `None` when the lifted set already 2-dominates.
    ///
    /// Whatever the value, the lifted set together with this endpoint
    /// 2-dominates the original graph.
    pub pending: Option<usize>,
}

/// Lifts a 2-dominating set `d_prime` of the contracted graph back to `t`.
///
/// The guard on `xw` goes to `vw` (in edge mode to whichever of `uw`, `vw`
/// is a boundary edge); every other guard at `x` goes to whichever of `u`,
/// `v` is adjacent to its far endpoint. Guards away from `x` are relabelled.
/// The contracted edge itself never appears in the result. `chosen` must be
/// `u` or `v` and is reported as pending when `x` is not covered by
/// `d_prime`.
pub fn lift(
    t: &TriangulationGraph,
    map: &MergeMap,
    d_prime: &DominatingSet,
    chosen: usize,
) -> LiftedSet {
    let c = Contraction { n: t.n, u: map.u, v: map.v, w: map.w };
    debug_assert_eq!(c.x(), map.x);
    c.lift(d_prime, chosen)
}

/// The data of a contraction needed to lift sets back: the original vertex
/// count, the contracted edge `(u, v)` with `v` following `u`, and the apex
/// `w` of its triangle. All label maps follow from these by arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Contraction {
    pub n: usize,
    pub u: usize,
    pub v: usize,
    pub w: usize,
}

impl Contraction {
    /// Label of the merged vertex in the contracted graph.
    pub fn x(&self) -> usize {
        if self.v == 0 {
            self.n - 2
        } else {
            self.u
        }
    }

    /// Original label of a contracted label, with `x` mapped to `u`.
    pub fn new_to_old(&self, y: usize) -> usize {
        if self.v == 0 || y >= self.v {
            y + 1
        } else {
            y
        }
    }

    /// Whether `y` lies strictly between `a` and `b` walking forward.
    fn strictly_between(&self, a: usize, y: usize, b: usize) -> bool {
        let n = self.n;
        let dy = (y + n - a) % n;
        dy > 0 && dy < (b + n - a) % n
    }

    /// See [`lift`]. Neighbours of `u` other than `v` lie between `w` and
    /// `u`, those of `v` between `v` and `w`.
    pub fn lift(&self, d_prime: &DominatingSet, chosen: usize) -> LiftedSet {
        debug_assert!(chosen == self.u || chosen == self.v);
        let (n, u, v, w, x) = (self.n, self.u, self.v, self.w, self.x());
        let mut members = BTreeSet::new();
        let mut x_covered = false;
        for &(a, b) in &d_prime.members {
            if a != x && b != x {
                members.insert(edge(self.new_to_old(a), self.new_to_old(b)));
                continue;
            }
            x_covered = true;
            let y = self.new_to_old(if a == x { b } else { a });
            let lifted = if y == w {
                if d_prime.mode == Mode::EdgeOnly && (v + 1) % n != w {
                    edge(u, y)
                } else {
                    edge(v, y)
                }
            } else if self.strictly_between(w, y, u) {
                edge(u, y)
            } else {
                edge(v, y)
            };
            members.insert(lifted);
        }
        let set = DominatingSet { mode: d_prime.mode, members };
        let cov = |z: usize| set.members.iter().any(|&(p, q)| p == z || q == z);
        let pending = if !x_covered {
            Some(chosen)
        } else if cov(u) && cov(v) {
            None
        } else if cov(u) {
            Some(v)
        } else {
            Some(u)
        };
        LiftedSet { set, pending }
    }
}

/// Subgraph induced by `labels`, a cyclic subsequence of the boundary order
/// whose induced graph is a triangulated polygon (a union of triangles of
/// `t` bounded by consecutive labels).
pub fn extract_polygon(t: &TriangulationGraph, labels: &[usize]) -> SubGraph {
    let m = labels.len();
    let mut local = HashMap::with_capacity(m);
    for (i, &v) in labels.iter().enumerate() {
        local.insert(v, i);
    }
    let mut diags = Vec::with_capacity(m.saturating_sub(3));
    for &(p, q) in &t.diagonals {
        if let (Some(&lp), Some(&lq)) = (local.get(&p), local.get(&q)) {
            let e = edge(lp, lq);
            if !(e.1 - e.0 == 1 || (e.0 == 0 && e.1 == m - 1)) {
                diags.push(e);
            }
        }
    }
    let graph = build_from_diagonals(m, &diags).expect("labels bound a triangulated sub-polygon");
    SubGraph { graph, labels: labels.to_vec() }
}

/// Whether a set may contain diagonals or only boundary edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "diagonal")]
    DiagonalAllowed,
    #[serde(rename = "edge")]
    EdgeOnly,
}

/// A set of edges and diagonals of a triangulation graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominatingSet {
    pub mode: Mode,
    #[serde(with = "members_serde")]
    pub members: BTreeSet<Edge>,
}

mod members_serde {
    use super::Edge;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeSet;

    pub fn serialize<S: Serializer>(m: &BTreeSet<Edge>, s: S) -> Result<S::Ok, S::Error> {
        m.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeSet<Edge>, D::Error> {
        let raw: Vec<[usize; 2]> = Vec::deserialize(d)?;
        Ok(raw.into_iter().map(|p| super::edge(p[0], p[1])).collect())
    }
}

impl DominatingSet {
    /// An empty set.
    pub fn new(mode: Mode) -> Self {
        DominatingSet { mode, members: BTreeSet::new() }
    }

    /// A set with the given members, normalised.
    pub fn from_edges(mode: Mode, edges: impl IntoIterator<Item = Edge>) -> Self {
        DominatingSet { mode, members: edges.into_iter().map(|(a, b)| edge(a, b)).collect() }
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Whether the set is empty.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Whether `{a, b}` is a member.
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.members.contains(&edge(a, b))
    }

    /// Covered-vertex indicator over `n` vertices.
    pub fn covered(&self, n: usize) -> Vec<bool> {
        let mut c = vec![false; n];
        for &(a, b) in &self.members {
            c[a] = true;
            c[b] = true;
        }
        c
    }

    /// Checks membership and mode constraints against `t`.
    pub fn check_members(&self, t: &TriangulationGraph) -> Result<(), GraphError> {
        for &(a, b) in &self.members {
            if a >= t.n || b >= t.n || !t.has_edge(a, b) {
                return Err(GraphError::ForeignMember((a, b)));
            }
            if self.mode == Mode::EdgeOnly && !t.is_boundary(a, b) {
                return Err(GraphError::ForeignMember((a, b)));
            }
        }
        Ok(())
    }
}

/// Whether every triangle has at least two vertices covered by `covered`.
pub fn triangles_2_covered(t: &TriangulationGraph, covered: &[bool]) -> bool {
    t.triangles.iter().all(|tri| tri.iter().filter(|&&x| covered[x]).count() >= 2)
}

/// Whether `d` 2-dominates `t`: every triangle has at least two vertices
/// incident to some member.
pub fn is_2_dominated(t: &TriangulationGraph, d: &DominatingSet) -> Result<bool, GraphError> {
    d.check_members(t)?;
    Ok(triangles_2_covered(t, &d.covered(t.n)))
}

/// Which family of dual-subtree configurations to match.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShapeMode {
    Diag,
    Edge,
}

impl ShapeMode {
    /// The separation parameter of the corresponding linear algorithm.
    pub fn lambda(self) -> usize {
        match self {
            ShapeMode::Diag => 4,
            ShapeMode::Edge => 6,
        }
    }
}

/// A matched dual-subtree configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtreeShape {
    /// Index into [`shape_catalogue`].
    pub id: usize,
    pub k: usize,
    /// Canonical string of the unordered rooted subtree.
    pub canonical: String,
    /// The matched side, `v_0, .., v_k`.
    pub side: Vec<usize>,
}

/// Canonical strings of the rooted subtrees below a side with `s` boundary
/// edges. A boundary edge is written `e`; a triangle is `(` followed by the
/// canonical strings of its two children in sorted order and `)`.
fn shapes_with_edges(s: usize, memo: &mut HashMap<usize, Vec<String>>) -> Vec<String> {
    if let Some(v) = memo.get(&s) {
        return v.clone();
    }
    let out: Vec<String> = if s == 1 {
        vec!["e".to_string()]
    } else {
        let mut set = BTreeSet::new();
        for a in 1..s {
            for x in shapes_with_edges(a, memo) {
                for y in shapes_with_edges(s - a, memo) {
                    set.insert(join_shapes(&x, &y));
                }
            }
        }
        set.into_iter().collect()
    };
    memo.insert(s, out.clone());
    out
}

fn join_shapes(x: &str, y: &str) -> String {
    if x <= y {
        format!("({x}{y})")
    } else {
        format!("({y}{x})")
    }
}

/// All configurations matched by [`classify_subtree_shape`]: the side of a
/// diagonal holds `k` boundary edges with `lambda <= k <= 2 lambda - 2`
/// and both sub-sides of its apex hold fewer than `lambda` edges.
/// Entries are `(k, canonical)` sorted by `k` then canonical string.
pub fn shape_catalogue(mode: ShapeMode) -> Vec<(usize, String)> {
    let lambda = mode.lambda();
    let mut memo = HashMap::new();
    let mut out = Vec::new();
    for k in lambda..=2 * lambda - 2 {
        let mut set = BTreeSet::new();
        for a in 1..k {
            let b = k - a;
            if a >= lambda || b >= lambda {
                continue;
            }
            for x in shapes_with_edges(a, &mut memo) {
                for y in shapes_with_edges(b, &mut memo) {
                    set.insert(join_shapes(&x, &y));
                }
            }
        }
        out.extend(set.into_iter().map(|c| (k, c)));
    }
    out
}

/// Canonical string of the side of `(v_0, v_k)` given by `side`.
fn canonical_side(t: &TriangulationGraph, a: usize, b: usize) -> String {
    if (b + t.n - a) % t.n == 1 {
        return "e".to_string();
    }
    let apex = t.apex_towards(a, b).expect("diagonal has a triangle on each side");
    join_shapes(&canonical_side(t, a, apex), &canonical_side(t, apex, b))
}

/// Matches the side split off by `d` against the minimal configurations of
/// the linear algorithm for `mode`. Both sides are tried, the side walking
/// forward from the smaller label first.
pub fn classify_subtree_shape(t: &TriangulationGraph, d: Edge, mode: ShapeMode) -> Option<SubtreeShape> {
    let (a, b) = edge(d.0, d.1);
    if !t.is_diagonal(a, b) {
        return None;
    }
    let lambda = mode.lambda();
    let n = t.n;
    let catalogue = shape_catalogue(mode);
    for (p, q) in [(a, b), (b, a)] {
        let k = (q + n - p) % n;
        if k < lambda || k > 2 * lambda - 2 {
            continue;
        }
        let apex = t.apex_towards(p, q).expect("diagonal has a triangle on each side");
        let left = (apex + n - p) % n;
        if left >= lambda || k - left >= lambda {
            continue;
        }
        let canonical = canonical_side(t, p, q);
        let id = catalogue
            .iter()
            .position(|(ck, c)| *ck == k && *c == canonical)
            .expect("every locally minimal side is catalogued");
        return Some(SubtreeShape { id, k, canonical, side: side_labels(n, p, q) });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_triangles(n: usize, diags: &[Edge]) -> Vec<[usize; 3]> {
        let mut has = vec![vec![false; n]; n];
        for (a, b) in (0..n).map(|i| (i, (i + 1) % n)).chain(diags.iter().copied()) {
            has[a][b] = true;
            has[b][a] = true;
        }
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if has[a][b] && has[b][c] && has[a][c] {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn triangle_has_one_face() {
        let t = build_from_diagonals(3, &[]).unwrap();
        assert_eq!(t.triangles(), &[[0, 1, 2]]);
        t.check_invariants().unwrap();
    }

    #[test]
    fn quad_has_two_faces() {
        let t = build_from_diagonals(4, &[(0, 2)]).unwrap();
        assert_eq!(t.triangles(), &[[0, 1, 2], [0, 2, 3]]);
    }

    #[test]
    fn hexagon_fan_is_a_path() {
        let t = build_from_diagonals(6, &[(0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(t.triangles().len(), 4);
        let dt = dual_tree(&t);
        assert!(dt.is_tree() && dt.is_path());
        assert_eq!(dt.nodes.len(), 4);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            build_from_diagonals(5, &[(0, 2)]),
            Err(GraphError::WrongDiagonalCount { expected: 2, got: 1 })
        );
        assert_eq!(build_from_diagonals(5, &[(0, 2), (2, 0)]), Err(GraphError::DuplicateDiagonal((0, 2))));
        assert_eq!(build_from_diagonals(5, &[(0, 1), (0, 2)]), Err(GraphError::AdjacentPair((0, 1))));
        assert_eq!(build_from_diagonals(5, &[(0, 4), (0, 2)]), Err(GraphError::AdjacentPair((0, 4))));
        assert_eq!(
            build_from_diagonals(5, &[(0, 2), (1, 3)]),
            Err(GraphError::CrossingDiagonals((1, 3), (0, 2)))
        );
        assert!(matches!(build_from_diagonals(5, &[(0, 2), (0, 7)]), Err(GraphError::LabelOutOfRange { .. })));
        assert_eq!(build_from_diagonals(2, &[]), Err(GraphError::TooFewVertices(2)));
    }

    #[test]
    fn fan_examples() {
        assert_eq!(fan_triangulation(5).unwrap().diagonals(), &[(0, 2), (0, 3)]);
        let f8 = fan_triangulation(8).unwrap();
        assert_eq!(f8.triangles().len(), 6);
        let dt = dual_tree(&f8);
        assert!(dt.is_path());
        assert_eq!(dt.nodes.len(), 6);
    }

    #[test]
    fn triangles_match_naive_recount() {
        for n in 3..=9 {
            for d in enumerate_diagonal_sets(n).unwrap() {
                let t = build_from_diagonals(n, &d).unwrap();
                assert_eq!(t.triangles(), naive_triangles(n, &d).as_slice());
                t.check_invariants().unwrap();
            }
        }
    }

    #[test]
    fn enumeration_counts_follow_catalan_recursion() {
        let mut c = vec![1u64];
        for m in 1..=10 {
            let s: u64 = (0..m).map(|i| c[i] * c[m - 1 - i]).sum();
            c.push(s);
        }
        for n in 3..=11 {
            assert_eq!(enumerate_diagonal_sets(n).unwrap().len() as u64, c[n - 2]);
            assert_eq!(catalan(n - 2), c[n - 2]);
        }
        assert_eq!(enumerate_diagonal_sets(4).unwrap().len(), 2);
        assert_eq!(enumerate_diagonal_sets(5).unwrap().len(), 5);
        assert_eq!(enumerate_diagonal_sets(8).unwrap().len(), 132);
        assert!(matches!(enumerate_diagonal_sets(15), Err(GraphError::NTooLarge { .. })));
    }

    #[test]
    fn enumeration_has_no_duplicates() {
        let mut all: Vec<Vec<Edge>> = enumerate_diagonal_sets(9)
            .unwrap()
            .into_iter()
            .map(|mut d| {
                d.sort();
                d
            })
            .collect();
        let before = all.len();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), before);
    }

    #[test]
    fn random_is_deterministic_and_valid() {
        let a = random_triangulation(12, 7).unwrap();
        let b = random_triangulation(12, 7).unwrap();
        assert_eq!(a, b);
        a.check_invariants().unwrap();
        assert_eq!(random_triangulation(3, 99).unwrap().triangles(), &[[0, 1, 2]]);
    }

    #[test]
    fn dual_tree_on_all_decagons() {
        for t in enumerate_triangulations(10).unwrap().step_by(37) {
            let dt = dual_tree(&t);
            assert_eq!(dt.nodes.len(), 8);
            assert_eq!(dt.links.len(), 7);
            assert!(dt.is_tree());
            assert!((0..8).all(|x| dt.degree(x) <= 3));
        }
    }

    #[test]
    fn separating_diagonal_examples() {
        let f8 = fan_triangulation(8).unwrap();
        let s = find_separating_diagonal(&f8, 4).unwrap();
        assert_eq!((s.diagonal, s.k), ((0, 4), 4));
        assert_eq!(s.side, vec![0, 1, 2, 3, 4]);
        let f6 = fan_triangulation(6).unwrap();
        assert_eq!(find_separating_diagonal(&f6, 3).unwrap().k, 3);
        assert!(find_separating_diagonal(&f6, 4).is_err());
    }

    #[test]
    fn separating_diagonal_is_globally_minimal() {
        for n in 4..=10 {
            for t in enumerate_triangulations(n).unwrap() {
                for lambda in 2..=n / 2 {
                    let s = find_separating_diagonal(&t, lambda).unwrap();
                    let brute = t
                        .diagonals()
                        .iter()
                        .flat_map(|&(a, b)| [b - a, n - (b - a)])
                        .filter(|&k| k >= lambda)
                        .min()
                        .unwrap();
                    assert_eq!(s.k, brute);
                    assert!(lambda <= s.k && s.k <= 2 * (lambda - 1));
                    assert_eq!(s.side.len(), s.k + 1);
                }
            }
        }
    }

    #[test]
    fn split_examples() {
        let f6 = fan_triangulation(6).unwrap();
        let (a, b) = split_along(&f6, (0, 3)).unwrap();
        assert_eq!((a.graph.n(), b.graph.n()), (4, 4));
        assert_eq!(glue(&a, &b, 6).unwrap(), f6);
        let q = build_from_diagonals(4, &[(0, 2)]).unwrap();
        let (a, b) = split_along(&q, (0, 2)).unwrap();
        assert_eq!((a.graph.n(), b.graph.n()), (3, 3));
        assert_eq!(split_along(&q, (0, 1)), Err(GraphError::NotADiagonal((0, 1))));
    }

    #[test]
    fn contraction_examples() {
        let q = build_from_diagonals(4, &[(0, 2)]).unwrap();
        let (c, m) = contract_edge(&q, (0, 1)).unwrap();
        assert_eq!(c.n(), 3);
        assert_eq!((m.u, m.v, m.w), (0, 1, 2));
        let f5 = fan_triangulation(5).unwrap();
        let (c, m) = contract_edge(&f5, (1, 2)).unwrap();
        c.check_invariants().unwrap();
        assert_eq!(c.n(), 4);
        assert_eq!(m.w, 0);
        assert_eq!(contract_edge(&f5, (0, 2)).map(|_| ()), Err(GraphError::NotBoundary((0, 2))));
        assert_eq!(
            contract_edge(&build_from_diagonals(3, &[]).unwrap(), (0, 1)).map(|_| ()),
            Err(GraphError::TooSmall(3))
        );
    }

    #[test]
    fn contraction_wraps_around_label_zero() {
        let f6 = fan_triangulation(6).unwrap();
        let (c, m) = contract_edge(&f6, (5, 0)).unwrap();
        assert_eq!((m.u, m.v, m.w), (5, 0, 4));
        c.check_invariants().unwrap();
        assert_eq!(m.old_to_new[0], m.old_to_new[5]);
    }

    #[test]
    fn lift_keeps_domination_with_the_pending_endpoint() {
        for n in 4..=8 {
            for t in enumerate_triangulations(n).unwrap() {
                for e in t.boundary_edges() {
                    let (c, m) = contract_edge(&t, e).unwrap();
                    for mode in [Mode::EdgeOnly, Mode::DiagonalAllowed] {
                        let cands =
                            if mode == Mode::EdgeOnly { c.boundary_edges() } else { c.all_edges() };
                        for mask in 0u32..(1 << cands.len()) {
                            let d = DominatingSet::from_edges(
                                mode,
                                (0..cands.len()).filter(|i| mask & (1 << i) != 0).map(|i| cands[i]),
                            );
                            if !is_2_dominated(&c, &d).unwrap() {
                                continue;
                            }
                            for chosen in [m.u, m.v] {
                                let l = lift(&t, &m, &d, chosen);
                                l.set.check_members(&t).unwrap();
                                assert!(!l.set.contains(m.u, m.v));
                                assert_eq!(l.set.len(), d.len());
                                let mut cov = l.set.covered(n);
                                if let Some(p) = l.pending {
                                    cov[p] = true;
                                }
                                assert!(triangles_2_covered(&t, &cov), "{t:?} {e:?} {d:?}");
                                if !d.covered(c.n())[m.x] {
                                    assert_eq!(l.pending, Some(chosen));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn domination_examples() {
        let tri = build_from_diagonals(3, &[]).unwrap();
        for e in tri.boundary_edges() {
            assert!(is_2_dominated(&tri, &DominatingSet::from_edges(Mode::EdgeOnly, [e])).unwrap());
        }
        let q = build_from_diagonals(4, &[(0, 2)]).unwrap();
        assert!(is_2_dominated(&q, &DominatingSet::from_edges(Mode::DiagonalAllowed, [(0, 2)])).unwrap());
        let f6 = fan_triangulation(6).unwrap();
        assert!(!is_2_dominated(&f6, &DominatingSet::new(Mode::DiagonalAllowed)).unwrap());
        assert_eq!(
            is_2_dominated(&f6, &DominatingSet::from_edges(Mode::DiagonalAllowed, [(1, 3)])),
            Err(GraphError::ForeignMember((1, 3)))
        );
        assert_eq!(
            is_2_dominated(&f6, &DominatingSet::from_edges(Mode::EdgeOnly, [(0, 3)])),
            Err(GraphError::ForeignMember((0, 3)))
        );
    }

    #[test]
    fn neighbours_are_in_boundary_order() {
        let f6 = fan_triangulation(6).unwrap();
        assert_eq!(f6.neighbors(0), vec![1, 2, 3, 4, 5]);
        assert_eq!(f6.neighbors(3), vec![4, 0, 2]);
    }

    #[test]
    fn catalogue_sizes() {
        assert_eq!(shape_catalogue(ShapeMode::Diag).len(), 4);
        assert_eq!(shape_catalogue(ShapeMode::Edge).len(), 29);
    }

    #[test]
    fn shape_examples() {
        let f8 = fan_triangulation(8).unwrap();
        let s = classify_subtree_shape(&f8, (0, 4), ShapeMode::Diag).unwrap();
        assert_eq!(s.k, 4);
        let f12 = fan_triangulation(12).unwrap();
        let s = classify_subtree_shape(&f12, (0, 6), ShapeMode::Edge).unwrap();
        assert_eq!(s.k, 6);
        assert_eq!(classify_subtree_shape(&f12, (0, 2), ShapeMode::Edge), None);
        assert_eq!(classify_subtree_shape(&f12, (0, 2), ShapeMode::Diag), None);
    }

    #[test]
    fn every_catalogue_entry_is_realised() {
        for mode in [ShapeMode::Diag, ShapeMode::Edge] {
            let cat = shape_catalogue(mode);
            let mut hit = vec![false; cat.len()];
            let lambda = mode.lambda();
            for k in lambda..=2 * lambda - 2 {
                // Side 0..=k of a polygon with k + 3 vertices.
                for t in enumerate_triangulations(k + 3).unwrap() {
                    if t.is_diagonal(0, k) {
                        if let Some(s) = classify_subtree_shape(&t, (0, k), mode) {
                            hit[s.id] = true;
                        }
                    }
                }
            }
            assert!(hit.iter().all(|&h| h), "{mode:?}");
        }
    }

    #[test]
    fn json_round_trip() {
        let t = random_triangulation(15, 3).unwrap();
        let s = t.to_json_string();
        assert_eq!(TriangulationGraph::from_json_str(&s).unwrap(), t);
        assert!(matches!(TriangulationGraph::from_json_str("{\"n\": 4"), Err(GraphError::Parse(_))));
        let d = DominatingSet::from_edges(Mode::EdgeOnly, [(1, 2), (4, 3)]);
        let js = serde_json::to_string(&d).unwrap();
        assert_eq!(js, "{\"mode\":\"edge\",\"members\":[[1,2],[3,4]]}");
        assert_eq!(serde_json::from_str::<DominatingSet>(&js).unwrap(), d);
    }
}
