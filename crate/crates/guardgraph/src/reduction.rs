//! Queue-driven reduction engine shared by the linear-time algorithms.
//!
//! The engine keeps the original graph immutable and marks triangles dead
//! as pieces are cut off. A side of a current diagonal `(p, q)` is the part
//! of the current polygon walked forward from `p` to `q`; it is a candidate
//! when it holds between `lambda` and `2 lambda - 2` boundary edges and both
//! sub-sides at its apex hold fewer than `lambda`.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::trigraph::{build_from_diagonals, edge, DominatingSet, Edge, Mode, TriangulationGraph};

/// Instrumentation counters of one run of a linear algorithm.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct LinearStats {
    /// Candidate sides taken off the queue.
    pub pops: usize,
    /// Candidate sides put on the queue.
    pub pushes: usize,
    /// Reductions applied.
    pub reductions: usize,
    /// Reductions applied, indexed by the number of boundary edges split off.
    pub by_k: [usize; 11],
    /// Elementary steps spent counting sides and walking the dual tree.
    pub work: usize,
    /// Full rescans after the queue ran dry above the cutoff.
    pub rescans: usize,
    /// Vertex count handed to the base case.
    pub base_n: usize,
}

/// Instrumentation counters of one run of a splitting algorithm.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SplitStats {
    /// Pieces split off.
    pub steps: usize,
    /// Vertices of the remaining graph summed over all steps, which bounds
    /// the work of extracting, contracting and searching it.
    pub work: usize,
}

/// The guard set under construction, with per-vertex cover counts.
pub(crate) struct WorkSet {
    members: HashSet<Edge>,
    cover: Vec<u32>,
}

impl WorkSet {
    pub fn new(n: usize) -> Self {
        WorkSet { members: HashSet::new(), cover: vec![0; n] }
    }

    /// Adds `{a, b}` if absent.
    pub fn add(&mut self, a: usize, b: usize) {
        if self.members.insert(edge(a, b)) {
            self.cover[a] += 1;
            self.cover[b] += 1;
        }
    }

    /// Removes `{a, b}`; returns whether it was present.
    pub fn remove(&mut self, a: usize, b: usize) -> bool {
        let present = self.members.remove(&edge(a, b));
        if present {
            self.cover[a] -= 1;
            self.cover[b] -= 1;
        }
        present
    }

    /// Whether `{a, b}` is a member.
    pub fn has(&self, a: usize, b: usize) -> bool {
        self.members.contains(&edge(a, b))
    }

    /// Whether some member is incident to `v`.
    pub fn covered(&self, v: usize) -> bool {
        self.cover[v] > 0
    }

    /// Number of members incident to `v`.
    pub fn cover_count(&self, v: usize) -> u32 {
        self.cover[v]
    }

    pub fn into_set(self, mode: Mode) -> DominatingSet {
        DominatingSet::from_edges(mode, self.members)
    }
}

/// Parent labels of a piece of a polygon: the forward range of `len`
/// labels starting at `start`, followed by up to two extra labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct PieceMap {
    n: usize,
    start: usize,
    len: usize,
    extra: [usize; 2],
    extras: usize,
}

impl PieceMap {
    /// The forward range from `a` to `b` inclusive in an `n`-gon.
    pub fn range(n: usize, a: usize, b: usize) -> Self {
        PieceMap { n, start: a, len: (b + n - a) % n + 1, extra: [0; 2], extras: 0 }
    }

    /// Appends `vs` after the range.
    pub fn with_extra(mut self, vs: &[usize]) -> Self {
        for &v in vs {
            self.extra[self.extras] = v;
            self.extras += 1;
        }
        self
    }

    /// Parent label of local vertex `i`.
    pub fn parent(&self, i: usize) -> usize {
        if i < self.len {
            (self.start + i) % self.n
        } else {
            self.extra[i - self.len]
        }
    }

    /// All parent labels in local order.
    pub fn labels(&self) -> Vec<usize> {
        (0..self.len + self.extras).map(|i| self.parent(i)).collect()
    }

    /// Local label of the parent vertex `v`, which must belong to the piece.
    pub fn local(&self, v: usize) -> usize {
        let d = (v + self.n - self.start) % self.n;
        if d < self.len {
            d
        } else {
            self.len + self.extra[..self.extras].iter().position(|&x| x == v).expect("vertex of the piece")
        }
    }

    /// Parent copy of the local edge `e`.
    pub fn edge(&self, e: Edge) -> Edge {
        edge(self.parent(e.0), self.parent(e.1))
    }
}

/// Mutable view of a triangulation graph being reduced.
pub(crate) struct Engine<'a> {
    t: &'a TriangulationGraph,
    lambda: usize,
    alive: Vec<bool>,
    alive_count: usize,
    queue: VecDeque<(usize, usize)>,
    queued: HashSet<(usize, usize)>,
    stats: LinearStats,
}

impl<'a> Engine<'a> {
    fn new(t: &'a TriangulationGraph, lambda: usize) -> Self {
        let m = t.triangles().len();
        Engine {
            t,
            lambda,
            alive: vec![true; m],
            alive_count: m,
            queue: VecDeque::new(),
            queued: HashSet::new(),
            stats: LinearStats::default(),
        }
    }

    /// Number of vertices of the current polygon.
    fn n_cur(&self) -> usize {
        self.alive_count + 2
    }

    /// Live triangle holding the half-edge `a -> b`.
    fn face(&self, a: usize, b: usize) -> Option<usize> {
        let h = self.t.half_edge(a, b)?;
        let f = self.t.half_edges()[h].face?;
        self.alive[f].then_some(f)
    }

    fn third(&self, f: usize, a: usize, b: usize) -> usize {
        *self.t.triangles()[f].iter().find(|&&x| x != a && x != b).expect("triangle has three vertices")
    }

    /// Apex of the live triangle on the side walked forward from `p` to `q`.
    pub fn apex(&self, p: usize, q: usize) -> usize {
        let f = self.face(q, p).expect("side has a triangle");
        self.third(f, p, q)
    }

    /// Boundary-edge count of the side from `p` to `q`, exact below `cap`;
    /// any value `>= cap` means "at least `cap`".
    ///
    /// A side with fewer than `cap` boundary edges has fewer than `2 cap`
    /// edges in its subtree, so the search stops after that many.
    fn count(&mut self, p: usize, q: usize, cap: usize) -> usize {
        let budget = 2 * cap;
        let mut stack = vec![(p, q)];
        let mut visited = 0;
        let mut leaves = 0;
        while let Some((x, y)) = stack.pop() {
            visited += 1;
            self.stats.work += 1;
            if visited > budget {
                return cap;
            }
            match self.face(y, x) {
                None => leaves += 1,
                Some(f) => {
                    let a = self.third(f, x, y);
                    stack.push((a, y));
                    stack.push((x, a));
                }
            }
        }
        leaves
    }

    fn is_current_diagonal(&self, p: usize, q: usize) -> bool {
        self.face(p, q).is_some() && self.face(q, p).is_some()
    }

    fn is_candidate(&mut self, p: usize, q: usize) -> bool {
        if !self.is_current_diagonal(p, q) {
            return false;
        }
        let l = self.lambda;
        let k = self.count(p, q, 2 * l - 1);
        if k < l || k > 2 * l - 2 {
            return false;
        }
        let a = self.apex(p, q);
        self.count(p, a, l) < l && self.count(a, q, l) < l
    }

    fn push(&mut self, p: usize, q: usize) {
        if self.queued.insert((p, q)) {
            self.stats.pushes += 1;
            self.queue.push_back((p, q));
        }
    }

    fn side_vertices(&self, p: usize, q: usize, out: &mut Vec<usize>) {
        match self.face(q, p) {
            None => out.push(q),
            Some(f) => {
                let a = self.third(f, p, q);
                self.side_vertices(p, a, out);
                self.side_vertices(a, q, out);
            }
        }
    }

    fn side_triangles(&self, p: usize, q: usize, out: &mut Vec<usize>) {
        if let Some(f) = self.face(q, p) {
            out.push(f);
            let a = self.third(f, p, q);
            self.side_triangles(p, a, out);
            self.side_triangles(a, q, out);
        }
    }

    /// Removes the triangles of the side `v` except `keep`, then queues the
    /// sides whose configuration may have changed.
    fn cut(&mut self, v: &[usize], keep: &[[usize; 3]]) {
        let (p, q) = (v[0], v[v.len() - 1]);
        let mut tris = Vec::new();
        self.side_triangles(p, q, &mut tris);
        for f in tris {
            if !keep.contains(&self.t.triangles()[f]) {
                self.alive[f] = false;
                self.alive_count -= 1;
            }
        }
        self.walk(p, q, 1 + keep.len());
    }

    /// Visits the sides containing the side from `p` to `q`, which now holds
    /// `s` boundary edges, and queues the ones that may be candidates.
    fn walk(&mut self, p: usize, q: usize, s: usize) {
        self.stats.work += 1;
        let Some(f) = self.face(p, q) else { return };
        let a = self.third(f, p, q);
        let l = self.lambda;
        for (x, y, op, oq) in [(a, q, a, p), (p, a, q, a)] {
            if self.face(x, y).is_none() {
                continue;
            }
            let c = self.count(op, oq, l);
            if c >= l {
                continue;
            }
            if s + c >= l {
                self.push(x, y);
            } else {
                self.walk(x, y, s + c);
            }
        }
    }

    fn scan_all(&mut self) {
        for &(a, b) in self.t.diagonals() {
            for (p, q) in [(a, b), (b, a)] {
                if self.is_candidate(p, q) {
                    self.push(p, q);
                }
            }
        }
    }

    /// The current polygon as a standalone graph with the original label of
    /// every local vertex.
    fn remaining(&self) -> (TriangulationGraph, Vec<usize>) {
        let n = self.t.n();
        let mut present = vec![false; n];
        let mut uses: HashMap<Edge, u8> = HashMap::new();
        for (f, tri) in self.t.triangles().iter().enumerate() {
            if !self.alive[f] {
                continue;
            }
            for i in 0..3 {
                present[tri[i]] = true;
                *uses.entry(edge(tri[i], tri[(i + 1) % 3])).or_default() += 1;
            }
        }
        let labels: Vec<usize> = (0..n).filter(|&v| present[v]).collect();
        let mut local = vec![usize::MAX; n];
        for (i, &v) in labels.iter().enumerate() {
            local[v] = i;
        }
        let diags: Vec<Edge> = uses
            .into_iter()
            .filter(|&(_, c)| c == 2)
            .map(|((a, b), _)| edge(local[a], local[b]))
            .collect();
        let g = build_from_diagonals(labels.len(), &diags).expect("the remaining polygon is a triangulation");
        (g, labels)
    }
}

/// One reduction chosen by an algorithm for a candidate side.
pub(crate) struct Reduction<F> {
    pub frame: F,
    /// Triangles of the side kept in the reduced graph, as sorted triples.
    pub keep: Vec<[usize; 3]>,
}

/// Runs the queue-driven reduction on `t`.
///
/// `reduce` receives the engine and the side `v_0, .., v_k` of a candidate
/// and chooses the triangles to keep. Once fewer than `cutoff` vertices
/// remain, `base` solves the remaining polygon and `unwind` replays the
/// frames in reverse order on the guard set.
pub(crate) fn run<F>(
    t: &TriangulationGraph,
    mode: Mode,
    lambda: usize,
    cutoff: usize,
    mut reduce: impl FnMut(&Engine<'_>, &[usize]) -> Reduction<F>,
    base: impl Fn(&TriangulationGraph) -> DominatingSet,
    unwind: impl Fn(&F, &mut WorkSet),
) -> (DominatingSet, LinearStats) {
    let mut eng = Engine::new(t, lambda);
    let mut frames = Vec::new();
    if eng.n_cur() >= cutoff {
        eng.scan_all();
    }
    while eng.n_cur() >= cutoff {
        let Some((p, q)) = eng.queue.pop_front() else {
            eng.stats.rescans += 1;
            eng.scan_all();
            if eng.queue.is_empty() {
                break;
            }
            continue;
        };
        eng.queued.remove(&(p, q));
        eng.stats.pops += 1;
        if !eng.is_candidate(p, q) {
            continue;
        }
        let mut v = vec![p];
        eng.side_vertices(p, q, &mut v);
        let r = reduce(&eng, &v);
        frames.push(r.frame);
        eng.cut(&v, &r.keep);
        eng.stats.reductions += 1;
        eng.stats.by_k[v.len() - 1] += 1;
    }
    let (g, labels) = eng.remaining();
    eng.stats.base_n = g.n();
    let mut ws = WorkSet::new(t.n());
    for &(a, b) in &base(&g).members {
        ws.add(labels[a], labels[b]);
    }
    for f in frames.iter().rev() {
        unwind(f, &mut ws);
    }
    (ws.into_set(mode), eng.stats)
}

/// Sorted vertex triple.
pub(crate) fn tri(a: usize, b: usize, c: usize) -> [usize; 3] {
    let mut x = [a, b, c];
    x.sort_unstable();
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trigraph::{classify_subtree_shape, enumerate_triangulations, random_triangulation, ShapeMode};

    #[test]
    fn initial_candidates_match_the_shape_catalogue() {
        for (mode, n) in [(ShapeMode::Diag, 13), (ShapeMode::Edge, 21)] {
            for seed in 0..40 {
                let t = random_triangulation(n + (seed as usize % 5), seed).unwrap();
                let mut eng = Engine::new(&t, mode.lambda());
                for &(a, b) in t.diagonals() {
                    let ours = [(a, b), (b, a)].into_iter().find(|&(p, q)| eng.is_candidate(p, q));
                    let theirs = classify_subtree_shape(&t, (a, b), mode).map(|s| (s.side[0], *s.side.last().unwrap()));
                    assert_eq!(ours, theirs);
                }
            }
        }
    }

    #[test]
    fn counts_agree_with_label_arithmetic_on_the_full_graph() {
        for t in enumerate_triangulations(8).unwrap() {
            let mut eng = Engine::new(&t, 3);
            for &(a, b) in t.diagonals() {
                assert_eq!(eng.count(a, b, 100), b - a);
                assert_eq!(eng.count(b, a, 100), 8 - (b - a));
            }
        }
    }

    #[test]
    fn remaining_graph_after_a_cut() {
        let t = crate::trigraph::fan_triangulation(8).unwrap();
        let mut eng = Engine::new(&t, 4);
        let mut v = vec![0];
        eng.side_vertices(0, 4, &mut v);
        assert_eq!(v, vec![0, 1, 2, 3, 4]);
        eng.cut(&v, &[]);
        let (g, labels) = eng.remaining();
        assert_eq!(labels, vec![0, 4, 5, 6, 7]);
        g.check_invariants().unwrap();
        assert_eq!(eng.n_cur(), 5);
    }
}
