//! Diagonal 2-dominating sets of size at most `floor((n + 1) / 3)`.
//!
//! Three constructions are provided: the explicit sets for `n <= 7`, a
//! simple recursive algorithm that splits off three or four boundary edges
//! and contracts an edge when needed, and the linear-time queue algorithm
//! that splits off four to six boundary edges without contractions.

use thiserror::Error;

use crate::reduction::{run, tri, Engine, PieceMap, Reduction, WorkSet};
pub use crate::reduction::{LinearStats, SplitStats};
use crate::trigraph::{
    contract_edge, edge, extract_polygon, find_separating_diagonal, Contraction, DominatingSet, Edge, Mode,
    TriangulationGraph,
};

/// Errors raised by the explicit small constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DominateError {
    #[error("n = {n} is outside the supported range {min}..={max}")]
    OutOfRange { n: usize, min: usize, max: usize },
}

/// Recursion cutoff of the linear algorithm.
pub const DIAG_CUTOFF: usize = 13;

/// Smallest cutoff accepted by [`diag_2dominate_linear_with_cutoff`].
pub const DIAG_MIN_CUTOFF: usize = 5;

/// The guaranteed size `floor((n + 1) / 3)`.
pub fn diag_bound(n: usize) -> usize {
    (n + 1) / 3
}

/// Ear tips of `t` in increasing label order.
pub(crate) fn ear_tips(t: &TriangulationGraph) -> Vec<usize> {
    let n = t.n();
    (0..n).filter(|&i| t.has_edge((i + n - 1) % n, (i + 1) % n)).collect()
}

/// Explicit diagonal 2-dominating sets for `3 <= n <= 7`.
///
/// `n = 3`: one edge. `n = 4`: the diagonal. `n = 5`: both diagonals.
/// `n = 6`: the two edges next to an ear. `n = 7`: built from two ears.
pub fn small_diag_set(t: &TriangulationGraph) -> Result<DominatingSet, DominateError> {
    let n = t.n();
    let set = |es: Vec<Edge>| Ok(DominatingSet::from_edges(Mode::DiagonalAllowed, es));
    match n {
        3 => set(vec![(0, 1)]),
        4 | 5 => set(t.diagonals().to_vec()),
        6 => {
            let i = ear_tips(t)[0];
            set(vec![edge((i + 4) % 6, (i + 5) % 6), edge((i + 1) % 6, (i + 2) % 6)])
        }
        7 => {
            let ears = ear_tips(t);
            let (a, b) = (ears[0], ears[1]);
            let d1 = edge((a + 6) % 7, (a + 1) % 7);
            let d2 = edge((b + 6) % 7, (b + 1) % 7);
            let shared = d1.0 == d2.0 || d1.0 == d2.1 || d1.1 == d2.0 || d1.1 == d2.1;
            if !shared {
                return set(vec![d1, d2]);
            }
            let in_ear = |e: Edge, tip: usize| {
                let tr = [(tip + 6) % 7, tip, (tip + 1) % 7];
                tr.contains(&e.0) && tr.contains(&e.1)
            };
            let e = [d1.0, d1.1]
                .into_iter()
                .flat_map(|p| [edge((p + 6) % 7, p), edge(p, (p + 1) % 7)])
                .find(|&e| !in_ear(e, a) && !in_ear(e, b))
                .expect("a boundary edge outside both ears touches the first ear diagonal");
            set(vec![e, d2])
        }
        _ => Err(DominateError::OutOfRange { n, min: 3, max: 7 }),
    }
}

/// One level of [`diag_2dominate_contraction`].
enum ContractionStep {
    /// Three edges split off; the rest was contracted along the shared
    /// diagonal. `w` is the quadrilateral after reflection, so that it holds
    /// the diagonal `w_0 w_2`.
    Three { piece: PieceMap, c: Contraction, w: [usize; 4] },
    /// Four edges split off around the apex `v_2`.
    Four { piece: PieceMap, v: [usize; 5] },
}

/// Diagonal 2-dominating set by recursive splitting with contractions.
///
/// For `n >= 6` a diagonal splitting off `k in {3, 4}` boundary edges is
/// chosen. For `k = 3` the shared diagonal is contracted in the rest of the
/// graph and the lifted set is completed by one guard in the quadrilateral;
/// for `k = 4` the rest is solved directly and one diagonal of the pentagon
/// is added. Runs in `O(n^2)` time.
pub fn diag_2dominate_contraction(t: &TriangulationGraph) -> DominatingSet {
    diag_2dominate_contraction_with_stats(t).0
}

/// [`diag_2dominate_contraction`] with its operation counters.
pub fn diag_2dominate_contraction_with_stats(t: &TriangulationGraph) -> (DominatingSet, SplitStats) {
    let mut steps = Vec::new();
    let mut stats = SplitStats::default();
    let mut cur = t.clone();
    while cur.n() > 5 {
        let n = cur.n();
        stats.steps += 1;
        stats.work += n;
        let sep = find_separating_diagonal(&cur, 3).expect("n >= 6");
        let v = sep.side;
        let piece = PieceMap::range(n, v[sep.k], v[0]);
        let rest = extract_polygon(&cur, &piece.labels()).graph;
        if sep.k == 3 {
            let w = if cur.has_edge(v[1], v[3]) { [v[3], v[2], v[1], v[0]] } else { [v[0], v[1], v[2], v[3]] };
            let (next, map) = contract_edge(&rest, (piece.local(v[0]), piece.local(v[3])))
                .expect("the shared diagonal is a boundary edge of the rest");
            let c = Contraction { n: rest.n(), u: map.u, v: map.v, w: map.w };
            steps.push(ContractionStep::Three { piece, c, w });
            cur = next;
        } else {
            steps.push(ContractionStep::Four { piece, v: [v[0], v[1], v[2], v[3], v[4]] });
            cur = rest;
        }
    }
    let mut set = small_diag_set(&cur).expect("3 <= n <= 5");
    for step in steps.iter().rev() {
        let mut members: Vec<Edge>;
        match step {
            ContractionStep::Three { piece, c, w } => {
                let lifted = c.lift(&set, piece.local(w[0]));
                members = lifted.set.members.iter().map(|&e| piece.edge(e)).collect();
                if lifted.pending == Some(piece.local(w[3])) {
                    members.push(edge(w[2], w[3]));
                } else {
                    members.push(edge(w[0], w[2]));
                }
            }
            ContractionStep::Four { piece, v } => {
                members = set.members.iter().map(|&e| piece.edge(e)).collect();
                let covered = members.iter().any(|&(a, b)| a == v[0] || b == v[0]);
                members.push(if covered { edge(v[2], v[4]) } else { edge(v[2], v[0]) });
            }
        }
        set = DominatingSet::from_edges(Mode::DiagonalAllowed, members);
    }
    (set, stats)
}

/// Reduction records of the linear algorithm. Every variant keeps the
/// labels `v_0, .., v_k` of the removed side after any reflection.
enum Frame {
    /// `k = 4`, the whole side removed.
    Four(Vec<usize>),
    /// `k = 5` with apex `v_2`, the triangle on `d` kept.
    Five(Vec<usize>),
    /// `k = 6` with `v' = v_2`; `d''` is the diagonal of `v_3 v_4 v_5 v_6`.
    SixNear(Vec<usize>, Edge),
    /// `k = 6` with `v' = v_1` and `v'' = v_5`.
    SixFar(Vec<usize>),
}

fn reversed(v: &[usize]) -> Vec<usize> {
    v.iter().rev().copied().collect()
}

fn diag_reduce(eng: &Engine<'_>, v: &[usize]) -> Reduction<Frame> {
    let k = v.len() - 1;
    match k {
        4 => Reduction { frame: Frame::Four(v.to_vec()), keep: Vec::new() },
        5 => {
            let w = if eng.apex(v[0], v[5]) == v[2] { v.to_vec() } else { reversed(v) };
            let keep = vec![tri(w[0], w[2], w[5])];
            Reduction { frame: Frame::Five(w), keep }
        }
        6 => {
            let reflect = eng.apex(v[0], v[3]) == v[1] && eng.apex(v[3], v[6]) == v[4];
            let w = if reflect { reversed(v) } else { v.to_vec() };
            let apex = |a: usize, b: usize| if reflect { eng.apex(b, a) } else { eng.apex(a, b) };
            let t0 = tri(w[0], w[3], w[6]);
            if apex(w[0], w[3]) == w[2] {
                let dpp = if apex(w[3], w[6]) == w[4] { edge(w[4], w[6]) } else { edge(w[3], w[5]) };
                let keep = vec![t0, tri(w[0], w[2], w[3])];
                Reduction { frame: Frame::SixNear(w, dpp), keep }
            } else {
                let keep = vec![t0, tri(w[0], w[1], w[3])];
                Reduction { frame: Frame::SixFar(w), keep }
            }
        }
        _ => unreachable!("candidate sides hold 4 to 6 boundary edges"),
    }
}

fn diag_unwind(t: &TriangulationGraph, f: &Frame, d: &mut WorkSet) {
    match f {
        Frame::Four(v) => {
            let w = if d.covered(v[0]) { v.clone() } else { reversed(v) };
            if t.has_edge(w[1], w[3]) {
                d.add(w[1], w[3]);
            } else if t.has_edge(w[2], w[4]) {
                d.add(w[2], w[4]);
            } else {
                d.add(w[2], w[3]);
            }
        }
        Frame::Five(w) => {
            if d.has(w[0], w[2]) {
                d.add(w[3], w[4]);
            } else if d.remove(w[2], w[5]) {
                d.add(w[0], w[2]);
                d.add(w[4], w[5]);
            } else {
                d.add(w[2], w[3]);
            }
        }
        Frame::SixNear(w, dpp) => {
            if d.has(w[0], w[2]) {
                d.add(dpp.0, dpp.1);
            } else if d.has(w[3], w[6]) {
                let v0_covered = d.covered(w[0]);
                d.remove(w[3], w[6]);
                if v0_covered {
                    d.add(w[2], w[3]);
                } else {
                    d.add(w[0], w[1]);
                }
                d.add(w[5], w[6]);
            } else {
                if !d.remove(w[0], w[3]) {
                    let removed = d.remove(w[2], w[3]);
                    debug_assert!(removed, "the triangle v0 v2 v3 needs d03 or e2");
                }
                d.add(w[0], w[2]);
                d.add(dpp.0, dpp.1);
            }
        }
        Frame::SixFar(w) => {
            if d.has(w[1], w[3]) {
                d.add(w[5], w[6]);
            } else if d.remove(w[0], w[3]) {
                d.add(w[0], w[1]);
                d.add(w[3], w[5]);
            } else if d.has(w[0], w[1]) {
                d.add(w[3], w[5]);
            } else {
                let removed = d.remove(w[3], w[6]);
                debug_assert!(removed, "the triangle v0 v1 v3 needs d36");
                d.add(w[1], w[3]);
                d.add(w[5], w[6]);
            }
        }
    }
}

fn diag_base(g: &TriangulationGraph) -> DominatingSet {
    if g.n() <= 7 {
        small_diag_set(g).expect("3 <= n <= 7")
    } else {
        diag_2dominate_contraction(g)
    }
}

/// Diagonal 2-dominating set by the linear-time queue algorithm.
pub fn diag_2dominate_linear(t: &TriangulationGraph) -> DominatingSet {
    diag_2dominate_linear_with_cutoff(t, DIAG_CUTOFF).0
}

/// The linear algorithm with a custom recursion cutoff, returning its
/// instrumentation counters. Cutoffs below [`DIAG_MIN_CUTOFF`] are raised to
/// it. Polygons with fewer than `cutoff` vertices left are solved by
/// [`small_diag_set`] or [`diag_2dominate_contraction`].
pub fn diag_2dominate_linear_with_cutoff(t: &TriangulationGraph, cutoff: usize) -> (DominatingSet, LinearStats) {
    run(
        t,
        Mode::DiagonalAllowed,
        4,
        cutoff.max(DIAG_MIN_CUTOFF),
        diag_reduce,
        diag_base,
        |f, d| diag_unwind(t, f, d),
    )
}
