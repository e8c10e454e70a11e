//! Edge 2-dominating sets: at most `floor((2n + 1) / 5)` edges in quadratic
//! time and at most `floor(3n / 7)` edges in linear time, with one extra
//! edge for `n = 4`.

use crate::diag_dominate::{ear_tips, DominateError};
use crate::reduction::{run, tri, Engine, PieceMap, Reduction, WorkSet};
pub use crate::reduction::{LinearStats, SplitStats};
use crate::trigraph::{
    contract_edge, edge, extract_polygon, find_separating_diagonal, Contraction, DominatingSet, Edge, Mode,
    TriangulationGraph,
};

/// Recursion cutoff of the linear algorithm.
pub const EDGE_CUTOFF: usize = 21;

/// Smallest cutoff accepted by [`edge_2dominate_linear_with_cutoff`].
pub const EDGE_MIN_CUTOFF: usize = 12;

/// The size `floor((2n + 1) / 5)` guaranteed by the quadratic algorithm,
/// and `2` for `n = 4`.
pub fn edge_bound(n: usize) -> usize {
    if n == 4 {
        2
    } else {
        (2 * n + 1) / 5
    }
}

/// The size `floor(3n / 7)` guaranteed by the linear algorithm, and `2`
/// for `n = 4`.
pub fn edge_bound_linear(n: usize) -> usize {
    if n == 4 {
        2
    } else {
        3 * n / 7
    }
}

fn edge_set(es: impl IntoIterator<Item = Edge>) -> DominatingSet {
    DominatingSet::from_edges(Mode::EdgeOnly, es)
}

/// The boundary edges `e_i = (lab(i), lab(i + 1))` for the given indices.
fn edges_at(lab: impl Fn(usize) -> usize, idx: &[usize]) -> Vec<Edge> {
    idx.iter().map(|&i| edge(lab(i), lab(i + 1))).collect()
}

/// Third vertex of the triangle on `{a, b}` whose third vertex is not `not`.
fn other_apex(t: &TriangulationGraph, a: usize, b: usize, not: usize) -> usize {
    t.edge_triangles(a, b)
        .into_iter()
        .map(|f| *t.triangles()[f].iter().find(|&&x| x != a && x != b).expect("three vertices"))
        .find(|&x| x != not)
        .expect("the edge has a second triangle")
}

/// Explicit edge 2-dominating sets for `3 <= n <= 9`.
///
/// `n in {3, 4, 5, 7}`: the first odd-indexed edges `e_1, e_3, ..`.
/// `n = 6`: the two edges next to an ear. `n = 8`: two uncovered vertices
/// three apart chosen from the ears. `n = 9`: a split off quadrilateral or
/// pentagon followed by a case analysis on the neighbouring apexes.
pub fn small_edge_set(t: &TriangulationGraph) -> Result<DominatingSet, DominateError> {
    let n = t.n();
    let e = |i: usize| edge(i % n, (i + 1) % n);
    match n {
        3 | 4 | 5 | 7 => Ok(edge_set((0..edge_bound(n)).map(|j| e(2 * j + 1)))),
        6 => {
            let i = ear_tips(t)[0];
            Ok(edge_set([e(i + 4), e(i + 1)]))
        }
        8 => Ok(edge_set(octagon_set(t))),
        9 => Ok(edge_set(enneagon_set(t))),
        _ => Err(DominateError::OutOfRange { n, min: 3, max: 9 }),
    }
}

/// Three edges leaving exactly two vertices uncovered, three apart along
/// the boundary and never in a common triangle.
///
/// With ear tips `a` and `b` three apart (in either direction) both tips
/// are left uncovered. Otherwise `a` and `a + 3` are left uncovered; `a`
/// only neighbours `a - 1` and `a + 1`, so the pair shares no triangle.
fn octagon_set(t: &TriangulationGraph) -> Vec<Edge> {
    let ears = ear_tips(t);
    let a = ears[0];
    let p = match ears[1..].iter().find(|&&b| matches!((b + 8 - a) % 8, 3 | 5)) {
        Some(&b) if (b + 8 - a) % 8 == 5 => b,
        _ => a,
    };
    let lab = |i: usize| (p + i) % 8;
    edges_at(lab, &[1, 4, 6])
}

/// The case analysis for nine vertices.
fn enneagon_set(t: &TriangulationGraph) -> Vec<Edge> {
    let sep = find_separating_diagonal(t, 3).expect("n = 9 >= 6");
    let v0 = sep.side[0];
    let idx = |x: usize| (x + 9 - v0) % 9;
    let plain = move |i: usize| (v0 + i) % 9;
    let near = [2, 5, 8];
    let far = [0, 3, 6];
    if sep.k == 3 {
        let a = idx(other_apex(t, plain(0), plain(3), t.apex_towards(plain(0), plain(3)).expect("quadrilateral")));
        let reflect = a >= 7;
        let lab = move |i: usize| if reflect { plain((3 + 9 - i % 9) % 9) } else { plain(i) };
        let a = if reflect { (3 + 9 - a) % 9 } else { a };
        let pick = if a == 4 {
            let vp = idx(other_apex(t, lab(0), lab(4), lab(3)));
            let vp = if reflect { (3 + 9 - vp) % 9 } else { vp };
            match vp {
                5 => near,
                6 | 7 => far,
                _ => {
                    let vpp = idx(other_apex(t, lab(4), lab(8), lab(0)));
                    let vpp = if reflect { (3 + 9 - vpp) % 9 } else { vpp };
                    if vpp == 5 {
                        near
                    } else {
                        far
                    }
                }
            }
        } else {
            near
        };
        edges_at(lab, &pick)
    } else {
        let reflect = !t.has_edge(plain(4), plain(8));
        let lab = move |i: usize| if reflect { plain((4 + 9 - i % 9) % 9) } else { plain(i) };
        edges_at(lab, &near)
    }
}

/// One level of [`edge_2dominate_quadratic`]. `v` holds the labels of the
/// split-off side after any reflection; `piece` maps the next level back.
struct QuadStep {
    piece: PieceMap,
    v: Vec<usize>,
    n: usize,
    kind: QuadKind,
}

enum QuadKind {
    /// Five edges; the rest was contracted along `d`. The vertex guard goes
    /// to `v_0` when the apex of `d` is `v_3` or `v_4`, else to `v_5`.
    Five { c: Contraction, chosen: usize },
    Six,
    /// Seven edges with apex `v_3`.
    Seven,
    /// Eight edges with apex `v_4`; `vp` is the index of the apex on
    /// `d_04`.
    Eight { vp: usize },
}

/// Edge 2-dominating set of size at most `floor((2n + 1) / 5)` (two for
/// `n = 4`) by recursive splitting with contractions, in `O(n^2)` time.
pub fn edge_2dominate_quadratic(t: &TriangulationGraph) -> DominatingSet {
    edge_2dominate_quadratic_with_stats(t).0
}

/// [`edge_2dominate_quadratic`] with its operation counters.
pub fn edge_2dominate_quadratic_with_stats(t: &TriangulationGraph) -> (DominatingSet, SplitStats) {
    let mut steps = Vec::new();
    let mut stats = SplitStats::default();
    let mut cur = t.clone();
    while cur.n() >= 10 {
        let n = cur.n();
        stats.steps += 1;
        stats.work += n;
        let sep = find_separating_diagonal(&cur, 5).expect("n >= 10");
        let v = sep.side;
        let k = sep.k;
        let apex = cur.apex_towards(v[0], v[k]).expect("diagonal");
        let ai = v.iter().position(|&x| x == apex).expect("apex on the side");
        let range = PieceMap::range(n, v[k], v[0]);
        let (piece, w, kind, next) = match k {
            5 => {
                let rest = extract_polygon(&cur, &range.labels()).graph;
                let (next, map) = contract_edge(&rest, (range.local(v[0]), range.local(v[5])))
                    .expect("the shared diagonal is a boundary edge of the rest");
                let c = Contraction { n: rest.n(), u: map.u, v: map.v, w: map.w };
                let chosen = range.local(if ai >= 3 { v[0] } else { v[5] });
                (range, v, QuadKind::Five { c, chosen }, next)
            }
            6 => {
                let rest = extract_polygon(&cur, &range.labels()).graph;
                (range, v, QuadKind::Six, rest)
            }
            7 => {
                let piece = range.with_extra(&[apex]);
                let next = extract_polygon(&cur, &piece.labels()).graph;
                let w = if ai == 4 { v.iter().rev().copied().collect() } else { v };
                (piece, w, QuadKind::Seven, next)
            }
            8 => {
                let vp = cur.apex_towards(v[0], v[4]).expect("diagonal d04");
                let vpi = v.iter().position(|&x| x == vp).expect("apex on the side");
                let piece = range.with_extra(&[vp, v[4]]);
                let next = extract_polygon(&cur, &piece.labels()).graph;
                (piece, v, QuadKind::Eight { vp: vpi }, next)
            }
            _ => unreachable!("lambda = 5 splits off 5 to 8 edges"),
        };
        steps.push(QuadStep { piece, v: w, n, kind });
        cur = next;
    }
    let mut set = small_edge_set(&cur).expect("3 <= n <= 9");
    for step in steps.iter().rev() {
        set = quad_unwind(step, &set);
    }
    (set, stats)
}

fn quad_unwind(step: &QuadStep, child: &DominatingSet) -> DominatingSet {
    let v = &step.v;
    let mut d = WorkSet::new(step.n);
    let e = |i: usize| (v[i], v[i + 1]);
    let add = |d: &mut WorkSet, idx: &[usize]| {
        for &i in idx {
            d.add(v[i], v[i + 1]);
        }
    };
    if let QuadKind::Five { c, chosen } = &step.kind {
        let lifted = c.lift(child, *chosen);
        for &m in &lifted.set.members {
            let (a, b) = step.piece.edge(m);
            d.add(a, b);
        }
        if lifted.pending == Some(step.piece.local(v[0])) {
            add(&mut d, &[0, 3]);
        } else {
            add(&mut d, &[1, 4]);
        }
        return d.into_set(Mode::EdgeOnly);
    }
    for &m in &child.members {
        let (a, b) = step.piece.edge(m);
        d.add(a, b);
    }
    let dg = |i: usize, j: usize| (v[i], v[j]);
    match &step.kind {
        QuadKind::Five { .. } => unreachable!(),
        QuadKind::Six => {
            if d.remove(v[0], v[6]) {
                add(&mut d, &[0, 2, 5]);
            } else if d.covered(v[0]) {
                add(&mut d, &[2, 4]);
            } else {
                add(&mut d, &[1, 3]);
            }
        }
        QuadKind::Seven => {
            let r03 = d.remove(v[0], v[3]);
            let r37 = d.remove(v[3], v[7]);
            if r03 || r37 {
                add(&mut d, &[0, 3, 6]);
            } else {
                add(&mut d, &[2, 4]);
            }
        }
        QuadKind::Eight { vp } => {
            let has = |d: &WorkSet, (a, b): (usize, usize)| d.has(a, b);
            match vp {
                1 => {
                    let (h14, h48) = (has(&d, dg(1, 4)), has(&d, dg(4, 8)));
                    match (h14, h48) {
                        (true, true) => {
                            d.remove(v[1], v[4]);
                            d.remove(v[4], v[8]);
                            add(&mut d, &[0, 3, 5, 7]);
                        }
                        (true, false) => {
                            let v8 = d.covered(v[8]);
                            d.remove(v[1], v[4]);
                            add(&mut d, if v8 { &[0, 3, 5] } else { &[2, 4, 7] });
                        }
                        (false, true) => {
                            d.remove(v[4], v[8]);
                            add(&mut d, &[2, 4, 7]);
                        }
                        (false, false) => add(&mut d, &[3, 5]),
                    }
                }
                2 => {
                    let h = [has(&d, dg(0, 2)), has(&d, dg(2, 4)), has(&d, dg(4, 8))];
                    let cnt = h.iter().filter(|&&x| x).count();
                    let v0 = d.covered(v[0]);
                    for (i, j) in [(0, 2), (2, 4), (4, 8)] {
                        d.remove(v[i], v[j]);
                    }
                    match (cnt, h) {
                        (2.., _) => add(&mut d, &[0, 3, 5, 7]),
                        (1, [true, _, _]) => add(&mut d, &[0, 3, 5]),
                        (1, [_, true, _]) => add(&mut d, if v0 { &[2, 4, 7] } else { &[0, 3, 5] }),
                        (1, _) => add(&mut d, &[2, 4, 7]),
                        _ => {
                            debug_assert!(false, "the triangle v0 v2 v4 needs one of d02, d24, d48");
                            add(&mut d, &[0, 3, 5, 7]);
                        }
                    }
                }
                _ => {
                    let (h03, h48) = (has(&d, dg(0, 3)), has(&d, dg(4, 8)));
                    let e3 = has(&d, e(3));
                    match (h03, h48) {
                        (true, true) => {
                            d.remove(v[0], v[3]);
                            d.remove(v[4], v[8]);
                            add(&mut d, &[0, 3, 5, 7]);
                        }
                        (true, false) => {
                            d.remove(v[0], v[3]);
                            add(&mut d, if e3 { &[0, 5, 7] } else { &[0, 3, 5] });
                        }
                        (false, true) => {
                            d.remove(v[4], v[8]);
                            add(&mut d, if e3 { &[0, 5, 7] } else { &[2, 4, 7] });
                        }
                        (false, false) => {
                            if d.covered(v[8]) {
                                add(&mut d, &[0, 5]);
                            } else {
                                d.remove(v[3], v[4]);
                                add(&mut d, &[2, 4, 7]);
                            }
                        }
                    }
                }
            }
        }
    }
    d.into_set(Mode::EdgeOnly)
}

/// Reduction records of the linear algorithm. `v` holds the labels of the
/// removed side after any reflection.
enum Frame {
    /// Six edges, whole side removed. `a` is the apex index of `d`; `vp`
    /// the apex index on `d_16` when `a = 1` or on `d_05` when `a = 5`.
    Six { v: Vec<usize>, a: usize, vp: usize },
    /// Seven edges, apex `v_2` kept; `vp` is the apex index on `d_27`.
    SevenNear { v: Vec<usize>, vp: usize },
    /// Seven edges, apex `v_3` kept.
    SevenFar { v: Vec<usize> },
    /// Eight edges, whole side removed.
    Eight { v: Vec<usize> },
    /// Nine edges, apex `v_4` kept.
    Nine { v: Vec<usize> },
    /// Ten edges, apex `v_5` and the triangle on `d_05` with apex `v_p`
    /// kept, `p in 1..=4`.
    Ten { v: Vec<usize>, p: usize },
}

fn reversed(v: &[usize]) -> Vec<usize> {
    v.iter().rev().copied().collect()
}

fn edge_reduce(eng: &Engine<'_>, v: &[usize]) -> Reduction<Frame> {
    let k = v.len() - 1;
    let index = |w: &[usize], x: usize| w.iter().position(|&y| y == x).expect("vertex of the side");
    let a = index(v, eng.apex(v[0], v[k]));
    match k {
        6 => {
            let vp = match a {
                1 => index(v, eng.apex(v[1], v[6])),
                5 => index(v, eng.apex(v[0], v[5])),
                _ => 0,
            };
            Reduction { frame: Frame::Six { v: v.to_vec(), a, vp }, keep: Vec::new() }
        }
        7 => {
            let reflect = a >= 4;
            let w = if reflect { reversed(v) } else { v.to_vec() };
            let keep = vec![tri(w[0], w[7], if reflect { w[7 - a] } else { w[a] })];
            if (if reflect { 7 - a } else { a }) == 2 {
                let apex = if reflect { eng.apex(w[7], w[2]) } else { eng.apex(w[2], w[7]) };
                let vp = index(&w, apex);
                Reduction { frame: Frame::SevenNear { v: w, vp }, keep }
            } else {
                Reduction { frame: Frame::SevenFar { v: w }, keep }
            }
        }
        8 => Reduction { frame: Frame::Eight { v: v.to_vec() }, keep: Vec::new() },
        9 => {
            let w = if a == 5 { reversed(v) } else { v.to_vec() };
            let keep = vec![tri(w[0], w[4], w[9])];
            Reduction { frame: Frame::Nine { v: w }, keep }
        }
        10 => {
            let p = index(v, eng.apex(v[0], v[5]));
            let pp = index(v, eng.apex(v[5], v[10]));
            let (w, p) = if p == 4 && pp != 6 { (reversed(v), 10 - pp) } else { (v.to_vec(), p) };
            let keep = vec![tri(w[0], w[5], w[10]), tri(w[0], w[p], w[5])];
            Reduction { frame: Frame::Ten { v: w, p }, keep }
        }
        _ => unreachable!("candidate sides hold 6 to 10 boundary edges"),
    }
}

fn edge_unwind(f: &Frame, d: &mut WorkSet) {
    let add = |d: &mut WorkSet, v: &[usize], idx: &[usize]| {
        for &i in idx {
            d.add(v[i], v[i + 1]);
        }
    };
    match f {
        Frame::Six { v, a, vp } => {
            if d.remove(v[0], v[6]) {
                add(d, v, &[0, 2, 5]);
            } else if d.covered(v[0]) && d.covered(v[6]) {
                add(d, v, &[1, 4]);
            } else if d.covered(v[0]) {
                let idx: &[usize] = match (a, vp) {
                    (1, 2 | 3) => &[2, 5],
                    (1, _) => &[1, 4],
                    _ => &[2, 4],
                };
                add(d, v, idx);
            } else {
                let idx: &[usize] = match (a, vp) {
                    (5, 1 | 2) => &[1, 4],
                    (5, _) => &[0, 3],
                    _ => &[1, 3],
                };
                add(d, v, idx);
            }
        }
        Frame::SevenNear { v, vp } => match (d.has(v[0], v[2]), d.has(v[2], v[7])) {
            (true, true) => {
                d.remove(v[0], v[2]);
                d.remove(v[2], v[7]);
                add(d, v, &[0, 2, 4, 6]);
            }
            (true, false) => {
                d.remove(v[0], v[2]);
                add(d, v, if *vp <= 4 { &[0, 3, 6] } else { &[0, 2, 5] });
            }
            (false, true) => {
                d.remove(v[2], v[7]);
                add(d, v, &[1, 4, 6]);
            }
            (false, false) => add(d, v, &[2, 5]),
        },
        Frame::SevenFar { v } => {
            let r03 = d.remove(v[0], v[3]);
            let r37 = d.remove(v[3], v[7]);
            add(d, v, if r03 || r37 { &[0, 3, 6] } else { &[2, 5] });
        }
        Frame::Eight { v } => {
            if d.remove(v[0], v[8]) {
                add(d, v, &[0, 3, 5, 7]);
            } else if d.covered(v[0]) {
                add(d, v, &[2, 4, 7]);
            } else {
                add(d, v, &[0, 3, 5]);
            }
        }
        Frame::Nine { v } => {
            let r04 = d.remove(v[0], v[4]);
            let r49 = d.remove(v[4], v[9]);
            add(d, v, if r04 || r49 { &[0, 3, 5, 8] } else { &[2, 4, 6] });
        }
        Frame::Ten { v, p } => match p {
            1 => {
                let r15 = d.remove(v[1], v[5]);
                let r510 = d.remove(v[5], v[10]);
                add(d, v, if r15 || r510 { &[1, 4, 6, 9] } else { &[3, 5, 7] });
            }
            2 | 3 => {
                let dp = d.has(v[0], v[*p]);
                let present = [dp, d.has(v[*p], v[5]), d.has(v[5], v[10])];
                let cnt = present.iter().filter(|&&x| x).count();
                let v0_elsewhere = d.cover_count(v[0]) > u32::from(dp);
                d.remove(v[0], v[*p]);
                d.remove(v[*p], v[5]);
                d.remove(v[5], v[10]);
                let idx: &[usize] = if cnt >= 2 {
                    &[0, 2, 5, 7, 9]
                } else if v0_elsewhere {
                    &[2, 5, 7, 9]
                } else {
                    &[0, 2, 5, 7]
                };
                debug_assert!(cnt >= 1, "the triangle v0 v' v5 needs one of d', d'', d_5,10");
                add(d, v, idx);
            }
            _ => {
                let r04 = d.remove(v[0], v[4]);
                let r510 = d.remove(v[5], v[10]);
                if !(r04 || r510) {
                    let removed = d.remove(v[4], v[5]);
                    debug_assert!(removed, "the triangle v0 v4 v5 needs e4");
                }
                add(d, v, &[0, 3, 6, 9]);
            }
        },
    }
}

/// Edge 2-dominating set of size at most `floor(3n / 7)` (two for `n = 4`)
/// by the linear-time queue algorithm.
pub fn edge_2dominate_linear(t: &TriangulationGraph) -> DominatingSet {
    edge_2dominate_linear_with_cutoff(t, EDGE_CUTOFF).0
}

/// The linear algorithm with a custom recursion cutoff, returning its
/// instrumentation counters. Cutoffs below [`EDGE_MIN_CUTOFF`] are raised
/// to it. Polygons with fewer than `cutoff` vertices left are solved by
/// [`edge_2dominate_quadratic`].
pub fn edge_2dominate_linear_with_cutoff(t: &TriangulationGraph, cutoff: usize) -> (DominatingSet, LinearStats) {
    run(
        t,
        Mode::EdgeOnly,
        6,
        cutoff.max(EDGE_MIN_CUTOFF),
        edge_reduce,
        edge_2dominate_quadratic,
        edge_unwind,
    )
}
