//! Exact brute-force 2-domination solvers used as ground truth.

use rayon::prelude::*;
use thiserror::Error;

use crate::trigraph::{
    enumerate_diagonal_sets, build_from_diagonals, is_2_dominated, DominatingSet, Edge, GraphError,
    Mode, TriangulationGraph,
};

/// Largest `n` accepted by [`min_2dominating_set`].
pub const MAX_ORACLE_N: usize = 14;

/// Largest `n` accepted by [`check_bound_exhaustive`].
pub const MAX_EXHAUSTIVE_N: usize = 12;

/// Errors raised by the oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("n = {n} exceeds the oracle limit {max}")]
    NTooLarge { n: usize, max: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

struct Search<'a> {
    cand_masks: Vec<u32>,
    tri_masks: &'a [u32],
    /// Largest candidate index covering each vertex, or `None`.
    last_cover: Vec<Option<usize>>,
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn valid(&self, covered: u32) -> bool {
        self.tri_masks.iter().all(|&t| (t & covered).count_ones() >= 2)
    }

    /// A vertex is dead when it is uncovered and no candidate at index
    /// `>= from` can cover it. A triangle with two dead vertices can never
    /// be 2-dominated.
    fn hopeless(&self, covered: u32, from: usize) -> bool {
        let dead = |v: usize| {
            covered & (1 << v) == 0 && self.last_cover[v].is_none_or(|l| l < from)
        };
        self.tri_masks.iter().any(|&t| {
            let mut c = 0;
            let mut m = t;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                if dead(v) {
                    c += 1;
                }
            }
            c >= 2
        })
    }

    fn dfs(&mut self, from: usize, left: usize, covered: u32) -> bool {
        if left == 0 {
            return self.valid(covered);
        }
        if self.hopeless(covered, from) {
            return false;
        }
        let m = self.cand_masks.len();
        for i in from..m {
            if m - i < left {
                break;
            }
            self.chosen.push(i);
            if self.dfs(i + 1, left - 1, covered | self.cand_masks[i]) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }
}

/// Candidate members for `mode` in lexicographic order.
fn candidates(t: &TriangulationGraph, mode: Mode) -> Vec<Edge> {
    let mut c = t.boundary_edges();
    if mode == Mode::DiagonalAllowed {
        c.extend_from_slice(t.diagonals());
    }
    c.sort_unstable();
    c
}

/// A minimum-cardinality 2-dominating set of `t` using boundary edges only
/// (`EdgeOnly`) or edges and diagonals (`DiagonalAllowed`).
///
/// Sizes are tried in increasing order; within a size, candidate subsets
/// are visited in lexicographic order and the first valid one is returned.
pub fn min_2dominating_set(
    t: &TriangulationGraph,
    mode: Mode,
) -> Result<(usize, DominatingSet), OracleError> {
    let n = t.n();
    if n > MAX_ORACLE_N {
        return Err(OracleError::NTooLarge { n, max: MAX_ORACLE_N });
    }
    let cands = candidates(t, mode);
    let tri_masks: Vec<u32> =
        t.triangles().iter().map(|tr| tr.iter().fold(0u32, |m, &v| m | (1 << v))).collect();
    let mut last_cover = vec![None; n];
    for (i, &(a, b)) in cands.iter().enumerate() {
        last_cover[a] = Some(i);
        last_cover[b] = Some(i);
    }
    let mut s = Search {
        cand_masks: cands.iter().map(|&(a, b)| (1u32 << a) | (1u32 << b)).collect(),
        tri_masks: &tri_masks,
        last_cover,
        chosen: Vec::new(),
    };
    for size in 1..=cands.len() {
        s.chosen.clear();
        if s.dfs(0, size, 0) {
            let d = DominatingSet::from_edges(mode, s.chosen.iter().map(|&i| cands[i]));
            return Ok((size, d));
        }
    }
    unreachable!("the full candidate set always 2-dominates")
}

/// One failed check during an exhaustive run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub diagonals: Vec<Edge>,
    pub size: usize,
    pub bound: usize,
    pub optimum: usize,
    pub reason: String,
}

/// Outcome of [`check_bound_exhaustive`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustiveReport {
    pub n: usize,
    pub mode: Mode,
    pub instances: usize,
    /// Largest set size returned by the algorithm.
    pub max_size: usize,
    pub violations: Vec<Violation>,
}

impl ExhaustiveReport {
    /// Whether no violation was found.
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks one instance: validity, mode, bound and optimality gap.
pub fn check_instance(
    t: &TriangulationGraph,
    mode: Mode,
    set: &DominatingSet,
    bound: usize,
    with_oracle: bool,
) -> Option<Violation> {
    let optimum = if with_oracle && t.n() <= MAX_ORACLE_N {
        min_2dominating_set(t, mode).map(|r| r.0).unwrap_or(0)
    } else {
        0
    };
    let fail = |reason: String| {
        Some(Violation {
            diagonals: t.diagonals().to_vec(),
            size: set.len(),
            bound,
            optimum,
            reason,
        })
    };
    if set.mode != mode {
        return fail(format!("mode {:?} differs from {:?}", set.mode, mode));
    }
    match is_2_dominated(t, set) {
        Ok(true) => {}
        Ok(false) => return fail("not 2-dominating".into()),
        Err(e) => return fail(e.to_string()),
    }
    if set.len() > bound {
        return fail(format!("size {} exceeds bound {}", set.len(), bound));
    }
    if set.len() < optimum {
        return fail(format!("size {} below the optimum {}", set.len(), optimum));
    }
    None
}

/// Runs `algorithm` on every triangulation of the convex `n`-gon and checks
/// validity, the bound `bound(n)` and that the oracle optimum does not
/// exceed the returned size. Violations are reported in enumeration order.
pub fn check_bound_exhaustive<A, B>(
    n: usize,
    mode: Mode,
    algorithm: A,
    bound: B,
) -> Result<ExhaustiveReport, OracleError>
where
    A: Fn(&TriangulationGraph) -> DominatingSet + Sync,
    B: Fn(usize) -> usize,
{
    if n > MAX_EXHAUSTIVE_N {
        return Err(OracleError::NTooLarge { n, max: MAX_EXHAUSTIVE_N });
    }
    let sets = enumerate_diagonal_sets(n)?;
    let b = bound(n);
    let results: Vec<(usize, Option<Violation>)> = sets
        .par_iter()
        .map(|d| {
            let t = build_from_diagonals(n, d).expect("enumerated diagonals are valid");
            let set = algorithm(&t);
            (set.len(), check_instance(&t, mode, &set, b, true))
        })
        .collect();
    Ok(ExhaustiveReport {
        n,
        mode,
        instances: results.len(),
        max_size: results.iter().map(|r| r.0).max().unwrap_or(0),
        violations: results.into_iter().filter_map(|r| r.1).collect(),
    })
}
