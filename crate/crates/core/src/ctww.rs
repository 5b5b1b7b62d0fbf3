//! Exact component twin-width by branch-and-bound over merge orders.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{validate_sequence, ContractionSequence, EdgeLabelledGraph, Label, UnionFind, VertexSet};

pub const DEFAULT_SIZE_CAP: usize = 12;

#[derive(Clone, Copy, Debug)]
pub struct CtwwOptions {
    /// Stop at the first sequence of width at most this bound.
    pub budget: Option<usize>,
    /// Largest graph the exact search accepts.
    pub size_cap: usize,
}

impl Default for CtwwOptions {
    fn default() -> Self {
        CtwwOptions {
            budget: None,
            size_cap: DEFAULT_SIZE_CAP,
        }
    }
}

/// Current contracted graph during the search. Parts are bitmasks over the
/// base vertices, kept sorted by their minimum vertex.
#[derive(Clone)]
struct State {
    parts: Vec<VertexSet>,
    labels: Vec<Label>,
}

impl State {
    fn k(&self) -> usize {
        self.parts.len()
    }

    fn label(&self, i: usize, j: usize) -> Label {
        self.labels[i * self.k() + j]
    }

    /// Merge parts `i < j`. The label between the merged part and another
    /// part survives only when both halves agree on it; the diagonal survives
    /// only when all four blocks agree.
    fn merge(&self, i: usize, j: usize) -> State {
        let k = self.k();
        let combine = |a: Label, b: Label| if a == b { a } else { Label::E };
        let keep: Vec<usize> = (0..k).filter(|&x| x != j).collect();
        let mut labels = Vec::with_capacity((k - 1) * (k - 1));
        for &x in &keep {
            for &y in &keep {
                let l = match (x == i, y == i) {
                    (true, true) => {
                        let d = combine(self.label(i, i), self.label(j, j));
                        combine(d, combine(self.label(i, j), self.label(j, i)))
                    }
                    (true, false) => combine(self.label(i, y), self.label(j, y)),
                    (false, true) => combine(self.label(x, i), self.label(x, j)),
                    (false, false) => self.label(x, y),
                };
                labels.push(l);
            }
        }
        let mut parts: Vec<VertexSet> = keep.iter().map(|&x| self.parts[x]).collect();
        parts[i] |= self.parts[j];
        State { parts, labels }
    }

    fn max_component(&self) -> usize {
        let k = self.k();
        let mut uf = UnionFind::new(k);
        for u in 0..k {
            for v in (u + 1)..k {
                if self.label(u, v).is_e() || self.label(v, u).is_e() {
                    uf.union(u, v);
                }
            }
        }
        let mut size = vec![0usize; k];
        for v in 0..k {
            let r = uf.find(v);
            size[r] += 1;
        }
        size.into_iter().max().unwrap_or(0)
    }
}

struct Search {
    best: usize,
    best_merges: Option<Vec<(usize, usize)>>,
    stop_at: usize,
    memo: HashMap<Vec<VertexSet>, usize>,
    path: Vec<(usize, usize)>,
}

impl Search {
    fn done(&self) -> bool {
        self.best_merges.is_some() && self.best <= self.stop_at
    }

    fn explore(&mut self, state: &State, running: usize) {
        if state.k() == 1 {
            if running < self.best || self.best_merges.is_none() {
                self.best = running;
                self.best_merges = Some(self.path.clone());
            }
            return;
        }
        match self.memo.get(&state.parts) {
            Some(&seen) if seen <= running => return,
            _ => {
                self.memo.insert(state.parts.clone(), running);
            }
        }
        let k = state.k();
        let mut children: Vec<(usize, usize, usize, State)> = Vec::new();
        for i in 0..k {
            for j in (i + 1)..k {
                let next = state.merge(i, j);
                let width = running.max(next.max_component());
                if width < self.best {
                    children.push((width, i, j, next));
                }
            }
        }
        children.sort_by_key(|c| (c.0, c.1, c.2));
        for (width, i, j, next) in children {
            if width >= self.best || self.done() {
                break;
            }
            let rep = |p: VertexSet| p.trailing_zeros() as usize;
            self.path.push((rep(state.parts[i]), rep(state.parts[j])));
            self.explore(&next, width);
            self.path.pop();
            if self.done() {
                return;
            }
        }
    }
}

/// Minimum component-width over all contraction sequences of `h`, with a
/// sequence attaining it. With a budget, returns the first sequence of width
/// at most the budget, or `Ok(None)` when there is none.
pub fn ctww_search(h: &EdgeLabelledGraph, opts: CtwwOptions) -> Result<Option<(usize, ContractionSequence)>> {
    h.require_e_free()?;
    let n = h.vertex_count();
    if n > opts.size_cap {
        return Err(Error::TooLarge {
            vertices: n,
            limit: opts.size_cap,
        });
    }
    if n == 0 {
        return Err(Error::InvalidGraph("contraction sequences need at least one vertex".into()));
    }
    let root = State {
        parts: (0..n).map(|v| 1u64 << v).collect(),
        labels: h.labels().to_vec(),
    };
    let (best, stop_at) = match opts.budget {
        Some(b) => (b + 1, b),
        None => (usize::MAX, 1),
    };
    let mut search = Search {
        best,
        best_merges: None,
        stop_at,
        memo: HashMap::new(),
        path: Vec::new(),
    };
    // Every sequence has width at least 1.
    search.explore(&root, 1);
    match search.best_merges {
        Some(merges) => {
            let seq = validate_sequence(h, &merges)?;
            debug_assert_eq!(seq.component_width(), search.best);
            Ok(Some((seq.component_width(), seq)))
        }
        None => Ok(None),
    }
}

/// Exact component twin-width and an optimal sequence.
pub fn ctww_exact(h: &EdgeLabelledGraph) -> Result<(usize, ContractionSequence)> {
    let found = ctww_search(h, CtwwOptions::default())?;
    Ok(found.expect("an unbounded search always finds a sequence"))
}
