//! Dynamic programming over a contraction sequence of the template, in time
//! `O((w + 2)^n n^2)` for a sequence of component-width `w`.
//!
//! A table belongs to each e-component `(T_1, ..., T_p)` of the current
//! contracted template. Its key assigns every instance vertex a digit in
//! `0..=p` (0 for unassigned, `i` for `S_i`), read as a base-`(p + 1)`
//! number with vertex 0 least significant.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{members, ContractionSequence, EdgeLabelledGraph, VertexSet};
use crate::morphism::{check_problem, MorphismRelation};
use crate::premorphism::{singleton_in, PreMorphism, WeightMatrix};
use crate::profile::{
    check_sequence_base, checked_size, component_key, component_reps, Observer, ProfileSnapshot, ProfileTableView,
    SolveRun,
};
use crate::semiring::{Carrier, CostCount, Nat, Semiring};

/// Largest instance the solver accepts.
pub const MAX_INSTANCE: usize = 30;
/// Largest table or per-step candidate count the solver accepts.
pub const MAX_ENTRIES: usize = 1 << 34;

struct Table<S> {
    parts: Vec<usize>,
    values: Vec<S>,
}

/// `Omega_W` of the set of R-morphisms `G -> H`.
pub fn solve_fine(
    g: &EdgeLabelledGraph,
    h: &EdgeLabelledGraph,
    r: &MorphismRelation,
    seq_h: &ContractionSequence,
    pm: PreMorphism,
    w: &WeightMatrix,
) -> Result<crate::semiring::SemiringValue> {
    Ok(solve_fine_run(g, h, r, seq_h, pm, w)?.value)
}

/// [`solve_fine`] with the operation counter and width of the run.
pub fn solve_fine_run(
    g: &EdgeLabelledGraph,
    h: &EdgeLabelledGraph,
    r: &MorphismRelation,
    seq_h: &ContractionSequence,
    pm: PreMorphism,
    w: &WeightMatrix,
) -> Result<SolveRun> {
    solve_fine_observed(g, h, r, seq_h, pm, w, None)
}

/// [`solve_fine_run`], reporting every live table after initialization and
/// after each merge. Meant for tiny instances.
pub fn solve_fine_observed(
    g: &EdgeLabelledGraph,
    h: &EdgeLabelledGraph,
    r: &MorphismRelation,
    seq_h: &ContractionSequence,
    pm: PreMorphism,
    w: &WeightMatrix,
    observer: Option<Observer<'_>>,
) -> Result<SolveRun> {
    check_problem(g, h, r, pm, w)?;
    check_sequence_base(seq_h, h, "template")?;
    if h.vertex_count() == 0 {
        return Err(Error::InvalidGraph("the template has no vertices".into()));
    }
    if g.vertex_count() > MAX_INSTANCE {
        return Err(Error::TooLarge {
            vertices: g.vertex_count(),
            limit: MAX_INSTANCE,
        });
    }
    let solver = Solver { g, h, r, seq: seq_h, pm, w };
    let (value, op_count) = match pm.carrier() {
        Carrier::Bool => {
            let (v, ops) = solver.run::<bool>(observer)?;
            (v.into_value(), ops)
        }
        Carrier::Nat => {
            let (v, ops) = solver.run::<Nat>(observer)?;
            (v.into_value(), ops)
        }
        Carrier::Pair => {
            let (v, ops) = solver.run::<CostCount>(observer)?;
            (v.into_value(), ops)
        }
    };
    Ok(SolveRun {
        value,
        op_count,
        width: seq_h.component_width(),
    })
}

/// Depth-first enumeration of the option vectors of one merge step, highest
/// vertex first. A subtree whose placed vertices already violate the relation
/// is rejected whole and counted by its number of complete vectors.
struct Walk<'t, S> {
    n: usize,
    nopt: usize,
    /// `subtree[level]`: complete vectors below a node at `level`.
    subtree: &'t [u64],
    /// `bad[(o * nopt + o2) * n + u]`: vertices `v` such that `u` in option
    /// `o` and `v` in option `o2` break the relation in either direction.
    bad: &'t [u64],
    new_digit: &'t [usize],
    new_pow: &'t [usize],
    table_of: &'t [usize],
    local_digit: &'t [usize],
    old_pow: &'t [Vec<usize>],
    olds: &'t [Table<S>],
    new_values: Vec<S>,
    sets: Vec<u64>,
    old_key: Vec<usize>,
    examined: u64,
}

impl<S: Semiring> Walk<'_, S> {
    /// Putting `u` in option `o` breaks the relation against itself or a
    /// vertex already placed.
    #[inline]
    fn conflicts(&self, u: usize, o: usize) -> bool {
        let base = o * self.nopt;
        if self.bad[(base + o) * self.n + u] >> u & 1 == 1 {
            return true;
        }
        (1..self.nopt).any(|o2| self.sets[o2] & self.bad[(base + o2) * self.n + u] != 0)
    }

    fn visit(&mut self, level: usize, new_key: usize) {
        if level == 0 {
            self.examined += 1;
            self.write(new_key);
            return;
        }
        let u = level - 1;
        if u == 0 {
            self.examined += self.nopt as u64;
            self.write(new_key);
            for o in 1..self.nopt {
                if !self.conflicts(0, o) {
                    let j = self.table_of[o];
                    self.old_key[j] += self.local_digit[o];
                    self.write(new_key + self.new_digit[o]);
                    self.old_key[j] -= self.local_digit[o];
                }
            }
            return;
        }
        self.visit(u, new_key);
        for o in 1..self.nopt {
            if self.conflicts(u, o) {
                self.examined += self.subtree[u];
                continue;
            }
            let j = self.table_of[o];
            let shift = self.local_digit[o] * self.old_pow[j][u];
            self.sets[o] |= 1 << u;
            self.old_key[j] += shift;
            self.visit(u, new_key + self.new_digit[o] * self.new_pow[u]);
            self.old_key[j] -= shift;
            self.sets[o] &= !(1 << u);
        }
    }

    #[inline]
    fn write(&mut self, new_key: usize) {
        let mut product: Option<S> = None;
        for (j, t) in self.olds.iter().enumerate() {
            let v = &t.values[self.old_key[j]];
            if v.is_zero() {
                return;
            }
            product = Some(match product {
                None => v.clone(),
                Some(acc) => acc.mul(v),
            });
        }
        self.new_values[new_key].add_assign(&product.unwrap_or_else(S::one));
    }
}

struct Solver<'a> {
    g: &'a EdgeLabelledGraph,
    h: &'a EdgeLabelledGraph,
    r: &'a MorphismRelation,
    seq: &'a ContractionSequence,
    pm: PreMorphism,
    w: &'a WeightMatrix,
}

impl Solver<'_> {
    fn run<S: Semiring>(&self, mut observer: Option<Observer<'_>>) -> Result<(S, u64)> {
        let (g, h, r) = (self.g, self.h, self.r);
        let n = g.vertex_count();
        let mut ops = 0u64;
        let mut tables: BTreeMap<usize, Table<S>> = BTreeMap::new();
        for a in 0..h.vertex_count() {
            let loop_label = h.label(a, a);
            // ok[u]: vertices v with (l_G(u, v), l_H(a, a)) in R
            let ok: Vec<VertexSet> = (0..n)
                .map(|u| (0..n).filter(|&v| r.contains(g.label(u, v), loop_label)).fold(0, |acc, v| acc | 1 << v))
                .collect();
            let mut values = vec![S::zero(); 1 << n];
            for (s, slot) in values.iter_mut().enumerate() {
                ops += 1;
                let s = s as VertexSet;
                if members(s).all(|u| s & !ok[u] == 0) {
                    *slot = singleton_in(self.pm, self.w, s, a);
                }
            }
            tables.insert(a, Table { parts: vec![a], values });
        }
        if let Some(obs) = observer.as_deref_mut() {
            obs(&self.snapshot(0, &tables));
        }
        for (k, &(a, b)) in self.seq.merges().iter().enumerate() {
            ops += self.merge_step(k, a, b, &mut tables)?;
            if let Some(obs) = observer.as_deref_mut() {
                obs(&self.snapshot(k + 1, &tables));
            }
        }
        let last = tables.remove(&0).expect("one component remains");
        debug_assert!(tables.is_empty() && last.parts == [0]);
        let full = (1usize << n) - 1;
        Ok((last.values[full].clone(), ops))
    }

    /// Fold the tables touched by merging parts `a < b` into one table for
    /// the new component of the merged part. Returns the candidates examined.
    fn merge_step<S: Semiring>(&self, k: usize, a: usize, b: usize, tables: &mut BTreeMap<usize, Table<S>>) -> Result<u64> {
        let g = self.g;
        let n = g.vertex_count();
        let before = &self.seq.steps()[k];
        let after = &self.seq.steps()[k + 1];
        let new_parts = component_reps(after, a);
        let p = new_parts.len();
        let mut ext = new_parts.clone();
        ext.push(b);
        ext.sort_unstable();

        let mut keys: Vec<usize> = ext.iter().map(|&x| component_key(before, x)).collect();
        keys.sort_unstable();
        keys.dedup();
        let olds: Vec<Table<S>> = keys
            .iter()
            .map(|key| tables.remove(key).expect("table of a live component"))
            .collect();

        // Options: 0 is unassigned, o >= 1 is the extended part ext[o - 1].
        let nopt = p + 2;
        let new_size = checked_size(p + 1, n, MAX_ENTRIES)?;
        let candidates = checked_size(nopt, n, MAX_ENTRIES)?;
        let mut new_digit = vec![0usize; nopt];
        let mut table_of = vec![usize::MAX; nopt];
        let mut local_digit = vec![0usize; nopt];
        for (i, &x) in ext.iter().enumerate() {
            let o = i + 1;
            let target = if x == b { a } else { x };
            new_digit[o] = new_parts.iter().position(|&y| y == target).unwrap() + 1;
            let j = olds.iter().position(|t| t.parts.contains(&x)).expect("part has a table");
            table_of[o] = j;
            local_digit[o] = olds[j].parts.iter().position(|&y| y == x).unwrap() + 1;
        }
        let pow = |base: usize| -> Vec<usize> { (0..n).map(|u| base.pow(u as u32)).collect() };
        let new_pow = pow(p + 1);
        let old_pow: Vec<Vec<usize>> = olds.iter().map(|t| pow(t.parts.len() + 1)).collect();

        let idx_of = |x: usize| before.partition.index_of_representative(x).unwrap();
        let mut bad = vec![0u64; nopt * nopt * n];
        for o in 1..nopt {
            for o2 in 1..nopt {
                let l = before.graph.label(idx_of(ext[o - 1]), idx_of(ext[o2 - 1]));
                let back = before.graph.label(idx_of(ext[o2 - 1]), idx_of(ext[o - 1]));
                for u in 0..n {
                    let mut mask = 0u64;
                    for v in 0..n {
                        if (!l.is_e() && !self.r.contains(g.label(u, v), l))
                            || (!back.is_e() && !self.r.contains(g.label(v, u), back))
                        {
                            mask |= 1 << v;
                        }
                    }
                    bad[(o * nopt + o2) * n + u] = mask;
                }
            }
        }

        let subtree: Vec<u64> = (0..=n).map(|l| (nopt as u64).pow(l as u32)).collect();
        let mut walk = Walk {
            n,
            nopt,
            subtree: &subtree,
            bad: &bad,
            new_digit: &new_digit,
            new_pow: &new_pow,
            table_of: &table_of,
            local_digit: &local_digit,
            old_pow: &old_pow,
            olds: &olds,
            new_values: vec![S::zero(); new_size],
            sets: vec![0u64; nopt],
            old_key: vec![0usize; olds.len()],
            examined: 0,
        };
        walk.visit(n, 0);
        let Walk { new_values, examined, .. } = walk;
        debug_assert_eq!(examined as usize, candidates);
        tables.insert(
            new_parts[0],
            Table {
                parts: new_parts,
                values: new_values,
            },
        );
        Ok(examined)
    }

    fn snapshot<S: Semiring>(&self, merges_done: usize, tables: &BTreeMap<usize, Table<S>>) -> ProfileSnapshot {
        let n = self.g.vertex_count();
        let step = &self.seq.steps()[merges_done];
        let views = tables
            .values()
            .map(|t| {
                let base = t.parts.len() + 1;
                let entries = t
                    .values
                    .iter()
                    .enumerate()
                    .map(|(mut code, v)| {
                        let mut sets = vec![0u64; t.parts.len()];
                        for u in 0..n {
                            let d = code % base;
                            code /= base;
                            if d > 0 {
                                sets[d - 1] |= 1 << u;
                            }
                        }
                        (sets, v.clone().into_value())
                    })
                    .collect();
                ProfileTableView {
                    part_sets: t
                        .parts
                        .iter()
                        .map(|&x| step.partition.part_set(step.partition.index_of_representative(x).unwrap()))
                        .collect(),
                    entries,
                }
            })
            .collect();
        ProfileSnapshot {
            merges_done,
            tables: views,
        }
    }
}
