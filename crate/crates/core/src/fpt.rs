//! Dynamic programming over a contraction sequence of the instance, in time
//! `O((2^m - 1)^w n^2)` for a sequence of component-width `w` and a template
//! on `m` vertices.
//!
//! A table belongs to each e-component `(S_1, ..., S_p)` of the current
//! contracted instance. Its key is a tuple of nonempty target sets
//! `(T_1, ..., T_p)`, stored as the base-`(2^m - 1)` number with digits
//! `T_i - 1`, part 1 least significant.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{members, ContractionSequence, EdgeLabelledGraph, Label, VertexSet};
use crate::morphism::{check_problem, MorphismRelation};
use crate::premorphism::{singleton_in, PreMorphism, WeightMatrix};
use crate::profile::{
    check_sequence_base, checked_size, component_key, component_reps, Observer, ProfileSnapshot, ProfileTableView,
    SolveRun,
};
use crate::semiring::{Carrier, CostCount, Nat, Semiring, SemiringValue};

/// Largest template the solver accepts.
pub const MAX_TEMPLATE: usize = 16;
/// Largest table or per-step candidate count the solver accepts.
pub const MAX_ENTRIES: usize = 1 << 34;

struct Table<S> {
    parts: Vec<usize>,
    values: Vec<S>,
}

/// `Omega_W` of the set of R-morphisms `G -> H`, for strong, corestriction
/// independent pre-morphisms.
pub fn solve_fpt(
    g: &EdgeLabelledGraph,
    seq_g: &ContractionSequence,
    h: &EdgeLabelledGraph,
    r: &MorphismRelation,
    pm: PreMorphism,
    w: &WeightMatrix,
) -> Result<SemiringValue> {
    Ok(solve_fpt_run(g, seq_g, h, r, pm, w)?.value)
}

/// Reject pre-morphisms the solver cannot handle.
pub fn check_eligible(pm: PreMorphism) -> Result<()> {
    let spec = pm.spec();
    if !spec.strong {
        return Err(Error::Capability {
            premorphism: spec.name,
            flag: "strong",
        });
    }
    if !spec.corestriction_independent {
        return Err(Error::Capability {
            premorphism: spec.name,
            flag: "corestriction independent",
        });
    }
    Ok(())
}

/// [`solve_fpt`] with the operation counter and width of the run.
pub fn solve_fpt_run(
    g: &EdgeLabelledGraph,
    seq_g: &ContractionSequence,
    h: &EdgeLabelledGraph,
    r: &MorphismRelation,
    pm: PreMorphism,
    w: &WeightMatrix,
) -> Result<SolveRun> {
    solve_fpt_observed(g, seq_g, h, r, pm, w, None)
}

/// [`solve_fpt_run`], reporting every live table after initialization and
/// after each merge. Meant for tiny instances.
pub fn solve_fpt_observed(
    g: &EdgeLabelledGraph,
    seq_g: &ContractionSequence,
    h: &EdgeLabelledGraph,
    r: &MorphismRelation,
    pm: PreMorphism,
    w: &WeightMatrix,
    observer: Option<Observer<'_>>,
) -> Result<SolveRun> {
    check_eligible(pm)?;
    check_problem(g, h, r, pm, w)?;
    check_sequence_base(seq_g, g, "instance")?;
    if h.vertex_count() > MAX_TEMPLATE {
        return Err(Error::TooLarge {
            vertices: h.vertex_count(),
            limit: MAX_TEMPLATE,
        });
    }
    let width = seq_g.component_width();
    if g.vertex_count() == 0 {
        return Ok(SolveRun {
            value: SemiringValue::one(pm.carrier()),
            op_count: 0,
            width,
        });
    }
    if h.vertex_count() == 0 {
        return Ok(SolveRun {
            value: SemiringValue::zero(pm.carrier()),
            op_count: 0,
            width,
        });
    }
    let solver = Solver::new(g, seq_g, h, r, pm, w);
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
    Ok(SolveRun { value, op_count, width })
}

/// Depth-first enumeration of the target tuples of one merge step. A prefix
/// that already breaks the relation or hits a zero entry of an old table is
/// rejected whole and counted by its number of complete tuples.
struct Walk<'t, S> {
    q: usize,
    radix: usize,
    compatible: &'t [VertexSet],
    /// Extended part indices in visiting order.
    order: &'t [usize],
    /// `checks[pos]`: `(j, label, outgoing)` pairs to test once `order[pos]`
    /// is placed; `outgoing` means the label is on `(order[pos], j)`.
    checks: &'t [Vec<(usize, Label, bool)>],
    /// `table_end[pos]`: the old table completed by placing `order[pos]`.
    table_end: &'t [Option<usize>],
    place: &'t [(usize, usize)],
    new_weight: &'t [usize],
    ia: usize,
    ib: usize,
    subtree: &'t [u64],
    olds: &'t [Table<S>],
    t: Vec<VertexSet>,
    old_key: Vec<usize>,
    /// `products[j]`: product of the entries of the first `j` old tables.
    products: Vec<S>,
    done: usize,
    new_values: Vec<S>,
    examined: u64,
}

impl<S: Semiring> Walk<'_, S> {
    #[inline]
    fn allowed(&self, x: Label, ti: VertexSet, tj: VertexSet) -> bool {
        let m = self.radix.count_ones();
        tj & !self.compatible[(x.index() << m) + ti as usize] == 0
    }

    fn visit(&mut self, pos: usize) {
        if pos == self.q {
            self.examined += 1;
            let merged = self.t[self.ia] | self.t[self.ib];
            let mut new_key = 0;
            for i in 0..self.q {
                if i != self.ib {
                    let ti = if i == self.ia { merged } else { self.t[i] };
                    new_key += (ti as usize - 1) * self.new_weight[i];
                }
            }
            let product = &self.products[self.done];
            self.new_values[new_key].add_assign(product);
            return;
        }
        let i = self.order[pos];
        let (j, weight) = self.place[i];
        for ti in 1..=self.radix as VertexSet {
            self.t[i] = ti;
            let ok = self.checks[pos].iter().all(|&(k, l, outgoing)| {
                if outgoing {
                    self.allowed(l, ti, self.t[k])
                } else {
                    self.allowed(l, self.t[k], ti)
                }
            });
            if !ok {
                self.examined += self.subtree[self.q - pos - 1];
                continue;
            }
            self.old_key[j] += (ti as usize - 1) * weight;
            match self.table_end[pos] {
                Some(j) => {
                    let v = &self.olds[j].values[self.old_key[j]];
                    if v.is_zero() {
                        self.examined += self.subtree[self.q - pos - 1];
                    } else {
                        self.products[self.done + 1] = self.products[self.done].mul(v);
                        self.done += 1;
                        self.visit(pos + 1);
                        self.done -= 1;
                    }
                }
                None => self.visit(pos + 1),
            }
            self.old_key[j] -= (ti as usize - 1) * weight;
        }
    }
}

struct Solver<'a> {
    g: &'a EdgeLabelledGraph,
    seq: &'a ContractionSequence,
    h: &'a EdgeLabelledGraph,
    r: &'a MorphismRelation,
    pm: PreMorphism,
    w: &'a WeightMatrix,
    /// `allowed[x * m + a]`: targets `b` with `(x, l_H(a, b))` in R.
    /// `compatible[x * 2^m + t]`: targets allowed after every `a` in `t`
    /// under the instance label `x`.
    compatible: Vec<VertexSet>,
    radix: usize,
}

impl<'a> Solver<'a> {
    fn new(
        g: &'a EdgeLabelledGraph,
        seq: &'a ContractionSequence,
        h: &'a EdgeLabelledGraph,
        r: &'a MorphismRelation,
        pm: PreMorphism,
        w: &'a WeightMatrix,
    ) -> Self {
        let m = h.vertex_count();
        let mut allowed = vec![0u64; g.alphabet_size() * m];
        for x in 0..g.alphabet_size() {
            for a in 0..m {
                for b in 0..m {
                    if r.contains(Label::new(x), h.label(a, b)) {
                        allowed[x * m + a] |= 1 << b;
                    }
                }
            }
        }
        let mut compatible = vec![0u64; g.alphabet_size() << m];
        for x in 0..g.alphabet_size() {
            for t in 0..1usize << m {
                compatible[(x << m) + t] = members(t as VertexSet).fold(h.all_vertices(), |acc, a| acc & allowed[x * m + a]);
            }
        }
        Solver {
            g,
            seq,
            h,
            r,
            pm,
            w,
            compatible,
            radix: (1usize << m) - 1,
        }
    }

    fn run<S: Semiring>(&self, mut observer: Option<Observer<'_>>) -> Result<(S, u64)> {
        let (g, h) = (self.g, self.h);
        let mut ops = 0u64;
        let mut tables: BTreeMap<usize, Table<S>> = BTreeMap::new();
        for s in 0..g.vertex_count() {
            let mut values = vec![S::zero(); self.radix];
            for t in 0..h.vertex_count() {
                ops += 1;
                if self.r.contains(g.label(s, s), h.label(t, t)) {
                    values[(1 << t) - 1] = singleton_in(self.pm, self.w, 1 << s, t);
                }
            }
            tables.insert(s, Table { parts: vec![s], values });
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
        let mut total = S::zero();
        for v in &last.values {
            total.add_assign(v);
        }
        Ok((total, ops))
    }

    fn merge_step<S: Semiring>(&self, k: usize, a: usize, b: usize, tables: &mut BTreeMap<usize, Table<S>>) -> Result<u64> {
        let before = &self.seq.steps()[k];
        let after = &self.seq.steps()[k + 1];
        let new_parts = component_reps(after, a);
        let p = new_parts.len();
        let mut ext = new_parts.clone();
        ext.push(b);
        ext.sort_unstable();
        let q = ext.len();

        let mut keys: Vec<usize> = ext.iter().map(|&x| component_key(before, x)).collect();
        keys.sort_unstable();
        keys.dedup();
        let olds: Vec<Table<S>> = keys
            .iter()
            .map(|key| tables.remove(key).expect("table of a live component"))
            .collect();

        let radix = self.radix;
        let new_size = checked_size(radix, p, MAX_ENTRIES)?;
        let candidates = checked_size(radix, q, MAX_ENTRIES)?;
        let pw = |e: usize| radix.pow(e as u32);
        let ia = ext.iter().position(|&x| x == a).unwrap();
        let ib = ext.iter().position(|&x| x == b).unwrap();
        // slot in the new key for every extended part except b
        let new_weight: Vec<usize> = ext
            .iter()
            .map(|&x| {
                let target = if x == b { a } else { x };
                pw(new_parts.iter().position(|&y| y == target).unwrap())
            })
            .collect();
        let place: Vec<(usize, usize)> = ext
            .iter()
            .map(|&x| {
                let j = olds.iter().position(|t| t.parts.contains(&x)).expect("part has a table");
                (j, pw(olds[j].parts.iter().position(|&y| y == x).unwrap()))
            })
            .collect();
        let idx_of = |x: usize| before.partition.index_of_representative(x).unwrap();
        // visit the parts table by table so a zero entry cuts the walk short
        let mut order: Vec<usize> = (0..q).collect();
        order.sort_by_key(|&i| place[i].0);
        let mut checks: Vec<Vec<(usize, Label, bool)>> = vec![Vec::new(); q];
        for (pos, &i) in order.iter().enumerate() {
            for &j in &order[..=pos] {
                let out = before.graph.label(idx_of(ext[i]), idx_of(ext[j]));
                if !out.is_e() {
                    checks[pos].push((j, out, true));
                }
                let back = before.graph.label(idx_of(ext[j]), idx_of(ext[i]));
                if j != i && !back.is_e() {
                    checks[pos].push((j, back, false));
                }
            }
        }
        let table_end: Vec<Option<usize>> = (0..q)
            .map(|pos| (pos + 1 == q || place[order[pos + 1]].0 != place[order[pos]].0).then_some(place[order[pos]].0))
            .collect();
        let subtree: Vec<u64> = (0..=q).map(|l| (radix as u64).pow(l as u32)).collect();

        let mut walk = Walk {
            q,
            radix,
            compatible: &self.compatible,
            order: &order,
            checks: &checks,
            table_end: &table_end,
            place: &place,
            new_weight: &new_weight,
            ia,
            ib,
            subtree: &subtree,
            olds: &olds,
            t: vec![0; q],
            old_key: vec![0; olds.len()],
            products: vec![S::one(); olds.len() + 1],
            done: 0,
            new_values: vec![S::zero(); new_size],
            examined: 0,
        };
        walk.visit(0);
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
        let step = &self.seq.steps()[merges_done];
        let views = tables
            .values()
            .map(|t| {
                let entries = t
                    .values
                    .iter()
                    .enumerate()
                    .map(|(mut code, v)| {
                        let sets = (0..t.parts.len())
                            .map(|_| {
                                let d = code % self.radix;
                                code /= self.radix;
                                d as VertexSet + 1
                            })
                            .collect();
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
