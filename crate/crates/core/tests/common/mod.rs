#![allow(dead_code)]

use ctwcsp::graph::set_of;
use ctwcsp::{
    e_components, validate_sequence, ContractionSequence, EdgeLabelledGraph, Label, MorphismRelation, VertexPartition,
};
use rand::Rng;

pub fn clique(n: usize) -> EdgeLabelledGraph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    EdgeLabelledGraph::from_edges(n, &edges).unwrap()
}

pub fn cycle(n: usize) -> EdgeLabelledGraph {
    let edges: Vec<_> = (0..n).map(|u| (u, (u + 1) % n)).collect();
    EdgeLabelledGraph::from_edges(n, &edges).unwrap()
}

pub fn path(n: usize) -> EdgeLabelledGraph {
    let edges: Vec<_> = (1..n).map(|u| (u - 1, u)).collect();
    EdgeLabelledGraph::from_edges(n, &edges).unwrap()
}

/// `K_2` with label 1 on the loop of vertex 0.
pub fn looped_edge() -> EdgeLabelledGraph {
    EdgeLabelledGraph::from_matrix(2, &[vec![1, 1], vec![1, 0]]).unwrap()
}

pub fn templates() -> Vec<(&'static str, EdgeLabelledGraph)> {
    vec![("K3", clique(3)), ("C5", cycle(5)), ("P3", path(3)), ("K2+loop", looped_edge())]
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every graph on `n` vertices over a 2-letter alphabet (all ordered pairs,
/// diagonal included), one per isomorphism class.
pub fn two_letter_graphs(n: usize) -> Vec<EdgeLabelledGraph> {
    let perms = permutations(n);
    let cells = n * n;
    let mut out = Vec::new();
    for code in 0u64..(1 << cells) {
        let canonical = perms.iter().all(|p| {
            let mut permuted = 0u64;
            for u in 0..n {
                for v in 0..n {
                    if code >> (u * n + v) & 1 == 1 {
                        permuted |= 1 << (p[u] * n + p[v]);
                    }
                }
            }
            permuted >= code
        });
        if canonical {
            out.push(EdgeLabelledGraph::from_fn(n, 2, |u, v| Label::new((code >> (u * n + v) & 1) as usize)).unwrap());
        }
    }
    out
}

pub fn random_graph(n: usize, k: usize, rng: &mut impl Rng) -> EdgeLabelledGraph {
    let labels = (0..n * n).map(|_| Label::new(rng.gen_range(0..k))).collect();
    EdgeLabelledGraph::new(n, k, labels).unwrap()
}

pub fn random_relation(x: usize, y: usize, rng: &mut impl Rng) -> MorphismRelation {
    let mut r = MorphismRelation::empty(x, y);
    for a in 0..x {
        for b in 0..y {
            r.set(a, b, rng.gen_bool(0.6));
        }
    }
    r
}

pub fn random_merges(n: usize, rng: &mut impl Rng) -> Vec<(usize, usize)> {
    let mut reps: Vec<usize> = (0..n).collect();
    let mut merges = Vec::new();
    while reps.len() > 1 {
        let i = rng.gen_range(0..reps.len());
        let mut j = rng.gen_range(0..reps.len() - 1);
        if j >= i {
            j += 1;
        }
        let (a, b) = (reps[i].min(reps[j]), reps[i].max(reps[j]));
        merges.push((a, b));
        reps.retain(|&x| x != b);
    }
    merges
}

pub fn random_sequence(g: &EdgeLabelledGraph, rng: &mut impl Rng) -> ContractionSequence {
    validate_sequence(g, &random_merges(g.vertex_count(), rng)).unwrap()
}

/// Every merge list of `n` vertices.
pub fn all_merge_lists(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(reps: Vec<usize>, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if reps.len() <= 1 {
            out.push(acc.clone());
            return;
        }
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                acc.push((reps[i], reps[j]));
                let rest: Vec<usize> = reps.iter().copied().filter(|&x| x != reps[j]).collect();
                go(rest, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go((0..n).collect(), &mut Vec::new(), &mut out);
    out
}

/// A random partition of `0..n` into at most `max_parts` parts.
pub fn random_partition(n: usize, max_parts: usize, rng: &mut impl Rng) -> VertexPartition {
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..max_parts.max(1))).collect();
    VertexPartition::from_labels(&labels).unwrap()
}

/// Random pairwise-disjoint subsets of `0..n`, `count` of them, some empty.
pub fn random_disjoint(n: usize, count: usize, rng: &mut impl Rng) -> Vec<u64> {
    let mut sets = vec![0u64; count];
    for u in 0..n {
        let slot = rng.gen_range(0..=count);
        if slot < count {
            sets[slot] |= 1 << u;
        }
    }
    sets
}

/// Parts of a random e-component of `contracted`.
pub fn component_parts(contracted: &EdgeLabelledGraph, rng: &mut impl Rng) -> Vec<usize> {
    let comps = e_components(contracted);
    comps[rng.gen_range(0..comps.len())].clone()
}

pub fn is_p4_free(g: &EdgeLabelledGraph) -> bool {
    let n = g.vertex_count();
    let adj = |u: usize, v: usize| g.label(u, v).index() == 1;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if set_of([a, b, c, d]).count_ones() == 4
                        && adj(a, b)
                        && adj(b, c)
                        && adj(c, d)
                        && !adj(a, c)
                        && !adj(b, d)
                        && !adj(a, d)
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}
