//! Edge-labelled graphs, contractions, e-connected components and
//! contraction sequences.

use std::fmt;

use crate::error::{Error, Result};

/// Bitmask over at most 64 vertices.
pub type VertexSet = u64;

/// Iterate the members of a vertex set in increasing order.
pub fn members(mut set: VertexSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(v)
        }
    })
}

pub fn set_of(vertices: impl IntoIterator<Item = usize>) -> VertexSet {
    vertices.into_iter().fold(0, |acc, v| acc | (1u64 << v))
}

/// A label of an ordered vertex pair. `Label::E` marks a non-uniform pair of
/// a contracted graph and never occurs in an e-free graph.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(u16);

impl Label {
    pub const E: Label = Label(u16::MAX);
    pub const MAX_ALPHABET: usize = u16::MAX as usize;

    pub fn new(id: usize) -> Label {
        assert!(id < Self::MAX_ALPHABET, "label id {id} out of range");
        Label(id as u16)
    }

    pub fn is_e(self) -> bool {
        self == Label::E
    }

    /// Index of a non-sentinel label.
    pub fn index(self) -> usize {
        debug_assert!(!self.is_e());
        self.0 as usize
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_e() {
            write!(f, "e")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// A finite vertex set with a label on every ordered pair, diagonal included.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeLabelledGraph {
    n: usize,
    alphabet_size: usize,
    labels: Vec<Label>,
    e_free: bool,
}

impl EdgeLabelledGraph {
    pub fn new(n: usize, alphabet_size: usize, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != n * n {
            return Err(Error::InvalidGraph(format!(
                "expected {} labels for {n} vertices, got {}",
                n * n,
                labels.len()
            )));
        }
        if alphabet_size > Label::MAX_ALPHABET {
            return Err(Error::InvalidGraph(format!(
                "alphabet of {alphabet_size} letters is too large"
            )));
        }
        let mut e_free = true;
        for (idx, &l) in labels.iter().enumerate() {
            if l.is_e() {
                e_free = false;
            } else if l.index() >= alphabet_size {
                return Err(Error::InvalidLabel {
                    row: idx / n,
                    col: idx % n,
                    label: l.index(),
                    alphabet: alphabet_size,
                });
            }
        }
        Ok(EdgeLabelledGraph {
            n,
            alphabet_size,
            labels,
            e_free,
        })
    }

    pub fn from_fn(n: usize, alphabet_size: usize, f: impl Fn(usize, usize) -> Label) -> Result<Self> {
        let labels = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Self::new(n, alphabet_size, labels)
    }

    /// Build an e-free graph from a numeric label matrix.
    pub fn from_matrix(alphabet_size: usize, rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        let mut labels = Vec::with_capacity(n * n);
        for (u, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGraph(format!(
                    "row {u} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (v, &x) in row.iter().enumerate() {
                if x >= alphabet_size {
                    return Err(Error::InvalidLabel {
                        row: u,
                        col: v,
                        label: x,
                        alphabet: alphabet_size,
                    });
                }
                labels.push(Label::new(x));
            }
        }
        Self::new(n, alphabet_size, labels)
    }

    /// A plain undirected loopless graph viewed over the 2-letter alphabet:
    /// edges carry label 1, non-edges and the diagonal carry label 0.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut labels = vec![Label::new(0); n * n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidGraph(format!("bad edge ({u}, {v}) for {n} vertices")));
            }
            labels[u * n + v] = Label::new(1);
            labels[v * n + u] = Label::new(1);
        }
        Self::new(n, 2, labels)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn is_e_free(&self) -> bool {
        self.e_free
    }

    #[inline]
    pub fn label(&self, u: usize, v: usize) -> Label {
        self.labels[u * self.n + v]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn all_vertices(&self) -> VertexSet {
        full_set(self.n)
    }

    /// Adjacency in the undirected graph of e-labelled off-diagonal pairs.
    pub fn e_adjacent(&self, u: usize, v: usize) -> bool {
        u != v && (self.label(u, v).is_e() || self.label(v, u).is_e())
    }

    pub(crate) fn require_e_free(&self) -> Result<()> {
        if self.e_free {
            Ok(())
        } else {
            Err(Error::NotEFree)
        }
    }
}

impl fmt::Debug for EdgeLabelledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "EdgeLabelledGraph(n={}, alphabet={})", self.n, self.alphabet_size)?;
        for u in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|v| self.label(u, v).to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) fn full_set(n: usize) -> VertexSet {
    assert!(n <= 64, "vertex sets are limited to 64 vertices");
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A proper partition of `0..n`. Parts are sorted internally and ordered by
/// their minimum element, which also names the part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexPartition {
    n: usize,
    parts: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn new(n: usize, parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut parts = parts;
        for part in parts.iter_mut() {
            if part.is_empty() {
                return Err(Error::InvalidPartition("empty part".into()));
            }
            part.sort_unstable();
            for &v in part.iter() {
                if v >= n {
                    return Err(Error::InvalidPartition(format!("vertex {v} out of range")));
                }
                if seen[v] {
                    return Err(Error::InvalidPartition(format!("vertex {v} appears twice")));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("vertex {v} is not covered")));
        }
        parts.sort_unstable_by_key(|p| p[0]);
        Ok(VertexPartition { n, parts })
    }

    pub fn singletons(n: usize) -> Self {
        VertexPartition {
            n,
            parts: (0..n).map(|v| vec![v]).collect(),
        }
    }

    /// Partition given by a representative label per vertex.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (v, &l) in labels.iter().enumerate() {
            groups.entry(l).or_default().push(v);
        }
        Self::new(labels.len(), groups.into_values().collect())
    }

    pub fn base_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &[usize] {
        &self.parts[i]
    }

    pub fn representative(&self, i: usize) -> usize {
        self.parts[i][0]
    }

    pub fn index_of_representative(&self, rep: usize) -> Option<usize> {
        self.parts
            .binary_search_by_key(&rep, |p| p[0])
            .ok()
    }

    pub fn part_set(&self, i: usize) -> VertexSet {
        set_of(self.parts[i].iter().copied())
    }

    /// Merge the parts named by two representatives.
    pub fn merged(&self, a: usize, b: usize) -> Result<Self> {
        let ia = self
            .index_of_representative(a)
            .ok_or_else(|| Error::InvalidPartition(format!("{a} is not a representative")))?;
        let ib = self
            .index_of_representative(b)
            .ok_or_else(|| Error::InvalidPartition(format!("{b} is not a representative")))?;
        if ia == ib {
            return Err(Error::InvalidPartition(format!("cannot merge part {a} with itself")));
        }
        let mut parts = self.parts.clone();
        let (lo, hi) = if ia < ib { (ia, ib) } else { (ib, ia) };
        let moved = parts.remove(hi);
        parts[lo].extend(moved);
        Self::new(self.n, parts)
    }
}

/// Contraction of `g` relative to the partition `p`: vertex `i` of the result
/// is `p.part(i)`; a pair of parts keeps a label only when every underlying
/// pair carries it, and becomes `Label::E` otherwise.
pub fn contract(g: &EdgeLabelledGraph, p: &VertexPartition) -> Result<EdgeLabelledGraph> {
    if p.base_size() != g.vertex_count() {
        return Err(Error::InvalidPartition(format!(
            "partition of {} vertices applied to a graph on {}",
            p.base_size(),
            g.vertex_count()
        )));
    }
    let k = p.len();
    let mut labels = Vec::with_capacity(k * k);
    for s1 in p.parts() {
        for s2 in p.parts() {
            let first = g.label(s1[0], s2[0]);
            let uniform = s1
                .iter()
                .all(|&u| s2.iter().all(|&v| g.label(u, v) == first));
            labels.push(if uniform { first } else { Label::E });
        }
    }
    EdgeLabelledGraph::new(k, g.alphabet_size(), labels)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

/// Connected components of the undirected graph of e-labelled pairs. An
/// e-labelled diagonal entry connects nothing. Components are sorted
/// internally and ordered by their minimum vertex.
pub fn e_components(g: &EdgeLabelledGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if g.e_adjacent(u, v) {
                uf.union(u, v);
            }
        }
    }
    let mut root_index = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let r = uf.find(v);
        if root_index[r] == usize::MAX {
            root_index[r] = comps.len();
            comps.push(Vec::new());
        }
        comps[root_index[r]].push(v);
    }
    comps
}

/// One graph of a contraction sequence together with its e-components.
#[derive(Clone, Debug)]
pub struct ContractionStep {
    pub partition: VertexPartition,
    pub graph: EdgeLabelledGraph,
    /// Components as lists of part indices into `partition`.
    pub components: Vec<Vec<usize>>,
    pub max_component: usize,
}

impl ContractionStep {
    fn build(base: &EdgeLabelledGraph, partition: VertexPartition) -> Result<Self> {
        let graph = contract(base, &partition)?;
        let components = e_components(&graph);
        let max_component = components.iter().map(Vec::len).max().unwrap_or(0);
        Ok(ContractionStep {
            partition,
            graph,
            components,
            max_component,
        })
    }

    /// Index of the component holding part `part`.
    pub fn component_of(&self, part: usize) -> usize {
        self.components
            .iter()
            .position(|c| c.contains(&part))
            .expect("every part belongs to a component")
    }
}

/// A validated contraction sequence `(H_n, ..., H_1)` of an e-free graph.
/// `steps()[k]` is the graph after `k` merges.
#[derive(Clone, Debug)]
pub struct ContractionSequence {
    base: EdgeLabelledGraph,
    merges: Vec<(usize, usize)>,
    steps: Vec<ContractionStep>,
    width: usize,
}

impl ContractionSequence {
    pub fn base(&self) -> &EdgeLabelledGraph {
        &self.base
    }

    /// Merges as `(a, b)` pairs of current representatives.
    pub fn merges(&self) -> &[(usize, usize)] {
        &self.merges
    }

    pub fn steps(&self) -> &[ContractionStep] {
        &self.steps
    }

    /// Maximum e-component size over the contracted graphs `H_{n-1}..H_1`,
    /// with 1 as the floor when no contraction happens.
    pub fn component_width(&self) -> usize {
        self.width
    }
}

pub fn component_width(seq: &ContractionSequence) -> usize {
    seq.component_width()
}

/// Check a raw merge list against `h` and cache every contracted graph.
pub fn validate_sequence(h: &EdgeLabelledGraph, merges: &[(usize, usize)]) -> Result<ContractionSequence> {
    h.require_e_free()?;
    let n = h.vertex_count();
    let expected = n.saturating_sub(1);
    if merges.len() != expected {
        return Err(Error::InvalidSequence {
            step: merges.len().min(expected),
            reason: format!("expected {expected} merges for {n} vertices, got {}", merges.len()),
        });
    }
    let mut partition = VertexPartition::singletons(n);
    let mut steps = vec![ContractionStep::build(h, partition.clone())?];
    let mut width = 1;
    for (step, &(a, b)) in merges.iter().enumerate() {
        if a == b {
            return Err(Error::InvalidSequence {
                step,
                reason: format!("merge of {a} with itself"),
            });
        }
        for r in [a, b] {
            if partition.index_of_representative(r).is_none() {
                return Err(Error::InvalidSequence {
                    step,
                    reason: format!("{r} is not a current representative"),
                });
            }
        }
        partition = partition.merged(a, b)?;
        let built = ContractionStep::build(h, partition.clone())?;
        width = width.max(built.max_component);
        steps.push(built);
    }
    Ok(ContractionSequence {
        base: h.clone(),
        merges: merges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect(),
        steps,
        width,
    })
}

/// The sequence merging every vertex into vertex 0 in increasing order.
pub fn sequential_merges(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|v| (0, v)).collect()
}
