//! Morphism relations, the morphism predicate and the two feasibility tests
//! gating table updates in the solvers.

use crate::error::{Error, Result};
use crate::graph::{members, EdgeLabelledGraph, Label, VertexSet};
use crate::premorphism::{PreMorphism, WeightMatrix};

/// A relation between source labels and target labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorphismRelation {
    source_size: usize,
    target_size: usize,
    allowed: Vec<bool>,
}

impl MorphismRelation {
    pub fn empty(source_size: usize, target_size: usize) -> Self {
        MorphismRelation {
            source_size,
            target_size,
            allowed: vec![false; source_size * target_size],
        }
    }

    pub fn from_pairs(source_size: usize, target_size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut r = Self::empty(source_size, target_size);
        for &(x, y) in pairs {
            if x >= source_size || y >= target_size {
                return Err(Error::DimensionMismatch(format!(
                    "pair ({x}, {y}) outside {source_size}x{target_size}"
                )));
            }
            r.allowed[x * target_size + y] = true;
        }
        Ok(r)
    }

    /// `{(0,0), (0,1), (1,1)}`: its morphisms between 2-letter graphs are the
    /// graph homomorphisms.
    pub fn hom() -> Self {
        Self::from_pairs(2, 2, &[(0, 0), (0, 1), (1, 1)]).unwrap()
    }

    pub fn source_size(&self) -> usize {
        self.source_size
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    /// Membership; `Label::E` is never related to anything.
    #[inline]
    pub fn contains(&self, x: Label, y: Label) -> bool {
        if x.is_e() || y.is_e() {
            return false;
        }
        let (x, y) = (x.index(), y.index());
        x < self.source_size && y < self.target_size && self.allowed[x * self.target_size + y]
    }

    pub fn set(&mut self, x: usize, y: usize, allowed: bool) {
        self.allowed[x * self.target_size + y] = allowed;
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.source_size)
            .flat_map(move |x| (0..self.target_size).map(move |y| (x, y)))
            .filter(move |&(x, y)| self.allowed[x * self.target_size + y])
    }

    /// Check that `g` maps into `h` label-wise under this relation.
    pub fn check_dimensions(&self, g: &EdgeLabelledGraph, h: &EdgeLabelledGraph) -> Result<()> {
        if g.alphabet_size() > self.source_size || h.alphabet_size() > self.target_size {
            return Err(Error::DimensionMismatch(format!(
                "relation is {}x{}, graphs use alphabets {} and {}",
                self.source_size,
                self.target_size,
                g.alphabet_size(),
                h.alphabet_size()
            )));
        }
        Ok(())
    }
}

/// Shared validation of a solve request.
pub(crate) fn check_problem(
    g: &EdgeLabelledGraph,
    h: &EdgeLabelledGraph,
    r: &MorphismRelation,
    pm: PreMorphism,
    w: &WeightMatrix,
) -> Result<()> {
    g.require_e_free()?;
    h.require_e_free()?;
    r.check_dimensions(g, h)?;
    pm.check_weights_for(w, g.vertex_count(), h.vertex_count())
}

/// Whether the total map `f: V_G -> V_H` sends every ordered pair of `g`,
/// diagonal included, to a pair whose label `r` allows.
pub fn is_morphism(g: &EdgeLabelledGraph, h: &EdgeLabelledGraph, r: &MorphismRelation, f: &[usize]) -> Result<bool> {
    g.require_e_free()?;
    h.require_e_free()?;
    r.check_dimensions(g, h)?;
    if f.len() != g.vertex_count() {
        return Err(Error::FunctionOutOfRange(format!(
            "map defined on {} vertices, graph has {}",
            f.len(),
            g.vertex_count()
        )));
    }
    if let Some(&bad) = f.iter().find(|&&a| a >= h.vertex_count()) {
        return Err(Error::FunctionOutOfRange(format!("image {bad} is not a template vertex")));
    }
    Ok(is_morphism_unchecked(g, h, r, f))
}

pub(crate) fn is_morphism_unchecked(g: &EdgeLabelledGraph, h: &EdgeLabelledGraph, r: &MorphismRelation, f: &[usize]) -> bool {
    let n = g.vertex_count();
    (0..n).all(|u| (0..n).all(|v| r.contains(g.label(u, v), h.label(f[u], f[v]))))
}

/// Whether the pairwise-disjoint subsets `s` of `V_G` are feasible for the
/// distinct parts `t` of the contracted template `h_k`: wherever the parts'
/// label is not `E`, every pair between the matching subsets must be allowed.
pub fn feasible_fine(
    g: &EdgeLabelledGraph,
    h_k: &EdgeLabelledGraph,
    r: &MorphismRelation,
    s: &[VertexSet],
    t: &[usize],
) -> Result<bool> {
    if s.len() != t.len() {
        return Err(Error::DimensionMismatch(format!("{} subsets for {} parts", s.len(), t.len())));
    }
    if t.iter().any(|&p| p >= h_k.vertex_count()) {
        return Err(Error::DimensionMismatch("part index out of range".into()));
    }
    for (i, &si) in s.iter().enumerate() {
        if members(si).any(|u| u >= g.vertex_count()) {
            return Err(Error::DimensionMismatch("subset vertex out of range".into()));
        }
        for &sj in &s[i + 1..] {
            if si & sj != 0 {
                return Err(Error::DimensionMismatch("subsets are not pairwise disjoint".into()));
            }
        }
    }
    for (i, &ti) in t.iter().enumerate() {
        for (j, &tj) in t.iter().enumerate() {
            let y = h_k.label(ti, tj);
            if y.is_e() {
                continue;
            }
            for u in members(s[i]) {
                for v in members(s[j]) {
                    if !r.contains(g.label(u, v), y) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Whether the nonempty subsets `t` of `V_H` make the distinct parts `s` of
/// the contracted instance `g_k` feasible: wherever the parts' label is not
/// `E`, every pair of targets between the matching subsets must be allowed.
pub fn feasible_fpt(
    g_k: &EdgeLabelledGraph,
    h: &EdgeLabelledGraph,
    r: &MorphismRelation,
    t: &[VertexSet],
    s: &[usize],
) -> Result<bool> {
    if s.len() != t.len() {
        return Err(Error::DimensionMismatch(format!("{} parts for {} subsets", s.len(), t.len())));
    }
    if s.iter().any(|&p| p >= g_k.vertex_count()) {
        return Err(Error::DimensionMismatch("part index out of range".into()));
    }
    for &ti in t {
        if ti == 0 {
            return Err(Error::DimensionMismatch("target subsets must be nonempty".into()));
        }
        if members(ti).any(|a| a >= h.vertex_count()) {
            return Err(Error::DimensionMismatch("target vertex out of range".into()));
        }
    }
    for (i, &si) in s.iter().enumerate() {
        for (j, &sj) in s.iter().enumerate() {
            let x = g_k.label(si, sj);
            if x.is_e() {
                continue;
            }
            for a in members(t[i]) {
                for b in members(t[j]) {
                    if !r.contains(x, h.label(a, b)) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}
