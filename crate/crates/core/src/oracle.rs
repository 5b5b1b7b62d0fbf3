//! Brute-force reference solver and explicit enumeration of restricted
//! morphism sets.

use crate::error::{Error, Result};
use crate::graph::{e_components, members, EdgeLabelledGraph, VertexSet};
use crate::morphism::{check_problem, feasible_fine, feasible_fpt, is_morphism_unchecked, MorphismRelation};
use crate::premorphism::{join_sets, omega_of_set, PartialMap, PreMorphism, WeightMatrix, UNMAPPED};
use crate::semiring::SemiringValue;

pub const DEFAULT_CAP: u128 = 10_000_000;

/// Every map sending each domain vertex to one of its allowed images, in
/// odometer order with the lowest domain vertex varying fastest.
pub struct FunctionEnumeration {
    n: usize,
    domain: Vec<usize>,
    choices: Vec<Vec<usize>>,
    digits: Vec<usize>,
    done: bool,
}

impl FunctionEnumeration {
    /// Maps over vertices `0..n` defined on `choices[i].0` with images drawn
    /// from `choices[i].1`.
    pub fn with_choices(n: usize, choices: Vec<(usize, Vec<usize>)>) -> Self {
        let done = choices.iter().any(|(_, c)| c.is_empty());
        let (domain, choices): (Vec<_>, Vec<_>) = choices.into_iter().unzip();
        FunctionEnumeration {
            n,
            digits: vec![0; domain.len()],
            domain,
            choices,
            done,
        }
    }

    /// All maps `S -> T` over vertices `0..n`.
    pub fn new(n: usize, s: VertexSet, t: VertexSet) -> Self {
        let cod: Vec<usize> = members(t).collect();
        Self::with_choices(n, members(s).map(|u| (u, cod.clone())).collect())
    }

    pub fn size(&self) -> u128 {
        self.choices
            .iter()
            .try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128))
            .unwrap_or(u128::MAX)
    }
}

impl Iterator for FunctionEnumeration {
    type Item = PartialMap;

    fn next(&mut self) -> Option<PartialMap> {
        if self.done {
            return None;
        }
        let mut f = vec![UNMAPPED; self.n];
        for (i, &u) in self.domain.iter().enumerate() {
            f[u] = self.choices[i][self.digits[i]];
        }
        let mut i = 0;
        loop {
            if i == self.digits.len() {
                self.done = true;
                break;
            }
            self.digits[i] += 1;
            if self.digits[i] < self.choices[i].len() {
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        Some(f)
    }
}

fn check_cap(requested: u128, cap: u128) -> Result<()> {
    if requested > cap {
        return Err(Error::CapExceeded { requested, cap });
    }
    Ok(())
}

/// All R-morphisms `G -> H`.
pub fn all_morphisms(g: &EdgeLabelledGraph, h: &EdgeLabelledGraph, r: &MorphismRelation, cap: u128) -> Result<Vec<PartialMap>> {
    g.require_e_free()?;
    h.require_e_free()?;
    r.check_dimensions(g, h)?;
    let maps = FunctionEnumeration::new(g.vertex_count(), g.all_vertices(), h.all_vertices());
    check_cap(maps.size(), cap)?;
    Ok(maps.filter(|f| is_morphism_unchecked(g, h, r, f)).collect())
}

/// The pre-morphism's value on the set of all R-morphisms, by enumeration.
pub fn solve_brute(
    g: &EdgeLabelledGraph,
    h: &EdgeLabelledGraph,
    r: &MorphismRelation,
    pm: PreMorphism,
    w: &WeightMatrix,
) -> Result<SemiringValue> {
    solve_brute_capped(g, h, r, pm, w, DEFAULT_CAP)
}

pub fn solve_brute_capped(
    g: &EdgeLabelledGraph,
    h: &EdgeLabelledGraph,
    r: &MorphismRelation,
    pm: PreMorphism,
    w: &WeightMatrix,
    cap: u128,
) -> Result<SemiringValue> {
    check_problem(g, h, r, pm, w)?;
    let sols = all_morphisms(g, h, r, cap)?;
    omega_of_set(pm, w, g.all_vertices(), h.all_vertices(), &sols)
}

/// `R^S_T`: R-morphisms `G[S] -> H[T]` with `f(S_i)` inside `T_i`, or with
/// `f(S_i) = T_i` when `exact_image` is set. `S` must be pairwise disjoint.
pub fn enumerate_restricted(
    g: &EdgeLabelledGraph,
    h: &EdgeLabelledGraph,
    r: &MorphismRelation,
    s: &[VertexSet],
    t: &[VertexSet],
    exact_image: bool,
    cap: u128,
) -> Result<Vec<PartialMap>> {
    if s.len() != t.len() {
        return Err(Error::DimensionMismatch(format!("{} domain sets for {} codomain sets", s.len(), t.len())));
    }
    let (n, m) = (g.vertex_count(), h.vertex_count());
    let mut seen = 0;
    for (&si, &ti) in s.iter().zip(t) {
        if si & seen != 0 {
            return Err(Error::DimensionMismatch("domain sets are not pairwise disjoint".into()));
        }
        seen |= si;
        if members(si).any(|u| u >= n) || members(ti).any(|a| a >= m) {
            return Err(Error::DimensionMismatch("set member out of range".into()));
        }
    }
    let mut choices = Vec::new();
    for (&si, &ti) in s.iter().zip(t) {
        let cod: Vec<usize> = members(ti).collect();
        for u in members(si) {
            choices.push((u, cod.clone()));
        }
    }
    let maps = FunctionEnumeration::with_choices(n, choices);
    check_cap(maps.size(), cap)?;
    let dom: Vec<usize> = members(seen).collect();
    let respects = |f: &PartialMap| {
        dom.iter()
            .all(|&u| dom.iter().all(|&v| r.contains(g.label(u, v), h.label(f[u], f[v]))))
    };
    let exact = |f: &PartialMap| {
        s.iter()
            .zip(t)
            .all(|(&si, &ti)| members(si).fold(0u64, |acc, u| acc | (1 << f[u])) == ti)
    };
    Ok(maps.filter(|f| respects(f) && (!exact_image || exact(f))).collect())
}

/// Which restricted set [`check_join_lemma`] factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JoinVariant {
    /// Template contracted; `f(S_i)` inside `T_i`.
    Containment,
    /// Instance contracted; `f(S_i) = T_i`.
    ExactImage,
}

fn sorted(mut v: Vec<PartialMap>) -> Vec<PartialMap> {
    v.sort_unstable();
    v
}

/// Verify by explicit sets that the restricted morphism set over the parts
/// `parts` of a contracted graph is empty when infeasible and otherwise the
/// join of the restricted sets of its e-components. `parts` must be a union
/// of whole e-components of `contracted`; `part_sets` gives each part's
/// underlying vertices and `other` the matching tuple on the other side.
#[allow(clippy::too_many_arguments)]
pub fn check_join_lemma(
    g: &EdgeLabelledGraph,
    h: &EdgeLabelledGraph,
    r: &MorphismRelation,
    contracted: &EdgeLabelledGraph,
    part_sets: &[VertexSet],
    parts: &[usize],
    other: &[VertexSet],
    variant: JoinVariant,
    cap: u128,
) -> Result<bool> {
    if parts.len() != other.len() {
        return Err(Error::DimensionMismatch(format!("{} parts for {} sets", parts.len(), other.len())));
    }
    let comps = e_components(contracted);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for comp in &comps {
        let idx: Vec<usize> = (0..parts.len()).filter(|&i| comp.contains(&parts[i])).collect();
        if idx.is_empty() {
            continue;
        }
        if idx.len() != comp.len() {
            return Err(Error::DimensionMismatch("parts do not form whole e-components".into()));
        }
        groups.push(idx);
    }
    let pick = |idx: &[usize]| -> (Vec<VertexSet>, Vec<VertexSet>) {
        let own: Vec<VertexSet> = idx.iter().map(|&i| part_sets[parts[i]]).collect();
        let oth: Vec<VertexSet> = idx.iter().map(|&i| other[i]).collect();
        match variant {
            JoinVariant::Containment => (oth, own),
            JoinVariant::ExactImage => (own, oth),
        }
    };
    let all: Vec<usize> = (0..parts.len()).collect();
    let (s_all, t_all) = pick(&all);
    let exact = variant == JoinVariant::ExactImage;
    let lhs = sorted(enumerate_restricted(g, h, r, &s_all, &t_all, exact, cap)?);
    let feasible = match variant {
        JoinVariant::Containment => feasible_fine(g, contracted, r, other, parts)?,
        JoinVariant::ExactImage => feasible_fpt(contracted, h, r, other, parts)?,
    };
    if !feasible {
        return Ok(lhs.is_empty());
    }
    let mut rhs = vec![vec![UNMAPPED; g.vertex_count()]];
    for idx in &groups {
        let (s, t) = pick(idx);
        rhs = join_sets(&rhs, &enumerate_restricted(g, h, r, &s, &t, exact, cap)?);
    }
    Ok(lhs == sorted(rhs))
}

/// Verify that `R^{S, S_0}_{T, T_p + T_q}` is the disjoint union, over
/// splits `S_p + S_q = S_0`, of `R^{S, S_p, S_q}_{T, T_p, T_q}`.
#[allow(clippy::too_many_arguments)]
pub fn check_split_identity(
    g: &EdgeLabelledGraph,
    h: &EdgeLabelledGraph,
    r: &MorphismRelation,
    s: &[VertexSet],
    t: &[VertexSet],
    s0: VertexSet,
    tp: VertexSet,
    tq: VertexSet,
    cap: u128,
) -> Result<bool> {
    if tp & tq != 0 {
        return Err(Error::DimensionMismatch("split targets overlap".into()));
    }
    let mut s_full = s.to_vec();
    s_full.push(s0);
    let mut t_full = t.to_vec();
    t_full.push(tp | tq);
    let lhs = sorted(enumerate_restricted(g, h, r, &s_full, &t_full, false, cap)?);
    let mut rhs = Vec::new();
    let verts: Vec<usize> = members(s0).collect();
    for mask in 0..(1u64 << verts.len()) {
        let sp = verts
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .fold(0u64, |acc, (_, &u)| acc | (1 << u));
        let mut s_split = s.to_vec();
        s_split.extend([sp, s0 & !sp]);
        let mut t_split = t.to_vec();
        t_split.extend([tp, tq]);
        rhs.extend(enumerate_restricted(g, h, r, &s_split, &t_split, false, cap)?);
    }
    let rhs = sorted(rhs);
    let disjoint = rhs.windows(2).all(|w| w[0] != w[1]);
    Ok(disjoint && lhs == rhs)
}
