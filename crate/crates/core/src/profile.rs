//! Types shared by the two dynamic-programming solvers.

use crate::error::{Error, Result};
use crate::graph::{ContractionSequence, ContractionStep, EdgeLabelledGraph, VertexSet};
use crate::semiring::SemiringValue;

/// Result of one solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveRun {
    pub value: SemiringValue,
    /// Candidate table updates examined: initialization writes plus every
    /// enumerated (key, split) candidate of every merge step.
    pub op_count: u64,
    /// Component-width of the contraction sequence used.
    pub width: usize,
}

/// One live table: the parts of an e-component and every entry, keyed by a
/// tuple of vertex sets matched to the parts in order.
#[derive(Clone, Debug)]
pub struct ProfileTableView {
    pub part_sets: Vec<VertexSet>,
    pub entries: Vec<(Vec<VertexSet>, SemiringValue)>,
}

/// All live tables after `merges_done` merges.
#[derive(Clone, Debug)]
pub struct ProfileSnapshot {
    pub merges_done: usize,
    pub tables: Vec<ProfileTableView>,
}

pub type Observer<'a> = &'a mut dyn FnMut(&ProfileSnapshot);

pub(crate) fn check_sequence_base(seq: &ContractionSequence, graph: &EdgeLabelledGraph, what: &str) -> Result<()> {
    if seq.base() != graph {
        return Err(Error::DimensionMismatch(format!("contraction sequence does not belong to the {what}")));
    }
    Ok(())
}

/// Component key of a part in a step: the smallest representative of its
/// e-component.
pub(crate) fn component_key(step: &ContractionStep, rep: usize) -> usize {
    let idx = step
        .partition
        .index_of_representative(rep)
        .expect("representative of the step");
    let comp = &step.components[step.component_of(idx)];
    step.partition.representative(comp[0])
}

/// Representatives of the e-component of `rep` in `step`, ascending.
pub(crate) fn component_reps(step: &ContractionStep, rep: usize) -> Vec<usize> {
    let idx = step
        .partition
        .index_of_representative(rep)
        .expect("representative of the step");
    step.components[step.component_of(idx)]
        .iter()
        .map(|&i| step.partition.representative(i))
        .collect()
}

pub(crate) fn checked_size(base: usize, exp: usize, limit: usize) -> Result<usize> {
    match base.checked_pow(exp as u32) {
        Some(s) if s <= limit => Ok(s),
        _ => Err(Error::TableTooLarge { base, exponent: exp }),
    }
}
