//! Counting, optimizing and deciding generalized binary constraint problems
//! with dynamic programming over contraction sequences.

pub mod bench;
pub mod ctww;
pub mod error;
pub mod family;
pub mod fine;
pub mod formats;
pub mod fpt;
pub mod graph;
pub mod morphism;
pub mod oracle;
pub mod premorphism;
pub mod profile;
pub mod reductions;
pub mod semiring;

pub use ctww::{ctww_exact, ctww_search, CtwwOptions};
pub use error::{Error, Result};
pub use fine::{solve_fine, solve_fine_observed, solve_fine_run};
pub use fpt::{check_eligible, solve_fpt, solve_fpt_observed, solve_fpt_run};
pub use graph::{
    component_width, contract, e_components, sequential_merges, validate_sequence, ContractionSequence,
    EdgeLabelledGraph, Label, VertexPartition, VertexSet,
};
pub use morphism::{feasible_fine, feasible_fpt, is_morphism, MorphismRelation};
pub use oracle::{check_join_lemma, check_split_identity, enumerate_restricted, solve_brute, FunctionEnumeration, JoinVariant};
pub use premorphism::{
    omega_of_set, premorphism_catalog, singleton_value, sr_add, sr_mul, PartialMap, PreMorphism, PreMorphismSpec,
    WeightDomain, WeightMatrix, UNMAPPED,
};
pub use reductions::{csp_to_morphism, morphism_to_csp, Constraint, CspEncoding, CspInstance, CspRelation};
pub use profile::{ProfileSnapshot, ProfileTableView, SolveRun};
pub use semiring::{Carrier, CostCount, ExtRational, Nat, Semiring, SemiringValue};
