//! Translations between binary CSP instances and morphism problems over
//! edge-labelled graphs, in both directions.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::graph::{EdgeLabelledGraph, Label};
use crate::morphism::MorphismRelation;

/// A named binary relation over `0..domain_size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CspRelation {
    pub name: String,
    pub pairs: Vec<(usize, usize)>,
}

/// A constraint `relation(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub relation: String,
    pub u: usize,
    pub v: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CspInstance {
    pub domain_size: usize,
    pub relations: Vec<CspRelation>,
    pub num_vars: usize,
    pub constraints: Vec<Constraint>,
}

impl CspInstance {
    pub fn new(
        domain_size: usize,
        relations: Vec<CspRelation>,
        num_vars: usize,
        constraints: Vec<Constraint>,
    ) -> Result<Self> {
        let inst = CspInstance {
            domain_size,
            relations,
            num_vars,
            constraints,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        let mut names = BTreeSet::new();
        for rel in &self.relations {
            if !names.insert(rel.name.as_str()) {
                return Err(Error::InvalidGraph(format!("relation {} is defined twice", rel.name)));
            }
            if let Some(&(a, b)) = rel.pairs.iter().find(|&&(a, b)| a >= self.domain_size || b >= self.domain_size) {
                return Err(Error::InvalidGraph(format!(
                    "pair ({a}, {b}) of relation {} lies outside the domain of size {}",
                    rel.name, self.domain_size
                )));
            }
        }
        for c in &self.constraints {
            if !names.contains(c.relation.as_str()) {
                return Err(Error::UnknownName(format!("relation {}", c.relation)));
            }
            if c.u >= self.num_vars || c.v >= self.num_vars {
                return Err(Error::InvalidGraph(format!(
                    "constraint {}({}, {}) names a variable outside 0..{}",
                    c.relation, c.u, c.v, self.num_vars
                )));
            }
        }
        Ok(())
    }

    fn relation_index(&self) -> HashMap<&str, usize> {
        self.relations.iter().enumerate().map(|(i, r)| (r.name.as_str(), i)).collect()
    }

    /// Whether the assignment `f` (variable -> domain value) satisfies every
    /// constraint.
    pub fn is_solution(&self, f: &[usize]) -> bool {
        let index = self.relation_index();
        f.len() == self.num_vars
            && f.iter().all(|&a| a < self.domain_size)
            && self.constraints.iter().all(|c| {
                let rel = &self.relations[index[c.relation.as_str()]];
                rel.pairs.contains(&(f[c.u], f[c.v]))
            })
    }
}

/// Morphism problem built from a CSP instance. Labels of both graphs are
/// sets of relation indices, listed in `labels`.
#[derive(Clone, Debug)]
pub struct CspEncoding {
    pub template: EdgeLabelledGraph,
    pub relation: MorphismRelation,
    pub instance: EdgeLabelledGraph,
    pub labels: Vec<Vec<usize>>,
}

impl CspEncoding {
    /// Relation names making up label `x`.
    pub fn label_names<'a>(&self, inst: &'a CspInstance, x: Label) -> Vec<&'a str> {
        self.labels[x.index()]
            .iter()
            .map(|&i| inst.relations[i].name.as_str())
            .collect()
    }
}

/// The template on the domain labelled by the relations holding at each
/// pair, the instance on the variables labelled by the relations
/// constraining each pair, and inclusion between label sets.
pub fn csp_to_morphism(inst: &CspInstance) -> Result<CspEncoding> {
    inst.validate()?;
    let d = inst.domain_size;
    let n = inst.num_vars;
    let index = inst.relation_index();

    let mut template_sets = vec![BTreeSet::new(); d * d];
    for (i, rel) in inst.relations.iter().enumerate() {
        for &(a, b) in &rel.pairs {
            template_sets[a * d + b].insert(i);
        }
    }
    let mut instance_sets = vec![BTreeSet::new(); n * n];
    for c in &inst.constraints {
        instance_sets[c.u * n + c.v].insert(index[c.relation.as_str()]);
    }

    let mut ids: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for set in template_sets.iter().chain(&instance_sets) {
        let key: Vec<usize> = set.iter().copied().collect();
        let next = ids.len();
        ids.entry(key).or_insert(next);
    }
    let mut labels = vec![Vec::new(); ids.len()];
    for (set, &id) in &ids {
        labels[id] = set.clone();
    }
    let id_of = |set: &BTreeSet<usize>| ids[&set.iter().copied().collect::<Vec<_>>()];

    let k = labels.len();
    let template = EdgeLabelledGraph::from_fn(d, k, |a, b| Label::new(id_of(&template_sets[a * d + b])))?;
    let instance = EdgeLabelledGraph::from_fn(n, k, |u, v| Label::new(id_of(&instance_sets[u * n + v])))?;
    let mut relation = MorphismRelation::empty(k, k);
    for x in 0..k {
        for y in 0..k {
            let subset = labels[x].iter().all(|i| labels[y].binary_search(i).is_ok());
            relation.set(x, y, subset);
        }
    }
    Ok(CspEncoding {
        template,
        relation,
        instance,
        labels,
    })
}

/// Name of the relation generated for source label `x`.
pub fn label_relation_name(x: usize) -> String {
    format!("R{x}")
}

/// One relation `R_x = {(a, b) | (x, l_H(a, b)) in R}` per source label
/// and one constraint per ordered pair of instance vertices.
pub fn morphism_to_csp(h: &EdgeLabelledGraph, r: &MorphismRelation, g: &EdgeLabelledGraph) -> Result<CspInstance> {
    g.require_e_free()?;
    h.require_e_free()?;
    r.check_dimensions(g, h)?;
    let d = h.vertex_count();
    let relations = (0..g.alphabet_size())
        .map(|x| CspRelation {
            name: label_relation_name(x),
            pairs: (0..d)
                .flat_map(|a| (0..d).map(move |b| (a, b)))
                .filter(|&(a, b)| r.contains(Label::new(x), h.label(a, b)))
                .collect(),
        })
        .collect();
    let n = g.vertex_count();
    let constraints = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .map(|(u, v)| Constraint {
            relation: label_relation_name(g.label(u, v).index()),
            u,
            v,
        })
        .collect();
    CspInstance::new(d, relations, n, constraints)
}
