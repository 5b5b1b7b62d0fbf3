//! Seeded generators for named graph families, as 2-letter e-free graphs
//! with edges labelled 1 and everything else 0.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{sequential_merges, validate_sequence, ContractionSequence, EdgeLabelledGraph};

/// Largest graph a generator produces.
pub const MAX_VERTICES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    Clique(usize),
    Cycle(usize),
    Path(usize),
    CographRandom(usize),
    ErdosRenyi(usize, f64),
}

/// A generated graph, with a contraction sequence of known width where the
/// family provides one.
#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: EdgeLabelledGraph,
    pub sequence: Option<ContractionSequence>,
}

impl Family {
    pub fn vertex_count(&self) -> usize {
        match *self {
            Family::Clique(n) | Family::Cycle(n) | Family::Path(n) | Family::CographRandom(n) | Family::ErdosRenyi(n, _) => n,
        }
    }

    fn check(&self) -> Result<()> {
        let n = self.vertex_count();
        let min = match self {
            Family::Cycle(_) => 3,
            _ => 1,
        };
        if n < min || n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!("{self} needs between {min} and {MAX_VERTICES} vertices")));
        }
        if let Family::ErdosRenyi(_, p) = *self {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidGraph(format!("edge probability {p} is outside [0, 1]")));
            }
        }
        Ok(())
    }

    /// The graph of this family drawn with `seed`. Deterministic families
    /// ignore the seed.
    pub fn generate(&self, seed: u64) -> Result<Generated> {
        self.check()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (graph, merges) = match *self {
            Family::Clique(n) => {
                let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
                (EdgeLabelledGraph::from_edges(n, &edges)?, Some(sequential_merges(n)))
            }
            Family::Cycle(n) => {
                let edges: Vec<_> = (0..n).map(|u| (u, (u + 1) % n)).collect();
                (EdgeLabelledGraph::from_edges(n, &edges)?, Some(sequential_merges(n)))
            }
            Family::Path(n) => {
                let edges: Vec<_> = (1..n).map(|u| (u - 1, u)).collect();
                (EdgeLabelledGraph::from_edges(n, &edges)?, Some(sequential_merges(n)))
            }
            Family::CographRandom(n) => {
                let (graph, merges) = random_cograph(n, &mut rng)?;
                (graph, Some(merges))
            }
            Family::ErdosRenyi(n, p) => {
                let edges: Vec<_> = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .filter(|_| rng.gen_bool(p))
                    .collect();
                (EdgeLabelledGraph::from_edges(n, &edges)?, None)
            }
        };
        let sequence = merges.map(|m| validate_sequence(&graph, &m)).transpose()?;
        Ok(Generated { graph, sequence })
    }
}

enum Cotree {
    Leaf(usize),
    Node { join: bool, children: Vec<Cotree> },
}

fn random_cotree(vertices: &[usize], rng: &mut ChaCha8Rng) -> Cotree {
    if vertices.len() == 1 {
        return Cotree::Leaf(vertices[0]);
    }
    let k = rng.gen_range(2..=vertices.len().min(3));
    let mut groups = vec![Vec::new(); k];
    for (i, &v) in vertices.iter().enumerate() {
        let g = if i < k { i } else { rng.gen_range(0..k) };
        groups[g].push(v);
    }
    Cotree::Node {
        join: rng.gen_bool(0.5),
        children: groups.iter().map(|g| random_cotree(g, rng)).collect(),
    }
}

fn cotree_edges(t: &Cotree, edges: &mut Vec<(usize, usize)>) -> Vec<usize> {
    match t {
        Cotree::Leaf(v) => vec![*v],
        Cotree::Node { join, children } => {
            let mut all: Vec<usize> = Vec::new();
            for c in children {
                let vs = cotree_edges(c, edges);
                if *join {
                    edges.extend(all.iter().flat_map(|&u| vs.iter().map(move |&v| (u, v))));
                }
                all.extend(vs);
            }
            all
        }
    }
}

/// Contract every subtree to one part, children before parents. Returns the
/// representative of the subtree's part.
fn cotree_merges(t: &Cotree, merges: &mut Vec<(usize, usize)>) -> usize {
    match t {
        Cotree::Leaf(v) => *v,
        Cotree::Node { children, .. } => {
            let mut rep = cotree_merges(&children[0], merges);
            for c in &children[1..] {
                let other = cotree_merges(c, merges);
                merges.push((rep.min(other), rep.max(other)));
                rep = rep.min(other);
            }
            rep
        }
    }
}

fn random_cograph(n: usize, rng: &mut ChaCha8Rng) -> Result<(EdgeLabelledGraph, Vec<(usize, usize)>)> {
    let mut vertices: Vec<usize> = (0..n).collect();
    vertices.shuffle(rng);
    let tree = random_cotree(&vertices, rng);
    let mut edges = Vec::new();
    cotree_edges(&tree, &mut edges);
    let mut merges = Vec::new();
    cotree_merges(&tree, &mut merges);
    Ok((EdgeLabelledGraph::from_edges(n, &edges)?, merges))
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Clique(n) => write!(f, "clique:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Path(n) => write!(f, "path:{n}"),
            Family::CographRandom(n) => write!(f, "cograph_random:{n}"),
            Family::ErdosRenyi(n, p) => write!(f, "erdos_renyi:{n}:{p}"),
        }
    }
}

/// `clique:<q>`, `cycle:<n>`, `path:<n>`, `cograph_random:<n>` or
/// `erdos_renyi:<n>:<p>`.
impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::InvalidGraph(format!("bad family parameters in {s:?}"));
        let size = |i: usize| -> Result<usize> { parts.get(i).and_then(|x| x.parse().ok()).ok_or_else(bad) };
        let family = match (parts[0], parts.len()) {
            ("clique", 2) => Family::Clique(size(1)?),
            ("cycle", 2) => Family::Cycle(size(1)?),
            ("path", 2) => Family::Path(size(1)?),
            ("cograph_random", 2) => Family::CographRandom(size(1)?),
            ("erdos_renyi", 3) => Family::ErdosRenyi(size(1)?, parts[2].parse().map_err(|_| bad())?),
            ("clique" | "cycle" | "path" | "cograph_random" | "erdos_renyi", _) => return Err(bad()),
            _ => return Err(Error::UnknownName(format!("graph family {:?}", parts[0]))),
        };
        family.check()?;
        Ok(family)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ctww::ctww_exact;
    use crate::graph::set_of;

    fn degree(g: &EdgeLabelledGraph, u: usize) -> usize {
        (0..g.vertex_count()).filter(|&v| g.label(u, v).index() == 1).count()
    }

    #[test]
    fn cycle_has_width_three_sequence() {
        let c5 = Family::Cycle(5).generate(0).unwrap();
        assert!((0..5).all(|u| degree(&c5.graph, u) == 2));
        assert_eq!(c5.sequence.unwrap().component_width(), 3);
        for n in 3..=12 {
            let c = Family::Cycle(n).generate(0).unwrap();
            assert!(c.sequence.unwrap().component_width() <= 3);
        }
    }

    #[test]
    fn clique_has_width_one_sequence() {
        let k4 = Family::Clique(4).generate(0).unwrap();
        assert!((0..4).all(|u| degree(&k4.graph, u) == 3 && k4.graph.label(u, u).index() == 0));
        assert_eq!(k4.sequence.unwrap().component_width(), 1);
    }

    #[test]
    fn path_degrees() {
        let p = Family::Path(4).generate(0).unwrap();
        let degrees: Vec<usize> = (0..4).map(|u| degree(&p.graph, u)).collect();
        assert_eq!(degrees, vec![1, 2, 2, 1]);
        assert!(p.sequence.unwrap().component_width() <= 2);
    }

    #[test]
    fn cographs_have_width_one() {
        for n in 1..=8 {
            for seed in 0..5 {
                let c = Family::CographRandom(n).generate(seed).unwrap();
                assert_eq!(c.sequence.unwrap().component_width(), 1);
                assert_eq!(ctww_exact(&c.graph).unwrap().0, 1);
            }
        }
        let big = Family::CographRandom(40).generate(9).unwrap();
        assert_eq!(big.sequence.unwrap().component_width(), 1);
    }

    #[test]
    fn cographs_have_no_induced_p4() {
        for seed in 0..20 {
            let g = Family::CographRandom(7).generate(seed).unwrap().graph;
            let adj = |u: usize, v: usize| g.label(u, v).index() == 1;
            for a in 0..7 {
                for b in 0..7 {
                    for c in 0..7 {
                        for d in 0..7 {
                            if set_of([a, b, c, d]).count_ones() < 4 {
                                continue;
                            }
                            let p4 = adj(a, b) && adj(b, c) && adj(c, d) && !adj(a, c) && !adj(b, d) && !adj(a, d);
                            assert!(!p4, "seed {seed}: {a} {b} {c} {d}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn seeds_determine_graphs() {
        let a = Family::ErdosRenyi(10, 0.5).generate(7).unwrap();
        let b = Family::ErdosRenyi(10, 0.5).generate(7).unwrap();
        let c = Family::ErdosRenyi(10, 0.5).generate(8).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_ne!(a.graph, c.graph);
        assert!(a.sequence.is_none());
        let x = Family::CographRandom(10).generate(3).unwrap();
        let y = Family::CographRandom(10).generate(3).unwrap();
        assert_eq!(x.graph, y.graph);
    }

    #[test]
    fn parse_specs() {
        for s in ["clique:4", "cycle:5", "path:1", "cograph_random:8", "erdos_renyi:6:0.25"] {
            assert_eq!(s.parse::<Family>().unwrap().to_string(), s);
        }
        assert!(matches!("wheel:5".parse::<Family>(), Err(Error::UnknownName(_))));
        assert!("cycle:2".parse::<Family>().is_err());
        assert!("clique".parse::<Family>().is_err());
        assert!("erdos_renyi:5:1.5".parse::<Family>().is_err());
        assert!("path:65".parse::<Family>().is_err());
    }
}
