//! Weight matrices, the seven pre-morphisms and their direct set-level
//! evaluation.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{members, VertexSet};
use crate::semiring::{Carrier, CostCount, ExtRational, Nat, Semiring, SemiringValue};

/// Image of a vertex outside the domain of a partial map.
pub const UNMAPPED: usize = usize::MAX;

/// A map from a subset of `V_G` to `V_H`, indexed by `V_G` with
/// [`UNMAPPED`] outside its domain.
pub type PartialMap = Vec<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightDomain {
    Unused,
    Bits,
    ExtRational,
    ExtRationalNonneg,
    RestrictivePair,
}

impl WeightDomain {
    pub fn tag(self) -> &'static str {
        match self {
            WeightDomain::Unused => "unused",
            WeightDomain::Bits => "bits",
            WeightDomain::ExtRational => "ext_rational",
            WeightDomain::ExtRationalNonneg => "ext_rational_nonneg",
            WeightDomain::RestrictivePair => "restrictive_pair",
        }
    }
}

impl fmt::Display for WeightDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for WeightDomain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "unused" => WeightDomain::Unused,
            "bits" => WeightDomain::Bits,
            "ext_rational" => WeightDomain::ExtRational,
            "ext_rational_nonneg" => WeightDomain::ExtRationalNonneg,
            "restrictive_pair" => WeightDomain::RestrictivePair,
            _ => return Err(Error::UnknownName(format!("weight domain {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Entries {
    Unused,
    Bits(Vec<bool>),
    Rational(Vec<ExtRational>),
    /// `w1` per target column (`None` is `+inf`), `w2` per pair.
    Restrictive { w1: Vec<Option<u64>>, w2: Vec<bool> },
}

/// A `|V_G| x |V_H|` weight matrix in one of the weight domains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMatrix {
    n_g: usize,
    n_h: usize,
    domain: WeightDomain,
    entries: Entries,
}

impl WeightMatrix {
    pub fn unused() -> Self {
        WeightMatrix {
            n_g: 0,
            n_h: 0,
            domain: WeightDomain::Unused,
            entries: Entries::Unused,
        }
    }

    fn check_len(n_g: usize, n_h: usize, len: usize) -> Result<()> {
        if len != n_g * n_h {
            return Err(Error::DimensionMismatch(format!(
                "{len} weights for a {n_g}x{n_h} matrix"
            )));
        }
        Ok(())
    }

    pub fn bits(n_g: usize, n_h: usize, bits: Vec<bool>) -> Result<Self> {
        Self::check_len(n_g, n_h, bits.len())?;
        Ok(WeightMatrix {
            n_g,
            n_h,
            domain: WeightDomain::Bits,
            entries: Entries::Bits(bits),
        })
    }

    pub fn ext_rational(n_g: usize, n_h: usize, values: Vec<ExtRational>) -> Result<Self> {
        Self::check_len(n_g, n_h, values.len())?;
        Ok(WeightMatrix {
            n_g,
            n_h,
            domain: WeightDomain::ExtRational,
            entries: Entries::Rational(values),
        })
    }

    pub fn ext_rational_nonneg(n_g: usize, n_h: usize, values: Vec<ExtRational>) -> Result<Self> {
        Self::check_len(n_g, n_h, values.len())?;
        if let Some(i) = values.iter().position(ExtRational::is_negative) {
            return Err(Error::DimensionMismatch(format!(
                "negative weight {} at ({}, {})",
                values[i],
                i / n_h,
                i % n_h
            )));
        }
        Ok(WeightMatrix {
            n_g,
            n_h,
            domain: WeightDomain::ExtRationalNonneg,
            entries: Entries::Rational(values),
        })
    }

    pub fn restrictive(n_g: usize, n_h: usize, w1: Vec<Option<u64>>, w2: Vec<bool>) -> Result<Self> {
        Self::check_len(n_g, n_h, w2.len())?;
        if w1.len() != n_h {
            return Err(Error::DimensionMismatch(format!(
                "{} cardinalities for {n_h} target vertices",
                w1.len()
            )));
        }
        Ok(WeightMatrix {
            n_g,
            n_h,
            domain: WeightDomain::RestrictivePair,
            entries: Entries::Restrictive { w1, w2 },
        })
    }

    /// A random matrix in `domain` with small entries.
    pub fn random(domain: WeightDomain, n_g: usize, n_h: usize, rng: &mut impl Rng) -> Self {
        let cells = n_g * n_h;
        match domain {
            WeightDomain::Unused => Self::unused(),
            WeightDomain::Bits => Self::bits(n_g, n_h, (0..cells).map(|_| rng.gen_bool(0.75)).collect()).unwrap(),
            WeightDomain::ExtRational | WeightDomain::ExtRationalNonneg => {
                let lo = if domain == WeightDomain::ExtRational { -4 } else { 0 };
                let values = (0..cells)
                    .map(|_| {
                        if rng.gen_bool(0.1) {
                            ExtRational::Infinite
                        } else {
                            ExtRational::ratio(rng.gen_range(lo..=4), rng.gen_range(1..=2))
                        }
                    })
                    .collect();
                if domain == WeightDomain::ExtRational {
                    Self::ext_rational(n_g, n_h, values).unwrap()
                } else {
                    Self::ext_rational_nonneg(n_g, n_h, values).unwrap()
                }
            }
            WeightDomain::RestrictivePair => {
                let w1 = (0..n_h)
                    .map(|_| if rng.gen_bool(0.5) { None } else { Some(rng.gen_range(0..=n_g.min(3)) as u64) })
                    .collect();
                let w2 = (0..cells).map(|_| rng.gen_bool(0.85)).collect();
                Self::restrictive(n_g, n_h, w1, w2).unwrap()
            }
        }
    }

    pub fn domain(&self) -> WeightDomain {
        self.domain
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n_g, self.n_h)
    }

    pub fn bit(&self, u: usize, a: usize) -> bool {
        match &self.entries {
            Entries::Bits(b) => b[u * self.n_h + a],
            Entries::Restrictive { w2, .. } => w2[u * self.n_h + a],
            _ => panic!("matrix holds no bits"),
        }
    }

    pub fn rational(&self, u: usize, a: usize) -> &ExtRational {
        match &self.entries {
            Entries::Rational(r) => &r[u * self.n_h + a],
            _ => panic!("matrix holds no rationals"),
        }
    }

    /// Column cardinality of a restrictive matrix; `None` is `+inf`.
    pub fn cardinality(&self, a: usize) -> Option<u64> {
        match &self.entries {
            Entries::Restrictive { w1, .. } => w1[a],
            _ => panic!("matrix holds no cardinalities"),
        }
    }

    /// Same matrix with rows and columns reindexed: entry `(u, a)` of the
    /// result is entry `(row_of[u], col_of[a])` of `self`.
    pub fn reindexed(&self, row_of: &[usize], col_of: &[usize]) -> Self {
        let (n_g, n_h) = (row_of.len(), col_of.len());
        let pick = |u: usize, a: usize| row_of[u] * self.n_h + col_of[a];
        let entries = match &self.entries {
            Entries::Unused => Entries::Unused,
            Entries::Bits(b) => Entries::Bits((0..n_g * n_h).map(|i| b[pick(i / n_h, i % n_h)]).collect()),
            Entries::Rational(r) => {
                Entries::Rational((0..n_g * n_h).map(|i| r[pick(i / n_h, i % n_h)].clone()).collect())
            }
            Entries::Restrictive { w1, w2 } => Entries::Restrictive {
                w1: col_of.iter().map(|&a| w1[a]).collect(),
                w2: (0..n_g * n_h).map(|i| w2[pick(i / n_h, i % n_h)]).collect(),
            },
        };
        if self.domain == WeightDomain::Unused {
            return Self::unused();
        }
        WeightMatrix {
            n_g,
            n_h,
            domain: self.domain,
            entries,
        }
    }
}

/// The seven implemented pre-morphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PreMorphism {
    Indicator,
    List,
    Count,
    CountList,
    MinCost,
    MinWeight,
    Restrictive,
}

/// Semiring, weight domain and capability flags of a pre-morphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PreMorphismSpec {
    pub premorphism: PreMorphism,
    pub name: &'static str,
    pub carrier: Carrier,
    pub weight_domain: WeightDomain,
    pub strong: bool,
    pub corestriction_independent: bool,
    pub uses_weights: bool,
}

impl PreMorphismSpec {
    /// Eligible for the instance-parameterized solver.
    pub fn fpt_eligible(&self) -> bool {
        self.strong && self.corestriction_independent
    }
}

impl PreMorphism {
    pub const ALL: [PreMorphism; 7] = [
        PreMorphism::Indicator,
        PreMorphism::List,
        PreMorphism::Count,
        PreMorphism::CountList,
        PreMorphism::MinCost,
        PreMorphism::MinWeight,
        PreMorphism::Restrictive,
    ];

    pub fn spec(self) -> PreMorphismSpec {
        use PreMorphism::*;
        let (name, carrier, weight_domain, strong, cor_ind) = match self {
            Indicator => ("indicator", Carrier::Bool, WeightDomain::Unused, true, true),
            List => ("list", Carrier::Bool, WeightDomain::Bits, true, true),
            Count => ("count", Carrier::Nat, WeightDomain::Unused, true, true),
            CountList => ("count_list", Carrier::Nat, WeightDomain::Bits, true, true),
            MinCost => ("mincost", Carrier::Pair, WeightDomain::ExtRational, true, true),
            MinWeight => ("minweight", Carrier::Pair, WeightDomain::ExtRationalNonneg, false, true),
            Restrictive => ("restrictive_list_count", Carrier::Nat, WeightDomain::RestrictivePair, false, false),
        };
        PreMorphismSpec {
            premorphism: self,
            name,
            carrier,
            weight_domain,
            strong,
            corestriction_independent: cor_ind,
            uses_weights: weight_domain != WeightDomain::Unused,
        }
    }

    pub fn name(self) -> &'static str {
        self.spec().name
    }

    /// Short name used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            PreMorphism::Restrictive => "restrictive",
            other => other.name(),
        }
    }

    pub fn carrier(self) -> Carrier {
        self.spec().carrier
    }

    pub fn from_name(name: &str) -> Result<Self> {
        PreMorphism::ALL
            .into_iter()
            .find(|p| p.name() == name || p.cli_name() == name)
            .ok_or_else(|| Error::UnknownName(format!("pre-morphism {name:?}")))
    }

    /// Reject weight matrices of the wrong domain.
    pub fn check_weights(self, w: &WeightMatrix) -> Result<()> {
        let spec = self.spec();
        if !spec.uses_weights {
            return Ok(());
        }
        let ok = w.domain() == spec.weight_domain
            || (self == PreMorphism::MinCost && w.domain() == WeightDomain::ExtRationalNonneg);
        if !ok {
            return Err(Error::WeightDomainMismatch {
                premorphism: spec.name,
                expected: spec.weight_domain.tag(),
                found: w.domain().tag(),
            });
        }
        Ok(())
    }

    /// Like [`check_weights`](Self::check_weights), also requiring the
    /// matrix to be `n_g x n_h`.
    pub fn check_weights_for(self, w: &WeightMatrix, n_g: usize, n_h: usize) -> Result<()> {
        self.check_weights(w)?;
        if self.spec().uses_weights && w.dims() != (n_g, n_h) {
            return Err(Error::DimensionMismatch(format!(
                "weight matrix is {}x{}, instance and template need {n_g}x{n_h}",
                w.dims().0,
                w.dims().1
            )));
        }
        Ok(())
    }
}

pub fn premorphism_catalog() -> Vec<PreMorphismSpec> {
    PreMorphism::ALL.iter().map(|p| p.spec()).collect()
}

impl fmt::Display for PreMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PreMorphism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PreMorphism::from_name(s)
    }
}

fn cost_of(cost: ExtRational) -> SemiringValue {
    SemiringValue::Pair(CostCount::new(cost, Nat::from(1)))
}

fn max_rational<'a>(items: impl Iterator<Item = &'a ExtRational>) -> ExtRational {
    items.max().cloned().unwrap_or_else(ExtRational::zero)
}

/// Value on the one-element set holding the constant map `S -> {a}`.
pub fn singleton_value(pm: PreMorphism, w: &WeightMatrix, s: VertexSet, a: usize) -> Result<SemiringValue> {
    pm.check_weights(w)?;
    Ok(singleton_unchecked(pm, w, s, a))
}

pub(crate) fn singleton_unchecked(pm: PreMorphism, w: &WeightMatrix, s: VertexSet, a: usize) -> SemiringValue {
    use PreMorphism::*;
    let listed = || members(s).all(|u| w.bit(u, a));
    match pm {
        Indicator => SemiringValue::Bool(true),
        Count => SemiringValue::nat(1),
        List => SemiringValue::Bool(listed()),
        CountList => SemiringValue::nat(listed() as u64),
        MinCost => cost_of(members(s).fold(ExtRational::zero(), |acc, u| acc.add(w.rational(u, a)))),
        MinWeight => cost_of(max_rational(members(s).map(|u| w.rational(u, a)).collect::<Vec<_>>().into_iter())),
        Restrictive => {
            let size = s.count_ones() as u64;
            let card_ok = w.cardinality(a).map_or(true, |c| c == size);
            SemiringValue::nat((card_ok && listed()) as u64)
        }
    }
}

/// Typed form of [`singleton_value`] for the solvers.
pub(crate) fn singleton_in<S: Semiring>(pm: PreMorphism, w: &WeightMatrix, s: VertexSet, a: usize) -> S {
    S::from_value(&singleton_unchecked(pm, w, s, a)).expect("carrier matches the pre-morphism")
}

fn check_function(f: &PartialMap, s: VertexSet, t: VertexSet) -> Result<()> {
    if let Some(u) = members(s).find(|&u| u >= f.len()) {
        return Err(Error::FunctionOutOfRange(format!("vertex {u} lies outside the map")));
    }
    for (u, &a) in f.iter().enumerate() {
        let in_domain = u < 64 && s & (1u64 << u) != 0;
        if in_domain != (a != UNMAPPED) {
            return Err(Error::FunctionOutOfRange(format!(
                "map domain differs from the given domain at vertex {u}"
            )));
        }
        if in_domain && (a >= 64 || t & (1u64 << a) == 0) {
            return Err(Error::FunctionOutOfRange(format!("image {a} of vertex {u} is outside the codomain")));
        }
    }
    Ok(())
}

/// Evaluate the pre-morphism directly from its set-level definition on the
/// explicit set `fs` of maps `S -> T`.
pub fn omega_of_set(
    pm: PreMorphism,
    w: &WeightMatrix,
    s: VertexSet,
    t: VertexSet,
    fs: &[PartialMap],
) -> Result<SemiringValue> {
    pm.check_weights(w)?;
    for f in fs {
        check_function(f, s, t)?;
    }
    use PreMorphism::*;
    let listed = |f: &PartialMap| members(s).all(|u| w.bit(u, f[u]));
    Ok(match pm {
        Indicator => SemiringValue::Bool(!fs.is_empty()),
        Count => SemiringValue::nat(fs.len() as u64),
        List => SemiringValue::Bool(fs.iter().any(listed)),
        CountList => SemiringValue::nat(fs.iter().filter(|f| listed(f)).count() as u64),
        MinCost | MinWeight => {
            let value = |f: &PartialMap| -> ExtRational {
                if pm == MinCost {
                    members(s).fold(ExtRational::zero(), |acc, u| acc.add(w.rational(u, f[u])))
                } else {
                    members(t).fold(ExtRational::zero(), |acc, v| {
                        let pre: Vec<&ExtRational> = members(s).filter(|&u| f[u] == v).map(|u| w.rational(u, v)).collect();
                        acc.add(&max_rational(pre.into_iter()))
                    })
                }
            };
            let costs: Vec<ExtRational> = fs.iter().map(value).collect();
            match costs.iter().min() {
                None | Some(ExtRational::Infinite) => SemiringValue::zero(Carrier::Pair),
                Some(best) => {
                    let ties = costs.iter().filter(|c| *c == best).count() as u64;
                    SemiringValue::pair(best.clone(), ties)
                }
            }
        }
        Restrictive => {
            let ok = |f: &PartialMap| {
                listed(f)
                    && members(t).all(|v| {
                        let size = members(s).filter(|&u| f[u] == v).count() as u64;
                        w.cardinality(v).map_or(true, |c| c == size)
                    })
            };
            SemiringValue::nat(fs.iter().filter(|f| ok(f)).count() as u64)
        }
    })
}

/// Semiring sum in the carrier of `pm`.
pub fn sr_add(pm: PreMorphism, x: &SemiringValue, y: &SemiringValue) -> Result<SemiringValue> {
    check_carrier(pm, x)?;
    check_carrier(pm, y)?;
    x.add(y)
}

/// Semiring product in the carrier of `pm`.
pub fn sr_mul(pm: PreMorphism, x: &SemiringValue, y: &SemiringValue) -> Result<SemiringValue> {
    check_carrier(pm, x)?;
    check_carrier(pm, y)?;
    x.mul(y)
}

fn check_carrier(pm: PreMorphism, x: &SemiringValue) -> Result<()> {
    if x.carrier() != pm.carrier() {
        return Err(Error::CarrierMismatch(format!(
            "{pm} works in {}, got a {} value",
            pm.carrier(),
            x.carrier()
        )));
    }
    Ok(())
}

/// Glue maps with disjoint domains.
pub fn join_maps(f1: &PartialMap, f2: &PartialMap) -> PartialMap {
    f1.iter()
        .zip(f2)
        .map(|(&a, &b)| {
            debug_assert!(a == UNMAPPED || b == UNMAPPED);
            if a == UNMAPPED {
                b
            } else {
                a
            }
        })
        .collect()
}

/// `F1 join F2`: every gluing of a map of `fs1` with a map of `fs2`.
pub fn join_sets(fs1: &[PartialMap], fs2: &[PartialMap]) -> Vec<PartialMap> {
    let mut out = Vec::with_capacity(fs1.len() * fs2.len());
    for f1 in fs1 {
        for f2 in fs2 {
            out.push(join_maps(f1, f2));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::set_of;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn weights_for(pm: PreMorphism, n_g: usize, n_h: usize, rng: &mut ChaCha8Rng) -> WeightMatrix {
        WeightMatrix::random(pm.spec().weight_domain, n_g, n_h, rng)
    }

    /// Every map `S -> T`.
    fn all_maps(n: usize, s: VertexSet, t: VertexSet) -> Vec<PartialMap> {
        let dom: Vec<usize> = members(s).collect();
        let cod: Vec<usize> = members(t).collect();
        let mut out = vec![];
        if cod.is_empty() && !dom.is_empty() {
            return out;
        }
        let total = cod.len().pow(dom.len() as u32);
        for mut code in 0..total {
            let mut f = vec![UNMAPPED; n];
            for &u in &dom {
                f[u] = cod[code % cod.len()];
                code /= cod.len();
            }
            out.push(f);
        }
        out
    }

    fn random_subset(rng: &mut ChaCha8Rng, fs: &[PartialMap]) -> Vec<PartialMap> {
        fs.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect()
    }

    fn random_set(rng: &mut ChaCha8Rng, universe: VertexSet) -> VertexSet {
        members(universe).filter(|_| rng.gen_bool(0.5)).fold(0, |acc, v| acc | (1 << v))
    }

    #[test]
    fn catalog_flags() {
        let cat = premorphism_catalog();
        assert_eq!(cat.len(), 7);
        let find = |n: &str| *cat.iter().find(|s| s.name == n).unwrap();
        assert!(!find("minweight").strong);
        assert!(find("indicator").strong && find("indicator").corestriction_independent);
        assert!(!find("restrictive_list_count").fpt_eligible());
        assert_eq!(cat.iter().filter(|s| s.fpt_eligible()).count(), 5);
        assert_eq!(PreMorphism::from_name("restrictive").unwrap(), PreMorphism::Restrictive);
        assert!(PreMorphism::from_name("sum").is_err());
    }

    #[test]
    fn singleton_examples() {
        let w = WeightMatrix::ext_rational(2, 1, vec![ExtRational::ratio(3, 2), ExtRational::ratio(5, 2)]).unwrap();
        let v = singleton_value(PreMorphism::MinCost, &w, 0b11, 0).unwrap();
        assert_eq!(v, SemiringValue::pair(ExtRational::from_integer(4), 1));
        let f = vec![0, 0];
        assert_eq!(omega_of_set(PreMorphism::MinCost, &w, 0b11, 0b1, &[f]).unwrap(), v);

        let r = WeightMatrix::restrictive(1, 2, vec![Some(2), None], vec![true, true]).unwrap();
        assert_eq!(singleton_value(PreMorphism::Restrictive, &r, 0, 0).unwrap(), SemiringValue::nat(0));
        assert_eq!(singleton_value(PreMorphism::Restrictive, &r, 0, 1).unwrap(), SemiringValue::nat(1));

        let any = WeightMatrix::unused();
        assert_eq!(singleton_value(PreMorphism::Count, &any, 0b101, 3).unwrap(), SemiringValue::nat(1));
        assert!(matches!(
            singleton_value(PreMorphism::List, &any, 0, 0),
            Err(Error::WeightDomainMismatch { .. })
        ));

        let nonneg = WeightMatrix::ext_rational_nonneg(2, 1, vec![ExtRational::from_integer(1), ExtRational::Infinite]).unwrap();
        assert_eq!(singleton_value(PreMorphism::MinWeight, &nonneg, 0, 0).unwrap(), SemiringValue::pair(ExtRational::zero(), 1));
        assert!(singleton_value(PreMorphism::MinWeight, &nonneg, 0b11, 0).unwrap().is_zero());
        assert!(singleton_value(PreMorphism::MinCost, &nonneg, 0b11, 0).unwrap().is_zero());
    }

    #[test]
    fn set_level_examples() {
        let any = WeightMatrix::unused();
        for pm in [PreMorphism::Indicator, PreMorphism::Count] {
            assert!(omega_of_set(pm, &any, 0b1, 0b1, &[]).unwrap().is_zero());
        }
        let seven: Vec<PartialMap> = (0..7).map(|a| vec![a]).collect();
        assert_eq!(omega_of_set(PreMorphism::Count, &any, 0b1, 0x7f, &seven).unwrap(), SemiringValue::nat(7));

        let w = WeightMatrix::ext_rational(1, 3, vec![2, 2, 5].into_iter().map(ExtRational::from_integer).collect()).unwrap();
        let fs: Vec<PartialMap> = (0..3).map(|a| vec![a]).collect();
        assert_eq!(
            omega_of_set(PreMorphism::MinCost, &w, 0b1, 0b111, &fs).unwrap(),
            SemiringValue::pair(ExtRational::from_integer(2), 2)
        );
        assert!(omega_of_set(PreMorphism::Count, &any, 0b1, 0b1, &[vec![1]]).is_err());
        assert!(omega_of_set(PreMorphism::Count, &any, 0b1, 0b11, &[vec![UNMAPPED]]).is_err());
    }

    #[test]
    fn empty_function_is_neutral() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for pm in PreMorphism::ALL {
            let w = weights_for(pm, 3, 3, &mut rng);
            let v = omega_of_set(pm, &w, 0, 0, &[vec![UNMAPPED; 3]]).unwrap();
            assert_eq!(v, SemiringValue::one(pm.carrier()), "{pm}");
        }
    }

    #[test]
    fn disjoint_union_axiom() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (n_g, n_h) = (3, 3);
        for trial in 0..500 {
            let pm = PreMorphism::ALL[trial % 7];
            let w = weights_for(pm, n_g, n_h, &mut rng);
            let s = random_set(&mut rng, 0b111);
            let t = random_set(&mut rng, 0b111) | 1;
            let mut all = all_maps(n_g, s, t);
            all.shuffle(&mut rng);
            let cut = rng.gen_range(0..=all.len());
            let (f1, f2) = all.split_at(cut);
            let f1 = random_subset(&mut rng, f1);
            let f2 = random_subset(&mut rng, f2);
            let union: Vec<PartialMap> = f1.iter().chain(&f2).cloned().collect();
            let lhs = omega_of_set(pm, &w, s, t, &union).unwrap();
            let rhs = sr_add(pm, &omega_of_set(pm, &w, s, t, &f1).unwrap(), &omega_of_set(pm, &w, s, t, &f2).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{pm}");
        }
    }

    /// Join axiom over disjoint domains; with `overlap` the codomains may
    /// intersect.
    fn join_trials(pm: PreMorphism, overlap: bool, trials: usize, seed: u64) -> Option<String> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n_g, n_h) = (4, 4);
        for _ in 0..trials {
            let w = weights_for(pm, n_g, n_h, &mut rng);
            let s1 = random_set(&mut rng, 0b1111);
            let s2 = random_set(&mut rng, 0b1111 & !s1);
            let (t1, t2) = if overlap {
                (random_set(&mut rng, 0b1111) | 1, random_set(&mut rng, 0b1111) | 1)
            } else {
                let t1 = random_set(&mut rng, 0b1111);
                (t1, 0b1111 & !t1)
            };
            let f1 = random_subset(&mut rng, &all_maps(n_g, s1, t1));
            let f2 = random_subset(&mut rng, &all_maps(n_g, s2, t2));
            let joined = join_sets(&f1, &f2);
            let lhs = omega_of_set(pm, &w, s1 | s2, t1 | t2, &joined).unwrap();
            let rhs = sr_mul(pm, &omega_of_set(pm, &w, s1, t1, &f1).unwrap(), &omega_of_set(pm, &w, s2, t2, &f2).unwrap()).unwrap();
            if lhs != rhs {
                return Some(format!("{pm}: {lhs} != {rhs}"));
            }
        }
        None
    }

    #[test]
    fn join_axiom_disjoint_codomains() {
        for (i, pm) in PreMorphism::ALL.into_iter().enumerate() {
            assert_eq!(join_trials(pm, false, 500, 100 + i as u64), None);
        }
    }

    #[test]
    fn strong_join_axiom() {
        for (i, pm) in PreMorphism::ALL.into_iter().enumerate() {
            if pm.spec().strong {
                assert_eq!(join_trials(pm, true, 500, 200 + i as u64), None);
            }
        }
    }

    #[test]
    fn minweight_is_not_strong() {
        // Both maps send their single vertex to target 0.
        let w = WeightMatrix::ext_rational_nonneg(2, 1, vec![ExtRational::from_integer(1), ExtRational::from_integer(2)]).unwrap();
        let pm = PreMorphism::MinWeight;
        let f1 = vec![vec![0, UNMAPPED]];
        let f2 = vec![vec![UNMAPPED, 0]];
        let lhs = omega_of_set(pm, &w, 0b11, 0b1, &join_sets(&f1, &f2)).unwrap();
        let rhs = sr_mul(pm, &omega_of_set(pm, &w, 0b01, 0b1, &f1).unwrap(), &omega_of_set(pm, &w, 0b10, 0b1, &f2).unwrap()).unwrap();
        assert_eq!(lhs, SemiringValue::pair(ExtRational::from_integer(2), 1));
        assert_eq!(rhs, SemiringValue::pair(ExtRational::from_integer(3), 1));
    }

    #[test]
    fn corestriction_independence() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let (n_g, n_h) = (4, 4);
        for pm in PreMorphism::ALL {
            if !pm.spec().corestriction_independent {
                continue;
            }
            for _ in 0..500 {
                let w = weights_for(pm, n_g, n_h, &mut rng);
                let s = random_set(&mut rng, 0b1111);
                let t = random_set(&mut rng, 0b1111) | 1;
                let cod: Vec<usize> = members(t).collect();
                let f: PartialMap = (0..n_g)
                    .map(|u| if s & (1 << u) != 0 { *cod.choose(&mut rng).unwrap() } else { UNMAPPED })
                    .collect();
                let image = set_of(f.iter().copied().filter(|&a| a != UNMAPPED));
                let wide = omega_of_set(pm, &w, s, t, &[f.clone()]).unwrap();
                let narrow = omega_of_set(pm, &w, s, image, &[f]).unwrap();
                assert_eq!(wide, narrow, "{pm}");
            }
        }
    }

    #[test]
    fn restrictive_is_not_corestriction_independent() {
        // Target 1 is unused but demands one preimage.
        let w = WeightMatrix::restrictive(1, 2, vec![None, Some(1)], vec![true, true]).unwrap();
        let f = vec![0];
        let pm = PreMorphism::Restrictive;
        assert_eq!(omega_of_set(pm, &w, 0b1, 0b01, &[f.clone()]).unwrap(), SemiringValue::nat(1));
        assert_eq!(omega_of_set(pm, &w, 0b1, 0b11, &[f]).unwrap(), SemiringValue::nat(0));
    }

    #[test]
    fn singleton_matches_set_level() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for pm in PreMorphism::ALL {
            for _ in 0..50 {
                let w = weights_for(pm, 4, 3, &mut rng);
                let s = random_set(&mut rng, 0b1111);
                let a = rng.gen_range(0..3);
                let f: PartialMap = (0..4).map(|u| if s & (1 << u) != 0 { a } else { UNMAPPED }).collect();
                assert_eq!(
                    singleton_value(pm, &w, s, a).unwrap(),
                    omega_of_set(pm, &w, s, 1 << a, &[f]).unwrap(),
                    "{pm}"
                );
            }
        }
    }

    #[test]
    fn reindexing_weights() {
        let w = WeightMatrix::bits(2, 2, vec![true, false, false, false]).unwrap();
        let r = w.reindexed(&[1, 0], &[1, 0]);
        assert!(r.bit(1, 1));
        assert!(!r.bit(0, 0));
    }

    #[test]
    fn carrier_checks() {
        assert!(sr_add(PreMorphism::Count, &SemiringValue::Bool(true), &SemiringValue::nat(1)).is_err());
        assert_eq!(
            sr_mul(PreMorphism::Indicator, &SemiringValue::Bool(true), &SemiringValue::Bool(false)).unwrap(),
            SemiringValue::Bool(false)
        );
    }
}
