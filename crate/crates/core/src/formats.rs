//! Text formats for graphs, contraction sequences, relations, weight
//! matrices and CSP instances.
//!
//! Every format starts with a header naming it and its version. Blank lines
//! and lines starting with `#` are skipped by the parsers; the emitters
//! produce neither.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{validate_sequence, ContractionSequence, EdgeLabelledGraph, Label};
use crate::morphism::MorphismRelation;
use crate::premorphism::{WeightDomain, WeightMatrix};
use crate::reductions::{Constraint, CspInstance, CspRelation};
use crate::semiring::ExtRational;

pub(crate) struct Lines<'a> {
    format: &'static str,
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(format: &'static str, text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
        );
        Lines {
            format,
            inner: it.peekable(),
            last: 0,
        }
    }

    pub(crate) fn err(&self, line: usize, message: impl Into<String>) -> Error {
        Error::parse(self.format, line, message)
    }

    pub(crate) fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        let (no, l) = self.inner.next()?;
        self.last = no;
        Some((no, l.split_whitespace().collect()))
    }

    fn expect(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        let last = self.last;
        self.next().ok_or_else(|| self.err(last + 1, format!("expected {what}, found end of input")))
    }

    fn peek_word(&mut self) -> Option<&'a str> {
        self.inner.peek().and_then(|(_, l)| l.split_whitespace().next())
    }

    fn finish(&mut self) -> Result<()> {
        match self.next() {
            None => Ok(()),
            Some((no, _)) => Err(self.err(no, "unexpected trailing line")),
        }
    }

    /// A line `keyword value...` with exactly `arity` values after the keyword.
    fn keyword(&mut self, keyword: &str, arity: usize) -> Result<(usize, Vec<&'a str>)> {
        let (no, words) = self.expect(&format!("`{keyword}`"))?;
        if words[0] != keyword || words.len() != arity + 1 {
            return Err(self.err(no, format!("expected `{keyword}` with {arity} value(s)")));
        }
        Ok((no, words[1..].to_vec()))
    }

    pub(crate) fn header(&mut self, tag: &str, arity: usize) -> Result<(usize, Vec<&'a str>)> {
        let (no, values) = self.keyword(tag, arity + 1)?;
        if values[0] != "1" {
            return Err(self.err(no, format!("unsupported version {}", values[0])));
        }
        Ok((no, values[1..].to_vec()))
    }

    pub(crate) fn number<T: FromStr>(&self, line: usize, word: &str, what: &str) -> Result<T> {
        word.parse()
            .map_err(|_| self.err(line, format!("{what} {word:?} is not a valid number")))
    }
}

/// Parse an edge-labelled graph.
pub fn parse_elg(text: &str) -> Result<EdgeLabelledGraph> {
    let mut lines = Lines::new("elg", text);
    lines.header("elg", 0)?;
    let (no, v) = lines.keyword("vertices", 1)?;
    let n: usize = lines.number(no, v[0], "vertex count")?;
    let (no, v) = lines.keyword("labels", 1)?;
    let k: usize = lines.number(no, v[0], "alphabet size")?;
    let mut labels = Vec::with_capacity(n * n);
    for row in 0..n {
        let (no, words) = lines.expect(&format!("row {row}"))?;
        if words.len() != n {
            return Err(lines.err(no, format!("row {row} has {} entries, expected {n}", words.len())));
        }
        for (col, w) in words.iter().enumerate() {
            let x: usize = lines.number(no, w, "label")?;
            if x >= k {
                return Err(lines.err(no, format!("label {x} at row {row}, column {col} is outside 0..{k}")));
            }
            labels.push(Label::new(x));
        }
    }
    lines.finish()?;
    EdgeLabelledGraph::new(n, k, labels)
}

pub fn emit_elg(g: &EdgeLabelledGraph) -> String {
    let n = g.vertex_count();
    let mut out = format!("elg 1\nvertices {n}\nlabels {}\n", g.alphabet_size());
    for u in 0..n {
        let row: Vec<String> = (0..n).map(|v| g.label(u, v).index().to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parse the merges of a contraction sequence without checking them.
pub fn parse_seq(text: &str) -> Result<Vec<(usize, usize)>> {
    let mut lines = Lines::new("seq", text);
    lines.header("seq", 0)?;
    let mut merges = Vec::new();
    while let Some((no, words)) = lines.next() {
        if words.len() != 2 {
            return Err(lines.err(no, "expected two representatives"));
        }
        merges.push((lines.number(no, words[0], "representative")?, lines.number(no, words[1], "representative")?));
    }
    Ok(merges)
}

/// Parse a contraction sequence of `h` and validate it.
pub fn parse_seq_for(text: &str, h: &EdgeLabelledGraph) -> Result<ContractionSequence> {
    let merges = parse_seq(text)?;
    let expected = h.vertex_count().saturating_sub(1);
    if merges.len() != expected {
        return Err(Error::parse(
            "seq",
            0,
            format!("{} merges given, a graph on {} vertices needs {expected}", merges.len(), h.vertex_count()),
        ));
    }
    validate_sequence(h, &merges)
}

pub fn emit_seq(merges: &[(usize, usize)]) -> String {
    let mut out = String::from("seq 1\n");
    for (a, b) in merges {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

/// Parse a relation between label alphabets.
pub fn parse_rel(text: &str) -> Result<MorphismRelation> {
    let mut lines = Lines::new("rel", text);
    let (no, v) = lines.header("rel", 2)?;
    let x_g: usize = lines.number(no, v[0], "source alphabet size")?;
    let x_h: usize = lines.number(no, v[1], "target alphabet size")?;
    let mut r = MorphismRelation::empty(x_g, x_h);
    while let Some((no, words)) = lines.next() {
        if words.len() != 2 {
            return Err(lines.err(no, "expected a pair `x y`"));
        }
        let x: usize = lines.number(no, words[0], "label")?;
        let y: usize = lines.number(no, words[1], "label")?;
        if x >= x_g || y >= x_h {
            return Err(lines.err(no, format!("pair ({x}, {y}) lies outside {x_g}x{x_h}")));
        }
        r.set(x, y, true);
    }
    Ok(r)
}

pub fn emit_rel(r: &MorphismRelation) -> String {
    let mut out = format!("rel 1 {} {}\n", r.source_size(), r.target_size());
    for (x, y) in r.pairs() {
        let _ = writeln!(out, "{x} {y}");
    }
    out
}

/// Parse a weight matrix.
pub fn parse_wt(text: &str) -> Result<WeightMatrix> {
    let mut lines = Lines::new("wt", text);
    let (no, v) = lines.header("wt", 3)?;
    let domain: WeightDomain = v[0].parse().map_err(|e: Error| lines.err(no, e.to_string()))?;
    let n_g: usize = lines.number(no, v[1], "row count")?;
    let n_h: usize = lines.number(no, v[2], "column count")?;
    if domain == WeightDomain::Unused {
        lines.finish()?;
        return Ok(WeightMatrix::unused());
    }
    let mut cells: Vec<(usize, usize, &str)> = Vec::with_capacity(n_g * n_h);
    for row in 0..n_g {
        let (no, words) = lines.expect(&format!("row {row}"))?;
        if words.len() != n_h {
            return Err(lines.err(no, format!("row {row} has {} entries, expected {n_h}", words.len())));
        }
        cells.extend(words.iter().enumerate().map(|(col, w)| (no, col, *w)));
    }
    lines.finish()?;

    let bit = |no: usize, w: &str| match w {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(lines.err(no, format!("expected 0 or 1, found {w:?}"))),
    };
    let rational = |no: usize, w: &str| {
        w.parse::<ExtRational>()
            .map_err(|_| lines.err(no, format!("{w:?} is not a rational or `inf`")))
    };
    let at = |e: Error, no: usize| lines.err(no, e.to_string());
    match domain {
        WeightDomain::Unused => unreachable!(),
        WeightDomain::Bits => {
            let bits = cells.iter().map(|&(no, _, w)| bit(no, w)).collect::<Result<_>>()?;
            WeightMatrix::bits(n_g, n_h, bits)
        }
        WeightDomain::ExtRational => {
            let values = cells.iter().map(|&(no, _, w)| rational(no, w)).collect::<Result<_>>()?;
            WeightMatrix::ext_rational(n_g, n_h, values)
        }
        WeightDomain::ExtRationalNonneg => {
            let values: Vec<ExtRational> = cells.iter().map(|&(no, _, w)| rational(no, w)).collect::<Result<_>>()?;
            if let Some(&(no, _, w)) = cells.iter().zip(&values).find(|(_, x)| x.is_negative()).map(|(c, _)| c) {
                return Err(lines.err(no, format!("negative weight {w}")));
            }
            WeightMatrix::ext_rational_nonneg(n_g, n_h, values)
        }
        WeightDomain::RestrictivePair => {
            let mut w1: Vec<Option<Option<u64>>> = vec![None; n_h];
            let mut w2 = Vec::with_capacity(cells.len());
            for &(no, col, w) in &cells {
                let (card, b) = w
                    .split_once(':')
                    .ok_or_else(|| lines.err(no, format!("expected `W1:W2`, found {w:?}")))?;
                let card = match card {
                    "inf" => None,
                    c => Some(lines.number::<u64>(no, c, "cardinality")?),
                };
                match w1[col] {
                    None => w1[col] = Some(card),
                    Some(prev) if prev != card => {
                        return Err(at(Error::DimensionMismatch(format!("column {col} has differing cardinalities")), no))
                    }
                    Some(_) => {}
                }
                w2.push(bit(no, b)?);
            }
            let w1 = w1.into_iter().map(|c| c.unwrap_or(None)).collect();
            WeightMatrix::restrictive(n_g, n_h, w1, w2)
        }
    }
}

pub fn emit_wt(w: &WeightMatrix) -> String {
    let (n_g, n_h) = w.dims();
    let domain = w.domain();
    let mut out = format!("wt 1 {} {n_g} {n_h}\n", domain.tag());
    for u in 0..n_g {
        let row: Vec<String> = (0..n_h)
            .map(|a| match domain {
                WeightDomain::Unused => unreachable!(),
                WeightDomain::Bits => (w.bit(u, a) as u8).to_string(),
                WeightDomain::ExtRational | WeightDomain::ExtRationalNonneg => w.rational(u, a).to_string(),
                WeightDomain::RestrictivePair => {
                    let card = w.cardinality(a).map_or_else(|| "inf".to_string(), |c| c.to_string());
                    format!("{card}:{}", w.bit(u, a) as u8)
                }
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parse a CSP instance.
pub fn parse_csp(text: &str) -> Result<CspInstance> {
    let mut lines = Lines::new("csp", text);
    lines.header("csp", 0)?;
    let (no, v) = lines.keyword("domain", 1)?;
    let domain_size: usize = lines.number(no, v[0], "domain size")?;
    let mut relations = Vec::new();
    while lines.peek_word() == Some("relation") {
        let (_, v) = lines.keyword("relation", 1)?;
        let name = v[0].to_string();
        let mut pairs = Vec::new();
        loop {
            let (no, words) = lines.expect("`pair` or `end`")?;
            match words.as_slice() {
                ["end"] => break,
                ["pair", a, b] => {
                    let a: usize = lines.number(no, a, "domain value")?;
                    let b: usize = lines.number(no, b, "domain value")?;
                    if a >= domain_size || b >= domain_size {
                        return Err(lines.err(no, format!("pair ({a}, {b}) lies outside the domain")));
                    }
                    pairs.push((a, b));
                }
                _ => return Err(lines.err(no, "expected `pair <a> <b>` or `end`")),
            }
        }
        relations.push(CspRelation { name, pairs });
    }
    let (no, v) = lines.keyword("variables", 1)?;
    let num_vars: usize = lines.number(no, v[0], "variable count")?;
    let mut constraints = Vec::new();
    while let Some((no, words)) = lines.next() {
        match words.as_slice() {
            ["constraint", name, u, v] => {
                let u: usize = lines.number(no, u, "variable")?;
                let v: usize = lines.number(no, v, "variable")?;
                if !relations.iter().any(|r| r.name == *name) {
                    return Err(lines.err(no, format!("unknown relation {name}")));
                }
                if u >= num_vars || v >= num_vars {
                    return Err(lines.err(no, format!("variable outside 0..{num_vars}")));
                }
                constraints.push(Constraint {
                    relation: name.to_string(),
                    u,
                    v,
                });
            }
            _ => return Err(lines.err(no, "expected `constraint <name> <u> <v>`")),
        }
    }
    CspInstance::new(domain_size, relations, num_vars, constraints)
}

pub fn emit_csp(inst: &CspInstance) -> String {
    let mut out = format!("csp 1\ndomain {}\n", inst.domain_size);
    for rel in &inst.relations {
        let _ = writeln!(out, "relation {}", rel.name);
        for (a, b) in &rel.pairs {
            let _ = writeln!(out, "pair {a} {b}");
        }
        out.push_str("end\n");
    }
    let _ = writeln!(out, "variables {}", inst.num_vars);
    for c in &inst.constraints {
        let _ = writeln!(out, "constraint {} {} {}", c.relation, c.u, c.v);
    }
    out
}
