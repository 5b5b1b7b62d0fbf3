//! Solver dispatch and the benchmark harness.
//!
//! A plan is a `bench 1` header followed by lines
//! `run <template> <instance> <algorithm> <premorphism> <seed>`, where the
//! graphs are family specs such as `cycle:5` and the relation is HOM. Each
//! run becomes one CSV row with the columns of [`CSV_HEADER`].

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ctww::ctww_exact;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::fine::solve_fine_run;
use crate::formats::Lines;
use crate::fpt::{check_eligible, solve_fpt_run};
use crate::graph::{ContractionSequence, EdgeLabelledGraph};
use crate::morphism::MorphismRelation;
use crate::oracle::{solve_brute, FunctionEnumeration};
use crate::premorphism::{PreMorphism, WeightMatrix};
use crate::semiring::SemiringValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Parameterized by the template's width.
    Fine,
    /// Parameterized by the instance's width.
    Fpt,
    /// Exhaustive enumeration.
    Oracle,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Fine => "fine",
            Algorithm::Fpt => "fpt",
            Algorithm::Oracle => "oracle",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fine" => Ok(Algorithm::Fine),
            "fpt" => Ok(Algorithm::Fpt),
            "oracle" => Ok(Algorithm::Oracle),
            _ => Err(Error::UnknownName(format!("algorithm {s:?}"))),
        }
    }
}

/// Outcome of [`run_algorithm`]. The oracle reports the number of maps it
/// enumerated as its counter and has no width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub value: SemiringValue,
    pub op_count: u128,
    pub width: Option<usize>,
}

/// Solve with `algorithm`, computing an optimal contraction sequence when
/// the one it needs is not given.
#[allow(clippy::too_many_arguments)]
pub fn run_algorithm(
    algorithm: Algorithm,
    g: &EdgeLabelledGraph,
    h: &EdgeLabelledGraph,
    r: &MorphismRelation,
    pm: PreMorphism,
    w: &WeightMatrix,
    seq_g: Option<&ContractionSequence>,
    seq_h: Option<&ContractionSequence>,
) -> Result<Outcome> {
    let owned;
    let run = match algorithm {
        Algorithm::Fine => {
            let seq = match seq_h {
                Some(s) => s,
                None => {
                    owned = ctww_exact(h)?.1;
                    &owned
                }
            };
            solve_fine_run(g, h, r, seq, pm, w)?
        }
        Algorithm::Fpt => {
            check_eligible(pm)?;
            let seq = match seq_g {
                Some(s) => s,
                None if g.vertex_count() == 0 => {
                    return Ok(Outcome {
                        value: SemiringValue::one(pm.carrier()),
                        op_count: 0,
                        width: None,
                    })
                }
                None => {
                    owned = ctww_exact(g)?.1;
                    &owned
                }
            };
            solve_fpt_run(g, seq, h, r, pm, w)?
        }
        Algorithm::Oracle => {
            let value = solve_brute(g, h, r, pm, w)?;
            let maps = FunctionEnumeration::new(g.vertex_count(), g.all_vertices(), h.all_vertices()).size();
            return Ok(Outcome {
                value,
                op_count: maps,
                width: None,
            });
        }
    };
    Ok(Outcome {
        value: run.value,
        op_count: run.op_count as u128,
        width: Some(run.width),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlanEntry {
    pub template: Family,
    pub instance: Family,
    pub algorithm: Algorithm,
    pub premorphism: PreMorphism,
    pub seed: u64,
}

pub fn parse_plan(text: &str) -> Result<Vec<PlanEntry>> {
    let mut lines = Lines::new("bench", text);
    lines.header("bench", 0)?;
    let mut plan = Vec::new();
    while let Some((no, words)) = lines.next() {
        let [keyword, template, instance, algorithm, pm, seed] = words[..] else {
            return Err(lines.err(no, "expected `run <template> <instance> <algorithm> <premorphism> <seed>`"));
        };
        if keyword != "run" {
            return Err(lines.err(no, format!("unknown directive {keyword:?}")));
        }
        let at = |e: Error| lines.err(no, e.to_string());
        plan.push(PlanEntry {
            template: template.parse().map_err(at)?,
            instance: instance.parse().map_err(at)?,
            algorithm: algorithm.parse().map_err(at)?,
            premorphism: pm.parse().map_err(at)?,
            seed: lines.number(no, seed, "seed")?,
        });
    }
    Ok(plan)
}

pub const CSV_HEADER: [&str; 12] = [
    "index",
    "template",
    "instance",
    "algorithm",
    "premorphism",
    "n",
    "m",
    "seq_width",
    "value",
    "op_count",
    "wall_ms",
    "error",
];

/// One CSV row. Fields the run did not reach are empty.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub index: usize,
    pub entry: PlanEntry,
    pub n: usize,
    pub m: usize,
    pub outcome: Option<Outcome>,
    pub wall_ms: f64,
    pub error: Option<Error>,
}

impl BenchRow {
    pub fn record(&self) -> Vec<String> {
        let o = self.outcome.as_ref();
        vec![
            self.index.to_string(),
            self.entry.template.to_string(),
            self.entry.instance.to_string(),
            self.entry.algorithm.to_string(),
            self.entry.premorphism.cli_name().to_string(),
            self.n.to_string(),
            self.m.to_string(),
            o.and_then(|o| o.width).map(|w| w.to_string()).unwrap_or_default(),
            o.map(|o| o.value.to_string()).unwrap_or_default(),
            o.map(|o| o.op_count.to_string()).unwrap_or_default(),
            format!("{:.3}", self.wall_ms),
            self.error.as_ref().map(|e| e.to_string()).unwrap_or_default(),
        ]
    }
}

/// Graphs and weights of a plan entry, fully determined by its seed.
pub fn materialize(
    entry: &PlanEntry,
) -> Result<(crate::family::Generated, crate::family::Generated, WeightMatrix)> {
    let template = entry.template.generate(entry.seed)?;
    let instance = entry.instance.generate(entry.seed.wrapping_add(1))?;
    let mut rng = ChaCha8Rng::seed_from_u64(entry.seed.wrapping_add(2));
    let w = WeightMatrix::random(
        entry.premorphism.spec().weight_domain,
        instance.graph.vertex_count(),
        template.graph.vertex_count(),
        &mut rng,
    );
    Ok((template, instance, w))
}

pub fn run_entry(index: usize, entry: &PlanEntry) -> BenchRow {
    let mut row = BenchRow {
        index,
        entry: entry.clone(),
        n: entry.instance.vertex_count(),
        m: entry.template.vertex_count(),
        outcome: None,
        wall_ms: 0.0,
        error: None,
    };
    let (template, instance, w) = match materialize(entry) {
        Ok(x) => x,
        Err(e) => {
            row.error = Some(e);
            return row;
        }
    };
    let start = Instant::now();
    let result = run_algorithm(
        entry.algorithm,
        &instance.graph,
        &template.graph,
        &MorphismRelation::hom(),
        entry.premorphism,
        &w,
        instance.sequence.as_ref(),
        template.sequence.as_ref(),
    );
    row.wall_ms = start.elapsed().as_secs_f64() * 1000.0;
    match result {
        Ok(o) => row.outcome = Some(o),
        Err(e) => row.error = Some(e),
    }
    row
}

/// Run every entry on up to `jobs` threads. Rows come back in plan order.
pub fn run_plan(plan: &[PlanEntry], jobs: usize) -> Vec<BenchRow> {
    let next = AtomicUsize::new(0);
    let rows: Mutex<Vec<Option<BenchRow>>> = Mutex::new(vec![None; plan.len()]);
    std::thread::scope(|scope| {
        for _ in 0..jobs.max(1).min(plan.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= plan.len() {
                    break;
                }
                let row = run_entry(i, &plan[i]);
                rows.lock().unwrap()[i] = Some(row);
            });
        }
    });
    rows.into_inner().unwrap().into_iter().map(|r| r.expect("every entry ran")).collect()
}

pub fn write_csv(rows: &[BenchRow], out: impl std::io::Write) -> std::io::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for row in rows {
        writer.write_record(row.record())?;
    }
    writer.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn csv_rows(rows: &[BenchRow]) -> Vec<csv::StringRecord> {
        let mut buf = Vec::new();
        write_csv(rows, &mut buf).unwrap();
        let mut reader = csv::Reader::from_reader(buf.as_slice());
        assert_eq!(reader.headers().unwrap().iter().collect::<Vec<_>>(), CSV_HEADER);
        reader.records().map(|r| r.unwrap()).collect()
    }

    #[test]
    fn empty_plan_gives_header_only() {
        let plan = parse_plan("bench 1\n").unwrap();
        let mut buf = Vec::new();
        write_csv(&run_plan(&plan, 4), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{}\n", CSV_HEADER.join(",")));
    }

    #[test]
    fn fine_counters_grow_with_n() {
        let text: String = std::iter::once("bench 1\n".to_string())
            .chain((6..=12).map(|n| format!("run cycle:5 erdos_renyi:{n}:0.5 fine count 1\n")))
            .collect();
        let plan = parse_plan(&text).unwrap();
        let rows = run_plan(&plan, 2);
        assert_eq!(rows.len(), 7);
        let counters: Vec<u128> = rows.iter().map(|r| r.outcome.as_ref().unwrap().op_count).collect();
        assert!(counters.windows(2).all(|w| w[0] < w[1]), "{counters:?}");
        assert!(rows.iter().all(|r| r.outcome.as_ref().unwrap().width == Some(3)));
        let records = csv_rows(&rows);
        assert_eq!(records.len(), 7);
        assert_eq!(&records[0][0], "0");
        assert_eq!(&records[6][5], "12");
    }

    #[test]
    fn ineligible_pair_is_recorded() {
        let plan = parse_plan("bench 1\nrun clique:3 cograph_random:5 fpt minweight 4\nrun clique:3 cograph_random:5 fpt count 4\n").unwrap();
        let rows = run_plan(&plan, 1);
        assert!(rows[0].error.as_ref().unwrap().is_capability());
        assert!(rows[0].outcome.is_none());
        assert!(rows[1].error.is_none());
        let records = csv_rows(&rows);
        assert!(records[0][11].contains("minweight"));
        assert_eq!(&records[0][8], "");
    }

    #[test]
    fn algorithms_agree_and_runs_are_deterministic() {
        let plan = parse_plan(
            "bench 1\nrun cycle:5 cograph_random:6 fine mincost 3\nrun cycle:5 cograph_random:6 fpt mincost 3\nrun cycle:5 cograph_random:6 oracle mincost 3\n",
        )
        .unwrap();
        let rows = run_plan(&plan, 3);
        let values: Vec<&SemiringValue> = rows.iter().map(|r| &r.outcome.as_ref().unwrap().value).collect();
        assert_eq!(values[0], values[1]);
        assert_eq!(values[0], values[2]);
        assert_eq!(rows[2].outcome.as_ref().unwrap().op_count, 5u128.pow(6));
        let again = run_plan(&plan, 1);
        for (a, b) in rows.iter().zip(&again) {
            assert_eq!(a.outcome, b.outcome);
        }
    }

    #[test]
    fn plan_errors() {
        assert!(matches!(parse_plan("bench 1\nrun cycle:5 path:3 fine count\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_plan("bench 1\nrun cycle:5 path:3 slow count 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_plan("bench 1\n\nrun wheel:5 path:3 fine count 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(parse_plan("plan 1\n").is_err());
    }
}
