use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ctwcsp::bench::{parse_plan, run_algorithm, run_plan, write_csv, Algorithm};
use ctwcsp::family::Family;
use ctwcsp::formats::{
    emit_csp, emit_elg, emit_rel, emit_seq, parse_csp, parse_elg, parse_rel, parse_seq_for, parse_wt,
};
use ctwcsp::oracle::{all_morphisms, DEFAULT_CAP};
use ctwcsp::{csp_to_morphism, ctww_search, morphism_to_csp, CtwwOptions, MorphismRelation, PreMorphism, WeightMatrix};

#[derive(Parser)]
#[command(name = "ctwcsp", version, about = "Binary CSP solvers over contraction sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Fine,
    Fpt,
    Oracle,
}

#[derive(clap::Args)]
struct Problem {
    /// Instance graph (ELG).
    #[arg(short = 'g', long)]
    instance: PathBuf,
    /// Template graph (ELG).
    #[arg(short = 't', long)]
    template: PathBuf,
    /// Relation file (REL), or `hom`.
    #[arg(short = 'r', long, default_value = "hom")]
    rel: String,
    /// indicator, list, count, count_list, mincost, minweight or restrictive.
    #[arg(short = 'p', long, default_value = "count")]
    premorphism: String,
    /// Weight matrix (WT); required by weighted pre-morphisms.
    #[arg(short = 'w', long)]
    weights: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a pre-morphism on the set of all morphisms.
    Solve {
        #[command(flatten)]
        problem: Problem,
        #[arg(short, long, value_enum, default_value = "fine")]
        algorithm: AlgorithmArg,
        /// Contraction sequence of the template (SEQ); computed when absent.
        #[arg(long)]
        seq_h: Option<PathBuf>,
        /// Contraction sequence of the instance (SEQ); computed when absent.
        #[arg(long)]
        seq_g: Option<PathBuf>,
        /// Also print the operation counter and sequence width.
        #[arg(long)]
        stats: bool,
    },
    /// Compute the component twin-width of a graph.
    Ctww {
        graph: PathBuf,
        /// Only look for sequences of at most this width.
        #[arg(long)]
        budget: Option<usize>,
        /// Largest graph to search exhaustively.
        #[arg(long, default_value_t = ctwcsp::ctww::DEFAULT_SIZE_CAP)]
        size_cap: usize,
        /// Write an optimal sequence here (SEQ).
        #[arg(long)]
        seq_out: Option<PathBuf>,
    },
    /// Translate between CSP instances and morphism problems.
    Reduce {
        #[command(subcommand)]
        direction: Reduce,
    },
    /// Enumerate every morphism and evaluate the pre-morphism naively.
    Oracle {
        #[command(flatten)]
        problem: Problem,
        /// Print each morphism as a line of images.
        #[arg(long)]
        list: bool,
    },
    /// Generate a graph of a named family.
    Gen {
        /// `clique:<q>`, `cycle:<n>`, `path:<n>`, `cograph_random:<n>` or `erdos_renyi:<n>:<p>`.
        family: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (ELG); standard output when absent.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Write the family's contraction sequence here (SEQ).
        #[arg(long)]
        seq_out: Option<PathBuf>,
    },
    /// Run a benchmark plan and print CSV.
    Bench {
        plan: PathBuf,
        #[arg(short, long, default_value_t = 1)]
        jobs: usize,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Reduce {
    /// CSP file to template, instance and relation files.
    CspToMorphism {
        csp: PathBuf,
        #[arg(long)]
        template: PathBuf,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        rel: PathBuf,
    },
    /// Template, instance and relation files to a CSP file.
    MorphismToCsp {
        #[arg(short = 'g', long)]
        instance: PathBuf,
        #[arg(short = 't', long)]
        template: PathBuf,
        #[arg(short = 'r', long, default_value = "hom")]
        rel: String,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Io(String),
    Lib(ctwcsp::Error),
}

impl From<ctwcsp::Error> for Failure {
    fn from(e: ctwcsp::Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => Ok(std::io::stdout().write_all(text.as_bytes())?),
    }
}

fn relation(arg: &str) -> CliResult<MorphismRelation> {
    if arg == "hom" {
        return Ok(MorphismRelation::hom());
    }
    Ok(parse_rel(&read(Path::new(arg))?)?)
}

struct Loaded {
    g: ctwcsp::EdgeLabelledGraph,
    h: ctwcsp::EdgeLabelledGraph,
    r: MorphismRelation,
    pm: PreMorphism,
    w: WeightMatrix,
}

fn load(p: &Problem) -> CliResult<Loaded> {
    let pm: PreMorphism = p.premorphism.parse()?;
    let w = match &p.weights {
        Some(path) => parse_wt(&read(path)?)?,
        None => WeightMatrix::unused(),
    };
    Ok(Loaded {
        g: parse_elg(&read(&p.instance)?)?,
        h: parse_elg(&read(&p.template)?)?,
        r: relation(&p.rel)?,
        pm,
        w,
    })
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Solve {
            problem,
            algorithm,
            seq_h,
            seq_g,
            stats,
        } => {
            let p = load(&problem)?;
            let algorithm = match algorithm {
                AlgorithmArg::Fine => Algorithm::Fine,
                AlgorithmArg::Fpt => Algorithm::Fpt,
                AlgorithmArg::Oracle => Algorithm::Oracle,
            };
            let seq_h = seq_h.map(|s| parse_seq_for(&read(&s)?, &p.h).map_err(Failure::from)).transpose()?;
            let seq_g = seq_g.map(|s| parse_seq_for(&read(&s)?, &p.g).map_err(Failure::from)).transpose()?;
            let out = run_algorithm(algorithm, &p.g, &p.h, &p.r, p.pm, &p.w, seq_g.as_ref(), seq_h.as_ref())?;
            println!("{}", out.value);
            if stats {
                println!("op_count {}", out.op_count);
                if let Some(width) = out.width {
                    println!("width {width}");
                }
            }
        }
        Command::Ctww {
            graph,
            budget,
            size_cap,
            seq_out,
        } => {
            let g = parse_elg(&read(&graph)?)?;
            match ctww_search(&g, CtwwOptions { budget, size_cap })? {
                Some((width, seq)) => {
                    println!("ctww {width}");
                    if let Some(path) = seq_out {
                        write(Some(&path), &emit_seq(seq.merges()))?;
                    }
                }
                None => println!("ctww > {}", budget.unwrap_or(0)),
            }
        }
        Command::Reduce { direction } => match direction {
            Reduce::CspToMorphism {
                csp,
                template,
                instance,
                rel,
            } => {
                let enc = csp_to_morphism(&parse_csp(&read(&csp)?)?)?;
                write(Some(&template), &emit_elg(&enc.template))?;
                write(Some(&instance), &emit_elg(&enc.instance))?;
                write(Some(&rel), &emit_rel(&enc.relation))?;
            }
            Reduce::MorphismToCsp {
                instance,
                template,
                rel,
                out,
            } => {
                let g = parse_elg(&read(&instance)?)?;
                let h = parse_elg(&read(&template)?)?;
                let inst = morphism_to_csp(&h, &relation(&rel)?, &g)?;
                write(out.as_deref(), &emit_csp(&inst))?;
            }
        },
        Command::Oracle { problem, list } => {
            let p = load(&problem)?;
            let out = run_algorithm(Algorithm::Oracle, &p.g, &p.h, &p.r, p.pm, &p.w, None, None)?;
            println!("{}", out.value);
            if list {
                for f in all_morphisms(&p.g, &p.h, &p.r, DEFAULT_CAP)? {
                    let images: Vec<String> = f.iter().map(|a| a.to_string()).collect();
                    println!("{}", images.join(" "));
                }
            }
        }
        Command::Gen {
            family,
            seed,
            out,
            seq_out,
        } => {
            let generated = family.parse::<Family>()?.generate(seed)?;
            write(out.as_deref(), &emit_elg(&generated.graph))?;
            if let Some(path) = seq_out {
                let seq = generated
                    .sequence
                    .ok_or_else(|| ctwcsp::Error::InvalidGraph(format!("family {family} has no known contraction sequence")))?;
                write(Some(&path), &emit_seq(seq.merges()))?;
            }
        }
        Command::Bench { plan, jobs, out } => {
            let plan = parse_plan(&read(&plan)?)?;
            let rows = run_plan(&plan, jobs);
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf)?;
            write(out.as_deref(), &String::from_utf8_lossy(&buf))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_capability() { 3 } else { 2 })
        }
    }
}
