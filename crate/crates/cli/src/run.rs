//! Argument parsing and the two commands.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use braidhom_core::hochschild::hh_hilbert;
use braidhom_core::invariants::{
    conventions, decategorify_check, grading_shift, parabolic_generators, trace_from_table, verify_conjugation, verify_parabolic_sum,
    verify_skein, verify_stabilization, x_from_table, y_specialize, CheckReport,
};
use braidhom_core::{BraidWord, CoxeterSystem, Error, Tables};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cache::Cache;
use crate::document::{CheckInput, ComplexSummary, HilbertEntry, ResultDocument, RunConfig};
use crate::pipeline::Pipeline;

#[derive(Parser, Debug)]
#[command(name = "braidhom", version, about = "Triply graded homology of braid closures", infer_long_args = true)]
pub struct Cli {
    /// Cache directory (overrides BRAIDHOM_CACHE_DIR)
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Ignore any configured cache
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Worker threads for degree slices
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Include wall-clock timings in the output
    #[arg(long, global = true)]
    pub timings: bool,
    #[arg(long, global = true, value_enum, default_value = "human")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct SystemArgs {
    /// Coxeter type: `A` (with --strands) or a tag such as A2, B2, A1xA1
    #[arg(long = "type", default_value = "A")]
    pub type_tag: String,
    /// Strand count for type A; defaults to the largest generator plus one
    #[arg(long)]
    pub strands: Option<usize>,
    /// Internal degree cutoff
    #[arg(long, default_value_t = 12)]
    pub cutoff: i64,
    /// Degrees below the cutoff in which a Hilbert numerator must vanish
    #[arg(long, default_value_t = 3)]
    pub margin: i64,
    /// Skip Gaussian elimination of the braid complex
    #[arg(long)]
    pub no_minimize: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tables, Hilbert numerators, X, Y and the trace value of one braid
    Invariant {
        #[command(flatten)]
        sys: SystemArgs,
        /// Braid word, e.g. "1 -2 1"
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        braid: String,
    },
    /// Verification suites
    Check {
        #[command(subcommand)]
        which: CheckCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum CheckCmd {
    /// Tables of b b' and b' b agree
    Conj {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        bp: String,
    },
    /// Adding one strand with a crossing preserves the half-normalized table
    Stab {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, allow_hyphen_values = true)]
        braid: String,
        /// `+` or `-`
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        sign: i8,
        /// Generator added (type A) or dropped from --type (other types), 1-based
        #[arg(long)]
        gen: Option<usize>,
    },
    /// Table of the embedded braid from the parabolic sum formula
    Parabolic {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        braid: String,
        #[arg(long)]
        gen: Option<usize>,
    },
    /// Skein relation at the crossing sigma_r between b and b'
    Skein {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        bp: String,
        /// 1-based generator
        #[arg(long)]
        r: usize,
    },
    /// Character and trace against the Hecke algebra
    Decat {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        braid: String,
    },
}

fn parse_sign(s: &str) -> Result<i8, String> {
    match s {
        "+" | "+1" | "1" => Ok(1),
        "-" | "-1" => Ok(-1),
        _ => Err(format!("sign must be + or -, got {s}")),
    }
}

/// A finished run: the document and the process exit code.
pub struct Outcome {
    pub doc: ResultDocument,
    pub code: i32,
}

/// Exit code for an error that stops a run.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnsupportedType(_) | Error::UnsupportedField(_) | Error::UnsupportedTypeForHecke(_) => 3,
        Error::FitUnstable(_) => 4,
        _ => 2,
    }
}

/// Runtime options that never enter the document.
pub struct Runtime {
    pub cache: Option<Cache>,
    pub timings: bool,
}

impl Runtime {
    pub fn from_cli(cli: &Cli) -> Self {
        let cache = if cli.no_cache {
            None
        } else {
            Cache::resolve(cli.cache_dir.as_deref()).and_then(|d| match Cache::open(&d) {
                Ok(c) => Some(c),
                Err(e) => {
                    log::warn!("cache directory {} unusable ({e}); continuing without cache", d.display());
                    None
                }
            })
        };
        Runtime { cache, timings: cli.timings }
    }
}

fn parse_word(s: &str) -> Result<BraidWord, Error> {
    s.parse()
}

fn strands_needed(words: &[&BraidWord], extra: Option<usize>) -> usize {
    let g = words.iter().filter_map(|w| w.max_gen()).chain(extra).max();
    g.map_or(1, |g| g + 2)
}

/// The system named by `sys`, sized for `needed` strands in type A.
fn resolve_system(sys: &SystemArgs, needed: usize) -> Result<(CoxeterSystem, Option<usize>), Error> {
    if sys.cutoff < 0 {
        return Err(Error::Parse(format!("cutoff must be nonnegative, got {}", sys.cutoff)));
    }
    if sys.margin < 1 {
        return Err(Error::Parse(format!("margin must be at least 1, got {}", sys.margin)));
    }
    if sys.type_tag.eq_ignore_ascii_case("a") {
        let n = sys.strands.unwrap_or(needed);
        if n == 0 || n < needed {
            return Err(Error::Parse(format!("{n} strands cannot carry a braid on {needed} strands")));
        }
        return Ok((CoxeterSystem::type_a(n - 1), Some(n)));
    }
    let system: CoxeterSystem = sys.type_tag.parse()?;
    if let Some(n) = sys.strands {
        if system.type_a_rank() != Some(n.saturating_sub(1)) {
            return Err(Error::Parse(format!("--strands {n} does not match type {}", system.type_tag())));
        }
    }
    let strands = system.type_a_rank().map(|r| r + 1);
    Ok((system, strands))
}

fn config(sys: &SystemArgs, system: &CoxeterSystem, strands: Option<usize>, braid: &BraidWord) -> RunConfig {
    RunConfig {
        type_tag: system.type_tag(),
        strands,
        braid: braid.to_string(),
        cutoff: sys.cutoff,
        margin: sys.margin,
        minimize: !sys.no_minimize,
    }
}

fn ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

pub fn cmd_invariant(rt: &Runtime, sys: &SystemArgs, braid: &str) -> Result<Outcome, Error> {
    let b = parse_word(braid)?;
    let (system, strands) = resolve_system(sys, strands_needed(&[&b], None))?;
    b.validate(system.rank())?;
    let t0 = Instant::now();
    let p = Pipeline::new(&system, !sys.no_minimize, rt.cache.clone())?;
    let mut doc = ResultDocument::new("invariant", config(sys, &system, strands, &b), conventions());
    let mut timings = BTreeMap::new();
    let c = p.complex(&b)?;
    timings.insert("complex".to_string(), ms(t0));
    doc.complex = Some(ComplexSummary { summands: c.num_summands(), total_rank: c.total_rank(), profile: c.summand_profile() });
    let t1 = Instant::now();
    let table = p.table_from(&b, &c, sys.cutoff)?;
    timings.insert("table".to_string(), ms(t1));
    let mut code = 0;
    let keys: std::collections::BTreeSet<(i64, i64)> = table.dims.keys().map(|k| (k.0, k.1)).collect();
    for (i, j) in keys {
        match hh_hilbert(&table, i, j, sys.margin) {
            Ok(n) => doc.hilbert.push(HilbertEntry { i, j, numerator: Some(n), error: None }),
            Err(e) => {
                code = exit_code(&e);
                doc.hilbert.push(HilbertEntry { i, j, numerator: None, error: Some(e.to_string()) });
            }
        }
    }
    if let Some(n) = system.type_a_rank() {
        let x = x_from_table(&table, grading_shift(n, &b));
        doc.y = Some(y_specialize(&x));
        doc.x = Some(x);
    } else {
        doc.x_status = Some(format!("unsupported: X and Y are defined for type A only, not {}", system.type_tag()));
    }
    doc.trace = Some(trace_from_table(&table));
    doc.table = Some(table);
    timings.insert("total".to_string(), ms(t0));
    if rt.timings {
        doc.timings_ms = Some(timings);
    }
    Ok(Outcome { doc, code })
}

/// Small and ambient pipelines plus the braid in small numbering, for the
/// checks that add a generator.
fn parabolic_setup(rt: &Runtime, sys: &SystemArgs, b: &BraidWord, gen: Option<usize>) -> Result<(Pipeline, Pipeline, BraidWord, usize), Error> {
    let minimize = !sys.no_minimize;
    let (big, s) = if sys.type_tag.eq_ignore_ascii_case("a") {
        let n = sys.strands.unwrap_or(strands_needed(&[b], None));
        let (small, _) = resolve_system(&SystemArgs { strands: Some(n), ..sys.clone() }, strands_needed(&[b], None))?;
        let big = CoxeterSystem::type_a(small.rank() + 1);
        (big, gen.map_or(Ok(small.rank()), |g| one_based(g, small.rank() + 1))?)
    } else {
        let (big, _) = resolve_system(sys, 1)?;
        let g = gen.ok_or_else(|| Error::Parse("--gen is required outside type A".into()))?;
        let s = one_based(g, big.rank())?;
        (big, s)
    };
    let kept = parabolic_generators(&big, s)?;
    b.validate(big.rank())?;
    let mut inverse = vec![usize::MAX; big.rank()];
    for (k, &g) in kept.iter().enumerate() {
        inverse[g] = k;
    }
    if b.letters.iter().any(|l| l.gen == s) {
        return Err(Error::Parse(format!("the braid uses generator {}, which the check adds", s + 1)));
    }
    let small_word = b.relabel(&inverse);
    let small = big.subsystem(&kept)?;
    Ok((Pipeline::new(&small, minimize, rt.cache.clone())?, Pipeline::new(&big, minimize, rt.cache.clone())?, small_word, s))
}

fn one_based(g: usize, rank: usize) -> Result<usize, Error> {
    if g == 0 || g > rank {
        return Err(Error::GeneratorOutOfRange(g as i64, rank));
    }
    Ok(g - 1)
}

pub fn cmd_check(rt: &Runtime, which: &CheckCmd) -> Result<Outcome, Error> {
    let t0 = Instant::now();
    let (sys, input, report, system, strands, shown): (&SystemArgs, CheckInput, CheckReport, CoxeterSystem, Option<usize>, BraidWord) = match which {
        CheckCmd::Conj { sys, b, bp } => {
            let (x, y) = (parse_word(b)?, parse_word(bp)?);
            let (system, strands) = resolve_system(sys, strands_needed(&[&x, &y], None))?;
            let p = Pipeline::new(&system, !sys.no_minimize, rt.cache.clone())?;
            let r = verify_conjugation(&p, &x, &y, sys.cutoff)?;
            let ci = CheckInput { which: "conj".into(), b: Some(x.to_string()), bp: Some(y.to_string()), r: None, sign: None, generator: None };
            (sys, ci, r, system, strands, x.concat(&y))
        }
        CheckCmd::Stab { sys, braid, sign, gen } => {
            let b = parse_word(braid)?;
            let (small, big, w, s) = parabolic_setup(rt, sys, &b, *gen)?;
            let r = verify_stabilization(&small, &big, &w, s, *sign, sys.cutoff)?;
            let ci = CheckInput { which: "stab".into(), b: Some(b.to_string()), bp: None, r: None, sign: Some(*sign), generator: Some(s + 1) };
            let system = big.system().clone();
            (sys, ci, r, system.clone(), system.type_a_rank().map(|n| n + 1), b)
        }
        CheckCmd::Parabolic { sys, braid, gen } => {
            let b = parse_word(braid)?;
            let (small, big, w, s) = parabolic_setup(rt, sys, &b, *gen)?;
            let r = verify_parabolic_sum(&small, &big, &w, s, sys.cutoff)?;
            let ci = CheckInput { which: "parabolic".into(), b: Some(b.to_string()), bp: None, r: None, sign: None, generator: Some(s + 1) };
            let system = big.system().clone();
            (sys, ci, r, system.clone(), system.type_a_rank().map(|n| n + 1), b)
        }
        CheckCmd::Skein { sys, b, bp, r } => {
            let (x, y) = (parse_word(b)?, parse_word(bp)?);
            if *r == 0 {
                return Err(Error::GeneratorOutOfRange(0, 0));
            }
            let (system, strands) = resolve_system(sys, strands_needed(&[&x, &y], Some(r - 1)))?;
            let rr = one_based(*r, system.rank())?;
            let p = Pipeline::new(&system, !sys.no_minimize, rt.cache.clone())?;
            let rep = verify_skein(&p, &x, &y, rr, sys.cutoff)?;
            let ci = CheckInput { which: "skein".into(), b: Some(x.to_string()), bp: Some(y.to_string()), r: Some(*r), sign: None, generator: None };
            (sys, ci, rep, system, strands, x.concat(&y))
        }
        CheckCmd::Decat { sys, braid } => {
            let b = parse_word(braid)?;
            let (system, strands) = resolve_system(sys, strands_needed(&[&b], None))?;
            let p = Pipeline::new(&system, !sys.no_minimize, rt.cache.clone())?;
            let r = decategorify_check(p.engine(), &b, sys.cutoff)?;
            let ci = CheckInput { which: "decat".into(), b: Some(b.to_string()), bp: None, r: None, sign: None, generator: None };
            (sys, ci, r, system, strands, b)
        }
    };
    let mut doc = ResultDocument::new("check", config(sys, &system, strands, &shown), conventions());
    doc.check_input = Some(input);
    doc.pass = Some(report.pass);
    let code = if report.pass { 0 } else { 1 };
    doc.checks.push(report);
    if rt.timings {
        doc.timings_ms = Some(BTreeMap::from([("total".to_string(), ms(t0))]));
    }
    Ok(Outcome { doc, code })
}

pub fn run(cli: &Cli) -> Result<Outcome, Error> {
    let rt = Runtime::from_cli(cli);
    match &cli.command {
        Command::Invariant { sys, braid } => cmd_invariant(&rt, sys, braid),
        Command::Check { which } => cmd_check(&rt, which),
    }
}
