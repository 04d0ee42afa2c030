//! The `gapcover` command line.
//!
//! Exit codes: 0 on success or when every verdict passes, 1 when a verdict
//! fails or is inconclusive, 2 on errors (bad flags, unreadable files,
//! budget refusals outside verification).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gapcover_core::gadget::{
    build_gadget, check_greedy_infeasibility, effective_h, gadget_regime, verify_g3, verify_g4,
    verify_m2, G3Check, G4Check, GadgetOptions, DEFAULT_EPSILON,
};
use gapcover_core::hypercube::{apply_reduction, reduced_universe_size};
use gapcover_core::oracles::{
    exact_opt, greedy_cover, verify_pipeline, ExactResult, SourceProblem, Status, VerifyReport,
};
use gapcover_core::reductions::pipeline::DEFAULT_DELTA;
use gapcover_core::reductions::{
    clique_to_setcover, ksum_to_vectorsum, pipeline_clique, pipeline_ksum, pipeline_sat,
    sat_to_setcover, vectorsum_to_setcover, DigitParams, GappedInstance, Pipeline,
    PipelineOptions, PipelineParams, SourceKind,
};
use gapcover_core::universal::{build_universal, verify_universal, Universality};
use gapcover_core::{
    pad_partition, Budget, SetCoverInstance, DEFAULT_SIZE_BUDGET, DEFAULT_WORK_BUDGET,
};

use crate::formats;
use crate::provenance::{FileRef, OutputFiles, Provenance};

/// Environment variable that overrides the default work budget.
pub const BUDGET_ENV: &str = "GAPCOVER_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "gapcover", version, about = "Gap-producing reductions for parameterized Set Cover")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Seed for every randomized construction.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Work budget in elementary steps (default 10^8, or $GAPCOVER_BUDGET).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Largest universe a materialized instance may have.
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_BUDGET)]
    pub size_budget: u64,
    /// Output path (or path prefix for commands writing several files).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Summary,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build or verify (n, k)-universal sets.
    #[command(subcommand)]
    Universal(UniversalCmd),
    /// Build, verify or assess gap-gadgets.
    #[command(subcommand)]
    Gadget(GadgetCmd),
    /// Run a single reduction.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Chain a front end, padding, a gadget and the hypercube reduction.
    #[command(subcommand)]
    Pipeline(PipelineCmd),
    /// Solve a set cover instance.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Check pipeline outputs against their source.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Subcommand)]
pub enum UniversalCmd {
    Build {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
    },
    Verify { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum GadgetCmd {
    Build {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        #[arg(long)]
        h: usize,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
    },
    Verify { file: PathBuf },
    /// Report regime conditions and the greedy-decidability check.
    Feasibility {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        #[arg(long)]
        h: usize,
        /// Source universe size for the `|U'|` and greedy checks.
        #[arg(long)]
        universe: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReduceCmd {
    Sat {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(short)]
        k: usize,
    },
    Clique {
        #[arg(long)]
        graph: PathBuf,
        /// Clique size; defaults to the graph's part count.
        #[arg(short)]
        k: Option<usize>,
    },
    Vectorsum {
        #[arg(long)]
        input: PathBuf,
    },
    Ksum {
        #[arg(long)]
        lists: PathBuf,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        d: Option<usize>,
    },
    Hypercube {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        gadget: PathBuf,
    },
}

#[derive(Debug, Clone, Args)]
pub struct GapArgs {
    /// Requested gap h; the closed-form formula is used when absent.
    #[arg(long)]
    pub h: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    pub delta: f64,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    pub epsilon: f64,
}

#[derive(Debug, Subcommand)]
pub enum PipelineCmd {
    Sat {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        gap: GapArgs,
    },
    Clique {
        #[arg(long)]
        graph: PathBuf,
        #[arg(short)]
        k: Option<usize>,
        #[command(flatten)]
        gap: GapArgs,
    },
    Ksum {
        #[arg(long)]
        lists: PathBuf,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        d: Option<usize>,
        #[command(flatten)]
        gap: GapArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum SolveCmd {
    Exact {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        bound: usize,
    },
    Greedy {
        #[arg(long)]
        instance: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    Pipeline {
        #[arg(long)]
        provenance: PathBuf,
    },
}

/// Parse arguments, run, print errors; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

struct Ctx<'a> {
    g: &'a Global,
    work_budget: u64,
}

impl Ctx<'_> {
    fn budget(&self) -> Budget {
        Budget::new(self.work_budget)
    }

    /// Write to `--out`, or stdout without it.
    fn emit(&self, text: &str) -> Result<Option<PathBuf>> {
        match &self.g.out {
            Some(p) => {
                write_file(p, text)?;
                Ok(Some(p.clone()))
            }
            None => {
                print!("{text}");
                Ok(None)
            }
        }
    }

    fn provenance(&self, command: &str) -> Provenance {
        Provenance {
            tool: "gapcover".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            inputs: Vec::new(),
            gadget: None,
            pipeline: None,
            outputs: Vec::new(),
            written: Vec::new(),
            seed: self.g.seed,
            work_budget: self.work_budget,
            size_budget: self.g.size_budget,
        }
    }
}

fn work_budget(g: &Global) -> Result<u64> {
    if let Some(b) = g.budget {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{BUDGET_ENV}={v:?} is not a non-negative integer")),
        Err(_) => Ok(DEFAULT_WORK_BUDGET),
    }
}

pub fn run(cli: &Cli) -> Result<u8> {
    let ctx = Ctx {
        g: &cli.global,
        work_budget: work_budget(&cli.global)?,
    };
    match &cli.command {
        Command::Universal(c) => universal(&ctx, c),
        Command::Gadget(c) => gadget(&ctx, c),
        Command::Reduce(c) => reduce(&ctx, c),
        Command::Pipeline(c) => pipeline(&ctx, c),
        Command::Solve(c) => solve(&ctx, c),
        Command::Verify(VerifyCmd::Pipeline { provenance }) => verify(&ctx, provenance),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn parsed<T>(path: &Path, r: std::result::Result<T, formats::FormatError>) -> Result<T> {
    r.map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn universal(ctx: &Ctx, c: &UniversalCmd) -> Result<u8> {
    match c {
        UniversalCmd::Build { n, k } => {
            let us = build_universal(*n, *k, ctx.g.seed, &ctx.budget())?;
            if let Some(p) = ctx.emit(&formats::write_universal(&us))? {
                eprintln!("wrote {} strings to {}", us.len(), p.display());
            }
            Ok(0)
        }
        UniversalCmd::Verify { file } => {
            let us = parsed(file, formats::read_universal(&read(file)?))?;
            match verify_universal(&us, &ctx.budget()) {
                Ok(Universality::Universal) => {
                    println!("PASS ({}, {})-universal, {} strings", us.n, us.k, us.len());
                    Ok(0)
                }
                Ok(Universality::Missing { positions, pattern }) => {
                    println!("FAIL positions {positions:?} never show pattern {pattern}");
                    Ok(1)
                }
                Err(e) if e.is_budget() => {
                    println!("INCONCLUSIVE {e}");
                    Ok(1)
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn gadget(ctx: &Ctx, c: &GadgetCmd) -> Result<u8> {
    match c {
        GadgetCmd::Build { k, n, h, epsilon } => {
            let built = build_gadget(
                *k,
                *n,
                *h,
                &GadgetOptions {
                    seed: ctx.g.seed,
                    work_budget: ctx.work_budget,
                    epsilon: *epsilon,
                },
            )?;
            for w in &built.warnings {
                eprintln!("warning: {w}");
            }
            let g = &built.gadget;
            if let Some(p) = ctx.emit(&formats::write_gadget(g))? {
                eprintln!(
                    "wrote ({}, {}, {}, {}, {}) gadget to {}",
                    g.k,
                    g.n,
                    g.m,
                    g.ell,
                    g.h,
                    p.display()
                );
            }
            Ok(0)
        }
        GadgetCmd::Verify { file } => {
            let g = parsed(file, formats::read_gadget(&read(file)?))?;
            let mut out = String::new();
            let mut code = 0;
            let mut record = |name: &str, status: Status, detail: String| {
                if matches!(status, Status::Fail | Status::Inconclusive) {
                    code = 1;
                }
                writeln!(out, "{name:<3} {status:<12} {detail}").expect("string write");
            };
            match g.check_m1() {
                None => record("M1", Status::Pass, format!("entries in [1, {}]", g.h)),
                Some(v) => record(
                    "M1",
                    Status::Fail,
                    format!("entry ({}, {}) = {}", v.row, v.col, v.value),
                ),
            }
            let budget = ctx.budget();
            match verify_m2(&g.matrix, g.h, &budget) {
                Ok(r) if r.holds() => record("M2", Status::Pass, "every column set of size ≤ h has a rainbow row".into()),
                Ok(r) => record("M2", Status::Fail, format!("{r:?}")),
                Err(e) if e.is_budget() => record("M2", Status::Inconclusive, e.to_string()),
                Err(e) => return Err(e.into()),
            }
            match verify_g3(&g, &budget) {
                Ok(G3Check::Holds) => record("G3", Status::Pass, "every rainbow k-tuple has a common neighbour in every group".into()),
                Ok(G3Check::M1(_)) => record("G3", Status::Fail, "M1 precheck failed".into()),
                Ok(G3Check::Fails { b, group }) => {
                    record("G3", Status::Fail, format!("tuple {b:?} has no common neighbour in group {group}"))
                }
                Err(e) if e.is_budget() => record("G3", Status::Inconclusive, e.to_string()),
                Err(e) => return Err(e.into()),
            }
            match verify_g4(&g, &budget) {
                Ok(G4Check::Holds) => record("G4", Status::Pass, format!("no X with |X| ≤ {} has a heavy vertex in every group", g.h)),
                Ok(G4Check::M1(_)) => record("G4", Status::Fail, "M1 precheck failed".into()),
                Ok(G4Check::Fails { x, witnesses }) => record(
                    "G4",
                    Status::Fail,
                    format!("X = {x:?} with heavy vertices {witnesses:?}"),
                ),
                Err(e) if e.is_budget() => record("G4", Status::Inconclusive, e.to_string()),
                Err(e) => return Err(e.into()),
            }
            print!("{out}");
            Ok(code)
        }
        GadgetCmd::Feasibility {
            k,
            n,
            h,
            universe,
            epsilon,
        } => {
            let (eff, t) = effective_h(*h)?;
            let regime = gadget_regime(*k, *n, eff, *epsilon);
            let ell = gapcover_core::budget::checked_pow(eff as u128, *k as u64);
            let m = n * t;
            println!("requested h        {h}");
            println!("effective h        {eff}");
            println!("ell = h^k          {}", opt_num(ell));
            println!("m = n·log h        {m}");
            println!("k·loglog n ≤ log n {}", regime.k_condition);
            println!(
                "h limit            {}",
                regime.h_limit.map_or("undefined".into(), |x| format!("{x:.3}"))
            );
            println!("h within limit     {}", regime.h_condition);
            if let Some(u) = universe {
                let size = ell.and_then(|l| reduced_universe_size(m, *u, l as usize));
                println!("|U'| = m·|U|^ell   {}", opt_num(size));
                let decides = ell.is_some_and(|l| check_greedy_infeasibility(*k, l as usize, *u, m, eff));
                println!("greedy decides     {decides}");
            }
            Ok(0)
        }
    }
}

fn opt_num(x: Option<u128>) -> String {
    x.map_or("overflow".into(), |v| v.to_string())
}

fn default_k(g: &gapcover_core::MultipartiteGraph, k: Option<usize>) -> usize {
    k.unwrap_or_else(|| g.k())
}

fn reduce(ctx: &Ctx, c: &ReduceCmd) -> Result<u8> {
    let (inst, input, extra): (SetCoverInstance, &Path, Option<&Path>) = match c {
        ReduceCmd::Sat { cnf, k } => {
            let phi = parsed(cnf, formats::read_cnf(&read(cnf)?))?;
            let inst = sat_to_setcover(&phi, *k, ctx.g.size_budget)?;
            (pad_partition(&inst, *k)?, cnf, None)
        }
        ReduceCmd::Clique { graph, k } => {
            let g = parsed(graph, formats::read_graph(&read(graph)?))?;
            let k = default_k(&g, *k);
            let inst = clique_to_setcover(&g, k)?;
            (pad_partition(&inst, k * (k - 1) / 2)?, graph, None)
        }
        ReduceCmd::Vectorsum { input } => {
            let vs = parsed(input, formats::read_vectorsum(&read(input)?))?;
            let inst = vectorsum_to_setcover(&vs, ctx.g.size_budget)?;
            (pad_partition(&inst, vs.k)?, input, None)
        }
        ReduceCmd::Ksum { lists, p, d } => return reduce_ksum(ctx, lists, *p, *d),
        ReduceCmd::Hypercube { instance, gadget } => {
            let src = parsed(instance, formats::read_instance(&read(instance)?))?;
            let g = parsed(gadget, formats::read_gadget(&read(gadget)?))?;
            let red = apply_reduction(&src, &g, ctx.g.size_budget, false)?;
            for w in &red.warnings {
                eprintln!("warning: {w}");
            }
            (red.instance, instance, Some(gadget.as_path()))
        }
    };
    let text = formats::write_instance(&inst);
    if let Some(path) = ctx.emit(&text)? {
        let mut prov = ctx.provenance(&format!("reduce {}", reduce_name(c)));
        prov.inputs.push(FileRef::of(input, input.display().to_string())?);
        if let Some(g) = extra {
            prov.gadget = Some(FileRef::of(g, g.display().to_string())?);
        }
        prov.written.push(FileRef::of(&path, file_name(&path))?);
        write_file(&sidecar(&path), &prov.to_json())?;
        eprintln!(
            "wrote {} sets, {} elements to {}",
            inst.num_sets(),
            inst.universe_size(),
            path.display()
        );
    }
    Ok(0)
}

fn reduce_name(c: &ReduceCmd) -> &'static str {
    match c {
        ReduceCmd::Sat { .. } => "sat",
        ReduceCmd::Clique { .. } => "clique",
        ReduceCmd::Vectorsum { .. } => "vectorsum",
        ReduceCmd::Ksum { .. } => "ksum",
        ReduceCmd::Hypercube { .. } => "hypercube",
    }
}

fn reduce_ksum(ctx: &Ctx, path: &Path, p: Option<u64>, d: Option<usize>) -> Result<u8> {
    let lists = parsed(path, formats::read_lists(&read(path)?))?;
    let r = lists.iter().flatten().map(|x| x.abs()).max().unwrap_or(0);
    let params = DigitParams::choose(lists.len(), r, p, d)?;
    let family = ksum_to_vectorsum(&lists, &params, ctx.g.size_budget)?;
    let base = ctx.g.out.clone().unwrap_or_else(|| with_suffix(path, ".vs"));
    let mut prov = ctx.provenance("reduce ksum");
    prov.inputs.push(FileRef::of(path, path.display().to_string())?);
    for (i, vs) in family.iter().enumerate() {
        let out = with_suffix(&base, &format!(".{i}.json"));
        write_file(&out, &formats::write_vectorsum(vs))?;
        prov.written.push(FileRef::of(&out, file_name(&out))?);
    }
    write_file(&with_suffix(&base, ".prov.json"), &prov.to_json())?;
    println!(
        "{} vector-sum instances (p = {}, d = {}) written to {}.*.json",
        family.len(),
        params.p,
        params.d,
        base.display()
    );
    Ok(0)
}

/// `path` with `suffix` appended to its file name.
fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn sidecar(path: &Path) -> PathBuf {
    with_suffix(path, ".prov.json")
}

fn file_name(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

fn pipeline_options(ctx: &Ctx, gap: &GapArgs, p: Option<u64>, d: Option<usize>) -> PipelineOptions {
    PipelineOptions {
        seed: ctx.g.seed,
        work_budget: ctx.work_budget,
        size_budget: ctx.g.size_budget,
        h: gap.h,
        delta: gap.delta,
        epsilon: gap.epsilon,
        p,
        d,
    }
}

fn pipeline(ctx: &Ctx, c: &PipelineCmd) -> Result<u8> {
    let (result, input, name) = match c {
        PipelineCmd::Sat { cnf, k, gap } => {
            let phi = parsed(cnf, formats::read_cnf(&read(cnf)?))?;
            (pipeline_sat(&phi, *k, &pipeline_options(ctx, gap, None, None))?, cnf, "sat")
        }
        PipelineCmd::Clique { graph, k, gap } => {
            let g = parsed(graph, formats::read_graph(&read(graph)?))?;
            let k = default_k(&g, *k);
            (pipeline_clique(&g, k, &pipeline_options(ctx, gap, None, None))?, graph, "clique")
        }
        PipelineCmd::Ksum { lists, p, d, gap } => {
            let l = parsed(lists, formats::read_lists(&read(lists)?))?;
            (pipeline_ksum(&l, &pipeline_options(ctx, gap, *p, *d))?, lists, "ksum")
        }
    };
    let base = ctx.g.out.clone().unwrap_or_else(|| input.with_extension("gapped"));
    let prov_path = with_suffix(&base, ".prov.json");
    let mut prov = ctx.provenance(&format!("pipeline {name}"));
    prov.inputs.push(FileRef::of(input, input.display().to_string())?);
    let gadget_path = with_suffix(&base, ".gad");
    write_file(&gadget_path, &formats::write_gadget(&result.outputs[0].gadget))?;
    prov.gadget = Some(FileRef::of(&gadget_path, file_name(&gadget_path))?);
    let single = result.outputs.len() == 1;
    for (i, out) in result.outputs.iter().enumerate() {
        let tag = if single { String::new() } else { format!(".{i}") };
        let src_path = with_suffix(&base, &format!("{tag}.src.json"));
        write_file(&src_path, &formats::write_instance(&out.source))?;
        let reduced = match &out.reduced {
            Some(inst) => {
                let p = with_suffix(&base, &format!("{tag}.json"));
                write_file(&p, &formats::write_instance(inst))?;
                Some(FileRef::of(&p, file_name(&p))?)
            }
            None => None,
        };
        prov.outputs.push(OutputFiles {
            source: FileRef::of(&src_path, file_name(&src_path))?,
            reduced,
        });
    }
    prov.pipeline = Some(result.params.clone());
    write_file(&prov_path, &prov.to_json())?;
    print!("{}", parameter_table(&result.params, ctx.g.format));
    println!("provenance         {}", prov_path.display());
    Ok(0)
}

fn float(x: Option<f64>) -> String {
    x.map_or("undefined".into(), |v| format!("{v:.3}"))
}

/// Formula against effective parameters.
pub fn parameter_table(p: &PipelineParams, format: Format) -> String {
    let mut s = String::new();
    let w = &mut s;
    writeln!(w, "source             {} (k = {}, parts = {})", p.kind, p.k, p.k_eff).ok();
    writeln!(w, "parameter          formula      effective").ok();
    writeln!(w, "h                  {:<12} {}", float(p.h_formula), p.h_effective).ok();
    writeln!(w, "ell = h^k          {:<12} {}", "-", p.ell).ok();
    writeln!(w, "m                  {:<12} {}", "-", p.m).ok();
    writeln!(
        w,
        "|U'| = m·|U|^ell   {:<12} {}",
        "-",
        p.reduced_universe.map_or("overflow".into(), |v| v.to_string())
    )
    .ok();
    writeln!(w, "gap target         {:<12} opt > {}", float(p.gap_target), p.h_effective).ok();
    if format == Format::Text {
        writeln!(w, "sets (padded)      {}", p.num_sets).ok();
        writeln!(w, "part width         {}", p.part_width).ok();
        writeln!(w, "source universe    {}", p.source_universe).ok();
        writeln!(w, "outputs            {}", p.outputs).ok();
        writeln!(w, "materialized       {}", p.explicit).ok();
        writeln!(w, "greedy decides     {}", p.greedy_decides).ok();
        if let Some(d) = &p.digits {
            writeln!(w, "digits             p = {}, d = {}, R = {}", d.p, d.d, d.r).ok();
        }
        for warning in &p.warnings {
            writeln!(w, "warning            {warning}").ok();
        }
    }
    s
}

fn solve(ctx: &Ctx, c: &SolveCmd) -> Result<u8> {
    let names = |inst: &SetCoverInstance, sets: &[usize]| -> String {
        sets.iter()
            .map(|&s| inst.set_ids[s].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    };
    match c {
        SolveCmd::Exact { instance, bound } => {
            let inst = parsed(instance, formats::read_instance(&read(instance)?))?;
            match exact_opt(&inst, *bound, &ctx.budget())? {
                ExactResult::Found { size, witness } => {
                    println!("opt = {size}");
                    println!("cover {}", names(&inst, &witness));
                }
                ExactResult::ExceedsBound => println!("opt > {bound}"),
                ExactResult::Infeasible { element } => {
                    println!("infeasible: element {element} is covered by no set")
                }
            }
            Ok(0)
        }
        SolveCmd::Greedy { instance } => {
            let inst = parsed(instance, formats::read_instance(&read(instance)?))?;
            let g = greedy_cover(&inst)?;
            println!("size = {}", g.size);
            println!("cover {}", names(&inst, &g.cover));
            Ok(0)
        }
    }
}

/// Rebuild the pipeline from a sidecar and the files it names.
pub fn load_pipeline(prov_path: &Path) -> Result<(SourceProblem, Pipeline)> {
    let prov = Provenance::from_json(&read(prov_path)?)?;
    let dir = prov_path.parent().unwrap_or(Path::new("."));
    let params = prov
        .pipeline
        .clone()
        .context("sidecar has no pipeline parameters")?;
    let input = prov.inputs.first().context("sidecar lists no input")?;
    let text = input.load(dir)?;
    let problem = match params.kind {
        SourceKind::Sat => SourceProblem::Sat {
            formula: formats::read_cnf(&text)?,
            k: params.k,
        },
        SourceKind::Clique => SourceProblem::Clique {
            graph: formats::read_graph(&text)?,
            k: params.k,
        },
        SourceKind::Ksum => SourceProblem::Ksum {
            lists: formats::read_lists(&text)?,
            digits: params.digits.context("k-SUM sidecar without digit parameters")?,
        },
        SourceKind::Vectorsum => bail!("vector-sum pipelines are not supported"),
    };
    let gadget = formats::read_gadget(&prov.gadget.as_ref().context("sidecar lists no gadget")?.load(dir)?)?;
    let mut outputs = Vec::with_capacity(prov.outputs.len());
    for o in &prov.outputs {
        let source = formats::read_instance(&o.source.load(dir)?)?;
        let reduced = match &o.reduced {
            Some(r) => Some(formats::read_instance(&r.load(dir)?)?),
            None => None,
        };
        outputs.push(GappedInstance {
            source,
            gadget: gadget.clone(),
            reduced,
        });
    }
    if outputs.len() != params.outputs {
        bail!("sidecar lists {} outputs, parameters say {}", outputs.len(), params.outputs);
    }
    Ok((problem, Pipeline { params, outputs }))
}

pub fn render_report(params: &PipelineParams, report: &VerifyReport) -> String {
    let mut s = String::new();
    let answer = match report.source_yes {
        Some(true) => "yes-instance",
        Some(false) => "no-instance",
        None => "unknown (oracle budget exceeded)",
    };
    writeln!(
        s,
        "pipeline {}: k = {}, h = {}, source {answer}",
        params.kind, params.k_eff, params.h_effective
    )
    .ok();
    for l in &report.lines {
        writeln!(s, "{l}").ok();
    }
    s
}

fn verify(ctx: &Ctx, prov_path: &Path) -> Result<u8> {
    let (problem, pipeline) = load_pipeline(prov_path)?;
    let report = verify_pipeline(&problem, &pipeline, &ctx.budget())?;
    print!("{}", render_report(&pipeline.params, &report));
    Ok(report.exit_code() as u8)
}
