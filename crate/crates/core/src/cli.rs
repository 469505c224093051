// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: `map`, `decompose` and `bench`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::acd::{self, AcdError, AcdResult, MAX_ACD_VARS};
use crate::aig::Aig;
use crate::cuts::{CutEnumerator, CutParams};
use crate::lutnet::{equiv_check, DEFAULT_SIM_WORDS};
use crate::mapper::{self, MapParams};
use crate::truthtable::TruthTable;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Priority cuts kept per node when harvesting functions.
pub const HARVEST_CUTS_PER_NODE: usize = 16;

/// Late-variable sets drawn per bench function.
pub const LATE_SETS_PER_FUNCTION: usize = 10;

#[derive(Debug, Parser)]
#[command(name = "acdmap", version, about = "Two-level LUT decomposition and delay-driven LUT mapping")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Map an AIGER file into k-input LUTs and write BLIF.
    Map(MapArgs),
    /// Decompose a single function given as a truth table.
    Decompose(DecomposeArgs),
    /// Measure decomposition success rates over a function corpus.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct MapArgs {
    /// Input AIGER file (ASCII or binary).
    pub input: PathBuf,
    #[arg(short = 'K', default_value_t = 6)]
    pub k: usize,
    /// Largest cut size evaluated with decomposition (0 disables).
    #[arg(short = 'Z', default_value_t = 8)]
    pub l: usize,
    /// Priority cuts per node.
    #[arg(short = 'C', default_value_t = 8)]
    pub cuts: usize,
    /// Area-flow and exact-area passes (each).
    #[arg(long, default_value_t = 2)]
    pub passes: usize,
    /// Keep cuts structural instead of shrinking them to their support.
    #[arg(long)]
    pub no_min_support: bool,
    /// Check the result against the AIG by simulation.
    #[arg(long)]
    pub verify: bool,
    /// Simulation seed for --verify.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// BLIF output path.
    #[arg(short = 'o')]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
    /// Include wall-clock time in the report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    /// Hex truth table, `parity`, `random`, or `parityN`.
    #[arg(long)]
    pub tt: String,
    #[arg(long)]
    pub vars: usize,
    #[arg(short = 'K', default_value_t = 6)]
    pub k: usize,
    /// Comma-separated late variables.
    #[arg(long, value_delimiter = ',')]
    pub late: Vec<usize>,
    /// Seed for `--tt random`.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Also try free sets leaving more than k bound-set variables.
    #[arg(long)]
    pub wide: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// `random` or `harvest:<file.aag>`.
    #[arg(long, default_value = "random")]
    pub source: String,
    #[arg(long, default_value_t = 8)]
    pub vars: usize,
    /// Number of late variables per trial.
    #[arg(long, default_value_t = 0)]
    pub late: usize,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(short = 'K', default_value_t = 6)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads (0 uses all cores). Results do not depend on it.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Decompose every feasible trial and check the recomposition.
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub timing: bool,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Map(a) => cmd_map(&a, out),
        Command::Decompose(a) => cmd_decompose(&a, out),
        Command::Bench(a) => cmd_bench(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.to_string(),
    }
}

fn io_error(e: std::io::Error) -> Failure {
    input_error(e)
}

#[derive(Debug, Serialize)]
pub struct MapReport {
    pub input: String,
    pub k: usize,
    pub l: usize,
    pub pis: usize,
    pub pos: usize,
    pub ands: usize,
    pub aig_depth: u32,
    pub luts: usize,
    pub edges: usize,
    pub depth: u32,
    pub arrival: u32,
    pub wide_cuts: usize,
    pub acd_fallbacks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatches: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

fn cmd_map(a: &MapArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let params = MapParams {
        k: a.k,
        l: a.l,
        cuts_per_node: a.cuts,
        area_flow_passes: a.passes,
        exact_area_passes: a.passes,
        minimize_support: !a.no_min_support,
    };
    params.validate().map_err(input_error)?;
    let aig = Aig::read_file(&a.input).map_err(|e| input_error(format!("{}: {e}", a.input.display())))?;
    let start = Instant::now();
    let result = mapper::map(&aig, params).map_err(input_error)?;
    let elapsed = start.elapsed();
    let stats = result.network.stats();
    let mismatches = if a.verify {
        Some(equiv_check(&result.network, &aig, DEFAULT_SIM_WORDS, a.seed).map_err(input_error)?)
    } else {
        None
    };
    if let Some(path) = &a.output {
        let file = std::fs::File::create(path).map_err(io_error)?;
        result
            .network
            .write_blif(std::io::BufWriter::new(file))
            .map_err(io_error)?;
    }
    let report = MapReport {
        input: a.input.display().to_string(),
        k: a.k,
        l: a.l,
        pis: aig.num_pis(),
        pos: aig.num_pos(),
        ands: aig.num_ands(),
        aig_depth: aig.depth(),
        luts: stats.luts,
        edges: stats.edges,
        depth: stats.depth,
        arrival: result.report.arrival,
        wide_cuts: result.report.wide_cuts,
        acd_fallbacks: result.report.acd_fallbacks,
        mismatches,
        runtime_ms: a.timing.then_some(elapsed.as_secs_f64() * 1e3),
    };
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap()).map_err(io_error)?;
    } else {
        write_map_text(&report, out).map_err(io_error)?;
    }
    match mismatches {
        Some(m) if m > 0 => Err(Failure {
            code: EXIT_INFEASIBLE,
            message: format!("{m} mismatching patterns"),
        }),
        _ => Ok(EXIT_OK),
    }
}

fn write_map_text(r: &MapReport, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "input       {}", r.input)?;
    writeln!(out, "aig         pis={} pos={} ands={} depth={}", r.pis, r.pos, r.ands, r.aig_depth)?;
    writeln!(out, "params      K={} Z={}", r.k, r.l)?;
    writeln!(out, "luts        {}", r.luts)?;
    writeln!(out, "edges       {}", r.edges)?;
    writeln!(out, "depth       {}", r.depth)?;
    writeln!(out, "arrival     {}", r.arrival)?;
    writeln!(out, "wide cuts   {}", r.wide_cuts)?;
    writeln!(out, "fallbacks   {}", r.acd_fallbacks)?;
    if let Some(m) = r.mismatches {
        writeln!(out, "mismatches  {m}")?;
    }
    if let Some(t) = r.runtime_ms {
        writeln!(out, "runtime     {t:.1} ms")?;
    }
    Ok(())
}

/// Builds the function named by `name`: a hex table, `parity[N]` or `random`.
pub fn parse_function(name: &str, vars: usize, seed: u64) -> Result<TruthTable, String> {
    if vars > MAX_ACD_VARS {
        return Err(format!("at most {MAX_ACD_VARS} variables are supported, got {vars}"));
    }
    if let Some(rest) = name.strip_prefix("parity") {
        if !rest.is_empty() && rest.parse::<usize>().ok() != Some(vars) {
            return Err(format!("`{name}` does not match --vars {vars}"));
        }
        return Ok(TruthTable::from_fn(vars, |a| a.count_ones() % 2 == 1));
    }
    if name == "random" {
        return Ok(TruthTable::random(vars, &mut ChaCha8Rng::seed_from_u64(seed)));
    }
    TruthTable::from_hex(name, vars).map_err(|e| e.to_string())
}

#[derive(Debug, Serialize)]
struct BsReport {
    function: String,
    support: Vec<usize>,
    buffer: bool,
}

#[derive(Debug, Serialize)]
struct DecomposeReport {
    function: String,
    vars: usize,
    k: usize,
    late: Vec<usize>,
    feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<usize>,
    fs: Vec<usize>,
    bs: Vec<usize>,
    ss: Vec<usize>,
    bs_functions: Vec<BsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    composition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    luts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

fn decompose_report(tt: &TruthTable, a: &DecomposeArgs, result: Result<&AcdResult, &AcdError>) -> DecomposeReport {
    let mut late = a.late.clone();
    late.sort_unstable();
    late.dedup();
    let base = DecomposeReport {
        function: tt.to_hex(),
        vars: a.vars,
        k: a.k,
        late,
        feasible: false,
        mu: None,
        fs: Vec::new(),
        bs: Vec::new(),
        ss: Vec::new(),
        bs_functions: Vec::new(),
        composition: None,
        luts: None,
        verified: None,
        reason: None,
    };
    match result {
        Err(e) => DecomposeReport {
            reason: Some(e.to_string()),
            ..base
        },
        Ok(r) => DecomposeReport {
            feasible: true,
            mu: Some(r.mu),
            fs: r.fs_vars.clone(),
            bs: (0..r.num_vars).filter(|v| !r.fs_vars.contains(v)).collect(),
            ss: r.ss_vars.clone(),
            bs_functions: r
                .bs_functions
                .iter()
                .map(|b| BsReport {
                    function: b.function.to_hex(),
                    support: b.support.clone(),
                    buffer: b.is_buffer,
                })
                .collect(),
            composition: Some(r.composition.to_hex()),
            luts: Some(r.lut_count()),
            verified: Some(acd::verify_acd(r, tt)),
            ..base
        },
    }
}

fn list(v: &[usize]) -> String {
    if v.is_empty() {
        "-".to_string()
    } else {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    }
}

fn write_decompose_text(r: &DecomposeReport, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "function     {}", r.function)?;
    writeln!(out, "vars         {}  K={}  late={}", r.vars, r.k, list(&r.late))?;
    if !r.feasible {
        writeln!(out, "feasible     no ({})", r.reason.as_deref().unwrap_or("-"))?;
        return Ok(());
    }
    writeln!(out, "feasible     yes")?;
    writeln!(out, "mu           {}", r.mu.unwrap_or(0))?;
    writeln!(out, "fs           {}", list(&r.fs))?;
    writeln!(out, "bs           {}", list(&r.bs))?;
    writeln!(out, "ss           {}", list(&r.ss))?;
    for (i, b) in r.bs_functions.iter().enumerate() {
        let kind = if b.buffer { "  buffer" } else { "" };
        writeln!(out, "h{i}           {} on {}{kind}", b.function, list(&b.support))?;
    }
    writeln!(out, "composition  {}", r.composition.as_deref().unwrap_or("-"))?;
    writeln!(out, "luts         {}", r.luts.unwrap_or(0))?;
    writeln!(out, "verified     {}", r.verified.unwrap_or(false))?;
    Ok(())
}

fn cmd_decompose(a: &DecomposeArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let tt = parse_function(&a.tt, a.vars, a.seed).map_err(input_error)?;
    let params = acd::AcdParams {
        wide_bound_set: a.wide,
        ..Default::default()
    };
    let result = acd::decompose_with(&tt, a.k, &a.late, params);
    let code = match &result {
        Ok(_) => EXIT_OK,
        Err(AcdError::Infeasible | AcdError::NoEncoding | AcdError::Multiplicity(_)) => EXIT_INFEASIBLE,
        Err(e) => return Err(input_error(e)),
    };
    let report = decompose_report(&tt, a, result.as_ref());
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap()).map_err(io_error)?;
    } else {
        write_decompose_text(&report, out).map_err(io_error)?;
    }
    Ok(code)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct BenchReport {
    /// `random` or `harvested:<file>`.
    pub corpus: String,
    pub vars: usize,
    pub late: usize,
    pub k: usize,
    pub functions: usize,
    pub trials: usize,
    pub feasible: usize,
    pub success_rate: f64,
    pub mean_mu: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposed: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify_failures: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default)]
struct TrialStats {
    trials: usize,
    feasible: usize,
    mu_sum: usize,
    decomposed: usize,
    verify_failures: usize,
}

impl TrialStats {
    fn add(self, o: Self) -> Self {
        Self {
            trials: self.trials + o.trials,
            feasible: self.feasible + o.feasible,
            mu_sum: self.mu_sum + o.mu_sum,
            decomposed: self.decomposed + o.decomposed,
            verify_failures: self.verify_failures + o.verify_failures,
        }
    }
}

/// Draws up to [`LATE_SETS_PER_FUNCTION`] distinct late sets of size `m`.
pub fn draw_late_sets<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Vec<Vec<usize>> {
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let total = binomial(n, m);
    let want = LATE_SETS_PER_FUNCTION.min(total);
    while sets.len() < want {
        let mut s = sample(rng, n, m).into_vec();
        s.sort_unstable();
        if !sets.contains(&s) {
            sets.push(s);
        }
    }
    sets
}

fn binomial(n: usize, m: usize) -> usize {
    if m > n {
        return 0;
    }
    (0..m).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64 + 1);
    rng
}

/// Distinct cut functions of exactly `vars` leaves with full support, in
/// enumeration order. Larger cuts are kept first.
pub fn harvest_functions(aig: &Aig, vars: usize) -> Vec<TruthTable> {
    let mut en = CutEnumerator::new(
        aig,
        CutParams {
            max_leaves: vars,
            max_cuts: HARVEST_CUTS_PER_NODE,
            minimize_support: true,
        },
    );
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for n in aig.and_nodes() {
        let set = en.compute(n, |c| Some((std::cmp::Reverse(c.size()), c.leaves().to_vec())));
        for cut in set.iter() {
            if cut.size() == vars && seen.insert(cut.function().clone()) {
                out.push(cut.function().clone());
            }
        }
    }
    out
}

fn run_trials(tt: &TruthTable, k: usize, late_sets: &[Vec<usize>], verify: bool) -> TrialStats {
    let mut s = TrialStats::default();
    for late in late_sets {
        s.trials += 1;
        let Ok(profile) = acd::evaluate(tt, k, late) else {
            continue;
        };
        if !profile.feasible {
            continue;
        }
        s.feasible += 1;
        s.mu_sum += profile.mu;
        if verify {
            if let Ok(r) = acd::decompose(tt, k, late) {
                s.decomposed += 1;
                if !acd::verify_acd(&r, tt) {
                    s.verify_failures += 1;
                }
            }
        }
    }
    s
}

/// Runs the bench harness without printing.
pub fn bench(a: &BenchArgs) -> Result<BenchReport, String> {
    if a.vars <= a.k || a.vars > MAX_ACD_VARS {
        return Err(format!("--vars must satisfy K < vars <= {MAX_ACD_VARS}"));
    }
    if a.late > a.vars {
        return Err("--late exceeds --vars".to_string());
    }
    if !(2..=8).contains(&a.k) {
        return Err(format!("LUT size {} is not supported", a.k));
    }
    let start = Instant::now();
    let (corpus, functions): (String, Vec<TruthTable>) = if a.source == "random" {
        let fs = (0..a.samples)
            .map(|i| TruthTable::random(a.vars, &mut sample_rng(a.seed, i)))
            .collect();
        ("random".to_string(), fs)
    } else if let Some(path) = a.source.strip_prefix("harvest:") {
        let aig = Aig::read_file(std::path::Path::new(path)).map_err(|e| format!("{path}: {e}"))?;
        let mut fs = harvest_functions(&aig, a.vars);
        fs.truncate(a.samples);
        (format!("harvested:{path}"), fs)
    } else {
        return Err(format!("unknown source `{}`", a.source));
    };
    let work = || {
        functions
            .par_iter()
            .enumerate()
            .map(|(i, tt)| {
                let mut rng = sample_rng(a.seed ^ 0x5eed_1a7e, i);
                let late_sets = draw_late_sets(a.vars, a.late, &mut rng);
                run_trials(tt, a.k, &late_sets, a.verify)
            })
            .reduce(TrialStats::default, TrialStats::add)
    };
    let stats = if a.jobs == 0 {
        work()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(a.jobs)
            .build()
            .map_err(|e| e.to_string())?
            .install(work)
    };
    let rate = |x: usize| if stats.trials == 0 { 0.0 } else { 100.0 * x as f64 / stats.trials as f64 };
    Ok(BenchReport {
        corpus,
        vars: a.vars,
        late: a.late,
        k: a.k,
        functions: functions.len(),
        trials: stats.trials,
        feasible: stats.feasible,
        success_rate: rate(stats.feasible),
        mean_mu: if stats.feasible == 0 {
            0.0
        } else {
            stats.mu_sum as f64 / stats.feasible as f64
        },
        decomposed: a.verify.then_some(stats.decomposed),
        verify_failures: a.verify.then_some(stats.verify_failures),
        runtime_ms: a.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    })
}

fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let r = bench(a).map_err(input_error)?;
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&r).unwrap()).map_err(io_error)?;
    } else {
        writeln!(
            out,
            "{:<24} {:>4} {:>4} {:>2} {:>9} {:>7} {:>9} {:>7}",
            "corpus", "vars", "late", "K", "functions", "trials", "success", "mean_mu"
        )
        .map_err(io_error)?;
        if r.functions > 0 {
            writeln!(
                out,
                "{:<24} {:>4} {:>4} {:>2} {:>9} {:>7} {:>8.2}% {:>7.2}",
                r.corpus, r.vars, r.late, r.k, r.functions, r.trials, r.success_rate, r.mean_mu
            )
            .map_err(io_error)?;
            if let (Some(d), Some(v)) = (r.decomposed, r.verify_failures) {
                writeln!(out, "decomposed {d}, verify failures {v}").map_err(io_error)?;
            }
        }
        if let Some(t) = r.runtime_ms {
            writeln!(out, "runtime {t:.1} ms").map_err(io_error)?;
        }
    }
    Ok(if r.verify_failures.unwrap_or(0) > 0 { EXIT_INFEASIBLE } else { EXIT_OK })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("acdmap").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn decompose_text() {
        let (code, out, _) = run_str(&["decompose", "--tt", "0x8804800184148111", "--vars", "6", "-K", "4"]);
        assert_eq!(code, 0);
        assert!(out.contains("luts         3"), "{out}");
        assert!(out.contains("verified     true"));
    }

    #[test]
    fn decompose_errors() {
        assert_eq!(run_str(&["decompose", "--tt", "0xzz", "--vars", "6"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["decompose", "--tt", "random", "--vars", "12"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["decompose", "--tt", "parity", "--vars", "8", "--late", "9"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["decompose", "--bogus"]).0, EXIT_INPUT);
    }

    #[test]
    fn late_sets_are_distinct() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let sets = draw_late_sets(7, 6, &mut rng);
        assert_eq!(sets.len(), 7);
        assert_eq!(draw_late_sets(8, 0, &mut rng), vec![Vec::<usize>::new()]);
        assert_eq!(draw_late_sets(11, 5, &mut rng).len(), 10);
    }

    #[test]
    fn bench_empty_and_deterministic() {
        let (code, out, _) = run_str(&["bench", "--samples", "0"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 1);
        let a = run_str(&["bench", "--vars", "9", "--late", "2", "--samples", "40", "--json", "--jobs", "1"]);
        let b = run_str(&["bench", "--vars", "9", "--late", "2", "--samples", "40", "--json", "--jobs", "3"]);
        assert_eq!(a, b);
    }
}
