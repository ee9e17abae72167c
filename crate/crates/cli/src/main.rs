//! `ntdom`: generate instances, run the constructive solvers and the exact
//! oracle, verify sets, and draw instances.
//!
//! Exit codes: 0 ok, 1 I/O or usage, 2 verification failure (including
//! inputs outside a theorem's hypotheses), 3 format violation, 4 internal
//! assertion. Diagnostics are JSON objects on stderr.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use ntdom::family_f::{enumerate_family_f, is_in_family_f};
use ntdom::generators::{enumerate_mops, mixed_corpus, random_irreducible, random_mop, random_near_triangulation, Rng};
use ntdom::io::{manifest_line, read_instances, FormatError, Instance};
use ntdom::oracle::{report, DEFAULT_CAP};
use ntdom::paired::compute_paired_with_coverage;
use ntdom::recursion::{Coverage, SolveError};
use ntdom::render::render_svg;
use ntdom::semipaired::compute_semipaired_with_coverage;
use ntdom::sets::{
    paired_bound, semipaired_bound, verify_paired, verify_paired_bound, verify_semipaired, verify_semipaired_bound,
    PairedDomSet, SemipairedDomSet,
};
use ntdom::NearTriangulation;

#[derive(Parser)]
#[command(name = "ntdom", version, about = "Paired and semipaired domination in near-triangulations")]
struct Cli {
    /// Worker threads for per-instance work (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Human-readable tables instead of JSON lines.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Mop,
    Ntri,
    Irreducible,
    FamilyF,
    Enumerate,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Paired,
    Semipaired,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Small,
    Full,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a corpus manifest.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Order of each instance.
        #[arg(long)]
        n: usize,
        /// Interior vertices (ntri only; default (n-3)/2).
        #[arg(long)]
        m: Option<usize>,
        /// Instances to draw; ignored by enumerate and family-f.
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        seed: u64,
        /// Manifest path (JSON lines).
        #[arg(short = 'o')]
        output: PathBuf,
    },
    /// Run a constructive solver on every instance.
    Solve {
        #[arg(long, value_enum)]
        mode: Mode,
        /// A .ntri document or a manifest.
        #[arg(short = 'i')]
        input: PathBuf,
        /// Write records here instead of stdout.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
        /// Check every output and its bound; exit 2 on any failure.
        #[arg(long)]
        verify: bool,
    },
    /// Exact domination parameters by exhaustive search.
    Exact {
        /// A .ntri document or a manifest.
        #[arg(short = 'i')]
        input: PathBuf,
        /// Largest order to search.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Check a given set against every predicate.
    Verify {
        /// A .ntri document or a manifest; the set is checked against each instance.
        #[arg(short = 'i')]
        input: PathBuf,
        /// `[[a,b],...]`, `{"pairs":[...]}` or `{"twosets":[...]}`, by vertex id.
        #[arg(long)]
        set: String,
    },
    /// Draw the first instance as SVG.
    Render {
        #[arg(short = 'i')]
        input: PathBuf,
        #[arg(short = 'o')]
        output: PathBuf,
        /// Set to highlight, in the same shapes `verify` accepts.
        #[arg(long)]
        set: Option<String>,
    },
    /// Runtime and case coverage over a built-in corpus.
    Bench {
        #[arg(long, value_enum)]
        suite: Suite,
    },
}

/// A failed command: exit code plus a JSON diagnostic.
#[derive(Debug, Serialize)]
struct Failure {
    #[serde(skip)]
    code: u8,
    error: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    index: Option<usize>,
}

impl Failure {
    fn new(code: u8, error: &'static str, message: impl Into<String>) -> Self {
        Failure { code, error, message: message.into(), index: None }
    }

    fn at(mut self, index: usize) -> Self {
        self.index = Some(index);
        self
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure::new(1, "io", format!("{}: {e}", path.display()))
    }

    fn usage(msg: impl Into<String>) -> Self {
        Failure::new(1, "usage", msg)
    }

    fn verify(msg: impl Into<String>) -> Self {
        Failure::new(2, "verify", msg)
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::new(3, "format", e.to_string())
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::TooSmall(_) => Failure::new(2, "too_small", e.to_string()),
            SolveError::IsFamilyF => Failure::new(2, "is_family_f", e.to_string()),
            SolveError::InternalAssert(_) => Failure::new(4, "internal_assert", e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            report_failures(&[Failure::usage(e.to_string().trim_end())]);
            return ExitCode::from(1);
        }
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build().expect("thread pool");
    let failures = pool.install(|| run(&cli));
    report_failures(&failures);
    ExitCode::from(failures.iter().map(|f| f.code).max().unwrap_or(0))
}

fn report_failures(failures: &[Failure]) {
    for f in failures {
        eprintln!("{}", serde_json::to_string(f).expect("serializable"));
    }
}

fn run(cli: &Cli) -> Vec<Failure> {
    let res = match &cli.cmd {
        Cmd::Gen { kind, n, m, count, seed, output } => gen(*kind, *n, *m, *count, *seed, output),
        Cmd::Solve { mode, input, output, verify } => {
            return solve(*mode, input, output.as_deref(), *verify, cli.pretty)
        }
        Cmd::Exact { input, cap } => return exact(input, *cap, cli.pretty),
        Cmd::Verify { input, set } => return verify(input, set, cli.pretty),
        Cmd::Render { input, output, set } => render(input, output, set.as_deref()),
        Cmd::Bench { suite } => bench(*suite, cli.pretty),
    };
    res.err().into_iter().collect()
}

fn load(path: &Path) -> Result<Vec<Instance>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    Ok(read_instances(&text)?)
}

fn emit(out: Option<&Path>, lines: &[String]) -> Result<(), Failure> {
    let mut text = lines.join("\n");
    if !text.is_empty() {
        text.push('\n');
    }
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::io(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn gen(kind: Kind, n: usize, m: Option<usize>, count: usize, seed: u64, output: &Path) -> Result<(), Failure> {
    let params = json!({ "kind": kind.to_possible_value().unwrap().get_name(), "n": n, "m": m, "count": count });
    let mut master = Rng::new(seed);
    let mut lines = Vec::new();
    let bad = |e: &dyn std::fmt::Display| Failure::usage(e.to_string());
    match kind {
        Kind::Mop | Kind::Ntri | Kind::Irreducible => {
            for index in 0..count {
                let s = master.next_u64();
                let g = match kind {
                    Kind::Mop => random_mop(n, s).map_err(|e| bad(&e))?,
                    Kind::Ntri => {
                        let m = m.unwrap_or(n.saturating_sub(3) / 2);
                        random_near_triangulation(n, m, s).map_err(|e| bad(&e))?
                    }
                    _ => {
                        if n < 7 {
                            return Err(Failure::usage("irreducible instances need --n of at least 7"));
                        }
                        let mut rng = Rng::new(s);
                        loop {
                            if let Some(g) = random_irreducible(n, &mut rng) {
                                break g;
                            }
                        }
                    }
                };
                lines.push(manifest_line(index, s, params.clone(), &g));
            }
        }
        Kind::FamilyF => {
            if n != 9 {
                return Err(Failure::usage("the exceptional family has order 9"));
            }
            for (index, member) in enumerate_family_f().iter().enumerate() {
                lines.push(manifest_line(index, seed, params.clone(), &member.mop));
            }
        }
        Kind::Enumerate => {
            for (index, g) in enumerate_mops(n, false).map_err(|e| bad(&e))?.iter().enumerate() {
                lines.push(manifest_line(index, seed, params.clone(), g));
            }
        }
    }
    emit(Some(output), &lines)
}

#[derive(Serialize)]
struct SolveRecord {
    index: usize,
    mode: &'static str,
    n: usize,
    m: usize,
    size: usize,
    bound: usize,
    /// Partner pairs (paired) or 2-sets (semipaired), by vertex id.
    sets: Vec<(usize, usize)>,
    verified: Option<bool>,
    coverage: Coverage,
}

fn solve_one(mode: Mode, inst: &Instance, verify: bool) -> Result<SolveRecord, Failure> {
    let g = &inst.graph;
    let mut cov = Coverage::new();
    let (name, sets, bound, check) = match mode {
        Mode::Paired => {
            let d = compute_paired_with_coverage(g, &mut cov)?;
            let ok = verify.then(|| verify_paired_bound(g, &d).map_err(|e| e.to_string()));
            ("paired", d.pairs, paired_bound(g.n()), ok)
        }
        Mode::Semipaired => {
            let d = compute_semipaired_with_coverage(g, &mut cov)?;
            let ok = verify.then(|| verify_semipaired_bound(g, &d).map_err(|e| e.to_string()));
            ("semipaired", d.twosets, semipaired_bound(g.n()), ok)
        }
    };
    if let Some(Err(e)) = &check {
        return Err(Failure::verify(e.clone()));
    }
    Ok(SolveRecord {
        index: inst.index,
        mode: name,
        n: g.n(),
        m: g.m(),
        size: 2 * sets.len(),
        bound,
        sets,
        verified: check.map(|c| c.is_ok()),
        coverage: cov,
    })
}

fn solve(mode: Mode, input: &Path, output: Option<&Path>, verify: bool, pretty: bool) -> Vec<Failure> {
    let instances = match load(input) {
        Ok(v) => v,
        Err(f) => return vec![f],
    };
    let results: Vec<Result<SolveRecord, Failure>> =
        instances.par_iter().map(|inst| solve_one(mode, inst, verify).map_err(|f| f.at(inst.index))).collect();
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    if pretty {
        lines.push(format!("{:>6} {:>4} {:>4} {:>5} {:>5}  sets", "index", "n", "m", "size", "bound"));
    }
    for r in results {
        match r {
            Ok(rec) if pretty => lines.push(format!(
                "{:>6} {:>4} {:>4} {:>5} {:>5}  {:?}",
                rec.index, rec.n, rec.m, rec.size, rec.bound, rec.sets
            )),
            Ok(rec) => lines.push(serde_json::to_string(&rec).expect("serializable")),
            Err(f) => failures.push(f),
        }
    }
    if let Err(f) = emit(output, &lines) {
        failures.push(f);
    }
    failures
}

fn exact(input: &Path, cap: usize, pretty: bool) -> Vec<Failure> {
    let instances = match load(input) {
        Ok(v) => v,
        Err(f) => return vec![f],
    };
    let results: Vec<Result<Value, Failure>> = instances
        .par_iter()
        .map(|inst| {
            let g = &inst.graph;
            let mut r = report(g, cap).map_err(|e| Failure::usage(e.to_string()).at(inst.index))?;
            r.constructive_pr = (g.n() >= 4)
                .then(|| compute_paired_with_coverage(g, &mut Coverage::new()))
                .transpose()
                .map_err(|e| Failure::from(e).at(inst.index))?
                .map(|d| d.len());
            r.constructive_pr2 = (g.n() >= 5 && !is_in_family_f(g))
                .then(|| compute_semipaired_with_coverage(g, &mut Coverage::new()))
                .transpose()
                .map_err(|e| Failure::from(e).at(inst.index))?
                .map(|d| d.len());
            let mut v = serde_json::to_value(&r).expect("serializable");
            v["index"] = json!(inst.index);
            Ok(v)
        })
        .collect();
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    if pretty {
        lines.push(format!(
            "{:>6} {:>4} {:>6} {:>9} {:>10} {:>8} {:>9}",
            "index", "n", "gamma", "gamma_pr", "gamma_pr2", "pr_con", "pr2_con"
        ));
    }
    for r in results {
        match r {
            Ok(v) if pretty => {
                let f = |k: &str| v[k].to_string();
                lines.push(format!(
                    "{:>6} {:>4} {:>6} {:>9} {:>10} {:>8} {:>9}",
                    f("index"),
                    f("n"),
                    f("gamma"),
                    f("gamma_pr"),
                    f("gamma_pr2"),
                    f("constructive_pr"),
                    f("constructive_pr2")
                ))
            }
            Ok(v) => lines.push(v.to_string()),
            Err(f) => failures.push(f),
        }
    }
    if let Err(f) = emit(None, &lines) {
        failures.push(f);
    }
    failures
}

/// A user-supplied set: `{"pairs": [[a, b], ...]}` for a paired set,
/// `{"twosets": [...]}` for a semipaired one, or a bare list of pairs
/// (checked as paired).
fn parse_set(text: &str) -> Result<(Mode, Vec<(usize, usize)>), Failure> {
    let bad = |m: String| Failure::new(3, "format", format!("--set: {m}"));
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let (mode, list) = match &v {
        Value::Array(_) => (Mode::Paired, v.clone()),
        Value::Object(o) if o.len() == 1 && o.contains_key("pairs") => (Mode::Paired, o["pairs"].clone()),
        Value::Object(o) if o.len() == 1 && o.contains_key("twosets") => (Mode::Semipaired, o["twosets"].clone()),
        _ => return Err(bad("expected a list of pairs or an object with key pairs or twosets".into())),
    };
    let pairs: Vec<(usize, usize)> = serde_json::from_value(list).map_err(|e| bad(e.to_string()))?;
    Ok((mode, pairs))
}

#[derive(Serialize)]
struct VerifyRecord {
    index: usize,
    kind: &'static str,
    size: usize,
    bound: usize,
    valid: bool,
    within_bound: bool,
    error: Option<String>,
}

fn verify(input: &Path, set: &str, pretty: bool) -> Vec<Failure> {
    let (instances, (mode, pairs)) = match load(input).and_then(|i| Ok((i, parse_set(set)?))) {
        Ok(x) => x,
        Err(f) => return vec![f],
    };
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    for inst in &instances {
        let g = &inst.graph;
        let (kind, bound, valid) = match mode {
            Mode::Paired => ("paired", paired_bound(g.n()), verify_paired(g, &PairedDomSet { pairs: pairs.clone() })),
            Mode::Semipaired => (
                "semipaired",
                semipaired_bound(g.n()),
                verify_semipaired(g, &SemipairedDomSet { twosets: pairs.clone() }),
            ),
        };
        let size = 2 * pairs.len();
        let rec = VerifyRecord {
            index: inst.index,
            kind,
            size,
            bound,
            valid: valid.is_ok(),
            within_bound: size <= bound,
            error: valid.as_ref().err().map(|e| e.to_string()),
        };
        if let Err(e) = &valid {
            failures.push(Failure::verify(e.to_string()).at(inst.index));
        } else if size > bound {
            failures.push(Failure::verify(format!("size {size} exceeds bound {bound}")).at(inst.index));
        }
        lines.push(if pretty {
            format!(
                "{:>6} {:<10} size {:>3}/{:<3} {}",
                rec.index,
                kind,
                size,
                bound,
                rec.error.as_deref().unwrap_or("ok")
            )
        } else {
            serde_json::to_string(&rec).expect("serializable")
        });
    }
    if let Err(f) = emit(None, &lines) {
        failures.push(f);
    }
    failures
}

fn render(input: &Path, output: &Path, set: Option<&str>) -> Result<(), Failure> {
    let inst = load(input)?.into_iter().next().ok_or(FormatError::Empty)?;
    let pairs = match set {
        Some(s) => parse_set(s)?.1,
        None => Vec::new(),
    };
    if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= inst.graph.n() || b >= inst.graph.n()) {
        return Err(Failure::verify(format!("set pair ({a}, {b}) is out of range")));
    }
    let svg = render_svg(&inst.graph, inst.coords.as_deref(), &pairs);
    fs::write(output, svg).map_err(|e| Failure::io(output, e))
}

#[derive(Serialize)]
struct BenchRecord {
    suite: &'static str,
    instances: usize,
    paired_ms: u128,
    semipaired_ms: u128,
    paired_failures: usize,
    semipaired_failures: usize,
    coverage: Coverage,
}

fn bench(suite: Suite, pretty: bool) -> Result<(), Failure> {
    let (name, max_mop, count) = match suite {
        Suite::Small => ("small", 10, 500),
        Suite::Full => ("full", 12, 5000),
    };
    let mut graphs: Vec<NearTriangulation> = Vec::new();
    for n in 5..=max_mop {
        graphs.extend(enumerate_mops(n, true).map_err(|e| Failure::usage(e.to_string()))?);
    }
    graphs.extend(mixed_corpus(count, 60, 0x5eed).into_iter().map(|(_, g)| g));
    let run_all = |mode: Mode| {
        let t = Instant::now();
        let covs: Vec<Result<Coverage, SolveError>> = graphs
            .par_iter()
            .filter(|g| mode == Mode::Paired || !is_in_family_f(g))
            .map(|g| {
                let mut cov = Coverage::new();
                match mode {
                    Mode::Paired => compute_paired_with_coverage(g, &mut cov).map(|_| cov),
                    Mode::Semipaired => compute_semipaired_with_coverage(g, &mut cov).map(|_| cov),
                }
            })
            .collect();
        let mut total = Coverage::new();
        let mut fails = 0;
        for c in covs {
            match c {
                Ok(c) => total.merge(&c),
                Err(_) => fails += 1,
            }
        }
        (t.elapsed().as_millis(), fails, total)
    };
    let (pms, pf, mut cov) = run_all(Mode::Paired);
    let (sms, sf, scov) = run_all(Mode::Semipaired);
    cov.merge(&scov);
    let rec = BenchRecord {
        suite: name,
        instances: graphs.len(),
        paired_ms: pms,
        semipaired_ms: sms,
        paired_failures: pf,
        semipaired_failures: sf,
        coverage: cov,
    };
    if pretty {
        println!("suite {name}: {} instances", rec.instances);
        println!("paired     {:>8} ms  {} failures", pms, pf);
        println!("semipaired {:>8} ms  {} failures", sms, sf);
        for (k, v) in &rec.coverage.0 {
            println!("  {k:<44} {v:>9}");
        }
    } else {
        println!("{}", serde_json::to_string(&rec).expect("serializable"));
    }
    if pf + sf > 0 {
        return Err(Failure::new(4, "internal_assert", format!("{} solver failures", pf + sf)));
    }
    Ok(())
}
