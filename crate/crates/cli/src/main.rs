//! `srt`: command-line front end for the singular Ramsey / singular Turan
//! toolkit.
//!
//! Five subcommands: `build` materialises a named extremal construction,
//! `check` verifies a graph6 file against a pattern pair, `certify` runs
//! the full certification ladder, `turan` computes singular Turan values
//! in exact, lower-bound, or gap mode, and `enum` produces R-graph
//! catalogues and stability diagnostics.
//!
//! Every run writes its artifacts into the output directory (flag
//! `--out-dir`, else env `SRT_OUT_DIR`, else the working directory) plus a
//! `manifest.json` recording the command line, tool version, seed, wall
//! time, and the SHA-256 digest of every emitted file. File outputs are
//! byte-stable across reruns with identical inputs and seed; volatile
//! wall-clock fields are printed to stdout only, never into files.
//!
//! Exit codes: 0 success (and, for `certify`, a complete certificate);
//! 1 a checked property is violated or a built witness fails verification;
//! 2 unusable input; 3 a certificate left incomplete by budget exhaustion.

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};
use srt_core::construct::{
    build_c4_bull_23, build_degree_doubling, build_degree_grid, build_k3_claw_28,
    build_matching_removal, build_paw_30, build_sr_2k2, build_stacked_multipartite,
    build_star_even, build_star_odd, build_star_odd_alt, build_triangle_extremal,
    ConstructionReport,
};
use srt_core::enumerate::{enumerate_r_graphs, is_ramsey_stable, MAX_GEN_ORDER};
use srt_core::graph6::{g6_decode, g6_encode};
use srt_core::search::{certify_rs, SearchConfig};
use srt_core::singular::find_singular_copy;
use srt_core::turan::{ts_exact, ts_gap_report, ts_lower, TsResult, MAX_TS_EXACT_ORDER};
use srt_core::{Graph, GraphSpec, TOOL_VERSION};
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

// ---------------------------------------------------------------------------
// argument surface
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "srt",
    version,
    about = "Construct, verify, and certify singular Ramsey and singular Turan numbers"
)]
struct Cli {
    /// Directory for output files (falls back to $SRT_OUT_DIR, then ".").
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Seed recorded in the run manifest; all searches are deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallel sweeps; 0 keeps the default pool.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named construction and verify its defining property.
    Build(BuildArgs),
    /// Check a graph6 file for singular pattern copies on both sides.
    Check(CheckArgs),
    /// Certify a singular Ramsey number end to end.
    Certify(CertifyArgs),
    /// Singular Turan values: exact, construction lower bound, or gap table.
    Turan(TuranArgs),
    /// Enumerate R-graph catalogues or probe one graph's stability.
    Enum(EnumArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Construction name; see `srt build --help` for the registry.
    ///
    /// doubling (--k), grid (--n), 2k2, triclaw28, paw30, bull23,
    /// star-even (--s), star-odd (--s), star-odd-alt (--q),
    /// stacked (--n --p --q), matching-removal (--n --p --q),
    /// triangle-extremal (--n). Aliases: hk = doubling, theorem2 = grid.
    name: String,
    /// Order parameter, where the construction takes one.
    #[arg(long)]
    n: Option<usize>,
    /// Pattern order parameter for the multipartite builders.
    #[arg(long)]
    p: Option<usize>,
    /// Chromatic parameter for the multipartite builders.
    #[arg(long)]
    q: Option<usize>,
    /// Gap parameter for the degree-doubling family.
    #[arg(long)]
    k: Option<usize>,
    /// Star size for the star families.
    #[arg(long)]
    s: Option<usize>,
}

#[derive(Args)]
struct CheckArgs {
    /// File whose first line is the graph6 encoding to check.
    file: PathBuf,
    /// Pattern that must not occur singularly in the graph.
    #[arg(long)]
    f1: String,
    /// Pattern that must not occur singularly in the complement
    /// (defaults to F1).
    #[arg(long)]
    f2: Option<String>,
    /// Degree-gap parameter.
    #[arg(long, default_value_t = 1)]
    k: usize,
}

#[derive(Args)]
struct CertifyArgs {
    /// First pattern.
    #[arg(long)]
    f1: String,
    /// Second pattern (defaults to F1).
    #[arg(long)]
    f2: Option<String>,
    /// Degree-gap parameter.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Branch-node ceiling per class-structure search.
    #[arg(long, default_value_t = SearchConfig::default().node_budget)]
    node_budget: u64,
    /// Wall-clock ceiling per class-structure search, in milliseconds.
    #[arg(long, default_value_t = SearchConfig::default().time_budget_ms)]
    time_budget_ms: u64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum TuranMode {
    /// Exhaustive sweep of every graph of order n (n <= 9).
    Exact,
    /// Best verified construction at order n.
    Lower,
    /// Construction bound vs the classical Turan benchmark over n..=n-hi.
    Gap,
}

#[derive(Args)]
struct TuranArgs {
    /// Graph order (for gap mode, the low end of the range).
    #[arg(long)]
    n: usize,
    /// Pattern whose singular copies are forbidden.
    #[arg(long)]
    pattern: String,
    /// Degree-gap parameter (exact mode only; constructions are gap-one).
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, value_enum)]
    mode: TuranMode,
    /// High end of the gap-mode range (defaults to --n).
    #[arg(long)]
    n_hi: Option<usize>,
    /// Allowance multiplier for gap mode.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
}

#[derive(Args)]
struct EnumArgs {
    /// Catalogue order; required unless --stability is given.
    #[arg(long)]
    n: Option<usize>,
    /// First pattern.
    #[arg(long)]
    f1: String,
    /// Second pattern (defaults to F1).
    #[arg(long)]
    f2: Option<String>,
    /// Probe this named graph's stability instead of cataloguing.
    #[arg(long)]
    stability: Option<String>,
}

// ---------------------------------------------------------------------------
// errors and exits
// ---------------------------------------------------------------------------

/// Failures that should reach the user as an input error (exit 2).
#[derive(Debug)]
struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<srt_core::Error> for CliError {
    fn from(e: srt_core::Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

// ---------------------------------------------------------------------------
// run manifest
// ---------------------------------------------------------------------------

/// Collects emitted files and finishes into `manifest.json`.
struct Manifest {
    out_dir: PathBuf,
    command_line: Vec<String>,
    seed: u64,
    started: Instant,
    outputs: Vec<(String, String)>,
}

impl Manifest {
    fn new(out_dir: &Path, seed: u64) -> Self {
        Manifest {
            out_dir: out_dir.to_path_buf(),
            command_line: std::env::args().collect(),
            seed,
            started: Instant::now(),
            outputs: Vec::new(),
        }
    }

    /// Write one output file and record its digest.
    fn emit(&mut self, name: &str, contents: &str) -> CliResult<PathBuf> {
        let path = self.out_dir.join(name);
        std::fs::write(&path, contents)?;
        let digest = Sha256::digest(contents.as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.outputs.push((name.to_string(), hex));
        Ok(path)
    }

    /// Write `manifest.json` itself; call once, last.
    fn finish(self) -> CliResult<()> {
        let outputs: Vec<serde_json::Value> = self
            .outputs
            .iter()
            .map(|(name, sha)| serde_json::json!({ "path": name, "sha256": sha }))
            .collect();
        let manifest = serde_json::json!({
            "commandLine": self.command_line,
            "toolVersion": TOOL_VERSION,
            "seed": self.seed,
            "wallMs": self.started.elapsed().as_millis() as u64,
            "outputs": outputs,
        });
        let path = self.out_dir.join("manifest.json");
        std::fs::write(path, serde_json::to_string_pretty(&manifest).expect("manifest is plain data"))?;
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// shared helpers
// ---------------------------------------------------------------------------

fn parse_spec(text: &str) -> CliResult<GraphSpec> {
    GraphSpec::parse(text).map_err(CliError::from)
}

/// Second pattern defaults to the first, mirroring the diagonal case.
fn pattern_pair(f1: &str, f2: &Option<String>) -> CliResult<(GraphSpec, GraphSpec)> {
    let s1 = parse_spec(f1)?;
    let s2 = match f2 {
        Some(t) => parse_spec(t)?,
        None => s1.clone(),
    };
    Ok((s1, s2))
}

/// Lowercase alphanumeric tag for file names derived from pattern text.
fn file_tag(spec: &GraphSpec) -> String {
    spec.to_string()
        .chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .collect::<String>()
        .to_ascii_lowercase()
}

fn report_json(name: &str, report: &ConstructionReport) -> String {
    let classes: Vec<serde_json::Value> = report
        .expected_classes
        .iter()
        .map(|&(size, degree)| serde_json::json!({ "size": size, "degree": degree }))
        .collect();
    serde_json::to_string_pretty(&serde_json::json!({
        "builder": name,
        "order": report.graph.order(),
        "edges": report.graph.edge_count(),
        "degreeClasses": classes,
        "verified": report.verified_sr,
        "claim": format!("{:?}", report.claim),
        "k": report.k,
        "graph6": g6_encode(&report.graph),
    }))
    .expect("report is plain data")
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

fn need(opt: Option<usize>, flag: &str, name: &str) -> CliResult<usize> {
    opt.ok_or_else(|| CliError(format!("builder '{name}' needs --{flag}")))
}

fn cmd_build(args: &BuildArgs, manifest: &mut Manifest) -> CliResult<u8> {
    let name = args.name.to_ascii_lowercase();
    let report = match name.as_str() {
        // `hk` and `theorem2` are the traditional external names of the
        // degree-doubling and grid families.
        "doubling" | "hk" => build_degree_doubling(need(args.k, "k", &name)?)?,
        "grid" | "theorem2" => build_degree_grid(need(args.n, "n", &name)?)?,
        "2k2" => build_sr_2k2()?,
        "triclaw28" => build_k3_claw_28()?,
        "paw30" => build_paw_30()?,
        "bull23" => build_c4_bull_23()?,
        "star-even" => build_star_even(need(args.s, "s", &name)?)?,
        "star-odd" => build_star_odd(need(args.s, "s", &name)?)?,
        "star-odd-alt" => build_star_odd_alt(need(args.q, "q", &name)?)?,
        "stacked" => build_stacked_multipartite(
            need(args.n, "n", &name)?,
            need(args.p, "p", &name)?,
            need(args.q, "q", &name)?,
        )?,
        "matching-removal" => build_matching_removal(
            need(args.n, "n", &name)?,
            need(args.p, "p", &name)?,
            need(args.q, "q", &name)?,
        )?,
        "triangle-extremal" => build_triangle_extremal(need(args.n, "n", &name)?)?,
        other => {
            return Err(CliError(format!(
                "unknown builder '{other}'; see `srt build --help` for the registry"
            )))
        }
    };
    manifest.emit(&format!("{name}.g6"), &(g6_encode(&report.graph) + "\n"))?;
    manifest.emit(&format!("{name}.report.json"), &report_json(&name, &report))?;
    println!(
        "{name}: order {}, {} edges, {} degree classes, verified={}",
        report.graph.order(),
        report.graph.edge_count(),
        report.expected_classes.len(),
        report.verified_sr
    );
    Ok(if report.verified_sr { 0 } else { 1 })
}

fn read_graph6_file(path: &Path) -> CliResult<Graph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))?;
    let line = text
        .lines()
        .next()
        .ok_or_else(|| CliError(format!("{} is empty", path.display())))?;
    g6_decode(line.trim()).map_err(CliError::from)
}

fn cmd_check(args: &CheckArgs, manifest: &mut Manifest) -> CliResult<u8> {
    let g = read_graph6_file(&args.file)?;
    let (s1, s2) = pattern_pair(&args.f1, &args.f2)?;
    let (p1, p2) = (s1.build()?, s2.build()?);
    if args.k == 0 {
        return Err(CliError("the gap parameter k must be at least one".into()));
    }
    let in_graph = find_singular_copy(&g, &p1, args.k);
    let in_complement = if in_graph.is_none() {
        find_singular_copy(&g.complement(), &p2, args.k)
    } else {
        None
    };
    let verdict = in_graph.is_none() && in_complement.is_none();
    let witness_json = |w: &srt_core::singular::SingularWitness, side: &str| {
        serde_json::json!({
            "side": side,
            "vertices": w.vertices,
            "hostDegrees": w.host_degrees,
            "allEqual": w.all_equal,
            "embedding": w.embedding,
        })
    };
    let witness = in_graph
        .as_ref()
        .map(|w| witness_json(w, "graph"))
        .or_else(|| in_complement.as_ref().map(|w| witness_json(w, "complement")));
    let report = serde_json::to_string_pretty(&serde_json::json!({
        "file": args.file.display().to_string(),
        "f1": s1.to_string(),
        "f2": s2.to_string(),
        "k": args.k,
        "order": g.order(),
        "srGraph": verdict,
        "witness": witness,
    }))
    .expect("check report is plain data");
    manifest.emit("check.report.json", &report)?;
    if verdict {
        println!(
            "SR-graph: no {args_k}-singular {s1} in the graph, no {args_k}-singular {s2} in the complement",
            args_k = args.k
        );
        Ok(0)
    } else {
        let (side, w) = in_graph
            .as_ref()
            .map(|w| ("graph", w))
            .or(in_complement.as_ref().map(|w| ("complement", w)))
            .expect("violation implies a witness");
        println!(
            "violated: {}-singular copy in the {side} on vertices {:?} with degrees {:?}",
            args.k, w.vertices, w.host_degrees
        );
        Ok(1)
    }
}

fn cmd_certify(args: &CertifyArgs, manifest: &mut Manifest, jobs: usize, seed: u64) -> CliResult<u8> {
    let (s1, s2) = pattern_pair(&args.f1, &args.f2)?;
    let cfg = SearchConfig {
        node_budget: args.node_budget,
        time_budget_ms: args.time_budget_ms,
        parallel_width: jobs,
        seed,
    };
    let mut cert = certify_rs(&s1, &s2, args.k, &cfg)?;
    println!(
        "{} ({}, {}) at k={}: value {}, complete={}",
        cert.claim, s1, s2, args.k, cert.value, cert.complete
    );
    for row in &cert.sweep {
        println!(
            "  n={}: {} -> {} ({} nodes, {} ms)",
            row.n, row.method, row.outcome, row.nodes, row.millis
        );
    }
    // Wall-clock readings stay on stdout; the emitted file is byte-stable
    // across reruns so digests can witness idempotence.
    for row in &mut cert.sweep {
        row.millis = 0;
    }
    manifest.emit("certificate.json", &cert.to_json())?;
    Ok(if cert.complete { 0 } else { 3 })
}

fn turan_csv(result: &TsResult) -> String {
    format!("{}\n{}\n", TsResult::CSV_HEADER, result.csv_row())
}

fn cmd_turan(args: &TuranArgs, manifest: &mut Manifest) -> CliResult<u8> {
    let pattern = parse_spec(&args.pattern)?;
    let tag = file_tag(&pattern);
    match args.mode {
        TuranMode::Exact => {
            if args.n > MAX_TS_EXACT_ORDER {
                return Err(CliError(format!(
                    "exact mode sweeps every graph and supports n <= {MAX_TS_EXACT_ORDER}; \
                     use --mode lower for a construction bound at n = {}",
                    args.n
                )));
            }
            let result = ts_exact(args.n, &pattern, args.k)?;
            manifest.emit(&format!("turan_exact_{tag}_{}.csv", args.n), &turan_csv(&result))?;
            manifest.emit(
                &format!("turan_exact_{tag}_{}.g6", args.n),
                &(result.witnesses.join("\n") + "\n"),
            )?;
            println!(
                "max edges of an order-{} graph with no {}-singular {}: {} ({} witnesses)",
                result.n,
                result.k,
                pattern,
                result.value,
                result.witnesses.len()
            );
        }
        TuranMode::Lower => {
            let result = ts_lower(args.n, &pattern)?;
            manifest.emit(&format!("turan_lower_{tag}_{}.csv", args.n), &turan_csv(&result))?;
            manifest.emit(
                &format!("turan_lower_{tag}_{}.g6", args.n),
                &(result.witnesses.join("\n") + "\n"),
            )?;
            println!(
                "constructed order-{} graph with no singular {}: {} edges (lower bound)",
                result.n, pattern, result.value
            );
        }
        TuranMode::Gap => {
            let hi = args.n_hi.unwrap_or(args.n);
            if hi < args.n {
                return Err(CliError("--n-hi must be at least --n".into()));
            }
            let report = ts_gap_report(&pattern, args.n..=hi, args.c)?;
            manifest.emit(&format!("turan_gap_{tag}_{}_{}.csv", args.n, hi), &report.csv())?;
            for row in &report.rows {
                match row.gap {
                    Some(gap) => println!(
                        "n={}: benchmark {}, construction {}, gap {} ({})",
                        row.n,
                        row.baseline,
                        row.lower.expect("gap rows carry a lower bound"),
                        gap,
                        row.status
                    ),
                    None => println!("n={}: {}", row.n, row.status),
                }
            }
        }
    }
    Ok(0)
}

fn cmd_enum(args: &EnumArgs, manifest: &mut Manifest) -> CliResult<u8> {
    let (s1, s2) = pattern_pair(&args.f1, &args.f2)?;
    let (p1, p2) = (s1.build()?, s2.build()?);
    if let Some(host_text) = &args.stability {
        let host_spec = parse_spec(host_text)?;
        let host = host_spec.build()?;
        let report = is_ramsey_stable(&host, &p1, &p2)?;
        let loose: Vec<serde_json::Value> = report
            .per_vertex
            .iter()
            .filter(|v| v.r_extensions != 1)
            .map(|v| {
                serde_json::json!({
                    "vertex": v.vertex,
                    "rExtensions": v.r_extensions,
                    "alternatives": v.alternatives,
                })
            })
            .collect();
        let json = serde_json::to_string_pretty(&serde_json::json!({
            "host": host_spec.to_string(),
            "f1": s1.to_string(),
            "f2": s2.to_string(),
            "stable": report.stable,
            "looseVertices": loose,
        }))
        .expect("stability report is plain data");
        manifest.emit(&format!("stability_{}.json", file_tag(&host_spec)), &json)?;
        if report.stable {
            println!("{host_spec} is stable for ({s1}, {s2}): every vertex re-attaches uniquely");
        } else {
            let first = report
                .per_vertex
                .iter()
                .find(|v| v.r_extensions != 1)
                .expect("unstable reports name a vertex");
            println!(
                "{host_spec} is unstable for ({s1}, {s2}): vertex {} admits {} re-attachments",
                first.vertex, first.r_extensions
            );
        }
        return Ok(0);
    }
    let n = args
        .n
        .ok_or_else(|| CliError("enum needs --n for catalogues or --stability for probes".into()))?;
    if n > MAX_GEN_ORDER {
        return Err(CliError(format!(
            "catalogues are exhaustive and support n <= {MAX_GEN_ORDER}, got {n}"
        )));
    }
    let catalog = enumerate_r_graphs(n, &p1, &p2)?;
    let lines: String = catalog
        .graphs
        .iter()
        .map(|g| g6_encode(g) + "\n")
        .collect();
    let base = format!("catalog_{}_{}_n{}", file_tag(&s1), file_tag(&s2), n);
    manifest.emit(&format!("{base}.g6"), &lines)?;
    let sidecar = serde_json::to_string_pretty(&serde_json::json!({
        "order": n,
        "f1": s1.to_string(),
        "f2": s2.to_string(),
        "count": catalog.graphs.len(),
        "graphs": catalog.graphs.iter().map(g6_encode).collect::<Vec<_>>(),
    }))
    .expect("catalogue sidecar is plain data");
    manifest.emit(&format!("{base}.json"), &sidecar)?;
    println!(
        "{} graphs of order {n} avoid {s1} while their complements avoid {s2}",
        catalog.graphs.len()
    );
    Ok(0)
}

// ---------------------------------------------------------------------------
// entry point
// ---------------------------------------------------------------------------

fn resolve_out_dir(flag: &Option<PathBuf>) -> CliResult<PathBuf> {
    let dir = flag
        .clone()
        .or_else(|| std::env::var_os("SRT_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)?;
    Ok(dir)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        // Ignore failure: the pool can already be initialised in tests.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global();
    }
    let out_dir = match resolve_out_dir(&cli.out_dir) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut manifest = Manifest::new(&out_dir, cli.seed);
    let outcome = match &cli.command {
        Command::Build(args) => cmd_build(args, &mut manifest),
        Command::Check(args) => cmd_check(args, &mut manifest),
        Command::Certify(args) => cmd_certify(args, &mut manifest, cli.jobs, cli.seed),
        Command::Turan(args) => cmd_turan(args, &mut manifest),
        Command::Enum(args) => cmd_enum(args, &mut manifest),
    };
    let code = match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    if let Err(e) = manifest.finish() {
        eprintln!("error: cannot write manifest: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
