//! Command-line front end: generate instances, solve them, benchmark charged
//! costs, and run the verification suites. Exit code 0 is success, 1 is a
//! usage or input error, 2 marks an infeasible assembly request.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use strand::core_strings::{instance_to_string, read_instance_file};
use strand::harness::bench::{self, BenchReport, GRAPH_LENS, GRAPH_NS, TAO_MS, TAO_NS};
use strand::harness::gen::{self, GenSpec, ProblemKind};
use strand::harness::{read_text_file, verify};
use strand::qsim::{Emulator, NoiseConfig};
use strand::scs::{solve_scs, GraphBackend, DEFAULT_ALPHA};
use strand::tao::{assemble, TAOInstance};
use strand::{Error, Result};

#[derive(Parser)]
#[command(
    name = "strand",
    version,
    about = "Shortest common superstring and dictionary text assembly, \
             instrumented with a quantum query-cost ledger"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance and write it to disk.
    Gen(GenArgs),
    /// Solve a shortest common superstring instance file.
    SolveScs(SolveArgs),
    /// Assemble a text from a dictionary file.
    Assemble(AssembleArgs),
    /// Measure charged costs over size grids and fit their exponents.
    Bench(BenchArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Problem kind: scs or tao.
    kind: String,
    /// Number of strings (scs) or dictionary strings (tao).
    #[arg(long, default_value_t = 8)]
    n: usize,
    /// Minimum string length.
    #[arg(long, default_value_t = 3)]
    min_len: usize,
    /// Maximum string length.
    #[arg(long, default_value_t = 8)]
    max_len: usize,
    /// Alphabet size, between 2 and 62.
    #[arg(long, default_value_t = 4)]
    alphabet: u16,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Target text length (tao only).
    #[arg(long, default_value_t = 64)]
    text_len: usize,
    /// Plant a feasible decomposition into the text (tao only).
    #[arg(long)]
    planted: bool,
    /// Output path; tao writes <out>.text and <out>.dict.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file: one string per line, # starts a comment.
    input: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Overlap graph backend: hash or allones.
    #[arg(long, default_value = "hash")]
    backend: String,
    /// Split fraction of the nested maximum cascade.
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    alpha: f64,
    /// Per-call failure probability; zero keeps the emulation exact.
    #[arg(long, default_value_t = 0.0)]
    noise_p: f64,
    /// Odd majority-vote repetitions applied under noise.
    #[arg(long, default_value_t = 1)]
    noise_reps: u32,
    /// Write the result as JSON to this path.
    #[arg(long)]
    json_out: Option<PathBuf>,
}

#[derive(Args)]
struct AssembleArgs {
    /// Text file: the first data line is the target text.
    text: PathBuf,
    /// Dictionary file: one string per line, # starts a comment.
    dict: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Per-call failure probability; zero keeps the emulation exact.
    #[arg(long, default_value_t = 0.0)]
    noise_p: f64,
    /// Odd majority-vote repetitions applied under noise.
    #[arg(long, default_value_t = 1)]
    noise_reps: u32,
    /// Write the result as JSON to this path.
    #[arg(long)]
    json_out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Stage family: graph, tao, or all.
    #[arg(long, default_value = "all")]
    stage: String,
    /// Overlap graph backend for the graph stage.
    #[arg(long, default_value = "hash")]
    backend: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// String counts for the graph grid, comma separated.
    #[arg(long, value_delimiter = ',')]
    ns: Option<Vec<usize>>,
    /// Per-string lengths for the graph grid, comma separated.
    #[arg(long, value_delimiter = ',')]
    lens: Option<Vec<usize>>,
    /// Text lengths for the tao grid, comma separated.
    #[arg(long, value_delimiter = ',')]
    ms: Option<Vec<usize>>,
    /// Dictionary sizes for the tao grid, comma separated.
    #[arg(long, value_delimiter = ',')]
    tao_ns: Option<Vec<usize>>,
    /// Keep measured wall times; omitted so equal seeds emit identical files.
    #[arg(long)]
    timings: bool,
    /// Write the full report as JSON to this path.
    #[arg(long)]
    json_out: Option<PathBuf>,
    /// Write the measured rows as CSV to this path.
    #[arg(long)]
    csv_out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or all.
    #[arg(default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the check reports as JSON to this path.
    #[arg(long)]
    json_out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match cli.command {
        Command::Gen(a) => run_gen(a).map(|_| 0),
        Command::SolveScs(a) => run_solve(a).map(|_| 0),
        Command::Assemble(a) => run_assemble(a),
        Command::Bench(a) => run_bench(a).map(|_| 0),
        Command::Verify(a) => run_verify(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Error::Infeasible(msg)) => {
            eprintln!("infeasible: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run_gen(args: GenArgs) -> Result<()> {
    let kind: ProblemKind = args.kind.parse()?;
    let spec = GenSpec {
        kind,
        n: args.n,
        min_len: args.min_len,
        max_len: args.max_len,
        alphabet: args.alphabet,
        seed: args.seed,
        text_len: args.text_len,
        planted: args.planted,
    };
    match kind {
        ProblemKind::Scs => {
            let inst = gen::gen_scs(&spec)?;
            std::fs::write(&args.out, instance_to_string(&inst))?;
            println!("wrote {} strings to {}", inst.n(), args.out.display());
        }
        ProblemKind::Tao => {
            let inst = gen::gen_tao(&spec)?;
            let text_path = PathBuf::from(format!("{}.text", args.out.display()));
            let dict_path = PathBuf::from(format!("{}.dict", args.out.display()));
            std::fs::write(&text_path, gen::text_to_string(&inst))?;
            std::fs::write(&dict_path, gen::dict_to_string(&inst))?;
            println!(
                "wrote a {}-symbol text to {} and {} dictionary strings to {}",
                inst.text_len(),
                text_path.display(),
                inst.dict_len(),
                dict_path.display()
            );
        }
    }
    Ok(())
}

/// Exact emulator, or the noisy majority-vote model when noise is requested.
fn make_emulator(noise_p: f64, noise_reps: u32, seed: u64) -> Result<Emulator> {
    if noise_p > 0.0 {
        Emulator::with_noise(&NoiseConfig {
            enabled: true,
            per_call_failure_probability: noise_p,
            rng_seed: seed,
            repetitions: noise_reps,
        })
    } else {
        Ok(Emulator::exact())
    }
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Usage(format!("could not serialize the result: {e}")))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

fn run_solve(args: SolveArgs) -> Result<()> {
    let backend: GraphBackend = args.backend.parse()?;
    let inst = read_instance_file(&args.input)?;
    let mut emu = make_emulator(args.noise_p, args.noise_reps, args.seed)?;
    let sol = solve_scs(&inst, &mut emu, backend, args.alpha, args.seed)?;
    let superstring = String::from_utf8_lossy(&sol.superstring).into_owned();
    println!("superstring: {superstring}");
    println!("length: {}", sol.superstring.len());
    let order: Vec<String> = sol.order.iter().map(|i| i.to_string()).collect();
    println!("order: {}", order.join(" "));
    println!("overlap weight: {}", sol.overlap_weight);
    print!("{}", emu.ledger.render_table());
    if let Some(path) = &args.json_out {
        write_json(
            path,
            &serde_json::json!({
                "length": sol.superstring.len(),
                "superstring": superstring,
                "order": sol.order,
                "overlap_weight": sol.overlap_weight,
                "hash_collision_events": sol.hash_collision_events,
                "ledger": emu.ledger.report_json(),
            }),
        )?;
    }
    Ok(())
}

fn run_assemble(args: AssembleArgs) -> Result<u8> {
    let text = read_text_file(&args.text)?;
    let dict = read_instance_file(&args.dict)?.into_strings();
    let inst = TAOInstance::new(text, dict)?;
    let mut emu = make_emulator(args.noise_p, args.noise_reps, args.seed)?;
    match assemble(&inst, &mut emu) {
        Ok(asm) => {
            println!(
                "feasible: the text splits into {} dictionary pieces",
                asm.starts.len()
            );
            let starts: Vec<String> = asm.starts.iter().map(|q| q.to_string()).collect();
            let indices: Vec<String> = asm.indices.iter().map(|i| i.to_string()).collect();
            println!("Q: {}", starts.join(" "));
            println!("I: {}", indices.join(" "));
            print!("{}", emu.ledger.render_table());
            if let Some(path) = &args.json_out {
                write_json(
                    path,
                    &serde_json::json!({
                        "feasible": true,
                        "Q": asm.starts,
                        "I": asm.indices,
                        "ledger": emu.ledger.report_json(),
                    }),
                )?;
            }
            Ok(0)
        }
        Err(Error::Infeasible(msg)) => {
            eprintln!("infeasible: {msg}");
            if let Some(path) = &args.json_out {
                write_json(
                    path,
                    &serde_json::json!({
                        "feasible": false,
                        "Q": [],
                        "I": [],
                        "ledger": emu.ledger.report_json(),
                    }),
                )?;
            }
            Ok(2)
        }
        Err(e) => Err(e),
    }
}

fn run_bench(args: BenchArgs) -> Result<()> {
    let backend: GraphBackend = args.backend.parse()?;
    let ns = args.ns.unwrap_or_else(|| GRAPH_NS.to_vec());
    let lens = args.lens.unwrap_or_else(|| GRAPH_LENS.to_vec());
    let ms = args.ms.unwrap_or_else(|| TAO_MS.to_vec());
    let tao_ns = args.tao_ns.unwrap_or_else(|| TAO_NS.to_vec());
    let mut report = BenchReport::default();
    let stage = args.stage.as_str();
    if stage == "graph" || stage == "all" {
        let rows = bench::run_graph_bench(&ns, &lens, backend, args.seed)?;
        report.graph_fit = Some(bench::fit_graph(&rows)?);
        report.rows.extend(rows);
    }
    if stage == "tao" || stage == "all" {
        let rows = bench::run_tao_bench(&ms, &tao_ns, args.seed)?;
        report.tao_fit = Some(bench::fit_tao(&rows)?);
        report.rows.extend(rows);
    }
    if report.rows.is_empty() {
        return Err(Error::Usage(format!(
            "unknown bench stage {stage:?}, expected graph, tao, or all"
        )));
    }
    if !args.timings {
        report.strip_wall_times();
    }
    if let Some(fit) = &report.graph_fit {
        println!(
            "graph stage: n exponent {:.3} (band [{}, {}]: {}), L exponent {:.3} (band [{}, {}]: {}), {} points",
            fit.n_exponent.value,
            fit.n_band.0,
            fit.n_band.1,
            verdict(fit.within_bands),
            fit.l_exponent.value,
            fit.l_band.0,
            fit.l_band.1,
            verdict(fit.within_bands),
            fit.points_used
        );
    }
    if let Some(fit) = &report.tao_fit {
        println!(
            "tao stage: ratio constant {:.3}, spread [{:.3}, {:.3}], within factor {:.0}: {}, {} points",
            fit.constant,
            fit.min_ratio,
            fit.max_ratio,
            fit.band_factor,
            verdict(fit.within_band),
            fit.points_used
        );
    }
    println!("measured {} grid cells", report.rows.len());
    if let Some(path) = &args.json_out {
        let value = serde_json::to_value(&report)
            .map_err(|e| Error::Usage(format!("could not serialize the report: {e}")))?;
        write_json(path, &value)?;
    }
    if let Some(path) = &args.csv_out {
        std::fs::write(path, report.to_csv())?;
    }
    Ok(())
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "out of band"
    }
}

fn run_verify(args: VerifyArgs) -> Result<u8> {
    let checks = verify::run_suite(&args.suite, args.seed)?;
    for check in &checks {
        println!("{}", check.line());
    }
    if let Some(path) = &args.json_out {
        let value = serde_json::to_value(&checks)
            .map_err(|e| Error::Usage(format!("could not serialize the checks: {e}")))?;
        write_json(path, &value)?;
    }
    Ok(if checks.iter().all(|c| c.passed) { 0 } else { 1 })
}
