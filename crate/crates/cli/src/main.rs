use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rectiplanar::generators::{
    gen_chain, gen_cycle, gen_lowerbound, gen_random_ipsp, small_random_corpus, sp_sweep,
};
use rectiplanar::oracle::{oracle_test_capped, DEFAULT_CAP};
use rectiplanar::witness::{draw, to_svg};
use rectiplanar::{test_with, DrawError, Graph, OracleError, TestOptions};

#[derive(Parser)]
#[command(
    name = "rectiplanar",
    version,
    about = "Rectilinear planarity testing for independent-parallel SP-graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test a graph and print the report.
    Test {
        /// Graph file, or "-" for standard input.
        input: String,
        #[arg(long)]
        all_roots: bool,
        /// JSON report (the default; wins over --text).
        #[arg(long)]
        json: bool,
        /// One-line human-readable verdict.
        #[arg(long)]
        text: bool,
    },
    /// Test a graph and write a drawing when it is rectilinear planar.
    Draw {
        input: String,
        /// Output file instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// SVG output (wins over --json).
        #[arg(long)]
        svg: bool,
        /// Drawing JSON output (the default).
        #[arg(long)]
        json: bool,
    },
    /// Generate a graph.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        /// Even N for lowerbound, target vertex count for random, length for
        /// cycle and chain.
        #[arg(short, long)]
        n: usize,
        /// Required for random graphs.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the graph as JSON instead of the edge-list text format.
        #[arg(long)]
        json: bool,
        /// Where to write the labelled innermost chains of a lowerbound graph.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Decide rectilinear planarity by exhaustive search.
    Oracle {
        input: String,
        /// Largest edge count the search accepts.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Time the tester on random graphs and print a CSV.
    Bench {
        /// Vertex counts, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [1024usize, 2048, 4096, 8192])]
        sizes: Vec<usize>,
        /// Instances per size.
        #[arg(long, default_value_t = 5)]
        runs: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Compare the tester with the oracle on small graphs.
    Corpus {
        #[arg(long)]
        seed: u64,
        /// Random instances.
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Edge cap for random instances.
        #[arg(long, default_value_t = 12)]
        max_edges: usize,
        /// Edge cap for the exhaustive sweep; 0 skips it.
        #[arg(long, default_value_t = 8)]
        sweep: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Lowerbound,
    Random,
    Cycle,
    Chain,
}

/// A failed run: exit status and one-line reason.
struct Failure(u8, String);

fn usage(msg: impl Into<String>) -> Failure {
    Failure(2, msg.into())
}

fn internal(msg: impl Into<String>) -> Failure {
    Failure(3, format!("internal: {}", msg.into()))
}

fn read_graph(input: &str) -> Result<Graph, Failure> {
    let bytes = if input == "-" {
        let mut buf = Vec::new();
        io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| usage(format!("cannot read standard input: {e}")))?;
        buf
    } else {
        fs::read(input).map_err(|e| usage(format!("cannot read {input}: {e}")))?
    };
    Graph::parse(&bytes).map_err(|e| usage(e.to_string()))
}

fn write_out(path: Option<&PathBuf>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => {
            fs::write(p, bytes).map_err(|e| usage(format!("cannot write {}: {e}", p.display())))
        }
        None => io::stdout()
            .write_all(bytes)
            .map_err(|e| usage(format!("cannot write output: {e}"))),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Test {
            input,
            all_roots,
            json,
            text,
        } => {
            let g = read_graph(&input)?;
            let report = test_with(&g, &TestOptions { all_roots }).map_err(|r| usage(r.code()))?;
            if text && !json {
                let mut line = format!("rectilinear planar: {}", report.rectilinear_planar);
                if let Some(reason) = &report.reason {
                    line.push_str(&format!(" ({reason})"));
                }
                println!("{line}");
            } else {
                println!("{}", report.to_json());
            }
        }
        Command::Draw {
            input,
            output,
            svg,
            json: _,
        } => {
            let g = read_graph(&input)?;
            match draw(&g) {
                Ok(w) => {
                    w.check().map_err(internal)?;
                    let bytes = if svg {
                        to_svg(&w.drawing)
                    } else {
                        let mut s = w.drawing.to_json();
                        s.push('\n');
                        s.into_bytes()
                    };
                    write_out(output.as_ref(), &bytes)?;
                }
                Err(DrawError::NotRectilinear) => {
                    let report =
                        test_with(&g, &TestOptions::default()).map_err(|r| usage(r.code()))?;
                    println!("{}", report.to_json());
                }
                Err(DrawError::Rejected(r)) => return Err(usage(r.code())),
                Err(DrawError::Internal(e)) => return Err(internal(e.0)),
            }
        }
        Command::Gen {
            kind,
            n,
            seed,
            output,
            json,
            sidecar,
        } => {
            if sidecar.is_some() && !matches!(kind, GenKind::Lowerbound) {
                return Err(usage("--sidecar only applies to lowerbound graphs"));
            }
            let g = match kind {
                GenKind::Lowerbound => {
                    if n < 2 || n % 2 == 1 {
                        return Err(usage("lowerbound needs an even N of at least 2"));
                    }
                    let lb = gen_lowerbound(n);
                    if let Some(p) = &sidecar {
                        fs::write(p, lb.sidecar_json())
                            .map_err(|e| usage(format!("cannot write {}: {e}", p.display())))?;
                    }
                    lb.graph
                }
                GenKind::Random => {
                    let seed = seed.ok_or_else(|| usage("random graphs need --seed"))?;
                    if n < 4 {
                        return Err(usage("random graphs need n of at least 4"));
                    }
                    gen_random_ipsp(n, seed)
                }
                GenKind::Cycle => {
                    if n < 3 {
                        return Err(usage("cycles need n of at least 3"));
                    }
                    gen_cycle(n)
                }
                GenKind::Chain => {
                    if n < 1 {
                        return Err(usage("chains need n of at least 1"));
                    }
                    gen_chain(n)
                }
            };
            let mut s = if json { g.to_json() } else { g.to_text() };
            if !s.ends_with('\n') {
                s.push('\n');
            }
            write_out(output.as_ref(), s.as_bytes())?;
        }
        Command::Oracle { input, cap } => {
            let g = read_graph(&input)?;
            let r = oracle_test_capped(&g, cap).map_err(|e| match e {
                OracleError::CapExceeded { .. } => usage(e.to_string()),
                OracleError::Disconnected => usage("not connected"),
            })?;
            println!("{}", r.to_json());
        }
        Command::Bench { sizes, runs, seed } => {
            let mut out = String::from("n,elapsed_ms\n");
            for &n in &sizes {
                if n < 4 {
                    return Err(usage("bench sizes must be at least 4"));
                }
                for run in 0..runs {
                    let g = gen_random_ipsp(n, seed.wrapping_add(run as u64));
                    let start = Instant::now();
                    test_with(&g, &TestOptions::default()).map_err(|r| internal(r.code()))?;
                    let ms = start.elapsed().as_secs_f64() * 1e3;
                    out.push_str(&format!("{},{ms:.3}\n", g.vertex_count()));
                }
            }
            print!("{out}");
        }
        Command::Corpus {
            seed,
            count,
            max_edges,
            sweep,
        } => {
            let mut graphs = small_random_corpus(count, max_edges, seed);
            if sweep > 0 {
                graphs.extend(sp_sweep(sweep));
            }
            let (mut in_scope, mut positive, mut disagreements) = (0, 0, 0);
            for g in &graphs {
                let Ok(report) = test_with(g, &TestOptions::default()) else {
                    continue;
                };
                let oracle = oracle_test_capped(g, g.edge_count().max(DEFAULT_CAP))
                    .map_err(|e| internal(e.to_string()))?;
                in_scope += 1;
                positive += report.rectilinear_planar as usize;
                disagreements += (report.rectilinear_planar != oracle.feasible) as usize;
            }
            println!(
                "{}",
                serde_json::json!({
                    "instances": graphs.len(),
                    "in_scope": in_scope,
                    "positive": positive,
                    "agreements": in_scope - disagreements,
                    "disagreements": disagreements,
                })
            );
            if disagreements > 0 {
                return Err(internal(format!(
                    "{disagreements} tester/oracle disagreements"
                )));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, reason)) => {
            eprintln!("error: {reason}");
            ExitCode::from(code)
        }
    }
}
