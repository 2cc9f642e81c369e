//! knotclass: tunnel-number-one detection for reduced alternating knot
//! diagrams, rational tangle generation, and handlebody tests for
//! single-vertex graph diagrams.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use knotclass::construct::close_tangle;
use knotclass::diagram::DiagramFormat;
use knotclass::rational::{fraction, generate, parse_layer_sequence};
use knotclass::runner::{corpus_run, diagram_lines, run_inputs, Command as RunCommand, OutputKind, RunConfig};

#[derive(Parser)]
#[command(name = "knotclass", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Pd,
    Gauss,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputArg {
    Json,
    Text,
}

#[derive(Args)]
struct CommonArgs {
    /// Input diagram files (one diagram per nonempty line)
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Diagram text format
    #[arg(long, value_enum, default_value = "pd")]
    format: FormatArg,
    /// Report format
    #[arg(long, value_enum, default_value = "text")]
    output: OutputArg,
    /// Do not search the reflection
    #[arg(long)]
    no_mirror: bool,
    /// Worker threads for batch processing
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate diagrams
    Validate(CommonArgs),
    /// Decide tunnel number one and report parameters
    Classify(CommonArgs),
    /// Classify and enumerate planar-arc unknotting tunnels
    Tunnels(CommonArgs),
    /// Decide handlebody exterior for single-vertex graph diagrams
    Handlebody(CommonArgs),
    /// Generate a rational tangle from a layer sequence
    GenRational {
        /// Sequence like "core=0; layers=bottom+,right+,bottom+"
        sequence: String,
        #[arg(long, value_enum, default_value = "text")]
        output: OutputArg,
        /// Also emit the horizontal and vertical closures as PD lines
        #[arg(long)]
        closures: bool,
    },
    /// Run a corpus directory against expected-verdict sidecars
    Corpus {
        /// Directory of .pd/.gauss files; defaults to $KNOTCLASS_CORPUS
        dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        output: OutputArg,
        #[arg(long)]
        no_mirror: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn build_config(cmd: RunCommand, args: &CommonArgs) -> RunConfig {
    let mut cfg = RunConfig::new(cmd);
    cfg.format = match args.format {
        FormatArg::Pd => DiagramFormat::Pd,
        FormatArg::Gauss => DiagramFormat::Gauss,
    };
    cfg.output = match args.output {
        OutputArg::Json => OutputKind::Json,
        OutputArg::Text => OutputKind::Text,
    };
    cfg.mirror = !args.no_mirror;
    cfg.jobs = args.jobs.max(1);
    cfg
}

fn run_files(cmd: RunCommand, args: &CommonArgs) -> ExitCode {
    let cfg = build_config(cmd, args);
    let mut inputs: Vec<(String, String)> = Vec::new();
    for path in &args.inputs {
        let content = match std::fs::read_to_string(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("knotclass: cannot read {}: {e}", path.display());
                return ExitCode::from(2);
            }
        };
        let name = path
            .file_name()
            .and_then(|n| n.to_str())
            .unwrap_or("?")
            .to_string();
        for (i, line) in diagram_lines(&content).into_iter().enumerate() {
            let label = if i == 0 { name.clone() } else { format!("{name}#{i}") };
            inputs.push((label, line));
        }
    }
    let (reports, exit) = run_inputs(&cfg, &inputs);
    for (name, report) in &reports {
        match cfg.output {
            OutputKind::Json => println!("{}", report.to_json()),
            OutputKind::Text => println!("{}", report.to_text(name)),
        }
    }
    ExitCode::from(exit as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Cmd::Validate(args) => run_files(RunCommand::Validate, &args),
        Cmd::Classify(args) => run_files(RunCommand::Classify, &args),
        Cmd::Tunnels(args) => run_files(RunCommand::Tunnels, &args),
        Cmd::Handlebody(args) => run_files(RunCommand::Handlebody, &args),
        Cmd::GenRational {
            sequence,
            output,
            closures,
        } => {
            let seq = match parse_layer_sequence(&sequence) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("knotclass: {e}");
                    return ExitCode::from(2);
                }
            };
            let tangle = generate(&seq);
            let f = fraction(&seq);
            match output {
                OutputArg::Json => {
                    println!(
                        "{{\"schema\":1,\"tangle\":\"{}\",\"fraction\":\"{}\",\"alternating\":{}}}",
                        tangle.serialize(),
                        f,
                        tangle.is_alternating()
                    );
                }
                OutputArg::Text => {
                    println!("{}", tangle.serialize());
                    println!("fraction: {f}");
                    println!("alternating: {}", tangle.is_alternating());
                }
            }
            if closures {
                for kind in knotclass::construct::Closure::BOTH {
                    match close_tangle(&tangle, kind) {
                        Ok(d) => println!("closure {kind:?}: {}", d.to_pd_string()),
                        Err(e) => println!("closure {kind:?}: {e}"),
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Cmd::Corpus {
            dir,
            output,
            no_mirror,
            jobs,
        } => {
            let dir = dir.or_else(|| std::env::var("KNOTCLASS_CORPUS").ok().map(PathBuf::from));
            let Some(dir) = dir else {
                eprintln!("knotclass: no corpus directory (pass one or set KNOTCLASS_CORPUS)");
                return ExitCode::from(2);
            };
            let mut cfg = RunConfig::new(RunCommand::Classify);
            cfg.mirror = !no_mirror;
            cfg.jobs = jobs.max(1);
            match corpus_run(&cfg, &dir) {
                Ok(summary) => {
                    match output {
                        OutputArg::Json => println!("{}", summary.to_json()),
                        OutputArg::Text => print!("{}", summary.to_text()),
                    }
                    if summary.entries.iter().any(|e| e.error.is_some()) {
                        ExitCode::from(1)
                    } else {
                        ExitCode::SUCCESS
                    }
                }
                Err(e) => {
                    eprintln!("knotclass: corpus error: {e}");
                    ExitCode::from(2)
                }
            }
        }
    }
}
