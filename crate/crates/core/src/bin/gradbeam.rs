use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use gradbeam::cli::{self, RunSpec, Settings, Verb};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VerbArg {
    Static,
    Modal,
    Buckling,
    Converge,
    DumpWeights,
}

/// Single-element quadrature analysis of second-strain-gradient beams.
#[derive(Debug, Parser)]
#[command(name = "gradbeam", version)]
struct Args {
    #[arg(value_enum)]
    verb: VerbArg,

    /// key = value settings file; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    /// Named parameter set (benchmark)
    #[arg(long)]
    preset: Option<String>,
    /// lagrange | hermite | oracle | all
    #[arg(long)]
    basis: Option<String>,
    /// Node count: 11, 7..21, 7..21:2 or 5,7,9
    #[arg(long)]
    n: Option<String>,
    /// ss | free | clamped | cantilever
    #[arg(long)]
    bc: Option<String>,
    /// Swept analysis for converge: static | modal | buckling
    #[arg(long)]
    analysis: Option<String>,
    #[arg(long)]
    g1: Option<String>,
    #[arg(long)]
    g2: Option<String>,
    #[arg(long = "L")]
    length: Option<String>,
    #[arg(long = "E")]
    youngs: Option<String>,
    #[arg(long = "I")]
    inertia: Option<String>,
    #[arg(long = "A")]
    area: Option<String>,
    #[arg(long)]
    rho: Option<String>,
    #[arg(long)]
    q: Option<String>,
    /// Axial compression for static solves
    #[arg(long = "P")]
    axial: Option<String>,
    #[arg(long)]
    modes: Option<String>,
    /// table | csv
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<String>,
    /// dump-weights only: abar..dbar, g1..g4, K, G or M
    #[arg(long)]
    matrix: Option<String>,
}

fn settings(args: &Args) -> Result<Settings, String> {
    let mut s = match &args.config {
        Some(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            Settings::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => Settings::new(),
    };
    let flags = [
        ("preset", &args.preset),
        ("basis", &args.basis),
        ("n", &args.n),
        ("bc", &args.bc),
        ("analysis", &args.analysis),
        ("g1", &args.g1),
        ("g2", &args.g2),
        ("L", &args.length),
        ("E", &args.youngs),
        ("I", &args.inertia),
        ("A", &args.area),
        ("rho", &args.rho),
        ("q", &args.q),
        ("P", &args.axial),
        ("modes", &args.modes),
        ("format", &args.format),
        ("jobs", &args.jobs),
        ("matrix", &args.matrix),
    ];
    let mut overrides = Settings::new();
    for (k, v) in flags {
        if let Some(v) = v {
            overrides.set(k, v.as_str());
        }
    }
    s.merge(&overrides);
    Ok(s)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let verb = match args.verb {
        VerbArg::Static => Verb::Static,
        VerbArg::Modal => Verb::Modal,
        VerbArg::Buckling => Verb::Buckling,
        VerbArg::Converge => Verb::Converge,
        VerbArg::DumpWeights => Verb::DumpWeights,
    };
    let spec = match settings(&args)
        .and_then(|s| RunSpec::from_settings(verb, &s).map_err(|e| e.to_string()))
    {
        Ok(s) => s,
        Err(e) => {
            eprintln!("gradbeam: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match cli::run(&spec) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("gradbeam: {e}");
            return ExitCode::FAILURE;
        }
    };
    let written = match &args.out {
        Some(path) => std::fs::write(path, report).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{report}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("gradbeam: {e}");
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
