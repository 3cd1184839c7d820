//! `fewnomial`: JSON in, JSON or SVG out.
//!
//! Exit codes: 0 success or certified, 1 refuted, 2 undecided, 3 input
//! error, 4 guardrail.

mod commands;
mod input;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fewnomial::numeric::FieldKind;
use fewnomial::Error;

use commands::{Outcome, VariantArg};

const EXIT_INPUT: u8 = 3;
const EXIT_GUARDRAIL: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "fewnomial", version, about = "Exact certificates for extremal fewnomial systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Write the SVG rendering here (planar inputs only).
    #[arg(long, global = true)]
    svg: Option<String>,
    /// Worker threads for commands that take a range of `n`.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args, Debug)]
struct InputArg {
    /// JSON input: a file path, `-` for stdin, or inline JSON.
    #[arg(long)]
    input: Option<String>,
}

#[derive(Args, Debug)]
struct FieldArgs {
    #[arg(long, default_value = "R", value_parser = commands::parse_field)]
    field: FieldKind,
    #[arg(long)]
    p: Option<u64>,
    /// `ε` as a field literal; defaults to 1/4, p or t.
    #[arg(long)]
    eps: Option<String>,
    /// Starting working precision in digits.
    #[arg(long)]
    precision: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mixed volume of lifted supports, with its mixed cells.
    MixedVolume(InputArg),
    /// Lower facets and mixed cells of the induced subdivision.
    MixedCells(InputArg),
    /// Coherent triangulation of one lifted support.
    Triangulate(InputArg),
    /// Positive roots for small t from alternating mixed cells.
    SturmfelsCount(InputArg),
    /// Viro diagram of a signed planar triangulation.
    ViroSvg {
        #[command(flatten)]
        input: InputArg,
        /// Also draw the triangulation.
        #[arg(long)]
        show_triangulation: bool,
    },
    /// Roots by valuation and phase over Q_p or F_p((t)).
    PadicCount {
        #[command(flatten)]
        input: InputArg,
        /// Phase vector, comma separated; all ones by default.
        #[arg(long, value_delimiter = ',')]
        theta: Option<Vec<u64>>,
        #[arg(long)]
        precision: Option<u32>,
    },
    /// The system G_ε, or the block system with --k.
    GenExtremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Certify n+1 phase-1 roots of G_ε; --n takes `a..b` ranges.
    VerifyFamily {
        #[arg(long, value_parser = input::parse_range)]
        n: (usize, usize),
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Mixed-facet certificate of the triangle configuration.
    LemmaTri {
        #[arg(long, value_parser = input::parse_range)]
        n: (usize, usize),
    },
    /// Build and certify the block system.
    BlockSystem {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Phase-1 roots of r_k over F_p((t)).
    PoonenRk {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "both")]
        variant: VariantArg,
    },
    /// Z_p roots of h_{n,k}/(x(1-x)).
    SlpRoots {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        precision: Option<u32>,
    },
    /// No real roots of h_{n,k}/(x(1-x)); --logistic reports h_n(x) - x.
    SlpRealCheck {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        logistic: bool,
    },
}

fn run(cli: &Cli) -> fewnomial::Result<Outcome> {
    let want_svg = cli.svg.is_some();
    let inp = |a: &InputArg| a.input.clone();
    let field = |f: &FieldArgs| input::field_spec(f.field, f.p, f.precision);
    match &cli.command {
        Command::MixedVolume(a) => commands::mixed_volume_cmd(inp(a).as_deref()),
        Command::MixedCells(a) => commands::mixed_cells_cmd(inp(a).as_deref(), want_svg),
        Command::Triangulate(a) => commands::triangulate_cmd(inp(a).as_deref(), want_svg),
        Command::SturmfelsCount(a) => commands::sturmfels_cmd(inp(a).as_deref()),
        Command::ViroSvg { input, show_triangulation } => {
            commands::viro_cmd(inp(input).as_deref(), want_svg, *show_triangulation)
        }
        Command::PadicCount { input, theta, precision } => {
            commands::padic_count_cmd(inp(input).as_deref(), theta.as_deref(), *precision)
        }
        Command::GenExtremal { n, k, field: f } => commands::gen_extremal_cmd(*n, *k, field(f)?, f.eps.as_deref()),
        Command::VerifyFamily { n, field: f } => {
            commands::verify_family_cmd(*n, field(f)?, f.eps.as_deref(), f.precision, cli.jobs)
        }
        Command::LemmaTri { n } => commands::lemma_tri_cmd(*n, cli.jobs),
        Command::BlockSystem { n, k, field: f } => {
            commands::block_system_cmd(*n, *k, field(f)?, f.eps.as_deref(), f.precision)
        }
        Command::PoonenRk { p, k, variant } => commands::poonen_cmd(*p, *k, *variant),
        Command::SlpRoots { n, k, p, precision } => commands::slp_roots_cmd(*n, *k, *p, *precision),
        Command::SlpRealCheck { n, k, logistic } => commands::slp_real_cmd(*n, *k, *logistic),
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Precision(_) | Error::Undecided { .. } | Error::NotHenselLiftable(_) => 2,
        Error::Guardrail(_) => EXIT_GUARDRAIL,
        _ => EXIT_INPUT,
    }
}

fn write_file(path: &str, text: &str) -> std::io::Result<()> {
    fs::write(path, text)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            let doc = serde_json::json!({ "error": e.to_string(), "exit_code": error_code(&e) });
            eprintln!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            return ExitCode::from(error_code(&e));
        }
    };
    let text = serde_json::to_string_pretty(&outcome.json).expect("json") + "\n";
    let written = match &cli.out {
        Some(path) => write_file(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    let svg_written = match (&cli.svg, &outcome.svg) {
        (Some(path), Some(svg)) => write_file(path, svg),
        (Some(_), None) => {
            eprintln!("this command has no SVG rendering");
            return ExitCode::from(EXIT_INPUT);
        }
        _ => Ok(()),
    };
    if let Err(e) = written.and(svg_written) {
        eprintln!("write failed: {e}");
        return ExitCode::from(EXIT_INPUT);
    }
    ExitCode::from(outcome.code as u8)
}
