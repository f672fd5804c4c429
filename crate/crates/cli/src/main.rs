use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spbw_cli::{parse, parse_command, parse_order, render_file, run_source, Flags, Overrides};

#[derive(Parser)]
#[command(
    name = "spbw",
    version,
    about = "Groebner bases over skew PBW extensions"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the command block of a file.
    Run(Common),
    /// Print the canonical form of a file.
    Fmt { file: PathBuf },
    /// Check the presentation axioms and report ambiguous overlaps.
    Validate(Common),
    /// Multiply named polynomials left to right.
    Mul(WithArgs),
    /// Divide, e.g. `spbw divide FILE f by f1 f2`.
    Divide(WithArgs),
    /// Groebner basis of a left ideal.
    Gb(WithArgs),
    /// Groebner basis of a submodule.
    Modgb(WithArgs),
    /// Left inverse of a matrix.
    Linv(WithArgs),
    /// Unimodularity of a column.
    Unimod(WithArgs),
    /// Diagonalize an idempotent matrix over a field.
    #[command(name = "idem-diag")]
    IdemDiag(WithArgs),
}

#[derive(Args)]
struct Common {
    file: PathBuf,
    #[command(flatten)]
    flags: FlagArgs,
}

#[derive(Args)]
struct WithArgs {
    file: PathBuf,
    /// Command operands; without them the file's matching commands run.
    args: Vec<String>,
    #[command(flatten)]
    flags: FlagArgs,
}

#[derive(Args)]
struct FlagArgs {
    /// Monomial order clause, e.g. "deglex D2 > D1".
    #[arg(long)]
    order: Option<String>,
    /// `top` or `toprev`.
    #[arg(long)]
    module_order: Option<String>,
    /// Print one line per reduction step.
    #[arg(long)]
    trace: bool,
    /// Enumerate only pairs and singletons in Buchberger's algorithm.
    #[arg(long)]
    pairs_only: bool,
    #[arg(long, value_name = "N")]
    max_degree: Option<u32>,
    #[arg(long, value_name = "N")]
    max_basis: Option<usize>,
}

fn read(path: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("spbw: cannot read {}: {e}", path.display());
        ExitCode::from(2)
    })
}

fn flags(f: &FlagArgs) -> Result<Flags, ExitCode> {
    let order = match &f.order {
        Some(text) => Some(parse_order(text).map_err(|e| {
            eprintln!("spbw: --order: {}", e.render(text));
            ExitCode::from(2)
        })?),
        None => None,
    };
    Ok(Flags {
        trace: f.trace,
        pairs_only: f.pairs_only,
        max_degree: f.max_degree,
        max_basis: f.max_basis,
        overrides: Overrides {
            order,
            module_order: f.module_order.clone(),
        },
    })
}

/// `name` is `run` for the whole command block. Without operands the file's
/// commands of that kind run; `validate` needs none.
fn execute(
    file: &PathBuf,
    name: &str,
    args: &[String],
    f: &FlagArgs,
) -> Result<ExitCode, ExitCode> {
    let src = read(file)?;
    let flags = flags(f)?;
    if name == "run" {
        return Ok(report(run_source(&src, None, &flags)));
    }
    let commands = if !args.is_empty() || name == "validate" {
        let line = format!("{name} {}", args.join(" "));
        vec![parse_command(&line).map_err(|e| {
            eprintln!("spbw: {}", e.render(&line));
            ExitCode::from(2)
        })?]
    } else {
        match parse(&src) {
            Ok(parsed) => parsed
                .commands()
                .filter(|(c, _)| c.name() == name)
                .map(|(c, _)| c.clone())
                .collect(),
            // the driver reports the parse error
            Err(_) => Vec::new(),
        }
    };
    Ok(report(run_source(&src, Some(&commands), &flags)))
}

fn report(o: spbw_cli::Outcome) -> ExitCode {
    print!("{}", o.report);
    ExitCode::from(o.code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Cmd::Run(c) => execute(&c.file, "run", &[], &c.flags),
        Cmd::Fmt { file } => read(file).map(|src| match parse(&src) {
            Ok(f) => {
                print!("{}", render_file(&f));
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("spbw: {}: {}", file.display(), e.render(&src));
                ExitCode::from(2)
            }
        }),
        Cmd::Validate(c) => execute(&c.file, "validate", &[], &c.flags),
        Cmd::Mul(w) => execute(&w.file, "mul", &w.args, &w.flags),
        Cmd::Divide(w) => execute(&w.file, "divide", &w.args, &w.flags),
        Cmd::Gb(w) => execute(&w.file, "gb", &w.args, &w.flags),
        Cmd::Modgb(w) => execute(&w.file, "modgb", &w.args, &w.flags),
        Cmd::Linv(w) => execute(&w.file, "linv", &w.args, &w.flags),
        Cmd::Unimod(w) => execute(&w.file, "unimod", &w.args, &w.flags),
        Cmd::IdemDiag(w) => execute(&w.file, "idem-diag", &w.args, &w.flags),
    };
    res.unwrap_or_else(|code| code)
}
