use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quadric_cli::commands::{self, CliError, EquivKind, FamilyArgs};
use quadric_cli::report::Report;
use quadric_cli::{exit, plot, suite};

#[derive(Parser)]
#[command(name = "quadric", version, about = "Exact checks for embeddings of the plane into Q2 and SL2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the JSON report to this path ("-" for stdout).
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the built-in verification suite.
    VerifyPaper {
        #[arg(long, default_value = "Q")]
        field: String,
        /// Only run checks whose name matches this glob.
        #[arg(long)]
        filter: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Decide equivalence for one of the supported families.
    Equiv {
        #[command(subcommand)]
        family: EquivFamily,
    },
    /// Build an embedding from its family tag and verify it.
    Construct {
        /// One of nu-p, rho-lambda, pr, fibred, nonequiv-pair, charp-line,
        /// charp-hypersurface, not-var-kt, surface-e, shastri-a3, shastri-sl2.
        tag: String,
        /// Defaults to Fp:<p> for the characteristic-p families, else Q.
        #[arg(long)]
        field: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        r: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        m: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        /// P or Q for nonequiv-pair.
        #[arg(long)]
        which: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Lift a plane automorphism to SL2 through nu(a, b) = (a 1; ab - 1 b).
    Lift {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, default_value = "Q")]
        field: String,
        #[command(flatten)]
        out: Output,
    },
    /// Write SVG plots of the three planar projections of the trefoil.
    PlotTrefoil {
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, default_value_t = plot::DEFAULT_SIZE)]
        size: u32,
        #[arg(long, default_value_t = plot::DEFAULT_SAMPLES as u64, value_parser = clap::value_parser!(u64).range(2..))]
        samples: u64,
    },
}

#[derive(Subcommand)]
enum EquivFamily {
    /// nu_p against nu_q: p(t) = lambda q(lambda t + mu)?
    Nu {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value = "Q")]
        field: String,
        #[command(flatten)]
        out: Output,
    },
    /// P_r against P_s.
    Pr {
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value = "Q")]
        field: String,
        #[command(flatten)]
        out: Output,
    },
    /// Does the plane map (f, g) extend to SL2?
    Jac {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, default_value = "Q")]
        field: String,
        #[command(flatten)]
        out: Output,
    },
}

fn emit(report: &Report, out: &Output) -> Result<(), CliError> {
    match &out.json {
        Some(p) if p.as_os_str() == "-" => println!("{}", report.to_json()),
        Some(p) => {
            std::fs::write(p, report.to_json() + "\n").map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            print!("{}", report.render_text());
        }
        None => print!("{}", report.render_text()),
    }
    Ok(())
}

fn run(cli: Cli, argv: Vec<String>) -> Result<u8, CliError> {
    match cli.command {
        Command::VerifyPaper { field, filter, out } => {
            let field = commands::parse_field(&field)?;
            let pattern = filter
                .as_deref()
                .map(glob::Pattern::new)
                .transpose()
                .map_err(|e| CliError::Usage(format!("--filter: {e}")))?;
            let mut report = Report::new(field.to_string(), argv);
            report.records = suite::run(&field, pattern.as_ref());
            emit(&report, &out)?;
            Ok(suite::exit_code(&report.records))
        }
        Command::Equiv { family } => {
            let (field, kind, out) = match &family {
                EquivFamily::Nu { p, q, field, out } => (field, EquivKind::Nu { p, q }, out),
                EquivFamily::Pr { r, s, field, out } => (field, EquivKind::Pr { r, s }, out),
                EquivFamily::Jac { f, g, field, out } => (field, EquivKind::Jac { f, g }, out),
            };
            let field = commands::parse_field(field)?;
            let (report, code) = commands::equiv(&field, kind, argv)?;
            emit(&report, out)?;
            Ok(code)
        }
        Command::Construct { tag, field, lambda, p, q, r, a, b, n, m, mu, which, out } => {
            let args = FamilyArgs { lambda, p, q, r, a, b, n, m, mu, which };
            let field = match field {
                Some(f) => commands::parse_field(&f)?,
                None => commands::default_field(&tag, &args)?,
            };
            let (report, code) = commands::construct_cmd(&field, &tag, &args, argv)?;
            emit(&report, &out)?;
            Ok(code)
        }
        Command::Lift { f, g, field, out } => {
            let field = commands::parse_field(&field)?;
            let (report, code) = commands::lift(&field, &f, &g, argv)?;
            emit(&report, &out)?;
            Ok(code)
        }
        Command::PlotTrefoil { out, size, samples } => {
            let paths = plot::write_all(&out, size, samples as usize).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
            for p in paths {
                println!("{}", p.display());
            }
            Ok(exit::OK)
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::OK });
        }
    };
    match run(cli, argv) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
