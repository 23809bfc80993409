use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use etcs_cli::{
    cmd_cover, cmd_enumerate, cmd_nu, cmd_polygon, cmd_tdual, cmd_verify, load_catalog,
    parse_fraction, CliError, GluingInput, NuRequest, OutputFormat, RowFilter, Suite, CATALOG_ENV,
};
use etcs_gluing::Matrix;
use etcs_ratarith::Rational;

/// Extra-twisted connected sums: enumeration, nu-invariants and checks.
#[derive(Debug, Parser)]
#[command(name = "etcs", version)]
struct Cli {
    /// Block catalog file; the built-in catalog is used when absent.
    #[arg(long, global = true, env = CATALOG_ENV)]
    catalog: Option<PathBuf>,

    /// Worker threads for the enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate the table of examples.
    Enumerate {
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        /// Comma-separated `key=value` conditions, e.g. `kplus=3,kminus=5`.
        #[arg(long, default_value = "")]
        filter: String,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact nu-invariant of a table row or of gluing data.
    Nu {
        #[arg(long, conflicts_with = "gluing", required_unless_present = "gluing")]
        row: Option<usize>,
        /// Gluing matrix entries `m,p,n,q`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_matrix,
              requires_all = ["kplus", "eps_plus", "dplus", "dminus", "mrho"])]
        gluing: Option<Matrix>,
        #[arg(long, allow_negative_numbers = true)]
        kplus: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        eps_plus: Option<i64>,
        /// Fixpoint contribution of the plus side, e.g. `-24/5`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_fraction)]
        dplus: Option<Rational>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_fraction)]
        dminus: Option<Rational>,
        #[arg(long, allow_negative_numbers = true)]
        mrho: Option<i64>,
        /// Compare with the eta-function formula at this tolerance.
        #[arg(long)]
        cross_check: Option<f64>,
    },
    /// Run verification suites.
    Verify {
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// The ell-fold covering of a row.
    Cover {
        #[arg(long)]
        row: usize,
        #[arg(long)]
        ell: i64,
    },
    /// The t-dual of a row.
    Tdual {
        #[arg(long)]
        row: usize,
    },
    /// The ideal polygon of a row.
    Polygon {
        #[arg(long)]
        row: usize,
        /// Write an SVG drawing to this file.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

fn parse_matrix(s: &str) -> Result<Matrix, String> {
    let v = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| format!("`{x}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    match v.as_slice() {
        &[m, p, n, q] => Ok(Matrix { m, p, n, q }),
        _ => Err(format!("expected four entries m,p,n,q, found {}", v.len())),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let catalog = load_catalog(cli.catalog.as_deref())?;
    let workers = cli.workers.max(1);
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match cli.command {
        Command::Enumerate {
            format,
            filter,
            out,
        } => {
            let filter: RowFilter = filter.parse()?;
            match out {
                Some(path) => {
                    let file = File::create(&path).map_err(|e| {
                        CliError::Config(format!("cannot create {}: {e}", path.display()))
                    })?;
                    let mut w = BufWriter::new(file);
                    cmd_enumerate(&catalog, format, &filter, workers, &mut w)?;
                    w.flush()?;
                }
                None => {
                    cmd_enumerate(&catalog, format, &filter, workers, &mut lock)?;
                }
            }
        }
        Command::Nu {
            row,
            gluing,
            kplus,
            eps_plus,
            dplus,
            dminus,
            mrho,
            cross_check,
        } => {
            let request = match (row, gluing) {
                (Some(id), _) => NuRequest::Row(id),
                (None, Some(matrix)) => NuRequest::Gluing(GluingInput {
                    matrix,
                    k_plus: kplus.expect("required by clap"),
                    eps_plus: eps_plus.expect("required by clap"),
                    d_plus: dplus.expect("required by clap"),
                    d_minus: dminus.expect("required by clap"),
                    m_rho: mrho.expect("required by clap"),
                }),
                (None, None) => unreachable!("clap requires --row or --gluing"),
            };
            cmd_nu(&catalog, &request, cross_check, workers, &mut lock)?;
        }
        Command::Verify { suite, tol } => cmd_verify(&catalog, suite, tol, workers, &mut lock)?,
        Command::Cover { row, ell } => cmd_cover(&catalog, row, ell, workers, &mut lock)?,
        Command::Tdual { row } => cmd_tdual(&catalog, row, workers, &mut lock)?,
        Command::Polygon { row, svg } => {
            cmd_polygon(&catalog, row, svg.as_deref(), workers, &mut lock)?
        }
    }
    lock.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(CliError::Config(String::new()).exit_code())
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("etcs: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
