//! `shimura`: evaluate interpolation polynomials and Shimura eigenvalues,
//! run verification suites, and rasterize the positivity sets.
//!
//! Exit codes: 0 success, 1 failed checks, 2 usage or parse error, 3 domain
//! error, 4 I/O error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use shimura_core::grid::{rasterize, RegionKind};
use shimura_core::limits::{crossing_point, trace_contour};
use shimura_core::okounkov::{okounkov_eval, okounkov_expand, k_constant};
use shimura_core::scalar::{parse_rational, parse_rational_list};
use shimura_core::shimura::{group_params, shimura_eigenvalue, GroupData};
use shimura_core::suites::{run_suite, Suite, SuiteReport};
use shimura_core::{Error, Params, Partition};

#[derive(Parser)]
#[command(name = "shimura", version, about = "Okounkov interpolation polynomials and Shimura positivity sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate P_λ(x; τ, α) exactly.
    Eval {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tau: String,
        #[arg(long)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Expand P_λ in the squared variables.
    Expand {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tau: String,
        #[arg(long)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Harish-Chandra eigenvalue k_μ P_μ of a Shimura operator.
    Eigenvalue {
        /// "n,d,b"
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        /// characterization, tau1-det, columns, rectangles, kmu, rank2 or limits
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 4)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rasterize a rank-two set to CSV.
    Region {
        /// G, A, rank2-B, U0, W (meaning T_1 ∪ W) or square
        #[arg(long)]
        kind: String,
        /// "2,d,b"; alternatively give --m for U(m+2,2)
        #[arg(long, conflicts_with = "m")]
        group: Option<String>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, default_value_t = 100)]
        grid: usize,
        #[arg(long, default_value_t = 6)]
        max_weight: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Trace S_m = 0 on [0, 1.2]^2 to CSV.
    Contour {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// The diagonal crossing point c_m.
    Crossing {
        #[arg(long)]
        m: u32,
    },
}

enum Failure {
    Checks,
    Usage(String),
    Domain(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::NotAPartition(_) | Error::DimensionMismatch { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Domain(e.to_string()),
        }
    }
}

fn params(n: usize, tau: &str, alpha: &str) -> Result<Params, Failure> {
    Ok(Params::new(n, parse_rational(tau)?, parse_rational(alpha)?)?)
}

fn write_file(path: &PathBuf, body: &str) -> Result<(), Failure> {
    fs::write(path, body).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn verify_outcome(report: &SuiteReport) -> Result<(), Failure> {
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Eval { n, tau, alpha, lambda, x } => {
            let p = params(n, &tau, &alpha)?;
            let lam: Partition = lambda.parse()?;
            let v = okounkov_eval(&lam, &parse_rational_list(&x)?, &p)?;
            println!("{}", json!({ "value": v.to_string() }));
        }
        Command::Expand { n, tau, alpha, lambda } => {
            let p = params(n, &tau, &alpha)?;
            let lam: Partition = lambda.parse()?;
            println!("{}", okounkov_expand(&lam, &p)?.to_json());
        }
        Command::Eigenvalue { group, p, mu, x } => {
            let g = group.parse::<GroupData>()?.with_twist(p);
            let pr = group_params(&g);
            let mu: Partition = mu.parse()?;
            let v = shimura_eigenvalue(&mu, &parse_rational_list(&x)?, &g)?;
            println!(
                "{}",
                json!({
                    "eigenvalue": v.to_string(),
                    "k_mu": k_constant(&mu, &pr.tau).to_string(),
                    "tau": pr.tau.to_string(),
                    "alpha": pr.alpha.to_string(),
                })
            );
        }
        Command::Verify { suite, budget, seed } => {
            let report = run_suite(suite.parse::<Suite>()?, budget, seed)?;
            println!("{}", report.to_json());
            verify_outcome(&report)?;
        }
        Command::Region { kind, group, m, p, grid, max_weight, out } => {
            let kind: RegionKind = kind.parse()?;
            let g = match (group, m) {
                (Some(s), _) => s.parse::<GroupData>()?,
                (None, Some(m)) => GroupData::new(2, 2, m, 0)?,
                (None, None) => return Err(Failure::Usage("give --group or --m".into())),
            }
            .with_twist(p);
            let r = rasterize(kind, &g, grid, max_weight, None)?;
            write_file(&out, &r.to_csv())?;
        }
        Command::Contour { m, grid, out } => {
            write_file(&out, &trace_contour(m, grid)?.to_csv())?;
        }
        Command::Crossing { m } => {
            let c = crossing_point(m);
            println!(
                "{}",
                json!({ "c_m": c.c_m, "residual": c.residual, "monotone": c.monotone })
            );
        }
    }
    Ok(())
}

fn exit_code(r: &Result<(), Failure>) -> u8 {
    match r {
        Ok(()) => 0,
        Err(Failure::Checks) => 1,
        Err(Failure::Usage(_)) => 2,
        Err(Failure::Domain(_)) => 3,
        Err(Failure::Io(_)) => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = run(cli.command);
    if let Err(Failure::Usage(m) | Failure::Domain(m) | Failure::Io(m)) = &r {
        eprintln!("error: {m}");
    }
    ExitCode::from(exit_code(&r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_checks_exit_with_one() {
        let bad = SuiteReport {
            suite: "kmu".into(),
            checks: 2,
            failures: vec!["k_1 differs".into()],
        };
        assert_eq!(exit_code(&verify_outcome(&bad)), 1);
        let good = SuiteReport { failures: vec![], ..bad };
        assert_eq!(exit_code(&verify_outcome(&good)), 0);
    }

    #[test]
    fn error_classes() {
        assert_eq!(exit_code(&Err(Error::NotAPartition("1,2".into()).into())), 2);
        assert_eq!(exit_code(&Err(Error::Parse("x".into()).into())), 2);
        assert_eq!(exit_code(&Err(Error::Domain("x".into()).into())), 3);
        assert_eq!(exit_code(&Err(Error::SizeGuard { weight: 9, limit: 8 }.into())), 3);
        assert_eq!(exit_code(&Err(Failure::Io("x".into()))), 4);
    }
}
