use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use jacobi_core::diagram::RibbonGraph;
use jacobi_core::families::{pont_neuf, wheel};
use jacobi_core::genfunc::{k1_series, k2_series, k3_conjecture_coefficients, k3_lower_gf_coefficients};
use jacobi_core::linalg::independence_check;
use jacobi_core::partitions::{
    adm2_table, bound_checks, hr_estimate_p, ln_big, lower_bound_table, p2_from_table, partition_numbers,
};
use jacobi_core::weights::{cd_fast_with, cd_with, o_w_gl_with, DEFAULT_STATE_CAP};
use jacobi_core::{Diagram, PontNeufParams, StateSumOptions};

#[derive(Parser)]
#[command(name = "jacobi", version, about = "gl(N) weight systems of open Jacobi diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the top-weight polynomial (or its CD part) of a diagram file.
    Eval {
        #[arg(long)]
        diagram: PathBuf,
        /// Keep only the maximal-degree part.
        #[arg(long)]
        cd: bool,
        /// With --cd, fix proper vertices to +1 and double.
        #[arg(long, requires = "cd")]
        fast: bool,
        /// Refuse sums over more than B vertices (2^B states).
        #[arg(long, value_name = "B", default_value_t = DEFAULT_STATE_CAP)]
        max_states: usize,
        /// Worker threads; defaults to available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a wheel or Pont Neuf diagram file.
    Family {
        #[arg(long = "type", value_enum)]
        kind: FamilyKind,
        #[arg(long, required_if_eq("kind", "wheel"))]
        u: Option<usize>,
        /// Comma-separated a_1,...,a_k.
        #[arg(long, value_delimiter = ',', required_if_eq("kind", "pontneuf"))]
        a: Vec<u32>,
        #[arg(long, required_if_eq("kind", "pontneuf"))]
        b: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank and triangularity of the CD polynomials on S_{k,u}.
    Rank {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        u: u32,
    },
    /// LB(n) for 1 ≤ n ≤ N.
    Lb {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Partition counts with the Hardy-Ramanujan estimate.
    Partitions {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Series coefficients for k = 1, 2, 3 at even u ≤ U.
    Genfunc {
        #[arg(long)]
        max_u: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Upper-bound counts against n²p(n) and n³p(n).
    Bounds {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Wheel,
    Pontneuf,
}

/// Failures the core library did not raise.
#[derive(Debug)]
struct Internal(String);

impl std::fmt::Display for Internal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Internal {}

fn emit(out: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(|e| Internal(format!("{e:#}")).into()),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Internal(e.to_string()).into()),
    }
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| Internal(e.to_string()))?;
    Ok(String::from_utf8(bytes)?)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Eval { diagram, cd, fast, max_states, jobs, out } => {
            let text = fs::read_to_string(&diagram).with_context(|| format!("reading {}", diagram.display()))?;
            let d = Diagram::from_json(&text)?;
            let graph = RibbonGraph::new(&d)?;
            let opts = StateSumOptions { max_vertices: max_states, jobs };
            let poly = match (cd, fast) {
                (false, _) => o_w_gl_with(&graph, &opts)?,
                (true, false) => cd_with(&graph, &opts)?,
                (true, true) => cd_fast_with(&graph, &opts)?,
            };
            emit(out.as_ref(), &poly.to_json())
        }
        Command::Family { kind, u, a, b, out } => {
            let d = match kind {
                FamilyKind::Wheel => wheel(u.ok_or_else(|| anyhow!("--u is required"))?)?,
                FamilyKind::Pontneuf => {
                    let b = b.ok_or_else(|| anyhow!("--b is required"))?;
                    pont_neuf(&PontNeufParams::new(a, b)?)
                }
            };
            emit(out.as_ref(), &d.to_json())
        }
        Command::Rank { k, u } => {
            let r = independence_check(k, u)?;
            emit(None, &format!("{r}\n"))
        }
        Command::Lb { max_n, out } => {
            let lb = lower_bound_table(max_n);
            let rows = (1..=max_n).map(|n| vec![n.to_string(), lb[n].to_string()]);
            emit(out.as_ref(), &csv_text(&["n", "LB"], rows)?)
        }
        Command::Partitions { max_n, out } => {
            let p = partition_numbers(max_n);
            let adm = adm2_table(max_n);
            let lb = lower_bound_table(max_n);
            let rows = (1..=max_n).map(|n| {
                let hr = hr_estimate_p(n);
                let ratio = (hr.ln() - ln_big(&p[n])).exp();
                vec![
                    n.to_string(),
                    p[n].to_string(),
                    p2_from_table(&p, n).to_string(),
                    adm[n].to_string(),
                    lb[n].to_string(),
                    hr.to_string(),
                    ratio.to_string(),
                ]
            });
            emit(out.as_ref(), &csv_text(&["n", "p", "p2", "adm2", "LB", "hr_p", "ratio"], rows)?)
        }
        Command::Genfunc { max_u, out } => {
            let count = max_u + 1;
            let series = [
                ("k1", k1_series(count)),
                ("k2", k2_series(count)),
                ("k3_lower", k3_lower_gf_coefficients(count)),
                ("k3_conjecture", k3_conjecture_coefficients(count)),
            ];
            let us: Vec<String> = (0..=max_u).step_by(2).map(|u| u.to_string()).collect();
            let mut header = vec!["series"];
            header.extend(us.iter().map(String::as_str));
            let rows = series.iter().map(|(name, c)| {
                let mut r = vec![name.to_string()];
                r.extend(c.iter().step_by(2).map(|x| x.to_string()));
                r
            });
            emit(out.as_ref(), &csv_text(&header, rows)?)
        }
        Command::Bounds { max_n, out } => {
            let rows = bound_checks(max_n).into_iter().map(|c| {
                vec![
                    c.n.to_string(),
                    c.u.to_string(),
                    c.n2p.to_string(),
                    c.n2p_ok.to_string(),
                    c.cumulative.to_string(),
                    c.n3p.to_string(),
                    c.n3p_ok.to_string(),
                ]
            });
            let header = ["n", "U", "n2p", "U_le_n2p", "sum_U", "n3p", "sum_le_n3p"];
            emit(out.as_ref(), &csv_text(&header, rows)?)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Internal>().is_some() {
        return 4;
    }
    match e.downcast_ref::<jacobi_core::Error>() {
        Some(jacobi_core::Error::StateCapExceeded { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
