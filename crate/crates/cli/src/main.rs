use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use witt_core::cover::{build_cover, omega_annihilation_search, OmegaSampling};
use witt_core::pi::PiVariant;
use witt_core::suites::{certified_from_config, cover_summary, run_suite, RunConfig, SUITES};
use witt_core::tensor::dims_csv;

#[derive(Parser)]
#[command(
    name = "fpm",
    version,
    about = "Exact checks for Witt superalgebra modules"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite.
    Verify {
        /// Suite name (or use --suite).
        name: Option<String>,
        #[arg(long)]
        suite: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Build F(P, L(V1 ⊗ V2)): weight table and boundedness certificate.
    Build {
        #[command(flatten)]
        common: Common,
    },
    /// ω-annihilation search and the windowed A-cover.
    Cover {
        #[command(flatten)]
        common: Common,
    },
    /// Emit a dimension table.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    FpmDims,
    CoverDims,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    deg: u32,
    #[arg(long, default_value_t = 6)]
    window: u32,
    #[arg(long, default_value_t = 6)]
    rmax: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 500)]
    samples: usize,
    /// Even factors of P, comma separated: P, LmodP or L(a).
    #[arg(long)]
    p_spec: Option<String>,
    /// Highest weight of the gl_m-module, e.g. 1,0.
    #[arg(long)]
    v1: Option<String>,
    /// gl_n-module: a highest weight like 1,0 or laurent:1/2,-1/2@3.
    #[arg(long)]
    v2: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Use π without the (-1)^{|I|-1} factor.
    #[arg(long)]
    mutate_pi: bool,
    /// Include elapsed time in reports.
    #[arg(long)]
    timings: bool,
}

impl Common {
    fn config(&self) -> RunConfig {
        RunConfig {
            m: self.m,
            n: self.n,
            deg: self.deg,
            window: self.window,
            rmax: self.rmax,
            seed: self.seed,
            samples: self.samples,
            p_spec: self.p_spec.clone(),
            v1: self.v1.clone(),
            v2: self.v2.clone(),
            variant: if self.mutate_pi {
                PiVariant::DropSign
            } else {
                PiVariant::Exact
            },
        }
    }

    fn emit(&self, text: &str) -> Result<(), String> {
        match &self.out {
            Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

enum Outcome {
    Pass,
    Fail,
}

fn run(cli: Cli) -> Result<Outcome, String> {
    match cli.cmd {
        Cmd::Verify {
            name,
            suite,
            common,
        } => {
            let suite = name
                .or(suite)
                .ok_or_else(|| format!("missing suite; one of: {}", SUITES.join(", ")))?;
            let cfg = common.config();
            let mut report = run_suite(&suite, &cfg).map_err(|e| e.to_string())?;
            if !common.timings {
                report.elapsed_ms = None;
            }
            common.emit(&to_json(&report))?;
            Ok(if report.passed {
                Outcome::Pass
            } else {
                Outcome::Fail
            })
        }
        Cmd::Build { common }
        | Cmd::Table {
            kind: TableKind::FpmDims,
            common,
        } => {
            let cfg = common.config();
            let (f, cert) = certified_from_config(&cfg).map_err(|e| e.to_string())?;
            let rows = f.weight_dim_table();
            if rows.is_empty() {
                return Err("window has no interior vectors".into());
            }
            let text = match common.format.unwrap_or(Format::Csv) {
                Format::Csv => format!("weight,dim\n{}", dims_csv(&rows)),
                Format::Json => to_json(&json!({
                    "dims": format!("{},{}", cfg.m, cfg.n),
                    "table": rows
                        .iter()
                        .map(|r| json!({"weight": r.weight.to_string(), "dim": r.dim}))
                        .collect::<Vec<_>>(),
                    "certificate": cert,
                })),
            };
            common.emit(&text)?;
            if common.format.unwrap_or(Format::Csv) == Format::Csv {
                eprint!("{}", to_json(&cert));
            }
            Ok(match cert.verdict {
                witt_core::tensor::Verdict::Bounded => Outcome::Pass,
                witt_core::tensor::Verdict::Exceeded => Outcome::Fail,
            })
        }
        Cmd::Cover { common } => {
            let cfg = common.config();
            let (f, _) = certified_from_config(&cfg).map_err(|e| e.to_string())?;
            let s = cover_summary(&f, &cfg).map_err(|e| e.to_string())?;
            common.emit(&to_json(&s))?;
            Ok(if s.b_spanning && s.hat_relation && s.within_bound {
                Outcome::Pass
            } else {
                Outcome::Fail
            })
        }
        Cmd::Table {
            kind: TableKind::CoverDims,
            common,
        } => {
            let cfg = common.config();
            let (f, _) = certified_from_config(&cfg).map_err(|e| e.to_string())?;
            let sampling = OmegaSampling {
                seed: cfg.seed,
                ..Default::default()
            };
            let ann =
                omega_annihilation_search(&f, cfg.rmax, &sampling).map_err(|e| e.to_string())?;
            let c = build_cover(&f, cfg.window + 1).map_err(|e| e.to_string())?;
            let rows = c.rows();
            let text = match common.format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let mut t = String::from("weight,v_dim,cover_dim,reliable\n");
                    for r in &rows {
                        t.push_str(&format!(
                            "\"{}\",{},{},{}\n",
                            r.weight, r.v_dim, r.cover_dim, r.reliable
                        ));
                    }
                    eprint!("{}", to_json(&ann));
                    t
                }
                Format::Json => to_json(&json!({"annihilation": ann, "cover_dims": rows})),
            };
            common.emit(&text)?;
            Ok(if ann.minimal_r.is_some() {
                Outcome::Pass
            } else {
                Outcome::Fail
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = std::env::var("FPM_WORKERS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global();
    }
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
