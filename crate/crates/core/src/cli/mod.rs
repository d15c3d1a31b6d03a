//! Command-line front end. [`run`] turns parsed arguments into an exit code
//! and a rendered output, so the binary is a thin wrapper.

mod profile;
mod table;

pub use profile::ProfileArg;
pub use table::{fmt_num, Table};

use crate::decide::{decide_fixed_point_with, DecideOptions};
use crate::funcalg::QuadratureConfig;
use crate::grid::LogGrid;
use crate::operators::{default_radius_grid, maximal_radial, oneil_bracket, riesz_radial, tail_t};
use crate::rearrange::{doublestar, DecreasingProfile, RadialProfile};
use crate::spaces::{dilation_function, fundamental_indices, norm, SpaceDescriptor};
use crate::verify::{self, VerificationReport};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "rifix", version, about = "Fixed points of the maximal operator in r.i. spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, Args)]
pub struct Output {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether X(ℝⁿ) contains a non-constant fixed point of M.
    Decide {
        #[arg(long = "n")]
        n: usize,
        #[arg(long)]
        space: String,
        /// Self-improvement margin of a Lambda weight, w ∈ B_(p-ε).
        #[arg(long)]
        epsilon: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Tabulate f* and f** of a profile.
    Rearrange {
        #[arg(long = "n")]
        n: Option<usize>,
        #[arg(long)]
        profile: String,
        #[arg(long, default_value = "log:1e-2:1e4:16")]
        grid: LogGrid,
        /// Extra evaluation points.
        #[arg(long = "at", value_delimiter = ',')]
        at: Vec<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// ‖f‖_X of a profile.
    Norm {
        #[arg(long = "n")]
        n: Option<usize>,
        #[arg(long)]
        space: String,
        #[arg(long)]
        profile: String,
        #[command(flatten)]
        output: Output,
    },
    /// Fundamental indices and a table of M_X(s).
    Indices {
        #[arg(long = "n")]
        n: Option<usize>,
        #[arg(long)]
        space: String,
        #[command(flatten)]
        output: Output,
    },
    /// Grid lower bound of the maximal function of a radial profile.
    Maximal {
        #[arg(long = "n")]
        n: usize,
        #[arg(long)]
        profile: String,
        /// Centers |x|.
        #[arg(long, default_value = "log:0.1:10:8")]
        grid: LogGrid,
        /// Radii; defaults to 64 points per decade on [1e-3, 1e3].
        #[arg(long)]
        r_grid: Option<LogGrid>,
        #[command(flatten)]
        output: Output,
    },
    /// The Riesz potential I₂f of a radial profile.
    Riesz {
        #[arg(long = "n")]
        n: usize,
        #[arg(long)]
        profile: String,
        #[arg(long, default_value = "log:0.1:10:8")]
        grid: LogGrid,
        #[command(flatten)]
        output: Output,
    },
    /// The tail functional T f(t) next to the O'Neil bracket.
    Tail {
        #[arg(long = "n")]
        n: usize,
        #[arg(long)]
        profile: String,
        #[arg(long, default_value = "log:1e-2:1e4:8")]
        grid: LogGrid,
        #[command(flatten)]
        output: Output,
    },
    /// Numerical verification reports.
    Verify {
        check: Check,
        #[arg(long = "n")]
        n: usize,
        /// Space for lemma-phi and embedding; all defaults otherwise.
        #[arg(long)]
        space: Option<String>,
        /// Profile for superharmonic and oneil; all defaults otherwise.
        #[arg(long)]
        profile: Option<String>,
        /// Overrides the check tolerance (superharmonic, embedding).
        #[arg(long)]
        tol: Option<f64>,
        /// Equivalence-constant ceiling for oneil and lemma-phi.
        #[arg(long, default_value_t = 10.0)]
        ceiling: f64,
        /// Evaluation grid (ρ for superharmonic, t for oneil).
        #[arg(long)]
        grid: Option<LogGrid>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Superharmonic,
    Oneil,
    LemmaPhi,
    Embedding,
    All,
}

/// Exit status and rendered output of one command.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub body: String,
    pub out: Option<PathBuf>,
}

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

fn render<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("outputs serialize");
    s.push('\n');
    s
}

fn grid_with(grid: &LogGrid, extra: &[f64]) -> Result<Vec<f64>> {
    let mut pts = grid.points();
    for &t in extra {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::descriptor("at", format!("evaluation points must be positive, got {t}")));
        }
        pts.push(t);
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    Ok(pts)
}

fn table_output(table: &Table, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => render(table),
    }
}

/// Runs one command. Errors are returned, not printed; see [`main_with`].
pub fn run(cli: &Cli) -> Result<Outcome> {
    let cfg = QuadratureConfig::default();
    let (code, body, output) = match &cli.command {
        Command::Decide {
            n,
            space,
            epsilon,
            output,
        } => {
            let x = SpaceDescriptor::parse(space, Some(*n))?;
            let opts = DecideOptions {
                with_indices: *n >= 3,
                epsilon: *epsilon,
            };
            let d = decide_fixed_point_with(*n, &x, &opts)?;
            let code = if d.verdict.exists() { EXIT_YES } else { EXIT_NO };
            let body = match output.format.unwrap_or_default() {
                Format::Json => render(&d),
                Format::Csv => {
                    let w = &d.witnesses;
                    let mut t = Table::new(&["exists", "norm_h", "beta_lower", "beta_upper", "threshold"]);
                    let opt = |v: Option<f64>| v.unwrap_or(f64::NAN);
                    t.push(vec![
                        if d.verdict.exists() { 1.0 } else { 0.0 },
                        opt(w.norm_h),
                        opt(w.beta_lower),
                        opt(w.beta_upper),
                        opt(w.threshold),
                    ]);
                    t.to_csv()
                }
            };
            (code, body, output)
        }
        Command::Rearrange {
            n,
            profile,
            grid,
            at,
            output,
        } => {
            let d = ProfileArg::parse(profile, *n)?.decreasing(*n, true)?;
            let mut t = Table::new(&["t", "f_star", "f_double_star"]);
            for s in grid_with(grid, at)? {
                let dd = doublestar(&d, s).unwrap_or(f64::INFINITY);
                t.push(vec![s, d.value(s), dd]);
            }
            (EXIT_YES, table_output(&t, output.format.unwrap_or(Format::Csv)), output)
        }
        Command::Norm {
            n,
            space,
            profile,
            output,
        } => {
            let x = SpaceDescriptor::parse(space, *n)?;
            let d = ProfileArg::parse(profile, *n)?.decreasing(*n, false)?;
            let v = norm(&x, &d)?;
            let mut t = Table::new(&["norm"]);
            t.push(vec![v]);
            let body = match output.format.unwrap_or_default() {
                Format::Csv => t.to_csv(),
                Format::Json => render(&NormOutput {
                    space: x.kind(),
                    norm: v,
                }),
            };
            (EXIT_YES, body, output)
        }
        Command::Indices { n, space, output } => {
            let x = SpaceDescriptor::parse(space, *n)?;
            let body = match output.format.unwrap_or_default() {
                Format::Json => render(&fundamental_indices(&x)?),
                Format::Csv => {
                    let mut t = Table::new(&["s", "m_x", "log_ratio"]);
                    for k in (-40..=40).filter(|&k| k != 0) {
                        let s = (k as f64).exp2();
                        let m = dilation_function(&x, s)?.value;
                        t.push(vec![s, m, m.ln() / s.ln()]);
                    }
                    t.to_csv()
                }
            };
            (EXIT_YES, body, output)
        }
        Command::Maximal {
            n,
            profile,
            grid,
            r_grid,
            output,
        } => {
            let f = ProfileArg::parse(profile, Some(*n))?.radial(*n)?;
            let radii = r_grid.unwrap_or_else(default_radius_grid);
            let mut t = Table::new(&["rho", "maximal_lower_bound", "f_rho", "argmax_r"]);
            for rho in grid.points() {
                let rep = maximal_radial(f.as_ref(), rho, &radii, &cfg)?;
                // argmax 0 marks the small-ball limit
                t.push(vec![rho, rep.value, rep.center_value, rep.argmax_r.unwrap_or(0.0)]);
            }
            (EXIT_YES, table_output(&t, output.format.unwrap_or(Format::Csv)), output)
        }
        Command::Riesz {
            n,
            profile,
            grid,
            output,
        } => {
            let f: RadialProfile = ProfileArg::parse(profile, Some(*n))?.radial_profile(*n)?;
            let mut t = Table::new(&["rho", "riesz"]);
            for rho in grid.points() {
                t.push(vec![rho, riesz_radial(&f, rho, &cfg)?]);
            }
            (EXIT_YES, table_output(&t, output.format.unwrap_or(Format::Csv)), output)
        }
        Command::Tail {
            n,
            profile,
            grid,
            output,
        } => {
            let d: DecreasingProfile = ProfileArg::parse(profile, Some(*n))?.decreasing(Some(*n), false)?;
            let mut t = Table::new(&["t", "tail_t", "oneil_bracket"]);
            for s in grid.points() {
                t.push(vec![s, tail_t(&d, s, *n, &cfg)?, oneil_bracket(&d, s, *n, &cfg)?]);
            }
            (EXIT_YES, table_output(&t, output.format.unwrap_or(Format::Csv)), output)
        }
        Command::Verify {
            check,
            n,
            space,
            profile,
            tol,
            ceiling,
            grid,
            output,
        } => {
            let reports = run_verify(*check, *n, space.as_deref(), profile.as_deref(), *tol, *ceiling, grid.as_ref())?;
            let pass = reports.iter().all(|r| r.pass);
            let body = match output.format.unwrap_or_default() {
                Format::Json => render(&VerifyOutput {
                    pass,
                    reports: &reports,
                }),
                Format::Csv => reports
                    .iter()
                    .map(|r| {
                        Table {
                            columns: r.columns.clone(),
                            rows: r.rows.clone(),
                        }
                        .to_csv_prefixed(Some(&r.name))
                    })
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            (if pass { EXIT_YES } else { EXIT_NO }, body, output)
        }
    };
    Ok(Outcome {
        code,
        body,
        out: output.out.clone(),
    })
}

#[derive(Serialize)]
struct NormOutput {
    space: &'static str,
    #[serde(with = "crate::serde_ext")]
    norm: f64,
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    pass: bool,
    reports: &'a [VerificationReport],
}

fn run_verify(
    check: Check,
    n: usize,
    space: Option<&str>,
    profile: Option<&str>,
    tol: Option<f64>,
    ceiling: f64,
    grid: Option<&LogGrid>,
) -> Result<Vec<VerificationReport>> {
    let cfg = QuadratureConfig::default();
    let space = space.map(|s| SpaceDescriptor::parse(s, Some(n))).transpose()?;
    let profile = profile.map(|p| ProfileArg::parse(p, Some(n))).transpose()?;
    let spaces = || -> Result<Vec<SpaceDescriptor>> {
        Ok(match &space {
            Some(x) => vec![x.clone()],
            None => vec![
                SpaceDescriptor::minimal(n)?,
                SpaceDescriptor::lebesgue(4.0)?,
                SpaceDescriptor::lorentz(n as f64 / (n as f64 - 2.0), f64::INFINITY)?,
            ],
        })
    };
    match check {
        Check::All => {
            if space.is_some() || profile.is_some() {
                return Err(Error::descriptor("check", "`all` runs the default corpus; drop --space/--profile"));
            }
            verify::check_all(n, &cfg)
        }
        Check::Superharmonic => {
            let (default_rho, r) = verify::default_superharmonic_grids();
            let rho = grid.copied().unwrap_or(default_rho);
            let sh = verify::SuperharmonicConfig {
                tol: tol.unwrap_or(1e-6),
                ..verify::SuperharmonicConfig::default()
            };
            let candidates = match &profile {
                Some(p) => vec![p.radial(n)?],
                None => vec![
                    ProfileArg::parse("F", Some(n))?.radial(n)?,
                    ProfileArg::RieszBall(n).radial(n)?,
                ],
            };
            candidates
                .iter()
                .map(|f| verify::check_superharmonic(f.as_ref(), &rho, &r, &sh))
                .collect()
        }
        Check::Oneil => {
            let t_grid = match grid {
                Some(g) => *g,
                None => LogGrid::per_decade(1e-2, 1e4, 8.0)?,
            };
            let corpus = match &profile {
                Some(p) => vec![p.decreasing(Some(n), false)?],
                None => vec![
                    DecreasingProfile::indicator(1.0)?,
                    DecreasingProfile::steps(&[1.0, 4.0], &[1.0, 0.5])?,
                ],
            };
            corpus
                .iter()
                .map(|d| verify::check_oneil(d, n, &t_grid, ceiling, &cfg))
                .collect()
        }
        Check::LemmaPhi => {
            if n <= 2 {
                return Err(Error::dimension(n, "the fundamental-function lemma needs n ≥ 3"));
            }
            let s_grid = verify::default_lemma_s_grid();
            spaces()?
                .iter()
                .map(|x| verify::check_lemma_phi(x, n, &s_grid, ceiling, &cfg))
                .collect()
        }
        Check::Embedding => {
            let corpus = verify::embedding_corpus(n)?;
            spaces()?
                .iter()
                .map(|x| verify::check_embedding(n, x, &corpus, tol.unwrap_or(1e-9)))
                .collect()
        }
    }
}

/// Entry point used by the binary: parses `args`, runs, writes the output
/// and returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_YES };
        }
    };
    match run(&cli) {
        Ok(outcome) => match &outcome.out {
            Some(path) => match std::fs::write(path, &outcome.body) {
                Ok(()) => outcome.code,
                Err(e) => {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    EXIT_ERROR
                }
            },
            None => {
                print!("{}", outcome.body);
                outcome.code
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
