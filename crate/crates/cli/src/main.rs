//! `linfram`: exact max-norm pattern-avoidance computations with verified,
//! re-checkable JSON artifacts.

mod artifacts;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use linf_ramsey::baton::Baton;
use linf_ramsey::colouring::{
    chi_report, colouring_from_partition, partition_search, periodic_colouring_for_baton,
    simplex_colouring, ChiSpace, ForbiddenSpace, PartitionSearchError,
};
use linf_ramsey::density::{
    alpha_tr, beta_tr, density_bounds, exact_density_line, Pattern, DEFAULT_BUDGET,
};
use linf_ramsey::geometry::GridSet;
use linf_ramsey::infinite::{
    geo_chi_lower_report, gq_prefix, standard_oracle_suite, thminf1_find, FindConfig, FindError,
    GridOracle,
};
use linf_ramsey::products::{
    alpha_power, bkm_alpha_degenerate, bkm_alpha_formula, bkm_witness, brute_alpha, BruteDomain,
    ProductSpace,
};
use linf_ramsey::rat::Rat;

use artifacts::{verify_artifact, Artifact};
use manifest::Runner;

#[derive(Parser)]
#[command(name = "linfram", version, about = "max-norm pattern-avoidance laboratory")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output directory (default: $LINF_RAMSEY_OUT or ./out).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for every randomized procedure.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node/query budget for searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Echo the artifact JSON to stdout.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Avoidance densities of integer patterns.
    Density {
        #[command(subcommand)]
        sub: DensityCmd,
    },
    /// Independence numbers of boxes, tori and products.
    Alpha {
        #[command(subcommand)]
        sub: AlphaCmd,
    },
    /// Chromatic-number bound reports.
    Chi {
        #[command(subcommand)]
        sub: ChiCmd,
    },
    /// Build and verify periodic colourings.
    Colour {
        #[command(subcommand)]
        sub: ColourCmd,
    },
    /// Geometric-progression prefixes and the monochromatic-copy finder.
    Geo {
        #[command(subcommand)]
        sub: GeoCmd,
    },
    /// Re-check any serialized certificate.
    Verify {
        #[arg(long)]
        certificate: PathBuf,
    },
}

#[derive(Subcommand)]
enum DensityCmd {
    /// Exact density of a rank-1 pattern.
    Exact {
        /// Pattern points as JSON, e.g. '[[0],[1],[3]]'.
        #[arg(long)]
        pattern: String,
    },
    /// Sandwich bounds from a modulus sweep.
    Bounds {
        #[arg(long)]
        pattern: String,
        #[arg(long, value_delimiter = ',')]
        m_list: Vec<u32>,
    },
}

#[derive(Subcommand)]
enum AlphaCmd {
    /// Maximum tr-free subset of the box {0..m-1}^t.
    Tr {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        m: u32,
    },
    /// Maximum residue set with tr-free periodic extension.
    Torus {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        m: u32,
    },
    /// Brute-force maximum copy-free subset.
    Brute {
        /// Full box domain side lengths, e.g. 3,3,3.
        #[arg(long, value_delimiter = ',', conflicts_with = "domain_product")]
        r#box: Vec<u32>,
        /// Product-space domain, e.g. '1,1x1,1'.
        #[arg(long)]
        domain_product: Option<String>,
        /// Forbidden product, factors joined by x, gaps by commas.
        #[arg(long)]
        forbidden: String,
    },
    /// alpha(X^n, B) via the one-dimensional independence number.
    Power {
        /// Base set, comma-separated rationals.
        #[arg(long, value_delimiter = ',')]
        x: Vec<String>,
        /// Baton gaps, comma-separated rationals.
        #[arg(long, value_delimiter = ',')]
        baton: Vec<String>,
        #[arg(long)]
        n: u32,
    },
    /// Closed-form independence number of progression powers.
    Bkm {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Also emit the extremal witness set.
        #[arg(long)]
        witness: bool,
    },
}

#[derive(Subcommand)]
enum ChiCmd {
    Report {
        /// Baton gaps, e.g. 1,1.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["power", "product"])]
        baton: Vec<String>,
        /// Power space k,m.
        #[arg(long, value_delimiter = ',')]
        power: Vec<u32>,
        /// Product space, e.g. '1x1,1'.
        #[arg(long)]
        product: Option<String>,
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', default_value = "")]
        m_list: Vec<u32>,
    },
}

#[derive(Subcommand)]
enum ColourCmd {
    /// Cover colouring for an integer baton.
    Build {
        #[arg(long, value_delimiter = ',')]
        baton: Vec<String>,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: u32,
    },
    /// Verify a colouring artifact.
    Verify {
        #[arg(long)]
        colouring: PathBuf,
    },
    /// Parity-class colouring against powers of the two-point space.
    Simplex {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
    },
    /// Search for a residue partition hit by every pattern placement.
    Partition {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        parts: u32,
        #[arg(long)]
        period: u32,
        /// Also emit the induced colouring in this dimension.
        #[arg(long)]
        dim: Option<usize>,
    },
}

#[derive(Subcommand)]
enum GeoCmd {
    /// Exact prefix of the geometric-progression set.
    Prefix {
        #[arg(long)]
        q: String,
        #[arg(long)]
        len: usize,
    },
    /// Find a monochromatic proper prefix against a grid oracle.
    Find {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1/2")]
        epsilon: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        len: usize,
        /// Oracle JSON file; otherwise a built-in oracle is used.
        #[arg(long)]
        oracle: Option<PathBuf>,
        /// Built-in oracle: stripes, checkerboard or random.
        #[arg(long, default_value = "checkerboard")]
        oracle_kind: String,
        #[arg(long, default_value_t = 2)]
        colours: u32,
    },
    /// Run the finder over an oracle suite and report the evidence.
    Report {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1/2")]
        epsilon: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        len: usize,
        #[arg(long, default_value_t = 10)]
        suite_size: usize,
        #[arg(long, default_value_t = 2)]
        colours: u32,
    },
}

enum Status {
    Ok,
    BudgetExhausted,
}

enum CliError {
    Input(String),
    Verification(String),
    Other(anyhow::Error),
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Other(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(64),
            };
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::BudgetExhausted) => ExitCode::from(3),
        Err(CliError::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(65)
        }
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn parse_rat(s: &str) -> Result<Rat, CliError> {
    s.parse()
        .map_err(|e| CliError::Input(format!("bad rational '{s}': {e}")))
}

fn parse_gaps(gaps: &[String]) -> Result<Baton, CliError> {
    let rats: Result<Vec<Rat>, CliError> = gaps.iter().map(|g| parse_rat(g)).collect();
    Baton::from_gaps(rats?).map_err(|e| CliError::Input(e.to_string()))
}

/// Factors joined by 'x', gaps by commas: "1,1x1" is B(1,1) x B(1).
fn parse_product(s: &str) -> Result<ProductSpace, CliError> {
    let factors: Result<Vec<Baton>, CliError> = s
        .split('x')
        .map(|f| {
            let gaps: Vec<String> = f.split(',').map(str::to_owned).collect();
            parse_gaps(&gaps)
        })
        .collect();
    ProductSpace::new(factors?).map_err(|e| CliError::Input(e.to_string()))
}

fn parse_pattern(json: &str) -> Result<Pattern, CliError> {
    let points: Vec<Vec<i64>> = serde_json::from_str(json)
        .map_err(|e| CliError::Input(format!("bad pattern JSON: {e}")))?;
    Pattern::new(points).map_err(|e| CliError::Input(e.to_string()))
}

fn other<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Other(anyhow::anyhow!("{e}"))
}

fn run(cli: Cli) -> Result<Status, CliError> {
    let out_dir = cli
        .common
        .out
        .clone()
        .or_else(|| std::env::var_os("LINF_RAMSEY_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));
    let mut runner = Runner::new(out_dir, cli.common.seed, cli.common.budget, cli.common.json)
        .map_err(CliError::Other)?;
    let status = dispatch(&cli, &mut runner)?;
    runner.finish().map_err(CliError::Other)?;
    Ok(status)
}

fn dispatch(cli: &Cli, runner: &mut Runner) -> Result<Status, CliError> {
    let seed = cli.common.seed;
    let budget = cli.common.budget;
    match &cli.cmd {
        Cmd::Density { sub } => match sub {
            DensityCmd::Exact { pattern } => {
                let p = parse_pattern(pattern)?;
                let result = exact_density_line(&p).map_err(other)?;
                println!(
                    "exact density: {}",
                    result.exact.as_ref().expect("exact by contract")
                );
                runner
                    .write_artifact(
                        "density_exact.json",
                        &Artifact::DensityExact { pattern: p, result },
                    )
                    .map_err(CliError::Other)?;
                Ok(Status::Ok)
            }
            DensityCmd::Bounds { pattern, m_list } => {
                let p = parse_pattern(pattern)?;
                let result = density_bounds(&p, m_list, budget).map_err(other)?;
                println!(
                    "bounds: {} .. {}{}",
                    result.lower,
                    result.upper,
                    if result.exact.is_some() { " (exact)" } else { "" }
                );
                let status = if result.all_optimal {
                    Status::Ok
                } else {
                    Status::BudgetExhausted
                };
                runner
                    .write_artifact(
                        "density_bounds.json",
                        &Artifact::DensityBounds {
                            pattern: p,
                            m_list: m_list.clone(),
                            result,
                        },
                    )
                    .map_err(CliError::Other)?;
                Ok(status)
            }
        },
        Cmd::Alpha { sub } => alpha_cmd(sub, runner, budget),
        Cmd::Chi { sub } => {
            let ChiCmd::Report {
                baton,
                power,
                product,
                n,
                m_list,
            } = sub;
            let space = if !baton.is_empty() {
                ChiSpace::Baton(parse_gaps(baton)?)
            } else if !power.is_empty() {
                if power.len() != 2 {
                    return Err(CliError::Input("--power needs k,m".into()));
                }
                ChiSpace::Power {
                    k: power[0],
                    m: power[1],
                }
            } else if let Some(p) = product {
                ChiSpace::Product(parse_product(p)?)
            } else {
                return Err(CliError::Input(
                    "one of --baton, --power, --product required".into(),
                ));
            };
            let bounds = chi_report(&space, *n, m_list, seed).map_err(other)?;
            match &bounds.upper {
                Some(u) => println!("chi bounds at n={n}: {} .. {}", bounds.lower, u),
                None => println!("chi lower bound at n={n}: {}", bounds.lower),
            }
            runner
                .write_artifact(
                    "chi_report.json",
                    &Artifact::ChiReport {
                        space,
                        m_list: m_list.clone(),
                        bounds,
                    },
                )
                .map_err(CliError::Other)?;
            Ok(Status::Ok)
        }
        Cmd::Colour { sub } => colour_cmd(sub, runner, seed, budget),
        Cmd::Geo { sub } => geo_cmd(sub, runner, seed, budget),
        Cmd::Verify { certificate } => {
            let bytes = runner.record_input(certificate).map_err(CliError::Other)?;
            let artifact: Artifact = serde_json::from_slice(&bytes)
                .map_err(|e| CliError::Input(format!("bad certificate JSON: {e}")))?;
            match verify_artifact(&artifact) {
                Ok(()) => {
                    println!("certificate verified");
                    Ok(Status::Ok)
                }
                Err(msg) => Err(CliError::Verification(msg)),
            }
        }
    }
}

fn alpha_cmd(sub: &AlphaCmd, runner: &mut Runner, budget: u64) -> Result<Status, CliError> {
    match sub {
        AlphaCmd::Tr { pattern, m } => {
            let p = parse_pattern(pattern)?;
            let out = alpha_tr(*m, &p, budget).map_err(other)?;
            println!("alpha_tr({m}) = {}{}", out.size, opt_tag(out.optimal));
            let status = status_of(out.optimal);
            runner
                .write_artifact(
                    "alpha_box.json",
                    &Artifact::AlphaBox {
                        pattern: p,
                        m: *m,
                        size: out.size,
                        witness: out.witness,
                        optimal: out.optimal,
                    },
                )
                .map_err(CliError::Other)?;
            Ok(status)
        }
        AlphaCmd::Torus { pattern, m } => {
            let p = parse_pattern(pattern)?;
            let out = beta_tr(*m, &p, budget).map_err(other)?;
            println!("beta_tr({m}) = {}{}", out.size, opt_tag(out.optimal));
            let status = status_of(out.optimal);
            runner
                .write_artifact(
                    "alpha_torus.json",
                    &Artifact::AlphaTorus {
                        pattern: p,
                        m: *m,
                        size: out.size,
                        witness: out.witness,
                        optimal: out.optimal,
                    },
                )
                .map_err(CliError::Other)?;
            Ok(status)
        }
        AlphaCmd::Brute {
            r#box,
            domain_product,
            forbidden,
        } => {
            let domain = if let Some(dp) = domain_product {
                BruteDomain::Product(parse_product(dp)?)
            } else if !r#box.is_empty() {
                BruteDomain::Grid(GridSet::full_box(r#box.clone()))
            } else {
                return Err(CliError::Input("--box or --domain-product required".into()));
            };
            let forbidden = parse_product(forbidden)?;
            let out = brute_alpha(&domain, &forbidden, budget).map_err(other)?;
            if !artifacts::brute_witness_ok(&forbidden, &out.witness) {
                return Err(CliError::Verification(
                    "brute witness contains a forbidden copy".into(),
                ));
            }
            println!(
                "brute alpha = {} over {} copies{}",
                out.size,
                out.copies,
                opt_tag(out.optimal)
            );
            let status = status_of(out.optimal);
            runner
                .write_artifact(
                    "brute_alpha.json",
                    &Artifact::BruteAlpha {
                        domain,
                        forbidden,
                        outcome: out,
                    },
                )
                .map_err(CliError::Other)?;
            Ok(status)
        }
        AlphaCmd::Power { x, baton, n } => {
            let xs: Result<Vec<Rat>, CliError> = x.iter().map(|s| parse_rat(s)).collect();
            let xs = xs?;
            let b = parse_gaps(baton)?;
            let value = alpha_power(&xs, &b, *n).map_err(other)?;
            println!("alpha power = {value}");
            runner
                .write_artifact(
                    "alpha_power.json",
                    &Artifact::AlphaPower {
                        x: xs,
                        baton: b,
                        n: *n,
                        value: value.to_string(),
                    },
                )
                .map_err(CliError::Other)?;
            Ok(Status::Ok)
        }
        AlphaCmd::Bkm { k, m, n, witness } => {
            let (value, degenerate, w) = if *k == 1 {
                (bkm_alpha_degenerate(*m, *n).map_err(other)?, true, None)
            } else {
                let v = bkm_alpha_formula(*k, *m, *n).map_err(other)?;
                let w = witness
                    .then(|| bkm_witness(*k, *m, *n))
                    .transpose()
                    .map_err(other)?;
                (v, false, w)
            };
            println!("alpha = {value}");
            if let Some(w) = &w {
                println!("witness: {} points", w.len());
            }
            runner
                .write_artifact(
                    "bkm.json",
                    &Artifact::Bkm {
                        k: *k,
                        m: *m,
                        n: *n,
                        value: value.to_string(),
                        degenerate,
                        witness: w,
                    },
                )
                .map_err(CliError::Other)?;
            Ok(Status::Ok)
        }
    }
}

fn colour_cmd(
    sub: &ColourCmd,
    runner: &mut Runner,
    seed: u64,
    budget: u64,
) -> Result<Status, CliError> {
    match sub {
        ColourCmd::Build { baton, m, n, trials } => {
            let b = parse_gaps(baton)?;
            let (colouring, cover) =
                periodic_colouring_for_baton(&b, *m, *n, seed, *trials).map_err(other)?;
            println!(
                "colouring: {} colours, period {m}, verified proper",
                colouring.colour_count()
            );
            runner
                .write_artifact(
                    "colouring.json",
                    &Artifact::Colouring {
                        colouring,
                        forbidden: ForbiddenSpace::Baton(b),
                        cover: Some(cover),
                    },
                )
                .map_err(CliError::Other)?;
            Ok(Status::Ok)
        }
        ColourCmd::Verify { colouring } => {
            let bytes = runner.record_input(colouring).map_err(CliError::Other)?;
            let artifact: Artifact = serde_json::from_slice(&bytes)
                .map_err(|e| CliError::Input(format!("bad colouring JSON: {e}")))?;
            if !matches!(artifact, Artifact::Colouring { .. }) {
                return Err(CliError::Input("not a colouring artifact".into()));
            }
            match verify_artifact(&artifact) {
                Ok(()) => {
                    println!("colouring verified proper");
                    Ok(Status::Ok)
                }
                Err(msg) => Err(CliError::Verification(msg)),
            }
        }
        ColourCmd::Simplex { n, m } => {
            let colouring = simplex_colouring(*n, *m).map_err(other)?;
            println!(
                "simplex colouring: {} colours, verified proper",
                colouring.colour_count()
            );
            let forbidden = ForbiddenSpace::Product(
                ProductSpace::power(Baton::unit(1), *m as usize).map_err(other)?,
            );
            runner
                .write_artifact(
                    "colouring.json",
                    &Artifact::Colouring {
                        colouring,
                        forbidden,
                        cover: None,
                    },
                )
                .map_err(CliError::Other)?;
            Ok(Status::Ok)
        }
        ColourCmd::Partition {
            pattern,
            parts,
            period,
            dim,
        } => {
            let p = parse_pattern(pattern)?;
            match partition_search(&p, *parts, *period, seed, budget) {
                Ok(cert) => {
                    println!("partition found and verified over {period} residues");
                    if let Some(n) = dim {
                        let colouring = colouring_from_partition(&cert, *n).map_err(other)?;
                        let pts = p.line_points().expect("rank checked in search");
                        let gaps: Vec<Rat> =
                            pts.windows(2).map(|w| Rat::int(w[1] - w[0])).collect();
                        let baton = Baton::from_gaps(gaps).map_err(other)?;
                        runner
                            .write_artifact(
                                "colouring.json",
                                &Artifact::Colouring {
                                    colouring,
                                    forbidden: ForbiddenSpace::Baton(baton),
                                    cover: None,
                                },
                            )
                            .map_err(CliError::Other)?;
                    }
                    runner
                        .write_artifact("partition.json", &Artifact::Partition { certificate: cert })
                        .map_err(CliError::Other)?;
                    Ok(Status::Ok)
                }
                Err(PartitionSearchError::NotFound { best_energy }) => {
                    eprintln!("no certificate within budget (best energy {best_energy})");
                    Ok(Status::BudgetExhausted)
                }
                Err(e) => Err(other(e)),
            }
        }
    }
}

fn geo_cmd(
    sub: &GeoCmd,
    runner: &mut Runner,
    seed: u64,
    budget: u64,
) -> Result<Status, CliError> {
    match sub {
        GeoCmd::Prefix { q, len } => {
            let q = parse_rat(q)?;
            let progression = gq_prefix(&q, *len).map_err(other)?;
            println!(
                "prefix: {}",
                progression
                    .points
                    .iter()
                    .map(Rat::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            runner
                .write_artifact("geo_prefix.json", &Artifact::GeoPrefix { progression })
                .map_err(CliError::Other)?;
            Ok(Status::Ok)
        }
        GeoCmd::Find {
            n,
            epsilon,
            q,
            len,
            oracle,
            oracle_kind,
            colours,
        } => {
            let epsilon = parse_rat(epsilon)?;
            let q = parse_rat(q)?;
            let oracle = match oracle {
                Some(path) => {
                    let bytes = runner.record_input(path).map_err(CliError::Other)?;
                    serde_json::from_slice::<GridOracle>(&bytes)
                        .map_err(|e| CliError::Input(format!("bad oracle JSON: {e}")))?
                }
                None => built_in_oracle(oracle_kind, *n, &epsilon, *colours, seed)?,
            };
            let config = FindConfig {
                n: *n,
                epsilon,
                q,
                prefix_len: *len,
                query_budget: budget,
            };
            match thminf1_find(&oracle, &config) {
                Ok(outcome) => {
                    println!(
                        "found {} monochromatic points (colour {}, direction {}) in {} queries",
                        outcome.points.len(),
                        outcome.colour,
                        outcome.direction,
                        outcome.transcript.queries
                    );
                    runner
                        .write_artifact(
                            "geo_find.json",
                            &Artifact::GeoFind {
                                oracle,
                                config,
                                outcome,
                            },
                        )
                        .map_err(CliError::Other)?;
                    Ok(Status::Ok)
                }
                Err(FindError::BudgetExceeded { queries, .. }) => {
                    eprintln!("query budget exhausted after {queries} queries");
                    Ok(Status::BudgetExhausted)
                }
                Err(e) => Err(other(e)),
            }
        }
        GeoCmd::Report {
            n,
            epsilon,
            q,
            len,
            suite_size,
            colours,
        } => {
            let epsilon = parse_rat(epsilon)?;
            let q = parse_rat(q)?;
            let config = FindConfig {
                n: *n,
                epsilon: epsilon.clone(),
                q,
                prefix_len: *len,
                query_budget: budget,
            };
            let suite = standard_oracle_suite(*n, &epsilon, *colours, *suite_size, seed);
            let report = geo_chi_lower_report(&config, &suite).map_err(other)?;
            println!(
                "{}/{} oracles yielded a monochromatic proper prefix",
                report.runs.iter().filter(|r| r.found).count(),
                report.runs.len()
            );
            let status = if report.all_found {
                Status::Ok
            } else {
                Status::BudgetExhausted
            };
            runner
                .write_artifact(
                    "geo_report.json",
                    &Artifact::GeoReport {
                        config,
                        suite,
                        report,
                    },
                )
                .map_err(CliError::Other)?;
            Ok(status)
        }
    }
}

fn built_in_oracle(
    kind: &str,
    n: usize,
    epsilon: &Rat,
    colours: u32,
    seed: u64,
) -> Result<GridOracle, CliError> {
    match kind {
        "stripes" => GridOracle::stripes(n, epsilon.clone(), colours, 0, Rat::new(1, 4)),
        "checkerboard" => GridOracle::checkerboard(n, epsilon.clone(), colours, Rat::new(1, 4)),
        "random" => GridOracle::random_boxes(n, epsilon.clone(), colours, 6, seed),
        _ => {
            return Err(CliError::Input(format!(
                "unknown oracle kind '{kind}' (stripes, checkerboard, random)"
            )))
        }
    }
    .map_err(|e| CliError::Input(e.to_string()))
}

fn opt_tag(optimal: bool) -> &'static str {
    if optimal {
        ""
    } else {
        " (budget exhausted; lower bound only)"
    }
}

fn status_of(optimal: bool) -> Status {
    if optimal {
        Status::Ok
    } else {
        Status::BudgetExhausted
    }
}
