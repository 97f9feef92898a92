//! The `stab` command line: JSON in, JSON out.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 on usage or input
//! errors (reported as `{"error": ...}` on standard error).

pub mod checks;

use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde::Serialize;
use serde_json::json;

use stab_core::cohsys::{self, SystemType};
use stab_core::gale;
use stab_core::gitstab::{self, ORACLE_MAX_POINTS};
use stab_core::modhyp::{
    duality_check, extra_singular_points, geometric_incidence, igusa_lines, igusa_points, igusa_quartic,
    incidence_15_3, matching_label, node_hessian_rank, pair_label, segre_cubic, segre_nodes, splits_3_3,
    verify_singular_point, AmbientPoint,
};
use stab_core::scalar::{format_scalar, parse_scalar, serde_scalar, serde_scalar_vec};
use stab_core::{PointConfiguration, Scalar, Witness};

/// Environment variable overriding the oracle's point cap.
pub const MAX_SUBSET_ENV: &str = "STAB_MAX_SUBSET_SIZE";

#[derive(Debug, Parser)]
#[command(name = "stab", version, about = "Exact stability computations for point configurations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a configuration as stable, strictly semistable or unstable.
    GitClassify {
        #[arg(long, value_parser = rational)]
        g: Scalar,
        #[command(flatten)]
        input: InputArg,
        /// Use the exhaustive subset enumeration instead of the flat search.
        #[arg(long)]
        oracle: bool,
    },
    /// Positive critical values of alpha for a system type.
    CriticalValues {
        #[arg(short)]
        r: u64,
        #[arg(short)]
        d: u64,
        #[arg(short)]
        k: u64,
    },
    /// Alpha-(semi)stability of the coherent system attached to a configuration.
    AlphaCheck {
        #[arg(long, value_parser = rational)]
        g: Scalar,
        #[arg(long, value_parser = rational)]
        alpha: Scalar,
        #[command(flatten)]
        input: InputArg,
    },
    /// Compare GIT and alpha-stability just above the stabilization threshold.
    Equivalence {
        #[arg(long)]
        g: u64,
        #[command(flatten)]
        input: InputArg,
    },
    /// Emit the destabilizing configuration of a given genus.
    DestableExample {
        #[arg(long)]
        genus: u64,
        #[arg(long, value_delimiter = ',', value_parser = rational)]
        lambdas: Option<Vec<Scalar>>,
    },
    /// Gale transform of a configuration.
    Gale {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Checks on the Segre cubic and the Igusa quartic.
    Hypersurface {
        #[command(subcommand)]
        action: HypersurfaceAction,
    },
    /// The 15_3 configuration, abstract and on the Igusa quartic.
    Incidence,
    /// Run every check.
    VerifyAll {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// Configuration JSON file, or `-` for standard input.
    #[arg(long)]
    pub input: String,
}

#[derive(Debug, Subcommand)]
pub enum HypersurfaceAction {
    Verify {
        target: Target,
        /// Random search points (segre) or sampled points (duality).
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Segre,
    Igusa,
    Duality,
}

fn rational(s: &str) -> Result<Scalar, String> {
    parse_scalar(s).map_err(|e| e.to_string())
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn json<T: Serialize>(value: &T, passed: bool) -> Self {
        let text = serde_json::to_string(value).expect("output serializes");
        Self { code: if passed { 0 } else { 1 }, stdout: text + "\n", stderr: String::new() }
    }

    fn usage(message: impl std::fmt::Display) -> Self {
        let text = json!({ "error": message.to_string() }).to_string();
        Self { code: 2, stdout: String::new(), stderr: text + "\n" }
    }
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type CmdResult = Result<Outcome, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command).unwrap_or_else(|Failure(msg)| Outcome::usage(msg)),
        Err(e) if !e.use_stderr() => Outcome { code: 0, stdout: e.to_string(), stderr: String::new() },
        Err(e) => Outcome::usage(e.render().to_string().trim_end()),
    }
}

fn read_config(input: &InputArg) -> Result<PointConfiguration, Failure> {
    let text = if input.input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure(format!("reading standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(&input.input).map_err(|e| Failure(format!("reading {}: {e}", input.input)))?
    };
    serde_json::from_str(&text).map_err(|e| Failure(format!("invalid configuration: {e}")))
}

fn oracle_cap() -> Result<usize, Failure> {
    match std::env::var(MAX_SUBSET_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(ORACLE_MAX_POINTS),
        Ok(v) => v.trim().parse().map_err(|_| Failure(format!("{MAX_SUBSET_ENV} must be a nonnegative integer, got {v:?}"))),
        Err(e) => Err(Failure(format!("{MAX_SUBSET_ENV}: {e}"))),
    }
}

fn strings(xs: &[Scalar]) -> Vec<String> {
    xs.iter().map(format_scalar).collect()
}

fn point_strings(p: &AmbientPoint) -> Vec<String> {
    strings(&p.to_scalars())
}

fn execute(command: Command) -> CmdResult {
    match command {
        Command::GitClassify { g, input, oracle } => git_classify(&read_config(&input)?, &g, oracle),
        Command::CriticalValues { r, d, k } => {
            let set = cohsys::critical_values(&SystemType::new(r, d, k)?);
            #[derive(Serialize)]
            struct Out {
                #[serde(with = "serde_scalar_vec")]
                values: Vec<Scalar>,
            }
            Ok(Outcome::json(&Out { values: set.values }, true))
        }
        Command::AlphaCheck { g, alpha, input } => alpha_check(&read_config(&input)?, &g, &alpha),
        Command::Equivalence { g, input } => {
            let report = cohsys::equivalence_check(&read_config(&input)?, g)?;
            Ok(Outcome::json(&report, report.agree))
        }
        Command::DestableExample { genus, lambdas } => {
            let config = cohsys::destable_example(genus, lambdas.as_deref())?;
            Ok(Outcome::json(&config, true))
        }
        Command::Gale { input, seed } => gale_command(&read_config(&input)?, seed),
        Command::Hypersurface { action: HypersurfaceAction::Verify { target, samples, seed } } => match target {
            Target::Segre => Ok(verify_segre(samples.unwrap_or(10_000), seed)),
            Target::Igusa => verify_igusa(),
            Target::Duality => {
                let samples = samples.unwrap_or(200);
                let report = duality_check(samples, seed);
                let passed = report.all_hold() && report.samples == samples;
                Ok(Outcome::json(&json!({ "target": "duality", "seed": seed, "report": report, "passed": passed }), passed))
            }
        },
        Command::Incidence => incidence(),
        Command::VerifyAll { samples, seed } => {
            let report = checks::verify_all(samples, seed);
            Ok(Outcome::json(&report, report.passed))
        }
    }
}

fn git_classify(config: &PointConfiguration, g: &Scalar, oracle: bool) -> CmdResult {
    let verdict = if oracle {
        gitstab::oracle_classify_capped(config, g, oracle_cap()?)?
    } else {
        gitstab::classify(config, g)?
    };
    let margin = gitstab::worst_subspace(config, g)?.map(|(_, m)| format_scalar(&m));
    #[derive(Serialize)]
    struct Out {
        class: stab_core::StabilityClass,
        witness: Option<Witness>,
        margin: Option<String>,
    }
    Ok(Outcome::json(&Out { class: verdict.class, witness: verdict.witness, margin }, true))
}

fn alpha_check(config: &PointConfiguration, g: &Scalar, alpha: &Scalar) -> CmdResult {
    #[derive(Serialize)]
    struct Sub {
        r: u64,
        d: u64,
        k: u64,
        #[serde(with = "serde_scalar")]
        slope: Scalar,
    }
    #[derive(Serialize)]
    struct Out {
        #[serde(with = "serde_scalar")]
        g: Scalar,
        #[serde(with = "serde_scalar")]
        alpha: Scalar,
        #[serde(with = "serde_scalar")]
        slope: Scalar,
        subsystems: Vec<Sub>,
        alpha_semistable: bool,
        alpha_stable: bool,
    }
    let semistable = cohsys::alpha_semistable_config(config, g, alpha)?;
    let stable = cohsys::alpha_stable_config(config, g, alpha)?;
    let full = SystemType::new(config.ambient_rank() as u64, config.len() as u64, config.ambient_rank() as u64)?;
    let subsystems = cohsys::subsystem_types_from_config(config)
        .into_iter()
        .map(|t| Sub { r: t.r, d: t.d, k: t.k, slope: cohsys::alpha_slope(&t, alpha) })
        .collect();
    let out = Out {
        g: g.clone(),
        alpha: alpha.clone(),
        slope: cohsys::alpha_slope(&full, alpha),
        subsystems,
        alpha_semistable: semistable,
        alpha_stable: stable,
    };
    Ok(Outcome::json(&out, true))
}

fn gale_command(config: &PointConfiguration, seed: Option<u64>) -> CmdResult {
    let data = match seed {
        Some(s) => gale::gale_transform_seeded(config, s)?,
        None => gale::gale_transform(config)?,
    };
    // undecidable without a projective frame among the first points
    let self_associated = gale::is_self_associated(config).ok();
    #[derive(Serialize)]
    struct Out<'a> {
        source: &'a PointConfiguration,
        target: &'a PointConfiguration,
        #[serde(with = "serde_scalar_vec")]
        diag: Vec<Scalar>,
        relation_holds: bool,
        self_associated: Option<bool>,
    }
    let out = Out {
        source: &data.source,
        target: &data.target,
        diag: data.diag.clone(),
        relation_holds: data.relation_holds(),
        self_associated,
    };
    Ok(Outcome::json(&out, true))
}

fn verify_segre(trials: usize, seed: u64) -> Outcome {
    let model = segre_cubic();
    let nodes: Vec<_> = segre_nodes()
        .into_iter()
        .map(|(split, p)| {
            let x = p.to_scalars();
            json!({
                "split": split.label(),
                "point": point_strings(&p),
                "on_cubic": model.evaluate(&x).is_zero(),
                "singular": verify_singular_point(&model, &p),
                "hessian_rank": node_hessian_rank(&model, &p),
            })
        })
        .collect();
    let nodes_ok = nodes.len() == 10
        && nodes.iter().all(|n| n["on_cubic"] == true && n["singular"] == true && n["hessian_rank"] == 4);
    let labels: std::collections::BTreeSet<String> = nodes.iter().map(|n| n["split"].to_string()).collect();
    let bijective = labels.len() == splits_3_3().len() && nodes.len() == 10;
    let extra: Vec<Vec<String>> = extra_singular_points(trials, seed).iter().map(point_strings).collect();
    let passed = nodes_ok && bijective && extra.is_empty();
    let out = json!({
        "target": "segre",
        "nodes": nodes,
        "node_count": 10,
        "splits_bijective": bijective,
        "search_points": trials,
        "seed": seed,
        "extra_singular": extra,
        "passed": passed,
    });
    Outcome::json(&out, passed)
}

fn verify_igusa() -> CmdResult {
    let model = igusa_quartic()?;
    let lines: Vec<_> = igusa_lines()
        .iter()
        .map(|l| json!({ "matching": l.label(), "basis": [strings(&l.basis[0]), strings(&l.basis[1])] }))
        .collect();
    let points: Vec<_> = igusa_points()
        .iter()
        .map(|(pair, p)| {
            json!({ "pair": pair_label(*pair), "point": point_strings(p), "singular": verify_singular_point(&model, p) })
        })
        .collect();
    let lines_ok = stab_core::modhyp::singular_lines_check(&model) && lines.len() == 15;
    let points_ok = points.len() == 15 && points.iter().all(|p| p["singular"] == true);
    let inc = incidence_15_3();
    let incidence_ok = inc.is_configuration(15, 3) && geometric_incidence() == inc.incidence;
    let passed = lines_ok && points_ok && incidence_ok;
    let out = json!({
        "target": "igusa",
        "lines": lines,
        "lines_singular": lines_ok,
        "points": points,
        "points_singular": points_ok,
        "flags": inc.incidence.len(),
        "incidence_matches": incidence_ok,
        "passed": passed,
    });
    Ok(Outcome::json(&out, passed))
}

fn incidence() -> CmdResult {
    let inc = incidence_15_3();
    let geometric = geometric_incidence();
    let lines: Vec<_> = igusa_lines()
        .iter()
        .map(|l| json!({ "label": matching_label(&l.matching), "basis": [strings(&l.basis[0]), strings(&l.basis[1])] }))
        .collect();
    let points: Vec<_> =
        igusa_points().iter().map(|(p, x)| json!({ "label": pair_label(*p), "coords": point_strings(x) })).collect();
    let agree = geometric == inc.incidence;
    let out = json!({
        "abstract": inc,
        "geometric": { "points": points, "lines": lines, "incidence": geometric },
        "is_15_3": inc.is_configuration(15, 3),
        "realizations_agree": agree,
    });
    Ok(Outcome::json(&out, agree))
}
