//! Command-line front end: parse metric specs, run validations, masses,
//! embeddings, bounds, δ computation, and mass sweeps.
//!
//! Subcommands: `validate`, `mass`, `embed`, `bound`, `delta`, `sweep`.
//! Exit codes: 0 success, 1 domain/class failure, 2 usage/parse failure.
//! Output is byte-identical across runs with identical inputs.

use crate::bound::{choose_delta, flat_distance_bound, BoundReport};
use crate::embedding::build_embedding;
use crate::families::{self, Family, WellSpec};
use crate::geometry::{
    mass_of, Dimension, MetricProfile, ProfileKind, SampledProfile, DEFAULT_R_MAX,
};
use crate::validators::validate;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// On-disk metric description.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricSpecFile {
    pub dimension: u32,
    /// "hyperbolic", "ads_schwarzschild", "gravity_well" or "sampled".
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mass: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_peak: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blend_width: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_max: Option<f64>,
    /// [r, m_H] pairs, sampled kind only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<[f64; 2]>>,
}

impl MetricSpecFile {
    pub fn build(&self) -> Result<MetricProfile> {
        let dim = Dimension::new(self.dimension)?;
        let r_max = self.r_max.unwrap_or(DEFAULT_R_MAX);
        match self.kind.as_str() {
            "hyperbolic" => families::hyperbolic(dim, r_max),
            "ads_schwarzschild" => {
                let mass = self
                    .mass
                    .ok_or_else(|| Error::Spec("ads_schwarzschild requires `mass`".into()))?;
                families::ads_schwarzschild(dim, mass, r_max)
            }
            "gravity_well" => {
                let mass = self
                    .mass
                    .ok_or_else(|| Error::Spec("gravity_well requires `mass`".into()))?;
                let q_peak = self
                    .q_peak
                    .ok_or_else(|| Error::Spec("gravity_well requires `q_peak`".into()))?;
                let mut spec =
                    WellSpec::new(dim, mass, q_peak).map_err(|e| Error::Spec(e.to_string()))?;
                if let Some(w) = self.blend_width {
                    spec.blend_width = w;
                }
                families::gravity_well(&spec, r_max)
            }
            "sampled" => {
                let samples = self
                    .samples
                    .as_ref()
                    .ok_or_else(|| Error::Spec("sampled requires `samples`".into()))?;
                let rs: Vec<f64> = samples.iter().map(|p| p[0]).collect();
                let mh: Vec<f64> = samples.iter().map(|p| p[1]).collect();
                let (r_min, r_hi) = match (rs.first(), rs.last()) {
                    (Some(a), Some(b)) => (*a, *b),
                    _ => {
                        return Err(Error::Spec(
                            "sampled requires at least one [r, m_H] pair".into(),
                        ))
                    }
                };
                MetricProfile::new(
                    dim,
                    r_min,
                    r_hi,
                    ProfileKind::Sampled(SampledProfile::new(rs, mh)?),
                )
            }
            other => Err(Error::Spec(format!("unknown kind {other:?}"))),
        }
    }
}

/// Load and parse a metric spec file.
pub fn load_spec(path: &str) -> Result<MetricSpecFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Spec(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Spec(format!("cannot parse {path}: {e}")))
}

/// 17 significant digits: lossless f64 round-trip in text form.
fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

struct Args {
    positional: Vec<String>,
    flags: BTreeMap<String, String>,
}

fn parse_args(args: &[String]) -> std::result::Result<Args, String> {
    let mut positional = Vec::new();
    let mut flags = BTreeMap::new();
    let mut i = 0;
    while i < args.len() {
        let a = &args[i];
        if let Some(name) = a.strip_prefix("--") {
            if name == "json" {
                flags.insert(name.to_string(), "true".to_string());
                i += 1;
                continue;
            }
            let value = args
                .get(i + 1)
                .ok_or_else(|| format!("flag --{name} needs a value"))?;
            flags.insert(name.to_string(), value.clone());
            i += 2;
        } else {
            positional.push(a.clone());
            i += 1;
        }
    }
    Ok(Args { positional, flags })
}

fn flag_f64(args: &Args, name: &str) -> std::result::Result<f64, String> {
    args.flags
        .get(name)
        .ok_or_else(|| format!("missing required flag --{name}"))?
        .parse::<f64>()
        .map_err(|e| format!("flag --{name}: {e}"))
}

const USAGE: &str = "usage: flatmass <command> [args]

commands:
  validate <spec.json>                       certify class membership (exit 0 iff member)
  mass <spec.json>                           truncated mass and tail defect
  embed <spec.json> [--z-min X]              sampled height table of z = F(r)
  bound <spec.json> --eps E --D D --alpha0 A [--json]
                                             flat-distance bound report
  delta --eps E --D D --alpha0 A --dim M     the budget delta(eps, D, alpha0, m)
  sweep --family F --masses M1,M2,... --eps E --D D --alpha0 A
        [--dim M] [--q-peak Q] [--r-max R] [--jobs N] [--out FILE]
                                             CSV over a mass sequence (family:
                                             ads_schwarzschild | gravity_well)

FLATMASS_TOL overrides the default quadrature absolute tolerance.";

/// Entry point used by the `flatmass` binary; returns the process exit code.
pub fn run(raw_args: &[String]) -> i32 {
    let Some(command) = raw_args.first() else {
        eprintln!("{USAGE}");
        return 2;
    };
    let args = match parse_args(&raw_args[1..]) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let outcome = match command.as_str() {
        "validate" => cmd_validate(&args),
        "mass" => cmd_mass(&args),
        "embed" => cmd_embed(&args),
        "bound" => cmd_bound(&args),
        "delta" => cmd_delta(&args),
        "sweep" => cmd_sweep(&args),
        other => {
            eprintln!("error: unknown command {other:?}\n{USAGE}");
            return 2;
        }
    };
    match outcome {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl From<String> for CliError {
    fn from(m: String) -> Self {
        CliError::Usage(m)
    }
}

fn classify(e: Error) -> CliError {
    match e {
        Error::Spec(m) => CliError::Usage(m),
        other => CliError::Domain(other.to_string()),
    }
}

fn spec_profile(args: &Args) -> std::result::Result<MetricProfile, CliError> {
    let path = args
        .positional
        .first()
        .ok_or_else(|| CliError::Usage("missing spec path".into()))?;
    let spec = load_spec(path).map_err(classify)?;
    spec.build().map_err(classify)
}

fn cmd_validate(args: &Args) -> std::result::Result<i32, CliError> {
    let profile = spec_profile(args)?;
    let report = validate(&profile, 1e-9).map_err(classify)?;
    println!("member:               {}", report.is_member);
    println!("boundary:             {:?}", report.boundary_condition);
    println!(
        "monotonicity defect:  {}",
        fmt17(report.worst_monotonicity_defect)
    );
    println!("min scalar slack:     {}", fmt17(report.min_scalar_slack));
    for note in &report.notes {
        println!("note: {note}");
    }
    Ok(if report.is_member { 0 } else { 1 })
}

fn cmd_mass(args: &Args) -> std::result::Result<i32, CliError> {
    let profile = spec_profile(args)?;
    let est = mass_of(&profile);
    println!("mass:               {}", fmt17(est.mass));
    println!("truncation defect:  {}", fmt17(est.truncation_defect));
    println!("converged:          {}", est.converged);
    Ok(0)
}

fn cmd_embed(args: &Args) -> std::result::Result<i32, CliError> {
    let profile = spec_profile(args)?;
    let z_min = match args.flags.get("z-min") {
        Some(v) => v
            .parse::<f64>()
            .map_err(|e| CliError::Usage(format!("--z-min: {e}")))?,
        None => 0.0,
    };
    let emb = build_embedding(&profile, z_min).map_err(classify)?;
    println!("{:>24} {:>24} {:>24}", "r", "F(r)", "F'(r)");
    const ROWS: usize = 25;
    for i in 0..=ROWS {
        let r = profile.r_min() + (profile.r_max() - profile.r_min()) * i as f64 / ROWS as f64;
        let slope = match emb.slope(r) {
            Ok(s) => fmt17(s),
            Err(_) => "inf".to_string(),
        };
        println!(
            "{:>24} {:>24} {:>24}",
            fmt17(r),
            fmt17(emb.height(r)),
            slope
        );
    }
    Ok(0)
}

fn region_row(name: &str, r: &crate::bound::RegionEstimate) -> String {
    let analytic = r.analytic_bound.map_or_else(|| "-".to_string(), fmt17);
    let numeric = r.numeric_volume.map_or_else(|| "-".to_string(), fmt17);
    format!(
        "{name:<6} {analytic:>24} {numeric:>24} {:>24}",
        fmt17(r.contribution)
    )
}

fn print_bound_table(rep: &BoundReport) {
    println!(
        "{:<6} {:>24} {:>24} {:>24}",
        "region", "analytic", "numeric", "contribution"
    );
    println!("{}", region_row("A0", &rep.regions.a0));
    println!("{}", region_row("A1", &rep.regions.a1));
    println!("{}", region_row("A2", &rep.regions.a2));
    println!("{}", region_row("A3,1", &rep.regions.a31));
    println!("{}", region_row("A3,2", &rep.regions.a32));
    println!("{}", region_row("A3,3", &rep.regions.a33));
    println!("{}", region_row("B1", &rep.regions.b1));
    println!("{}", region_row("B2", &rep.regions.b2));
    println!("total flat bound:   {}", fmt17(rep.total_flat_bound));
    println!("volume upper:       {}", fmt17(rep.volume_upper));
    println!("volume lower:       {}", fmt17(rep.volume_lower));
    println!("volume (metric):    {}", fmt17(rep.volume_tube_metric));
    println!("volume (hyperbolic):{}", fmt17(rep.volume_tube_hyperbolic));
    println!("delta used:         {}", fmt17(rep.delta_used));
    println!("q used:             {}", fmt17(rep.q_used));
    println!(
        "strip C, S:         {} {}",
        fmt17(rep.strip.c),
        fmt17(rep.strip.s)
    );
    println!("certified:          {}", rep.certified);
    if !rep.certified {
        println!("warning: mass {} is not below delta {}; totals are construction costs, not a proven bound", fmt17(rep.mass), fmt17(rep.delta_used));
    }
}

fn cmd_bound(args: &Args) -> std::result::Result<i32, CliError> {
    let profile = spec_profile(args)?;
    let eps = flag_f64(args, "eps")?;
    let d = flag_f64(args, "D")?;
    let alpha0 = flag_f64(args, "alpha0")?;
    let rep = flat_distance_bound(&profile, eps, d, alpha0).map_err(classify)?;
    if args.flags.contains_key("json") {
        println!(
            "{}",
            serde_json::to_string_pretty(&rep).expect("report serializes")
        );
    } else {
        print_bound_table(&rep);
    }
    Ok(0)
}

fn cmd_delta(args: &Args) -> std::result::Result<i32, CliError> {
    let eps = flag_f64(args, "eps")?;
    let d = flag_f64(args, "D")?;
    let alpha0 = flag_f64(args, "alpha0")?;
    let m = flag_f64(args, "dim")? as u32;
    let dim = Dimension::new(m).map_err(classify)?;
    let budget = choose_delta(eps, d, alpha0, dim).map_err(classify)?;
    println!("delta: {}", fmt17(budget.delta));
    println!("{:<8} {:>24} {:>24} {:>24}", "name", "lhs", "rhs", "slack");
    for c in &budget.constraints {
        println!(
            "{:<8} {:>24} {:>24} {:>24}",
            c.name,
            fmt17(c.lhs),
            fmt17(c.rhs),
            fmt17(c.slack())
        );
    }
    Ok(0)
}

const SWEEP_HEADER: &str = "mass,delta_used,r_eps,Q,C,S,vol_A0,vol_A1,vol_A2,vol_A31,vol_A32,vol_A33,vol_B1,vol_B2,total_bound,vol_upper,vol_lower,certified,error";

fn sweep_row(mass: f64, outcome: &std::result::Result<BoundReport, String>) -> String {
    match outcome {
        Ok(rep) => {
            let r = &rep.regions;
            format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},",
                fmt17(mass),
                fmt17(rep.delta_used),
                fmt17(rep.r_eps),
                fmt17(rep.q_used),
                fmt17(rep.strip.c),
                fmt17(rep.strip.s),
                fmt17(r.a0.contribution),
                fmt17(r.a1.contribution),
                fmt17(r.a2.contribution),
                fmt17(r.a31.contribution),
                fmt17(r.a32.contribution),
                fmt17(r.a33.contribution),
                fmt17(r.b1.contribution),
                fmt17(r.b2.contribution),
                fmt17(rep.total_flat_bound),
                fmt17(rep.volume_upper),
                fmt17(rep.volume_lower),
                rep.certified,
            )
        }
        Err(msg) => {
            let clean = msg.replace([',', '\n'], ";");
            format!("{},,,,,,,,,,,,,,,,,,{}", fmt17(mass), clean)
        }
    }
}

fn cmd_sweep(args: &Args) -> std::result::Result<i32, CliError> {
    let family_name = args
        .flags
        .get("family")
        .ok_or_else(|| CliError::Usage("missing required flag --family".into()))?;
    let masses: Vec<f64> = args
        .flags
        .get("masses")
        .ok_or_else(|| CliError::Usage("missing required flag --masses".into()))?
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Usage(format!("--masses: {e}")))
        })
        .collect::<std::result::Result<_, _>>()?;
    if masses.is_empty() {
        return Err(CliError::Usage("empty mass list".into()));
    }
    let eps = flag_f64(args, "eps")?;
    let d = flag_f64(args, "D")?;
    let alpha0 = flag_f64(args, "alpha0")?;
    let m = args.flags.get("dim").map_or(Ok(3.0), |v| {
        v.parse::<f64>().map_err(|e| format!("--dim: {e}"))
    })? as u32;
    let dim = Dimension::new(m).map_err(classify)?;
    let r_max = args.flags.get("r-max").map_or(Ok(DEFAULT_R_MAX), |v| {
        v.parse::<f64>().map_err(|e| format!("--r-max: {e}"))
    })?;
    let family = match family_name.as_str() {
        "ads_schwarzschild" => Family::AdsSchwarzschild,
        "gravity_well" => {
            let q_peak = flag_f64(args, "q-peak")?;
            Family::GravityWell { q_peak }
        }
        other => return Err(CliError::Usage(format!("unknown family {other:?}"))),
    };
    let jobs = args
        .flags
        .get("jobs")
        .map_or(Ok(1usize), |v| {
            v.parse::<usize>().map_err(|e| format!("--jobs: {e}"))
        })?
        .max(1);

    let rows = run_sweep(family, dim, &masses, r_max, eps, d, alpha0, jobs);

    let mut text = String::from(SWEEP_HEADER);
    text.push('\n');
    for (mass, outcome) in masses.iter().zip(rows.iter()) {
        text.push_str(&sweep_row(*mass, outcome));
        text.push('\n');
    }
    match args.flags.get("out") {
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .map_err(|e| CliError::Domain(format!("cannot create {path}: {e}")))?;
            f.write_all(text.as_bytes())
                .map_err(|e| CliError::Domain(format!("cannot write {path}: {e}")))?;
        }
        None => print!("{text}"),
    }
    Ok(0)
}

/// Evaluate the sweep rows, up to `jobs` at a time; results keep input
/// order regardless of completion order.
pub fn run_sweep(
    family: Family,
    dim: Dimension,
    masses: &[f64],
    r_max: f64,
    eps: f64,
    d: f64,
    alpha0: f64,
    jobs: usize,
) -> Vec<std::result::Result<BoundReport, String>> {
    let evaluate = |mass: f64| -> std::result::Result<BoundReport, String> {
        let profile = match family {
            Family::AdsSchwarzschild => families::ads_schwarzschild(dim, mass, r_max),
            Family::GravityWell { q_peak } => {
                WellSpec::new(dim, mass, q_peak).and_then(|s| families::gravity_well(&s, r_max))
            }
        }
        .map_err(|e| e.to_string())?;
        flat_distance_bound(&profile, eps, d, alpha0).map_err(|e| e.to_string())
    };

    if jobs <= 1 || masses.len() <= 1 {
        return masses.iter().map(|&m| evaluate(m)).collect();
    }
    let results: Mutex<Vec<Option<std::result::Result<BoundReport, String>>>> =
        Mutex::new(vec![None; masses.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(masses.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= masses.len() {
                    break;
                }
                let out = evaluate(masses[i]);
                results.lock().unwrap()[i] = Some(out);
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every row evaluated"))
        .collect()
}
