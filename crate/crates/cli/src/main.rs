//! `ants`: run the verification suite, analyze a model, integrate
//! extremals, classify quartics and build Steiner ellipses.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use ants_core::algebra::{fmt_rational, parse_rational, to_f64, Rational};
use ants_core::analysis::analyze_model;
use ants_core::extremals::{
    check_annihilator, fixed_vertex_trajectory, hamiltonian_lift, initial_covector, integrate_extremal, trajectory_csv,
    FixedVertexReport, MonitorTolerances, RunManifest,
};
use ants_core::models::{build_rule_a, build_rule_b, Rule};
use ants_core::quartic_metric::{
    cartan_quartic, classify_quartic, steiner_circumellipse, subriemannian_speed, BinaryQuartic, Triangle,
};
use ants_core::verify::{run_verify, Tolerances, VerifyConfig};

#[derive(Parser)]
#[command(name = "ants", version, about = "Three-ants distributions: exact checks and extremals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every identity and numerical monitor; exit 0 iff all pass.
    Verify(VerifyArgs),
    /// Derived flag, growth vector, first integrals and symmetries of a model.
    Analyze(AnalyzeArgs),
    /// Integrate an abnormal extremal and write CSV plus a manifest.
    Simulate(SimulateArgs),
    /// Real-root type of a binary quartic.
    Quartic(QuarticArgs),
    /// Steiner circumellipse of a triangle.
    Ellipse(EllipseArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 1e-4)]
    step: f64,
    #[arg(long, default_value_t = 1.0)]
    duration: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Groups or check ids, comma separated.
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    /// Record per-check runtimes (makes the report non-reproducible).
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    tol: TolArgs,
    /// Perturb one structure-equation coefficient; the suite must then fail.
    #[arg(long, hide = true)]
    mutate_structure: bool,
}

#[derive(Args)]
struct TolArgs {
    #[arg(long)]
    tol_h_drift: Option<f64>,
    #[arg(long)]
    tol_inv_sum: Option<f64>,
    #[arg(long)]
    tol_inv_prod: Option<f64>,
    #[arg(long)]
    tol_barycenter: Option<f64>,
    #[arg(long)]
    tol_control: Option<f64>,
    #[arg(long)]
    tol_halving_ratio: Option<f64>,
    #[arg(long)]
    tol_reduced_invariant: Option<f64>,
    #[arg(long)]
    tol_closed_form: Option<f64>,
    #[arg(long)]
    tol_elliptic: Option<f64>,
    #[arg(long)]
    tol_exponential: Option<f64>,
    #[arg(long)]
    tol_fuchsian: Option<f64>,
    #[arg(long)]
    tol_stationary: Option<f64>,
    #[arg(long)]
    tol_parallel: Option<f64>,
    #[arg(long)]
    tol_area: Option<f64>,
    #[arg(long)]
    tol_bisectrix: Option<f64>,
    #[arg(long)]
    tol_speed_spread: Option<f64>,
}

impl TolArgs {
    fn apply(&self, t: &mut Tolerances) -> Result<()> {
        let given = [
            self.tol_h_drift,
            self.tol_inv_sum,
            self.tol_inv_prod,
            self.tol_barycenter,
            self.tol_control,
            self.tol_halving_ratio,
            self.tol_reduced_invariant,
            self.tol_closed_form,
            self.tol_elliptic,
            self.tol_exponential,
            self.tol_fuchsian,
            self.tol_stationary,
            self.tol_parallel,
            self.tol_area,
            self.tol_bisectrix,
            self.tol_speed_spread,
        ];
        for (name, v) in Tolerances::NAMES.iter().zip(given) {
            if let Some(v) = v {
                t.set(name, v)?;
            }
        }
        Ok(())
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    /// rule-a, rule-b, sqrt-b, affine, flat36 or quadric235.
    model: String,
    #[command(flatten)]
    common: Common,
    /// Largest coefficient degree in the symmetry ansatz.
    #[arg(long, default_value_t = 2)]
    symmetry_degree: u32,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    A,
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    /// `u2 ≡ 0`: the middle vertex rests while the opposite side slides.
    FixedVertex,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value = "b")]
    rule: RuleArg,
    /// Initial controls `(h23, h31, h12)`, rationals.
    #[arg(long, default_value = "1/4,1/4,-1/2", allow_hyphen_values = true, conflicts_with = "lambda_target")]
    u0: String,
    /// Initial configuration `x1,y1,x2,y2,x3,y3`, rationals.
    #[arg(long, default_value = "0,0,1,0,0,1", allow_hyphen_values = true)]
    triangle: String,
    /// Explicit initial covector (six rationals); must annihilate the distribution.
    #[arg(long, allow_hyphen_values = true)]
    lambda_target: Option<String>,
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// `u1(0)` for the fixed-vertex preset.
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    vertex_u1: f64,
    #[arg(long, default_value_t = 1e-4)]
    step: f64,
    #[arg(long, default_value_t = 1.0)]
    duration: f64,
    #[arg(long)]
    tol_h_drift: Option<f64>,
    #[arg(long)]
    tol_inv_sum: Option<f64>,
    #[arg(long)]
    tol_inv_prod: Option<f64>,
    #[arg(long)]
    tol_barycenter: Option<f64>,
    #[arg(long)]
    tol_control: Option<f64>,
}

#[derive(Args)]
struct QuarticArgs {
    /// Coefficients `c0..c4` of `Σ c_k u1^(4-k) u2^k`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "cartan")]
    coeffs: Option<String>,
    /// Classify `c (u1²+u2²+u3²)²` on `u1+u2+u3 = 0`.
    #[arg(long, allow_hyphen_values = true)]
    cartan: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EllipseArgs {
    /// `x1,y1,x2,y2,x3,y3`, rationals.
    #[arg(long, default_value = "0,0,1,0,0,1", allow_hyphen_values = true)]
    triangle: String,
    /// Controls `u1,u2,u3` with zero sum; adds the speed to the output.
    #[arg(long, allow_hyphen_values = true)]
    speed: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_rationals<const N: usize>(what: &str, s: &str) -> Result<[Rational; N]> {
    let parts: Vec<Rational> = s
        .split(',')
        .map(|p| parse_rational(p).ok_or_else(|| anyhow!("{what}: cannot parse `{p}` as a rational")))
        .collect::<Result<_>>()?;
    parts
        .try_into()
        .map_err(|v: Vec<Rational>| anyhow!("{what}: expected {N} values, got {}", v.len()))
}

fn parse_floats<const N: usize>(what: &str, s: &str) -> Result<[f64; N]> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse().with_context(|| format!("{what}: cannot parse `{p}`")))
        .collect::<Result<_>>()?;
    parts
        .try_into()
        .map_err(|v: Vec<f64>| anyhow!("{what}: expected {N} values, got {}", v.len()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<ExitCode> {
    let mut tolerances = Tolerances::default();
    a.tol.apply(&mut tolerances)?;
    let config = VerifyConfig {
        seed: a.common.seed,
        step: a.step,
        duration: a.duration,
        tolerances,
        only: a.only.clone(),
        timing: a.timing,
        mutate_structure: a.mutate_structure,
    };
    let report = run_verify(&config)?;
    let text = match a.format {
        Format::Csv => report.to_csv(),
        Format::Json | Format::Text => report.to_json() + "\n",
    };
    emit(a.common.out.as_deref(), &text)?;
    let failed: Vec<_> = report.failures().map(|c| c.check_id.as_str()).collect();
    if failed.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{} of {} checks failed: {}", failed.len(), report.checks.len(), failed.join(", "));
        Ok(ExitCode::from(1))
    }
}

fn cmd_analyze(a: &AnalyzeArgs) -> Result<ExitCode> {
    let r = analyze_model(&a.model, a.common.seed, a.symmetry_degree)?;
    let text = match a.format {
        Format::Json => r.to_json() + "\n",
        Format::Csv => r.to_csv(),
        Format::Text => r.to_text(),
    };
    emit(a.common.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

/// `foo.csv` → `foo.manifest.json`.
fn manifest_path(csv: &Path) -> PathBuf {
    csv.with_extension("manifest.json")
}

fn write_run(out: Option<&Path>, csv: &str, manifest: &str) -> Result<()> {
    match out {
        Some(p) => {
            fs::write(p, csv).with_context(|| format!("writing {}", p.display()))?;
            let m = manifest_path(p);
            fs::write(&m, manifest).with_context(|| format!("writing {}", m.display()))
        }
        None => {
            print!("{csv}");
            eprintln!("{manifest}");
            Ok(())
        }
    }
}

fn fixed_vertex_csv(r: &FixedVertexReport) -> String {
    let mut out = String::from("t,x1,y1,x2,y2,x3,y3,u1,u2,u3\n");
    for (n, (z, u)) in r.vertices.iter().zip(&r.u).enumerate() {
        let t = n as f64 * r.step;
        let row: Vec<String> = std::iter::once(t)
            .chain(z.iter().flatten().copied())
            .chain(u.iter().copied())
            .map(|v| format!("{v:e}"))
            .collect();
        out += &row.join(",");
        out.push('\n');
    }
    out
}

fn cmd_simulate(a: &SimulateArgs) -> Result<ExitCode> {
    let q0: [Rational; 6] = parse_rationals("--triangle", &a.triangle)?;
    if let Some(Preset::FixedVertex) = a.preset {
        let t: [[f64; 2]; 3] = std::array::from_fn(|i| [to_f64(&q0[2 * i]), to_f64(&q0[2 * i + 1])]);
        let r = fixed_vertex_trajectory(t, a.vertex_u1, a.duration, a.step)?;
        let manifest = serde_json::json!({
            "preset": "fixed-vertex",
            "seed": a.common.seed,
            "step": r.step,
            "duration": a.duration,
            "u1": a.vertex_u1,
            "q0": q0.iter().map(fmt_rational).collect::<Vec<_>>(),
            "stationary_vertex": r.stationary_vertex,
            "parallel_side": r.parallel_side,
            "area_drift": r.area_drift,
            "bisectrix_collinearity": r.bisectrix_collinearity,
        });
        let manifest = serde_json::to_string_pretty(&manifest)? + "\n";
        write_run(a.common.out.as_deref(), &fixed_vertex_csv(&r), &manifest)?;
        return Ok(ExitCode::SUCCESS);
    }

    let (rule, model) = match a.rule {
        RuleArg::A => (Rule::A, build_rule_a()),
        RuleArg::B => (Rule::B, build_rule_b()),
    };
    let lift = hamiltonian_lift(&model.z)?;
    let lambda0 = match &a.lambda_target {
        Some(s) => {
            let l: [Rational; 6] = parse_rationals("--lambda-target", s)?;
            check_annihilator(&lift, &q0, &l).context("--lambda-target is not an annihilator of the distribution at q0")?;
            l
        }
        None => {
            let u0: [Rational; 3] = parse_rationals("--u0", &a.u0)?;
            initial_covector(&model, &lift, &q0, &u0)?
        }
    };
    let mut tol = MonitorTolerances::default();
    for (slot, v) in [
        (&mut tol.h_drift, a.tol_h_drift),
        (&mut tol.inv_sum, a.tol_inv_sum),
        (&mut tol.inv_prod, a.tol_inv_prod),
        (&mut tol.barycenter, a.tol_barycenter),
        (&mut tol.control, a.tol_control),
    ] {
        if let Some(v) = v {
            if !(v.is_finite() && v > 0.0) {
                bail!("tolerances must be positive, got {v}");
            }
            *slot = v;
        }
    }
    let traj = integrate_extremal(rule, &lift, &q0, &lambda0, a.duration, a.step, &tol)?;
    let u0 = traj.u[0];
    let manifest = RunManifest {
        seed: a.common.seed,
        rule: format!("{rule:?}"),
        step: traj.step,
        duration: a.duration,
        u0: u0.map(|v| format!("{v:e}")),
        q0: q0.clone().map(|v| fmt_rational(&v)),
        lambda0: lambda0.clone().map(|v| fmt_rational(&v)),
        tolerances: tol,
        drift: traj.drift.clone(),
        flags: traj.flags.clone(),
    };
    let manifest = serde_json::to_string_pretty(&manifest)? + "\n";
    write_run(a.common.out.as_deref(), &trajectory_csv(&traj), &manifest)?;
    if traj.flagged() {
        eprintln!("monitors above tolerance: {}", traj.flags.join(", "));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_quartic(a: &QuarticArgs) -> Result<ExitCode> {
    let q = match (&a.coeffs, &a.cartan) {
        (Some(s), _) => BinaryQuartic::new(parse_rationals("--coeffs", s)?),
        (None, Some(c)) => {
            let [c] = parse_rationals::<1>("--cartan", c)?;
            cartan_quartic(&c)
        }
        (None, None) => bail!("give --coeffs or --cartan"),
    };
    let report = classify_quartic(&q)?;
    emit(a.out.as_deref(), &(report.to_json() + "\n"))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_ellipse(a: &EllipseArgs) -> Result<ExitCode> {
    let q: [Rational; 6] = parse_rationals("--triangle", &a.triangle)?;
    let t: Triangle = std::array::from_fn(|i| [q[2 * i].clone(), q[2 * i + 1].clone()]);
    let e = steiner_circumellipse(&t)?;
    let mut value: serde_json::Value = serde_json::from_str(&e.to_json())?;
    if let Some(s) = &a.speed {
        let u: [f64; 3] = parse_floats("--speed", s)?;
        value["speed"] = serde_json::json!(subriemannian_speed(&t, u)?);
    }
    emit(a.out.as_deref(), &(serde_json::to_string_pretty(&value)? + "\n"))?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Quartic(a) => cmd_quartic(a),
        Command::Ellipse(a) => cmd_ellipse(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
