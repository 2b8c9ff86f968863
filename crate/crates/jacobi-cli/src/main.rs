//! Command-line surface: run verification suites and export metrics, frames,
//! geodesics and the geodesic-vector families as JSON, CSV or SVG.

use clap::{Args, Parser, Subcommand};
use jacobi_geom::geodesic;
use jacobi_geom::metric;
use jacobi_geom::report::{self, RunConfig, Suite};
use jacobi_geom::space::{MetricParams, SpaceId};
use jacobi_geom::{contact, frame, sample};
use rand_chacha::rand_core::SeedableRng;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "jacobi", version, about = "Invariant geometry of the real Jacobi group")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite and write the report.
    Verify(VerifyArgs),
    /// Export a metric, frame, geodesic, the geodesic-vector table or the
    /// contact report.
    Emit(EmitArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Space tag: h1, sl2r, x1, xj1, ext-xj1, gj1, sphere2, disk1, plane2,
    /// poincare-hp, or bcv:KAPPA,TAU
    #[arg(long)]
    space: Option<String>,
    /// Comma-separated parameter assignments, e.g. alpha=1,beta=0.5
    #[arg(long)]
    params: Option<String>,
    /// Random seed; fixes every draw of the run
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Global tolerance override for the suite checks
    #[arg(long)]
    tol: Option<f64>,
    /// Sample count per randomized check
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory prepended to --out
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// frames | metrics | killing | geodesics | reductivity | contact |
    /// transforms | all
    #[arg(long, default_value = "all")]
    suite: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct EmitArgs {
    /// metric | frame | geodesic | geovec-table | contact-report
    #[arg(long)]
    what: String,
    /// Point coordinates, comma separated
    #[arg(long)]
    point: Option<String>,
    /// Geodesic start point, comma separated
    #[arg(long)]
    start: Option<String>,
    /// Geodesic initial velocity, comma separated
    #[arg(long)]
    velocity: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    t_max: f64,
    #[arg(long, default_value_t = 1000)]
    steps: usize,
    /// json | csv | svg
    #[arg(long, default_value = "json")]
    format: String,
    #[command(flatten)]
    common: CommonArgs,
}

fn parse_space(s: &str) -> Result<SpaceId, String> {
    Ok(match s {
        "h1" => SpaceId::H1,
        "sl2r" => SpaceId::Sl2r,
        "x1" => SpaceId::X1,
        "xj1" => SpaceId::Xj1,
        "ext-xj1" => SpaceId::ExtXj1,
        "gj1" => SpaceId::Gj1,
        "sphere2" => SpaceId::Sphere2,
        "disk1" => SpaceId::Disk1,
        "plane2" => SpaceId::Plane2,
        "poincare-hp" => SpaceId::PoincareHp,
        other => {
            if let Some(rest) = other.strip_prefix("bcv:") {
                let vals = parse_vector(rest)?;
                if vals.len() != 2 {
                    return Err("bcv takes two parameters, bcv:KAPPA,TAU".into());
                }
                SpaceId::Bcv { kappa: vals[0], tau: vals[1] }
            } else {
                return Err(format!("unknown space '{}'", other));
            }
        }
    })
}

fn parse_vector(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|e| format!("bad number '{}': {}", v, e)))
        .collect()
}

/// Parse parameter assignments; reject unknown names, and reject explicit
/// assignments to parameters that are inactive for the given space.
fn parse_params(s: Option<&str>, space: Option<SpaceId>) -> Result<MetricParams, String> {
    let mut p = MetricParams::default();
    let mut set: Vec<String> = Vec::new();
    if let Some(s) = s {
        for item in s.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| format!("expected name=value, got '{}'", item))?;
            let v: f64 = v.trim().parse().map_err(|e| format!("bad value '{}': {}", v, e))?;
            match k.trim() {
                "alpha" => p.alpha = v,
                "beta" => p.beta = v,
                "gamma" => p.gamma = v,
                "delta" => p.delta = v,
                other => return Err(format!("unknown parameter '{}'", other)),
            }
            set.push(k.trim().to_string());
        }
    }
    if let Some(space) = space {
        let active = MetricParams::active_names(space);
        for name in &set {
            if !active.contains(&name.as_str()) {
                return Err(format!(
                    "parameter '{}' has no meaning for {} (active: {})",
                    name,
                    space.label(),
                    if active.is_empty() { "none".to_string() } else { active.join(", ") }
                ));
            }
        }
        p.validate_for(space).map_err(|e| e.to_string())?;
    }
    Ok(p)
}

/// Write atomically: temp file in the target directory, then rename.
fn write_output(path: Option<&Path>, out_dir: Option<&Path>, content: &str) -> Result<(), String> {
    match path {
        None => {
            if content.ends_with('\n') {
                print!("{}", content);
            } else {
                println!("{}", content);
            }
            Ok(())
        }
        Some(p) => {
            let full = match out_dir {
                Some(d) => d.join(p),
                None => p.to_path_buf(),
            };
            if let Some(parent) = full.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent).map_err(|e| e.to_string())?;
                }
            }
            let tmp = full.with_extension("tmp");
            std::fs::write(&tmp, content).map_err(|e| e.to_string())?;
            std::fs::rename(&tmp, &full).map_err(|e| e.to_string())?;
            Ok(())
        }
    }
}

fn run_verify(args: &VerifyArgs) -> Result<bool, String> {
    let suite = Suite::parse(&args.suite).ok_or_else(|| format!("unknown suite '{}'", args.suite))?;
    let space = args.common.space.as_deref().map(parse_space).transpose()?;
    let params = parse_params(args.common.params.as_deref(), space)?;
    let config = RunConfig {
        space,
        params,
        seed: args.common.seed,
        tolerance: args.common.tol,
        samples: args.common.samples.max(1),
    };
    let rep = report::run_suite(&config, suite);
    write_output(
        args.common.out.as_deref(),
        args.common.out_dir.as_deref(),
        &report::to_json(&rep),
    )?;
    for c in &rep.checks {
        eprintln!(
            "{:60} {:>12.3e}  (tol {:>8.1e})  {}",
            c.id, c.residual, c.tol, c.verdict
        );
    }
    eprintln!(
        "suite {:?}: {} passed, {} failed, {} detected discrepancies",
        suite,
        rep.summary.passed,
        rep.summary.failed,
        rep.discrepancies.len()
    );
    Ok(rep.all_passed())
}

fn csv_number(v: f64) -> String {
    format!("{}", v)
}

fn emit_geodesic(
    args: &EmitArgs,
    space: SpaceId,
    params: &MetricParams,
) -> Result<String, String> {
    let start = parse_vector(
        args.start.as_deref().ok_or("geodesic export needs --start")?,
    )?;
    let velocity = parse_vector(
        args.velocity.as_deref().ok_or("geodesic export needs --velocity")?,
    )?;
    if start.len() != space.dim() || velocity.len() != space.dim() {
        return Err(format!("start and velocity must have {} coordinates", space.dim()));
    }
    let path = geodesic::integrate_geodesic(space, params, &start, &velocity, args.t_max,
        args.steps)
        .map_err(|e| e.to_string())?;
    match args.format.as_str() {
        "csv" => {
            let names: &[&str] = match space {
                SpaceId::H1 => &["lambda", "mu", "kappa"],
                SpaceId::Sl2r => &["x", "y", "theta"],
                SpaceId::X1 => &["x", "y"],
                SpaceId::Xj1 => &["x", "y", "p", "q"],
                SpaceId::ExtXj1 => &["x", "y", "p", "q", "kappa"],
                SpaceId::Gj1 => &["x", "y", "theta", "p", "q", "kappa"],
                _ => return Err("geodesic export covers the six invariant spaces".into()),
            };
            let mut out = String::from("t,");
            out.push_str(&names.join(","));
            out.push_str(",energy\n");
            for (t, x, v) in &path.samples {
                let g = metric::metric_at(space, params, x).map_err(|e| e.to_string())?;
                let vv = nalgebra_vec(v);
                let energy = (vv.transpose() * g * &vv)[(0, 0)];
                out.push_str(&csv_number(*t));
                for c in x {
                    out.push(',');
                    out.push_str(&csv_number(*c));
                }
                out.push(',');
                out.push_str(&csv_number(energy));
                out.push('\n');
            }
            Ok(out)
        }
        "svg" => Ok(svg_polyline(&path.samples)),
        "json" => {
            let rows: Vec<serde_json::Value> = path
                .samples
                .iter()
                .map(|(t, x, v)| serde_json::json!({"t": t, "point": x, "velocity": v}))
                .collect();
            serde_json::to_string_pretty(&serde_json::json!({
                "space": space.label(),
                "energy_drift": path.energy_drift,
                "samples": rows,
            }))
            .map_err(|e| e.to_string())
        }
        other => Err(format!("unknown format '{}'", other)),
    }
}

fn nalgebra_vec(v: &[f64]) -> nalgebra::DVector<f64> {
    nalgebra::DVector::from_row_slice(v)
}

/// Fixed-viewport polyline of the (x, y) projection of a path.
fn svg_polyline(samples: &[(f64, Vec<f64>, Vec<f64>)]) -> String {
    let xs: Vec<f64> = samples.iter().map(|(_, p, _)| p[0]).collect();
    let ys: Vec<f64> = samples.iter().map(|(_, p, _)| p[1]).collect();
    let (x0, x1) = (
        xs.iter().cloned().fold(f64::INFINITY, f64::min),
        xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    );
    let (y0, y1) = (
        ys.iter().cloned().fold(f64::INFINITY, f64::min),
        ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    );
    let spanx = (x1 - x0).max(1e-9);
    let spany = (y1 - y0).max(1e-9);
    let (w, h, m) = (600.0, 400.0, 20.0);
    let pts: Vec<String> = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let px = m + (x - x0) / spanx * (w - 2.0 * m);
            let py = h - m - (y - y0) / spany * (h - 2.0 * m);
            format!("{:.3},{:.3}", px, py)
        })
        .collect();
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w} {h}\">\n\
         <rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n\
         <polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n\
         </svg>\n",
        pts.join(" ")
    )
}

fn run_emit(args: &EmitArgs) -> Result<bool, String> {
    let space = args.common.space.as_deref().map(parse_space).transpose()?;
    let params = parse_params(args.common.params.as_deref(), space)?;
    let content = match args.what.as_str() {
        "metric" => {
            let space = space.ok_or("metric export needs --space")?;
            let point = parse_vector(args.point.as_deref().ok_or("metric export needs --point")?)?;
            if point.len() != space.dim() {
                return Err(format!("point must have {} coordinates", space.dim()));
            }
            let g = metric::metric_at(space, &params, &point).map_err(|e| e.to_string())?;
            let rows: Vec<Vec<f64>> = (0..g.nrows())
                .map(|i| (0..g.ncols()).map(|j| g[(i, j)]).collect())
                .collect();
            serde_json::to_string_pretty(&rows).map_err(|e| e.to_string())?
        }
        "frame" => {
            let space = space.ok_or("frame export needs --space")?;
            let point = parse_vector(args.point.as_deref().ok_or("frame export needs --point")?)?;
            if point.len() != space.dim() {
                return Err(format!("point must have {} coordinates", space.dim()));
            }
            let fp = frame::closed_coframe(space, &params, &point).map_err(|e| e.to_string())?;
            let to_rows = |m: &nalgebra::DMatrix<f64>| -> Vec<Vec<f64>> {
                (0..m.nrows())
                    .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
                    .collect()
            };
            serde_json::to_string_pretty(&serde_json::json!({
                "space": space.label(),
                "point": point,
                "coframe_rows": to_rows(&fp.coframe),
                "frame_columns": to_rows(&fp.frame.transpose()),
                "condition": fp.condition,
            }))
            .map_err(|e| e.to_string())?
        }
        "geodesic" => {
            let space = space.unwrap_or(SpaceId::Xj1);
            emit_geodesic(args, space, &params)?
        }
        "geovec-table" => {
            let mut rows = Vec::new();
            for row in 1..=5usize {
                let (free, signs): (Vec<f64>, Vec<f64>) = match row {
                    1 => (vec![1.0, 1.0], vec![]),
                    2 => (vec![1.0, 1.0, 1.0], vec![]),
                    3 | 4 => (vec![1.0, 1.0], vec![1.0]),
                    _ => (vec![1.0, 1.0], vec![1.0, 1.0]),
                };
                let v = geodesic::table1_family(row, &params, &free, &signs)
                    .map_err(|e| e.to_string())?;
                let published = geodesic::geodesic_vector_residual(&v, &params);
                let derived = geodesic::geodesic_vector_residual_derived(&v, &params);
                rows.push(serde_json::json!({
                    "row": row,
                    "vector": v.to_vec(),
                    "published_system_residual": published.to_vec(),
                    "derived_system_residual": derived.to_vec(),
                }));
            }
            serde_json::to_string_pretty(&serde_json::json!({
                "parameters": params,
                "rows": rows,
                "note": "rows solve the published algebraic system by construction; the \
                         derived-system residuals expose the rows that are not geodesic \
                         vectors of the balanced metric",
            }))
            .map_err(|e| e.to_string())?
        }
        "contact-report" => {
            let space = space.unwrap_or(SpaceId::Sl2r);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.common.seed);
            let pts: Vec<Vec<f64>> = (0..args.common.samples.max(10))
                .map(|_| sample::random_point(&mut rng, space))
                .collect();
            let rep = contact::sasaki_report(space, &params, &pts).map_err(|e| e.to_string())?;
            serde_json::to_string_pretty(&serde_json::json!({
                "space": rep.space,
                "verdict": rep.verdict,
                "axiom_residual": rep.axiom_residual,
                "rank": rep.rank,
                "expected_rank": rep.expected_rank,
                "contact_coefficient": rep.contact_coefficient,
                "reeb_killing_residual": rep.xi_killing_residual,
                "normality_tensor_max": rep.n1_max,
                "failing_axiom": rep.failing_axiom,
            }))
            .map_err(|e| e.to_string())?
        }
        other => return Err(format!("unknown export '{}'", other)),
    };
    write_output(args.common.out.as_deref(), args.common.out_dir.as_deref(), &content)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.cmd {
        Cmd::Verify(args) => run_verify(args),
        Cmd::Emit(args) => run_emit(args),
    };
    match outcome {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}
