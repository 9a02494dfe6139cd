//! `lagstar` command-line front end.
//!
//! Exit status: 0 when every requested check passes (or matches the spec's
//! expectation), 1 when a check fails, 2 for usage or spec errors, 3 for
//! numeric failures.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::json;

use lagstar::classify::{
    classify, convergence_ratio, surface_tolerance, verify_oracles, verify_oracles_at, ClassReport, Family, Grid,
    OracleSummary, Sweep, FD_STEP, FD_TOL,
};
use lagstar::gallery;
use lagstar::meshio;
use lagstar::spec::SurfaceSpec;
use lagstar::star::StarSurface;
use lagstar::Error;

#[derive(Parser)]
#[command(name = "lagstar", version, about = "Lagrangian surfaces from pairs of planar curves")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List gallery entries, or print one entry's spec as JSON.
    Gallery {
        name: Option<String>,
        /// Override an entry parameter, `key=value`.
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        /// Write `<name>.json` into this directory instead of stdout.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Build the surface and print a summary.
    Build(Common),
    /// Run the family checks and print the report.
    Classify {
        #[command(flatten)]
        common: Common,
        /// Replace every family threshold.
        #[arg(long)]
        tol: Option<f64>,
        /// Comma-separated families to check instead of the spec's list.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
    },
    /// Compare closed forms with finite-difference oracles.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Pass threshold on the largest relative error.
        #[arg(long, default_value_t = FD_TOL)]
        tol: f64,
        /// Sample random points with this seed instead of a grid subsample.
        #[arg(long)]
        seed: Option<u64>,
        /// Random points (with --seed) or nodes per axis (without).
        #[arg(long)]
        samples: Option<usize>,
        /// Finite-difference step.
        #[arg(long, default_value_t = FD_STEP)]
        step: f64,
    },
    /// Sample the surface and write mesh files.
    Mesh {
        #[command(flatten)]
        common: Common,
        /// R⁴ coordinate to drop (0-3), or `all`; repeatable.
        #[arg(long, value_delimiter = ',')]
        project: Vec<String>,
        /// Output formats: obj, ply, csv; repeatable.
        #[arg(long, value_delimiter = ',')]
        format: Vec<String>,
    },
}

#[derive(Args)]
struct Common {
    /// JSON spec file or gallery entry name.
    spec: String,
    /// Override a gallery parameter, `key=value`.
    #[arg(long = "param", value_name = "K=V")]
    params: Vec<String>,
    /// Grid size, `NTxNS`.
    #[arg(long)]
    grid: Option<String>,
    /// Parameter range for t, `a:b`.
    #[arg(long, allow_hyphen_values = true)]
    trange: Option<String>,
    /// Parameter range for s, `a:b`.
    #[arg(long, allow_hyphen_values = true)]
    srange: Option<String>,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

/// Outcome categories mapped onto exit codes.
enum Failure {
    Check,
    Usage(anyhow::Error),
    Numeric(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        let numeric = e.chain().any(|c| {
            matches!(
                c.downcast_ref::<Error>(),
                Some(
                    Error::Domain { .. }
                        | Error::OutOfDomain { .. }
                        | Error::Singular { .. }
                        | Error::Quadrature(_)
                        | Error::Integrator { .. }
                        | Error::TurningPoint { .. }
                )
            )
        });
        if numeric {
            Failure::Numeric(e)
        } else {
            Failure::Usage(e)
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Gallery { name, params, out } => cmd_gallery(name, &params, out),
        Cmd::Build(c) => cmd_build(&c),
        Cmd::Classify { common, tol, checks } => cmd_classify(&common, tol, &checks),
        Cmd::Verify {
            common,
            tol,
            seed,
            samples,
            step,
        } => cmd_verify(&common, tol, seed, samples, step),
        Cmd::Mesh { common, project, format } => cmd_mesh(&common, &project, &format),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(e)) => {
            eprintln!("numeric failure: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn parse_params(raw: &[String]) -> anyhow::Result<BTreeMap<String, f64>> {
    raw.iter()
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| anyhow!("expected key=value, got `{kv}`"))?;
            let v: f64 = v.trim().parse().with_context(|| format!("value of `{k}`"))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn parse_range(raw: &str) -> anyhow::Result<(f64, f64)> {
    let (a, b) = raw.split_once(':').ok_or_else(|| anyhow!("expected a:b, got `{raw}`"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn parse_grid(raw: &str) -> anyhow::Result<(usize, usize)> {
    let (a, b) = raw
        .split_once(['x', 'X'])
        .ok_or_else(|| anyhow!("expected NTxNS, got `{raw}`"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

/// Resolves the spec argument and applies the command-line overrides.
fn load_spec(c: &Common) -> anyhow::Result<SurfaceSpec> {
    let params = parse_params(&c.params)?;
    let path = Path::new(&c.spec);
    let mut spec = if path.is_file() {
        if !params.is_empty() {
            bail!("--param only applies to gallery entries");
        }
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        SurfaceSpec::from_json(&text)?
    } else {
        gallery::entry_with(&c.spec, &params)?
    };
    let mut g = spec.grid;
    if let Some(raw) = &c.grid {
        (g.nt, g.ns) = parse_grid(raw)?;
    }
    if let Some(raw) = &c.trange {
        g.t_range = parse_range(raw)?;
    }
    if let Some(raw) = &c.srange {
        g.s_range = parse_range(raw)?;
    }
    spec.grid = Grid::new(g.nt, g.ns, g.t_range, g.s_range)?;
    spec.validate()?;
    Ok(spec)
}

/// Writes a line to stdout; a closed pipe ends the process quietly.
fn say(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{text}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing to stdout: {e}");
        std::process::exit(2);
    }
}

fn emit(out: Option<&Path>, file: &str, text: &str) -> anyhow::Result<()> {
    if let Some(dir) = out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let p = dir.join(file);
        fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
        eprintln!("wrote {}", p.display());
    }
    say(text);
    Ok(())
}

fn cmd_gallery(name: Option<String>, params: &[String], out: Option<PathBuf>) -> Outcome {
    let Some(name) = name else {
        if !params.is_empty() {
            return Err(Failure::Usage(anyhow!("--param needs an entry name")));
        }
        for n in gallery::names() {
            let (summary, defaults) = gallery::describe(n)?;
            let d: Vec<String> = defaults.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let extra = if d.is_empty() { String::new() } else { format!(" [{}]", d.join(", ")) };
            say(&format!("{n:<24} {summary}{extra}"));
        }
        return Ok(());
    };
    let spec = gallery::entry_with(&name, &parse_params(params)?)?;
    emit(out.as_deref(), &format!("{name}.json"), &spec.to_json())?;
    Ok(())
}

fn cmd_build(c: &Common) -> Outcome {
    let spec = load_spec(c)?;
    let surf = spec.build()?;
    let sweep = Sweep::new(&surf, spec.grid)?;
    let (mut lag, mut h_max, mut conf_min) = (0.0f64, 0.0f64, f64::INFINITY);
    for j in sweep.jets() {
        lag = lag.max(j.lagrangian_residual());
        h_max = h_max.max(j.h_sqr().sqrt());
        conf_min = conf_min.min(j.conf);
    }
    let curve = |cv: &lagstar::curves::PlanarCurve| {
        json!({
            "kind": cv.kind_name(),
            "domain": [cv.domain().0, cv.domain().1],
            "period": cv.period(),
        })
    };
    let (tc, sc) = (
        0.5 * (spec.grid.t_range.0 + spec.grid.t_range.1),
        0.5 * (spec.grid.s_range.0 + spec.grid.s_range.1),
    );
    let centre = surf.position(tc, sc).ok().map(|p| p.to_r4());
    let summary = json!({
        "surface": spec.name,
        "alpha": curve(surf.alpha()),
        "omega": curve(surf.omega()),
        "base": [spec.base.0, spec.base.1],
        "grid": spec.grid,
        "nodes": spec.grid.len(),
        "masked_nodes": sweep.masked_count(),
        "tolerance": surface_tolerance(&surf),
        "max_lagrangian_residual": lag,
        "max_abs_h": h_max,
        "min_conformal_factor": conf_min,
        "centre_position": centre,
    });
    emit(c.out.as_deref(), &format!("{}_summary.json", spec.name), &serde_json::to_string_pretty(&summary).unwrap())?;
    Ok(())
}

fn cmd_classify(c: &Common, tol: Option<f64>, checks: &[String]) -> Outcome {
    let mut spec = load_spec(c)?;
    if !checks.is_empty() {
        spec.checks = checks
            .iter()
            .map(|s| s.trim().parse::<Family>())
            .collect::<lagstar::Result<_>>()?;
    }
    if spec.checks.is_empty() {
        return Err(Failure::Usage(anyhow!("no checks requested")));
    }
    let surf = spec.build()?;
    let mut report = classify(&spec.name, &surf, spec.grid, &spec.checks, &spec.check_params)?;
    if let Some(t) = tol {
        for r in &mut report.records {
            r.threshold = t;
            r.pass = r.residual < t;
        }
    }
    let text = serde_json::to_string_pretty(&report).unwrap();
    emit(c.out.as_deref(), &format!("{}_report.json", spec.name), &text)?;
    let ok = print_outcome(&report, &spec.expect);
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

/// Per-family table on stderr; true when every record passes or matches
/// its declared expectation.
fn print_outcome(report: &ClassReport, expect: &BTreeMap<String, bool>) -> bool {
    let mut ok = true;
    for r in &report.records {
        let want = expect.get(&r.name).copied().unwrap_or(true);
        let good = r.pass == want;
        ok &= good;
        eprintln!(
            "{:<12} residual {:>11.3e}  threshold {:>9.1e}  {:<4}  expected {:<4}  {}",
            r.name,
            r.residual,
            r.threshold,
            if r.pass { "pass" } else { "fail" },
            if want { "pass" } else { "fail" },
            if good { "ok" } else { "MISMATCH" }
        );
    }
    ok
}

fn cmd_verify(c: &Common, tol: f64, seed: Option<u64>, samples: Option<usize>, step: f64) -> Outcome {
    if !(step > 0.0) {
        return Err(Failure::Usage(anyhow!("--step must be positive")));
    }
    let spec = load_spec(c)?;
    let surf = spec.build()?;
    let g = spec.grid;
    let summary = match seed {
        Some(seed) => {
            let n = samples.unwrap_or(64);
            let mut rng = StdRng::seed_from_u64(seed);
            let lo_hi = |(a, b): (f64, f64)| (a.min(b) + 2.0 * step, a.max(b) - 2.0 * step);
            let (tr, sr) = (lo_hi(g.t_range), lo_hi(g.s_range));
            if tr.0 >= tr.1 || sr.0 >= sr.1 {
                return Err(Failure::Usage(anyhow!("grid ranges are narrower than the stencil")));
            }
            let pts: Vec<(f64, f64)> = (0..n)
                .map(|_| (rng.gen_range(tr.0..tr.1), rng.gen_range(sr.0..sr.1)))
                .collect();
            verify_oracles_at(&surf, &pts, step, 1e-3)?
        }
        None => verify_oracles(&surf, g, samples.unwrap_or(9), step)?,
    };
    let probe = probe_point(&surf, &g);
    let ratio = match probe {
        Some((t, s)) => convergence_ratio(&surf, t, s, 1e-2).ok(),
        None => None,
    };
    let table = verify_table(&spec.name, &summary, tol, ratio);
    emit(c.out.as_deref(), &format!("{}_verify.txt", spec.name), &table)?;
    if summary.samples == 0 {
        return Err(Failure::Numeric(anyhow!("no regular sample points")));
    }
    if summary.max() < tol {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

/// A regular interior point for the convergence probe.
fn probe_point(surf: &StarSurface, g: &Grid) -> Option<(f64, f64)> {
    let at = |f: f64, (a, b): (f64, f64)| a + f * (b - a);
    [0.37, 0.61, 0.23, 0.79]
        .iter()
        .map(|&f| (at(f, g.t_range), at(1.0 - f * 0.9, g.s_range)))
        .find(|&(t, s)| matches!(surf.is_singular(t, s), Ok(false)))
}

fn verify_table(name: &str, s: &OracleSummary, tol: f64, ratio: Option<f64>) -> String {
    let row = |q: &str, v: f64| {
        format!(
            "{q:<16} {v:>12.3e} {tol:>10.1e}  {}\n",
            if v < tol { "pass" } else { "fail" }
        )
    };
    let mut out = format!("# {name}: {} samples\n", s.samples);
    out += &format!("{:<16} {:>12} {:>10}  status\n", "quantity", "max_rel_err", "threshold");
    out += &row("cubic_form", s.c_rel);
    out += &row("mean_curvature", s.h_rel);
    out += &row("j_grad_beta", s.grad_beta_rel);
    out += &row("laplace_beta", s.laplace_beta_rel);
    out += &match ratio {
        Some(r) if r.is_finite() => format!("{:<16} {r:>12.3}\n", "h_ratio_h/2"),
        _ => format!("{:<16} {:>12}\n", "h_ratio_h/2", "n/a"),
    };
    out.pop();
    out
}

fn cmd_mesh(c: &Common, project: &[String], format: &[String]) -> Outcome {
    let spec = load_spec(c)?;
    let mut formats: Vec<String> = if format.is_empty() {
        spec.output.formats.clone()
    } else {
        format.iter().map(|f| f.trim().to_lowercase()).collect()
    };
    formats.dedup();
    for f in &formats {
        if !["obj", "ply", "csv"].contains(&f.as_str()) {
            return Err(Failure::Usage(anyhow!("unknown format `{f}` (obj, ply, csv)")));
        }
    }
    let mut axes: Vec<usize> = Vec::new();
    for p in project {
        match p.trim() {
            "all" => axes.extend(0..4),
            k => {
                let a: usize = k.parse().map_err(|_| anyhow!("--project takes 0-3 or all, got `{k}`"))?;
                if a > 3 {
                    return Err(Failure::Usage(anyhow!("--project takes 0-3 or all, got `{a}`")));
                }
                axes.push(a);
            }
        }
    }
    if axes.is_empty() {
        axes = spec.output.project.clone();
    }
    if axes.is_empty() && formats.iter().any(|f| f != "csv") {
        axes.push(3);
    }
    axes.sort_unstable();
    axes.dedup();

    let dir = c
        .out
        .clone()
        .or_else(|| spec.output.dir.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;

    let surf = spec.build()?;
    let g = spec.grid;
    let spans_period = |p: Option<f64>, (a, b): (f64, f64)| p.is_some_and(|p| ((b - a) - p).abs() < 1e-9);
    let wrap_t = spans_period(surf.alpha().period(), g.t_range);
    let wrap_s = spans_period(surf.omega().period(), g.s_range);
    let grid = meshio::sample_wrapped(&surf, g.t_range, g.s_range, g.nt, g.ns, wrap_t, wrap_s)?;

    let mut written = Vec::new();
    if formats.iter().any(|f| f == "csv") {
        let p = dir.join(format!("{}.csv", spec.name));
        meshio::write_csv(&grid, &p)?;
        written.push(p);
    }
    for &a in &axes {
        let m = meshio::project(&grid, a)?;
        for f in formats.iter().filter(|f| *f != "csv") {
            let p = dir.join(format!("{}_drop{a}.{f}", spec.name));
            match f.as_str() {
                "obj" => meshio::write_obj(&m, &p)?,
                _ => meshio::write_ply(&m, &p)?,
            }
            written.push(p);
        }
    }
    for p in &written {
        say(&p.display().to_string());
    }
    eprintln!(
        "{} nodes, {} singular, wrap t: {wrap_t}, wrap s: {wrap_s}",
        grid.points.len(),
        grid.masked_count()
    );
    Ok(())
}
