use std::fs;
use std::path::Path;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use aware_dyn_core::hopf::{
    hopf_diagram_column, region_coverage_check, trace_hopf_curve, ContinuationOptions, HopfCurve, HopfPair,
    DIAGRAM_INITIAL,
};
use aware_dyn_core::ode::{settle, AttractorSummary};
use aware_dyn_core::saias::{self, phase_portrait_data};
use aware_dyn_core::sauisuas::{
    self, assemble_branch_diagram, branch_column, sotomayor_at_r0_equal_1, sweep_values, SauisuasEquilibrium,
};
use aware_dyn_core::{Complex64, SaiasParams, SauisuasParam, SauisuasParams, State2};

use crate::config::{ConfigError, Model, ScenarioConfig};
use crate::error::CliError;
use crate::format::{num, opt, write_csv};
use crate::manifest::{now, scenario_hash, RunManifest, VERSION};
use crate::plot;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Subcommand {
    Simulate,
    Equilibria,
    PhasePortrait,
    BranchDiagram,
    HopfCurve,
    HopfDiagram,
    Sotomayor,
    RegionCheck,
}

impl Subcommand {
    pub const ALL: [Subcommand; 8] = [
        Subcommand::Simulate,
        Subcommand::Equilibria,
        Subcommand::PhasePortrait,
        Subcommand::BranchDiagram,
        Subcommand::HopfCurve,
        Subcommand::HopfDiagram,
        Subcommand::Sotomayor,
        Subcommand::RegionCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Simulate => "simulate",
            Subcommand::Equilibria => "equilibria",
            Subcommand::PhasePortrait => "phase-portrait",
            Subcommand::BranchDiagram => "branch-diagram",
            Subcommand::HopfCurve => "hopf-curve",
            Subcommand::HopfDiagram => "hopf-diagram",
            Subcommand::Sotomayor => "sotomayor",
            Subcommand::RegionCheck => "region-check",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }
}

/// What a subcommand produced, before the manifest is assembled.
struct Outcome {
    settings: Value,
    results: Value,
    summary: String,
}

struct Writer<'a> {
    dir: &'a Path,
    files: Vec<String>,
}

impl Writer<'_> {
    fn csv(&mut self, name: &str, header: &[&str], rows: Vec<Vec<String>>) -> Result<usize, CliError> {
        let path = self.dir.join(name);
        let n = write_csv(&path, header, rows).map_err(|e| CliError::io(&path, e))?;
        self.files.push(name.to_owned());
        Ok(n)
    }

    fn text(&mut self, name: &str, body: &str) -> Result<(), CliError> {
        let path = self.dir.join(name);
        fs::write(&path, body).map_err(|e| CliError::io(&path, e))?;
        self.files.push(name.to_owned());
        Ok(())
    }

    fn json(&mut self, name: &str, value: &Value) -> Result<(), CliError> {
        let body = serde_json::to_string_pretty(value).expect("json values serialize");
        self.text(name, &format!("{body}\n"))
    }
}

/// Successful run: the manifest (also written to `out/manifest.json`) and
/// a one-line diagnostic.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub manifest: RunManifest,
    pub summary: String,
}

pub fn run_subcommand(
    sub: Subcommand,
    config: &ScenarioConfig,
    out: &Path,
    seed: Option<u64>,
) -> Result<RunReport, CliError> {
    fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let started = now();
    let mut w = Writer { dir: out, files: Vec::new() };
    let outcome = match sub {
        Subcommand::Simulate => simulate(config, &mut w)?,
        Subcommand::Equilibria => equilibria(config, &mut w)?,
        Subcommand::PhasePortrait => phase_portrait(config, seed, &mut w)?,
        Subcommand::BranchDiagram => branch(config, &mut w)?,
        Subcommand::HopfCurve => hopf_curve(config, &mut w)?,
        Subcommand::HopfDiagram => hopf_diagram(config, &mut w)?,
        Subcommand::Sotomayor => sotomayor(config, &mut w)?,
        Subcommand::RegionCheck => region_check(config, &mut w)?,
    };
    let mut settings = solver_settings(config);
    if let (Value::Object(all), Value::Object(task)) = (&mut settings, outcome.settings) {
        all.extend(task);
    }
    let mut files = w.files;
    files.push(MANIFEST_FILE.to_owned());
    let manifest = RunManifest {
        subcommand: sub.name().to_owned(),
        version: VERSION.to_owned(),
        scenario_hash: scenario_hash(sub.name(), seed, config.canonical()),
        seed,
        model: config.model.name().to_owned(),
        started,
        finished: now(),
        outputs: files,
        settings,
        results: outcome.results,
    };
    let path = out.join(MANIFEST_FILE);
    let body = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(&path, format!("{body}\n")).map_err(|e| CliError::io(&path, e))?;
    Ok(RunReport { manifest, summary: format!("{}: {}", sub.name(), outcome.summary) })
}

fn solver_settings(config: &ScenarioConfig) -> Value {
    let s = &config.solver;
    json!({
        "t_end": s.t_end,
        "rel_tol": s.rel_tol,
        "abs_tol": s.abs_tol,
        "tail_fraction": s.tail_fraction,
        "max_horizon": s.max_horizon,
    })
}

fn sauisuas_only<'a>(config: &'a ScenarioConfig, sub: &str) -> Result<&'a SauisuasParams, CliError> {
    match &config.model {
        Model::Sauisuas(p) => Ok(p),
        Model::Saias(_) => Err(ConfigError {
            line: None,
            key: Some("model".into()),
            message: format!("{sub} requires model = sauisuas"),
        }
        .into()),
    }
}

fn saias_only<'a>(config: &'a ScenarioConfig, sub: &str) -> Result<&'a SaiasParams, CliError> {
    match &config.model {
        Model::Saias(p) => Ok(p),
        Model::Sauisuas(_) => Err(ConfigError {
            line: None,
            key: Some("model".into()),
            message: format!("{sub} requires model = saias"),
        }
        .into()),
    }
}

fn initial_state<const N: usize>(config: &ScenarioConfig, default: [f64; N]) -> Result<[f64; N], CliError> {
    let Some(points) = config.task.points("initial", N)? else { return Ok(default) };
    let line = config.task.line_of("initial").unwrap_or(0);
    let [p] = &points[..] else {
        return Err(ConfigError { line: Some(line), key: Some("initial".into()), message: "expected one point".into() }.into());
    };
    let mut x = [0.0; N];
    x.copy_from_slice(p);
    if x.iter().any(|v| *v < 0.0) || x.iter().sum::<f64>() > 1.0 {
        return Err(ConfigError {
            line: Some(line),
            key: Some("initial".into()),
            message: "initial state must be nonnegative with coordinates summing to at most 1".into(),
        }
        .into());
    }
    Ok(x)
}

fn summary_json<const N: usize>(s: &AttractorSummary<N>) -> Value {
    json!({
        "kind": s.kind.name(),
        "i_min": s.i_min,
        "i_max": s.i_max,
        "relative_amplitude": s.relative_amplitude,
        "period": s.period,
        "horizon": s.horizon,
        "terminal_state": s.terminal_state.to_vec(),
    })
}

fn simulate(config: &ScenarioConfig, w: &mut Writer) -> Result<Outcome, CliError> {
    let opts = config.solver.settle();
    let (initial, results, kind) = match &config.model {
        Model::Saias(p) => {
            let x0 = initial_state(config, [0.0, 0.1])?;
            let run = settle(p, x0, &opts)?;
            let rows = run
                .initial_segment
                .times()
                .iter()
                .zip(run.initial_segment.states())
                .map(|(t, x)| vec![num(*t), num(x[0]), num(x[1]), num(1.0 - x[0] - x[1])])
                .collect();
            w.csv("trajectory.csv", &["t", "a", "i", "s"], rows)?;
            w.text("plot_trajectory.py", &plot::trajectory(false))?;
            (x0.to_vec(), summary_json(&run.summary), run.summary.kind)
        }
        Model::Sauisuas(p) => {
            let x0 = initial_state(config, DIAGRAM_INITIAL)?;
            let run = settle(p, x0, &opts)?;
            let rows = run
                .initial_segment
                .times()
                .iter()
                .zip(run.initial_segment.states())
                .map(|(t, x)| vec![num(*t), num(x[0]), num(x[1]), num(x[2]), num(1.0 - x[0] - x[1] - x[2])])
                .collect();
            w.csv("trajectory.csv", &["t", "a", "u", "i", "s"], rows)?;
            w.text("plot_trajectory.py", &plot::trajectory(true))?;
            (x0.to_vec(), summary_json(&run.summary), run.summary.kind)
        }
    };
    Ok(Outcome {
        settings: json!({ "initial": initial }),
        summary: format!(
            "{} (i in [{}, {}])",
            kind.name(),
            num(results["i_min"].as_f64().unwrap_or(f64::NAN)),
            num(results["i_max"].as_f64().unwrap_or(f64::NAN))
        ),
        results,
    })
}

fn eigen_cells(values: &[Complex64]) -> Vec<String> {
    values.iter().flat_map(|z| [num(z.re), num(z.im)]).collect()
}

fn eigen_json(values: &[Complex64]) -> Value {
    Value::Array(values.iter().map(|z| json!([z.re, z.im])).collect())
}

fn saias_rows(eqs: &[saias::SaiasEquilibrium]) -> (Vec<Vec<String>>, Vec<Value>) {
    let csv = eqs
        .iter()
        .map(|e| {
            let mut row = vec![e.kind.name().to_owned(), num(e.a_star), num(e.i_star)];
            row.extend(eigen_cells(&e.eigenvalues));
            row.push(e.stable.to_string());
            row
        })
        .collect();
    let json = eqs
        .iter()
        .map(|e| {
            json!({
                "kind": e.kind.name(), "a": e.a_star, "i": e.i_star,
                "eigenvalues": eigen_json(&e.eigenvalues), "stable": e.stable, "marginal": e.marginal,
            })
        })
        .collect();
    (csv, json)
}

fn sauisuas_row(prefix: Vec<String>, e: &SauisuasEquilibrium) -> Vec<String> {
    let mut row = prefix;
    row.extend([e.kind.name().to_owned(), num(e.a_star), num(e.u_star), num(e.i_star)]);
    row.extend(eigen_cells(&e.eigenvalues));
    row.push(e.stable.to_string());
    row
}

fn sauisuas_json(e: &SauisuasEquilibrium) -> Value {
    json!({
        "kind": e.kind.name(), "a": e.a_star, "u": e.u_star, "i": e.i_star,
        "eigenvalues": eigen_json(&e.eigenvalues), "stable": e.stable, "marginal": e.marginal,
    })
}

const SAIAS_EQ_HEADER: [&str; 8] = ["kind", "a", "i", "re_l1", "im_l1", "re_l2", "im_l2", "stable"];
const SAUISUAS_EQ_HEADER: [&str; 11] =
    ["kind", "a", "u", "i", "re_l1", "im_l1", "re_l2", "im_l2", "re_l3", "im_l3", "stable"];

fn equilibria(config: &ScenarioConfig, w: &mut Writer) -> Result<Outcome, CliError> {
    let rows: Vec<Value> = match &config.model {
        Model::Saias(p) => {
            let eqs = saias::find_equilibria(p)?;
            let (csv, json) = saias_rows(&eqs);
            w.csv("equilibria.csv", &SAIAS_EQ_HEADER, csv)?;
            json
        }
        Model::Sauisuas(p) => {
            let eqs = sauisuas::find_equilibria(p)?;
            w.csv("equilibria.csv", &SAUISUAS_EQ_HEADER, eqs.iter().map(|e| sauisuas_row(Vec::new(), e)).collect())?;
            eqs.iter().map(sauisuas_json).collect()
        }
    };
    let stable = rows.iter().filter(|r| r["stable"] == true).count();
    Ok(Outcome {
        settings: json!({}),
        summary: format!("{} equilibria, {stable} stable", rows.len()),
        results: json!({ "equilibria": rows }),
    })
}

/// Uniform samples from the triangle `a, i >= 0, a + i <= 1`.
fn random_seeds(seed: u64, count: usize) -> Vec<State2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (x, y): (f64, f64) = (rng.random(), rng.random());
            let (lo, hi) = if x < y { (x, y) } else { (y, x) };
            State2::new(lo, hi - lo)
        })
        .collect()
}

fn phase_portrait(config: &ScenarioConfig, seed: Option<u64>, w: &mut Writer) -> Result<Outcome, CliError> {
    let params = saias_only(config, "phase-portrait")?;
    let task = &config.task;
    let grid_n = task.usize("grid_n")?.unwrap_or(20);
    let seeds: Vec<State2> = match task.points("seeds", 2)? {
        Some(points) => points.iter().map(|p| State2::new(p[0], p[1])).collect(),
        None => random_seeds(seed.unwrap_or(0), task.usize("seed_count")?.unwrap_or(8)),
    };
    let data = phase_portrait_data(params, grid_n, &seeds, config.solver.t_end, &config.solver.solver())?;
    w.csv(
        "field.csv",
        &["a", "i", "da", "di"],
        data.field.iter().map(|f| vec![num(f.a), num(f.i), num(f.da), num(f.di)]).collect(),
    )?;
    w.csv(
        "nullclines.csv",
        &["name", "a", "i"],
        data.nullclines
            .iter()
            .flat_map(|n| n.points.iter().map(|p| vec![n.name.to_owned(), num(p.a), num(p.i)]))
            .collect(),
    )?;
    w.csv(
        "trajectories.csv",
        &["seed", "t", "a", "i"],
        data.trajectories
            .iter()
            .enumerate()
            .flat_map(|(k, tr)| {
                tr.times().iter().zip(tr.states()).map(move |(t, x)| vec![k.to_string(), num(*t), num(x[0]), num(x[1])])
            })
            .collect(),
    )?;
    let (csv, json) = saias_rows(&data.equilibria);
    w.csv("equilibria.csv", &SAIAS_EQ_HEADER, csv)?;
    w.text("plot_phase_portrait.py", &plot::phase_portrait())?;
    Ok(Outcome {
        settings: json!({
            "grid_n": grid_n,
            "seeds": seeds.iter().map(|s| [s.a, s.i]).collect::<Vec<_>>(),
        }),
        summary: format!("{} field samples, {} trajectories, {} equilibria", data.field.len(), seeds.len(), json.len()),
        results: json!({ "equilibria": json }),
    })
}

fn required_param(config: &ScenarioConfig, key: &str) -> Result<SauisuasParam, CliError> {
    let task = &config.task;
    Ok(task.require(key, task.param(key)?)?)
}

fn required_range(config: &ScenarioConfig, key: &str) -> Result<(f64, f64), CliError> {
    let task = &config.task;
    Ok(task.require(key, task.range(key)?)?)
}

fn branch(config: &ScenarioConfig, w: &mut Writer) -> Result<Outcome, CliError> {
    let params = sauisuas_only(config, "branch-diagram")?;
    let parameter = required_param(config, "sweep")?;
    let (lo, hi) = required_range(config, "range")?;
    let steps = config.task.usize("steps")?.unwrap_or(200);
    let binding = config.task.binding()?;
    let columns = sweep_values(lo, hi, steps)?
        .into_par_iter()
        .map(|v| branch_column(params, parameter, v, binding))
        .collect::<Result<Vec<_>, _>>()?;
    let diagram = assemble_branch_diagram(params, parameter, binding, columns)?;
    let mut header = vec!["sweep_value"];
    header.extend(SAUISUAS_EQ_HEADER);
    let rows = diagram
        .columns
        .iter()
        .flat_map(|c| c.equilibria.iter().map(|e| sauisuas_row(vec![num(c.value)], e)))
        .collect();
    w.csv("branch.csv", &header, rows)?;
    let direction = |b: &sauisuas::Bifurcation| b.direction.map(|d| format!("{d:?}").to_lowercase());
    w.csv(
        "bifurcations.csv",
        &["kind", "value", "direction"],
        diagram
            .bifurcations
            .iter()
            .map(|b| vec![b.kind.name().to_owned(), num(b.value), direction(b).unwrap_or_default()])
            .collect(),
    )?;
    w.text("plot_branch.py", &plot::branch_diagram(parameter.name()))?;
    let bifs: Vec<Value> = diagram
        .bifurcations
        .iter()
        .map(|b| json!({ "kind": b.kind.name(), "value": b.value, "direction": direction(b) }))
        .collect();
    let listed: Vec<String> = diagram.bifurcations.iter().map(|b| format!("{} at {}", b.kind.name(), num(b.value))).collect();
    Ok(Outcome {
        settings: json!({
            "sweep": parameter.name(), "range": [lo, hi], "steps": steps, "binding": format!("{binding:?}"),
        }),
        summary: format!(
            "{} columns, bifurcations: {}",
            diagram.columns.len(),
            if listed.is_empty() { "none".into() } else { listed.join(", ") }
        ),
        results: json!({ "bifurcations": bifs }),
    })
}

fn continuation_options(config: &ScenarioConfig, default_step: f64, tau_range: (f64, f64)) -> Result<ContinuationOptions, CliError> {
    let task = &config.task;
    let mut opts = ContinuationOptions::new(task.f64("step")?.unwrap_or(default_step), tau_range);
    if let Some(x) = task.f64("min_step")? {
        opts.min_step = x;
    }
    if let Some(x) = task.f64("predictor_tolerance")? {
        opts.predictor_tolerance = x;
    }
    if let Some(n) = task.usize("scan_steps")? {
        opts.scan_steps = n;
    }
    if let Some(k) = task.choice("from", &["low", "high"])? {
        opts.from_high = k == 1;
    }
    let line = |k: &str| task.line_of(k);
    if !(opts.step > 0.0 && opts.min_step > 0.0 && opts.min_step <= opts.step) {
        return Err(ConfigError { line: line("step"), key: Some("step".into()), message: "require 0 < min_step <= step".into() }.into());
    }
    if !(opts.predictor_tolerance > 0.0) || opts.scan_steps == 0 {
        return Err(ConfigError {
            line: line("predictor_tolerance").or(line("scan_steps")),
            key: None,
            message: "predictor_tolerance and scan_steps must be positive".into(),
        }
        .into());
    }
    Ok(opts)
}

fn opts_json(opts: &ContinuationOptions) -> Value {
    json!({
        "step": opts.step, "min_step": opts.min_step, "predictor_tolerance": opts.predictor_tolerance,
        "tau_range": [opts.tau_range.0, opts.tau_range.1], "scan_steps": opts.scan_steps,
        "start_candidates": opts.start_candidates, "from_high": opts.from_high,
    })
}

fn curve_rows(curve: &HopfCurve) -> Vec<Vec<String>> {
    curve
        .points
        .iter()
        .map(|p| vec![num(p.sigma), num(p.tau), num(p.a), num(p.u), num(p.i), num(p.omega)])
        .collect()
}

const CURVE_HEADER: [&str; 6] = ["sigma", "tau", "a", "u", "i", "omega"];

fn curve_json(curve: &HopfCurve) -> Value {
    json!({
        "points": curve.points.len(),
        "sigma_span": curve.sigma_span().map(|(a, b)| [a, b]),
        "truncated": curve.truncated,
        "left_region": curve.left_region,
    })
}

fn hopf_curve(config: &ScenarioConfig, w: &mut Writer) -> Result<Outcome, CliError> {
    let params = sauisuas_only(config, "hopf-curve")?;
    let sigma = required_param(config, "sigma")?;
    let tau = required_param(config, "tau")?;
    let binding = config.task.binding()?;
    let sigma_range = required_range(config, "sigma_range")?;
    let opts = continuation_options(config, 1e-3, required_range(config, "tau_range")?)?;
    let pair = HopfPair::new(sigma, tau, binding)?;
    let curve = trace_hopf_curve(params, &pair, sigma_range, &opts)?;
    w.csv("hopf_curve.csv", &CURVE_HEADER, curve_rows(&curve))?;
    w.text("plot_hopf_curve.py", &plot::hopf_curve("hopf_curve.csv", sigma.name(), tau.name()))?;
    let summary = match curve.sigma_span() {
        None => "no Hopf point in range".to_owned(),
        Some((a, b)) => format!(
            "{} points, {} in [{}, {}]{}",
            curve.points.len(),
            sigma.name(),
            num(a),
            num(b),
            if curve.truncated { ", truncated" } else if curve.left_region { ", left region" } else { "" }
        ),
    };
    let mut settings = opts_json(&opts);
    settings["sigma"] = json!(sigma.name());
    settings["tau"] = json!(tau.name());
    settings["sigma_range"] = json!([sigma_range.0, sigma_range.1]);
    settings["binding"] = json!(format!("{binding:?}"));
    Ok(Outcome { settings, summary, results: curve_json(&curve) })
}

fn hopf_diagram(config: &ScenarioConfig, w: &mut Writer) -> Result<Outcome, CliError> {
    let params = sauisuas_only(config, "hopf-diagram")?;
    let (lo, hi) = required_range(config, "q_range")?;
    let steps = config.task.usize("steps")?.unwrap_or(100);
    let settle_opts = config.solver.settle();
    let columns = sweep_values(lo, hi, steps)?
        .into_par_iter()
        .map(|q| hopf_diagram_column(params, q, &settle_opts))
        .collect::<Result<Vec<_>, _>>()?;
    let rows: Vec<_> = columns.into_iter().flatten().collect();
    let unstable = rows.iter().filter(|r| !r.stable).count();
    w.csv(
        "hopf_diagram.csv",
        &["q", "i_star", "stable", "env_min", "env_max"],
        rows.iter()
            .map(|r| {
                vec![
                    num(r.q),
                    num(r.i_star),
                    r.stable.to_string(),
                    opt(r.envelope.map(|e| e.0)),
                    opt(r.envelope.map(|e| e.1)),
                ]
            })
            .collect(),
    )?;
    w.text("plot_hopf_diagram.py", &plot::hopf_diagram())?;
    Ok(Outcome {
        settings: json!({ "q_range": [lo, hi], "steps": steps, "initial": DIAGRAM_INITIAL.to_vec() }),
        summary: format!("{} rows, {unstable} unstable", rows.len()),
        results: json!({ "rows": rows.len(), "unstable_rows": unstable }),
    })
}

fn sotomayor(config: &ScenarioConfig, w: &mut Writer) -> Result<Outcome, CliError> {
    let params = sauisuas_only(config, "sotomayor")?;
    let r = sotomayor_at_r0_equal_1(params)?;
    let report = json!({
        "beta": params.delta,
        "left_vec_dot_f_mu": r.left_vec_dot_f_mu,
        "left_dot_dfmu_v": r.left_dot_dfmu_v,
        "left_dot_d2f_vv": r.left_dot_d2f_vv,
        "v": r.v.to_vec(),
        "null_residual": r.null_residual,
        "forward": r.is_forward(),
    });
    w.json("sotomayor.json", &report)?;
    Ok(Outcome {
        settings: json!({ "beta": params.delta }),
        summary: format!(
            "signs ({}, {}, {}), {}",
            num(r.left_vec_dot_f_mu),
            num(r.left_dot_dfmu_v),
            num(r.left_dot_d2f_vv),
            if r.is_forward() { "forward" } else { "not forward" }
        ),
        results: report,
    })
}

fn region_check(config: &ScenarioConfig, w: &mut Writer) -> Result<Outcome, CliError> {
    let params = sauisuas_only(config, "region-check")?;
    let tau_range = config.task.range("tau_range")?.unwrap_or((0.0, 10.0));
    let opts = continuation_options(config, 0.01, tau_range)?;
    let edge_samples = config.task.usize("edge_samples")?.unwrap_or(100);
    let report = region_coverage_check(params, &opts, edge_samples)?;
    w.csv("region_curve.csv", &CURVE_HEADER, curve_rows(&report.curve))?;
    w.text("plot_region_curve.py", &plot::hopf_curve("region_curve.csv", "p", "q"))?;
    let failed: Vec<f64> = report.edge_checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    let results = json!({
        "covered": report.covered,
        "curve": curve_json(&report.curve),
        "edge_checks": report.edge_checks.len(),
        "edge_failures": failed,
    });
    w.json("region_check.json", &results)?;
    let mut settings = opts_json(&opts);
    settings["edge_samples"] = json!(edge_samples);
    Ok(Outcome {
        settings,
        summary: format!("covered = {} ({} curve points)", report.covered, report.curve.points.len()),
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Subcommand::ALL {
            assert_eq!(Subcommand::from_name(s.name()), Some(s));
        }
        assert_eq!(Subcommand::from_name("solve"), None);
    }

    #[test]
    fn seeds_lie_in_the_triangle() {
        let seeds = random_seeds(7, 500);
        assert!(seeds.iter().all(|s| s.a >= 0.0 && s.i >= 0.0 && s.a + s.i <= 1.0));
        assert_eq!(seeds, random_seeds(7, 500));
        assert_ne!(seeds, random_seeds(8, 500));
    }
}
