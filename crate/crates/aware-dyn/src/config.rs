//! Scenario files: flat `key = value` lines, `#` comments and one optional
//! `[task]` section.

use std::collections::BTreeMap;
use std::fmt;

use aware_dyn_core::ode::{SettleOptions, SolverOptions};
use aware_dyn_core::{Binding, RateFamily, RateFunction, SaiasParams, SauisuasParam, SauisuasParams};

const SAIAS_KEYS: [&str; 7] = ["beta", "beta_a", "delta", "alpha_i", "alpha_a", "delta_a", "p"];
const SOLVER_KEYS: [&str; 5] = ["t_end", "rel_tol", "abs_tol", "tail_fraction", "max_horizon"];
const TASK_KEYS: [&str; 19] = [
    "sigma",
    "tau",
    "sigma_range",
    "tau_range",
    "step",
    "min_step",
    "predictor_tolerance",
    "scan_steps",
    "from",
    "binding",
    "sweep",
    "range",
    "steps",
    "q_range",
    "grid_n",
    "seeds",
    "seed_count",
    "initial",
    "edge_samples",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub key: Option<String>,
    pub message: String,
}

impl ConfigError {
    fn at(line: usize, key: Option<&str>, message: impl Into<String>) -> Self {
        Self { line: Some(line), key: key.map(str::to_owned), message: message.into() }
    }

    fn key(key: &str, message: impl Into<String>) -> Self {
        Self { line: None, key: Some(key.to_owned()), message: message.into() }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.line, &self.key) {
            (Some(l), Some(k)) => write!(f, "config line {l}, key `{k}`: {}", self.message),
            (Some(l), None) => write!(f, "config line {l}: {}", self.message),
            (None, Some(k)) => write!(f, "config key `{k}`: {}", self.message),
            (None, None) => write!(f, "config: {}", self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq)]
struct Entry {
    value: String,
    line: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Saias(SaiasParams),
    Sauisuas(SauisuasParams),
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Saias(_) => "saias",
            Model::Sauisuas(_) => "sauisuas",
        }
    }
}

/// Integration and classification settings, with defaults filled in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    pub t_end: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub tail_fraction: f64,
    pub max_horizon: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        let s = SettleOptions::default();
        Self {
            t_end: s.t_end,
            rel_tol: s.solver.rel_tol,
            abs_tol: s.solver.abs_tol,
            tail_fraction: s.tail_fraction,
            max_horizon: s.max_horizon,
        }
    }
}

impl SolverSettings {
    pub fn solver(&self) -> SolverOptions {
        SolverOptions::with_tolerances(self.rel_tol, self.abs_tol)
    }

    pub fn settle(&self) -> SettleOptions {
        SettleOptions {
            t_end: self.t_end,
            tail_fraction: self.tail_fraction,
            max_horizon: self.max_horizon,
            solver: self.solver(),
            ..SettleOptions::default()
        }
    }
}

/// The `[task]` section, read lazily by each subcommand.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Task {
    entries: BTreeMap<String, Entry>,
}

impl Task {
    fn entry(&self, key: &str) -> Option<&Entry> {
        self.entries.get(key)
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entry(key).map(|e| e.value.as_str())
    }

    pub fn require<T>(&self, key: &str, value: Option<T>) -> Result<T, ConfigError> {
        value.ok_or_else(|| ConfigError::key(key, "required by this subcommand"))
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        self.entry(key).map(|e| number(&e.value, e.line, key)).transpose()
    }

    pub fn usize(&self, key: &str) -> Result<Option<usize>, ConfigError> {
        self.entry(key)
            .map(|e| {
                e.value
                    .parse::<usize>()
                    .map_err(|_| ConfigError::at(e.line, Some(key), "expected a nonnegative integer"))
            })
            .transpose()
    }

    /// `lo, hi` with `lo < hi`.
    pub fn range(&self, key: &str) -> Result<Option<(f64, f64)>, ConfigError> {
        let Some(e) = self.entry(key) else { return Ok(None) };
        let v = numbers(&e.value, e.line, key)?;
        match v[..] {
            [lo, hi] if lo < hi => Ok(Some((lo, hi))),
            [_, _] => Err(ConfigError::at(e.line, Some(key), "range must satisfy lo < hi")),
            _ => Err(ConfigError::at(e.line, Some(key), "expected `lo, hi`")),
        }
    }

    pub fn numbers(&self, key: &str) -> Result<Option<Vec<f64>>, ConfigError> {
        self.entry(key).map(|e| numbers(&e.value, e.line, key)).transpose()
    }

    /// Points separated by `;`, coordinates by `,`.
    pub fn points(&self, key: &str, dim: usize) -> Result<Option<Vec<Vec<f64>>>, ConfigError> {
        let Some(e) = self.entry(key) else { return Ok(None) };
        e.value
            .split(';')
            .map(|chunk| {
                let v = numbers(chunk, e.line, key)?;
                if v.len() == dim {
                    Ok(v)
                } else {
                    Err(ConfigError::at(e.line, Some(key), format!("each point needs {dim} coordinates")))
                }
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }

    pub fn param(&self, key: &str) -> Result<Option<SauisuasParam>, ConfigError> {
        self.entry(key)
            .map(|e| {
                SauisuasParam::from_name(&e.value)
                    .ok_or_else(|| ConfigError::at(e.line, Some(key), format!("unknown parameter `{}`", e.value)))
            })
            .transpose()
    }

    pub fn binding(&self) -> Result<Binding, ConfigError> {
        let Some(e) = self.entry("binding") else { return Ok(Binding::None) };
        match e.value.replace(' ', "").as_str() {
            "none" => Ok(Binding::None),
            "p=1-q" | "p_complements_q" => Ok(Binding::PComplementsQ),
            _ => Err(ConfigError::at(e.line, Some("binding"), "expected `none` or `p = 1 - q`")),
        }
    }

    pub fn choice(&self, key: &str, options: &[&str]) -> Result<Option<usize>, ConfigError> {
        self.entry(key)
            .map(|e| {
                options.iter().position(|o| *o == e.value).ok_or_else(|| {
                    ConfigError::at(e.line, Some(key), format!("expected one of {}", options.join(", ")))
                })
            })
            .transpose()
    }

    pub fn line_of(&self, key: &str) -> Option<usize> {
        self.entry(key).map(|e| e.line)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub model: Model,
    pub solver: SolverSettings,
    pub task: Task,
    canonical: String,
}

impl ScenarioConfig {
    /// Normalized `section.key=value` lines, sorted; comments and spacing
    /// do not affect it.
    pub fn canonical(&self) -> &str {
        &self.canonical
    }
}

fn number(text: &str, line: usize, key: &str) -> Result<f64, ConfigError> {
    let x: f64 = text
        .trim()
        .parse()
        .map_err(|_| ConfigError::at(line, Some(key), format!("expected a number, got `{}`", text.trim())))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(ConfigError::at(line, Some(key), "value must be finite"))
    }
}

fn numbers(text: &str, line: usize, key: &str) -> Result<Vec<f64>, ConfigError> {
    text.split(',').map(|t| number(t, line, key)).collect()
}

fn rate(text: &str, line: usize, key: &str) -> Result<RateFunction, ConfigError> {
    let (family, coefficient) = match text.split_once(':') {
        Some((f, c)) => {
            let family = RateFamily::from_name(f.trim()).ok_or_else(|| {
                ConfigError::at(line, Some(key), format!("unknown rate family `{}`", f.trim()))
            })?;
            (family, number(c, line, key)?)
        }
        None => (RateFamily::Constant, number(text, line, key)?),
    };
    RateFunction::new(family, coefficient).map_err(|e| ConfigError::at(line, Some(key), e.to_string()))
}

fn split_sections(text: &str) -> Result<(BTreeMap<String, Entry>, Task), ConfigError> {
    let mut top = BTreeMap::new();
    let mut task = BTreeMap::new();
    let mut in_task = false;
    let mut seen_task = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if content.starts_with('[') {
            if content != "[task]" {
                return Err(ConfigError::at(line, None, format!("unknown section `{content}`")));
            }
            if seen_task {
                return Err(ConfigError::at(line, None, "`[task]` may appear only once"));
            }
            in_task = true;
            seen_task = true;
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError::at(line, None, "expected `key = value`"));
        };
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(ConfigError::at(line, None, "empty key"));
        }
        if value.is_empty() {
            return Err(ConfigError::at(line, Some(key), "empty value"));
        }
        let section = if in_task { &mut task } else { &mut top };
        let entry = Entry { value: value.to_owned(), line };
        if section.insert(key.to_owned(), entry).is_some() {
            return Err(ConfigError::at(line, Some(key), "duplicate key"));
        }
    }
    Ok((top, Task { entries: task }))
}

fn require<'a>(top: &'a BTreeMap<String, Entry>, key: &str) -> Result<&'a Entry, ConfigError> {
    top.get(key).ok_or_else(|| ConfigError::key(key, "missing required parameter"))
}

fn parse_saias(top: &BTreeMap<String, Entry>) -> Result<SaiasParams, ConfigError> {
    let num = |k: &str| require(top, k).and_then(|e| number(&e.value, e.line, k));
    let rf = |k: &str| require(top, k).and_then(|e| rate(&e.value, e.line, k));
    let params = SaiasParams {
        beta: num("beta")?,
        beta_a: num("beta_a")?,
        delta: num("delta")?,
        alpha_i: rf("alpha_i")?,
        alpha_a: rf("alpha_a")?,
        delta_a: rf("delta_a")?,
        p: rf("p")?,
    };
    params.validate().map_err(|e| ConfigError { line: None, key: None, message: format!("invalid SAIAS parameters: {e}") })?;
    Ok(params)
}

fn parse_sauisuas(top: &BTreeMap<String, Entry>) -> Result<SauisuasParams, ConfigError> {
    let mut params = SauisuasParams {
        beta: 0.0,
        beta_a: 0.0,
        beta_u: 0.0,
        delta: 0.0,
        delta_a: 0.0,
        delta_u: 0.0,
        alpha_i: 0.0,
        alpha_a: 0.0,
        alpha_u: 0.0,
        p: 0.0,
        q: 0.0,
    };
    for key in SauisuasParam::ALL {
        let e = require(top, key.name())?;
        params.set(key, number(&e.value, e.line, key.name())?);
    }
    if params.p + params.q > 1.0 + 1e-15 {
        let line = top["q"].line.max(top["p"].line);
        return Err(ConfigError::at(
            line,
            Some("q"),
            format!(
                "p + q = {} exceeds 1: recovering hosts split into aware (p), unwilling (q) and susceptible (1 - p - q)",
                params.p + params.q
            ),
        ));
    }
    params
        .validate()
        .map_err(|e| ConfigError { line: None, key: None, message: format!("invalid SAUIUAS parameters: {e}") })?;
    Ok(params)
}

fn parse_solver(top: &BTreeMap<String, Entry>) -> Result<SolverSettings, ConfigError> {
    let mut s = SolverSettings::default();
    for key in SOLVER_KEYS {
        let Some(e) = top.get(key) else { continue };
        let x = number(&e.value, e.line, key)?;
        let ok = match key {
            "t_end" | "max_horizon" => x > 0.0,
            "rel_tol" | "abs_tol" => x > 0.0 && x <= 1e-2,
            _ => x > 0.0 && x <= 0.5,
        };
        if !ok {
            return Err(ConfigError::at(e.line, Some(key), "value out of range"));
        }
        match key {
            "t_end" => s.t_end = x,
            "rel_tol" => s.rel_tol = x,
            "abs_tol" => s.abs_tol = x,
            "tail_fraction" => s.tail_fraction = x,
            _ => s.max_horizon = x,
        }
    }
    if s.max_horizon < s.t_end {
        s.max_horizon = s.t_end;
    }
    Ok(s)
}

pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let (top, task) = split_sections(text)?;
    if top.is_empty() && task.entries.is_empty() {
        return Err(ConfigError { line: None, key: None, message: "empty configuration".into() });
    }
    let model_entry = require(&top, "model")?;
    let allowed: Vec<&str> = match model_entry.value.as_str() {
        "saias" => SAIAS_KEYS.to_vec(),
        "sauisuas" => SauisuasParam::ALL.iter().map(|k| k.name()).collect(),
        other => {
            return Err(ConfigError::at(
                model_entry.line,
                Some("model"),
                format!("unknown model `{other}` (expected saias or sauisuas)"),
            ))
        }
    };
    for (key, e) in &top {
        if key != "model" && !allowed.contains(&key.as_str()) && !SOLVER_KEYS.contains(&key.as_str()) {
            return Err(ConfigError::at(e.line, Some(key), format!("unknown key for model `{}`", model_entry.value)));
        }
    }
    for (key, e) in &task.entries {
        if !TASK_KEYS.contains(&key.as_str()) {
            return Err(ConfigError::at(e.line, Some(key), "unknown task key"));
        }
    }
    let model = if model_entry.value == "saias" {
        Model::Saias(parse_saias(&top)?)
    } else {
        Model::Sauisuas(parse_sauisuas(&top)?)
    };
    let solver = parse_solver(&top)?;
    let mut canonical = String::new();
    for (k, e) in &top {
        canonical.push_str(&format!("{k}={}\n", e.value));
    }
    for (k, e) in &task.entries {
        canonical.push_str(&format!("task.{k}={}\n", e.value));
    }
    Ok(ScenarioConfig { model, solver, task, canonical })
}
