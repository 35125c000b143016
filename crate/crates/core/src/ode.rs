//! Adaptive Dormand–Prince 5(4) integration on the feasible simplex and
//! classification of the resulting long-time behavior.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{omega_violation, saias_rhs, sauisuas_rhs, SaiasParams, SauisuasParams, OMEGA_TOLERANCE};

/// Stored states may violate Ω by at most this much; they are clipped.
pub const TRAJECTORY_TOLERANCE: f64 = 1e-9;

/// An autonomous vector field whose natural domain is the simplex
/// `{x ≥ 0, Σx ≤ 1}`.
pub trait SimplexField<const N: usize> {
    fn rhs(&self, y: &[f64; N]) -> [f64; N];
}

impl SimplexField<2> for SaiasParams {
    #[inline]
    fn rhs(&self, y: &[f64; 2]) -> [f64; 2] {
        saias_rhs(y, self)
    }
}

impl SimplexField<3> for SauisuasParams {
    #[inline]
    fn rhs(&self, y: &[f64; 3]) -> [f64; 3] {
        sauisuas_rhs(y, self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Lower bound on the number of output samples over the interval; the
    /// step is capped at `span / min_samples`.
    pub min_samples: usize,
    pub max_steps: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-8, abs_tol: 1e-10, min_samples: 2000, max_steps: 20_000_000 }
    }
}

impl SolverOptions {
    pub fn with_tolerances(rel_tol: f64, abs_tol: f64) -> Self {
        Self { rel_tol, abs_tol, ..Self::default() }
    }

    fn validate(&self) -> Result<()> {
        let ok = |x: f64| x > 0.0 && x <= 1e-2;
        if !(ok(self.rel_tol) && ok(self.abs_tol)) {
            return Err(Error::InvalidParameter("tolerances must lie in (0, 1e-2]"));
        }
        if self.min_samples == 0 {
            return Err(Error::InvalidParameter("min_samples must be positive"));
        }
        Ok(())
    }
}

/// Time series of a simplex-valued solution. The last coordinate is the
/// infectious fraction `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<const N: usize> {
    times: Vec<f64>,
    states: Vec<[f64; N]>,
}

impl<const N: usize> Trajectory<N> {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[[f64; N]] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last_state(&self) -> [f64; N] {
        *self.states.last().expect("trajectory holds the initial state")
    }

    pub fn end_time(&self) -> f64 {
        *self.times.last().expect("trajectory holds the initial state")
    }

    pub fn prevalence(&self) -> impl Iterator<Item = f64> + '_ {
        self.states.iter().map(|x| x[N - 1])
    }

    /// Builds a trajectory from raw samples, checking monotone time.
    pub fn from_samples(times: Vec<f64>, states: Vec<[f64; N]>) -> Result<Self> {
        if times.len() != states.len() || times.is_empty() {
            return Err(Error::InvalidParameter("times and states must be non-empty and equal length"));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter("times must be strictly increasing"));
        }
        Ok(Self { times, states })
    }

    /// Appends `other`, whose first sample must coincide with our last.
    fn extend_with(&mut self, other: Trajectory<N>) {
        let skip = usize::from(self.times.last() == other.times.first());
        self.times.extend_from_slice(&other.times[skip..]);
        self.states.extend_from_slice(&other.states[skip..]);
    }

    /// Drops samples before `t`.
    fn retain_from(&mut self, t: f64) {
        let first = self.times.partition_point(|&x| x < t);
        self.times.drain(..first);
        self.states.drain(..first);
    }
}

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const PI_BETA: f64 = 0.04;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;

#[inline]
fn combine<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    core::array::from_fn(|k| y[k] + h * terms.iter().map(|(c, v)| c * v[k]).sum::<f64>())
}

fn error_norm<const N: usize>(err: &[f64; N], y0: &[f64; N], y1: &[f64; N], o: &SolverOptions) -> f64 {
    let mut acc = 0.0;
    for k in 0..N {
        let sc = o.abs_tol + o.rel_tol * libm::fabs(y0[k]).max(libm::fabs(y1[k]));
        let r = err[k] / sc;
        acc += r * r;
    }
    libm::sqrt(acc / N as f64)
}

fn initial_step<const N: usize, F: SimplexField<N>>(
    field: &F,
    y0: &[f64; N],
    f0: &[f64; N],
    o: &SolverOptions,
    h_max: f64,
) -> f64 {
    let zero = [0.0; N];
    let d0 = error_norm(y0, &zero, y0, o);
    let d1 = error_norm(f0, &zero, y0, o);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let h0 = h0.min(h_max);
    let y1 = combine(y0, h0, &[(1.0, f0)]);
    let f1 = field.rhs(&y1);
    let diff: [f64; N] = core::array::from_fn(|k| f1[k] - f0[k]);
    let d2 = error_norm(&diff, &zero, y0, o) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        libm::pow(0.01 / d1.max(d2), 0.2)
    };
    (100.0 * h0).min(h1).min(h_max)
}

/// Integrates from `initial` at `t = 0` to `t_end`.
pub fn integrate<const N: usize, F: SimplexField<N>>(
    field: &F,
    initial: [f64; N],
    t_end: f64,
    options: &SolverOptions,
) -> Result<Trajectory<N>> {
    integrate_span(field, initial, 0.0, t_end, options)
}

/// Integrates from `initial` at `t_start` to `t_end`.
///
/// Every accepted step is recorded. Steps whose result would leave Ω are
/// rejected and retried with a smaller step, since the explicit scheme
/// can otherwise overshoot a tiny prevalence into negative values.
pub fn integrate_span<const N: usize, F: SimplexField<N>>(
    field: &F,
    initial: [f64; N],
    t_start: f64,
    t_end: f64,
    options: &SolverOptions,
) -> Result<Trajectory<N>> {
    options.validate()?;
    if initial.iter().any(|x| !x.is_finite()) || !t_start.is_finite() || !t_end.is_finite() {
        return Err(Error::NonFinite("initial condition or time span"));
    }
    if !(t_end > t_start) {
        return Err(Error::Precondition("t_end must exceed the start time"));
    }
    if omega_violation(&initial) > OMEGA_TOLERANCE {
        return Err(Error::Domain("initial condition outside Omega"));
    }
    let o = options;
    let span = t_end - t_start;
    let h_max = span / o.min_samples as f64;

    let mut times = Vec::with_capacity(o.min_samples + 1);
    let mut states = Vec::with_capacity(o.min_samples + 1);
    times.push(t_start);
    states.push(initial);

    let mut t = t_start;
    let mut y = initial;
    let mut k1 = field.rhs(&y);
    if k1.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("field at initial condition"));
    }
    let mut h = initial_step(field, &y, &k1, o, h_max);
    let mut err_old = 1e-4;
    let mut steps = 0usize;

    while t < t_end {
        if steps >= o.max_steps {
            return Err(Error::TooManySteps { t });
        }
        steps += 1;

        let last = t + h >= t_end || t_end - (t + h) < 1e-12 * span;
        if last {
            h = t_end - t;
        }
        let h_min = 1e-14 * libm::fabs(t).max(1.0);
        if h < h_min {
            return Err(Error::StepSizeUnderflow { t, h });
        }

        let k2 = field.rhs(&combine(&y, h, &[(A21, &k1)]));
        let k3 = field.rhs(&combine(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = field.rhs(&combine(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = field.rhs(&combine(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
        let k6 = field.rhs(&combine(
            &y,
            h,
            &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
        ));
        let y_new = combine(&y, h, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
        let k7 = field.rhs(&y_new);
        let err: [f64; N] = core::array::from_fn(|k| {
            h * (E1 * k1[k] + E3 * k3[k] + E4 * k4[k] + E5 * k5[k] + E6 * k6[k] + E7 * k7[k])
        });
        let en = error_norm(&err, &y, &y_new, o);
        if !en.is_finite() {
            h *= 0.25;
            continue;
        }

        let fac11 = libm::pow(en, 0.2 - 0.75 * PI_BETA);
        if en > 1.0 {
            h /= (fac11 / SAFETY).min(1.0 / FAC_MIN);
            continue;
        }

        // Ω check on the candidate.
        let escapes = (0..N).any(|k| y_new[k] < 0.0 && y[k] > 0.0)
            || y_new.iter().sum::<f64>() > 1.0 + OMEGA_TOLERANCE;
        if escapes {
            let violation = omega_violation(&y_new);
            if h * 0.5 >= h_min {
                h *= 0.5;
                continue;
            }
            if violation > TRAJECTORY_TOLERANCE {
                return Err(Error::InvarianceBreach { t: t + h, violation });
            }
        }
        let mut y_acc = y_new;
        for x in y_acc.iter_mut() {
            if *x < 0.0 {
                if *x < -TRAJECTORY_TOLERANCE {
                    return Err(Error::InvarianceBreach { t: t + h, violation: -*x });
                }
                *x = 0.0;
            }
        }
        let total: f64 = y_acc.iter().sum();
        if total > 1.0 + TRAJECTORY_TOLERANCE {
            return Err(Error::InvarianceBreach { t: t + h, violation: total - 1.0 });
        }

        t = if last { t_end } else { t + h };
        y = y_acc;
        k1 = if y_acc == y_new { k7 } else { field.rhs(&y) };
        times.push(t);
        states.push(y);

        let fac = (fac11 / libm::pow(err_old, PI_BETA) / SAFETY).clamp(1.0 / FAC_MAX, 1.0 / FAC_MIN);
        err_old = en.max(1e-4);
        h = (h / fac).min(h_max);
    }
    Ok(Trajectory { times, states })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttractorKind {
    Equilibrium,
    LimitCycle,
    Undecided,
}

impl AttractorKind {
    pub fn name(self) -> &'static str {
        match self {
            AttractorKind::Equilibrium => "equilibrium",
            AttractorKind::LimitCycle => "limit_cycle",
            AttractorKind::Undecided => "undecided",
        }
    }
}

/// Thresholds on the tail-window oscillation of `i`, measured relative to
/// `max(i_max, prevalence_floor)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttractorThresholds {
    pub equilibrium: f64,
    pub cycle: f64,
    /// The tail is still decaying if its amplitude is below this fraction
    /// of the preceding window's amplitude.
    pub shrink_ratio: f64,
    pub prevalence_floor: f64,
    /// Minimum number of samples inside the tail window.
    pub min_tail_samples: usize,
}

impl Default for AttractorThresholds {
    fn default() -> Self {
        Self {
            equilibrium: 1e-4,
            cycle: 1e-3,
            shrink_ratio: 0.95,
            prevalence_floor: 1e-6,
            min_tail_samples: 100,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttractorSummary<const N: usize> {
    pub kind: AttractorKind,
    pub terminal_state: [f64; N],
    /// Envelope of `i` over the tail window.
    pub i_min: f64,
    pub i_max: f64,
    /// `i_max - i_min`.
    pub amplitude: f64,
    /// `amplitude / max(i_max, prevalence_floor)`.
    pub relative_amplitude: f64,
    /// Amplitude over the window preceding the tail, if it was available.
    pub previous_amplitude: Option<f64>,
    /// Mean spacing of significant maxima of `i` in the tail window.
    pub period: Option<f64>,
    pub tail_start: f64,
    pub horizon: f64,
}

fn envelope(values: impl Iterator<Item = f64>) -> (f64, f64, usize) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY, 0), |(lo, hi, n), x| (lo.min(x), hi.max(x), n + 1))
}

/// Times of local maxima of `i` that rise above the midpoint of the envelope.
fn significant_peaks<const N: usize>(times: &[f64], states: &[[f64; N]], level: f64) -> Vec<f64> {
    let mut peaks = Vec::new();
    for k in 1..states.len().saturating_sub(1) {
        let (prev, cur, next) = (states[k - 1][N - 1], states[k][N - 1], states[k + 1][N - 1]);
        if cur > prev && cur >= next && cur > level {
            peaks.push(times[k]);
        }
    }
    peaks
}

/// Classifies the last `tail_fraction` of a trajectory's time span.
pub fn classify_attractor<const N: usize>(
    trajectory: &Trajectory<N>,
    tail_fraction: f64,
    thresholds: &AttractorThresholds,
) -> Result<AttractorSummary<N>> {
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return Err(Error::InvalidParameter("tail_fraction must lie in (0, 1]"));
    }
    let span = trajectory.end_time() - trajectory.times[0];
    classify_window(trajectory, tail_fraction * span, thresholds)
}

fn classify_window<const N: usize>(
    trajectory: &Trajectory<N>,
    window: f64,
    th: &AttractorThresholds,
) -> Result<AttractorSummary<N>> {
    let times = &trajectory.times;
    let states = &trajectory.states;
    let t_end = trajectory.end_time();
    let tail_start = t_end - window;
    let tail_idx = times.partition_point(|&t| t < tail_start);
    let samples = times.len() - tail_idx;
    if samples < th.min_tail_samples {
        return Err(Error::InsufficientData { samples, required: th.min_tail_samples });
    }
    let (i_min, i_max, _) = envelope(states[tail_idx..].iter().map(|x| x[N - 1]));
    let amplitude = (i_max - i_min).max(0.0);
    let scale = i_max.max(th.prevalence_floor);
    let relative_amplitude = amplitude / scale;

    let prev_idx = times.partition_point(|&t| t < tail_start - window);
    let previous_amplitude = (times[0] <= tail_start - window && prev_idx < tail_idx).then(|| {
        let (lo, hi, _) = envelope(states[prev_idx..tail_idx].iter().map(|x| x[N - 1]));
        (hi - lo).max(0.0)
    });

    let peaks = significant_peaks(&times[tail_idx..], &states[tail_idx..], i_min + 0.5 * amplitude);
    let period = (peaks.len() >= 2)
        .then(|| (peaks[peaks.len() - 1] - peaks[0]) / (peaks.len() - 1) as f64);

    let shrinking = matches!(previous_amplitude, Some(prev) if amplitude < th.shrink_ratio * prev);
    let kind = if relative_amplitude < th.equilibrium {
        AttractorKind::Equilibrium
    } else if shrinking {
        AttractorKind::Undecided
    } else if relative_amplitude >= th.cycle && peaks.len() >= 2 {
        AttractorKind::LimitCycle
    } else {
        AttractorKind::Undecided
    };

    Ok(AttractorSummary {
        kind,
        terminal_state: trajectory.last_state(),
        i_min,
        i_max,
        amplitude,
        relative_amplitude,
        previous_amplitude,
        period,
        tail_start,
        horizon: t_end,
    })
}

/// Controls for [`settle`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SettleOptions {
    /// Initial horizon.
    pub t_end: f64,
    pub tail_fraction: f64,
    /// The horizon doubles while the verdict is undecided, up to this bound.
    pub max_horizon: f64,
    pub solver: SolverOptions,
    pub thresholds: AttractorThresholds,
}

impl Default for SettleOptions {
    fn default() -> Self {
        Self {
            t_end: 2000.0,
            tail_fraction: 0.25,
            max_horizon: 2000.0 * 2048.0,
            solver: SolverOptions::default(),
            thresholds: AttractorThresholds::default(),
        }
    }
}

/// Result of [`settle`]: the trajectory over the initial horizon and the
/// final verdict.
#[derive(Debug, Clone)]
pub struct SettledRun<const N: usize> {
    pub initial_segment: Trajectory<N>,
    pub summary: AttractorSummary<N>,
}

/// Integrates and classifies, doubling the horizon while the verdict stays
/// [`AttractorKind::Undecided`]. Only the samples needed for the two most
/// recent windows are retained.
pub fn settle<const N: usize, F: SimplexField<N>>(
    field: &F,
    initial: [f64; N],
    options: &SettleOptions,
) -> Result<SettledRun<N>> {
    if !(options.tail_fraction > 0.0 && options.tail_fraction <= 0.5) {
        return Err(Error::InvalidParameter("tail_fraction must lie in (0, 0.5]"));
    }
    let first = integrate(field, initial, options.t_end, &options.solver)?;
    let mut horizon = options.t_end;
    let mut summary = classify_window(&first, options.tail_fraction * horizon, &options.thresholds)?;
    let mut buffer = first.clone();
    while summary.kind == AttractorKind::Undecided && 2.0 * horizon <= options.max_horizon {
        let chunk = integrate_span(field, buffer.last_state(), horizon, 2.0 * horizon, &options.solver)?;
        horizon *= 2.0;
        buffer.extend_with(chunk);
        buffer.retain_from(horizon * (1.0 - 2.0 * options.tail_fraction));
        summary = classify_window(&buffer, options.tail_fraction * horizon, &options.thresholds)?;
    }
    Ok(SettledRun { initial_segment: first, summary })
}
