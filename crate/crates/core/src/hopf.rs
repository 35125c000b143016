//! Hopf points of the three-compartment model and their continuation in a
//! two-parameter plane.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{char_poly3, solve};
use crate::model::{sauisuas_jac, sauisuas_rhs, Binding, SauisuasParam, SauisuasParams, State3};
use crate::ode::{settle, SettleOptions};
use crate::sauisuas::{
    classify_stability, distance, endemic_states, refine_endemic, residual_norm, EQUILIBRIUM_RESIDUAL,
};

/// Bound on `|c0 - c1 c2|` at a reported Hopf point.
pub const HOPF_TOLERANCE: f64 = 1e-9;
/// Largest jump in `i*` accepted between consecutive curve points.
pub const MAX_PREVALENCE_JUMP: f64 = 0.05;

/// Routh–Hurwitz boundary data at an equilibrium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopfResidual {
    /// `c0 - c1 c2`: negative on the stable side.
    pub h: f64,
    pub c1: f64,
    pub c2: f64,
    pub c0: f64,
}

impl HopfResidual {
    fn at(x: &[f64; 3], pr: &SauisuasParams) -> Self {
        let (c2, c1, c0) = char_poly3(&sauisuas_jac(x, pr));
        Self { h: c0 - c1 * c2, c1, c2, c0 }
    }
}

/// `c0 - c1 c2` and friends at `state`, which must be an equilibrium.
pub fn hopf_residual(state: State3, params: &SauisuasParams) -> Result<HopfResidual> {
    let report = classify_stability(state, params)?;
    let (c2, c1, c0) = report.coefficients;
    Ok(HopfResidual { h: c0 - c1 * c2, c1, c2, c0 })
}

/// A free parameter `σ`, a dependent parameter `τ` and an optional binding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HopfPair {
    pub sigma: SauisuasParam,
    pub tau: SauisuasParam,
    pub binding: Binding,
}

impl HopfPair {
    pub fn new(sigma: SauisuasParam, tau: SauisuasParam, binding: Binding) -> Result<Self> {
        if sigma == tau {
            return Err(Error::InvalidParameter("sigma and tau must differ"));
        }
        if binding.binds(sigma) || binding.binds(tau) {
            return Err(Error::InvalidParameter("a Hopf parameter is fixed by the binding"));
        }
        Ok(Self { sigma, tau, binding })
    }

    pub fn params(&self, base: &SauisuasParams, sigma: f64, tau: f64) -> SauisuasParams {
        base.with(self.sigma, sigma, self.binding).with(self.tau, tau, self.binding)
    }
}

/// Parameters the Hopf equations make sense for: everything `validate`
/// demands except `p + q <= 1`.
fn admissible(pr: &SauisuasParams) -> bool {
    let mut relaxed = *pr;
    relaxed.p = 0.0;
    relaxed.q = 0.0;
    relaxed.validate().is_ok() && pr.p >= 0.0 && pr.q >= 0.0 && pr.p.is_finite() && pr.q.is_finite()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopfPoint {
    pub sigma_name: SauisuasParam,
    pub tau_name: SauisuasParam,
    pub sigma: f64,
    pub tau: f64,
    pub a: f64,
    pub u: f64,
    pub i: f64,
    /// `sqrt(c1)`, the angular frequency of the critical pair.
    pub omega: f64,
    /// Full parameter set at the point, bindings applied.
    pub params: SauisuasParams,
}

impl HopfPoint {
    pub fn state(&self) -> State3 {
        State3::new(self.a, self.u, self.i)
    }

    /// Period `2π/ω` of the emerging oscillation.
    pub fn period(&self) -> f64 {
        2.0 * core::f64::consts::PI / self.omega
    }

    /// `(c0 - c1 c2, c1)` recomputed at the point.
    pub fn residual(&self) -> HopfResidual {
        HopfResidual::at(&self.state().to_array(), &self.params)
    }
}

/// Initial guess for [`solve_hopf_point`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopfSeed {
    pub a: f64,
    pub u: f64,
    pub i: f64,
    pub tau: f64,
}

fn hopf_system(z: &[f64; 4], base: &SauisuasParams, pair: &HopfPair, sigma: f64) -> [f64; 4] {
    let pr = pair.params(base, sigma, z[3]);
    let x = [z[0], z[1], z[2]];
    let f = sauisuas_rhs(&x, &pr);
    let s = 1.0 - x[0] - x[1] - x[2];
    let force = pr.beta * s + pr.beta_a * x[0] + pr.beta_u * x[1] - pr.delta;
    [f[0], f[1], force, HopfResidual::at(&x, &pr).h]
}

fn sup(v: &[f64; 4]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(libm::fabs(*x)))
}

/// Solves `{f = 0, c0 - c1 c2 = 0}` for `(a, u, i, τ)` at fixed `σ`.
///
/// The `i` equation is used in its factored form, which excludes the
/// disease-free plane.
pub fn solve_hopf_point(
    base: &SauisuasParams,
    pair: &HopfPair,
    sigma: f64,
    seed: HopfSeed,
) -> Result<HopfPoint> {
    let mut z = [seed.a, seed.u, seed.i, seed.tau];
    if !z.iter().all(|c| c.is_finite()) || !sigma.is_finite() {
        return Err(Error::NonFinite("Hopf seed"));
    }
    const ITERATIONS: usize = 60;
    let mut f = hopf_system(&z, base, pair, sigma);
    let mut res = sup(&f);
    let mut converged = false;
    for _ in 0..ITERATIONS {
        if res < 1e-13 {
            converged = true;
            break;
        }
        let mut jac = [[0.0; 4]; 4];
        for k in 0..4 {
            let h = 1e-6 * libm::fabs(z[k]).max(1e-3);
            let (mut zp, mut zm) = (z, z);
            zp[k] += h;
            zm[k] -= h;
            let (fp, fm) = (hopf_system(&zp, base, pair, sigma), hopf_system(&zm, base, pair, sigma));
            for r in 0..4 {
                jac[r][k] = (fp[r] - fm[r]) / (2.0 * h);
            }
        }
        let Some(dz) = solve(jac, f.map(|x| -x)) else { break };
        let mut lambda = 1.0;
        let mut moved = false;
        while lambda > 1e-4 {
            let trial: [f64; 4] = core::array::from_fn(|k| z[k] + lambda * dz[k]);
            let ft = hopf_system(&trial, base, pair, sigma);
            let rt = sup(&ft);
            if rt.is_finite() && rt < res {
                z = trial;
                f = ft;
                res = rt;
                moved = true;
                break;
            }
            lambda *= 0.5;
        }
        let step = sup(&dz);
        if !moved {
            converged = res < 1e-11;
            break;
        }
        if lambda == 1.0 && step < 1e-15 * (1.0 + sup(&z)) {
            converged = res < 1e-11;
            break;
        }
    }
    if !converged && res < 1e-13 {
        converged = true;
    }
    if !converged || !z.iter().all(|c| c.is_finite()) {
        return Err(Error::NoConvergence { iterations: ITERATIONS, residual: res });
    }

    let pr = pair.params(base, sigma, z[3]);
    let x = [z[0], z[1], z[2]];
    let interior = x.iter().all(|c| *c > 0.0) && x[0] + x[1] + x[2] < 1.0;
    if !admissible(&pr) || !interior {
        return Err(Error::SpuriousRoot("Hopf solution outside the admissible region"));
    }
    if !(residual_norm(&x, &pr) < EQUILIBRIUM_RESIDUAL) {
        return Err(Error::NoConvergence { iterations: ITERATIONS, residual: residual_norm(&x, &pr) });
    }
    let r = HopfResidual::at(&x, &pr);
    if !(r.c1 > 0.0) {
        return Err(Error::SpuriousRoot("c1 <= 0: no imaginary pair"));
    }
    if !(libm::fabs(r.h) < HOPF_TOLERANCE) {
        return Err(Error::NoConvergence { iterations: ITERATIONS, residual: r.h });
    }
    Ok(HopfPoint {
        sigma_name: pair.sigma,
        tau_name: pair.tau,
        sigma,
        tau: z[3],
        a: x[0],
        u: x[1],
        i: x[2],
        omega: libm::sqrt(r.c1),
        params: pr,
    })
}

/// Every Hopf point at fixed `σ` found by scanning `τ` over
/// `[tau_lo, tau_hi]` in `steps` intervals, following each endemic branch
/// and solving where `c0 - c1 c2` changes sign. Sorted by `τ`.
pub fn scan_hopf_points(
    base: &SauisuasParams,
    pair: &HopfPair,
    sigma: f64,
    tau_lo: f64,
    tau_hi: f64,
    steps: usize,
) -> Result<Vec<HopfPoint>> {
    if !(tau_lo < tau_hi) || steps == 0 {
        return Err(Error::InvalidParameter("tau scan needs tau_lo < tau_hi and steps > 0"));
    }
    let dt = (tau_hi - tau_lo) / steps as f64;
    let column = |tau: f64| -> Vec<([f64; 3], f64)> {
        let pr = pair.params(base, sigma, tau);
        if !admissible(&pr) {
            return Vec::new();
        }
        endemic_states(&pr).into_iter().map(|x| (x, HopfResidual::at(&x, &pr).h)).collect()
    };
    let mut found: Vec<HopfPoint> = Vec::new();
    let mut prev = column(tau_lo);
    for k in 1..=steps {
        let (t0, t1) = (tau_lo + (k - 1) as f64 * dt, tau_lo + k as f64 * dt);
        let next = column(t1);
        for (x0, h0) in &prev {
            let Some((x1, h1)) = next
                .iter()
                .min_by(|p, q| distance(x0, &p.0).total_cmp(&distance(x0, &q.0)))
            else {
                continue;
            };
            if distance(x0, x1) > 0.1 || (*h0 > 0.0) == (*h1 > 0.0) {
                continue;
            }
            let point = bracket_hopf(base, pair, sigma, (t0, *x0, *h0), (t1, *x1, *h1));
            if let Some(pt) = point {
                if found.iter().all(|q| libm::fabs(q.tau - pt.tau) > 1e-7 || distance(&q.state().to_array(), &pt.state().to_array()) > 1e-6) {
                    found.push(pt);
                }
            }
        }
        prev = next;
    }
    found.sort_by(|p, q| p.tau.total_cmp(&q.tau));
    Ok(found)
}

type BranchSample = (f64, [f64; 3], f64);

/// Refines a sign change of `h` between two samples of one endemic branch:
/// Newton from the interpolated seed, falling back to bisection along the
/// warm-started branch.
fn bracket_hopf(
    base: &SauisuasParams,
    pair: &HopfPair,
    sigma: f64,
    lo: BranchSample,
    hi: BranchSample,
) -> Option<HopfPoint> {
    let within = |pt: &HopfPoint, a: f64, b: f64| {
        let slack = 1e-9 * (1.0 + libm::fabs(b));
        pt.tau >= a.min(b) - slack && pt.tau <= a.max(b) + slack
    };
    let attempt = |lo: &BranchSample, hi: &BranchSample| {
        let w = lo.2 / (lo.2 - hi.2);
        let x: [f64; 3] = core::array::from_fn(|k| lo.1[k] + w * (hi.1[k] - lo.1[k]));
        let seed = HopfSeed { a: x[0], u: x[1], i: x[2], tau: lo.0 + w * (hi.0 - lo.0) };
        solve_hopf_point(base, pair, sigma, seed).ok().filter(|pt| within(pt, lo.0, hi.0))
    };
    if let Some(pt) = attempt(&lo, &hi) {
        return Some(pt);
    }
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..40 {
        let tm = 0.5 * (lo.0 + hi.0);
        let pr = pair.params(base, sigma, tm);
        let guess: [f64; 3] = core::array::from_fn(|k| 0.5 * (lo.1[k] + hi.1[k]));
        let xm = refine_endemic([guess[0], guess[1]], &pr)?;
        let hm = HopfResidual::at(&xm, &pr).h;
        let mid = (tm, xm, hm);
        if (hm > 0.0) == (lo.2 > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if let Some(pt) = attempt(&lo, &hi) {
            return Some(pt);
        }
    }
    None
}

/// Controls for [`trace_hopf_curve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuationOptions {
    /// Nominal `σ` step.
    pub step: f64,
    pub min_step: f64,
    /// Largest accepted gap between the secant prediction and the corrected
    /// `τ`, relative to `1 + |τ|`.
    pub predictor_tolerance: f64,
    /// Admissible `τ` range for the seed scan.
    pub tau_range: (f64, f64),
    pub scan_steps: usize,
    /// Number of `σ` values tried when looking for a first point.
    pub start_candidates: usize,
    /// Start the search at the upper end of the `σ` range.
    pub from_high: bool,
}

impl ContinuationOptions {
    pub fn new(step: f64, tau_range: (f64, f64)) -> Self {
        Self {
            step,
            min_step: 1e-5,
            predictor_tolerance: 1e-4,
            tau_range,
            scan_steps: 200,
            start_candidates: 20,
            from_high: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HopfCurve {
    pub pair: HopfPair,
    /// Ordered by increasing `σ`.
    pub points: Vec<HopfPoint>,
    /// Continuation failed at the minimum step before reaching an end of
    /// the range.
    pub truncated: bool,
    /// The curve ran out of the admissible parameter or state region.
    pub left_region: bool,
}

impl HopfCurve {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `τ` interpolated linearly at `sigma`, inside the traced span.
    pub fn tau_at(&self, sigma: f64) -> Option<f64> {
        let pts = &self.points;
        let k = pts.partition_point(|p| p.sigma < sigma);
        if k < pts.len() && pts[k].sigma == sigma {
            return Some(pts[k].tau);
        }
        if k == 0 || k == pts.len() {
            return None;
        }
        let (p, q) = (&pts[k - 1], &pts[k]);
        Some(p.tau + (q.tau - p.tau) * (sigma - p.sigma) / (q.sigma - p.sigma))
    }

    pub fn sigma_span(&self) -> Option<(f64, f64)> {
        Some((self.points.first()?.sigma, self.points.last()?.sigma))
    }
}

fn seed_from(p: &HopfPoint) -> HopfSeed {
    HopfSeed { a: p.a, u: p.u, i: p.i, tau: p.tau }
}

fn continue_from(
    base: &SauisuasParams,
    pair: &HopfPair,
    start: HopfPoint,
    end: f64,
    opts: &ContinuationOptions,
) -> (Vec<HopfPoint>, Stop) {
    let direction = if end >= start.sigma { 1.0 } else { -1.0 };
    let mut out = Vec::new();
    let mut last = start;
    let mut step = opts.step;
    // A probe just ahead of the start gives the first secant; the secant
    // formula below extrapolates correctly with it on either side.
    let probe_sigma = start.sigma + direction * opts.min_step.max(1e-9 * (1.0 + libm::fabs(start.sigma)));
    let mut before = if direction * (end - probe_sigma) > 0.0 {
        solve_hopf_point(base, pair, probe_sigma, seed_from(&start)).ok()
    } else {
        None
    };
    while direction * (end - last.sigma) > 1e-12 * (1.0 + libm::fabs(end)) {
        let remaining = libm::fabs(end - last.sigma);
        let h = step.min(remaining);
        let sigma = if h == remaining { end } else { last.sigma + direction * h };
        let predicted = before.is_some();
        let seed = match &before {
            Some(b) => {
                let r = (sigma - last.sigma) / (last.sigma - b.sigma);
                let lin = |x: f64, y: f64| x + r * (x - y);
                HopfSeed { a: lin(last.a, b.a), u: lin(last.u, b.u), i: lin(last.i, b.i), tau: lin(last.tau, b.tau) }
            }
            None => seed_from(&last),
        };
        let attempt = solve_hopf_point(base, pair, sigma, seed)
            .or_else(|_| solve_hopf_point(base, pair, sigma, seed_from(&last)));
        let outside = matches!(attempt, Err(Error::SpuriousRoot(_)));
        let smooth = |p: &HopfPoint| {
            !predicted || libm::fabs(p.tau - seed.tau) <= opts.predictor_tolerance * (1.0 + libm::fabs(p.tau))
        };
        let accepted = attempt
            .ok()
            .filter(|p| libm::fabs(p.i - last.i) < MAX_PREVALENCE_JUMP)
            .filter(|p| smooth(p) || step * 0.5 < opts.min_step);
        match accepted {
            Some(p) => {
                out.push(p);
                before = Some(last);
                last = p;
                step = (2.0 * step).min(opts.step);
            }
            None => {
                step *= 0.5;
                if step < opts.min_step {
                    return (out, if outside { Stop::LeftRegion } else { Stop::Truncated });
                }
            }
        }
    }
    (out, Stop::Reached)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Stop {
    Reached,
    Truncated,
    LeftRegion,
}

/// Natural-parameter continuation of the Hopf curve `τ(σ)` over
/// `sigma_range`. The first point comes from a `τ` scan at the starting end
/// (or, failing that, at interior `σ` values); the curve is then followed in
/// both directions. No Hopf point anywhere gives an empty curve.
pub fn trace_hopf_curve(
    base: &SauisuasParams,
    pair: &HopfPair,
    sigma_range: (f64, f64),
    opts: &ContinuationOptions,
) -> Result<HopfCurve> {
    let (lo, hi) = sigma_range;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::InvalidParameter("sigma range must satisfy lo <= hi"));
    }
    if !(opts.step > 0.0 && opts.min_step > 0.0 && opts.min_step <= opts.step) {
        return Err(Error::InvalidParameter("continuation steps must satisfy 0 < min_step <= step"));
    }
    let n = opts.start_candidates.max(1);
    let mut start = None;
    for k in 0..=n {
        let frac = k as f64 / n as f64;
        let sigma = if opts.from_high { hi - frac * (hi - lo) } else { lo + frac * (hi - lo) };
        let pts = scan_hopf_points(base, pair, sigma, opts.tau_range.0, opts.tau_range.1, opts.scan_steps)?;
        if let Some(p) = pts.into_iter().next() {
            start = Some(p);
            break;
        }
        if lo == hi {
            break;
        }
    }
    let Some(start) = start else {
        return Ok(HopfCurve { pair: *pair, points: Vec::new(), truncated: false, left_region: false });
    };
    let (mut down, stop_down) = continue_from(base, pair, start, lo, opts);
    let (up, stop_up) = continue_from(base, pair, start, hi, opts);
    down.reverse();
    let mut points = down;
    points.push(start);
    points.extend(up);
    let stops = [stop_down, stop_up];
    Ok(HopfCurve {
        pair: *pair,
        points,
        truncated: stops.contains(&Stop::Truncated),
        left_region: stops.contains(&Stop::LeftRegion),
    })
}

/// `(σ, i*)` along a curve.
pub fn prevalence_along_curve(curve: &HopfCurve) -> Vec<(f64, f64)> {
    curve.points.iter().map(|p| (p.sigma, p.i)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagramRow {
    pub q: f64,
    pub i_star: f64,
    pub stable: bool,
    /// `(min, max)` of `i` on the settled attractor, reported where the
    /// equilibrium is unstable.
    pub envelope: Option<(f64, f64)>,
}

/// Initial state for envelope runs.
pub const DIAGRAM_INITIAL: [f64; 3] = [0.0, 0.0, 0.1];

/// Endemic equilibria at one `q` with stability, and the oscillation
/// envelope when unstable.
pub fn hopf_diagram_column(base: &SauisuasParams, q: f64, settle_opts: &SettleOptions) -> Result<Vec<DiagramRow>> {
    let mut pr = *base;
    pr.q = q;
    pr.validate()?;
    let eqs = crate::sauisuas::find_endemic_equilibria(&pr)?;
    let mut envelope = None;
    let mut rows = Vec::with_capacity(eqs.len());
    for e in eqs {
        let env = if e.stable {
            None
        } else {
            if envelope.is_none() {
                let run = settle(&pr, DIAGRAM_INITIAL, settle_opts)?;
                envelope = Some((run.summary.i_min, run.summary.i_max));
            }
            envelope
        };
        rows.push(DiagramRow { q, i_star: e.i_star, stable: e.stable, envelope: env });
    }
    Ok(rows)
}

/// [`hopf_diagram_column`] at `steps + 1` evenly spaced `q` values.
pub fn hopf_diagram(
    base: &SauisuasParams,
    q_lo: f64,
    q_hi: f64,
    steps: usize,
    settle_opts: &SettleOptions,
) -> Result<Vec<DiagramRow>> {
    let mut rows = Vec::new();
    for q in crate::sauisuas::sweep_values(q_lo, q_hi, steps)? {
        rows.extend(hopf_diagram_column(base, q, settle_opts)?);
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub covered: bool,
    pub curve: HopfCurve,
    /// `p` values on the simplex edge the curve does not reach.
    pub edge_checks: Vec<(f64, bool)>,
}

/// Whether the oscillation region below the `(p, q)` Hopf curve contains the
/// whole simplex `p, q >= 0, p + q <= 1`: every traced point must lie above
/// the edge `q = 1 - p`, and at each `p` the curve does not reach the
/// equilibrium on the edge must be unstable.
pub fn region_coverage_check(
    base: &SauisuasParams,
    opts: &ContinuationOptions,
    edge_samples: usize,
) -> Result<CoverageReport> {
    let pair = HopfPair::new(SauisuasParam::P, SauisuasParam::Q, Binding::None)?;
    let curve = trace_hopf_curve(base, &pair, (0.0, 1.0), opts)?;
    if curve.is_empty() {
        return Ok(CoverageReport { covered: false, curve, edge_checks: Vec::new() });
    }
    let above = curve.points.iter().all(|p| p.tau > 1.0 - p.sigma);
    let (s_lo, s_hi) = curve.sigma_span().unwrap_or((0.0, 1.0));
    let mut edge_checks = Vec::new();
    let n = edge_samples.max(1);
    for k in 0..=n {
        let p = k as f64 / n as f64;
        if p >= s_lo && p <= s_hi {
            continue;
        }
        let mut pr = *base;
        pr.p = p;
        pr.q = 1.0 - p;
        let states = endemic_states(&pr);
        let unstable = !states.is_empty() && states.iter().all(|x| HopfResidual::at(x, &pr).h > 0.0);
        edge_checks.push((p, unstable));
    }
    let covered = above && edge_checks.iter().all(|(_, ok)| *ok);
    Ok(CoverageReport { covered, curve, edge_checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sauisuas::find_endemic_equilibria;
    use crate::linalg::cubic_roots;
    use crate::sauisuas::tests::fig3;

    fn fig3_pq() -> HopfPair {
        HopfPair::new(SauisuasParam::P, SauisuasParam::Q, Binding::None).unwrap()
    }

    #[test]
    fn residual_sign_matches_stability() {
        let mut p = fig3();
        for (q, stable) in [(0.2, true), (0.05, false)] {
            p.q = q;
            let eqs = find_endemic_equilibria(&p).unwrap();
            assert_eq!(eqs.len(), 1);
            let r = hopf_residual(eqs[0].state(), &p).unwrap();
            assert_eq!(r.h < 0.0, stable);
            assert_eq!(eqs[0].stable, stable);
        }
        assert!(hopf_residual(State3::new(0.2, 0.2, 0.2), &p).is_err());
    }

    #[test]
    fn figure_three_point() {
        let pts = scan_hopf_points(&fig3(), &fig3_pq(), 0.05, 0.0, 0.95, 200).unwrap();
        assert_eq!(pts.len(), 1);
        let pt = pts[0];
        assert!((pt.tau - 0.1075).abs() < 1e-3, "{}", pt.tau);
        let r = pt.residual();
        assert!(r.h.abs() < 1e-9 && r.c1 > 0.0);
        let eig = cubic_roots(r.c2, r.c1, r.c0);
        assert!(eig.iter().any(|z| z.re.abs() < 1e-7 && (z.im.abs() - pt.omega).abs() < 1e-7));
    }

    #[test]
    fn newton_reports_failure() {
        let seed = HopfSeed { a: 0.3, u: 0.3, i: 0.3, tau: 0.9 };
        let far = solve_hopf_point(&fig3(), &fig3_pq(), 0.05, seed);
        assert!(far.is_err());
        assert!(HopfPair::new(SauisuasParam::Q, SauisuasParam::Q, Binding::None).is_err());
        assert!(HopfPair::new(SauisuasParam::P, SauisuasParam::Q, Binding::PComplementsQ).is_err());
    }

    #[test]
    fn short_curve_is_continuous() {
        let opts = ContinuationOptions::new(0.01, (0.0, 0.95));
        let c = trace_hopf_curve(&fig3(), &fig3_pq(), (0.04, 0.1), &opts).unwrap();
        assert!(!c.truncated && !c.left_region);
        assert!(c.points.len() >= 7);
        assert!(c.points.windows(2).all(|w| w[1].sigma > w[0].sigma && (w[1].i - w[0].i).abs() < 0.05));
        assert!((c.tau_at(0.05).unwrap() - 0.1075).abs() < 1e-3);
        assert_eq!(prevalence_along_curve(&c).len(), c.points.len());
        let wide = trace_hopf_curve(&fig3(), &fig3_pq(), (0.0, 0.1), &opts).unwrap();
        // the curve turns back in p near 0.0386 before meeting q = 0
        assert!(wide.truncated);
        assert!((wide.points[0].sigma - 0.0386).abs() < 1e-3);
    }
}
