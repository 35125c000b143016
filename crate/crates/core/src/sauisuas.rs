//! Equilibria, stability and transcritical/fold structure of the
//! three-compartment model.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{char_poly3, cubic_roots, mat3_vec, solve, stability_of};
use crate::model::{
    sauisuas_jac, sauisuas_rhs, sauisuas_second_derivative, Binding, SauisuasParam,
    SauisuasParams, State3,
};
use crate::saias::EquilibriumKind;

/// Field residual required of every reported equilibrium.
pub const EQUILIBRIUM_RESIDUAL: f64 = 1e-10;
/// Seeds per axis for the endemic multistart.
pub const SEED_GRID: usize = 40;
/// Residual tolerance on the reduced two-dimensional system.
pub const REDUCED_TOLERANCE: f64 = 1e-12;
pub const MAX_NEWTON_ITERATIONS: usize = 50;
/// Roots closer than this are the same root.
pub const DEDUP_DISTANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SauisuasEquilibrium {
    pub kind: EquilibriumKind,
    pub a_star: f64,
    pub u_star: f64,
    pub i_star: f64,
    pub eigenvalues: [Complex64; 3],
    pub stable: bool,
    pub marginal: bool,
}

impl SauisuasEquilibrium {
    pub fn state(&self) -> State3 {
        State3::new(self.a_star, self.u_star, self.i_star)
    }
}

/// Spectrum of the Jacobian at an equilibrium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReport {
    /// `(c2, c1, c0)` of `λ³ + c2 λ² + c1 λ + c0`.
    pub coefficients: (f64, f64, f64),
    pub eigenvalues: [Complex64; 3],
    pub stable: bool,
    pub marginal: bool,
}

pub(crate) fn residual_norm(x: &[f64; 3], params: &SauisuasParams) -> f64 {
    let f = sauisuas_rhs(x, params);
    libm::sqrt(f[0] * f[0] + f[1] * f[1] + f[2] * f[2])
}

/// Eigenvalues and verdict at `state`, which must be an equilibrium.
pub fn classify_stability(state: State3, params: &SauisuasParams) -> Result<StabilityReport> {
    let x = state.to_array();
    if x.iter().any(|c| !c.is_finite()) {
        return Err(Error::NonFinite("state"));
    }
    let residual = residual_norm(&x, params);
    if !(residual < EQUILIBRIUM_RESIDUAL) {
        return Err(Error::NotAnEquilibrium { residual });
    }
    Ok(spectrum(&x, params))
}

pub(crate) fn spectrum(x: &[f64; 3], params: &SauisuasParams) -> StabilityReport {
    let j = sauisuas_jac(x, params);
    let (c2, c1, c0) = char_poly3(&j);
    let eigenvalues = cubic_roots(c2, c1, c0);
    let verdict = stability_of(&eigenvalues);
    StabilityReport {
        coefficients: (c2, c1, c0),
        eigenvalues,
        stable: verdict.stable,
        marginal: verdict.marginal,
    }
}

fn equilibrium(kind: EquilibriumKind, x: [f64; 3], params: &SauisuasParams) -> Result<SauisuasEquilibrium> {
    let r = classify_stability(State3::from_array(x), params)?;
    Ok(SauisuasEquilibrium {
        kind,
        a_star: x[0],
        u_star: x[1],
        i_star: x[2],
        eigenvalues: r.eigenvalues,
        stable: r.stable,
        marginal: r.marginal,
    })
}

pub fn equilibrium_p1(params: &SauisuasParams) -> Result<SauisuasEquilibrium> {
    params.validate()?;
    equilibrium(EquilibriumKind::P1, [0.0; 3], params)
}

fn p2_location(params: &SauisuasParams) -> Result<[f64; 3]> {
    let pr = params;
    if !(pr.alpha_a > pr.delta_a) {
        return Err(Error::AbsentEquilibrium("P2 requires alpha_a > delta_a"));
    }
    let ratio = pr.delta_a / pr.alpha_a;
    let spread = pr.delta_a * (1.0 + pr.alpha_u / pr.alpha_a);
    let denom = spread + pr.delta_u;
    let a0 = pr.delta_u * (1.0 - ratio) / denom;
    let u0 = (1.0 - ratio) * spread / denom;
    Ok([a0, u0, 0.0])
}

/// Disease-free aware equilibrium `(a0, u0, 0)` with `s0 = δ_a/α_a`.
pub fn equilibrium_p2(params: &SauisuasParams) -> Result<SauisuasEquilibrium> {
    params.validate()?;
    equilibrium(EquilibriumKind::P2, p2_location(params)?, params)
}

/// The eigenvalue of `J(P2)` transverse to the disease-free plane.
pub fn lambda3_p2(params: &SauisuasParams) -> Result<f64> {
    let [a0, u0, _] = p2_location(params)?;
    let pr = params;
    Ok(pr.beta - (pr.beta - pr.beta_a) * a0 - (pr.beta - pr.beta_u) * u0 - pr.delta)
}

/// The value of `β_a` at which `λ3(P2)` vanishes. `params.beta_a` is ignored.
pub fn critical_beta_a(params: &SauisuasParams) -> Result<f64> {
    let [a0, u0, _] = p2_location(params)?;
    if !(a0 > 0.0) {
        return Err(Error::Degenerate("a0 = 0"));
    }
    let pr = params;
    Ok(pr.beta - (pr.beta - pr.delta - (pr.beta - pr.beta_u) * u0) / a0)
}

/// Prevalence forced by the `i`-equation at an endemic point.
#[inline]
pub(crate) fn endemic_i(a: f64, u: f64, pr: &SauisuasParams) -> f64 {
    1.0 - (1.0 - pr.beta_a / pr.beta) * a - (1.0 - pr.beta_u / pr.beta) * u - pr.delta / pr.beta
}

fn reduced(x: [f64; 2], pr: &SauisuasParams) -> ([f64; 2], [[f64; 2]; 2]) {
    let [a, u] = x;
    let y = [a, u, endemic_i(a, u, pr)];
    let f = sauisuas_rhs(&y, pr);
    let j = sauisuas_jac(&y, pr);
    let di_da = -(1.0 - pr.beta_a / pr.beta);
    let di_du = -(1.0 - pr.beta_u / pr.beta);
    let jr = [
        [j[0][0] + j[0][2] * di_da, j[0][1] + j[0][2] * di_du],
        [j[1][0] + j[1][2] * di_da, j[1][1] + j[1][2] * di_du],
    ];
    ([f[0], f[1]], jr)
}

fn norm2(v: [f64; 2]) -> f64 {
    libm::sqrt(v[0] * v[0] + v[1] * v[1])
}

fn reduced_newton(seed: [f64; 2], pr: &SauisuasParams) -> Option<[f64; 2]> {
    let mut x = seed;
    let (mut f, mut j) = reduced(x, pr);
    let mut res = norm2(f);
    for _ in 0..MAX_NEWTON_ITERATIONS {
        if res < REDUCED_TOLERANCE {
            return Some(x);
        }
        let dx = solve(j, [-f[0], -f[1]])?;
        let mut lambda = 1.0;
        loop {
            let trial = [x[0] + lambda * dx[0], x[1] + lambda * dx[1]];
            let (ft, jt) = reduced(trial, pr);
            let rt = norm2(ft);
            if rt.is_finite() && (rt < res || lambda < 1e-3) {
                x = trial;
                f = ft;
                j = jt;
                res = rt;
                break;
            }
            lambda *= 0.5;
        }
        if !x.iter().all(|c| c.is_finite()) || x.iter().any(|c| libm::fabs(*c) > 10.0) {
            return None;
        }
    }
    (res < REDUCED_TOLERANCE).then_some(x)
}

/// Interior equilibria by multistart Newton on the system reduced through
/// the `i`-equation. Sorted by increasing `i`.
pub fn find_endemic_equilibria(params: &SauisuasParams) -> Result<Vec<SauisuasEquilibrium>> {
    params.validate()?;
    endemic_states(params)
        .into_iter()
        .map(|y| equilibrium(EquilibriumKind::Endemic, y, params))
        .collect()
}

/// Endemic roots without parameter validation; `p + q > 1` is allowed.
pub(crate) fn endemic_states(pr: &SauisuasParams) -> Vec<[f64; 3]> {
    let mut roots: Vec<[f64; 3]> = Vec::new();
    let room = 1.0 - pr.delta / pr.beta;
    if !(room > 0.0) {
        return roots;
    }
    let a_cap = (room / (1.0 - pr.beta_a / pr.beta)).min(1.0);
    let u_cap = (room / (1.0 - pr.beta_u / pr.beta)).min(1.0);
    let n = SEED_GRID;
    for ka in 0..n {
        for ku in 0..n {
            let a = (ka as f64 + 0.5) / n as f64 * a_cap;
            let u = (ku as f64 + 0.5) / n as f64 * u_cap;
            let i = endemic_i(a, u, pr);
            if !(i > 0.0 && a + u + i < 1.0) {
                continue;
            }
            let Some(y) = refine_endemic([a, u], pr) else { continue };
            let fresh = roots.iter().all(|r| distance(r, &y) >= DEDUP_DISTANCE);
            if fresh {
                roots.push(y);
            }
        }
    }
    roots.sort_by(|x, y| x[2].total_cmp(&y[2]));
    roots
}

pub(crate) fn distance(x: &[f64; 3], y: &[f64; 3]) -> f64 {
    let d = [x[0] - y[0], x[1] - y[1], x[2] - y[2]];
    libm::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2])
}

/// Newton on the reduced system from `(a, u)`; the result must be interior
/// with full residual below [`EQUILIBRIUM_RESIDUAL`].
pub(crate) fn refine_endemic(seed: [f64; 2], pr: &SauisuasParams) -> Option<[f64; 3]> {
    let [a, u] = reduced_newton(seed, pr)?;
    let y = [a, u, endemic_i(a, u, pr)];
    let interior = y.iter().all(|c| *c > 0.0) && y[0] + y[1] + y[2] < 1.0;
    (interior && residual_norm(&y, pr) < EQUILIBRIUM_RESIDUAL).then_some(y)
}

/// P1, P2 when `R0^a > 1`, and every endemic equilibrium.
pub fn find_equilibria(params: &SauisuasParams) -> Result<Vec<SauisuasEquilibrium>> {
    let mut out = Vec::new();
    out.push(equilibrium_p1(params)?);
    if params.r0a() > 1.0 {
        out.push(equilibrium_p2(params)?);
    }
    out.extend(find_endemic_equilibria(params)?);
    Ok(out)
}

/// Transversality quantities of the transcritical bifurcation at `R0 = 1`,
/// with `β` as bifurcation parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SotomayorReport {
    /// `w · f_β`, with `w` the left null vector.
    pub left_vec_dot_f_mu: f64,
    /// `w · (Df_β v)`.
    pub left_dot_dfmu_v: f64,
    /// `w · D²f(v, v)`.
    pub left_dot_d2f_vv: f64,
    /// Right null vector of `J(P1)`.
    pub v: [f64; 3],
    /// `|J(P1) v|`.
    pub null_residual: f64,
}

impl SotomayorReport {
    /// Sign pattern `(0, +, -)` of a forward bifurcation.
    pub fn is_forward(&self) -> bool {
        self.left_vec_dot_f_mu == 0.0 && self.left_dot_dfmu_v > 0.0 && self.left_dot_d2f_vv < 0.0
    }
}

/// Evaluates the transversality conditions at `P1` with `β` set to `δ`.
pub fn sotomayor_at_r0_equal_1(params: &SauisuasParams) -> Result<SotomayorReport> {
    let mut pr = *params;
    pr.beta = pr.delta;
    if !(pr.beta_a < pr.beta && pr.beta_u < pr.beta) {
        return Err(Error::Precondition("beta_a and beta_u must stay below beta = delta"));
    }
    pr.validate()?;
    if !(pr.alpha_a < pr.delta_a) {
        return Err(Error::Precondition("requires alpha_a < delta_a"));
    }
    let v3 = (pr.delta_a - pr.alpha_a) / (pr.alpha_i + pr.p * pr.delta);
    let v = [1.0, (pr.delta_a + pr.alpha_u + pr.q * pr.delta * v3) / pr.delta_u, v3];
    let w = [0.0, 0.0, 1.0];
    let origin = [0.0; 3];
    let s = 1.0;
    let f_beta = [0.0, 0.0, s * origin[2]];
    let i = origin[2];
    let df_beta = [[0.0; 3], [0.0; 3], [-i, -i, s - i]];
    let dot = |x: [f64; 3], y: [f64; 3]| x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
    let jv = mat3_vec(&sauisuas_jac(&origin, &pr), &v);
    Ok(SotomayorReport {
        left_vec_dot_f_mu: dot(w, f_beta),
        left_dot_dfmu_v: dot(w, mat3_vec(&df_beta, &v)),
        left_dot_d2f_vv: dot(w, sauisuas_second_derivative(&pr, v)),
        v,
        null_residual: libm::sqrt(dot(jv, jv)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BifurcationKind {
    /// `λ3(P2)` changes sign and an endemic branch leaves `P2`.
    Transcritical,
    /// Two endemic equilibria merge and disappear.
    Fold,
}

impl BifurcationKind {
    pub fn name(self) -> &'static str {
        match self {
            BifurcationKind::Transcritical => "transcritical",
            BifurcationKind::Fold => "fold",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// The endemic branch exists only where `P2` is unstable.
    Forward,
    /// A small endemic branch coexists with a stable `P2`.
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bifurcation {
    pub kind: BifurcationKind,
    pub value: f64,
    /// Set for transcritical points only.
    pub direction: Option<Direction>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchColumn {
    pub value: f64,
    pub equilibria: Vec<SauisuasEquilibrium>,
}

impl BranchColumn {
    pub fn endemic_count(&self) -> usize {
        self.equilibria.iter().filter(|e| e.kind == EquilibriumKind::Endemic).count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchDiagram {
    pub parameter: SauisuasParam,
    pub binding: Binding,
    pub columns: Vec<BranchColumn>,
    pub bifurcations: Vec<Bifurcation>,
}

/// Sweep values `lo + k (hi - lo)/steps`, `k = 0..=steps`.
pub fn sweep_values(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidParameter("sweep range must satisfy lo < hi"));
    }
    if steps == 0 {
        return Err(Error::InvalidParameter("sweep needs at least one step"));
    }
    Ok((0..=steps).map(|k| lo + (hi - lo) * k as f64 / steps as f64).collect())
}

/// All equilibria at one sweep value.
pub fn branch_column(
    params: &SauisuasParams,
    parameter: SauisuasParam,
    value: f64,
    binding: Binding,
) -> Result<BranchColumn> {
    if binding.binds(parameter) {
        return Err(Error::InvalidParameter("swept parameter is fixed by the binding"));
    }
    let pr = params.with(parameter, value, binding);
    Ok(BranchColumn { value, equilibria: find_equilibria(&pr)? })
}

fn endemic_count(pr: &SauisuasParams, parameter: SauisuasParam, value: f64, binding: Binding) -> usize {
    find_endemic_equilibria(&pr.with(parameter, value, binding)).map_or(0, |v| v.len())
}

fn lambda3_at(pr: &SauisuasParams, parameter: SauisuasParam, value: f64, binding: Binding) -> Option<f64> {
    let p = pr.with(parameter, value, binding);
    p.validate().ok()?;
    lambda3_p2(&p).ok()
}

fn transcritical_between(
    pr: &SauisuasParams,
    parameter: SauisuasParam,
    binding: Binding,
    mut lo: f64,
    mut hi: f64,
) -> Option<Bifurcation> {
    let mut f_lo = lambda3_at(pr, parameter, lo, binding)?;
    let f_hi = lambda3_at(pr, parameter, hi, binding)?;
    if (f_lo > 0.0) == (f_hi > 0.0) || f_lo == 0.0 && f_hi == 0.0 {
        return None;
    }
    let stable_left = f_lo < 0.0;
    while hi - lo > 1e-13 * (1.0 + libm::fabs(hi)) {
        let mid = 0.5 * (lo + hi);
        let fm = lambda3_at(pr, parameter, mid, binding)?;
        if fm == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (fm > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    let value = 0.5 * (lo + hi);
    let offset = 1e-4 * (1.0 + libm::fabs(value));
    let stable_side = if stable_left { value - offset } else { value + offset };
    let direction = find_endemic_equilibria(&pr.with(parameter, stable_side, binding))
        .ok()
        .map(|eqs| {
            if eqs.iter().any(|e| e.i_star < 1e-2) {
                Direction::Backward
            } else {
                Direction::Forward
            }
        });
    Some(Bifurcation { kind: BifurcationKind::Transcritical, value, direction })
}

fn fold_between(
    pr: &SauisuasParams,
    parameter: SauisuasParam,
    binding: Binding,
    mut lo: f64,
    mut hi: f64,
    n_lo: usize,
) -> Bifurcation {
    while hi - lo > 1e-9 * (1.0 + libm::fabs(hi)) {
        let mid = 0.5 * (lo + hi);
        if endemic_count(pr, parameter, mid, binding) == n_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Bifurcation { kind: BifurcationKind::Fold, value: 0.5 * (lo + hi), direction: None }
}

/// Locates transcritical and fold points between consecutive columns.
pub fn detect_bifurcations(
    params: &SauisuasParams,
    parameter: SauisuasParam,
    binding: Binding,
    columns: &[BranchColumn],
) -> Vec<Bifurcation> {
    let mut out = Vec::new();
    for pair in columns.windows(2) {
        let (left, right) = (&pair[0], &pair[1]);
        if let Some(b) = transcritical_between(params, parameter, binding, left.value, right.value) {
            out.push(b);
        }
        let (nl, nr) = (left.endemic_count(), right.endemic_count());
        if nl.abs_diff(nr) == 2 {
            out.push(fold_between(params, parameter, binding, left.value, right.value, nl));
        }
    }
    out
}

/// One-parameter diagram: every equilibrium with its stability per sweep
/// value, plus the bifurcation points in between.
pub fn branch_diagram(
    params: &SauisuasParams,
    parameter: SauisuasParam,
    lo: f64,
    hi: f64,
    steps: usize,
    binding: Binding,
) -> Result<BranchDiagram> {
    let columns = sweep_values(lo, hi, steps)?
        .into_iter()
        .map(|v| branch_column(params, parameter, v, binding))
        .collect::<Result<Vec<_>>>()?;
    assemble_branch_diagram(params, parameter, binding, columns)
}

/// Builds a diagram from columns computed elsewhere (in any order).
pub fn assemble_branch_diagram(
    params: &SauisuasParams,
    parameter: SauisuasParam,
    binding: Binding,
    mut columns: Vec<BranchColumn>,
) -> Result<BranchDiagram> {
    columns.sort_by(|x, y| x.value.total_cmp(&y.value));
    if columns.windows(2).any(|w| !(w[0].value < w[1].value)) {
        return Err(Error::InvalidParameter("sweep values must be distinct"));
    }
    let bifurcations = detect_bifurcations(params, parameter, binding, &columns);
    Ok(BranchDiagram { parameter, binding, columns, bifurcations })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn fig3() -> SauisuasParams {
        SauisuasParams {
            beta: 3.0,
            beta_a: 0.2,
            beta_u: 0.5,
            delta: 1.0,
            delta_a: 0.01,
            delta_u: 0.05,
            alpha_i: 0.05,
            alpha_a: 0.012,
            alpha_u: 1.0,
            p: 0.05,
            q: 0.1,
        }
    }

    pub(crate) fn fig2(alpha_a: f64) -> SauisuasParams {
        SauisuasParams {
            beta: 2.0,
            beta_a: 0.9,
            beta_u: 1.0,
            delta: 1.0,
            delta_a: 0.01,
            delta_u: 0.05,
            alpha_i: 0.8,
            alpha_a,
            alpha_u: 0.1,
            p: 0.1,
            q: 0.3,
        }
    }

    #[test]
    fn p2_closed_form() {
        let e = equilibrium_p2(&fig3()).unwrap();
        assert!((e.a_star - 0.009328).abs() < 5e-7, "{}", e.a_star);
        assert!((e.u_star - 0.157340).abs() < 5e-6, "{}", e.u_star);
        let s0 = 1.0 - e.a_star - e.u_star;
        assert!((s0 - 0.01 / 0.012).abs() < 1e-12);
        assert!(residual_norm(&e.state().to_array(), &fig3()) < 1e-12);
    }

    #[test]
    fn p2_small_alpha_u_limit() {
        let mut p = fig3();
        p.alpha_u = 1e-9;
        p.delta_u = 100.0;
        let e = equilibrium_p2(&p).unwrap();
        let limit = (1.0 - p.delta_a / p.alpha_a) * p.delta_u / (p.delta_a + p.delta_u);
        assert!((e.a_star - limit).abs() < 1e-9);
        assert!(e.u_star < 1e-4);
    }

    #[test]
    fn p2_absent_without_awareness_growth() {
        let mut p = fig3();
        p.alpha_a = p.delta_a;
        assert!(matches!(equilibrium_p2(&p), Err(Error::AbsentEquilibrium(_))));
        assert!(lambda3_p2(&p).is_err());
        assert_eq!(find_equilibria(&p).unwrap()[0].kind, EquilibriumKind::P1);
    }

    #[test]
    fn lambda3_matches_spectrum() {
        for p in [fig3(), fig2(0.1), fig2(1.0)] {
            let e = equilibrium_p2(&p).unwrap();
            let l3 = lambda3_p2(&p).unwrap();
            let best = e
                .eigenvalues
                .iter()
                .map(|z| (z.re - l3).abs() + z.im.abs())
                .fold(f64::INFINITY, f64::min);
            assert!(best < 1e-9, "{best}");
        }
        let mut p = fig3();
        p.beta = 0.9;
        p.beta_a = 0.2;
        assert!(lambda3_p2(&p).unwrap() < 0.0);
    }

    #[test]
    fn critical_beta_a_figure_two() {
        let left = critical_beta_a(&fig2(0.1)).unwrap();
        let right = critical_beta_a(&fig2(1.0)).unwrap();
        assert!((left - 0.8444).abs() < 5e-4, "{left}");
        assert!((right - 0.9877).abs() < 5e-4, "{right}");
        let mut p = fig2(0.1);
        p.beta_a = left;
        assert!(lambda3_p2(&p).unwrap().abs() < 1e-10);
    }

    #[test]
    fn p1_spectrum_and_instability() {
        let p = fig3();
        let e = equilibrium_p1(&p).unwrap();
        assert!(!e.stable);
        let mut want = [p.alpha_a - p.delta_a, -p.delta_u, p.beta - p.delta];
        let mut got: Vec<f64> = e.eigenvalues.iter().map(|z| z.re).collect();
        want.sort_by(f64::total_cmp);
        got.sort_by(f64::total_cmp);
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-9);
        }
    }

    #[test]
    fn not_an_equilibrium_rejected() {
        let r = classify_stability(State3::new(0.1, 0.1, 0.1), &fig3());
        assert!(matches!(r, Err(Error::NotAnEquilibrium { .. })));
    }

    #[test]
    fn endemic_roots_satisfy_constraints() {
        for p in [fig3(), fig2(0.1), fig2(1.0)] {
            for e in find_endemic_equilibria(&p).unwrap() {
                let x = e.state().to_array();
                assert!(residual_norm(&x, &p) < 1e-10);
                let force = p.beta * e.state().s() + p.beta_a * e.a_star + p.beta_u * e.u_star;
                assert!((force - p.delta).abs() < 1e-10);
                assert!((endemic_i(e.a_star, e.u_star, &p) - e.i_star).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn backward_region_has_two_endemic_points() {
        let mut p = fig2(0.1);
        p.beta_a = 0.78;
        let eqs = find_endemic_equilibria(&p).unwrap();
        assert_eq!(eqs.len(), 2);
        assert_ne!(eqs[0].stable, eqs[1].stable);
        p.beta_a = 0.9;
        assert_eq!(find_endemic_equilibria(&p).unwrap().len(), 1);
        p.beta_a = 0.6;
        assert!(find_endemic_equilibria(&p).unwrap().is_empty());
    }

    #[test]
    fn figure_two_diagrams() {
        let left = branch_diagram(&fig2(0.1), SauisuasParam::BetaA, 0.5, 1.2, 70, Binding::None).unwrap();
        let tc: Vec<_> = left.bifurcations.iter().filter(|b| b.kind == BifurcationKind::Transcritical).collect();
        let fold: Vec<_> = left.bifurcations.iter().filter(|b| b.kind == BifurcationKind::Fold).collect();
        assert_eq!(tc.len(), 1);
        assert_eq!(fold.len(), 1);
        assert!((tc[0].value - critical_beta_a(&fig2(0.1)).unwrap()).abs() < 1e-6);
        assert_eq!(tc[0].direction, Some(Direction::Backward));
        assert!((fold[0].value - 0.7071).abs() < 1e-3, "{}", fold[0].value);

        let right = branch_diagram(&fig2(1.0), SauisuasParam::BetaA, 0.5, 1.2, 70, Binding::None).unwrap();
        assert_eq!(right.bifurcations.len(), 1);
        assert_eq!(right.bifurcations[0].direction, Some(Direction::Forward));
        assert!((right.bifurcations[0].value - 0.9877).abs() < 1e-3);
    }

    #[test]
    fn quiet_sweep_is_single_branch() {
        let d = branch_diagram(&fig2(1.0), SauisuasParam::BetaA, 1.1, 1.3, 10, Binding::None).unwrap();
        assert!(d.bifurcations.is_empty());
        assert!(d.columns.iter().all(|c| c.endemic_count() == 1));
        let i: Vec<f64> = d.columns.iter().map(|c| c.equilibria.last().unwrap().i_star).collect();
        assert!(i.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn bound_parameter_cannot_be_swept() {
        let r = branch_column(&fig3(), SauisuasParam::P, 0.1, Binding::PComplementsQ);
        assert!(r.is_err());
        assert!(sweep_values(1.0, 0.0, 3).is_err());
    }

    #[test]
    fn sotomayor_sign_pattern() {
        let mut p = fig3();
        p.alpha_a = 0.005;
        let r = sotomayor_at_r0_equal_1(&p).unwrap();
        assert_eq!(r.left_vec_dot_f_mu, 0.0);
        assert!(r.left_dot_dfmu_v > 0.0 && r.left_dot_d2f_vv < 0.0);
        assert_eq!(r.left_dot_dfmu_v, r.v[2]);
        assert!(r.null_residual < 1e-10);
        assert!(r.is_forward());
        assert!(matches!(sotomayor_at_r0_equal_1(&fig3()), Err(Error::Precondition(_))));
    }
}
