//! Equilibria, nullclines and linear stability of the two-compartment model.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues2, solve, stability_of};
use crate::model::{saias_field, saias_jacobian, saias_rhs, SaiasParams, State2};
use crate::ode::{integrate, SolverOptions, Trajectory};

/// Grid resolution of the endemic-root scan over `i ∈ (0, 1)`.
pub const ENDEMIC_SCAN_POINTS: usize = 2000;
/// Field residual required of every reported endemic equilibrium.
pub const EQUILIBRIUM_RESIDUAL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquilibriumKind {
    /// Disease- and awareness-free, at the origin.
    P1,
    /// Disease-free with persistent awareness, on the `a` axis.
    P2,
    /// Interior point with `i > 0`.
    Endemic,
}

impl EquilibriumKind {
    pub fn name(self) -> &'static str {
        match self {
            EquilibriumKind::P1 => "P1",
            EquilibriumKind::P2 => "P2",
            EquilibriumKind::Endemic => "endemic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaiasEquilibrium {
    pub kind: EquilibriumKind,
    pub a_star: f64,
    pub i_star: f64,
    pub eigenvalues: [Complex64; 2],
    pub stable: bool,
    pub marginal: bool,
}

impl SaiasEquilibrium {
    pub fn state(&self) -> State2 {
        State2::new(self.a_star, self.i_star)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReproductionNumbers {
    /// `beta / delta`
    pub r0: f64,
    /// `alpha_a(0) / delta_a(0)`
    pub r0a: f64,
}

pub fn reproduction_numbers(params: &SaiasParams) -> ReproductionNumbers {
    ReproductionNumbers {
        r0: params.beta / params.delta,
        r0a: params.alpha_a.eval(0.0) / params.delta_a.eval(0.0),
    }
}

/// The non-trivial branch of the `i`-nullcline, `i(a) = intercept + slope * a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct INullcline {
    pub intercept: f64,
    pub slope: f64,
    /// Where the line meets the `a` axis.
    pub a_axis_crossing: f64,
}

pub fn i_nullcline_line(params: &SaiasParams) -> INullcline {
    let (b, ba, d) = (params.beta, params.beta_a, params.delta);
    INullcline {
        intercept: 1.0 - d / b,
        slope: -(1.0 - ba / b),
        a_axis_crossing: (b - d) / (b - ba),
    }
}

/// Coefficients `(B, C)` of the `a`-nullcline quadratic `a² - B a - C = 0`.
fn a_nullcline_coefficients(params: &SaiasParams, i: f64) -> (f64, f64) {
    let ai = params.alpha_i.eval(i);
    let aa = params.alpha_a.eval(i);
    let da = params.delta_a.eval(i);
    let b = 1.0 - i - ((ai + params.beta_a) * i + da) / aa;
    let c = ai / aa * i * (1.0 - i) + params.p.eval(i) * params.delta / aa * i;
    (b, c)
}

/// The nonnegative root `a(i)` of the `a`-nullcline quadratic.
pub fn a_nullcline(params: &SaiasParams, i: f64) -> f64 {
    let (b, c) = a_nullcline_coefficients(params, i);
    let disc = libm::sqrt((b * b + 4.0 * c).max(0.0));
    if b >= 0.0 {
        0.5 * (b + disc)
    } else if c == 0.0 {
        0.0
    } else {
        2.0 * c / (disc - b)
    }
}

/// Residual of the `a`-nullcline quadratic at `(a, i)`.
pub fn a_nullcline_residual(params: &SaiasParams, a: f64, i: f64) -> f64 {
    let (b, c) = a_nullcline_coefficients(params, i);
    a * a - b * a - c
}

/// Whether `(β - δ)/(β - β_a) > 1 - δ_a(0)/α_a(0)`, which guarantees an
/// endemic equilibrium.
pub fn endemic_existence_guaranteed(params: &SaiasParams) -> bool {
    let line = i_nullcline_line(params);
    line.a_axis_crossing > 1.0 - params.delta_a.eval(0.0) / params.alpha_a.eval(0.0)
}

/// Closed-form eigenvalues at the origin.
pub fn eigenvalues_p1(params: &SaiasParams) -> [f64; 2] {
    [params.alpha_a.eval(0.0) - params.delta_a.eval(0.0), params.beta - params.delta]
}

/// Closed-form eigenvalues at the disease-free aware equilibrium.
pub fn eigenvalues_p2(params: &SaiasParams) -> Result<[f64; 2]> {
    let aa = params.alpha_a.eval(0.0);
    let da = params.delta_a.eval(0.0);
    if !(aa > da) {
        return Err(Error::AbsentEquilibrium("P2 requires alpha_a(0) > delta_a(0)"));
    }
    let a0 = 1.0 - da / aa;
    Ok([da - aa, params.beta - params.delta - (params.beta - params.beta_a) * a0])
}

fn classify(kind: EquilibriumKind, state: State2, params: &SaiasParams) -> Result<SaiasEquilibrium> {
    let j = saias_jacobian(state, params)?;
    let eigenvalues = eigenvalues2(&j);
    let verdict = stability_of(&eigenvalues);
    Ok(SaiasEquilibrium {
        kind,
        a_star: state.a,
        i_star: state.i,
        eigenvalues,
        stable: verdict.stable,
        marginal: verdict.marginal,
    })
}

fn field_norm(params: &SaiasParams, a: f64, i: f64) -> f64 {
    let f = saias_rhs(&[a, i], params);
    libm::sqrt(f[0] * f[0] + f[1] * f[1])
}

fn polish(params: &SaiasParams, mut x: [f64; 2]) -> [f64; 2] {
    for _ in 0..8 {
        let f = saias_rhs(&x, params);
        if libm::sqrt(f[0] * f[0] + f[1] * f[1]) < 1e-15 {
            break;
        }
        let Ok(j) = saias_jacobian(State2::from_array(x), params) else { break };
        let Some(dx) = solve(j, [-f[0], -f[1]]) else { break };
        let next = [x[0] + dx[0], x[1] + dx[1]];
        if field_norm(params, next[0], next[1]) >= field_norm(params, x[0], x[1]) {
            break;
        }
        x = next;
    }
    x
}

/// Endemic equilibria: intersections of `a(i)` with the `i`-nullcline line,
/// located by a uniform scan in `i` and refined by bisection.
fn endemic_equilibria(params: &SaiasParams) -> Vec<[f64; 2]> {
    let line = i_nullcline_line(params);
    let a_line = |i: f64| (line.intercept - i) / -line.slope;
    let gap = |i: f64| a_nullcline(params, i) - a_line(i);

    let n = ENDEMIC_SCAN_POINTS;
    let mut roots: Vec<[f64; 2]> = Vec::new();
    let push = |i: f64, roots: &mut Vec<[f64; 2]>| {
        let x = polish(params, [a_nullcline(params, i), i]);
        let [a, i] = x;
        let interior = a > 0.0 && i > 0.0 && a + i < 1.0;
        if interior
            && field_norm(params, a, i) < EQUILIBRIUM_RESIDUAL
            && roots.iter().all(|r| libm::fabs(r[0] - a) + libm::fabs(r[1] - i) > 1e-9)
        {
            roots.push(x);
        }
    };

    let mut prev_i = 1.0 / n as f64;
    let mut prev_g = gap(prev_i);
    if prev_g == 0.0 {
        push(prev_i, &mut roots);
    }
    for k in 2..n {
        let i = k as f64 / n as f64;
        let g = gap(i);
        if g == 0.0 {
            push(i, &mut roots);
        } else if prev_g != 0.0 && (g > 0.0) != (prev_g > 0.0) {
            let (mut lo, mut hi, mut g_lo) = (prev_i, i, prev_g);
            while hi - lo > 1e-12 {
                let mid = 0.5 * (lo + hi);
                let gm = gap(mid);
                if gm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (gm > 0.0) == (g_lo > 0.0) {
                    lo = mid;
                    g_lo = gm;
                } else {
                    hi = mid;
                }
            }
            push(0.5 * (lo + hi), &mut roots);
        }
        prev_i = i;
        prev_g = g;
    }
    roots
}

/// All equilibria in Ω: the origin, `P2` when `R0^a > 1`, and every endemic
/// root found by the intersection scan.
pub fn find_equilibria(params: &SaiasParams) -> Result<Vec<SaiasEquilibrium>> {
    params.validate()?;
    let mut out = Vec::new();
    out.push(classify(EquilibriumKind::P1, State2::new(0.0, 0.0), params)?);
    let rn = reproduction_numbers(params);
    if rn.r0a > 1.0 {
        let a0 = 1.0 - params.delta_a.eval(0.0) / params.alpha_a.eval(0.0);
        out.push(classify(EquilibriumKind::P2, State2::new(a0, 0.0), params)?);
    }
    for [a, i] in endemic_equilibria(params) {
        out.push(classify(EquilibriumKind::Endemic, State2::new(a, i), params)?);
    }
    Ok(out)
}

/// Divergence of the field scaled by `1/(a i)`; negative throughout the
/// interior of Ω, which rules out closed orbits there.
pub fn dulac_divergence(state: State2, params: &SaiasParams) -> Result<f64> {
    let State2 { a, i } = state;
    if !(a.is_finite() && i.is_finite()) {
        return Err(Error::NonFinite("state"));
    }
    if !(a > 0.0 && i > 0.0 && a + i < 1.0) {
        return Err(Error::Domain("Dulac divergence needs a state strictly inside Omega"));
    }
    let pr = params;
    Ok(-pr.alpha_i.eval(i) * (1.0 - i) / (a * a)
        - pr.alpha_a.eval(i) / i
        - pr.p.eval(i) * pr.delta / (a * a)
        - pr.beta / a)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub a: f64,
    pub i: f64,
    pub da: f64,
    pub di: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Nullcline {
    pub name: &'static str,
    pub points: Vec<State2>,
}

/// Everything needed to draw a phase portrait.
#[derive(Debug, Clone)]
pub struct PhasePortrait {
    pub field: Vec<FieldSample>,
    pub nullclines: Vec<Nullcline>,
    pub equilibria: Vec<SaiasEquilibrium>,
    pub trajectories: Vec<Trajectory<2>>,
}

/// Samples the field on a `grid_n × grid_n` lattice restricted to Ω, the
/// nullclines, the equilibria and one trajectory per seed.
pub fn phase_portrait_data(
    params: &SaiasParams,
    grid_n: usize,
    seeds: &[State2],
    t_end: f64,
    solver: &SolverOptions,
) -> Result<PhasePortrait> {
    if grid_n < 10 {
        return Err(Error::InvalidParameter("grid_n must be at least 10"));
    }
    let equilibria = find_equilibria(params)?;
    let step = 1.0 / (grid_n - 1) as f64;
    let mut field = Vec::new();
    for ka in 0..grid_n {
        for ki in 0..grid_n - ka {
            let (a, i) = (ka as f64 * step, ki as f64 * step);
            let [da, di] = saias_field(State2::new(a, i), params)?;
            field.push(FieldSample { a, i, da, di });
        }
    }

    let mut nullclines = Vec::new();
    nullclines.push(Nullcline {
        name: "i_axis",
        points: alloc::vec![State2::new(0.0, 0.0), State2::new(1.0, 0.0)],
    });
    let line = i_nullcline_line(params);
    if line.intercept > 0.0 {
        let mut a_end = line.a_axis_crossing;
        if params.beta_a > 0.0 {
            a_end = a_end.min(params.delta / params.beta_a);
        }
        let i_end = line.intercept + line.slope * a_end;
        nullclines.push(Nullcline {
            name: "i_line",
            points: alloc::vec![State2::new(0.0, line.intercept), State2::new(a_end, i_end)],
        });
    }
    let samples = 4 * grid_n;
    let a_points = (0..=samples)
        .map(|k| {
            let i = k as f64 / samples as f64;
            State2::new(a_nullcline(params, i), i)
        })
        .filter(|s| s.a + s.i <= 1.0)
        .collect();
    nullclines.push(Nullcline { name: "a_curve", points: a_points });

    let trajectories = seeds
        .iter()
        .map(|s| integrate(params, s.to_array(), t_end, solver))
        .collect::<Result<Vec<_>>>()?;

    Ok(PhasePortrait { field, nullclines, equilibria, trajectories })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rate::RateFunction;

    pub(crate) fn fig1(delta_a0: f64) -> SaiasParams {
        SaiasParams {
            beta: 10.0,
            beta_a: 1.0,
            delta: 4.0,
            alpha_i: RateFunction::linear(6.0),
            alpha_a: RateFunction::linear(4.0),
            delta_a: RateFunction::reciprocal(delta_a0),
            p: RateFunction::linear(0.05),
        }
    }

    fn kinds(p: &SaiasParams) -> Vec<EquilibriumKind> {
        find_equilibria(p).unwrap().iter().map(|e| e.kind).collect()
    }

    #[test]
    fn i_nullcline_figure_one() {
        let l = i_nullcline_line(&fig1(1.0));
        assert!((l.intercept - 0.6).abs() < 1e-15);
        assert!((l.slope + 0.9).abs() < 1e-15);
        assert!((l.a_axis_crossing - 6.0 / 9.0).abs() < 1e-15);
        let mut p = fig1(1.0);
        p.beta_a = 0.0;
        assert_eq!(i_nullcline_line(&p).slope, -1.0);
        p.delta = p.beta;
        assert_eq!(i_nullcline_line(&p).intercept, 0.0);
    }

    #[test]
    fn a_nullcline_endpoints() {
        // delta_a(0) = 1 < alpha_a(0) = 4
        assert!((a_nullcline(&fig1(1.0), 0.0) - 0.75).abs() < 1e-15);
        assert_eq!(a_nullcline(&fig1(5.0), 0.0), 0.0);
        for d in [1.0, 3.0, 5.0, 20.0] {
            assert!(a_nullcline(&fig1(d), 1.0) > 0.0);
        }
    }

    #[test]
    fn a_nullcline_residual_small() {
        for d in [1.0, 3.0, 5.0] {
            let p = fig1(d);
            for k in 0..=100 {
                let i = k as f64 / 100.0;
                let a = a_nullcline(&p, i);
                assert!(a_nullcline_residual(&p, a, i).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn figure_one_configurations() {
        use EquilibriumKind::*;
        assert_eq!(kinds(&fig1(1.0)), [P1, P2]);
        assert_eq!(kinds(&fig1(3.0)), [P1, P2, Endemic]);
        assert_eq!(kinds(&fig1(5.0)), [P1, Endemic]);
        assert!(endemic_existence_guaranteed(&fig1(3.0)));
        assert!(!endemic_existence_guaranteed(&fig1(1.0)));
    }

    #[test]
    fn boundary_r0a_reports_no_p2() {
        let mut p = fig1(4.0);
        p.delta_a = RateFunction::constant(4.0);
        assert_eq!(reproduction_numbers(&p).r0a, 1.0);
        assert!(!kinds(&p).contains(&EquilibriumKind::P2));
        assert!(matches!(eigenvalues_p2(&p), Err(Error::AbsentEquilibrium(_))));
    }

    #[test]
    fn closed_form_eigenvalues() {
        let p = fig1(3.0);
        assert_eq!(eigenvalues_p1(&p), [1.0, 6.0]);
        let l1 = eigenvalues_p1(&p);
        let l2 = eigenvalues_p2(&p).unwrap();
        assert_eq!(l2[0], -l1[0]);
        assert!(endemic_existence_guaranteed(&p) && l2[1] > 0.0);
        let eqs = find_equilibria(&p).unwrap();
        let p1 = &eqs[0];
        let mut re: Vec<f64> = p1.eigenvalues.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        assert!((re[0] - 1.0).abs() < 1e-9 && (re[1] - 6.0).abs() < 1e-9);
        assert!(!p1.stable);
    }

    #[test]
    fn reproduction_numbers_figure_one() {
        let r = reproduction_numbers(&fig1(1.0));
        assert_eq!(r.r0, 2.5);
        assert_eq!(r.r0a, 4.0);
    }

    #[test]
    fn dulac_negative_and_unbounded() {
        let p = fig1(3.0);
        assert!(dulac_divergence(State2::new(0.3, 0.3), &p).unwrap() < 0.0);
        let near = dulac_divergence(State2::new(1e-6, 0.3), &p).unwrap();
        let far = dulac_divergence(State2::new(1e-3, 0.3), &p).unwrap();
        assert!(near < far && near < -1e11);
        assert!(matches!(dulac_divergence(State2::new(0.0, 0.3), &p), Err(Error::Domain(_))));
        assert!(dulac_divergence(State2::new(0.5, 0.5), &p).is_err());
    }

    #[test]
    fn phase_portrait_bundle() {
        let p = fig1(3.0);
        let o = SolverOptions::default();
        let bare = phase_portrait_data(&p, 11, &[], 10.0, &o).unwrap();
        assert!(bare.trajectories.is_empty());
        assert_eq!(bare.field.len(), 66);
        assert_eq!(bare.nullclines.len(), 3);
        let seeds = [State2::new(0.05, 0.9), State2::new(0.9, 0.05)];
        let full = phase_portrait_data(&p, 11, &seeds, 20.0, &o).unwrap();
        assert!(full.trajectories.iter().all(|t| crate::model::in_omega(&t.last_state())));
        assert!(phase_portrait_data(&p, 5, &[], 10.0, &o).is_err());
    }
}
