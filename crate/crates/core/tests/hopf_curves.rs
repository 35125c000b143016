mod common;

use aware_dyn_core::hopf::{
    hopf_diagram, hopf_residual, prevalence_along_curve, region_coverage_check, scan_hopf_points,
    trace_hopf_curve, ContinuationOptions, HopfCurve, HopfPair,
};
use aware_dyn_core::linalg::eigenvalues3;
use aware_dyn_core::model::sauisuas_jacobian;
use aware_dyn_core::ode::{settle, AttractorKind, SettleOptions};
use aware_dyn_core::sauisuas::find_endemic_equilibria;
use aware_dyn_core::{Binding, SauisuasParam, SauisuasParams};
use common::fig3;
use SauisuasParam::*;

fn pq() -> HopfPair {
    HopfPair::new(P, Q, Binding::None).unwrap()
}

fn fig3_curve(step: f64, from_high: bool) -> HopfCurve {
    let mut opts = ContinuationOptions::new(step, (0.0, 0.95));
    opts.from_high = from_high;
    trace_hopf_curve(&fig3(), &pq(), (0.04, 0.48), &opts).unwrap()
}

#[test]
fn omega_is_the_critical_imaginary_part() {
    let pt = scan_hopf_points(&fig3(), &pq(), 0.05, 0.0, 0.95, 200).unwrap()[0];
    let eig = eigenvalues3(&sauisuas_jacobian(pt.state(), &pt.params).unwrap());
    let im = eig.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    assert!((im - pt.omega).abs() < 1e-6);
}

#[test]
fn emerging_cycle_period_matches_omega() {
    let pt = scan_hopf_points(&fig3(), &pq(), 0.05, 0.0, 0.95, 200).unwrap()[0];
    let pr = SauisuasParams { q: pt.tau * 0.98, ..pt.params };
    let run = settle(&pr, [pt.a, pt.u, pt.i * 1.01], &SettleOptions::default()).unwrap();
    assert_eq!(run.summary.kind, AttractorKind::LimitCycle);
    let period = run.summary.period.unwrap();
    assert!((period / pt.period() - 1.0).abs() < 0.15, "{period} vs {}", pt.period());
}

#[test]
fn coefficients_scale_with_time() {
    let mut pr = fig3();
    pr.q = 0.2;
    let e = find_endemic_equilibria(&pr).unwrap()[0];
    let r = hopf_residual(e.state(), &pr).unwrap();
    let k = 3.0;
    let fast = SauisuasParams {
        beta: k * pr.beta,
        beta_a: k * pr.beta_a,
        beta_u: k * pr.beta_u,
        delta: k * pr.delta,
        delta_a: k * pr.delta_a,
        delta_u: k * pr.delta_u,
        alpha_i: k * pr.alpha_i,
        alpha_a: k * pr.alpha_a,
        alpha_u: k * pr.alpha_u,
        ..pr
    };
    let rf = hopf_residual(e.state(), &fast).unwrap();
    assert!((rf.c2 - k * r.c2).abs() < 1e-12);
    assert!((rf.c1 - k * k * r.c1).abs() < 1e-12);
    assert!((rf.c0 - k * k * k * r.c0).abs() < 1e-12);
    assert_eq!(rf.h < 0.0, r.h < 0.0);
}

#[test]
fn curve_points_satisfy_invariants() {
    let c = fig3_curve(0.02, false);
    assert!(!c.truncated && c.points.len() > 10);
    assert!(c.points.windows(2).all(|w| w[1].sigma > w[0].sigma && (w[1].i - w[0].i).abs() < 0.05));
    for p in &c.points {
        let r = p.residual();
        assert!(r.h.abs() < 1e-9 && r.c1 > 0.0 && p.omega > 0.0);
        let eqs = find_endemic_equilibria(&SauisuasParams { p: p.sigma, q: p.tau, ..fig3() });
        if let Ok(eqs) = eqs {
            assert!(eqs.iter().any(|e| e.state().distance(&p.state()) < 1e-8));
        }
    }
    let i = prevalence_along_curve(&c);
    assert_eq!(i.len(), c.points.len());
}

#[test]
fn halving_the_step_stays_on_the_curve() {
    let coarse = fig3_curve(0.02, false);
    let fine = fig3_curve(0.01, false);
    for p in &fine.points {
        if let Some(t) = coarse.tau_at(p.sigma) {
            assert!((t - p.tau).abs() < 1e-3, "sigma {}: {} vs {}", p.sigma, t, p.tau);
        }
    }
}

#[test]
fn tracing_direction_does_not_matter() {
    let low = fig3_curve(0.02, false);
    let high = fig3_curve(0.02, true);
    assert_eq!(low.sigma_span().map(|s| s.0), high.sigma_span().map(|s| s.0));
    for p in &high.points {
        let t = low.tau_at(p.sigma).unwrap();
        let exact = low.points.iter().find(|q| (q.sigma - p.sigma).abs() < 1e-12);
        if let Some(q) = exact {
            assert!((q.tau - p.tau).abs() < 1e-4);
        } else {
            assert!((t - p.tau).abs() < 1e-4, "{} vs {}", t, p.tau);
        }
    }
}

#[test]
fn single_point_range() {
    let opts = ContinuationOptions::new(0.01, (0.0, 0.95));
    let c = trace_hopf_curve(&fig3(), &pq(), (0.05, 0.05), &opts).unwrap();
    assert_eq!(prevalence_along_curve(&c).len(), 1);
}

fn switch_in_diagram(alpha_u: f64, q_star: f64) {
    let base = SauisuasParams { alpha_u, ..fig3() };
    let rows = hopf_diagram(&base, 0.02, 0.4, 19, &SettleOptions::default()).unwrap();
    assert_eq!(rows.len(), 20);
    for r in &rows {
        assert_eq!(r.stable, r.q > q_star, "q = {}", r.q);
        match r.envelope {
            Some((lo, hi)) => {
                assert!(!r.stable);
                assert!(lo <= r.i_star && r.i_star <= hi);
            }
            None => assert!(r.stable),
        }
    }
}

#[test]
fn figure_five_diagram() {
    switch_in_diagram(1.0, 0.1075);
}

#[test]
fn figure_nine_diagram() {
    switch_in_diagram(3.0, 0.1923);
}

#[test]
fn figure_three_does_not_cover_simplex() {
    let opts = ContinuationOptions::new(0.01, (0.0, 0.95));
    let r = region_coverage_check(&fig3(), &opts, 50).unwrap();
    assert!(!r.covered);
    let mut flat = fig3();
    flat.alpha_u = 0.2;
    flat.alpha_i = 0.3;
    let r = region_coverage_check(&flat, &opts, 10).unwrap();
    assert!(r.curve.is_empty() && !r.covered);
}
