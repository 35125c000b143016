//! Parameter sets, states, vector fields and analytic Jacobians of the
//! SAIAS (two-dimensional) and SAUIUAS (three-dimensional) models.
//!
//! The susceptible fraction `s` is never stored: it is always `1 - a - i`
//! (respectively `1 - a - u - i`).

use crate::error::{Error, Result};
use crate::rate::RateFunction;

/// Tolerance used by [`in_omega`] for boundary membership.
pub const OMEGA_TOLERANCE: f64 = 1e-12;

pub type Mat2 = [[f64; 2]; 2];
pub type Mat3 = [[f64; 3]; 3];

/// Membership in the feasible simplex: every coordinate nonnegative and the
/// sum at most one, both up to [`OMEGA_TOLERANCE`].
pub fn in_omega(coords: &[f64]) -> bool {
    omega_violation(coords) <= OMEGA_TOLERANCE
}

/// Distance-like measure of how far `coords` lies outside the simplex
/// (zero inside). NaN coordinates yield infinity.
pub fn omega_violation(coords: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    let mut sum = 0.0;
    for &x in coords {
        if !x.is_finite() {
            return f64::INFINITY;
        }
        worst = worst.max(-x);
        sum += x;
    }
    worst.max(sum - 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct State2 {
    pub a: f64,
    pub i: f64,
}

impl State2 {
    pub const fn new(a: f64, i: f64) -> Self {
        Self { a, i }
    }

    #[inline]
    pub fn s(&self) -> f64 {
        1.0 - self.a - self.i
    }

    pub fn to_array(self) -> [f64; 2] {
        [self.a, self.i]
    }

    pub fn from_array(x: [f64; 2]) -> Self {
        Self { a: x[0], i: x[1] }
    }

    pub fn in_omega(&self) -> bool {
        in_omega(&[self.a, self.i])
    }

    fn check_finite(&self) -> Result<()> {
        if self.a.is_finite() && self.i.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite("state"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct State3 {
    pub a: f64,
    pub u: f64,
    pub i: f64,
}

impl State3 {
    pub const fn new(a: f64, u: f64, i: f64) -> Self {
        Self { a, u, i }
    }

    #[inline]
    pub fn s(&self) -> f64 {
        1.0 - self.a - self.u - self.i
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.a, self.u, self.i]
    }

    pub fn from_array(x: [f64; 3]) -> Self {
        Self { a: x[0], u: x[1], i: x[2] }
    }

    pub fn in_omega(&self) -> bool {
        in_omega(&[self.a, self.u, self.i])
    }

    pub fn distance(&self, other: &State3) -> f64 {
        let (da, du, di) = (self.a - other.a, self.u - other.u, self.i - other.i);
        libm::sqrt(da * da + du * du + di * di)
    }

    fn check_finite(&self) -> Result<()> {
        if self.a.is_finite() && self.u.is_finite() && self.i.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite("state"))
        }
    }
}

/// Parameters of the two-compartment model with prevalence-dependent rates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaiasParams {
    pub beta: f64,
    pub beta_a: f64,
    pub delta: f64,
    pub alpha_i: RateFunction,
    pub alpha_a: RateFunction,
    pub delta_a: RateFunction,
    /// Fraction of recovering hosts that become aware.
    pub p: RateFunction,
}

impl SaiasParams {
    /// Checks the model constraints. A vanishing `p` is accepted; see
    /// [`SaiasParams::has_direct_experience`].
    pub fn validate(&self) -> Result<()> {
        let scalars = [self.beta, self.beta_a, self.delta];
        let rates = [self.alpha_i, self.alpha_a, self.delta_a, self.p];
        if scalars.iter().any(|x| !x.is_finite())
            || rates.iter().any(|r| !r.coefficient.is_finite())
        {
            return Err(Error::NonFinite("SAIAS parameters"));
        }
        if rates.iter().any(|r| r.coefficient < 0.0) {
            return Err(Error::InvalidParameter("rate coefficients must be nonnegative"));
        }
        if !(self.beta > 0.0) {
            return Err(Error::InvalidParameter("beta must be positive"));
        }
        if !(self.beta_a >= 0.0 && self.beta_a < self.beta) {
            return Err(Error::InvalidParameter("require 0 <= beta_a < beta"));
        }
        if !(self.delta > 0.0) {
            return Err(Error::InvalidParameter("delta must be positive"));
        }
        if !(self.alpha_a.min_on_unit() > 0.0) {
            return Err(Error::InvalidParameter("alpha_a(i) must be positive on [0,1]"));
        }
        if !(self.delta_a.min_on_unit() > 0.0) {
            return Err(Error::InvalidParameter("delta_a(i) must be positive on [0,1]"));
        }
        if self.p.max_on_unit() > 1.0 {
            return Err(Error::InvalidParameter("p(i) must lie in [0,1] on [0,1]"));
        }
        Ok(())
    }

    /// Whether `p(i) > 0` on `(0, 1]`. The model analysis assumes this; the
    /// degenerate `p ≡ 0` case (no awareness from recovery) is still accepted.
    pub fn has_direct_experience(&self) -> bool {
        !self.p.is_zero()
    }
}

/// Constant-rate parameters of the three-compartment model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SauisuasParams {
    pub beta: f64,
    pub beta_a: f64,
    pub beta_u: f64,
    pub delta: f64,
    pub delta_a: f64,
    pub delta_u: f64,
    pub alpha_i: f64,
    pub alpha_a: f64,
    pub alpha_u: f64,
    /// Fraction of recovering hosts that become aware.
    pub p: f64,
    /// Fraction of recovering hosts that become unwilling.
    pub q: f64,
}

impl SauisuasParams {
    pub fn validate(&self) -> Result<()> {
        if SauisuasParam::ALL.iter().any(|k| !self.get(*k).is_finite()) {
            return Err(Error::NonFinite("SAUIUAS parameters"));
        }
        let positive = [
            self.beta,
            self.delta,
            self.delta_a,
            self.delta_u,
            self.alpha_i,
            self.alpha_a,
            self.alpha_u,
        ];
        if positive.iter().any(|x| !(*x > 0.0)) {
            return Err(Error::InvalidParameter(
                "all rates except beta_a, beta_u must be positive",
            ));
        }
        if !(self.beta_a >= 0.0 && self.beta_a < self.beta) {
            return Err(Error::InvalidParameter("require 0 <= beta_a < beta"));
        }
        if !(self.beta_u >= 0.0 && self.beta_u < self.beta) {
            return Err(Error::InvalidParameter("require 0 <= beta_u < beta"));
        }
        if !(self.p >= 0.0 && self.q >= 0.0) {
            return Err(Error::InvalidParameter("p and q must be nonnegative"));
        }
        if self.p + self.q > 1.0 + 1e-15 {
            return Err(Error::InvalidParameter("p + q must not exceed 1"));
        }
        Ok(())
    }

    pub fn get(&self, key: SauisuasParam) -> f64 {
        match key {
            SauisuasParam::Beta => self.beta,
            SauisuasParam::BetaA => self.beta_a,
            SauisuasParam::BetaU => self.beta_u,
            SauisuasParam::Delta => self.delta,
            SauisuasParam::DeltaA => self.delta_a,
            SauisuasParam::DeltaU => self.delta_u,
            SauisuasParam::AlphaI => self.alpha_i,
            SauisuasParam::AlphaA => self.alpha_a,
            SauisuasParam::AlphaU => self.alpha_u,
            SauisuasParam::P => self.p,
            SauisuasParam::Q => self.q,
        }
    }

    pub fn set(&mut self, key: SauisuasParam, value: f64) {
        let slot = match key {
            SauisuasParam::Beta => &mut self.beta,
            SauisuasParam::BetaA => &mut self.beta_a,
            SauisuasParam::BetaU => &mut self.beta_u,
            SauisuasParam::Delta => &mut self.delta,
            SauisuasParam::DeltaA => &mut self.delta_a,
            SauisuasParam::DeltaU => &mut self.delta_u,
            SauisuasParam::AlphaI => &mut self.alpha_i,
            SauisuasParam::AlphaA => &mut self.alpha_a,
            SauisuasParam::AlphaU => &mut self.alpha_u,
            SauisuasParam::P => &mut self.p,
            SauisuasParam::Q => &mut self.q,
        };
        *slot = value;
    }

    /// Copy with `key` set to `value` and `binding` re-applied.
    pub fn with(&self, key: SauisuasParam, value: f64, binding: Binding) -> Self {
        let mut out = *self;
        out.set(key, value);
        binding.apply(&mut out);
        out
    }

    /// Awareness reproduction number `alpha_a / delta_a`.
    pub fn r0a(&self) -> f64 {
        self.alpha_a / self.delta_a
    }

    /// Disease reproduction number `beta / delta`.
    pub fn r0(&self) -> f64 {
        self.beta / self.delta
    }
}

/// Names of the eleven SAUIUAS parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SauisuasParam {
    Beta,
    BetaA,
    BetaU,
    Delta,
    DeltaA,
    DeltaU,
    AlphaI,
    AlphaA,
    AlphaU,
    P,
    Q,
}

impl SauisuasParam {
    pub const ALL: [SauisuasParam; 11] = [
        SauisuasParam::Beta,
        SauisuasParam::BetaA,
        SauisuasParam::BetaU,
        SauisuasParam::Delta,
        SauisuasParam::DeltaA,
        SauisuasParam::DeltaU,
        SauisuasParam::AlphaI,
        SauisuasParam::AlphaA,
        SauisuasParam::AlphaU,
        SauisuasParam::P,
        SauisuasParam::Q,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SauisuasParam::Beta => "beta",
            SauisuasParam::BetaA => "beta_a",
            SauisuasParam::BetaU => "beta_u",
            SauisuasParam::Delta => "delta",
            SauisuasParam::DeltaA => "delta_a",
            SauisuasParam::DeltaU => "delta_u",
            SauisuasParam::AlphaI => "alpha_i",
            SauisuasParam::AlphaA => "alpha_a",
            SauisuasParam::AlphaU => "alpha_u",
            SauisuasParam::P => "p",
            SauisuasParam::Q => "q",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|k| k.name() == name)
    }
}

/// A constraint tying one parameter to another during sweeps and continuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Binding {
    #[default]
    None,
    /// `p = 1 - q`: every recovering host becomes aware or unwilling.
    PComplementsQ,
}

impl Binding {
    pub fn apply(self, params: &mut SauisuasParams) {
        if let Binding::PComplementsQ = self {
            params.p = 1.0 - params.q;
        }
    }

    /// Whether `key` is overwritten by this binding (and so cannot be swept).
    pub fn binds(self, key: SauisuasParam) -> bool {
        matches!((self, key), (Binding::PComplementsQ, SauisuasParam::P))
    }
}

#[inline]
pub(crate) fn saias_rhs(x: &[f64; 2], pr: &SaiasParams) -> [f64; 2] {
    let [a, i] = *x;
    let s = 1.0 - a - i;
    let da = pr.alpha_i.eval(i) * s * i + pr.alpha_a.eval(i) * s * a + pr.p.eval(i) * pr.delta * i
        - pr.beta_a * a * i
        - pr.delta_a.eval(i) * a;
    let di = (pr.beta * s + pr.beta_a * a - pr.delta) * i;
    [da, di]
}

/// Right-hand side `(da/dt, di/dt)` of the SAIAS system. Ω membership is
/// not required.
pub fn saias_field(state: State2, params: &SaiasParams) -> Result<[f64; 2]> {
    state.check_finite()?;
    Ok(saias_rhs(&state.to_array(), params))
}

/// Analytic Jacobian of [`saias_field`], rows `(da/dt, di/dt)`, columns `(a, i)`.
pub fn saias_jacobian(state: State2, params: &SaiasParams) -> Result<Mat2> {
    state.check_finite()?;
    let pr = params;
    let State2 { a, i } = state;
    let s = state.s();
    let (ai, dai) = (pr.alpha_i.eval(i), pr.alpha_i.derivative(i));
    let (aa, daa) = (pr.alpha_a.eval(i), pr.alpha_a.derivative(i));
    let (da, dda) = (pr.delta_a.eval(i), pr.delta_a.derivative(i));
    let (p, dp) = (pr.p.eval(i), pr.p.derivative(i));
    let j11 = aa * (s - a) - ai * i - pr.beta_a * i - da;
    let j12 = dai * s * i + ai * (s - i) + daa * s * a - aa * a + dp * pr.delta * i + p * pr.delta
        - pr.beta_a * a
        - dda * a;
    let j21 = -(pr.beta - pr.beta_a) * i;
    let j22 = pr.beta * s + pr.beta_a * a - pr.beta * i - pr.delta;
    Ok([[j11, j12], [j21, j22]])
}

#[inline]
pub(crate) fn sauisuas_rhs(x: &[f64; 3], pr: &SauisuasParams) -> [f64; 3] {
    let [a, u, i] = *x;
    let s = 1.0 - a - u - i;
    let da = pr.alpha_i * s * i + pr.alpha_a * s * a + pr.p * pr.delta * i
        - pr.beta_a * a * i
        - pr.delta_a * a;
    let du = pr.delta_a * a + pr.alpha_u * s * a + pr.q * pr.delta * i
        - pr.beta_u * u * i
        - pr.delta_u * u;
    let di = (pr.beta * s + pr.beta_a * a + pr.beta_u * u - pr.delta) * i;
    [da, du, di]
}

/// Right-hand side `(da/dt, du/dt, di/dt)` of the SAUIUAS system.
pub fn sauisuas_field(state: State3, params: &SauisuasParams) -> Result<[f64; 3]> {
    state.check_finite()?;
    Ok(sauisuas_rhs(&state.to_array(), params))
}

#[inline]
pub(crate) fn sauisuas_jac(x: &[f64; 3], pr: &SauisuasParams) -> Mat3 {
    let [a, u, i] = *x;
    let s = 1.0 - a - u - i;
    [
        [
            pr.alpha_a * (s - a) - pr.alpha_i * i - pr.beta_a * i - pr.delta_a,
            -pr.alpha_i * i - pr.alpha_a * a,
            pr.alpha_i * (s - i) - pr.alpha_a * a + pr.p * pr.delta - pr.beta_a * a,
        ],
        [
            pr.delta_a + pr.alpha_u * (s - a),
            -pr.alpha_u * a - pr.beta_u * i - pr.delta_u,
            -pr.alpha_u * a + pr.q * pr.delta - pr.beta_u * u,
        ],
        [
            -(pr.beta - pr.beta_a) * i,
            -(pr.beta - pr.beta_u) * i,
            pr.beta * s + pr.beta_a * a + pr.beta_u * u - pr.delta - pr.beta * i,
        ],
    ]
}

/// Analytic Jacobian of [`sauisuas_field`], columns `(a, u, i)`.
pub fn sauisuas_jacobian(state: State3, params: &SauisuasParams) -> Result<Mat3> {
    state.check_finite()?;
    Ok(sauisuas_jac(&state.to_array(), params))
}

/// Second directional derivative `D²f(v, v)` of the SAUIUAS field. The field
/// is quadratic, so this is state independent.
pub fn sauisuas_second_derivative(params: &SauisuasParams, v: [f64; 3]) -> [f64; 3] {
    let pr = params;
    let [va, vu, vi] = v;
    let q1 = -pr.alpha_i * vi * (va + vu + vi) - pr.alpha_a * va * (va + vu + vi) - pr.beta_a * va * vi;
    let q2 = -pr.alpha_u * va * (va + vu + vi) - pr.beta_u * vu * vi;
    let q3 = -(pr.beta - pr.beta_a) * va * vi - (pr.beta - pr.beta_u) * vu * vi - pr.beta * vi * vi;
    [2.0 * q1, 2.0 * q2, 2.0 * q3]
}

#[cfg(test)]
mod tests {
    use super::*;

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

    fn fig6(q: f64) -> SauisuasParams {
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
            q,
        }
    }

    #[test]
    fn origin_is_fixed() {
        assert_eq!(saias_field(State2::new(0.0, 0.0), &fig1(1.0)).unwrap(), [0.0, 0.0]);
        assert_eq!(
            sauisuas_field(State3::new(0.0, 0.0, 0.0), &fig6(0.1)).unwrap(),
            [0.0, 0.0, 0.0]
        );
    }

    #[test]
    fn saias_hand_evaluation() {
        // Hand evaluation at (a, i) = (0, 0.5) with the Figure-1 rates:
        // da/dt = 6*1.5*0.5*0.5 + 0.05*1.5*4*0.5 = 2.25 + 0.15
        // di/dt = (10*0.5 - 4)*0.5
        let f = saias_field(State2::new(0.0, 0.5), &fig1(1.0)).unwrap();
        assert!((f[0] - 2.4).abs() < 1e-14, "{}", f[0]);
        assert!((f[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn non_finite_is_rejected() {
        assert_eq!(
            saias_field(State2::new(f64::NAN, 0.1), &fig1(1.0)),
            Err(Error::NonFinite("state"))
        );
        assert!(sauisuas_jacobian(State3::new(0.0, f64::INFINITY, 0.0), &fig6(0.1)).is_err());
    }

    #[test]
    fn sauisuas_boundary_outflow_formula() {
        let pr = fig6(0.3);
        for &(a, u) in &[(0.2, 0.3), (0.0, 0.9), (0.5, 0.0), (0.1, 0.1)] {
            let st = State3::new(a, u, 1.0 - a - u);
            let f = sauisuas_field(st, &pr).unwrap();
            let dot = f[0] + f[1] + f[2];
            let expect = -pr.delta_u * st.u - pr.delta * st.i * (1.0 - pr.p - pr.q);
            assert!((dot - expect).abs() < 1e-14);
            assert!(dot <= 0.0);
        }
    }

    #[test]
    fn jacobian_at_p1_matches_block_form() {
        let pr = fig6(0.3);
        let j = sauisuas_jacobian(State3::default(), &pr).unwrap();
        let expect = [
            [pr.alpha_a - pr.delta_a, 0.0, pr.alpha_i + pr.p * pr.delta],
            [pr.delta_a + pr.alpha_u, -pr.delta_u, pr.q * pr.delta],
            [0.0, 0.0, pr.beta - pr.delta],
        ];
        for r in 0..3 {
            for c in 0..3 {
                assert!((j[r][c] - expect[r][c]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn third_row_vanishes_off_diagonal_when_disease_free() {
        let pr = fig6(0.1);
        let j = sauisuas_jacobian(State3::new(0.2, 0.3, 0.0), &pr).unwrap();
        assert_eq!(j[2][0], 0.0);
        assert_eq!(j[2][1], 0.0);
    }

    #[test]
    fn omega_membership() {
        assert!(in_omega(&[0.2, 0.3]));
        assert!(!in_omega(&[0.7, 0.4]));
        assert!(in_omega(&[-1e-15, 0.5]));
        assert!(!in_omega(&[-1e-9, 0.5]));
        assert!(!in_omega(&[f64::NAN, 0.5]));
        assert!(State3::new(0.2, 0.2, 0.6).in_omega());
    }

    #[test]
    fn sauis_reduction_drops_recovery_terms() {
        let mut pr = fig6(0.0);
        pr.p = 0.0;
        let st = State3::new(0.1, 0.2, 0.3);
        let f = sauisuas_field(st, &pr).unwrap();
        let s = st.s();
        let da = pr.alpha_i * s * st.i + pr.alpha_a * s * st.a - pr.beta_a * st.a * st.i - pr.delta_a * st.a;
        let du = pr.delta_a * st.a + pr.alpha_u * s * st.a - pr.beta_u * st.u * st.i - pr.delta_u * st.u;
        assert_eq!(f[0], da);
        assert_eq!(f[1], du);
    }

    #[test]
    fn validation_rules() {
        let mut pr = fig6(0.6);
        pr.p = 0.6;
        assert!(pr.validate().is_err());
        assert!(fig6(0.2).validate().is_ok());
        let mut pr = fig6(0.2);
        pr.beta_u = 3.0;
        assert!(pr.validate().is_err());
        let mut s = fig1(1.0);
        assert!(s.validate().is_ok());
        s.p = RateFunction::linear(0.6);
        assert!(s.validate().is_err());
        s.p = RateFunction::constant(0.0);
        assert!(s.validate().is_ok());
        assert!(!s.has_direct_experience());
    }

    #[test]
    fn binding_sets_p() {
        let pr = fig6(0.2).with(SauisuasParam::Q, 0.3, Binding::PComplementsQ);
        assert_eq!(pr.q, 0.3);
        assert!((pr.p - 0.7).abs() < 1e-15);
        for k in SauisuasParam::ALL {
            assert_eq!(SauisuasParam::from_name(k.name()), Some(k));
        }
    }
}
