//! Prevalence-dependent rate functions for the two-compartment model.

use crate::error::{Error, Result};

/// Functional form of a rate as a function of prevalence `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateFamily {
    /// `c`
    Constant,
    /// `c * (1 + i)`
    LinearInI,
    /// `c / (1 + i)`
    ReciprocalInI,
}

impl RateFamily {
    pub const ALL: [RateFamily; 3] = [
        RateFamily::Constant,
        RateFamily::LinearInI,
        RateFamily::ReciprocalInI,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RateFamily::Constant => "constant",
            RateFamily::LinearInI => "linear",
            RateFamily::ReciprocalInI => "reciprocal",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "constant" | "const" => Some(RateFamily::Constant),
            "linear" => Some(RateFamily::LinearInI),
            "reciprocal" | "recip" => Some(RateFamily::ReciprocalInI),
            _ => None,
        }
    }
}

/// A nonnegative rate `r(i)` drawn from a closed family of forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFunction {
    pub family: RateFamily,
    pub coefficient: f64,
}

impl RateFunction {
    pub fn new(family: RateFamily, coefficient: f64) -> Result<Self> {
        if !coefficient.is_finite() {
            return Err(Error::NonFinite("rate coefficient"));
        }
        if coefficient < 0.0 {
            return Err(Error::InvalidParameter("rate coefficient must be nonnegative"));
        }
        Ok(Self { family, coefficient })
    }

    pub const fn constant(c: f64) -> Self {
        Self { family: RateFamily::Constant, coefficient: c }
    }

    pub const fn linear(c: f64) -> Self {
        Self { family: RateFamily::LinearInI, coefficient: c }
    }

    pub const fn reciprocal(c: f64) -> Self {
        Self { family: RateFamily::ReciprocalInI, coefficient: c }
    }

    #[inline]
    pub fn eval(&self, i: f64) -> f64 {
        let c = self.coefficient;
        match self.family {
            RateFamily::Constant => c,
            RateFamily::LinearInI => c * (1.0 + i),
            RateFamily::ReciprocalInI => c / (1.0 + i),
        }
    }

    /// `dr/di`.
    #[inline]
    pub fn derivative(&self, i: f64) -> f64 {
        let c = self.coefficient;
        match self.family {
            RateFamily::Constant => 0.0,
            RateFamily::LinearInI => c,
            RateFamily::ReciprocalInI => -c / ((1.0 + i) * (1.0 + i)),
        }
    }

    /// Supremum of the rate over `i ∈ [0, 1]`.
    pub fn max_on_unit(&self) -> f64 {
        match self.family {
            RateFamily::Constant | RateFamily::ReciprocalInI => self.coefficient,
            RateFamily::LinearInI => 2.0 * self.coefficient,
        }
    }

    /// Infimum of the rate over `i ∈ [0, 1]`.
    pub fn min_on_unit(&self) -> f64 {
        match self.family {
            RateFamily::Constant | RateFamily::LinearInI => self.coefficient,
            RateFamily::ReciprocalInI => 0.5 * self.coefficient,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient == 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_evaluate_per_formula() {
        assert_eq!(RateFunction::constant(2.5).eval(0.7), 2.5);
        assert!((RateFunction::linear(2.0).eval(0.5) - 3.0).abs() < 1e-15);
        assert!((RateFunction::reciprocal(3.0).eval(0.5) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn derivative_matches_central_difference() {
        let h = 1e-6;
        for family in RateFamily::ALL {
            let r = RateFunction { family, coefficient: 1.7 };
            for k in 1..10 {
                let i = k as f64 / 10.0;
                let fd = (r.eval(i + h) - r.eval(i - h)) / (2.0 * h);
                let d = r.derivative(i);
                let scale = d.abs().max(1e-12);
                if family == RateFamily::Constant {
                    assert_eq!(d, 0.0);
                    assert!(fd.abs() < 1e-9);
                } else {
                    assert!(((fd - d) / scale).abs() < 1e-6, "{family:?} at {i}");
                }
            }
        }
    }

    #[test]
    fn rejects_negative_and_nan() {
        assert!(RateFunction::new(RateFamily::Constant, -1.0).is_err());
        assert!(RateFunction::new(RateFamily::LinearInI, f64::NAN).is_err());
    }

    #[test]
    fn unit_interval_bounds() {
        let r = RateFunction::reciprocal(4.0);
        assert_eq!(r.min_on_unit(), 2.0);
        assert_eq!(r.max_on_unit(), 4.0);
        assert_eq!(RateFunction::linear(1.0).max_on_unit(), 2.0);
    }
}
