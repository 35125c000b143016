#![allow(dead_code)]

use aware_dyn_core::{RateFamily, RateFunction, SaiasParams, SauisuasParams};
use rand::{Rng, RngExt};

pub fn fig3() -> SauisuasParams {
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

pub fn fig20() -> SauisuasParams {
    SauisuasParams {
        beta: 3.0,
        beta_a: 0.2,
        beta_u: 0.4,
        delta: 1.7,
        delta_a: 0.01,
        delta_u: 0.05,
        alpha_i: 0.05,
        alpha_a: 0.012,
        alpha_u: 30.0,
        p: 0.0,
        q: 1.0,
    }
}

pub fn fig2(alpha_a: f64) -> SauisuasParams {
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

fn rate<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> RateFunction {
    let family = RateFamily::ALL[rng.random_range(0..3)];
    RateFunction::new(family, rng.random_range(lo..hi)).unwrap()
}

pub fn random_saias<R: Rng>(rng: &mut R) -> SaiasParams {
    let beta = rng.random_range(0.5..10.0);
    let p = RateFunction::new(RateFamily::ALL[rng.random_range(0..3)], rng.random_range(0.0..0.5)).unwrap();
    let params = SaiasParams {
        beta,
        beta_a: rng.random_range(0.0..0.9) * beta,
        delta: rng.random_range(0.1..5.0),
        alpha_i: rate(rng, 0.01, 5.0),
        alpha_a: rate(rng, 0.01, 5.0),
        delta_a: rate(rng, 0.01, 5.0),
        p,
    };
    params.validate().unwrap();
    params
}

pub fn random_sauisuas<R: Rng>(rng: &mut R) -> SauisuasParams {
    let beta = rng.random_range(0.5..5.0);
    let p = rng.random_range(0.0..1.0);
    let params = SauisuasParams {
        beta,
        beta_a: rng.random_range(0.0..0.9) * beta,
        beta_u: rng.random_range(0.0..0.9) * beta,
        delta: rng.random_range(0.1..3.0),
        delta_a: rng.random_range(0.005..1.0),
        delta_u: rng.random_range(0.005..1.0),
        alpha_i: rng.random_range(0.01..2.0),
        alpha_a: rng.random_range(0.005..1.0),
        alpha_u: rng.random_range(0.01..5.0),
        p,
        q: rng.random_range(0.0..1.0) * (1.0 - p),
    };
    params.validate().unwrap();
    params
}

/// A point of the simplex, drawn uniformly.
pub fn random_simplex<R: Rng, const N: usize>(rng: &mut R) -> [f64; N] {
    loop {
        let x: [f64; N] = core::array::from_fn(|_| rng.random_range(0.0..1.0));
        if x.iter().sum::<f64>() <= 1.0 {
            return x;
        }
    }
}
