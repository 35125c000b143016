//! Numerics for awareness-driven epidemic models.
//!
//! Two compartmental ODE systems are covered: a susceptible–aware–infectious
//! model with prevalence-dependent rates ([`model::SaiasParams`]) and its
//! extension with an "unwilling" aware compartment ([`model::SauisuasParams`]).
//! Recovering hosts may enter the aware (fraction `p`) or unwilling (fraction
//! `q`) compartments directly.
//!
//! The crate is `no_std` (with `alloc`) and has no IO. File formats and the
//! command line live in the companion `aware-dyn` crate.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(test, allow(clippy::approx_constant))]

extern crate alloc;

pub mod error;
pub mod hopf;
pub mod linalg;
pub mod model;
pub mod ode;
pub mod rate;
pub mod saias;
pub mod sauisuas;

pub use error::{Error, Result};
pub use model::{Binding, SaiasParams, SauisuasParam, SauisuasParams, State2, State3};
pub use num_complex::Complex64;
pub use rate::{RateFamily, RateFunction};
