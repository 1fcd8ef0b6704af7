//! Bayes factors, objective model priors and Type I error calibration for
//! testing a point null θ = 0 against θ ~ N(0, σ²) with one observation
//! x ~ N(θ, 1).

pub mod calibration;
pub mod cli;
pub mod error;
pub mod model;
pub mod montecarlo;
pub mod numerics;
pub mod priors;

pub use error::{Error, Result};
