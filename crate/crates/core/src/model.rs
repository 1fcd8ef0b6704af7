//! Closed-form quantities for testing θ = 0 in the N(x | θ, 1) model against
//! an alternative with θ ~ N(0, σ²).

use crate::error::{Error, Result};
use crate::numerics::pdf;

/// A single observation x ~ N(θ, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observation(f64);

impl Observation {
    pub fn new(x: f64) -> Result<Self> {
        if x.is_finite() {
            Ok(Self(x))
        } else {
            Err(Error::Domain(format!(
                "observation must be finite, got {x}"
            )))
        }
    }

    pub fn x(&self) -> f64 {
        self.0
    }
}

/// Prior standard deviation σ of θ under the alternative. Always finite and
/// positive; an infinitely diffuse alternative is not representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlternativeSpread(f64);

impl AlternativeSpread {
    pub fn new(sigma: f64) -> Result<Self> {
        if sigma.is_finite() && sigma > 0.0 {
            Ok(Self(sigma))
        } else {
            Err(Error::Domain(format!(
                "sigma must be finite and positive, got {sigma}"
            )))
        }
    }

    pub fn sigma(&self) -> f64 {
        self.0
    }

    /// σ² / (1 + σ²), the shrinkage weight in the Bayes factor exponent.
    pub fn shrinkage(&self) -> f64 {
        let s = self.0;
        if s < 1.0 {
            let s2 = s * s;
            s2 / (1.0 + s2)
        } else {
            1.0 / (1.0 + (s * s).recip())
        }
    }

    /// ½ log(1 + σ²), without overflow for huge σ.
    pub fn half_log_one_plus_var(&self) -> f64 {
        let s = self.0;
        if s < 1e8 {
            0.5 * (s * s).ln_1p()
        } else {
            s.ln() + 0.5 * (s * s).recip().ln_1p()
        }
    }
}

/// Full evaluation of one test.
#[derive(Debug, Clone, PartialEq)]
pub struct PosteriorReport {
    pub x: f64,
    pub sigma: f64,
    pub scheme: String,
    pub rho0: f64,
    pub bayes_factor: f64,
    pub m_value: f64,
    pub posterior_h0: f64,
    pub alpha_b: f64,
    /// `posterior_h0 < alpha_b`
    pub rejected: bool,
}

/// log B₀₁ = ½ log(1+σ²) − ½x²σ²/(1+σ²).
pub fn log_bayes_factor(obs: Observation, spread: AlternativeSpread) -> f64 {
    let x = obs.x();
    spread.half_log_one_plus_var() - 0.5 * x * x * spread.shrinkage()
}

/// B₀₁ = √(1+σ²) · exp(−x²σ²/(2(1+σ²))).
pub fn bayes_factor(obs: Observation, spread: AlternativeSpread) -> f64 {
    log_bayes_factor(obs, spread).exp()
}

/// Marginal density of x under the alternative: N(x | 0, 1 + σ²).
pub fn marginal_alt(obs: Observation, spread: AlternativeSpread) -> f64 {
    let x = obs.x();
    let sd = 1f64.hypot(spread.sigma());
    pdf(x / sd) / sd
}

/// Posterior probability of the null given a prior null mass `rho0`.
pub fn posterior_h0(obs: Observation, spread: AlternativeSpread, rho0: f64) -> Result<f64> {
    if !(rho0 > 0.0 && rho0 < 1.0) {
        return Err(Error::Domain(format!(
            "rho0 must lie in (0, 1), got {rho0}"
        )));
    }
    let log_prior_odds_alt = ((1.0 - rho0) / rho0).ln();
    let log_m = log_prior_odds_alt - spread.half_log_one_plus_var();
    Ok(posterior_h0_from_log_m(obs, spread, log_m))
}

/// 1 / (1 + m·exp(½x²σ²/(1+σ²))) with m supplied as log m.
///
/// Evaluated as a logistic in the log domain: returns 0 when the odds
/// overflow and values indistinguishable from 1 when they underflow.
pub fn posterior_h0_from_log_m(obs: Observation, spread: AlternativeSpread, log_m: f64) -> f64 {
    let x = obs.x();
    let t = log_m + 0.5 * x * x * spread.shrinkage();
    logistic_neg(t)
}

/// 1 / (1 + e^t)
pub(crate) fn logistic_neg(t: f64) -> f64 {
    if t > 0.0 {
        let e = (-t).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + t.exp())
    }
}

/// D_KL(N(θ,1) ‖ N(0,1)) = θ²/2.
pub fn kl_null_vs_alt(theta: f64) -> f64 {
    0.5 * theta * theta
}

/// E[θ²/2] under θ ~ N(0, σ²), i.e. σ²/2.
pub fn expected_kl(spread: AlternativeSpread) -> f64 {
    let s = spread.sigma();
    0.5 * s * s
}
