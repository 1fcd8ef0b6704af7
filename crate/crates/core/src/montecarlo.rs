//! Seeded simulation of the rejection rate under N(θ, 1) data.
//!
//! Variates come from a counter-based generator: sample `i` of seed `s` is a
//! pure function of `(s, i)`, so a run can be split over any number of
//! workers and still reproduce the same counts bit for bit.

use rayon::prelude::*;

use crate::calibration::{power_analytic, type_i_error, RejectionRule, DECISION_BAND};
use crate::error::{Error, Result};
use crate::numerics::quantile_unchecked;
use crate::priors::PriorScheme;

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Indices per parallel work unit.
const CHUNK: u64 = 1 << 14;

/// SplitMix64 output function.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based generator keyed by a 64-bit seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CounterRng {
    key: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        Self {
            key: mix64(seed ^ 0x6A09_E667_F3BC_C908),
        }
    }

    pub fn bits(&self, index: u64) -> u64 {
        mix64(
            self.key
                .wrapping_add(index.wrapping_add(1).wrapping_mul(GAMMA)),
        )
    }

    /// Uniform on the open interval (0, 1): a 52-bit lattice offset by half
    /// a step, so both ends are exactly representable.
    pub fn uniform(&self, index: u64) -> f64 {
        ((self.bits(index) >> 12) as f64 + 0.5) * (1.0 / (1u64 << 52) as f64)
    }

    /// Standard normal by inversion of the uniform.
    pub fn standard_normal(&self, index: u64) -> f64 {
        quantile_unchecked(self.uniform(index))
    }
}

/// Position in a seeded normal stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalStream {
    rng: CounterRng,
    pub seed: u64,
    pub index: u64,
}

impl NormalStream {
    pub fn new(seed: u64) -> Self {
        Self::at(seed, 0)
    }

    pub fn at(seed: u64, index: u64) -> Self {
        Self {
            rng: CounterRng::new(seed),
            seed,
            index,
        }
    }

    /// A stream over the same seed starting `offset` samples further on.
    pub fn split(&self, offset: u64) -> Self {
        Self::at(self.seed, self.index + offset)
    }
}

/// Next standard normal variate from `stream`; advances the counter.
pub fn draw_standard_normal(stream: &mut NormalStream) -> f64 {
    let z = stream.rng.standard_normal(stream.index);
    stream.index += 1;
    z
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationPlan {
    pub n: u64,
    pub seed: u64,
    pub theta: f64,
    pub sigma: f64,
    pub alpha_b: f64,
    pub scheme: PriorScheme,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloReport {
    pub n: u64,
    pub seed: u64,
    pub theta: f64,
    pub sigma: f64,
    pub alpha_b: f64,
    pub scheme: String,
    /// Count of P(H₀|x) < α_B.
    pub rejections: u64,
    /// Count of x² > ψ(σ); equal to `rejections` outside the decision band.
    pub threshold_rejections: u64,
    pub estimate: f64,
    pub std_error: f64,
    pub ci95: (f64, f64),
    pub analytic_value: f64,
    pub within_3se: bool,
}

#[derive(Debug, Default, Clone, Copy)]
struct Counts {
    posterior: u64,
    threshold: u64,
}

fn count_range(
    rule: &RejectionRule,
    rng: &CounterRng,
    theta: f64,
    start: u64,
    end: u64,
) -> Result<Counts> {
    let mut c = Counts::default();
    for i in start..end {
        let x = theta + rng.standard_normal(i);
        let p = rule.posterior_h0(x);
        let by_posterior = p < rule.alpha_b;
        let by_threshold = rule.rejects_via_threshold(x);
        if by_posterior != by_threshold && (p - rule.alpha_b).abs() >= DECISION_BAND {
            return Err(Error::Consistency(format!(
                "decision routes disagree at sample {i}: x={x}, P(H0|x)={p}"
            )));
        }
        c.posterior += by_posterior as u64;
        c.threshold += by_threshold as u64;
    }
    Ok(c)
}

fn run(plan: &SimulationPlan, analytic_value: f64) -> Result<MonteCarloReport> {
    if plan.n == 0 {
        return Err(Error::Domain("simulation needs n >= 1".into()));
    }
    if !plan.theta.is_finite() {
        return Err(Error::Domain(format!(
            "theta must be finite, got {}",
            plan.theta
        )));
    }
    let rule = RejectionRule::new(plan.sigma, plan.alpha_b, &plan.scheme)?;
    let rng = CounterRng::new(plan.seed);
    let chunks = plan.n.div_ceil(CHUNK);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let start = k * CHUNK;
            let end = (start + CHUNK).min(plan.n);
            count_range(&rule, &rng, plan.theta, start, end)
        })
        .try_reduce(Counts::default, |a, b| {
            Ok(Counts {
                posterior: a.posterior + b.posterior,
                threshold: a.threshold + b.threshold,
            })
        })?;

    let n = plan.n as f64;
    let estimate = counts.posterior as f64 / n;
    let std_error = (estimate * (1.0 - estimate) / n).sqrt();
    let half = 1.96 * std_error;
    Ok(MonteCarloReport {
        n: plan.n,
        seed: plan.seed,
        theta: plan.theta,
        sigma: plan.sigma,
        alpha_b: plan.alpha_b,
        scheme: plan.scheme.label(),
        rejections: counts.posterior,
        threshold_rejections: counts.threshold,
        estimate,
        std_error,
        ci95: ((estimate - half).max(0.0), (estimate + half).min(1.0)),
        analytic_value,
        within_3se: (estimate - analytic_value).abs() <= 3.0 * std_error,
    })
}

/// Empirical Type I error: x ~ N(0, 1), compared against the analytic value.
pub fn simulate_type_i(plan: &SimulationPlan) -> Result<MonteCarloReport> {
    if plan.theta != 0.0 {
        return Err(Error::Domain(format!(
            "Type I simulation requires theta = 0, got {}",
            plan.theta
        )));
    }
    let analytic = type_i_error(plan.sigma, plan.alpha_b, &plan.scheme)?;
    run(plan, analytic)
}

/// Empirical power at θ: x ~ N(θ, 1), compared against the analytic power.
pub fn simulate_power(plan: &SimulationPlan) -> Result<MonteCarloReport> {
    let analytic = power_analytic(plan.theta, plan.sigma, plan.alpha_b, &plan.scheme)?;
    run(plan, analytic)
}
