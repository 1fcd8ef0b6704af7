//! Matching the Bayesian test to a classical Type I error.
//!
//! Rejecting H₀ when P(H₀|x) < α_B is the same event as x² > ψ(σ) with
//!
//! ```text
//! ψ(σ) = 2(1+σ²)/σ² · [log(1/α_B − 1) − log m(σ)],
//! ```
//!
//! so under H₀ the rejection probability is 2[1 − Φ(√ψ(σ))]. Solving that for
//! a target α gives a finite σ. ψ is only positive while
//! m(σ) < 1/α_B − 1; past that point every observation is rejected.

use crate::error::{Error, Result};
use crate::model::{logistic_neg, AlternativeSpread, Observation};
use crate::numerics::{brent, phi, quantile_unchecked, two_sided_tail, upper_tail, Bracket};
use crate::priors::{log_m_of_sigma, PriorScheme, Regime};

/// Decisions whose posterior lies this close to α_B may differ between the
/// posterior route and the threshold route.
pub const DECISION_BAND: f64 = 1e-12;

/// Maximum |achieved α − α| accepted from the solver.
pub const MAX_RESIDUAL: f64 = 1e-10;

/// Decades scanned for a bracket: σ from 10⁻³ to 10³.
const SCAN_DECADES: (i32, i32) = (-3, 3);
const SCAN_STEPS_PER_DECADE: i32 = 10;

fn check_probability(p: f64, name: &str) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must lie in (0, 1), got {p}")))
    }
}

/// log(1/α_B − 1)
pub fn log_odds_threshold(alpha_b: f64) -> f64 {
    (-alpha_b).ln_1p() - alpha_b.ln()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationSpec {
    pub alpha: f64,
    pub alpha_b: f64,
    pub scheme: PriorScheme,
}

impl CalibrationSpec {
    pub fn new(alpha: f64, alpha_b: f64, scheme: PriorScheme) -> Result<Self> {
        check_probability(alpha, "alpha")?;
        check_probability(alpha_b, "alpha_b")?;
        Ok(Self {
            alpha,
            alpha_b,
            scheme,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationResult {
    pub sigma_star: f64,
    pub psi_at_sigma: f64,
    pub achieved_alpha: f64,
    /// achieved_alpha − alpha
    pub residual: f64,
    pub bracket_used: Bracket,
    pub evaluations: usize,
}

/// ψ(σ), or `None` where it is not positive.
fn psi_opt(sigma: f64, alpha_b: f64, scheme: &PriorScheme) -> Result<Option<f64>> {
    check_probability(alpha_b, "alpha_b")?;
    let log_m = log_m_of_sigma(scheme, sigma)?;
    Ok(psi_from_log_m(sigma, log_odds_threshold(alpha_b), log_m))
}

fn psi_from_log_m(sigma: f64, log_odds: f64, log_m: f64) -> Option<f64> {
    let gap = log_odds - log_m;
    if gap > 0.0 {
        Some(2.0 * (1.0 + (sigma * sigma).recip()) * gap)
    } else {
        None
    }
}

/// The rejection threshold on x²: P(H₀|x) < α_B ⇔ x² > ψ(σ).
///
/// Fails with a domain error where m(σ) ≥ 1/α_B − 1, since there the
/// Bayesian test rejects every observation.
pub fn psi(sigma: f64, alpha_b: f64, scheme: &PriorScheme) -> Result<f64> {
    psi_opt(sigma, alpha_b, scheme)?.ok_or_else(|| {
        Error::Domain(format!(
            "psi nonpositive: Bayesian test rejects for all x (sigma={sigma}, alpha_b={alpha_b}, scheme={scheme})"
        ))
    })
}

/// P₀(x² > ψ(σ)) = 2[1 − Φ(√ψ(σ))], and exactly 1 where ψ is not positive.
pub fn type_i_error(sigma: f64, alpha_b: f64, scheme: &PriorScheme) -> Result<f64> {
    Ok(match psi_opt(sigma, alpha_b, scheme)? {
        Some(p) => two_sided_tail(p.sqrt()),
        None => 1.0,
    })
}

/// Power of the rejection rule x² > ψ(σ) when x ~ N(θ, 1).
pub fn power_analytic(theta: f64, sigma: f64, alpha_b: f64, scheme: &PriorScheme) -> Result<f64> {
    if !theta.is_finite() {
        return Err(Error::Domain(format!("theta must be finite, got {theta}")));
    }
    Ok(match psi_opt(sigma, alpha_b, scheme)? {
        Some(p) => {
            let r = p.sqrt();
            upper_tail(r - theta) + phi(-r - theta)
        }
        None => 1.0,
    })
}

/// Classical critical value c_α with P₀(x² > c_α) = α.
pub fn classical_threshold(alpha: f64) -> Result<f64> {
    check_probability(alpha, "alpha")?;
    let z = quantile_unchecked(0.5 * alpha);
    Ok(z * z)
}

/// Largest σ with ψ(σ) > 0, for schemes whose m(σ) grows through
/// 1/α_B − 1. `None` when m never reaches that level.
pub fn positivity_bound(alpha_b: f64, scheme: &PriorScheme) -> Result<Option<f64>> {
    check_probability(alpha_b, "alpha_b")?;
    let level = log_odds_threshold(alpha_b);
    match scheme {
        // m decreasing in σ: ψ, once positive, stays positive
        PriorScheme::Fixed(_) => return Ok(None),
        PriorScheme::Robert => {
            if crate::priors::SQRT_2PI.ln() <= level {
                return Ok(None);
            }
        }
        PriorScheme::KlSelfInformation => {
            if level <= 0.0 {
                return Err(Error::Domain(format!(
                    "psi nonpositive for every sigma under kl at alpha_b={alpha_b}"
                )));
            }
        }
        PriorScheme::CustomTable(_) => {
            return Err(Error::UnsupportedScheme(
                "positivity bound needs a built-in scheme".into(),
            ))
        }
    }

    let h = |s: f64| {
        log_m_of_sigma(scheme, s)
            .map(|l| l - level)
            .unwrap_or(f64::NAN)
    };
    let mut lo = 1.0;
    while h(lo) >= 0.0 {
        lo *= 0.5;
    }
    let mut hi = 1.0;
    while h(hi) <= 0.0 {
        hi *= 2.0;
    }
    let root = brent(h, Bracket::new(lo, hi)?, 1e-15, 1e-14)?;
    Ok(Some(root.root))
}

/// Both routes of the rejection decision for one observation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decision {
    pub reject: bool,
    pub via_posterior: bool,
    pub via_threshold: bool,
    pub posterior_h0: f64,
    pub psi: Option<f64>,
}

/// Precomputed rejection rule for fixed (σ, α_B, scheme).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RejectionRule {
    pub sigma: f64,
    pub alpha_b: f64,
    log_m: f64,
    shrinkage: f64,
    psi: Option<f64>,
}

impl RejectionRule {
    pub fn new(sigma: f64, alpha_b: f64, scheme: &PriorScheme) -> Result<Self> {
        check_probability(alpha_b, "alpha_b")?;
        let spread = AlternativeSpread::new(sigma)?;
        let log_m = log_m_of_sigma(scheme, sigma)?;
        Ok(Self {
            sigma,
            alpha_b,
            log_m,
            shrinkage: spread.shrinkage(),
            psi: psi_from_log_m(sigma, log_odds_threshold(alpha_b), log_m),
        })
    }

    pub fn psi(&self) -> Option<f64> {
        self.psi
    }

    pub fn posterior_h0(&self, x: f64) -> f64 {
        logistic_neg(self.log_m + 0.5 * x * x * self.shrinkage)
    }

    /// P(H₀|x) < α_B; ties keep H₀.
    pub fn rejects_via_posterior(&self, x: f64) -> bool {
        self.posterior_h0(x) < self.alpha_b
    }

    /// x² > ψ(σ); always rejects where ψ is not positive.
    pub fn rejects_via_threshold(&self, x: f64) -> bool {
        match self.psi {
            Some(p) => x * x > p,
            None => true,
        }
    }

    pub fn decide(&self, x: f64) -> Result<Decision> {
        let posterior_h0 = self.posterior_h0(x);
        let via_posterior = posterior_h0 < self.alpha_b;
        let via_threshold = self.rejects_via_threshold(x);
        if via_posterior != via_threshold && (posterior_h0 - self.alpha_b).abs() >= DECISION_BAND {
            return Err(Error::Consistency(format!(
                "decision routes disagree at x={x}, sigma={}: P(H0|x)={posterior_h0}, alpha_b={}, psi={:?}",
                self.sigma, self.alpha_b, self.psi
            )));
        }
        Ok(Decision {
            reject: via_posterior,
            via_posterior,
            via_threshold,
            posterior_h0,
            psi: self.psi,
        })
    }
}

/// Reject-or-retain decision computed both through the posterior and through
/// the x² threshold.
pub fn decide(
    obs: Observation,
    sigma: f64,
    alpha_b: f64,
    scheme: &PriorScheme,
) -> Result<Decision> {
    RejectionRule::new(sigma, alpha_b, scheme)?.decide(obs.x())
}

fn scan_grid(scheme: &PriorScheme) -> Vec<f64> {
    let (lo_dec, hi_dec) = SCAN_DECADES;
    let mut grid: Vec<f64> = (lo_dec * SCAN_STEPS_PER_DECADE..=hi_dec * SCAN_STEPS_PER_DECADE)
        .map(|k| 10f64.powf(k as f64 / SCAN_STEPS_PER_DECADE as f64))
        .collect();
    if let PriorScheme::CustomTable(t) = scheme {
        let (lo, hi) = t.range();
        grid.retain(|&s| s > lo && s < hi);
        grid.insert(0, lo);
        grid.push(hi);
    }
    grid
}

/// Supremum/infimum contributions from σ → ∞ that a finite scan misses.
fn asymptotic_type_i(alpha_b: f64, scheme: &PriorScheme) -> Option<f64> {
    match scheme.declared_regime()? {
        Regime::Finite(c) => Some(
            match psi_from_log_m(f64::INFINITY, log_odds_threshold(alpha_b), c.ln()) {
                Some(p) => two_sided_tail(p.sqrt()),
                None => 1.0,
            },
        ),
        Regime::Vanishing => Some(0.0),
        Regime::Divergent => Some(1.0),
    }
}

/// Find σ* with type_i_error(σ*) = α.
///
/// Scans a geometric σ grid for the first sign change of
/// g(σ) = type_i_error(σ) − α and refines it with Brent's method. When the
/// rejection probability is not monotone in σ (fixed schemes) the smallest
/// root is returned.
pub fn solve_sigma(spec: &CalibrationSpec) -> Result<CalibrationResult> {
    let CalibrationSpec {
        alpha,
        alpha_b,
        ref scheme,
    } = *spec;
    check_probability(alpha, "alpha")?;
    check_probability(alpha_b, "alpha_b")?;

    let g = |s: f64| {
        type_i_error(s, alpha_b, scheme)
            .map(|t| t - alpha)
            .unwrap_or(f64::NAN)
    };

    let grid = scan_grid(scheme);
    let values: Vec<f64> = grid.iter().map(|&s| g(s)).collect();
    let mut evaluations = grid.len();

    let crossing = values
        .windows(2)
        .position(|w| w[0] == 0.0 || w[0].signum() != w[1].signum());

    let Some(i) = crossing else {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for v in values.iter().map(|v| v + alpha) {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if let Some(limit) = asymptotic_type_i(alpha_b, scheme) {
            lo = lo.min(limit);
            hi = hi.max(limit);
        }
        return Err(Error::NoSolution {
            alpha,
            achievable_lo: lo,
            achievable_hi: hi,
        });
    };

    let bracket = Bracket::new(grid[i], grid[i + 1])?;
    let root = if values[i] == 0.0 {
        crate::numerics::RootSolution {
            root: grid[i],
            f_root: 0.0,
            evaluations: 0,
        }
    } else {
        brent(g, bracket, 1e-15, 1e-14)?
    };
    evaluations += root.evaluations;

    let sigma_star = root.root;
    let achieved_alpha = type_i_error(sigma_star, alpha_b, scheme)?;
    let residual = achieved_alpha - alpha;
    if residual.abs() > MAX_RESIDUAL {
        return Err(Error::Consistency(format!(
            "solver stopped at sigma={sigma_star} with residual {residual:e}"
        )));
    }
    Ok(CalibrationResult {
        sigma_star,
        psi_at_sigma: psi(sigma_star, alpha_b, scheme)?,
        achieved_alpha,
        residual,
        bracket_used: bracket,
        evaluations,
    })
}
