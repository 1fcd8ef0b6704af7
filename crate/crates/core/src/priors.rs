//! Prior null mass ρ₀(σ), the composite term
//! m(σ) = (1 − ρ₀(σ))/ρ₀(σ) · 1/√(1+σ²), and the large-σ regimes it implies.
//!
//! The limit of m(σ) as σ → ∞ decides what happens to the posterior null
//! probability under an ever more diffuse alternative:
//!
//! * m → 0: the posterior tends to one whatever the data (Lindley's effect);
//! * m → c: the posterior tends to 1/(1 + c·exp(x²/2)) while ρ₀ → 0;
//! * m → ∞: the posterior tends to zero.

use std::cmp::Ordering;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{
    bayes_factor, posterior_h0_from_log_m, AlternativeSpread, Observation, PosteriorReport,
};

/// √(2π)
pub const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// Limiting behaviour of m(σ) as σ → ∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// m(σ) → 0
    Vanishing,
    /// m(σ) → c with 0 < c < ∞
    Finite(f64),
    /// m(σ) → ∞
    Divergent,
}

impl Regime {
    /// Roman-numeral case label: i, ii or iii.
    pub fn case_label(&self) -> &'static str {
        match self {
            Regime::Vanishing => "i",
            Regime::Finite(_) => "ii",
            Regime::Divergent => "iii",
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Regime::Vanishing => "vanishing",
            Regime::Finite(_) => "finite",
            Regime::Divergent => "divergent",
        }
    }
}

/// Piecewise-linear ρ₀(σ) read from a two-column table.
#[derive(Debug, Clone, PartialEq)]
pub struct PriorTable {
    sigmas: Vec<f64>,
    rho0s: Vec<f64>,
}

impl PriorTable {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Domain("prior table needs at least two rows".into()));
        }
        for w in points.windows(2) {
            if w[1].0.partial_cmp(&w[0].0) != Some(Ordering::Greater) {
                return Err(Error::Domain(format!(
                    "prior table sigma column must be strictly increasing ({} then {})",
                    w[0].0, w[1].0
                )));
            }
        }
        for &(s, r) in &points {
            if !(s.is_finite() && s > 0.0) {
                return Err(Error::Domain(format!(
                    "prior table sigma must be positive, got {s}"
                )));
            }
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::Domain(format!(
                    "prior table rho0 must lie in (0, 1), got {r}"
                )));
            }
        }
        let (sigmas, rho0s) = points.into_iter().unzip();
        Ok(Self { sigmas, rho0s })
    }

    /// Parse a CSV with a header row and columns `sigma,rho0`. Lines starting
    /// with `#` are ignored.
    pub fn from_reader<R: std::io::Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut points = Vec::new();
        for (line, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| Error::Parse(e.to_string()))?;
            if record.len() != 2 {
                return Err(Error::Parse(format!(
                    "prior table row {} has {} columns, expected 2",
                    line + 1,
                    record.len()
                )));
            }
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("prior table row {}: {s:?}: {e}", line + 1)))
            };
            points.push((parse(&record[0])?, parse(&record[1])?));
        }
        Self::new(points)
    }

    pub fn from_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        let file = std::fs::File::open(path.as_ref())
            .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
        Self::from_reader(file)
    }

    pub fn range(&self) -> (f64, f64) {
        (self.sigmas[0], *self.sigmas.last().unwrap())
    }

    pub fn rho0(&self, sigma: f64) -> Result<f64> {
        let (lo, hi) = self.range();
        if !(sigma >= lo && sigma <= hi) {
            return Err(Error::Range { sigma, lo, hi });
        }
        let i = self.sigmas.partition_point(|&s| s < sigma);
        if i == 0 {
            return Ok(self.rho0s[0]);
        }
        let (s0, s1) = (self.sigmas[i - 1], self.sigmas[i]);
        let (r0, r1) = (self.rho0s[i - 1], self.rho0s[i]);
        let t = (sigma - s0) / (s1 - s0);
        Ok(r0 + t * (r1 - r0))
    }
}

/// Rule assigning prior mass ρ₀(σ) to the null.
#[derive(Debug, Clone, PartialEq)]
pub enum PriorScheme {
    /// ρ₀ constant in σ.
    Fixed(f64),
    /// ρ₀(σ) = 1/(1 + √(2π)σ).
    Robert,
    /// ρ₀(σ) = 1/(1 + exp(σ²/2)): self-information of the alternative equal
    /// to its expected KL loss σ²/2.
    KlSelfInformation,
    /// Tabulated ρ₀(σ), interpolated linearly, never extrapolated.
    CustomTable(PriorTable),
}

impl PriorScheme {
    pub fn fixed(rho0: f64) -> Result<Self> {
        if rho0 > 0.0 && rho0 < 1.0 {
            Ok(PriorScheme::Fixed(rho0))
        } else {
            Err(Error::Domain(format!(
                "fixed rho0 must lie in (0, 1), got {rho0}"
            )))
        }
    }

    /// Analytically known regime; `None` for tables.
    pub fn declared_regime(&self) -> Option<Regime> {
        match self {
            PriorScheme::Fixed(_) => Some(Regime::Vanishing),
            PriorScheme::Robert => Some(Regime::Finite(SQRT_2PI)),
            PriorScheme::KlSelfInformation => Some(Regime::Divergent),
            PriorScheme::CustomTable(_) => None,
        }
    }

    pub fn is_builtin(&self) -> bool {
        !matches!(self, PriorScheme::CustomTable(_))
    }

    /// Short identifier used on the command line and in reports.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PriorScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PriorScheme::Fixed(r) => write!(f, "fixed:{r}"),
            PriorScheme::Robert => f.write_str("robert"),
            PriorScheme::KlSelfInformation => f.write_str("kl"),
            PriorScheme::CustomTable(t) => {
                let (lo, hi) = t.range();
                write!(f, "table[{lo},{hi}]")
            }
        }
    }
}

/// `fixed:<rho0>`, `robert`, `kl`, or `table:<path>` (the file is read).
impl FromStr for PriorScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "robert" => return Ok(PriorScheme::Robert),
            "kl" => return Ok(PriorScheme::KlSelfInformation),
            _ => {}
        }
        if let Some(v) = s.strip_prefix("fixed:") {
            let rho0: f64 = v
                .parse()
                .map_err(|_| Error::Parse(format!("bad fixed prior value {v:?}")))?;
            return PriorScheme::fixed(rho0);
        }
        if let Some(path) = s.strip_prefix("table:") {
            return Ok(PriorScheme::CustomTable(PriorTable::from_path(path)?));
        }
        Err(Error::Parse(format!(
            "unknown scheme {s:?}; expected fixed:<rho0>, robert, kl or table:<path>"
        )))
    }
}

fn check_sigma(sigma: f64) -> Result<AlternativeSpread> {
    AlternativeSpread::new(sigma)
}

/// ρ₀(σ). For the KL scheme this underflows to 0 once σ²/2 exceeds the
/// double range (σ ≳ 38.6); use [`log_m_of_sigma`] for anything downstream.
pub fn rho0(scheme: &PriorScheme, sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    Ok(match scheme {
        PriorScheme::Fixed(r) => *r,
        PriorScheme::Robert => 1.0 / (1.0 + SQRT_2PI * sigma),
        PriorScheme::KlSelfInformation => crate::model::logistic_neg(0.5 * sigma * sigma),
        PriorScheme::CustomTable(t) => t.rho0(sigma)?,
    })
}

/// log m(σ), finite for every finite σ > 0 under all schemes.
pub fn log_m_of_sigma(scheme: &PriorScheme, sigma: f64) -> Result<f64> {
    let spread = check_sigma(sigma)?;
    let damp = spread.half_log_one_plus_var();
    Ok(match scheme {
        PriorScheme::Fixed(r) => ((1.0 - r) / r).ln() - damp,
        PriorScheme::Robert => robert_m(sigma).ln(),
        PriorScheme::KlSelfInformation => 0.5 * sigma * sigma - damp,
        PriorScheme::CustomTable(t) => {
            let r = t.rho0(sigma)?;
            ((1.0 - r) / r).ln() - damp
        }
    })
}

/// m(σ). Overflows to +∞ for the KL scheme beyond σ ≈ 37.7.
pub fn m_of_sigma(scheme: &PriorScheme, sigma: f64) -> Result<f64> {
    match scheme {
        PriorScheme::Robert => {
            check_sigma(sigma)?;
            Ok(robert_m(sigma))
        }
        PriorScheme::Fixed(r) => {
            let spread = check_sigma(sigma)?;
            Ok((1.0 - r) / r / 1f64.hypot(spread.sigma()))
        }
        _ => Ok(log_m_of_sigma(scheme, sigma)?.exp()),
    }
}

/// √(2π)·σ/√(1+σ²), written so that it is monotone and never exceeds √(2π)
/// in floating point.
fn robert_m(sigma: f64) -> f64 {
    if sigma < 1.0 {
        SQRT_2PI * sigma / (1.0 + sigma * sigma).sqrt()
    } else {
        SQRT_2PI / (1.0 + (sigma * sigma).recip()).sqrt()
    }
}

/// Declared regime plus the numbers that corroborate it.
#[derive(Debug, Clone, PartialEq)]
pub struct RegimeEvidence {
    pub regime: Regime,
    pub m_at_1e3: f64,
    pub m_at_1e6: f64,
    pub log_m_at_1e3: f64,
    pub log_m_at_1e6: f64,
}

pub const EVIDENCE_SIGMAS: [f64; 2] = [1e3, 1e6];

/// Classify a built-in scheme and check the declaration numerically.
///
/// Vanishing requires m(10⁶) < m(10³) and m(10⁶) < 10⁻³·max(1, (1−ρ₀)/ρ₀);
/// Finite(c) requires |m(10⁶) − c| < 10⁻⁶·c; Divergent requires
/// log m(10⁶) > 10³.
pub fn classify_regime(scheme: &PriorScheme) -> Result<RegimeEvidence> {
    let regime = scheme.declared_regime().ok_or_else(|| {
        Error::UnsupportedScheme(format!("{scheme}: regime of a finite table is undefined"))
    })?;
    let [lo, hi] = EVIDENCE_SIGMAS;
    let log_m_at_1e3 = log_m_of_sigma(scheme, lo)?;
    let log_m_at_1e6 = log_m_of_sigma(scheme, hi)?;
    let m_at_1e3 = m_of_sigma(scheme, lo)?;
    let m_at_1e6 = m_of_sigma(scheme, hi)?;

    let consistent = match (regime, scheme) {
        (Regime::Vanishing, PriorScheme::Fixed(r)) => {
            let scale = ((1.0 - r) / r).max(1.0);
            m_at_1e6 < m_at_1e3 && m_at_1e6 < 1e-3 * scale
        }
        (Regime::Finite(c), _) => (m_at_1e6 - c).abs() < 1e-6 * c,
        (Regime::Divergent, _) => log_m_at_1e6 > 1e3 && log_m_at_1e6 > log_m_at_1e3,
        _ => false,
    };
    if !consistent {
        return Err(Error::Consistency(format!(
            "{scheme}: numeric evidence (m(1e3)={m_at_1e3:e}, m(1e6)={m_at_1e6:e}, log m(1e6)={log_m_at_1e6}) contradicts declared regime {}",
            regime.name()
        )));
    }
    Ok(RegimeEvidence {
        regime,
        m_at_1e3,
        m_at_1e6,
        log_m_at_1e3,
        log_m_at_1e6,
    })
}

/// Evaluate one test under a scheme: B₀₁, ρ₀, m, P(H₀|x) and the
/// rejection decision at threshold `alpha_b`.
pub fn evaluate_posterior(
    obs: Observation,
    spread: AlternativeSpread,
    scheme: &PriorScheme,
    alpha_b: f64,
) -> Result<PosteriorReport> {
    if !(alpha_b > 0.0 && alpha_b < 1.0) {
        return Err(Error::Domain(format!(
            "alpha_b must lie in (0, 1), got {alpha_b}"
        )));
    }
    let sigma = spread.sigma();
    let log_m = log_m_of_sigma(scheme, sigma)?;
    let posterior_h0 = posterior_h0_from_log_m(obs, spread, log_m);
    Ok(PosteriorReport {
        x: obs.x(),
        sigma,
        scheme: scheme.label(),
        rho0: rho0(scheme, sigma)?,
        bayes_factor: bayes_factor(obs, spread),
        m_value: m_of_sigma(scheme, sigma)?,
        posterior_h0,
        alpha_b,
        rejected: posterior_h0 < alpha_b,
    })
}

/// One row of a posterior-versus-σ sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParadoxRow {
    pub sigma: f64,
    pub rho0: f64,
    pub m: f64,
    pub posterior_h0: f64,
}

/// Evaluate ρ₀, m and P(H₀|x) along a strictly increasing σ grid.
pub fn paradox_sweep(scheme: &PriorScheme, x: f64, sigma_grid: &[f64]) -> Result<Vec<ParadoxRow>> {
    let obs = Observation::new(x)?;
    if sigma_grid.is_empty() {
        return Err(Error::Domain("sigma grid is empty".into()));
    }
    if sigma_grid
        .windows(2)
        .any(|w| w[1].partial_cmp(&w[0]) != Some(Ordering::Greater))
    {
        return Err(Error::Domain(
            "sigma grid must be strictly increasing".into(),
        ));
    }
    sigma_grid
        .iter()
        .map(|&sigma| {
            let spread = check_sigma(sigma)?;
            let log_m = log_m_of_sigma(scheme, sigma)?;
            Ok(ParadoxRow {
                sigma,
                rho0: rho0(scheme, sigma)?,
                m: m_of_sigma(scheme, sigma)?,
                posterior_h0: posterior_h0_from_log_m(obs, spread, log_m),
            })
        })
        .collect()
}

/// Limit of the posterior null probability under a Finite(c) regime.
pub fn finite_regime_posterior_limit(c: f64, x: f64) -> f64 {
    1.0 / (1.0 + c * (0.5 * x * x).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::posterior_h0;
    use std::f64::consts::PI;

    const KL: PriorScheme = PriorScheme::KlSelfInformation;

    fn schemes() -> Vec<PriorScheme> {
        vec![
            PriorScheme::Fixed(0.5),
            PriorScheme::Fixed(0.05),
            PriorScheme::Fixed(0.9),
            PriorScheme::Robert,
            KL,
        ]
    }

    #[test]
    fn sqrt_2pi_constant() {
        let digits: f64 = "2.506628274631000502415765284811045".parse().unwrap();
        assert_eq!(SQRT_2PI, digits);
        assert!((SQRT_2PI - (2.0 * PI).sqrt()).abs() <= 2.0 * f64::EPSILON * SQRT_2PI);
    }

    #[test]
    fn parse_schemes() {
        assert_eq!(
            "robert".parse::<PriorScheme>().unwrap(),
            PriorScheme::Robert
        );
        assert_eq!("kl".parse::<PriorScheme>().unwrap(), KL);
        assert_eq!(
            "fixed:0.25".parse::<PriorScheme>().unwrap(),
            PriorScheme::Fixed(0.25)
        );
        assert!("fixed:1".parse::<PriorScheme>().is_err());
        assert!("fixed:abc".parse::<PriorScheme>().is_err());
        assert!("jeffreys".parse::<PriorScheme>().is_err());
        assert!(matches!(
            "table:/nonexistent/t.csv".parse::<PriorScheme>(),
            Err(Error::Io(_))
        ));
        assert_eq!(PriorScheme::Fixed(0.5).to_string(), "fixed:0.5");
    }

    #[test]
    fn rho0_examples() {
        let r = rho0(&KL, 1e-8).unwrap();
        assert!((r - 0.5).abs() < 1e-15);
        // mpmath: 1/(1+√(2π)) = 0.28517422483431870054
        let r = rho0(&PriorScheme::Robert, 1.0).unwrap();
        assert!((r - 0.285_174_224_834_318_7).abs() < 1e-15);
        for s in [0.01, 1.0, 1e5] {
            assert_eq!(rho0(&PriorScheme::Fixed(0.5), s).unwrap(), 0.5);
        }
        assert!(rho0(&KL, 0.0).is_err());
        assert!(rho0(&KL, f64::NAN).is_err());
    }

    #[test]
    fn m_examples() {
        let m = m_of_sigma(&PriorScheme::Fixed(0.5), 3f64.sqrt()).unwrap();
        assert!((m - 0.5).abs() < 1e-15);
        let m = m_of_sigma(&PriorScheme::Robert, 1.0).unwrap();
        assert!((m - PI.sqrt()).abs() < 1e-15);
        // mpmath: e²/√5 = 3.3044863453536690043
        let m = m_of_sigma(&KL, 2.0).unwrap();
        assert!((m - 3.304_486_345_353_669).abs() < 1e-14);
    }

    #[test]
    fn log_m_examples() {
        // mpmath: 50 − ½ log 101 = 47.692439741579370275
        let l = log_m_of_sigma(&KL, 10.0).unwrap();
        assert!((l - 47.692_439_741_579_37).abs() < 1e-13);
        let l = log_m_of_sigma(&PriorScheme::Fixed(0.5), 3f64.sqrt()).unwrap();
        assert!((l - 0.5f64.ln()).abs() < 1e-15);
        assert!(log_m_of_sigma(&KL, 1e150).unwrap().is_finite());
        for scheme in schemes() {
            for s in [1e-3, 0.1, 1.0, 5.0, 20.0, 30.0, 1e3, 1e6] {
                let m = m_of_sigma(&scheme, s).unwrap();
                if m.is_finite() && m > 0.0 {
                    let back = log_m_of_sigma(&scheme, s).unwrap().exp();
                    assert!((back / m - 1.0).abs() < 1e-13, "{scheme} s={s}");
                }
            }
        }
    }

    #[test]
    fn definition_identity() {
        for scheme in schemes() {
            for s in [1e-3, 0.05, 0.5, 1.0, 2.0, 7.5, 25.0] {
                let r = rho0(&scheme, s).unwrap();
                let m = m_of_sigma(&scheme, s).unwrap();
                let lhs = m * r * (1.0 + s * s).sqrt();
                assert!(
                    (lhs - (1.0 - r)).abs() < 1e-12,
                    "{scheme} s={s}: {lhs} vs {}",
                    1.0 - r
                );
            }
        }
    }

    #[test]
    fn robert_m_increasing_and_bounded() {
        let mut prev = 0.0;
        let mut s = 1e-3;
        while s <= 1e6 {
            let m = m_of_sigma(&PriorScheme::Robert, s).unwrap();
            assert!(m > prev, "s={s}");
            assert!(m < SQRT_2PI);
            prev = m;
            s *= 1.1;
        }
    }

    #[test]
    fn kl_log_m_increasing_unbounded() {
        let mut prev = f64::NEG_INFINITY;
        let mut s = 1e-3;
        while s <= 1e6 {
            let l = log_m_of_sigma(&KL, s).unwrap();
            assert!(l > prev, "s={s}");
            prev = l;
            s *= 1.1;
        }
        assert!(log_m_of_sigma(&KL, 1e6).unwrap() > 4.9e11);
    }

    #[test]
    fn fixed_sigma_times_m_limit() {
        for r in [0.5, 0.1, 0.9] {
            let s = 1e6;
            let m = m_of_sigma(&PriorScheme::Fixed(r), s).unwrap();
            assert!((s * m - (1.0 - r) / r).abs() < 1e-6);
        }
    }

    #[test]
    fn regimes() {
        let e = classify_regime(&PriorScheme::Fixed(0.5)).unwrap();
        assert_eq!(e.regime, Regime::Vanishing);
        assert!((e.m_at_1e6 / 1e-6 - 1.0).abs() < 1e-6);
        let e = classify_regime(&PriorScheme::Robert).unwrap();
        match e.regime {
            Regime::Finite(c) => assert!((c - 2.506_628_3).abs() < 1e-7),
            other => panic!("{other:?}"),
        }
        let e = classify_regime(&KL).unwrap();
        assert_eq!(e.regime, Regime::Divergent);
        // mpmath: 499993.09224422101811
        assert!((e.log_m_at_1e3 - 499_993.092_244_221).abs() < 1e-8);
        assert!(e.m_at_1e6.is_infinite());
        // small fixed masses still decay like 1/σ
        assert_eq!(
            classify_regime(&PriorScheme::Fixed(1e-4)).unwrap().regime,
            Regime::Vanishing
        );

        let table = PriorTable::new(vec![(1.0, 0.5), (2.0, 0.4)]).unwrap();
        assert!(matches!(
            classify_regime(&PriorScheme::CustomTable(table)),
            Err(Error::UnsupportedScheme(_))
        ));
    }

    #[test]
    fn posterior_report_invariants() {
        for scheme in schemes() {
            for (x, s) in [(0.0, 0.5), (1.96, 1.0), (-2.5, 3.0), (4.0, 20.0)] {
                let r = evaluate_posterior(
                    Observation::new(x).unwrap(),
                    AlternativeSpread::new(s).unwrap(),
                    &scheme,
                    0.05,
                )
                .unwrap();
                let direct = 1.0 / (1.0 + r.m_value * (0.5 * x * x * s * s / (1.0 + s * s)).exp());
                assert!(
                    (r.posterior_h0 - direct).abs() < 1e-14,
                    "{scheme} x={x} s={s}"
                );
                assert_eq!(r.rejected, r.posterior_h0 < 0.05);
                assert!(r.bayes_factor > 0.0 && r.m_value > 0.0);
            }
        }
        let obs = Observation::new(0.0).unwrap();
        let sp = AlternativeSpread::new(1.0).unwrap();
        assert!(evaluate_posterior(obs, sp, &KL, 1.0).is_err());
    }

    #[test]
    fn lindley_sweep() {
        let grid = [1.0, 10.0, 1e2, 1e3, 1e4];
        let rows = paradox_sweep(&PriorScheme::Fixed(0.5), 1.96, &grid).unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.last().unwrap().posterior_h0 > 0.999);
        for row in &rows {
            let direct = posterior_h0(
                Observation::new(1.96).unwrap(),
                AlternativeSpread::new(row.sigma).unwrap(),
                row.rho0,
            )
            .unwrap();
            assert!((row.posterior_h0 - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn robert_sweep_is_incoherent() {
        let grid: Vec<f64> = (0..=12).map(|k| 10f64.powf(0.5 * k as f64)).collect();
        let rows = paradox_sweep(&PriorScheme::Robert, 0.0, &grid).unwrap();
        let last = rows.last().unwrap();
        let limit = 1.0 / (1.0 + SQRT_2PI);
        assert!((last.posterior_h0 - limit).abs() < 1e-6);
        assert!((finite_regime_posterior_limit(SQRT_2PI, 0.0) - limit).abs() < 1e-16);
        assert!(last.rho0 < 1e-6);
    }

    #[test]
    fn kl_sweep_decreases() {
        let grid: Vec<f64> = (1..=100).map(|k| 0.1 * k as f64).collect();
        let rows = paradox_sweep(&KL, 0.0, &grid).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].posterior_h0 < w[0].posterior_h0);
        }
        assert!(rows.last().unwrap().posterior_h0 < 1e-20);
    }

    #[test]
    fn sweep_validates_grid() {
        assert!(paradox_sweep(&KL, 0.0, &[1.0, 1.0]).is_err());
        assert!(paradox_sweep(&KL, 0.0, &[2.0, 1.0]).is_err());
        assert!(paradox_sweep(&KL, 0.0, &[-1.0, 1.0]).is_err());
        assert!(paradox_sweep(&KL, 0.0, &[]).is_err());
    }

    #[test]
    fn table_interpolation() {
        let t = PriorTable::new(vec![(0.5, 0.6), (1.0, 0.4), (3.0, 0.2)]).unwrap();
        assert_eq!(t.rho0(0.5).unwrap(), 0.6);
        assert!((t.rho0(0.75).unwrap() - 0.5).abs() < 1e-15);
        assert!((t.rho0(2.0).unwrap() - 0.3).abs() < 1e-15);
        assert_eq!(t.rho0(3.0).unwrap(), 0.2);
        assert!(matches!(t.rho0(0.4), Err(Error::Range { .. })));
        assert!(matches!(t.rho0(3.1), Err(Error::Range { .. })));
        let scheme = PriorScheme::CustomTable(t);
        assert!(rho0(&scheme, 5.0).is_err());
        assert!(m_of_sigma(&scheme, 1.0).unwrap() > 0.0);

        assert!(PriorTable::new(vec![(1.0, 0.5)]).is_err());
        assert!(PriorTable::new(vec![(1.0, 0.5), (1.0, 0.4)]).is_err());
        assert!(PriorTable::new(vec![(1.0, 0.5), (2.0, 1.0)]).is_err());
    }

    #[test]
    fn table_from_csv() {
        let text = "sigma,rho0\n# comment\n0.5, 0.6\n1.0,0.4\n";
        let t = PriorTable::from_reader(text.as_bytes()).unwrap();
        assert_eq!(t.range(), (0.5, 1.0));
        assert!(PriorTable::from_reader("sigma,rho0\n0.5,x\n1,0.3\n".as_bytes()).is_err());
        assert!(PriorTable::from_reader("sigma,rho0\n0.5,0.1,9\n1,0.3,9\n".as_bytes()).is_err());
    }
}
