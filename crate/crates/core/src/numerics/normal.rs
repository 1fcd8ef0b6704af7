//! Standard normal density, distribution function and quantile.
//!
//! The distribution function goes through `erfc` so that both tails keep full
//! relative precision. The quantile starts from Wichura's AS241 rational
//! approximation and applies Halley corrections against the distribution
//! function, always working in the lower tail where `p` is exact.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};

/// (2π)^(-1/2)
const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

pub(crate) fn pdf(z: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * z * z).exp()
}

/// Φ(z) without argument checks.
pub(crate) fn phi(z: f64) -> f64 {
    0.5 * libm::erfc(-z * FRAC_1_SQRT_2)
}

/// 1 − Φ(z), accurate deep into the upper tail.
pub(crate) fn upper_tail(z: f64) -> f64 {
    0.5 * libm::erfc(z * FRAC_1_SQRT_2)
}

/// P(|Z| > z) = 2[1 − Φ(z)] for z ≥ 0.
pub(crate) fn two_sided_tail(z: f64) -> f64 {
    libm::erfc(z * FRAC_1_SQRT_2)
}

fn check_finite(z: f64, what: &str) -> Result<()> {
    if z.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{what} requires a finite argument, got {z}"
        )))
    }
}

/// Standard normal density (2π)^(-1/2) exp(-z²/2).
pub fn std_normal_pdf(z: f64) -> Result<f64> {
    check_finite(z, "std_normal_pdf")?;
    Ok(pdf(z))
}

/// Standard normal distribution function Φ(z).
pub fn std_normal_cdf(z: f64) -> Result<f64> {
    check_finite(z, "std_normal_cdf")?;
    Ok(phi(z))
}

/// Inverse of Φ on the open unit interval.
pub fn std_normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!(
            "std_normal_quantile requires 0 < p < 1, got {p}"
        )));
    }
    Ok(quantile_unchecked(p))
}

pub(crate) fn quantile_unchecked(p: f64) -> f64 {
    if p > 0.5 {
        // 1 - p is exact for p in [0.5, 1)
        return -lower_quantile(1.0 - p);
    }
    lower_quantile(p)
}

/// Quantile for p ≤ 0.5, refined against Φ.
fn lower_quantile(p: f64) -> f64 {
    let mut z = as241(p);
    for _ in 0..2 {
        let density = pdf(z);
        if density == 0.0 {
            break;
        }
        let u = (phi(z) - p) / density;
        let step = u / (1.0 + 0.5 * z * u);
        if !step.is_finite() {
            break;
        }
        z -= step;
    }
    z
}

fn poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

#[allow(clippy::excessive_precision)]
const A: [f64; 8] = [
    3.387_132_872_796_366_608,
    1.331_416_678_917_843_774_5e2,
    1.971_590_950_306_551_442_7e3,
    1.373_169_376_550_946_112_5e4,
    4.592_195_393_154_987_145_7e4,
    6.726_577_092_700_870_085_3e4,
    3.343_057_558_358_812_810_5e4,
    2.509_080_928_730_122_672_7e3,
];
#[allow(clippy::excessive_precision)]
const B: [f64; 8] = [
    1.0,
    4.231_333_070_160_091_125_2e1,
    6.871_870_074_920_579_083e2,
    5.394_196_021_424_751_107_7e3,
    2.121_379_430_158_659_586_7e4,
    3.930_789_580_009_271_061e4,
    2.872_908_573_572_194_267_4e4,
    5.226_495_278_852_854_561e3,
];
#[allow(clippy::excessive_precision)]
const C: [f64; 8] = [
    1.423_437_110_749_683_577_34,
    4.630_337_846_156_545_295_9,
    5.769_497_221_460_691_405_5,
    3.647_848_324_763_204_605_04,
    1.270_458_252_452_368_382_58,
    2.417_807_251_774_506_117_7e-1,
    2.272_384_498_926_918_458_33e-2,
    7.745_450_142_783_414_076_4e-4,
];
#[allow(clippy::excessive_precision)]
const D: [f64; 8] = [
    1.0,
    2.053_191_626_637_758_821_87,
    1.676_384_830_183_803_849_4,
    6.897_673_349_851_000_045_5e-1,
    1.481_039_764_274_800_745_9e-1,
    1.519_866_656_361_645_719_66e-2,
    5.475_938_084_995_344_946e-4,
    1.050_750_071_644_416_843_24e-9,
];
#[allow(clippy::excessive_precision)]
const E: [f64; 8] = [
    6.657_904_643_501_103_777_2,
    5.463_784_911_164_114_369_9,
    1.784_826_539_917_291_335_8,
    2.965_605_718_285_048_912_3e-1,
    2.653_218_952_657_612_309_3e-2,
    1.242_660_947_388_078_438_6e-3,
    2.711_555_568_743_487_578_15e-5,
    2.010_334_399_292_288_132_65e-7,
];
#[allow(clippy::excessive_precision)]
const F: [f64; 8] = [
    1.0,
    5.998_322_065_558_879_376_9e-1,
    1.369_298_809_227_358_053_1e-1,
    1.487_536_129_085_061_485_25e-2,
    7.868_691_311_456_132_591e-4,
    1.846_318_317_510_054_681_8e-5,
    1.421_511_758_316_445_888_7e-7,
    2.044_263_103_389_939_785_64e-15,
];

/// Wichura (1988) AS241, about 1e-16 relative accuracy before refinement.
fn as241(p: f64) -> f64 {
    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180_625 - q * q;
        return q * poly(&A, r) / poly(&B, r);
    }
    let tail = if q < 0.0 { p } else { 1.0 - p };
    let mut r = (-tail.ln()).sqrt();
    let z = if r <= 5.0 {
        r -= 1.6;
        poly(&C, r) / poly(&D, r)
    } else {
        r -= 5.0;
        poly(&E, r) / poly(&F, r)
    };
    if q < 0.0 {
        -z
    } else {
        z
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Φ by the Taylor series Φ(z) = ½ + φ(z) Σ z^(2k+1)/(2k+1)!!, which has
    /// only positive terms for z ≥ 0.
    fn phi_series(z: f64) -> f64 {
        assert!(z >= 0.0);
        let mut term = z;
        let mut sum = z;
        let mut k = 1.0;
        while term > 1e-30 * sum {
            term *= z * z / (2.0 * k + 1.0);
            sum += term;
            k += 1.0;
        }
        0.5 + (-0.5 * z * z).exp() / (2.0 * PI).sqrt() * sum
    }

    /// Upper-tail Mills-ratio continued fraction, evaluated bottom-up.
    fn upper_tail_cf(z: f64) -> f64 {
        assert!(z >= 3.0);
        let mut frac = z;
        for k in (1..400).rev() {
            frac = z + k as f64 / frac;
        }
        (-0.5 * z * z).exp() / (2.0 * PI).sqrt() / frac
    }

    fn phi_oracle(z: f64) -> f64 {
        if z >= 0.0 {
            phi_series(z)
        } else if z > -3.0 {
            1.0 - phi_series(-z)
        } else {
            upper_tail_cf(-z)
        }
    }

    #[test]
    fn pdf_values() {
        assert_eq!(std_normal_pdf(0.0).unwrap(), INV_SQRT_2PI);
        assert!((INV_SQRT_2PI - (2.0 * PI).sqrt().recip()).abs() < 1e-17);
        assert!((std_normal_pdf(1.0).unwrap() - 0.241_970_724_519_143_35).abs() < 1e-16);
        for z in [0.3, 1.7, 4.2, 9.0] {
            assert_eq!(pdf(z), pdf(-z));
            assert!(pdf(z) > 0.0);
        }
        assert!(std_normal_pdf(f64::NAN).is_err());
        assert!(std_normal_pdf(f64::INFINITY).is_err());
    }

    #[test]
    fn cdf_matches_series_oracle() {
        let mut z = -8.0;
        while z <= 8.0 {
            let err = (phi(z) - phi_oracle(z)).abs();
            assert!(err <= 1e-14, "z={z}: err {err}");
            z += 0.05;
        }
        assert_eq!(std_normal_cdf(0.0).unwrap(), 0.5);
        // mpmath: 0.975002104851779563787...
        assert!((std_normal_cdf(1.96).unwrap() - 0.975_002_104_851_779_6).abs() < 1e-15);
        let deep = std_normal_cdf(-8.0).unwrap();
        assert!(deep > 0.0 && deep < 1e-14);
        // mpmath: 6.220960574271784e-16
        assert!((deep / 6.220_960_574_271_784e-16 - 1.0).abs() < 1e-12);
        assert!(std_normal_cdf(f64::NAN).is_err());
    }

    #[test]
    fn cdf_symmetry_and_monotonicity() {
        let mut prev = 0.0;
        let mut z = -8.0;
        while z <= 8.0 {
            assert!((phi(z) + phi(-z) - 1.0).abs() <= 1e-15, "z={z}");
            assert!(phi(z) >= prev);
            prev = phi(z);
            z += 0.01;
        }
    }

    #[test]
    fn quantile_values() {
        assert_eq!(std_normal_quantile(0.5).unwrap(), 0.0);
        // bisection on Φ gives 1.959963984540054
        let bisected = {
            let (mut lo, mut hi) = (0.0_f64, 4.0_f64);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if phi_oracle(mid) < 0.975 {
                    lo = mid
                } else {
                    hi = mid
                }
            }
            lo
        };
        let q = std_normal_quantile(0.975).unwrap();
        assert!((q - 1.959_964).abs() < 1e-6);
        assert!((q - bisected).abs() < 1e-12);
        for p in [1e-300, 1e-20, 1e-8, 0.01, 0.2, 0.5, 0.7, 0.99, 1.0 - 1e-12] {
            let z = std_normal_quantile(p).unwrap();
            assert!((phi(z) - p).abs() <= 1e-12, "p={p}");
        }
        for bad in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(std_normal_quantile(bad).is_err());
        }
    }

    #[test]
    fn quantile_round_trip() {
        // Lower tail: p = Φ(z) keeps full relative precision, so the round
        // trip is limited only by the quantile itself.
        for i in 0..=240 {
            let z = -6.0 + 0.05 * i as f64;
            if z <= 0.0 {
                let back = quantile_unchecked(phi(z));
                assert!((back - z).abs() <= 1e-10, "z={z}: {back}");
            } else {
                // For z > 0 the information sits in the complement Φ(-z).
                let back = -quantile_unchecked(phi(-z));
                assert!((back - z).abs() <= 1e-10, "z={z}: {back}");
                // Direct route through p = Φ(z) is limited by the spacing of
                // doubles below 1: |Δz| ≤ ulp(p)/φ(z).
                let direct = quantile_unchecked(phi(z));
                let bound = 1e-10_f64.max(2.0 * f64::EPSILON / pdf(z));
                assert!((direct - z).abs() <= bound, "z={z}: {direct}");
            }
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn cdf_symmetry(z in -8.0f64..8.0) {
                prop_assert!((phi(z) + phi(-z) - 1.0).abs() <= 1e-15);
            }

            #[test]
            fn quantile_inverts_cdf(p in 1e-300f64..1.0) {
                let q = quantile_unchecked(p);
                let back = phi(q);
                let tol = if p <= 0.5 { 1e-12 * p } else { 1e-12 };
                prop_assert!((back - p).abs() <= tol, "p={} q={} back={}", p, q, back);
            }
        }
    }
}
