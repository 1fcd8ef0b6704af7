//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Panels live in a max-heap keyed on their error estimate; the worst panel is
//! bisected until the summed estimate meets the tolerance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::Bracket;
use crate::error::{Error, Result};

/// Hard cap on the number of panels.
pub const MAX_PANELS: usize = 1_000_000;

/// Kronrod abscissae on [-1, 1], positive half, descending; the last is 0.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
/// Gauss weights for the odd-indexed Kronrod nodes (XGK[1], XGK[3], XGK[5], 0).
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Result<Panel> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Evaluation { x })
        }
    };

    let fc = eval(center)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let pair = eval(center - dx)? + eval(center + dx)?;
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Ok(Panel {
        lo,
        hi,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    })
}

/// Integrate `f` over `bracket` to an absolute tolerance `tol`.
///
/// Fails with [`Error::Accuracy`] (carrying the best estimate) if
/// [`MAX_PANELS`] panels are not enough, and with [`Error::Evaluation`] if
/// `f` returns a non-finite value.
pub fn integrate_adaptive<F>(f: F, bracket: Bracket, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }

    let first = kronrod15(&f, bracket.lo, bracket.hi)?;
    let mut total_value = first.value;
    let mut total_error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);

    while total_error > tol {
        if heap.len() >= MAX_PANELS {
            return Err(Error::Accuracy {
                estimate: heap.iter().map(|p| p.value).sum(),
                abs_error_estimate: total_error,
                subdivisions: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // panel at floating-point resolution; cannot refine further
            heap.push(worst);
            return Err(Error::Accuracy {
                estimate: heap.iter().map(|p| p.value).sum(),
                abs_error_estimate: total_error,
                subdivisions: heap.len(),
            });
        }
        let left = kronrod15(&f, worst.lo, mid)?;
        let right = kronrod15(&f, mid, worst.hi)?;
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);

        // re-sum periodically to shed accumulated rounding in the running totals
        if heap.len() % 64 == 0 {
            total_value = heap.iter().map(|p| p.value).sum();
            total_error = heap.iter().map(|p| p.error).sum();
        }
    }

    let value = if heap.len() == 1 {
        total_value
    } else {
        heap.iter().map(|p| p.value).sum()
    };
    Ok(QuadratureResult {
        value,
        abs_error_estimate: total_error.max(0.0),
        subdivisions: heap.len(),
    })
}
