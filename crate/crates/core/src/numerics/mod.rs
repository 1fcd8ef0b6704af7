//! Special functions, quadrature and root-finding.
//!
//! Everything here is pure and reentrant. The rest of the crate calls the
//! unchecked helpers (`phi`, `upper_tail`, `quantile_unchecked`) on values it
//! has already validated; the public checked entry points reject non-finite
//! arguments.

mod normal;
mod quadrature;
mod root;

pub(crate) use normal::{pdf, phi, quantile_unchecked, two_sided_tail, upper_tail};
pub use normal::{std_normal_cdf, std_normal_pdf, std_normal_quantile};
pub use quadrature::{integrate_adaptive, QuadratureResult, MAX_PANELS};
pub use root::{brent, find_root_bracketed, RootSolution};

use crate::error::{Error, Result};

/// A closed search or integration interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::Domain(format!("bracket [{lo}, {hi}] is not finite")));
        }
        if lo >= hi {
            return Err(Error::Domain(format!(
                "bracket requires lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_rejects_inverted_and_degenerate() {
        assert!(Bracket::new(1.0, 0.0).is_err());
        assert!(Bracket::new(1.0, 1.0).is_err());
        assert!(Bracket::new(f64::NEG_INFINITY, 0.0).is_err());
        let b = Bracket::new(-1.0, 2.0).unwrap();
        assert_eq!(b.width(), 3.0);
        assert!(b.contains(-1.0) && b.contains(2.0) && !b.contains(2.5));
    }
}
