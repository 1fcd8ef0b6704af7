//! Bracketed root finding.
//!
//! Brent's method: inverse quadratic interpolation or secant steps when they
//! land inside the current bracket and make progress, bisection otherwise.
//! Every iterate stays inside the initial bracket.

use std::cell::Cell;

use super::Bracket;
use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootSolution {
    pub root: f64,
    pub f_root: f64,
    pub evaluations: usize,
}

/// Root of `f` on `bracket`, to within `xtol` in x or `ftol` in |f|.
pub fn find_root_bracketed<F>(f: F, bracket: Bracket, xtol: f64, ftol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    brent(f, bracket, xtol, ftol).map(|s| s.root)
}

/// Brent's method with evaluation count and final residual.
pub fn brent<F>(f: F, bracket: Bracket, xtol: f64, ftol: f64) -> Result<RootSolution>
where
    F: Fn(f64) -> f64,
{
    if !(xtol > 0.0 && ftol > 0.0) {
        return Err(Error::Domain(format!(
            "tolerances must be positive: xtol={xtol}, ftol={ftol}"
        )));
    }
    let evaluations = Cell::new(0usize);
    let eval = |x: f64| -> Result<f64> {
        evaluations.set(evaluations.get() + 1);
        let y = f(x);
        if y.is_nan() || y.is_infinite() {
            Err(Error::Evaluation { x })
        } else {
            Ok(y)
        }
    };

    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let mut fa = eval(a)?;
    let mut fb = eval(b)?;
    if fa == 0.0 {
        return Ok(RootSolution {
            root: a,
            f_root: fa,
            evaluations: 2,
        });
    }
    if fb == 0.0 {
        return Ok(RootSolution {
            root: b,
            f_root: fb,
            evaluations: 2,
        });
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket {
            lo: a,
            hi: b,
            f_lo: fa,
            f_hi: fb,
        });
    }

    // b is the best iterate, a the previous one, c the contrapoint.
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ITERATIONS {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }

        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let half = 0.5 * (c - b);
        if fb.abs() <= ftol || half.abs() <= tol {
            return Ok(RootSolution {
                root: b,
                f_root: fb,
                evaluations: evaluations.get(),
            });
        }

        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * half * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * half * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = half;
                e = d;
            }
        } else {
            d = half;
            e = d;
        }

        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(half) };
        // b and c bracket the root and both lie inside the initial bracket;
        // clamp guards the ulp-level step past the endpoint.
        b = b.clamp(bracket.lo, bracket.hi);
        fb = eval(b)?;
    }

    Ok(RootSolution {
        root: b,
        f_root: fb,
        evaluations: evaluations.get(),
    })
}
