/*
Copyright 2026 The persprox Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

//! Bracketed root finding for strictly increasing scalar maps.
//!
//! The multiplier equations solved by the prox routines have the form
//! `T(eta) = g(eta) + eta` with `g` nondecreasing, so `T` has slope at least
//! one. That makes `|T(eta)|` an upper bound on the distance to the root,
//! which the stopping rule below exploits.

use crate::error::{Error, Result};

/// Tolerances for the multiplier root-find and for the zero tests used when
/// classifying inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootConfig {
    pub eta_tol: f64,
    pub residual_tol: f64,
    pub max_iter: usize,
    /// Relative: a tested value is zero when it is within this factor of its
    /// first-order change under a relative perturbation of its argument.
    pub classify_tol: f64,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self {
            eta_tol: 1e-12,
            residual_tol: 1e-10,
            max_iter: 200,
            classify_tol: 1e-12,
        }
    }
}

impl RootConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.eta_tol) || !positive(self.residual_tol) || !positive(self.classify_tol) {
            return Err(Error::InvalidParameter(
                "root tolerances must be finite and positive".into(),
            ));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter("max_iter must be positive".into()));
        }
        Ok(())
    }
}

/// One evaluation of the root finder, recorded with the bracket it refined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootStep {
    pub iter: usize,
    pub eta_lo: f64,
    pub eta_hi: f64,
    pub eta_mid: f64,
    pub t_mid: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOutcome {
    pub eta: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Grows `hi` by doubling until `f(hi) >= 0`.
///
/// Returns the final `hi` and `f(hi)`. Every evaluation counts against
/// `cfg.max_iter`.
pub fn expand_upper<F>(f: &mut F, lo: f64, mut hi: f64, cfg: &RootConfig) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> f64,
{
    let mut f_hi = f(hi);
    let mut evals = 1;
    while !(f_hi >= 0.0) {
        if evals >= cfg.max_iter || !hi.is_finite() {
            return Err(Error::RootFailure {
                lo,
                hi,
                residual: f_hi,
                iterations: evals,
            });
        }
        hi = 2.0 * hi + 1.0;
        f_hi = f(hi);
        evals += 1;
    }
    Ok((hi, f_hi))
}

/// Finds the root of a strictly increasing `f` with slope at least one on
/// `[lo, hi]`, given `f(lo) <= 0 <= f(hi)`.
///
/// Combines Illinois false position with bisection. Stops when the point is
/// certified to lie within `eta_tol / 2` of the root, either through the
/// residual or through the bracket width, and its residual is below
/// `residual_tol`. Also stops if the bracket collapses to adjacent floats.
pub fn solve_increasing<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    cfg: &RootConfig,
    mut trace: Option<&mut Vec<RootStep>>,
) -> Result<RootOutcome>
where
    F: FnMut(f64) -> f64,
{
    cfg.validate()?;
    let (mut lo, mut hi) = (lo, hi);
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    if f_lo.is_nan() || f_hi.is_nan() || f_lo > 0.0 || f_hi < 0.0 {
        return Err(Error::RootFailure {
            lo,
            hi,
            residual: f64::NAN,
            iterations: 0,
        });
    }
    if f_lo == 0.0 {
        return Ok(RootOutcome {
            eta: lo,
            residual: 0.0,
            iterations: 0,
        });
    }
    if f_hi == 0.0 {
        return Ok(RootOutcome {
            eta: hi,
            residual: 0.0,
            iterations: 0,
        });
    }

    let half = 0.5 * cfg.eta_tol;
    // Which end was retained on the previous step: -1 lo, +1 hi.
    let mut last_side = 0i8;
    let mut width_before = hi - lo;
    let mut best = if -f_lo < f_hi { (lo, f_lo) } else { (hi, f_hi) };

    for iter in 1..=cfg.max_iter {
        let width = hi - lo;
        let mut mid = if f_lo.is_finite() && f_hi.is_finite() {
            lo - f_lo * width / (f_hi - f_lo)
        } else {
            f64::NAN
        };
        // Fall back to bisection every third step unless false position has
        // at least halved the bracket since then.
        if iter % 3 == 0 && width > 0.5 * width_before {
            mid = f64::NAN;
        }
        if iter % 3 == 0 {
            width_before = width;
        }
        if !(mid > lo && mid < hi) {
            mid = lo + 0.5 * width;
        }
        if !(mid > lo && mid < hi) {
            // Bracket has collapsed to adjacent floats.
            return finish(best, iter - 1, cfg, lo, hi);
        }

        let t = f(mid);
        if let Some(tr) = trace.as_deref_mut() {
            tr.push(RootStep {
                iter,
                eta_lo: lo,
                eta_hi: hi,
                eta_mid: mid,
                t_mid: t,
            });
        }
        if t.is_nan() {
            return Err(Error::RootFailure {
                lo,
                hi,
                residual: t,
                iterations: iter,
            });
        }
        if t.abs() < best.1.abs() {
            best = (mid, t);
        }
        if t == 0.0 || (t.abs() <= cfg.residual_tol && t.abs() <= half) {
            return Ok(RootOutcome {
                eta: mid,
                residual: t,
                iterations: iter,
            });
        }
        if t < 0.0 {
            lo = mid;
            f_lo = t;
            if last_side == -1 {
                f_hi *= 0.5;
            }
            last_side = -1;
        } else {
            hi = mid;
            f_hi = t;
            if last_side == 1 {
                f_lo *= 0.5;
            }
            last_side = 1;
        }
        if hi - lo <= half && t.abs() <= cfg.residual_tol {
            return Ok(RootOutcome {
                eta: mid,
                residual: t,
                iterations: iter,
            });
        }
    }
    Err(Error::RootFailure {
        lo,
        hi,
        residual: best.1,
        iterations: cfg.max_iter,
    })
}

fn finish(best: (f64, f64), iterations: usize, cfg: &RootConfig, lo: f64, hi: f64) -> Result<RootOutcome> {
    if best.1.abs() <= cfg.residual_tol {
        Ok(RootOutcome {
            eta: best.0,
            residual: best.1,
            iterations,
        })
    } else {
        Err(Error::RootFailure {
            lo,
            hi,
            residual: best.1,
            iterations,
        })
    }
}
