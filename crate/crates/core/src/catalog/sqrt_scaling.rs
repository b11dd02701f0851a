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

//! `s(y) = sqrt(beta + ‖y‖^2)`, convex and positive everywhere, so its upper
//! envelope is itself and `cl conv S` is the whole space.

use super::quartic::quartic_real_roots;
use super::within_radius;
use crate::convex::{norm, ExtReal, ScalingFunction, ScalingKind};
use crate::error::{Error, Result};
use crate::radial::rescale;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqrtScaling {
    beta: f64,
    dim: usize,
}

impl SqrtScaling {
    pub fn new(beta: f64, dim: usize) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "sqrt scaling beta must be > 0, got {beta}"
            )));
        }
        if dim == 0 {
            return Err(Error::EmptyVector);
        }
        Ok(Self { beta, dim })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

impl ScalingFunction for SqrtScaling {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, y: &[f64]) -> ExtReal {
        ExtReal::Finite(self.beta.sqrt().hypot(norm(y)))
    }

    fn env_eval(&self, y: &[f64]) -> ExtReal {
        self.eval(y)
    }

    fn env_conj_eval(&self, ys: &[f64]) -> ExtReal {
        match within_radius(norm(ys), 1.0) {
            Some(t) => ExtReal::Finite(-(self.beta * (1.0 - t) * (1.0 + t)).sqrt()),
            None => ExtReal::PosInf,
        }
    }

    fn prox_env(&self, mu: f64, y: &[f64]) -> Vec<f64> {
        if mu == 0.0 {
            return y.to_vec();
        }
        rescale(y, |t| {
            sqrt_scaling_prox(self.beta, mu, t).unwrap_or_else(|_| stationarity_root(self.beta, mu, t, None))
        })
    }

    fn proj_cl_s(&self, y: &[f64]) -> Vec<f64> {
        y.to_vec()
    }

    fn proj_cl_conv_s(&self, y: &[f64]) -> Vec<f64> {
        y.to_vec()
    }

    fn support_cl_conv_s(&self, ys: &[f64]) -> ExtReal {
        ExtReal::indicator(ys.iter().all(|v| *v == 0.0))
    }

    fn kind(&self) -> ScalingKind {
        ScalingKind::SLower
    }

    fn in_cl_conv_s(&self, _y: &[f64]) -> bool {
        true
    }
}

/// Coefficients, leading first, of the quartic whose root in `[0, y]` (or
/// `[y, 0]`) is the prox of `mu * sqrt(beta + (·)^2)` at `y`. Obtained by
/// squaring the stationarity condition `q - y + mu q / sqrt(beta + q^2) = 0`.
pub fn sqrt_prox_quartic(beta: f64, mu: f64, y: f64) -> [f64; 5] {
    [1.0, -2.0 * y, y * y + beta - mu * mu, -2.0 * beta * y, beta * y * y]
}

/// `q - y + mu q / sqrt(beta + q^2)`; strictly increasing in `q`.
pub fn sqrt_prox_stationarity(beta: f64, mu: f64, y: f64, q: f64) -> f64 {
    q - y + mu * q / (beta + q * q).sqrt()
}

/// Prox of `mu * sqrt(beta + (·)^2)` at the scalar `y`, from the real roots
/// of [`sqrt_prox_quartic`] followed by polishing on the stationarity
/// condition.
pub fn sqrt_scaling_prox(beta: f64, mu: f64, y: f64) -> Result<f64> {
    if mu == 0.0 || y == 0.0 {
        return Ok(y);
    }
    let (lo, hi) = if y > 0.0 { (0.0, y) } else { (y, 0.0) };
    let slack = 1e-9 * (1.0 + y.abs());
    let coeffs = sqrt_prox_quartic(beta, mu, y);
    let best = quartic_real_roots(&coeffs)
        .into_iter()
        .filter(|r| *r >= lo - slack && *r <= hi + slack)
        .map(|r| r.clamp(lo, hi))
        .min_by(|a, b| {
            let ra = sqrt_prox_stationarity(beta, mu, y, *a).abs();
            let rb = sqrt_prox_stationarity(beta, mu, y, *b).abs();
            ra.total_cmp(&rb)
        })
        .ok_or(Error::NoQuarticRoot { lo, hi })?;
    Ok(stationarity_root(beta, mu, y, Some(best)))
}

// Safeguarded Newton on the stationarity condition, bracketed by [0, y].
fn stationarity_root(beta: f64, mu: f64, y: f64, guess: Option<f64>) -> f64 {
    let g = |q: f64| sqrt_prox_stationarity(beta, mu, y, q);
    let dg = |q: f64| {
        let b = beta + q * q;
        1.0 + mu * beta / (b * b.sqrt())
    };
    let (mut lo, mut hi) = if y > 0.0 { (0.0, y) } else { (y, 0.0) };
    let mut q = guess.unwrap_or(0.5 * (lo + hi)).clamp(lo, hi);
    let tol = 1e-13 * (1.0 + y.abs());
    for _ in 0..200 {
        let v = g(q);
        if v.abs() <= 0.01 * tol {
            break;
        }
        if v < 0.0 {
            lo = q;
        } else {
            hi = q;
        }
        let mut next = q - v / dg(q);
        if !(next >= lo && next <= hi) {
            next = 0.5 * (lo + hi);
        }
        if next == q || hi - lo <= 4.0 * f64::EPSILON * (1.0 + y.abs()) {
            q = next;
            break;
        }
        q = next;
    }
    q
}
