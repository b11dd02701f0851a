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

//! `s(y) = y^q` on `[0, upper]` and `-inf` elsewhere, with `0 < q < 1`.
//!
//! `-s` is convex, `S = ]0, upper]`, and the lower envelope of `-s` is `-s`
//! itself.

use crate::convex::{check_dim, ExtReal, ScalingFunction, ScalingKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootScaling {
    q: f64,
    upper: f64,
}

impl RootScaling {
    /// `upper` may be `f64::INFINITY`.
    pub fn new(q: f64, upper: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "root exponent must lie in ]0,1[, got {q}"
            )));
        }
        if !(upper > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "interval upper end must be > 0, got {upper}"
            )));
        }
        Ok(Self { q, upper })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    fn clamp(&self, y: f64) -> f64 {
        y.clamp(0.0, self.upper)
    }
}

impl ScalingFunction for RootScaling {
    fn dim(&self) -> usize {
        1
    }

    fn eval(&self, y: &[f64]) -> ExtReal {
        debug_assert!(check_dim(y, 1).is_ok());
        let y = y[0];
        if (0.0..=self.upper).contains(&y) {
            ExtReal::Finite(y.powf(self.q))
        } else {
            ExtReal::NegInf
        }
    }

    fn env_eval(&self, y: &[f64]) -> ExtReal {
        let y = y[0];
        if (0.0..=self.upper).contains(&y) {
            ExtReal::Finite(-y.powf(self.q))
        } else {
            ExtReal::PosInf
        }
    }

    fn env_conj_eval(&self, ys: &[f64]) -> ExtReal {
        let (v, q, u) = (ys[0], self.q, self.upper);
        if v >= 0.0 {
            if u == f64::INFINITY {
                ExtReal::PosInf
            } else {
                ExtReal::Finite(u * v + u.powf(q))
            }
        } else {
            let z = (q / -v).powf(1.0 / (1.0 - q)).min(u);
            ExtReal::Finite(z * v + z.powf(q))
        }
    }

    fn prox_env(&self, mu: f64, y: &[f64]) -> Vec<f64> {
        let y = y[0];
        if mu == 0.0 {
            return vec![self.clamp(y)];
        }
        vec![solve_root_stationarity(self.q, mu, y).min(self.upper)]
    }

    fn proj_cl_s(&self, y: &[f64]) -> Vec<f64> {
        vec![self.clamp(y[0])]
    }

    fn proj_cl_conv_s(&self, y: &[f64]) -> Vec<f64> {
        vec![self.clamp(y[0])]
    }

    fn support_cl_conv_s(&self, ys: &[f64]) -> ExtReal {
        let v = ys[0];
        if v > 0.0 {
            ExtReal::Finite(self.upper * v)
        } else {
            ExtReal::ZERO
        }
    }

    fn kind(&self) -> ScalingKind {
        ScalingKind::NegSLower
    }
}

/// The unique `z > 0` with `y = z - q * gamma * mu * z^(q - 1)`: the prox of
/// `-gamma * mu * (·)^q` on `[0, +inf[` at `y`.
pub fn root_scaling_prox_neg(mu: f64, gamma: f64, q: f64, y: f64) -> f64 {
    solve_root_stationarity(q, gamma * mu, y)
}

/// Solves `y = z - q w z^(q-1)` for `z > 0`, `w > 0`.
///
/// Works in `u = ln z`, where the map is smooth and strictly increasing even
/// when `z` is tiny and `z^(q-1)` would overflow, then polishes in `z`.
pub(crate) fn solve_root_stationarity(q: f64, w: f64, y: f64) -> f64 {
    debug_assert!(q > 0.0 && q < 1.0 && w > 0.0);
    let qw = q * w;
    let h = |u: f64| u.exp() - qw * ((q - 1.0) * u).exp() - y;
    let dh = |u: f64| u.exp() + qw * (1.0 - q) * ((q - 1.0) * u).exp();

    // Crossover point of the two terms, then the larger of it and ln y.
    let cross = qw.ln() / (2.0 - q);
    let mut u = if y > 0.0 { cross.max(y.ln()) } else { cross };
    let (mut lo, mut hi);
    if h(u) < 0.0 {
        lo = u;
        let mut step = 1.0;
        hi = u + step;
        while h(hi) < 0.0 {
            lo = hi;
            step *= 2.0;
            hi += step;
        }
    } else {
        hi = u;
        let mut step = 1.0;
        lo = u - step;
        while h(lo) > 0.0 {
            hi = lo;
            step *= 2.0;
            lo -= step;
        }
    }
    u = 0.5 * (lo + hi);
    for _ in 0..200 {
        let v = h(u);
        if v == 0.0 {
            break;
        }
        if v < 0.0 {
            lo = u;
        } else {
            hi = u;
        }
        let mut next = u - v / dh(u);
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let done = (next - u).abs() <= 2.0 * f64::EPSILON * (1.0 + u.abs());
        u = next;
        if done || hi - lo <= 2.0 * f64::EPSILON * (1.0 + u.abs()) {
            break;
        }
    }

    // Newton steps in z remove the rounding of exp().
    let mut z = u.exp();
    for _ in 0..2 {
        let g = z - qw * z.powf(q - 1.0) - y;
        let dg = 1.0 + qw * (1.0 - q) * z.powf(q - 2.0);
        let next = z - g / dg;
        if next > 0.0 && next.is_finite() {
            z = next;
        }
    }
    z
}
