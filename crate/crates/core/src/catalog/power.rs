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

//! `phi = ‖·‖^p / p` with `p > 1`.

use crate::convex::{ConjugateSignClass, ExtReal};
use crate::error::{Error, Result};
use crate::radial::{Radial, ScalarProfile};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerProfile {
    p: f64,
    pstar: f64,
}

impl PowerProfile {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 1.0) || !p.is_finite() {
            return Err(Error::InvalidParameter(format!("power exponent must be > 1, got {p}")));
        }
        Ok(Self {
            p,
            pstar: p / (p - 1.0),
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// The conjugate exponent `p / (p - 1)`.
    pub fn pstar(&self) -> f64 {
        self.pstar
    }
}

impl ScalarProfile for PowerProfile {
    fn eval(&self, t: f64) -> ExtReal {
        ExtReal::Finite(t.abs().powf(self.p) / self.p)
    }

    fn conj_eval(&self, t: f64) -> ExtReal {
        ExtReal::Finite(t.abs().powf(self.pstar) / self.pstar)
    }

    fn prox(&self, gamma: f64, t: f64) -> f64 {
        // rho + gamma rho^(p-1) = |t|
        t.signum() * solve_power_balance(1.0, gamma, self.p - 1.0, t.abs())
    }

    fn prox_conj(&self, gamma: f64, t: f64) -> f64 {
        t.signum() * power_prox_conj(self.p, 1.0, gamma, t.abs())
    }

    fn dom_radius(&self) -> f64 {
        f64::INFINITY
    }

    fn conj_dom_radius(&self) -> f64 {
        f64::INFINITY
    }

    fn rec_eval(&self, t: f64) -> ExtReal {
        ExtReal::indicator(t == 0.0)
    }

    fn sign_class(&self) -> ConjugateSignClass {
        ConjugateSignClass::NonnegativeConjugate
    }
}

/// `‖·‖^p / p` on `R^n`.
pub type PowerBase = Radial<PowerProfile>;

impl Radial<PowerProfile> {
    pub fn new(p: f64, dim: usize) -> Result<Self> {
        Radial::from_profile(PowerProfile::new(p)?, dim)
    }
}

/// The unique `rho >= 0` with `gamma * rho + xi * rho^(p* - 1) = xnorm`.
pub fn power_prox_conj(p: f64, gamma: f64, xi: f64, xnorm: f64) -> f64 {
    debug_assert!(gamma > 0.0 && xi >= 0.0 && xnorm >= 0.0);
    let pstar = p / (p - 1.0);
    solve_power_balance(gamma, xi, pstar - 1.0, xnorm)
}

/// The unique `rho >= 0` with `a rho + b rho^r = c`, for `a > 0`, `b >= 0`,
/// `r > 0`, `c >= 0`. The left side is strictly increasing.
pub fn solve_power_balance(a: f64, b: f64, r: f64, c: f64) -> f64 {
    if c == 0.0 {
        return 0.0;
    }
    if b == 0.0 {
        return c / a;
    }
    if r == 1.0 {
        return c / (a + b);
    }
    let g = |rho: f64| a * rho + b * rho.powf(r) - c;
    let dg = |rho: f64| a + b * r * rho.powf(r - 1.0);
    let mut lo = 0.0_f64;
    let mut hi = (c / a).min((c / b).powf(1.0 / r));
    // Start from whichever term dominates.
    let mut rho = if a * hi >= b * hi.powf(r) {
        c / (a + b * hi.powf(r - 1.0))
    } else {
        hi
    };
    rho = rho.clamp(lo, hi);
    for _ in 0..200 {
        let v = g(rho);
        if v == 0.0 {
            return rho;
        }
        if v < 0.0 {
            lo = rho;
        } else {
            hi = rho;
        }
        let d = dg(rho);
        let mut next = rho - v / d;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - rho).abs() <= 4.0 * f64::EPSILON * rho.max(f64::MIN_POSITIVE) || hi - lo <= 4.0 * f64::EPSILON * hi {
            return next;
        }
        rho = next;
    }
    rho
}
