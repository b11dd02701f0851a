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

//! Huber base: `alpha ‖x‖` far from the origin, `(‖x‖^2 + alpha^2) / 2`
//! near it. Its conjugate is `(‖·‖^2 - alpha^2) / 2` on the ball of radius
//! `alpha` and takes only nonpositive values there.

use super::within_radius;
use crate::convex::{ConjugateSignClass, ExtReal};
use crate::error::{Error, Result};
use crate::radial::{Radial, ScalarProfile};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HuberProfile {
    alpha: f64,
}

impl HuberProfile {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!("huber alpha must be > 0, got {alpha}")));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl ScalarProfile for HuberProfile {
    fn eval(&self, t: f64) -> ExtReal {
        let (a, t) = (self.alpha, t.abs());
        ExtReal::Finite(if t > a { a * t } else { 0.5 * (t * t + a * a) })
    }

    fn conj_eval(&self, t: f64) -> ExtReal {
        let a = self.alpha;
        match within_radius(t.abs(), a) {
            Some(t) => ExtReal::Finite(0.5 * (t - a) * (t + a)),
            None => ExtReal::PosInf,
        }
    }

    fn prox(&self, gamma: f64, t: f64) -> f64 {
        let a = self.alpha;
        if t.abs() <= (1.0 + gamma) * a {
            t / (1.0 + gamma)
        } else {
            t - gamma * a * t.signum()
        }
    }

    fn prox_conj(&self, gamma: f64, t: f64) -> f64 {
        huber_prox_conj(self.alpha, gamma, t)
    }

    fn dom_radius(&self) -> f64 {
        f64::INFINITY
    }

    fn conj_dom_radius(&self) -> f64 {
        self.alpha
    }

    fn rec_eval(&self, t: f64) -> ExtReal {
        ExtReal::Finite(self.alpha * t.abs())
    }

    fn sign_class(&self) -> ConjugateSignClass {
        ConjugateSignClass::NonpositiveConjugate
    }
}

/// Huber function on `R^n`.
pub type HuberBase = Radial<HuberProfile>;

impl Radial<HuberProfile> {
    pub fn new(alpha: f64, dim: usize) -> Result<Self> {
        Radial::from_profile(HuberProfile::new(alpha)?, dim)
    }
}

/// Prox of `gamma * phi*` for the scalar Huber function.
pub fn huber_prox_conj(alpha: f64, gamma: f64, xi: f64) -> f64 {
    if xi.abs() > (gamma + 1.0) * alpha {
        alpha * xi.signum()
    } else {
        xi / (gamma + 1.0)
    }
}
