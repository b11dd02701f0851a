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

//! The Euclidean norm, whose conjugate is the indicator of the unit ball.

use super::within_radius;
use crate::convex::{ConjugateSignClass, ExtReal};
use crate::error::Result;
use crate::radial::{Radial, ScalarProfile};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AbsProfile;

impl ScalarProfile for AbsProfile {
    fn eval(&self, t: f64) -> ExtReal {
        ExtReal::Finite(t.abs())
    }

    fn conj_eval(&self, t: f64) -> ExtReal {
        ExtReal::indicator(within_radius(t.abs(), 1.0).is_some())
    }

    fn prox(&self, gamma: f64, t: f64) -> f64 {
        if t.abs() <= gamma {
            0.0
        } else {
            t - gamma * t.signum()
        }
    }

    fn prox_conj(&self, _gamma: f64, t: f64) -> f64 {
        t.clamp(-1.0, 1.0)
    }

    fn dom_radius(&self) -> f64 {
        f64::INFINITY
    }

    fn conj_dom_radius(&self) -> f64 {
        1.0
    }

    fn rec_eval(&self, t: f64) -> ExtReal {
        ExtReal::Finite(t.abs())
    }

    fn sign_class(&self) -> ConjugateSignClass {
        ConjugateSignClass::ZeroInftyConjugate
    }
}

/// `‖·‖` on `R^n`.
pub type AbsBase = Radial<AbsProfile>;

impl Radial<AbsProfile> {
    pub fn new(dim: usize) -> Result<Self> {
        Radial::from_profile(AbsProfile, dim)
    }
}
