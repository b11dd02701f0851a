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

//! Radial functions `x ↦ f(‖x‖)` built from an even scalar profile, with
//! vector proxes obtained by rescaling scalar ones.

use std::fmt;

use crate::convex::{check_dim, norm, BaseFunction, ConjugateSignClass, ExtReal};
use crate::error::{Error, Result};
use crate::scaled_prox::{scaled_prox_unchecked, ScaledProxProvider};

/// Below this norm a vector is treated as the origin.
pub const ZERO_NORM: f64 = 1e-300;

/// An even convex function on the real line with `0` interior to its domain,
/// together with the same data for its conjugate.
pub trait ScalarProfile: Send + Sync + fmt::Debug {
    fn eval(&self, t: f64) -> ExtReal;
    fn conj_eval(&self, t: f64) -> ExtReal;
    /// Prox of `gamma * f` at `t`.
    fn prox(&self, gamma: f64, t: f64) -> f64;
    /// Prox of `gamma * f*` at `t`.
    fn prox_conj(&self, gamma: f64, t: f64) -> f64;
    /// Half-width of `cl dom f`, possibly infinite.
    fn dom_radius(&self) -> f64;
    /// Half-width of `cl dom f*`, possibly infinite.
    fn conj_dom_radius(&self) -> f64;
    fn rec_eval(&self, t: f64) -> ExtReal;
    fn sign_class(&self) -> ConjugateSignClass;
}

/// `(r / ‖x‖) x` where `r` is computed from `‖x‖`; the origin maps to itself.
pub(crate) fn rescale(x: &[f64], scalar: impl FnOnce(f64) -> f64) -> Vec<f64> {
    let t = norm(x);
    if t < ZERO_NORM {
        return vec![0.0; x.len()];
    }
    let r = scalar(t);
    if r == t {
        return x.to_vec();
    }
    let c = r / t;
    x.iter().map(|v| c * v).collect()
}

/// Projection onto the closed ball of the given radius. Points already
/// inside, up to a few ulps, are returned unchanged so the map is exactly
/// idempotent.
pub(crate) fn proj_ball(x: &[f64], radius: f64) -> Vec<f64> {
    if radius == f64::INFINITY {
        return x.to_vec();
    }
    let t = norm(x);
    if t <= radius * (1.0 + 4.0 * f64::EPSILON) {
        return x.to_vec();
    }
    let c = radius / t;
    x.iter().map(|v| c * v).collect()
}

/// `phi = profile ∘ ‖·‖` on `R^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct Radial<F> {
    profile: F,
    dim: usize,
}

impl<F: ScalarProfile> Radial<F> {
    pub fn from_profile(profile: F, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyVector);
        }
        Ok(Self { profile, dim })
    }

    pub fn profile(&self) -> &F {
        &self.profile
    }
}

impl<F: ScalarProfile> BaseFunction for Radial<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[f64]) -> ExtReal {
        self.profile.eval(norm(x))
    }

    fn conj_eval(&self, xs: &[f64]) -> ExtReal {
        self.profile.conj_eval(norm(xs))
    }

    fn prox(&self, gamma: f64, x: &[f64]) -> Vec<f64> {
        rescale(x, |t| self.profile.prox(gamma, t))
    }

    fn prox_conj(&self, gamma: f64, x: &[f64]) -> Vec<f64> {
        rescale(x, |t| self.profile.prox_conj(gamma, t))
    }

    fn proj_dom(&self, x: &[f64]) -> Vec<f64> {
        proj_ball(x, self.profile.dom_radius())
    }

    fn proj_dom_conj(&self, x: &[f64]) -> Vec<f64> {
        proj_ball(x, self.profile.conj_dom_radius())
    }

    fn rec_eval(&self, x: &[f64]) -> ExtReal {
        self.profile.rec_eval(norm(x))
    }

    fn sign_class(&self) -> ConjugateSignClass {
        self.profile.sign_class()
    }
}

/// Vector prox of `gamma ⊙ phi` for `phi = phi1d ∘ ‖·‖`, where `phi1d` is a
/// one-dimensional provider.
pub fn radial_prox<P: ScaledProxProvider + ?Sized>(phi1d: &P, gamma: f64, x: &[f64]) -> Result<Vec<f64>> {
    check_scalar(phi1d, gamma)?;
    Ok(rescale(x, |t| scaled_prox_unchecked(phi1d, gamma, &[t])[0]))
}

/// `phi1d` at the scalar prox of `‖x‖`, which equals `phi` at [`radial_prox`].
pub fn radial_prox_value<P: ScaledProxProvider + ?Sized>(phi1d: &P, gamma: f64, x: &[f64]) -> Result<ExtReal> {
    check_scalar(phi1d, gamma)?;
    let t = norm(x);
    let r = if t < ZERO_NORM {
        0.0
    } else {
        scaled_prox_unchecked(phi1d, gamma, &[t])[0]
    };
    Ok(phi1d.eval(&[r]))
}

fn check_scalar<P: ScaledProxProvider + ?Sized>(phi1d: &P, gamma: f64) -> Result<()> {
    check_dim(&[0.0], phi1d.dim())?;
    if gamma.is_nan() || gamma < 0.0 || gamma == f64::INFINITY {
        return Err(Error::NegativeScale(gamma));
    }
    Ok(())
}
