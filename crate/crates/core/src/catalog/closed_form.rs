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

//! Specialized prox of the Huber / square-root perspective, used to
//! cross-check the general solver.

use super::sqrt_scaling::sqrt_scaling_prox;
use crate::convex::norm;
use crate::error::{Error, Result};
use crate::roots::{solve_increasing, RootConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct HuberSqrtProx {
    pub p: Vec<f64>,
    pub q: f64,
    pub eta: f64,
    /// Whether the input fell in the branch where `q = y`.
    pub linear_branch: bool,
}

/// Prox of `gamma * (huber_alpha ⊳ sqrt(beta + (·)^2))` at `(x, y)`.
///
/// When `‖x‖ >= alpha (sqrt(beta + y^2) + gamma)` the answer is
/// `((1 - alpha gamma / ‖x‖) x, y)`. Otherwise `p = sigma / (gamma + sigma) x`
/// with `sigma = sqrt(beta + q^2)`, where `q` is the scalar prox at `y` with
/// weight `gamma eta` and `eta` solves
/// `eta = (alpha^2 (gamma + sigma)^2 - ‖x‖^2) / (2 (gamma + sigma)^2)`.
pub fn closed_form_huber_prox(alpha: f64, beta: f64, gamma: f64, x: &[f64], y: f64) -> Result<HuberSqrtProx> {
    if !(alpha > 0.0 && beta > 0.0 && gamma > 0.0) {
        return Err(Error::InvalidParameter("alpha, beta, gamma must be positive".into()));
    }
    let nx = norm(x);
    if nx >= alpha * ((beta + y * y).sqrt() + gamma) {
        let c = 1.0 - alpha * gamma / nx;
        return Ok(HuberSqrtProx {
            p: x.iter().map(|v| c * v).collect(),
            q: y,
            eta: 0.0,
            linear_branch: true,
        });
    }
    let sigma_of = |eta: f64| -> Result<f64> {
        let q = sqrt_scaling_prox(beta, gamma * eta, y)?;
        Ok((beta + q * q).sqrt())
    };
    let mut failure = None;
    let t = |eta: f64| match sigma_of(eta) {
        Ok(sigma) => {
            let g = gamma + sigma;
            eta - 0.5 * (alpha * alpha - nx * nx / (g * g))
        }
        Err(e) => {
            failure = Some(e);
            f64::NAN
        }
    };
    let out = solve_increasing(t, 0.0, 0.5 * alpha * alpha, &RootConfig::default(), None);
    if let Some(e) = failure {
        return Err(e);
    }
    let eta = out?.eta;
    let q = sqrt_scaling_prox(beta, gamma * eta, y)?;
    let sigma = (beta + q * q).sqrt();
    let c = sigma / (gamma + sigma);
    Ok(HuberSqrtProx {
        p: x.iter().map(|v| c * v).collect(),
        q,
        eta,
        linear_branch: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_branch() {
        let r = closed_form_huber_prox(1.0, 1.0, 1.0, &[3.0, 0.0], 0.0).unwrap();
        assert!(r.linear_branch);
        assert_eq!((r.p, r.q), (vec![2.0, 0.0], 0.0));
    }

    #[test]
    fn root_branch_symmetric_point() {
        let r = closed_form_huber_prox(1.0, 1.0, 1.0, &[1.0, 0.0], 0.0).unwrap();
        assert!(!r.linear_branch);
        assert!((r.p[0] - 0.5).abs() < 1e-12 && r.p[1] == 0.0 && r.q == 0.0);
        assert!((r.eta - 0.375).abs() < 1e-12);
    }

    #[test]
    fn origin_is_fixed() {
        let r = closed_form_huber_prox(1.0, 1.0, 1.0, &[0.0, 0.0], 0.0).unwrap();
        assert_eq!((r.p, r.q), (vec![0.0, 0.0], 0.0));
    }
}
