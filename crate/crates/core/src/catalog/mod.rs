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

//! Concrete base and scaling functions with closed-form ingredients.

mod abs;
mod closed_form;
mod huber;
mod identity;
mod power;
pub mod quartic;
mod root_scaling;
mod sqrt_scaling;

pub use abs::{AbsBase, AbsProfile};
pub use closed_form::{closed_form_huber_prox, HuberSqrtProx};
pub use huber::{huber_prox_conj, HuberBase, HuberProfile};
pub use identity::IdentityIntervalScaling;
pub use power::{power_prox_conj, solve_power_balance, PowerBase, PowerProfile};
pub use root_scaling::{root_scaling_prox_neg, RootScaling};
pub use sqrt_scaling::{sqrt_prox_quartic, sqrt_prox_stationarity, sqrt_scaling_prox, SqrtScaling};

/// Relative slack on closed conjugate domains. Points produced by rescaling
/// onto a sphere can land a few ulps outside; within this slack they are
/// evaluated at the nearest domain point instead of being sent to `+inf`.
pub const DOMAIN_SLACK: f64 = 1e-12;

/// `Some(min(t, radius))` if `t <= radius (1 + DOMAIN_SLACK)`.
pub(crate) fn within_radius(t: f64, radius: f64) -> Option<f64> {
    if t <= radius * (1.0 + DOMAIN_SLACK) {
        Some(t.min(radius))
    } else {
        None
    }
}
