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

//! Proximity operators of perspective functions `phi ⊳ s` with nonlinear
//! scaling `s`.
//!
//! The prox of `gamma (phi ⊳ s)` is reduced to proxes of the conjugate
//! `phi*` and of an envelope of `s`, coupled through a scalar multiplier
//! found by a monotone root search. The crate also provides closed-form
//! catalog functions, perspective and conjugate evaluation, a brute-force
//! prox oracle, and a forward–backward demo solver.
//!
//! ```
//! use std::sync::Arc;
//! use persprox::catalog::{HuberBase, SqrtScaling};
//! use persprox::{prox_perspective, CaseLabel, PerspectivePair, RootConfig};
//!
//! let pair = PerspectivePair::new(
//!     Arc::new(HuberBase::new(1.0, 2)?),
//!     Arc::new(SqrtScaling::new(1.0, 1)?),
//! )?;
//! let r = prox_perspective(&pair, 1.0, &[3.0, 0.0], &[0.0], &RootConfig::default())?;
//! assert_eq!(r.label, CaseLabel::Xi2);
//! assert!((r.p[0] - 2.0).abs() < 1e-12);
//! # Ok::<(), persprox::Error>(())
//! ```

pub mod catalog;
pub mod convex;
pub mod error;
pub mod oracle;
pub mod perspective;
pub mod prox;
pub mod radial;
pub mod roots;
pub mod scaled_prox;
pub mod splitting;

pub use convex::{
    dot, fenchel_young_gap, norm, BaseFunction, ConjugateSignClass, ExtReal, Point, ScalingFunction, ScalingKind,
};
pub use error::{Error, Result};
pub use oracle::{
    brute_force_perspective_prox, brute_force_prox, subgradient_certificate, OracleConfig, OracleSolution,
};
pub use perspective::{
    linear_perspective_eval, perspective_conj_eval, perspective_eval, perspective_fenchel_gap, preperspective_eval,
    PerspectivePair, Regime,
};
pub use prox::{
    case_ii_prox, certificate, classify, classify_case_i, classify_case_iii, multiplier_bracket, multiplier_residual,
    prox_perspective, prox_perspective_traced, solve_eta_case_i, solve_eta_case_iii, CaseLabel, EtaSolution,
    ProxResult,
};
pub use radial::{radial_prox, radial_prox_value, Radial, ScalarProfile};
pub use roots::{RootConfig, RootStep};
pub use scaled_prox::{
    moreau_decompose, prox_characterization_gap, prox_value_curve, scaled_prox, CharacterizationGap, ConjugateOf,
    EnvelopeOf, GapKind, ScaledProxProvider,
};
