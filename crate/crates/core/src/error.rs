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

use thiserror::Error;

/// Errors raised by the operators in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector entries must be finite")]
    NonFinite,

    #[error("vectors must have at least one entry")]
    EmptyVector,

    #[error("scale parameter must be nonnegative, got {0}")]
    NegativeScale(f64),

    #[error("step size must be positive, got {0}")]
    NonPositiveStep(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("conjugate is not available for this function")]
    MissingConjugate,

    #[error("base sign class {base} cannot be paired with a scaling of kind {scaling}")]
    IncompatiblePair { base: &'static str, scaling: &'static str },

    #[error("operation requires the {expected} regime, pair is in the {found} regime")]
    WrongRegime {
        expected: &'static str,
        found: &'static str,
    },

    #[error("root finder failed after {iterations} iterations: bracket [{lo}, {hi}], residual {residual}")]
    RootFailure {
        lo: f64,
        hi: f64,
        residual: f64,
        iterations: usize,
    },

    #[error("quartic has no admissible root in [{lo}, {hi}]")]
    NoQuarticRoot { lo: f64, hi: f64 },

    #[error("oracle failure: {0}")]
    Oracle(String),
}

pub type Result<T> = std::result::Result<T, Error>;
