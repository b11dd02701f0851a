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

/// Failure of a CLI command, carrying its process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("solver failure: {0}")]
    Solver(#[source] persprox::Error),
    #[error("oracle failure: {0}")]
    Oracle(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::BadInput(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Oracle(_) => 4,
        }
    }

    pub(crate) fn bad(e: impl std::fmt::Display) -> Self {
        CliError::BadInput(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
