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

//! Command-line front end for `persprox`: perspective values, proxes, root
//! traces, oracle validation and a forward–backward demo.

pub mod app;
pub mod commands;
pub mod error;
pub mod input;

pub use app::{run, Cli, Command, Outcome};
pub use error::{CliError, CliResult};
