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

//! Argument parsing and input plumbing shared by the binary and the tests.

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::commands::{self, RootTrace};
use crate::error::{CliError, CliResult};
use crate::input::{json_arg, DemoSpec, Document, PointSpec, ProblemSpec, Tolerances};

#[derive(Debug, Parser)]
#[command(name = "persprox", version, about = "Proximity operators of perspective functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Problem spec: inline JSON or a file path. Read from stdin when absent.
    #[arg(long, global = true)]
    pub spec: Option<String>,
    /// Input point `{"x": [...], "y": [...]}`: inline JSON or a file path.
    #[arg(long, global = true)]
    pub point: Option<String>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Override a solver or oracle setting, e.g. `--tol eta_tol=1e-10`.
    #[arg(long = "tol", global = true, value_name = "KEY=VALUE")]
    pub tol: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Perspective, preperspective and conjugate values at a point.
    Eval,
    /// Prox of gamma times the perspective at a point.
    Prox,
    /// CSV trace of the multiplier root search.
    TraceRoot,
    /// Compare the solver with the brute-force oracle on random points.
    Validate {
        #[arg(long, default_value_t = 200)]
        seeds: usize,
        /// First seed of the run.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Forward–backward on a concomitant-scale regression problem; CSV output.
    DemoConcomitant {
        /// Demo settings: inline JSON or a file path.
        #[arg(long)]
        demo: Option<String>,
    },
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

/// Parses `args` (program name first) and runs the command, reading stdin
/// only if the flags leave an input missing.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    match execute(&cli, stdin) {
        Ok((text, code)) => match &cli.out {
            Some(path) => match std::fs::write(path, &text) {
                Ok(()) => Outcome {
                    stdout: String::new(),
                    stderr: String::new(),
                    code,
                },
                Err(e) => failure(CliError::BadInput(format!("writing {}: {e}", path.display()))),
            },
            None => Outcome {
                stdout: text,
                stderr: String::new(),
                code,
            },
        },
        Err(e) => failure(e),
    }
}

fn failure(e: CliError) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
        code: e.exit_code(),
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("records serialize");
    s.push('\n');
    s
}

struct Inputs<'a> {
    cli: &'a Cli,
    stdin: &'a mut dyn Read,
    doc: Option<Document>,
}

impl Inputs<'_> {
    fn document(&mut self) -> CliResult<&Document> {
        if self.doc.is_none() {
            let mut text = String::new();
            self.stdin
                .read_to_string(&mut text)
                .map_err(|e| CliError::BadInput(format!("reading stdin: {e}")))?;
            let doc = if text.trim().is_empty() {
                Document::default()
            } else {
                serde_json::from_str(&text).map_err(|e| CliError::BadInput(format!("malformed stdin document: {e}")))?
            };
            self.doc = Some(doc);
        }
        Ok(self.doc.as_ref().expect("just filled"))
    }

    fn spec(&mut self) -> CliResult<ProblemSpec> {
        match &self.cli.spec {
            Some(s) => json_arg(s, "spec"),
            None => self
                .document()?
                .spec
                .clone()
                .ok_or_else(|| CliError::BadInput("no spec given".into())),
        }
    }

    fn point(&mut self) -> CliResult<PointSpec> {
        match &self.cli.point {
            Some(s) => json_arg(s, "point"),
            None => self
                .document()?
                .point
                .clone()
                .ok_or_else(|| CliError::BadInput("no point given".into())),
        }
    }

    fn demo(&mut self, flag: &Option<String>) -> CliResult<DemoSpec> {
        match flag {
            Some(s) => json_arg(s, "demo settings"),
            None => self
                .document()?
                .demo
                .clone()
                .ok_or_else(|| CliError::BadInput("no demo settings given".into())),
        }
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> CliResult<(String, u8)> {
    let tol = Tolerances::with_overrides(&cli.tol)?;
    let mut inputs = Inputs { cli, stdin, doc: None };
    let spec = inputs.spec()?;
    match &cli.command {
        Command::Eval => Ok((json_line(&commands::eval(&spec, &inputs.point()?)?), 0)),
        Command::Prox => Ok((json_line(&commands::prox(&spec, &inputs.point()?, &tol)?), 0)),
        Command::TraceRoot => match commands::trace_root(&spec, &inputs.point()?, &tol)? {
            RootTrace::Steps(steps) => Ok((commands::trace_csv(&steps), 0)),
            RootTrace::ClosedForm(_) => Ok(("closed-form case, no root trace\n".to_owned(), 0)),
        },
        Command::Validate { seeds, seed } => {
            let report = commands::validate(&spec, *seeds, *seed, &tol)?;
            let code = if report.passed { 0 } else { 1 };
            Ok((json_line(&report), code))
        }
        Command::DemoConcomitant { demo } => {
            let demo = inputs.demo(demo)?;
            Ok((
                commands::demo_csv(&commands::demo_concomitant(&spec, &demo, &tol)?.records),
                0,
            ))
        }
    }
}
