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

//! The commands behind the `persprox` binary, as plain functions.

use persprox::splitting::{forward_backward, ConcomitantProblem, FbRecord, FbRun, FbSettings};
use persprox::{
    brute_force_perspective_prox, perspective_conj_eval, perspective_eval, preperspective_eval, prox_perspective,
    prox_perspective_traced, CaseLabel, RootStep,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::input::{DemoSpec, Ext, PointSpec, ProblemSpec, Tolerances};

/// Largest solver-to-oracle distance accepted by `validate`.
pub const VALIDATION_TOL: f64 = 5e-4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub value: Ext,
    pub preperspective_value: Ext,
    pub conjugate_value_at_point: Ext,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProxRecord {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub eta: f64,
    pub case_label: String,
    pub iterations: usize,
    pub certificate_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub seeds: usize,
    pub max_deviation: f64,
    pub mean_deviation: f64,
    pub worst_certificate_gap: f64,
    /// Seed of the largest deviation.
    pub worst_seed: u64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RootTrace {
    ClosedForm(CaseLabel),
    Steps(Vec<RootStep>),
}

pub fn eval(spec: &ProblemSpec, point: &PointSpec) -> CliResult<EvalRecord> {
    let pair = spec.build()?;
    point.check(spec.dims)?;
    let (x, y) = (&point.x[..], &point.y[..]);
    Ok(EvalRecord {
        value: Ext(perspective_eval(&pair, x, y).map_err(CliError::Solver)?),
        preperspective_value: Ext(preperspective_eval(&pair, x, y).map_err(CliError::Solver)?),
        conjugate_value_at_point: Ext(perspective_conj_eval(&pair, x, y).map_err(CliError::Solver)?),
    })
}

pub fn prox(spec: &ProblemSpec, point: &PointSpec, tol: &Tolerances) -> CliResult<ProxRecord> {
    let pair = spec.build()?;
    point.check(spec.dims)?;
    let r = prox_perspective(&pair, spec.gamma, &point.x, &point.y, &tol.root).map_err(CliError::Solver)?;
    Ok(ProxRecord {
        p: r.p,
        q: r.q,
        eta: r.eta,
        case_label: r.label.name().to_owned(),
        iterations: r.root_iterations,
        certificate_gap: r.certificate_gap,
    })
}

pub fn trace_root(spec: &ProblemSpec, point: &PointSpec, tol: &Tolerances) -> CliResult<RootTrace> {
    let pair = spec.build()?;
    point.check(spec.dims)?;
    let (r, steps) =
        prox_perspective_traced(&pair, spec.gamma, &point.x, &point.y, &tol.root).map_err(CliError::Solver)?;
    Ok(if r.label.needs_root() && !steps.is_empty() {
        RootTrace::Steps(steps)
    } else {
        RootTrace::ClosedForm(r.label)
    })
}

/// Random validation input number `seed`.
pub fn validation_point(seed: u64, dims: (usize, usize)) -> PointSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    PointSpec {
        x: (0..dims.0).map(|_| rng.random_range(-3.0..3.0)).collect(),
        y: (0..dims.1).map(|_| rng.random_range(-2.0..3.0)).collect(),
    }
}

/// Solver against the brute-force oracle on `seeds` random points, seeds
/// `first_seed..first_seed + seeds`, spread over the rayon pool.
pub fn validate(spec: &ProblemSpec, seeds: usize, first_seed: u64, tol: &Tolerances) -> CliResult<ValidateReport> {
    let pair = spec.build()?;
    if spec.dims.0 > 3 || spec.dims.1 > 1 {
        return Err(CliError::BadInput(format!(
            "validate supports dims up to (3, 1), got ({}, {})",
            spec.dims.0, spec.dims.1
        )));
    }
    if seeds == 0 {
        return Err(CliError::BadInput("need at least one seed".into()));
    }
    let runs: Vec<CliResult<(f64, f64)>> = (0..seeds as u64)
        .into_par_iter()
        .map(|i| {
            let seed = first_seed + i;
            let pt = validation_point(seed, spec.dims);
            let r = prox_perspective(&pair, spec.gamma, &pt.x, &pt.y, &tol.root).map_err(CliError::Solver)?;
            let o =
                brute_force_perspective_prox(&pair, spec.gamma, &pt.x, &pt.y, &tol.oracle).map_err(|e| match e {
                    persprox::Error::Oracle(msg) => CliError::Oracle(format!("seed {seed}: {msg}")),
                    other => CliError::Oracle(format!("seed {seed}: {other}")),
                })?;
            let dev =
                r.p.iter()
                    .chain(&r.q)
                    .zip(o.p.iter().chain(&o.q))
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>();
            Ok((dev.sqrt(), r.certificate_gap))
        })
        .collect();
    let mut report = ValidateReport {
        seeds,
        max_deviation: 0.0,
        mean_deviation: 0.0,
        worst_certificate_gap: 0.0,
        worst_seed: first_seed,
        tolerance: VALIDATION_TOL,
        passed: true,
    };
    for (i, run) in runs.into_iter().enumerate() {
        let (dev, gap) = run?;
        if dev > report.max_deviation {
            report.max_deviation = dev;
            report.worst_seed = first_seed + i as u64;
        }
        report.mean_deviation += dev / seeds as f64;
        report.worst_certificate_gap = report.worst_certificate_gap.max(gap);
    }
    report.passed = report.max_deviation <= VALIDATION_TOL;
    Ok(report)
}

/// Forward–backward on the concomitant-scale regression problem.
pub fn demo_concomitant(spec: &ProblemSpec, demo: &DemoSpec, tol: &Tolerances) -> CliResult<FbRun> {
    if spec.base.name != "huber" || spec.scaling.name != "sqrt" {
        return Err(CliError::BadInput(
            "the demo needs the huber base with the sqrt scaling".into(),
        ));
    }
    let pair = spec.build()?;
    let (n, m) = spec.dims;
    if m != 1 {
        return Err(CliError::BadInput("the demo needs a scalar scale variable".into()));
    }
    let problem = match (&demo.a, &demo.b) {
        (Some(a), Some(b)) => ConcomitantProblem::new(a.clone(), b.clone(), demo.kappa, demo.y0),
        (None, None) => ConcomitantProblem::synthetic(demo.seed, demo.rows.unwrap_or(40), n, demo.kappa, demo.y0),
        _ => return Err(CliError::BadInput("give both \"a\" and \"b\", or neither".into())),
    }
    .map_err(CliError::bad)?;
    if problem.cols() != n {
        return Err(CliError::BadInput(format!(
            "design has {} columns, spec says {n}",
            problem.cols()
        )));
    }
    let lip = problem.lipschitz();
    let tau = demo.tau.unwrap_or(1.0 / lip);
    if !(tau > 0.0) || tau * lip > 1.0 {
        return Err(CliError::BadInput(format!(
            "step size {tau} violates tau * L <= 1 with L = {lip}"
        )));
    }
    let settings = FbSettings {
        tau,
        iterations: demo.iterations,
        w0: demo.w0.clone().unwrap_or_else(|| vec![0.0; n]),
        sigma0: demo.sigma0.unwrap_or(demo.y0),
    };
    if settings.w0.len() != n {
        return Err(CliError::BadInput(format!(
            "w0 has length {}, spec says {n}",
            settings.w0.len()
        )));
    }
    forward_backward(&pair, &problem, &settings, &tol.root).map_err(CliError::Solver)
}

fn csv_text<R: Serialize>(header: &[&str], rows: impl IntoIterator<Item = R>) -> String {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(vec![]);
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.serialize(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

pub fn trace_csv(steps: &[RootStep]) -> String {
    csv_text(
        &["iter", "eta_lo", "eta_hi", "eta_mid", "T_mid"],
        steps.iter().map(|s| (s.iter, s.eta_lo, s.eta_hi, s.eta_mid, s.t_mid)),
    )
}

pub fn demo_csv(records: &[FbRecord]) -> String {
    csv_text(
        &["iter", "objective", "step_norm"],
        records.iter().map(|r| (r.iter, r.objective, r.step_norm)),
    )
}
