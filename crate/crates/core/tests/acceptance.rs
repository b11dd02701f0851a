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

//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{concat, dist, random_input, random_instance, random_vec, Family, FAMILIES};
use persprox::catalog::{
    quartic::quartic_eval, sqrt_prox_quartic, sqrt_prox_stationarity, sqrt_scaling_prox, AbsBase, HuberBase, PowerBase,
    RootScaling, SqrtScaling,
};
use persprox::splitting::{forward_backward, ConcomitantProblem, FbSettings};
use persprox::{
    brute_force_perspective_prox, classify, moreau_decompose, multiplier_bracket, multiplier_residual, norm,
    prox_perspective, scaled_prox, solve_eta_case_i, solve_eta_case_iii, BaseFunction, CaseLabel, ConjugateOf,
    EnvelopeOf, ExtReal, OracleConfig, PerspectivePair, Regime, RootConfig, ScaledProxProvider,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Outcome {
            pass: true,
            detail: summary,
        }
    } else {
        let shown: Vec<_> = failures.iter().take(3).cloned().collect();
        Outcome {
            pass: false,
            detail: format!("{summary}; {} failures, e.g. {}", failures.len(), shown.join(" | ")),
        }
    }
}

fn median_time(mut f: impl FnMut()) -> Duration {
    let mut times: Vec<Duration> = (0..21)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed()
        })
        .collect();
    times.sort();
    times[10]
}

// Zero of an increasing 1-D function by bisection, down to adjacent floats.
fn bisect_increasing(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    loop {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            return m;
        }
        if f(m) < 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
}

fn huber_sqrt(alpha: f64, beta: f64, n: usize) -> PerspectivePair {
    PerspectivePair::new(
        Arc::new(HuberBase::new(alpha, n).unwrap()),
        Arc::new(SqrtScaling::new(beta, 1).unwrap()),
    )
    .unwrap()
}

fn criterion_1() -> Outcome {
    let pair = huber_sqrt(1.0, 1.0, 2);
    let cfg = RootConfig::default();
    let mut failures = Vec::new();

    let a = prox_perspective(&pair, 1.0, &[3.0, 0.0], &[0.0], &cfg).unwrap();
    let err_a = dist(&concat(&a.p, &a.q), &[2.0, 0.0, 0.0]);
    if err_a > 1e-10 || a.label != CaseLabel::Xi2 {
        failures.push(format!("((3,0),0): {a:?}"));
    }

    let b = prox_perspective(&pair, 1.0, &[1.0, 0.0], &[0.0], &cfg).unwrap();
    // By symmetry q = 0, so p minimizes (u^2 + 1)/2 + (1 - u)^2 / 2, whose
    // derivative is u - (1 - u).
    let u = bisect_increasing(|u| u - (1.0 - u), -2.0, 2.0);
    let err_b = dist(&concat(&b.p, &b.q), &[u, 0.0, 0.0]);
    if err_b > 1e-10 || (b.eta - 0.375).abs() > 1e-8 {
        failures.push(format!("((1,0),0): {b:?} vs calculus {u}"));
    }

    let ta = median_time(|| {
        prox_perspective(&pair, 1.0, &[3.0, 0.0], &[0.0], &cfg).unwrap();
    });
    let tb = median_time(|| {
        prox_perspective(&pair, 1.0, &[1.0, 0.0], &[0.0], &cfg).unwrap();
    });
    if ta >= Duration::from_millis(1) || tb >= Duration::from_millis(1) {
        failures.push(format!("slow: {ta:?}, {tb:?}"));
    }
    outcome(
        failures,
        format!(
            "errors {err_a:.1e} (Xi2), {err_b:.1e} (eta={:.12}), median times {ta:?} / {tb:?}",
            b.eta
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let cfg = RootConfig::default();
    let mut failures = Vec::new();
    let mut counts = std::collections::BTreeMap::new();
    for i in 0..10_000 {
        let inst = random_instance(Family::PowerRoot, &mut rng);
        let x = match i % 3 {
            0 => vec![0.0; inst.n],
            _ => random_vec(&mut rng, inst.n, 2.0),
        };
        let y = if i % 7 == 0 { 0.0 } else { rng.random_range(-2.0..3.0) };
        let label = classify(&inst.pair, inst.gamma, &x, &[y], &cfg).unwrap();
        let expected = if x.iter().any(|v| *v != 0.0) {
            CaseLabel::Omega4
        } else if y <= 0.0 {
            CaseLabel::Omega1
        } else {
            CaseLabel::Omega3
        };
        *counts.entry(label).or_insert(0usize) += 1;
        if label != expected {
            failures.push(format!("{} x={x:?} y={y}: {label} (want {expected})", inst.params));
        }
    }
    for _ in 0..10_000 {
        let inst = random_instance(Family::HuberSqrt, &mut rng);
        let (x, y) = random_input(&inst, &mut rng);
        let label = classify(&inst.pair, inst.gamma, &x, &y, &cfg).unwrap();
        *counts.entry(label).or_insert(0usize) += 1;
        if matches!(label, CaseLabel::Xi1 | CaseLabel::Xi3) {
            failures.push(format!("{} x={x:?} y={y:?}: {label}", inst.params));
        }
    }
    let summary = counts
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ");
    outcome(failures, format!("20000 inputs, labels {summary}"))
}

struct OracleRun {
    max_dev: f64,
    worst_gap_ratio: f64,
    root_failures: Vec<String>,
    root_inputs: usize,
    max_residual: f64,
    max_iters: usize,
    max_eta_gap: f64,
}

fn oracle_runs() -> (Vec<String>, OracleRun) {
    let cfg = RootConfig::default();
    let ocfg = OracleConfig::default();
    let mut failures = Vec::new();
    let mut run = OracleRun {
        max_dev: 0.0,
        worst_gap_ratio: 0.0,
        root_failures: Vec::new(),
        root_inputs: 0,
        max_residual: 0.0,
        max_iters: 0,
        max_eta_gap: 0.0,
    };
    for (k, family) in FAMILIES.into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(30 + k as u64);
        for _ in 0..200 {
            let inst = random_instance(family, &mut rng);
            let (x, y) = random_input(&inst, &mut rng);
            let r = match prox_perspective(&inst.pair, inst.gamma, &x, &y, &cfg) {
                Ok(r) => r,
                Err(e) => {
                    failures.push(format!("{} {} x={x:?} y={y:?}: solver {e}", family.name(), inst.params));
                    continue;
                }
            };
            let o = match brute_force_perspective_prox(&inst.pair, inst.gamma, &x, &y, &ocfg) {
                Ok(o) => o,
                Err(e) => {
                    failures.push(format!("{} {} x={x:?} y={y:?}: oracle {e}", family.name(), inst.params));
                    continue;
                }
            };
            let dev = dist(&concat(&r.p, &r.q), &concat(&o.p, &o.q));
            let in_norm2 = norm(&x).powi(2) + norm(&y).powi(2);
            let gap_ratio = r.certificate_gap / (1e-8 * (1.0 + in_norm2));
            run.max_dev = run.max_dev.max(dev);
            run.worst_gap_ratio = run.worst_gap_ratio.max(gap_ratio);
            if dev > 5e-4 || !(gap_ratio <= 1.0) {
                failures.push(format!(
                    "{} {} x={x:?} y={y:?}: dev {dev:.2e} gap {:.2e} label {}",
                    family.name(),
                    inst.params,
                    r.certificate_gap,
                    r.label
                ));
            }
            if r.label.needs_root() {
                run.root_inputs += 1;
                let res = multiplier_residual(&inst.pair, inst.gamma, &x, &y, r.eta).unwrap();
                let (_, hi) = multiplier_bracket(&inst.pair, inst.gamma, &x, &y, &cfg).unwrap();
                let alt = (0.0, 10.0 * hi + 3.0);
                let other = match inst.pair.regime() {
                    Regime::NonnegativeConjugate => solve_eta_case_i(&inst.pair, inst.gamma, &x, &y, &cfg, Some(alt)),
                    _ => solve_eta_case_iii(&inst.pair, inst.gamma, &x, &y, &cfg, Some(alt)),
                };
                let eta_gap = other.as_ref().map_or(f64::INFINITY, |o| (o.eta - r.eta).abs());
                run.max_residual = run.max_residual.max(res.abs());
                run.max_iters = run.max_iters.max(r.root_iterations);
                run.max_eta_gap = run.max_eta_gap.max(eta_gap);
                if res.abs() > 1e-10 || r.root_iterations > 200 || !(eta_gap <= 1e-12) {
                    run.root_failures.push(format!(
                        "{} {} x={x:?} y={y:?}: |T|={:.1e} iters={} eta gap {eta_gap:.1e}",
                        family.name(),
                        inst.params,
                        res.abs(),
                        r.root_iterations
                    ));
                }
            }
        }
    }
    (failures, run)
}

fn criteria_3_and_4() -> (Outcome, Outcome, Duration) {
    let t = Instant::now();
    let (mut failures, run) = oracle_runs();
    let elapsed = t.elapsed();
    if elapsed > Duration::from_secs(60) {
        failures.push(format!("took {elapsed:?}"));
    }
    let c3 = outcome(
        failures,
        format!(
            "600 inputs, max deviation {:.2e}, worst gap / (1e-8 (1+|in|^2)) = {:.2e}",
            run.max_dev, run.worst_gap_ratio
        ),
    );
    let c4 = outcome(
        run.root_failures,
        format!(
            "{} root inputs, max |T| {:.1e}, max iterations {}, max bracket disagreement {:.1e}",
            run.root_inputs, run.max_residual, run.max_iters, run.max_eta_gap
        ),
    );
    (c3, c4, elapsed)
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();
    let mut worst = 0.0_f64;
    for i in 0..1000 {
        let n = rng.random_range(1..=3);
        let gamma = 10f64.powf(rng.random_range(-2.0..2.0));
        let x = random_vec(&mut rng, n, 5.0);
        let f: Box<dyn BaseFunction> = if i % 2 == 0 {
            Box::new(PowerBase::new(rng.random_range(1.2..4.0), n).unwrap())
        } else {
            Box::new(HuberBase::new(rng.random_range(0.2..3.0), n).unwrap())
        };
        let (p, d) = moreau_decompose(f.as_ref(), gamma, &x).unwrap();
        let r: Vec<f64> = (0..n).map(|k| x[k] - p[k] - gamma * d[k]).collect();
        let ratio = norm(&r) / (1e-10 * (1.0 + norm(&x)));
        worst = worst.max(ratio);
        if ratio > 1.0 {
            failures.push(format!("{f:?} gamma={gamma} x={x:?}: {:.2e}", norm(&r)));
        }
    }
    outcome(
        failures,
        format!("1000 samples, worst residual / tolerance = {worst:.2e}"),
    )
}

fn value_curve_check<P: ScaledProxProvider + ?Sized>(
    name: &str,
    f: &P,
    x: &[f64],
    gammas: &[f64],
    failures: &mut Vec<String>,
) {
    let pts: Vec<Vec<f64>> = gammas.iter().map(|g| scaled_prox(f, *g, x).unwrap()).collect();
    let vals: Vec<ExtReal> = pts.iter().map(|p| f.eval(p)).collect();
    for i in 0..gammas.len() {
        let Some(vi) = vals[i].finite() else {
            failures.push(format!("{name} x={x:?}: infinite value at gamma={}", gammas[i]));
            continue;
        };
        for j in i + 1..gammas.len() {
            let vj = vals[j].finite().unwrap_or(f64::INFINITY);
            let d2 = dist(&pts[i], &pts[j]).powi(2);
            let bound = vi - d2 / (gammas[j] - gammas[i]) + 1e-8;
            if !(vj <= vi + 1e-8) || !(vj <= bound) {
                failures.push(format!(
                    "{name} x={x:?}: gammas {} -> {}: {vi} -> {vj}, bound {bound}",
                    gammas[i], gammas[j]
                ));
            }
        }
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = Vec::new();
    let mut gammas = vec![0.0];
    gammas.extend((0..50).map(|k| 10f64.powf(-3.0 + 6.0 * k as f64 / 49.0)));
    let mut checked = 0;
    for _ in 0..100 {
        let n = rng.random_range(1..=3);
        let x = random_vec(&mut rng, n, 4.0);
        let y = [rng.random_range(-3.0..4.0)];
        let power = PowerBase::new(rng.random_range(1.2..4.0), n).unwrap();
        let huber = HuberBase::new(rng.random_range(0.2..3.0), n).unwrap();
        let abs = AbsBase::new(n).unwrap();
        let root = RootScaling::new(
            rng.random_range(0.2..0.9),
            [1.0, 2.0, f64::INFINITY][rng.random_range(0..3)],
        )
        .unwrap();
        let sqrt = SqrtScaling::new(rng.random_range(0.1..3.0), 1).unwrap();
        let bases: [(&str, &dyn BaseFunction); 3] = [("power", &power), ("huber", &huber), ("abs", &abs)];
        for (name, b) in bases {
            value_curve_check(name, b, &x, &gammas, &mut failures);
            value_curve_check(&format!("{name}*"), &ConjugateOf(b), &x, &gammas, &mut failures);
            checked += 2;
        }
        value_curve_check("root envelope", &EnvelopeOf(&root), &y, &gammas, &mut failures);
        value_curve_check("sqrt envelope", &EnvelopeOf(&sqrt), &y, &gammas, &mut failures);
        checked += 2;
    }
    outcome(
        failures,
        format!("{checked} curves over 51 gammas (0 plus a 50-point log grid), all pairs checked"),
    )
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cfg = RootConfig::default();
    let mut failures = Vec::new();
    let mut worst = f64::NEG_INFINITY;
    for family in FAMILIES {
        for i in 0..1000 {
            let inst = random_instance(family, &mut rng);
            let (x1, y1) = random_input(&inst, &mut rng);
            let (x2, y2) = if i % 4 == 0 {
                // Nearby pairs probe the boundaries between labels.
                let s = 10f64.powf(rng.random_range(-6.0..-1.0));
                let dx = random_vec(&mut rng, inst.n, s);
                (
                    x1.iter().zip(&dx).map(|(a, b)| a + b).collect(),
                    vec![y1[0] + rng.random_range(-s..s)],
                )
            } else {
                random_input(&inst, &mut rng)
            };
            let a = prox_perspective(&inst.pair, inst.gamma, &x1, &y1, &cfg);
            let b = prox_perspective(&inst.pair, inst.gamma, &x2, &y2, &cfg);
            let (Ok(a), Ok(b)) = (a, b) else {
                failures.push(format!("{} {}: solver error", family.name(), inst.params));
                continue;
            };
            let dp: Vec<f64> = concat(&a.p, &a.q)
                .iter()
                .zip(concat(&b.p, &b.q))
                .map(|(u, v)| u - v)
                .collect();
            let du: Vec<f64> = concat(&x1, &y1)
                .iter()
                .zip(concat(&x2, &y2))
                .map(|(u, v)| u - v)
                .collect();
            let lhs: f64 = dp.iter().map(|v| v * v).sum();
            let rhs: f64 = dp.iter().zip(&du).map(|(u, v)| u * v).sum();
            worst = worst.max(lhs - rhs);
            if lhs > rhs + 1e-10 {
                failures.push(format!(
                    "{} {} ({x1:?},{y1:?}) vs ({x2:?},{y2:?}): excess {:.2e}",
                    family.name(),
                    inst.params,
                    lhs - rhs
                ));
            }
        }
    }
    outcome(
        failures,
        format!("3000 pairs, max |Pu-Pv|^2 - <Pu-Pv,u-v> = {worst:.2e}"),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();
    let (mut worst_quartic, mut worst_stat) = (0.0_f64, 0.0_f64);
    for _ in 0..1000 {
        let beta = rng.random_range(0.05..4.0);
        let mu = rng.random_range(0.0..5.0);
        let y = rng.random_range(-5.0..5.0);
        match sqrt_scaling_prox(beta, mu, y) {
            Ok(q) => {
                let inside = if y >= 0.0 {
                    (0.0..=y).contains(&q)
                } else {
                    (y..=0.0).contains(&q)
                };
                let qr = quartic_eval(&sqrt_prox_quartic(beta, mu, y), q).abs();
                let sr = sqrt_prox_stationarity(beta, mu, y, q).abs();
                worst_quartic = worst_quartic.max(qr);
                worst_stat = worst_stat.max(sr);
                if !inside || qr > 1e-9 || sr > 1e-10 {
                    failures.push(format!(
                        "beta={beta} mu={mu} y={y}: q={q} quartic {qr:.1e} stationarity {sr:.1e}"
                    ));
                }
            }
            Err(e) => failures.push(format!("beta={beta} mu={mu} y={y}: {e}")),
        }
    }
    outcome(
        failures,
        format!("1000 samples, max quartic residual {worst_quartic:.1e}, max stationarity residual {worst_stat:.1e}"),
    )
}

fn criterion_9() -> Outcome {
    let t = Instant::now();
    let problem = ConcomitantProblem::synthetic(2024, 40, 3, 1.0, 1.0).unwrap();
    let pair = huber_sqrt(1.0, 1.0, 3);
    let settings = FbSettings {
        tau: 1.0 / problem.lipschitz(),
        iterations: 500,
        w0: vec![0.0; 3],
        sigma0: 1.0,
    };
    let run = forward_backward(&pair, &problem, &settings, &RootConfig::default()).unwrap();
    let elapsed = t.elapsed();
    let mut failures = Vec::new();
    let reached = run.records.iter().find(|r| r.step_norm <= 1e-6).map(|r| r.iter);
    if reached.is_none() {
        failures.push(format!("final step norm {:.2e}", run.records.last().unwrap().step_norm));
    }
    let worst_rise = run
        .records
        .windows(2)
        .map(|w| w[1].objective - w[0].objective)
        .fold(f64::NEG_INFINITY, f64::max);
    if worst_rise > 1e-9 {
        failures.push(format!("objective rose by {worst_rise:.2e}"));
    }
    if elapsed >= Duration::from_secs(2) {
        failures.push(format!("took {elapsed:?}"));
    }
    outcome(
        failures,
        format!(
            "step_norm <= 1e-6 at iteration {reached:?}, largest objective increase {worst_rise:.1e}, final objective {:.10}, {elapsed:?}",
            run.records.last().unwrap().objective
        ),
    )
}

fn main() -> ExitCode {
    let mut all_pass = true;
    let mut report = |id: usize, title: &str, o: Outcome, elapsed: Duration| {
        all_pass &= o.pass;
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {id}: {title}: {} ({elapsed:.2?})", o.detail);
    };
    let timed = |f: fn() -> Outcome| {
        let t = Instant::now();
        let o = f();
        (o, t.elapsed())
    };

    let (o, t) = timed(criterion_1);
    report(1, "closed-form Huber/sqrt prox", o, t);
    let (o, t) = timed(criterion_2);
    report(2, "partition labels", o, t);
    let (c3, c4, t) = criteria_3_and_4();
    report(3, "oracle equivalence", c3, t);
    report(4, "multiplier root-finder", c4, t);
    let (o, t) = timed(criterion_5);
    report(5, "Moreau identity", o, t);
    let (o, t) = timed(criterion_6);
    report(6, "monotone value curve", o, t);
    let (o, t) = timed(criterion_7);
    report(7, "firm nonexpansiveness", o, t);
    let (o, t) = timed(criterion_8);
    report(8, "quartic solver", o, t);
    let (o, t) = timed(criterion_9);
    report(9, "forward-backward demo", o, t);

    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
