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

//! Real roots of monic cubics and quartics (Cardano / Ferrari), with Newton
//! polishing.

use std::f64::consts::PI;

/// Real roots of `x^3 + a x^2 + b x + c`, largest first, each polished.
pub fn cubic_real_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let p = b - a * a / 3.0;
    let r = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let shift = -a / 3.0;
    let disc = 0.25 * r * r + p * p * p / 27.0;
    let mut roots = if disc > 0.0 {
        let sq = disc.sqrt();
        // Avoid cancellation by computing the larger-magnitude term first.
        let u = (-0.5 * r - r.signum() * sq).cbrt();
        let z = if u == 0.0 { 0.0 } else { u - p / (3.0 * u) };
        vec![z + shift]
    } else if p == 0.0 {
        vec![shift]
    } else {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * r / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        (0..3)
            .map(|k| m * (theta - 2.0 * PI * k as f64 / 3.0).cos() + shift)
            .collect()
    };
    for x in roots.iter_mut() {
        for _ in 0..3 {
            let f = ((*x + a) * *x + b) * *x + c;
            let df = (3.0 * *x + 2.0 * a) * *x + b;
            if df == 0.0 {
                break;
            }
            let next = *x - f / df;
            if !next.is_finite() || next == *x {
                break;
            }
            let fn_ = ((next + a) * next + b) * next + c;
            if fn_.abs() > f.abs() {
                break;
            }
            *x = next;
        }
    }
    roots.sort_by(|u, v| v.total_cmp(u));
    roots
}

fn quadratic_real_roots(b: f64, c: f64, slack: f64, out: &mut Vec<f64>) {
    // x^2 + b x + c
    let mut disc = b * b - 4.0 * c;
    if disc < 0.0 && disc > -slack {
        disc = 0.0;
    }
    if disc < 0.0 {
        return;
    }
    let sq = disc.sqrt();
    let big = -0.5 * (b + b.signum() * sq);
    if big == 0.0 {
        out.push(0.0);
        out.push(0.0);
    } else {
        out.push(big);
        out.push(c / big);
    }
}

/// Evaluates `c[0] x^4 + c[1] x^3 + ... + c[4]`.
pub fn quartic_eval(c: &[f64; 5], x: f64) -> f64 {
    c.iter().fold(0.0, |acc, &k| acc * x + k)
}

fn quartic_deriv(c: &[f64; 5], x: f64) -> f64 {
    ((4.0 * c[0] * x + 3.0 * c[1]) * x + 2.0 * c[2]) * x + c[3]
}

/// Real roots of the quartic `x^4 + c[1] x^3 + c[2] x^2 + c[3] x + c[4]`
/// (`c[0]` must be one), via Ferrari's resolvent cubic. Near-double roots
/// may be reported once or twice.
pub fn quartic_real_roots(c: &[f64; 5]) -> Vec<f64> {
    debug_assert_eq!(c[0], 1.0);
    let (b, cc, d, e) = (c[1], c[2], c[3], c[4]);
    let b2 = b * b;
    let p = cc - 3.0 * b2 / 8.0;
    let q = d - b * cc / 2.0 + b2 * b / 8.0;
    let r = e - b * d / 4.0 + b2 * cc / 16.0 - 3.0 * b2 * b2 / 256.0;
    let shift = -b / 4.0;
    let scale = 1.0 + p.abs() + q.abs().sqrt() + r.abs().sqrt();
    let slack = 1e-12 * scale * scale;

    let mut ts = Vec::with_capacity(4);
    let m = if q.abs() <= 1e-14 * scale * scale.sqrt() {
        None
    } else {
        cubic_real_roots(p, 0.25 * p * p - r, -0.125 * q * q)
            .into_iter()
            .find(|m| *m > 0.0)
    };
    match m {
        None => {
            // Biquadratic: t^4 + p t^2 + r.
            let mut squares = Vec::new();
            quadratic_real_roots(p, r, slack, &mut squares);
            for w in squares {
                if w >= 0.0 {
                    let t = w.sqrt();
                    ts.push(t);
                    ts.push(-t);
                } else if w > -slack {
                    ts.push(0.0);
                }
            }
        }
        Some(m) => {
            let s = (2.0 * m).sqrt();
            quadratic_real_roots(-s, 0.5 * p + m + q / (2.0 * s), slack, &mut ts);
            quadratic_real_roots(s, 0.5 * p + m - q / (2.0 * s), slack, &mut ts);
        }
    }

    ts.into_iter()
        .map(|t| {
            let mut x = t + shift;
            for _ in 0..2 {
                let df = quartic_deriv(c, x);
                if df == 0.0 {
                    break;
                }
                let next = x - quartic_eval(c, x) / df;
                if next.is_finite() && quartic_eval(c, next).abs() <= quartic_eval(c, x).abs() {
                    x = next;
                }
            }
            x
        })
        .collect()
}
