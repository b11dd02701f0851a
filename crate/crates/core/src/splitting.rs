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

//! Forward–backward splitting for location estimation with a concomitant
//! scale: minimize `½‖A w - b‖² + (kappa/2)(sigma - y0)² + (phi ⊳ s)(w, sigma)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::convex::{dot, ExtReal};
use crate::error::{Error, Result};
use crate::perspective::{perspective_eval, PerspectivePair};
use crate::prox::prox_perspective;
use crate::roots::RootConfig;

/// The smooth part `g(w, sigma) = ½‖A w - b‖² + (kappa/2)(sigma - y0)²`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcomitantProblem {
    rows: usize,
    cols: usize,
    /// Row-major `rows × cols`.
    a: Vec<f64>,
    b: Vec<f64>,
    kappa: f64,
    y0: f64,
}

impl ConcomitantProblem {
    pub fn new(a: Vec<Vec<f64>>, b: Vec<f64>, kappa: f64, y0: f64) -> Result<Self> {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyVector);
        }
        if let Some(bad) = a.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        if b.len() != rows {
            return Err(Error::DimensionMismatch {
                expected: rows,
                found: b.len(),
            });
        }
        if !(kappa >= 0.0) || !kappa.is_finite() || !y0.is_finite() {
            return Err(Error::InvalidParameter("kappa must be >= 0 and y0 finite".into()));
        }
        let a: Vec<f64> = a.into_iter().flatten().collect();
        if a.iter().chain(&b).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            rows,
            cols,
            a,
            b,
            kappa,
            y0,
        })
    }

    /// A reproducible regression problem: uniform design in `[-1, 1]`,
    /// observations from a fixed coefficient vector plus uniform noise, with
    /// every fifth observation shifted by a gross outlier.
    pub fn synthetic(seed: u64, rows: usize, cols: usize, kappa: f64, y0: f64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let truth: Vec<f64> = (0..cols).map(|j| 1.0 - 0.5 * j as f64).collect();
        let mut a = Vec::with_capacity(rows);
        let mut b = Vec::with_capacity(rows);
        for i in 0..rows {
            let row: Vec<f64> = (0..cols).map(|_| rng.random_range(-1.0..1.0)).collect();
            let mut obs = dot(&row, &truth) + 0.1 * rng.random_range(-1.0..1.0);
            if i % 5 == 4 {
                obs += 5.0;
            }
            a.push(row);
            b.push(obs);
        }
        Self::new(a, b, kappa, y0)
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    fn residual(&self, w: &[f64]) -> Vec<f64> {
        (0..self.rows).map(|i| dot(self.row(i), w) - self.b[i]).collect()
    }

    pub fn smooth_value(&self, w: &[f64], sigma: f64) -> f64 {
        let r = self.residual(w);
        0.5 * dot(&r, &r) + 0.5 * self.kappa * (sigma - self.y0).powi(2)
    }

    pub fn gradient(&self, w: &[f64], sigma: f64) -> (Vec<f64>, f64) {
        let r = self.residual(w);
        let mut gw = vec![0.0; self.cols];
        for (i, ri) in r.iter().enumerate() {
            for (g, aij) in gw.iter_mut().zip(self.row(i)) {
                *g += aij * ri;
            }
        }
        (gw, self.kappa * (sigma - self.y0))
    }

    /// Lipschitz constant of the gradient: `max(‖A‖₂², kappa)`.
    pub fn lipschitz(&self) -> f64 {
        let n = self.cols;
        let mut gram = vec![0.0; n * n];
        for i in 0..self.rows {
            let r = self.row(i);
            for j in 0..n {
                for k in 0..n {
                    gram[j * n + k] += r[j] * r[k];
                }
            }
        }
        // Power iteration on the Gram matrix; the Rayleigh quotient converges
        // from below, so a final relative margin keeps the bound safe.
        let mut v = vec![1.0; n];
        let mut lambda = 0.0;
        for _ in 0..500 {
            let w: Vec<f64> = (0..n).map(|j| dot(&gram[j * n..(j + 1) * n], &v)).collect();
            let nw = dot(&w, &w).sqrt();
            if nw == 0.0 {
                break;
            }
            let next = dot(&v, &w) / dot(&v, &v);
            v = w.into_iter().map(|t| t / nw).collect();
            if (next - lambda).abs() <= 1e-15 * next {
                lambda = next;
                break;
            }
            lambda = next;
        }
        (lambda * (1.0 + 1e-9)).max(self.kappa)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FbSettings {
    pub tau: f64,
    pub iterations: usize,
    pub w0: Vec<f64>,
    pub sigma0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FbRecord {
    pub iter: usize,
    pub objective: f64,
    pub step_norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FbRun {
    pub records: Vec<FbRecord>,
    pub w: Vec<f64>,
    pub sigma: f64,
}

/// Full objective `g + (phi ⊳ s)` at `(w, sigma)`.
pub fn concomitant_objective(
    pair: &PerspectivePair,
    problem: &ConcomitantProblem,
    w: &[f64],
    sigma: f64,
) -> Result<f64> {
    let h = perspective_eval(pair, w, &[sigma])?;
    Ok((h + problem.smooth_value(w, sigma)).to_f64())
}

/// Iterates `(w, sigma) ← prox_{tau (phi ⊳ s)}((w, sigma) - tau ∇g(w, sigma))`
/// and records the objective and step length after every iteration.
///
/// Requires `tau * L <= 1`, `L` the gradient's Lipschitz constant.
pub fn forward_backward(
    pair: &PerspectivePair,
    problem: &ConcomitantProblem,
    settings: &FbSettings,
    cfg: &RootConfig,
) -> Result<FbRun> {
    if pair.dims() != (problem.cols, 1) {
        return Err(Error::DimensionMismatch {
            expected: problem.cols,
            found: pair.dims().0,
        });
    }
    if settings.w0.len() != problem.cols {
        return Err(Error::DimensionMismatch {
            expected: problem.cols,
            found: settings.w0.len(),
        });
    }
    let tau = settings.tau;
    let lip = problem.lipschitz();
    if !(tau > 0.0) || tau * lip > 1.0 {
        return Err(Error::InvalidParameter(format!(
            "step size {tau} violates tau * L <= 1 with L = {lip}"
        )));
    }
    let mut w = settings.w0.clone();
    let mut sigma = settings.sigma0;
    if matches!(perspective_eval(pair, &w, &[sigma])?, ExtReal::PosInf) {
        return Err(Error::InvalidParameter("starting point outside the domain".into()));
    }
    let mut records = Vec::with_capacity(settings.iterations);
    for iter in 1..=settings.iterations {
        let (gw, gs) = problem.gradient(&w, sigma);
        let xw: Vec<f64> = w.iter().zip(&gw).map(|(a, b)| a - tau * b).collect();
        let ys = sigma - tau * gs;
        let out = prox_perspective(pair, tau, &xw, &[ys], cfg)?;
        let dw: f64 = out.p.iter().zip(&w).map(|(a, b)| (a - b) * (a - b)).sum();
        let step_norm = (dw + (out.q[0] - sigma).powi(2)).sqrt();
        w = out.p;
        sigma = out.q[0];
        records.push(FbRecord {
            iter,
            objective: concomitant_objective(pair, problem, &w, sigma)?,
            step_norm,
        });
    }
    Ok(FbRun { records, w, sigma })
}
