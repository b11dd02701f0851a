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

//! Derivative-free brute-force prox, used as independent ground truth.
//!
//! A coarse grid over a box around the input finds a feasible starting point;
//! golden-section line searches along the coordinate axes, the pairwise
//! diagonals, the pull back toward the input and the last net move then
//! refine it. Intended for total dimension at most four.

use crate::convex::{norm, ExtReal};
use crate::error::{Error, Result};
use crate::perspective::{perspective_eval, PerspectivePair};
use crate::prox::certificate;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Box half-width, relative to `1 + ‖(x, y)‖`.
    pub radius_factor: f64,
    /// Grid resolution per dimension, capped by `max_grid_points`.
    pub coarse_points_per_dim: usize,
    /// Stop once a full sweep moves the point less than this.
    pub refine_tol: f64,
    pub max_refine_iters: usize,
    /// Upper bound on the total number of grid points.
    pub max_grid_points: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            radius_factor: 1.5,
            coarse_points_per_dim: 61,
            refine_tol: 1e-8,
            max_refine_iters: 500,
            max_grid_points: 50_000,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.radius_factor > 0.0
            && self.radius_factor.is_finite()
            && self.coarse_points_per_dim >= 2
            && self.refine_tol > 0.0
            && self.max_refine_iters > 0
            && self.max_grid_points >= 8;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter("oracle settings must be positive".into()))
        }
    }

    fn points_per_dim(&self, d: usize) -> usize {
        let cap = (self.max_grid_points as f64).powf(1.0 / d as f64).floor() as usize;
        let k = self.coarse_points_per_dim.min(cap).max(3);
        if k.is_multiple_of(2) {
            k - 1
        } else {
            k
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSolution {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub objective: f64,
    pub sweeps: usize,
}

const MAX_DIM: usize = 4;
const GRID_STARTS: usize = 4;
const PROBES_PER_DIM: usize = 8;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

struct Objective<'a> {
    eval: &'a dyn Fn(&[f64], &[f64]) -> ExtReal,
    gamma: f64,
    z0: Vec<f64>,
    n: usize,
}

impl Objective<'_> {
    fn at(&self, z: &[f64]) -> f64 {
        let (u, v) = z.split_at(self.n);
        match (self.eval)(u, v) {
            ExtReal::Finite(f) => {
                let d2: f64 = z.iter().zip(&self.z0).map(|(a, b)| (a - b) * (a - b)).sum();
                self.gamma * f + 0.5 * d2
            }
            _ => f64::INFINITY,
        }
    }

    /// Minimizes along `z + t dir` (unit `dir`); returns the new point and value.
    fn line_search(&self, z: &[f64], fz: f64, dir: &[f64], step: f64, tol: f64) -> (Vec<f64>, f64) {
        let point = |t: f64| -> Vec<f64> { z.iter().zip(dir).map(|(a, b)| a + t * b).collect() };
        let h = |t: f64| self.at(&point(t));

        // Bracket a minimizer of the convex h, starting from h(0) = fz finite.
        let (mut a, mut b);
        let fp = h(step);
        if fp < fz {
            let (mut t, mut ft) = (step, fp);
            let mut s = step;
            loop {
                s *= 2.0;
                let next = t + s;
                let fnext = h(next);
                if !(fnext < ft) || s > 1e8 {
                    a = t - s / 2.0;
                    b = next;
                    break;
                }
                t = next;
                ft = fnext;
            }
        } else {
            let fm = h(-step);
            if fm < fz {
                let (mut t, mut ft) = (-step, fm);
                let mut s = step;
                loop {
                    s *= 2.0;
                    let next = t - s;
                    let fnext = h(next);
                    if !(fnext < ft) || s > 1e8 {
                        a = next;
                        b = t + s / 2.0;
                        break;
                    }
                    t = next;
                    ft = fnext;
                }
            } else {
                a = -step;
                b = step;
            }
        }

        // Golden section; infinite values order above every finite one.
        let mut c = b - INV_PHI * (b - a);
        let mut d = a + INV_PHI * (b - a);
        let (mut fc, mut fd) = (h(c), h(d));
        while b - a > tol {
            if fc <= fd {
                b = d;
                d = c;
                fd = fc;
                c = b - INV_PHI * (b - a);
                fc = h(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + INV_PHI * (b - a);
                fd = h(d);
            }
        }
        let (t, ft) = if fc <= fd { (c, fc) } else { (d, fd) };
        if ft < fz {
            (point(t), ft)
        } else {
            (z.to_vec(), fz)
        }
    }
}

fn unit(v: Vec<f64>) -> Option<Vec<f64>> {
    let n = norm(&v);
    if n > 1e-14 {
        Some(v.into_iter().map(|t| t / n).collect())
    } else {
        None
    }
}

/// Approximate minimizer of `gamma * eval(u, v) + ½‖(u, v) - (x, y)‖²`.
///
/// Fails if no grid point is feasible or if the refined optimum sits on the
/// boundary of the search box.
pub fn brute_force_prox(
    eval: &dyn Fn(&[f64], &[f64]) -> ExtReal,
    gamma: f64,
    x: &[f64],
    y: &[f64],
    cfg: &OracleConfig,
) -> Result<OracleSolution> {
    cfg.validate()?;
    if !(gamma > 0.0) {
        return Err(Error::NonPositiveStep(gamma));
    }
    let d = x.len() + y.len();
    if x.is_empty() || y.is_empty() || d > MAX_DIM {
        return Err(Error::Oracle(format!(
            "total dimension must be in 2..={MAX_DIM}, got {d}"
        )));
    }
    let z0: Vec<f64> = x.iter().chain(y).copied().collect();
    let obj = Objective {
        eval,
        gamma,
        z0: z0.clone(),
        n: x.len(),
    };
    let radius = cfg.radius_factor * (1.0 + norm(&z0));

    // Coarse grid.
    let k = cfg.points_per_dim(d);
    let h = 2.0 * radius / (k - 1) as f64;
    let mut idx = vec![0usize; d];
    // The input and the origin join the grid so that degenerate domains
    // through either are still found.
    let mut starts: Vec<(Vec<f64>, f64)> = Vec::new();
    for seed in [z0.clone(), vec![0.0; d]] {
        let f = obj.at(&seed);
        if f.is_finite() {
            starts.push((seed, f));
        }
    }
    let mut best_grid: Vec<(Vec<f64>, f64)> = Vec::new();
    let mut z = vec![0.0; d];
    loop {
        for i in 0..d {
            z[i] = z0[i] - radius + h * idx[i] as f64;
        }
        let f = obj.at(&z);
        if f.is_finite() && (best_grid.len() < GRID_STARTS || f < best_grid[GRID_STARTS - 1].1) {
            let at = best_grid.partition_point(|(_, g)| *g <= f);
            best_grid.insert(at, (z.clone(), f));
            best_grid.truncate(GRID_STARTS);
        }
        let mut i = 0;
        while i < d {
            idx[i] += 1;
            if idx[i] < k {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == d {
            break;
        }
    }
    starts.extend(best_grid);
    if starts.is_empty() {
        return Err(Error::Oracle("every grid point is infeasible".into()));
    }

    // Fixed direction set: axes and pairwise diagonals.
    let mut dirs: Vec<Vec<f64>> = Vec::new();
    for i in 0..d {
        let mut e = vec![0.0; d];
        e[i] = 1.0;
        dirs.push(e);
    }
    for i in 0..d {
        for j in i + 1..d {
            for s in [1.0, -1.0] {
                let mut e = vec![0.0; d];
                e[i] = std::f64::consts::FRAC_1_SQRT_2;
                e[j] = s * std::f64::consts::FRAC_1_SQRT_2;
                dirs.push(e);
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x0dd_ba11);
    let mut best: Option<(Vec<f64>, f64, usize)> = None;
    for (z, fz) in starts {
        let (z, fz, sweeps) = refine(&obj, z, fz, &dirs, h, cfg, &mut rng)?;
        if best.as_ref().is_none_or(|(_, fb, _)| fz < *fb) {
            best = Some((z, fz, sweeps));
        }
    }
    let (mut z, fz, sweeps) = best.expect("at least one start");
    if z.iter().zip(&z0).any(|(a, b)| (a - b).abs() >= radius * (1.0 - 1e-9)) {
        return Err(Error::Oracle("optimum on the search box boundary".into()));
    }
    let q = z.split_off(x.len());
    Ok(OracleSolution {
        p: z,
        q,
        objective: fz,
        sweeps,
    })
}

/// Line-search descent from one start. After the sweeps settle, random
/// directions probe for descent that the direction sets miss at kinks.
fn refine(
    obj: &Objective,
    mut z: Vec<f64>,
    mut fz: f64,
    dirs: &[Vec<f64>],
    h: f64,
    cfg: &OracleConfig,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<f64>, f64, usize)> {
    let d = z.len();
    let z0 = &obj.z0;
    // Powell set: starts at the axes and absorbs net displacements, which
    // follows curved valleys that fixed directions only crawl along.
    let axes: Vec<Vec<f64>> = dirs[..d].to_vec();
    let mut powell = axes.clone();
    let mut step = h;
    let mut sweeps = 0;
    let mut quiet = 0;
    let mut converged = false;
    while sweeps < cfg.max_refine_iters {
        if converged {
            // Probe; resume the sweeps if some direction still descends.
            let mut improved = false;
            for _ in 0..PROBES_PER_DIM * d {
                let dir: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
                let Some(dir) = unit(dir) else { continue };
                let (nz, nf) = obj.line_search(&z, fz, &dir, 10.0 * cfg.refine_tol, 0.1 * cfg.refine_tol);
                if nf < fz - 1e-15 * (1.0 + fz.abs()) {
                    improved = true;
                }
                z = nz;
                fz = nf;
            }
            if !improved {
                break;
            }
            converged = false;
            quiet = 0;
            step = (100.0 * cfg.refine_tol).min(h);
        }
        sweeps += 1;
        if sweeps % (2 * d + 2) == 0 {
            powell = axes.clone();
        }
        let start = z.clone();
        let f_start = fz;
        let line_tol = (0.1 * cfg.refine_tol).max(1e-3 * step.min(1.0) * cfg.refine_tol.sqrt());

        let mut biggest = (0usize, 0.0f64);
        for (i, dir) in powell.iter().enumerate() {
            let (nz, nf) = obj.line_search(&z, fz, dir, step, line_tol);
            if fz - nf > biggest.1 {
                biggest = (i, fz - nf);
            }
            z = nz;
            fz = nf;
        }
        if let Some(u) = unit(z.iter().zip(&start).map(|(a, b)| a - b).collect()) {
            let (nz, nf) = obj.line_search(&z, fz, &u, step, line_tol);
            z = nz;
            fz = nf;
            powell[biggest.0] = u;
        }

        let mut extra: Vec<Vec<f64>> = Vec::new();
        if let Some(u) = unit(z0.iter().zip(&z).map(|(a, b)| a - b).collect()) {
            extra.push(u);
        }
        for dir in dirs.iter().chain(extra.iter()) {
            let (nz, nf) = obj.line_search(&z, fz, dir, step, line_tol);
            z = nz;
            fz = nf;
        }

        let total = z.iter().zip(&start).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        step = (2.0 * total).max(10.0 * cfg.refine_tol).min(h);
        let decrease = f_start - fz;
        if total < cfg.refine_tol && decrease <= 1e-14 * (1.0 + fz.abs()) {
            quiet += 1;
            if quiet >= 2 {
                converged = true;
            }
        } else {
            quiet = 0;
        }
    }
    if !converged {
        return Err(Error::Oracle(format!(
            "refinement did not settle within {sweeps} sweeps"
        )));
    }
    Ok((z, fz, sweeps))
}

/// [`brute_force_prox`] applied to `gamma (phi ⊳ s)`.
pub fn brute_force_perspective_prox(
    pair: &PerspectivePair,
    gamma: f64,
    x: &[f64],
    y: &[f64],
    cfg: &OracleConfig,
) -> Result<OracleSolution> {
    pair.check(x, y)?;
    let eval = |u: &[f64], v: &[f64]| perspective_eval(pair, u, v).unwrap_or(ExtReal::PosInf);
    brute_force_prox(&eval, gamma, x, y, cfg)
}

/// Fenchel gap of a proposed prox `(p, q)`; small values certify optimality
/// independently of the solver that produced `(p, q)`.
pub fn subgradient_certificate(
    pair: &PerspectivePair,
    gamma: f64,
    x: &[f64],
    y: &[f64],
    p: &[f64],
    q: &[f64],
) -> Result<f64> {
    certificate(pair, gamma, x, y, p, q)
}
