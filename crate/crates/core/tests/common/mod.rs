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

//! Random catalog instances shared by the integration tests.

#![allow(dead_code)]

use std::sync::Arc;

use persprox::catalog::{AbsBase, HuberBase, PowerBase, RootScaling, SqrtScaling};
use persprox::PerspectivePair;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    PowerRoot,
    HuberSqrt,
    AbsRoot,
}

pub const FAMILIES: [Family; 3] = [Family::PowerRoot, Family::HuberSqrt, Family::AbsRoot];

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::PowerRoot => "power/root",
            Family::HuberSqrt => "huber/sqrt",
            Family::AbsRoot => "abs/root",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub family: Family,
    pub pair: PerspectivePair,
    pub gamma: f64,
    pub n: usize,
    pub params: String,
}

pub fn random_instance(family: Family, rng: &mut ChaCha8Rng) -> Instance {
    let n = rng.random_range(1..=3);
    let gamma = rng.random_range(0.3..2.0);
    let uppers = [1.0, 2.0, 4.0, f64::INFINITY];
    let (pair, params) = match family {
        Family::PowerRoot => {
            let p = rng.random_range(1.5..3.0);
            let q = rng.random_range(0.3..0.8);
            let upper = uppers[rng.random_range(0..4)];
            (
                PerspectivePair::new(
                    Arc::new(PowerBase::new(p, n).unwrap()),
                    Arc::new(RootScaling::new(q, upper).unwrap()),
                )
                .unwrap(),
                format!("p={p} q={q} upper={upper}"),
            )
        }
        Family::HuberSqrt => {
            let alpha = rng.random_range(0.5..2.0);
            let beta = rng.random_range(0.25..2.0);
            (
                PerspectivePair::new(
                    Arc::new(HuberBase::new(alpha, n).unwrap()),
                    Arc::new(SqrtScaling::new(beta, 1).unwrap()),
                )
                .unwrap(),
                format!("alpha={alpha} beta={beta}"),
            )
        }
        Family::AbsRoot => {
            let q = rng.random_range(0.3..0.8);
            let upper = uppers[rng.random_range(0..3)];
            (
                PerspectivePair::new(
                    Arc::new(AbsBase::new(n).unwrap()),
                    Arc::new(RootScaling::new(q, upper).unwrap()),
                )
                .unwrap(),
                format!("q={q} upper={upper}"),
            )
        }
    };
    Instance {
        family,
        pair,
        gamma,
        n,
        params: format!("{params} gamma={gamma} n={n}"),
    }
}

pub fn random_vec(rng: &mut ChaCha8Rng, n: usize, half_width: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-half_width..half_width)).collect()
}

pub fn random_input(inst: &Instance, rng: &mut ChaCha8Rng) -> (Vec<f64>, Vec<f64>) {
    let half = if inst.family == Family::HuberSqrt { 4.0 } else { 2.0 };
    let x = random_vec(rng, inst.n, half);
    let y = vec![rng.random_range(-2.0..3.0)];
    (x, y)
}

pub fn concat(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().chain(b).copied().collect()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v) * (u - v)).sum::<f64>().sqrt()
}
