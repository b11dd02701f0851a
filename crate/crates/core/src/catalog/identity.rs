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

//! `s(y) = y` restricted to an interval `[lo, hi]`, with `hi > 0`.
//!
//! Outside the interval `s` is `-inf` ([`ScalingKind::NegSLower`]) or `+inf`
//! ([`ScalingKind::SLower`]). With `lo = -inf`, `hi = +inf` and the first
//! kind this is the classical linear scaling, whose perspective is
//! `t phi(x / t)`.

use crate::convex::{ExtReal, ScalingFunction, ScalingKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityIntervalScaling {
    lo: f64,
    hi: f64,
    kind: ScalingKind,
}

impl IdentityIntervalScaling {
    pub fn new(lo: f64, hi: f64, kind: ScalingKind) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || !(hi > 0.0) || !(lo < hi) || lo == f64::INFINITY {
            return Err(Error::InvalidParameter(format!(
                "identity scaling needs lo < hi and hi > 0, got [{lo}, {hi}]"
            )));
        }
        Ok(Self { lo, hi, kind })
    }

    /// `s(y) = y` on the whole line, concave side.
    pub fn linear() -> Self {
        Self {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
            kind: ScalingKind::NegSLower,
        }
    }

    pub fn bounds(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    /// Left end of `cl S = [max(lo, 0), hi]`.
    fn s_lo(&self) -> f64 {
        self.lo.max(0.0)
    }

    fn clamp_s(&self, y: f64) -> f64 {
        y.clamp(self.s_lo(), self.hi)
    }

    /// `sup { z c : z in cl S }`.
    fn sup_linear(&self, c: f64) -> ExtReal {
        if c > 0.0 {
            ExtReal::from_f64(self.hi * c)
        } else if c < 0.0 {
            ExtReal::Finite(self.s_lo() * c)
        } else {
            ExtReal::ZERO
        }
    }
}

impl ScalingFunction for IdentityIntervalScaling {
    fn dim(&self) -> usize {
        1
    }

    fn eval(&self, y: &[f64]) -> ExtReal {
        let y = y[0];
        if y >= self.lo && y <= self.hi {
            ExtReal::Finite(y)
        } else if self.kind == ScalingKind::NegSLower {
            ExtReal::NegInf
        } else {
            ExtReal::PosInf
        }
    }

    fn env_eval(&self, y: &[f64]) -> ExtReal {
        let y = y[0];
        if y < self.s_lo() || y > self.hi {
            return ExtReal::PosInf;
        }
        match self.kind {
            ScalingKind::NegSLower => ExtReal::Finite(-y),
            ScalingKind::SLower => ExtReal::Finite(y),
        }
    }

    fn env_conj_eval(&self, ys: &[f64]) -> ExtReal {
        match self.kind {
            ScalingKind::NegSLower => self.sup_linear(ys[0] + 1.0),
            ScalingKind::SLower => self.sup_linear(ys[0] - 1.0),
        }
    }

    fn prox_env(&self, mu: f64, y: &[f64]) -> Vec<f64> {
        let shifted = match self.kind {
            ScalingKind::NegSLower => y[0] + mu,
            ScalingKind::SLower => y[0] - mu,
        };
        vec![self.clamp_s(shifted)]
    }

    fn proj_cl_s(&self, y: &[f64]) -> Vec<f64> {
        vec![self.clamp_s(y[0])]
    }

    fn proj_cl_conv_s(&self, y: &[f64]) -> Vec<f64> {
        vec![self.clamp_s(y[0])]
    }

    fn support_cl_conv_s(&self, ys: &[f64]) -> ExtReal {
        self.sup_linear(ys[0])
    }

    fn kind(&self) -> ScalingKind {
        self.kind
    }
}
