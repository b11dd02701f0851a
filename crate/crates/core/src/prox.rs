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

//! Prox of `gamma (phi ⊳ s)`.
//!
//! Each regime reduces the product-space prox to proxes of `phi*` and of the
//! scaling envelope, coupled through one scalar multiplier `eta >= 0`. In the
//! generic case `eta` is the root of `T(eta) = g(eta) + eta` with `g`
//! nondecreasing; closed forms cover inputs where `eta` is known upfront.

use std::fmt;

use crate::convex::{dist, dot, norm, ExtReal};
use crate::error::{Error, Result};
use crate::perspective::{perspective_conj_eval, perspective_eval, PerspectivePair, Regime};
use crate::roots::{expand_upper, solve_increasing, RootConfig, RootOutcome, RootStep};
use crate::scaled_prox::{scaled_prox_unchecked, ConjugateOf, EnvelopeOf};

/// Which branch of the case analysis produced a prox.
///
/// `Omega*` labels belong to the nonnegative-conjugate regime, `Xi*` to the
/// nonpositive one. Labels 1 to 3 are closed forms; label 4 needs a root-find.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    Omega1,
    Omega2,
    Omega3,
    Omega4,
    Xi1,
    Xi2,
    Xi3,
    Xi4,
    CaseII,
}

impl CaseLabel {
    pub fn name(self) -> &'static str {
        match self {
            CaseLabel::Omega1 => "Omega1",
            CaseLabel::Omega2 => "Omega2",
            CaseLabel::Omega3 => "Omega3",
            CaseLabel::Omega4 => "Omega4",
            CaseLabel::Xi1 => "Xi1",
            CaseLabel::Xi2 => "Xi2",
            CaseLabel::Xi3 => "Xi3",
            CaseLabel::Xi4 => "Xi4",
            CaseLabel::CaseII => "CaseII",
        }
    }

    pub fn needs_root(self) -> bool {
        matches!(self, CaseLabel::Omega4 | CaseLabel::Xi4)
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProxResult {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub eta: f64,
    pub label: CaseLabel,
    pub root_iterations: usize,
    /// Fenchel gap of the perspective at `(p, q)` against the dual point
    /// `((x - p) / gamma, (y - q) / gamma)`. Zero exactly at the prox.
    pub certificate_gap: f64,
}

/// A solved multiplier equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaSolution {
    pub eta: f64,
    pub residual: f64,
    pub iterations: usize,
}

impl From<RootOutcome> for EtaSolution {
    fn from(o: RootOutcome) -> Self {
        Self {
            eta: o.eta,
            residual: o.residual,
            iterations: o.iterations,
        }
    }
}

const PROBE_STEP: f64 = 1e-4;

/// Whether `value = f(at)` is zero up to rounding: within `classify_tol`
/// times the change of `f` under a relative perturbation of `at`. A small
/// but accurately computed value is not zero. Falls back to an absolute
/// test when `f` is infinite on both sides of `at`.
fn is_zero(f: impl Fn(&[f64]) -> ExtReal, at: &[f64], value: ExtReal, cfg: &RootConfig) -> bool {
    let ExtReal::Finite(v) = value else {
        return false;
    };
    if v == 0.0 {
        return true;
    }
    for factor in [1.0 - PROBE_STEP, 1.0 + PROBE_STEP] {
        let moved: Vec<f64> = at.iter().map(|t| t * factor).collect();
        if let ExtReal::Finite(w) = f(&moved) {
            return v.abs() <= cfg.classify_tol * (v - w).abs() / PROBE_STEP;
        }
    }
    v.abs() <= cfg.classify_tol * (1.0 + norm(at))
}

/// Everything derived from one `(pair, gamma, x, y)`.
struct Problem<'a> {
    pair: &'a PerspectivePair,
    gamma: f64,
    x: &'a [f64],
    y: &'a [f64],
    /// `x / gamma`.
    xg: Vec<f64>,
}

impl<'a> Problem<'a> {
    fn new(pair: &'a PerspectivePair, gamma: f64, x: &'a [f64], y: &'a [f64]) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::NonPositiveStep(gamma));
        }
        pair.check(x, y)?;
        if x.iter().chain(y).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            pair,
            gamma,
            x,
            y,
            xg: x.iter().map(|v| v / gamma).collect(),
        })
    }

    /// `prox_{w ⊙ phi*}(x / gamma)`.
    fn conj_prox(&self, w: f64) -> Vec<f64> {
        scaled_prox_unchecked(&ConjugateOf(self.pair.base()), w, &self.xg)
    }

    /// `prox_{w ⊙ env}(y)`.
    fn env_prox(&self, w: f64) -> Vec<f64> {
        scaled_prox_unchecked(&EnvelopeOf(self.pair.scaling()), w, self.y)
    }

    fn conj_at(&self, v: &[f64]) -> ExtReal {
        self.pair.base().conj_eval(v)
    }

    fn env_at(&self, v: &[f64]) -> ExtReal {
        self.pair.scaling().env_eval(v)
    }

    /// `x - gamma d`.
    fn primal_from_dual(&self, d: &[f64]) -> Vec<f64> {
        self.x.iter().zip(d).map(|(a, b)| a - self.gamma * b).collect()
    }

    /// Finite part of an extended value or `+inf` as a float. Prox outputs
    /// lie in the domain, so finite values are the norm here.
    fn value(v: ExtReal) -> f64 {
        v.to_f64()
    }

    /// Nonnegative-conjugate regime: `phi_2(eta) = phi*(prox_{(eta/gamma) ⊙ phi*}(x/gamma))`.
    fn omega_inner(&self, eta: f64) -> f64 {
        Self::value(self.conj_at(&self.conj_prox(eta / self.gamma)))
    }

    /// `phi_1(mu) = env(prox_{gamma mu ⊙ env} y)`, `env` the lower envelope of `-s`.
    fn omega_outer(&self, mu: f64) -> f64 {
        Self::value(self.env_at(&self.env_prox(self.gamma * mu)))
    }

    fn omega_t(&self, eta: f64) -> f64 {
        let inner = self.omega_inner(eta);
        if inner == f64::INFINITY {
            return f64::NEG_INFINITY;
        }
        self.omega_outer(inner) + eta
    }

    /// Nonpositive-conjugate regime: `psi_2(eta) = env(prox_{gamma eta ⊙ env} y)`,
    /// `env` the upper envelope of `s`.
    fn xi_inner(&self, eta: f64) -> f64 {
        Self::value(self.env_at(&self.env_prox(self.gamma * eta)))
    }

    /// `psi_1(mu) = phi*(prox_{(mu/gamma) ⊙ phi*}(x/gamma))`.
    fn xi_outer(&self, mu: f64) -> f64 {
        Self::value(self.conj_at(&self.conj_prox(mu / self.gamma)))
    }

    fn xi_t(&self, eta: f64) -> f64 {
        let inner = self.xi_inner(eta);
        if inner == f64::INFINITY {
            return f64::NEG_INFINITY;
        }
        self.xi_outer(inner) + eta
    }

    fn t(&self, eta: f64) -> f64 {
        match self.pair.regime() {
            Regime::NonnegativeConjugate => self.omega_t(eta),
            Regime::NonpositiveConjugate => self.xi_t(eta),
            Regime::ZeroInfty => eta,
        }
    }

    fn classify_omega(&self, cfg: &RootConfig) -> CaseLabel {
        let scaling = self.pair.scaling();
        let s_at = |v: &[f64]| scaling.eval(v);
        let conj = |v: &[f64]| self.conj_at(v);
        let d0 = self.conj_prox(0.0);
        let a0 = self.conj_at(&d0);
        let y0 = scaling.proj_cl_s(self.y);
        let c0 = scaling.eval(&y0);
        let a0_zero = is_zero(conj, &d0, a0, cfg);
        let c0_zero = is_zero(s_at, &y0, c0, cfg);
        if a0_zero && c0_zero {
            return CaseLabel::Omega1;
        }
        if let ExtReal::Finite(a0) = a0 {
            if !a0_zero && a0 > 0.0 {
                let q = self.env_prox(self.gamma * a0);
                if is_zero(s_at, &q, scaling.eval(&q), cfg) {
                    return CaseLabel::Omega2;
                }
            }
        }
        if let ExtReal::Finite(c0) = c0 {
            if !c0_zero && c0 > 0.0 {
                let d = self.conj_prox(c0 / self.gamma);
                if is_zero(conj, &d, self.conj_at(&d), cfg) {
                    return CaseLabel::Omega3;
                }
            }
        }
        CaseLabel::Omega4
    }

    fn classify_xi(&self, cfg: &RootConfig) -> CaseLabel {
        let env = |v: &[f64]| self.env_at(v);
        let conj = |v: &[f64]| self.conj_at(v);
        let q0 = self.env_prox(0.0);
        let d0 = self.conj_prox(0.0);
        let b0 = self.env_at(&q0);
        let a0 = self.conj_at(&d0);
        let b0_zero = is_zero(env, &q0, b0, cfg);
        let a0_zero = is_zero(conj, &d0, a0, cfg);
        if b0_zero && a0_zero {
            return CaseLabel::Xi1;
        }
        if let ExtReal::Finite(b0) = b0 {
            if !b0_zero && b0 > 0.0 {
                let d = self.conj_prox(b0 / self.gamma);
                if is_zero(conj, &d, self.conj_at(&d), cfg) {
                    return CaseLabel::Xi2;
                }
            }
        }
        if let ExtReal::Finite(a0) = a0 {
            if !a0_zero && a0 < 0.0 {
                let q = self.env_prox(self.gamma * -a0);
                if is_zero(env, &q, self.env_at(&q), cfg) {
                    return CaseLabel::Xi3;
                }
            }
        }
        CaseLabel::Xi4
    }

    fn classify(&self, cfg: &RootConfig) -> CaseLabel {
        match self.pair.regime() {
            Regime::NonnegativeConjugate => self.classify_omega(cfg),
            Regime::NonpositiveConjugate => self.classify_xi(cfg),
            Regime::ZeroInfty => CaseLabel::CaseII,
        }
    }

    /// The bracket `[0, max(1, -T(0)) + eta_tol]`. Since `T` has slope at
    /// least one, `T` is nonnegative at its right end; doubling covers the
    /// case where `T(0)` is not finite or round-off spoils that bound.
    fn default_bracket(&self, cfg: &RootConfig) -> Result<(f64, f64)> {
        let t0 = self.t(0.0);
        let hi = if t0.is_finite() {
            (-t0).max(1.0) + cfg.eta_tol
        } else {
            1.0
        };
        let mut f = |e: f64| self.t(e);
        let (hi, _) = expand_upper(&mut f, 0.0, hi, cfg)?;
        Ok((0.0, hi))
    }

    fn solve_eta(
        &self,
        bracket: Option<(f64, f64)>,
        cfg: &RootConfig,
        trace: Option<&mut Vec<RootStep>>,
    ) -> Result<EtaSolution> {
        let (lo, hi) = match bracket {
            Some(b) => b,
            None => self.default_bracket(cfg)?,
        };
        // T(0) >= 0 means the multiplier is zero; only possible through
        // round-off at a partition boundary.
        if lo == 0.0 {
            let t0 = self.t(0.0);
            if t0 >= 0.0 {
                return Ok(EtaSolution {
                    eta: 0.0,
                    residual: t0,
                    iterations: 0,
                });
            }
        }
        solve_increasing(|e| self.t(e), lo, hi, cfg, trace).map(Into::into)
    }

    fn assemble(&self, label: CaseLabel, eta: f64) -> (Vec<f64>, Vec<f64>) {
        let g = self.gamma;
        match label {
            CaseLabel::Omega1 => (
                self.primal_from_dual(&self.conj_prox(0.0)),
                self.pair.scaling().proj_cl_s(self.y),
            ),
            CaseLabel::Omega2 => {
                let a0 = self.omega_inner(0.0);
                (self.primal_from_dual(&self.conj_prox(0.0)), self.env_prox(g * a0))
            }
            CaseLabel::Omega3 | CaseLabel::Omega4 => {
                let d = self.conj_prox(eta / g);
                let mu = Self::value(self.conj_at(&d));
                let q = if label == CaseLabel::Omega3 {
                    self.pair.scaling().proj_cl_s(self.y)
                } else {
                    self.env_prox(g * mu)
                };
                (self.primal_from_dual(&d), q)
            }
            CaseLabel::Xi1 => (
                self.primal_from_dual(&self.conj_prox(0.0)),
                self.pair.scaling().proj_cl_conv_s(self.y),
            ),
            CaseLabel::Xi2 => {
                let b0 = self.xi_inner(0.0);
                (
                    self.primal_from_dual(&self.conj_prox(b0 / g)),
                    self.pair.scaling().proj_cl_conv_s(self.y),
                )
            }
            CaseLabel::Xi3 | CaseLabel::Xi4 => {
                let q = self.env_prox(g * eta);
                let mu = Self::value(self.env_at(&q));
                (self.primal_from_dual(&self.conj_prox(mu / g)), q)
            }
            CaseLabel::CaseII => (
                self.pair.base().prox(g, self.x),
                self.pair.scaling().proj_cl_conv_s(self.y),
            ),
        }
    }

    fn closed_form_eta(&self, label: CaseLabel) -> f64 {
        match label {
            CaseLabel::Omega3 => Self::value(self.pair.scaling().eval(&self.pair.scaling().proj_cl_s(self.y))),
            CaseLabel::Xi3 => -self.xi_outer(0.0),
            _ => 0.0,
        }
    }

    fn run(&self, cfg: &RootConfig, trace: Option<&mut Vec<RootStep>>) -> Result<ProxResult> {
        cfg.validate()?;
        let label = self.classify(cfg);
        let (eta, iterations) = if label.needs_root() {
            let sol = self.solve_eta(None, cfg, trace)?;
            (sol.eta, sol.iterations)
        } else {
            (self.closed_form_eta(label), 0)
        };
        let (p, q) = self.assemble(label, eta);
        let certificate_gap = certificate(self.pair, self.gamma, self.x, self.y, &p, &q)?;
        Ok(ProxResult {
            p,
            q,
            eta,
            label,
            root_iterations: iterations,
            certificate_gap,
        })
    }
}

/// Prox of `gamma (phi ⊳ s)` at `(x, y)`.
pub fn prox_perspective(
    pair: &PerspectivePair,
    gamma: f64,
    x: &[f64],
    y: &[f64],
    cfg: &RootConfig,
) -> Result<ProxResult> {
    Problem::new(pair, gamma, x, y)?.run(cfg, None)
}

/// [`prox_perspective`] together with every root-finder evaluation. The
/// trace is empty for closed-form labels.
pub fn prox_perspective_traced(
    pair: &PerspectivePair,
    gamma: f64,
    x: &[f64],
    y: &[f64],
    cfg: &RootConfig,
) -> Result<(ProxResult, Vec<RootStep>)> {
    let mut trace = Vec::new();
    let out = Problem::new(pair, gamma, x, y)?.run(cfg, Some(&mut trace))?;
    Ok((out, trace))
}

fn expect_regime(pair: &PerspectivePair, want: Regime) -> Result<()> {
    let found = pair.regime();
    if found == want {
        Ok(())
    } else {
        Err(Error::WrongRegime {
            expected: want.name(),
            found: found.name(),
        })
    }
}

/// Label of `(x, y)` for a pair with a nonnegative conjugate.
pub fn classify_case_i(
    pair: &PerspectivePair,
    gamma: f64,
    x: &[f64],
    y: &[f64],
    cfg: &RootConfig,
) -> Result<CaseLabel> {
    expect_regime(pair, Regime::NonnegativeConjugate)?;
    Ok(Problem::new(pair, gamma, x, y)?.classify(cfg))
}

/// Label of `(x, y)` for a pair with a nonpositive conjugate.
pub fn classify_case_iii(
    pair: &PerspectivePair,
    gamma: f64,
    x: &[f64],
    y: &[f64],
    cfg: &RootConfig,
) -> Result<CaseLabel> {
    expect_regime(pair, Regime::NonpositiveConjugate)?;
    Ok(Problem::new(pair, gamma, x, y)?.classify(cfg))
}

/// Label of `(x, y)` under whichever regime the pair belongs to.
pub fn classify(pair: &PerspectivePair, gamma: f64, x: &[f64], y: &[f64], cfg: &RootConfig) -> Result<CaseLabel> {
    Ok(Problem::new(pair, gamma, x, y)?.classify(cfg))
}

/// The multiplier equation `T(eta)` at `eta >= 0` (the identity for pairs
/// with a zero/infinity conjugate).
pub fn multiplier_residual(pair: &PerspectivePair, gamma: f64, x: &[f64], y: &[f64], eta: f64) -> Result<f64> {
    if !(eta >= 0.0) {
        return Err(Error::NegativeScale(eta));
    }
    Ok(Problem::new(pair, gamma, x, y)?.t(eta))
}

/// Default root bracket for the multiplier equation.
pub fn multiplier_bracket(
    pair: &PerspectivePair,
    gamma: f64,
    x: &[f64],
    y: &[f64],
    cfg: &RootConfig,
) -> Result<(f64, f64)> {
    Problem::new(pair, gamma, x, y)?.default_bracket(cfg)
}

/// Multiplier for a nonnegative-conjugate pair, with the default bracket
/// unless one is given. The input should carry the `Omega4` label.
pub fn solve_eta_case_i(
    pair: &PerspectivePair,
    gamma: f64,
    x: &[f64],
    y: &[f64],
    cfg: &RootConfig,
    bracket: Option<(f64, f64)>,
) -> Result<EtaSolution> {
    expect_regime(pair, Regime::NonnegativeConjugate)?;
    cfg.validate()?;
    Problem::new(pair, gamma, x, y)?.solve_eta(bracket, cfg, None)
}

/// Multiplier for a nonpositive-conjugate pair; see [`solve_eta_case_i`].
pub fn solve_eta_case_iii(
    pair: &PerspectivePair,
    gamma: f64,
    x: &[f64],
    y: &[f64],
    cfg: &RootConfig,
    bracket: Option<(f64, f64)>,
) -> Result<EtaSolution> {
    expect_regime(pair, Regime::NonpositiveConjugate)?;
    cfg.validate()?;
    Problem::new(pair, gamma, x, y)?.solve_eta(bracket, cfg, None)
}

/// Prox for a pair whose base conjugate only takes the values `0` and
/// `+inf`: `(prox_{gamma phi} x, proj_{cl conv S} y)`.
pub fn case_ii_prox(pair: &PerspectivePair, gamma: f64, x: &[f64], y: &[f64]) -> Result<ProxResult> {
    expect_regime(pair, Regime::ZeroInfty)?;
    Problem::new(pair, gamma, x, y)?.run(&RootConfig::default(), None)
}

/// Fenchel gap certifying `(p, q)` as the prox of `gamma (phi ⊳ s)` at
/// `(x, y)`; independent of how `(p, q)` was computed.
///
/// A dual point that misses the closed conjugate domain by rounding only
/// (relative distance `1e-9`) is projected onto it first.
pub fn certificate(pair: &PerspectivePair, gamma: f64, x: &[f64], y: &[f64], p: &[f64], q: &[f64]) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(Error::NonPositiveStep(gamma));
    }
    pair.check(x, y)?;
    pair.check(p, q)?;
    let mut u: Vec<f64> = x.iter().zip(p).map(|(a, b)| (a - b) / gamma).collect();
    let w: Vec<f64> = y.iter().zip(q).map(|(a, b)| (a - b) / gamma).collect();
    let primal = perspective_eval(pair, p, q)?;
    let mut dual = perspective_conj_eval(pair, &u, &w)?;
    if dual.is_pos_inf() {
        let snapped = pair.base().proj_dom_conj(&u);
        if dist(&snapped, &u) <= 1e-9 * (1.0 + norm(&u)) {
            u = snapped;
            dual = perspective_conj_eval(pair, &u, &w)?;
        }
    }
    Ok((primal + dual + (-(dot(p, &u) + dot(q, &w)))).to_f64())
}
