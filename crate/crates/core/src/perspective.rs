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

//! Evaluation of perspectives `phi ⊳ s` and of their conjugates.

use std::fmt;
use std::sync::Arc;

use crate::convex::{check_dim, dot, BaseFunction, ConjugateSignClass, ExtReal, ScalingFunction, ScalingKind};
use crate::error::{Error, Result};

/// Which of the three closed-form regimes a pair falls into, determined by
/// the range of the base conjugate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `phi* >= 0`, `-s` convex.
    NonnegativeConjugate,
    /// `phi*` only takes the values `0` and `+inf`.
    ZeroInfty,
    /// `phi* <= 0` on its domain, `s` convex.
    NonpositiveConjugate,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::NonnegativeConjugate => "nonnegative-conjugate",
            Regime::ZeroInfty => "zero-infty",
            Regime::NonpositiveConjugate => "nonpositive-conjugate",
        }
    }
}

/// A base function and a scaling function whose perspective is well defined.
#[derive(Clone)]
pub struct PerspectivePair {
    base: Arc<dyn BaseFunction>,
    scaling: Arc<dyn ScalingFunction>,
}

impl fmt::Debug for PerspectivePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PerspectivePair")
            .field("base", &self.base)
            .field("scaling", &self.scaling)
            .finish()
    }
}

impl PerspectivePair {
    /// Rejects combinations outside the supported regimes: a nonnegative
    /// conjugate needs a concave scaling, a nonpositive one a convex scaling.
    pub fn new(base: Arc<dyn BaseFunction>, scaling: Arc<dyn ScalingFunction>) -> Result<Self> {
        use ConjugateSignClass::*;
        let ok = match base.sign_class() {
            NonnegativeConjugate => scaling.kind() == ScalingKind::NegSLower,
            NonpositiveConjugate => scaling.kind() == ScalingKind::SLower,
            ZeroInftyConjugate => true,
        };
        if !ok {
            return Err(Error::IncompatiblePair {
                base: base.sign_class().name(),
                scaling: scaling.kind().name(),
            });
        }
        Ok(Self { base, scaling })
    }

    pub fn base(&self) -> &dyn BaseFunction {
        self.base.as_ref()
    }

    pub fn scaling(&self) -> &dyn ScalingFunction {
        self.scaling.as_ref()
    }

    /// `(n, m)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.base.dim(), self.scaling.dim())
    }

    pub fn regime(&self) -> Regime {
        match self.base.sign_class() {
            ConjugateSignClass::NonnegativeConjugate => Regime::NonnegativeConjugate,
            ConjugateSignClass::ZeroInftyConjugate => Regime::ZeroInfty,
            ConjugateSignClass::NonpositiveConjugate => Regime::NonpositiveConjugate,
        }
    }

    pub(crate) fn check(&self, x: &[f64], y: &[f64]) -> Result<()> {
        check_dim(x, self.base.dim())?;
        check_dim(y, self.scaling.dim())
    }
}

fn scaled_base(base: &dyn BaseFunction, x: &[f64], s: f64) -> ExtReal {
    let xs: Vec<f64> = x.iter().map(|v| v / s).collect();
    base.eval(&xs).scale(s)
}

/// `s(y) phi(x / s(y))` where `0 < s(y) < +inf`, `+inf` elsewhere.
pub fn preperspective_eval(pair: &PerspectivePair, x: &[f64], y: &[f64]) -> Result<ExtReal> {
    pair.check(x, y)?;
    Ok(match pair.scaling().eval(y) {
        ExtReal::Finite(s) if s > 0.0 => scaled_base(pair.base(), x, s),
        _ => ExtReal::PosInf,
    })
}

/// The perspective: the largest lsc convex minorant of the preperspective.
pub fn perspective_eval(pair: &PerspectivePair, x: &[f64], y: &[f64]) -> Result<ExtReal> {
    pair.check(x, y)?;
    let (base, scaling) = (pair.base(), pair.scaling());
    let s = scaling.eval(y);
    Ok(match pair.regime() {
        Regime::ZeroInfty => {
            if scaling.in_cl_conv_s(y) {
                base.eval(x)
            } else {
                ExtReal::PosInf
            }
        }
        Regime::NonnegativeConjugate => match s {
            ExtReal::Finite(s) if s > 0.0 => scaled_base(base, x, s),
            ExtReal::Finite(0.0) => base.rec_eval(x),
            _ => ExtReal::PosInf,
        },
        Regime::NonpositiveConjugate => match s {
            ExtReal::Finite(s) if s > 0.0 => scaled_base(base, x, s),
            ExtReal::PosInf => ExtReal::PosInf,
            _ if scaling.in_cl_conv_s(y) => base.rec_eval(x),
            _ => ExtReal::PosInf,
        },
    })
}

/// `t phi(x / t)` for `t > 0`, `rec phi (x)` at `t = 0`, `+inf` for `t < 0`.
pub fn linear_perspective_eval(phi: &dyn BaseFunction, x: &[f64], t: f64) -> Result<ExtReal> {
    check_dim(x, phi.dim())?;
    if !t.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(if t > 0.0 {
        scaled_base(phi, x, t)
    } else if t == 0.0 {
        phi.rec_eval(x)
    } else {
        ExtReal::PosInf
    })
}

/// Conjugate of the perspective at `(xs, ys)`.
pub fn perspective_conj_eval(pair: &PerspectivePair, xs: &[f64], ys: &[f64]) -> Result<ExtReal> {
    pair.check(xs, ys)?;
    let (base, scaling) = (pair.base(), pair.scaling());
    let c = base.conj_eval(xs);
    let weighted_env = |w: f64| {
        let v: Vec<f64> = ys.iter().map(|t| t / w).collect();
        scaling.env_conj_eval(&v).scale(w)
    };
    Ok(match (pair.regime(), c) {
        (_, ExtReal::PosInf) => ExtReal::PosInf,
        (_, ExtReal::NegInf) => unreachable!("conjugate of a proper function is > -inf"),
        (_, ExtReal::Finite(0.0)) => scaling.support_cl_conv_s(ys),
        (Regime::ZeroInfty, _) => ExtReal::PosInf,
        (Regime::NonnegativeConjugate, ExtReal::Finite(c)) if c > 0.0 => weighted_env(c),
        (Regime::NonpositiveConjugate, ExtReal::Finite(c)) if c < 0.0 => weighted_env(-c),
        // A conjugate value of the wrong sign breaks the declared class.
        _ => ExtReal::PosInf,
    })
}

/// Fenchel gap of the perspective at `(x, y)` against `(xs, ys)`.
pub fn perspective_fenchel_gap(
    pair: &PerspectivePair,
    x: &[f64],
    y: &[f64],
    xs: &[f64],
    ys: &[f64],
) -> Result<ExtReal> {
    let primal = perspective_eval(pair, x, y)?;
    let dual = perspective_conj_eval(pair, xs, ys)?;
    Ok(primal + dual + (-(dot(x, xs) + dot(y, ys))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{AbsBase, HuberBase, IdentityIntervalScaling, PowerBase, RootScaling, SqrtScaling};

    fn huber_sqrt() -> PerspectivePair {
        PerspectivePair::new(
            Arc::new(HuberBase::new(1.0, 2).unwrap()),
            Arc::new(SqrtScaling::new(1.0, 1).unwrap()),
        )
        .unwrap()
    }

    #[test]
    fn incompatible_pairs_rejected() {
        let err = PerspectivePair::new(
            Arc::new(PowerBase::new(2.0, 1).unwrap()),
            Arc::new(SqrtScaling::new(1.0, 1).unwrap()),
        )
        .unwrap_err();
        assert!(matches!(err, Error::IncompatiblePair { .. }));
        assert!(PerspectivePair::new(
            Arc::new(HuberBase::new(1.0, 1).unwrap()),
            Arc::new(RootScaling::new(0.5, 1.0).unwrap()),
        )
        .is_err());
    }

    #[test]
    fn preperspective_examples() {
        let pair = PerspectivePair::new(
            Arc::new(PowerBase::new(2.0, 1).unwrap()),
            Arc::new(IdentityIntervalScaling::linear()),
        )
        .unwrap();
        assert_eq!(
            preperspective_eval(&pair, &[2.0], &[1.0]).unwrap(),
            ExtReal::Finite(2.0)
        );
        assert_eq!(
            preperspective_eval(&pair, &[2.0], &[2.0]).unwrap(),
            ExtReal::Finite(1.0)
        );
        assert_eq!(preperspective_eval(&pair, &[2.0], &[0.0]).unwrap(), ExtReal::PosInf);
    }

    #[test]
    fn huber_sqrt_values() {
        let pair = huber_sqrt();
        assert_eq!(
            perspective_eval(&pair, &[3.0, 0.0], &[0.0]).unwrap(),
            ExtReal::Finite(3.0)
        );
        assert_eq!(
            perspective_eval(&pair, &[0.0, 0.0], &[0.0]).unwrap(),
            ExtReal::Finite(0.5)
        );
    }

    #[test]
    fn power_root_value() {
        let pair = PerspectivePair::new(
            Arc::new(PowerBase::new(2.0, 2).unwrap()),
            Arc::new(RootScaling::new(0.5, 4.0).unwrap()),
        )
        .unwrap();
        let v = perspective_eval(&pair, &[2.0, 0.0], &[4.0]).unwrap().finite().unwrap();
        assert!((v - 1.0).abs() < 1e-15);
        // s(y) = 0 uses the recession function.
        assert_eq!(perspective_eval(&pair, &[0.0, 0.0], &[0.0]).unwrap(), ExtReal::ZERO);
        assert_eq!(perspective_eval(&pair, &[1.0, 0.0], &[0.0]).unwrap(), ExtReal::PosInf);
        assert_eq!(perspective_eval(&pair, &[1.0, 0.0], &[5.0]).unwrap(), ExtReal::PosInf);
    }

    #[test]
    fn linear_perspective_examples() {
        let sq = PowerBase::new(2.0, 1).unwrap();
        assert_eq!(linear_perspective_eval(&sq, &[2.0], 2.0).unwrap(), ExtReal::Finite(1.0));
        assert_eq!(linear_perspective_eval(&sq, &[1.0], 0.0).unwrap(), ExtReal::PosInf);
        let abs = AbsBase::new(1).unwrap();
        assert_eq!(
            linear_perspective_eval(&abs, &[3.0], 0.0).unwrap(),
            ExtReal::Finite(3.0)
        );
        assert_eq!(linear_perspective_eval(&abs, &[3.0], -1.0).unwrap(), ExtReal::PosInf);
    }

    #[test]
    fn zero_infty_conjugate_examples() {
        let pair = PerspectivePair::new(
            Arc::new(AbsBase::new(1).unwrap()),
            Arc::new(RootScaling::new(0.5, 1.0).unwrap()),
        )
        .unwrap();
        assert_eq!(perspective_conj_eval(&pair, &[0.5], &[-2.0]).unwrap(), ExtReal::ZERO);
        assert_eq!(perspective_conj_eval(&pair, &[2.0], &[0.0]).unwrap(), ExtReal::PosInf);
        assert_eq!(
            perspective_conj_eval(&pair, &[0.5], &[2.0]).unwrap(),
            ExtReal::Finite(2.0)
        );
    }

    #[test]
    fn zero_conjugate_gives_support_function() {
        let pair = PerspectivePair::new(
            Arc::new(PowerBase::new(3.0, 1).unwrap()),
            Arc::new(RootScaling::new(0.5, 2.0).unwrap()),
        )
        .unwrap();
        assert_eq!(
            perspective_conj_eval(&pair, &[0.0], &[1.5]).unwrap(),
            ExtReal::Finite(3.0)
        );
        assert_eq!(perspective_conj_eval(&pair, &[0.0], &[-1.5]).unwrap(), ExtReal::ZERO);
    }

    #[test]
    fn fenchel_young_holds_on_a_grid() {
        let pair = huber_sqrt();
        for &(x0, y0, u0, w0) in &[(1.0, 0.5, 0.3, -0.2), (-3.0, 2.0, -0.9, 0.4), (0.2, -1.0, 0.0, 0.0)] {
            let g = perspective_fenchel_gap(&pair, &[x0, 0.1], &[y0], &[u0, 0.05], &[w0]).unwrap();
            assert!(g.to_f64() >= -1e-12, "{g}");
        }
    }
}
