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

//! Shared vocabulary: extended reals, vectors, product points, the base and
//! scaling function contracts, and the Fenchel–Young gap.

use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};

/// A value in `[-inf, +inf]`.
///
/// Proper convex functions only produce `Finite` or `PosInf`; `NegInf` shows
/// up in raw evaluations of concave scaling functions outside their domain.
/// Infinities are genuine variants and never encoded as large floats.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum ExtReal {
    NegInf,
    Finite(f64),
    PosInf,
}

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal::Finite(0.0);

    /// Maps IEEE infinities onto the matching variants.
    ///
    /// # Panics
    ///
    /// Panics on NaN, which never denotes a valid extended real.
    pub fn from_f64(v: f64) -> Self {
        assert!(!v.is_nan(), "NaN is not an extended real");
        if v == f64::INFINITY {
            ExtReal::PosInf
        } else if v == f64::NEG_INFINITY {
            ExtReal::NegInf
        } else {
            ExtReal::Finite(v)
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            ExtReal::NegInf => f64::NEG_INFINITY,
            ExtReal::Finite(v) => v,
            ExtReal::PosInf => f64::INFINITY,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn is_pos_inf(self) -> bool {
        matches!(self, ExtReal::PosInf)
    }

    /// Multiplication by a strictly positive real.
    pub fn scale(self, c: f64) -> Self {
        debug_assert!(c > 0.0, "ExtReal::scale needs c > 0, got {c}");
        match self {
            ExtReal::Finite(v) => ExtReal::Finite(c * v),
            other => other,
        }
    }

    /// `+inf` for `false`, `0` for `true`.
    pub fn indicator(inside: bool) -> Self {
        if inside {
            ExtReal::ZERO
        } else {
            ExtReal::PosInf
        }
    }
}

impl std::ops::Neg for ExtReal {
    type Output = ExtReal;

    fn neg(self) -> ExtReal {
        match self {
            ExtReal::NegInf => ExtReal::PosInf,
            ExtReal::Finite(v) => ExtReal::Finite(-v),
            ExtReal::PosInf => ExtReal::NegInf,
        }
    }
}

/// Inf-addition: `+inf` absorbs everything, including `-inf`.
impl Add for ExtReal {
    type Output = ExtReal;

    fn add(self, rhs: ExtReal) -> ExtReal {
        match (self, rhs) {
            (ExtReal::PosInf, _) | (_, ExtReal::PosInf) => ExtReal::PosInf,
            (ExtReal::NegInf, _) | (_, ExtReal::NegInf) => ExtReal::NegInf,
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a + b),
        }
    }
}

impl Add<f64> for ExtReal {
    type Output = ExtReal;

    fn add(self, rhs: f64) -> ExtReal {
        self + ExtReal::Finite(rhs)
    }
}

impl From<f64> for ExtReal {
    fn from(v: f64) -> Self {
        ExtReal::from_f64(v)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::Finite(v) => write!(f, "{v}"),
            ExtReal::PosInf => f.write_str("+inf"),
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(u, v)| u * v).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    // hypot-style accumulation keeps tiny and huge entries from under/overflowing.
    let scale = a.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let s: f64 = a.iter().map(|v| (v / scale) * (v / scale)).sum();
    scale * s.sqrt()
}

pub fn norm_sq(a: &[f64]) -> f64 {
    dot(a, a)
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let d: Vec<f64> = a.iter().zip(b).map(|(u, v)| u - v).collect();
    norm(&d)
}

/// `a + c * b`.
pub fn axpy(a: &[f64], c: f64, b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(u, v)| u + c * v).collect()
}

pub fn scaled(a: &[f64], c: f64) -> Vec<f64> {
    a.iter().map(|v| c * v).collect()
}

pub(crate) fn check_dim(v: &[f64], expected: usize) -> Result<()> {
    if v.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: v.len(),
        });
    }
    Ok(())
}

pub(crate) fn check_finite(v: &[f64]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::EmptyVector);
    }
    if v.iter().all(|t| t.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

/// A pair `(x, y)` in the product of the base space and the scaling space.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl Point {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        check_finite(&x)?;
        check_finite(&y)?;
        Ok(Self { x, y })
    }

    pub fn norm(&self) -> f64 {
        (norm_sq(&self.x) + norm_sq(&self.y)).sqrt()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.x.len(), self.y.len())
    }
}

/// Range of the conjugate of a base function. Selects which of the three
/// prox regimes applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConjugateSignClass {
    /// `phi*` takes values in `[0, +inf]` and is somewhere in `]0, +inf[`.
    NonnegativeConjugate,
    /// `phi*` takes only the values `0` and `+inf`.
    ZeroInftyConjugate,
    /// `phi*` takes values in `]-inf, 0] ∪ {+inf}` and is somewhere negative.
    NonpositiveConjugate,
}

impl ConjugateSignClass {
    pub fn name(self) -> &'static str {
        match self {
            ConjugateSignClass::NonnegativeConjugate => "nonnegative-conjugate",
            ConjugateSignClass::ZeroInftyConjugate => "zero-infty-conjugate",
            ConjugateSignClass::NonpositiveConjugate => "nonpositive-conjugate",
        }
    }

    /// Whether a sampled conjugate value is consistent with the class, up to `tol`.
    pub fn admits(self, value: ExtReal, tol: f64) -> bool {
        match (self, value) {
            (_, ExtReal::NegInf) => false,
            (_, ExtReal::PosInf) => true,
            (ConjugateSignClass::NonnegativeConjugate, ExtReal::Finite(v)) => v >= -tol,
            (ConjugateSignClass::ZeroInftyConjugate, ExtReal::Finite(v)) => v.abs() <= tol,
            (ConjugateSignClass::NonpositiveConjugate, ExtReal::Finite(v)) => v <= tol,
        }
    }
}

/// Which of `s` and `-s` is proper, lower semicontinuous and convex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalingKind {
    /// `-s` is convex; the relevant envelope is the lower envelope of `-s`.
    NegSLower,
    /// `s` is convex; the relevant envelope is the upper envelope of `s`.
    SLower,
}

impl ScalingKind {
    pub fn name(self) -> &'static str {
        match self {
            ScalingKind::NegSLower => "neg-s-lower",
            ScalingKind::SLower => "s-lower",
        }
    }
}

/// Base function contract. Implementations must be proper, lower
/// semicontinuous and convex, and supply their conjugate in closed form.
pub trait BaseFunction: Send + Sync + fmt::Debug {
    fn dim(&self) -> usize;

    /// `phi(x)`.
    fn eval(&self, x: &[f64]) -> ExtReal;

    /// `phi*(x*)`.
    fn conj_eval(&self, xs: &[f64]) -> ExtReal;

    /// Prox of `gamma * phi`, `gamma > 0`.
    fn prox(&self, gamma: f64, x: &[f64]) -> Vec<f64>;

    /// Prox of `gamma * phi*`, `gamma > 0`.
    fn prox_conj(&self, gamma: f64, x: &[f64]) -> Vec<f64>;

    /// Projection onto the closure of `dom phi`.
    fn proj_dom(&self, x: &[f64]) -> Vec<f64>;

    /// Projection onto the closure of `dom phi*`.
    fn proj_dom_conj(&self, x: &[f64]) -> Vec<f64>;

    /// Recession function `rec phi`.
    fn rec_eval(&self, x: &[f64]) -> ExtReal;

    fn sign_class(&self) -> ConjugateSignClass;
}

/// Scaling function contract.
///
/// `env` below is the lower envelope of `-s` for [`ScalingKind::NegSLower`]
/// and the upper envelope of `s` for [`ScalingKind::SLower`]; both are proper
/// lsc convex functions supplied in closed form.
pub trait ScalingFunction: Send + Sync + fmt::Debug {
    fn dim(&self) -> usize;

    /// Raw `s(y)`, possibly `-inf`.
    fn eval(&self, y: &[f64]) -> ExtReal;

    fn env_eval(&self, y: &[f64]) -> ExtReal;

    /// Conjugate of the envelope.
    fn env_conj_eval(&self, ys: &[f64]) -> ExtReal;

    /// Prox of `mu ⊙ env`: the projection onto `cl dom env` when `mu == 0`.
    fn prox_env(&self, mu: f64, y: &[f64]) -> Vec<f64>;

    /// Projection onto `cl S`, `S = s^{-1}(]0, +inf[)`. Only meaningful when
    /// `cl S` is convex, which holds for [`ScalingKind::NegSLower`].
    fn proj_cl_s(&self, y: &[f64]) -> Vec<f64>;

    fn proj_cl_conv_s(&self, y: &[f64]) -> Vec<f64>;

    /// Support function of `cl conv S`.
    fn support_cl_conv_s(&self, ys: &[f64]) -> ExtReal;

    fn kind(&self) -> ScalingKind;

    fn in_cl_conv_s(&self, y: &[f64]) -> bool {
        self.proj_cl_conv_s(y).as_slice() == y
    }
}

/// `f(x) + f*(x*) - <x, x*>`, nonnegative for every proper `f`.
pub fn fenchel_young_gap(f: &dyn BaseFunction, x: &[f64], xs: &[f64]) -> Result<ExtReal> {
    check_dim(x, f.dim())?;
    check_dim(xs, f.dim())?;
    Ok(f.eval(x) + f.conj_eval(xs) + (-dot(x, xs)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inf_addition_absorbs() {
        assert_eq!(ExtReal::Finite(1.0) + ExtReal::PosInf, ExtReal::PosInf);
        assert_eq!(ExtReal::NegInf + ExtReal::PosInf, ExtReal::PosInf);
        assert_eq!(ExtReal::NegInf + ExtReal::Finite(-3.0), ExtReal::NegInf);
        assert_eq!(ExtReal::Finite(1.5) + 2.0, ExtReal::Finite(3.5));
    }

    #[test]
    fn ordering_matches_extended_line() {
        assert!(ExtReal::NegInf < ExtReal::Finite(-1e300));
        assert!(ExtReal::Finite(1e300) < ExtReal::PosInf);
        assert!(ExtReal::Finite(-1.0) < ExtReal::Finite(0.0));
    }

    #[test]
    fn ieee_round_trip() {
        assert_eq!(ExtReal::from_f64(f64::INFINITY), ExtReal::PosInf);
        assert_eq!(ExtReal::from_f64(f64::NEG_INFINITY), ExtReal::NegInf);
        assert_eq!(ExtReal::PosInf.to_f64(), f64::INFINITY);
        assert_eq!(ExtReal::PosInf.to_string(), "+inf");
    }

    #[test]
    #[should_panic]
    fn nan_rejected() {
        let _ = ExtReal::from_f64(f64::NAN);
    }

    #[test]
    fn norm_is_zero_only_at_origin() {
        assert_eq!(norm(&[0.0, 0.0]), 0.0);
        assert_eq!(norm(&[3.0, 4.0]), 5.0);
        assert!(norm(&[1e-200, 1e-200]) > 0.0);
        assert!((norm(&[1e200, 1e200]) - 2f64.sqrt() * 1e200).abs() < 1e186);
    }

    #[test]
    fn point_rejects_non_finite() {
        assert_eq!(Point::new(vec![f64::NAN], vec![0.0]), Err(Error::NonFinite));
        assert_eq!(Point::new(vec![1.0], vec![f64::INFINITY]), Err(Error::NonFinite));
        assert_eq!(Point::new(vec![], vec![0.0]), Err(Error::EmptyVector));
    }

    #[test]
    fn sign_class_admission() {
        use ConjugateSignClass::*;
        assert!(NonnegativeConjugate.admits(ExtReal::Finite(0.0), 0.0));
        assert!(!NonnegativeConjugate.admits(ExtReal::Finite(-1e-9), 1e-12));
        assert!(ZeroInftyConjugate.admits(ExtReal::PosInf, 0.0));
        assert!(!ZeroInftyConjugate.admits(ExtReal::Finite(0.5), 1e-12));
        assert!(NonpositiveConjugate.admits(ExtReal::Finite(-2.0), 0.0));
        assert!(!NonpositiveConjugate.admits(ExtReal::NegInf, 0.0));
    }
}
