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

//! The scaled function `xi ⊙ f` (equal to `xi * f` for `xi > 0` and to the
//! indicator of `cl dom f` for `xi = 0`) and the prox facts built on it.

use std::fmt;

use crate::convex::{check_dim, dist, dot, norm, BaseFunction, ExtReal, ScalingFunction};
use crate::error::{Error, Result};

/// Anything whose prox and domain projection are available.
pub trait ScaledProxProvider {
    fn dim(&self) -> usize;

    fn eval(&self, x: &[f64]) -> ExtReal;

    /// Prox of `gamma * f` for `gamma > 0`.
    fn prox(&self, gamma: f64, x: &[f64]) -> Vec<f64>;

    fn proj_cl_dom(&self, x: &[f64]) -> Vec<f64>;

    fn conj_eval(&self, _xs: &[f64]) -> Option<ExtReal> {
        None
    }

    /// Prox of `gamma * f*`.
    fn conj_prox(&self, _gamma: f64, _x: &[f64]) -> Option<Vec<f64>> {
        None
    }

    /// Support function of `cl dom f`.
    fn support_cl_dom(&self, _xs: &[f64]) -> Option<ExtReal> {
        None
    }
}

impl<T: BaseFunction + ?Sized> ScaledProxProvider for T {
    fn dim(&self) -> usize {
        BaseFunction::dim(self)
    }

    fn eval(&self, x: &[f64]) -> ExtReal {
        BaseFunction::eval(self, x)
    }

    fn prox(&self, gamma: f64, x: &[f64]) -> Vec<f64> {
        BaseFunction::prox(self, gamma, x)
    }

    fn proj_cl_dom(&self, x: &[f64]) -> Vec<f64> {
        self.proj_dom(x)
    }

    fn conj_eval(&self, xs: &[f64]) -> Option<ExtReal> {
        Some(BaseFunction::conj_eval(self, xs))
    }

    fn conj_prox(&self, gamma: f64, x: &[f64]) -> Option<Vec<f64>> {
        Some(self.prox_conj(gamma, x))
    }
}

/// The conjugate `f*` of a base function, viewed as a prox provider.
pub struct ConjugateOf<'a>(pub &'a dyn BaseFunction);

impl fmt::Debug for ConjugateOf<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConjugateOf({:?})", self.0)
    }
}

impl ScaledProxProvider for ConjugateOf<'_> {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn eval(&self, x: &[f64]) -> ExtReal {
        self.0.conj_eval(x)
    }

    fn prox(&self, gamma: f64, x: &[f64]) -> Vec<f64> {
        self.0.prox_conj(gamma, x)
    }

    fn proj_cl_dom(&self, x: &[f64]) -> Vec<f64> {
        self.0.proj_dom_conj(x)
    }

    fn conj_eval(&self, xs: &[f64]) -> Option<ExtReal> {
        Some(self.0.eval(xs))
    }

    fn conj_prox(&self, gamma: f64, x: &[f64]) -> Option<Vec<f64>> {
        Some(self.0.prox(gamma, x))
    }
}

/// The envelope of a scaling function, viewed as a prox provider.
pub struct EnvelopeOf<'a>(pub &'a dyn ScalingFunction);

impl fmt::Debug for EnvelopeOf<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EnvelopeOf({:?})", self.0)
    }
}

impl ScaledProxProvider for EnvelopeOf<'_> {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn eval(&self, y: &[f64]) -> ExtReal {
        self.0.env_eval(y)
    }

    fn prox(&self, gamma: f64, y: &[f64]) -> Vec<f64> {
        self.0.prox_env(gamma, y)
    }

    fn proj_cl_dom(&self, y: &[f64]) -> Vec<f64> {
        self.0.prox_env(0.0, y)
    }

    fn conj_eval(&self, ys: &[f64]) -> Option<ExtReal> {
        Some(self.0.env_conj_eval(ys))
    }

    fn support_cl_dom(&self, ys: &[f64]) -> Option<ExtReal> {
        // The envelope domain closure is cl S (convex here) or cl conv S.
        Some(self.0.support_cl_conv_s(ys))
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma.is_nan() || gamma < 0.0 || gamma == f64::INFINITY {
        return Err(Error::NegativeScale(gamma));
    }
    Ok(())
}

/// Prox of `gamma ⊙ f`: the projection onto `cl dom f` when `gamma` is
/// exactly zero, the prox of `gamma * f` otherwise.
pub fn scaled_prox<P: ScaledProxProvider + ?Sized>(f: &P, gamma: f64, x: &[f64]) -> Result<Vec<f64>> {
    check_gamma(gamma)?;
    check_dim(x, f.dim())?;
    Ok(scaled_prox_unchecked(f, gamma, x))
}

pub(crate) fn scaled_prox_unchecked<P: ScaledProxProvider + ?Sized>(f: &P, gamma: f64, x: &[f64]) -> Vec<f64> {
    if gamma == 0.0 {
        f.proj_cl_dom(x)
    } else {
        f.prox(gamma, x)
    }
}

/// Splits `x` into `(prox_{gamma f} x, prox_{f*/gamma}(x / gamma))`; the
/// two parts recombine as `x = p + gamma * d`.
pub fn moreau_decompose<P: ScaledProxProvider + ?Sized>(f: &P, gamma: f64, x: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::NonPositiveStep(gamma));
    }
    check_dim(x, f.dim())?;
    let p = f.prox(gamma, x);
    let xg: Vec<f64> = x.iter().map(|v| v / gamma).collect();
    let d = f.conj_prox(1.0 / gamma, &xg).ok_or(Error::MissingConjugate)?;
    Ok((p, d))
}

/// How a characterization gap was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapKind {
    /// Computed from the Fenchel equality; zero exactly at the prox.
    Exact,
    /// The conjugate of `gamma ⊙ f` was unavailable; the value is the largest
    /// violation of the variational inequality over a set of probe points.
    LowerBound,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacterizationGap {
    pub gap: ExtReal,
    pub kind: GapKind,
}

fn cl_dom_indicator<P: ScaledProxProvider + ?Sized>(f: &P, p: &[f64]) -> ExtReal {
    let proj = f.proj_cl_dom(p);
    ExtReal::indicator(dist(&proj, p) <= 1e-12 * (1.0 + norm(p)))
}

fn scaled_eval<P: ScaledProxProvider + ?Sized>(f: &P, gamma: f64, z: &[f64]) -> ExtReal {
    if gamma == 0.0 {
        cl_dom_indicator(f, z)
    } else {
        f.eval(z).scale(gamma)
    }
}

/// `(gamma ⊙ f)(p) + (gamma ⊙ f)*(x - p) - <p, x - p>`, which vanishes
/// exactly when `p` is the prox of `gamma ⊙ f` at `x`.
pub fn prox_characterization_gap<P: ScaledProxProvider + ?Sized>(
    f: &P,
    gamma: f64,
    x: &[f64],
    p: &[f64],
) -> Result<CharacterizationGap> {
    check_gamma(gamma)?;
    check_dim(x, f.dim())?;
    check_dim(p, f.dim())?;
    let r: Vec<f64> = x.iter().zip(p).map(|(a, b)| a - b).collect();
    let conj = if gamma == 0.0 {
        f.support_cl_dom(&r)
    } else {
        let rg: Vec<f64> = r.iter().map(|v| v / gamma).collect();
        f.conj_eval(&rg).map(|v| v.scale(gamma))
    };
    if let Some(conj) = conj {
        let gap = scaled_eval(f, gamma, p) + conj + (-dot(p, &r));
        return Ok(CharacterizationGap {
            gap,
            kind: GapKind::Exact,
        });
    }
    Ok(CharacterizationGap {
        gap: variational_violation(f, gamma, x, p),
        kind: GapKind::LowerBound,
    })
}

// p is the prox iff <z - p, x - p> + F(p) <= F(z) for all z.
fn variational_violation<P: ScaledProxProvider + ?Sized>(f: &P, gamma: f64, x: &[f64], p: &[f64]) -> ExtReal {
    let fp = scaled_eval(f, gamma, p);
    let Some(fp) = fp.finite() else {
        return ExtReal::PosInf;
    };
    let r: Vec<f64> = x.iter().zip(p).map(|(a, b)| a - b).collect();
    let mut probes: Vec<Vec<f64>> = vec![x.to_vec(), f.proj_cl_dom(x), vec![0.0; p.len()]];
    for i in 0..p.len() {
        for step in [1e-3, 1e-1, 1.0] {
            for sign in [-1.0, 1.0] {
                let mut z = p.to_vec();
                z[i] += sign * step;
                probes.push(z);
            }
        }
    }
    let mut worst = 0.0_f64;
    for z in probes {
        if let Some(fz) = scaled_eval(f, gamma, &z).finite() {
            let lhs: f64 = z.iter().zip(p).zip(&r).map(|((a, b), c)| (a - b) * c).sum();
            worst = worst.max(lhs + fp - fz);
        }
    }
    ExtReal::Finite(worst)
}

/// `gamma ↦ f(prox_{gamma ⊙ f} x)` sampled on ascending `gammas`.
pub fn prox_value_curve<P: ScaledProxProvider + ?Sized>(f: &P, x: &[f64], gammas: &[f64]) -> Result<Vec<ExtReal>> {
    check_dim(x, f.dim())?;
    if gammas.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidParameter("gammas must be sorted ascending".into()));
    }
    gammas
        .iter()
        .map(|&g| scaled_prox(f, g, x).map(|p| f.eval(&p)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{AbsBase, PowerBase};

    fn half_square() -> PowerBase {
        PowerBase::new(2.0, 1).unwrap()
    }

    fn abs() -> AbsBase {
        AbsBase::new(1).unwrap()
    }

    #[test]
    fn scaled_prox_examples() {
        let a = abs();
        assert_eq!(scaled_prox(&a, 0.0, &[5.0]).unwrap(), vec![5.0]);
        assert_eq!(scaled_prox(&a, 1.0, &[2.0]).unwrap(), vec![1.0]);
        let ind = ConjugateOf(&a);
        assert_eq!(scaled_prox(&ind, 2.0, &[3.0]).unwrap(), vec![1.0]);
        assert_eq!(scaled_prox(&ind, 0.0, &[3.0]).unwrap(), vec![1.0]);
        assert_eq!(scaled_prox(&a, -1.0, &[3.0]), Err(Error::NegativeScale(-1.0)));
    }

    #[test]
    fn moreau_examples() {
        let (p, d) = moreau_decompose(&half_square(), 1.0, &[4.0]).unwrap();
        assert!((p[0] - 2.0).abs() < 1e-14 && (d[0] - 2.0).abs() < 1e-14);
        let (p, d) = moreau_decompose(&abs(), 1.0, &[2.0]).unwrap();
        assert_eq!((p[0], d[0]), (1.0, 1.0));
        let (p, d) = moreau_decompose(&abs(), 1.0, &[0.5]).unwrap();
        assert_eq!((p[0], d[0]), (0.0, 0.5));
    }

    #[test]
    fn moreau_needs_conjugate_prox() {
        use crate::catalog::SqrtScaling;
        let s = SqrtScaling::new(1.0, 1).unwrap();
        let env = EnvelopeOf(&s);
        assert_eq!(moreau_decompose(&env, 1.0, &[1.0]), Err(Error::MissingConjugate));
    }

    #[test]
    fn characterization_gap_examples() {
        let f = half_square();
        let g = prox_characterization_gap(&f, 1.0, &[4.0], &[2.0]).unwrap();
        assert_eq!(g.kind, GapKind::Exact);
        assert!(g.gap.finite().unwrap().abs() < 1e-14);
        // f(3) + f*(1) - 3, with f*(1) = sup_u (u - u^2 / 2) taken on a grid.
        let conj_at_one = (-10_000..=10_000)
            .map(|i| {
                let u = i as f64 * 1e-3;
                u - 0.5 * u * u
            })
            .fold(f64::NEG_INFINITY, f64::max);
        let want = 4.5 + conj_at_one - 3.0;
        let g = prox_characterization_gap(&f, 1.0, &[4.0], &[3.0]).unwrap();
        assert!((g.gap.finite().unwrap() - want).abs() < 1e-12);
        assert!((g.gap.finite().unwrap() - 2.0).abs() < 1e-14);
        let g = prox_characterization_gap(&abs(), 1.0, &[2.0], &[1.0]).unwrap();
        assert_eq!(g.gap, ExtReal::Finite(0.0));
    }

    #[test]
    fn characterization_gap_falls_back_without_support() {
        let f = half_square();
        // gamma = 0 needs the support of cl dom f, which base functions do not expose.
        let g = prox_characterization_gap(&f, 0.0, &[4.0], &[4.0]).unwrap();
        assert_eq!(g.kind, GapKind::LowerBound);
        assert_eq!(g.gap, ExtReal::Finite(0.0));
        let g = prox_characterization_gap(&f, 1.0, &[4.0], &[2.0]).unwrap();
        assert_eq!(g.kind, GapKind::Exact);
    }

    #[test]
    fn value_curve_examples() {
        let v = prox_value_curve(&half_square(), &[4.0], &[0.0, 1.0, 3.0]).unwrap();
        let v: Vec<f64> = v.iter().map(|e| e.to_f64()).collect();
        assert!((v[0] - 8.0).abs() < 1e-14 && (v[1] - 2.0).abs() < 1e-14 && (v[2] - 0.5).abs() < 1e-14);
        let v = prox_value_curve(&abs(), &[2.0], &[0.0, 1.0, 2.0, 3.0]).unwrap();
        assert_eq!(v, vec![2.0.into(), 1.0.into(), 0.0.into(), 0.0.into()]);
        let a = abs();
        let v = prox_value_curve(&ConjugateOf(&a), &[5.0], &[0.0, 0.5, 4.0]).unwrap();
        assert!(v.iter().all(|e| *e == ExtReal::ZERO));
        assert!(prox_value_curve(&a, &[2.0], &[1.0, 0.0]).is_err());
    }
}
