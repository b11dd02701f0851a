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

//! JSON input documents and their conversion to library objects.

use std::fmt;
use std::sync::Arc;

use persprox::catalog::{AbsBase, HuberBase, IdentityIntervalScaling, PowerBase, RootScaling, SqrtScaling};
use persprox::{BaseFunction, ExtReal, OracleConfig, PerspectivePair, RootConfig, ScalingFunction, ScalingKind};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

/// Extended real in JSON: a number, or one of the strings `"+inf"` / `"-inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ext(pub ExtReal);

impl Serialize for Ext {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            ExtReal::Finite(v) => s.serialize_f64(v),
            ExtReal::PosInf => s.serialize_str("+inf"),
            ExtReal::NegInf => s.serialize_str("-inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Ext {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct ExtVisitor;
        impl Visitor<'_> for ExtVisitor {
            type Value = Ext;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number, \"+inf\" or \"-inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Ext, E> {
                Ok(Ext(ExtReal::Finite(v)))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Ext, E> {
                Ok(Ext(ExtReal::Finite(v as f64)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Ext, E> {
                Ok(Ext(ExtReal::Finite(v as f64)))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Ext, E> {
                match v {
                    "+inf" | "inf" => Ok(Ext(ExtReal::PosInf)),
                    "-inf" => Ok(Ext(ExtReal::NegInf)),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }
        }
        d.deserialize_any(ExtVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionSpec {
    pub name: String,
    #[serde(default)]
    pub params: Map<String, Value>,
}

impl FunctionSpec {
    fn param(&self, key: &str) -> CliResult<f64> {
        let v = self
            .params
            .get(key)
            .ok_or_else(|| CliError::BadInput(format!("{} needs parameter \"{key}\"", self.name)))?;
        let Ext(e) =
            Ext::deserialize(v).map_err(|e| CliError::BadInput(format!("{} parameter \"{key}\": {e}", self.name)))?;
        Ok(e.to_f64())
    }

    fn param_or(&self, key: &str, default: f64) -> CliResult<f64> {
        if self.params.contains_key(key) {
            self.param(key)
        } else {
            Ok(default)
        }
    }
}

/// A base function, a scaling function, a step and the dimensions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub base: FunctionSpec,
    pub scaling: FunctionSpec,
    pub gamma: f64,
    pub dims: (usize, usize),
}

impl ProblemSpec {
    pub fn build(&self) -> CliResult<PerspectivePair> {
        if !(self.gamma > 0.0) || !self.gamma.is_finite() {
            return Err(CliError::BadInput(format!(
                "gamma must be positive, got {}",
                self.gamma
            )));
        }
        let (n, m) = self.dims;
        let base: Arc<dyn BaseFunction> = match self.base.name.as_str() {
            "power" => Arc::new(PowerBase::new(self.base.param("p")?, n).map_err(CliError::bad)?),
            "huber" => Arc::new(HuberBase::new(self.base.param("alpha")?, n).map_err(CliError::bad)?),
            "abs" => Arc::new(AbsBase::new(n).map_err(CliError::bad)?),
            other => return Err(CliError::BadInput(format!("unknown base function \"{other}\""))),
        };
        let s = &self.scaling;
        let scaling: Arc<dyn ScalingFunction> = match s.name.as_str() {
            "root" => {
                Arc::new(RootScaling::new(s.param("q")?, s.param_or("upper", f64::INFINITY)?).map_err(CliError::bad)?)
            }
            "sqrt" => Arc::new(SqrtScaling::new(s.param("beta")?, m).map_err(CliError::bad)?),
            "identity-interval" => {
                let kind = match s.params.get("kind").and_then(Value::as_str).unwrap_or("neg-s-lower") {
                    "neg-s-lower" => ScalingKind::NegSLower,
                    "s-lower" => ScalingKind::SLower,
                    other => {
                        return Err(CliError::BadInput(format!(
                            "unknown identity-interval kind \"{other}\""
                        )))
                    }
                };
                let lo = s.param_or("lo", f64::NEG_INFINITY)?;
                let hi = s.param_or("hi", f64::INFINITY)?;
                Arc::new(IdentityIntervalScaling::new(lo, hi, kind).map_err(CliError::bad)?)
            }
            other => return Err(CliError::BadInput(format!("unknown scaling function \"{other}\""))),
        };
        if scaling.dim() != m {
            return Err(CliError::BadInput(format!(
                "scaling \"{}\" acts on dimension {}, spec says {m}",
                s.name,
                scaling.dim()
            )));
        }
        PerspectivePair::new(base, scaling).map_err(CliError::bad)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSpec {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl PointSpec {
    pub fn check(&self, dims: (usize, usize)) -> CliResult<()> {
        if (self.x.len(), self.y.len()) != dims {
            return Err(CliError::BadInput(format!(
                "point has dimensions ({}, {}), spec says ({}, {})",
                self.x.len(),
                self.y.len(),
                dims.0,
                dims.1
            )));
        }
        if self.x.iter().chain(&self.y).any(|v| !v.is_finite()) {
            return Err(CliError::BadInput("point entries must be finite".into()));
        }
        Ok(())
    }
}

/// Regression data for the concomitant-scale demo: explicit `a` and `b`, or
/// a seeded synthetic problem of the given shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemoSpec {
    #[serde(default)]
    pub a: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub b: Option<Vec<f64>>,
    #[serde(default)]
    pub rows: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    pub kappa: f64,
    pub y0: f64,
    /// Defaults to `1 / L`.
    #[serde(default)]
    pub tau: Option<f64>,
    pub iterations: usize,
    /// Defaults to zero.
    #[serde(default)]
    pub w0: Option<Vec<f64>>,
    /// Defaults to `y0`.
    #[serde(default)]
    pub sigma0: Option<f64>,
}

/// Everything a command may read from standard input.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub spec: Option<ProblemSpec>,
    pub point: Option<PointSpec>,
    pub demo: Option<DemoSpec>,
}

/// Parses `text` as inline JSON, or as a path when it does not start with `{`.
pub fn json_arg<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> CliResult<T> {
    let body = if text.trim_start().starts_with('{') {
        text.to_owned()
    } else {
        std::fs::read_to_string(text).map_err(|e| CliError::BadInput(format!("reading {what} from {text}: {e}")))?
    };
    serde_json::from_str(&body).map_err(|e| CliError::BadInput(format!("malformed {what}: {e}")))
}

/// Solver and oracle settings, adjustable through `key=value` overrides.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Tolerances {
    pub root: RootConfig,
    pub oracle: OracleConfig,
}

impl Tolerances {
    pub fn with_overrides<S: AsRef<str>>(overrides: &[S]) -> CliResult<Self> {
        let mut t = Tolerances::default();
        for item in overrides {
            let item = item.as_ref();
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| CliError::BadInput(format!("tolerance override \"{item}\" is not key=value")))?;
            let real = || {
                value
                    .parse::<f64>()
                    .map_err(|e| CliError::BadInput(format!("{key}: {e}")))
            };
            let count = || {
                value
                    .parse::<usize>()
                    .map_err(|e| CliError::BadInput(format!("{key}: {e}")))
            };
            match key {
                "eta_tol" => t.root.eta_tol = real()?,
                "residual_tol" => t.root.residual_tol = real()?,
                "max_iter" => t.root.max_iter = count()?,
                "classify_tol" => t.root.classify_tol = real()?,
                "radius_factor" => t.oracle.radius_factor = real()?,
                "coarse_points_per_dim" => t.oracle.coarse_points_per_dim = count()?,
                "refine_tol" => t.oracle.refine_tol = real()?,
                "max_refine_iters" => t.oracle.max_refine_iters = count()?,
                "max_grid_points" => t.oracle.max_grid_points = count()?,
                _ => return Err(CliError::BadInput(format!("unknown tolerance \"{key}\""))),
            }
        }
        t.root.validate().map_err(CliError::bad)?;
        t.oracle.validate().map_err(CliError::bad)?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_round_trip() {
        for v in [ExtReal::Finite(-0.1), ExtReal::PosInf, ExtReal::NegInf] {
            let text = serde_json::to_string(&Ext(v)).unwrap();
            assert_eq!(serde_json::from_str::<Ext>(&text).unwrap(), Ext(v));
        }
        assert_eq!(serde_json::to_string(&Ext(ExtReal::PosInf)).unwrap(), "\"+inf\"");
    }

    #[test]
    fn builds_catalog_pairs() {
        let spec: ProblemSpec = serde_json::from_str(
            r#"{"base":{"name":"power","params":{"p":2}},"scaling":{"name":"root","params":{"q":0.5,"upper":"+inf"}},"gamma":1,"dims":[2,1]}"#,
        )
        .unwrap();
        assert_eq!(spec.build().unwrap().dims(), (2, 1));
    }

    #[test]
    fn rejects_bad_specs() {
        let bad = [
            r#"{"base":{"name":"cosh"},"scaling":{"name":"sqrt","params":{"beta":1}},"gamma":1,"dims":[1,1]}"#,
            r#"{"base":{"name":"huber"},"scaling":{"name":"sqrt","params":{"beta":1}},"gamma":1,"dims":[1,1]}"#,
            r#"{"base":{"name":"power","params":{"p":2}},"scaling":{"name":"sqrt","params":{"beta":1}},"gamma":1,"dims":[1,1]}"#,
            r#"{"base":{"name":"abs"},"scaling":{"name":"root","params":{"q":0.5}},"gamma":-1,"dims":[1,1]}"#,
            r#"{"base":{"name":"abs"},"scaling":{"name":"root","params":{"q":0.5}},"gamma":1,"dims":[1,2]}"#,
        ];
        for text in bad {
            let spec: ProblemSpec = serde_json::from_str(text).unwrap();
            assert!(matches!(spec.build(), Err(CliError::BadInput(_))), "{text}");
        }
    }

    #[test]
    fn tolerance_overrides() {
        let t = Tolerances::with_overrides(&["eta_tol=1e-9", "max_grid_points=1000"]).unwrap();
        assert_eq!(t.root.eta_tol, 1e-9);
        assert_eq!(t.oracle.max_grid_points, 1000);
        assert!(Tolerances::with_overrides(&["speed=3"]).is_err());
        assert!(Tolerances::with_overrides(&["eta_tol=-1"]).is_err());
    }
}
