//! Clique weight functions γ.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Nondecreasing weight of a clique of a given size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum WeightFunction {
    /// log2(t + 1)
    #[default]
    Log,
    /// Every nonempty clique weighs 1.
    Unit,
    /// t^p for an exponent `0 < p < 1 - 1/d`.
    Power(f64),
}

impl WeightFunction {
    pub fn eval(&self, t: usize) -> f64 {
        if t == 0 {
            return 0.0;
        }
        match self {
            WeightFunction::Log => ((t + 1) as f64).log2(),
            WeightFunction::Unit => 1.0,
            WeightFunction::Power(p) => (t as f64).powf(*p),
        }
    }

    /// Blowup size ⌈γ(t)⌉, at least 1.
    pub fn ceil(&self, t: usize) -> usize {
        (self.eval(t) - 1e-9).ceil().max(1.0) as usize
    }
}

impl fmt::Display for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            WeightFunction::Log => write!(f, "log"),
            WeightFunction::Unit => write!(f, "unit"),
            WeightFunction::Power(p) => write!(f, "pow:{p}"),
        }
    }
}

impl FromStr for WeightFunction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "log" => Ok(WeightFunction::Log),
            "unit" => Ok(WeightFunction::Unit),
            _ => {
                let p = s
                    .strip_prefix("pow:")
                    .and_then(|p| p.parse::<f64>().ok())
                    .ok_or_else(|| format!("unknown weight function {s:?} (log, unit, pow:<p>)"))?;
                if !(p > 0.0 && p < 1.0) {
                    return Err(format!("power exponent must lie in (0,1), got {p}"));
                }
                Ok(WeightFunction::Power(p))
            }
        }
    }
}
