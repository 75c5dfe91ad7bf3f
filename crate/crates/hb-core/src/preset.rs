//! Named symbol presets used by the verification suite and the CLI.

use crate::error::{HbError, Result};
use crate::grid::Grid;
use crate::hardy::HardyFunction;
use crate::pair::{mate, PythagoreanPair};
use num_complex::Complex64;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Preset {
    /// b = (1+z)/2, the workhorse example: mate (1-z)/2, shift norm sqrt(3),
    /// a point mass of weight 2 in the Clark measure at alpha = 1.
    HalfOnePlusZ,
    /// b = rz for 0 < r < 1: constant mate sqrt(1-r^2), everything explicit.
    Rz(f64),
}

impl Preset {
    pub fn symbol(&self) -> HardyFunction {
        match *self {
            Preset::HalfOnePlusZ => {
                HardyFunction::new(vec![Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0)])
            }
            Preset::Rz(r) => HardyFunction::new(vec![Complex64::ZERO, Complex64::new(r, 0.0)]),
        }
    }

    pub fn name(&self) -> String {
        match *self {
            Preset::HalfOnePlusZ => "half-one-plus-z".to_string(),
            Preset::Rz(r) => format!("rz({r})"),
        }
    }

    pub fn pair(&self, grid: Grid) -> Result<Arc<PythagoreanPair>> {
        Ok(Arc::new(mate(&self.symbol(), grid)?))
    }
}

impl std::fmt::Display for Preset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Preset {
    type Err = HbError;

    fn from_str(s: &str) -> Result<Self> {
        if s == "half-one-plus-z" {
            return Ok(Preset::HalfOnePlusZ);
        }
        if let Some(arg) = s.strip_prefix("rz(").and_then(|t| t.strip_suffix(')')) {
            let r: f64 = arg
                .parse()
                .map_err(|_| HbError::InvalidInput(format!("bad radius in preset {s:?}")))?;
            if !(0.0 < r && r < 1.0) {
                return Err(HbError::InvalidInput(format!(
                    "preset rz needs r in (0, 1), got {r}"
                )));
            }
            return Ok(Preset::Rz(r));
        }
        Err(HbError::InvalidInput(format!(
            "unknown preset {s:?} (expected half-one-plus-z or rz(r))"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_presets() {
        assert_eq!(
            "half-one-plus-z".parse::<Preset>().unwrap(),
            Preset::HalfOnePlusZ
        );
        assert_eq!("rz(0.5)".parse::<Preset>().unwrap(), Preset::Rz(0.5));
        assert!("rz(1.5)".parse::<Preset>().is_err());
        assert!("rz(0)".parse::<Preset>().is_err());
        assert!("blaschke".parse::<Preset>().is_err());
    }

    #[test]
    fn names_round_trip() {
        for p in [Preset::HalfOnePlusZ, Preset::Rz(0.3)] {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
    }
}
