//! Point sequences in the disk for kernel-family experiments, with the
//! partial sums of the Blaschke quantity sum (1 - |lambda_n|) carried along.
//! Sequences accumulating at the circle are clamped at a cap radius; the
//! clamp keeps later points repeating the cap value, which deliberately
//! degrades the Gram conditioning the way the untruncated sequence would.

use crate::error::{HbError, Result};
use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct LambdaSequence {
    points: Vec<Complex64>,
    partial_blaschke_sums: Vec<f64>,
    capped_points: Vec<bool>,
    cap: f64,
}

/// Partial sums of sum_k (1 - |lambda_k|).
pub fn blaschke_partial_sums(points: &[Complex64]) -> Vec<f64> {
    let mut acc = 0.0;
    points
        .iter()
        .map(|l| {
            acc += 1.0 - l.norm();
            acc
        })
        .collect()
}

fn check_cap(cap: f64) -> Result<()> {
    if !(0.0 < cap && cap < 1.0) {
        return Err(HbError::InvalidInput(format!(
            "cap must lie in (0, 1), got {cap}"
        )));
    }
    Ok(())
}

fn check_count(count: usize) -> Result<()> {
    if count == 0 {
        return Err(HbError::InvalidInput(
            "sequence needs at least one point".into(),
        ));
    }
    Ok(())
}

impl LambdaSequence {
    fn from_radii(radii: impl Iterator<Item = f64>, cap: f64) -> Self {
        let mut points = Vec::new();
        let mut capped_points = Vec::new();
        for r in radii {
            let clamped = r.min(cap);
            points.push(Complex64::new(clamped, 0.0));
            capped_points.push(r >= cap);
        }
        let partial_blaschke_sums = blaschke_partial_sums(&points);
        LambdaSequence {
            points,
            partial_blaschke_sums,
            capped_points,
            cap,
        }
    }

    /// lambda_n = 1 - 1/(n+1) for n = 1..count, clamped at cap.
    pub fn harmonic(count: usize, cap: f64) -> Result<Self> {
        check_count(count)?;
        check_cap(cap)?;
        Ok(Self::from_radii(
            (1..=count).map(|n| 1.0 - 1.0 / (n as f64 + 1.0)),
            cap,
        ))
    }

    /// lambda_n = 1 - q^n for n = 1..count, clamped at cap. q = 1/2 gives
    /// the classical Blaschke sequence with convergent partial sums.
    pub fn geometric(q: f64, count: usize, cap: f64) -> Result<Self> {
        check_count(count)?;
        check_cap(cap)?;
        if !(0.0 < q && q < 1.0) {
            return Err(HbError::InvalidInput(format!(
                "ratio must lie in (0, 1), got {q}"
            )));
        }
        Ok(Self::from_radii(
            (1..=count).map(|n| 1.0 - q.powi(n as i32)),
            cap,
        ))
    }

    /// count copies of the same point; a deliberately degenerate family.
    pub fn constant(x: Complex64, count: usize, cap: f64) -> Result<Self> {
        check_count(count)?;
        check_cap(cap)?;
        if x.norm() > cap {
            return Err(HbError::Conditioning {
                modulus: x.norm(),
                limit: cap,
            });
        }
        let points = vec![x; count];
        let partial_blaschke_sums = blaschke_partial_sums(&points);
        Ok(LambdaSequence {
            points,
            partial_blaschke_sums,
            capped_points: vec![false; count],
            cap,
        })
    }

    /// Arbitrary caller-supplied points, each required to respect the cap.
    pub fn explicit(points: Vec<Complex64>, cap: f64) -> Result<Self> {
        check_count(points.len())?;
        check_cap(cap)?;
        if let Some(bad) = points.iter().find(|l| l.norm() > cap) {
            return Err(HbError::Conditioning {
                modulus: bad.norm(),
                limit: cap,
            });
        }
        let partial_blaschke_sums = blaschke_partial_sums(&points);
        let n = points.len();
        Ok(LambdaSequence {
            points,
            partial_blaschke_sums,
            capped_points: vec![false; n],
            cap,
        })
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn partial_blaschke_sums(&self) -> &[f64] {
        &self.partial_blaschke_sums
    }

    pub fn cap(&self) -> f64 {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Did the clamp fire anywhere in the first n points?
    pub fn capped_within(&self, n: usize) -> bool {
        self.capped_points[..n.min(self.capped_points.len())]
            .iter()
            .any(|&c| c)
    }

    pub fn capped(&self) -> bool {
        self.capped_within(self.len())
    }
}
