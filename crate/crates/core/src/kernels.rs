//! Overlap kernels `p = <z|-z>` for the three coherent-state families.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coherent-state family together with its representation parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// Glauber states on the complex plane.
    WeylHeisenberg,
    /// Spin-j states; `twice_j = 2j` so half-integer spins stay exact.
    Su2 { twice_j: u32 },
    /// SU(1,1) states on the unit disc with Bargmann index `k > 0`.
    Su11 { bargmann_index: f64 },
}

impl Family {
    pub fn su2(twice_j: u32) -> Result<Self> {
        if twice_j == 0 {
            return Err(Error::Domain("spin j must be a positive half-integer".into()));
        }
        Ok(Family::Su2 { twice_j })
    }

    /// Spin given as a float; must be a positive multiple of 1/2.
    pub fn su2_from_spin(j: f64) -> Result<Self> {
        let twice = 2.0 * j;
        if !twice.is_finite() || twice < 1.0 || (twice - twice.round()).abs() > 1e-12 {
            return Err(Error::Domain(format!("spin j = {j} is not a positive half-integer")));
        }
        Self::su2(twice.round() as u32)
    }

    pub fn su11(bargmann_index: f64) -> Result<Self> {
        if !(bargmann_index.is_finite() && bargmann_index > 0.0) {
            return Err(Error::Domain(format!(
                "Bargmann index k = {bargmann_index} must be a positive real"
            )));
        }
        Ok(Family::Su11 { bargmann_index })
    }
}

/// Real overlap between the coherent states labelled `z` and `-z`.
///
/// Depends on `|z|` only. SU(1,1) requires `|z| < 1`; SU(2) with `|z| > 1`
/// and odd `2j` produces a negative kernel and is rejected.
pub fn overlap(z: Complex64, family: Family) -> Result<f64> {
    let r2 = z.norm_sqr();
    if !r2.is_finite() {
        return Err(Error::Domain(format!("non-finite amplitude {z}")));
    }
    match family {
        Family::WeylHeisenberg => Ok((-2.0 * r2).exp()),
        Family::Su2 { twice_j } => {
            if twice_j == 0 {
                return Err(Error::Domain("spin j must be a positive half-integer".into()));
            }
            let ratio = (1.0 - r2) / (1.0 + r2);
            let p = ratio.powi(twice_j as i32);
            if p < 0.0 {
                return Err(Error::UnsupportedOverlap(p));
            }
            Ok(p)
        }
        Family::Su11 { bargmann_index } => {
            if !(bargmann_index.is_finite() && bargmann_index > 0.0) {
                return Err(Error::Domain(format!(
                    "Bargmann index k = {bargmann_index} must be a positive real"
                )));
            }
            if r2 >= 1.0 {
                return Err(Error::Domain(format!(
                    "SU(1,1) amplitude |z| = {} lies outside the unit disc",
                    r2.sqrt()
                )));
            }
            let ratio = (1.0 - r2) / (1.0 + r2);
            Ok(ratio.powf(2.0 * bargmann_index))
        }
    }
}
