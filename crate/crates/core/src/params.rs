//! Dimensionless problem parameters and the scaling from dimensional inputs.
//!
//! Lengths are scaled with the disk radius in `r` and the half-gap in `z`, the
//! radial velocity with `U = W R / H`. The resulting groups are
//!
//! ```text
//! eps = H / R,   Re = rho W R / mu,   B = tau0 H / (mu U)
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reynolds number above which the inertialess solution is flagged.
pub const REYNOLDS_WARN_THRESHOLD: f64 = 0.1;

/// Dimensional description of a squeeze-flow experiment (SI-consistent units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionalInputs {
    /// Disk radius.
    pub radius: f64,
    /// Half-distance between the plates.
    pub half_gap: f64,
    /// Plate approach speed.
    pub plate_speed: f64,
    /// Consistency (Pa s^n).
    pub consistency: f64,
    /// Yield stress (Pa). Zero is allowed and gives B = 0.
    pub yield_stress: f64,
    pub density: f64,
    /// Power-law index.
    pub index: f64,
}

impl DimensionalInputs {
    fn check(&self) -> Result<()> {
        let positive = [
            ("radius", self.radius),
            ("half_gap", self.half_gap),
            ("plate_speed", self.plate_speed),
            ("consistency", self.consistency),
            ("density", self.density),
            ("index", self.index),
        ];
        for (field, value) in positive {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidParameter {
                    field,
                    value,
                    reason: "must be strictly positive",
                });
            }
        }
        if !(self.yield_stress >= 0.0 && self.yield_stress.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "yield_stress",
                value: self.yield_stress,
                reason: "must be non-negative",
            });
        }
        if self.half_gap >= self.radius {
            return Err(Error::InvalidParameter {
                field: "half_gap",
                value: self.half_gap,
                reason: "must be smaller than the disk radius",
            });
        }
        Ok(())
    }

    /// Characteristic radial velocity `U = W R / H`.
    pub fn radial_velocity_scale(&self) -> f64 {
        self.plate_speed * self.radius / self.half_gap
    }
}

/// Validated dimensionless parameters.
///
/// `inverse_index` is the exponent `m = 1/n` that appears throughout the
/// closed forms of the yield surface, pressure and force.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct FluidParams {
    bingham: f64,
    index: f64,
    eps: f64,
    reynolds: f64,
    inverse_index: f64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    bingham: f64,
    index: f64,
    eps: f64,
    reynolds: f64,
}

impl TryFrom<RawParams> for FluidParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        FluidParams::new(raw.bingham, raw.index, raw.eps, raw.reynolds)
    }
}

impl From<FluidParams> for RawParams {
    fn from(p: FluidParams) -> Self {
        RawParams {
            bingham: p.bingham,
            index: p.index,
            eps: p.eps,
            reynolds: p.reynolds,
        }
    }
}

impl FluidParams {
    pub fn new(bingham: f64, index: f64, eps: f64, reynolds: f64) -> Result<Self> {
        if !(bingham >= 0.0 && bingham.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "B",
                value: bingham,
                reason: "Bingham number must be non-negative",
            });
        }
        if !(index > 0.0 && index.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "n",
                value: index,
                reason: "power-law index must be positive",
            });
        }
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::InvalidParameter {
                field: "eps",
                value: eps,
                reason: "aspect ratio must lie in (0, 1)",
            });
        }
        if !(reynolds >= 0.0 && reynolds.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "Re",
                value: reynolds,
                reason: "Reynolds number must be non-negative",
            });
        }
        Ok(FluidParams {
            bingham,
            index,
            eps,
            reynolds,
            inverse_index: 1.0 / index,
        })
    }

    /// Inertialess parameters (`Re = 0`).
    pub fn stokes(bingham: f64, index: f64, eps: f64) -> Result<Self> {
        Self::new(bingham, index, eps, 0.0)
    }

    pub fn bingham(&self) -> f64 {
        self.bingham
    }

    pub fn index(&self) -> f64 {
        self.index
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Stored for reporting only; the solution is inertialess.
    pub fn reynolds(&self) -> f64 {
        self.reynolds
    }

    /// `m = 1/n`.
    pub fn inverse_index(&self) -> f64 {
        self.inverse_index
    }

    pub fn with_eps(self, eps: f64) -> Result<Self> {
        Self::new(self.bingham, self.index, eps, self.reynolds)
    }

    pub fn with_bingham(self, bingham: f64) -> Result<Self> {
        Self::new(bingham, self.index, self.eps, self.reynolds)
    }
}

pub fn nondimensionalize(d: &DimensionalInputs) -> Result<FluidParams> {
    d.check()?;
    let eps = d.half_gap / d.radius;
    let reynolds = d.density * d.plate_speed * d.radius / d.consistency;
    let bingham = d.yield_stress * d.half_gap / (d.consistency * d.radial_velocity_scale());
    FluidParams::new(bingham, d.index, eps, reynolds)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamWarning {
    /// Inertia is not negligible; the lubrication solution assumes `Re << 1`.
    InertiaNotNegligible { reynolds: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedParams {
    pub params: FluidParams,
    pub warnings: Vec<ParamWarning>,
}

/// Re-checks the invariants and flags inertia when `Re > 0.1`.
pub fn validate(p: FluidParams) -> Result<ValidatedParams> {
    let params = FluidParams::new(p.bingham, p.index, p.eps, p.reynolds)?;
    let mut warnings = Vec::new();
    if params.reynolds > REYNOLDS_WARN_THRESHOLD {
        log::warn!(
            "Re = {} exceeds {}: inertial effects are neglected by this solution",
            params.reynolds,
            REYNOLDS_WARN_THRESHOLD
        );
        warnings.push(ParamWarning::InertiaNotNegligible {
            reynolds: params.reynolds,
        });
    }
    Ok(ValidatedParams { params, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit_inputs() -> DimensionalInputs {
        DimensionalInputs {
            radius: 1.0,
            half_gap: 0.1,
            plate_speed: 1.0,
            consistency: 1.0,
            yield_stress: 1.0,
            density: 1.0,
            index: 1.0,
        }
    }

    #[test]
    fn aspect_ratio_is_gap_over_radius() {
        let p = nondimensionalize(&unit_inputs()).unwrap();
        assert_eq!(p.eps(), 0.1);
    }

    #[test]
    fn zero_yield_stress_gives_zero_bingham() {
        let d = DimensionalInputs {
            yield_stress: 0.0,
            ..unit_inputs()
        };
        assert_eq!(nondimensionalize(&d).unwrap().bingham(), 0.0);
    }

    #[test]
    fn hand_evaluated_bingham_number() {
        let d = unit_inputs();
        assert!((d.radial_velocity_scale() - 10.0).abs() < 1e-12);
        let p = nondimensionalize(&d).unwrap();
        assert!((p.bingham() - 0.01).abs() < 1e-15);
        assert!((p.reynolds() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_positive_fields_by_name() {
        let d = DimensionalInputs {
            consistency: 0.0,
            ..unit_inputs()
        };
        match nondimensionalize(&d) {
            Err(Error::InvalidParameter { field, .. }) => assert_eq!(field, "consistency"),
            other => panic!("unexpected {other:?}"),
        }
        let d = DimensionalInputs {
            half_gap: 2.0,
            ..unit_inputs()
        };
        assert!(matches!(
            nondimensionalize(&d),
            Err(Error::InvalidParameter {
                field: "half_gap",
                ..
            })
        ));
    }

    #[test]
    fn validate_examples() {
        let ok = validate(FluidParams::stokes(1.0, 0.5, 0.1).unwrap()).unwrap();
        assert!(ok.warnings.is_empty());

        assert!(FluidParams::new(1.0, 0.0, 0.1, 0.0).is_err());
        assert!(FluidParams::new(-1.0, 1.0, 0.1, 0.0).is_err());
        assert!(FluidParams::new(1.0, 1.0, 1.0, 0.0).is_err());

        let warned = validate(FluidParams::new(1.0, 1.0, 0.1, 0.5).unwrap()).unwrap();
        assert_eq!(
            warned.warnings,
            vec![ParamWarning::InertiaNotNegligible { reynolds: 0.5 }]
        );
    }

    #[test]
    fn serde_revalidates() {
        let p = FluidParams::stokes(2.0, 0.5, 0.1).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<FluidParams>(&s).unwrap(), p);
        let bad = r#"{"bingham":1.0,"index":-1.0,"eps":0.1,"reynolds":0.0}"#;
        assert!(serde_json::from_str::<FluidParams>(bad).is_err());
    }

    proptest! {
        #[test]
        fn eps_is_scale_invariant(scale in 1e-3f64..1e3, gap in 0.01f64..0.9) {
            let base = DimensionalInputs { half_gap: gap, ..unit_inputs() };
            let scaled = DimensionalInputs {
                half_gap: gap * scale,
                radius: scale,
                ..unit_inputs()
            };
            let a = nondimensionalize(&base).unwrap().eps();
            let b = nondimensionalize(&scaled).unwrap().eps();
            prop_assert!((a - b).abs() <= 1e-14 * a);
        }

        #[test]
        fn inverse_index_times_index_is_one(n in 1e-3f64..1e3) {
            let p = FluidParams::stokes(1.0, n, 0.1).unwrap();
            prop_assert!((p.inverse_index() * p.index() - 1.0).abs() <= 1e-14);
        }
    }
}
