//! Zero-order velocity, shear stress and pressure.
//!
//! Below the pseudo-yield surface (`z <= z0`) the fluid moves with the plug
//! velocity `u0(r)`; above it the velocity follows the Herschel-Bulkley shear
//! profile and vanishes on the plate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Squeeze;
use crate::numerics::integrate;
use crate::yield_surface::{plug_velocity_dz0, plug_velocity_of_z0, shape_poly, z0_prime};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Shear,
    PseudoPlug,
}

/// Zero-order field values at a point `(r, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldSample {
    pub r: f64,
    pub z: f64,
    pub velocity: f64,
    pub shear_stress: f64,
    pub pressure_gradient: f64,
    pub region: Region,
}

/// Zero-order shear stress and radial pressure gradient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeadingStress {
    pub tau_rz: f64,
    pub p_prime: f64,
}

impl Squeeze {
    pub fn plug_velocity(&self, r: f64) -> Result<f64> {
        let z0 = self.z0(r)?;
        Ok(plug_velocity_of_z0(self.params(), z0))
    }

    pub fn plug_velocity_prime(&self, r: f64) -> Result<f64> {
        Ok(self.kinematics(r)?.u0_prime)
    }

    pub fn region(&self, r: f64, z: f64) -> Result<Region> {
        Self::check_height(z)?;
        let z0 = self.z0(r)?;
        Ok(if z <= z0 {
            Region::PseudoPlug
        } else {
            Region::Shear
        })
    }

    /// Radial velocity `u^0(r, z)` with no slip on the plate.
    pub fn u_zero(&self, r: f64, z: f64) -> Result<f64> {
        Self::check_height(z)?;
        let z0 = self.z0(r)?;
        if z <= z0 {
            return Ok(plug_velocity_of_z0(self.params(), z0));
        }
        Ok(self.shear_velocity(z0, z))
    }

    /// Shear-layer branch of `u^0` on `[z0, 1]`, including `z = z0`.
    pub fn u_zero_shear(&self, r: f64, z: f64) -> Result<f64> {
        Self::check_height(z)?;
        let z0 = self.z0(r)?;
        if z < z0 {
            return Err(Error::Domain {
                what: "z",
                value: z,
                domain: "[z0(r), 1]",
            });
        }
        Ok(self.shear_velocity(z0, z))
    }

    fn shear_velocity(&self, z0: f64, z: f64) -> f64 {
        let m = self.m();
        let scale = (self.bingham() / z0).powf(m) / (1.0 + m);
        scale * ((1.0 - z0).powf(1.0 + m) - (z - z0).powf(1.0 + m))
    }

    /// `p0' = -B/z0` and `tau_rz^0 = -B z / z0`. Valid on the axis, where `z0 = 1`.
    pub fn leading_stress(&self, r: f64, z: f64) -> Result<LeadingStress> {
        Self::check_height(z)?;
        let z0 = self.z0(r)?;
        let b = self.bingham();
        Ok(LeadingStress {
            tau_rz: -b * z / z0,
            p_prime: -b / z0,
        })
    }

    pub fn leading_sample(&self, r: f64, z: f64) -> Result<FieldSample> {
        let stress = self.leading_stress(r, z)?;
        Ok(FieldSample {
            r,
            z,
            velocity: self.u_zero(r, z)?,
            shear_stress: stress.tau_rz,
            pressure_gradient: stress.p_prime,
            region: self.region(r, z)?,
        })
    }

    /// Zero-order plate pressure with `p0(1) = eps p_R`.
    ///
    /// Integrates `-p0' = B/z0` in the yield-surface variable, where the
    /// integrand is explicit:
    ///
    /// ```text
    /// p0(r) = 2 B^(m+1) int_{z0(1)}^{z0(r)} (1-s)^m (2s^2 + 2ms + m + m^2) / (s^(m+2) (m+1)(m+2)) ds + eps p_R
    /// ```
    pub fn pressure_zero(&self, r: f64) -> Result<f64> {
        let upper = self.z0(r)?;
        let lower = self.z0_edge();
        let m = self.m();
        let b = self.bingham();
        let denom = (m + 1.0) * (m + 2.0);
        let kernel = |s: f64| (1.0 - s).powf(m) * shape_poly(m, s) / (s.powf(m + 2.0) * denom);
        let integral = integrate(kernel, lower, upper, self.tolerances().quad)?;
        Ok(2.0 * b.powf(m + 1.0) * integral + self.eps() * self.edge_pressure())
    }

    /// `z0'` at `r`, through the closed form.
    pub fn z0_prime(&self, r: f64) -> Result<f64> {
        let z0 = self.z0(r)?;
        z0_prime(self.params(), z0)
    }

    /// `du0/dz0`; exposed for diagnostics of the chain rule.
    pub fn plug_velocity_dz0(&self, z0: f64) -> f64 {
        plug_velocity_dz0(self.params(), z0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{derivative, Tolerance};
    use crate::params::FluidParams;
    use approx::assert_relative_eq;

    fn flow(b: f64, n: f64) -> Squeeze {
        Squeeze::new(FluidParams::stokes(b, n, 0.1).unwrap()).unwrap()
    }

    fn tight() -> Tolerance {
        Tolerance::new(1e-15, 1e-13, 4000).unwrap()
    }

    #[test]
    fn plug_velocity_vanishes_on_axis() {
        assert_eq!(flow(1.0, 1.0).plug_velocity(0.0).unwrap(), 0.0);
    }

    #[test]
    fn bingham_plug_velocity_closed_form() {
        let s = flow(1.0, 1.0);
        let z0 = s.z0(0.5).unwrap();
        let expected = (1.0 - z0).powi(2) / (2.0 * z0);
        assert!((s.plug_velocity(0.5).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn flux_equals_half_radius() {
        let s = flow(2.0, 0.5);
        let r = 0.7;
        let z0 = s.z0(r).unwrap();
        let plug = integrate(|z| s.u_zero(r, z).unwrap(), 0.0, z0, tight()).unwrap();
        let shear = integrate(|z| s.u_zero(r, z).unwrap(), z0, 1.0, tight()).unwrap();
        assert!((plug + shear - r / 2.0).abs() < 1e-8);
    }

    #[test]
    fn plug_velocity_slope_matches_finite_difference() {
        for (b, n, r) in [(1.0, 1.0, 0.5), (5.0, 0.25, 0.8)] {
            let s = flow(b, n);
            let fd = derivative(|x| s.plug_velocity(x).unwrap(), r, 1e-6);
            let slope = s.plug_velocity_prime(r).unwrap();
            assert_relative_eq!(slope, fd, max_relative = 1e-6);
        }
        let s = flow(0.1, 1.5);
        for i in 1..=20 {
            assert!(s.plug_velocity_prime(i as f64 / 20.0).unwrap() > 0.0);
        }
        assert!(s.plug_velocity_prime(0.0).is_err());
    }

    #[test]
    fn velocity_boundary_values() {
        let s = flow(1.0, 1.0);
        let r = 0.5;
        let z0 = s.z0(r).unwrap();
        assert_eq!(s.u_zero(r, 1.0).unwrap(), 0.0);
        assert_eq!(s.u_zero(r, z0).unwrap(), s.plug_velocity(r).unwrap());
        assert!(s.u_zero(r, 1.2).is_err());

        // Parabolic segment at the midpoint of the shear layer.
        let z = 0.5 * (1.0 + z0);
        let expected = 0.5 / z0 * ((1.0 - z0).powi(2) - (z - z0).powi(2));
        assert!((s.u_zero(r, z).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn velocity_is_flat_at_the_yield_surface() {
        let s = flow(1.0, 0.5);
        let r = 0.6;
        let z0 = s.z0(r).unwrap();
        let h = 1e-6;
        let above = (s.u_zero(r, z0 + h).unwrap() - s.u_zero(r, z0).unwrap()) / h;
        let below = (s.u_zero(r, z0).unwrap() - s.u_zero(r, z0 - h).unwrap()) / h;
        assert!(above.abs() <= 1e-6 && below.abs() <= 1e-6);
        for i in 1..20 {
            let za = z0 + (1.0 - z0) * i as f64 / 20.0;
            let zb = z0 + (1.0 - z0) * (i + 1) as f64 / 20.0;
            assert!(s.u_zero(r, zb).unwrap() <= s.u_zero(r, za).unwrap());
        }
    }

    #[test]
    fn stress_examples() {
        let s = flow(2.0, 0.5);
        let r = 0.6;
        let z0 = s.z0(r).unwrap();
        assert_eq!(s.leading_stress(r, 0.0).unwrap().tau_rz, 0.0);
        assert!((s.leading_stress(r, z0).unwrap().tau_rz + 2.0).abs() < 1e-15);
        assert!((s.leading_stress(r, 1.0).unwrap().tau_rz + 2.0 / z0).abs() < 1e-15);
        let axis = s.leading_stress(0.0, 0.5).unwrap();
        assert_eq!(axis.p_prime, -2.0);
    }

    #[test]
    fn sample_region_tracks_yield_surface() {
        let s = flow(1.0, 1.0);
        let z0 = s.z0(0.5).unwrap();
        assert_eq!(
            s.leading_sample(0.5, 0.5 * z0).unwrap().region,
            Region::PseudoPlug
        );
        assert_eq!(
            s.leading_sample(0.5, 0.5 * (1.0 + z0)).unwrap().region,
            Region::Shear
        );
    }

    #[test]
    fn pressure_boundary_and_monotonicity() {
        let s = flow(1.0, 0.5);
        let edge = s.pressure_zero(1.0).unwrap();
        assert!((edge - 0.1 * s.edge_pressure()).abs() < 1e-15);
        assert!(s.pressure_zero(0.2).unwrap() > s.pressure_zero(0.8).unwrap());
    }

    #[test]
    fn pressure_matches_radial_quadrature() {
        let s = flow(1.0, 0.5);
        let direct = integrate(|rho| 1.0 / s.z0(rho).unwrap(), 0.5, 1.0, tight()).unwrap()
            + 0.1 * s.edge_pressure();
        assert!((s.pressure_zero(0.5).unwrap() - direct).abs() < 1e-8);
    }
}
