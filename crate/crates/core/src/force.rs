//! Edge pressure, radial normal stress and the squeeze force.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{Squeeze, R_MIN};
use crate::numerics::{integrate, try_integrate};
use crate::yield_surface::shape_poly;

/// `F = F0 + eps F1 + eps pi p_R` and its parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForceBreakdown {
    pub f0: f64,
    pub f1: f64,
    pub p_r: f64,
    pub total: f64,
    pub eps: f64,
}

impl ForceBreakdown {
    pub fn assemble(f0: f64, f1: f64, p_r: f64, eps: f64) -> Self {
        ForceBreakdown {
            f0,
            f1,
            p_r,
            total: f0 + eps * f1 + eps * PI * p_r,
            eps,
        }
    }

    /// `|eps F1|`, plotted on log axes.
    pub fn first_order_magnitude(&self) -> f64 {
        (self.eps * self.f1).abs()
    }

    /// `eps pi p_R`.
    pub fn edge_contribution(&self) -> f64 {
        self.eps * PI * self.p_r
    }
}

/// Integration-by-parts form of `F1`, evaluated with the edge factor as
/// `2 u0(1) + u0'(1)` and with the swapped ordering `2 u0'(1) + u0(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FirstForceClosedForm {
    pub edge_u0_first: f64,
    pub edge_slope_first: f64,
}

impl Squeeze {
    /// Edge constant `p_R` from the averaged stress-free condition at `r = 1`.
    pub fn edge_pressure(&self) -> f64 {
        let k = self.edge();
        self.bingham() * PI * k.z0 * (2.0 * k.u0_prime + k.u0) / (2.0 * k.eta)
    }

    /// Radial normal stress to first order. The plug carries the extra
    /// `eps (2B/(eta z0)) (2u0' + u0/r) sqrt(z0^2 - z^2)` from `tau_rr` and the
    /// plug pressure.
    pub fn sigma_rr(&self, r: f64, z: f64) -> Result<f64> {
        Self::check_height(z)?;
        let k = self.kinematics(r)?;
        let base = -self.pressure_zero(r)? - self.eps() * self.p1(r)?;
        if z > k.z0 {
            return Ok(base);
        }
        let extension = 2.0 * self.bingham() / (k.eta * k.z0)
            * (2.0 * k.u0_prime + k.hoop_rate())
            * (k.z0 * k.z0 - z * z).max(0.0).sqrt();
        Ok(base + self.eps() * extension)
    }

    /// `F0 = -pi int_0^1 p0' r^2 dr = pi B int_0^1 r^2 / z0 dr`.
    pub fn force_zero(&self) -> Result<f64> {
        let b = self.bingham();
        let v = try_integrate(
            |r| Ok(r * r / self.z0(r)?),
            0.0,
            1.0,
            self.tolerances().quad,
        )?;
        Ok(PI * b * v)
    }

    /// `F0` in the yield-surface variable; `r in [0, 1]` maps onto `z0 in [z0(1), 1]`.
    pub fn force_zero_by_yield_surface(&self) -> Result<f64> {
        let m = self.m();
        let b = self.bingham();
        let denom = ((m + 1.0) * (m + 2.0)).powi(3);
        let kernel = |s: f64| {
            (1.0 - s).powf(3.0 * m + 2.0) * (m + 1.0 + s).powi(2) * shape_poly(m, s)
                / (s.powf(3.0 * m + 2.0) * denom)
        };
        let v = integrate(kernel, self.z0_edge(), 1.0, self.tolerances().quad)?;
        Ok(8.0 * PI * b.powf(3.0 * m + 1.0) * v)
    }

    /// `F1 = -pi int_0^1 p1' r^2 dr`.
    ///
    /// Below `R_MIN` the integrand is continued as `p1'(R_MIN) (r/R_MIN)^(-1/(n+1)) r^2`,
    /// the near-axis power law of `p1'`.
    pub fn force_first(&self) -> Result<f64> {
        let bulk = try_integrate(
            |r| Ok(self.p1_prime(r)? * r * r),
            R_MIN,
            1.0,
            self.tolerances().quad,
        )?;
        let exponent = 3.0 - 1.0 / (self.index() + 1.0);
        let tail = self.p1_prime(R_MIN)? * R_MIN.powi(3) / exponent;
        Ok(-PI * (bulk + tail))
    }

    pub fn force_first_closed_form(&self) -> Result<FirstForceClosedForm> {
        let k = *self.edge();
        let moment = try_integrate(
            |r| {
                if r == 0.0 {
                    return Ok(0.0);
                }
                let kin = self.kinematics(r)?;
                Ok(kin.eta * kin.z0 * r)
            },
            0.0,
            1.0,
            self.tolerances().quad,
        )?;
        let scale = PI * PI * self.bingham();
        let lead = k.z0 * k.u0 / k.eta;
        Ok(FirstForceClosedForm {
            edge_u0_first: scale * (lead * (2.0 * k.u0 + k.u0_prime) - 0.5 * moment),
            edge_slope_first: scale * (lead * (2.0 * k.u0_prime + k.u0) - 0.5 * moment),
        })
    }

    pub fn total_force(&self) -> Result<ForceBreakdown> {
        Ok(ForceBreakdown::assemble(
            self.force_zero()?,
            self.force_first()?,
            self.edge_pressure(),
            self.eps(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Tolerance;
    use crate::params::FluidParams;

    fn flow(b: f64, n: f64) -> Squeeze {
        Squeeze::new(FluidParams::stokes(b, n, 0.1).unwrap()).unwrap()
    }

    #[test]
    fn averaged_edge_stress_vanishes() {
        let s = flow(1.0, 0.5);
        let z0 = s.z0_edge();
        let tol = Tolerance::new(1e-15, 1e-12, 4000).unwrap();
        let avg = integrate(|z| s.sigma_rr(1.0, z).unwrap(), 0.0, z0, tol).unwrap()
            + integrate(|z| s.sigma_rr(1.0, z).unwrap(), z0, 1.0, tol).unwrap();
        assert!(avg.abs() < 1e-8, "{avg}");
    }

    #[test]
    fn sigma_rr_is_continuous_and_flat_in_the_shear_layer() {
        let s = flow(1.0, 0.5);
        let r = 0.5;
        let z0 = s.z0(r).unwrap();
        let at = s.sigma_rr(r, z0).unwrap();
        let above = s.sigma_rr(r, 0.5 * (1.0 + z0)).unwrap();
        assert!((at - above).abs() < 1e-15);
        assert_eq!(above, s.sigma_rr(r, 1.0).unwrap());
    }

    #[test]
    fn edge_pressure_grows_with_bingham_number() {
        assert!(flow(10.0, 0.5).edge_pressure() > flow(0.1, 0.5).edge_pressure());
    }

    #[test]
    fn edge_pressure_from_edge_kinematics() {
        let s = flow(1.0, 1.0);
        let k = s.kinematics(1.0).unwrap();
        let expected = PI * k.z0 * (2.0 * k.u0_prime + k.u0) / (2.0 * k.eta);
        assert!((s.edge_pressure() - expected).abs() < 1e-15);
    }

    #[test]
    fn zero_order_force_forms_agree() {
        for (b, n) in [(1.0, 0.5), (1.0, 1.0), (0.01, 0.25), (10.0, 1.5)] {
            let s = flow(b, n);
            let direct = s.force_zero().unwrap();
            let mapped = s.force_zero_by_yield_surface().unwrap();
            assert!(direct > 0.0);
            assert!(
                ((direct - mapped) / direct).abs() < 1e-7,
                "B = {b}, n = {n}"
            );
        }
        assert!(flow(10.0, 0.5).force_zero().unwrap() > flow(0.1, 0.5).force_zero().unwrap());
    }

    #[test]
    fn first_order_force_is_negative() {
        for b in [0.1, 1.0, 10.0] {
            for n in [0.5, 1.0] {
                assert!(flow(b, n).force_first().unwrap() < 0.0);
            }
        }
    }

    #[test]
    fn first_order_force_closed_form_with_edge_velocity_first() {
        let s = flow(1.0, 1.0);
        let f1 = s.force_first().unwrap();
        let closed = s.force_first_closed_form().unwrap();
        assert!(((closed.edge_u0_first - f1) / f1).abs() < 1e-6);
        assert!(((closed.edge_slope_first - f1) / f1).abs() > 1e-2);
    }

    #[test]
    fn breakdown_identity() {
        let f = flow(1.0, 1.0).total_force().unwrap();
        assert_eq!(f.total, f.f0 + f.eps * f.f1 + f.eps * PI * f.p_r);
    }

    #[test]
    fn total_force_limits() {
        let small = flow(0.1, 1.0).total_force().unwrap();
        assert!(((small.total - small.f0) / small.f0).abs() < 0.05);
        let large = flow(10.0, 1.0).total_force().unwrap();
        assert!(large.total > large.f0);
    }

    #[test]
    fn edge_term_outgrows_first_order_force() {
        let lo = flow(1.0, 1.0).total_force().unwrap();
        let hi = flow(10.0, 1.0).total_force().unwrap();
        let edge_growth = hi.edge_contribution() / lo.edge_contribution();
        let f1_growth = hi.first_order_magnitude() / lo.first_order_magnitude();
        assert!(edge_growth > f1_growth);
    }

    #[test]
    fn first_order_force_converges_for_strongly_shear_thinning_fluid() {
        let s =
            Squeeze::new(FluidParams::stokes(56.234_132_519_034_91, 0.25, 0.1).unwrap()).unwrap();
        let f1 = s.force_first().unwrap();
        assert!(f1 < 0.0 && f1.is_finite());
    }
}
