//! The pseudo-yield surface `z0(r)`.
//!
//! `z0` is the root in `(0, 1]` of the flux condition
//!
//! ```text
//! (1 - z0)^(2+m) / (2+m) - (1 - z0)^(1+m) + (z0 / B)^m (r/2) (1+m) = 0,   m = 1/n
//! ```
//!
//! The same relation inverts explicitly to `r(z0)`, which the pressure and
//! force quadratures use as a change of variables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Kinematics, Squeeze};
use crate::numerics::find_root;
use crate::params::FluidParams;

/// Lower end of the root bracket for `z0`.
pub const Z0_FLOOR: f64 = 1e-14;

const SCAN_INTERVALS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct YieldSurfacePoint {
    pub r: f64,
    pub z0: f64,
    pub z0_prime: f64,
}

/// Left-hand side of the defining equation. Increasing in `z0` for `r > 0`.
pub fn yield_residual(p: &FluidParams, r: f64, z0: f64) -> f64 {
    let m = p.inverse_index();
    let gap = 1.0 - z0;
    gap.powf(2.0 + m) / (2.0 + m) - gap.powf(1.0 + m)
        + (z0 / p.bingham()).powf(m) * 0.5 * r * (1.0 + m)
}

/// `dz0/dr` expressed through `z0`; strictly negative on `(0, 1)`.
pub fn z0_prime(p: &FluidParams, z0: f64) -> Result<f64> {
    if !(z0 > 0.0 && z0 <= 1.0) {
        return Err(Error::Domain {
            what: "z0",
            value: z0,
            domain: "(0, 1]",
        });
    }
    if z0 == 1.0 {
        return Err(Error::Singular {
            what: "dz0/dr",
            r: 0.0,
        });
    }
    let n = p.index();
    let m = p.inverse_index();
    let num = (n + 1.0) * (2.0 * n + 1.0) * z0.powf(1.0 + m);
    let den = 2.0
        * p.bingham().powf(m)
        * (1.0 - z0).powf(m)
        * (2.0 * n * n * z0 * z0 + 2.0 * n * z0 + 1.0 + n);
    Ok(-num / den)
}

/// Explicit inverse `r(z0) = 2 B^m (1-z0)^(m+1) (m+1+z0) / (z0^m (m+1)(m+2))`.
pub fn r_of_z0(p: &FluidParams, z0: f64) -> Result<f64> {
    if !(z0 > 0.0 && z0 <= 1.0) {
        return Err(Error::Domain {
            what: "z0",
            value: z0,
            domain: "(0, 1]",
        });
    }
    let m = p.inverse_index();
    Ok(
        2.0 * p.bingham().powf(m) * (1.0 - z0).powf(m + 1.0) * (m + 1.0 + z0)
            / (z0.powf(m) * (m + 1.0) * (m + 2.0)),
    )
}

/// `dr/dz0`, the Jacobian of [`r_of_z0`].
pub fn dr_dz0(p: &FluidParams, z0: f64) -> Result<f64> {
    if !(z0 > 0.0 && z0 <= 1.0) {
        return Err(Error::Domain {
            what: "z0",
            value: z0,
            domain: "(0, 1]",
        });
    }
    let m = p.inverse_index();
    Ok(
        -2.0 * p.bingham().powf(m) * (1.0 - z0).powf(m) * shape_poly(m, z0)
            / (z0.powf(m + 1.0) * (m + 1.0) * (m + 2.0)),
    )
}

/// `2 s^2 + 2 m s + m + m^2`, shared by the Jacobian and the pressure kernel.
pub(crate) fn shape_poly(m: f64, s: f64) -> f64 {
    2.0 * s * s + 2.0 * m * s + m + m * m
}

/// Plug velocity `u0 = B^m (1-z0)^(1+m) / (z0^m (1+m))` as a function of `z0`.
pub(crate) fn plug_velocity_of_z0(p: &FluidParams, z0: f64) -> f64 {
    let m = p.inverse_index();
    p.bingham().powf(m) * (1.0 - z0).powf(1.0 + m) / (z0.powf(m) * (1.0 + m))
}

/// `du0/dz0`.
pub(crate) fn plug_velocity_dz0(p: &FluidParams, z0: f64) -> f64 {
    let m = p.inverse_index();
    -p.bingham().powf(m) * (1.0 - z0).powf(m) * z0.powf(-m - 1.0) * (z0 + m) / (m + 1.0)
}

impl Squeeze {
    /// Solves for `z0(r)`; `r = 0` returns exactly 1.
    pub fn z0(&self, r: f64) -> Result<f64> {
        Self::check_radius(r)?;
        if r == 0.0 {
            return Ok(1.0);
        }
        let p = *self.params();
        let f = |z0: f64| yield_residual(&p, r, z0);
        let tol = self.tolerances().root;
        match find_root(f, Z0_FLOOR, 1.0, tol) {
            Err(Error::NoBracket { .. }) => {
                let step = (1.0 - Z0_FLOOR) / SCAN_INTERVALS as f64;
                let mut lo = Z0_FLOOR;
                let mut f_lo = f(lo);
                for i in 1..=SCAN_INTERVALS {
                    let hi = if i == SCAN_INTERVALS {
                        1.0
                    } else {
                        Z0_FLOOR + step * i as f64
                    };
                    let f_hi = f(hi);
                    if f_lo.signum() != f_hi.signum() {
                        return find_root(f, lo, hi, tol);
                    }
                    lo = hi;
                    f_lo = f_hi;
                }
                Err(Error::NoBracket {
                    lo: Z0_FLOOR,
                    hi: 1.0,
                    f_lo: f(Z0_FLOOR),
                    f_hi: f(1.0),
                })
            }
            other => other,
        }
    }

    /// `z0(1)`.
    pub fn z0_edge(&self) -> f64 {
        self.edge().z0
    }

    /// `(r, z0, z0')` for `r` in `(0, 1]`.
    pub fn yield_point(&self, r: f64) -> Result<YieldSurfacePoint> {
        let z0 = self.z0(r)?;
        Ok(YieldSurfacePoint {
            r,
            z0,
            z0_prime: z0_prime(self.params(), z0)?,
        })
    }

    /// Yield surface, plug velocity and their slopes at `r` in `(0, 1]`.
    pub fn kinematics(&self, r: f64) -> Result<Kinematics> {
        if r == 0.0 {
            return Err(Error::Singular {
                what: "leading-order kinematics",
                r,
            });
        }
        let z0 = self.z0(r)?;
        kinematics_from(self.params(), r, z0)
    }

    /// Kinematics at the radius whose yield surface sits at `z0`, without a root solve.
    pub(crate) fn kinematics_at_z0(&self, z0: f64) -> Result<Kinematics> {
        let p = self.params();
        kinematics_from(p, r_of_z0(p, z0)?, z0)
    }
}

fn kinematics_from(p: &FluidParams, r: f64, z0: f64) -> Result<Kinematics> {
    let z0p = z0_prime(p, z0)?;
    let u0 = plug_velocity_of_z0(p, z0);
    let u0p = plug_velocity_dz0(p, z0) * z0p;
    let hoop = u0 / r;
    let eta = 2.0 * (u0p * u0p + hoop * hoop + u0p * hoop).sqrt();
    Ok(Kinematics {
        r,
        z0,
        z0_prime: z0p,
        u0,
        u0_prime: u0p,
        eta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn flow(b: f64, n: f64) -> Squeeze {
        Squeeze::new(FluidParams::stokes(b, n, 0.1).unwrap()).unwrap()
    }

    /// Plain bisection on the n = 1 specialisation, independent of the solver.
    fn bingham_cubic_root(b: f64, r: f64) -> f64 {
        let f = |z: f64| (1.0 - z).powi(3) / 3.0 - (1.0 - z).powi(2) + z / b * r;
        let (mut lo, mut hi) = (1e-14, 1.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn axis_value_is_exactly_one() {
        for (b, n) in [(0.01, 0.25), (1.0, 1.0), (10.0, 1.5)] {
            assert_eq!(flow(b, n).z0(0.0).unwrap(), 1.0);
        }
    }

    #[test]
    fn bingham_case_matches_bisection() {
        let z0 = flow(1.0, 1.0).z0(0.5).unwrap();
        assert!((z0 - bingham_cubic_root(1.0, 0.5)).abs() < 1e-12);
        // Frozen from a 30-digit mpmath solve of the n = 1 cubic.
        assert!((z0 - 0.467_090_379_244_913_2).abs() < 1e-12, "{z0}");
    }

    #[test]
    fn edge_value_matches_bisection() {
        let s = flow(1.0, 1.0);
        assert!((s.z0_edge() - bingham_cubic_root(1.0, 1.0)).abs() < 1e-12);
    }

    #[test]
    fn large_bingham_pins_surface_to_plate() {
        let s = flow(1e6, 0.5);
        assert!((s.z0(1.0).unwrap() - 1.0).abs() < 1e-2);
        assert!((s.z0_edge() - 1.0).abs() < 1e-2);
    }

    #[test]
    fn surface_rises_with_bingham_number() {
        assert!(flow(10.0, 0.5).z0_edge() > flow(0.1, 0.5).z0_edge());
    }

    #[test]
    fn zero_bingham_is_degenerate() {
        let p = FluidParams::stokes(0.0, 1.0, 0.1).unwrap();
        assert!(matches!(Squeeze::new(p), Err(Error::DegenerateFluid)));
    }

    #[test]
    fn radius_outside_unit_interval_is_rejected() {
        assert!(matches!(flow(1.0, 1.0).z0(1.5), Err(Error::Domain { .. })));
    }

    #[test]
    fn slope_is_negative_and_matches_finite_difference() {
        for (b, n, r) in [
            (1.0, 1.0, 0.5),
            (1.0, 0.5, 0.9),
            (0.01, 0.25, 0.3),
            (10.0, 1.5, 0.7),
        ] {
            let s = flow(b, n);
            let z0 = s.z0(r).unwrap();
            let slope = z0_prime(s.params(), z0).unwrap();
            assert!(slope < 0.0);
            let h = 1e-6;
            let fd = (s.z0(r + h).unwrap() - s.z0(r - h).unwrap()) / (2.0 * h);
            assert_relative_eq!(slope, fd, max_relative = 1e-6);
        }
    }

    #[test]
    fn slope_is_singular_on_the_axis() {
        let p = FluidParams::stokes(1.0, 1.0, 0.1).unwrap();
        assert!(matches!(z0_prime(&p, 1.0), Err(Error::Singular { .. })));
    }

    #[test]
    fn inverse_map_examples() {
        let p = FluidParams::stokes(1.0, 1.0, 0.1).unwrap();
        assert_eq!(r_of_z0(&p, 1.0).unwrap(), 0.0);
        assert!((r_of_z0(&p, 0.5).unwrap() - 5.0 / 12.0).abs() < 1e-15);
        assert!(matches!(r_of_z0(&p, 0.0), Err(Error::Domain { .. })));
        assert!(matches!(dr_dz0(&p, 0.0), Err(Error::Domain { .. })));

        let s = flow(2.0, 0.5);
        let z0 = s.z0(0.3).unwrap();
        assert!((r_of_z0(s.params(), z0).unwrap() - 0.3).abs() < 1e-9);
    }

    #[test]
    fn jacobian_matches_finite_difference() {
        let p = FluidParams::stokes(1.0, 1.0, 0.1).unwrap();
        let h = 1e-6;
        let fd = (r_of_z0(&p, 0.5 + h).unwrap() - r_of_z0(&p, 0.5 - h).unwrap()) / (2.0 * h);
        let j = dr_dz0(&p, 0.5).unwrap();
        assert!(j < 0.0);
        assert_relative_eq!(j, fd, max_relative = 1e-6);
    }

    #[test]
    fn jacobian_is_reciprocal_of_slope() {
        let s = flow(2.0, 0.5);
        let pt = s.yield_point(0.4).unwrap();
        let product = dr_dz0(s.params(), pt.z0).unwrap() * pt.z0_prime;
        assert!((product - 1.0).abs() < 1e-6);
    }

    #[test]
    fn surface_decreases_on_fine_grid() {
        let s = flow(0.1, 0.5);
        let mut prev = s.z0(0.0).unwrap();
        for i in 1..=100 {
            let z = s.z0(i as f64 / 100.0).unwrap();
            assert!(z < prev);
            assert!(yield_residual(s.params(), i as f64 / 100.0, z).abs() <= 1e-10);
            prev = z;
        }
    }
}
