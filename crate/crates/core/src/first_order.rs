//! First-order corrections in the shear layer and the pseudo-plug.
//!
//! The shear-layer velocity follows from the linearised constitutive law
//! `tau_rz^1 = n |du0/dz|^(n-1) du1/dz`, which gives
//!
//! ```text
//! u^{s,1} = (B/z0)^(m-1) { p1'/(n+1) [(z-z0)^m (z + n z0) - (1-z0)^m (1 + n z0)]
//!                          + g [(z-z0)^m - (1-z0)^m] }
//! ```
//!
//! and the plug velocity is `eta sqrt(z0^2 - z^2)` plus the shear value at
//! `z0`. The integration function `g(r)` comes from matching `tau_rz^1` across
//! the yield surface and `p1'` from the zero net first-order flux.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::leading_order::Region;
use crate::model::{Kinematics, Squeeze, R_MIN};
use crate::numerics::{try_derivative5, try_find_root, try_integrate};
use crate::params::FluidParams;

const R0_SCAN_POINTS: usize = 96;

/// Step in `z0` for the outer radial derivatives: `1e-3 min(z0, 1 - z0)`.
///
/// Radial derivatives are taken as `d/dz0` of closed-form functions of `z0`
/// times `z0'`, so no yield-surface solve enters the stencil.
pub fn z0_step(z0: f64) -> f64 {
    1e-3 * z0.min(1.0 - z0)
}

/// First-order fields refuse `r <= AXIS_GUARD`; the series forms apply there.
pub const AXIS_GUARD: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FirstOrderCoefficients {
    pub r: f64,
    pub eta: f64,
    pub g: f64,
    pub p1_prime: f64,
    pub p1: f64,
}

/// Leading-order kinematics with the local first-order coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalFirstOrder {
    pub kin: Kinematics,
    pub g: f64,
    pub p1_prime: f64,
}

/// Extensional stresses in the pseudo-plug (order `1/eps`) and the zero-order shear stress.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlugStresses {
    pub tau_rr: f64,
    pub tau_theta: f64,
    pub tau_rz: f64,
}

impl PlugStresses {
    /// Second invariant `sqrt(tau_rr^2 + tau_tt^2 + tau_rr tau_tt + tau_rz^2)`.
    pub fn invariant(&self) -> f64 {
        (self.tau_rr * self.tau_rr
            + self.tau_theta * self.tau_theta
            + self.tau_rr * self.tau_theta
            + self.tau_rz * self.tau_rz)
            .sqrt()
    }
}

/// Truncated small-`r` expansions of `tau_rz^0(r, 1)` and `tau_rz^1(r, 1)`.
pub fn plate_stress_series(p: &FluidParams, r: f64) -> Result<(f64, f64)> {
    if !(r > 0.0) {
        return Err(Error::Domain {
            what: "r",
            value: r,
            domain: "(0, 1]",
        });
    }
    let n = p.index();
    let b = p.bingham();
    let tau0 = -b
        - (r * b * (n + 1.0) / (2.0 * n)).powf(n / (n + 1.0))
        - (b * (n + 1.0) / n).powf((n - 1.0) / (n + 1.0)) * (3.0 * n + 1.0) / (2.0 * n + 1.0)
            * (0.5 * r).powf(2.0 * n / (n + 1.0));
    let tau1 = 3f64.sqrt() * PI * b.powf(n / (n + 1.0)) / 4.0
        * (2.0 * n / (r * (n + 1.0))).powf(1.0 / (n + 1.0));
    Ok((tau0, tau1))
}

fn sqrt_gap(z0: f64, z: f64) -> f64 {
    (z0 * z0 - z * z).max(0.0).sqrt()
}

impl Squeeze {
    pub fn eta(&self, r: f64) -> Result<f64> {
        Ok(self.kinematics(r)?.eta)
    }

    /// `z0 (2u0' + u0/r) / eta`, differentiated inside `g`.
    fn plug_stretch_moment(k: &Kinematics) -> f64 {
        k.z0 * (2.0 * k.u0_prime + k.hoop_rate()) / k.eta
    }

    /// `(2u0' + u0/r) / (eta z0)`, differentiated inside the plug shear stress.
    fn plug_stretch_ratio(k: &Kinematics) -> f64 {
        (2.0 * k.u0_prime + k.hoop_rate()) / (k.eta * k.z0)
    }

    /// `d/dr` of `f(kinematics)` along the yield surface, with `z0`-step `h`.
    fn radial_derivative(&self, k: &Kinematics, h: f64, f: fn(&Kinematics) -> f64) -> Result<f64> {
        let dz = try_derivative5(|z0| Ok(f(&self.kinematics_at_z0(z0)?)), k.z0, h)?;
        Ok(dz * k.z0_prime)
    }

    fn checked_kinematics(&self, r: f64, h: Option<f64>) -> Result<(Kinematics, f64)> {
        Self::check_radius(r)?;
        if r <= AXIS_GUARD {
            return Err(Error::NearAxis {
                r,
                r_min: AXIS_GUARD,
            });
        }
        let kin = self.kinematics(r)?;
        let room = 0.5 * kin.z0.min(1.0 - kin.z0);
        let h = h.unwrap_or_else(|| z0_step(kin.z0));
        if !(h > 0.0 && h < room) {
            return Err(Error::Domain {
                what: "z0 step",
                value: h,
                domain: "(0, min(z0, 1 - z0) / 2)",
            });
        }
        Ok((kin, h))
    }

    fn g_from(&self, k: &Kinematics, h: f64) -> Result<f64> {
        let dpsi = self.radial_derivative(k, h, Self::plug_stretch_moment)?;
        let twist = k.z0 * (k.u0_prime - k.hoop_rate()) / (k.eta * k.r);
        Ok(-0.5 * PI * self.bingham() * (dpsi + twist))
    }

    /// `g(r)` with the default differencing step.
    pub fn g(&self, r: f64) -> Result<f64> {
        Ok(self.local_first_order(r)?.g)
    }

    /// `g(r)` with an explicit step `h` in `z0`.
    pub fn g_with_step(&self, r: f64, h: f64) -> Result<f64> {
        Ok(self.local_first_order_with_step(r, h)?.g)
    }

    pub fn local_first_order(&self, r: f64) -> Result<LocalFirstOrder> {
        self.local_first_order_at(r, None)
    }

    pub fn local_first_order_with_step(&self, r: f64, h: f64) -> Result<LocalFirstOrder> {
        self.local_first_order_at(r, Some(h))
    }

    fn local_first_order_at(&self, r: f64, h: Option<f64>) -> Result<LocalFirstOrder> {
        let (kin, h) = self.checked_kinematics(r, h)?;
        let g = self.g_from(&kin, h)?;
        let p1_prime = -0.5 * PI * self.bingham() * kin.eta * kin.z0_prime - 2.0 * g * kin.u0_prime;
        Ok(LocalFirstOrder { kin, g, p1_prime })
    }

    /// `p1' = -pi B eta z0' / 2 - 2 g u0'`.
    pub fn p1_prime(&self, r: f64) -> Result<f64> {
        Ok(self.local_first_order(r)?.p1_prime)
    }

    pub fn p1_prime_with_step(&self, r: f64, h: f64) -> Result<f64> {
        Ok(self.local_first_order_with_step(r, h)?.p1_prime)
    }

    /// Residual of the first-order flux constraint `int_0^1 u^1 dz = 0`
    /// written in closed form (no slip at first order).
    pub fn flux_residual(&self, r: f64) -> Result<f64> {
        let l = self.local_first_order(r)?;
        Ok(self.flux_residual_of(&l))
    }

    pub(crate) fn flux_residual_of(&self, l: &LocalFirstOrder) -> f64 {
        let n = self.index();
        let z0 = l.kin.z0;
        let factor = (self.bingham() / z0).powf(self.m() - 1.0) * (1.0 - z0).powf(self.m());
        let pressure_term = l.p1_prime * (2.0 * n * n * z0 * z0 + 2.0 * n * z0 + n + 1.0)
            / ((n + 1.0) * (2.0 * n + 1.0));
        let g_term = l.g * (n * z0 + 1.0) / (n + 1.0);
        z0 * z0 * l.kin.eta * PI / 4.0 - factor * (pressure_term + g_term)
    }

    /// First-order pressure with `p1(1) = 0`; frozen at `p1(R_MIN)` below the cutoff.
    pub fn p1(&self, r: f64) -> Result<f64> {
        Self::check_radius(r)?;
        let lo = r.max(R_MIN);
        let integral = try_integrate(|x| self.p1_prime(x), lo, 1.0, self.tolerances().quad)?;
        Ok(-integral)
    }

    /// `p1` on an ascending radial grid, accumulated segment by segment from the edge.
    pub fn p1_profile(&self, radii: &[f64]) -> Result<Vec<f64>> {
        if radii.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidSweep("radial grid must be ascending"));
        }
        for &r in radii {
            Self::check_radius(r)?;
        }
        let mut out = vec![0.0; radii.len()];
        let mut acc = 0.0;
        let mut upper = 1.0;
        for (slot, &r) in out.iter_mut().zip(radii).rev() {
            let lo = r.max(R_MIN);
            acc -= try_integrate(|x| self.p1_prime(x), lo, upper, self.tolerances().quad)?;
            upper = lo;
            *slot = acc;
        }
        Ok(out)
    }

    pub fn first_order_coefficients(&self, r: f64) -> Result<FirstOrderCoefficients> {
        let l = self.local_first_order(r)?;
        Ok(FirstOrderCoefficients {
            r,
            eta: l.kin.eta,
            g: l.g,
            p1_prime: l.p1_prime,
            p1: self.p1(r)?,
        })
    }

    /// Shear-layer `u^{s,1}` or plug `u^{p,1}` at `(r, z)`.
    pub fn u_first(&self, r: f64, z: f64) -> Result<f64> {
        Self::check_height(z)?;
        let l = self.local_first_order(r)?;
        Ok(self.u_first_of(&l, z))
    }

    pub(crate) fn u_first_of(&self, l: &LocalFirstOrder, z: f64) -> f64 {
        if z >= l.kin.z0 {
            self.u_first_shear_of(l, z)
        } else {
            self.u_first_plug_of(l, z)
        }
    }

    /// Plug branch of `u^1` on `[0, z0]`.
    pub fn u_first_plug(&self, r: f64, z: f64) -> Result<f64> {
        Self::check_height(z)?;
        let l = self.local_first_order(r)?;
        if z > l.kin.z0 {
            return Err(Error::Domain {
                what: "z",
                value: z,
                domain: "[0, z0(r)]",
            });
        }
        Ok(self.u_first_plug_of(&l, z))
    }

    /// Shear-layer branch of `u^1` on `[z0, 1]`.
    pub fn u_first_shear(&self, r: f64, z: f64) -> Result<f64> {
        Self::check_height(z)?;
        let l = self.local_first_order(r)?;
        if z < l.kin.z0 {
            return Err(Error::Domain {
                what: "z",
                value: z,
                domain: "[z0(r), 1]",
            });
        }
        Ok(self.u_first_shear_of(&l, z))
    }

    /// `(B/z0)^(m-1)`, the linearised shear compliance.
    fn compliance(&self, z0: f64) -> f64 {
        (self.bingham() / z0).powf(self.m() - 1.0)
    }

    fn u_first_plug_of(&self, l: &LocalFirstOrder, z: f64) -> f64 {
        let n = self.index();
        let z0 = l.kin.z0;
        let gap_m = (1.0 - z0).powf(self.m());
        let surface =
            self.compliance(z0) * (-l.p1_prime * gap_m * (1.0 + n * z0) / (n + 1.0) - l.g * gap_m);
        l.kin.eta * sqrt_gap(z0, z) + surface
    }

    fn u_first_shear_of(&self, l: &LocalFirstOrder, z: f64) -> f64 {
        let n = self.index();
        let m = self.m();
        let z0 = l.kin.z0;
        let gap_m = (1.0 - z0).powf(m);
        let lift_m = (z - z0).powf(m);
        self.compliance(z0)
            * (l.p1_prime / (n + 1.0) * (lift_m * (z + n * z0) - gap_m * (1.0 + n * z0))
                + l.g * (lift_m - gap_m))
    }

    /// Shear-layer branch `z p1' + g`, regardless of region.
    pub fn tau_rz_first_shear(&self, r: f64, z: f64) -> Result<f64> {
        Self::check_height(z)?;
        let l = self.local_first_order(r)?;
        Ok(z * l.p1_prime + l.g)
    }

    /// Plug branch of `tau_rz^1`, regardless of region.
    ///
    /// Differentiates `(2u0' + u0/r)/(eta z0)` on its own, so agreement with
    /// the shear branch at `z0` is an independent check of `g`.
    pub fn tau_rz_first_plug(&self, r: f64, z: f64) -> Result<f64> {
        Self::check_height(z)?;
        let l = self.local_first_order(r)?;
        let k = l.kin;
        if z > k.z0 {
            return Err(Error::Domain {
                what: "z",
                value: z,
                domain: "[0, z0(r)]",
            });
        }
        let phi = Self::plug_stretch_ratio(&k);
        let dphi = self.radial_derivative(&k, z0_step(k.z0), Self::plug_stretch_ratio)?;
        let b = self.bingham();
        let angle = (z / k.z0).clamp(-1.0, 1.0).asin();
        let twist = (k.u0_prime - k.hoop_rate()) / (r * k.eta * k.z0);
        Ok(
            -b * (z * sqrt_gap(k.z0, z) + k.z0 * k.z0 * angle) * (dphi + twist)
                - 2.0 * b * phi * k.z0_prime * k.z0 * angle
                + l.p1_prime * z,
        )
    }

    pub fn tau_rz_first(&self, r: f64, z: f64) -> Result<f64> {
        match self.region(r, z)? {
            Region::Shear => self.tau_rz_first_shear(r, z),
            Region::PseudoPlug => self.tau_rz_first_plug(r, z),
        }
    }

    /// `p^{p,1} = -(2B/(eta z0)) (u0' + u0/r) sqrt(z0^2 - z^2) + p1(r)` inside the plug.
    pub fn p_first_plug(&self, r: f64, z: f64) -> Result<f64> {
        Self::check_height(z)?;
        let k = self.kinematics(r)?;
        if z > k.z0 {
            return Err(Error::Domain {
                what: "z",
                value: z,
                domain: "[0, z0(r)]",
            });
        }
        let p1 = self.p1(r)?;
        Ok(p1
            - 2.0 * self.bingham() / (k.eta * k.z0)
                * (k.u0_prime + k.hoop_rate())
                * sqrt_gap(k.z0, z))
    }

    /// First-order pressure in either region (`p1(r)` in the shear layer).
    pub fn p_first(&self, r: f64, z: f64) -> Result<f64> {
        match self.region(r, z)? {
            Region::Shear => self.p1(r),
            Region::PseudoPlug => self.p_first_plug(r, z),
        }
    }

    pub fn plug_stresses(&self, r: f64, z: f64) -> Result<PlugStresses> {
        Self::check_height(z)?;
        let k = self.kinematics(r)?;
        let scale = 2.0 * self.bingham() / (k.eta * k.z0) * sqrt_gap(k.z0, z);
        Ok(PlugStresses {
            tau_rr: scale * k.u0_prime,
            tau_theta: scale * k.hoop_rate(),
            tau_rz: -self.bingham() * z / k.z0,
        })
    }

    /// Two-term stress invariant on the plate, `B/z0 - eps (p1' + g)`.
    pub fn plate_stress(&self, r: f64) -> Result<f64> {
        if r <= R_MIN {
            return Err(Error::NearAxis { r, r_min: R_MIN });
        }
        let l = self.local_first_order(r)?;
        Ok(self.bingham() / l.kin.z0 - self.eps() * (l.p1_prime + l.g))
    }

    /// Zero-order plate stress `B/z0`.
    pub fn plate_stress_zero(&self, r: f64) -> Result<f64> {
        Ok(self.bingham() / self.z0(r)?)
    }

    /// Radius of the unyielded zone on the plate: the first radius above the
    /// cutoff where the plate stress rises through `B`. `None` when the plate
    /// stays yielded on `(R_MIN, 1]`.
    pub fn find_r0(&self) -> Result<Option<f64>> {
        let b = self.bingham();
        let excess = |r: f64| self.plate_stress(r).map(|t| t - b);
        let start = R_MIN * (1.0 + 1e-6);
        let ratio = (1.0 / start).powf(1.0 / (R0_SCAN_POINTS - 1) as f64);
        let mut lo = start;
        let mut f_lo = excess(lo)?;
        for i in 1..R0_SCAN_POINTS {
            let hi = if i == R0_SCAN_POINTS - 1 {
                1.0
            } else {
                start * ratio.powi(i as i32)
            };
            let f_hi = excess(hi)?;
            if f_lo < 0.0 && f_hi >= 0.0 {
                return try_find_root(excess, lo, hi, self.tolerances().root.with_abs(1e-12))
                    .map(Some);
            }
            lo = hi;
            f_lo = f_hi;
        }
        Ok(None)
    }
}
