//! Solver context shared by the solution modules.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Tolerance;
use crate::params::FluidParams;

/// Near-axis cutoff below which first-order quantities are not evaluated.
pub const R_MIN: f64 = 1e-3;

/// Tolerances used by the yield-surface solve and all quadratures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverTolerances {
    pub root: Tolerance,
    pub quad: Tolerance,
}

impl Default for SolverTolerances {
    fn default() -> Self {
        // The yield surface is solved to round-off: g(r) differentiates
        // functions of z0 with steps of order 1e-6.
        SolverTolerances {
            root: Tolerance::root().with_abs(1e-15),
            quad: Tolerance::quad(),
        }
    }
}

/// Leading-order kinematics at one radius: the yield surface, the plug
/// velocity, their radial derivatives, and the extension-rate magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kinematics {
    pub r: f64,
    pub z0: f64,
    pub z0_prime: f64,
    pub u0: f64,
    pub u0_prime: f64,
    /// `2 sqrt(u0'^2 + (u0/r)^2 + u0' u0/r)`.
    pub eta: f64,
}

impl Kinematics {
    /// `u0 / r`.
    pub fn hoop_rate(&self) -> f64 {
        self.u0 / self.r
    }
}

/// Validated parameters plus solver settings.
///
/// Construction solves the yield surface at the disk edge once, so edge
/// quantities (`z0(1)`, `p_R`) are available without further root finding.
#[derive(Debug, Clone, PartialEq)]
pub struct Squeeze {
    params: FluidParams,
    tol: SolverTolerances,
    edge: Kinematics,
}

impl Squeeze {
    pub fn new(params: FluidParams) -> Result<Self> {
        Self::with_tolerances(params, SolverTolerances::default())
    }

    pub fn with_tolerances(params: FluidParams, tol: SolverTolerances) -> Result<Self> {
        if params.bingham() <= 0.0 {
            return Err(Error::DegenerateFluid);
        }
        tol.root.check()?;
        tol.quad.check()?;
        let mut squeeze = Squeeze {
            params,
            tol,
            edge: Kinematics {
                r: 1.0,
                z0: 1.0,
                z0_prime: 0.0,
                u0: 0.0,
                u0_prime: 0.0,
                eta: 0.0,
            },
        };
        squeeze.edge = squeeze
            .kinematics(1.0)
            .map_err(|e| e.at(params.bingham(), params.index(), Some(1.0)))?;
        Ok(squeeze)
    }

    pub fn params(&self) -> &FluidParams {
        &self.params
    }

    pub fn tolerances(&self) -> &SolverTolerances {
        &self.tol
    }

    /// Kinematics at `r = 1`.
    pub fn edge(&self) -> &Kinematics {
        &self.edge
    }

    pub(crate) fn bingham(&self) -> f64 {
        self.params.bingham()
    }

    pub(crate) fn index(&self) -> f64 {
        self.params.index()
    }

    pub(crate) fn m(&self) -> f64 {
        self.params.inverse_index()
    }

    pub(crate) fn eps(&self) -> f64 {
        self.params.eps()
    }

    pub(crate) fn check_radius(r: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::Domain {
                what: "r",
                value: r,
                domain: "[0, 1]",
            });
        }
        Ok(())
    }

    pub(crate) fn check_height(z: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&z) {
            return Err(Error::Domain {
                what: "z",
                value: z,
                domain: "[0, 1]",
            });
        }
        Ok(())
    }
}
