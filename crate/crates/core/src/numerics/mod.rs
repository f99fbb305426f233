//! Scalar root finding, adaptive quadrature and finite differences.
//!
//! Every routine comes in an infallible flavour taking `FnMut(f64) -> f64`
//! and a `try_` flavour for integrands and residuals that can themselves fail.

mod diff;
mod quad;
mod root;

pub use diff::{
    default_step, derivative, derivative5, derivative_clamped, try_derivative, try_derivative5,
    try_derivative_clamped,
};
pub use quad::{integrate, try_integrate, try_integrate_detailed, Quadrature};
pub use root::{find_root, try_find_root};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Stopping rule shared by the root finder and the quadrature.
///
/// For quadrature `max_iter` caps the number of subintervals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64, max_iter: usize) -> Result<Self> {
        let t = Tolerance {
            abs_tol,
            rel_tol,
            max_iter,
        };
        t.check()?;
        Ok(t)
    }

    pub fn check(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::InvalidParameter {
                field: "abs_tol",
                value: self.abs_tol,
                reason: "must be positive",
            });
        }
        if !(self.rel_tol >= 0.0) {
            return Err(Error::InvalidParameter {
                field: "rel_tol",
                value: self.rel_tol,
                reason: "must be non-negative",
            });
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter {
                field: "max_iter",
                value: 0.0,
                reason: "must be at least one",
            });
        }
        Ok(())
    }

    /// Root-finding default: absolute 1e-12.
    pub const fn root() -> Self {
        Tolerance {
            abs_tol: 1e-12,
            rel_tol: 0.0,
            max_iter: 200,
        }
    }

    /// Quadrature default: relative 1e-10.
    pub const fn quad() -> Self {
        Tolerance {
            abs_tol: 1e-14,
            rel_tol: 1e-10,
            max_iter: 2000,
        }
    }

    pub fn with_abs(self, abs_tol: f64) -> Self {
        Tolerance { abs_tol, ..self }
    }

    pub fn with_rel(self, rel_tol: f64) -> Self {
        Tolerance { rel_tol, ..self }
    }
}
