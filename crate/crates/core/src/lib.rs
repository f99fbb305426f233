//! Lubrication model for squeeze flow of a Herschel–Bulkley fluid between
//! parallel circular plates.
//!
//! [`Squeeze`] bundles validated [`FluidParams`] with solver tolerances and
//! exposes the yield surface, the leading- and first-order fields, the plate
//! stress and the squeeze force. [`figures`] builds plot datasets over
//! parameter grids and [`output`] writes them as CSV, JSON or SVG.

// `!(x > 0.0)` style guards reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod exec;
pub mod figures;
pub mod first_order;
pub mod force;
pub mod leading_order;
pub mod model;
pub mod numerics;
pub mod output;
pub mod params;
pub mod yield_surface;

pub use error::{Error, Result};
pub use exec::Execution;
pub use figures::{run_figure, run_sweep, FigureDataset, FigureId, Series, SweepSpec, SweepTable};
pub use first_order::{FirstOrderCoefficients, LocalFirstOrder, PlugStresses};
pub use force::{FirstForceClosedForm, ForceBreakdown};
pub use leading_order::{FieldSample, LeadingStress, Region};
pub use model::{Kinematics, SolverTolerances, Squeeze, R_MIN};
pub use numerics::Tolerance;
pub use output::{emit, render, Format};
pub use params::{
    nondimensionalize, validate, DimensionalInputs, FluidParams, ParamWarning, ValidatedParams,
};
pub use yield_surface::YieldSurfacePoint;
