//! Figure datasets and parameter sweeps.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::force::ForceBreakdown;
use crate::leading_order::Region;
use crate::model::{SolverTolerances, Squeeze, R_MIN};
use crate::params::FluidParams;

pub const DEFAULT_EPS: f64 = 0.1;
pub const DEFAULT_R_GRID: usize = 100;
pub const DEFAULT_Z_GRID: usize = 50;
/// Bingham numbers for the yield-surface, plate-stress and pressure figures.
pub const DEFAULT_FIELD_BINGHAM: [f64; 4] = [0.01, 0.1, 1.0, 10.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FigureId {
    Fig2,
    Fig3,
    Fig4a,
    Fig4b,
    Fig5,
    Fig6,
}

impl FigureId {
    pub const ALL: [FigureId; 6] = [
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4a,
        FigureId::Fig4b,
        FigureId::Fig5,
        FigureId::Fig6,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4a => "fig4a",
            FigureId::Fig4b => "fig4b",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
        }
    }

    pub fn default_bingham(self) -> Vec<f64> {
        match self {
            FigureId::Fig5 | FigureId::Fig6 => log_grid(1e-2, 1e2, 17),
            _ => DEFAULT_FIELD_BINGHAM.to_vec(),
        }
    }

    pub fn default_index(self) -> Vec<f64> {
        match self {
            FigureId::Fig2 => vec![1.0, 0.5, 0.25],
            FigureId::Fig3 | FigureId::Fig4a => vec![0.5],
            FigureId::Fig4b => vec![0.5, 1.0, 1.5],
            FigureId::Fig5 => vec![1.0],
            FigureId::Fig6 => vec![0.25, 0.5, 1.0, 1.5],
        }
    }

    fn axes(self) -> Axes {
        let (x, y, log) = match self {
            FigureId::Fig2 => ("r", "z0", false),
            FigureId::Fig3 => ("r", "tau(r, 1)", false),
            FigureId::Fig4a | FigureId::Fig4b => ("r", "p(r)", false),
            FigureId::Fig5 => ("B", "force", true),
            FigureId::Fig6 => ("B", "F", true),
        };
        Axes {
            x: x.to_string(),
            y: y.to_string(),
            log_x: log,
            log_y: log,
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownFigure(s.to_string()))
    }
}

/// `count` points spaced evenly in `log10` between `lo` and `hi`, inclusive.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.log10(), hi.log10());
    (0..count)
        .map(|i| 10f64.powf(a + (b - a) * i as f64 / (count - 1) as f64))
        .collect()
}

/// Radial grid on `[0, 1]`, used where `r = 0` is regular.
pub fn closed_radial_grid(count: usize) -> Vec<f64> {
    (0..count).map(|i| i as f64 / (count - 1) as f64).collect()
}

/// Radial grid from `max(1/(2 count), 2 R_MIN)` to 1, avoiding the axis.
pub fn open_radial_grid(count: usize) -> Vec<f64> {
    let start = (0.5 / count as f64).max(2.0 * R_MIN);
    (0..count)
        .map(|i| {
            if i + 1 == count {
                1.0
            } else {
                start + (1.0 - start) * i as f64 / (count - 1) as f64
            }
        })
        .collect()
}

/// Parameter grid for a figure or sweep. Empty lists take figure defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub bingham: Vec<f64>,
    pub index: Vec<f64>,
    pub eps: f64,
    pub r_grid: usize,
    pub z_grid: usize,
    pub tolerances: SolverTolerances,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            bingham: Vec::new(),
            index: Vec::new(),
            eps: DEFAULT_EPS,
            r_grid: DEFAULT_R_GRID,
            z_grid: DEFAULT_Z_GRID,
            tolerances: SolverTolerances::default(),
        }
    }
}

impl SweepSpec {
    /// Fills empty parameter lists from the figure defaults and checks the grid sizes.
    pub fn resolved(&self, id: FigureId) -> Result<SweepSpec> {
        let mut spec = self.clone();
        if spec.bingham.is_empty() {
            spec.bingham = id.default_bingham();
        }
        if spec.index.is_empty() {
            spec.index = id.default_index();
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.bingham.is_empty() || self.index.is_empty() {
            return Err(Error::InvalidSweep("parameter lists must be non-empty"));
        }
        if self.r_grid < 2 || self.z_grid < 2 {
            return Err(Error::InvalidSweep("grids need at least two points"));
        }
        self.tolerances.root.check()?;
        self.tolerances.quad.check()?;
        for &b in &self.bingham {
            for &n in &self.index {
                FluidParams::stokes(b, n, self.eps)?;
            }
        }
        Ok(())
    }

    fn squeeze(&self, bingham: f64, index: f64) -> Result<Squeeze> {
        let p = FluidParams::stokes(bingham, index, self.eps)?;
        Squeeze::with_tolerances(p, self.tolerances).map_err(|e| e.at(bingham, index, None))
    }

    fn pairs(&self) -> Vec<(f64, f64)> {
        self.index
            .iter()
            .flat_map(|&n| self.bingham.iter().map(move |&b| (b, n)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axes {
    pub x: String,
    pub y: String,
    pub log_x: bool,
    pub log_y: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub label: String,
    pub points: Vec<[f64; 2]>,
}

impl Series {
    fn new(label: String, xs: &[f64], ys: &[f64]) -> Self {
        Series {
            label,
            points: xs.iter().zip(ys).map(|(&x, &y)| [x, y]).collect(),
        }
    }

    pub fn is_increasing_in_x(&self) -> bool {
        self.points.windows(2).all(|w| w[1][0] > w[0][0])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetParams {
    pub bingham: Vec<f64>,
    pub index: Vec<f64>,
    pub eps: f64,
    pub r_grid: usize,
    pub z_grid: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureDataset {
    pub figure_id: FigureId,
    pub params: DatasetParams,
    pub tolerances: SolverTolerances,
    pub version: String,
    pub axes: Axes,
    pub series: Vec<Series>,
}

impl FigureDataset {
    pub fn empty(figure_id: FigureId, spec: &SweepSpec) -> Self {
        FigureDataset {
            figure_id,
            params: DatasetParams {
                bingham: spec.bingham.clone(),
                index: spec.index.clone(),
                eps: spec.eps,
                r_grid: spec.r_grid,
                z_grid: spec.z_grid,
            },
            tolerances: spec.tolerances,
            version: env!("CARGO_PKG_VERSION").to_string(),
            axes: figure_id.axes(),
            series: Vec::new(),
        }
    }

    pub fn series(&self, label: &str) -> Option<&Series> {
        self.series.iter().find(|s| s.label == label)
    }

    pub fn row_count(&self) -> usize {
        self.series.iter().map(|s| s.points.len()).sum()
    }
}

fn tag(b: f64, n: f64) -> String {
    format!("B={b} n={n}")
}

/// Evaluates every series of a figure. Parameter points run under `exec`.
pub fn run_figure(spec: &SweepSpec, id: FigureId, exec: Execution) -> Result<FigureDataset> {
    let spec = spec.resolved(id)?;
    let mut data = FigureDataset::empty(id, &spec);
    let pairs = spec.pairs();
    let groups: Vec<Vec<Series>> = match id {
        FigureId::Fig2 => exec.try_map(&pairs, |&(b, n)| yield_surface_series(&spec, b, n))?,
        FigureId::Fig3 => exec.try_map(&pairs, |&(b, n)| plate_stress_series(&spec, b, n))?,
        FigureId::Fig4a => exec.try_map(&pairs, |&(b, n)| pressure_series(&spec, b, n, true))?,
        FigureId::Fig4b => exec.try_map(&pairs, |&(b, n)| pressure_series(&spec, b, n, false))?,
        FigureId::Fig5 | FigureId::Fig6 => {
            let forces = exec.try_map(&pairs, |&(b, n)| {
                spec.squeeze(b, n)?
                    .total_force()
                    .map_err(|e| e.at(b, n, None))
            })?;
            force_series(&spec, id, &forces)
        }
    };
    data.series = groups.into_iter().flatten().collect();
    Ok(data)
}

fn yield_surface_series(spec: &SweepSpec, b: f64, n: f64) -> Result<Vec<Series>> {
    let s = spec.squeeze(b, n)?;
    let rs = closed_radial_grid(spec.r_grid);
    let zs = rs
        .iter()
        .map(|&r| s.z0(r).map_err(|e| e.at(b, n, Some(r))))
        .collect::<Result<Vec<_>>>()?;
    Ok(vec![Series::new(format!("z0 {}", tag(b, n)), &rs, &zs)])
}

fn plate_stress_series(spec: &SweepSpec, b: f64, n: f64) -> Result<Vec<Series>> {
    let s = spec.squeeze(b, n)?;
    let rs = open_radial_grid(spec.r_grid);
    let mut leading = Vec::with_capacity(rs.len());
    let mut full = Vec::with_capacity(rs.len());
    for &r in &rs {
        let at = |e: Error| e.at(b, n, Some(r));
        leading.push(s.plate_stress_zero(r).map_err(at)?);
        full.push(s.plate_stress(r).map_err(at)?);
    }
    let mut out = vec![
        Series::new(format!("tau0 {}", tag(b, n)), &rs, &leading),
        Series::new(format!("tau {}", tag(b, n)), &rs, &full),
    ];
    if let Some(r0) = s.find_r0().map_err(|e| e.at(b, n, None))? {
        out.push(Series::new(format!("r0 {}", tag(b, n)), &[r0], &[b]));
    }
    Ok(out)
}

fn pressure_series(spec: &SweepSpec, b: f64, n: f64, with_leading: bool) -> Result<Vec<Series>> {
    let s = spec.squeeze(b, n)?;
    let rs = open_radial_grid(spec.r_grid);
    let p1 = s.p1_profile(&rs).map_err(|e| e.at(b, n, None))?;
    let p0 = rs
        .iter()
        .map(|&r| s.pressure_zero(r).map_err(|e| e.at(b, n, Some(r))))
        .collect::<Result<Vec<_>>>()?;
    let total: Vec<f64> = p0.iter().zip(&p1).map(|(a, c)| a + spec.eps * c).collect();
    let mut out = Vec::new();
    if with_leading {
        out.push(Series::new(format!("p0 {}", tag(b, n)), &rs, &p0));
    }
    out.push(Series::new(format!("p {}", tag(b, n)), &rs, &total));
    Ok(out)
}

fn force_series(spec: &SweepSpec, id: FigureId, forces: &[ForceBreakdown]) -> Vec<Vec<Series>> {
    let nb = spec.bingham.len();
    // Sort so the B axis ascends even for unordered user grids.
    let mut order: Vec<usize> = (0..nb).collect();
    order.sort_by(|&i, &j| spec.bingham[i].total_cmp(&spec.bingham[j]));
    let bs: Vec<f64> = order.iter().map(|&i| spec.bingham[i]).collect();
    spec.index
        .iter()
        .enumerate()
        .map(|(k, &n)| {
            let row: Vec<&ForceBreakdown> = order.iter().map(|&i| &forces[k * nb + i]).collect();
            let pick = |f: fn(&ForceBreakdown) -> f64| row.iter().map(|x| f(x)).collect::<Vec<_>>();
            let mut out = vec![Series::new(format!("F n={n}"), &bs, &pick(|f| f.total))];
            if id == FigureId::Fig5 {
                out.push(Series::new(format!("F0 n={n}"), &bs, &pick(|f| f.f0)));
                out.push(Series::new(
                    format!("|eps F1| n={n}"),
                    &bs,
                    &pick(ForceBreakdown::first_order_magnitude),
                ));
                out.push(Series::new(
                    format!("eps pi pR n={n}"),
                    &bs,
                    &pick(ForceBreakdown::edge_contribution),
                ));
            }
            out
        })
        .collect()
}

/// One row of a force sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub bingham: f64,
    pub index: f64,
    pub eps: f64,
    pub z0_edge: f64,
    pub force: ForceBreakdown,
    pub r0: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub params: DatasetParams,
    pub tolerances: SolverTolerances,
    pub version: String,
    pub rows: Vec<SweepRow>,
}

/// Force breakdown and unyielded-zone radius for every `(B, n)` pair.
pub fn run_sweep(spec: &SweepSpec, exec: Execution) -> Result<SweepTable> {
    let mut spec = spec.clone();
    if spec.bingham.is_empty() {
        spec.bingham = FigureId::Fig6.default_bingham();
    }
    if spec.index.is_empty() {
        spec.index = FigureId::Fig6.default_index();
    }
    spec.validate()?;
    let rows = exec.try_map(&spec.pairs(), |&(b, n)| {
        let s = spec.squeeze(b, n)?;
        let wrap = |e: Error| e.at(b, n, None);
        Ok(SweepRow {
            bingham: b,
            index: n,
            eps: spec.eps,
            z0_edge: s.z0_edge(),
            force: s.total_force().map_err(wrap)?,
            r0: s.find_r0().map_err(wrap)?,
        })
    })?;
    let template = FigureDataset::empty(FigureId::Fig6, &spec);
    Ok(SweepTable {
        params: template.params,
        tolerances: spec.tolerances,
        version: template.version,
        rows,
    })
}

/// All field quantities at one `(r, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointSample {
    pub r: f64,
    pub z: f64,
    pub region: Region,
    pub u0: f64,
    pub u1: f64,
    pub tau_rz0: f64,
    pub tau_rz1: f64,
    pub p0: f64,
    pub p1: f64,
    pub sigma_rr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointReport {
    pub params: FluidParams,
    pub tolerances: SolverTolerances,
    pub version: String,
    pub r: f64,
    pub z0: f64,
    /// `None` on the axis guard band `r <= R_MIN`.
    pub plate_stress: Option<f64>,
    pub force: ForceBreakdown,
    pub samples: Vec<PointSample>,
}

/// Evaluates the solution at radius `r` for each height in `heights`.
pub fn evaluate_point(
    params: FluidParams,
    tolerances: SolverTolerances,
    r: f64,
    heights: &[f64],
) -> Result<PointReport> {
    let (b, n) = (params.bingham(), params.index());
    let at = |e: Error| e.at(b, n, Some(r));
    let s = Squeeze::with_tolerances(params, tolerances).map_err(|e| e.at(b, n, None))?;
    let p0 = s.pressure_zero(r).map_err(at)?;
    let samples = heights
        .iter()
        .map(|&z| {
            let lead = s.leading_stress(r, z)?;
            Ok(PointSample {
                r,
                z,
                region: s.region(r, z)?,
                u0: s.u_zero(r, z)?,
                u1: s.u_first(r, z)?,
                tau_rz0: lead.tau_rz,
                tau_rz1: s.tau_rz_first(r, z)?,
                p0,
                p1: s.p_first(r, z)?,
                sigma_rr: s.sigma_rr(r, z)?,
            })
        })
        .collect::<Result<Vec<_>>>()
        .map_err(at)?;
    let plate_stress = if r > R_MIN {
        Some(s.plate_stress(r).map_err(at)?)
    } else {
        None
    };
    Ok(PointReport {
        params,
        tolerances,
        version: env!("CARGO_PKG_VERSION").to_string(),
        r,
        z0: s.z0(r).map_err(at)?,
        plate_stress,
        force: s.total_force().map_err(|e| e.at(b, n, None))?,
        samples,
    })
}
