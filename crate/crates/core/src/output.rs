//! Serialization of figure datasets and sweep tables.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::figures::{FigureDataset, PointReport, SweepTable};
use crate::leading_order::Region;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
    Svg,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            _ => Err(Error::UnsupportedFormat("expected csv, json or svg")),
        }
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render(data: &FigureDataset, format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut out = String::from("series,x,y\n");
            for s in &data.series {
                let label = csv_field(&s.label);
                for [x, y] in &s.points {
                    let _ = writeln!(out, "{label},{},{}", num(*x), num(*y));
                }
            }
            Ok(out)
        }
        Format::Json => json(data),
        Format::Svg => Ok(svg(data)),
    }
}

pub fn render_sweep(table: &SweepTable, format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut out = String::from("B,n,eps,z0_edge,p_R,F0,F1,F,r0\n");
            for row in &table.rows {
                let f = &row.force;
                let r0 = row.r0.map(num).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{r0}",
                    num(row.bingham),
                    num(row.index),
                    num(row.eps),
                    num(row.z0_edge),
                    num(f.p_r),
                    num(f.f0),
                    num(f.f1),
                    num(f.total),
                );
            }
            Ok(out)
        }
        Format::Json => json(table),
        Format::Svg => Err(Error::UnsupportedFormat(
            "sweep tables support csv and json only",
        )),
    }
}

pub fn render_point(report: &PointReport, format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut out = String::from("r,z,region,u0,u1,tau_rz0,tau_rz1,p0,p1,sigma_rr\n");
            for p in &report.samples {
                let region = match p.region {
                    Region::Shear => "shear",
                    Region::PseudoPlug => "pseudo_plug",
                };
                let _ = writeln!(
                    out,
                    "{},{},{region},{},{},{},{},{},{},{}",
                    num(p.r),
                    num(p.z),
                    num(p.u0),
                    num(p.u1),
                    num(p.tau_rz0),
                    num(p.tau_rz1),
                    num(p.p0),
                    num(p.p1),
                    num(p.sigma_rr),
                );
            }
            Ok(out)
        }
        Format::Json => json(report),
        Format::Svg => Err(Error::UnsupportedFormat(
            "point reports support csv and json only",
        )),
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|source| Error::Json {
        path: Default::default(),
        source,
    })?;
    s.push('\n');
    Ok(s)
}

fn write(text: &str, path: &Path) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn emit(data: &FigureDataset, format: Format, path: &Path) -> Result<()> {
    write(&render(data, format)?, path)
}

pub fn emit_sweep(table: &SweepTable, format: Format, path: &Path) -> Result<()> {
    write(&render_sweep(table, format)?, path)
}

pub fn emit_point(report: &PointReport, format: Format, path: &Path) -> Result<()> {
    write(&render_point(report, format)?, path)
}

pub fn read_json(path: &Path) -> Result<FigureDataset> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 200.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
    "#7f7f7f", "#bcbd22",
];
const DASHES: [&str; 4] = ["none", "7 4", "2 3", "9 3 2 3"];

/// Colour and dash index per series: labels are `<kind> <key=value ...>`;
/// one colour per tag and one dash per kind, or one colour per kind when
/// every series shares a tag.
fn styles(labels: &[&str]) -> Vec<(usize, usize)> {
    let mut kinds: Vec<&str> = Vec::new();
    let mut tags: Vec<&str> = Vec::new();
    let parts: Vec<(&str, &str)> = labels
        .iter()
        .map(|l| match l.find('=').and_then(|eq| l[..eq].rfind(' ')) {
            Some(at) => (&l[..at], &l[at + 1..]),
            None => (*l, ""),
        })
        .collect();
    for &(kind, tag) in &parts {
        if !kinds.contains(&kind) {
            kinds.push(kind);
        }
        if !tags.contains(&tag) {
            tags.push(tag);
        }
    }
    let position = |v: &[&str], x: &str| v.iter().position(|y| *y == x).unwrap_or(0);
    parts
        .iter()
        .map(|&(kind, tag)| {
            let k = position(&kinds, kind);
            if tags.len() == 1 {
                (k, 0)
            } else {
                (position(&tags, tag), k)
            }
        })
        .collect()
}

struct Scale {
    lo: f64,
    hi: f64,
    log: bool,
    from: f64,
    to: f64,
}

impl Scale {
    fn new(values: impl Iterator<Item = f64>, log: bool, from: f64, to: f64) -> Self {
        let vals: Vec<f64> = values.filter(|v| v.is_finite()).collect();
        let log = log && vals.iter().all(|&v| v > 0.0);
        let t = |v: f64| if log { v.log10() } else { v };
        let (mut lo, mut hi) = vals
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
                (a.min(t(v)), b.max(t(v)))
            });
        if !lo.is_finite() {
            (lo, hi) = (0.0, 1.0);
        }
        if hi - lo < 1e-12 {
            lo -= 0.5;
            hi += 0.5;
        }
        Scale {
            lo,
            hi,
            log,
            from,
            to,
        }
    }

    fn map(&self, v: f64) -> f64 {
        let t = if self.log { v.log10() } else { v };
        self.from + (t - self.lo) / (self.hi - self.lo) * (self.to - self.from)
    }

    fn ticks(&self) -> Vec<(f64, String)> {
        if self.log {
            (self.lo.ceil() as i32..=self.hi.floor() as i32)
                .map(|k| (10f64.powi(k), format!("1e{k}")))
                .collect()
        } else {
            (0..=5)
                .map(|i| {
                    let v = self.lo + (self.hi - self.lo) * i as f64 / 5.0;
                    (v, format!("{v:.3}"))
                })
                .collect()
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn svg(data: &FigureDataset) -> String {
    let points = || data.series.iter().flat_map(|s| s.points.iter());
    let sx = Scale::new(points().map(|p| p[0]), data.axes.log_x, LEFT, WIDTH - RIGHT);
    let sy = Scale::new(
        points().map(|p| p[1]),
        data.axes.log_y,
        HEIGHT - BOTTOM,
        TOP,
    );
    let mut o = String::new();
    let _ = writeln!(
        o,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(o, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        o,
        r#"<rect x="{LEFT}" y="{TOP}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        WIDTH - LEFT - RIGHT,
        HEIGHT - TOP - BOTTOM
    );
    for (v, label) in sx.ticks() {
        let x = sx.map(v);
        let y = HEIGHT - BOTTOM;
        let _ = writeln!(
            o,
            r#"<line x1="{x:.2}" y1="{y}" x2="{x:.2}" y2="{}" stroke="black"/><text x="{x:.2}" y="{}" text-anchor="middle">{label}</text>"#,
            y + 5.0,
            y + 20.0
        );
    }
    for (v, label) in sy.ticks() {
        let y = sy.map(v);
        let _ = writeln!(
            o,
            r#"<line x1="{}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/><text x="{}" y="{:.2}" text-anchor="end">{label}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        o,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        (LEFT + WIDTH - RIGHT) / 2.0,
        HEIGHT - 15.0,
        escape(&data.axes.x)
    );
    let _ = writeln!(
        o,
        r#"<text x="20" y="{}" text-anchor="middle" transform="rotate(-90 20 {})">{}</text>"#,
        (TOP + HEIGHT - BOTTOM) / 2.0,
        (TOP + HEIGHT - BOTTOM) / 2.0,
        escape(&data.axes.y)
    );
    let labels: Vec<&str> = data.series.iter().map(|s| s.label.as_str()).collect();
    let styles = styles(&labels);
    for (i, s) in data.series.iter().enumerate() {
        let colour = PALETTE[styles[i].0 % PALETTE.len()];
        let dash = DASHES[styles[i].1 % DASHES.len()];
        let visible: Vec<(f64, f64)> = s
            .points
            .iter()
            .filter(|p| p[0].is_finite() && p[1].is_finite())
            .filter(|p| (!sx.log || p[0] > 0.0) && (!sy.log || p[1] > 0.0))
            .map(|p| (sx.map(p[0]), sy.map(p[1])))
            .collect();
        if visible.len() == 1 {
            let (x, y) = visible[0];
            let _ = writeln!(
                o,
                r#"<path d="M {x:.2} {:.2} L {:.2} {y:.2} L {x:.2} {:.2} L {:.2} {y:.2} Z" fill="{colour}"/>"#,
                y - 6.0,
                x + 6.0,
                y + 6.0,
                x - 6.0
            );
        } else if !visible.is_empty() {
            let pts: Vec<String> = visible
                .iter()
                .map(|(x, y)| format!("{x:.2},{y:.2}"))
                .collect();
            let _ = writeln!(
                o,
                r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="1.5" stroke-dasharray="{dash}"/>"#,
                pts.join(" ")
            );
        }
        let ly = TOP + 10.0 + 16.0 * i as f64;
        let lx = WIDTH - RIGHT + 10.0;
        if s.points.len() == 1 {
            let cx = lx + 10.0;
            let _ = write!(
                o,
                r#"<path d="M {cx} {} L {} {ly} L {cx} {} L {} {ly} Z" fill="{colour}"/>"#,
                ly - 5.0,
                cx + 5.0,
                ly + 5.0,
                cx - 5.0
            );
        } else {
            let _ = write!(
                o,
                r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{colour}" stroke-width="2" stroke-dasharray="{dash}"/>"#,
                lx + 20.0
            );
        }
        let _ = writeln!(
            o,
            r#"<text x="{}" y="{}">{}</text>"#,
            lx + 25.0,
            ly + 4.0,
            escape(&s.label)
        );
    }
    o.push_str("</svg>\n");
    o
}
