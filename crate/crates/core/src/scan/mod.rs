//! Two-parameter sweeps of channel space.
//!
//! A [`ScanSpec`] binds each channel parameter to an expression in the scan
//! variables `X`, `Y`; [`run_scan`] evaluates the CP verdict on an
//! endpoint-inclusive grid and the result renders to CSV or binary PGM.

pub mod dsl;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::AffineChannelQutrit;
use crate::cp::{cp_analytic_diagonal, cp_numeric, DEFAULT_TOL};
use crate::error::{Error, Result};
pub use dsl::{parse_bindings, parse_spec_text, Bindings, Expr, Param, Parsed};

pub const DEFAULT_RESOLUTION: (usize, usize) = (512, 512);
pub const DEFAULT_RANGE: (f64, f64) = (-1.5, 1.5);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMethod {
    Numeric,
    Analytic,
}

impl FromStr for ScanMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "numeric" => Ok(ScanMethod::Numeric),
            "analytic" => Ok(ScanMethod::Analytic),
            _ => Err(Error::Config(format!("unknown scan method '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanSpec {
    pub bindings: Bindings,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub resolution: (usize, usize),
    pub method: ScanMethod,
    pub tol: f64,
}

impl ScanSpec {
    /// Default ranges, resolution, method and tolerance around `bindings`.
    pub fn new(bindings: Bindings) -> Self {
        ScanSpec {
            bindings,
            x_range: DEFAULT_RANGE,
            y_range: DEFAULT_RANGE,
            resolution: DEFAULT_RESOLUTION,
            method: ScanMethod::Numeric,
            tol: DEFAULT_TOL,
        }
    }

    /// Builds a spec from spec-file text; absent clauses take the defaults.
    pub fn from_text(text: &str) -> Result<(Self, Vec<String>)> {
        let parsed = parse_spec_text(text)?;
        let mut spec = ScanSpec::new(parsed.bindings);
        let s = parsed.settings;
        if let Some(r) = s.x_range {
            spec.x_range = r;
        }
        if let Some(r) = s.y_range {
            spec.y_range = r;
        }
        if let Some(r) = s.resolution {
            spec.resolution = r;
        }
        if let Some(m) = s.method {
            spec.method = m.parse()?;
        }
        Ok((spec, parsed.warnings))
    }

    pub fn x_at(&self, i: usize) -> f64 {
        let (lo, hi) = self.x_range;
        lo + i as f64 * (hi - lo) / (self.resolution.0 - 1) as f64
    }

    pub fn y_at(&self, j: usize) -> f64 {
        let (lo, hi) = self.y_range;
        lo + j as f64 * (hi - lo) / (self.resolution.1 - 1) as f64
    }

    pub fn channel_at(&self, x: f64, y: f64) -> AffineChannelQutrit {
        let (lambda, t) = self.bindings.eval(x, y);
        AffineChannelQutrit::from_components(lambda, t)
    }

    pub fn validate(&self) -> Result<()> {
        let (nx, ny) = self.resolution;
        if nx < 2 || ny < 2 {
            return Err(Error::Config(format!(
                "resolution must be at least 2x2, got {nx}x{ny}"
            )));
        }
        for (axis, (lo, hi)) in [("x", self.x_range), ("y", self.y_range)] {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::Config(format!(
                    "{axis} range must satisfy min < max, got {lo},{hi}"
                )));
            }
        }
        if self.tol.is_nan() || self.tol < 0.0 {
            return Err(Error::Config(format!(
                "tolerance must be non-negative, got {}",
                self.tol
            )));
        }
        if self.method == ScanMethod::Analytic && self.bindings.has_translation() {
            return Err(Error::Config(
                "the analytic method needs every T binding to be identically zero".into(),
            ));
        }
        Ok(())
    }

    pub fn metadata(&self) -> ScanMetadata {
        ScanMetadata {
            bindings: self.bindings.to_text(),
            x_range: self.x_range,
            y_range: self.y_range,
            resolution: self.resolution,
            method: self.method,
            tol: self.tol,
        }
    }
}

/// The settings a grid was produced with, written next to scan output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanMetadata {
    pub bindings: String,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub resolution: (usize, usize),
    pub method: ScanMethod,
    pub tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Preset {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
}

impl Preset {
    pub const ALL: [Preset; 8] = [
        Preset::Fig1,
        Preset::Fig2,
        Preset::Fig3,
        Preset::Fig4,
        Preset::Fig5,
        Preset::Fig6,
        Preset::Fig7,
        Preset::Fig8,
    ];

    pub fn bindings_text(self) -> &'static str {
        match self {
            Preset::Fig1 => "L1=Y;L2=Y;L3=X;L4=X;L5=X;L6=X;L7=X;L8=X",
            Preset::Fig2 => "L1=X;L2=X;L3=Y;L4=X;L5=X;L6=X;L7=X;L8=Y",
            Preset::Fig3 => "L3=X;L8=Y;L1=X*Y;L2=X*Y;L4=X*Y;L5=X*Y;L6=X*Y;L7=X*Y",
            Preset::Fig4 => "L1=X;L2=X;L3=X*Y;L8=X*Y;L4=Y;L5=Y;L6=Y;L7=Y",
            Preset::Fig5 => "L1=1;L2=1;L3=1;L4=1;L5=1;L6=1;L7=1;L8=1;T1=X;T2=X;T3=Y",
            Preset::Fig6 => "L1=1;L2=1;L3=1;L4=1;L5=1;L6=1;L7=1;L8=1;T1=X;T2=X;T3=Y;T8=Y",
            Preset::Fig7 => {
                "L1=X;L2=X;L3=X;L4=X;L5=X;L6=X;L7=X;L8=X;\
                 T1=Y;T2=Y;T3=Y;T4=Y;T5=Y;T6=Y;T7=Y;T8=Y"
            }
            Preset::Fig8 => {
                "L1=X;L2=X;L3=Y;L4=Y;L5=Y;L6=Y;L7=Y;L8=Y;\
                 T1=X*Y;T2=X*Y;T3=X*Y;T4=X*Y;T5=X*Y;T6=X*Y;T7=X*Y;T8=X*Y"
            }
        }
    }

    pub fn has_translation(self) -> bool {
        matches!(
            self,
            Preset::Fig5 | Preset::Fig6 | Preset::Fig7 | Preset::Fig8
        )
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = Preset::ALL.iter().position(|p| p == self).unwrap() + 1;
        write!(f, "fig{n}")
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown preset '{s}' (expected fig1..fig8)")))
    }
}

pub fn preset(p: Preset) -> ScanSpec {
    let bindings = parse_bindings(p.bindings_text())
        .expect("preset bindings parse")
        .bindings;
    let mut spec = ScanSpec::new(bindings);
    if p.has_translation() {
        spec.x_range = (-0.5, 0.5);
        spec.y_range = (-0.5, 0.5);
    }
    spec
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    pub x: f64,
    pub y: f64,
    pub min_eigenvalue: f64,
    pub is_cp: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanGrid {
    pub spec: ScanSpec,
    /// Row-major with x fastest: cell `(i, j)` is at `j * nx + i`.
    pub cells: Vec<Cell>,
}

/// Verdict at a single point of the scan plane.
pub fn evaluate_point(spec: &ScanSpec, x: f64, y: f64) -> Result<Cell> {
    let ch = spec.channel_at(x, y);
    let verdict = match spec.method {
        ScanMethod::Numeric => cp_numeric(&ch, spec.tol),
        ScanMethod::Analytic => cp_analytic_diagonal(&ch, spec.tol)?,
    };
    Ok(Cell {
        x,
        y,
        min_eigenvalue: verdict.min_eigenvalue,
        is_cp: verdict.is_cp,
    })
}

pub fn run_scan(spec: &ScanSpec) -> Result<ScanGrid> {
    spec.validate()?;
    let (nx, ny) = spec.resolution;
    let cells = (0..nx * ny)
        .into_par_iter()
        .map(|k| evaluate_point(spec, spec.x_at(k % nx), spec.y_at(k / nx)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanGrid {
        spec: spec.clone(),
        cells,
    })
}

impl ScanGrid {
    pub fn nx(&self) -> usize {
        self.spec.resolution.0
    }

    pub fn ny(&self) -> usize {
        self.spec.resolution.1
    }

    pub fn cell(&self, i: usize, j: usize) -> &Cell {
        &self.cells[j * self.nx() + i]
    }

    pub fn cp_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_cp).count()
    }

    /// True when the CP cells of every row and every column form at most
    /// one contiguous run.
    pub fn is_axis_contiguous(&self) -> bool {
        fn one_run(flags: impl Iterator<Item = bool>) -> bool {
            let mut runs = 0;
            let mut prev = false;
            for f in flags {
                if f && !prev {
                    runs += 1;
                }
                prev = f;
            }
            runs <= 1
        }
        let (nx, ny) = (self.nx(), self.ny());
        (0..ny).all(|j| one_run((0..nx).map(|i| self.cell(i, j).is_cp)))
            && (0..nx).all(|i| one_run((0..ny).map(|j| self.cell(i, j).is_cp)))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(80 * (self.cells.len() + 1));
        out.push_str("x,y,min_eig,cp\n");
        for c in &self.cells {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{}\n",
                c.x, c.y, c.min_eigenvalue, c.is_cp as u8
            ));
        }
        out
    }

    /// Binary greymap: CP cells black (0), the rest white (255), top row at
    /// the largest y.
    pub fn to_pgm(&self) -> Vec<u8> {
        let (nx, ny) = (self.nx(), self.ny());
        let mut out = format!("P5\n{nx} {ny}\n255\n").into_bytes();
        out.reserve(nx * ny);
        for j in (0..ny).rev() {
            out.extend((0..nx).map(|i| if self.cell(i, j).is_cp { 0u8 } else { 255 }));
        }
        out
    }

    pub fn metadata_json(&self) -> String {
        let mut v = serde_json::to_value(self.spec.metadata()).expect("metadata serialises");
        v["cp_cells"] = self.cp_count().into();
        serde_json::to_string_pretty(&v).expect("metadata serialises")
    }
}

pub fn emit_csv(grid: &ScanGrid) -> String {
    grid.to_csv()
}

pub fn emit_pgm(grid: &ScanGrid) -> Vec<u8> {
    grid.to_pgm()
}
