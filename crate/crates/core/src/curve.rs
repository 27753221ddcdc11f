//! Sampled complex curves and a small CSV table writer.

use std::fmt::Write as _;
use std::io::{self, Write};

use num_complex::Complex64;

/// A complex-valued function sampled on an ordered abscissa.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SampledCurve {
    pub abscissa: Vec<f64>,
    pub values: Vec<Complex64>,
    pub abs_error: Vec<f64>,
    pub converged: Vec<bool>,
}

impl SampledCurve {
    pub fn push(&mut self, x: f64, value: Complex64, err: f64, converged: bool) {
        self.abscissa.push(x);
        self.values.push(value);
        self.abs_error.push(err);
        self.converged.push(converged);
    }

    pub fn len(&self) -> usize {
        self.abscissa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.abscissa.is_empty()
    }

    pub fn all_converged(&self) -> bool {
        self.converged.iter().all(|&c| c)
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm()).collect()
    }

    /// Full width at half maximum of `|value|`, by linear interpolation
    /// between samples. `None` if the half-maximum level is not crossed on
    /// both sides of the peak.
    pub fn fwhm(&self) -> Option<f64> {
        let m = self.moduli();
        let (peak, &top) = m
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))?;
        let half = top / 2.0;
        let cross = |i: usize, j: usize| {
            let (x0, x1, y0, y1) = (self.abscissa[i], self.abscissa[j], m[i], m[j]);
            x0 + (half - y0) * (x1 - x0) / (y1 - y0)
        };
        let left = (0..peak).rev().find(|&i| m[i] < half).map(|i| cross(i, i + 1))?;
        let right = (peak + 1..m.len()).find(|&i| m[i] < half).map(|i| cross(i - 1, i))?;
        Some(right - left)
    }
}

/// Column-oriented numeric table with a `#` metadata line.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            metadata: Vec::new(),
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.metadata.push((key.into(), value.to_string()));
        self
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if !self.metadata.is_empty() {
            let meta: Vec<String> = self.metadata.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "# {}", meta.join(" "));
        }
        let _ = writeln!(out, "{}", self.header.join(","));
        for row in &self.rows {
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }

    pub fn write_to(&self, mut w: impl Write) -> io::Result<()> {
        w.write_all(self.to_csv().as_bytes())
    }
}

/// Shortest round-trip formatting so that output is bit-reproducible.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:e}")
}
