//! Mean curvature of a sampled spacelike graph `x₃ = u(x₁, x₂)`.
//!
//! Two discretizations of the same equation:
//!
//! * nondivergence form `(1 − |Du|²) Δu + uᵢuⱼuᵢⱼ = 2H (1 − |Du|²)^{3/2}` on the
//!   9-point stencil;
//! * divergence form `div(Du / √(1 − |Du|²)) = 2H`, differencing the flux field.
//!
//! Both are second order in the grid spacing.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::profile::ProfileCurve;
use crate::{Error, Result};

/// Uniform lattice samples of `u` with an evaluation mask.
///
/// Node `(i, j)` sits at `(x0 + i hx, y0 + j hy)` and is stored at `j * nx + i`.
/// Non-finite values mark points where `u` is undefined; stencils touching them
/// are skipped.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphPatch {
    pub nx: usize,
    pub ny: usize,
    pub x0: f64,
    pub y0: f64,
    pub hx: f64,
    pub hy: f64,
    values: Vec<f64>,
    mask: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CurvatureMode {
    #[default]
    Nondivergence,
    Divergence,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvatureReport {
    pub h_mean: f64,
    /// `max |H_i − h_mean|`.
    pub h_max_dev: f64,
    /// `min (1 − |Du|²)` over checked points.
    pub spacelike_min_margin: f64,
    pub points_checked: usize,
}

#[derive(Deserialize)]
struct CsvRow {
    x1: f64,
    x2: f64,
    u: f64,
}

#[derive(Serialize)]
struct CsvRowOut {
    x1: f64,
    x2: f64,
    u: f64,
}

impl GraphPatch {
    pub fn from_values(
        (x0, y0): (f64, f64),
        (hx, hy): (f64, f64),
        (nx, ny): (usize, usize),
        values: Vec<f64>,
    ) -> Result<Self> {
        if nx < 3 || ny < 3 {
            return Err(Error::invalid("grid", format!("need at least 3x3 nodes, got {nx}x{ny}")));
        }
        if !(hx > 0.0 && hy > 0.0) {
            return Err(Error::invalid("grid", "spacing must be positive"));
        }
        if values.len() != nx * ny {
            return Err(Error::invalid("grid", format!("{} values for {nx}x{ny} nodes", values.len())));
        }
        let mut mask = vec![false; nx * ny];
        for j in 1..ny - 1 {
            for i in 1..nx - 1 {
                mask[j * nx + i] = true;
            }
        }
        Ok(GraphPatch { nx, ny, x0, y0, hx, hy, values, mask })
    }

    /// Samples `u` on `[x_min, x_max] × [y_min, y_max]` with `nx × ny` nodes.
    pub fn sample<F>(
        (x_min, x_max): (f64, f64),
        (y_min, y_max): (f64, f64),
        (nx, ny): (usize, usize),
        u: F,
        exec: Execution,
    ) -> Result<Self>
    where
        F: Fn(f64, f64) -> f64 + Sync + Send,
    {
        if nx < 3 || ny < 3 {
            return Err(Error::invalid("grid", format!("need at least 3x3 nodes, got {nx}x{ny}")));
        }
        let hx = (x_max - x_min) / (nx - 1) as f64;
        let hy = (y_max - y_min) / (ny - 1) as f64;
        let values = exec.map_range(nx * ny, |k| {
            let (i, j) = (k % nx, k / nx);
            u(x_min + i as f64 * hx, y_min + j as f64 * hy)
        });
        Self::from_values((x_min, y_min), (hx, hy), (nx, ny), values)
    }

    /// The rotated profile `u = f(|x|)` on the square `[−half_width, half_width]²`
    /// with `n × n` nodes. Nodes with `|x| < exclude_radius` are left undefined.
    pub fn from_profile(
        curve: &ProfileCurve,
        half_width: f64,
        n: usize,
        exclude_radius: f64,
        exec: Execution,
    ) -> Result<Self> {
        let h = 2.0 * half_width / (n.max(2) - 1) as f64;
        let coords: Vec<(f64, f64)> =
            (0..n * n).map(|k| (-half_width + (k % n) as f64 * h, -half_width + (k / n) as f64 * h)).collect();
        let values = exec.try_map(&coords, |&(x, y)| {
            let t = x.hypot(y);
            if t < exclude_radius || t == 0.0 {
                Ok(f64::NAN)
            } else {
                curve.height(t)
            }
        })?;
        let mut patch = Self::from_values((-half_width, -half_width), (h, h), (n, n), values)?;
        patch.retain(|x, y| x.hypot(y) >= exclude_radius);
        Ok(patch)
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.hx
    }
    pub fn y(&self, j: usize) -> f64 {
        self.y0 + j as f64 * self.hy
    }
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.nx + i]
    }
    pub fn values(&self) -> &[f64] {
        &self.values
    }
    pub fn is_masked_in(&self, i: usize, j: usize) -> bool {
        self.mask[j * self.nx + i]
    }

    /// Keeps only mask points whose coordinates satisfy `keep`.
    pub fn retain<F: Fn(f64, f64) -> bool>(&mut self, keep: F) {
        for j in 0..self.ny {
            for i in 0..self.nx {
                if !keep(self.x(i), self.y(j)) {
                    self.mask[j * self.nx + i] = false;
                }
            }
        }
    }

    /// Reads a `x1,x2,u` CSV listing the grid row by row (`x1` fastest).
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
        if headers.iter().collect::<Vec<_>>() != ["x1", "x2", "u"] {
            return Err(Error::Parse(format!(
                "expected header x1,x2,u, got {}",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let rows: Vec<CsvRow> =
            rdr.deserialize().collect::<std::result::Result<_, _>>().map_err(|e| Error::Parse(e.to_string()))?;
        if rows.is_empty() {
            return Err(Error::Parse("no grid rows".into()));
        }
        let nx = rows.iter().take_while(|row| row.x2 == rows[0].x2).count();
        if nx < 3 || !rows.len().is_multiple_of(nx) {
            return Err(Error::Parse(format!("{} rows do not form a grid with {nx} columns", rows.len())));
        }
        let ny = rows.len() / nx;
        if ny < 3 {
            return Err(Error::Parse(format!("need at least 3 grid rows, got {ny}")));
        }
        let hx = (rows[nx - 1].x1 - rows[0].x1) / (nx - 1) as f64;
        let hy = (rows[(ny - 1) * nx].x2 - rows[0].x2) / (ny - 1) as f64;
        let (x0, y0) = (rows[0].x1, rows[0].x2);
        let slack = 1e-6;
        for (k, row) in rows.iter().enumerate() {
            let (i, j) = (k % nx, k / nx);
            let ex = x0 + i as f64 * hx;
            let ey = y0 + j as f64 * hy;
            if (row.x1 - ex).abs() > slack * hx.abs() || (row.x2 - ey).abs() > slack * hy.abs() {
                return Err(Error::Parse(format!(
                    "row {} at ({}, {}) is off the uniform grid (expected ({ex}, {ey}))",
                    k + 2,
                    row.x1,
                    row.x2
                )));
            }
        }
        Self::from_values((x0, y0), (hx, hy), (nx, ny), rows.iter().map(|r| r.u).collect())
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        for j in 0..self.ny {
            for i in 0..self.nx {
                w.serialize(CsvRowOut { x1: self.x(i), x2: self.y(j), u: self.value(i, j) })
                    .map_err(|e| Error::Parse(e.to_string()))?;
            }
        }
        w.flush().map_err(|e| Error::Parse(e.to_string()))
    }

    fn gradient(&self, i: usize, j: usize) -> Option<(f64, f64)> {
        if i == 0 || j == 0 || i + 1 >= self.nx || j + 1 >= self.ny {
            return None;
        }
        let ux = (self.value(i + 1, j) - self.value(i - 1, j)) / (2.0 * self.hx);
        let uy = (self.value(i, j + 1) - self.value(i, j - 1)) / (2.0 * self.hy);
        (ux.is_finite() && uy.is_finite()).then_some((ux, uy))
    }

    fn point_nondivergence(&self, i: usize, j: usize) -> Option<(f64, f64)> {
        let (ux, uy) = self.gradient(i, j)?;
        let (hx, hy) = (self.hx, self.hy);
        let u = |di: isize, dj: isize| self.value((i as isize + di) as usize, (j as isize + dj) as usize);
        let uxx = (u(1, 0) - 2.0 * u(0, 0) + u(-1, 0)) / (hx * hx);
        let uyy = (u(0, 1) - 2.0 * u(0, 0) + u(0, -1)) / (hy * hy);
        let uxy = (u(1, 1) - u(1, -1) - u(-1, 1) + u(-1, -1)) / (4.0 * hx * hy);
        let margin = 1.0 - ux * ux - uy * uy;
        let lhs = margin * (uxx + uyy) + ux * ux * uxx + 2.0 * ux * uy * uxy + uy * uy * uyy;
        let h = lhs / (2.0 * margin.max(0.0).powf(1.5));
        h.is_finite().then_some((h, margin)).or_else(|| (margin <= 0.0).then_some((f64::NAN, margin)))
    }

    fn flux_vector(&self, i: usize, j: usize) -> Option<(f64, f64, f64)> {
        let (ux, uy) = self.gradient(i, j)?;
        let margin = 1.0 - ux * ux - uy * uy;
        if !(margin > 0.0) {
            return Some((f64::NAN, f64::NAN, margin));
        }
        let w = margin.sqrt();
        Some((ux / w, uy / w, margin))
    }

    fn point_divergence(&self, i: usize, j: usize) -> Option<(f64, f64)> {
        let (_, _, margin) = self.flux_vector(i, j)?;
        if !(margin > 0.0) {
            return Some((f64::NAN, margin));
        }
        if i < 2 || j < 2 {
            return None;
        }
        let (east, _, _) = self.flux_vector(i + 1, j)?;
        let (west, _, _) = self.flux_vector(i - 1, j)?;
        let (_, north, _) = self.flux_vector(i, j + 1)?;
        let (_, south, _) = self.flux_vector(i, j - 1)?;
        let div = (east - west) / (2.0 * self.hx) + (north - south) / (2.0 * self.hy);
        div.is_finite().then_some((0.5 * div, margin))
    }
}

/// Pointwise `(H, 1 − |Du|²)` at mask points where the stencil is defined.
pub fn curvature_field(patch: &GraphPatch, mode: CurvatureMode, exec: Execution) -> Vec<Option<(f64, f64)>> {
    exec.map_range(patch.nx * patch.ny, |k| {
        let (i, j) = (k % patch.nx, k / patch.nx);
        if !patch.mask[k] {
            return None;
        }
        match mode {
            CurvatureMode::Nondivergence => patch.point_nondivergence(i, j),
            CurvatureMode::Divergence => patch.point_divergence(i, j),
        }
    })
}

/// Summarizes [`curvature_field`]; fails if the discrete spacelike margin is not
/// positive at some checked point.
pub fn mean_curvature_graph(patch: &GraphPatch, mode: CurvatureMode, exec: Execution) -> Result<CurvatureReport> {
    let field = curvature_field(patch, mode, exec);
    let mut points = Vec::with_capacity(field.len());
    let mut min_margin = f64::INFINITY;
    for (k, entry) in field.iter().enumerate() {
        if let Some((h, margin)) = *entry {
            if !(margin > 0.0) {
                return Err(Error::SpacelikeViolation(format!(
                    "1 - |Du|^2 = {margin} at ({}, {})",
                    patch.x(k % patch.nx),
                    patch.y(k / patch.nx)
                )));
            }
            min_margin = min_margin.min(margin);
            points.push(h);
        }
    }
    if points.is_empty() {
        return Err(Error::invalid("patch", "no interior point has a complete stencil"));
    }
    let h_mean = points.iter().sum::<f64>() / points.len() as f64;
    let h_max_dev = points.iter().map(|h| (h - h_mean).abs()).fold(0.0, f64::max);
    Ok(CurvatureReport { h_mean, h_max_dev, spacelike_min_margin: min_margin, points_checked: points.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cap_patch(n: usize) -> GraphPatch {
        GraphPatch::sample(
            (-1.0, 1.0),
            (-1.0, 1.0),
            (n, n),
            |x, y| (1.0 + x * x + y * y).sqrt() - 2f64.sqrt(),
            Execution::Parallel,
        )
        .unwrap()
    }

    #[test]
    fn constant_patch_is_flat() {
        let p = GraphPatch::sample((0.0, 1.0), (0.0, 1.0), (9, 9), |_, _| 2.5, Execution::Sequential).unwrap();
        for mode in [CurvatureMode::Nondivergence, CurvatureMode::Divergence] {
            let rep = mean_curvature_graph(&p, mode, Execution::Sequential).unwrap();
            assert_eq!(rep.h_mean, 0.0);
            assert_eq!(rep.h_max_dev, 0.0);
            assert_eq!(rep.spacelike_min_margin, 1.0);
        }
    }

    #[test]
    fn hyperbolic_cap_has_unit_curvature() {
        let rep = mean_curvature_graph(&cap_patch(65), CurvatureMode::Nondivergence, Execution::Parallel).unwrap();
        assert!((rep.h_mean - 1.0).abs() < 1e-3, "{rep:?}");
        assert_eq!(rep.points_checked, 63 * 63);
        let rep = mean_curvature_graph(&cap_patch(65), CurvatureMode::Divergence, Execution::Parallel).unwrap();
        assert!((rep.h_mean - 1.0).abs() < 1e-3, "{rep:?}");
    }

    #[test]
    fn modes_agree_to_second_order() {
        let max_gap = |n: usize| {
            let p = cap_patch(n);
            let a = curvature_field(&p, CurvatureMode::Nondivergence, Execution::Parallel);
            let b = curvature_field(&p, CurvatureMode::Divergence, Execution::Parallel);
            // Compare on a fixed physical point set: |x|, |y| ≤ 0.5.
            a.iter()
                .zip(&b)
                .enumerate()
                .filter(|(k, _)| p.x(k % n).abs() <= 0.5 && p.y(k / n).abs() <= 0.5)
                .filter_map(|(_, (x, y))| Some((x.as_ref()?.0 - y.as_ref()?.0).abs()))
                .fold(0.0, f64::max)
        };
        let coarse = max_gap(33);
        let fine = max_gap(65);
        assert!(coarse < 1e-2, "{coarse}");
        let ratio = coarse / fine;
        assert!((3.0..5.0).contains(&ratio), "{ratio}");
    }

    #[test]
    fn timelike_patch_is_rejected() {
        let p = GraphPatch::sample((0.0, 1.0), (0.0, 1.0), (11, 11), |x, _| 1.5 * x, Execution::Sequential).unwrap();
        assert!(matches!(
            mean_curvature_graph(&p, CurvatureMode::Nondivergence, Execution::Sequential),
            Err(Error::SpacelikeViolation(_))
        ));
        assert!(matches!(
            mean_curvature_graph(&p, CurvatureMode::Divergence, Execution::Sequential),
            Err(Error::SpacelikeViolation(_))
        ));
    }

    #[test]
    fn csv_round_trip() {
        let p = cap_patch(9);
        let mut buf = Vec::new();
        p.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("x1,x2,u\n"));
        let q = GraphPatch::from_csv(buf.as_slice()).unwrap();
        assert_eq!((q.nx, q.ny), (9, 9));
        assert_eq!(q.values(), p.values());
        assert!((q.hx - p.hx).abs() < 1e-15);
    }

    #[test]
    fn csv_errors() {
        assert!(matches!(GraphPatch::from_csv("a,b,c\n1,2,3\n".as_bytes()), Err(Error::Parse(_))));
        let ragged = "x1,x2,u\n0,0,0\n1,0,0\n2,0,0\n0,1,0\n1,1,0\n";
        assert!(matches!(GraphPatch::from_csv(ragged.as_bytes()), Err(Error::Parse(_))));
        let skewed = "x1,x2,u\n0,0,0\n1,0,0\n2,0,0\n0,1,0\n1.5,1,0\n2,1,0\n0,2,0\n1,2,0\n2,2,0\n";
        assert!(matches!(GraphPatch::from_csv(skewed.as_bytes()), Err(Error::Parse(_))));
    }

    #[test]
    fn rotated_profile_has_profile_curvature() {
        let curve = ProfileCurve::from_values(1.0, 3.0, 1.0, 0.0).unwrap();
        let p = GraphPatch::from_profile(&curve, 3.0, 193, 1.0, Execution::Parallel).unwrap();
        let rep = mean_curvature_graph(&p, CurvatureMode::Nondivergence, Execution::Parallel).unwrap();
        assert!((rep.h_mean - 1.0).abs() < 1e-3, "{rep:?}");
        assert!(rep.spacelike_min_margin > 0.0);
    }
}
