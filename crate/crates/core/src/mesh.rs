//! Sampling of `X(t, θ) = (t cos θ, t sin θ, f(t))` and export to Wavefront OBJ
//! and profile CSV.
//!
//! Vertices are stored ring by ring, `index = ring * n_theta + k`, with no
//! duplicated seam column. Each grid quad is split along the diagonal from
//! `(ring, k)` to `(ring + 1, k + 1)`. Triangles are wound counterclockwise seen
//! from `+x₃`, so their normals point towards the future. A mesh starting at `t = 0`
//! closes the inner hole with a triangle fan to the vertex `(0, 0, f(0⁺))`.

use std::collections::HashSet;
use std::io::{BufRead, Write};

use serde::Serialize;

use crate::exec::Execution;
use crate::params::{Anchor, Regime, SurfaceParams};
use crate::profile::{default_fd_step, ProfileCurve, SingularityKind};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Spacing {
    #[default]
    Uniform,
    Log,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeshMetadata {
    pub params: SurfaceParams,
    pub anchor: Anchor,
    pub regime: Regime,
    /// Index of the fan vertex on the axis, if any.
    pub apex: Option<usize>,
    /// Whether the apex is a conical singularity rather than a regular point.
    pub apex_singular: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
    /// Radius of each ring, innermost first (the apex is not a ring).
    pub radii: Vec<f64>,
    pub n_theta: usize,
    pub metadata: MeshMetadata,
}

impl SurfaceMesh {
    pub fn ring_height(&self, ring: usize) -> f64 {
        self.vertices[ring * self.n_theta][2]
    }

    pub fn euler_characteristic(&self) -> i64 {
        let mut edges = HashSet::new();
        for f in &self.faces {
            for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                edges.insert((a.min(b), a.max(b)));
            }
        }
        self.vertices.len() as i64 - edges.len() as i64 + self.faces.len() as i64
    }
}

/// Ring radii over `[t0, t1]`; `Log` needs `t0 > 0`.
pub fn sample_radii((t0, t1): (f64, f64), n: usize, spacing: Spacing) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::invalid("n_t", format!("need at least 2 rings, got {n}")));
    }
    if !(t0 >= 0.0 && t1 > t0 && t1.is_finite()) {
        return Err(Error::invalid("t_range", format!("need 0 <= t0 < t1, got ({t0}, {t1})")));
    }
    let last = (n - 1) as f64;
    let mut ts: Vec<f64> = match spacing {
        Spacing::Uniform => (0..n).map(|i| t0 + (t1 - t0) * i as f64 / last).collect(),
        Spacing::Log => {
            if t0 == 0.0 {
                return Err(Error::invalid("t_range", "log spacing cannot start at t = 0"));
            }
            let ratio = t1 / t0;
            (0..n).map(|i| t0 * ratio.powf(i as f64 / last)).collect()
        }
    };
    ts[0] = t0;
    ts[n - 1] = t1;
    Ok(ts)
}

/// Samples the surface on `n_t` rings (the apex counts as one when `t0 = 0`)
/// and `n_theta` angles.
pub fn sample_surface(
    curve: &ProfileCurve,
    t_range: (f64, f64),
    n_t: usize,
    n_theta: usize,
    spacing: Spacing,
    exec: Execution,
) -> Result<SurfaceMesh> {
    if n_theta < 3 {
        return Err(Error::invalid("n_theta", format!("need at least 3 angles, got {n_theta}")));
    }
    let mut radii = sample_radii(t_range, n_t, spacing)?;
    let with_apex = radii[0] == 0.0;
    if with_apex {
        radii.remove(0);
    }
    let heights = exec.try_map(&radii, |&t| curve.height(t))?;

    let angles: Vec<(f64, f64)> =
        (0..n_theta).map(|k| (2.0 * std::f64::consts::PI * k as f64 / n_theta as f64).sin_cos()).collect();
    let mut vertices = Vec::with_capacity(radii.len() * n_theta + 1);
    for (&t, &f) in radii.iter().zip(&heights) {
        vertices.extend(angles.iter().map(|&(s, c)| [t * c, t * s, f]));
    }

    let idx = |ring: usize, k: usize| ring * n_theta + (k % n_theta);
    let mut faces = Vec::with_capacity(2 * n_theta * radii.len());
    for ring in 0..radii.len() - 1 {
        for k in 0..n_theta {
            let (v00, v10) = (idx(ring, k), idx(ring + 1, k));
            let (v11, v01) = (idx(ring + 1, k + 1), idx(ring, k + 1));
            faces.push([v00, v10, v11]);
            faces.push([v00, v11, v01]);
        }
    }

    let (mut apex, mut apex_singular) = (None, false);
    if with_apex {
        let report = curve.singularity_report()?;
        let a = vertices.len();
        vertices.push([0.0, 0.0, report.cone_vertex_height]);
        faces.extend((0..n_theta).map(|k| [a, idx(0, k), idx(0, k + 1)]));
        apex = Some(a);
        apex_singular = matches!(report.kind, SingularityKind::ConicalLower | SingularityKind::ConicalUpper);
    }

    Ok(SurfaceMesh {
        vertices,
        faces,
        radii,
        n_theta,
        metadata: MeshMetadata {
            params: curve.params(),
            anchor: curve.anchor(),
            regime: curve.regime(),
            apex,
            apex_singular,
        },
    })
}

/// ASCII OBJ with `v` and `f` records only (1-based indices).
pub fn write_obj<W: Write>(mesh: &SurfaceMesh, mut w: W) -> std::io::Result<()> {
    for v in &mesh.vertices {
        writeln!(w, "v {} {} {}", v[0], v[1], v[2])?;
    }
    for f in &mesh.faces {
        writeln!(w, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
    }
    w.flush()
}

/// Vertices and 0-based triangles read from an OBJ file.
pub type ObjData = (Vec<[f64; 3]>, Vec<[usize; 3]>);

/// Reads back the `v`/`f` subset of OBJ written by [`write_obj`].
pub fn parse_obj<R: BufRead>(reader: R) -> Result<ObjData> {
    let (mut vertices, mut faces) = (Vec::new(), Vec::new());
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        let mut it = line.split_whitespace();
        let bad = |what: &str| Error::Parse(format!("line {}: {what}", lineno + 1));
        match it.next() {
            Some("v") => {
                let xs: Vec<f64> =
                    it.map(str::parse).collect::<std::result::Result<_, _>>().map_err(|_| bad("bad vertex"))?;
                if xs.len() != 3 {
                    return Err(bad("vertex needs 3 coordinates"));
                }
                vertices.push([xs[0], xs[1], xs[2]]);
            }
            Some("f") => {
                let ix: Vec<usize> = it
                    .map(|tok| tok.split('/').next().unwrap_or("").parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad("bad face"))?;
                if ix.len() != 3 || ix.iter().any(|&i| i == 0 || i > vertices.len()) {
                    return Err(bad("face needs 3 valid indices"));
                }
                faces.push([ix[0] - 1, ix[1] - 1, ix[2] - 1]);
            }
            _ => {}
        }
    }
    Ok((vertices, faces))
}

/// One row of the profile CSV.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProfileSample {
    pub t: f64,
    pub f: f64,
    #[serde(rename = "fprime")]
    pub f_prime: f64,
    /// Empty where the difference stencil does not fit (at and next to `t = 0`).
    pub first_integral_residual: Option<f64>,
}

pub fn profile_samples(curve: &ProfileCurve, ts: &[f64], exec: Execution) -> Result<Vec<ProfileSample>> {
    exec.try_map(ts, |&t| {
        if t == 0.0 {
            let rep = curve.singularity_report()?;
            return Ok(ProfileSample {
                t,
                f: rep.cone_vertex_height,
                f_prime: rep.limit_slope,
                first_integral_residual: None,
            });
        }
        let step = default_fd_step(t);
        let residual = if t - step > 0.0 {
            match curve.first_integral_residual(t, step) {
                Ok(r) => Some(r),
                Err(Error::SpacelikeViolation(_)) => None,
                Err(e) => return Err(e),
            }
        } else {
            None
        };
        Ok(ProfileSample { t, f: curve.height(t)?, f_prime: curve.slope(t)?, first_integral_residual: residual })
    })
}

/// RFC 4180 CSV with header `t,f,fprime,first_integral_residual`.
pub fn write_profile_csv<W: Write>(samples: &[ProfileSample], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for s in samples {
        w.serialize(s).map_err(|e| Error::Parse(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::closed_form_maximal;

    fn plane() -> ProfileCurve {
        ProfileCurve::from_values(0.0, 0.0, 1.0, 0.25).unwrap()
    }

    #[test]
    fn plane_grid() {
        let m = sample_surface(&plane(), (1.0, 2.0), 2, 4, Spacing::Uniform, Execution::Sequential).unwrap();
        assert_eq!(m.vertices.len(), 8);
        assert!(m.vertices.iter().all(|v| v[2] == 0.25));
        assert_eq!(m.euler_characteristic(), 0);
    }

    #[test]
    fn obj_counts_and_round_trip() {
        let m = sample_surface(&plane(), (1.0, 2.0), 2, 3, Spacing::Uniform, Execution::Sequential).unwrap();
        let mut buf = Vec::new();
        write_obj(&m, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 6);
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 6);

        let curve = ProfileCurve::from_values(1.0, 3.0, 1.0, 0.0).unwrap();
        let m = sample_surface(&curve, (1.0, 4.0), 12, 16, Spacing::Log, Execution::Parallel).unwrap();
        let mut buf = Vec::new();
        write_obj(&m, &mut buf).unwrap();
        let (vs, fs) = parse_obj(buf.as_slice()).unwrap();
        assert_eq!(fs, m.faces);
        for (k, v) in vs.iter().enumerate() {
            let t = m.radii[k / m.n_theta];
            assert!((v[0].hypot(v[1]) - t).abs() < 1e-12);
            assert!((v[2] - curve.height(t).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn faces_face_upwards() {
        let curve = ProfileCurve::from_values(0.1, -0.25, 1.0, 0.0).unwrap();
        let m = sample_surface(&curve, (0.0, 4.0), 20, 24, Spacing::Uniform, Execution::Parallel).unwrap();
        for f in &m.faces {
            let [a, b, c] = f.map(|i| m.vertices[i]);
            let nz = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
            assert!(nz > 0.0);
        }
        // Disk topology once the fan closes the hole.
        assert_eq!(m.euler_characteristic(), 1);
        assert!(m.metadata.apex_singular);
    }

    #[test]
    fn cone_mesh_matches_closed_form() {
        // Increasing maximal branch through (1, 0): c_max = 3.
        let curve = ProfileCurve::from_values(0.0, -3.0, 1.0, 0.0).unwrap();
        let m = sample_surface(&curve, (0.0, 7.0), 64, 64, Spacing::Uniform, Execution::Parallel).unwrap();
        assert_eq!(m.vertices.len(), 63 * 64 + 1);
        let anchor = curve.anchor();
        let worst = m
            .vertices
            .iter()
            .map(|v| (v[2] - closed_form_maximal(v[0].hypot(v[1]), 3.0, anchor).unwrap()).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-9, "{worst}");
        let apex = m.metadata.apex.unwrap();
        assert_eq!(m.vertices[apex][..2], [0.0, 0.0]);
    }

    #[test]
    fn interior_minimum_ring() {
        let curve = ProfileCurve::from_values(1.0, 3.0, 1.0, 0.0).unwrap();
        let m = sample_surface(&curve, (1.0, 4.0), 301, 8, Spacing::Uniform, Execution::Parallel).unwrap();
        let lowest = (0..m.radii.len()).min_by(|&i, &j| m.ring_height(i).total_cmp(&m.ring_height(j))).unwrap();
        assert!((m.radii[lowest] - 3f64.sqrt()).abs() <= 0.01);
        assert!(lowest > 0 && lowest < m.radii.len() - 1);
    }

    #[test]
    fn argument_errors() {
        let c = plane();
        assert!(sample_surface(&c, (1.0, 2.0), 1, 4, Spacing::Uniform, Execution::Sequential).is_err());
        assert!(sample_surface(&c, (1.0, 2.0), 2, 2, Spacing::Uniform, Execution::Sequential).is_err());
        assert!(sample_surface(&c, (0.0, 2.0), 4, 4, Spacing::Log, Execution::Sequential).is_err());
        assert!(sample_surface(&c, (2.0, 1.0), 4, 4, Spacing::Uniform, Execution::Sequential).is_err());
    }

    #[test]
    fn profile_csv_layout() {
        let curve = ProfileCurve::from_values(1.0, 3.0, 1.0, 0.0).unwrap();
        let samples = profile_samples(&curve, &[0.0, 1.0, 2.0], Execution::Sequential).unwrap();
        let mut buf = Vec::new();
        write_profile_csv(&samples, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "t,f,fprime,first_integral_residual");
        assert!(lines[1].starts_with("0.0,") && lines[1].ends_with(",-1.0,"));
        assert!(lines[2].starts_with("1.0,0.0,"));
        assert_eq!(lines.len(), 4);
        assert!(samples[2].first_integral_residual.unwrap().abs() < 1e-5);
    }

    #[test]
    fn parallel_and_sequential_meshes_are_identical() {
        let curve = ProfileCurve::from_values(1.0, 3.0, 1.0, 0.0).unwrap();
        let a = sample_surface(&curve, (0.0, 4.0), 40, 32, Spacing::Uniform, Execution::Sequential).unwrap();
        let b = sample_surface(&curve, (0.0, 4.0), 40, 32, Spacing::Uniform, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
