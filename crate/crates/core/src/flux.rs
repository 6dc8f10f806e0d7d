//! Flux of the horizontal circles `Γ(t)` of a rotational profile.
//!
//! ```text
//! Flux(Γ) = H ∮ ⟨x ∧ τ, e₃⟩ ds + ∮ ⟨ν, e₃⟩ ds
//! ```
//!
//! Conventions: `∧` is the Lorentzian cross product with `⟨u ∧ v, w⟩ = det(u, v, w)`
//! (see [`crate::minkowski::cross`]), `τ` runs counterclockwise seen from `+x₃`,
//! `N` is the future-directed unit normal and `ν = τ ∧ N` is the unit conormal
//! pointing towards increasing `t`. With these choices the area term is
//! `2πH r²`, the conormal term is `−2π(H r² − c)` and the flux is `2πc` on every
//! circle of the profile. Reversing `τ` or `ν` negates the corresponding term.

use std::f64::consts::PI;

use serde::Serialize;

use crate::minkowski::{cross, inner, scale, E3};
use crate::params::SurfaceParams;
use crate::profile::{slope_frame, ProfileCurve};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FluxResult {
    pub flux: f64,
    /// `H ∮ ⟨x ∧ τ, e₃⟩ ds`.
    pub area_term: f64,
    /// `∮ ⟨ν, e₃⟩ ds`.
    pub conormal_term: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FluxMode {
    /// Both integrands are constant on the circle: `2πr` times the pointwise value.
    #[default]
    Reduced,
    /// Trapezoidal rule over `θ` with explicit `x`, `τ`, `N` and `ν`.
    Angular { nodes: usize },
}

pub fn flux_closed_form(r: f64, params: SurfaceParams) -> Result<FluxResult> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::NonPositiveRadius(r));
    }
    let SurfaceParams { h, c } = params;
    Ok(FluxResult { flux: 2.0 * PI * c, area_term: 2.0 * PI * h * r * r, conormal_term: -2.0 * PI * (h * r * r - c) })
}

/// Integrates both flux terms on `Γ(r)` from the profile slope at `r`.
pub fn flux_numeric(r: f64, curve: &ProfileCurve, mode: FluxMode) -> Result<FluxResult> {
    let h = curve.mean_curvature();
    let frame = slope_frame(r, curve.params())?;
    let (area_term, conormal_term) = match mode {
        FluxMode::Reduced => {
            let ds = 2.0 * PI * r;
            (h * r * ds, -frame.tan() * ds)
        }
        FluxMode::Angular { nodes } => {
            if nodes < 3 {
                return Err(Error::invalid("nodes", "angular flux needs at least 3 nodes"));
            }
            let height = curve.height(r)?;
            let dtheta = 2.0 * PI / nodes as f64;
            let (mut area, mut conormal) = (0.0, 0.0);
            for k in 0..nodes {
                let (sin_t, cos_t) = (k as f64 * dtheta).sin_cos();
                let x = [r * cos_t, r * sin_t, height];
                let tau = [-sin_t, cos_t, 0.0];
                let normal = scale(1.0 / frame.cos, [frame.sin * cos_t, frame.sin * sin_t, 1.0]);
                let nu = cross(tau, normal);
                let ds = r * dtheta;
                area += inner(cross(x, tau), E3) * ds;
                conormal += inner(nu, E3) * ds;
            }
            (h * area, conormal)
        }
    };
    Ok(FluxResult { flux: area_term + conormal_term, area_term, conormal_term })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::{inner, Vec3};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn closed_form_examples() {
        let f = flux_closed_form(2.0, SurfaceParams { h: 1.0, c: 3.0 }).unwrap();
        assert!(close(f.area_term, 8.0 * PI, 1e-12));
        assert!(close(f.conormal_term, -2.0 * PI, 1e-12));
        assert!(close(f.flux, 6.0 * PI, 1e-12));
        assert!(close(f.flux, 18.849_555_921_538_76, 1e-12));
        assert_eq!(flux_closed_form(3.7, SurfaceParams { h: 0.0, c: 0.0 }).unwrap().flux, 0.0);
        let f = flux_closed_form(1.0, SurfaceParams { h: 1.0, c: 0.0 }).unwrap();
        assert_eq!(f.flux, 0.0);
        assert!(close(f.conormal_term, -2.0 * PI, 1e-15) && close(f.area_term, 2.0 * PI, 1e-15));
        assert!(flux_closed_form(0.0, SurfaceParams { h: 1.0, c: 0.0 }).is_err());
    }

    #[test]
    fn numeric_examples() {
        let curve = ProfileCurve::from_values(1.0, 3.0, 1.0, 0.0).unwrap();
        let f = flux_numeric(2.0, &curve, FluxMode::Reduced).unwrap();
        assert!(close(f.flux, 18.849_555_921_538_76, 1e-10));

        let maximal = ProfileCurve::from_values(0.0, 3.0, 1.0, 0.0).unwrap();
        let f = flux_numeric(1.0, &maximal, FluxMode::Reduced).unwrap();
        assert_eq!(f.area_term, 0.0);
        assert!(close(f.conormal_term, 6.0 * PI, 1e-12) && close(f.flux, 6.0 * PI, 1e-12));

        let f1 = flux_numeric(1.0, &curve, FluxMode::Reduced).unwrap();
        assert!(close(f1.flux, f.flux, 1e-12));
    }

    #[test]
    fn angular_mode_matches_reduced() {
        for &(h, c) in &[(1.0, 3.0), (0.1, -0.25), (-2.0, 1.0), (0.0, -1.5)] {
            let curve = ProfileCurve::from_values(h, c, 1.0, 0.3).unwrap();
            for r in [0.5, 1.0, 2.0, 5.0] {
                let red = flux_numeric(r, &curve, FluxMode::Reduced).unwrap();
                let ang = flux_numeric(r, &curve, FluxMode::Angular { nodes: 64 }).unwrap();
                let exact = flux_closed_form(r, SurfaceParams { h, c }).unwrap();
                for (x, y) in [(red.flux, ang.flux), (red.area_term, ang.area_term), (red.flux, exact.flux)] {
                    assert!(close(x, y, 1e-9 * (1.0 + exact.area_term.abs())), "{x} {y}");
                }
            }
        }
        let curve = ProfileCurve::from_values(1.0, 3.0, 1.0, 0.0).unwrap();
        assert!(flux_numeric(1.0, &curve, FluxMode::Angular { nodes: 2 }).is_err());
    }

    #[test]
    fn frame_vectors_are_orthonormal() {
        // N future-directed unit timelike, ν unit spacelike, both orthogonal to the surface.
        let (fp, theta): (f64, f64) = (0.6, 0.4);
        let w = (1.0 - fp * fp).sqrt();
        let (s, c) = theta.sin_cos();
        let normal: Vec3 = [fp * c / w, fp * s / w, 1.0 / w];
        let tau: Vec3 = [-s, c, 0.0];
        let x_t: Vec3 = [c, s, fp];
        let nu = cross(tau, normal);
        assert!(close(inner(normal, normal), -1.0, 1e-14));
        assert!(normal[2] > 0.0);
        assert!(close(inner(nu, nu), 1.0, 1e-14));
        assert!(close(inner(normal, x_t), 0.0, 1e-14));
        assert!(close(inner(nu, tau), 0.0, 1e-14));
        // ν points towards increasing t.
        assert!(inner(nu, x_t) > 0.0);
    }

    #[test]
    fn flux_sign_follows_c() {
        for c in [-2.0, -0.1, 0.0, 0.4, 3.0] {
            let curve = ProfileCurve::from_values(0.8, c, 1.0, 0.0).unwrap();
            let f = flux_numeric(1.7, &curve, FluxMode::Reduced).unwrap();
            let sign = if f.flux.abs() < 1e-12 { 0.0 } else { f.flux.signum() };
            let expect = if c == 0.0 { 0.0 } else { c.signum() };
            assert_eq!(sign, expect, "c={c}");
        }
    }
}
