//! Rotational profiles `f(t; H, c)` with `f(r) = a`.
//!
//! The slope is explicit,
//!
//! ```text
//! f′(t) = h(t) = (H t² − c) / √(t² + (H t² − c)²),
//! ```
//!
//! and heights come from `f(t) = a + ∫ᵣᵗ h(s) ds`. The plane, the maximal
//! catenoids (`H = 0`) and the hyperbolic caps (`c = 0`) have closed forms; every
//! other profile is integrated with adaptive Gauss–Kronrod quadrature. Since
//! `|h| < 1` on `(0, ∞)` the integrand stays bounded, including at the cone vertex.

use serde::Serialize;

use crate::params::{canonicalize, Anchor, Parity, Regime, SurfaceParams};
use crate::quadrature::{decade_breaks, integrate, QuadSettings};
use crate::{Error, Result};

/// Unit spacelike direction of the profile: `sin = f′`, `cos = √(1 − f′²)`.
///
/// Both components carry full relative precision even when `|f′|` is within
/// rounding of 1, which matters for anything dividing by `√(1 − f′²)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlopeFrame {
    pub sin: f64,
    pub cos: f64,
}

impl SlopeFrame {
    /// `f′ / √(1 − f′²)`.
    pub fn tan(self) -> f64 {
        self.sin / self.cos
    }
}

/// Slope frame at `t ≥ 0`; at `t = 0` this is the one-sided limit.
///
/// Works with `u = f′/√(1 − f′²) = H t − c/t`, so `(H t² − c)²` is never formed
/// and large radii cannot overflow.
pub(crate) fn frame_at(t: f64, h: f64, c: f64) -> SlopeFrame {
    if t == 0.0 {
        return if c == 0.0 { SlopeFrame { sin: 0.0, cos: 1.0 } } else { SlopeFrame { sin: -c.signum(), cos: 0.0 } };
    }
    let u = h * t - c / t;
    if !u.is_finite() || u.abs() > 1e150 {
        return SlopeFrame { sin: u.signum(), cos: 1.0 / u.abs() };
    }
    let rho = 1f64.hypot(u);
    SlopeFrame { sin: u / rho, cos: 1.0 / rho }
}

/// `h(t)` for arbitrary (not necessarily canonical) parameters; the formula is
/// odd in `(H, c)`.
pub fn slope(t: f64, params: SurfaceParams) -> Result<f64> {
    Ok(slope_frame(t, params)?.sin)
}

pub fn slope_frame(t: f64, params: SurfaceParams) -> Result<SlopeFrame> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::NonPositiveRadius(t));
    }
    Ok(frame_at(t, params.h, params.c))
}

/// Maximal catenoid through the anchor,
/// `c_max (asinh(t/|c_max|) − asinh(r/|c_max|)) + a`.
///
/// `c_max` is the maximal-surface constant `t f′/√(1 − f′²)`, which is **minus**
/// the first-integral constant `c` of the `H = 0` profile: the curve with
/// parameters `(0, c)` is `closed_form_maximal(t, -c, anchor)`. The profile is
/// increasing for `c_max > 0` and the formula is odd in `c_max`.
pub fn closed_form_maximal(t: f64, c_max: f64, anchor: Anchor) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::NonPositiveRadius(t));
    }
    if c_max == 0.0 || !c_max.is_finite() {
        return Err(Error::invalid("c", "maximal closed form needs finite c != 0"));
    }
    let k = c_max.abs();
    Ok(c_max * ((t / k).asinh() - (anchor.r / k).asinh()) + anchor.a)
}

/// `(√(1 + H²t²) − √(1 + H²r²)) / H + a`, the hyperbolic cap through the anchor.
pub fn closed_form_hyperbolic(t: f64, h: f64, anchor: Anchor) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::NonPositiveRadius(t));
    }
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::invalid("H", "hyperbolic closed form needs finite H > 0"));
    }
    let r = anchor.r;
    let st = 1f64.hypot(h * t);
    let sr = 1f64.hypot(h * r);
    // Rationalized difference of square roots.
    Ok(h * (t - r) * (t + r) / (st + sr) + anchor.a)
}

/// Height of the vertex `p` of the hyperbolic plane `⟨x − p, x − p⟩ = −1/H²`
/// carrying the cap through `anchor` (`p = (0, 0, p₃)`).
pub fn hyperbolic_center(h: f64, anchor: Anchor) -> f64 {
    anchor.a - 1f64.hypot(h * anchor.r) / h
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SingularityKind {
    /// Tangent to the upper light cone at the vertex (`c < 0`).
    ConicalUpper,
    /// Tangent to the lower light cone at the vertex (`c > 0`).
    ConicalLower,
    RegularPlane,
    RegularHyperbolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SingularityReport {
    pub limit_slope: f64,
    pub kind: SingularityKind,
    /// `f(0⁺)`.
    pub cone_vertex_height: f64,
}

/// A solved profile: parameters, anchor and the quadrature settings used to
/// evaluate it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfileCurve {
    params: SurfaceParams,
    canonical: SurfaceParams,
    parity: Parity,
    anchor: Anchor,
    regime: Regime,
    quad: QuadSettings,
}

impl ProfileCurve {
    pub fn new(params: SurfaceParams, anchor: Anchor) -> Result<Self> {
        let params = SurfaceParams::new(params.h, params.c)?;
        let anchor = Anchor::new(anchor.r, anchor.a)?;
        let (canonical, parity) = canonicalize(params);
        Ok(ProfileCurve {
            params,
            canonical,
            parity,
            anchor,
            regime: Regime::from_canonical(canonical),
            quad: QuadSettings::default(),
        })
    }

    /// Convenience for `new(SurfaceParams { h, c }, Anchor { r, a })`.
    pub fn from_values(h: f64, c: f64, r: f64, a: f64) -> Result<Self> {
        Self::new(SurfaceParams { h, c }, Anchor { r, a })
    }

    pub fn with_quadrature(mut self, quad: QuadSettings) -> Self {
        self.quad = quad;
        self
    }

    /// Parameters as given, before canonicalization.
    pub fn params(&self) -> SurfaceParams {
        self.params
    }
    pub fn canonical(&self) -> SurfaceParams {
        self.canonical
    }
    pub fn parity(&self) -> Parity {
        self.parity
    }
    pub fn anchor(&self) -> Anchor {
        self.anchor
    }
    pub fn regime(&self) -> Regime {
        self.regime
    }
    pub fn quadrature(&self) -> QuadSettings {
        self.quad
    }
    pub fn mean_curvature(&self) -> f64 {
        self.params.h
    }

    pub fn slope(&self, t: f64) -> Result<f64> {
        slope(t, self.params)
    }

    pub fn slope_frame(&self, t: f64) -> Result<SlopeFrame> {
        slope_frame(t, self.params)
    }

    /// `f(t)`, from a closed form when the regime has one.
    pub fn height(&self, t: f64) -> Result<f64> {
        check_radius(t)?;
        match self.closed_form(t) {
            Some(v) => v,
            None => self.height_quadrature(t),
        }
    }

    /// `f(t)` by quadrature, whatever the regime.
    pub fn height_quadrature(&self, t: f64) -> Result<f64> {
        check_radius(t)?;
        Ok(self.anchor.a + self.integral_from_anchor(t)?)
    }

    /// Closed form height, if the regime has one.
    pub fn closed_form(&self, t: f64) -> Option<Result<f64>> {
        let SurfaceParams { h, c } = self.params;
        match self.regime {
            Regime::Plane => Some(Ok(self.anchor.a)),
            Regime::MaximalCatenoid => Some(closed_form_maximal(t, -c, self.anchor)),
            Regime::HyperbolicCap => {
                // (−H, 0) is the mirror image of (H, 0).
                let mirrored = Anchor { r: self.anchor.r, a: self.parity.sign() * self.anchor.a };
                Some(closed_form_hyperbolic(t, h.abs(), mirrored).map(|v| self.parity.sign() * v))
            }
            Regime::NegativeC | Regime::PositiveC => None,
        }
    }

    /// `∫ᵣᵗ h`, with `t = 0` allowed.
    fn integral_from_anchor(&self, t: f64) -> Result<f64> {
        let r = self.anchor.r;
        if t == r {
            return Ok(0.0);
        }
        let SurfaceParams { h, c } = self.params;
        let mut breaks = decade_breaks(r, t);
        if h != 0.0 && c / h > 0.0 {
            breaks.push((c / h).sqrt());
        }
        Ok(integrate(|s| frame_at(s, h, c).sin, r, t, &breaks, &self.quad)?.value)
    }

    pub fn singularity_report(&self) -> Result<SingularityReport> {
        let c = self.params.c;
        let kind = if c > 0.0 {
            SingularityKind::ConicalLower
        } else if c < 0.0 {
            SingularityKind::ConicalUpper
        } else if self.params.h == 0.0 {
            SingularityKind::RegularPlane
        } else {
            SingularityKind::RegularHyperbolic
        };
        let limit_slope = if c == 0.0 { 0.0 } else { -c.signum() };
        let cone_vertex_height = self.anchor.a + self.integral_from_anchor(0.0)?;
        Ok(SingularityReport { limit_slope, kind, cone_vertex_height })
    }

    /// `lim f(t)/t` as `t → ∞`: `±1` when `H ≠ 0` (sign of `H`), `0` when `H = 0`.
    pub fn asymptotic_slope(&self) -> f64 {
        if self.canonical.h > 0.0 {
            self.parity.sign()
        } else {
            0.0
        }
    }

    /// `f(T)/T`, the numerical counterpart of [`Self::asymptotic_slope`].
    pub fn asymptotic_ratio(&self, big_t: f64) -> Result<f64> {
        Ok(self.height(big_t)? / big_t)
    }

    /// `H t² − t f′/√(1 − f′²) − c` with `f′` taken by central differences of
    /// [`Self::height`].
    pub fn first_integral_residual(&self, t: f64, fd_step: f64) -> Result<f64> {
        check_radius(t)?;
        if !(fd_step > 0.0) || !(t - fd_step > 0.0) {
            return Err(Error::invalid("fd_step", format!("need 0 < fd_step < t, got fd_step = {fd_step}, t = {t}")));
        }
        let fp = (self.height(t + fd_step)? - self.height(t - fd_step)?) / (2.0 * fd_step);
        let one_minus = (1.0 - fp) * (1.0 + fp);
        if !(one_minus > 8.0 * f64::EPSILON) {
            return Err(Error::SpacelikeViolation(format!(
                "difference slope {fp} at t = {t} is not below 1 in magnitude"
            )));
        }
        let SurfaceParams { h, c } = self.params;
        Ok(h * t * t - t * fp / one_minus.sqrt() - c)
    }

    /// Same residual with `f′` taken straight from the slope formula.
    pub fn first_integral_exact(&self, t: f64) -> Result<f64> {
        let frame = self.slope_frame(t)?;
        let SurfaceParams { h, c } = self.params;
        Ok(h * t * t - t * frame.tan() - c)
    }

    /// The radius where `f′` vanishes, with the height there. Only `c/H > 0`
    /// profiles have one; for canonical parameters it is the minimum of `f`.
    pub fn critical_point(&self) -> Result<Option<(f64, f64)>> {
        let SurfaceParams { h, c } = self.params;
        if h == 0.0 || !(c / h > 0.0) {
            return Ok(None);
        }
        let t = (c / h).sqrt();
        Ok(Some((t, self.height(t)?)))
    }
}

/// Default central-difference step `1e-5 · max(1, t)`.
pub fn default_fd_step(t: f64) -> f64 {
    1e-5 * t.max(1.0)
}

fn check_radius(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveRadius(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn curve(h: f64, c: f64) -> ProfileCurve {
        ProfileCurve::from_values(h, c, 1.0, 0.0).unwrap()
    }

    #[test]
    fn slope_examples() {
        let p = SurfaceParams { h: 1.0, c: 3.0 };
        assert!((slope(1.0, p).unwrap() - (-2.0 / 5f64.sqrt())).abs() < 1e-15);
        assert_eq!(slope(0.7, SurfaceParams { h: 0.0, c: 0.0 }).unwrap(), 0.0);
        assert!(slope(3f64.sqrt(), p).unwrap().abs() < 1e-15);
        assert_eq!(slope(0.0, p), Err(Error::NonPositiveRadius(0.0)));
        assert!(slope(-1.0, p).is_err());
    }

    #[test]
    fn slope_survives_huge_radii() {
        let p = SurfaceParams { h: 1.0, c: 3.0 };
        let s = slope(1e160, p).unwrap();
        assert!(s.is_finite() && s <= 1.0 && s > 0.999);
        let s = slope(1e-300, p).unwrap();
        assert_eq!(s, -1.0);
    }

    #[test]
    fn height_examples() {
        // Increasing maximal branch: first-integral constant c = −3.
        let max = curve(0.0, -3.0);
        let expect = 3.0 * ((7.0f64 / 3.0).asinh() - (1.0f64 / 3.0).asinh());
        assert!((max.height(7.0).unwrap() - expect).abs() < 1e-14);
        assert!((max.height(7.0).unwrap() - 3.76815).abs() < 1e-4);
        assert!((curve(0.0, 3.0).height(7.0).unwrap() + expect).abs() < 1e-14);

        let cap = curve(1.0, 0.0);
        assert!((cap.height(2.0).unwrap() - (5f64.sqrt() - 2f64.sqrt())).abs() < 1e-14);

        for c in [curve(1.0, 3.0), curve(0.1, -0.25), max, cap] {
            assert_eq!(c.height(1.0).unwrap(), 0.0);
            assert_eq!(c.height_quadrature(1.0).unwrap(), 0.0);
        }
        assert!(matches!(curve(1.0, 3.0).height(0.0), Err(Error::NonPositiveRadius(_))));
    }

    #[test]
    fn closed_form_examples() {
        let anchor = Anchor { r: 1.0, a: 0.0 };
        assert_eq!(closed_form_maximal(1.0, 3.0, anchor).unwrap(), 0.0);
        let v = closed_form_maximal(3.0, 3.0, anchor).unwrap();
        assert!((v - 3.0 * (1f64.asinh() - (1.0f64 / 3.0).asinh())).abs() < 1e-15);
        assert!((v - 1.661_770_310_346_854).abs() < 1e-12);
        assert_eq!(closed_form_maximal(3.0, -3.0, anchor).unwrap(), -v);
        assert!(closed_form_maximal(3.0, 0.0, anchor).is_err());

        let a2 = Anchor { r: 1.3, a: 0.4 };
        assert!((closed_form_hyperbolic(1.3, 2.0, a2).unwrap() - 0.4).abs() < 1e-15);
        assert!((closed_form_hyperbolic(2.0, 1.0, anchor).unwrap() - 0.821_854_415_126_694_7).abs() < 1e-14);
        assert!(closed_form_hyperbolic(2.0, 0.0, anchor).is_err());
    }

    #[test]
    fn cap_lies_on_hyperbolic_plane() {
        for &(h, r, a) in &[(1.0, 1.0, 0.0), (0.3, 2.0, -1.0), (4.0, 0.5, 2.5)] {
            let anchor = Anchor { r, a };
            let p3 = hyperbolic_center(h, anchor);
            for i in 0..50 {
                let t = 0.1 * i as f64;
                let f = closed_form_hyperbolic(t, h, anchor).unwrap();
                let residual = t * t - (f - p3).powi(2) + 1.0 / (h * h);
                assert!(residual.abs() < 1e-11 * (1.0 + t * t), "{residual}");
            }
        }
    }

    #[test]
    fn singularity_examples() {
        let rep = curve(1.0, 3.0).singularity_report().unwrap();
        assert_eq!((rep.limit_slope, rep.kind), (-1.0, SingularityKind::ConicalLower));
        let rep = curve(1.0, -3.0).singularity_report().unwrap();
        assert_eq!((rep.limit_slope, rep.kind), (1.0, SingularityKind::ConicalUpper));
        let rep = curve(1.0, 0.0).singularity_report().unwrap();
        assert_eq!((rep.limit_slope, rep.kind), (0.0, SingularityKind::RegularHyperbolic));
        let expect = closed_form_hyperbolic(0.0, 1.0, Anchor { r: 1.0, a: 0.0 }).unwrap();
        assert!((rep.cone_vertex_height - expect).abs() < 1e-12);
        let rep = curve(0.0, 0.0).singularity_report().unwrap();
        assert_eq!((rep.kind, rep.cone_vertex_height), (SingularityKind::RegularPlane, 0.0));

        // f′ = −3/√(t² + 9) < 0, so the vertex sits above the anchor.
        let rep = curve(0.0, 3.0).singularity_report().unwrap();
        let expect = 3.0 * (1.0f64 / 3.0).asinh();
        assert!((rep.cone_vertex_height - expect).abs() < 1e-12);
    }

    #[test]
    fn asymptotic_examples() {
        assert_eq!(curve(1.0, 3.0).asymptotic_slope(), 1.0);
        assert_eq!(curve(0.0, 3.0).asymptotic_slope(), 0.0);
        assert_eq!(curve(-1.0, 3.0).asymptotic_slope(), -1.0);
        let ratio = curve(1.0, 3.0).asymptotic_ratio(1e6).unwrap();
        assert!((ratio - 1.0).abs() < 1e-3, "{ratio}");
        let ratio = curve(0.0, 3.0).asymptotic_ratio(1e6).unwrap();
        assert!(ratio.abs() < 1e-3, "{ratio}");
    }

    #[test]
    fn first_integral_examples() {
        let max = curve(0.0, -3.0);
        let res = max.first_integral_residual(1.5, 1e-4).unwrap();
        assert!(res.abs() < 1e-6, "{res}");
        assert_eq!(curve(1.0, 3.0).first_integral_exact(1.0).unwrap(), 0.0);
        assert_eq!(curve(0.0, 3.0).first_integral_exact(1.0).unwrap(), 0.0);

        // Deep inside the cone the slope is −1 to machine precision.
        let near = ProfileCurve::from_values(1.0, 3.0, 1e-9, 0.0).unwrap();
        assert!(matches!(near.first_integral_residual(1e-9, 5e-10), Err(Error::SpacelikeViolation(_))));
        assert!(max.first_integral_residual(1.0, 1.0).is_err());
        assert!(max.first_integral_residual(1.0, 0.0).is_err());
    }

    #[test]
    fn critical_point_at_sqrt_c_over_h() {
        let (t, f) = curve(1.0, 3.0).critical_point().unwrap().unwrap();
        assert_eq!(t, 3f64.sqrt());
        assert!(f < 0.0);
        assert!(curve(1.0, -3.0).critical_point().unwrap().is_none());
        assert!(curve(0.0, 3.0).critical_point().unwrap().is_none());
    }

    #[test]
    fn quadrature_matches_closed_forms_on_log_grid() {
        let curves = [curve(0.0, 3.0), curve(0.0, -0.5), curve(1.0, 0.0), curve(2.5, 0.0), curve(-1.0, 0.0)];
        let tol = QuadSettings::default().abs_tol;
        for c in curves {
            for i in 0..40 {
                let t = 10f64.powf(-3.0 + 6.0 * i as f64 / 39.0);
                let exact = c.height(t).unwrap();
                let quad = c.height_quadrature(t).unwrap();
                assert!(
                    (exact - quad).abs() <= 10.0 * tol.max(1e-12 * exact.abs()),
                    "{:?} t={t} {exact} {quad}",
                    c.params()
                );
            }
        }
    }

    #[test]
    fn negative_c_slope_has_interior_minimum() {
        let (h, c) = (1.0, -3.0);
        let p = SurfaceParams { h, c };
        let t_min = (-c / h).sqrt();
        for i in 1..50 {
            let t = t_min * i as f64 / 50.0;
            assert!(slope(t, p).unwrap() > slope(t + 1e-3, p).unwrap());
            let t = t_min * (1.0 + i as f64 / 50.0);
            assert!(slope(t + 1e-3, p).unwrap() > slope(t, p).unwrap());
        }
        assert!(slope(t_min, p).unwrap() > 0.0);
    }

    #[test]
    fn positive_c_slope_increases_through_zero() {
        let p = SurfaceParams { h: 1.0, c: 3.0 };
        let mut prev = slope(1e-3, p).unwrap();
        for i in 1..400 {
            let s = slope(1e-3 + 0.01 * i as f64, p).unwrap();
            assert!(s > prev);
            prev = s;
        }
        let c = curve(1.0, 3.0);
        let (t_star, f_star) = c.critical_point().unwrap().unwrap();
        for t in [0.5, 1.0, 1.5, 1.7, 1.75, 2.0, 3.0] {
            assert!(c.height(t).unwrap() > f_star, "t={t}");
        }
        assert!(t_star > 1.7 && t_star < 1.75);
    }

    proptest! {
        #[test]
        fn slope_is_strictly_spacelike(
            t in -6.0f64..6.0, h in -10.0f64..10.0, c in -10.0f64..10.0,
        ) {
            let t = 10f64.powf(t);
            let s = slope(t, SurfaceParams { h, c }).unwrap();
            prop_assert!(s.abs() < 1.0);
            let frame = slope_frame(t, SurfaceParams { h, c }).unwrap();
            prop_assert!(frame.cos > 0.0);
        }

        #[test]
        fn slope_decreases_in_c(
            t in 0.01f64..10.0, h in 0.0f64..10.0, c1 in -10.0f64..10.0, dc in 1e-3f64..5.0,
        ) {
            let s1 = slope(t, SurfaceParams { h, c: c1 }).unwrap();
            let s2 = slope(t, SurfaceParams { h, c: c1 + dc }).unwrap();
            prop_assert!(s1 > s2);
        }

        #[test]
        fn height_is_odd_under_reflection(
            t in 0.05f64..8.0, h in 0.0f64..3.0, c in -3.0f64..3.0, r in 0.2f64..3.0, a in -2.0f64..2.0,
        ) {
            let up = ProfileCurve::from_values(h, c, r, a).unwrap();
            let down = ProfileCurve::from_values(-h, -c, r, -a).unwrap();
            let fu = up.height(t).unwrap();
            let fd = down.height(t).unwrap();
            prop_assert!((fu + fd).abs() <= 1e-9, "{} {}", fu, fd);
        }

        #[test]
        fn cone_vertex_height_is_finite(h in -10.0f64..10.0, c in -10.0f64..10.0, r in 0.01f64..5.0) {
            let curve = ProfileCurve::from_values(h, c, r, 0.0).unwrap();
            let rep = curve.singularity_report().unwrap();
            prop_assert!(rep.cone_vertex_height.is_finite());
            prop_assert!(rep.cone_vertex_height.abs() <= r + 1e-9);
        }
    }
}
