//! Two-ring problem: given `Γ(r, a)`, `Γ(R, b)` and `H`, find the first-integral
//! constant `c` with `f(R; H, c) = b` for the profile anchored at `f(r) = a`.
//!
//! The shooting map `c ↦ f(R; H, c)` is strictly decreasing (the slope is
//! strictly decreasing in `c`) and tends to `a ∓ (R − r)` as `c → ±∞`, so for
//! every admissible ring pair the root exists, is unique, and a bracket is found
//! by doubling. The root is then refined by bisection.

use crate::params::{validate_rings, Regime, RingPair, SurfaceParams, ValidatedRingPair};
use crate::profile::ProfileCurve;
use crate::quadrature::QuadSettings;
use crate::{Error, Result};

/// Largest `|c|` tried while expanding the bracket.
pub const BRACKET_LIMIT: f64 = 1e15;
/// Relative scale below which a solved `c` is snapped to exactly zero.
pub const SNAP_SCALE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlateauProblem {
    pub rings: ValidatedRingPair,
    pub h: f64,
    /// Tolerance on `|f(R) − b|`.
    pub root_tol: f64,
    /// Bisection stops once the bracket is narrower than `c_tol · max(1, |c|)`.
    pub c_tol: f64,
    pub quad: QuadSettings,
}

impl PlateauProblem {
    pub fn new(rings: ValidatedRingPair, h: f64) -> Result<Self> {
        if !h.is_finite() {
            return Err(Error::invalid("H", format!("must be finite, got {h}")));
        }
        Ok(PlateauProblem { rings, h, root_tol: 1e-9, c_tol: 1e-12, quad: QuadSettings::default() })
    }

    pub fn with_root_tol(mut self, root_tol: f64) -> Self {
        self.root_tol = root_tol;
        self
    }

    pub fn with_quadrature(mut self, quad: QuadSettings) -> Self {
        self.quad = quad;
        self
    }

    fn curve(&self, c: f64) -> Result<ProfileCurve> {
        Ok(ProfileCurve::new(SurfaceParams { h: self.h, c }, self.rings.inner_anchor())?.with_quadrature(self.quad))
    }

    /// `f(R; H, c)` for the profile through the inner ring.
    pub fn shoot(&self, c: f64) -> Result<f64> {
        self.curve(c)?.height(self.rings.big_r())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlateauSolution {
    pub curve: ProfileCurve,
    pub c: f64,
    pub regime: Regime,
    /// Hyperbolic-cap threshold; `None` when `b < a`.
    pub h0: Option<f64>,
    /// `|f(R) − b|`.
    pub residual: f64,
    /// Shooting-map evaluations spent.
    pub evaluations: usize,
}

/// Mean curvature of the hyperbolic cap spanning the rings,
/// `H₀ = 2(b − a) / √(((R − r)² − (b − a)²)((R + r)² − (b − a)²))`.
pub fn threshold_h0(rings: &ValidatedRingPair) -> Result<f64> {
    let d = rings.b() - rings.a();
    if d < 0.0 {
        return Err(Error::OrientationError { a: rings.a(), b: rings.b() });
    }
    let diff = rings.big_r() - rings.r();
    let sum = rings.big_r() + rings.r();
    let denom = ((diff - d) * (diff + d) * (sum - d) * (sum + d)).sqrt();
    Ok(2.0 * d / denom)
}

/// Predicts the regime from `H` and `H₀` without solving. Needs `H ≥ 0` and `b ≥ a`.
pub fn classify(h: f64, rings: &ValidatedRingPair) -> Result<Regime> {
    if !(h >= 0.0) {
        return Err(Error::invalid("H", format!("classification needs H >= 0, got {h}")));
    }
    let h0 = threshold_h0(rings)?;
    Ok(if h == 0.0 {
        if rings.a() == rings.b() {
            Regime::Plane
        } else {
            Regime::MaximalCatenoid
        }
    } else if h < h0 {
        Regime::NegativeC
    } else if h == h0 {
        Regime::HyperbolicCap
    } else {
        Regime::PositiveC
    })
}

/// Like [`classify`] but for any sign of `H` and either orientation of the
/// rings. The regime refers to the canonical (`H ≥ 0`) parameters.
pub fn predict_regime(h: f64, rings: &ValidatedRingPair) -> Result<Regime> {
    if h < 0.0 {
        return predict_regime(-h, &rings.reflected());
    }
    if rings.b() >= rings.a() {
        return classify(h, rings);
    }
    // Below the inner ring: the cap through (r, a) ends above b, so c > 0.
    Ok(if h == 0.0 { Regime::MaximalCatenoid } else { Regime::PositiveC })
}

/// Solves for `c` by bracket expansion and bisection on the shooting map.
pub fn solve_c(problem: &PlateauProblem) -> Result<PlateauSolution> {
    let b = problem.rings.b();
    let mut evaluations = 0usize;
    let mut g = |c: f64| -> Result<f64> {
        evaluations += 1;
        Ok(problem.shoot(c)? - b)
    };

    // g is strictly decreasing: look for g(lo) >= 0 >= g(hi).
    let (mut lo, mut hi) = (-1.0f64, 1.0f64);
    let mut g_lo = g(lo)?;
    let mut g_hi;
    if g_lo < 0.0 {
        g_hi = g_lo;
        while g_lo < 0.0 {
            hi = lo;
            g_hi = g_lo;
            lo *= 2.0;
            if lo.abs() > BRACKET_LIMIT {
                return Err(Error::RootBracketFailure { limit: BRACKET_LIMIT });
            }
            g_lo = g(lo)?;
        }
    } else {
        g_hi = g(hi)?;
        while g_hi > 0.0 {
            lo = hi;
            g_lo = g_hi;
            hi *= 2.0;
            if hi > BRACKET_LIMIT {
                return Err(Error::RootBracketFailure { limit: BRACKET_LIMIT });
            }
            g_hi = g(hi)?;
        }
    }

    for _ in 0..2000 {
        if g_lo == 0.0 {
            hi = lo;
            g_hi = 0.0;
            break;
        }
        if g_hi == 0.0 {
            lo = hi;
            g_lo = 0.0;
            break;
        }
        let mid = lo + 0.5 * (hi - lo);
        if hi - lo <= problem.c_tol * mid.abs().max(1.0) || mid <= lo || mid >= hi {
            break;
        }
        let g_mid = g(mid)?;
        if g_mid > 0.0 {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
            g_hi = g_mid;
        }
    }

    let mut candidates = vec![(lo, g_lo.abs()), (hi, g_hi.abs())];
    if g_lo != g_hi {
        let secant = lo - g_lo * (hi - lo) / (g_hi - g_lo);
        if secant > lo && secant < hi {
            candidates.push((secant, g(secant)?.abs()));
        }
    }
    let (mut c, _) = candidates.into_iter().min_by(|x, y| x.1.total_cmp(&y.1)).expect("at least two candidates");

    let snap = SNAP_SCALE * (problem.h.abs() * problem.rings.big_r().powi(2)).max(1.0);
    if c != 0.0 && c.abs() < snap && g(0.0)?.abs() <= problem.root_tol {
        c = 0.0;
    }

    let curve = problem.curve(c)?;
    let residual = (curve.height(problem.rings.big_r())? - b).abs();
    if !(residual <= problem.root_tol) {
        return Err(Error::RootToleranceNotReached { residual, tol: problem.root_tol });
    }
    Ok(PlateauSolution {
        curve,
        c,
        regime: curve.regime(),
        h0: threshold_h0(&problem.rings).ok(),
        residual,
        evaluations,
    })
}

/// Validates the rings and solves with default tolerances.
pub fn solve(rings: RingPair, h: f64) -> Result<PlateauSolution> {
    let rings = validate_rings(rings)?;
    solve_c(&PlateauProblem::new(rings, h)?)
}
