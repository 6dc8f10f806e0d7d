//! Variational check on the inverse profile `t = g(x₃)`.
//!
//! Rotating `x₁ = g(x₃)` and extremizing area at fixed volume leads to the
//! Euler–Lagrange identity
//!
//! ```text
//! 2g / √(g′² − 1) − λ g² = const,   λ = 2H.
//! ```
//!
//! Written in terms of `f = g⁻¹`, the left-hand side is `−2c` on increasing
//! profiles. On decreasing profiles it is `2c` once `λ = −2H` (the reflection
//! `x₃ → −x₃` that makes the profile increasing also flips `H`). The report
//! therefore uses `λ = 2sH` with `s = sign f′` and normalizes
//! `κ = −s · (2g/√(g′² − 1) − λg²)`. This gives `κ = 2c` for both orientations.

use serde::Serialize;

use crate::exec::Execution;
use crate::profile::ProfileCurve;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VariationalReport {
    /// Mean of the normalized Lagrange constant, `≈ 2c`.
    pub kappa: f64,
    /// `max |κᵢ − κ|` over interior samples.
    pub deviation: f64,
    /// `sign f′` on the window.
    pub orientation: f64,
    pub samples: usize,
}

/// Samples `g` at `n` equally spaced heights between `f(t₁)` and `f(t₂)`,
/// differentiates it with central differences, and reports how far
/// the Euler–Lagrange expression is from constant.
pub fn variational_residual(
    curve: &ProfileCurve,
    (t1, t2): (f64, f64),
    n: usize,
    exec: Execution,
) -> Result<VariationalReport> {
    if !(t1 > 0.0) || !(t2 > t1) || !t2.is_finite() {
        return Err(Error::invalid("t_window", format!("need 0 < t1 < t2, got ({t1}, {t2})")));
    }
    if n < 5 {
        return Err(Error::invalid("n", format!("need at least 5 samples, got {n}")));
    }
    let s1 = curve.slope(t1)?;
    let s2 = curve.slope(t2)?;
    let interior_zero = curve.critical_point()?.is_some_and(|(t, _)| t >= t1 && t <= t2);
    if s1 == 0.0 || s2 == 0.0 || s1.signum() != s2.signum() || interior_zero {
        return Err(Error::NotMonotone { t1, t2 });
    }
    let s = s1.signum();

    let f1 = curve.height(t1)?;
    let f2 = curve.height(t2)?;
    let dz = (f2 - f1) / (n - 1) as f64;
    let g = exec.map_range(n, |i| {
        if i == 0 {
            Ok(t1)
        } else if i == n - 1 {
            Ok(t2)
        } else {
            invert(curve, f1 + i as f64 * dz, (t1, t2), (f1, f2))
        }
    });
    let g: Vec<f64> = g.into_iter().collect::<Result<_>>()?;

    let h = curve.mean_curvature();
    let lambda = 2.0 * s * h;
    let mut kappas = Vec::with_capacity(n - 2);
    for i in 1..n - 1 {
        let gp = (g[i + 1] - g[i - 1]) / (2.0 * dz);
        let a = gp.abs();
        let excess = (a - 1.0) * (a + 1.0);
        if !(excess > 0.0) {
            return Err(Error::SpacelikeViolation(format!("|g'| = {a} <= 1 at x3 = {}", f1 + i as f64 * dz)));
        }
        let expr = 2.0 * g[i] / excess.sqrt() - lambda * g[i] * g[i];
        kappas.push(-s * expr);
    }
    let kappa = kappas.iter().sum::<f64>() / kappas.len() as f64;
    let deviation = kappas.iter().map(|k| (k - kappa).abs()).fold(0.0, f64::max);
    Ok(VariationalReport { kappa, deviation, orientation: s, samples: n })
}

/// Solves `f(t) = z` on a monotone window by safeguarded Newton.
fn invert(curve: &ProfileCurve, z: f64, (t1, t2): (f64, f64), (f1, f2): (f64, f64)) -> Result<f64> {
    let increasing = f2 > f1;
    let (mut lo, mut hi) = (t1, t2);
    let mut t = t1 + (z - f1) / (f2 - f1) * (t2 - t1);
    for _ in 0..100 {
        let r = curve.height(t)? - z;
        if r == 0.0 {
            return Ok(t);
        }
        if (r < 0.0) == increasing {
            lo = t;
        } else {
            hi = t;
        }
        let step = r / curve.slope(t)?;
        let mut next = t - step;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - t).abs() <= 4.0 * f64::EPSILON * t || hi - lo <= 4.0 * f64::EPSILON * t {
            return Ok(next);
        }
        t = next;
    }
    Ok(t)
}
