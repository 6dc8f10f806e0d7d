use crate::profile::{slope_frame, ProfileCurve};
use crate::{Error, Result};

/// Mean curvature of the profile at `t` from
/// `H = (t f″ + (1 − f′²) f′) / (2t (1 − f′²)^{3/2})`,
/// with `f″` a central difference of the exact slope.
pub fn mean_curvature_rotational(t: f64, curve: &ProfileCurve, fd_step: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::NonPositiveRadius(t));
    }
    if !(fd_step > 0.0) {
        return Err(Error::invalid("fd_step", format!("must be positive, got {fd_step}")));
    }
    if t - fd_step <= 0.0 {
        return Err(Error::SpacelikeViolation(format!(
            "difference stencil [{}, {}] crosses the cone vertex",
            t - fd_step,
            t + fd_step
        )));
    }
    let params = curve.params();
    let f2 = (slope_frame(t + fd_step, params)?.sin - slope_frame(t - fd_step, params)?.sin) / (2.0 * fd_step);
    let frame = slope_frame(t, params)?;
    let w = frame.cos;
    if !(w > 0.0) {
        return Err(Error::SpacelikeViolation(format!("f'(t) = ±1 at t = {t}")));
    }
    Ok((t * f2 + w * w * frame.sin) / (2.0 * t * w * w * w))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let curve = ProfileCurve::from_values(1.0, 3.0, 1.0, 0.0).unwrap();
        let h = mean_curvature_rotational(1.5, &curve, 1e-4).unwrap();
        assert!((h - 1.0).abs() < 1e-6, "{h}");

        let plane = ProfileCurve::from_values(0.0, 0.0, 1.0, 0.0).unwrap();
        assert_eq!(mean_curvature_rotational(0.8, &plane, 1e-4).unwrap(), 0.0);

        let maximal = ProfileCurve::from_values(0.0, 3.0, 1.0, 0.0).unwrap();
        assert!(mean_curvature_rotational(2.0, &maximal, 1e-4).unwrap().abs() < 1e-6);

        let flipped = ProfileCurve::from_values(-2.0, 0.5, 1.0, 0.0).unwrap();
        assert!((mean_curvature_rotational(1.2, &flipped, 1e-4).unwrap() + 2.0).abs() < 1e-6);
    }

    #[test]
    fn stencil_through_vertex_is_rejected() {
        let curve = ProfileCurve::from_values(1.0, 3.0, 1.0, 0.0).unwrap();
        assert!(matches!(mean_curvature_rotational(1e-5, &curve, 1e-4), Err(Error::SpacelikeViolation(_))));
    }

    #[test]
    fn error_is_second_order() {
        let curve = ProfileCurve::from_values(0.7, -0.4, 1.0, 0.0).unwrap();
        let e1 = (mean_curvature_rotational(0.9, &curve, 2e-2).unwrap() - 0.7).abs();
        let e2 = (mean_curvature_rotational(0.9, &curve, 1e-2).unwrap() - 0.7).abs();
        let ratio = e1 / e2;
        assert!((3.5..4.5).contains(&ratio), "{ratio}");
    }
}
