//! Adaptive Gauss–Kronrod (7/15) quadrature with global subdivision.
//!
//! The interval with the largest error estimate is bisected until the summed
//! estimate drops below `max(abs_tol, rel_tol·|I|)`. Error estimates follow the
//! QUADPACK rescaling, including its round-off floor of `50 ε ∫|f|`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd Kronrod nodes XGK[1], XGK[3], XGK[5] and the centre.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadSettings {
    pub abs_tol: f64,
    /// Relative floor; below roughly `1e-14` the round-off floor makes long
    /// integrals unreachable.
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadSettings {
    fn default() -> Self {
        QuadSettings { abs_tol: 1e-10, rel_tol: 1e-12, max_intervals: 10_000 }
    }
}

impl QuadSettings {
    pub fn with_abs_tol(abs_tol: f64) -> Self {
        QuadSettings { abs_tol, ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Clone, Copy, Debug)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One 15-point Kronrod panel: `(value, error estimate)`.
pub fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut res_g = f_center * WG[3];
    let mut res_k = f_center * WGK[7];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, err)
}

/// Integrates `f` over `[a, b]` (either order). `breaks` are optional interior
/// points used as the initial partition.
pub fn integrate<F>(f: F, a: f64, b: f64, breaks: &[f64], settings: &QuadSettings) -> Result<Integral>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(Integral { value: 0.0, error: 0.0, intervals: 0 });
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::invalid("integration limits", format!("[{a}, {b}] is not finite")));
    }
    if b < a {
        let r = integrate(f, b, a, breaks, settings)?;
        return Ok(Integral { value: -r.value, ..r });
    }

    let mut nodes = vec![a];
    nodes.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
    nodes.push(b);
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();

    let mut heap = BinaryHeap::with_capacity(64);
    let mut settled = Vec::new();
    for w in nodes.windows(2) {
        let (value, error) = gauss_kronrod_15(&f, w[0], w[1]);
        heap.push(Segment { a: w[0], b: w[1], value, error });
    }

    loop {
        let (value, error) =
            heap.iter().chain(settled.iter()).fold((0.0, 0.0), |(v, e), s: &Segment| (v + s.value, e + s.error));
        let target = settings.abs_tol.max(settings.rel_tol * value.abs());
        let count = heap.len() + settled.len();
        if error <= target || heap.is_empty() {
            if !value.is_finite() {
                return Err(Error::QuadratureFailure { a, b, error, intervals: count });
            }
            return Ok(Integral { value, error, intervals: count });
        }
        if count >= settings.max_intervals {
            return Err(Error::QuadratureFailure { a, b, error, intervals: count });
        }

        let worst = heap.pop().expect("heap is non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        // Panels at the resolution of the number line cannot be refined further.
        let tiny = 100.0 * f64::EPSILON * worst.a.abs().max(worst.b.abs());
        if worst.b - worst.a <= tiny || mid <= worst.a || mid >= worst.b {
            settled.push(worst);
            continue;
        }
        let (v1, e1) = gauss_kronrod_15(&f, worst.a, mid);
        let (v2, e2) = gauss_kronrod_15(&f, mid, worst.b);
        heap.push(Segment { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Segment { a: mid, b: worst.b, value: v2, error: e2 });
    }
}

/// Geometric breakpoints for `[a, b]` with `0 < a < b`, one per decade.
pub fn decade_breaks(a: f64, b: f64) -> Vec<f64> {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    if lo <= 0.0 || hi / lo < 10.0 {
        return Vec::new();
    }
    let n = (hi / lo).log10().floor() as i32;
    (1..=n).map(|k| lo * 10f64.powi(k)).filter(|&x| x < hi).collect()
}
