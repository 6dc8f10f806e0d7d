//! Domain types: profile parameters, ring boundary data and regimes.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Mean curvature `h` and first-integral constant `c` of one profile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceParams {
    pub h: f64,
    pub c: f64,
}

impl SurfaceParams {
    pub fn new(h: f64, c: f64) -> Result<Self> {
        if !h.is_finite() {
            return Err(Error::invalid("H", format!("must be finite, got {h}")));
        }
        if !c.is_finite() {
            return Err(Error::invalid("c", format!("must be finite, got {c}")));
        }
        Ok(SurfaceParams { h, c })
    }

    /// Regime of these parameters, read after canonicalization.
    pub fn regime(self) -> Regime {
        let (p, _) = canonicalize(self);
        Regime::from_canonical(p)
    }
}

/// Records whether `f(t; −H, −c) = −f(t; H, c)` was used to reach `H ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    pub fn sign(self) -> f64 {
        match self {
            Parity::Plus => 1.0,
            Parity::Minus => -1.0,
        }
    }
}

/// Flips `(H, c)` to `(−H, −c)` when `H < 0`. `H = 0` is left alone, since both
/// signs of `c` are distinct maximal branches.
pub fn canonicalize(params: SurfaceParams) -> (SurfaceParams, Parity) {
    if params.h < 0.0 {
        (SurfaceParams { h: -params.h, c: -params.c }, Parity::Minus)
    } else {
        (params, Parity::Plus)
    }
}

/// A point `f(r) = a` of the profile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Anchor {
    pub r: f64,
    pub a: f64,
}

impl Anchor {
    pub fn new(r: f64, a: f64) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::NonPositiveRadius(r));
        }
        if !a.is_finite() {
            return Err(Error::invalid("a", format!("must be finite, got {a}")));
        }
        Ok(Anchor { r, a })
    }
}

/// Boundary circles `Γ(r, a)` and `Γ(R, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RingPair {
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub a: f64,
    pub b: f64,
}

impl RingPair {
    pub fn new(r: f64, big_r: f64, a: f64, b: f64) -> Self {
        RingPair { r, big_r, a, b }
    }

    /// Mean slope `|a − b| / (R − r)` a spanning profile must realize.
    pub fn slope_bound(&self) -> f64 {
        (self.a - self.b).abs() / (self.big_r - self.r)
    }

    /// Mirror image under `x₃ → −x₃`.
    pub fn reflected(&self) -> RingPair {
        RingPair { a: -self.a, b: -self.b, ..*self }
    }
}

/// Ring data known to admit a spacelike rotational annulus.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ValidatedRingPair {
    rings: RingPair,
    slope_bound: f64,
}

impl ValidatedRingPair {
    pub fn rings(&self) -> RingPair {
        self.rings
    }
    pub fn r(&self) -> f64 {
        self.rings.r
    }
    pub fn big_r(&self) -> f64 {
        self.rings.big_r
    }
    pub fn a(&self) -> f64 {
        self.rings.a
    }
    pub fn b(&self) -> f64 {
        self.rings.b
    }
    pub fn slope_bound(&self) -> f64 {
        self.slope_bound
    }
    pub fn inner_anchor(&self) -> Anchor {
        Anchor { r: self.rings.r, a: self.rings.a }
    }
    pub fn reflected(&self) -> ValidatedRingPair {
        ValidatedRingPair { rings: self.rings.reflected(), slope_bound: self.slope_bound }
    }
}

/// Checks `0 < r < R` and the strict solvability condition `|a − b| < R − r`.
/// Comparisons are exact.
pub fn validate_rings(rings: RingPair) -> Result<ValidatedRingPair> {
    let RingPair { r, big_r, a, b } = rings;
    if !(r.is_finite() && big_r.is_finite()) || r <= 0.0 || r >= big_r {
        return Err(Error::DegenerateRadii { r, big_r });
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::invalid("a, b", "ring heights must be finite"));
    }
    let slope_bound = rings.slope_bound();
    if !(slope_bound < 1.0) {
        return Err(Error::NotSpacelikeSolvable { slope_bound });
    }
    Ok(ValidatedRingPair { rings, slope_bound })
}

impl From<ValidatedRingPair> for RingPair {
    fn from(v: ValidatedRingPair) -> Self {
        v.rings
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// `H = 0, c = 0`.
    Plane,
    /// `H = 0, c ≠ 0`.
    MaximalCatenoid,
    /// `H ≠ 0, c = 0`.
    HyperbolicCap,
    NegativeC,
    PositiveC,
}

impl Regime {
    /// Classification by exact zero tests; `params` must have `H ≥ 0`.
    pub fn from_canonical(params: SurfaceParams) -> Regime {
        let SurfaceParams { h, c } = params;
        debug_assert!(h >= 0.0);
        match (h == 0.0, c == 0.0) {
            (true, true) => Regime::Plane,
            (true, false) => Regime::MaximalCatenoid,
            (false, true) => Regime::HyperbolicCap,
            (false, false) if c < 0.0 => Regime::NegativeC,
            (false, false) => Regime::PositiveC,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Regime::Plane => "Plane",
            Regime::MaximalCatenoid => "MaximalCatenoid",
            Regime::HyperbolicCap => "HyperbolicCap",
            Regime::NegativeC => "NegativeC",
            Regime::PositiveC => "PositiveC",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
