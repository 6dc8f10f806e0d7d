//! Vector algebra of `L³` with metric `dx₁² + dx₂² − dx₃²`.

pub type Vec3 = [f64; 3];

pub const E3: Vec3 = [0.0, 0.0, 1.0];

/// Lorentzian inner product.
pub fn inner(u: Vec3, v: Vec3) -> f64 {
    u[0] * v[0] + u[1] * v[1] - u[2] * v[2]
}

/// Lorentzian cross product, fixed by `⟨u ∧ v, w⟩ = det(u, v, w)`.
pub fn cross(u: Vec3, v: Vec3) -> Vec3 {
    [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[1] * v[0] - u[0] * v[1]]
}

pub fn det(u: Vec3, v: Vec3, w: Vec3) -> f64 {
    u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) + u[2] * (v[0] * w[1] - v[1] * w[0])
}

pub fn scale(s: f64, u: Vec3) -> Vec3 {
    [s * u[0], s * u[1], s * u[2]]
}
