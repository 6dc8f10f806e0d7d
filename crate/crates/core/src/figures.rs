//! The four reference profiles, all anchored at `f(1) = 0`.
//!
//! | id | `(H, c)`        | window    |
//! |----|-----------------|-----------|
//! | 1  | `(0, −3)`       | `[0, 7]`  |
//! | 2  | `(1/10, −1/4)`  | `[0, 4]`  |
//! | 3  | `(1, 3)`        | `[1, 4]`  |
//! | 4  | `(1, 3)`        | `[0, 4]`  |
//!
//! Figure 1 is the increasing maximal catenoid, usually written `f(t; 0, 3)`
//! with the maximal constant `t f′/√(1 − f′²) = 3`; its first-integral constant
//! is therefore `c = −3`.

use crate::exec::Execution;
use crate::mesh::{profile_samples, sample_surface, ProfileSample, Spacing, SurfaceMesh};
use crate::params::{Anchor, SurfaceParams};
use crate::profile::ProfileCurve;
use crate::{Error, Result};

/// Profile samples per unit of `t`; sample `k` sits at exactly `k / 100`.
pub const SAMPLES_PER_UNIT: u32 = 100;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Figure {
    pub id: u8,
    pub caption: &'static str,
    pub params: SurfaceParams,
    pub anchor: Anchor,
    pub t_range: (f64, f64),
}

pub fn figure(id: u8) -> Result<Figure> {
    let anchor = Anchor { r: 1.0, a: 0.0 };
    let (caption, h, c, t_range) = match id {
        1 => ("maximal surface f(t;0,3), f(1)=0, 0<=t<=7", 0.0, -3.0, (0.0, 7.0)),
        2 => ("f(t;1/10,-1/4), f(1)=0, 0<=t<=4", 0.1, -0.25, (0.0, 4.0)),
        3 => ("f(t;1,3), f(1)=0, 1<=t<=4", 1.0, 3.0, (1.0, 4.0)),
        4 => ("f(t;1,3), f(1)=0, 0<=t<=4", 1.0, 3.0, (0.0, 4.0)),
        _ => return Err(Error::invalid("figure", format!("unknown figure {id}, expected 1..=4"))),
    };
    Ok(Figure { id, caption, params: SurfaceParams { h, c }, anchor, t_range })
}

impl Figure {
    pub fn curve(&self) -> Result<ProfileCurve> {
        ProfileCurve::new(self.params, self.anchor)
    }

    pub fn radii(&self) -> Vec<f64> {
        let scale = SAMPLES_PER_UNIT as f64;
        let k0 = (self.t_range.0 * scale).round() as u32;
        let k1 = (self.t_range.1 * scale).round() as u32;
        (k0..=k1).map(|k| k as f64 / scale).collect()
    }

    pub fn profile(&self, exec: Execution) -> Result<Vec<ProfileSample>> {
        profile_samples(&self.curve()?, &self.radii(), exec)
    }

    pub fn mesh(&self, n_t: usize, n_theta: usize, exec: Execution) -> Result<SurfaceMesh> {
        sample_surface(&self.curve()?, self.t_range, n_t, n_theta, Spacing::Uniform, exec)
    }
}
