use std::f64::consts::PI;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::PointCloud;
use crate::error::{LleError, Result};

/// Parameter rectangle `[t_min, t_max] x [h_min, h_max]` of the roll
/// `(t cos t, h, t sin t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwissRollDomain {
    pub t_min: f64,
    pub t_max: f64,
    pub h_min: f64,
    pub h_max: f64,
}

impl Default for SwissRollDomain {
    fn default() -> Self {
        Self { t_min: 1.5 * PI, t_max: 4.5 * PI, h_min: 0.0, h_max: 21.0 }
    }
}

/// Axis-aligned rectangle removed from the `(t, h)` parameter domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hole {
    pub t: (f64, f64),
    pub h: (f64, f64),
}

impl Hole {
    /// Centered rectangle whose sides are a third of each parameter range.
    pub fn centered(domain: &SwissRollDomain) -> Self {
        let dt = (domain.t_max - domain.t_min) / 3.0;
        let dh = (domain.h_max - domain.h_min) / 3.0;
        Self {
            t: (domain.t_min + dt, domain.t_min + 2.0 * dt),
            h: (domain.h_min + dh, domain.h_min + 2.0 * dh),
        }
    }

    pub fn contains(&self, t: f64, h: f64) -> bool {
        t >= self.t.0 && t <= self.t.1 && h >= self.h.0 && h <= self.h.1
    }

    fn validate(&self, domain: &SwissRollDomain) -> Result<()> {
        let bounds = [self.t.0, self.t.1, self.h.0, self.h.1];
        if bounds.iter().any(|b| !b.is_finite()) {
            return Err(LleError::InvalidInput("hole bounds must be finite".into()));
        }
        if self.t.0 > self.t.1 || self.h.0 > self.h.1 {
            return Err(LleError::InvalidInput("hole bounds are reversed".into()));
        }
        if self.t.0 <= domain.t_min
            && self.t.1 >= domain.t_max
            && self.h.0 <= domain.h_min
            && self.h.1 >= domain.h_max
        {
            return Err(LleError::EmptySupport);
        }
        Ok(())
    }
}

/// Arc length of the spiral `t -> (t cos t, t sin t)` from `t0` to `t`.
pub fn arc_length(t0: f64, t: f64) -> f64 {
    let primitive = |x: f64| 0.5 * (x * (1.0 + x * x).sqrt() + x.asinh());
    primitive(t) - primitive(t0)
}

/// Samples `n` points of the Swiss roll on the default domain with an
/// optional hole, by rejection. `params` holds `(arc length, height)`.
pub fn gen_swiss_roll_hole(n: usize, seed: u64, hole: Option<Hole>) -> Result<PointCloud> {
    gen_swiss_roll_in(&SwissRollDomain::default(), n, seed, hole)
}

pub fn gen_swiss_roll_in(
    domain: &SwissRollDomain,
    n: usize,
    seed: u64,
    hole: Option<Hole>,
) -> Result<PointCloud> {
    if n == 0 {
        return Err(LleError::InvalidInput("n must be at least 1".into()));
    }
    if let Some(h) = &hole {
        h.validate(domain)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = DMatrix::zeros(3, n);
    let mut params = DMatrix::zeros(n, 2);
    let mut filled = 0;
    while filled < n {
        let t = rng.random_range(domain.t_min..domain.t_max);
        let h = rng.random_range(domain.h_min..domain.h_max);
        if hole.is_some_and(|hole| hole.contains(t, h)) {
            continue;
        }
        points[(0, filled)] = t * t.cos();
        points[(1, filled)] = h;
        points[(2, filled)] = t * t.sin();
        params[(filled, 0)] = arc_length(domain.t_min, t);
        params[(filled, 1)] = h;
        filled += 1;
    }
    PointCloud::new(points, Some(params), seed)
}
