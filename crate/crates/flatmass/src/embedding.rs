//! The graphical isometric embedding z = F(r) into ℍ^m × ℝ.
//!
//! F is recovered from the Hawking-mass profile by integrating
//! F′(r) = √(2 m_H/(envelope − 2 m_H)) from r_min. At a minimal boundary the
//! slope blows up like (r − r_min)^{−1/2}, so the height and the geodesic
//! arclength are accumulated on a √(r − r_min) grid near the inner edge and
//! on a uniform grid beyond, then interpolated monotonically.

use crate::geometry::{
    area_radius, envelope, envelope_derivative, invert_envelope, mass_of, Dimension, MetricProfile,
};
use crate::interp::MonotoneCubic;
use crate::numerics::{find_root_increasing, Tolerance};
use crate::{Error, Result};

/// Cells in the √-substituted leg and in the uniform leg of the cumulative
/// integration grid.
const GRID_CELLS: usize = 16_000;

/// The embedding z = F(r) with precomputed height and arclength tables.
#[derive(Debug, Clone)]
pub struct GraphEmbedding {
    profile: MetricProfile,
    z_min: f64,
    height: MonotoneCubic,
    arclen: MonotoneCubic,
}

/// Radii of a tubular neighborhood T_D(Σ_{α₀}) seen in the area-radius
/// coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TubularWindow {
    /// Area of the center sphere.
    pub alpha0: f64,
    /// Area radius of the center sphere.
    pub r0: f64,
    /// Tube radius in geodesic units.
    pub d: f64,
    /// inf of r over the tube; equals r_min when the tube swallows the
    /// well or horizon.
    pub r_d_minus: f64,
    /// sup of r over the tube.
    pub r_d_plus: f64,
}

/// Two-sided envelope bounds on the embedding slope.
#[derive(Debug, Clone, Copy)]
pub struct SlopeBounds {
    dim: Dimension,
    /// m₁ = m_H(r₁).
    pub m1: f64,
    /// Total (truncated) mass.
    pub mass: f64,
    /// Anchor radius r₁.
    pub r1: f64,
    /// Root of envelope(r) = 2·mass; the upper bound is valid for
    /// r ≥ max(r₁, r_infinity).
    pub r_infinity: f64,
}

impl SlopeBounds {
    /// √(2m₁/(envelope − 2m₁)); lower-bounds F′(r) for r > r₁.
    pub fn lower(&self, r: f64) -> f64 {
        let denom = envelope(r, self.dim) - 2.0 * self.m1;
        if denom <= 0.0 {
            return f64::INFINITY;
        }
        (2.0 * self.m1 / denom).sqrt()
    }

    /// √(2·mass/(envelope − 2·mass)); upper-bounds F′(r) for
    /// r ≥ max(r₁, r_infinity).
    pub fn upper(&self, r: f64) -> f64 {
        let denom = envelope(r, self.dim) - 2.0 * self.mass;
        if denom <= 0.0 {
            return f64::INFINITY;
        }
        (2.0 * self.mass / denom).sqrt()
    }
}

struct Accumulated {
    rs: Vec<f64>,
    heights: Vec<f64>,
    lengths: Vec<f64>,
}

// Simpson accumulation of F' and sqrt(1+F'^2) over one leg, in the leg's own
// coordinate; `map` sends the leg coordinate to r, `jac` is dr/du.
fn accumulate(
    profile: &MetricProfile,
    out: &mut Accumulated,
    a: f64,
    b: f64,
    cells: usize,
    map: impl Fn(f64) -> f64,
    jac: impl Fn(f64) -> f64,
    boundary_value: Option<f64>,
) -> Result<()> {
    let eval = |u: f64| -> Result<(f64, f64)> {
        let r = map(u);
        let j = jac(u);
        if j == 0.0 {
            if let Some(limit) = boundary_value {
                // horizon: F'·dr/du and sqrt(1+F'^2)·dr/du share the limit
                return Ok((limit, limit));
            }
            return Ok((0.0, 0.0));
        }
        let zp = profile.zprime(r).map_err(|e| match e {
            Error::Horizon { r, .. } if r > profile.r_min() => Error::HorizonInInterior { r },
            other => other,
        })?;
        Ok((zp * j, (1.0 + zp * zp).sqrt() * j))
    };

    let h = (b - a) / cells as f64;
    let mut height = *out.heights.last().unwrap();
    let mut length = *out.lengths.last().unwrap();
    let (mut f0, mut g0) = eval(a)?;
    for i in 0..cells {
        let u0 = a + i as f64 * h;
        let u1 = if i + 1 == cells {
            b
        } else {
            a + (i + 1) as f64 * h
        };
        let um = 0.5 * (u0 + u1);
        let (fm, gm) = eval(um)?;
        let (f1, g1) = eval(u1)?;
        let w = (u1 - u0) / 6.0;
        height += w * (f0 + 4.0 * fm + f1);
        length += w * (g0 + 4.0 * gm + g1);
        out.rs.push(map(u1));
        out.heights.push(height);
        out.lengths.push(length);
        (f0, g0) = (f1, g1);
    }
    Ok(())
}

/// Build the embedding of a profile with height gauge F(r_min) = z_min.
///
/// Uses √(r − r_min)-substituted quadrature near r_min, so profiles with a
/// minimal boundary (where F′ ~ (r − r_min)^{−1/2}) integrate to a finite
/// height.
pub fn build_embedding(profile: &MetricProfile, z_min: f64) -> Result<GraphEmbedding> {
    let r_min = profile.r_min();
    let r_max = profile.r_max();
    if r_max <= r_min {
        return Err(Error::Domain("build_embedding: degenerate domain".into()));
    }
    let mut acc = Accumulated {
        rs: vec![r_min],
        heights: vec![0.0],
        lengths: vec![0.0],
    };

    let boundary_value = if profile.has_minimal_boundary() {
        let mh = profile.hawking_mass(r_min);
        let denom = envelope_derivative(r_min, profile.dim())
            - 2.0 * profile.hawking_mass_derivative(r_min);
        if denom <= 0.0 {
            return Err(Error::NonIntegrableSingularity { at: r_min });
        }
        Some(2.0 * (2.0 * mh / denom).sqrt())
    } else {
        None
    };

    // Leg 1: u = sqrt(r - r_min) on [0, u_max].
    let u_max = (r_max - r_min).min(1.0).sqrt();
    accumulate(
        profile,
        &mut acc,
        0.0,
        u_max,
        GRID_CELLS,
        |u| r_min + u * u,
        |u| 2.0 * u,
        boundary_value,
    )?;
    // Leg 2: uniform in r beyond.
    let r_mid = r_min + u_max * u_max;
    if r_mid < r_max {
        accumulate(
            profile,
            &mut acc,
            r_mid,
            r_max,
            GRID_CELLS,
            |r| r,
            |_| 1.0,
            None,
        )?;
    }

    // Strictly increasing abscissae are required by the interpolant; drop
    // duplicated nodes from rounding at the fine inner end.
    let mut rs = Vec::with_capacity(acc.rs.len());
    let mut hs = Vec::with_capacity(acc.rs.len());
    let mut ls = Vec::with_capacity(acc.rs.len());
    for i in 0..acc.rs.len() {
        if rs.last().is_none_or(|last| acc.rs[i] > *last) {
            rs.push(acc.rs[i]);
            hs.push(acc.heights[i]);
            ls.push(acc.lengths[i]);
        }
    }
    Ok(GraphEmbedding {
        profile: profile.clone(),
        z_min,
        height: MonotoneCubic::new(rs.clone(), hs)?,
        arclen: MonotoneCubic::new(rs, ls)?,
    })
}

impl GraphEmbedding {
    pub fn profile(&self) -> &MetricProfile {
        &self.profile
    }

    pub fn z_min(&self) -> f64 {
        self.z_min
    }

    /// Height F(r) in the chosen gauge.
    pub fn height(&self, r: f64) -> f64 {
        self.z_min + self.height.eval(r)
    }

    /// Slope F′(r), evaluated from the profile (not the interpolant).
    pub fn slope(&self, r: f64) -> Result<f64> {
        self.profile.zprime(r)
    }

    /// Geodesic distance from the inner edge, s(r) = ∫√(1+F′²).
    pub fn geodesic_from_inner(&self, r: f64) -> f64 {
        self.arclen.eval(r)
    }

    /// ∫_{ra}^{rb} √(1 + F′²) dr ≥ rb − ra.
    pub fn arclength(&self, ra: f64, rb: f64) -> Result<f64> {
        let (r_min, r_max) = (self.profile.r_min(), self.profile.r_max());
        if !(ra >= r_min - 1e-12 && rb <= r_max + 1e-12 && ra <= rb) {
            return Err(Error::Domain(format!(
                "arclength: [{ra}, {rb}] outside [{r_min}, {r_max}]"
            )));
        }
        Ok(self.arclen.eval(rb) - self.arclen.eval(ra))
    }

    /// Largest slope of the graph over [ra, rb], scanned on the integration
    /// grid (exact at the endpoints).
    pub fn sup_slope(&self, ra: f64, rb: f64) -> Result<f64> {
        let mut sup: f64 = 0.0;
        for &r in [ra, rb].iter() {
            sup = sup.max(self.profile.zprime(r)?);
        }
        const SCAN: usize = 4096;
        for i in 1..SCAN {
            let r = ra + (rb - ra) * i as f64 / SCAN as f64;
            sup = sup.max(self.profile.zprime(r)?);
        }
        Ok(sup)
    }

    /// Window radii of the tube of geodesic radius D about the sphere of
    /// area `alpha0`.
    ///
    /// r_{D+} solves arclength(r₀, ·) = D; r_{D−} solves arclength(·, r₀) = D
    /// when achievable and is r_min otherwise (the tube swallows the well or
    /// horizon).
    pub fn tubular_window(&self, alpha0: f64, d: f64) -> Result<TubularWindow> {
        let dim = self.profile.dim();
        if !(d > 0.0) {
            return Err(Error::Domain(format!(
                "tubular_window: D = {d} must be positive"
            )));
        }
        let r0 = area_radius(alpha0, dim)?;
        let (r_min, r_max) = (self.profile.r_min(), self.profile.r_max());
        if r0 < r_min || r0 > r_max {
            return Err(Error::Domain(format!(
                "tubular_window: r0 = {r0} outside [{r_min}, {r_max}]"
            )));
        }
        let s0 = self.arclen.eval(r0);
        if self.arclen.eval(r_max) - s0 <= d {
            return Err(Error::Truncation(format!(
                "r_max = {r_max} too small: arclength(r0, r_max) <= D = {d}"
            )));
        }
        let tol = Tolerance {
            abs_tol: 1e-13,
            rel_tol: 0.0,
            max_depth: 40,
        };
        let r_d_plus = find_root_increasing(|r| self.arclen.eval(r) - s0 - d, r0, r_max, tol)?;
        let r_d_minus = if s0 - self.arclen.eval(r_min) <= d {
            r_min
        } else {
            find_root_increasing(|r| d - s0 + self.arclen.eval(r), r_min, r0, tol)?
        };
        Ok(TubularWindow {
            alpha0,
            r0,
            d,
            r_d_minus,
            r_d_plus,
        })
    }

    /// The monotonicity envelopes controlling the slope: the lower
    /// bound from m_H(r₁) for r > r₁ and the upper bound from the total mass
    /// for r ≥ max(r₁, r_infinity).
    pub fn slope_bounds(&self, r1: f64) -> Result<SlopeBounds> {
        if r1 < self.profile.r_min() {
            return Err(Error::Domain(format!(
                "slope_bounds: r1 = {r1} below r_min"
            )));
        }
        let mass = mass_of(&self.profile).mass;
        Ok(SlopeBounds {
            dim: self.profile.dim(),
            m1: self.profile.hawking_mass(r1),
            mass,
            r1,
            r_infinity: invert_envelope(2.0 * mass, self.profile.dim())?,
        })
    }
}
