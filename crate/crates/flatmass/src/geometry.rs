//! Dimension constants, chart formulas, Hawking-mass algebra, and the
//! canonical metric-profile representation.
//!
//! A spherically symmetric metric g = ds² + f(s)² g₀ is stored through the
//! area-radius coordinate r = arcsinh f as its Hawking-mass profile
//!
//! ```text
//! m_H(r) = (sinh^{m−2} r cosh² r / 2) · (z′)²/(1 + (z′)²)
//! ```
//!
//! where z = F(r) is the graphical isometric embedding into ℍ^m × ℝ. All
//! other charts (geodesic warp coordinates, height coordinates) are derived
//! views.

use crate::interp::MonotoneCubic;
use crate::numerics::{find_root_increasing, Tolerance};
use crate::{Error, Result};

/// Manifold dimension m ≥ 3 together with the volume ω_{m−1} of the unit
/// (m−1)-sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dimension {
    m: u32,
    omega: f64,
}

impl Dimension {
    pub fn new(m: u32) -> Result<Self> {
        Ok(Self {
            m,
            omega: unit_sphere_volume(m)?,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// ω_{m−1} = 2π^{m/2}/Γ(m/2).
    pub fn omega(&self) -> f64 {
        self.omega
    }
}

/// Volume of the unit (m−1)-sphere, 2π^{m/2}/Γ(m/2), for integer m ≥ 3.
pub fn unit_sphere_volume(m: u32) -> Result<f64> {
    if m < 3 {
        return Err(Error::DimensionTooSmall { m });
    }
    // Γ(m/2) by the recurrence Γ(x+1) = xΓ(x) from Γ(1) = 1 or Γ(1/2) = √π.
    let even = m.is_multiple_of(2);
    let mut gamma = if even {
        1.0
    } else {
        std::f64::consts::PI.sqrt()
    };
    let mut x = if even { 1.0 } else { 0.5 };
    while x + 0.5 < m as f64 / 2.0 {
        gamma *= x;
        x += 1.0;
    }
    Ok(2.0 * std::f64::consts::PI.powf(m as f64 / 2.0) / gamma)
}

/// The horizon envelope h(r) = sinh^{m−2} r cosh² r, strictly increasing in
/// r ≥ 0; 2·m_H(r) < h(r) characterizes spheres that are not horizons.
pub fn envelope(r: f64, dim: Dimension) -> f64 {
    let m = dim.m as i32;
    r.sinh().powi(m - 2) * r.cosh().powi(2)
}

/// d/dr of [`envelope`].
pub fn envelope_derivative(r: f64, dim: Dimension) -> f64 {
    let m = dim.m as i32;
    (m - 2) as f64 * r.sinh().powi(m - 3) * r.cosh().powi(3) + 2.0 * r.sinh().powi(m - 1) * r.cosh()
}

/// Unique r ≥ 0 with envelope(r) = c, to full relative precision (the
/// horizon radii of near-zero masses sit far below any absolute tolerance).
pub fn invert_envelope(c: f64, dim: Dimension) -> Result<f64> {
    if c < 0.0 {
        return Err(Error::Domain(format!("invert_envelope: c = {c} < 0")));
    }
    if c == 0.0 {
        return Ok(0.0);
    }
    if c >= envelope(1.0, dim) {
        let mut hi = 2.0;
        while envelope(hi, dim) < c {
            hi *= 2.0;
            if hi > 1e4 {
                return Err(Error::Domain(format!(
                    "invert_envelope: c = {c} out of range"
                )));
            }
        }
        let tol = Tolerance {
            abs_tol: 1e-14,
            rel_tol: 0.0,
            max_depth: 40,
        };
        return find_root_increasing(|r| envelope(r, dim) - c, 1.0, hi, tol);
    }
    // Small branch: envelope(r) ~ r^{m-2}, so bisect in log r to keep
    // relative precision at any scale.
    let mut r_lo = c.powf(1.0 / (dim.m as f64 - 2.0)).max(f64::MIN_POSITIVE) / 4.0;
    let mut guard = 0;
    while envelope(r_lo, dim) > c {
        r_lo /= 16.0;
        guard += 1;
        if guard > 300 {
            return Err(Error::Domain(format!(
                "invert_envelope: no lower bracket for c = {c}"
            )));
        }
    }
    let (mut lo, mut hi) = (r_lo.ln(), 0.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if envelope(mid.exp(), dim) < c {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi)).exp())
}

/// Area of the centered sphere of area-radius r: ω_{m−1} sinh^{m−1} r.
pub fn sphere_area(r: f64, dim: Dimension) -> f64 {
    dim.omega * r.sinh().powi(dim.m as i32 - 1)
}

/// Inverse of [`sphere_area`]: r = arcsinh((α/ω_{m−1})^{1/(m−1)}).
pub fn area_radius(alpha: f64, dim: Dimension) -> Result<f64> {
    if alpha < 0.0 {
        return Err(Error::Domain(format!("area_radius: alpha = {alpha} < 0")));
    }
    Ok((alpha / dim.omega).powf(1.0 / (dim.m as f64 - 1.0)).asinh())
}

/// Hawking mass of the graph slice at r with slope z′:
/// (envelope/2)·(z′)²/(1+(z′)²), valued in [0, envelope/2).
pub fn hawking_mass_graph(r: f64, zprime: f64, dim: Dimension) -> f64 {
    let zp2 = zprime * zprime;
    envelope(r, dim) / 2.0 * zp2 / (1.0 + zp2)
}

/// Slope of the graph embedding carrying Hawking mass `mh` at radius r:
/// √(2 m_H/(envelope − 2 m_H)).
pub fn zprime_from_hawking(r: f64, mh: f64, dim: Dimension) -> Result<f64> {
    if mh < 0.0 {
        return Err(Error::Domain(format!(
            "zprime_from_hawking: m_H = {mh} < 0"
        )));
    }
    if mh == 0.0 {
        return Ok(0.0);
    }
    let env = envelope(r, dim);
    let denom = env - 2.0 * mh;
    if denom <= 0.0 {
        return Err(Error::Horizon {
            r,
            two_mh: 2.0 * mh,
            envelope: env,
        });
    }
    Ok((2.0 * mh / denom).sqrt())
}

/// z″(r) for a profile with analytic m_H and m_H′, from
/// (z′)² = 2 m_H/(envelope − 2 m_H). Requires m_H > 0 (z′ > 0).
pub fn zsecond_from_hawking(r: f64, mh: f64, mh_prime: f64, dim: Dimension) -> Result<f64> {
    let zp = zprime_from_hawking(r, mh, dim)?;
    if zp == 0.0 {
        return Err(Error::Domain(
            "zsecond_from_hawking: z' = 0 (m_H = 0)".into(),
        ));
    }
    let env = envelope(r, dim);
    let denv = envelope_derivative(r, dim);
    let denom = env - 2.0 * mh;
    let uprime = (2.0 * mh_prime * env - 2.0 * mh * denv) / (denom * denom);
    Ok(uprime / (2.0 * zp))
}

/// Scalar curvature of the graph metric (1+(z′)²)dr² + sinh²r g₀ at radius
/// r > 0.
pub fn scalar_curvature_graph(r: f64, zprime: f64, zsecond: f64, dim: Dimension) -> f64 {
    let m = dim.m as f64;
    let zp2 = zprime * zprime;
    let s2 = r.sinh().powi(2);
    (m - 1.0) / (1.0 + zp2)
        * (-m + (m - 2.0) * zp2 / s2 + zprime * zsecond * (2.0 * r).sinh() / ((1.0 + zp2) * s2))
}

/// Scalar curvature recovered from the Hawking-mass derivative:
/// R = 2(m−1) m_H′(r)/(sinh^{m−1} r cosh r) − m(m−1).
pub fn scalar_from_mass_slope(r: f64, mh_prime: f64, dim: Dimension) -> f64 {
    let m = dim.m as f64;
    2.0 * (m - 1.0) * mh_prime / (r.sinh().powi(dim.m as i32 - 1) * r.cosh()) - m * (m - 1.0)
}

/// One sample of the geodesic (warp) chart g = ds² + f(s)² g₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WarpSample {
    /// Geodesic distance from the pole or boundary.
    pub s: f64,
    /// Warp factor f(s) > 0.
    pub f: f64,
    /// f′(s).
    pub f1: f64,
    /// f″(s).
    pub f2: f64,
}

/// Pointwise quantities of the warp chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WarpQuantities {
    pub area: f64,
    pub mean_curv: f64,
    pub scal: f64,
    pub mh: f64,
}

/// Area, mean curvature, scalar curvature and Hawking mass of the level set
/// through a warp sample:
///
/// ```text
/// A = ω f^{m−1},   H = (m−1) f′/f,
/// R = (m−1)((m−2)(1 − (f′)²) − 2 f f″)/f²,
/// m_H = (f^{m−2}/2)(1 − (f′)² + f²).
/// ```
pub fn warp_geometry(sample: WarpSample, dim: Dimension) -> WarpQuantities {
    let m = dim.m as f64;
    let WarpSample { f, f1, f2, .. } = sample;
    WarpQuantities {
        area: dim.omega * f.powi(dim.m as i32 - 1),
        mean_curv: (m - 1.0) * f1 / f,
        scal: (m - 1.0) * ((m - 2.0) * (1.0 - f1 * f1) - 2.0 * f * f2) / (f * f),
        mh: f.powi(dim.m as i32 - 2) / 2.0 * (1.0 - f1 * f1 + f * f),
    }
}

/// Pointwise quantities of the height chart g = (1+(r′)²)dz² + sinh²r(z) g₀,
/// valid wherever z′(r) > 0 (m_H > 0). `rprime` and `rsecond` are dr/dz and
/// d²r/dz².
pub fn height_chart(r: f64, rprime: f64, rsecond: f64, dim: Dimension) -> WarpQuantities {
    let m = dim.m as f64;
    let rp2 = rprime * rprime;
    let s2 = r.sinh().powi(2);
    WarpQuantities {
        area: sphere_area(r, dim),
        mean_curv: (m - 1.0) * rprime * (r.cosh() / r.sinh()) / (1.0 + rp2).sqrt(),
        scal: -m * (m - 1.0)
            + (m - 1.0) / ((1.0 + rp2) * s2)
                * (m * r.cosh().powi(2) - 2.0 - rsecond * (2.0 * r).sinh() / (1.0 + rp2)),
        mh: envelope(r, dim) / (2.0 * (1.0 + rp2)),
    }
}

/// Smooth Hawking-mass laws with analytic derivatives.
#[derive(Debug, Clone, PartialEq)]
pub enum HawkingLaw {
    /// A gravity well: m_H follows q/2·envelope(r) (slope √(q/(1−q)) in the
    /// graph chart) and is blended C¹ onto the constant plateau `mass` over
    /// [ramp_start, ramp_end].
    EnvelopeWell {
        mass: f64,
        q_peak: f64,
        ramp_start: f64,
        ramp_end: f64,
        ramp_value: f64,
        ramp_slope: f64,
    },
}

impl HawkingLaw {
    fn mass_at(&self, r: f64, dim: Dimension) -> f64 {
        match *self {
            HawkingLaw::EnvelopeWell {
                mass,
                q_peak,
                ramp_start,
                ramp_end,
                ramp_value,
                ramp_slope,
            } => {
                if r <= ramp_start {
                    q_peak * envelope(r, dim) / 2.0
                } else if r >= ramp_end {
                    mass
                } else {
                    let h = ramp_end - ramp_start;
                    let t = (r - ramp_start) / h;
                    let (t2, t3) = (t * t, t * t * t);
                    let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
                    let h10 = t3 - 2.0 * t2 + t;
                    let h01 = -2.0 * t3 + 3.0 * t2;
                    h00 * ramp_value + h10 * h * ramp_slope + h01 * mass
                }
            }
        }
    }

    fn mass_slope_at(&self, r: f64, dim: Dimension) -> f64 {
        match *self {
            HawkingLaw::EnvelopeWell {
                q_peak,
                ramp_start,
                ramp_end,
                ramp_value,
                ramp_slope,
                mass,
            } => {
                if r <= ramp_start {
                    q_peak * envelope_derivative(r, dim) / 2.0
                } else if r >= ramp_end {
                    0.0
                } else {
                    let h = ramp_end - ramp_start;
                    let t = (r - ramp_start) / h;
                    let t2 = t * t;
                    (6.0 * t2 - 6.0 * t) / h * ramp_value
                        + (3.0 * t2 - 4.0 * t + 1.0) * ramp_slope
                        + (-6.0 * t2 + 6.0 * t) / h * mass
                }
            }
        }
    }
}

/// Sampled Hawking-mass data with shape-preserving interpolation.
#[derive(Debug, Clone)]
pub struct SampledProfile {
    rs: Vec<f64>,
    mh: Vec<f64>,
    interp: Option<MonotoneCubic>,
}

impl SampledProfile {
    pub fn new(rs: Vec<f64>, mh: Vec<f64>) -> Result<Self> {
        if rs.is_empty() || rs.len() != mh.len() {
            return Err(Error::Domain(
                "sampled profile needs matching nonempty grids".into(),
            ));
        }
        let interp = if rs.len() >= 2 {
            Some(MonotoneCubic::new(rs.clone(), mh.clone())?)
        } else {
            None
        };
        Ok(Self { rs, mh, interp })
    }

    pub fn knots(&self) -> &[f64] {
        &self.rs
    }

    pub fn values(&self) -> &[f64] {
        &self.mh
    }

    fn mass_at(&self, r: f64) -> f64 {
        match &self.interp {
            Some(c) => c.eval(r),
            None => self.mh[0],
        }
    }
}

/// How the Hawking-mass profile is represented.
#[derive(Debug, Clone)]
pub enum ProfileKind {
    /// m_H ≡ 0 (hyperbolic space).
    Hyperbolic,
    /// m_H ≡ mass, r_min at the horizon (minimal boundary).
    AdsSchwarzschild { mass: f64 },
    /// Analytic law, boundaryless.
    HawkingAnalytic(HawkingLaw),
    /// Interpolated samples.
    Sampled(SampledProfile),
}

/// A member of the spherically symmetric class, canonically stored as a
/// nondecreasing Hawking-mass profile on [r_min, r_max].
#[derive(Debug, Clone)]
pub struct MetricProfile {
    dim: Dimension,
    r_min: f64,
    r_max: f64,
    kind: ProfileKind,
}

/// Default truncation radius for numerics; the mass converges like
/// O(e^{−m·s}) so the profile tail is flat to well below any tolerance used
/// here.
pub const DEFAULT_R_MAX: f64 = 10.0;

/// Threshold on m_H(r_max) − m_H(0.9 r_max) below which the truncated mass
/// is reported as converged.
pub const TRUNCATION_THRESHOLD: f64 = 1e-9;

impl MetricProfile {
    pub fn new(dim: Dimension, r_min: f64, r_max: f64, kind: ProfileKind) -> Result<Self> {
        if !(r_min >= 0.0) || !(r_max >= r_min) {
            return Err(Error::Domain(format!(
                "invalid profile domain [{r_min}, {r_max}]"
            )));
        }
        Ok(Self {
            dim,
            r_min,
            r_max,
            kind,
        })
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn kind(&self) -> &ProfileKind {
        &self.kind
    }

    /// m_H(r), clamped evaluation of the stored profile.
    pub fn hawking_mass(&self, r: f64) -> f64 {
        match &self.kind {
            ProfileKind::Hyperbolic => 0.0,
            ProfileKind::AdsSchwarzschild { mass } => *mass,
            ProfileKind::HawkingAnalytic(law) => law.mass_at(r, self.dim),
            ProfileKind::Sampled(s) => s.mass_at(r),
        }
    }

    /// m_H′(r): analytic for analytic kinds, centered differences with
    /// h = 1e−5·max(1, r) on the interpolant for sampled kinds.
    pub fn hawking_mass_derivative(&self, r: f64) -> f64 {
        match &self.kind {
            ProfileKind::Hyperbolic | ProfileKind::AdsSchwarzschild { .. } => 0.0,
            ProfileKind::HawkingAnalytic(law) => law.mass_slope_at(r, self.dim),
            ProfileKind::Sampled(_) => {
                let h = 1e-5 * r.abs().max(1.0);
                let lo = (r - h).max(self.r_min);
                let hi = (r + h).min(self.r_max);
                if hi <= lo {
                    return 0.0;
                }
                (self.hawking_mass(hi) - self.hawking_mass(lo)) / (hi - lo)
            }
        }
    }

    /// Slope F′(r) of the graph embedding.
    pub fn zprime(&self, r: f64) -> Result<f64> {
        zprime_from_hawking(r, self.hawking_mass(r), self.dim)
    }

    /// Whether r_min sits at a horizon (2 m_H(r_min) = envelope(r_min)), i.e.
    /// the profile has a minimal boundary.
    pub fn has_minimal_boundary(&self) -> bool {
        if self.r_min <= 0.0 {
            return false;
        }
        let env = envelope(self.r_min, self.dim);
        (2.0 * self.hawking_mass(self.r_min) - env).abs() <= 1e-10 * env.max(1e-300)
    }

    /// Grid on which class membership is checked: sample knots (plus
    /// midpoints) for sampled kinds, a uniform grid refined around analytic
    /// features otherwise.
    pub fn validation_grid(&self) -> Vec<f64> {
        let mut grid = Vec::new();
        match &self.kind {
            ProfileKind::Sampled(s) => {
                for w in s.rs.windows(2) {
                    grid.push(w[0]);
                    grid.push(0.5 * (w[0] + w[1]));
                }
                grid.push(*s.rs.last().unwrap());
            }
            kind => {
                const N: usize = 1600;
                for i in 0..=N {
                    grid.push(self.r_min + (self.r_max - self.r_min) * i as f64 / N as f64);
                }
                if let ProfileKind::HawkingAnalytic(HawkingLaw::EnvelopeWell {
                    ramp_start,
                    ramp_end,
                    ..
                }) = kind
                {
                    // resolve the ramp and the rising segment below it
                    for i in 0..=64 {
                        grid.push(ramp_start + (ramp_end - ramp_start) * i as f64 / 64.0);
                    }
                    let mut r = *ramp_start;
                    while r > self.r_min.max(ramp_start * 1e-3) {
                        grid.push(r);
                        r *= 0.7;
                    }
                }
            }
        }
        grid.retain(|r| r.is_finite() && *r >= self.r_min && *r <= self.r_max);
        grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
        grid.dedup();
        grid
    }
}

/// Truncated mass of a profile: the Hawking mass at the numerical cutoff
/// together with its tail defect.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassEstimate {
    /// m_H(r_max); a lower bound for the true mass by monotonicity.
    pub mass: f64,
    /// m_H(r_max) − m_H(0.9 r_max).
    pub truncation_defect: f64,
    /// Whether the defect is below [`TRUNCATION_THRESHOLD`].
    pub converged: bool,
}

/// Mass of the profile as the limit (truncated at r_max) of Hawking masses.
pub fn mass_of(profile: &MetricProfile) -> MassEstimate {
    let mass = profile.hawking_mass(profile.r_max);
    let probe = (0.9 * profile.r_max).max(profile.r_min);
    let truncation_defect = mass - profile.hawking_mass(probe);
    MassEstimate {
        mass,
        truncation_defect,
        converged: truncation_defect.abs() <= TRUNCATION_THRESHOLD,
    }
}

/// sup{r : m_H(r) = 0}, the radius below which the height chart degenerates.
/// Returns r_min when m_H > 0 from the start and +∞ when m_H ≡ 0 (the
/// hyperbolic case).
pub fn r_disk(profile: &MetricProfile) -> f64 {
    if profile.hawking_mass(profile.r_max) <= 0.0 {
        return f64::INFINITY;
    }
    if profile.hawking_mass(profile.r_min) > 0.0 {
        return profile.r_min;
    }
    let (mut lo, mut hi) = (profile.r_min, profile.r_max);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if profile.hawking_mass(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Convert geodesic-chart samples (s, f, f′, f″) into a sampled
/// Hawking-mass profile via r = arcsinh f.
///
/// Interior samples must have f′ > 0 (no closed interior minimal
/// hypersurfaces); the first sample may have f′ = 0 (minimal boundary).
pub fn convert_warp_to_profile(samples: &[WarpSample], dim: Dimension) -> Result<MetricProfile> {
    if samples.is_empty() {
        return Err(Error::Domain("convert_warp_to_profile: no samples".into()));
    }
    let mut rs = Vec::with_capacity(samples.len());
    let mut mh = Vec::with_capacity(samples.len());
    for (i, smp) in samples.iter().enumerate() {
        if !(smp.f > 0.0) && !(i == 0 && smp.f == 0.0) {
            return Err(Error::Domain(format!(
                "warp sample {i}: f = {} must be positive",
                smp.f
            )));
        }
        if i > 0 {
            if smp.s <= samples[i - 1].s {
                return Err(Error::Domain(format!(
                    "warp samples not strictly increasing in s at {i}"
                )));
            }
            if smp.f1 <= 0.0 {
                return Err(Error::MinimalSurfaceViolation {
                    s: smp.s,
                    fprime: smp.f1,
                });
            }
        }
        rs.push(smp.f.asinh());
        mh.push(warp_geometry(*smp, dim).mh);
    }
    if samples[0].f == 0.0 {
        mh[0] = 0.0; // pole: m_H(0) = 0
    }
    for w in rs.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::Domain(
                "warp samples not strictly increasing in f".into(),
            ));
        }
    }
    let r_min = rs[0];
    let r_max = *rs.last().unwrap();
    MetricProfile::new(
        dim,
        r_min,
        r_max,
        ProfileKind::Sampled(SampledProfile::new(rs, mh)?),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    fn dim(m: u32) -> Dimension {
        Dimension::new(m).unwrap()
    }

    #[test]
    fn sphere_volumes() {
        assert!((unit_sphere_volume(3).unwrap() - 4.0 * PI).abs() < 1e-12);
        assert!((unit_sphere_volume(4).unwrap() - 2.0 * PI * PI).abs() < 1e-12);
        assert!((unit_sphere_volume(5).unwrap() - 8.0 * PI * PI / 3.0).abs() < 1e-12);
        assert!(matches!(
            unit_sphere_volume(2),
            Err(Error::DimensionTooSmall { m: 2 })
        ));
    }

    #[test]
    fn envelope_examples() {
        let r = 1.0_f64.asinh();
        assert_eq!(envelope(0.0, dim(3)), 0.0);
        assert!((envelope(r, dim(3)) - 2.0).abs() < 1e-12);
        assert!((envelope(r, dim(4)) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn envelope_strictly_increasing() {
        for m in [3, 4, 5] {
            let d = dim(m);
            let mut prev = envelope(0.0, d);
            for i in 1..200 {
                let v = envelope(i as f64 * 0.05, d);
                assert!(v > prev);
                prev = v;
            }
        }
    }

    #[test]
    fn invert_envelope_examples_and_roundtrip() {
        let d = dim(3);
        assert_eq!(invert_envelope(0.0, d).unwrap(), 0.0);
        assert!((invert_envelope(2.0, d).unwrap() - 1.0_f64.asinh()).abs() < 1e-9);
        let r = invert_envelope(0.2, d).unwrap();
        assert!((envelope(r, d) - 0.2).abs() < 1e-9);
        for i in 1..=20 {
            let r = i as f64 * 0.5;
            let back = invert_envelope(envelope(r, d), d).unwrap();
            assert!((back - r).abs() < 1e-9, "roundtrip at {r}: {back}");
        }
        // tiny radii keep full relative precision (horizons of near-zero
        // masses live here)
        for r in [1e-2, 1e-6, 1e-12, 7.5e-21] {
            for m in [3u32, 4, 5] {
                let dm = dim(m);
                let back = invert_envelope(envelope(r, dm), dm).unwrap();
                assert!((back - r).abs() <= 1e-9 * r, "m = {m}, r = {r}: {back}");
            }
        }
        assert!(invert_envelope(-1.0, d).is_err());
    }

    #[test]
    fn sphere_area_and_radius() {
        let d = dim(3);
        assert_eq!(sphere_area(0.0, d), 0.0);
        assert!((sphere_area(1.0_f64.asinh(), d) - 4.0 * PI).abs() < 1e-12);
        let a = sphere_area(1.0, d);
        assert!((a - 4.0 * PI * 1.0_f64.sinh().powi(2)).abs() < 1e-10);
        assert!((area_radius(a, d).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(area_radius(0.0, d).unwrap(), 0.0);
        assert!((area_radius(4.0 * PI, d).unwrap() - 1.0_f64.asinh()).abs() < 1e-12);
        assert!(area_radius(-1.0, d).is_err());
    }

    #[test]
    fn hawking_mass_graph_examples() {
        let d = dim(3);
        let r = 1.0_f64.asinh();
        assert_eq!(hawking_mass_graph(2.0, 0.0, d), 0.0);
        assert!((hawking_mass_graph(r, 1.0, d) - 0.5).abs() < 1e-12);
        // z' → ∞ approaches envelope/2
        let cap = envelope(r, d) / 2.0;
        let v = hawking_mass_graph(r, 1e8, d);
        assert!((v - cap).abs() / cap < 1e-8);
        // strictly increasing in |z'| and bounded by the cap
        let mut prev = -1.0;
        for i in 0..60 {
            let m = hawking_mass_graph(r, 0.25 * i as f64, d);
            assert!(m > prev && m < cap);
            prev = m;
        }
    }

    #[test]
    fn zprime_inverse_and_errors() {
        let d = dim(3);
        let r = 1.0_f64.asinh();
        assert_eq!(zprime_from_hawking(r, 0.0, d).unwrap(), 0.0);
        assert!((zprime_from_hawking(r, 0.5, d).unwrap() - 1.0).abs() < 1e-12);
        assert!(matches!(
            zprime_from_hawking(r, 1.0, d),
            Err(Error::Horizon { .. })
        ));
        assert!(zprime_from_hawking(r, -0.1, d).is_err());

        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let r = rng.random_range(0.05..4.0);
            let mh = rng.random_range(0.0..envelope(r, d) / 2.0 * 0.999);
            let zp = zprime_from_hawking(r, mh, d).unwrap();
            let back = hawking_mass_graph(r, zp, d);
            assert!((back - mh).abs() < 1e-10 * mh.max(1.0));
        }
    }

    #[test]
    fn scalar_curvature_hyperbolic_slice() {
        for m in [3u32, 4, 5] {
            let d = dim(m);
            let v = scalar_curvature_graph(0.8, 0.0, 0.0, d);
            assert!((v + (m * (m - 1)) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn scalar_curvature_ads_is_space_form() {
        // constant m_H = 0.1, m = 3, r = 1: z″ analytic, R must be −6
        let d = dim(3);
        let (r, mu) = (1.0, 0.1);
        let zp = zprime_from_hawking(r, mu, d).unwrap();
        let zpp = zsecond_from_hawking(r, mu, 0.0, d).unwrap();
        let v = scalar_curvature_graph(r, zp, zpp, d);
        assert!((v + 6.0).abs() < 1e-6, "{v}");
    }

    #[test]
    fn mass_slope_identity_finite_differences() {
        // (m_H(r+h) − m_H(r−h))/2h ≈ sinh^{m−1}r cosh r/(2(m−1)) (R + m(m−1))
        let d = dim(3);
        let mu = 0.05;
        let mh = |r: f64| mu * (1.0 - (-3.0 * r).exp());
        let mhp = |r: f64| 3.0 * mu * (-3.0 * r).exp();
        for r in [0.4, 0.9, 1.6] {
            let zp = zprime_from_hawking(r, mh(r), d).unwrap();
            let zpp = zsecond_from_hawking(r, mh(r), mhp(r), d).unwrap();
            let scal = scalar_curvature_graph(r, zp, zpp, d);
            let lhs = mhp(r);
            let rhs = r.sinh().powi(2) * r.cosh() / (2.0 * 2.0) * (scal + 6.0);
            assert!((lhs - rhs).abs() < 1e-8, "at {r}: {lhs} vs {rhs}");

            let h = 1e-5;
            let fd = (mh(r + h) - mh(r - h)) / (2.0 * h);
            assert!((fd - rhs).abs() < 1e-7);
        }
    }

    #[test]
    fn warp_geometry_examples() {
        let d = dim(3);
        // hyperbolic at s = 1
        let q = warp_geometry(
            WarpSample {
                s: 1.0,
                f: 1.0_f64.sinh(),
                f1: 1.0_f64.cosh(),
                f2: 1.0_f64.sinh(),
            },
            d,
        );
        assert!(q.mh.abs() < 1e-12);
        assert!((q.scal + 6.0).abs() < 1e-10);
        // cylinder slice
        let q = warp_geometry(
            WarpSample {
                s: 0.0,
                f: 1.0,
                f1: 0.0,
                f2: 0.0,
            },
            d,
        );
        assert!((q.mh - 1.0).abs() < 1e-12);
        assert_eq!(q.mean_curv, 0.0);
    }

    #[test]
    fn warp_matches_graph_chart_on_random_profiles() {
        // m_H(r) = A tanh^{m−1}(k r) stays under the envelope for the ranges
        // below; compare all four quantities through r = arcsinh f.
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..100 {
            let m = *[3u32, 4, 5].get(rng.random_range(0..3)).unwrap();
            let d = dim(m);
            let amp: f64 = rng.random_range(0.01..0.3);
            let k: f64 = rng.random_range(0.3..1.5);
            let r: f64 = rng.random_range(0.3..2.5);
            let mh = amp * (k * r).tanh().powi(m as i32 - 1);
            if 2.0 * mh >= envelope(r, d) * 0.98 {
                continue;
            }
            let mhp = amp * (m as f64 - 1.0) * (k * r).tanh().powi(m as i32 - 2) * k
                / (k * r).cosh().powi(2);
            let zp = zprime_from_hawking(r, mh, d).unwrap();
            if zp < 1e-8 {
                continue;
            }
            let zpp = zsecond_from_hawking(r, mh, mhp, d).unwrap();

            let f = r.sinh();
            let f1 = r.cosh() / (1.0 + zp * zp).sqrt();
            let f2 = r.sinh() / (1.0 + zp * zp) - r.cosh() * zp * zpp / (1.0 + zp * zp).powi(2);
            let w = warp_geometry(WarpSample { s: 0.0, f, f1, f2 }, d);

            assert!((w.area - sphere_area(r, d)).abs() < 1e-9 * w.area.max(1.0));
            assert!((w.mh - mh).abs() < 1e-9, "mh {} vs {}", w.mh, mh);
            let hg = (m as f64 - 1.0) * (r.cosh() / r.sinh()) / (1.0 + zp * zp).sqrt();
            assert!((w.mean_curv - hg).abs() < 1e-9);
            let rg = scalar_curvature_graph(r, zp, zpp, d);
            assert!((w.scal - rg).abs() < 1e-6, "scal {} vs {}", w.scal, rg);

            // height chart agrees as well
            let hq = height_chart(r, 1.0 / zp, -zpp / zp.powi(3), d);
            assert!((hq.mh - mh).abs() < 1e-9);
            assert!((hq.scal - rg).abs() < 1e-6);
        }
    }

    #[test]
    fn convert_hyperbolic_samples() {
        let d = dim(3);
        let samples: Vec<WarpSample> = (0..=40)
            .map(|i| {
                let s = i as f64 * 0.1;
                WarpSample {
                    s,
                    f: s.sinh(),
                    f1: s.cosh(),
                    f2: s.sinh(),
                }
            })
            .collect();
        let p = convert_warp_to_profile(&samples[1..], d).unwrap();
        for i in 0..=20 {
            let r = 0.1 + i as f64 * 0.15;
            assert!(p.hawking_mass(r).abs() < 1e-12);
        }
    }

    #[test]
    fn convert_kottler_form_gives_constant_mass() {
        // ρ-form: g = dρ²/(1+ρ²−2μρ^{2−m}) + ρ² g₀ with f(s) = ρ,
        // f′(s) = √V, f″(s) = V′/2.
        let d = dim(3);
        let mu = 0.1;
        let v = |rho: f64| 1.0 + rho * rho - 2.0 * mu / rho;
        let vp = |rho: f64| 2.0 * rho + 2.0 * mu / (rho * rho);
        let rho0 = {
            // horizon: V(ρ) = 0
            let mut lo = 0.01;
            let mut hi = 2.0;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if v(mid) < 0.0 {
                    lo = mid
                } else {
                    hi = mid
                }
            }
            0.5 * (lo + hi)
        };
        let mut s = 0.0;
        let mut samples = Vec::new();
        let n = 400;
        for i in 1..=n {
            let rho = rho0 + (3.0 - rho0) * i as f64 / n as f64;
            // s only orders the samples; a crude cumulative suffices
            s += 1e-3;
            samples.push(WarpSample {
                s,
                f: rho,
                f1: v(rho).sqrt(),
                f2: vp(rho) / 2.0,
            });
        }
        let p = convert_warp_to_profile(&samples, d).unwrap();
        for i in 0..=20 {
            let r = p.r_min() + (p.r_max() - p.r_min()) * i as f64 / 20.0;
            assert!(
                (p.hawking_mass(r) - mu).abs() < 1e-8,
                "m_H({r}) = {}",
                p.hawking_mass(r)
            );
        }
        assert!((mass_of(&p).mass - mu).abs() < 1e-8);
    }

    #[test]
    fn convert_single_sample() {
        let d = dim(3);
        let smp = WarpSample {
            s: 1.0,
            f: 1.0,
            f1: 0.5,
            f2: 0.0,
        };
        let p = convert_warp_to_profile(&[smp], d).unwrap();
        let expected = warp_geometry(smp, d).mh;
        assert_eq!(p.r_min(), p.r_max());
        assert!((mass_of(&p).mass - expected).abs() < 1e-14);
    }

    #[test]
    fn convert_rejects_interior_minimal_surface() {
        let d = dim(3);
        let samples = vec![
            WarpSample {
                s: 0.0,
                f: 1.0,
                f1: 0.5,
                f2: 0.0,
            },
            WarpSample {
                s: 1.0,
                f: 1.5,
                f1: -0.1,
                f2: 0.0,
            },
        ];
        assert!(matches!(
            convert_warp_to_profile(&samples, d),
            Err(Error::MinimalSurfaceViolation { .. })
        ));
    }

    #[test]
    fn r_disk_cases() {
        let d = dim(3);
        let hyp = MetricProfile::new(d, 0.0, 10.0, ProfileKind::Hyperbolic).unwrap();
        assert!(r_disk(&hyp).is_infinite());
        let ads =
            MetricProfile::new(d, 0.19, 10.0, ProfileKind::AdsSchwarzschild { mass: 0.1 }).unwrap();
        assert_eq!(r_disk(&ads), 0.19);
        // m_H zero up to 1, then rising
        let rs = vec![0.0, 0.5, 1.0, 2.0, 3.0];
        let mh = vec![0.0, 0.0, 0.0, 0.05, 0.05];
        let p = MetricProfile::new(
            d,
            0.0,
            3.0,
            ProfileKind::Sampled(SampledProfile::new(rs, mh).unwrap()),
        )
        .unwrap();
        let rd = r_disk(&p);
        assert!(rd > 0.9 && rd < 2.0, "{rd}");
    }
}
