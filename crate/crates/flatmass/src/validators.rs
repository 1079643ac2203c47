//! Class-membership certification and the rigidity gap.
//!
//! Membership of the spherically symmetric class reduces to conditions on
//! the Hawking-mass profile: nondecreasing (the scalar-curvature lower
//! bound), strictly under the envelope inside (no interior minimal
//! hypersurfaces), and the endpoint condition at r_min (pole or minimal
//! boundary).

use crate::geometry::{envelope, mass_of, scalar_from_mass_slope, MetricProfile};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// How the inner edge of the profile closes off.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryCondition {
    /// r_min = 0 with m_H(0) = 0: a smooth pole.
    NoBoundary,
    /// r_min > 0 with 2 m_H(r_min) = envelope(r_min): a minimal boundary.
    MinimalBoundary,
    /// Neither endpoint condition holds.
    Violated,
}

/// Outcome of class-membership certification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub is_member: bool,
    /// Most negative grid difference of m_H (0 when perfectly monotone).
    pub worst_monotonicity_defect: f64,
    pub boundary_condition: BoundaryCondition,
    /// min over interior grid points of R + m(m−1), from the reconstructed
    /// scalar curvature.
    pub min_scalar_slack: f64,
    pub notes: Vec<String>,
}

/// Certify class membership on the profile's validation grid.
///
/// Checks (a) m_H nondecreasing within `tol`, (b) 0 ≤ 2 m_H < envelope
/// strictly inside, (c) the endpoint condition at r_min, and reports the
/// minimum scalar-curvature slack R + m(m−1) reconstructed from m_H′.
pub fn validate(profile: &MetricProfile, tol: f64) -> Result<ValidationReport> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "validate: tol = {tol} must be positive"
        )));
    }
    let dim = profile.dim();
    let grid = profile.validation_grid();
    let mut notes = Vec::new();
    let mut worst_defect = 0.0_f64;
    let mut min_slack = f64::INFINITY;
    let mut envelope_ok = true;

    let mut prev: Option<(f64, f64)> = None;
    for &r in &grid {
        let mh = profile.hawking_mass(r);
        if mh < -tol {
            envelope_ok = false;
            notes.push(format!("m_H({r}) = {mh} is negative"));
        }
        let interior = r > profile.r_min() && r < profile.r_max();
        if interior || r == profile.r_max() {
            let env = envelope(r, dim);
            if 2.0 * mh >= env {
                envelope_ok = false;
                notes.push(format!(
                    "horizon inside the domain: 2 m_H({r}) = {} >= envelope = {env}",
                    2.0 * mh
                ));
            }
        }
        if let Some((rp, mhp)) = prev {
            let defect = mh - mhp;
            if defect < worst_defect {
                worst_defect = defect;
            }
            let _ = rp;
        }
        if interior {
            let slack = scalar_from_mass_slope(r, profile.hawking_mass_derivative(r), dim)
                + (dim.m() * (dim.m() - 1)) as f64;
            if slack < min_slack {
                min_slack = slack;
            }
        }
        prev = Some((r, mh));
    }
    if !min_slack.is_finite() {
        min_slack = 0.0;
    }

    let boundary_condition = boundary_of(profile, tol);
    if boundary_condition == BoundaryCondition::Violated {
        notes.push(format!(
            "endpoint condition violated: r_min = {}, m_H(r_min) = {}, envelope/2 = {}",
            profile.r_min(),
            profile.hawking_mass(profile.r_min()),
            envelope(profile.r_min(), dim) / 2.0
        ));
    }
    if worst_defect < -tol {
        notes.push(format!("m_H decreasing: worst grid defect {worst_defect}"));
    }

    let is_member =
        worst_defect >= -tol && envelope_ok && boundary_condition != BoundaryCondition::Violated;
    Ok(ValidationReport {
        is_member,
        worst_monotonicity_defect: worst_defect,
        boundary_condition,
        min_scalar_slack: min_slack,
        notes,
    })
}

fn boundary_of(profile: &MetricProfile, tol: f64) -> BoundaryCondition {
    let r_min = profile.r_min();
    let mh0 = profile.hawking_mass(r_min);
    if r_min == 0.0 {
        if mh0.abs() <= tol {
            return BoundaryCondition::NoBoundary;
        }
        return BoundaryCondition::Violated;
    }
    let env = envelope(r_min, profile.dim());
    if (2.0 * mh0 - env).abs() <= tol.max(1e-12 * env) {
        BoundaryCondition::MinimalBoundary
    } else {
        BoundaryCondition::Violated
    }
}

/// The three quantities that vanish together exactly when the profile is
/// hyperbolic space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RigidityGap {
    pub mass: f64,
    /// sup of F′ over the domain; infinite at a horizon.
    pub sup_slope: f64,
    pub sup_mh: f64,
}

/// Total mass, sup of the embedding slope, and sup of the Hawking mass.
pub fn rigidity_gap(profile: &MetricProfile) -> RigidityGap {
    let mass = mass_of(profile).mass;
    let sup_mh = profile.hawking_mass(profile.r_max());
    let sup_slope = if profile.has_minimal_boundary() {
        f64::INFINITY
    } else {
        let mut sup: f64 = 0.0;
        for &r in &profile.validation_grid() {
            match profile.zprime(r) {
                Ok(zp) => sup = sup.max(zp),
                Err(_) => {
                    return RigidityGap {
                        mass,
                        sup_slope: f64::INFINITY,
                        sup_mh,
                    }
                }
            }
        }
        sup
    };
    RigidityGap {
        mass,
        sup_slope,
        sup_mh,
    }
}
