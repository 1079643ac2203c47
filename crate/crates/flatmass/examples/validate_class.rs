//! Class-membership certification across the built-in families, plus a
//! deliberately broken profile.
//!
//! ```bash
//! cargo run -p flatmass --example validate_class
//! ```

use flatmass::families::{ads_schwarzschild, gravity_well, hyperbolic, WellSpec};
use flatmass::geometry::{Dimension, MetricProfile, ProfileKind, SampledProfile};
use flatmass::validators::validate;

fn main() -> Result<(), flatmass::Error> {
    let dim = Dimension::new(3)?;

    let mut profiles = vec![
        ("hyperbolic", hyperbolic(dim, 10.0)?),
        ("ads_schwarzschild(0.1)", ads_schwarzschild(dim, 0.1, 10.0)?),
        (
            "gravity_well(0.01, q=0.99)",
            gravity_well(&WellSpec::new(dim, 0.01, 0.99)?, 10.0)?,
        ),
    ];

    // A profile whose Hawking mass decreases on a subinterval: the scalar
    // curvature bound fails there and membership is refused.
    let rs = vec![0.0, 0.5, 1.0, 1.5, 2.0];
    let mh = vec![0.0, 0.04, 0.02, 0.05, 0.05];
    profiles.push((
        "decreasing sample",
        MetricProfile::new(
            dim,
            0.0,
            2.0,
            ProfileKind::Sampled(SampledProfile::new(rs, mh)?),
        )?,
    ));

    for (name, profile) in &profiles {
        let report = validate(profile, 1e-9)?;
        println!("{name}:");
        println!("  member             {}", report.is_member);
        println!("  boundary           {:?}", report.boundary_condition);
        println!(
            "  worst defect       {:.3e}",
            report.worst_monotonicity_defect
        );
        println!("  min scalar slack   {:.3e}", report.min_scalar_slack);
        for note in &report.notes {
            println!("  note: {note}");
        }
    }
    Ok(())
}
