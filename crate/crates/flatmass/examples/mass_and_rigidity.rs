//! Truncated masses with their tail defects, and the rigidity gap: mass,
//! sup F′ and sup m_H vanish together exactly on hyperbolic space.
//!
//! ```bash
//! cargo run -p flatmass --example mass_and_rigidity
//! ```

use flatmass::families::{ads_schwarzschild, gravity_well, hyperbolic, WellSpec};
use flatmass::geometry::{mass_of, r_disk, Dimension};
use flatmass::validators::rigidity_gap;

fn main() -> Result<(), flatmass::Error> {
    let dim = Dimension::new(3)?;
    let profiles = vec![
        ("hyperbolic", hyperbolic(dim, 10.0)?),
        ("ads_schwarzschild(0.1)", ads_schwarzschild(dim, 0.1, 10.0)?),
        (
            "gravity_well(0.01, q=0.999)",
            gravity_well(&WellSpec::new(dim, 0.01, 0.999)?, 10.0)?,
        ),
    ];
    for (name, p) in &profiles {
        let est = mass_of(p);
        let gap = rigidity_gap(p);
        println!("{name}:");
        println!("  mass              {:.12e}", est.mass);
        println!(
            "  tail defect       {:.3e} (converged: {})",
            est.truncation_defect, est.converged
        );
        println!("  sup slope         {}", gap.sup_slope);
        println!("  sup m_H           {:.12e}", gap.sup_mh);
        println!("  r_disk            {}", r_disk(p));
    }
    Ok(())
}
