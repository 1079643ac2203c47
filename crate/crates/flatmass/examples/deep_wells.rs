//! Arbitrarily deep gravity wells at fixed mass: the well's arclength depth
//! grows like 1/√(1−q) as the peak fraction q → 1, while the flat-distance
//! bound barely moves — depth does not obstruct closeness to hyperbolic
//! space when the mass is small.
//!
//! ```bash
//! cargo run -p flatmass --example deep_wells
//! ```

use flatmass::bound::flat_distance_bound;
use flatmass::embedding::build_embedding;
use flatmass::families::{gravity_well, WellSpec};
use flatmass::geometry::{sphere_area, Dimension};

fn main() -> Result<(), flatmass::Error> {
    let dim = Dimension::new(3)?;
    let alpha0 = sphere_area(1.0, dim);
    let mass = 0.01;

    println!("fixed mass {mass}; deepening the well by pushing q toward 1");
    println!("{:>10} {:>14} {:>16}", "q", "well depth", "flat bound");
    for q in [0.9, 0.99, 0.999, 0.9999] {
        let spec = WellSpec::new(dim, mass, q)?;
        let profile = gravity_well(&spec, 10.0)?;
        let emb = build_embedding(&profile, 0.0)?;
        let ramp_end = WellSpec::plateau_radius(dim, mass, q)? + spec.blend_width;
        let depth = emb.arclength(0.0, ramp_end)?;
        let rep = flat_distance_bound(&profile, 0.5, 1.0, alpha0)?;
        println!("{q:>10} {depth:>14.6} {:>16.9}", rep.total_flat_bound);
    }
    Ok(())
}
