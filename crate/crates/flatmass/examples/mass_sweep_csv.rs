//! A convergence experiment as a library call: bound reports over a mass
//! sequence approaching zero, printed as CSV rows (mass, total bound,
//! certified).
//!
//! ```bash
//! cargo run -p flatmass --example mass_sweep_csv
//! ```

use flatmass::cli::run_sweep;
use flatmass::families::Family;
use flatmass::geometry::{sphere_area, Dimension};

fn main() -> Result<(), flatmass::Error> {
    let dim = Dimension::new(3)?;
    let alpha0 = sphere_area(1.0, dim);
    let masses: Vec<f64> = (1..=6).map(|k| 10.0_f64.powi(-k)).collect();

    println!("family,mass,total_bound,vol_upper,vol_lower,certified");
    for (family, name) in [
        (Family::AdsSchwarzschild, "ads_schwarzschild"),
        (Family::GravityWell { q_peak: 0.99 }, "gravity_well"),
    ] {
        for (mass, row) in masses
            .iter()
            .zip(run_sweep(family, dim, &masses, 10.0, 0.5, 1.0, alpha0, 3))
        {
            let rep = row.expect("sweep row evaluates");
            println!(
                "{name},{mass:e},{:.12e},{:.12e},{:.12e},{}",
                rep.total_flat_bound, rep.volume_upper, rep.volume_lower, rep.certified
            );
        }
    }
    Ok(())
}
