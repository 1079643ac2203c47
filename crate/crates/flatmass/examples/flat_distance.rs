//! End-to-end flat-distance bounds: a certified metric under the δ budget
//! stays within ε of hyperbolic space; a heavy metric is evaluated anyway
//! and flagged uncertified.
//!
//! ```bash
//! cargo run -p flatmass --example flat_distance
//! ```

use flatmass::bound::{choose_delta, flat_distance_bound, BoundReport};
use flatmass::families::ads_schwarzschild;
use flatmass::geometry::{sphere_area, Dimension};

fn show(label: &str, rep: &BoundReport) {
    println!("{label}: mass = {:.3e}", rep.mass);
    println!("  certified            {}", rep.certified);
    println!("  deep cut             {}", rep.deep_cut);
    println!("  r_eps                {:.6}", rep.r_eps);
    println!(
        "  strip (C, S)         ({:.3e}, {:.3e})",
        rep.strip.c, rep.strip.s
    );
    for (name, r) in [
        ("A0", rep.regions.a0),
        ("A1", rep.regions.a1),
        ("A2", rep.regions.a2),
        ("A3,1", rep.regions.a31),
        ("A3,2", rep.regions.a32),
        ("A3,3", rep.regions.a33),
        ("B1", rep.regions.b1),
        ("B2", rep.regions.b2),
    ] {
        println!(
            "  {name:<5} contribution {:.6e}   (numeric {:.3e} / analytic {:.3e})",
            r.contribution,
            r.numeric_volume.unwrap_or(f64::NAN),
            r.analytic_bound.unwrap_or(f64::NAN),
        );
    }
    println!("  total flat bound     {:.6e}", rep.total_flat_bound);
    println!(
        "  tube volumes         metric {:.6}, hyperbolic {:.6} (sandwich [{:.6}, {:.6}])",
        rep.volume_tube_metric, rep.volume_tube_hyperbolic, rep.volume_lower, rep.volume_upper
    );
}

fn main() -> Result<(), flatmass::Error> {
    let dim = Dimension::new(3)?;
    let alpha0 = sphere_area(1.0, dim);
    let (eps, d) = (0.5, 1.0);

    let budget = choose_delta(eps, d, alpha0, dim)?;
    println!(
        "delta(eps = {eps}, D = {d}, alpha0 = {alpha0:.4}) = {:.6e}\n",
        budget.delta
    );

    let light = ads_schwarzschild(dim, budget.delta / 2.0, 10.0)?;
    show(
        "mass under the budget",
        &flat_distance_bound(&light, eps, d, alpha0)?,
    );

    println!();
    let heavy = ads_schwarzschild(dim, 0.05, 10.0)?;
    show(
        "mass above the budget",
        &flat_distance_bound(&heavy, eps, d, alpha0)?,
    );
    Ok(())
}
