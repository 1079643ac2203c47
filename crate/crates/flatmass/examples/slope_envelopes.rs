//! Two-sided slope control: the slope of the graph embedding is pinched
//! between the envelope functions built from m_H(r₁) and from the total
//! mass. For a constant profile both sides coincide with F′.
//!
//! ```bash
//! cargo run -p flatmass --example slope_envelopes
//! ```

use flatmass::embedding::build_embedding;
use flatmass::families::{ads_schwarzschild, gravity_well, WellSpec};
use flatmass::geometry::Dimension;

fn main() -> Result<(), flatmass::Error> {
    let dim = Dimension::new(3)?;

    let well = gravity_well(&WellSpec::new(dim, 0.01, 0.99)?, 10.0)?;
    let emb = build_embedding(&well, 0.0)?;
    let sb = emb.slope_bounds(0.3)?;
    println!(
        "gravity well, r1 = 0.3, m1 = {:.6e}, mass = {:.6e}, r_inf = {:.6}",
        sb.m1, sb.mass, sb.r_infinity
    );
    println!("{:>8} {:>12} {:>12} {:>12}", "r", "lower", "F'(r)", "upper");
    for i in 1..=8 {
        let r = 0.3 + i as f64 * 0.25;
        println!(
            "{r:>8.3} {:>12.6} {:>12.6} {:>12.6}",
            sb.lower(r),
            emb.slope(r)?,
            sb.upper(r)
        );
    }

    let ads = ads_schwarzschild(dim, 0.1, 10.0)?;
    let emb = build_embedding(&ads, 0.0)?;
    let sb = emb.slope_bounds(ads.r_min())?;
    println!("\nconstant profile: both envelopes collapse onto F'");
    for i in 1..=5 {
        let r = sb.r_infinity + i as f64 * 0.4;
        println!(
            "  r = {r:.3}: lower − F' = {:+.2e}, upper − F' = {:+.2e}",
            sb.lower(r) - emb.slope(r)?,
            sb.upper(r) - emb.slope(r)?
        );
    }
    Ok(())
}
