//! Building the graph embedding z = F(r): heights stay finite across a
//! horizon, arclength exceeds coordinate length, and tubular windows solve
//! the arclength equations (swallowing the horizon when the tube is wide).
//!
//! ```bash
//! cargo run -p flatmass --example graph_embedding
//! ```

use flatmass::embedding::build_embedding;
use flatmass::families::ads_schwarzschild;
use flatmass::geometry::{sphere_area, Dimension};

fn main() -> Result<(), flatmass::Error> {
    let dim = Dimension::new(3)?;
    let profile = ads_schwarzschild(dim, 0.1, 10.0)?;
    let emb = build_embedding(&profile, 0.0)?;

    println!("horizon radius r_min = {:.6}", profile.r_min());
    println!("{:>10} {:>14} {:>14}", "r", "F(r)", "F'(r)");
    for i in 0..=10 {
        let r = profile.r_min() + (3.0 - profile.r_min()) * i as f64 / 10.0;
        let slope = emb
            .slope(r)
            .map(|s| format!("{s:14.6}"))
            .unwrap_or_else(|_| "inf".into());
        println!("{r:>10.6} {:>14.6} {slope:>14}", emb.height(r));
    }

    let l = emb.arclength(profile.r_min(), profile.r_min() + 0.1)?;
    println!("arclength over the first 0.1 of coordinate width: {l:.6} (> 0.1)");

    let alpha0 = sphere_area(1.0, dim);
    for d in [0.5, 2.0] {
        let w = emb.tubular_window(alpha0, d)?;
        println!(
            "tube D = {d}: r_D- = {:.6}, r_0 = {:.6}, r_D+ = {:.6}{}",
            w.r_d_minus,
            w.r0,
            w.r_d_plus,
            if w.r_d_minus == profile.r_min() {
                "  (reaches the horizon)"
            } else {
                ""
            }
        );
    }
    Ok(())
}
