//! The three charts of a spherically symmetric metric — geodesic (warp),
//! graph, and height coordinates — computed on the same anti-de
//! Sitter–Schwarzschild slice agree on area, mean curvature, scalar
//! curvature and Hawking mass.
//!
//! ```bash
//! cargo run -p flatmass --example chart_formulas
//! ```

use flatmass::geometry::{
    hawking_mass_graph, height_chart, scalar_curvature_graph, sphere_area, warp_geometry,
    zprime_from_hawking, zsecond_from_hawking, Dimension, WarpSample,
};

fn main() -> Result<(), flatmass::Error> {
    let dim = Dimension::new(3)?;
    let mu = 0.1;
    println!("constant Hawking mass {mu}, dimension 3");
    println!(
        "{:>6} {:>14} {:>14} {:>14} {:>14}",
        "r", "R (graph)", "R (warp)", "R (height)", "m_H (all)"
    );
    for i in 1..=8 {
        let r = 0.5 + 0.3 * i as f64;
        let zp = zprime_from_hawking(r, mu, dim)?;
        let zpp = zsecond_from_hawking(r, mu, 0.0, dim)?;

        let r_graph = scalar_curvature_graph(r, zp, zpp, dim);
        let mh_graph = hawking_mass_graph(r, zp, dim);

        // geodesic chart through ds/dr = sqrt(1 + (z')^2)
        let f = r.sinh();
        let f1 = r.cosh() / (1.0 + zp * zp).sqrt();
        let f2 = r.sinh() / (1.0 + zp * zp) - r.cosh() * zp * zpp / (1.0 + zp * zp).powi(2);
        let warp = warp_geometry(WarpSample { s: 0.0, f, f1, f2 }, dim);

        // height chart through dr/dz = 1/z'
        let height = height_chart(r, 1.0 / zp, -zpp / zp.powi(3), dim);

        assert!((warp.area - sphere_area(r, dim)).abs() < 1e-9);
        println!(
            "{r:>6.2} {r_graph:>14.9} {:>14.9} {:>14.9} {mh_graph:>14.9}",
            warp.scal, height.scal
        );
    }
    println!("(a constant profile is a space form: every chart returns R = -6)");
    Ok(())
}
