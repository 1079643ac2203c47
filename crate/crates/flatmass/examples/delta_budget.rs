//! The mass budget δ(ε, D, α₀, m): the largest δ whose slope cap keeps every
//! region of the filling construction under its ε-share, with the
//! inequalities and their slack.
//!
//! ```bash
//! cargo run -p flatmass --example delta_budget
//! ```

use flatmass::bound::choose_delta;
use flatmass::geometry::{sphere_area, Dimension};

fn main() -> Result<(), flatmass::Error> {
    let dim = Dimension::new(3)?;
    let alpha0 = sphere_area(1.0, dim);
    let d = 1.0;

    for eps in [0.25, 0.5, 1.0] {
        let budget = choose_delta(eps, d, alpha0, dim)?;
        println!("eps = {eps}: delta = {:.6e}", budget.delta);
        println!(
            "  {:<8} {:>14} {:>14} {:>12}",
            "name", "lhs", "rhs", "slack"
        );
        for c in &budget.constraints {
            println!(
                "  {:<8} {:>14.6e} {:>14.6e} {:>12.3e}",
                c.name,
                c.lhs,
                c.rhs,
                c.slack()
            );
        }
    }
    println!("delta grows with eps; the strip-volume inequality is the binding one here.");
    Ok(())
}
