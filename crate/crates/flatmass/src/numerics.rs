//! Deterministic quadrature and root finding.
//!
//! Adaptive Simpson with a Richardson error estimate handles every volume
//! integral in the crate; the only singular integrand type the metric class
//! produces — z′ ~ (r − a)^{−1/2} at a horizon — is removed by the
//! substitution u = √(r − a) before regular quadrature.

use crate::{Error, Result};

/// Absolute/relative tolerance pair plus a refinement-depth cap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64, max_depth: u32) -> Result<Self> {
        if !(abs_tol > 0.0) || !(rel_tol >= 0.0) || max_depth < 1 {
            return Err(Error::Domain(format!(
                "invalid tolerance: abs_tol = {abs_tol}, rel_tol = {rel_tol}, max_depth = {max_depth}"
            )));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_depth,
        })
    }

    /// abs_tol = rel_tol = 1e−10, max_depth = 40.
    ///
    /// The `FLATMASS_TOL` environment variable, when set to a positive
    /// float, overrides the absolute tolerance.
    pub fn default_quadrature() -> Self {
        let abs_tol = std::env::var("FLATMASS_TOL")
            .ok()
            .and_then(|s| s.parse::<f64>().ok())
            .filter(|t| *t > 0.0)
            .unwrap_or(1e-10);
        Self {
            abs_tol,
            rel_tol: 1e-10,
            max_depth: 40,
        }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::default_quadrature()
    }
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

struct Adaptive<'a> {
    f: &'a dyn Fn(f64) -> f64,
    failed: Option<f64>,
}

impl Adaptive<'_> {
    // Classic adaptive Simpson: accept when the two-panel refinement agrees
    // with the one-panel estimate to 15·(local budget), apply the Richardson
    // correction (S2 - S1)/15.
    fn recurse(
        &mut self,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        budget: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (self.f)(lm);
        let frm = (self.f)(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let refined = left + right;
        let err = (refined - whole) / 15.0;
        if err.abs() <= budget || (b - a) < f64::EPSILON * (a.abs() + b.abs() + 1.0) {
            return refined + err;
        }
        if depth == 0 {
            self.failed = Some(refined + err);
            return refined + err;
        }
        self.recurse(a, m, fa, flm, fm, left, 0.5 * budget, depth - 1)
            + self.recurse(m, b, fm, frm, fb, right, 0.5 * budget, depth - 1)
    }
}

/// Adaptive Simpson integral of `f` over [a, b].
///
/// Returns I with |I − ∫f| ≲ abs_tol + rel_tol·|I|; errors out with the last
/// estimate if the refinement-depth cap is exceeded.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: Tolerance) -> Result<f64> {
    if !(a <= b) {
        return Err(Error::Domain(format!("integrate: a = {a} > b = {b}")));
    }
    if a == b {
        return Ok(0.0);
    }
    // First pass at fixed resolution to set the relative part of the budget
    // and to keep narrow features from being missed by a single panel.
    const COARSE: usize = 32;
    let h = (b - a) / COARSE as f64;
    let mut nodes = Vec::with_capacity(COARSE + 1);
    for i in 0..=COARSE {
        let x = if i == COARSE { b } else { a + i as f64 * h };
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::NonIntegrableSingularity { at: x });
        }
        nodes.push((x, fx));
    }
    let mut coarse = 0.0;
    for w in nodes.windows(2) {
        coarse += 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1);
    }
    let budget = tol.abs_tol + tol.rel_tol * coarse.abs();

    let mut state = Adaptive {
        f: &f,
        failed: None,
    };
    let mut total = 0.0;
    for w in nodes.windows(2) {
        let (x0, f0) = w[0];
        let (x1, f1) = w[1];
        let mid = 0.5 * (x0 + x1);
        let fmid = f(mid);
        if !fmid.is_finite() {
            return Err(Error::NonIntegrableSingularity { at: mid });
        }
        let whole = simpson(f0, fmid, f1, x1 - x0);
        total += state.recurse(
            x0,
            x1,
            f0,
            fmid,
            f1,
            whole,
            budget / COARSE as f64,
            tol.max_depth,
        );
    }
    match state.failed {
        Some(_) => Err(Error::RefinementFailure {
            last_estimate: total,
        }),
        None => Ok(total),
    }
}

/// ∫_a^b f for an integrand with (at worst) an (r − a)^{−1/2} blow-up at the
/// left endpoint: substitutes u = √(r − a), after which
/// ∫ f = ∫_0^{√(b−a)} f(a + u²)·2u du is regular, then integrates adaptively.
///
/// With `exponent_half` unset the integrand is assumed regular and the call
/// reduces to [`integrate`].
pub fn integrate_singular_left(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    exponent_half: bool,
    tol: Tolerance,
) -> Result<f64> {
    if !(a <= b) {
        return Err(Error::Domain(format!(
            "integrate_singular_left: a = {a} > b = {b}"
        )));
    }
    if !exponent_half {
        return integrate(f, a, b, tol);
    }
    if a == b {
        return Ok(0.0);
    }
    let ub = (b - a).sqrt();
    // Below u_floor the offset u² drowns in the rounding of a + u²; the
    // substituted integrand is replaced there by its probed limit.
    let u_floor = (f64::EPSILON * a.abs().max(1e-300)).sqrt() * 8.0;
    let u_probe = (ub * 1e-6).max(u_floor);
    // f·√(r−a) bounded near a means f(a+u²)·2u approaches a finite limit;
    // a growing probe sequence signals a worse-than-(r−a)^{−1/2} blow-up.
    let p1 = f(a + u_probe * u_probe) * 2.0 * u_probe;
    let u2 = (u_probe / 16.0).max(0.5 * u_floor);
    let p2 = f(a + u2 * u2) * 2.0 * u2;
    if !p1.is_finite() || !p2.is_finite() || p2.abs() > 4.0 * p1.abs() + tol.abs_tol {
        return Err(Error::NonIntegrableSingularity { at: a });
    }
    let g = |u: f64| {
        if u <= u_floor {
            p1
        } else {
            f(a + u * u) * 2.0 * u
        }
    };
    // Quantization of a + u² leaves relative noise ~ ε|a|/u² on g; keep the
    // adaptive refinement away from it with a fixed composite rule on the
    // noisy zone (the substituted integrand is smooth there).
    let u_split = ((f64::EPSILON * a.abs()).sqrt() * 1e6)
        .max(ub * 1e-6)
        .min(0.25 * ub);
    let mut near = 0.0;
    const NEAR_CELLS: usize = 256;
    let h = u_split / NEAR_CELLS as f64;
    for i in 0..NEAR_CELLS {
        let (u0, u1) = (i as f64 * h, (i + 1) as f64 * h);
        let (g0, gm, g1) = (g(u0), g(0.5 * (u0 + u1)), g(u1));
        if !(g0.is_finite() && gm.is_finite() && g1.is_finite()) {
            return Err(Error::NonIntegrableSingularity { at: a });
        }
        near += (u1 - u0) / 6.0 * (g0 + 4.0 * gm + g1);
    }
    Ok(near + integrate(g, u_split, ub, tol)?)
}

/// Root of a strictly increasing function on a bracketing interval, by
/// bisection with a secant (regula-falsi style) acceleration step.
///
/// Requires g(lo) ≤ 0 ≤ g(hi); returns x with |g(x)| ≤ abs_tol or bracket
/// width ≤ abs_tol.
pub fn find_root_increasing(
    g: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    tol: Tolerance,
) -> Result<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let mut g_lo = g(lo);
    let mut g_hi = g(hi);
    if g_lo > 0.0 || g_hi < 0.0 {
        return Err(Error::InvalidBracket { lo, hi, g_lo, g_hi });
    }
    if g_lo == 0.0 {
        return Ok(lo);
    }
    if g_hi == 0.0 {
        return Ok(hi);
    }
    for iter in 0..4096 {
        if hi - lo <= tol.abs_tol {
            break;
        }
        // Alternate bisection with secant steps; bisection guarantees the
        // bracket halves often enough for convergence.
        let mid = if iter % 2 == 0 || g_hi - g_lo <= 0.0 {
            0.5 * (lo + hi)
        } else {
            let s = lo - g_lo * (hi - lo) / (g_hi - g_lo);
            let margin = 0.01 * (hi - lo);
            s.clamp(lo + margin, hi - margin)
        };
        let g_mid = g(mid);
        if g_mid.abs() <= tol.abs_tol {
            return Ok(mid);
        }
        if g_mid < 0.0 {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
            g_hi = g_mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_depth: 40,
        }
    }

    #[test]
    fn tolerance_invariants() {
        assert!(Tolerance::new(1e-10, 1e-10, 40).is_ok());
        assert!(Tolerance::new(0.0, 1e-10, 40).is_err());
        assert!(Tolerance::new(1e-10, -1.0, 40).is_err());
        assert!(Tolerance::new(1e-10, 0.0, 0).is_err());
        let d = Tolerance::default_quadrature();
        assert!(d.abs_tol > 0.0 && d.max_depth >= 1);
    }

    #[test]
    fn integrates_constant() {
        let v = integrate(|_| 1.0, 0.0, 2.0, tol()).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn integrates_sinh_squared() {
        // ∫₀¹ sinh²r dr = (sinh 2 − 2)/4
        let v = integrate(|r| r.sinh().powi(2), 0.0, 1.0, tol()).unwrap();
        let exact = (2.0_f64.sinh() - 2.0) / 4.0;
        assert!((v - exact).abs() < 1e-10, "{v} vs {exact}");
    }

    #[test]
    fn integrates_sinh_squared_cosh() {
        // ∫₀¹ sinh²r cosh r dr = sinh³(1)/3
        let v = integrate(|r| r.sinh().powi(2) * r.cosh(), 0.0, 1.0, tol()).unwrap();
        let exact = 1.0_f64.sinh().powi(3) / 3.0;
        assert!((v - exact).abs() < 1e-10, "{v} vs {exact}");
    }

    #[test]
    fn additivity_property() {
        let f = |r: f64| (3.0 * r).cos() * r.exp();
        for (a, b, c) in [(0.0, 0.7, 2.0), (0.0, 1.9, 2.0), (-1.0, 0.0, 3.0)] {
            let whole = integrate(f, a, c, tol()).unwrap();
            let left = integrate(f, a, b, tol()).unwrap();
            let right = integrate(f, b, c, tol()).unwrap();
            assert!((whole - left - right).abs() <= 3.0 * tol().abs_tol);
        }
    }

    #[test]
    fn refinement_failure_carries_estimate() {
        let shallow = Tolerance {
            abs_tol: 1e-14,
            rel_tol: 0.0,
            max_depth: 1,
        };
        let err = integrate(|r: f64| (80.0 * r).sin().abs(), 0.0, 3.0, shallow).unwrap_err();
        match err {
            Error::RefinementFailure { last_estimate } => {
                assert!(last_estimate.is_finite());
                assert!(last_estimate > 0.5); // ballpark of 2/π·3 ≈ 1.9
            }
            other => panic!("expected refinement failure, got {other:?}"),
        }
    }

    #[test]
    fn singular_inverse_sqrt() {
        // ∫₀¹ r^{−1/2} dr = 2
        let v = integrate_singular_left(|r| 1.0 / r.sqrt(), 0.0, 1.0, true, tol()).unwrap();
        assert!((v - 2.0).abs() < 1e-10, "{v}");
    }

    #[test]
    fn singular_inverse_sqrt_translated() {
        // ∫₂³ (r−2)^{−1/2} dr = 2; away from the origin the offset r − 2
        // quantizes, which costs a few ulps of |a| per unit slope.
        let v = integrate_singular_left(|r| 1.0 / (r - 2.0).sqrt(), 2.0, 3.0, true, tol()).unwrap();
        assert!((v - 2.0).abs() < 1e-7, "{v}");
    }

    #[test]
    fn singular_cosh_matches_midpoint_oracle() {
        // Oracle: midpoint rule on the u-grid with 10^6 cells, independent of
        // the adaptive path.
        let f = |r: f64| r.cosh() / r.sqrt();
        let n = 1_000_000;
        let du = 1.0 / n as f64;
        let mut oracle = 0.0;
        for i in 0..n {
            let u = (i as f64 + 0.5) * du;
            let r = u * u;
            oracle += f(r) * 2.0 * u * du;
        }
        let v = integrate_singular_left(f, 0.0, 1.0, true, tol()).unwrap();
        assert!((v - oracle).abs() < 1e-8, "{v} vs {oracle}");
    }

    #[test]
    fn singular_agrees_with_regular_when_smooth() {
        let f = |r: f64| r.cosh() + r * r;
        let a = integrate(f, 0.5, 2.0, tol()).unwrap();
        let b = integrate_singular_left(f, 0.5, 2.0, true, tol()).unwrap();
        assert!((a - b).abs() <= 2.0 * tol().abs_tol);
    }

    #[test]
    fn singular_detects_nonintegrable_blowup() {
        // 1/r is not integrable at 0; the substituted integrand 2/u still
        // blows up.
        let err = integrate_singular_left(|r| 1.0 / r, 0.0, 1.0, true, tol()).unwrap_err();
        assert!(matches!(
            err,
            Error::NonIntegrableSingularity { .. } | Error::RefinementFailure { .. }
        ));
    }

    #[test]
    fn root_linear() {
        let x = find_root_increasing(|x| x - 1.0, 0.0, 2.0, tol()).unwrap();
        assert!((x - 1.0).abs() < 1e-9);
    }

    #[test]
    fn root_envelope_equals_two() {
        // sinh x cosh²x = 2 at x = arcsinh(1): sinh = 1, cosh² = 2.
        let x =
            find_root_increasing(|x| x.sinh() * x.cosh().powi(2) - 2.0, 0.0, 2.0, tol()).unwrap();
        assert!((x - 1.0_f64.asinh()).abs() < 1e-9, "{x}");
    }

    #[test]
    fn root_envelope_small_vs_bisection_oracle() {
        let g = |x: f64| x.sinh() * x.cosh().powi(2) - 0.2;
        // Plain bisection oracle to 1e-10.
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        while hi - lo > 1e-10 {
            let mid = 0.5 * (lo + hi);
            if g(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let oracle = 0.5 * (lo + hi);
        let x = find_root_increasing(g, 0.0, 1.0, tol()).unwrap();
        assert!((x - oracle).abs() < 1e-8, "{x} vs {oracle}");
        assert!(g(x).abs() < 1e-9);
    }

    #[test]
    fn root_bracket_property() {
        let g = |x: f64| x.exp() - 2.0;
        let x = find_root_increasing(g, 0.0, 3.0, tol()).unwrap();
        let t = tol().abs_tol;
        assert!(g(x - t) <= 0.0 && g(x + t) >= 0.0);
    }

    #[test]
    fn root_invalid_bracket() {
        let err = find_root_increasing(|x| x + 10.0, 0.0, 1.0, tol()).unwrap_err();
        assert!(matches!(err, Error::InvalidBracket { .. }));
    }
}
