//! Adaptive Simpson quadrature.
//!
//! Ball integrals on the analytic backend reduce to one-dimensional integrals
//! of `f(t) * w(t)` over a bounded interval. Closed-form antiderivatives are
//! preferred wherever the weight catalog provides them; this routine is the
//! fallback and the cross-check.

/// Default absolute tolerance for ball integrals.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Default maximum recursion depth. At depth 40 the subinterval width has
/// shrunk by a factor of 2^40, well past f64 resolution for desk-scale
/// intervals.
pub const DEFAULT_MAX_DEPTH: u32 = 40;

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let refined = left + right;
    // Richardson error estimate for composite vs single Simpson.
    if depth == 0 || (refined - whole).abs() <= 15.0 * tol {
        return refined + (refined - whole) / 15.0;
    }
    adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Integrands with a kink (e.g. anything involving `|x|`) should be split at
/// the kink by the caller; `integrate_split` does this for one break point.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    if b < a {
        return -integrate(f, b, a, tol);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(fa, fm, fb, b - a);
    adaptive(&f, a, b, fa, fm, fb, whole, tol.max(f64::MIN_POSITIVE), DEFAULT_MAX_DEPTH)
}

/// Integrate over `[a, b]`, splitting at `c` when it lies inside the interval.
pub fn integrate_split<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, c: f64, tol: f64) -> f64 {
    if a < c && c < b {
        integrate(&f, a, c, 0.5 * tol) + integrate(&f, c, b, 0.5 * tol)
    } else {
        integrate(f, a, b, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        // Simpson is exact on cubics; the adaptive wrapper must be too.
        let v = integrate(|t| 3.0 * t * t, 0.0, 2.0, 1e-12);
        assert!((v - 8.0).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn exponential_matches_closed_form() {
        let v = integrate(|t| (-t).exp(), -1.0, 3.0, 1e-12);
        let exact = 1f64.exp() - (-3f64).exp();
        assert!((v - exact).abs() < 1e-11, "got {v}, want {exact}");
    }

    #[test]
    fn orientation_flips_sign() {
        let v = integrate(|t| t, 1.0, 0.0, 1e-12);
        assert!((v + 0.5).abs() < 1e-13);
    }

    #[test]
    fn kink_split_recovers_abs_integral() {
        let v = integrate_split(|t| t.abs(), -1.0, 1.0, 0.0, 1e-12);
        assert!((v - 1.0).abs() < 1e-12, "got {v}");
    }
}
