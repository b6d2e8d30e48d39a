//! Real roots of low-degree real polynomials.
//!
//! Roots of the derivative split the search interval into monotone pieces;
//! each piece with a sign change is bisected and then Newton-polished.

/// Horner evaluation; coefficients ascending.
pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// `Σ |cₖ xᵏ|`, the cancellation scale for relative residuals.
pub fn magnitude(coeffs: &[f64], x: f64) -> f64 {
    coeffs
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * x.abs() + c.abs())
}

pub fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| k as f64 * c)
        .collect()
}

fn trim(coeffs: &[f64]) -> &[f64] {
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut end = coeffs.len();
    while end > 0 && coeffs[end - 1].abs() <= 1e-300 * scale.max(1e-300) {
        end -= 1;
    }
    &coeffs[..end]
}

/// Cauchy bound on the magnitude of every root.
pub fn root_bound(coeffs: &[f64]) -> f64 {
    let c = trim(coeffs);
    if c.len() < 2 {
        return 0.0;
    }
    let lead = c[c.len() - 1].abs();
    1.0 + c[..c.len() - 1]
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs() / lead))
}

/// All real roots in `[lo, hi]`, ascending, polished to near machine
/// precision. Roots of even multiplicity are reported when the polynomial
/// touches zero at a critical point within relative tolerance.
pub fn real_roots_in(coeffs: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let c = trim(coeffs);
    if c.len() <= 1 || lo > hi {
        return Vec::new();
    }
    if c.len() == 2 {
        let r = -c[0] / c[1];
        return if r >= lo && r <= hi { vec![r] } else { Vec::new() };
    }
    let crit = real_roots_in(&derivative(c), lo, hi);
    let mut knots = Vec::with_capacity(crit.len() + 2);
    knots.push(lo);
    knots.extend(crit.iter().copied().filter(|x| *x > lo && *x < hi));
    knots.push(hi);
    let mut roots: Vec<f64> = Vec::new();
    for w in knots.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        let (f0, f1) = (horner(c, x0), horner(c, x1));
        if f0 == 0.0 {
            push_unique(&mut roots, x0);
            continue;
        }
        if f0.signum() != f1.signum() && f1 != 0.0 {
            push_unique(&mut roots, bisect(c, x0, x1));
        }
    }
    if let Some(&last) = knots.last() {
        if horner(c, last) == 0.0 {
            push_unique(&mut roots, last);
        }
    }
    // tangential roots at critical points
    for &x in &crit {
        if x >= lo && x <= hi && horner(c, x).abs() <= 1e-13 * magnitude(c, x) {
            push_unique(&mut roots, x);
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}

fn push_unique(roots: &mut Vec<f64>, x: f64) {
    if !roots
        .iter()
        .any(|r| (r - x).abs() <= 1e-12 * r.abs().max(1.0))
    {
        roots.push(x);
    }
}

fn bisect(c: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = horner(c, lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = horner(c, mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    polish(c, 0.5 * (lo + hi))
}

/// Newton polishing that never accepts a step increasing the residual.
pub fn polish(c: &[f64], mut x: f64) -> f64 {
    let d = derivative(c);
    let mut fx = horner(c, x);
    for _ in 0..20 {
        let dfx = horner(&d, x);
        if dfx == 0.0 || fx == 0.0 {
            break;
        }
        let next = x - fx / dfx;
        let fn_ = horner(c, next);
        if fn_.abs() >= fx.abs() {
            break;
        }
        x = next;
        fx = fn_;
    }
    x
}

/// Real roots anywhere on the line.
pub fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    let r = root_bound(coeffs);
    real_roots_in(coeffs, -r, r)
}
