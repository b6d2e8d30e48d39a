//! Large-coupling dark states for odd `N ≥ 5`.
//!
//! No detunings make every coefficient of the secular polynomial vanish,
//! but zeroing the two highest powers of `g` leaves only the `g⁰` term,
//! so the residual is suppressed by `g⁻⁴` relative to the surviving
//! derivative and the bounded-photon state becomes exact as `g → ∞`.

use log::{debug, warn};
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::darkstate::{secular_polynomial, ExistenceCondition};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::fock::{ModelParams, Parity};
use crate::poly::{to_f64, RationalPoint, RationalPoly, UniPoly, Var};
use crate::roots;
use crate::spectrum::{eigenpair_near, ScanConfig};

/// Couplings at which a fresh solution records its drift estimate.
pub const DRIFT_LADDER: [f64; 4] = [2.0, 4.0, 8.0, 16.0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBox {
    pub delta1: (f64, f64),
    pub delta2: (f64, f64),
}

impl Default for SearchBox {
    fn default() -> Self {
        Self {
            delta1: (0.0, 10.0),
            delta2: (0.0, 10.0),
        }
    }
}

impl SearchBox {
    fn contains(&self, d1: f64, d2: f64) -> bool {
        let tol = 1e-12;
        d1 >= self.delta1.0 - tol
            && d1 <= self.delta1.1 + tol
            && d2 >= self.delta2.0 - tol
            && d2 <= self.delta2.1 + tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonConfig {
    pub starts: usize,
    pub seed: u64,
    pub exec: Execution,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        Self {
            starts: 64,
            seed: 0x5eed_2a5e,
            exec: Execution::default(),
        }
    }
}

/// Exact squared detuning combinations, when the elimination is rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactRelations {
    pub a2: BigRational,
    pub b2: BigRational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticSolution {
    pub n: usize,
    pub parity: Parity,
    pub delta10: f64,
    pub delta20: f64,
    pub exact: Option<ExactRelations>,
    /// `(g, δΔ₁)` along [`DRIFT_LADDER`].
    pub residual_history: Vec<(f64, f64)>,
}

/// The two highest-power coefficient equations in `(A, B) = (a², b²)`.
#[derive(Debug, Clone)]
pub struct CoefficientSystem {
    pub top: RationalPoly,
    pub next: RationalPoly,
    pub top_power: u32,
}

pub fn coefficient_system(cond: &ExistenceCondition) -> Result<CoefficientSystem> {
    let coeffs = cond.squared_coefficients();
    if coeffs.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "N = {} has fewer than three coupling powers",
            cond.n
        )));
    }
    let k = coeffs.len() - 1;
    Ok(CoefficientSystem {
        top: coeffs[k].clone(),
        next: coeffs[k - 1].clone(),
        top_power: 2 * k as u32,
    })
}

fn nonnegative_roots(p: &UniPoly) -> Vec<(f64, Option<BigRational>)> {
    let c = p.to_f64_coeffs();
    roots::real_roots_in(&c, 0.0, roots::root_bound(&c))
        .into_iter()
        .map(|x| {
            let exact = p.recognize_rational_root(x, 1 << 40);
            (exact.as_ref().map(to_f64).unwrap_or(x), exact)
        })
        .collect()
}

/// Candidate `(A, B)` pairs when the top equation involves one variable.
fn eliminate(sys: &CoefficientSystem) -> Option<Vec<(f64, f64, Option<ExactRelations>)>> {
    let (fixed, free) = match (sys.top.involves(Var::A), sys.top.involves(Var::B)) {
        (false, true) => (Var::B, Var::A),
        (true, false) => (Var::A, Var::B),
        _ => return None,
    };
    let top = sys.top.to_univariate(fixed)?;
    let mut out = Vec::new();
    for (v, exact_v) in nonnegative_roots(&top) {
        let rest: Vec<(f64, Option<BigRational>)> = match &exact_v {
            Some(r) => match sys.next.substitute_value(fixed, r).to_univariate(free) {
                Some(u) if !u.is_zero() => nonnegative_roots(&u),
                _ => Vec::new(),
            },
            None => {
                let c: Vec<f64> = sys
                    .next
                    .coefficients_in(free)
                    .iter()
                    .map(|p| match fixed {
                        Var::A => p.eval_f64(v, 0.0, 0.0),
                        _ => p.eval_f64(0.0, v, 0.0),
                    })
                    .collect();
                roots::real_roots_in(&c, 0.0, roots::root_bound(&c))
                    .into_iter()
                    .map(|x| (x, None))
                    .collect()
            }
        };
        for (w, exact_w) in rest {
            let exact = match (&exact_v, exact_w) {
                (Some(x), Some(y)) => Some(if fixed == Var::A {
                    ExactRelations { a2: x.clone(), b2: y }
                } else {
                    ExactRelations { a2: y, b2: x.clone() }
                }),
                _ => None,
            };
            let (a2, b2) = if fixed == Var::A { (v, w) } else { (w, v) };
            out.push((a2, b2, exact));
        }
    }
    Some(out)
}

fn relative_residual(p: &RationalPoly, a2: f64, b2: f64) -> f64 {
    let m = p.magnitude_f64(a2, b2, 0.0);
    if m == 0.0 {
        0.0
    } else {
        p.eval_f64(a2, b2, 0.0).abs() / m
    }
}

/// Damped Newton on `(top, next)` in `(A, B)`; step halving up to 40 times.
fn newton(sys: &CoefficientSystem, start: (f64, f64)) -> Option<(f64, f64)> {
    let j = [
        [sys.top.derivative(Var::A), sys.top.derivative(Var::B)],
        [sys.next.derivative(Var::A), sys.next.derivative(Var::B)],
    ];
    let f = |x: (f64, f64)| [sys.top.eval_f64(x.0, x.1, 0.0), sys.next.eval_f64(x.0, x.1, 0.0)];
    let scaled = |x: (f64, f64)| relative_residual(&sys.top, x.0, x.1).max(relative_residual(&sys.next, x.0, x.1));
    let norm = |v: [f64; 2]| v[0].hypot(v[1]);
    let mut x = start;
    let mut fx = f(x);
    for _ in 0..100 {
        if scaled(x) < 1e-13 {
            return Some(x);
        }
        let m = [
            [j[0][0].eval_f64(x.0, x.1, 0.0), j[0][1].eval_f64(x.0, x.1, 0.0)],
            [j[1][0].eval_f64(x.0, x.1, 0.0), j[1][1].eval_f64(x.0, x.1, 0.0)],
        ];
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let step = (
            (m[1][1] * fx[0] - m[0][1] * fx[1]) / det,
            (m[0][0] * fx[1] - m[1][0] * fx[0]) / det,
        );
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..=40 {
            let y = (x.0 - t * step.0, x.1 - t * step.1);
            let fy = f(y);
            if norm(fy) < norm(fx) {
                x = y;
                fx = fy;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            return (scaled(x) < 1e-10).then_some(x);
        }
    }
    (scaled(x) < 1e-10).then_some(x)
}

fn multistart(sys: &CoefficientSystem, bx: &SearchBox, cfg: &NewtonConfig) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let starts: Vec<(f64, f64)> = (0..cfg.starts)
        .map(|_| {
            let d1 = rng.random_range(bx.delta1.0..=bx.delta1.1);
            let d2 = rng.random_range(bx.delta2.0..=bx.delta2.1);
            ((d1 - d2).powi(2), (d1 + d2).powi(2))
        })
        .collect();
    let found = exec::map(&starts, cfg.exec, |s| newton(sys, *s));
    let mut out: Vec<(f64, f64)> = Vec::new();
    for x in found.into_iter().flatten() {
        if !out
            .iter()
            .any(|y| (x.0 - y.0).abs() <= 1e-9 * y.0.abs().max(1.0) && (x.1 - y.1).abs() <= 1e-9 * y.1.abs().max(1.0))
        {
            out.push(x);
        }
    }
    out
}

/// Solutions of the two-highest-coefficient system with `Δ₁ ≥ Δ₂ ≥ 0`,
/// sorted by `Δ₁`.
pub fn solve_asymptotic(
    n: usize,
    parity: Parity,
    search_box: &SearchBox,
    newton_cfg: &NewtonConfig,
) -> Result<Vec<AsymptoticSolution>> {
    if n < 5 || n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "asymptotic solutions need odd N ≥ 5, got {n}"
        )));
    }
    let cond = secular_polynomial(n, parity)?;
    let sys = coefficient_system(&cond)?;
    let candidates = match eliminate(&sys) {
        Some(c) => c,
        None => {
            debug!("top coefficient involves both a and b; multistart Newton");
            multistart(&sys, search_box, newton_cfg)
                .into_iter()
                .map(|(a2, b2)| (a2, b2, None))
                .collect()
        }
    };
    if candidates.is_empty() {
        return Err(Error::SingularJacobian);
    }
    let drift = DriftModel::new(&cond);
    let mut out = Vec::new();
    for (a2, b2, exact) in candidates {
        let (a, b) = (a2.max(0.0).sqrt(), b2.max(0.0).sqrt());
        if a > b {
            warn!("N={n} {parity}: rejected a²={a2}, b²={b2}: |a| > |b| forces a negative detuning");
            continue;
        }
        let (d1, d2) = (0.5 * (b + a), 0.5 * (b - a));
        if !search_box.contains(d1, d2) {
            warn!("N={n} {parity}: rejected (Δ₁={d1}, Δ₂={d2}) outside the search box");
            continue;
        }
        let residual_history = DRIFT_LADDER
            .iter()
            .filter_map(|&g| drift.drift(d1, d2, g).ok().map(|x| (g, x)))
            .collect();
        out.push(AsymptoticSolution {
            n,
            parity,
            delta10: d1,
            delta20: d2,
            exact,
            residual_history,
        });
    }
    if out.is_empty() {
        return Err(Error::NoSolution(format!(
            "no admissible asymptotic solution for N={n}, {parity} parity"
        )));
    }
    out.sort_by(|x, y| x.delta10.total_cmp(&y.delta10));
    Ok(out)
}

/// Checks an exact solution in rational arithmetic: both highest-power
/// coefficients vanish identically.
pub fn verify_exact(n: usize, parity: Parity, exact: &ExactRelations) -> Result<bool> {
    let sys = coefficient_system(&secular_polynomial(n, parity)?)?;
    let pt = RationalPoint {
        a: exact.a2.clone(),
        b: exact.b2.clone(),
        g: BigRational::zero(),
    };
    Ok(sys.top.eval(&pt).is_zero() && sys.next.eval(&pt).is_zero())
}

/// First-order drift of `Δ₁` off the asymptotic point: `−F / (∂F/∂Δ₁)` with
/// `F` the secular polynomial stripped of its trivial `d²` factor.
#[derive(Debug, Clone)]
pub struct DriftModel {
    f: RationalPoly,
    df: RationalPoly,
}

impl DriftModel {
    pub fn new(cond: &ExistenceCondition) -> Self {
        let f = cond.stripped();
        let df = &f.derivative(Var::A) + &f.derivative(Var::B);
        Self { f, df }
    }

    pub fn value(&self, delta1: f64, delta2: f64, g: f64) -> f64 {
        self.f.eval_f64(delta1 - delta2, delta1 + delta2, g)
    }

    pub fn drift(&self, delta1: f64, delta2: f64, g: f64) -> Result<f64> {
        let (a, b) = (delta1 - delta2, delta1 + delta2);
        let d = self.df.eval_f64(a, b, g);
        if d == 0.0 || !d.is_finite() {
            return Err(Error::ZeroDerivative);
        }
        Ok(-self.f.eval_f64(a, b, g) / d)
    }

    /// Root of `F(·, Δ₂, g)` in `Δ₁` nearest `guess`, by safeguarded Newton.
    pub fn reroot_delta1(&self, delta2: f64, g: f64, guess: f64) -> Result<f64> {
        let mut x = guess;
        for _ in 0..200 {
            let step = self.drift(x, delta2, g)?;
            let next = x + step;
            if (next - x).abs() <= 1e-15 * x.abs().max(1.0) {
                return Ok(next);
            }
            x = next;
        }
        let (a, b) = (x - delta2, x + delta2);
        let m = self.f.magnitude_f64(a, b, g);
        if self.f.eval_f64(a, b, g).abs() <= 1e-12 * m {
            Ok(x)
        } else {
            Err(Error::NoSolution(format!("Δ₁ re-rooting did not converge from {guess}")))
        }
    }
}

pub fn delta_drift(n: usize, parity: Parity, delta10: f64, delta20: f64, g: f64) -> Result<f64> {
    if !(g > 0.0) {
        return Err(Error::InvalidParameter(format!("coupling must be positive, got {g}")));
    }
    DriftModel::new(&secular_polynomial(n, parity)?).drift(delta10, delta20, g)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderPoint {
    pub g: f64,
    #[serde(rename = "E_minus_N")]
    pub e_minus_n: f64,
    pub tail_population: f64,
    pub delta_drift: Option<f64>,
    pub cutoff: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub parity: Parity,
    pub delta10: f64,
    pub delta20: f64,
    pub ladder: Vec<LadderPoint>,
    /// `|E − Nω|` strictly decreases along the ladder.
    pub monotone: bool,
}

/// Converged diagonalization at each ladder coupling: the level nearest
/// `Nω`, its population beyond `N`, and the drift estimate.
pub fn verify_asymptotic(
    n: usize,
    parity: Parity,
    delta10: f64,
    delta20: f64,
    ladder: &[f64],
    config: &ScanConfig,
) -> Result<AsymptoticReport> {
    let drift = DriftModel::new(&secular_polynomial(n, parity)?);
    let points = exec::try_map(ladder, config.exec, |&g| -> Result<LadderPoint> {
        let params = ModelParams::symmetric(delta10, delta20, g);
        let inner = ScanConfig {
            exec: Execution::Serial,
            ..*config
        };
        let pair = eigenpair_near(&params, parity, n as f64 * params.omega, &inner)?;
        Ok(LadderPoint {
            g,
            e_minus_n: pair.energy - n as f64 * params.omega,
            tail_population: pair.tail_population(n),
            delta_drift: drift.drift(delta10, delta20, g).ok(),
            cutoff: pair.cutoff,
        })
    })?;
    let monotone = points
        .windows(2)
        .all(|w| w[1].e_minus_n.abs() < w[0].e_minus_n.abs());
    Ok(AsymptoticReport {
        n,
        parity,
        delta10,
        delta20,
        ladder: points,
        monotone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    #[test]
    fn rejects_even_or_small_n() {
        let (b, c) = (SearchBox::default(), NewtonConfig::default());
        assert!(solve_asymptotic(4, Parity::Even, &b, &c).is_err());
        assert!(solve_asymptotic(3, Parity::Even, &b, &c).is_err());
    }

    #[test]
    fn five_photon_elimination_is_exact() {
        let sols = solve_asymptotic(5, Parity::Even, &SearchBox::default(), &NewtonConfig::default()).unwrap();
        assert_eq!(sols.len(), 1);
        let exact = sols[0].exact.clone().unwrap();
        assert_eq!(exact.b2, ratio(825, 89));
        assert_eq!(exact.a2, ratio(6487, 703));
        assert!(verify_exact(5, Parity::Even, &exact).unwrap());
    }

    #[test]
    fn drift_requires_positive_coupling() {
        assert!(delta_drift(5, Parity::Even, 3.0, 0.0, 0.0).is_err());
    }
}
