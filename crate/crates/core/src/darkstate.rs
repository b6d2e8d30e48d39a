//! Dark states: eigenstates with at most `N` photons and energy `Nω`.
//!
//! Plugging the bounded-photon ansatz into `(H − N)ψ = 0` gives more
//! equations than unknowns. The two equations of sector `N + 1` force
//! `g₁ = g₂ = g` and `c_{N,a} = −c_{N,b}`; with `E = N` the two sector-`N`
//! rows differ only by `d (c_{N,a} + c_{N,b})`, where `d` is the sector-`N`
//! detuning (`a` or `b`). What remains is a square system in the `2N + 2`
//! amplitudes of sectors `0..=N`.
//!
//! The secular polynomial is `d · det(M)`, equivalently the determinant of
//! the `N`-truncated block shifted by `N`. All energies are in units of ω.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{block_basis, build_parity_block, BasisState, ModelParams, Parity, QubitPair};
use crate::linalg::null_space;
use crate::poly::{resultant, to_f64, PolyMatrix, RationalPoly, UniPoly, Var};
use crate::roots;

/// Rank tolerance for null-space extraction, relative to the largest pivot.
pub const NULL_SPACE_TOL: f64 = 1e-9;

/// Relative size below which an evaluated coefficient counts as zero.
pub const VANISHING_TOL: f64 = 1e-10;

fn detuning(pair: QubitPair) -> (Var, i64) {
    match pair {
        QubitPair::UpUp => (Var::B, 1),
        QubitPair::DownDown => (Var::B, -1),
        QubitPair::UpDown => (Var::A, 1),
        QubitPair::DownUp => (Var::A, -1),
    }
}

/// Square coefficient matrix of the bounded-photon ansatz.
#[derive(Debug, Clone)]
pub struct SecularMatrix {
    pub n: usize,
    pub parity: Parity,
    /// Columns: amplitudes of `basis`, sectors `0..=N`.
    pub basis: Vec<BasisState>,
    /// Rationalized form: sector-`r` rows scaled by `1/√r!`, sector-`c`
    /// columns by `√c!` (the constraint row counts as sector `N`).
    pub matrix: PolyMatrix,
    /// The variable multiplying the first sector-`N` amplitude.
    pub last_detuning: Var,
}

pub fn build_secular_matrix(n: usize, parity: Parity) -> Result<SecularMatrix> {
    if n < 1 {
        return Err(Error::InvalidParameter("photon bound N must be at least 1".into()));
    }
    let basis = block_basis(parity, n);
    let dim = 2 * n + 2;
    let g = RationalPoly::var(Var::G);
    // unit couplings mark which transitions σ₁ₓ + σ₂ₓ connects
    let unit = ModelParams::symmetric(0.0, 0.0, 1.0);
    let mut m = PolyMatrix::zeros(dim);
    // rows 0..2N+1 are the Hamiltonian rows; the last is the constraint
    for row in 0..dim - 1 {
        let rs = basis[row];
        let (var, sign) = detuning(rs.pair());
        let diag = &RationalPoly::int(rs.n as i64 - n as i64)
            + &RationalPoly::var(var).scale(&crate::poly::rat(sign));
        m.set(row, row, diag);
        for (col, cs) in basis.iter().enumerate() {
            if cs.n == rs.n + 1 {
                let w = unit.raising_element(rs.n, (rs.s1, rs.s2), (cs.s1, cs.s2));
                if w != 0.0 {
                    // √(n+1) · √((n+1)!/n!) = n + 1
                    m.set(row, col, g.scale(&crate::poly::rat(cs.n as i64)));
                }
            } else if cs.n + 1 == rs.n {
                let w = unit.raising_element(cs.n, (cs.s1, cs.s2), (rs.s1, rs.s2));
                if w != 0.0 {
                    m.set(row, col, g.clone());
                }
            }
        }
    }
    m.set(dim - 1, dim - 2, RationalPoly::one());
    m.set(dim - 1, dim - 1, RationalPoly::one());
    let last_detuning = detuning(basis[dim - 2].pair()).0;
    Ok(SecularMatrix {
        n,
        parity,
        basis,
        matrix: m,
        last_detuning,
    })
}

fn factorial_sqrt(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).sqrt()).product()
}

impl SecularMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Numeric matrix without the rationalizing scale: the literal
    /// coefficient matrix acting on the amplitudes.
    pub fn unscaled(&self, a: f64, b: f64, g: f64) -> DMatrix<f64> {
        let rational = self.matrix.eval_f64(a, b, g);
        let dim = self.dim();
        DMatrix::from_fn(dim, dim, |i, j| {
            let r = self.basis[i].n;
            let c = self.basis[j].n;
            rational[(i, j)] * factorial_sqrt(r) / factorial_sqrt(c)
        })
    }

    /// `∏ row scales × ∏ column scales`; relates `det(rationalized)` to
    /// `det(unscaled)`.
    pub fn scale_product(&self) -> f64 {
        self.basis
            .iter()
            .map(|s| factorial_sqrt(s.n) / factorial_sqrt(s.n))
            .product()
    }

    pub fn determinant(&self) -> RationalPoly {
        self.matrix.bareiss_determinant()
    }
}

/// Existence condition for an `N`-photon dark state of one parity.
#[derive(Debug, Clone)]
pub struct ExistenceCondition {
    pub n: usize,
    pub parity: Parity,
    /// Primitive secular polynomial in `(a, b, g)`.
    pub secular: RationalPoly,
    /// Sector-`N` detuning `d`; `d = 0` solves the condition for every `g`.
    pub last_detuning: Var,
}

pub fn secular_polynomial(n: usize, parity: Parity) -> Result<ExistenceCondition> {
    let sm = build_secular_matrix(n, parity)?;
    let det = sm.determinant();
    let full = &det * &RationalPoly::var(sm.last_detuning);
    Ok(ExistenceCondition {
        n,
        parity,
        secular: full.primitive_part(),
        last_detuning: sm.last_detuning,
    })
}

/// Outcome of solving the existence condition for `g` at fixed detunings.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CouplingSolutions {
    /// Positive couplings solving the condition, ascending.
    Roots { roots: Vec<f64> },
    /// The sector-`N` detuning vanishes (e.g. `Δ₁ = Δ₂` for odd `N` in even
    /// parity): a trivial singlet/triplet state at sector `N` alone exists
    /// for every coupling.
    DegenerateFamily,
    /// The condition holds for every coupling: a g-independent dark state.
    AllCouplings,
}

impl ExistenceCondition {
    /// Coefficients of `x = g²`, evaluated at `(a, b)`, with their
    /// cancellation scales.
    fn x_coefficients(&self, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
        let deg = self.secular.degree_in(Var::G).unwrap_or(0) / 2;
        (0..=deg)
            .map(|k| {
                let c = self.secular.coefficient_of_g(2 * k);
                (c.eval_f64(a, b, 0.0), c.magnitude_f64(a, b, 0.0))
            })
            .unzip()
    }

    /// The secular polynomial with every factor of `d²` removed.
    pub fn stripped(&self) -> RationalPoly {
        self.secular.strip_power(self.last_detuning).1
    }

    /// Coefficients of `g⁰, g², g⁴, …` of [`stripped`](Self::stripped), as
    /// polynomials in `A = a²` (slot `a`) and `B = b²` (slot `b`).
    pub fn squared_coefficients(&self) -> Vec<RationalPoly> {
        let s = self.stripped();
        let deg = s.degree_in(Var::G).unwrap_or(0);
        (0..=deg)
            .step_by(2)
            .map(|k| {
                s.coefficient_of_g(k)
                    .deflate_squares(Var::A)
                    .and_then(|p| p.deflate_squares(Var::B))
                    .expect("secular polynomials are even in a and b")
            })
            .collect()
    }

    pub fn couplings(&self, delta1: f64, delta2: f64) -> Result<CouplingSolutions> {
        if !delta1.is_finite() || !delta2.is_finite() {
            return Err(Error::InvalidParameter("detunings must be finite".into()));
        }
        let (a, b) = (delta1 - delta2, delta1 + delta2);
        let (coeffs, mags) = self.x_coefficients(a, b);
        let vanishes = coeffs
            .iter()
            .zip(&mags)
            .all(|(c, m)| c.abs() <= VANISHING_TOL * m.max(f64::MIN_POSITIVE) || *m == 0.0);
        if vanishes {
            let d = match self.last_detuning {
                Var::A => a,
                _ => b,
            };
            if d.abs() <= 1e-12 * (a.abs() + b.abs()).max(1.0) {
                return Ok(CouplingSolutions::DegenerateFamily);
            }
            return Ok(CouplingSolutions::AllCouplings);
        }
        let bound = roots::root_bound(&coeffs);
        let mut out: Vec<f64> = roots::real_roots_in(&coeffs, 0.0, bound)
            .into_iter()
            .filter(|x| *x > 0.0)
            .map(|x| roots::polish(&coeffs, x).sqrt())
            .collect();
        out.sort_by(f64::total_cmp);
        out.dedup_by(|x, y| (*x - *y).abs() <= 1e-12 * y.abs());
        Ok(CouplingSolutions::Roots { roots: out })
    }

    /// `|P(a, b, g)| / Σ|terms|`.
    pub fn relative_residual(&self, delta1: f64, delta2: f64, g: f64) -> f64 {
        let (a, b) = (delta1 - delta2, delta1 + delta2);
        let v = self.secular.eval_f64(a, b, g);
        let m = self.secular.magnitude_f64(a, b, g);
        if m == 0.0 {
            0.0
        } else {
            v.abs() / m
        }
    }
}

pub fn existence_g(n: usize, parity: Parity, delta1: f64, delta2: f64) -> Result<CouplingSolutions> {
    secular_polynomial(n, parity)?.couplings(delta1, delta2)
}

/// One amplitude `c_{n,pair}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Amplitude {
    pub n: usize,
    pub pair: QubitPair,
    pub amplitude: f64,
}

/// Normalized eigenstate with support on photon sectors `0..=N` and energy
/// `Nω`. The second sector-`N` amplitude is positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DarkState {
    #[serde(rename = "N")]
    pub n: usize,
    pub parity: Parity,
    pub energy: f64,
    pub coefficients: Vec<Amplitude>,
}

impl DarkState {
    fn from_vector(n: usize, parity: Parity, basis: &[BasisState], v: &[f64]) -> Self {
        let mut v = v.to_vec();
        crate::linalg::normalize(&mut v);
        let last = v[v.len() - 1];
        let flip = if last != 0.0 {
            last < 0.0
        } else {
            let imax = v
                .iter()
                .enumerate()
                .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
                .map(|(i, _)| i)
                .unwrap_or(0);
            v[imax] < 0.0
        };
        if flip {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        let coefficients = basis
            .iter()
            .zip(&v)
            .map(|(s, &amplitude)| Amplitude {
                n: s.n,
                pair: s.pair(),
                amplitude,
            })
            .collect();
        Self {
            n,
            parity,
            energy: n as f64,
            coefficients,
        }
    }

    pub fn amplitude(&self, n: usize, pair: QubitPair) -> f64 {
        self.coefficients
            .iter()
            .find(|c| c.n == n && c.pair == pair)
            .map(|c| c.amplitude)
            .unwrap_or(0.0)
    }

    pub fn norm(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|c| c.amplitude * c.amplitude)
            .sum::<f64>()
            .sqrt()
    }

    /// Embed into the basis of the parity block with the given cutoff.
    pub fn to_block_vector(&self, cutoff: usize) -> Result<DVector<f64>> {
        if cutoff < self.n {
            return Err(Error::InvalidParameter(format!(
                "cutoff {cutoff} below the photon bound {}",
                self.n
            )));
        }
        let basis = block_basis(self.parity, cutoff);
        let mut v = DVector::zeros(basis.len());
        for c in &self.coefficients {
            let k = QubitPair::sector(self.parity, c.n)
                .iter()
                .position(|p| *p == c.pair)
                .ok_or_else(|| Error::InvalidParameter("amplitude outside the parity block".into()))?;
            v[2 * c.n + k] = c.amplitude;
        }
        Ok(v)
    }

    /// `‖(H − Nω)ψ‖` in the truncated block.
    pub fn residual(&self, params: &ModelParams, cutoff: usize) -> Result<f64> {
        let block = build_parity_block(params, self.parity, cutoff)?;
        let v = self.to_block_vector(cutoff)?;
        Ok(block
            .matrix
            .residual_norm(v.as_slice(), self.energy * params.omega))
    }

    pub fn overlap(&self, other: &DarkState) -> f64 {
        self.coefficients
            .iter()
            .map(|c| c.amplitude * other.amplitude(c.n, c.pair))
            .sum()
    }

    /// Photon-number distribution `P(n)`, `n = 0..=N`.
    pub fn populations(&self) -> Vec<(usize, f64)> {
        let mut p = vec![0.0; self.n + 1];
        for c in &self.coefficients {
            p[c.n] += c.amplitude * c.amplitude;
        }
        p.into_iter().enumerate().collect()
    }
}

/// Rank-one projector onto a dark state, embedded in the parity block.
pub fn symmetry_projector(state: &DarkState, cutoff: usize) -> Result<DMatrix<f64>> {
    crate::fock::symmetry_projector(&state.to_block_vector(cutoff)?)
}

/// Null vector of the secular system at a root of the existence condition.
pub fn dark_state_vector(
    n: usize,
    parity: Parity,
    delta1: f64,
    delta2: f64,
    g: f64,
) -> Result<DarkState> {
    let sm = build_secular_matrix(n, parity)?;
    let m = sm.unscaled(delta1 - delta2, delta1 + delta2, g);
    let ns = null_space(&m, NULL_SPACE_TOL);
    match ns.basis.len() {
        0 => Err(Error::NotSingular(ns.min_pivot_ratio)),
        1 => Ok(DarkState::from_vector(n, parity, &sm.basis, ns.basis[0].as_slice())),
        k => Err(Error::DegenerateNullSpace(k)),
    }
}

/// Detunings `(Δ₁, Δ₂)` at which the `N = 3` even-parity dark state exists
/// for every coupling: `b = √(21/5)`, `a = −2`.
pub fn special_n3_detunings() -> (f64, f64) {
    let r = (21.0f64 / 5.0).sqrt();
    (0.5 * (r - 2.0), 0.5 * (r + 2.0))
}

/// Closed-form `N = 3` g-independent dark state at [`special_n3_detunings`].
pub fn special_dark_state(g: f64) -> Result<DarkState> {
    if !(g > 0.0) || !g.is_finite() {
        return Err(Error::InvalidParameter(format!("coupling must be positive, got {g}")));
    }
    let (s2, s3, s35, s105, s210) = (
        2f64.sqrt(),
        3f64.sqrt(),
        35f64.sqrt(),
        105f64.sqrt(),
        210f64.sqrt(),
    );
    let k = 5.0 * s3 - s35;
    let amps = [
        (0, QubitPair::UpUp, 8.0 * s2 / (15.0 * s3 * g - 3.0 * s35 * g)),
        (0, QubitPair::DownDown, (270.0 * s2 - 26.0 * s210) / (165.0 * s3 * g - 45.0 * s35 * g)),
        (1, QubitPair::UpDown, 0.0),
        (1, QubitPair::DownUp, s2 * (s105 - 5.0) * (s105 - 3.0) / (15.0 * k * g * g)),
        (2, QubitPair::UpUp, -2.0 * (s105 - 3.0) / (3.0 * k * g)),
        (2, QubitPair::DownDown, 4.0 * (s105 - 9.0) / (3.0 * k * g)),
        (3, QubitPair::UpDown, -1.0),
        (3, QubitPair::DownUp, 1.0),
    ];
    let basis: Vec<BasisState> = amps
        .iter()
        .map(|(n, p, _)| {
            let (s1, s2) = p.spins();
            BasisState::new(*n, s1, s2)
        })
        .collect();
    let v: Vec<f64> = amps.iter().map(|x| x.2).collect();
    Ok(DarkState::from_vector(3, Parity::Even, &basis, &v))
}

/// Candidate `(a², b²)` pair from the g-independent elimination.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    pub a2: f64,
    pub b2: f64,
    /// Exact values as `"p/q"` when recognized as rationals.
    pub exact: Option<(String, String)>,
    pub rejected: Option<String>,
}

/// Why no g-independent solution exists, with the checked evidence.
#[derive(Debug, Clone, PartialEq)]
pub enum Absence {
    /// After removing the `d²` factor, the coefficient of `g^power` is a
    /// nonzero constant; `coefficient` is the full coefficient (`c · d²`).
    ConstantCoefficient { g_power: u32, coefficient: RationalPoly },
    /// Common roots exist only outside `|b| ≥ |a|` or off the real line.
    Inadmissible { candidates: Vec<Candidate> },
    /// The gcd of all eliminants in `var²` is a nonzero constant.
    NoCommonRoot { var: Var, eliminants: Vec<UniPoly>, gcd: UniPoly },
    /// Eliminants share roots, but no pair makes every coefficient vanish.
    NoJointRoot { candidates: Vec<Candidate> },
}

#[derive(Debug, Clone, PartialEq)]
pub enum GIndependent {
    /// Admissible `(Δ₁, Δ₂)` pairs with `Δ₁, Δ₂ ≥ 0`.
    Solutions { pairs: Vec<(f64, f64)>, candidates: Vec<Candidate> },
    /// Only one relation constrains `(a², b²)`: a one-parameter family.
    Family { relation: RationalPoly },
    Absent(Absence),
}

impl fmt::Display for GIndependent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GIndependent::Solutions { pairs, .. } => {
                write!(f, "g-independent solutions:")?;
                for (d1, d2) in pairs {
                    write!(f, " (Δ₁={d1:.10}, Δ₂={d2:.10})")?;
                }
                Ok(())
            }
            GIndependent::Family { relation } => {
                write!(f, "one-parameter family: {relation} = 0 (a→a², b→b²)")
            }
            GIndependent::Absent(Absence::ConstantCoefficient { g_power, coefficient }) => write!(
                f,
                "absent: coefficient of g^{g_power} is {coefficient}, nonzero off the trivial family"
            ),
            GIndependent::Absent(Absence::Inadmissible { candidates }) => {
                write!(f, "absent: every common root violates |b| ≥ |a|:")?;
                for c in candidates {
                    write!(f, " (a²={:.10}, b²={:.10})", c.a2, c.b2)?;
                }
                Ok(())
            }
            GIndependent::Absent(Absence::NoCommonRoot { var, gcd, .. }) => write!(
                f,
                "absent: gcd of eliminants in {}² is the constant {}",
                var.name(),
                gcd.coeffs().first().map(|c| c.to_string()).unwrap_or_default()
            ),
            GIndependent::Absent(Absence::NoJointRoot { candidates }) => write!(
                f,
                "absent: {} candidate pairs checked, none zero every coefficient",
                candidates.len()
            ),
        }
    }
}

fn eliminant_gcd(polys: &[RationalPoly], keep: Var, drop: Var) -> (Vec<UniPoly>, Option<UniPoly>) {
    let mut eliminants = Vec::new();
    for p in polys.iter().filter(|p| !p.involves(drop)) {
        if let Some(u) = p.to_univariate(keep) {
            eliminants.push(u);
        }
    }
    let with_drop: Vec<&RationalPoly> = polys.iter().filter(|p| p.involves(drop)).collect();
    for i in 0..with_drop.len() {
        for j in i + 1..with_drop.len() {
            let r = resultant(with_drop[i], with_drop[j], drop);
            if let Some(u) = r.to_univariate(keep) {
                eliminants.push(u);
            }
        }
    }
    let mut gcd: Option<UniPoly> = None;
    for e in &eliminants {
        gcd = Some(match gcd {
            None => e.gcd(&UniPoly::new(Vec::new())),
            Some(g) => g.gcd(e),
        });
    }
    (eliminants, gcd)
}

fn nonnegative_roots(p: &UniPoly) -> Vec<(f64, Option<BigRational>)> {
    let c = p.to_f64_coeffs();
    let bound = roots::root_bound(&c);
    roots::real_roots_in(&c, -1e-12, bound)
        .into_iter()
        .map(|x| {
            let exact = p.recognize_rational_root(x, 1 << 40);
            let x = exact.as_ref().map(to_f64).unwrap_or(x.max(0.0));
            (x, exact)
        })
        .collect()
}

/// Search for detunings making the existence condition hold for every `g`:
/// all coefficients of `g^{2k}` must vanish simultaneously.
pub fn g_independent_search(n: usize, parity: Parity) -> Result<GIndependent> {
    let cond = secular_polynomial(n, parity)?;
    let coeffs: Vec<RationalPoly> = cond
        .squared_coefficients()
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    if let Some(k) = cond
        .squared_coefficients()
        .iter()
        .rposition(|c| c.is_constant() && !c.is_zero())
    {
        let g_power = 2 * k as u32;
        return Ok(GIndependent::Absent(Absence::ConstantCoefficient {
            g_power,
            coefficient: cond.secular.coefficient_of_g(g_power),
        }));
    }
    let (b_elims, b_gcd) = eliminant_gcd(&coeffs, Var::B, Var::A);
    let (a_elims, a_gcd) = eliminant_gcd(&coeffs, Var::A, Var::B);
    let (b_gcd, a_gcd) = match (b_gcd, a_gcd) {
        (Some(b), Some(a)) => (b, a),
        _ => {
            return Ok(GIndependent::Family {
                relation: coeffs.into_iter().next().unwrap_or_default(),
            })
        }
    };
    if b_gcd.is_constant() {
        return Ok(GIndependent::Absent(Absence::NoCommonRoot {
            var: Var::B,
            eliminants: b_elims,
            gcd: b_gcd,
        }));
    }
    if a_gcd.is_constant() {
        return Ok(GIndependent::Absent(Absence::NoCommonRoot {
            var: Var::A,
            eliminants: a_elims,
            gcd: a_gcd,
        }));
    }
    let mut joint = Vec::new();
    let mut checked = Vec::new();
    for (bv, bx) in nonnegative_roots(&b_gcd) {
        for (av, ax) in nonnegative_roots(&a_gcd) {
            let exact = match (&ax, &bx) {
                (Some(ax), Some(bx)) => Some((ax.clone(), bx.clone())),
                _ => None,
            };
            let vanishes = match &exact {
                Some((ax, bx)) => coeffs.iter().all(|c| {
                    c.eval(&crate::poly::RationalPoint {
                        a: ax.clone(),
                        b: bx.clone(),
                        g: BigRational::zero(),
                    })
                    .is_zero()
                }),
                None => coeffs.iter().all(|c| {
                    c.eval_f64(av, bv, 0.0).abs() <= 1e-9 * c.magnitude_f64(av, bv, 0.0)
                }),
            };
            let cand = Candidate {
                a2: av,
                b2: bv,
                exact: exact.map(|(a, b)| (a.to_string(), b.to_string())),
                rejected: None,
            };
            if vanishes {
                joint.push(cand);
            } else {
                checked.push(cand);
            }
        }
    }
    if joint.is_empty() {
        return Ok(GIndependent::Absent(Absence::NoJointRoot { candidates: checked }));
    }
    let mut pairs = Vec::new();
    for cand in joint.iter_mut() {
        let (a_abs, b) = (cand.a2.sqrt(), cand.b2.sqrt());
        if a_abs > b {
            cand.rejected = Some(format!(
                "|a| = {a_abs:.10} exceeds |b| = {b:.10}; Δ₁, Δ₂ ≥ 0 requires |b| ≥ |a|"
            ));
            continue;
        }
        for a in [a_abs, -a_abs] {
            let pair = (0.5 * (b + a), 0.5 * (b - a));
            if !pairs
                .iter()
                .any(|p: &(f64, f64)| (p.0 - pair.0).abs() < 1e-14 && (p.1 - pair.1).abs() < 1e-14)
            {
                pairs.push(pair);
            }
        }
    }
    if pairs.is_empty() {
        return Ok(GIndependent::Absent(Absence::Inadmissible { candidates: joint }));
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    Ok(GIndependent::Solutions {
        pairs,
        candidates: joint,
    })
}

/// `true` when `c` is a nonzero rational multiple of `var²`.
pub fn is_multiple_of_square(c: &RationalPoly, var: Var) -> bool {
    c.len() == 1
        && c
            .leading_term()
            .map(|(m, v)| {
                m.exp(var) == 2 && m.degree() == 2 && !v.is_zero() && (v.is_positive() || v.is_negative())
            })
            .unwrap_or(false)
}
