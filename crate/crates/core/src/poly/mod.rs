//! Exact multivariate polynomials in the detuning variables `a`, `b` and the
//! coupling `g`, with arbitrary-precision rational coefficients.

mod matrix;
mod univariate;

pub use matrix::PolyMatrix;
pub use univariate::{resultant, UniPoly};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// One of the three polynomial variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    A,
    B,
    G,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::A, Var::B, Var::G];

    fn slot(self) -> usize {
        match self {
            Var::A => 0,
            Var::B => 1,
            Var::G => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::A => "a",
            Var::B => "b",
            Var::G => "g",
        }
    }
}

/// Exponent triple `a^i b^j g^k`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of `a`, then `b`, then `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn of(var: Var, power: u32) -> Self {
        let mut e = [0; 3];
        e[var.slot()] = power;
        Monomial(e)
    }

    pub fn exp(&self, var: Var) -> u32 {
        self.0[var.slot()]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = [0; 3];
        for i in 0..3 {
            e[i] = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Monomial(e))
    }

    fn with(&self, var: Var, power: u32) -> Monomial {
        let mut e = self.0;
        e[var.slot()] = power;
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for var in Var::ALL {
            let e = self.exp(var);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}^{}", var.name(), e)?;
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A point at which to evaluate a polynomial exactly.
#[derive(Debug, Clone)]
pub struct RationalPoint {
    pub a: BigRational,
    pub b: BigRational,
    pub g: BigRational,
}

/// Sparse polynomial in `(a, b, g)` over the rationals.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl RationalPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn var(var: Var) -> Self {
        Self::monomial(Monomial::of(var, 1), BigRational::one())
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Graded-lex leading term.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn degree_in(&self, var: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(var)).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn involves(&self, var: Var) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    /// Every exponent of `var` is even.
    pub fn is_even_in(&self, var: Var) -> bool {
        self.terms.keys().all(|m| m.exp(var) % 2 == 0)
    }

    /// Coefficient of `var^power`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, var: Var, power: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(var) == power)
                .map(|(m, c)| (m.with(var, 0), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of `g^power`, a polynomial in `(a, b)`.
    pub fn coefficient_of_g(&self, power: u32) -> Self {
        self.coefficient_of(Var::G, power)
    }

    /// Replace `var^(2k)` by `var^k`. Returns `None` if an odd power of
    /// `var` occurs.
    pub fn deflate_squares(&self, var: Var) -> Option<Self> {
        if !self.is_even_in(var) {
            return None;
        }
        Some(Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.with(var, m.exp(var) / 2), c.clone()))
                .collect(),
        })
    }

    /// Inverse of [`deflate_squares`](Self::deflate_squares).
    pub fn inflate_squares(&self, var: Var) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.with(var, m.exp(var) * 2), c.clone()))
                .collect(),
        }
    }

    pub fn derivative(&self, var: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                out.add_term(m.with(var, e - 1), c * rat(e as i64));
            }
        }
        out
    }

    /// Substitute `var := value` (another polynomial).
    pub fn substitute(&self, var: Var, value: &RationalPoly) -> Self {
        let max = self.degree_in(var).unwrap_or(0);
        let mut powers = Vec::with_capacity(max as usize + 1);
        powers.push(Self::one());
        for k in 1..=max as usize {
            let next = &powers[k - 1] * value;
            powers.push(next);
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let rest = Self::monomial(m.with(var, 0), c.clone());
            out += &(&rest * &powers[m.exp(var) as usize]);
        }
        out
    }

    /// Simultaneous substitution of all three variables.
    pub fn substitute_all(&self, a: &RationalPoly, b: &RationalPoly, g: &RationalPoly) -> Self {
        let subs = [a, b, g];
        let mut cache: Vec<Vec<RationalPoly>> = Vec::new();
        for (i, var) in Var::ALL.iter().enumerate() {
            let max = self.degree_in(*var).unwrap_or(0) as usize;
            let mut pw = vec![Self::one()];
            for k in 1..=max {
                let next = &pw[k - 1] * subs[i];
                pw.push(next);
            }
            cache.push(pw);
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let t = &(&cache[0][m.0[0] as usize] * &cache[1][m.0[1] as usize])
                * &cache[2][m.0[2] as usize];
            out += &t.scale(c);
        }
        out
    }

    /// Substitute a rational value for one variable.
    pub fn substitute_value(&self, var: Var, value: &BigRational) -> Self {
        self.substitute(var, &Self::constant(value.clone()))
    }

    pub fn eval(&self, p: &RationalPoint) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            t *= num_traits::pow(p.a.clone(), m.0[0] as usize);
            t *= num_traits::pow(p.b.clone(), m.0[1] as usize);
            t *= num_traits::pow(p.g.clone(), m.0[2] as usize);
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, a: f64, b: f64, g: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                to_f64(c) * a.powi(m.0[0] as i32) * b.powi(m.0[1] as i32) * g.powi(m.0[2] as i32)
            })
            .sum()
    }

    /// Sum of absolute term values at a point; the scale against which
    /// cancellation in [`eval_f64`](Self::eval_f64) is judged.
    pub fn magnitude_f64(&self, a: f64, b: f64, g: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                (to_f64(c) * a.powi(m.0[0] as i32) * b.powi(m.0[1] as i32) * g.powi(m.0[2] as i32))
                    .abs()
            })
            .sum()
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &RationalPoly) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (lm, lc) = divisor.leading_term().map(|(m, c)| (*m, c.clone()))?;
        if divisor.len() == 1 {
            let mut out = Self::zero();
            for (m, c) in &self.terms {
                out.terms.insert(m.checked_div(&lm)?, c / &lc);
            }
            return Some(out);
        }
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (*m, c.clone())) {
            let qm = m.checked_div(&lm)?;
            let qc = &c / &lc;
            let step = Self::monomial(qm, qc.clone());
            rem -= &(&step * divisor);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients.
    pub fn content(&self) -> BigRational {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return BigRational::one();
        }
        BigRational::new(num_gcd, den_lcm)
    }

    /// Integer coefficients with gcd one and a positive graded-lex leading
    /// coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading_term().map(|(_, v)| v.is_negative()).unwrap_or(false) {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Largest `k` with `var^k` dividing every term.
    pub fn min_power(&self, var: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).min().unwrap_or(0)
    }

    /// Strip the largest power of `var` that divides the polynomial.
    pub fn strip_power(&self, var: Var) -> (u32, Self) {
        let k = self.min_power(var);
        let out = Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.with(var, m.exp(var) - k), c.clone()))
                .collect(),
        };
        (k, out)
    }

    /// Dense coefficient list in `var`, each entry a polynomial in the
    /// remaining variables.
    pub fn coefficients_in(&self, var: Var) -> Vec<RationalPoly> {
        let deg = self.degree_in(var).unwrap_or(0);
        (0..=deg).map(|k| self.coefficient_of(var, k)).collect()
    }

    /// View as a univariate polynomial in `var`; `None` if another variable
    /// occurs.
    pub fn to_univariate(&self, var: Var) -> Option<UniPoly> {
        if Var::ALL.iter().any(|v| *v != var && self.involves(*v)) {
            return None;
        }
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for (m, c) in &self.terms {
            coeffs[m.exp(var) as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn from_univariate(p: &UniPoly, var: Var) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::of(var, k as u32), c.clone())),
        )
    }

    /// Canonical text rendering, one term per line in descending graded-lex
    /// order: `c * a^i b^j g^k`.
    pub fn render_lines(&self) -> Vec<String> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| {
                if *m == Monomial::ONE {
                    format!("{c}")
                } else {
                    format!("{c} * {m}")
                }
            })
            .collect()
    }
}

pub fn to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        // ratio of huge integers; scale down before converting
        let n = c.numer().bits() as i64;
        let d = c.denom().bits() as i64;
        let shift = (n.max(d) - 900).max(0) as usize;
        let nn = (c.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let dd = (c.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        nn / dd
    })
}

/// Exact rational value of a finite `f64`.
pub fn from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag} {m}")?;
            }
        }
        Ok(())
    }
}

impl AddAssign<&RationalPoly> for RationalPoly {
    fn add_assign(&mut self, rhs: &RationalPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&RationalPoly> for RationalPoly {
    fn sub_assign(&mut self, rhs: &RationalPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for RationalPoly {
    type Output = RationalPoly;
    fn add(mut self, rhs: RationalPoly) -> RationalPoly {
        self += &rhs;
        self
    }
}

impl Sub for RationalPoly {
    type Output = RationalPoly;
    fn sub(mut self, rhs: RationalPoly) -> RationalPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        -&self
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        let mut out = RationalPoly::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: RationalPoly) -> RationalPoly {
        &self * &rhs
    }
}
