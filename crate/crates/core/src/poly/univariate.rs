use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{to_f64, PolyMatrix, RationalPoly, Var};

/// Dense univariate polynomial over the rationals, coefficients ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) => Self::new(self.coeffs.iter().map(|c| c / lc).collect()),
        }
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        let lc = d.coeffs.last().unwrap().clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let q = &r[top] / &lc;
            if !q.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    r[top - dd + i] -= &q * c;
                }
            }
            r.pop();
            while r.last().map(|c| c.is_zero()).unwrap_or(false) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut x = self.clone();
        let mut y = other.clone();
        while !y.is_zero() {
            let r = x.rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    /// Exact rational root closest to `approx`, if one exists with a
    /// denominator no larger than `max_den`.
    pub fn recognize_rational_root(&self, approx: f64, max_den: u64) -> Option<BigRational> {
        continued_fraction_convergents(approx, max_den)
            .into_iter()
            .find(|c| self.eval(c).is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }
}

fn continued_fraction_convergents(x: f64, max_den: u64) -> Vec<BigRational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut frac = x;
    for _ in 0..64 {
        let ai = frac.floor();
        let a = BigInt::from(ai as i64);
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if k2 > BigInt::from(max_den) {
            break;
        }
        out.push(BigRational::new(h2.clone(), k2.clone()));
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let rem = frac - ai;
        if rem.abs() < 1e-18 {
            break;
        }
        frac = 1.0 / rem;
    }
    out
}

/// Resultant of `p` and `q` with respect to `var`, via the Sylvester matrix.
pub fn resultant(p: &RationalPoly, q: &RationalPoly, var: Var) -> RationalPoly {
    let pc = p.coefficients_in(var);
    let qc = q.coefficients_in(var);
    let m = pc.len() - 1;
    let n = qc.len() - 1;
    if m == 0 && n == 0 {
        return RationalPoly::one();
    }
    if m == 0 {
        return pc[0].pow(n as u32);
    }
    if n == 0 {
        return qc[0].pow(m as u32);
    }
    let dim = m + n;
    let mut syl = PolyMatrix::zeros(dim);
    // rows hold descending coefficients, shifted
    for r in 0..n {
        for (k, c) in pc.iter().rev().enumerate() {
            syl.set(r, r + k, c.clone());
        }
    }
    for r in 0..m {
        for (k, c) in qc.iter().rev().enumerate() {
            syl.set(n + r, r + k, c.clone());
        }
    }
    syl.bareiss_determinant()
}
