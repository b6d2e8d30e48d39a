use nalgebra::DMatrix;
use num_rational::BigRational;

use super::{RationalPoint, RationalPoly, Var};

/// Square matrix of exact polynomials, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    dim: usize,
    entries: Vec<RationalPoly>,
}

impl PolyMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![RationalPoly::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, RationalPoly::one());
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> RationalPoly) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalPoly {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: RationalPoly) {
        self.entries[i * self.dim + j] = p;
    }

    pub fn map(&self, f: impl Fn(&RationalPoly) -> RationalPoly) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn substitute_all(&self, a: &RationalPoly, b: &RationalPoly, g: &RationalPoly) -> Self {
        self.map(|p| p.substitute_all(a, b, g))
    }

    pub fn eval_f64(&self, a: f64, b: f64, g: f64) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| self.get(i, j).eval_f64(a, b, g))
    }

    pub fn eval(&self, p: &RationalPoint) -> Vec<Vec<BigRational>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).eval(p)).collect())
            .collect()
    }

    pub fn involves(&self, var: Var) -> bool {
        self.entries.iter().any(|p| p.involves(var))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// After step `k` every remaining entry equals a `(k+1)`-minor of the
    /// input, so each division by the previous pivot is exact.
    pub fn bareiss_determinant(&self) -> RationalPoly {
        let n = self.dim;
        if n == 0 {
            return RationalPoly::one();
        }
        let mut m: Vec<Vec<RationalPoly>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = RationalPoly::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                // sparsest nonzero candidate keeps intermediate swell down
                let swap = (k + 1..n)
                    .filter(|&i| !m[i][k].is_zero())
                    .min_by_key(|&i| m[i][k].len());
                match swap {
                    Some(i) => {
                        m.swap(i, k);
                        negate = !negate;
                    }
                    None => return RationalPoly::zero(),
                }
            }
            let (head, tail) = m.split_at_mut(k + 1);
            let pivot_row = &head[k];
            let pivot = &pivot_row[k];
            for row in tail.iter_mut() {
                let lead = row[k].clone();
                for j in k + 1..n {
                    let mut num = &row[j] * pivot;
                    if !lead.is_zero() && !pivot_row[j].is_zero() {
                        num -= &(&lead * &pivot_row[j]);
                    }
                    row[j] = if prev.is_constant() {
                        let c = prev.coeff(&super::Monomial::ONE);
                        num.scale(&num_traits::Inv::inv(c))
                    } else {
                        num.div_exact(&prev)
                            .expect("Bareiss division must be exact")
                    };
                }
                row[k] = RationalPoly::zero();
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if negate {
            -det
        } else {
            det
        }
    }

    /// Exact determinant by Laplace expansion along the first row.
    ///
    /// Exponential cost; kept as an independent check for small matrices.
    pub fn cofactor_determinant(&self) -> RationalPoly {
        let rows: Vec<usize> = (0..self.dim).collect();
        let cols: Vec<usize> = (0..self.dim).collect();
        self.minor_det(&rows, &cols)
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> RationalPoly {
        match rows.len() {
            0 => RationalPoly::one(),
            1 => self.get(rows[0], cols[0]).clone(),
            _ => {
                let mut acc = RationalPoly::zero();
                let r = rows[0];
                for (idx, &c) in cols.iter().enumerate() {
                    let entry = self.get(r, c);
                    if entry.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> =
                        cols.iter().copied().filter(|&x| x != c).collect();
                    let term = entry * &self.minor_det(&rows[1..], &sub_cols);
                    if idx % 2 == 0 {
                        acc += &term;
                    } else {
                        acc -= &term;
                    }
                }
                acc
            }
        }
    }

    /// Multiply row `i` by `factor`.
    pub fn scale_row(&mut self, i: usize, factor: &RationalPoly) {
        for j in 0..self.dim {
            let v = self.get(i, j) * factor;
            self.set(i, j, v);
        }
    }
}
