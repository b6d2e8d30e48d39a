//! Real symmetric eigenproblems and null spaces.
//!
//! Parity blocks are block tridiagonal with 2×2 blocks (one block per photon
//! sector), so windowed eigenvalues come from Sturm counts plus bisection in
//! `O(cutoff)` per count, and eigenvectors from inverse iteration with a
//! pivoted band LU. The dense path (nalgebra) serves small matrices and
//! tests.
//!
//! When every coupling block has rank one (equal couplings), a rotation of
//! each sector turns the matrix into a comb: a chain with one leaf per
//! sector. Its scalar Sturm count is as stable as the tridiagonal one. The
//! general block count can lose the inertia when a Schur block is nearly
//! singular, which happens exactly at bounded-photon eigenvalues, so it is
//! only the fallback for unequal couplings.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

pub type Mat2 = [[f64; 2]; 2];

const PIVMIN: f64 = 1e-280;

/// Symmetric block-tridiagonal matrix with 2×2 blocks.
///
/// `diag[k]` is the sector-`k` block; `upper[k]` couples rows of sector `k`
/// to columns of sector `k + 1`. The lower blocks are the transposes.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockTridiagonal {
    diag: Vec<Mat2>,
    upper: Vec<Mat2>,
    comb: Option<Comb>,
}

/// Scalar comb form: chain node `k` (diagonal `chain[k]`) carries a leaf
/// (diagonal `leaf[k]`, link `link[k]`) and couples to chain node `k + 1`
/// through `bond[k]`.
#[derive(Debug, Clone, PartialEq)]
struct Comb {
    chain: Vec<f64>,
    leaf: Vec<f64>,
    link: Vec<f64>,
    bond: Vec<f64>,
    pivmin: f64,
}

fn dominant_singular(u: &Mat2) -> (f64, [f64; 2], [f64; 2]) {
    // right vector from UᵀU, left vector from U v
    let utu = mul2(&transpose2(u), u);
    let (_, vecs) = sym2_eig(&utu);
    let v = [vecs[0][1], vecs[1][1]];
    let w = mulv2(u, v);
    let s = w[0].hypot(w[1]);
    if s == 0.0 {
        return (0.0, [1.0, 0.0], v);
    }
    (s, [w[0] / s, w[1] / s], v)
}

impl Comb {
    fn detect(diag: &[Mat2], upper: &[Mat2]) -> Option<Comb> {
        if upper.is_empty() {
            return None;
        }
        let mut dirs: Vec<[f64; 2]> = Vec::with_capacity(diag.len());
        let mut right: Vec<[f64; 2]> = Vec::with_capacity(upper.len());
        for (k, u) in upper.iter().enumerate() {
            let scale = u.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
            if scale == 0.0 {
                return None;
            }
            let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
            if det.abs() > 1e-13 * scale * scale {
                return None;
            }
            let (_, l, r) = dominant_singular(u);
            if k > 0 {
                let prev: [f64; 2] = right[k - 1];
                if (prev[0] * l[0] + prev[1] * l[1]).abs() < 1.0 - 1e-12 {
                    return None;
                }
            }
            dirs.push(l);
            right.push(r);
        }
        dirs.push(right[upper.len() - 1]);
        // align signs with the incoming direction so bonds keep their sign
        for k in 1..upper.len() {
            let prev = right[k - 1];
            if prev[0] * dirs[k][0] + prev[1] * dirs[k][1] < 0.0 {
                dirs[k] = [-dirs[k][0], -dirs[k][1]];
            }
        }
        let perp = |e: [f64; 2]| [-e[1], e[0]];
        let quad = |m: &Mat2, x: [f64; 2], y: [f64; 2]| {
            let mx = mulv2(m, y);
            x[0] * mx[0] + x[1] * mx[1]
        };
        let mut comb = Comb {
            chain: Vec::with_capacity(diag.len()),
            leaf: Vec::with_capacity(diag.len()),
            link: Vec::with_capacity(diag.len()),
            bond: Vec::with_capacity(upper.len()),
            pivmin: 0.0,
        };
        for (k, d) in diag.iter().enumerate() {
            let e = dirs[k];
            let f = perp(e);
            comb.chain.push(quad(d, e, e));
            comb.leaf.push(quad(d, f, f));
            comb.link.push(quad(d, e, f));
            if k < upper.len() {
                comb.bond.push(quad(&upper[k], e, dirs[k + 1]));
            }
        }
        let big = comb
            .bond
            .iter()
            .chain(&comb.link)
            .fold(1.0f64, |m, x| m.max(x * x));
        comb.pivmin = f64::MIN_POSITIVE * big / f64::EPSILON;
        Some(comb)
    }

    fn count_below(&self, x: f64) -> usize {
        let clamp = |q: f64| if q.abs() < self.pivmin { -self.pivmin } else { q };
        let mut count = 0;
        let mut prev = 0.0;
        for k in 0..self.chain.len() {
            let ql = clamp(self.leaf[k] - x);
            count += (ql < 0.0) as usize;
            let mut qc = self.chain[k] - x - self.link[k] * self.link[k] / ql;
            if k > 0 {
                qc -= self.bond[k - 1] * self.bond[k - 1] / prev;
            }
            let qc = clamp(qc);
            count += (qc < 0.0) as usize;
            prev = qc;
        }
        count
    }
}

fn sym2_eig(m: &Mat2) -> ([f64; 2], Mat2) {
    // eigenvalues ascending, eigenvectors as columns
    let (p, q, r) = (m[0][0], m[0][1], m[1][1]);
    let mean = 0.5 * (p + r);
    let half = 0.5 * (p - r);
    let rad = half.hypot(q);
    let lo = mean - rad;
    let hi = mean + rad;
    if rad == 0.0 {
        return ([lo, hi], [[1.0, 0.0], [0.0, 1.0]]);
    }
    // eigenvector for hi: (q, hi - p) or (hi - r, q)
    let (mut x, mut y) = if half >= 0.0 { (half + rad, q) } else { (q, rad - half) };
    let n = x.hypot(y);
    x /= n;
    y /= n;
    ([lo, hi], [[-y, x], [x, y]])
}

fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

fn transpose2(a: &Mat2) -> Mat2 {
    [[a[0][0], a[1][0]], [a[0][1], a[1][1]]]
}

fn mulv2(a: &Mat2, v: [f64; 2]) -> [f64; 2] {
    [
        a[0][0] * v[0] + a[0][1] * v[1],
        a[1][0] * v[0] + a[1][1] * v[1],
    ]
}

/// Inverse of a symmetric 2×2 block through its eigen-decomposition, with
/// eigenvalues clamped away from zero. Returns the inverse and the number
/// of negative (or clamped) eigenvalues.
fn sym2_inverse_count(m: &Mat2) -> (Mat2, usize) {
    let ([l0, l1], v) = sym2_eig(m);
    let fix = |l: f64| if l.abs() < PIVMIN { -PIVMIN } else { l };
    let (l0, l1) = (fix(l0), fix(l1));
    let neg = (l0 < 0.0) as usize + (l1 < 0.0) as usize;
    let (i0, i1) = (1.0 / l0, 1.0 / l1);
    let inv = [
        [
            v[0][0] * v[0][0] * i0 + v[0][1] * v[0][1] * i1,
            v[0][0] * v[1][0] * i0 + v[0][1] * v[1][1] * i1,
        ],
        [
            v[1][0] * v[0][0] * i0 + v[1][1] * v[0][1] * i1,
            v[1][0] * v[1][0] * i0 + v[1][1] * v[1][1] * i1,
        ],
    ];
    (inv, neg)
}

impl BlockTridiagonal {
    /// `diag[k]` is the symmetric sector-`k` block; `upper[k]` couples rows
    /// of sector `k` to columns of sector `k + 1`.
    pub fn new(diag: Vec<Mat2>, upper: Vec<Mat2>) -> Self {
        assert_eq!(upper.len() + 1, diag.len().max(1), "need one coupling block per adjacent pair");
        let comb = Comb::detect(&diag, &upper);
        Self { diag, upper, comb }
    }

    pub fn diag(&self) -> &[Mat2] {
        &self.diag
    }

    pub fn upper(&self) -> &[Mat2] {
        &self.upper
    }

    /// Whether the stable comb count is in use.
    pub fn is_comb(&self) -> bool {
        self.comb.is_some()
    }

    pub fn sectors(&self) -> usize {
        self.diag.len()
    }

    pub fn dim(&self) -> usize {
        2 * self.diag.len()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for (k, d) in self.diag.iter().enumerate() {
            for i in 0..2 {
                for j in 0..2 {
                    m[(2 * k + i, 2 * k + j)] = d[i][j];
                }
            }
        }
        for (k, u) in self.upper.iter().enumerate() {
            for i in 0..2 {
                for j in 0..2 {
                    m[(2 * k + i, 2 * k + 2 + j)] = u[i][j];
                    m[(2 * k + 2 + j, 2 * k + i)] = u[i][j];
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim());
        let mut out = vec![0.0; v.len()];
        for k in 0..self.sectors() {
            let vk = [v[2 * k], v[2 * k + 1]];
            let mut acc = mulv2(&self.diag[k], vk);
            if k + 1 < self.sectors() {
                let r = mulv2(&self.upper[k], [v[2 * k + 2], v[2 * k + 3]]);
                acc[0] += r[0];
                acc[1] += r[1];
            }
            if k > 0 {
                let l = mulv2(&transpose2(&self.upper[k - 1]), [v[2 * k - 2], v[2 * k - 1]]);
                acc[0] += l[0];
                acc[1] += l[1];
            }
            out[2 * k] = acc[0];
            out[2 * k + 1] = acc[1];
        }
        out
    }

    /// Gershgorin interval containing every eigenvalue.
    pub fn gershgorin(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for k in 0..self.sectors() {
            for i in 0..2 {
                let mut r = self.diag[k][i][1 - i].abs();
                if k + 1 < self.sectors() {
                    r += self.upper[k][i][0].abs() + self.upper[k][i][1].abs();
                }
                if k > 0 {
                    r += self.upper[k - 1][0][i].abs() + self.upper[k - 1][1][i].abs();
                }
                lo = lo.min(self.diag[k][i][i] - r);
                hi = hi.max(self.diag[k][i][i] + r);
            }
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x` (Sylvester inertia of an
    /// LDLᵀ factorization of `H - x`).
    pub fn count_below(&self, x: f64) -> usize {
        if let Some(comb) = &self.comb {
            return comb.count_below(x);
        }
        let mut count = 0;
        let mut prev_inv: Option<Mat2> = None;
        for k in 0..self.sectors() {
            let mut d = self.diag[k];
            d[0][0] -= x;
            d[1][1] -= x;
            if let Some(inv) = prev_inv {
                let b = &self.upper[k - 1];
                let s = mul2(&transpose2(b), &mul2(&inv, b));
                for i in 0..2 {
                    for j in 0..2 {
                        d[i][j] -= s[i][j];
                    }
                }
                // restore exact symmetry lost to rounding
                let off = 0.5 * (d[0][1] + d[1][0]);
                d[0][1] = off;
                d[1][0] = off;
            }
            let (inv, neg) = sym2_inverse_count(&d);
            count += neg;
            prev_inv = Some(inv);
        }
        count
    }

    /// Eigenvalue with ascending index `index`, bisected to roughly machine
    /// precision inside `[lo, hi]`.
    pub fn eigenvalue_in(&self, index: usize, mut lo: f64, mut hi: f64) -> f64 {
        debug_assert!(index < self.dim());
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let tol = 2.0 * f64::EPSILON * lo.abs().max(hi.abs()).max(1.0);
            if hi - lo <= tol {
                break;
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    pub fn eigenvalue(&self, index: usize) -> f64 {
        let (lo, hi) = self.gershgorin();
        let pad = 1e-9 * (lo.abs().max(hi.abs()).max(1.0));
        self.eigenvalue_in(index, lo - pad, hi + pad)
    }

    /// Ascending eigenvalues with index in `range`.
    pub fn eigenvalues_by_index(&self, range: std::ops::Range<usize>) -> Vec<f64> {
        let (lo, hi) = self.gershgorin();
        let pad = 1e-9 * (lo.abs().max(hi.abs()).max(1.0));
        range
            .map(|i| self.eigenvalue_in(i, lo - pad, hi + pad))
            .collect()
    }

    /// Eigenvalues in `[lo, hi)` and the ascending index of the first one.
    pub fn eigenvalues_in_window(&self, lo: f64, hi: f64) -> (usize, Vec<f64>) {
        let first = self.count_below(lo);
        let end = self.count_below(hi);
        let values = (first..end)
            .map(|i| self.eigenvalue_in(i, lo, hi))
            .collect();
        (first, values)
    }

    fn shifted_band(&self, shift: f64) -> BandLu {
        let n = self.dim();
        BandLu::factor(n, 3, |i, j| {
            let (ki, kj) = (i / 2, j / 2);
            let v = if ki == kj {
                self.diag[ki][i % 2][j % 2]
            } else if kj == ki + 1 {
                self.upper[ki][i % 2][j % 2]
            } else if ki == kj + 1 {
                self.upper[kj][j % 2][i % 2]
            } else {
                0.0
            };
            if i == j {
                v - shift
            } else {
                v
            }
        })
    }

    /// Solve `(H - shift) x = rhs` by band LU with partial pivoting.
    pub fn solve_shifted(&self, shift: f64, rhs: &[f64]) -> Vec<f64> {
        self.shifted_band(shift).solve(rhs)
    }

    /// Unit eigenvector for a converged eigenvalue, by inverse iteration.
    /// Sign fixed so the largest-magnitude component is positive.
    pub fn eigenvector(&self, eigenvalue: f64) -> Vec<f64> {
        let n = self.dim();
        // deterministic start with no special alignment to any basis state
        let mut v: Vec<f64> = (0..n)
            .map(|i| 1.0 + 0.5 * ((i as f64) * 0.618_033_988_75).fract())
            .collect();
        normalize(&mut v);
        let scale = eigenvalue.abs().max(1.0);
        let lu = self.shifted_band(eigenvalue + 64.0 * f64::EPSILON * scale);
        for _ in 0..8 {
            let mut w = lu.solve(&v);
            normalize(&mut w);
            let dot: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
            v = w;
            if dot.abs() > 1.0 - 1e-15 {
                break;
            }
        }
        let imax = v
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .map(|(i, _)| i)
            .unwrap_or(0);
        if v[imax] < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        v
    }

    pub fn residual_norm(&self, v: &[f64], eigenvalue: f64) -> f64 {
        let hv = self.mul_vec(v);
        hv.iter()
            .zip(v)
            .map(|(h, x)| (h - eigenvalue * x).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// LU factorization with partial pivoting of a matrix with equal lower and
/// upper bandwidth `w`. Row `i` stores columns `i − w ..= i + 2w`.
#[derive(Debug, Clone)]
pub struct BandLu {
    n: usize,
    w: usize,
    rows: Vec<Vec<f64>>,
    perm: Vec<usize>,
}

impl BandLu {
    pub fn factor(n: usize, w: usize, entry: impl Fn(usize, usize) -> f64) -> Self {
        let width = 3 * w + 1;
        let mut rows = vec![vec![0.0; width]; n];
        let mut norm = 0.0f64;
        for (i, row) in rows.iter_mut().enumerate() {
            for j in i.saturating_sub(w)..(i + w + 1).min(n) {
                let v = entry(i, j);
                row[j + w - i] = v;
                norm = norm.max(v.abs());
            }
        }
        let tiny = f64::EPSILON * norm.max(f64::MIN_POSITIVE);
        let mut perm = Vec::with_capacity(n);
        let at = |i: usize, j: usize| j + w - i;
        for c in 0..n {
            let last = (c + w).min(n - 1);
            let p = (c..=last)
                .max_by(|&x, &y| rows[x][at(x, c)].abs().total_cmp(&rows[y][at(y, c)].abs()))
                .unwrap_or(c);
            perm.push(p);
            let jmax = (c + 2 * w).min(n - 1);
            if p != c {
                for j in c..=jmax {
                    let (a, b) = (at(c, j), at(p, j));
                    let tmp = rows[c][a];
                    rows[c][a] = rows[p][b];
                    rows[p][b] = tmp;
                }
            }
            if rows[c][at(c, c)].abs() < tiny {
                rows[c][at(c, c)] = tiny;
            }
            let piv = rows[c][at(c, c)];
            for i in c + 1..=last {
                let f = rows[i][at(i, c)] / piv;
                rows[i][at(i, c)] = f;
                if f != 0.0 {
                    for j in c + 1..=jmax {
                        let u = rows[c][at(c, j)];
                        rows[i][at(i, j)] -= f * u;
                    }
                }
            }
        }
        Self { n, w, rows, perm }
    }

    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let (n, w) = (self.n, self.w);
        let at = |i: usize, j: usize| j + w - i;
        let mut y = rhs.to_vec();
        for c in 0..n {
            y.swap(c, self.perm[c]);
            let yc = y[c];
            for i in c + 1..=(c + w).min(n - 1) {
                y[i] -= self.rows[i][at(i, c)] * yc;
            }
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for j in i + 1..=(i + 2 * w).min(n - 1) {
                s -= self.rows[i][at(i, j)] * y[j];
            }
            y[i] = s / self.rows[i][at(i, i)];
        }
        y
    }
}

pub fn normalize(v: &mut [f64]) -> f64 {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
    n
}

/// Dense symmetric eigen-decomposition, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct SymmetricSpectrum {
    pub values: Vec<f64>,
    /// Column `i` is the eigenvector of `values[i]`.
    pub vectors: Option<DMatrix<f64>>,
}

pub fn eigen_symmetric(m: &DMatrix<f64>, with_vectors: bool) -> Result<SymmetricSpectrum> {
    if m.nrows() != m.ncols() {
        return Err(Error::InvalidParameter("matrix is not square".into()));
    }
    let scale = m.amax().max(f64::MIN_POSITIVE);
    let asym = (m - m.transpose()).amax();
    if asym > 1e-13 * scale {
        return Err(Error::NotSymmetric(asym));
    }
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = with_vectors.then(|| {
        DMatrix::from_fn(m.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])])
    });
    Ok(SymmetricSpectrum { values, vectors })
}

/// Null space by Gaussian elimination with complete pivoting.
///
/// Pivots smaller than `rel_tol` times the largest pivot count as zero.
/// Returns an orthonormal basis of the null space and the ratio of the
/// smallest accepted (or largest rejected) pivot to the largest.
#[derive(Debug, Clone)]
pub struct NullSpace {
    pub basis: Vec<DVector<f64>>,
    pub rank: usize,
    /// Smallest retained pivot relative to the largest.
    pub min_pivot_ratio: f64,
}

pub fn null_space(m: &DMatrix<f64>, rel_tol: f64) -> NullSpace {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut col_perm: Vec<usize> = (0..cols).collect();
    let mut rank = 0;
    let mut first_pivot = 0.0f64;
    let mut min_ratio = 1.0f64;
    for k in 0..rows.min(cols) {
        let mut best = (k, k, 0.0f64);
        for i in k..rows {
            for j in k..cols {
                let v = a[(i, j)].abs();
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        if k == 0 {
            first_pivot = best.2;
        }
        if best.2 == 0.0 || best.2 <= rel_tol * first_pivot {
            if first_pivot > 0.0 {
                min_ratio = best.2 / first_pivot;
            }
            break;
        }
        if first_pivot > 0.0 {
            min_ratio = min_ratio.min(best.2 / first_pivot);
        }
        a.swap_rows(k, best.0);
        a.swap_columns(k, best.1);
        col_perm.swap(k, best.1);
        for i in k + 1..rows {
            let f = a[(i, k)] / a[(k, k)];
            if f != 0.0 {
                for j in k..cols {
                    let t = a[(k, j)];
                    a[(i, j)] -= f * t;
                }
            }
        }
        rank += 1;
    }
    // back-substitute each free column
    let mut basis = Vec::new();
    for free in rank..cols {
        let mut z = vec![0.0; cols];
        z[free] = 1.0;
        for k in (0..rank).rev() {
            let mut s = 0.0;
            for j in k + 1..cols {
                s += a[(k, j)] * z[j];
            }
            z[k] = -s / a[(k, k)];
        }
        let mut v = DVector::zeros(cols);
        for (pos, &orig) in col_perm.iter().enumerate() {
            v[orig] = z[pos];
        }
        basis.push(v);
    }
    // Gram-Schmidt
    let mut ortho: Vec<DVector<f64>> = Vec::new();
    for mut v in basis {
        for u in &ortho {
            let d = u.dot(&v);
            v -= u * d;
        }
        let n = v.norm();
        if n > 0.0 {
            ortho.push(v / n);
        }
    }
    NullSpace {
        basis: ortho,
        rank,
        min_pivot_ratio: min_ratio,
    }
}
