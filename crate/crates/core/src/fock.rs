//! Truncated two-qubit Rabi Hamiltonian and its parity blocks.
//!
//! Basis states are `|n, s₁, s₂⟩` with `σz|↑⟩ = +|↑⟩`. The parity
//! `exp(iπ a†a) σ₁z σ₂z` commutes with `H`, so each parity block is built
//! on its own. Within a block, photon sector `n` holds two states, ordered
//! `(↑↑, ↓↓)` when `parity · (−1)ⁿ = +1` and `(↑↓, ↓↑)` otherwise.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{BlockTridiagonal, Mat2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn sign(self) -> i32 {
        match self {
            Spin::Up => 1,
            Spin::Down => -1,
        }
    }

    pub fn flip(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> i32 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn from_sign(s: i32) -> Parity {
        if s > 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "even" | "+" | "+1" => Ok(Parity::Even),
            "odd" | "-" | "-1" => Ok(Parity::Odd),
            _ => Err(Error::InvalidParity(s.to_string())),
        }
    }
}

/// Ordered qubit pair within a photon sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QubitPair {
    #[serde(rename = "uu")]
    UpUp,
    #[serde(rename = "dd")]
    DownDown,
    #[serde(rename = "ud")]
    UpDown,
    #[serde(rename = "du")]
    DownUp,
}

impl QubitPair {
    pub fn spins(self) -> (Spin, Spin) {
        match self {
            QubitPair::UpUp => (Spin::Up, Spin::Up),
            QubitPair::DownDown => (Spin::Down, Spin::Down),
            QubitPair::UpDown => (Spin::Up, Spin::Down),
            QubitPair::DownUp => (Spin::Down, Spin::Up),
        }
    }

    pub fn from_spins(s1: Spin, s2: Spin) -> Self {
        match (s1, s2) {
            (Spin::Up, Spin::Up) => QubitPair::UpUp,
            (Spin::Down, Spin::Down) => QubitPair::DownDown,
            (Spin::Up, Spin::Down) => QubitPair::UpDown,
            (Spin::Down, Spin::Up) => QubitPair::DownUp,
        }
    }

    /// The two pairs of sector `n` in a block of the given parity, in basis
    /// order.
    pub fn sector(parity: Parity, n: usize) -> [QubitPair; 2] {
        let photon_sign = if n.is_multiple_of(2) { 1 } else { -1 };
        if parity.sign() * photon_sign == 1 {
            [QubitPair::UpUp, QubitPair::DownDown]
        } else {
            [QubitPair::UpDown, QubitPair::DownUp]
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisState {
    pub n: usize,
    pub s1: Spin,
    pub s2: Spin,
}

impl BasisState {
    pub fn new(n: usize, s1: Spin, s2: Spin) -> Self {
        Self { n, s1, s2 }
    }

    pub fn pair(&self) -> QubitPair {
        QubitPair::from_spins(self.s1, self.s2)
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |s: Spin| if s == Spin::Up { '↑' } else { '↓' };
        write!(f, "|{},{},{}⟩", self.n, c(self.s1), c(self.s2))
    }
}

pub fn parity_of(state: &BasisState) -> Parity {
    let photon = if state.n.is_multiple_of(2) { 1 } else { -1 };
    Parity::from_sign(photon * state.s1.sign() * state.s2.sign())
}

/// Physical parameters; energies and couplings in the same units as `omega`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub delta1: f64,
    pub delta2: f64,
    pub g1: f64,
    pub g2: f64,
    pub omega: f64,
}

impl ModelParams {
    pub fn new(delta1: f64, delta2: f64, g1: f64, g2: f64, omega: f64) -> Result<Self> {
        let p = Self {
            delta1,
            delta2,
            g1,
            g2,
            omega,
        };
        p.validate()?;
        Ok(p)
    }

    /// `ω = 1` and a common coupling `g₁ = g₂ = g`.
    pub fn symmetric(delta1: f64, delta2: f64, g: f64) -> Self {
        Self {
            delta1,
            delta2,
            g1: g,
            g2: g,
            omega: 1.0,
        }
    }

    pub fn with_coupling(&self, g: f64) -> Self {
        Self {
            g1: g,
            g2: g,
            ..*self
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [self.delta1, self.delta2, self.g1, self.g2, self.omega];
        if fields.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite parameter in {self:?}")));
        }
        if self.omega <= 0.0 {
            return Err(Error::InvalidParameter(format!("omega must be positive, got {}", self.omega)));
        }
        Ok(())
    }

    /// `a = Δ₁ − Δ₂`.
    pub fn a(&self) -> f64 {
        self.delta1 - self.delta2
    }

    /// `b = Δ₁ + Δ₂`.
    pub fn b(&self) -> f64 {
        self.delta1 + self.delta2
    }

    pub fn diagonal(&self, s: &BasisState) -> f64 {
        self.omega * s.n as f64
            + self.delta1 * s.s1.sign() as f64
            + self.delta2 * s.s2.sign() as f64
    }

    /// `⟨n+1, t₁, t₂| H |n, s₁, s₂⟩`.
    pub fn raising_element(&self, n: usize, from: (Spin, Spin), to: (Spin, Spin)) -> f64 {
        let amp = ((n + 1) as f64).sqrt();
        if to.0 == from.0.flip() && to.1 == from.1 {
            amp * self.g1
        } else if to.0 == from.0 && to.1 == from.1.flip() {
            amp * self.g2
        } else {
            0.0
        }
    }
}

/// One parity sector of the truncated Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct ParityBlock {
    pub parity: Parity,
    pub cutoff: usize,
    pub basis: Vec<BasisState>,
    pub matrix: BlockTridiagonal,
}

impl ParityBlock {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dense(&self) -> DMatrix<f64> {
        self.matrix.to_dense()
    }

    pub fn index_of(&self, state: &BasisState) -> Option<usize> {
        if state.n > self.cutoff || parity_of(state) != self.parity {
            return None;
        }
        let pairs = QubitPair::sector(self.parity, state.n);
        let k = pairs.iter().position(|p| *p == state.pair())?;
        Some(2 * state.n + k)
    }
}

pub fn block_basis(parity: Parity, cutoff: usize) -> Vec<BasisState> {
    (0..=cutoff)
        .flat_map(|n| {
            QubitPair::sector(parity, n).map(|p| {
                let (s1, s2) = p.spins();
                BasisState::new(n, s1, s2)
            })
        })
        .collect()
}

pub fn build_parity_block(params: &ModelParams, parity: Parity, cutoff: usize) -> Result<ParityBlock> {
    params.validate()?;
    if cutoff < 1 {
        return Err(Error::InvalidParameter("cutoff must be at least 1".into()));
    }
    let basis = block_basis(parity, cutoff);
    let mut diag = Vec::with_capacity(cutoff + 1);
    let mut upper = Vec::with_capacity(cutoff);
    for n in 0..=cutoff {
        let here = &basis[2 * n..2 * n + 2];
        diag.push([
            [params.diagonal(&here[0]), 0.0],
            [0.0, params.diagonal(&here[1])],
        ]);
        if n < cutoff {
            let next = &basis[2 * n + 2..2 * n + 4];
            let mut u: Mat2 = [[0.0; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    u[i][j] = params.raising_element(
                        n,
                        (here[i].s1, here[i].s2),
                        (next[j].s1, next[j].s2),
                    );
                }
            }
            upper.push(u);
        }
    }
    Ok(ParityBlock {
        parity,
        cutoff,
        basis,
        matrix: BlockTridiagonal::new(diag, upper),
    })
}

/// The full truncated Hamiltonian from operator algebra, on the product
/// basis `index = 4n + 2·[s₁=↓] + [s₂=↓]`.
pub fn full_hamiltonian(params: &ModelParams, cutoff: usize) -> (Vec<BasisState>, DMatrix<f64>) {
    let nf = cutoff + 1;
    let mut ann = DMatrix::zeros(nf, nf);
    for n in 1..nf {
        ann[(n - 1, n)] = (n as f64).sqrt();
    }
    let number = DMatrix::from_fn(nf, nf, |i, j| if i == j { i as f64 } else { 0.0 });
    let field = &ann + ann.transpose();
    let id2 = DMatrix::<f64>::identity(2, 2);
    let idf = DMatrix::<f64>::identity(nf, nf);
    let sx = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
    let sz = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
    let h = number.kronecker(&id2).kronecker(&id2) * params.omega
        + field.kronecker(&sx).kronecker(&id2) * params.g1
        + field.kronecker(&id2).kronecker(&sx) * params.g2
        + idf.kronecker(&sz).kronecker(&id2) * params.delta1
        + idf.kronecker(&id2).kronecker(&sz) * params.delta2;
    let spins = [Spin::Up, Spin::Down];
    let basis = (0..nf)
        .flat_map(|n| {
            spins
                .into_iter()
                .flat_map(move |s1| spins.into_iter().map(move |s2| BasisState::new(n, s1, s2)))
        })
        .collect();
    (basis, h)
}

/// Rank-one projector `|ψ⟩⟨ψ|` on a parity block.
pub fn symmetry_projector(state: &DVector<f64>) -> Result<DMatrix<f64>> {
    let norm = state.norm();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized(norm));
    }
    Ok(state * state.transpose())
}

/// Frobenius norm of `[H, S]`.
pub fn commutator_norm(h: &DMatrix<f64>, s: &DMatrix<f64>) -> f64 {
    (h * s - s * h).norm()
}
