//! Converged spectra of the parity blocks over coupling grids.
//!
//! Each grid point starts from a cutoff of `max(16, ⌈E_hi/ω⌉ + ⌈(2g/ω)²⌉ + 10)`
//! and doubles it until every eigenvalue inside the energy window moves by
//! less than the tolerance. Values are reported at the larger cutoff.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::fock::{build_parity_block, BasisState, ModelParams, Parity, ParityBlock};
use crate::linalg::BlockTridiagonal;

/// Gaps below this (in units of ω) count as exact crossings.
pub const CROSSING_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanConfig {
    /// Cutoff-doubling convergence tolerance, units of ω.
    pub tol: f64,
    /// Hard cap on the photon cutoff.
    pub cap: usize,
    pub exec: Execution,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            cap: 4096,
            exec: Execution::default(),
        }
    }
}

impl ScanConfig {
    pub fn serial() -> Self {
        Self {
            exec: Execution::Serial,
            ..Self::default()
        }
    }
}

pub fn initial_cutoff(g: f64, omega: f64, window_hi: f64) -> usize {
    let n_window = (window_hi / omega).ceil().max(0.0) as usize;
    let displaced = ((2.0 * g / omega).powi(2)).ceil() as usize;
    (n_window + displaced + 10).max(16)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumScan {
    pub parity: Parity,
    pub delta1: f64,
    pub delta2: f64,
    pub omega: f64,
    pub window: (f64, f64),
    pub g_grid: Vec<f64>,
    pub cutoff_used: Vec<usize>,
    /// Ascending index (over the whole block) of each point's first level.
    pub first_index: Vec<usize>,
    /// Ascending window eigenvalues per point.
    pub levels: Vec<Vec<f64>>,
}

/// Converged window eigenvalues at one coupling.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowSpectrum {
    pub cutoff: usize,
    pub first_index: usize,
    pub values: Vec<f64>,
}

fn validate_window(window: (f64, f64)) -> Result<()> {
    if !(window.0.is_finite() && window.1.is_finite()) || window.0 >= window.1 {
        return Err(Error::EmptyWindow);
    }
    Ok(())
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("coupling grid is empty".into()));
    }
    if grid.iter().any(|g| !g.is_finite() || *g < 0.0) {
        return Err(Error::InvalidParameter("couplings must be finite and non-negative".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("coupling grid must be increasing".into()));
    }
    Ok(())
}

/// Window eigenvalues at `g`, converged under cutoff doubling.
pub fn converged_window(
    params: &ModelParams,
    parity: Parity,
    window: (f64, f64),
    config: &ScanConfig,
) -> Result<WindowSpectrum> {
    validate_window(window)?;
    let g = params.g1.abs().max(params.g2.abs());
    let mut cutoff = initial_cutoff(g, params.omega, window.1).min(config.cap);
    let block = build_parity_block(params, parity, cutoff)?;
    let mut current = block.matrix.eigenvalues_in_window(window.0, window.1);
    loop {
        let next_cutoff = 2 * cutoff;
        if next_cutoff > config.cap {
            return Err(Error::CapacityExceeded {
                g,
                cutoff: next_cutoff,
                cap: config.cap,
            });
        }
        let block = build_parity_block(params, parity, next_cutoff)?;
        let next = block.matrix.eigenvalues_in_window(window.0, window.1);
        let tol = config.tol * params.omega;
        let converged = next.0 == current.0
            && next.1.len() == current.1.len()
            && next.1.iter().zip(&current.1).all(|(x, y)| (x - y).abs() < tol);
        cutoff = next_cutoff;
        current = next;
        if converged {
            return Ok(WindowSpectrum {
                cutoff,
                first_index: current.0,
                values: current.1,
            });
        }
    }
}

/// Converged window spectra over a coupling grid (`g₁ = g₂ = g`).
pub fn scan(
    params: &ModelParams,
    parity: Parity,
    grid: &[f64],
    window: (f64, f64),
    config: &ScanConfig,
) -> Result<SpectrumScan> {
    params.validate()?;
    validate_grid(grid)?;
    validate_window(window)?;
    let points = exec::try_map(grid, config.exec, |&g| {
        converged_window(&params.with_coupling(g), parity, window, config)
    })?;
    Ok(SpectrumScan {
        parity,
        delta1: params.delta1,
        delta2: params.delta2,
        omega: params.omega,
        window,
        g_grid: grid.to_vec(),
        cutoff_used: points.iter().map(|p| p.cutoff).collect(),
        first_index: points.iter().map(|p| p.first_index).collect(),
        levels: points.into_iter().map(|p| p.values).collect(),
    })
}

impl SpectrumScan {
    pub fn len(&self) -> usize {
        self.g_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g_grid.is_empty()
    }

    /// Largest number of window levels at any point.
    pub fn max_levels(&self) -> usize {
        self.levels.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Distance from `energy` to the nearest level at each point.
    pub fn nearest_deviation(&self, energy: f64) -> Vec<f64> {
        self.levels
            .iter()
            .map(|lv| {
                lv.iter()
                    .map(|e| (e - energy).abs())
                    .fold(f64::INFINITY, f64::min)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlatLevel {
    pub flat: bool,
    pub deviations: Vec<f64>,
}

/// Whether every grid point carries a level within `tol` of `energy`.
pub fn flat_level(scan: &SpectrumScan, energy: f64, tol: f64) -> Result<FlatLevel> {
    if scan.is_empty() || energy < scan.window.0 || energy >= scan.window.1 {
        return Err(Error::EmptyWindow);
    }
    let deviations = scan.nearest_deviation(energy);
    Ok(FlatLevel {
        flat: deviations.iter().all(|d| *d <= tol),
        deviations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapClass {
    Crossing,
    Avoided,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapReport {
    pub g_star: f64,
    pub gap: f64,
    pub level_pair: (usize, usize),
    pub classification: GapClass,
    /// The gap barely varies across the bracket; `g_star` is arbitrary.
    pub degenerate: bool,
}

const COARSE_SAMPLES: usize = 64;
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Minimize a gap function over `[lo, hi]`: coarse sampling, then golden
/// section around the best sample.
pub fn minimize_gap<F>(lo: f64, hi: f64, mut gap: F) -> Result<(f64, f64, bool)>
where
    F: FnMut(f64) -> f64,
{
    if !(lo < hi) {
        return Err(Error::InvalidParameter("bracket must satisfy lo < hi".into()));
    }
    let step = (hi - lo) / (COARSE_SAMPLES - 1) as f64;
    let samples: Vec<f64> = (0..COARSE_SAMPLES)
        .map(|i| gap(lo + step * i as f64))
        .collect();
    let (smin, smax) = samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    if smax - smin <= 1e-12 * smax.abs().max(f64::MIN_POSITIVE) {
        let mid = 0.5 * (lo + hi);
        return Ok((mid, gap(mid), true));
    }
    let imin = samples
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    if imin == 0 || imin == COARSE_SAMPLES - 1 {
        return Err(Error::NoLocalMinimum { lo, hi });
    }
    let (mut a, mut b) = (lo + step * (imin - 1) as f64, lo + step * (imin + 1) as f64);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (gap(c), gap(d));
    while b - a > 1e-13 * b.abs().max(1.0) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = gap(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = gap(d);
        }
    }
    let mut best = (samples[imin], lo + step * imin as f64);
    for (f, x) in [(fc, c), (fd, d)] {
        if f < best.0 {
            best = (f, x);
        }
    }
    Ok((best.1, best.0, false))
}

/// Cutoff converged over a whole coupling bracket at energy `energy`.
fn bracket_block(
    params: &ModelParams,
    parity: Parity,
    bracket: (f64, f64),
    energy: f64,
    config: &ScanConfig,
) -> Result<usize> {
    let window = (energy - 2.0 * params.omega, energy + 2.0 * params.omega);
    let probes = [bracket.0, 0.5 * (bracket.0 + bracket.1), bracket.1];
    let mut cutoff = 0;
    for g in probes {
        cutoff = cutoff.max(converged_window(&params.with_coupling(g), parity, window, config)?.cutoff);
    }
    Ok(cutoff)
}

fn block_at(params: &ModelParams, parity: Parity, cutoff: usize, g: f64) -> BlockTridiagonal {
    build_parity_block(&params.with_coupling(g), parity, cutoff)
        .expect("validated parameters")
        .matrix
}

fn nearest_index(m: &BlockTridiagonal, energy: f64) -> usize {
    let below = m.count_below(energy);
    let candidates = [below.checked_sub(1), Some(below).filter(|i| *i < m.dim())];
    candidates
        .into_iter()
        .flatten()
        .min_by(|i, j| {
            (m.eigenvalue(*i) - energy)
                .abs()
                .total_cmp(&(m.eigenvalue(*j) - energy).abs())
        })
        .unwrap_or(0)
}

/// Minimal distance between the two adjacent levels nearest `energy` over
/// the coupling bracket. The level pair is fixed by sorted index at the
/// bracket midpoint.
pub fn min_gap(
    params: &ModelParams,
    parity: Parity,
    bracket: (f64, f64),
    energy: f64,
    config: &ScanConfig,
) -> Result<GapReport> {
    params.validate()?;
    if !(bracket.0 < bracket.1) || bracket.0 < 0.0 {
        return Err(Error::InvalidParameter("bracket must satisfy 0 ≤ lo < hi".into()));
    }
    let cutoff = bracket_block(params, parity, bracket, energy, config)?;
    let mid = block_at(params, parity, cutoff, 0.5 * (bracket.0 + bracket.1));
    let j = nearest_index(&mid, energy);
    let ej = mid.eigenvalue(j);
    let lower = if j > 0 { Some(ej - mid.eigenvalue(j - 1)) } else { None };
    let upper = if j + 1 < mid.dim() { Some(mid.eigenvalue(j + 1) - ej) } else { None };
    let k = match (lower, upper) {
        (Some(l), Some(u)) if l < u => j - 1,
        (Some(_), None) => j - 1,
        _ => j,
    };
    let gap_at = |g: f64| {
        let m = block_at(params, parity, cutoff, g);
        let v = m.eigenvalues_by_index(k..k + 2);
        v[1] - v[0]
    };
    let (g_star, gap, degenerate) = minimize_gap(bracket.0, bracket.1, gap_at)?;
    Ok(GapReport {
        g_star,
        gap,
        level_pair: (k, k + 1),
        classification: if gap < CROSSING_TOL * params.omega {
            GapClass::Crossing
        } else {
            GapClass::Avoided
        },
        degenerate,
    })
}

/// Photon-number distribution of a normalized block vector.
pub fn populations(vector: &[f64], basis: &[BasisState]) -> Result<Vec<(usize, f64)>> {
    if vector.len() != basis.len() {
        return Err(Error::InvalidParameter(format!(
            "vector length {} does not match basis size {}",
            vector.len(),
            basis.len()
        )));
    }
    let norm: f64 = vector.iter().map(|x| x * x).sum();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized(norm.sqrt()));
    }
    let n_max = basis.iter().map(|s| s.n).max().unwrap_or(0);
    let mut p = vec![0.0; n_max + 1];
    for (x, s) in vector.iter().zip(basis) {
        p[s.n] += x * x;
    }
    Ok(p.into_iter().enumerate().collect())
}

/// Converged eigenpair nearest a target energy.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub energy: f64,
    pub index: usize,
    pub cutoff: usize,
    pub basis: Vec<BasisState>,
    pub vector: Vec<f64>,
}

impl Eigenpair {
    pub fn populations(&self) -> Vec<(usize, f64)> {
        populations(&self.vector, &self.basis).expect("inverse iteration returns unit vectors")
    }

    /// `Σ_{n>N} P(n)`.
    pub fn tail_population(&self, n: usize) -> f64 {
        self.populations()
            .into_iter()
            .filter(|(k, _)| *k > n)
            .map(|(_, p)| p)
            .sum()
    }
}

pub fn eigenpair_near(
    params: &ModelParams,
    parity: Parity,
    energy: f64,
    config: &ScanConfig,
) -> Result<Eigenpair> {
    let window = (energy - params.omega, energy + params.omega);
    let ws = converged_window(params, parity, window, config)?;
    if ws.values.is_empty() {
        return Err(Error::EmptyWindow);
    }
    let (offset, value) = ws
        .values
        .iter()
        .enumerate()
        .min_by(|x, y| (x.1 - energy).abs().total_cmp(&(y.1 - energy).abs()))
        .map(|(i, v)| (i, *v))
        .expect("nonempty");
    let block = build_parity_block(params, parity, ws.cutoff)?;
    let vector = block.matrix.eigenvector(value);
    Ok(Eigenpair {
        energy: value,
        index: ws.first_index + offset,
        cutoff: ws.cutoff,
        basis: block.basis,
        vector,
    })
}

/// Window levels followed along the grid. Tracks start at the first point's
/// levels and follow sorted order, except near close approaches (levels
/// closer than `close`), where eigenvector overlap above 0.5 decides.
pub fn track_levels(
    scan: &SpectrumScan,
    params: &ModelParams,
    close: f64,
) -> Result<Vec<Vec<Option<f64>>>> {
    let mut tracks: Vec<Vec<Option<f64>>> = scan
        .levels
        .first()
        .map(|lv| lv.iter().map(|e| vec![Some(*e)]).collect())
        .unwrap_or_default();
    // global index currently followed by each track
    let mut follow: Vec<Option<usize>> = (0..tracks.len())
        .map(|i| Some(scan.first_index[0] + i))
        .collect();
    for p in 1..scan.len() {
        let (f0, f1) = (scan.first_index[p - 1], scan.first_index[p]);
        let prev = &scan.levels[p - 1];
        let cur = &scan.levels[p];
        let near = |lv: &[f64], i: usize| {
            (i > 0 && lv[i] - lv[i - 1] < close) || (i + 1 < lv.len() && lv[i + 1] - lv[i] < close)
        };
        let cutoff = scan.cutoff_used[p - 1].max(scan.cutoff_used[p]);
        let mut vecs_prev: Option<ParityBlock> = None;
        let mut vecs_cur: Option<ParityBlock> = None;
        for (t, idx) in follow.iter_mut().enumerate() {
            let Some(gi) = *idx else {
                tracks[t].push(None);
                continue;
            };
            let Some(i_prev) = gi.checked_sub(f0).filter(|i| *i < prev.len()) else {
                *idx = None;
                tracks[t].push(None);
                continue;
            };
            let mut target = gi;
            if near(prev, i_prev) {
                let bp = vecs_prev.get_or_insert_with(|| {
                    build_parity_block(&params.with_coupling(scan.g_grid[p - 1]), scan.parity, cutoff)
                        .expect("validated")
                });
                let bc = vecs_cur.get_or_insert_with(|| {
                    build_parity_block(&params.with_coupling(scan.g_grid[p]), scan.parity, cutoff)
                        .expect("validated")
                });
                let v0 = bp.matrix.eigenvector(prev[i_prev]);
                let mut best = (0.0, gi);
                for (j, e) in cur.iter().enumerate() {
                    if (e - prev[i_prev]).abs() > 2.0 * close.max(1e-12) + (e - cur[j]).abs() {
                        continue;
                    }
                    let v1 = bc.matrix.eigenvector(*e);
                    let ov: f64 = v0.iter().zip(&v1).map(|(x, y)| x * y).sum::<f64>().abs();
                    if ov > best.0 {
                        best = (ov, f1 + j);
                    }
                }
                if best.0 > 0.5 {
                    target = best.1;
                }
            }
            *idx = Some(target);
            tracks[t].push(target.checked_sub(f1).and_then(|j| cur.get(j)).copied());
        }
    }
    Ok(tracks)
}
