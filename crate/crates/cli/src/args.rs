//! Value parsers for grid, range and list flags.

use clap::{Args, ValueEnum};
use tqrabi::asymptotic::{solve_asymptotic, NewtonConfig, SearchBox};
use tqrabi::darkstate::special_n3_detunings;
use tqrabi::spectrum::ScanConfig;
use tqrabi::{Execution, ModelParams, Parity};

use crate::CliError;

/// A list-valued flag, kept as one clap value.
#[derive(Debug, Clone, PartialEq)]
pub struct Values(pub Vec<f64>);

/// `start:stop:count`, `count ≥ 2`, `stop > start`.
pub fn parse_grid(s: &str) -> Result<Values, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(format!("expected start:stop:count, got {s:?}"));
    };
    let start = parse_finite(start)?;
    let stop = parse_finite(stop)?;
    let count: usize = count
        .trim()
        .parse()
        .map_err(|_| format!("invalid point count {count:?}"))?;
    if count < 2 {
        return Err(format!("a grid needs at least 2 points, got {count}"));
    }
    if stop <= start {
        return Err(format!("grid stop {stop} must exceed start {start}"));
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok(Values(
        (0..count)
            .map(|i| if i + 1 == count { stop } else { start + step * i as f64 })
            .collect(),
    ))
}

/// `lo:hi` with `lo < hi`.
pub fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let (lo, hi) = (parse_finite(lo)?, parse_finite(hi)?);
    if hi <= lo {
        return Err(format!("range upper end {hi} must exceed {lo}"));
    }
    Ok((lo, hi))
}

/// Comma-separated positive couplings.
pub fn parse_list(s: &str) -> Result<Values, String> {
    let v: Vec<f64> = s.split(',').map(parse_finite).collect::<Result<_, _>>()?;
    if v.is_empty() || v.iter().any(|x| *x <= 0.0) {
        return Err(format!("expected positive comma-separated values, got {s:?}"));
    }
    Ok(Values(v))
}

pub fn parse_finite(s: &str) -> Result<f64, String> {
    let x: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("invalid number {s:?}"))?;
    if !x.is_finite() {
        return Err(format!("{s:?} is not finite"));
    }
    Ok(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Detunings, either explicit or one of the named parameter sets.
#[derive(Debug, Clone, Args)]
pub struct Detunings {
    #[arg(long, value_parser = parse_finite, allow_hyphen_values = true,
          required_unless_present_any = ["special_n3", "n5_asymptotic"])]
    pub delta1: Option<f64>,
    #[arg(long, value_parser = parse_finite, allow_hyphen_values = true,
          required_unless_present_any = ["special_n3", "n5_asymptotic"])]
    pub delta2: Option<f64>,
    /// Use Δ₁ = (−2+√(21/5))/2, Δ₂ = (2+√(21/5))/2 (constant E = 3ω line).
    #[arg(long, conflicts_with_all = ["delta1", "delta2", "n5_asymptotic"])]
    pub special_n3: bool,
    /// Use the large-coupling N = 5 even-parity parameters.
    #[arg(long, conflicts_with_all = ["delta1", "delta2"])]
    pub n5_asymptotic: bool,
    /// Field frequency ω; energies are reported in these units.
    #[arg(long, default_value_t = 1.0, value_parser = parse_finite)]
    pub omega: f64,
}

impl Detunings {
    pub fn resolve(&self) -> Result<(f64, f64), CliError> {
        if self.special_n3 {
            return Ok(special_n3_detunings());
        }
        if self.n5_asymptotic {
            return n5_asymptotic();
        }
        match (self.delta1, self.delta2) {
            (Some(d1), Some(d2)) => Ok((d1, d2)),
            _ => Err(CliError::Usage("--delta1 and --delta2 are required".into())),
        }
    }

    pub fn params(&self, g: f64) -> Result<ModelParams, CliError> {
        let (d1, d2) = self.resolve()?;
        ModelParams::new(d1, d2, g, g, self.omega).map_err(CliError::from)
    }

    /// Energy implied by a named parameter set, if any.
    pub fn default_energy(&self) -> Option<f64> {
        if self.special_n3 {
            Some(3.0 * self.omega)
        } else if self.n5_asymptotic {
            Some(5.0 * self.omega)
        } else {
            None
        }
    }
}

pub fn n5_asymptotic() -> Result<(f64, f64), CliError> {
    let s = solve_asymptotic(5, Parity::Even, &SearchBox::default(), &NewtonConfig::default())?;
    Ok((s[0].delta10, s[0].delta20))
}

/// Convergence controls shared by the diagonalizing commands.
#[derive(Debug, Clone, Args)]
pub struct Tolerances {
    /// Cutoff-doubling convergence tolerance, units of ω.
    #[arg(long, default_value_t = 1e-8, value_parser = parse_finite)]
    pub tol_converge: f64,
    /// Hard cap on the photon cutoff.
    #[arg(long, default_value_t = 4096)]
    pub cap: usize,
}

impl Tolerances {
    pub fn config(&self, exec: Execution) -> ScanConfig {
        ScanConfig {
            tol: self.tol_converge,
            cap: self.cap,
            exec,
        }
    }
}
