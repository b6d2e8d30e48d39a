//! Fixed flag sets for each figure and table.

use std::path::Path;

use clap::ValueEnum;
use serde_json::json;
use tqrabi::darkstate::{existence_g, special_n3_detunings, CouplingSolutions};
use tqrabi::output::{fmt17, populations_csv, scan_csv, to_json, to_json_string, with_float17};
use tqrabi::spectrum::{eigenpair_near, flat_level, min_gap, scan, ScanConfig};
use tqrabi::{Execution, ModelParams, Parity};

use crate::args::{n5_asymptotic, parse_grid};
use crate::write::{atomic_write, populations_script, spectrum_script};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// Even-parity spectrum at Δ₁ = 0.6, Δ₂ = 0.3 with dark-state markers.
    Fig1,
    /// Constant E = 3ω line at the special N = 3 detunings.
    Fig2,
    /// Spectrum at the N = 5 large-coupling detunings, 0 ≤ g ≤ 10.
    Fig3a,
    /// Spectrum at Δ₁ = 4.041154, Δ₂ = 0.003458, 0 ≤ g ≤ 10.
    Fig3b,
    /// Zoom on the narrow avoided crossing near g = 1.117, E = 5ω.
    Fig4,
    /// Photon-number distribution of the E ≈ 5ω state at g = 5.
    Fig5,
    /// Existence couplings for N = 2, 3, 4 against their closed forms.
    Table1,
    All,
}

const LARGE_CAP: usize = 16384;

pub fn run(target: Target, dir: &Path, exec: Execution) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)?;
    let targets = match target {
        Target::All => vec![
            Target::Fig1,
            Target::Fig2,
            Target::Fig3a,
            Target::Fig3b,
            Target::Fig4,
            Target::Fig5,
            Target::Table1,
        ],
        t => vec![t],
    };
    for t in targets {
        match t {
            Target::Fig1 => fig1(dir, exec)?,
            Target::Fig2 => fig2(dir, exec)?,
            Target::Fig3a => {
                let (d1, d2) = n5_asymptotic()?;
                spectrum_figure(dir, "fig3a", (d1, d2), "0:10:201", (2.0, 8.0), "", exec)?;
            }
            Target::Fig3b => spectrum_figure(dir, "fig3b", (4.041154, 0.003458), "0:10:201", (4.0, 10.0), "", exec)?,
            Target::Fig4 => fig4(dir, exec)?,
            Target::Fig5 => fig5(dir, exec)?,
            Target::Table1 => table1(dir)?,
            Target::All => unreachable!(),
        }
    }
    Ok(())
}

fn config(exec: Execution) -> ScanConfig {
    ScanConfig { cap: LARGE_CAP, exec, ..ScanConfig::default() }
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    let path = dir.join(name);
    atomic_write(&path, contents)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn grid(spec: &str) -> Vec<f64> {
    parse_grid(spec).expect("built-in grids are valid").0
}

fn spectrum_figure(
    dir: &Path,
    name: &str,
    (d1, d2): (f64, f64),
    g: &str,
    window: (f64, f64),
    extra: &str,
    exec: Execution,
) -> Result<(), CliError> {
    let base = ModelParams::symmetric(d1, d2, 0.0);
    let sc = scan(&base, Parity::Even, &grid(g), window, &config(exec))?;
    let csv = format!("{name}.csv");
    write(dir, &csv, &scan_csv(&sc))?;
    let title = format!("even parity, Δ₁={}, Δ₂={}", fmt17(d1), fmt17(d2));
    let script = spectrum_script(&csv, sc.max_levels(), &title, window) + extra;
    write(dir, &format!("{name}.gp"), &script)
}

fn fig1(dir: &Path, exec: Execution) -> Result<(), CliError> {
    let (d1, d2) = (0.6, 0.3);
    let mut marks = String::from("g,E,N\n");
    for n in 2..=4 {
        if let CouplingSolutions::Roots { roots } = existence_g(n, Parity::Even, d1, d2)? {
            for g in roots.into_iter().filter(|g| *g <= 2.0) {
                marks.push_str(&format!("{},{},{n}\n", fmt17(g), fmt17(n as f64)));
            }
        }
    }
    write(dir, "fig1_dark.csv", &marks)?;
    let overlay = "replot 'fig1_dark.csv' every ::1 using 1:2:3 with points pt 7 ps 1.5 lc variable\n";
    spectrum_figure(dir, "fig1", (d1, d2), "0:2:401", (-2.0, 6.0), overlay, exec)
}

fn fig2(dir: &Path, exec: Execution) -> Result<(), CliError> {
    let (d1, d2) = special_n3_detunings();
    let base = ModelParams::symmetric(d1, d2, 0.0);
    let g = grid("0:1:201");
    let sc = scan(&base, Parity::Even, &g, (0.0, 6.0), &config(exec))?;
    write(dir, "fig2.csv", &scan_csv(&sc))?;
    write(dir, "fig2.gp", &spectrum_script("fig2.csv", sc.max_levels(), "special N=3 detunings", (0.0, 6.0)))?;
    let f = flat_level(&sc, 3.0, 1e-9)?;
    let dev = f.deviations.iter().cloned().fold(0.0, f64::max);
    eprintln!("fig2: E = 3 flat = {} (max deviation {dev:e})", f.flat);
    Ok(())
}

fn fig4(dir: &Path, exec: Execution) -> Result<(), CliError> {
    let (d1, d2) = n5_asymptotic()?;
    let base = ModelParams::symmetric(d1, d2, 0.0);
    let window = (4.99, 5.01);
    let sc = scan(&base, Parity::Even, &grid("1.1:1.135:351"), window, &config(exec))?;
    write(dir, "fig4.csv", &scan_csv(&sc))?;
    write(dir, "fig4.gp", &spectrum_script("fig4.csv", sc.max_levels(), "zoom near g=1.117, E=5", window))?;
    let r = min_gap(&base, Parity::Even, (1.05, 1.20), 5.0, &config(exec))?;
    let mut v = json!({ "delta1": d1, "delta2": d2, "energy": 5.0, "bracket": [1.05, 1.20] });
    if let (Some(o), serde_json::Value::Object(b)) = (v.as_object_mut(), to_json(&r)?) {
        o.extend(b);
    }
    write(dir, "fig4_gap.json", &to_json_string(&with_float17(v))?)
}

fn fig5(dir: &Path, exec: Execution) -> Result<(), CliError> {
    let (d1, d2) = n5_asymptotic()?;
    let params = ModelParams::symmetric(d1, d2, 5.0);
    let pair = eigenpair_near(&params, Parity::Even, 5.0, &config(exec))?;
    let pops: Vec<(usize, f64)> = pair.populations().into_iter().take(40).collect();
    write(dir, "fig5.csv", &populations_csv(&pops))?;
    write(dir, "fig5.gp", &populations_script("fig5.csv", "E≈5ω, g=5"))?;
    eprintln!("fig5: population beyond n = 5: {:.3e}", pair.tail_population(5));
    Ok(())
}

fn closed_form(n: usize, a: f64, b: f64) -> Vec<f64> {
    let (a2, b2) = (a * a, b * b);
    let x = match n {
        2 => vec![(b2 - 4.0) * (a2 - 1.0) / 8.0],
        3 => vec![(-9.0 + 10.0 * b2 - b2 * b2) * (a2 - 4.0) / (168.0 - 40.0 * b2)],
        _ => {
            let q = 5.0 * a2 * b2 - 56.0 * a2 - 13.0 * b2 + 184.0;
            let p = (a2 - 1.0) * (a2 - 9.0) * (b2 - 4.0) * (b2 - 16.0);
            let d = q * q - 8.0 * p;
            if d < 0.0 {
                vec![]
            } else {
                vec![(q - d.sqrt()) / 96.0, (q + d.sqrt()) / 96.0]
            }
        }
    };
    let mut g: Vec<f64> = x.into_iter().filter(|x| *x > 0.0).map(f64::sqrt).collect();
    g.sort_by(f64::total_cmp);
    g
}

fn table1(dir: &Path) -> Result<(), CliError> {
    let (d1, d2) = (0.6, 0.3);
    let mut rows = Vec::new();
    for n in 2..=4 {
        let roots = match existence_g(n, Parity::Even, d1, d2)? {
            CouplingSolutions::Roots { roots } => roots,
            _ => Vec::new(),
        };
        rows.push(json!({
            "N": n,
            "roots": roots,
            "closed_form": closed_form(n, d1 - d2, d1 + d2),
        }));
    }
    let v = json!({ "delta1": d1, "delta2": d2, "parity": "even", "rows": rows });
    write(dir, "table1.json", &to_json_string(&with_float17(v))?)
}
