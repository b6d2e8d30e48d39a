use std::path::Path;

use serde_json::{json, Value};
use tqrabi::asymptotic::{solve_asymptotic, verify_asymptotic, NewtonConfig, SearchBox};
use tqrabi::darkstate::{
    dark_state_vector, g_independent_search, secular_polynomial, special_dark_state,
    CouplingSolutions,
};
use tqrabi::output::{
    asymptotic_report_json, asymptotic_solution_json, g_independent_json, populations_csv,
    scan_csv, secular_json, to_json, to_json_string, with_float17,
};
use tqrabi::poly::RationalPoly;
use tqrabi::spectrum::{eigenpair_near, flat_level, min_gap, scan, ScanConfig};
use tqrabi::{Execution, Parity};

use crate::write::{emit, spectrum_script, atomic_write};
use crate::{reproduce, CliError, Command};

pub fn run(cmd: Command, exec: Execution) -> Result<(), CliError> {
    match cmd {
        Command::Spectrum {
            detunings,
            parity,
            g,
            window,
            tol,
            flat,
            tol_flat,
            out,
            gnuplot,
        } => {
            let base = detunings.params(0.0)?;
            let sc = scan(&base, parity.into(), &g.0, window, &tol.config(exec))?;
            emit(out.as_deref(), &scan_csv(&sc))?;
            if let Some(path) = out.as_deref().filter(|_| gnuplot) {
                write_script(path, sc.max_levels(), window)?;
            }
            let max_cutoff = sc.cutoff_used.iter().max().copied().unwrap_or(0);
            eprintln!("{} grid points, largest cutoff {max_cutoff}", sc.len());
            if let Some(e) = flat {
                let f = flat_level(&sc, e, tol_flat)?;
                let dev = f.deviations.iter().cloned().fold(0.0, f64::max);
                eprintln!("level E = {e}: flat = {} (max deviation {dev:e})", f.flat);
            }
            Ok(())
        }
        Command::Secular { n, parity, format } => {
            let cond = secular_polynomial(n as usize, parity.into())?;
            let text = match format {
                crate::args::Format::Text => polynomial_text(&cond.secular),
                crate::args::Format::Json => to_json_string(&secular_json(&cond))?,
            };
            emit(None, &text)?;
            Ok(())
        }
        Command::Conditions { n, parity, delta1, delta2 } => {
            let parity: Parity = parity.into();
            let cond = secular_polynomial(n as usize, parity)?;
            let sol = cond.couplings(delta1, delta2)?;
            let mut v = json!({ "N": n, "parity": parity, "delta1": delta1, "delta2": delta2 });
            merge(&mut v, to_json(&sol)?);
            if let CouplingSolutions::Roots { roots } = &sol {
                let res: Vec<f64> = roots.iter().map(|g| cond.relative_residual(delta1, delta2, *g)).collect();
                v["relative_residuals"] = json!(res);
            }
            emit(None, &to_json_string(&with_float17(v))?)?;
            Ok(())
        }
        Command::Darkstate { n, parity, detunings, g, root } => {
            let parity: Parity = parity.into();
            let n = n as usize;
            let (d1, d2) = detunings.resolve()?;
            let g = match g {
                Some(g) => g,
                None => match secular_polynomial(n, parity)?.couplings(d1, d2)? {
                    CouplingSolutions::Roots { roots } => *roots.get(root).ok_or_else(|| {
                        CliError::Compute(format!("no root with index {root} (found {})", roots.len()))
                    })?,
                    other => {
                        return Err(CliError::Usage(format!(
                            "condition is {other:?}; pass --g explicitly"
                        )))
                    }
                },
            };
            let state = if detunings.special_n3 && n == 3 && parity == Parity::Even {
                special_dark_state(g)?
            } else {
                dark_state_vector(n, parity, d1, d2, g)?
            };
            let params = detunings.params(g)?;
            let cutoff = n + 5;
            let mut v = json!({ "g": g, "delta1": d1, "delta2": d2 });
            merge(&mut v, to_json(&state)?);
            v["residual"] = json!(state.residual(&params, cutoff)?);
            v["residual_cutoff"] = json!(cutoff);
            emit(None, &to_json_string(&with_float17(v))?)?;
            Ok(())
        }
        Command::Search { n, parity } => {
            let out = g_independent_search(n as usize, parity.into())?;
            emit(None, &to_json_string(&g_independent_json(n as usize, parity.into(), &out))?)?;
            Ok(())
        }
        Command::Asymptotic {
            n,
            parity,
            box_delta1,
            box_delta2,
            starts,
            seed,
            ladder,
            no_verify,
            tol_converge,
            cap,
        } => {
            let parity: Parity = parity.into();
            let bx = SearchBox { delta1: box_delta1, delta2: box_delta2 };
            let cfg = NewtonConfig { starts, seed, exec };
            let sols = solve_asymptotic(n as usize, parity, &bx, &cfg)?;
            let config = ScanConfig { tol: tol_converge, cap, exec };
            let mut out = Vec::new();
            for s in &sols {
                let mut v = asymptotic_solution_json(s);
                if !no_verify {
                    let rep = verify_asymptotic(s.n, parity, s.delta10, s.delta20, &ladder.0, &config)?;
                    let r = asymptotic_report_json(&rep, s.exact.as_ref());
                    v["ladder"] = r["ladder"].clone();
                    v["monotone"] = r["monotone"].clone();
                }
                out.push(v);
            }
            emit(None, &to_json_string(&Value::Array(out))?)?;
            Ok(())
        }
        Command::Gap { detunings, parity, bracket, energy, tol } => {
            let energy = energy
                .or(detunings.default_energy())
                .ok_or_else(|| CliError::Usage("--energy is required for explicit detunings".into()))?;
            let base = detunings.params(0.0)?;
            let r = min_gap(&base, parity.into(), bracket, energy, &tol.config(exec))?;
            let mut v = json!({ "delta1": base.delta1, "delta2": base.delta2, "energy": energy, "bracket": [bracket.0, bracket.1] });
            merge(&mut v, to_json(&r)?);
            emit(None, &to_json_string(&with_float17(v))?)?;
            Ok(())
        }
        Command::Populations { detunings, parity, g, energy, tol, out } => {
            let energy = energy
                .or(detunings.default_energy())
                .ok_or_else(|| CliError::Usage("--energy is required for explicit detunings".into()))?;
            let params = detunings.params(g)?;
            let pair = eigenpair_near(&params, parity.into(), energy, &tol.config(exec))?;
            let pops = pair.populations();
            emit(out.as_deref(), &populations_csv(&pops))?;
            let n = (energy / params.omega).round().max(0.0) as usize;
            eprintln!(
                "E = {:.12}, cutoff {}, population beyond n = {n}: {:.6e}",
                pair.energy,
                pair.cutoff,
                pair.tail_population(n)
            );
            Ok(())
        }
        Command::Reproduce { target, out_dir } => reproduce::run(target, &out_dir, exec),
    }
}

/// One term per line, highest degree first: `-105600 a^2 g^4`.
pub fn polynomial_text(p: &RationalPoly) -> String {
    let mut s = String::new();
    for (m, c) in p.terms().rev() {
        if *m == tqrabi::poly::Monomial::ONE {
            s.push_str(&format!("{c}\n"));
        } else {
            s.push_str(&format!("{c} {m}\n"));
        }
    }
    s
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

pub fn write_script(csv: &Path, levels: usize, window: (f64, f64)) -> Result<(), CliError> {
    let name = csv
        .file_name()
        .and_then(|s| s.to_str())
        .ok_or_else(|| CliError::Usage("--out needs a file name".into()))?;
    let script = spectrum_script(name, levels, name, window);
    atomic_write(&csv.with_extension("gp"), &script)?;
    Ok(())
}
