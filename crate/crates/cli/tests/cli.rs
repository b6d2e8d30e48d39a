use std::process::{Command, Output};

use serde_json::Value;

fn tqrabi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tqrabi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = tqrabi(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').filter(|x| !x.is_empty()).map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn spectrum_shows_two_photon_dark_state() {
    let csv = stdout(&["spectrum", "--delta1", "0.6", "--delta2", "0.3", "--parity", "even", "--g", "0:2:401", "--window", "-2:6"]);
    let r = rows(&csv);
    let g_root = 0.602_380_693_581_725;
    let near = r
        .iter()
        .min_by(|a, b| (a[0] - g_root).abs().total_cmp(&(b[0] - g_root).abs()))
        .unwrap();
    assert!(near[1..].iter().any(|e| (e - 2.0).abs() < 5e-3), "{near:?}");
}

#[test]
fn special_spectrum_is_flat() {
    let csv = stdout(&["spectrum", "--special-n3", "--g", "0:1:200"]);
    for row in rows(&csv).iter().skip(1) {
        assert!(row[1..].iter().any(|e| (e - 3.0).abs() < 1e-9), "{row:?}");
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(tqrabi(&["spectrum", "--delta1", "0.6", "--delta2", "0.3", "--g", "0:0:1"]).status.code(), Some(2));
    assert_eq!(tqrabi(&["secular", "--n", "0"]).status.code(), Some(2));
    assert_eq!(tqrabi(&["spectrum", "--g", "0:1:3"]).status.code(), Some(2));
    assert_eq!(tqrabi(&["asymptotic", "--n", "4"]).status.code(), Some(2));
}

#[test]
fn computational_failure_exits_1() {
    let out = tqrabi(&["spectrum", "--delta1", "0.6", "--delta2", "0.3", "--g", "5:6:2", "--cap", "64"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the cap"));
}

#[test]
fn secular_n5_contains_displayed_term() {
    let text = stdout(&["secular", "--n", "5", "--parity", "even"]);
    assert!(text.lines().any(|l| l == "-105600 a^2 g^4"));
    assert!(text.lines().any(|l| l == "11392 a^2 b^2 g^4"));
}

#[test]
fn secular_odd_is_even_with_swapped_detunings() {
    let even = json(&["secular", "--n", "3", "--format", "json"]);
    let odd = json(&["secular", "--n", "3", "--parity", "odd", "--format", "json"]);
    let terms = |v: &Value| -> Vec<(u64, u64, u64, String)> {
        let mut t: Vec<_> = v["polynomial"]["terms"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| {
                (
                    t["a"].as_u64().unwrap(),
                    t["b"].as_u64().unwrap(),
                    t["g"].as_u64().unwrap(),
                    t["coefficient"].as_str().unwrap().to_string(),
                )
            })
            .collect();
        t.sort();
        t
    };
    let neg = |c: &str| c.strip_prefix('-').map(str::to_string).unwrap_or_else(|| format!("-{c}"));
    // a → −b, b → −a: swap exponents, sign (−1)^(i+j); both sides are primitive
    let mut swapped: Vec<_> = terms(&even)
        .into_iter()
        .map(|(i, j, k, c)| (j, i, k, if (i + j) % 2 == 1 { neg(&c) } else { c }))
        .collect();
    swapped.sort();
    let odd_t = terms(&odd);
    let flipped: Vec<_> = {
        let mut f: Vec<_> = swapped.iter().map(|(i, j, k, c)| (*i, *j, *k, neg(c))).collect();
        f.sort();
        f
    };
    assert!(odd_t == swapped || odd_t == flipped);
}

#[test]
fn conditions_json() {
    let v = json(&["conditions", "--n", "3", "--delta1", "0.6", "--delta2", "0.3"]);
    assert_eq!(v["kind"], "roots");
    let g = v["roots"][0].as_f64().unwrap();
    assert!((g - 0.21182).abs() < 1e-5);
}

#[test]
fn darkstate_json() {
    let v = json(&["darkstate", "--n", "2", "--delta1", "0.6", "--delta2", "0.3"]);
    assert_eq!(v["N"], 2);
    assert!(v["residual"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 6);
}

#[test]
fn search_reports_inadmissible_candidate() {
    let v = json(&["search", "--n", "3", "--parity", "odd"]);
    assert_eq!(v["kind"], "absent");
    assert_eq!(v["reason"], "inadmissible");
}

#[test]
fn asymptotic_n5() {
    let v = json(&["asymptotic", "--n", "5", "--no-verify"]);
    let s = &v[0];
    assert!((s["delta10"].as_f64().unwrap() - 3.041154).abs() < 1e-6);
    assert!((s["delta20"].as_f64().unwrap() - 0.0034581).abs() < 1e-6);
    assert_eq!(s["exact"]["b2"], "825/89");
}

#[test]
fn gap_is_avoided() {
    let v = json(&["gap", "--n5-asymptotic", "--bracket", "1.05:1.20"]);
    assert_eq!(v["classification"], "avoided");
    assert!(v["gap"].as_f64().unwrap() > 1e-9);
}

#[test]
fn bounded_populations() {
    let csv = stdout(&["populations", "--special-n3", "--g", "0.8"]);
    let r = rows(&csv);
    assert!(r.iter().filter(|row| row[0] > 3.0).all(|row| row[1] < 1e-20));
    let total: f64 = r.iter().map(|row| row[1]).sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn floats_have_17_digits() {
    let csv = stdout(&["spectrum", "--delta1", "0.6", "--delta2", "0.3", "--g", "0.1:0.2:2", "--window", "0:1"]);
    let field = csv.lines().nth(1).unwrap().split(',').nth(1).unwrap().to_string();
    let mantissa = field.split('e').next().unwrap();
    assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17, "{field}");
}

#[test]
fn jobs_do_not_change_output() {
    let args = ["spectrum", "--delta1", "0.6", "--delta2", "0.3", "--g", "0:2:41"];
    let serial = stdout(&args);
    let mut par = vec!["--jobs", "3"];
    par.extend(args);
    assert_eq!(serial, stdout(&par));
}

#[test]
fn csv_and_gnuplot_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("scan.csv");
    let csv_s = csv.to_str().unwrap();
    stdout(&["spectrum", "--delta1", "0.6", "--delta2", "0.3", "--g", "0:1:11", "--out", csv_s, "--gnuplot"]);
    assert!(std::fs::read_to_string(&csv).unwrap().starts_with("g,E_1"));
    let gp = std::fs::read_to_string(dir.path().join("scan.gp")).unwrap();
    assert!(gp.contains("'scan.csv'"));
}

#[test]
fn reproduce_table() {
    let dir = tempfile::tempdir().unwrap();
    stdout(&["reproduce", "table1", "--out-dir", dir.path().to_str().unwrap()]);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("table1.json")).unwrap()).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for r in rows {
        let (x, y) = (r["roots"].as_array().unwrap(), r["closed_form"].as_array().unwrap());
        assert_eq!(x.len(), y.len());
        for (a, b) in x.iter().zip(y) {
            let (a, b) = (a.as_f64().unwrap(), b.as_f64().unwrap());
            assert!((a - b).abs() < 1e-10 * b);
        }
    }
}

#[test]
fn help_documents_flags() {
    for sub in ["spectrum", "secular", "conditions", "darkstate", "search", "asymptotic", "gap", "populations", "reproduce"] {
        let out = stdout(&[sub, "--help"]);
        assert!(out.contains("Usage:"), "{sub}");
    }
    assert!(stdout(&["spectrum", "--help"]).contains("--tol-converge"));
}
