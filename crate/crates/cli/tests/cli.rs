use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn zfourier(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zfourier"))
        .arg("--cache.dir")
        .arg(cache)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn inv_zeta_table_is_one_sided_and_cached() {
    let dir = TempDir::new().unwrap();
    let args = [
        "coeffs",
        "--function",
        "inv-zeta",
        "--sigma",
        "0.75",
        "--n",
        "-6..6",
        "--method",
        "quadrature",
    ];
    let first = zfourier(dir.path(), &args);
    assert_eq!(code(&first), 0, "{}", stderr(&first));
    let text = String::from_utf8(first.stdout.clone()).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,re,im,method,abs_err_est"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 13);
    for (row, n) in rows.iter().zip(-6..=6) {
        assert_eq!(row[0].parse::<i64>().unwrap(), n);
        assert_eq!(row[3], "quadrature");
        let (re, im): (f64, f64) = (row[1].parse().unwrap(), row[2].parse().unwrap());
        if n < 0 {
            assert!(re.hypot(im) < 1e-7, "n={n}: {re} {im}");
        }
    }
    assert!((rows[6][1].parse::<f64>().unwrap() - 0.217622560).abs() < 1e-8);

    let second = zfourier(dir.path(), &args);
    assert_eq!(code(&second), 0);
    assert!(stderr(&second).contains("cache hit"));
    assert_eq!(first.stdout, second.stdout);

    let out = dir.path().join("table.csv");
    let third = zfourier(dir.path(), &[&args[..], &["--out", out.to_str().unwrap()]].concat());
    assert_eq!(code(&third), 0);
    assert_eq!(std::fs::read(&out).unwrap(), first.stdout);
}

#[test]
fn config_change_invalidates_cache() {
    let dir = TempDir::new().unwrap();
    let args = ["coeffs", "--function", "xi-weighted", "--n", "0..2"];
    assert!(stderr(&zfourier(dir.path(), &args)).contains("cached"));
    assert!(stderr(&zfourier(dir.path(), &args)).contains("cache hit"));
    let finer = zfourier(dir.path(), &[&["--quadrature.tol", "1e-11"], &args[..]].concat());
    assert_eq!(code(&finer), 0);
    assert!(!stderr(&finer).contains("cache hit"));
    let config = dir.path().join("run.conf");
    std::fs::write(&config, "quadrature.tol=1e-11\n").unwrap();
    let from_file = zfourier(
        dir.path(),
        &[&["--config", config.to_str().unwrap()], &args[..]].concat(),
    );
    assert!(stderr(&from_file).contains("cache hit"));
    assert_eq!(from_file.stdout, finer.stdout);
}

#[test]
fn whittaker_series_rejects_negative_indices() {
    let dir = TempDir::new().unwrap();
    let out = zfourier(
        dir.path(),
        &[
            "coeffs",
            "--function",
            "zeta-cos-v",
            "--sigma",
            "0.9",
            "--v",
            "1",
            "--method",
            "whittaker",
            "--n",
            "-2..-1",
        ],
    );
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("n >= 1"));
}

#[test]
fn usage_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["--bogus", "1", "verify", "all"][..],
        &["verify", "theorem99"],
        &["coeffs", "--function", "inv-zeta", "--n", "0..2"],
        &["coeffs", "--function", "inv-zeta", "--sigma", "0.75", "--n", "3..1"],
        &["coeffs", "--function", "inv-zeta", "--sigma", "1.5", "--n", "0..1"],
        &[
            "coeffs",
            "--function",
            "xi-weighted",
            "--n",
            "0..1",
            "--method",
            "residue",
        ],
        &["--quadrature.tol", "-1", "verify", "orthonormality"],
        &["reconstruct", "--function", "one", "-N", "2", "--grid", "1:0:3"],
    ] {
        assert_eq!(code(&zfourier(dir.path(), args)), 1, "{args:?}");
    }
    let config = dir.path().join("bad.conf");
    std::fs::write(&config, "quadrature.order=3\n").unwrap();
    let out = zfourier(
        dir.path(),
        &["--config", config.to_str().unwrap(), "verify", "orthonormality"],
    );
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("line 1"));
}

#[test]
fn io_errors_exit_three() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.conf");
    assert_eq!(
        code(&zfourier(
            dir.path(),
            &["--config", missing.to_str().unwrap(), "verify", "orthonormality"]
        )),
        3
    );
    assert_eq!(
        code(&zfourier(dir.path(), &["zeros", "import", missing.to_str().unwrap()])),
        3
    );
}

#[test]
fn zero_import_validates_and_stores() {
    let dir = TempDir::new().unwrap();
    let file = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    };
    let good = file("good.txt", "# first zeros\n14.134725142\n21.022039639\n25.010857580\n");
    let out = zfourier(dir.path(), &["zeros", "import", good.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let stored = std::fs::read_to_string(dir.path().join("zeros.csv")).unwrap();
    assert_eq!(stored.lines().count(), 4);
    assert!(stored.starts_with("beta,zeta_prime_re,zeta_prime_im\n1.4134725142"));

    let descending = file("desc.txt", "21.022039639\n14.134725142\n");
    let out = zfourier(dir.path(), &["zeros", "import", descending.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("line 2"));
    for (name, text) in [
        ("empty.txt", ""),
        ("bad.txt", "14.134725142\nabc\n"),
        ("far.txt", "15.0\n"),
    ] {
        let p = file(name, text);
        assert_eq!(
            code(&zfourier(dir.path(), &["zeros", "import", p.to_str().unwrap()])),
            3,
            "{name}"
        );
    }
    assert_eq!(std::fs::read_to_string(dir.path().join("zeros.csv")).unwrap(), stored);
}

#[test]
fn orthonormality_suite_passes() {
    let dir = TempDir::new().unwrap();
    let out = zfourier(dir.path(), &["verify", "orthonormality"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = json(&out);
    assert_eq!(report["config_hash"].as_str().unwrap().len(), 64);
    let checks = report["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        for key in ["name", "lhs", "rhs", "tol", "pass"] {
            assert!(c.get(key).is_some(), "{key} missing in {c}");
        }
        assert_eq!(c["pass"], Value::Bool(true));
    }
}

#[test]
fn theorem31_reports_a0_discrepancy_as_informational() {
    let dir = TempDir::new().unwrap();
    let out = zfourier(dir.path(), &["verify", "theorem31"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = json(&out);
    let a0 = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "theorem31.xi_a0=0(as stated)")
        .expect("a0 entry");
    assert_eq!(a0["pass"], Value::Bool(false));
    assert_eq!(a0["informational"], Value::Bool(true));
}

#[test]
fn reconstruct_constant_is_exact() {
    let dir = TempDir::new().unwrap();
    let out = zfourier(
        dir.path(),
        &["reconstruct", "--function", "one", "-N", "5", "--grid=-3:3:13"],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = &json(&out)["report"];
    let errors = r["truncation_error"].as_array().unwrap();
    assert_eq!(errors.len(), 13);
    assert!(errors.iter().all(|e| e.as_f64().unwrap() < 1e-12));
}

#[test]
fn reconstruct_inv_zeta_improves_with_order() {
    let dir = TempDir::new().unwrap();
    let sup = |n: &str| {
        let out = zfourier(
            dir.path(),
            &["reconstruct", "--function", "inv-zeta", "--sigma", "0.75", "-N", n],
        );
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        json(&out)["report"]["sup_error"].as_f64().unwrap()
    };
    let (coarse, fine) = (sup("4"), sup("16"));
    assert!(fine < coarse, "{fine} vs {coarse}");
}

#[test]
fn reconstruct_xi_is_even() {
    let dir = TempDir::new().unwrap();
    let args = ["reconstruct", "--function", "xi-weighted", "-N", "6", "--grid=-2:2:9"];
    let out = zfourier(dir.path(), &args);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let errors: Vec<f64> = json(&out)["report"]["truncation_error"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e.as_f64().unwrap())
        .collect();
    for i in 0..errors.len() {
        let j = errors.len() - 1 - i;
        assert!(
            (errors[i] - errors[j]).abs() <= 1e-9 * errors[i].max(1e-12),
            "{errors:?}"
        );
    }
    assert_eq!(zfourier(dir.path(), &args).stdout, out.stdout);
}
