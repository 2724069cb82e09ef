use std::process::{Command, Output};

use lamb_core::{default_constants, lamb_shift, DipoleOptions, QuadratureSpec, QuantumState};
use serde_json::Value;

fn lambshift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lambshift"))
        .args(args)
        .env_remove("LAMBSHIFT_CONSTANTS_FILE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = lambshift(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn csv_rows(args: &[&str]) -> Vec<csv::StringRecord> {
    let o = lambshift(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(
        r.headers().unwrap().iter().collect::<Vec<_>>(),
        [
            "table_id",
            "N",
            "L",
            "J",
            "n",
            "quantity",
            "unit",
            "computed",
            "reference",
            "rel_dev"
        ]
    );
    r.records().map(|x| x.unwrap()).collect()
}

fn raw_number(v: &Value) -> String {
    v.to_string()
}

#[test]
fn shift_text_reports_library_value() {
    let o = lambshift(&["shift", "--z", "1", "--n", "2", "--l", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let line = text.lines().find(|l| l.starts_with("lamb_shift")).unwrap();
    assert!(line.ends_with("MHz"));
    let shown: f64 = line.split_whitespace().nth(1).unwrap().parse().unwrap();
    let state = QuantumState::new(2, 1, 1).unwrap();
    let lib = lamb_shift(
        &state,
        &DipoleOptions::non_dipole(),
        &QuadratureSpec::default(),
        &default_constants(),
    )
    .unwrap()
    .lamb_shift_mhz;
    assert!((shown - lib).abs() <= 1e-11 * lib.abs());
    assert!(text.contains("rate n=1"));
}

#[test]
fn ground_state_rates_json() {
    let v = json(&[
        "rates", "--z", "1", "--n", "1", "--l", "0", "--format", "json",
    ]);
    let obj = v.as_object().unwrap();
    assert_eq!(obj.len(), 2);
    assert_eq!(obj["partial_rates"], Value::Array(vec![]));
    assert_eq!(obj["total_rate"].as_f64(), Some(0.0));
    assert!(!raw_number(&obj["total_rate"]).starts_with('-'));
}

#[test]
fn table_one_csv_rows() {
    let rows = csv_rows(&["table", "--id", "1", "--format", "csv"]);
    assert_eq!(rows.len(), 20);
    let shifts = rows.iter().filter(|r| &r[5] == "lamb_shift").count();
    let rates = rows
        .iter()
        .filter(|r| &r[5] == "rate" || &r[5] == "total_rate")
        .count();
    assert_eq!((shifts, rates), (7, 13));
    for r in &rows {
        assert_eq!(&r[0], "1");
        let reference: f64 = r[8].parse().unwrap();
        assert_eq!(r[9].is_empty(), reference == 0.0, "{r:?}");
    }
}

#[test]
fn table_text_has_one_block_per_table_row() {
    let o = lambshift(&["table", "--id", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(
        text.lines()
            .filter(|l| l.starts_with("table 1 row"))
            .count(),
        13
    );
}

#[test]
fn json_and_csv_share_decimal_rendering() {
    let rows = csv_rows(&["table", "--id", "3", "--format", "csv"]);
    let v = json(&["table", "--id", "3", "--format", "json"]);
    let jrows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), jrows.len());
    for (c, j) in rows.iter().zip(jrows) {
        assert_eq!(&c[7], raw_number(&j["computed"]));
        assert_eq!(&c[8], raw_number(&j["reference"]));
        if !c[9].is_empty() {
            assert_eq!(&c[9], raw_number(&j["rel_dev"]));
        }
    }

    let args = ["shift", "--n", "3", "--l", "0"];
    let rows = csv_rows(&[&args[..], &["--format", "csv"]].concat());
    let v = json(&[&args[..], &["--format", "json"]].concat());
    assert_eq!(&rows[0][7], raw_number(&v["lamb_shift_mhz"]));
    let rates = v["partial_rates"].as_array().unwrap();
    for (i, r) in rates.iter().enumerate() {
        assert_eq!(&rows[1 + i][7], raw_number(&r["rate"]));
    }
    assert_eq!(&rows[1 + rates.len()][7], raw_number(&v["total_rate"]));
}

#[test]
fn twelve_significant_digits() {
    let v = json(&["shift", "--n", "1", "--l", "0", "--format", "json"]);
    let s = raw_number(&v["lamb_shift_mhz"]);
    let digits = s.chars().filter(char::is_ascii_digit).collect::<String>();
    assert!(digits.trim_start_matches('0').len() <= 12, "{s}");
}

#[test]
fn invalid_quantum_numbers_exit_two() {
    for args in [
        &["shift", "--n", "2", "--l", "2"][..],
        &["shift", "--n", "0", "--l", "0"],
        &["rates", "--n", "3", "--l", "1", "--j", "5/2"],
        &["bethe", "--n", "2", "--l", "0", "--j", "x"],
    ] {
        let o = lambshift(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
        assert_eq!(
            String::from_utf8_lossy(&o.stderr).trim().lines().count(),
            1,
            "{args:?}"
        );
    }
}

#[test]
fn invalid_flags_exit_two() {
    for args in [
        &["shift", "--n", "2", "--l", "0", "--cutoff-x", "1e4"][..],
        &["shift", "--n", "2", "--l", "0", "--dipole"],
        &["shift", "--n", "2", "--l", "0", "--rel-tol", "0"],
        &["bethe", "--n", "2", "--l", "0", "--cutoffs", "1e4,1e3,1e5"],
        &["table", "--id", "4"],
        &["shift", "--n", "2"],
    ] {
        assert_eq!(lambshift(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn non_convergence_exit_three_with_report() {
    let o = lambshift(&[
        "bethe",
        "--n",
        "1",
        "--l",
        "0",
        "--cutoffs",
        "0.0001,0.001,0.01",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["converged"], Value::Bool(false));
}

#[test]
fn bethe_with_j_includes_full_shift() {
    let v = json(&[
        "bethe", "--n", "2", "--l", "1", "--j", "3/2", "--format", "json",
    ]);
    assert!(v["gamma_nl"].as_f64().unwrap() < 0.0);
    assert!(v["lamb_shift_mhz"].as_f64().unwrap() > 0.0);
    assert_eq!(v["cutoffs_used"].as_array().unwrap().len(), 5);
}

#[test]
fn constants_file_from_flag_and_environment() {
    let dir = std::env::temp_dir().join(format!("lambshift-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("constants.txt");
    let c = default_constants();
    std::fs::write(&path, c.to_key_value()).unwrap();
    let path = path.to_str().unwrap();

    let base = json(&["rates", "--n", "2", "--l", "1", "--format", "json"]);
    let flag = json(&[
        "rates",
        "--n",
        "2",
        "--l",
        "1",
        "--format",
        "json",
        "--constants-file",
        path,
    ]);
    assert_eq!(base, flag);

    let doubled = format!(
        "alpha0 = {:e}\nmec2 = {:e}\nhbar = {:e}\n",
        2.0 * c.alpha0,
        c.mec2,
        c.hbar
    );
    std::fs::write(dir.join("scaled.txt"), doubled).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_lambshift"))
        .args([
            "rates", "--n", "2", "--l", "1", "--dipole", "--format", "json",
        ])
        .env("LAMBSHIFT_CONSTANTS_FILE", dir.join("scaled.txt"))
        .output()
        .unwrap();
    assert!(o.status.success());
    let scaled: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let dipole = json(&[
        "rates", "--n", "2", "--l", "1", "--dipole", "--format", "json",
    ]);
    let ratio = scaled["total_rate"].as_f64().unwrap() / dipole["total_rate"].as_f64().unwrap();
    assert!((ratio - 32.0).abs() < 1e-9, "{ratio}");

    std::fs::write(dir.join("broken.txt"), "alpha0 = 0.5\n").unwrap();
    let broken = dir.join("broken.txt");
    let o = lambshift(&[
        "rates",
        "--n",
        "2",
        "--l",
        "1",
        "--constants-file",
        broken.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn hidden_verify_passes() {
    let o = lambshift(&["verify"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().count() >= 10);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}
