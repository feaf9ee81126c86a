use std::path::{Path, PathBuf};
use std::process::Command;

fn out_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ddirac-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn ddirac(out: &Path, args: &[&str]) -> (i32, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_ddirac")).arg("--out").arg(out).args(args).output().expect("binary runs");
    (o.status.code().unwrap_or(-1), String::from_utf8_lossy(&o.stdout).into_owned())
}

fn summary(out: &Path, name: &str) -> serde_json::Value {
    let text = std::fs::read_to_string(out.join(format!("{name}.summary.json"))).expect("summary written");
    serde_json::from_str(&text).unwrap()
}

#[test]
fn osp_writes_records_and_summary() {
    let out = out_dir("osp");
    let (code, stdout) = ddirac(
        &out,
        &["verify-osp", "--group", "z2", "--k", "1/2,1/3", "--a", "4/3", "--b", "1/2", "--c", "1/5", "--deg", "2"],
    );
    assert_eq!(code, 0, "{stdout}");
    let s = summary(&out, "verify-osp");
    assert_eq!(s["pass"], true);
    let lines = std::fs::read_to_string(out.join("verify-osp.jsonl")).unwrap();
    assert_eq!(lines.lines().count() as u64, s["total"].as_u64().unwrap());
    let first: serde_json::Value = serde_json::from_str(lines.lines().next().unwrap()).unwrap();
    for key in ["relation", "input", "lhs", "rhs", "pass"] {
        assert!(first.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn factorization_lists_four_tuples_in_three_dimensions() {
    let out = out_dir("factor");
    let (code, _) = ddirac(&out, &["--format", "csv", "verify-factorization", "--m", "3"]);
    assert_eq!(code, 0);
    let mut rdr = csv::Reader::from_path(out.join("verify-factorization.csv")).unwrap();
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().any(|r| &r[0] == "-2" && &r[1] == "-1" && &r[2] == "-2"));
}

#[test]
fn failing_checks_give_exit_code_one() {
    let out = out_dir("half");
    let args = ["orthogonality", "--a", "4", "--b", "0", "--t-max", "1", "--l-max", "0", "--convention", "half"];
    let (code, _) = ddirac(&out, &args);
    assert_eq!(code, 1);
    assert_eq!(summary(&out, "orthogonality")["pass"], false);
}

#[test]
fn transform_eigen_table() {
    let out = out_dir("eigen");
    let (code, _) = ddirac(&out, &["transform-eigen", "--a", "4", "--b", "1/2", "--t-max", "2", "--l-max", "1"]);
    assert_eq!(code, 0);
    let rows: Vec<serde_json::Value> =
        serde_json::from_str(&std::fs::read_to_string(out.join("transform-eigen.table.json")).unwrap()).unwrap();
    assert_eq!(rows.len(), 6);
    for r in rows {
        assert!(r["rel_err"].as_f64().unwrap() < 1e-8);
        assert!(r.get("runtime_ms").is_some() && r.get("expected_eigenvalue").is_some());
    }
}

#[test]
fn fischer_reads_json_input() {
    let out = out_dir("fischer");
    std::fs::create_dir_all(&out).unwrap();
    let input = out.join("f.json");
    // x_1 + r^2 e_2
    let json = r#"[
        {"r_exp": "0", "poly": [{"exp": [1, 0], "coeff": {"dim": 2, "blades": [[[], "1"]]}}]},
        {"r_exp": "2", "poly": [{"exp": [0, 0], "coeff": {"dim": 2, "blades": [[[2], "1"]]}}]}
    ]"#;
    std::fs::write(&input, json).unwrap();
    let (code, stdout) =
        ddirac(&out, &["fischer", "--a", "2", "--b", "0", "--deg", "2", "--input", input.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
}

#[test]
fn floats_are_rejected() {
    let out = out_dir("float");
    let (code, _) = ddirac(&out, &["verify-osp", "--a", "0.5"]);
    assert_eq!(code, 2);
}

#[test]
fn every_subcommand_runs() {
    let out = out_dir("all");
    let runs: [&[&str]; 6] = [
        &["verify-basicprops", "--group", "b", "--k", "1/2,1/3", "--deg", "2"],
        &["verify-kelvin", "--a", "3", "--b", "1/5", "--deg", "2"],
        &["basis", "--group", "i2-6", "--m", "3", "--k", "1/3", "--deg", "2"],
        &["laguerre-table", "--a", "4", "--b", "1/3", "--ell", "1", "--t-max", "3"],
        &["kernel-residual", "--a", "3", "--b", "1/2", "--m", "3", "--points", "20"],
        &["a-minus2-suite", "--group", "z2", "--k", "1/2", "--deg", "2"],
    ];
    for args in runs {
        let (code, stdout) = ddirac(&out, args);
        assert_eq!(code, 0, "{args:?}: {stdout}");
    }
}
