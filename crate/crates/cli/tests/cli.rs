use std::process::{Command, Output};

fn rotset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rotset")).args(args).env_remove("ROTSET_PRECISION").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn header_value<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(&format!("# {key} = ")))
}

#[test]
fn classify_not_extreme_with_threshold_four() {
    let o = rotset(&["classify", "--rho", "0.645+pi*1e-5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["report"]["classification"], "NotExtreme");
    assert_eq!(v["result"]["k_rho"], 4);
    assert_eq!(v["config"]["rho_num"], "129006283185307");
    assert_eq!(v["config"]["certified"], true);
}

#[test]
fn classify_csv_has_last_zero_at_threshold() {
    let o = rotset(&["classify", "--rho", "0.645+pi*1e-5", "--emit", "csv"]);
    let text = stdout(&o);
    let zeros: Vec<u64> = text
        .lines()
        .filter(|l| l.starts_with("u,"))
        .filter_map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            (c[3] == "0").then(|| c[1].parse().unwrap())
        })
        .collect();
    assert_eq!(zeros.last(), Some(&4));
}

#[test]
fn certify_pass_and_fail_exit_codes() {
    let o = rotset(&["certify", "--rho", "0.93+pi*1e-5", "--max-index", "100000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.starts_with("PASS,100000")));

    let o = rotset(&["certify", "--rho", "93/100", "--uncertainty", "1e-2", "--max-index", "99"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).lines().any(|l| l.starts_with("FAIL,99")));
}

#[test]
fn uncertified_parameter_exits_two() {
    let o = rotset(&["classify", "--rho", "93/100", "--uncertainty", "1e-2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("certification failed"));
}

#[test]
fn domain_errors_exit_one() {
    for args in [
        &["classify", "--rho", "1.5"][..],
        &["classify", "--rho", "2/5"],
        &["alpha", "--rho", "0.7+"],
        &["hull", "--rho", "0.7", "--quadrants", "3"],
        &["frobnicate"],
        &["hull", "--rho", "0.93+pi*1e-5", "--max-index", "50", "--out", "/nonexistent/dir/h.json"],
    ] {
        let o = rotset(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn alpha_csv_matches_hand_values() {
    let o = rotset(&["alpha", "--rho", "7/10", "--count", "5"]);
    let text = stdout(&o);
    assert_eq!(header_value(&text, "rho_den"), Some("10"));
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows, ["m,alpha_num,alpha_den,member_i", "1,3,10,true", "2,3,5,true", "3,9,10,false", "4,1,5,true", "5,1,2,true"]);
}

#[test]
fn hull_svg_example() {
    let o = rotset(&["hull", "--rho", "0.5+1e-6", "--max-index", "2000", "--quadrants", "4", "--emit", "svg"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("<!--"));
    assert!(text.contains(r#"viewBox="0 0 1000 1000""#));
    assert!(text.trim_end().ends_with("</svg>"));
    assert_eq!(text.matches("<polygon").count(), 2);
}

#[test]
fn hull_csv_schema_and_extreme_flags() {
    let o = rotset(&["hull", "--rho", "0.93+pi*1e-5", "--max-index", "200", "--emit", "csv", "--points", "all"]);
    let text = stdout(&o);
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    assert_eq!(lines.next(), Some("m,n,sign_x,sign_y,x_num,x_den,y_num,y_den,is_extreme"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert!(rows.iter().all(|r| r.len() == 9));
    let extreme = rows.iter().filter(|r| r[8] == "true").count();
    let o = rotset(&["hull", "--rho", "0.93+pi*1e-5", "--max-index", "200", "--emit", "csv"]);
    let vertices = stdout(&o).lines().filter(|l| l.ends_with(",true")).count();
    // the extreme subset also contains the duplicate origin A_{0,0}
    assert!(extreme >= vertices && extreme <= vertices + 1);
    assert!(rows.iter().any(|r| r[0] == "13" && r[1] == "13" && r[8] == "true"));
}

#[test]
fn roundness_json_carries_precision() {
    let o = rotset(&["roundness", "--rho", "0.93+pi*1e-5", "--max-index", "500", "--digits", "6"]);
    let v = json(&o);
    let d = &v["result"]["decimals"];
    assert_eq!(d["precision"], 6);
    assert_eq!(d["upper_over_pi"], "0.659686");
    assert_eq!(v["result"]["report"]["sandwich"], true);
}

#[test]
fn precision_env_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_rotset"))
        .args(["certify", "--rho", "0.93+pi*1e-5", "--max-index", "1000"])
        .env("ROTSET_PRECISION", "12")
        .output()
        .unwrap();
    let text = stdout(&o);
    assert_eq!(header_value(&text, "precision"), Some("12"));
    assert_eq!(header_value(&text, "rho_num"), Some("465015707963"));
}

#[test]
fn scan_rows_and_svg() {
    let o = rotset(&["scan", "--from", "0.5", "--to", "0.7", "--step", "0.02", "--max-index", "300"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let cols: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&cols[..3], ["rho_expr", "rho_num", "rho_den"]);
    assert!(cols.contains(&"lower_factor_num") && cols.contains(&"iso_decimal") && cols.contains(&"tag"));
    assert_eq!(lines.count(), 10);
    let o = rotset(&["scan", "--from", "0.5", "--to", "0.7", "--step", "0.02", "--emit", "svg"]);
    assert!(stdout(&o).contains("<polyline"));
}

#[test]
fn simulate_json_fraction() {
    let o = rotset(&["simulate", "--rho", "0.93+pi*1e-5", "--orbits", "8", "--steps", "2000", "--emit", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["orbits"].as_array().unwrap().len(), 8);
    assert_eq!(v["result"]["fraction"], 1.0);
}

#[test]
fn claim_check_holds() {
    let o = rotset(&["claim-check", "--rho", "0.31+pi*1e-5", "--difference-index", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["holds"], true);
}
