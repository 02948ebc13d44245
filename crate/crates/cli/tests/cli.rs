use std::process::{Command, Output};

fn vir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vir"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

const SAMPLE: [&str; 8] = ["--z", "1", "--m2", "1", "--m3", "1", "--m4", "3"];

#[test]
fn bracket_example() {
    let o = vir(&["bracket", "l(2)", "l(-2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-4*l(0) + 1/2*c");
    let o = vir(&["bracket", "l(1)", "l(2)", "--format", "json"]);
    assert_eq!(stdout(&o), r#"{"terms":[{"word":[3],"c":0,"coeff":"1"}]}"#);
}

#[test]
fn act_example_numeric_and_symbolic() {
    let mut args = vec!["act", "--module", "W"];
    args.extend(SAMPLE);
    args.extend(["l(2) - z*l(1) - m2", "z*l(0)*v - l(1)*v"]);
    let o = vir(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "-1*v");
    let o = vir(&["act", "--module", "W", "l(2) - z*l(1) - m2", "z*l(0)*v - l(1)*v"]);
    assert_eq!(stdout(&o), "(m3 - 2*z*m2)*v");
}

#[test]
fn normal_order_and_compare() {
    let o = vir(&["normal-order", "l(1)*l(-1)"]);
    assert_eq!(stdout(&o), "l(-1)*l(1) - 2*l(0)");
    assert_eq!(stdout(&vir(&["compare-index", "[2]", "[0,1]"])), "greater");
    assert_eq!(stdout(&vir(&["compare-index", "[0,2]", "[1,0,1]"])), "less");
    assert_eq!(stdout(&vir(&["compare-index", "[0,1]", "[0,1]"])), "equal");
}

#[test]
fn kernel_and_solve() {
    let mut args = vec!["kernel", "--module", "W", "--max-j", "6", "--max-k", "6"];
    args.extend(SAMPLE);
    args.push("l(2) - z*l(1) - m2");
    let o = vir(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("kernel dimension 1"), "{}", stdout(&o));

    let mut args = vec!["solve", "--module", "W", "--format", "json"];
    args.extend(SAMPLE);
    args.extend(["l(2) - z*l(1) - m2", "v"]);
    let o = vir(&args);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["solvable"], true);
    assert_eq!(v["kernel"].as_array().unwrap().len(), 1);
}

#[test]
fn usage_errors_exit_two() {
    let o = vir(&["act", "l(1)", "v * l(1)"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("rightmost") && err.contains("column 3"), "{err}");
    assert_eq!(vir(&["kernel", "l(2)"]).status.code(), Some(2), "symbolic kernel is refused");
    assert_eq!(vir(&["probe", "--z", "1"]).status.code(), Some(2));
    assert_eq!(vir(&["check", "nonsense"]).status.code(), Some(2));
    assert_eq!(vir(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(vir(&["bracket", "l(1)*l(2)", "l(0)"]).status.code(), Some(2));
    assert_eq!(vir(&["act", "--z", "0", "l(1)", "v"]).status.code(), Some(2));
}

#[test]
fn probe_refuses_degenerate_points_unless_forced() {
    let args = ["probe", "--z", "1", "--m2", "1", "--m3", "1", "--m4", "1", "--trials", "5"];
    let o = vir(&args);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("z*m3 != m4") && err.contains("--force"), "{err}");
    let mut forced = args.to_vec();
    forced.push("--force");
    let o = vir(&forced);
    assert!(matches!(o.status.code(), Some(0) | Some(1)));
}

#[test]
fn check_reports_are_byte_stable() {
    let args = ["check", "order", "--format", "json", "--no-timings", "--seed", "5"];
    let a = vir(&args);
    let b = vir(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["check"], "order");
    assert_eq!(v["status"], "pass");
    assert_eq!(v["elapsed_ms"], 0);
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["check", "status", "details", "elapsed_ms"]);
}

#[test]
fn classify_subalgebra_passes() {
    let o = vir(&["classify-subalgebra", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["saturated_basis"][0], "-a2^2 + a3");
    assert_eq!(vir(&["classify-subalgebra", "--kmax", "5"]).status.code(), Some(2));
}
