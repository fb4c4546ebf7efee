use std::process::{Command, Output};

fn winv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_winv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn row<'a>(out: &'a str, name: &str) -> &'a str {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{name}: ")))
        .unwrap_or_else(|| panic!("no {name} row in {out}"))
}

#[test]
fn series_rows() {
    let o = winv(&["series", "--n", "1", "--prec", "4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(row(&out, "h"), "0,1,-1,1,-1");
    assert_eq!(row(&out, "x"), "0,1,1,1,1");
    assert_eq!(row(&stdout(&winv(&["series", "--n", "2", "--prec", "4"])), "h"), "0,1,-2,5,-14");
    let out = stdout(&winv(&["series", "--n", "1", "--prec", "0"]));
    for name in ["x", "h", "a", "b"] {
        assert_eq!(row(&out, name), "0");
    }
    assert!(!winv(&["series", "--n", "0", "--prec", "4"]).status.success());
}

#[test]
fn eval_values_and_exit_codes() {
    let field = "R((t1))((t2))";
    let o = winv(&["eval", "--inv", "f[1,2]", "--form", "pf(t1)+pf(t2)", "--field", field, "--mode", "H"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "(t1).(t2)");
    let o = winv(&["eval", "--inv", "f[2,3]", "--form", "pf(t1,t2)", "--field", field, "--mode", "H"]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = winv(&["eval", "--inv", "g[1,0]", "--form", "H", "--field", field, "--mode", "H"]);
    assert_eq!(stdout(&o).trim(), "1");

    let parse_errors = [
        ["f[1,2", "pf(t1)", field],
        ["f[1,2]", "pf(t1", field],
        ["f[1,2]", "pf(t9)", field],
        ["f[1,2]", "pf(t1)", "Q((t1))"],
    ];
    for [inv, form, k] in parse_errors {
        let o = winv(&["eval", "--inv", inv, "--form", form, "--field", k]);
        assert_eq!(o.status.code(), Some(2), "{inv} {form} {k}");
    }
    let o = winv(&["eval", "--inv", "f[2,1]", "--form", "pf(t1)", "--field", field]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_exit_codes_and_formats() {
    let o = winv(&["verify", "--suite", "product", "--n-max", "3", "--d-max", "6", "--samples", "100"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["suite"], "product");
    assert_eq!(report["cases_failed"], 0);
    assert!(report["first_failure"].is_null());
    assert!(report["cases_total"].as_u64().unwrap() > 100);

    let o = winv(&["verify", "--suite", "series", "--prec", "32"]);
    assert!(o.status.success());

    let o = winv(&["verify", "--suite", "pi", "--samples", "0"]);
    assert!(o.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["cases_total"], 0);

    assert_eq!(winv(&["verify", "--suite", "nope"]).status.code(), Some(2));

    let o = winv(&["verify", "--suite", "ram", "--samples", "5", "--format", "text"]);
    assert!(stdout(&o).starts_with("ram: PASS"));
    let o = winv(&["verify", "--suite", "ram", "--samples", "5", "--format", "csv"]);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert!(lines.next().unwrap().starts_with("suite,cases_total,cases_failed,passed"));
    assert!(lines.next().unwrap().starts_with("ram,"));

    let o = winv(&["verify", "--suite", "ram", "--field", "R", "--samples", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--suite", "simil", "--samples", "20", "--seed", "11", "--field", "F5((t1))((t2))", "--mode", "W"];
    let (a, b) = (winv(&args), winv(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
