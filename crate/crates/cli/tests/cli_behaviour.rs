use std::process::Command;

use a1h_cli::report::RhJson;
use a1h_cli::run;

fn bin(args: &[&str], seed_env: Option<&str>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_a1h"));
    cmd.args(args).env_remove("A1H_SEED");
    if let Some(s) = seed_env {
        cmd.env("A1H_SEED", s);
    }
    let out = cmd.output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn call(args: &[&str]) -> a1h_cli::Outcome {
    run(std::iter::once("a1h").chain(args.iter().copied()), None)
}

#[test]
fn documented_examples() {
    let o = call(&["rh", "--field", "Fpt:3", "(t - y^3)/y", "--json"]);
    assert_eq!(o.code, 0);
    let r: RhJson = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!((r.total.hyperbolic, r.total.residual.len()), (2, 0));
    assert!(r.verdict);

    let o = call(&["degree", "--field", "Q", "x^2"]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "h\n"));

    let o = call(&["gw-equal", "--field", "Fp:5", "<2>+<-2>", "h"]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "equal\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["gw-equal", "--field", "Q", "<1>+<1>", "h"]).code, 1);
    // field flag is mandatory except for real-check
    assert_eq!(call(&["rh", "y^2"]).code, 2);
    assert_eq!(call(&["real-check", "x^4 - 2*x^2"]).code, 0);
    assert_eq!(call(&["real-check", "--field", "Fp:3", "x^2"]).code, 2);
    assert_eq!(call(&["rh", "--field", "Fp:4", "y^2"]).code, 2);
    assert_eq!(call(&["rh", "--field", "Q", "2y"]).code, 2);
    assert_eq!(call(&["rh", "--field", "Q", "y + t"]).code, 2);
    assert_eq!(call(&["rh", "--field", "Fp:3", "y^3"]).code, 2);
    assert_eq!(call(&["frobnicate"]).code, 2);
    assert_eq!(call(&["--help"]).code, 0);
}

#[test]
fn errors_are_machine_readable() {
    let o = call(&["degree", "--field", "Q", "y/0", "--json"]);
    assert_eq!(o.code, 2);
    let v: serde_json::Value = serde_json::from_str(&o.stderr).unwrap();
    assert_eq!(v["error"]["code"], "ZeroDenominator");
    let o = call(&["degree", "--field", "Q", "y + t"]);
    assert!(o.stderr.starts_with("error[UnknownSymbol]"), "{}", o.stderr);
}

#[test]
fn leading_minus_is_an_expression() {
    let o = call(&["degree", "--field", "Q", "-y^3"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout, "h + <-1>\n");
}

#[test]
fn seed_flag_wins_over_environment() {
    let args = ["rh", "--field", "Fp:5", "(y^4 + 2)/(y^2 + 3)", "--json"];
    let (code, base, _) = bin(&args, None);
    assert_eq!(code, 0);
    // results are canonical, so any seed gives the same bytes
    let (code, env, _) = bin(&args, Some("12345"));
    assert_eq!((code, env.as_str()), (0, base.as_str()));
    let (code, _, err) = bin(&args, Some("not-a-seed"));
    assert_eq!(code, 2, "{err}");
    let mut with_flag = args.to_vec();
    with_flag.extend(["--seed", "7"]);
    let (code, flagged, _) = bin(&with_flag, Some("not-a-seed"));
    assert_eq!((code, flagged.as_str()), (0, base.as_str()));
}

#[test]
fn notes_stay_out_of_json() {
    let (code, out, err) = bin(&["rh", "--field", "Fp:5", "y^5 - y", "--json"], None);
    assert_eq!(code, 0);
    let _: RhJson = serde_json::from_str(&out).unwrap();
    assert!(err.starts_with("note: "));
    let (_, text, _) = bin(&["rh", "--field", "Fp:5", "y^5 - y"], None);
    assert!(text.contains("note: "));
}

#[test]
fn local_degree_and_bezout() {
    let o = call(&["local-degree", "--field", "Fpt:3", "(y^3 - t)/y^2", "y^3 - t"]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "h + <1>\n"));
    let o = call(&["local-degree", "--field", "Q", "x^2 - x", "x", "--multiplicity", "2"]);
    assert_eq!(o.code, 2);
    let o = call(&["bezout", "--field", "Q", "x", "1"]);
    assert_eq!(o.stdout, "[1]\nclass: <1>\n");
}
