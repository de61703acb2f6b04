//! End-to-end checks of the `cff` binary: output, exit codes, JSON lines,
//! CSV format, and the CFF_BIT_BUDGET override.

use std::process::{Command, Output};

fn cff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cff"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn cff_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cff"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn eval_prints_exact_decimal() {
    let out = cff(&["eval", "5 -. 7"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "0\n");
    assert_eq!(stdout(&cff(&["eval", "1 % 0"])), "1\n");
    assert_eq!(stdout(&cff(&["eval", "2^10"])), "1024\n");
    assert_eq!(stdout(&cff(&["eval", "7 / 2"])), "3\n");
    assert_eq!(
        stdout(&cff(&["eval", "x*(y+1)", "-b", "x=3", "-b", "y=4"])),
        "15\n"
    );
    assert_eq!(
        stdout(&cff(&["eval", "2 ^ 128"])),
        "340282366920938463463374607431768211456\n"
    );
}

#[test]
fn eval_errors_exit_2() {
    let out = cff(&["eval", "3 - 1"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error"));
    let out = cff(&["eval", "x + 1"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unbound variable `x`"));
    // Capacity problems are usage-class failures too.
    let out = cff(&["eval", "2 ^ (2 ^ 40)"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("capacity"));
}

#[test]
fn eval_reads_term_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("term.txt");
    std::fs::write(&path, "gcd(10, factorial(floor_root(2, 10)))").unwrap();
    let out = cff(&["eval", "--file", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "2\n");
}

#[test]
fn factor_worked_examples() {
    let out = cff(&["factor", "50", "--method", "t"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("T(50) = 10 (proper divisor)"));
    assert!(stdout(&out).contains("50 = 10 * 5"));

    let out = cff(&["factor", "12", "--method", "u"]);
    assert!(stdout(&out).contains("U(12) = 2"));

    // Method names match either letter case.
    let out = cff(&["factor", "20", "--method", "T"]);
    assert!(stdout(&out).contains("T(20) = 2"));

    let out = cff(&["factor", "10", "--method", "t", "--json"]);
    let json_line = stdout(&out).lines().last().unwrap().to_string();
    let v: serde_json::Value = serde_json::from_str(&json_line).unwrap();
    assert_eq!(v["divisor"], 2);
    assert_eq!(v["chi"], 1);
    assert_eq!(v["omega"], 2);
    assert_eq!(v["root"], 3);
    assert_eq!(v["proper"], true);
}

#[test]
fn factor_term_backend_and_budget_override() {
    // The full-term omega(50) needs ~16.4M bits: rejected under the default
    // ceiling, accepted when CFF_BIT_BUDGET raises it.
    let out = cff(&["factor", "50", "--method", "t", "--backend", "term"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("capacity"));
    let out = cff_env(
        &["factor", "50", "--method", "t", "--backend", "term"],
        "CFF_BIT_BUDGET",
        "20000000",
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("T(50) = 10"));
}

#[test]
fn factor_prime_is_flagged_but_exits_zero() {
    let out = cff(&["factor", "13"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("no proper divisor"));
    let out = cff(&["factor", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn chi_and_omega_commands() {
    assert_eq!(stdout(&cff(&["chi", "16"])), "4\n");
    assert_eq!(stdout(&cff(&["chi", "50", "--backend", "native"])), "5\n");
    assert_eq!(stdout(&cff(&["omega", "10"])), "2\n");
    assert_eq!(stdout(&cff(&["omega", "30", "--backend", "native"])), "3\n");
    assert_eq!(code(&cff(&["chi", "0"])), 2);
}

#[test]
fn auto_backend_falls_back_to_native_beyond_the_ceiling() {
    // chi(2000) wants ~16G bits as a full term; auto quietly goes native,
    // while an explicit term request is a capacity error.
    let out = cff(&["chi", "2000"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "20\n");
    let out = cff(&["chi", "2000", "--backend", "term"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("capacity"));
    // Within the ceiling, auto picks the full term.
    let out = cff(&["factor", "10", "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).lines().last().unwrap()).unwrap();
    assert_eq!(v["backend"], "full-term");
}

#[test]
fn emit_formulas() {
    let out = cff(&["emit", "--formula", "delta"]);
    assert_eq!(stdout(&out), "(2 ^ b -. 1) * (2 ^ b -. a + 1)\n");

    let out = cff(&["emit", "--formula", "gcd", "-b", "a=10", "-b", "b=6"]);
    assert!(stdout(&out).ends_with("value = 2\n"), "{}", stdout(&out));

    let out = cff(&["emit", "--formula", "chi", "--stats", "-b", "n=10"]);
    let text = stdout(&out);
    assert!(text.contains("nodes = "));
    assert!(text.contains("pow_nodes = "));
    assert!(text.ends_with("value = 1\n"), "{text}");

    // The emitted text re-parses and re-evaluates to the same value.
    let term_text = text.lines().next().unwrap().to_string();
    let out = cff(&["eval", &term_text, "-b", "n=10"]);
    assert_eq!(stdout(&out), "1\n");

    assert_eq!(code(&cff(&["emit", "--formula", "gseries"])), 2);
    assert_eq!(code(&cff(&["emit", "--formula", "gseries", "--r", "3"])), 2);
    assert_eq!(code(&cff(&["emit", "--formula", "nope"])), 2);
    let out = cff(&["emit", "--formula", "gseries", "--r", "4"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn count_subcommand_reads_spec_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    std::fs::write(
        &path,
        r#"{"k":1,"t":6,"u":4,"c0":9,"monomials":[{"c":1,"v":[1],"r":[2]},{"c":-6,"v":[1],"r":[1]}]}"#,
    )
    .unwrap();
    let out = cff(&["count", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out), "1\n");

    // u too small for the bound: the validator must refuse.
    std::fs::write(
        &path,
        r#"{"k":1,"t":6,"u":3,"c0":9,"monomials":[{"c":1,"v":[1],"r":[2]},{"c":-6,"v":[1],"r":[1]}]}"#,
    )
    .unwrap();
    let out = cff(&["count", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("violates"));
}

#[test]
fn verify_exit_codes_and_json_lines() {
    let out = cff(&["verify", "--suite", "chi", "--range", "1..12"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("suite chi: 24/24 ok"));

    let out = cff(&["verify", "--suite", "nope"]);
    assert_eq!(code(&out), 2);

    let out = cff(&["verify", "--suite", "witness", "--range", "1..6", "--json"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 18);
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).expect("valid JSON per line");
        let obj = v.as_object().unwrap();
        let mut keys: Vec<_> = obj.keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(
            keys,
            ["bits", "expected", "got", "input", "micros", "ok", "suite"]
        );
        assert_eq!(v["ok"], true);
    }
}

#[test]
fn verify_systems_spans_both_lemma_ranges() {
    let out = cff(&["verify", "--suite", "systems", "--range", "2..24"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("suite systems: 42/42 ok"));
}

#[test]
fn bench_csv_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let out = cff(&[
        "bench",
        "--formula",
        "chi",
        "--max-n",
        "8",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,bits,micros"));
    let first = lines.next().unwrap();
    let fields: Vec<&str> = first.split(',').collect();
    assert_eq!(fields.len(), 3);
    assert_eq!(fields[0], "2");
    assert_eq!(fields[1], "48"); // 2(n+4)n² = 48 at n = 2
    assert_eq!(csv.lines().count(), 8); // header + n in 2..=8
}

#[test]
fn bench_omega_reports_values() {
    let out = cff(&["bench", "--formula", "omega", "--max-n", "5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let n5 = text
        .lines()
        .find(|l| l.trim_start().starts_with("5 "))
        .unwrap();
    let fields: Vec<&str> = n5.split_whitespace().collect();
    assert_eq!(fields[1], "1"); // omega(5) = 1
}
