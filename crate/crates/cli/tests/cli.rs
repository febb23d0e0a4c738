use std::process::{Command, Output};

use coinwalk::dist::distribution;
use coinwalk::Rational;

fn coinwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coinwalk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// `(index, exact)` pairs from the standard `n,index,exact,decimal` table.
fn exact_column(csv: &str) -> Vec<(usize, Rational)> {
    csv.lines()
        .skip(1)
        .map(|line| {
            let cols: Vec<&str> = line.split(',').collect();
            (cols[1].parse().unwrap(), cols[2].parse().unwrap())
        })
        .collect()
}

#[test]
fn dist_tables() {
    let out = coinwalk(&["dist", "--n", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("n,index,exact,decimal"));
    let rows: Vec<(usize, String)> = exact_column(&text)
        .into_iter()
        .map(|(i, r)| (i, r.to_string()))
        .collect();
    assert_eq!(
        rows,
        vec![(0, "3/8".into()), (1, "1/8".into()), (2, "1/8".into()), (3, "3/8".into())]
    );

    let out = coinwalk(&["dist", "--n", "0"]);
    assert_eq!(stdout(&out).lines().nth(1), Some("0,0,1,1.00000000000000"));
}

#[test]
fn csv_exact_column_round_trips() {
    for m in [4u64, 11, 30] {
        let out = coinwalk(&["dist", "--n", &m.to_string()]);
        let parsed: Vec<Rational> = exact_column(&stdout(&out)).into_iter().map(|(_, r)| r).collect();
        assert_eq!(parsed, distribution(m).mass());
    }
}

#[test]
fn pgf_routes_print_the_same_polynomial() {
    for method in ["closed", "dp", "series", "oracle"] {
        let out = coinwalk(&["pgf", "--n", "3", "--method", method]);
        assert!(out.status.success(), "{method}");
        assert_eq!(stdout(&out).trim(), "3/8 + 1/8 q + 1/8 q^2 + 3/8 q^3", "{method}");
    }
}

#[test]
fn lagrange_telescoping_case() {
    let out = coinwalk(&["lagrange", "--a", "1", "--b", "0", "--order", "5"]);
    let values: Vec<String> = exact_column(&stdout(&out))
        .into_iter()
        .map(|(_, r)| r.to_string())
        .collect();
    assert_eq!(values, vec!["1"; 5]);

    let out = coinwalk(&["lagrange", "--a", "5/4", "--b", "-3/8", "--order", "3"]);
    assert!(out.status.success());
    let values: Vec<String> = exact_column(&stdout(&out))
        .into_iter()
        .map(|(_, r)| r.to_string())
        .collect();
    // P_2(5/4) = (3 * 25/16 - 1) / 2
    assert_eq!(values, vec!["1", "5/4", "59/32"]);
}

#[test]
fn conditional_rows_all_equal() {
    let out = coinwalk(&["conditional", "--n", "3"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,index,oracle,formula,equal");
    assert_eq!(lines.len(), 5);
    assert!(lines[1..].iter().all(|l| l.ends_with(",true")));
}

#[test]
fn verify_sections_exit_codes() {
    let out = coinwalk(&["verify", "--sections", "cond", "--max-n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("[ok] cond")).count(), 6);

    let out = coinwalk(&["verify", "--sections", "even", "--max-n", "10"]);
    assert_eq!(out.status.code(), Some(0));

    let out = coinwalk(&["verify", "--sections", "odd,legendre", "--max-n", "9", "--order", "12"]);
    assert_eq!(out.status.code(), Some(0));

    let out = coinwalk(&["verify", "--sections", "csaki", "--max-n", "10", "--order", "12", "--strict-csaki"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn full_verify_flags_only_the_printed_ratio() {
    let out = coinwalk(&["verify", "--max-n", "12", "--order", "16", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["passed"], false);
    let rows = report["rows"].as_array().unwrap();
    let bad: Vec<_> = rows
        .iter()
        .filter(|r| r["status"].as_str().unwrap().starts_with("mismatch") || r["status"] == "failed")
        .collect();
    assert!(!bad.is_empty());
    assert!(bad.iter().all(|r| r["section"] == "full"));
    assert_eq!(bad[0]["n"], 0);
    assert_eq!(bad[0]["status"], "mismatch@0");
}

#[test]
fn usage_and_domain_errors_exit_two() {
    let out = coinwalk(&["pgf", "--n", "3", "--method", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = coinwalk(&["dist"]);
    assert_eq!(out.status.code(), Some(2));
    let out = coinwalk(&["oracle", "--n", "30"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn json_and_simulation_output() {
    let out = coinwalk(&["oracle", "--n", "2", "--rule", "non-negative", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let exact: Vec<&str> = rows.as_array().unwrap().iter().map(|r| r["exact"].as_str().unwrap()).collect();
    assert_eq!(exact, vec!["0", "1/4", "1/4", "1/2"]);

    let run = |seed: &str| stdout(&coinwalk(&["simulate", "--m", "10", "--samples", "2000", "--seed", seed]));
    assert_eq!(run("9"), run("9"));
    let text = run("9");
    let counts: u64 = text.lines().skip(1).map(|l| l.split(',').nth(2).unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(counts, 2000);
}

#[test]
fn series_table_lists_nonzero_coefficients() {
    let out = coinwalk(&["series", "--kind", "odd", "--order", "4"]);
    let rows: Vec<(usize, usize, String)> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            (c[0].parse().unwrap(), c[1].parse().unwrap(), c[2].to_string())
        })
        .collect();
    assert_eq!(
        rows,
        vec![
            (1, 0, "1/2".to_string()),
            (1, 1, "1/2".to_string()),
            (3, 0, "3/8".to_string()),
            (3, 1, "1/8".to_string()),
            (3, 2, "1/8".to_string()),
            (3, 3, "3/8".to_string()),
        ]
    );
}
