use std::process::{Command, Output};

use pretzel_hfk_cli::{parse_csv, OutputRecord};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pretzel-hfk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn compute(a: &str, b: &str, c: &str, sign: &str, format: &str) -> Output {
    run(&[
        "compute", "--a", a, "--b", b, "--c", c, "--sign", sign, "--format", format,
    ])
}

#[test]
fn compute_json_overlap_example() {
    let out = compute("3", "1", "2", "+", "json");
    assert_eq!(out.status.code(), Some(0));
    let record: OutputRecord = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(record.classification, "overlap");
    assert_eq!(record.generators.iter().map(|g| g.rank).sum::<u64>(), 13);
    assert_eq!((record.knot.p, record.knot.q, record.knot.r), (6, -3, 5));
    assert!(record.checks.values().all(|v| v == "pass" || v == "skipped"));
    let keys: Vec<(i64, i64)> = record.generators.iter().map(|g| (g.s, g.delta_times_2)).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn json_round_trips() {
    let text = stdout(&compute("2", "1", "3", "-", "json"));
    let record: OutputRecord = serde_json::from_str(&text).unwrap();
    let again: OutputRecord = serde_json::from_str(&serde_json::to_string(&record).unwrap()).unwrap();
    assert_eq!(record, again);
}

#[test]
fn csv_agrees_with_json() {
    for (a, b, c, s) in [("1", "1", "2", "+"), ("3", "1", "2", "+"), ("2", "4", "3", "-")] {
        let csv_out = compute(a, b, c, s, "csv");
        let rows = parse_csv(&stdout(&csv_out)).unwrap();
        let record: OutputRecord = serde_json::from_str(&stdout(&compute(a, b, c, s, "json"))).unwrap();
        assert_eq!(rows, record.generators);
    }
}

#[test]
fn csv_trefoil_like_has_seven_rows_in_one_delta() {
    let text = stdout(&compute("1", "1", "2", "+", "csv"));
    let rows = parse_csv(&text).unwrap();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r.delta_times_2 == rows[0].delta_times_2));
    assert!(text.starts_with("s,delta_times_2,rank\n"));
}

#[test]
fn latex_and_ascii_render() {
    let latex = stdout(&compute("3", "1", "2", "+", "latex"));
    assert!(latex.contains("\\begin{tabular}"));
    assert!(latex.contains("$\\delta= -1/2$"));
    let ascii = stdout(&compute("3", "1", "2", "+", "ascii"));
    assert!(ascii.contains("mu = s"));
    assert!(ascii.lines().count() > 5);
}

#[test]
fn invalid_parameters_exit_2() {
    assert_eq!(compute("0", "1", "1", "+", "json").status.code(), Some(2));
    assert_eq!(compute("1", "1", "1", "x", "json").status.code(), Some(2));
    assert_eq!(compute("1", "1", "1", "+", "yaml").status.code(), Some(2));
    assert_eq!(
        run(&["sweep", "--max-a", "0", "--max-b", "1", "--max-c", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn alex_oracle() {
    let out = run(&["alex", "--p", "6", "--q", "-3", "--r", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("t^3 - 2t^2 + 3 - 2t^-2 + t^-3"));
    assert!(text.contains("determinant 3"));
    assert!(stdout(&run(&["alex", "--p", "2", "--q", "-3", "--r", "5"])).contains("determinant 11"));
    assert_eq!(
        run(&["alex", "--p", "2", "--q", "-4", "--r", "6"]).status.code(),
        Some(2)
    );
}

#[test]
fn sweeps() {
    let out = run(&["sweep", "--max-a", "1", "--max-b", "1", "--max-c", "1", "--sign", "+"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("P(2,-3,3)"));

    let out = run(&[
        "sweep", "--max-a", "4", "--max-b", "4", "--max-c", "4", "--sign", "both",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("128 knots, 128 passed, 0 failed"));
    let again = run(&[
        "sweep", "--max-a", "4", "--max-b", "4", "--max-c", "4", "--sign", "both",
    ]);
    assert_eq!(stdout(&again), text, "sweep output order is deterministic");
}

#[test]
fn verify_prints_every_check() {
    let out = run(&["verify", "--a", "3", "--b", "1", "--c", "2", "--sign", "+"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for name in pretzel_hfk::hfk::CHECK_NAMES {
        assert!(text.contains(name), "{name}");
    }
}
