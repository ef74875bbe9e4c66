//! End-to-end tests of the command surface.

use aom::cli::{run_command, CliError};
use aom::io::report::{from_slice, to_string, Value};

fn argv(parts: &[&str]) -> Vec<String> {
    std::iter::once("aom".to_string())
        .chain(parts.iter().map(|s| s.to_string()))
        .collect()
}

fn run(parts: &[&str]) -> Value {
    match run_command(&argv(parts)) {
        Ok(out) => out.report,
        Err(e) => panic!("command failed: {e:?}"),
    }
}

fn tempdir() -> tempfile::TempDir {
    tempfile::tempdir().expect("tempdir")
}

#[test]
fn simulate_then_test_roundtrip() {
    let dir = tempdir();
    let data = dir.path().join("sim.csv");
    let data = data.to_str().unwrap();
    let report = run(&[
        "simulate",
        "--n-alts",
        "4",
        "--n-per-menu",
        "120",
        "--seed",
        "3",
        "--out",
        data,
    ]);
    assert_eq!(report.get("status").and_then(Value::as_str), Some("ok"));
    assert_eq!(report.get("observations").and_then(Value::as_f64), Some(11.0 * 120.0));

    let result = run(&[
        "test",
        "--data",
        data,
        "--pref",
        "a1>a2>a3>a4",
        "--constraints",
        "aom,ram",
        "--alpha",
        "0.05",
        "--two-step",
        "--c3",
        "0.005",
        "--mc-draws",
        "500",
        "--seed",
        "9",
    ]);
    let inner = result.get("result").expect("result");
    assert_eq!(inner.get("reject").and_then(Value::as_bool), Some(false));
    assert_eq!(
        inner.get("n_constraints").and_then(Value::as_f64),
        Some(48.0)
    );

    // The truly-worst-first ordering is firmly rejected at this sample size.
    let flipped = run(&[
        "test", "--data", data, "--pref", "a4>a3>a2>a1", "--constraints", "aom",
        "--mc-draws", "500", "--seed", "9",
    ]);
    assert_eq!(
        flipped
            .get("result")
            .and_then(|r| r.get("reject"))
            .and_then(Value::as_bool),
        Some(true)
    );
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempdir();
    let data = dir.path().join("sim.csv");
    let data = data.to_str().unwrap();
    run(&[
        "simulate", "--n-alts", "3", "--n-per-menu", "60", "--seed", "5", "--out", data,
    ]);
    let args = [
        "test", "--data", data, "--pref", "a1>a2>a3", "--mc-draws", "500", "--seed", "11",
    ];
    let a = to_string(&run(&args));
    let b = to_string(&run(&args));
    assert_eq!(a, b);
    // And the structured text parses back.
    assert!(from_slice(a.as_bytes()).is_ok());
}

#[test]
fn simulated_datasets_are_seed_deterministic() {
    let dir = tempdir();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let c = dir.path().join("c.csv");
    for (path, seed) in [(&a, "7"), (&b, "7"), (&c, "8")] {
        run(&[
            "simulate", "--n-alts", "3", "--n-per-menu", "40", "--seed", seed, "--out",
            path.to_str().unwrap(),
        ]);
    }
    let read = |p: &std::path::Path| std::fs::read_to_string(p).unwrap();
    assert_eq!(read(&a), read(&b));
    assert_ne!(read(&a), read(&c));
}

/// The worked example, fed through the CLI as a counts file scaled to
/// integers: the surviving orders all rank d above c.
#[test]
fn elicit_population_mode_on_worked_example() {
    let dir = tempdir();
    let path = dir.path().join("example.csv");
    std::fs::write(
        &path,
        "menu,alternative,count\n\
         a;b;c;d,b,4\na;b;c;d,c,6\na;b;c;d,d,10\n\
         b;c;d,b,5\nb;c;d,d,15\n",
    )
    .unwrap();
    let report = run(&[
        "elicit",
        "--data",
        path.to_str().unwrap(),
        "--data-format",
        "counts",
        "--population",
    ]);
    assert_eq!(report.get("is_aom").and_then(Value::as_bool), Some(true));
    let pairs = report
        .get("revealed_pairs")
        .and_then(Value::as_array)
        .expect("pairs");
    let rendered: Vec<String> = pairs
        .iter()
        .map(|p| {
            let pair = p.as_array().unwrap();
            format!(
                "{}>{}",
                pair[0].as_str().unwrap(),
                pair[1].as_str().unwrap()
            )
        })
        .collect();
    assert!(rendered.contains(&"d>c".to_string()), "{rendered:?}");
}

#[test]
fn feasibility_on_contrast_tables() {
    let dir = tempdir();
    // Representable: three alternatives with regularity violations on a.
    let left = dir.path().join("left.csv");
    std::fs::write(
        &left,
        "menu,alternative,count\n\
         a;b;c,a,4\na;b;c,b,3\na;b;c,c,3\n\
         a;b,a,8\na;b,b,2\n\
         a;c,a,8\na;c,c,2\n\
         b;c,b,5\nb;c,c,5\n",
    )
    .unwrap();
    let report = run(&["feasibility", "--data", left.to_str().unwrap(), "--data-format", "counts"]);
    assert_eq!(report.get("is_aom").and_then(Value::as_bool), Some(true));
    let witness = report.get("witness").and_then(Value::as_str).unwrap();
    assert!(witness.starts_with("a>"), "witness {witness}");

    // Not representable: the four-alternative contrast table (scaled by 6).
    let right = dir.path().join("right.csv");
    std::fs::write(
        &right,
        "menu,alternative,count\n\
         a;b;c;d,a,3\na;b;c;d,b,3\n\
         a;b;c,b,4\na;b;c,c,2\n\
         a;b,a,3\na;b,b,3\n",
    )
    .unwrap();
    let report = run(&["feasibility", "--data", right.to_str().unwrap(), "--data-format", "counts"]);
    assert_eq!(report.get("is_aom").and_then(Value::as_bool), Some(false));
    assert_eq!(report.get("witness"), Some(&Value::Null));
}

#[test]
fn feasibility_with_preference_builds_representation() {
    let dir = tempdir();
    let path = dir.path().join("example.csv");
    std::fs::write(
        &path,
        "menu,alternative,count\n\
         a;b;c;d,b,4\na;b;c;d,c,6\na;b;c;d,d,10\n\
         b;c;d,b,5\nb;c;d,d,15\n",
    )
    .unwrap();
    let report = run(&[
        "feasibility",
        "--data",
        path.to_str().unwrap(),
        "--data-format",
        "counts",
        "--pref",
        "d>c>b>a",
    ]);
    assert_eq!(report.get("ac_satisfied").and_then(Value::as_bool), Some(true));
    let rep = report.get("pessimistic_representation").unwrap();
    assert_eq!(rep.get("feasible").and_then(Value::as_bool), Some(true));
    assert!(rep.get("max_reconstruction_error").and_then(Value::as_f64).unwrap() < 1e-8);
    assert_eq!(rep.get("attention_overload").and_then(Value::as_bool), Some(true));

    let bad = run(&[
        "feasibility",
        "--data",
        path.to_str().unwrap(),
        "--data-format",
        "counts",
        "--pref",
        "b>c>d>a",
    ]);
    assert_eq!(bad.get("ac_satisfied").and_then(Value::as_bool), Some(false));
    let worst = bad.get("worst_constraint").unwrap();
    assert_eq!(worst.get("alt").and_then(Value::as_str), Some("c"));
    assert!((worst.get("value").and_then(Value::as_f64).unwrap() - 0.05).abs() < 1e-9);
}

#[test]
fn bounds_command_reports_both_sides() {
    let dir = tempdir();
    let data = dir.path().join("sim.csv");
    let data = data.to_str().unwrap();
    run(&[
        "simulate", "--n-alts", "4", "--n-per-menu", "200", "--seed", "2", "--out", data,
    ]);
    let report = run(&[
        "bounds",
        "--data",
        data,
        "--target",
        "a1@a1;a2;a3",
        "--target",
        "a2@a1;a2",
        "--side",
        "both",
        "--pref",
        "a1>a2>a3>a4",
        "--mc-draws",
        "500",
        "--seed",
        "4",
        "--joint",
    ]);
    let bounds = report.get("bounds").and_then(Value::as_array).unwrap();
    assert_eq!(bounds.len(), 4);
    // Joint mode shares one critical value.
    let cvs: Vec<f64> = bounds
        .iter()
        .map(|b| b.get("cv").and_then(Value::as_f64).unwrap())
        .collect();
    assert!(cvs.windows(2).all(|w| (w[0] - w[1]).abs() < 1e-12));
    for b in bounds {
        let side = b.get("side").and_then(Value::as_str).unwrap();
        let value = b.get("value").and_then(Value::as_f64).unwrap();
        assert!(value.is_finite());
        assert!(side == "lower" || side == "upper");
    }
}

#[test]
fn reproduce_table1_population_mode_matches_reference_counts() {
    let report = run(&["reproduce-table1", "--reps", "0"]);
    let columns = report.get("columns").and_then(Value::as_array).unwrap();
    let restrictions: Vec<f64> = columns
        .iter()
        .map(|c| c.get("n_restrictions").and_then(Value::as_f64).unwrap())
        .collect();
    assert_eq!(
        restrictions,
        vec![664.0, 416.0, 1080.0, 1095.0, 1095.0, 1095.0, 1095.0]
    );
    let prefs = report.get("preferences").and_then(Value::as_array).unwrap();
    let violations = |p: usize, c: usize| {
        prefs[p].get("cells").and_then(Value::as_array).unwrap()[c]
            .get("n_violations")
            .and_then(Value::as_f64)
            .unwrap()
    };
    assert_eq!(violations(0, 0), 0.0);
    assert_eq!(violations(1, 0), 90.0);
    assert_eq!(violations(2, 2), 113.0);
    assert_eq!(violations(3, 4), 205.0);
    // Population mode emits no rejection rates.
    assert!(prefs[0].get("cells").and_then(Value::as_array).unwrap()[0]
        .get("rej_prob")
        .is_none());
}

#[test]
fn reproduce_figure1_population_mode() {
    let report = run(&["reproduce-figure1", "--reps", "0"]);
    let bounds = report.get("bounds").and_then(Value::as_array).unwrap();
    assert_eq!(bounds.len(), 14);
    // a1 rows are point-identified.
    for b in bounds
        .iter()
        .filter(|b| b.get("alt").and_then(Value::as_str) == Some("a1"))
    {
        let lower = b.get("lower").and_then(Value::as_f64).unwrap();
        let upper = b.get("upper").and_then(Value::as_f64).unwrap();
        let truth = b.get("true_phi").and_then(Value::as_f64).unwrap();
        assert!((lower - upper).abs() < 1e-9);
        assert!((lower - truth).abs() < 1e-9);
    }
}

#[test]
fn exit_codes_classify_failures() {
    // Unknown flag: usage.
    let err = run_command(&argv(&["test", "--nope"])).unwrap_err();
    assert!(matches!(err, CliError::Usage(_)));

    // Missing file: data error.
    let err = run_command(&argv(&[
        "test", "--data", "/nonexistent/x.csv", "--pref", "a>b",
    ]))
    .unwrap_err();
    assert!(matches!(err, CliError::Data(_)));

    // Malformed data file: data error with line info.
    let dir = tempdir();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "menu,choice\na;b,zzz\n").unwrap();
    let err = run_command(&argv(&[
        "test",
        "--data",
        path.to_str().unwrap(),
        "--pref",
        "a>b",
    ]))
    .unwrap_err();
    assert!(matches!(err, CliError::Data(_)));

    // Bad preference literal: usage error.
    std::fs::write(&path, "menu,choice\na;b,a\n").unwrap();
    let err = run_command(&argv(&[
        "test",
        "--data",
        path.to_str().unwrap(),
        "--pref",
        "a>a",
    ]))
    .unwrap_err();
    assert!(matches!(err, CliError::Usage(_)));

    // Binary constraints without eta: computation error carrying a report.
    let err = run_command(&argv(&[
        "test",
        "--data",
        path.to_str().unwrap(),
        "--pref",
        "a>b",
        "--constraints",
        "binary",
    ]))
    .unwrap_err();
    match err {
        CliError::Compute { report, .. } => {
            assert_eq!(report.get("status").and_then(Value::as_str), Some("error"));
        }
        other => panic!("expected Compute, got {other:?}"),
    }

    // Help is not a failure.
    let err = run_command(&argv(&["--help"])).unwrap_err();
    assert!(matches!(err, CliError::Help(_)));
}

#[test]
fn table_output_renders_reference_rows() {
    let out = run_command(&argv(&["reproduce-table1", "--reps", "0", "--output", "table"]))
        .unwrap();
    let text = aom::cli::to_table(&out.report);
    assert!(text.contains("# restrictions"));
    assert!(text.contains("# violations"));
    assert!(text.contains("max inequality"));
}
