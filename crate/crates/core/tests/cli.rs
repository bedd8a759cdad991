use std::fs;
use std::path::Path;
use std::process::Command;

use guarded_ball_cover::cli::run_command;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("gbc").chain(args.iter().copied());
    let code = run_command(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn build_hand_sketch(dir: &Path) -> std::path::PathBuf {
    let input = dir.join("hand.csv");
    fs::write(&input, "0,0,0\n2,0,0\n2.5,0,0\n4,0,0\n").unwrap();
    let sketch = dir.join("hand.json");
    let (code, _, err) = run(&["build", "--epsilon", "0.5", "--input", path_str(&input), "--save", path_str(&sketch)]);
    assert_eq!(code, 0, "{err}");
    sketch
}

#[test]
fn build_then_query_farthest_neighbor() {
    let dir = tempfile::tempdir().unwrap();
    let sketch = build_hand_sketch(dir.path());
    let (code, out, _) = run(&["query", "fn", "--sketch", path_str(&sketch), "--point", "-1,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(out, "4,0,0\ndistance 5\n");
}

#[test]
fn query_dimension_mismatch_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let sketch = build_hand_sketch(dir.path());
    let (code, out, err) = run(&["query", "fn", "--sketch", path_str(&sketch), "--point", "1,0"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("dimension"), "{err}");
}

#[test]
fn adversary_quarter() {
    let (code, out, _) = run(&["adversary", "--epsilon", "0.25"]);
    assert_eq!(code, 0);
    let field = |key: &str| -> f64 {
        let line = out.lines().find(|l| l.starts_with(key)).unwrap();
        line[key.len()..].split_whitespace().next().unwrap().parse().unwrap()
    };
    assert!((field("d_far=") - 4.5f64.sqrt()).abs() < 1e-12);
    assert!((field("d_near=") - 1.5f64.sqrt()).abs() < 1e-12);
    assert!((field("ratio=") - 3f64.sqrt()).abs() < 1e-12);
    assert!(out.trim_end().ends_with("verdict PASS"));
}

#[test]
fn adversary_export_and_bad_epsilon() {
    let dir = tempfile::tempdir().unwrap();
    let export = dir.path().join("lb.csv");
    let (code, _, _) = run(&["adversary", "--epsilon", "0.5", "--export", path_str(&export)]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&export).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 2);
    let (code, _, _) = run(&["adversary", "--epsilon", "0.4"]);
    assert_eq!(code, 1);
}

#[test]
fn sketch_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("s.csv");
    let mut csv = String::new();
    for p in guarded_ball_cover::workload::generate_stream(400, 5, guarded_ball_cover::workload::Distribution::Clustered, 4) {
        csv.push_str(&p.to_csv());
        csv.push('\n');
    }
    fs::write(&input, csv).unwrap();
    let first = dir.path().join("a.json");
    assert_eq!(run(&["build", "--epsilon", "0.3", "--input", path_str(&input), "--save", path_str(&first)]).0, 0);
    let bytes = fs::read(&first).unwrap();
    let cover = guarded_ball_cover::sketch::load(bytes.as_slice()).unwrap();
    let mut again = Vec::new();
    guarded_ball_cover::sketch::save(&cover, &mut again).unwrap();
    assert_eq!(bytes, again);
}

#[test]
fn stats_respect_the_ball_bound() {
    let dir = tempfile::tempdir().unwrap();
    for (eps, dist) in [(0.5, "gaussian"), (0.2, "sphere"), (1.0, "clustered")] {
        let input = dir.path().join(format!("{dist}.csv"));
        let distribution = dist.parse().unwrap();
        let csv: String = guarded_ball_cover::workload::generate_stream(600, 8, distribution, 11)
            .iter()
            .map(|p| p.to_csv() + "\n")
            .collect();
        fs::write(&input, csv).unwrap();
        let sketch = dir.path().join(format!("{dist}.json"));
        let eps = eps.to_string();
        assert_eq!(run(&["build", "--epsilon", &eps, "--input", path_str(&input), "--save", path_str(&sketch)]).0, 0);
        let (code, out, _) = run(&["stats", "--sketch", path_str(&sketch)]);
        assert_eq!(code, 0);
        let get = |key: &str| -> f64 {
            out.lines()
                .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')))
                .unwrap()
                .parse()
                .unwrap()
        };
        assert_eq!(get("points_seen"), 600.0);
        assert!(get("live_balls") <= get("max_ball_bound"), "{out}");
        assert!(get("stored_points") <= get("live_balls") + 1.0);
        assert!(get("r_max") > 0.0);
    }
}

#[test]
fn meb_coreset_and_diameter_on_hand_stream() {
    let dir = tempfile::tempdir().unwrap();
    let sketch = build_hand_sketch(dir.path());
    let (code, out, _) = run(&["coreset", "--sketch", path_str(&sketch)]);
    assert_eq!(code, 0);
    assert_eq!(out, "0,0,0\n2,0,0\n4,0,0\n");

    let (code, out, _) = run(&["meb", "--sketch", path_str(&sketch)]);
    assert_eq!(code, 0);
    let radius: f64 = out.lines().find_map(|l| l.strip_prefix("radius ")).unwrap().parse().unwrap();
    assert!((2.0..=(1.22 + 1.5) * 2.0).contains(&radius), "{out}");

    let (code, out, _) = run(&["diameter", "--epsilon", "0.5", "--input", path_str(&dir.path().join("hand.csv"))]);
    assert_eq!(code, 0);
    assert!(out.ends_with("distance 4\n"), "{out}");
}

#[test]
fn audit_jsonl_stream() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("s.jsonl");
    let lines: String = (0..120)
        .map(|i| format!("[{}, {}]\n", 1.15f64.powi(i) * if i % 2 == 0 { 1.0 } else { -1.0 }, (i % 7) as f64))
        .collect();
    fs::write(&input, lines).unwrap();
    let (code, out, _) = run(&["audit", "--epsilon", "0.5", "--input", path_str(&input), "--format", "jsonl"]);
    assert_eq!(code, 0, "{out}");
    for name in ["growth", "coverage", "space", "nesting", "eviction_guard"] {
        assert!(out.lines().any(|l| l.starts_with("PASS") && l.contains(name)), "{out}");
    }
    assert!(!out.contains("FAIL"));
}

#[test]
fn data_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.csv");
    fs::write(&input, "1,2\n1,2,3\n").unwrap();
    let save = dir.path().join("x.json");
    let (code, _, err) = run(&["build", "--epsilon", "0.5", "--input", path_str(&input), "--save", path_str(&save)]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");

    let (code, _, _) = run(&["build", "--epsilon", "0", "--input", path_str(&input), "--save", path_str(&save)]);
    assert_eq!(code, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["meb", "--sketch", path_str(&dir.path().join("missing.json"))]).0, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("bench"));
}

#[test]
fn bench_report_shape_and_reproducibility() {
    let args = ["bench", "--n", "300", "--d", "6", "--epsilon", "0.5", "--dist", "gaussian", "--seed", "5"];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(run(&args).1, out);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    for entry in report.as_array().unwrap() {
        for key in ["config", "measured_max_ratio", "bound", "pass"] {
            assert!(entry.get(key).is_some(), "{entry}");
        }
        assert_eq!(entry["config"]["seed"], 5);
    }
}

#[test]
fn binary_reads_stdin_and_reports_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let sketch = dir.path().join("s.json");
    let mut child = Command::new(env!("CARGO_BIN_EXE_gbc"))
        .args(["build", "--epsilon", "0.5", "--input", "-", "--save", path_str(&sketch)])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    {
        use std::io::Write;
        child.stdin.take().unwrap().write_all(b"0\n2\n1000\n").unwrap();
    }
    assert!(child.wait_with_output().unwrap().status.success());
    let status = Command::new(env!("CARGO_BIN_EXE_gbc"))
        .args(["query", "fn", "--sketch", path_str(&sketch), "--point", "1,1"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    let ok = Command::new(env!("CARGO_BIN_EXE_gbc"))
        .args(["coreset", "--sketch", path_str(&sketch)])
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "0\n1000\n");
}
