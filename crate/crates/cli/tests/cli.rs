use std::path::PathBuf;

use defcol::format::{parse_assignment, parse_instance};
use defcol_core::{complete, grid, random_bounded_degree, random_linear, verify, Hypergraph};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let status = defcol::run(
        std::iter::once("defcol").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        status,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const C5: &str = "# five-cycle\n5 5 2\n0 1\n1 2\n2 3\n3 4\n4 0\n";

#[test]
fn generate_complete_header() {
    let (status, out, _) = run(&["generate", "--family", "complete", "--n", "5", "--u", "3"]);
    assert_eq!(status, 0);
    assert_eq!(out.lines().next(), Some("5 10 3"));
    assert_eq!(parse_instance(&out).unwrap(), complete(5, 3).unwrap());
}

#[test]
fn generate_round_trips_every_family() {
    let cases: [(&[&str], Hypergraph); 4] = [
        (
            &["--family", "complete", "--n", "6", "--u", "4"],
            complete(6, 4).unwrap(),
        ),
        (
            &["--family", "grid", "--n", "4", "--r", "2"],
            grid(4, 2).unwrap().hypergraph,
        ),
        (
            &[
                "--family", "random", "--n", "30", "--u", "3", "--cap", "5", "--m", "40", "--seed",
                "8",
            ],
            random_bounded_degree(30, 3, 5, 40, 8).unwrap(),
        ),
        (
            &[
                "--family",
                "random-linear",
                "--n",
                "30",
                "--u",
                "3",
                "--cap",
                "3",
                "--m",
                "25",
                "--seed",
                "2",
            ],
            random_linear(30, 3, 3, 25, 2).unwrap(),
        ),
    ];
    for (flags, expected) in cases {
        let args: Vec<&str> = std::iter::once("generate")
            .chain(flags.iter().copied())
            .collect();
        let (status, out, _) = run(&args);
        assert_eq!(status, 0);
        assert_eq!(parse_instance(&out).unwrap(), expected, "{flags:?}");
    }
}

#[test]
fn generate_missing_parameter_is_usage_error() {
    let (status, _, err) = run(&["generate", "--family", "grid", "--n", "4"]);
    assert_eq!(status, 2);
    assert!(err.contains("--r"), "{err}");
}

#[test]
fn maxcut_colouring_of_five_cycle() {
    let path = scratch("c5.txt", C5);
    let (status, out, _) = run(&[
        "color",
        path.to_str().unwrap(),
        "--mode",
        "graph-maxcut",
        "--defect",
        "1",
    ]);
    assert_eq!(status, 0);
    assert!(out.contains("# colours_used 2\n"), "{out}");
    assert!(out.contains("# verify pass"), "{out}");
    let h = parse_instance(C5).unwrap();
    let phi = parse_assignment(&out, 5).unwrap();
    assert!(verify(&h, &phi, 1).unwrap().is_defective());
}

#[test]
fn color_output_feeds_verify() {
    let inst = scratch(
        "r3.txt",
        &defcol::format::write_instance(&random_bounded_degree(40, 3, 8, 90, 1).unwrap()),
    );
    let (status, out, _) = run(&[
        "color",
        inst.to_str().unwrap(),
        "--defect",
        "2",
        "--seed",
        "4",
    ]);
    assert_eq!(status, 0);
    let assignment = scratch("r3.col", &out);
    let (status, out, _) = run(&[
        "verify",
        inst.to_str().unwrap(),
        assignment.to_str().unwrap(),
        "--defect",
        "2",
    ]);
    assert_eq!(status, 0, "{out}");
}

#[test]
fn verify_reports_violations_with_status_one() {
    let inst = scratch("c5-verify.txt", C5);
    let assignment = scratch("c5-bad.col", "0 0\n1 0\n2 0\n3 1\n4 1\n");
    let (status, out, _) = run(&[
        "verify",
        inst.to_str().unwrap(),
        assignment.to_str().unwrap(),
    ]);
    assert_eq!(status, 1);
    assert!(out.contains("# verify fail"));
    assert!(out.contains("# violating [0 1 2 3 4]"), "{out}");
    let (status, _, _) = run(&[
        "verify",
        inst.to_str().unwrap(),
        assignment.to_str().unwrap(),
        "--defect",
        "2",
    ]);
    assert_eq!(status, 0);
}

#[test]
fn malformed_input_is_usage_error_with_line() {
    let inst = scratch("broken.txt", "# header next\n3 2 2\n0 1\n0 9\n");
    let (status, _, err) = run(&["color", inst.to_str().unwrap()]);
    assert_eq!(status, 2);
    assert!(err.contains("line 4"), "{err}");
    let ok = scratch("c5-partial.txt", C5);
    let partial = scratch("partial.col", "0 0\n1 1\n");
    let (status, _, err) = run(&["verify", ok.to_str().unwrap(), partial.to_str().unwrap()]);
    assert_eq!(status, 2);
    assert!(err.contains("no colour"), "{err}");
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["color"]).0, 2);
    assert_eq!(run(&["bench", "--suite", "nope"]).0, 2);
    assert_eq!(run(&["color", "x.txt", "--mode", "psychic"]).0, 2);
    assert_eq!(run(&["color", "/nonexistent/instance.txt"]).0, 2);
    let (status, out, _) = run(&["--help"]);
    assert_eq!(status, 0);
    assert!(out.contains("bench"));
}

#[test]
fn naive_lll_rejects_non_linear_instance() {
    let inst = scratch(
        "k5.txt",
        &defcol::format::write_instance(&complete(5, 3).unwrap()),
    );
    let (status, _, err) = run(&["color", inst.to_str().unwrap(), "--mode", "naive-lll"]);
    assert_eq!(status, 2);
    assert!(err.contains("linear"), "{err}");
}

#[test]
fn exact_size_guard_and_force() {
    let inst = scratch("empty17.txt", "17 0 3\n");
    let (status, _, err) = run(&["exact", inst.to_str().unwrap(), "--limit", "3"]);
    assert_eq!(status, 2, "{err}");
    let (status, out, _) = run(&["exact", inst.to_str().unwrap(), "--limit", "3", "--force"]);
    assert_eq!(status, 0);
    assert!(out.contains("# chromatic 1"));
    let k5 = scratch(
        "k5-exact.txt",
        &defcol::format::write_instance(&complete(5, 3).unwrap()),
    );
    let (_, out, _) = run(&["exact", k5.to_str().unwrap(), "--limit", "2"]);
    assert!(out.contains("# chromatic none"));
}

#[test]
fn sunflower_and_maxcut_commands() {
    let inst = scratch(
        "sf.txt",
        &defcol::format::write_instance(&random_bounded_degree(20, 3, 20, 200, 3).unwrap()),
    );
    let (status, out, _) = run(&["sunflower", inst.to_str().unwrap(), "--petals", "3"]);
    assert_eq!(status, 0);
    assert!(
        out.lines().any(|l| l.starts_with("sunflower 0 core")),
        "{out}"
    );
    let (status, out, _) = run(&[
        "maxcut",
        inst.to_str().unwrap(),
        "--parts",
        "3",
        "--seed",
        "1",
    ]);
    assert_eq!(status, 0);
    assert!(out.contains("# guarantee pass"));
    assert_eq!(out.lines().filter(|l| !l.starts_with('#')).count(), 20);
}

#[test]
fn probe_commands() {
    let inst = scratch(
        "k6.txt",
        &defcol::format::write_instance(&complete(6, 3).unwrap()),
    );
    let path = inst.to_str().unwrap();
    let (status, out, _) = run(&[
        "probe",
        path,
        "--what",
        "mono-edge",
        "--k",
        "1",
        "--trials",
        "100",
    ]);
    assert_eq!(status, 0);
    assert!(out.contains("estimate 1 "), "{out}");
    let (status, out, _) = run(&[
        "probe",
        path,
        "--what",
        "bad-vertex",
        "--k",
        "4",
        "--defect",
        "1",
        "--trials",
        "100000",
    ]);
    assert_eq!(status, 0);
    assert!(out.contains("markov_ceiling 0.3125"), "{out}");
}

#[test]
fn bench_graphs_small_maxcut_column() {
    let json = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("bench-graphs.json");
    let (status, out, _) = run(&[
        "bench",
        "--suite",
        "graphs-small",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(status, 0, "{out}");
    let record: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(record["schema"], 1);
    let rows = record["outcome"]["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    for row in rows {
        let delta = row["delta"].as_u64().unwrap();
        if row["mode"] == "graph-maxcut" {
            assert_eq!(
                row["colours"].as_u64().unwrap(),
                delta / (row["defect"].as_u64().unwrap() + 1) + 1
            );
        }
        if delta >= 1 {
            let ratio = row["ratio"].as_f64().unwrap();
            assert!(ratio.is_finite() && ratio > 0.0);
        }
        assert_eq!(row["valid"], true);
    }
}

#[test]
fn bench_every_suite_and_empty_ensemble() {
    for suite in [
        "graphs-small",
        "uniform3-small",
        "linear3-small",
        "grid-small",
    ] {
        let (status, out, _) = run(&["bench", "--suite", suite, "--instances", "3", "--seed", "5"]);
        assert_eq!(status, 0, "{suite}: {out}");
    }
    let (status, out, _) = run(&["bench", "--suite", "grid-small", "--instances", "0"]);
    assert_eq!(status, 0);
    assert_eq!(out.lines().count(), 1);
}

#[test]
fn json_record_fields() {
    let inst = scratch("rec.txt", C5);
    let json = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("rec.json");
    let (status, _, _) = run(&[
        "color",
        inst.to_str().unwrap(),
        "--mode",
        "greedy-proper",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(status, 0);
    let record: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    for key in [
        "schema",
        "command",
        "params",
        "seed",
        "instance_digest",
        "outcome",
        "status",
        "wall_clock",
    ] {
        assert!(record.get(key).is_some(), "missing {key}");
    }
    assert_eq!(record["seed"], 0);
    assert_eq!(record["params"]["mode"], "greedy-proper");
    assert!(record["instance_digest"]
        .as_str()
        .unwrap()
        .starts_with("sha256:"));
    assert_eq!(record["outcome"]["verify"]["defective"], true);
}
