use std::process::{Command, Output};

fn qdl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdl"))
        .args(args)
        .output()
        .expect("qdl runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("missing {key}"))
}

#[test]
fn analyze_boundary_point() {
    let o = qdl(&[
        "analyze",
        "--scenario",
        "system",
        "--d",
        "0.8",
        "--r-s",
        "0.6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(value(&text, "b_max_horodecki"), "2.000000000");
    assert_eq!(value(&text, "b_max_closed_form"), "2.000000000");
    assert_eq!(value(&text, "chsh_violating"), "false");
    assert_eq!(value(&text, "lrt_explainable"), "true");
}

#[test]
fn analyze_ideal_monitoring() {
    let text = stdout(&qdl(&[
        "analyze",
        "--scenario",
        "free",
        "--d",
        "1",
        "--r",
        "0.5",
    ]));
    assert_eq!(value(&text, "b_max_horodecki"), "2.828427125");
    assert_eq!(value(&text, "b_max_brute"), "2.828427125");
    assert_eq!(value(&text, "entangled"), "true");
    assert_eq!(value(&text, "above_info_threshold"), "none");
}

#[test]
fn analyze_classical_meter() {
    let text = stdout(&qdl(&[
        "analyze",
        "--scenario",
        "meter",
        "--d",
        "0.9",
        "--r-m",
        "0",
    ]));
    assert_eq!(value(&text, "entangled"), "false");
    assert_eq!(value(&text, "chsh_violating"), "false");
    assert_eq!(value(&text, "negativity"), "0.000000000");
}

#[test]
fn analyze_is_deterministic_and_thread_independent() {
    let args = [
        "analyze",
        "--scenario",
        "combined",
        "--d",
        "0.7",
        "--r-s",
        "0.9",
        "--r-m",
        "0.5",
        "--seed",
        "3",
    ];
    let a = qdl(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_qdl"))
        .args(args)
        .env("QDL_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["analyze", "--scenario", "system", "--d", "1.5"],
        vec![
            "analyze",
            "--scenario",
            "system",
            "--d",
            "0.5",
            "--r",
            "0.2",
        ],
        vec![
            "analyze",
            "--scenario",
            "meter",
            "--d",
            "0.5",
            "--r-s",
            "0.2",
        ],
        vec!["analyze", "--scenario", "sideways", "--d", "0.5"],
        vec![
            "analyze",
            "--scenario",
            "free",
            "--d",
            "0.5",
            "--restarts",
            "0",
        ],
        vec!["figure", "8", "--out", "x.csv"],
        vec!["figure", "1", "--resolution", "5", "--out", "x.csv"],
        vec!["figure", "1", "--out", "/nonexistent-dir/x.csv"],
        vec!["verify", "--suite", "everything"],
        vec!["verify", "--tolerance", "-1"],
        vec!["frobnicate"],
    ] {
        let o = qdl(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_qdl"))
        .args(["verify", "--suite", "ppt"])
        .env("QDL_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn figure_csv_shape() {
    let dir = tempfile::tempdir().unwrap();
    let headers = [
        "D,U,B_max",
        "O,R,B_max",
        "D,R,V,lrt_explainable",
        "D,R,I_AB,chsh_violating",
        "R,D,B_max",
        "D,R,I_AB,chsh_violating",
        "R_S,R_M,D_threshold",
    ];
    for (n, header) in (1..=7).zip(headers) {
        let path = dir.path().join(format!("fig{n}.csv"));
        let o = qdl(&[
            "figure",
            &n.to_string(),
            "--resolution",
            "11",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(!text.contains('\r'));
        assert!(text.ends_with('\n'));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], header);
        assert_eq!(lines.len(), 1 + 121);
        let columns = header.split(',').count();
        for line in &lines[1..] {
            let cells: Vec<&str> = line.split(',').collect();
            assert_eq!(cells.len(), columns);
            for c in cells {
                if c != "true" && c != "false" {
                    let (_, frac) = c.split_once('.').expect("fixed-point value");
                    assert_eq!(frac.len(), 9, "{c}");
                }
            }
        }
    }
}

#[test]
fn figure_reference_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.csv");
    qdl(&[
        "figure",
        "1",
        "--resolution",
        "11",
        "--out",
        path.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text
        .lines()
        .any(|l| l == "1.000000000,1.000000000,2.828427125"));

    let path = dir.path().join("fig7.csv");
    qdl(&[
        "figure",
        "7",
        "--resolution",
        "11",
        "--out",
        path.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        text.lines().last().unwrap(),
        "1.000000000,1.000000000,0.000000000"
    );
}

#[test]
fn verify_passes_and_fails_on_demand() {
    let o = qdl(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("summary: 8/8 suites passed"));
    for suite in [
        "identities",
        "closed-form",
        "brute-force",
        "boundary",
        "ppt",
        "entropy",
        "threshold",
        "discrepancy",
    ] {
        assert!(
            text.contains(&format!("suite {suite}: PASS max_residual=")),
            "{suite}"
        );
    }

    let o = qdl(&["verify", "--tolerance", "1e-15"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("result=FAIL"));
}

#[test]
fn meter_threshold_table() {
    let o = qdl(&["verify", "--suite", "meter-threshold"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows = text.lines().filter(|l| l.starts_with("  |   0.")).count();
    assert_eq!(rows, 7);
}
