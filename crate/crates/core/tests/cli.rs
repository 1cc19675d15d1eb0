use std::process::{Command, Output};

fn ajf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ajf"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Runs a whitespace-separated command line.
fn sh(line: &str) -> Output {
    ajf(&line.split_whitespace().collect::<Vec<_>>())
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_examples() {
    let cases = [
        ("eval --l2 2 --m2 0 --q2 0 --x 0.5", "0.5"),
        ("eval --l2 0 --m2 0 --q2 0 --x 0.9", "1"),
        ("eval --l2 2 --m2 2 --q2 0 --x 0", "0.7071067811865476"),
        ("eval --l2 2 --m2 -2 --q2 0 --x 0", "-0.7071067811865476"),
    ];
    for (line, want) in cases {
        let o = sh(line);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), want);
    }
}

#[test]
fn eval_formats() {
    let o = sh("eval --l2 3 --m2 1 --q2 -1 --x -0.25 --format json --detail");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["l"], "3/2");
    assert!(v["classical"]["n"].is_number());
    let o = sh("eval --l2 2 --m2 0 --q2 0 --x 0.5 --format csv");
    assert_eq!(stdout(&o), "l2,m2,q2,x,value\n2,0,0,0.5,0.5\n");
}

#[test]
fn eval_rejects_bad_input() {
    let o = sh("eval --l2 2 --m2 4 --q2 0 --x 0.5");
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    let o = sh("eval --l2 2 --m2 0 --q2 0 --x 1");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ladder_examples() {
    let o = sh("ladder --generator A+ --l2 2 --m2 -2 --q2 0 --steps 3 --format json");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let coeffs: Vec<f64> = v["chain"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["coefficient"].as_f64().unwrap())
        .collect();
    assert_eq!(coeffs, vec![2f64.sqrt(), 2f64.sqrt(), 0.0]);

    let o = sh("ladder --generator C+ --l2 0 --m2 0 --q2 0 --steps 2");
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].contains("\"(1/2, 1/2, 1/2)\"") && rows[0].ends_with(",1,1"));
    assert!(rows[1].contains("\"(1, 1, 1)\"") && rows[1].ends_with(",2,2"));

    let o = sh("ladder --generator L --l2 2 --m2 0 --q2 0");
    assert_eq!(o.status.code(), Some(2));
    let o = sh("ladder --generator Z+ --l2 2 --m2 0 --q2 0");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_examples() {
    let o = sh("verify casimir --l2max 6");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);

    let o = sh("verify ortho --l2max 8 --m2 0 --q2 0");
    assert_eq!(o.status.code(), Some(0));

    // closure holds, but the printed table has flagged entries
    let o = sh("verify algebra --l2max 4 --format text");
    assert_eq!(o.status.code(), Some(3));
    let text = stdout(&o);
    assert!(text.contains("PASS        algebra: empirical closure"));
    assert!(text.contains("DISCREPANCY"));
    assert!(text.contains("[A+,C-]"));

    let o = sh("verify everything");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_is_byte_identical_across_runs() {
    let args = ["verify", "casimir", "--l2max", "4", "--seed", "11"];
    let a = ajf(&args);
    let b = ajf(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("seed 11"));
}

#[test]
fn verify_writes_report_file() {
    let dir = std::env::temp_dir().join(format!("ajf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = ajf(&[
        "verify",
        "factorization",
        "--l2max",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["checks"][0]["status"], "pass");
    std::fs::remove_dir_all(dir).unwrap();
}

fn coefficients(csv: &str) -> Vec<(i64, f64)> {
    csv.lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect()
}

fn tail(csv: &str) -> f64 {
    let line = csv.lines().find(|l| l.starts_with('#')).unwrap();
    line.rsplit("tail=").next().unwrap().parse().unwrap()
}

#[test]
fn expand_examples() {
    let o = sh("expand --function exp --m2 0 --q2 0 --l2max 32");
    assert_eq!(o.status.code(), Some(0));
    assert!(tail(&stdout(&o)).abs() <= 1e-12);

    let o = sh("expand --function x --m2 0 --q2 0 --l2max 8");
    for (l2, c) in coefficients(&stdout(&o)) {
        let want = if l2 == 2 { 1.0 } else { 0.0 };
        assert!((c - want).abs() <= 1e-13, "l2 = {l2}: {c}");
    }

    let o = sh("expand --function ajf:4,2,2 --m2 2 --q2 2 --l2max 10");
    for (l2, c) in coefficients(&stdout(&o)) {
        let want = if l2 == 4 { 1.0 } else { 0.0 };
        assert!((c - want).abs() <= 1e-13, "l2 = {l2}: {c}");
    }

    let o = sh("expand --function sin --m2 0 --q2 0 --l2max 4");
    assert_eq!(o.status.code(), Some(2));
    let o = sh("expand --function x --m2 1 --q2 0 --l2max 4");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn expand_from_samples() {
    let dir = std::env::temp_dir().join(format!("ajf-samples-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("line.csv");
    // a straight line is reproduced exactly by linear interpolation
    std::fs::write(&path, "x,value\n-1,-2\n0,0\n1,2\n").unwrap();
    let o = ajf(&[
        "expand",
        "--samples",
        path.to_str().unwrap(),
        "--m2",
        "0",
        "--q2",
        "0",
        "--l2max",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    for (l2, c) in coefficients(&stdout(&o)) {
        let want = if l2 == 2 { 2.0 } else { 0.0 };
        assert!((c - want).abs() <= 1e-13, "l2 = {l2}: {c}");
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn multiplet_listing() {
    let o = sh("multiplet --l2 1");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 5);
    let o = sh("multiplet --l2 -1");
    assert_eq!(o.status.code(), Some(2));
}
