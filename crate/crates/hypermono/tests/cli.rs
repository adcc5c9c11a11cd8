use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypermono")).args(args).output().unwrap()
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    let mut all = args.to_vec();
    let out = dir.to_str().unwrap();
    all.extend(["--out", out]);
    run(&all)
}

fn close(a: &Value, b: &Value, path: &str) {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            assert!((x - y).abs() <= 1e-12 * y.abs().max(1.0), "{path}: {x} vs {y}");
        }
        (Value::Array(x), Value::Array(y)) => {
            assert_eq!(x.len(), y.len(), "{path}");
            for (i, (p, q)) in x.iter().zip(y).enumerate() {
                close(p, q, &format!("{path}[{i}]"));
            }
        }
        (Value::Object(x), Value::Object(y)) => {
            assert_eq!(x.keys().collect::<Vec<_>>(), y.keys().collect::<Vec<_>>(), "{path}");
            for (k, v) in x {
                close(v, &y[k], &format!("{path}.{k}"));
            }
        }
        _ => assert_eq!(a, b, "{path}"),
    }
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn monodromy_matches_golden_files() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (name, params) in [
        ("quintic", "mirror-quintic"),
        ("mu_quarter", "1/4,1/2,1/2,3/4;0,0,0,0"),
        ("rank5", "0.45,1/2,1/2,1/2,0.55;0,0,0,1/3,2/3"),
    ] {
        let dir = tempfile::tempdir().unwrap();
        let out = run_in(dir.path(), &["monodromy", "--params", params]);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let got = read_json(&dir.path().join("monodromy.json"));
        close(&got, &read_json(&golden.join(format!("{name}.json"))), name);
    }
}

#[test]
fn quintic_monodromy_is_integral_and_unipotent_at_one() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run_in(dir.path(), &["monodromy", "--params", "mirror-quintic"]).status.success());
    let v = read_json(&dir.path().join("monodromy.json"));
    for key in ["h0", "h1", "hinf"] {
        for row in v[key].as_array().unwrap() {
            for x in row.as_array().unwrap() {
                let x = x.as_f64().unwrap();
                assert_eq!(x, x.round());
            }
        }
    }
    assert_eq!(v["rank_h1_minus_id"], 1);
    assert_eq!(v["h1_minus_id_squared_zero"], true);
    let beta: Vec<f64> = v["char_poly_beta"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert_eq!(beta, [-4.0, 6.0, -4.0, 1.0]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_in(dir.path(), &["monodromy", "--params", "1/2,1/2;1/2,0"]).status.code(), Some(2));
    assert_eq!(run_in(dir.path(), &["monodromy", "--params", "1/3,2/3"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run_in(dir.path(), &["lyapunov", "--triangle", "2,3,inf", "--T", "10"]).status.code(), Some(2));
    assert_eq!(run_in(dir.path(), &["certify", "--triangle", "2,3,inf", "--gap-min", "-1"]).status.code(), Some(2));
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "nonsense = 1\n").unwrap();
    assert_eq!(run_in(dir.path(), &["classify", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run_in(dir.path(), &["classify", "--params", "mirror-quintic"]).status.code(), Some(0));
}

#[test]
fn outputs_are_deterministic() {
    let cases: &[&[&str]] = &[
        &["certify", "--params", "mirror-quintic", "--L", "6"],
        &["limitset", "--triangle", "2,3,inf", "--sym", "3", "--L", "8", "--no-timestamp"],
        &["lyapunov", "--triangle", "2,3,inf", "--sym", "3", "--T", "2000", "--ntraj", "4", "--seed", "5"],
    ];
    for args in cases {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        assert!(run_in(a.path(), args).status.success());
        assert!(run_in(b.path(), args).status.success());
        let mut names: Vec<_> = std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
        names.sort();
        assert!(!names.is_empty());
        for n in names {
            let x = std::fs::read(a.path().join(&n)).unwrap();
            let y = std::fs::read(b.path().join(&n)).unwrap();
            assert!(x == y, "{args:?} {n:?}");
        }
    }
}

#[test]
fn empty_ball_gives_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["limitset", "--triangle", "2,3,inf", "--sym", "3", "--L", "0", "--no-timestamp"]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("limitset.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1);
    assert_eq!(csv.lines().next().unwrap(), "x0,x1,x2,x3,gap,kind");
}

#[test]
fn config_file_is_read() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "params = \"mirror-quintic\"\nL = 4\n").unwrap();
    let out = run_in(dir.path(), &["certify", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = read_json(&dir.path().join("certificate.json"));
    assert!(v.is_object());
}
