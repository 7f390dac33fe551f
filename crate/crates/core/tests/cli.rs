use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_johnsections"))
}

#[test]
fn check_writes_identical_json_on_rerun() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let status = bin()
            .args(["check", "--theorem", "T4a", "--n", "4", "--k", "2", "--trials", "5", "--samples", "5000"])
            .args(["--seed", "3", "--out"])
            .arg(&out)
            .env("JOHNSECTIONS_THREADS", "1")
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(out).unwrap()
    };
    let (a, b) = (run("a.json"), run("b.json"));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 5);
}

#[test]
fn check_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let status = bin()
        .args(["check", "--theorem", "T1c", "--n", "3", "--k", "1", "--d", "0.4", "--trials", "3", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "theorem,n,k,d,lambda,trial,lhs,lhs_err,rhs,rhs_err,margin,verdict,seed");
    assert_eq!(lines.filter(|l| l.starts_with("T1c,3,1,")).count(), 3);
}

#[test]
fn geometry_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let body = dir.path().join("body.json");
    std::fs::write(&body, r#"{"type":"H","dim":2,"normals":[[2,0],[-2,0],[0,1],[0,-1]],"offsets":[2,2,1,1]}"#).unwrap();
    let f = dir.path().join("f.json");
    std::fs::write(&f, r#"{"ambient":2,"dim":1,"basis":[[0,1]],"offset":[0.5,0]}"#).unwrap();

    let json = |args: &[&str]| -> serde_json::Value {
        let out = bin().args(args).output().unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        serde_json::from_slice(&out.stdout).unwrap()
    };
    let b = body.to_str().unwrap();
    let v = json(&["section", b, "--subspace", f.to_str().unwrap()]);
    assert!((v["volume"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    let v = json(&["functional", "volume", b]);
    assert!((v["value"].as_f64().unwrap() - 4.0).abs() < 1e-12);
    let v = json(&["john", b]);
    assert!(v["residuals"]["identity"].as_f64().unwrap() < 1e-7);
    let v = json(&["minsurf", b]);
    // a square of area 4 has perimeter 8
    assert!((v["surface_area"].as_f64().unwrap() - 8.0).abs() < 1e-6);
    json(&["lowner", b]);
}

#[test]
fn bad_input_exits_with_two() {
    let status = bin().args(["check", "--theorem", "T0", "--trials", "1"]).status().unwrap();
    assert_eq!(status.code(), Some(2));
    let status = bin().args(["john", "/nonexistent/body.json"]).status().unwrap();
    assert_eq!(status.code(), Some(2));
}
