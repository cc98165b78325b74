use std::path::Path;
use std::process::Command;

fn smax(out: &Path, args: &[&str]) -> (i32, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_smax"))
        .arg("--out")
        .arg(out)
        .args(args)
        .env("SMAX_THREADS", "2")
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&o.stdout).into_owned() + &String::from_utf8_lossy(&o.stderr);
    (o.status.code().unwrap(), text)
}

fn read(p: impl AsRef<Path>) -> String {
    std::fs::read_to_string(p).unwrap()
}

const CYLINDER: &[&str] = &[
    "dirichlet", "--rect", "-0.5", "0.5", "-0.5", "0.5", "--phi", "cos(x)", "--alpha", "-1", "--h", "0.05", "--exact",
];

#[test]
fn dirichlet_writes_all_artifacts_and_passes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = smax(dir.path(), CYLINDER);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("PASS exact_error"));
    for name in ["dirichlet.csv", "dirichlet.obj", "dirichlet.json", "dirichlet_trace.json"] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
    let csv = read(dir.path().join("dirichlet.csv"));
    let first = csv.lines().next().unwrap();
    assert!(first.starts_with("# meta: command=dirichlet") && first.contains("alpha=-1.0") && first.contains("tol="));
    assert!(!csv.contains('\r'));
    let report: serde_json::Value = serde_json::from_str(&read(dir.path().join("dirichlet.json"))).unwrap();
    assert_eq!(report["checks"]["exact_error"]["pass"], true);
    assert!(report["c1_bound"].as_f64().unwrap() > 0.0);
}

#[test]
fn outputs_are_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert_eq!(smax(a.path(), CYLINDER).0, 0);
    assert_eq!(smax(b.path(), CYLINDER).0, 0);
    for name in ["dirichlet.csv", "dirichlet.json", "dirichlet_trace.json", "dirichlet.obj"] {
        assert_eq!(read(a.path().join(name)), read(b.path().join(name)), "{name}");
    }
    let args = ["surface", "--family", "catenoid"];
    let (c, d) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert_eq!(smax(c.path(), &args).0, 0);
    assert_eq!(smax(d.path(), &args).0, 0);
    for name in ["surface.obj", "surface.channels.csv", "surface.json"] {
        assert_eq!(read(c.path().join(name)), read(d.path().join(name)), "{name}");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad_expr = ["dirichlet", "--rect", "-1", "1", "-1", "1", "--phi", "1 +", "--alpha", "-1", "--h", "0.1"];
    assert_eq!(smax(dir.path(), &bad_expr).0, 1);
    let misaligned = ["dirichlet", "--rect", "-1", "1", "-1", "1", "--phi", "1", "--alpha", "-1", "--h", "0.3"];
    assert_eq!(smax(dir.path(), &misaligned).0, 1);
    assert_eq!(smax(dir.path(), &["profile", "--alpha", "-1"]).0, 1);
    let timelike = ["dirichlet", "--rect", "-1", "1", "-1", "1", "--phi", "3 + 2*x", "--alpha", "-1", "--h", "0.1"];
    assert_eq!(smax(dir.path(), &timelike).0, 2);
    // The boundary gradient is fine but the exact solution is not cos(y).
    let wrong_exact = [
        "dirichlet", "--rect", "-0.5", "0.5", "-0.5", "0.5", "--phi", "cos(x)", "--alpha", "-1", "--h", "0.1",
        "--exact", "1",
    ];
    let (code, text) = smax(dir.path(), &wrong_exact);
    assert_eq!(code, 3, "{text}");
    assert!(text.contains("FAIL exact_error"));
}

#[test]
fn profile_and_rotational_reports() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(smax(dir.path(), &["profile", "--alpha", "-1", "--u0", "1"]).0, 0);
    let csv = read(dir.path().join("profile.csv"));
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().contains("endpoints=lightlike_slope,lightlike_slope"));
    assert_eq!(lines.next().unwrap(), "r,u,uprime");
    let json: serde_json::Value = serde_json::from_str(&read(dir.path().join("profile.json"))).unwrap();
    assert_eq!(json["axis_kind"], "translation");
    let b = json["domain"][1].as_f64().unwrap();
    assert!((b - std::f64::consts::FRAC_PI_2).abs() < 1e-6);

    assert_eq!(smax(dir.path(), &["rotational", "--alpha", "-1", "--u0", "1"]).0, 0);
    let json: serde_json::Value = serde_json::from_str(&read(dir.path().join("rotational.json"))).unwrap();
    assert_eq!(json["classification"]["start"], "axis_flat");
}

#[test]
fn config_file_and_boundary_table() {
    let dir = tempfile::tempdir().unwrap();
    let mut rows = String::from("x,y,phi\n");
    for k in 0..=20 {
        let s = -1.0 + 0.1 * k as f64;
        for (x, y) in [(s, -1.0), (s, 1.0), (-1.0, s), (1.0, s)] {
            rows.push_str(&format!("{x},{y},1\n"));
        }
    }
    let table = dir.path().join("phi.csv");
    std::fs::write(&table, rows).unwrap();
    let config = dir.path().join("run.toml");
    std::fs::write(
        &config,
        format!(
            "command = \"dirichlet\"\nrect = [-1.0, 1.0, -1.0, 1.0]\nphi_table = {:?}\nalpha = -1.0\nh = 0.1\n",
            table.display().to_string()
        ),
    )
    .unwrap();
    let (code, text) = smax(dir.path(), &["run", "--config", config.to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    let report: serde_json::Value = serde_json::from_str(&read(dir.path().join("dirichlet.json"))).unwrap();
    assert!(report["max_u"].as_f64().unwrap() > 1.1);
    assert_eq!(report["min_u"].as_f64().unwrap(), 1.0);
}

#[test]
fn canonical_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = smax(dir.path(), &["verify", "--suite", "canonical"]);
    assert_eq!(code, 0, "{text}");
    assert!(!text.contains("FAIL"));
    assert!(dir.path().join("verify.json").exists());
}
