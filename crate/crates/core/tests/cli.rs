use std::path::Path;
use std::process::{Command, Output};

fn resq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resq"))
        .args(args)
        .env_remove("RESQ_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_graph(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn generate_cycle() {
    let o = resq(&["generate", "--family", "cycle", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let g = resq::graph::parse_edge_list(&text).unwrap();
    assert_eq!(g.vertex_count(), 5);
    assert_eq!(g.edge_count(), 5);
    assert!(g.degree_sequence().iter().all(|&d| d == 2));
}

#[test]
fn generate_bipartite_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k23.txt");
    let o = resq(&[
        "generate",
        "--family",
        "bipartite",
        "--p",
        "2",
        "--q",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let g = resq::graph::parse_edge_list(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(g.vertex_count(), 5);
    assert_eq!(g.edge_count(), 6);
}

#[test]
fn generate_rejects_bad_parameters() {
    assert_eq!(
        resq(&["generate", "--family", "cycle", "--n", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        resq(&["generate", "--family", "bipartite", "--p", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        resq(&["generate", "--family", "wheel", "--n", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn compute_k2_resistance_laplacian_csv() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "k2.txt", "2\n0 1\n");
    let o = resq(&["compute", &g, "--what", "rl"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1,-1\n-1,1\n");

    let o = resq(&["compute", &g, "--what", "rq"]);
    assert_eq!(stdout(&o), "1,1\n1,1\n");
}

#[test]
fn compute_matrix_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "p3.txt", "3\n0 1\n1 2\n");
    let o = resq(&["compute", &g, "--what", "resistance", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let m: resq::format::MatrixJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(m.n, 3);
    assert_eq!(m.kind, "resistance");
    let expected = [0.0, 1.0, 2.0, 1.0, 0.0, 1.0, 2.0, 1.0, 0.0];
    assert!(
        m.data
            .iter()
            .zip(expected)
            .all(|(a, b)| (a - b).abs() < 1e-12),
        "{:?}",
        m.data
    );
}

#[test]
fn compute_k4_energy_json() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "k4.txt", "4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let o = resq(&["compute", &g, "--what", "energy", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["le_r"].as_f64().unwrap() - 3.0).abs() < 1e-9);
    assert!((v["mean_transmission"].as_f64().unwrap() - 1.5).abs() < 1e-12);
    assert_eq!(v["bounds"]["lower_2sqrtF"]["satisfied"], true);
}

#[test]
fn compute_spectrum_csv() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "k3.txt", "3\n0 1\n1 2\n0 2\n");
    let o = resq(&["compute", &g, "--what", "spectrum-rl"]);
    let values: Vec<f64> = stdout(&o).lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(values.len(), 3);
    assert!((values[0] - 2.0).abs() < 1e-9);
    assert!((values[1] - 2.0).abs() < 1e-9);
    assert!(values[2].abs() < 1e-9);
}

#[test]
fn compute_error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let disconnected = write_graph(dir.path(), "split.txt", "4\n0 1\n2 3\n");
    let o = resq(&["compute", &disconnected, "--what", "rl"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("disconnected"));

    let malformed = write_graph(dir.path(), "bad.txt", "3\n0 x\n");
    assert_eq!(
        resq(&["compute", &malformed, "--what", "rl"]).status.code(),
        Some(2)
    );
    let looped = write_graph(dir.path(), "loop.txt", "3\n1 1\n");
    assert_eq!(
        resq(&["compute", &looped, "--what", "rl"]).status.code(),
        Some(2)
    );
    let missing = dir.path().join("missing.txt");
    assert_eq!(
        resq(&["compute", missing.to_str().unwrap(), "--what", "rl"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn compute_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(
        dir.path(),
        "g.txt",
        "6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n0 3\n",
    );
    let a = resq(&["compute", &g, "--what", "energy"]);
    let b = resq(&["compute", &g, "--what", "energy"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("field,value\n"));
}

#[test]
fn verify_families() {
    let o = resq(&["verify", "--scope", "families", "--max-n", "30"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("closed_form.rq_matrix"));
    assert!(text.contains("report.rq_bipartite_pair(2,2)"));
    assert!(text.contains("NON-MATCHING"));
}

#[test]
fn verify_random_json_is_deterministic() {
    let args = [
        "verify", "--scope", "random", "--seed", "1", "--max-n", "10", "--graphs", "200", "--json",
    ];
    let a = resq(&args);
    assert_eq!(a.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&a)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let penrose = lines
        .iter()
        .find(|v| v["check"] == "resistance.penrose_identities")
        .unwrap();
    assert!(penrose["cases"].as_u64().unwrap() >= 200);
    assert!(lines.iter().all(|v| v["status"] == "pass"));

    let strip = |o: &Output| -> Vec<serde_json::Value> {
        stdout(o)
            .lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("elapsed_ms");
                v
            })
            .collect()
    };
    assert_eq!(strip(&a), strip(&resq(&args)));
}

#[test]
fn verify_tolerance_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_resq"))
        .args([
            "verify", "--scope", "random", "--graphs", "20", "--trees", "5",
        ])
        .env("RESQ_TOL", "1e-20")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("failing checks:"));
}
