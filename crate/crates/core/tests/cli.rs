use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use leab::mesh::read_mesh;
use tempfile::TempDir;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn leab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn csv_rows(dir: &Path) -> Vec<Vec<String>> {
    let text = fs::read_to_string(dir.join("stats.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "k,n,min_diam,max_diam,min_angle_deg,max_angle_deg,heterogeneity,bound_lower,bound_upper,pass"
    );
    lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

fn refine(input: &Path, out: &Path, steps: &str) -> Output {
    leab(&[
        "refine",
        "--input",
        path_str(input),
        "--output",
        path_str(out),
        "--steps",
        steps,
    ])
}

#[test]
fn refine_writes_levels_and_stats() {
    let dir = TempDir::new().unwrap();
    let o = refine(&data("equilateral.json"), dir.path(), "3");
    assert!(o.status.success(), "{}", stderr(&o));
    for k in 0..=3 {
        assert!(dir.path().join(format!("level_{k:03}.json")).is_file());
    }
    let rows = csv_rows(dir.path());
    let counts: Vec<&str> = rows.iter().map(|r| r[1].as_str()).collect();
    assert_eq!(counts, ["1", "2", "4", "8"]);
    let min: f64 = rows[2][2].parse().unwrap();
    let max: f64 = rows[2][3].parse().unwrap();
    assert!((min - 0.5).abs() < 1e-12);
    assert!((max - 3f64.sqrt() / 2.0).abs() < 1e-12);
    assert!(rows[1..].iter().all(|r| r[9] == "true"));
    assert_eq!(rows[0][9], "");
}

#[test]
fn refine_is_deterministic() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    assert!(refine(&data("tri345.json"), a.path(), "5").status.success());
    assert!(refine(&data("tri345.json"), b.path(), "5").status.success());
    for name in ["level_005.json", "stats.csv"] {
        assert_eq!(
            fs::read(a.path().join(name)).unwrap(),
            fs::read(b.path().join(name)).unwrap()
        );
    }
}

#[test]
fn refine_warns_about_hanging_vertex() {
    let dir = TempDir::new().unwrap();
    let o = refine(&data("two_tri.json"), dir.path(), "1");
    assert!(o.status.success());
    let err = stderr(&o);
    assert!(err.contains("warning"), "{err}");
    assert!(err.contains("(0.5, 0)"), "{err}");
}

#[test]
fn refine_reports_malformed_json_and_degenerate_input() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        "{\"vertices\": [[0.0, 0.0], [1.0]],\n \"triangles\": []}",
    )
    .unwrap();
    let o = refine(&bad, dir.path(), "1");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));

    let flat = dir.path().join("flat.json");
    fs::write(
        &flat,
        r#"{"vertices":[[0,0],[1,0],[2,0]],"triangles":[[0,1,2]]}"#,
    )
    .unwrap();
    let o = refine(&flat, dir.path(), "1");
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("triangle 0"), "{}", stderr(&o));
}

#[test]
fn step_cap_is_enforced() {
    let dir = TempDir::new().unwrap();
    let o = refine(&data("equilateral.json"), dir.path(), "25");
    assert_eq!(o.status.code(), Some(2));
}

fn last_row(table: &str) -> Vec<f64> {
    let line = table.lines().last().unwrap();
    line.split_whitespace()
        .skip(2)
        .map(|f| f.parse().unwrap())
        .collect()
}

#[test]
fn orbit_reproduces_reference_children() {
    let o = leab(&["orbit", "--z", "0.25+0.125i", "--word", "L"]);
    assert!(o.status.success());
    let r = last_row(&stdout(&o));
    assert!((r[0] - 0.2).abs() < 1e-12 && (r[1] - 0.4).abs() < 1e-12 && r[2] < 1e-10);

    let o = leab(&["orbit", "--z", "0.25+0.125i", "--word", "R"]);
    let r = last_row(&stdout(&o));
    assert!((r[0] - 0.027027).abs() < 1e-6 && (r[1] - 0.162162).abs() < 1e-6);
}

#[test]
fn orbit_of_fixed_point_is_constant_and_writes_files() {
    let dir = TempDir::new().unwrap();
    let o = leab(&[
        "orbit",
        "--z",
        "0.36+0.48i",
        "--word",
        "LRLR",
        "--output",
        path_str(dir.path()),
    ]);
    assert!(o.status.success());
    let table = stdout(&o);
    let rows: Vec<Vec<f64>> = table
        .lines()
        .skip(1)
        .map(|l| {
            l.split_whitespace()
                .skip(2)
                .take(2)
                .map(|f| f.parse().unwrap())
                .collect()
        })
        .collect();
    assert_eq!(rows.len(), 5);
    assert!(rows
        .iter()
        .all(|r| (r[0] - 0.36).abs() < 1e-12 && (r[1] - 0.48).abs() < 1e-12));
    assert_eq!(
        fs::read_to_string(dir.path().join("orbit.txt")).unwrap(),
        table
    );
    assert!(dir.path().join("orbit.svg").is_file());
}

#[test]
fn orbit_rejects_points_outside_shape_space() {
    let o = leab(&["orbit", "--z", "0.7+0.2i", "--word", "L"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Re"), "{}", stderr(&o));
}

#[test]
fn verify_passes_on_clean_seeds() {
    for seed in ["equilateral.json", "tri345.json"] {
        let o = leab(&["verify", "--input", path_str(&data(seed)), "--steps", "6"]);
        assert_eq!(o.status.code(), Some(0), "{seed}: {}", stderr(&o));
    }
    let o = leab(&[
        "verify",
        "--input",
        path_str(&data("tri345.json")),
        "--steps",
        "6",
    ]);
    assert!(stdout(&o).contains("36.869897"), "{}", stdout(&o));
}

#[test]
fn verify_rechecks_refine_output() {
    let dir = TempDir::new().unwrap();
    assert!(refine(&data("thin5.json"), dir.path(), "8")
        .status
        .success());
    let o = leab(&["verify", "--recheck", "--input", path_str(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn verify_flags_a_corrupted_level_file() {
    let dir = TempDir::new().unwrap();
    assert!(refine(&data("equilateral.json"), dir.path(), "4")
        .status
        .success());
    let path = dir.path().join("level_003.json");
    let mut mesh = read_mesh(&path).unwrap();
    // detach the first corner of triangle 5 and move it far away
    let v = mesh.vertices.len();
    let t = mesh.triangles[5].v;
    mesh.vertices.push(leab::Point2::new(
        mesh.vertices[t[0]].x + 3.0,
        mesh.vertices[t[0]].y + 3.0,
    ));
    mesh.triangles[5].v[0] = v;
    fs::write(&path, leab::mesh::mesh_to_json(&mesh)).unwrap();

    let o = leab(&["verify", "--recheck", "--input", path_str(dir.path())]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("level 3 triangle 5"), "{err}");
}

#[test]
fn plot_draws_figures_and_meshes() {
    let dir = TempDir::new().unwrap();
    let o = leab(&[
        "plot",
        "--points",
        path_str(&data("reference_points.txt")),
        "--input",
        path_str(&data("equilateral.json")),
        "--steps",
        "3",
        "--output",
        path_str(dir.path()),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let shape = fs::read_to_string(dir.path().join("shape_space.svg")).unwrap();
    assert_eq!(shape.matches("class=\"point\"").count(), 3);
    assert!(shape.contains("W_L(z)"));
    let mesh = fs::read_to_string(dir.path().join("mesh_level_003.svg")).unwrap();
    assert_eq!(mesh.matches("<polygon").count(), 8);
}

#[test]
fn plot_with_empty_points_file_has_only_sigma_and_gamma() {
    let dir = TempDir::new().unwrap();
    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "").unwrap();
    let o = leab(&[
        "plot",
        "--points",
        path_str(&empty),
        "--output",
        path_str(dir.path()),
    ]);
    assert!(o.status.success());
    let svg = fs::read_to_string(dir.path().join("shape_space.svg")).unwrap();
    assert!(svg.contains("id=\"sigma\"") && svg.contains("id=\"gamma\""));
    assert!(!svg.contains("<circle"));
}
