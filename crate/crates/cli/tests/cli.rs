use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn trapping(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trapping"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str], dir: &Path) -> String {
    let out = trapping(args, dir);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn fails(args: &[&str], dir: &Path) -> (i32, String) {
    let out = trapping(args, dir);
    assert!(!out.status.success(), "{args:?} unexpectedly succeeded");
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str], dir: &Path) -> Value {
    serde_json::from_str(&ok(args, dir)).expect("valid json")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn close(got: &Value, want: f64, tol: f64) {
    let got = got
        .as_f64()
        .unwrap_or_else(|| panic!("not a number: {got}"));
    assert!(
        (got - want).abs() <= tol * want.abs().max(1.0),
        "{got} vs {want}"
    );
}

#[test]
fn star_example() {
    let dir = TempDir::new().unwrap();
    let msg = ok(
        &["generate", "star", "8", "--out", "star8.edges"],
        dir.path(),
    );
    assert!(msg.contains("9 vertices, 8 edges"), "{msg}");
    let r = json(
        &["analyze", "star8.edges", "--trap", "0", "--json"],
        dir.path(),
    );
    close(&r["att_exact"], 1.0, 1e-12);
    assert_eq!(r["optimal"], true);
    assert_eq!(r["trap"]["universal"], true);
}

#[test]
fn complete_example_with_spectral() {
    let dir = TempDir::new().unwrap();
    ok(
        &["generate", "complete", "5", "--out", "k5.edges"],
        dir.path(),
    );
    let r = json(
        &[
            "analyze",
            "k5.edges",
            "--trap",
            "max-degree",
            "--spectral",
            "--json",
        ],
        dir.path(),
    );
    close(&r["att_exact"], 4.0, 1e-12);
    close(&r["att_spectral"], 4.0, 1e-8);
    assert_eq!(r["trap"]["theta"], 0);
    assert_eq!(r["warnings"], serde_json::json!([]));
}

#[test]
fn cycle_monte_carlo_example() {
    let dir = TempDir::new().unwrap();
    ok(&["generate", "cycle", "4", "--out", "c4.edges"], dir.path());
    let args = [
        "analyze", "c4.edges", "--trap", "0", "--mc", "100000", "--seed", "7", "--json",
    ];
    let r = json(&args, dir.path());
    close(&r["att_exact"], 10.0 / 3.0, 1e-12);
    let mc = &r["montecarlo"];
    let est = mc["att_estimate"].as_f64().unwrap();
    let se = mc["att_stderr"].as_f64().unwrap();
    assert!(se > 0.0);
    assert!((est - 10.0 / 3.0).abs() <= 3.0 * se, "{est} ± {se}");
    assert_eq!(mc["seed"], 7);
    assert_eq!(mc["capped_walks"], 0);
    // a fixed seed reproduces the report byte for byte
    assert_eq!(ok(&args, dir.path()), ok(&args, dir.path()));
}

#[test]
fn report_schema_is_stable() {
    let dir = TempDir::new().unwrap();
    ok(&["generate", "path", "4", "--out", "p4.edges"], dir.path());
    let r = json(&["analyze", "p4.edges", "--json"], dir.path());
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    let mut want = vec![
        "graph_summary",
        "trap",
        "att_exact",
        "att_spectral",
        "lower_bound",
        "kemeny",
        "optimal",
        "bounds",
        "montecarlo",
        "warnings",
        "residual",
    ];
    let mut got = keys.clone();
    got.sort_unstable();
    want.sort_unstable();
    assert_eq!(got, want);
    assert!(r["att_spectral"].is_null() && r["bounds"].is_null() && r["montecarlo"].is_null());
    let s = &r["graph_summary"];
    assert_eq!(
        (s["vertices"].as_u64(), s["edges"].as_u64()),
        (Some(4), Some(3))
    );
    assert_eq!(
        (s["min_degree"].as_u64(), s["max_degree"].as_u64()),
        (Some(1), Some(2))
    );
    close(&s["mean_degree"], 1.5, 1e-12);
    // max-degree ties go to the lowest id
    assert_eq!(r["trap"]["theta"], 1);
    assert_eq!(r["trap"]["d_theta"], 2);
    close(&r["trap"]["pi_theta"], 1.0 / 3.0, 1e-12);
}

#[test]
fn round_trip_every_family() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    // path trapped at an end: TT_k = k(2L − k), mean (L+1)(4L−1)/6
    let cases: Vec<(Vec<&str>, &str, f64)> = vec![
        (vec!["star", "12"], "0", 1.0),
        (vec!["complete", "7"], "3", 6.0),
        (vec!["cycle", "9"], "0", 9.0 * 10.0 / 6.0),
        (vec!["path", "6"], "0", 6.0 * 19.0 / 6.0),
    ];
    for (i, (family, trap, want)) in cases.iter().enumerate() {
        let file = format!("f{i}.edges");
        let mut args = vec!["generate"];
        args.extend(family);
        args.extend(["--out", &file]);
        ok(&args, d);
        let r = json(
            &["analyze", &file, "--trap", trap, "--json", "--spectral"],
            d,
        );
        close(&r["att_exact"], *want, 1e-9);
        close(&r["att_spectral"], *want, 1e-8);
    }

    // star-type graph trapped at u: 2|E'|/d_u − 1
    ok(
        &[
            "generate",
            "startype",
            "--components",
            "k4,c5,p3,s3,iso",
            "--out",
            "st.edges",
        ],
        d,
    );
    let r = json(&["analyze", "st.edges", "--trap", "0", "--json"], d);
    let (v, e) = (4 + 5 + 3 + 4 + 1, 6 + 5 + 2 + 3);
    close(&r["att_exact"], 2.0 * (v + e) as f64 / v as f64 - 1.0, 1e-9);
    assert_eq!(r["optimal"], true);
    assert_eq!(r["bounds"]["order"], 0);
    assert_eq!(r["bounds"]["passed"], true);

    // preferential attachment: deterministic per seed, bound below exact
    ok(
        &[
            "generate",
            "ba",
            "300",
            "3",
            "--seed",
            "1",
            "--out",
            "ba1.edges",
        ],
        d,
    );
    ok(
        &[
            "generate",
            "ba",
            "300",
            "3",
            "--seed",
            "1",
            "--out",
            "ba2.edges",
        ],
        d,
    );
    ok(
        &[
            "generate",
            "ba",
            "300",
            "3",
            "--seed",
            "2",
            "--out",
            "ba3.edges",
        ],
        d,
    );
    let read = |f: &str| std::fs::read_to_string(d.join(f)).unwrap();
    assert_eq!(read("ba1.edges"), read("ba2.edges"));
    assert_ne!(read("ba1.edges"), read("ba3.edges"));
    let r = json(&["analyze", "ba1.edges", "--json"], d);
    assert!(r["lower_bound"].as_f64().unwrap() <= r["att_exact"].as_f64().unwrap());
    assert_eq!(r["graph_summary"]["edges"], 6 + 3 * (300 - 4));
}

#[test]
fn generate_ba_is_deterministic_at_full_size() {
    let dir = TempDir::new().unwrap();
    let a = ok(&["generate", "ba", "1000", "3", "--seed", "1"], dir.path());
    let b = ok(&["generate", "ba", "1000", "3", "--seed", "1"], dir.path());
    assert_eq!(a, b);
    assert!(a.contains("# vertices 1000 edges 2994"));
}

#[test]
fn subdivision_counts() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let msg = ok(
        &[
            "generate",
            "startype",
            "--components",
            "k3",
            "--subdivide",
            "1",
            "--component-scope",
            "--out",
            "g.edges",
        ],
        d,
    );
    assert!(msg.contains("7 vertices, 9 edges"), "{msg}");
    assert!(d.join("g.edges.startype.toml").exists());
    let msg = ok(
        &[
            "generate",
            "cycle",
            "5",
            "--subdivide",
            "2",
            "--out",
            "c.edges",
        ],
        d,
    );
    assert!(msg.contains("15 vertices, 15 edges"), "{msg}");
    let (code, err) = fails(
        &[
            "generate",
            "cycle",
            "5",
            "--component-scope",
            "--out",
            "x.edges",
        ],
        d,
    );
    assert_eq!(code, 2);
    assert!(err.contains("startype"), "{err}");
}

#[test]
fn generate_refuses_to_overwrite() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(&["generate", "star", "3", "--out", "s.edges"], d);
    let (code, err) = fails(&["generate", "star", "4", "--out", "s.edges"], d);
    assert_eq!(code, 2);
    assert!(err.contains("--force"), "{err}");
    assert!(std::fs::read_to_string(d.join("s.edges"))
        .unwrap()
        .contains("edges 3"));
    ok(&["generate", "star", "4", "--out", "s.edges", "--force"], d);
    assert!(std::fs::read_to_string(d.join("s.edges"))
        .unwrap()
        .contains("edges 4"));

    // an existing sidecar blocks a star-type write as well
    write(d, "t.edges.startype.toml", "stale");
    let (code, _) = fails(
        &[
            "generate",
            "startype",
            "--components",
            "k3",
            "--out",
            "t.edges",
        ],
        d,
    );
    assert_eq!(code, 2);
    assert!(!d.join("t.edges").exists());
}

#[test]
fn invalid_sizes_are_validation_errors() {
    let dir = TempDir::new().unwrap();
    for args in [
        vec!["generate", "cycle", "2"],
        vec!["generate", "complete", "1"],
        vec!["generate", "star"],
        vec!["generate", "ba", "10"],
        vec![
            "generate",
            "startype",
            "--components",
            "q7",
            "--out",
            "x.edges",
        ],
        vec!["generate", "startype", "--components", "k3"],
    ] {
        let (code, _) = fails(&args, dir.path());
        assert_eq!(code, 2, "{args:?}");
    }
}

#[test]
fn input_errors_name_the_line() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    write(d, "bad.edges", "# header\n0 1\n1 two\n");
    let (code, err) = fails(&["analyze", "bad.edges"], d);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");

    write(d, "dup.edges", "0 1\n1 2\n2 0\n\n2 1\n");
    let (code, err) = fails(&["analyze", "dup.edges"], d);
    assert_eq!(code, 2);
    assert!(err.contains("line 5") && err.contains("duplicate"), "{err}");

    write(d, "loop.edges", "0 1\n1 1\n");
    let (code, err) = fails(&["analyze", "loop.edges"], d);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");

    write(d, "split.edges", "0 1\n2 3\n");
    assert_eq!(fails(&["analyze", "split.edges"], d).0, 2);
    assert_eq!(fails(&["analyze", "missing.edges"], d).0, 2);
    write(d, "empty.edges", "# nothing\n");
    assert_eq!(fails(&["analyze", "empty.edges"], d).0, 2);
}

#[test]
fn trap_selection_errors() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    write(d, "g.edges", "0 1\n1 2\n");
    let (code, err) = fails(&["analyze", "g.edges", "--trap", "9"], d);
    assert_eq!(code, 2);
    assert!(err.contains('9'), "{err}");
    assert_eq!(fails(&["analyze", "g.edges", "--trap", "hub"], d).0, 2);
    assert_eq!(fails(&["analyze", "g.edges", "--json", "--csv"], d).0, 2);
}

#[test]
fn file_labels_are_preserved() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    // star centered on label 20 with sparse labels
    write(d, "s.edges", "20 5\n20 7\n20 300\n");
    let r = json(&["analyze", "s.edges", "--json"], d);
    assert_eq!(r["trap"]["theta"], 20);
    close(&r["att_exact"], 1.0, 1e-12);
    let r = json(&["analyze", "s.edges", "--trap", "300", "--json"], d);
    assert_eq!(r["trap"]["theta"], 300);
    assert_eq!(r["optimal"], false);
    let csv = ok(&["analyze", "s.edges", "--trap", "300", "--csv"], d);
    let first: Vec<&str> = csv.lines().map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(first, ["vertex", "5", "7", "20", "ATT"]);
}

#[test]
fn csv_rows() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(&["generate", "cycle", "4", "--out", "c4.edges"], d);
    let csv = ok(&["analyze", "c4.edges", "--trap", "0", "--csv"], d);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "vertex,degree,trapping_time");
    assert_eq!(lines.len(), 1 + 3 + 1);
    let tt: Vec<f64> = lines[1..4]
        .iter()
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    for (got, want) in tt.iter().zip([3.0, 4.0, 3.0]) {
        assert!((got - want).abs() < 1e-12);
    }
    let summary: Vec<&str> = lines[4].split(',').collect();
    assert_eq!(summary[0], "ATT");
    assert!((summary[2].parse::<f64>().unwrap() - 10.0 / 3.0).abs() < 1e-12);

    let csv = ok(
        &[
            "analyze",
            "c4.edges",
            "--trap",
            "0",
            "--csv",
            "--spectral",
            "--mc",
            "50",
            "--seed",
            "3",
        ],
        d,
    );
    assert_eq!(
        csv.lines().next().unwrap(),
        "vertex,degree,trapping_time,trapping_time_spectral,mc_mean,mc_stderr"
    );
    assert!(csv.lines().all(|l| l.split(',').count() == 6));
}

fn k3_graph(d: &Path, n: &str) {
    ok(
        &[
            "generate",
            "startype",
            "--components",
            "k3",
            "--subdivide",
            n,
            "--component-scope",
            "--out",
            "k3.edges",
        ],
        d,
    );
}

#[test]
fn bounds_for_k3_first_order() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    k3_graph(d, "1");
    let table = ok(&["bounds", "k3.edges", "--order", "1"], d);
    assert!(table.contains("sandwich PASS"), "{table}");
    let r = json(&["bounds", "k3.edges", "--order", "1", "--json"], d);
    close(&r["bounds"]["lower"], 5.0, 1e-12);
    close(&r["att_exact"], 5.5, 1e-12);
    close(&r["bounds"]["upper_prop1"], 10.5, 1e-12);
    close(&r["bounds"]["upper_cor1"], 5.5, 1e-12);
    close(&r["restricted_exact"], 5.0, 1e-12);
    assert_eq!(r["passed"], true);
    assert_eq!(r["sandwich"]["lower"], true);
    assert_eq!(r["sandwich"]["prop1"], true);

    // analyze picks the sidecar up on its own
    let a = json(&["analyze", "k3.edges", "--trap", "0", "--json"], d);
    close(&a["bounds"]["att_exact"], 5.5, 1e-12);
    let a = json(&["analyze", "k3.edges", "--trap", "1", "--json"], d);
    assert!(a["bounds"].is_null());
    assert!(a["warnings"][0].as_str().unwrap().contains("trap on u"));
}

#[test]
fn bounds_for_k3_second_order() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    k3_graph(d, "2");
    let r = json(&["bounds", "k3.edges", "--json"], d);
    assert_eq!(r["order"], 2);
    let exact = r["att_exact"].as_f64().unwrap();
    let cor2 = r["bounds"]["upper_cor2"].as_f64().unwrap();
    assert!(cor2 > exact, "{cor2} vs {exact}");
    close(&r["att_exact"], 25.0 / 3.0, 1e-12);
    assert!(r["bounds"]["upper_prop1"].is_null());
    assert_eq!(r["sandwich"]["cor2"], true);

    // a different order is rebuilt from the sidecar, with a warning
    let r = json(&["bounds", "k3.edges", "--order", "1", "--json"], d);
    close(&r["att_exact"], 5.5, 1e-12);
    assert_eq!(r["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn bounds_degenerate_star() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(
        &[
            "generate",
            "startype",
            "--components",
            "iso,iso,iso,iso",
            "--subdivide",
            "1",
            "--component-scope",
            "--out",
            "s.edges",
        ],
        d,
    );
    let table = ok(&["bounds", "s.edges", "--order", "1"], d);
    assert!(table.contains("warning:"), "{table}");
    let r = json(&["bounds", "s.edges", "--order", "1", "--json"], d);
    close(&r["bounds"]["lower"], 1.0, 1e-12);
    close(&r["att_exact"], 1.0, 1e-12);
    assert_eq!(r["bounds"]["degenerate"], true);
    assert_eq!(r["passed"], true);
}

#[test]
fn bounds_sidecar_errors() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(&["generate", "cycle", "5", "--out", "c.edges"], d);
    let (code, err) = fails(&["bounds", "c.edges"], d);
    assert_eq!(code, 2);
    assert!(err.contains("sidecar"), "{err}");

    // a sidecar that describes another graph is rejected
    k3_graph(d, "1");
    std::fs::copy(
        d.join("k3.edges.startype.toml"),
        d.join("c.edges.startype.toml"),
    )
    .unwrap();
    let (code, err) = fails(&["bounds", "c.edges"], d);
    assert_eq!(code, 2);
    assert!(err.contains("does not match"), "{err}");

    write(d, "junk.toml", "trap = \"u\"\n");
    assert_eq!(
        fails(&["bounds", "k3.edges", "--sidecar", "junk.toml"], d).0,
        2
    );

    // every edge subdivided: the star-type bounds do not apply
    ok(
        &[
            "generate",
            "startype",
            "--components",
            "k3",
            "--subdivide",
            "1",
            "--out",
            "all.edges",
        ],
        d,
    );
    assert_eq!(fails(&["bounds", "all.edges"], d).0, 2);
}

#[test]
fn scaling_example() {
    let dir = TempDir::new().unwrap();
    let args = [
        "scaling",
        "--sizes",
        "500,1000,2000,4000",
        "--m",
        "3",
        "--seed",
        "1",
        "--json",
    ];
    let r = json(&args, dir.path());
    assert!(r["slope_att"].as_f64().unwrap() < 1.0);
    assert_eq!(r["sublinear"], true);
    for row in r["rows"].as_array().unwrap() {
        assert!(row["lower_bound"].as_f64().unwrap() <= row["att_exact"].as_f64().unwrap());
    }
}

#[test]
fn scaling_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let args = [
        "scaling",
        "--sizes",
        "100,200,400",
        "--m",
        "2",
        "--seed",
        "5",
        "--gamma-check",
    ];
    let a = ok(&args, dir.path());
    assert_eq!(a, ok(&args, dir.path()));
    assert!(a.contains("verdict"));
    assert!(a.contains("degree exponent estimate"));
}

#[test]
fn scaling_needs_three_sizes() {
    let dir = TempDir::new().unwrap();
    let (code, err) = fails(&["scaling", "--sizes", "100,200"], dir.path());
    assert_eq!(code, 2);
    assert!(err.contains("at least 3"), "{err}");
}

#[test]
fn dominate_examples() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(&["generate", "star", "5", "--out", "s5.edges"], d);
    ok(&["generate", "cycle", "6", "--out", "c6.edges"], d);
    let r = json(&["dominate", "s5.edges", "--set", "0", "--json"], d);
    assert_eq!(r["dominating"], true);
    assert_eq!(r["members"][0]["optimal_single_trap"], true);
    let r = json(&["dominate", "c6.edges", "--set", "0,3", "--json"], d);
    assert_eq!(r["dominating"], true);
    assert_eq!(r["members"][1]["optimal_single_trap"], false);
    let r = json(&["dominate", "c6.edges", "--set", "0", "--json"], d);
    assert_eq!(r["dominating"], false);
    let text = ok(&["dominate", "c6.edges", "--set", "0,3"], d);
    assert!(
        text.contains("dominating  yes") && text.contains("note:"),
        "{text}"
    );
    let (code, err) = fails(&["dominate", "c6.edges", "--set", "0,6"], d);
    assert_eq!(code, 2);
    assert!(err.contains('6'), "{err}");
}
