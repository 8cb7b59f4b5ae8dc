use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sphere-eta")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen(dir: &Path, construction: &str, n: u32) -> String {
    let path = dir.join(format!("{construction}{n}.obj"));
    let p = path.to_str().unwrap().to_string();
    let o = run(&["gen", "--construction", construction, "--n", &n.to_string(), "--out", &p]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    p
}

fn analyze_json(obj: &str) -> (i32, serde_json::Value) {
    let o = run(&["analyze", "--in", obj, "--json", "-"]);
    let text = stdout(&o);
    let start = text.find('{').expect("json on stdout");
    (code(&o), serde_json::from_str(&text[start..]).unwrap())
}

#[test]
fn gen_kitrick_n3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k3.obj");
    let o = run(&["gen", "--construction", "kitrick", "--n", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("m=540"));
    assert!(stdout(&o).contains("eta=1.168628890235"));
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 540);
    assert!(text.starts_with("# construction=kitrick n=3 faces=540\n"));
}

#[test]
fn gen_clinton1_n1_is_icosahedron() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ico.obj");
    let o = run(&["gen", "--construction", "clinton1", "--n", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("m=20 V=12 E=30 eta=1.000000000000"));
}

#[test]
fn gen_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for c in ["kitrick", "clinton2"] {
        let pa = gen(a.path(), c, 4);
        let pb = gen(b.path(), c, 4);
        assert_eq!(fs::read(pa).unwrap(), fs::read(pb).unwrap());
    }
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["gen", "--construction", "kitrick", "--n", "0", "--out", "x.obj"][..],
        &["gen", "--construction", "kitrick", "--n", "65", "--out", "x.obj"],
        &["gen", "--construction", "cube", "--out", "x.obj"],
        &["gen", "--construction", "kitrick"],
        &["verify", "--n-max", "17"],
        &["table", "--n-max", "0"],
        &["bounds", "--m", "61"],
        &["bounds", "--m", "2"],
        &["bounds"],
        &["frobnicate"],
        &[],
    ] {
        assert_eq!(code(&run(args)), 2, "{args:?}");
    }
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn analyze_kitrick_n2() {
    let dir = tempfile::tempdir().unwrap();
    let obj = gen(dir.path(), "kitrick", 2);
    let (c, v) = analyze_json(&obj);
    assert_eq!(c, 0);
    assert!((v["eta"].as_f64().unwrap() - 1.159_971_099_367_174).abs() < 1e-9);
    assert_eq!(v["m"], 240);
    assert_eq!(v["is_convex"], true);

    let csv = dir.path().join("r.csv");
    let o = run(&["analyze", "--in", &obj, "--csv", csv.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(csv).unwrap();
    assert!(text.starts_with("construction,n,m,vertices,edges,"));
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn analyze_icosahedron() {
    let dir = tempfile::tempdir().unwrap();
    let obj = gen(dir.path(), "icosahedron", 1);
    let (c, v) = analyze_json(&obj);
    assert_eq!(c, 0);
    assert_eq!(v["eta"].as_f64().unwrap(), 1.0);
    assert_eq!(v["lower_bound_simple"].as_f64().unwrap(), 1.0);
    assert!(v["eta_closed_form"].is_null());
}

#[test]
fn analyze_perturbed_mesh_fails() {
    let dir = tempfile::tempdir().unwrap();
    let obj = gen(dir.path(), "kitrick", 2);
    let text = fs::read_to_string(&obj).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let vs: Vec<usize> = (0..lines.len()).filter(|&i| lines[i].starts_with("v ")).collect();
    let coords = |l: &str| -> Vec<f64> { l.split_whitespace().skip(1).map(|t| t.parse().unwrap()).collect() };
    let first = coords(&lines[vs[0]]);
    let far = *vs
        .iter()
        .min_by(|&&a, &&b| {
            let d = |i: usize| coords(&lines[i]).iter().zip(&first).map(|(x, y)| x * y).sum::<f64>();
            d(a).total_cmp(&d(b))
        })
        .unwrap();
    lines.swap(vs[0], far);
    let bad = dir.path().join("swapped.obj");
    fs::write(&bad, lines.join("\n") + "\n").unwrap();
    let (c, v) = analyze_json(bad.to_str().unwrap());
    assert_eq!(c, 1);
    assert_eq!(v["is_convex"], false);
}

#[test]
fn analyze_bad_inputs_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.obj");
    fs::write(&p, "v 1 0 0\nv 0 1 0\nv 0 0 1\nf 1 2 99\n").unwrap();
    let o = run(&["analyze", "--in", p.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
    fs::write(&p, "v 1.1 0 0\n").unwrap();
    assert_eq!(code(&run(&["analyze", "--in", p.to_str().unwrap()])), 1);
    let missing = dir.path().join("missing.obj");
    assert_eq!(code(&run(&["analyze", "--in", missing.to_str().unwrap()])), 1);
}

#[test]
fn verify_small() {
    let o = run(&["verify", "--n-max", "4"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("all hard checks passed"));
    assert!(out.contains("kitrick n=1 sandwich"));
    assert!(out.contains("1.109198 <= 1.113587 < 1.175571"));
    assert!(out.contains("0.982247 > 0.962590"));
    assert!(!out.lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn table_rows() {
    let o = run(&["table", "--n-max", "4"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "construction,n,m,eta,eta_closed_form,lower_bound,gap_to_2sin36");
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 12);
    let kitrick: Vec<f64> = rows.iter().filter(|r| r[0] == "kitrick").map(|r| r[3].parse().unwrap()).collect();
    assert!(kitrick.windows(2).all(|w| w[1] > w[0]));
    let expect = [1.113_586_880_90, 1.159_971_099_37, 1.168_628_890_24, 1.171_664_163_03];
    assert!(kitrick.iter().zip(expect).all(|(a, b)| (a - b).abs() < 1e-10));
    assert!(rows.iter().all(|r| r[3].parse::<f64>().unwrap() < 1.175_571));
    let c1 = rows.iter().find(|r| r[0] == "clinton1" && r[1] == "1").unwrap();
    assert_eq!(c1[3].parse::<f64>().unwrap(), 1.0);
    assert_eq!(stdout(&run(&["table", "--n-max", "4"])), out);
}

#[test]
fn table_to_file_and_selected_constructions() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("t.csv");
    let o = run(&["table", "--construction", "icosahedron", "--construction", "kitrick", "--n-max", "2", "--csv", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).is_empty());
    let text = fs::read_to_string(p).unwrap();
    let names: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(names, ["icosahedron", "kitrick", "kitrick"]);
}

#[test]
fn bounds_output() {
    let o = run(&["bounds", "--m", "60"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("simple bound             1.109197743817"));
    assert!(out.contains("|f(mu) - mu| ="));
    let out20 = stdout(&run(&["bounds", "--m", "20"]));
    assert!(out20.contains("simple bound             1.000000000000"));
    assert!(out20.contains("k = 12"));
    assert_eq!(stdout(&run(&["bounds", "--m", "60"])), out);
}
