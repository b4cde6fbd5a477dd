use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn nssets(args: &[&str], dir: &Path, stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nssets"))
        .args(args)
        .current_dir(dir)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], dir: &Path, stdin: Option<&str>) -> String {
    let out = nssets(args, dir, stdin);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

#[test]
fn pipeline_on_the_collapsed_triangle() {
    let t = tempfile::tempdir().unwrap();
    let d = t.path();
    let x = ok(&["build", "collapse", "simplex:2", "boundary:2"], d, None);
    assert!(x.contains("\"counts\": [\n    1,\n    0,\n    1\n  ]"));
    let s2 = ok(&["run", "sd", "--iterations", "2"], d, Some(&x));
    let out = nssets(&["run", "desing", "--log"], d, Some(&s2));
    assert_eq!(out.status.code(), Some(0));
    let log = String::from_utf8(out.stderr).unwrap();
    assert!(log.lines().next().unwrap().starts_with("step 0 round 0: simplex 2/"));
    let h = ok(&["run", "homology"], d, Some(&String::from_utf8(out.stdout).unwrap()));
    assert_eq!(h, "H_0 = Z\nH_1 = 0\nH_2 = Z\n");
}

#[test]
fn builds() {
    let t = tempfile::tempdir().unwrap();
    let d = t.path();
    ok(&["build", "simplex", "3", "-o", "d3.json"], d, None);
    ok(&["build", "nerve-chain", "3", "-o", "n3.json"], d, None);
    assert_eq!(ok(&["run", "check", "iso", "d3.json", "n3.json"], d, None), "iso: pass\n");
    let horn = ok(&["build", "horn", "2", "1"], d, None);
    assert_eq!(ok(&["run", "homology"], d, Some(&horn)), "H_0 = Z\nH_1 = 0\n");
    let bd = ok(&["build", "boundary", "2"], d, None);
    assert_eq!(ok(&["run", "homology"], d, Some(&bd)), "H_0 = Z\nH_1 = Z\n");
    let q = ok(&["build", "collapse", "simplex:2", "horn:2:0"], d, None);
    assert_eq!(ok(&["run", "homology"], d, Some(&q)), "H_0 = Z\nH_1 = 0\nH_2 = 0\n");
    for bad in [&["build", "cube", "2"][..], &["build", "simplex"], &["build", "collapse", "simplex:2", "boundary:3"]] {
        assert_eq!(nssets(bad, d, None).status.code(), Some(2), "{bad:?}");
    }
}

#[test]
fn verbs() {
    let t = tempfile::tempdir().unwrap();
    let d = t.path();
    ok(&["build", "simplex", "2", "-o", "d2.json"], d, None);
    assert_eq!(ok(&["run", "check", "nonsingular", "d2.json"], d, None), "nonsingular: pass\n");
    assert_eq!(ok(&["run", "pc", "d2.json"], d, None), "size 3\nhasse 0<1 1<2\n");
    let pc_json = ok(&["run", "pc", "d2.json", "--format", "json"], d, None);
    assert!(pc_json.contains("\"size\": 3"));
    let b = ok(&["run", "barratt", "d2.json"], d, None);
    let s = ok(&["run", "sd", "d2.json"], d, None);
    write(d, "b.json", &b);
    write(d, "s.json", &s);
    assert_eq!(ok(&["run", "check", "iso", "b.json", "s.json"], d, None), "iso: pass\n");
    let p = ok(&["run", "product-interval", "d2.json"], d, None);
    assert!(p.contains("\"dim\": 3"));
    let h = ok(&["run", "homology", "--format", "json"], d, Some(&p));
    assert!(h.contains("\"betti\""));

    // the edge 01 is an eden and full, not an abyss; collapsing it gives Δ[2]/Δ[1]
    write(d, "edge.json", "{\"ambient\": \"d2.json\", \"members\": [\"0/0\", \"0/1\", \"1/0\"]}");
    assert_eq!(ok(&["run", "check", "eden", "edge.json"], d, None), "eden: pass\n");
    assert_eq!(ok(&["run", "check", "full", "edge.json"], d, None), "full: pass\n");
    let out = nssets(&["run", "check", "abyss", "edge.json"], d, None);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "abyss: fail\n");
    let c = ok(&["run", "collapse", "edge.json"], d, None);
    let dc = ok(&["run", "desing"], d, Some(&c));
    write(d, "dc.json", &dc);
    ok(&["build", "simplex", "1", "-o", "d1.json"], d, None);
    assert_eq!(ok(&["run", "check", "iso", "dc.json", "d1.json"], d, None), "iso: pass\n");

    // pushout of the two ends of an edge into points: a circle
    ok(&["build", "simplex", "0", "-o", "pt.json"], d, None);
    ok(&["build", "boundary", "1", "-o", "two.json"], d, None);
    write(
        d,
        "f.json",
        "{\"images\": {\"0/0\": \"0/0 : 0\", \"0/1\": \"0/1 : 0\"}, \"source\": \"two.json\", \"target\": \"d1.json\"}",
    );
    write(
        d,
        "g.json",
        "{\"images\": {\"0/0\": \"0/0 : 0\", \"0/1\": \"0/0 : 0\"}, \"source\": \"two.json\", \"target\": \"pt.json\"}",
    );
    let circle = ok(&["run", "pushout", "--left", "f.json", "--right", "g.json"], d, None);
    assert_eq!(ok(&["run", "homology"], d, Some(&circle)), "H_0 = Z\nH_1 = Z\n");
    assert_eq!(nssets(&["run", "check", "nonsingular"], d, Some(&circle)).status.code(), Some(1));
}

#[test]
fn strom_bundles() {
    let t = tempfile::tempdir().unwrap();
    let d = t.path();
    ok(&["build", "simplex", "2", "-o", "d2.json"], d, None);
    write(
        d,
        "bd.json",
        "{\"ambient\": \"d2.json\", \"members\": [\"0/0\", \"0/1\", \"0/2\", \"1/0\", \"1/1\", \"1/2\"]}",
    );
    ok(&["run", "strom", "build", "bd.json", "--out", "s"], d, None);
    let v = ok(&["run", "strom", "verify", "s"], d, None);
    assert_eq!(v, "eden inclusion: pass\nabyss factorization: pass\nretraction: pass\ndeformation: pass\n");
    // the Barratt construction refuses a subset that is not an eden
    assert_eq!(
        nssets(&["run", "strom", "build", "bd.json", "--method", "barratt", "--out", "x"], d, None).status.code(),
        Some(2)
    );

    // collapse the source to a point
    let a = fs::read_to_string(d.join("s/a.json")).unwrap();
    ok(&["build", "simplex", "0", "-o", "pt.json"], d, None);
    let mut entries = Vec::new();
    let set: serde_json::Value = serde_json::from_str(&a).unwrap();
    for (dim, count) in set["counts"].as_array().unwrap().iter().enumerate() {
        for i in 0..count.as_u64().unwrap() {
            let sigma = vec!["0"; dim + 1].join(" ");
            entries.push(format!("\"{dim}/{i}\": \"0/0 : {sigma}\""));
        }
    }
    assert_eq!(set["counts"], serde_json::json!([12, 12]));
    write(
        d,
        "f.json",
        &format!("{{\"images\": {{{}}}, \"source\": \"s/a.json\", \"target\": \"pt.json\"}}", entries.join(", ")),
    );
    ok(&["run", "strom", "cobase", "s", "--map", "f.json", "--out", "t"], d, None);
    let v = ok(&["run", "strom", "verify", "t", "--format", "json"], d, None);
    assert!(!v.contains("false"));
    let b = ok(&["run", "homology", "t/b.json"], d, None);
    assert_eq!(b, "H_0 = Z\nH_1 = 0\nH_2 = Z\n");
}

#[test]
fn corpus_is_reproducible() {
    let t = tempfile::tempdir().unwrap();
    let d = t.path();
    let listed = ok(&["corpus", "--count", "1", "--out-dir", "c"], d, None);
    assert_eq!(listed.trim(), Path::new("c").join("corpus-0-0000.json").display().to_string());
    let committed = fs::read(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/corpus-0-0000.json")).unwrap();
    assert_eq!(fs::read(d.join("c/corpus-0-0000.json")).unwrap(), committed);
    ok(&["corpus", "--count", "3", "--out-dir", "again"], d, None);
    assert_eq!(fs::read(d.join("again/corpus-0-0000.json")).unwrap(), committed);
    assert_eq!(ok(&["corpus", "--count", "0", "--out-dir", "none"], d, None), "");
    ok(&["corpus", "--count", "2", "--seed", "9", "--out-dir", "s9"], d, None);
    assert!(d.join("s9/corpus-9-0001.json").exists());
    assert_eq!(nssets(&["corpus", "--max-dim", "4"], d, None).status.code(), Some(2));
}

#[test]
fn work_dir_and_errors() {
    let t = tempfile::tempdir().unwrap();
    let d = t.path();
    let x = ok(&["build", "collapse", "simplex:2", "boundary:2"], d, None);
    ok(&["--work-dir", "w", "run", "desing"], d, Some(&x));
    assert!(d.join("w/desing.json").exists() && d.join("w/desing-log.json").exists());

    let missing = nssets(&["run", "homology", "missing.json"], d, None);
    assert_eq!(missing.status.code(), Some(2));
    // a face pointing at a vertex that does not exist
    write(
        d,
        "bad.json",
        "{\"counts\": [1, 1], \"dim\": 1, \"faces\": {\"1/0/0\": \"0/3 : 0\", \"1/0/1\": \"0/0 : 0\"}, \"labels\": {}}",
    );
    let bad = nssets(&["run", "check", "nonsingular", "bad.json"], d, None);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8(bad.stderr).unwrap().starts_with("error:"));
    assert_eq!(nssets(&["run", "frobnicate"], d, None).status.code(), Some(2));
    assert_eq!(nssets(&["run", "homology", "--format", "yaml"], d, None).status.code(), Some(2));
}

#[test]
fn accept_subset() {
    let t = tempfile::tempdir().unwrap();
    let d = t.path();
    let out = ok(&["--work-dir", "w", "accept", "--only", "1,3,12"], d, None);
    assert!(out.starts_with("criterion  1 PASS"));
    assert!(out.ends_with("3/3 criteria passed\n"));
    let json = fs::read_to_string(d.join("w/accept.json")).unwrap();
    assert_eq!(json.matches("\"passed\": true").count(), 3);
    assert_eq!(nssets(&["accept", "--only", "14"], d, None).status.code(), Some(2));
}
