use std::path::PathBuf;
use std::process::{Command, Output};

use aqg_core::io::{parse, preset, serialize, Preset};

fn aqg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aqg")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn shipped_files_parse() {
    let k_z2 = parse(&std::fs::read_to_string(data("k_z2.json")).unwrap()).unwrap();
    assert_eq!(k_z2.dimension, 2);
    let sw = parse(&std::fs::read_to_string(data("sweedler.json")).unwrap()).unwrap();
    assert_eq!(sw.dimension, 4);
    assert!(sw.star.is_none());
}

#[test]
fn shipped_files_verify() {
    for (file, code) in [("k_z2.json", 0), ("sweedler.json", 0), ("broken.json", 1)] {
        let path = data(file);
        let o = aqg(&["verify", "--file", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(code), "{file}");
    }
}

#[test]
fn shipped_sweedler_matches_preset() {
    let file = parse(&std::fs::read_to_string(data("sweedler.json")).unwrap()).unwrap();
    let Preset::Finite(p) = preset("sweedler").unwrap() else { panic!() };
    let sorted = |mut v: Vec<(usize, usize, usize, f64, f64)>| {
        v.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)));
        v
    };
    assert_eq!(sorted(file.mult), sorted(p.mult));
    assert_eq!(sorted(file.comult), sorted(p.comult));
}

#[test]
fn sweedler_integrals_report() {
    let o = aqg(&["verify", "--preset", "sweedler", "--stages", "integrals"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for line in ["  δ = g\n", "  ν = -1\n", "  σ(g) = −g\n", "  σ(x) = −x\n", "skipped: no star"] {
        assert!(text.contains(line), "missing {line:?}");
    }
    assert!(text.contains("not requested"));
}

#[test]
fn dual_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("dual.json");
    let second = dir.path().join("bidual.json");
    assert!(aqg(&["dual", "--preset", "group_alg_s3", "--out", first.to_str().unwrap()]).status.success());
    let o = aqg(&["verify", "--file", first.to_str().unwrap(), "--stages", "all"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(aqg(&["dual", "--file", first.to_str().unwrap(), "--out", second.to_str().unwrap()]).status.success());
    let bidual = parse(&std::fs::read_to_string(&second).unwrap()).unwrap();
    assert_eq!(bidual.dimension, 6);
    assert!(bidual.star.is_some());
}

#[test]
fn presets_listing() {
    let o = aqg(&["presets"]);
    assert!(o.status.success());
    let names: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(names, ["k_z2", "k_z4", "k_s3", "group_alg_z2", "group_alg_s3", "sweedler", "z_discrete"]);
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"schema_version\": 1,\n  nope\n}").unwrap();
    let o = aqg(&["verify", "--file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let Preset::Finite(mut f) = preset("k_z2").unwrap() else { panic!() };
    f.mult.push((0, 0, 2, 1.0, 0.0));
    std::fs::write(&bad, serialize(&f)).unwrap();
    assert_eq!(aqg(&["verify", "--file", bad.to_str().unwrap()]).status.code(), Some(2));

    assert_eq!(aqg(&["verify", "--preset", "k_z5"]).status.code(), Some(2));
    assert_eq!(aqg(&["verify", "--preset", "k_z2", "--stages", "bogus"]).status.code(), Some(2));
}

#[test]
fn report_to_path_as_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = aqg(&["verify", "--preset", "z_discrete", "--format", "json", "--report", out.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
    assert_eq!(v["stages"][0]["stage"], "discrete");
}
