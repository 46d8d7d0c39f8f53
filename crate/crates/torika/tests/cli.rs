use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use torika::{load_datum, LoadOptions};
use torika_core::toric::pure_divisorial_truncation;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixture(name: &str) -> PathBuf {
    fixtures().join(name)
}

fn torika(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torika"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn shipped() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(fixtures())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    v.sort();
    v
}

#[test]
fn report_shows_cyclic_class_group() {
    let o = torika(&["report", fixture("two_rays_n3.json").to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("class group:") && l.ends_with(" Z/3")), "{out}");
}

#[test]
fn truncate_of_plane_is_punctured_plane() {
    let dir = std::env::temp_dir().join(format!("torika-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let o = torika(&["truncate", fixture("a2.json").to_str().unwrap()]);
    assert!(o.status.success());
    let out = dir.join("truncated.json");
    std::fs::write(&out, o.stdout).unwrap();
    let got = load_datum(&out, &LoadOptions::default()).unwrap();
    let want = load_datum(&fixture("a2_minus_origin.json"), &LoadOptions::default()).unwrap();
    assert_eq!(got.fan.rays(), want.fan.rays());
    assert_eq!(got.fan.cones(), want.fan.cones());
    assert_eq!(got.fan.lattice(), want.fan.lattice());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn check_int_passes_on_pure_divisorial_fixtures() {
    for p in shipped() {
        let loaded = load_datum(&p, &LoadOptions::default()).unwrap();
        if !loaded.fan.is_pure_divisorial() {
            continue;
        }
        let o = torika(&["check-int", "--bound", "5", p.to_str().unwrap()]);
        assert!(o.status.success(), "{}: {}", p.display(), stderr(&o));
        assert!(stdout(&o).contains("verdict:") && stdout(&o).contains("pass"));
    }
}

#[test]
fn malformed_fixtures_fail_with_located_errors() {
    let expected = [
        ("syntax_error.json", ":4:"),
        ("missing_rank.json", "lattice_rank"),
        ("unknown_field.json", "colour"),
        ("non_primitive_ray.json", "ray 0 not primitive"),
        ("wrong_ray_length.json", "rays[0]"),
        ("zero_ray.json", "ray 0 is zero"),
        ("duplicate_ray.json", "rays 0 and 1 coincide"),
        ("ray_index_out_of_range.json", "max_cones[0]"),
        ("overlapping_cones.json", "common face"),
        ("dependent_generators.json", "linearly dependent"),
        ("cone_too_large.json", "max_cones[0]"),
        ("unknown_preset.json", "unknown preset"),
        ("bad_table.json", "group.table"),
        ("non_unimodular_action.json", "group element 1"),
        ("wrong_action_count.json", "action.per_element"),
        ("wrong_matrix_shape.json", "action.per_element[1]"),
        ("not_a_homomorphism.json", "not a homomorphism"),
        ("non_equivariant.json", "action:"),
        ("group_too_large.json", "resource limit"),
    ];
    let dir = fixtures().join("malformed");
    let on_disk = std::fs::read_dir(&dir).unwrap().count();
    assert_eq!(on_disk, expected.len(), "every malformed fixture has an expectation");
    for (file, needle) in expected {
        let o = torika(&["report", dir.join(file).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{file}");
        assert!(stdout(&o).is_empty(), "{file}");
        let err = stderr(&o);
        assert!(err.starts_with("error: ") && err.contains(file), "{file}: {err}");
        assert!(err.contains(needle), "{file}: {err}");
    }
}

#[test]
fn normalize_rays_flag() {
    let p = fixtures().join("malformed/non_primitive_ray.json");
    let o = torika(&["validate", "--normalize-rays", p.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("valid:  true"));
}

#[test]
fn validate_lists_every_issue() {
    let p = fixtures().join("malformed/duplicate_ray.json");
    let o = torika(&["validate", "--format", "json", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["valid"], false);
    assert!(v["issues"].as_array().unwrap().len() >= 2);
}

#[test]
fn json_reports_are_deterministic() {
    let files: Vec<String> = shipped().iter().map(|p| p.to_str().unwrap().to_string()).collect();
    let mut args = vec!["report", "--format", "json"];
    args.extend(files.iter().map(String::as_str));
    let a = torika(&args);
    let b = torika(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let docs: Vec<serde_json::Value> = serde_json::Deserializer::from_slice(&a.stdout)
        .into_iter()
        .collect::<Result<_, _>>()
        .unwrap();
    assert_eq!(docs.len(), files.len());
    let rank3 = docs.iter().find(|d| d["name"].as_str().unwrap().starts_with("rank three")).unwrap();
    assert_eq!(rank3["brauer_kernel"]["display"], "Z/2");
    assert_eq!(rank3["splitting_group"], "C2 (order 2)");
}

#[test]
fn outputs_follow_argument_order() {
    let names = ["two_rays_n5.json", "p1.json", "two_rays_n2.json"];
    let paths: Vec<String> = names.iter().map(|n| fixture(n).to_str().unwrap().to_string()).collect();
    let mut args = vec!["invariants"];
    args.extend(paths.iter().map(String::as_str));
    let out = stdout(&torika(&args));
    let classes: Vec<&str> = out
        .lines()
        .filter_map(|l| l.strip_prefix("class group:"))
        .map(str::trim)
        .collect();
    assert_eq!(classes, ["Z/5", "Z", "Z/2"]);
}

#[test]
fn one_bad_file_does_not_hide_the_others() {
    let good = fixture("p2.json");
    let bad = fixtures().join("malformed/zero_ray.json");
    let o = torika(&["invariants", good.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("class group:"));
    assert!(stderr(&o).contains("zero_ray.json"));
}

#[test]
fn standard_emits_cover_matrix() {
    let o = torika(&["standard", "--format", "json", fixture("sign_line.json").to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rho"], serde_json::json!([[1, -1]]));
    assert_eq!(v["standard"]["lattice_rank"], 2);
}

#[test]
fn cohomology_subcommand() {
    let f = fixture("sign_line.json");
    let o = torika(&["cohomology", "--degree", "1", "--format", "json", f.to_str().unwrap()]);
    assert_eq!(serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap()["group"]["display"], "Z/2");
    let o = torika(&["cohomology", "--degree", "2", "--format", "json", f.to_str().unwrap()]);
    assert_eq!(serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap()["group"]["display"], "0");
    let o = torika(&["cohomology", "--max-group-order", "1", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("resource limit"));
}

#[test]
fn splitting_group_flag() {
    let p1 = fixture("p1.json");
    let o = torika(&["report", "--splitting-group", "C3", p1.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("C3 (order 3)"));
    let o = torika(&["report", "--splitting-group", "C3", fixture("sign_line.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn smooth_subcommand_flags_singular_cones() {
    let dir = std::env::temp_dir().join(format!("torika-smooth-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("singular.json");
    std::fs::write(&p, r#"{"lattice_rank": 2, "rays": [[1, 0], [1, 2]], "max_cones": [[0, 1]]}"#).unwrap();
    let o = torika(&["smooth", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("singular"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn round_trip_through_truncate_on_pure_fixtures() {
    for p in shipped() {
        let loaded = load_datum(&p, &LoadOptions::default()).unwrap();
        let o = torika(&["truncate", p.to_str().unwrap()]);
        let text = stdout(&o);
        let again = torika::datum::parse_datum(&p, &text).unwrap();
        assert_eq!(again.lattice_rank, loaded.fan.rank());
        let t = pure_divisorial_truncation(&loaded.fan);
        assert_eq!(again.rays.len(), t.rays().len());
    }
}
