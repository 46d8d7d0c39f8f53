//! Subcommand execution. Each input file runs through its own pipeline on a
//! scoped thread; outputs are collected and emitted in argument order.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use torika_core::fan::{is_smooth, is_smooth_cone, orbit_dimension, validate_fan};
use torika_core::group::{cohomology_with_limits, Limits};
use torika_core::invariants::{brauer_kernel_with_limits, class_group, full_report_with_limits};
use torika_core::toric::{pure_divisorial_truncation, rho_map, tropical_int_check, TropicalCheck};
use torika_core::{BigInt, Error, FinAbGroup, GFan};

use crate::datum::{datum_from_fan, issue_field, load_datum, load_unvalidated, matrix_to_json, LoadOptions, Loaded};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Smooth,
    Truncate,
    Standard,
    Invariants,
    Cohomology,
    CheckInt,
    Report,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LatticeChoice {
    #[default]
    Character,
    Cocharacter,
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub load: LoadOptions,
    pub format: Format,
    pub bound: u64,
    pub limits: Limits,
    pub degree: usize,
    pub lattice: LatticeChoice,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            load: LoadOptions::default(),
            format: Format::Text,
            bound: 5,
            limits: Limits::default(),
            degree: 2,
            lattice: LatticeChoice::Character,
        }
    }
}

/// Exit classes, ordered by severity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    /// The input was fine but a check it asked for failed.
    CheckFailed,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::CheckFailed => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FileOutcome {
    pub path: PathBuf,
    pub stdout: String,
    pub stderr: String,
    pub status: Status,
}

/// Runs `cmd` on every file concurrently, returning outcomes in input order.
pub fn run_files(cmd: Command, paths: &[PathBuf], opts: &RunOptions) -> Vec<FileOutcome> {
    std::thread::scope(|s| {
        let handles: Vec<_> = paths
            .iter()
            .map(|p| s.spawn(move || run_file(cmd, p, opts)))
            .collect();
        handles
            .into_iter()
            .zip(paths)
            .map(|(h, p)| {
                h.join().unwrap_or_else(|_| FileOutcome {
                    path: p.clone(),
                    stdout: String::new(),
                    stderr: format!("{}: internal error: worker panicked\n", p.display()),
                    status: Status::Error,
                })
            })
            .collect()
    })
}

pub fn run_file(cmd: Command, path: &Path, opts: &RunOptions) -> FileOutcome {
    let outcome = if cmd == Command::Validate {
        validate(path, opts)
    } else {
        load_datum(path, &opts.load)
            .map_err(|e| e.to_string())
            .and_then(|loaded| execute(cmd, &loaded, opts).map_err(|e| format!("{}: {e}", path.display())))
    };
    match outcome {
        Ok((body, status)) => FileOutcome {
            path: path.to_path_buf(),
            stdout: body,
            stderr: String::new(),
            status,
        },
        Err(msg) => FileOutcome {
            path: path.to_path_buf(),
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            status: Status::Error,
        },
    }
}

type Output = Result<(String, Status), String>;

fn emit(opts: &RunOptions, value: Value, text: impl FnOnce() -> String) -> String {
    match opts.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Text => text(),
    }
}

/// Aligned `key: value` lines.
fn table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{:<width$}  {}", format!("{k}:"), v, width = width + 1);
    }
    out
}

pub fn group_json(g: &FinAbGroup) -> Value {
    json!({
        "free_rank": g.free_rank(),
        "torsion": g.torsion().iter().map(big_json).collect::<Vec<_>>(),
        "display": g.to_string(),
    })
}

fn big_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(x.to_string()),
    }
}

fn validate(path: &Path, opts: &RunOptions) -> Output {
    let loaded = load_unvalidated(path, &opts.load).map_err(|e| e.to_string())?;
    let report = validate_fan(&loaded.fan);
    let valid = report.is_valid();
    let issues: Vec<Value> = report
        .issues
        .iter()
        .map(|i| json!({"field": issue_field(i), "message": i.to_string()}))
        .collect();
    let value = json!({
        "file": path.display().to_string(),
        "name": loaded.name,
        "valid": valid,
        "issues": issues,
    });
    let body = emit(opts, value, || {
        let mut s = table(&[
            ("name", loaded.name.clone()),
            ("valid", valid.to_string()),
            ("rays", loaded.fan.rays().len().to_string()),
            ("cones", loaded.fan.cones().len().to_string()),
        ]);
        for i in &report.issues {
            let _ = writeln!(s, "  {}: {}", issue_field(i), i);
        }
        s
    });
    Ok((body, if valid { Status::Ok } else { Status::Error }))
}

fn execute(cmd: Command, loaded: &Loaded, opts: &RunOptions) -> Result<(String, Status), Error> {
    let fan = &loaded.fan;
    let splitting = loaded.group_description();
    match cmd {
        Command::Validate => unreachable!("handled before loading"),
        Command::Smooth => {
            let mut cones = Vec::new();
            for c in fan.cones() {
                cones.push((c.rays().to_vec(), c.dim(), is_smooth_cone(fan, c)?, orbit_dimension(fan, c)?));
            }
            let smooth = is_smooth(fan);
            let value = json!({
                "name": loaded.name,
                "smooth": smooth,
                "cones": cones.iter().map(|(r, d, s, o)| json!({
                    "rays": r, "dim": d, "smooth": s, "orbit_dim": o
                })).collect::<Vec<_>>(),
            });
            let body = emit(opts, value, || {
                let mut s = table(&[("name", loaded.name.clone()), ("smooth", smooth.to_string())]);
                for (r, d, sm, o) in &cones {
                    let _ = writeln!(s, "  cone {r:?}  dim {d}  orbit dim {o}  {}", if *sm { "smooth" } else { "singular" });
                }
                s
            });
            Ok((body, if smooth { Status::Ok } else { Status::CheckFailed }))
        }
        Command::Truncate => {
            let t = pure_divisorial_truncation(fan);
            let d = serialize(&format!("{} (truncated)", loaded.name), loaded, &t)?;
            Ok((pretty_datum(&d), Status::Ok))
        }
        Command::Standard => {
            let base = pure_divisorial_truncation(fan);
            let cover = rho_map(&base)?;
            let v = cover.morphism.source();
            let d = serialize(&format!("{} (standard)", loaded.name), loaded, v)?;
            let value = json!({
                "standard": d,
                "rho": matrix_to_json(cover.morphism.matrix()),
                "basis_rays": cover.basis_rays,
            });
            let body = emit(opts, value, || {
                let mut s = pretty_datum(&d);
                let _ = writeln!(s, "rho: {}", cover.morphism.matrix());
                let _ = writeln!(s, "basis rays: {:?}", cover.basis_rays);
                s
            });
            Ok((body, Status::Ok))
        }
        Command::Invariants => {
            let cl = class_group(fan)?;
            let base = pure_divisorial_truncation(fan);
            let br = brauer_kernel_with_limits(&base, &opts.limits).map_err(|e| e.in_stage("brauer kernel"))?;
            let value = json!({
                "name": loaded.name,
                "splitting_group": splitting,
                "class_group": group_json(&cl),
                "brauer_kernel": group_json(&br),
            });
            let body = emit(opts, value, || {
                table(&[
                    ("name", loaded.name.clone()),
                    ("splitting group", splitting.clone()),
                    ("class group", cl.to_string()),
                    ("brauer kernel", br.to_string()),
                ])
            });
            Ok((body, Status::Ok))
        }
        Command::Cohomology => {
            let (label, lattice) = match opts.lattice {
                LatticeChoice::Character => ("character", fan.lattice().dual()),
                LatticeChoice::Cocharacter => ("cocharacter", fan.lattice().clone()),
            };
            let h = cohomology_with_limits(&lattice, opts.degree, &opts.limits)?;
            let value = json!({
                "name": loaded.name,
                "splitting_group": splitting,
                "lattice": label,
                "degree": opts.degree,
                "group": group_json(h.group()),
            });
            let body = emit(opts, value, || {
                table(&[
                    ("name", loaded.name.clone()),
                    ("splitting group", splitting.clone()),
                    (&format!("H^{}({label})", opts.degree), h.group().to_string()),
                ])
            });
            Ok((body, Status::Ok))
        }
        Command::CheckInt => {
            let truncated = !fan.is_pure_divisorial();
            let base = pure_divisorial_truncation(fan);
            let check = tropical_int_check(&base, opts.bound)?;
            let value = json!({
                "name": loaded.name,
                "truncated": truncated,
                "check": check_json(&check),
            });
            let body = emit(opts, value, || {
                let mut s = table(&[
                    ("name", loaded.name.clone()),
                    ("bound", check.bound.to_string()),
                    ("standard bound", check.source_bound.to_string()),
                    ("points", check.points.to_string()),
                    ("on truncation", truncated.to_string()),
                    ("verdict", if check.passed { "pass" } else { "fail" }.to_string()),
                ]);
                for p in &check.missing {
                    let _ = writeln!(s, "  missing {}", fmt_point(p));
                }
                for p in &check.extra {
                    let _ = writeln!(s, "  extra {}", fmt_point(p));
                }
                s
            });
            Ok((body, if check.passed { Status::Ok } else { Status::CheckFailed }))
        }
        Command::Report => {
            let r = full_report_with_limits(fan, opts.bound, &opts.limits)?;
            let value = json!({
                "name": loaded.name,
                "splitting_group": splitting,
                "group_order": r.group_order,
                "rank": r.rank,
                "smooth": r.smooth,
                "pure_divisorial": r.pure_divisorial,
                "orbit_count": r.orbit_count,
                "ray_orbits": r.ray_orbits.iter().map(|o| json!({
                    "rays": o.rays, "size": o.size, "stabilizer_order": o.stabilizer_order
                })).collect::<Vec<_>>(),
                "class_group": group_json(&r.class_group),
                "brauer_kernel": group_json(&r.brauer_kernel),
                "truncated": r.truncated,
                "check_int": check_json(&r.tropical_check),
            });
            let body = emit(opts, value, || {
                let mut rows = vec![
                    ("name", loaded.name.clone()),
                    ("splitting group", splitting.clone()),
                    ("rank", r.rank.to_string()),
                    ("smooth", r.smooth.to_string()),
                    ("pure divisorial", r.pure_divisorial.to_string()),
                    ("torus orbits", r.orbit_count.to_string()),
                    ("ray orbits", r.ray_orbits.len().to_string()),
                    ("class group", r.class_group.to_string()),
                    ("brauer kernel", r.brauer_kernel.to_string()),
                ];
                rows.push((
                    "check-int",
                    format!(
                        "{} (bound {}{})",
                        if r.tropical_check.passed { "pass" } else { "fail" },
                        r.tropical_check.bound,
                        if r.truncated { ", on truncation" } else { "" }
                    ),
                ));
                let mut s = table(&rows);
                for (i, o) in r.ray_orbits.iter().enumerate() {
                    let _ = writeln!(s, "  orbit {i}: rays {:?}, stabilizer order {}", o.rays, o.stabilizer_order);
                }
                s
            });
            Ok((body, Status::Ok))
        }
    }
}

fn check_json(c: &TropicalCheck) -> Value {
    json!({
        "passed": c.passed,
        "bound": c.bound,
        "standard_bound": c.source_bound,
        "points": c.points,
        "enumerated": c.enumerated,
        "missing": c.missing.iter().map(|p| p.iter().map(big_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "extra": c.extra.iter().map(|p| p.iter().map(big_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn fmt_point(p: &[BigInt]) -> String {
    let parts: Vec<String> = p.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn pretty_datum(d: &crate::datum::ToricDatum) -> String {
    let mut s = serde_json::to_string_pretty(d).expect("datum serializes");
    s.push('\n');
    s
}

fn serialize(name: &str, loaded: &Loaded, fan: &GFan) -> Result<crate::datum::ToricDatum, Error> {
    datum_from_fan(name, loaded.group_label.as_deref(), fan)
        .ok_or_else(|| Error::Internal("entries exceed the range of the file format".into()))
}
