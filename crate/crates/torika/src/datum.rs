//! The on-disk description of a fan with a group action.
//!
//! A datum is a JSON object:
//!
//! ```json
//! {
//!   "name": "swap",
//!   "group": "C2",
//!   "lattice_rank": 2,
//!   "action": { "per_generator": [ { "element": 1, "matrix": [[0, 1], [1, 0]] } ] },
//!   "rays": [[1, 0], [0, 1]],
//!   "max_cones": [[0, 1]]
//! }
//! ```
//!
//! `group` is a preset name or `{ "order": n, "table": [[..], ..] }`.
//! `action` is `{ "per_element": [matrix, ..] }` or `{ "per_generator": [..] }`
//! and defaults to the trivial action. `max_cones` defaults to one cone per
//! ray; faces are added on load. See `docs/format.md`.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use torika_core::fan::{validate_fan, Ray, ValidationIssue, ValidationReport};
use torika_core::linalg::content;
use torika_core::{BigInt, FiniteGroup, GFan, GLattice, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricDatum {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    pub lattice_rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionSpec>,
    #[serde(default)]
    pub rays: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_cones: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Preset(String),
    Table { order: usize, table: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ActionSpec {
    PerElement(Vec<Vec<Vec<i64>>>),
    PerGenerator(Vec<GeneratorAction>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorAction {
    pub element: usize,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Default)]
pub struct LoadOptions {
    /// Divide every ray by the gcd of its entries instead of rejecting it.
    pub normalize_rays: bool,
    /// Preset used when the file names no group; must agree with it otherwise.
    pub splitting_group: Option<String>,
}

/// A load failure, located by line and column for syntax errors and by
/// field for semantic ones.
#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: group: unknown preset {name:?}")]
    UnknownPreset { path: PathBuf, name: String },
    #[error("{path}: {field}: {message}")]
    Invalid {
        path: PathBuf,
        field: String,
        message: String,
    },
}

/// A parsed datum together with the fan it describes.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub name: String,
    /// Preset name of the group, or `None` for a group given by a table.
    pub group_label: Option<String>,
    pub fan: GFan,
}

impl Loaded {
    pub fn group_description(&self) -> String {
        match &self.group_label {
            Some(p) => format!("{p} (order {})", self.fan.group().order()),
            None => format!("order {} (table)", self.fan.group().order()),
        }
    }
}

struct Ctx<'a> {
    path: &'a Path,
}

impl Ctx<'_> {
    fn invalid(&self, field: impl Into<String>, message: impl fmt::Display) -> LoadError {
        LoadError::Invalid {
            path: self.path.to_path_buf(),
            field: field.into(),
            message: message.to_string(),
        }
    }
}

pub fn parse_datum(path: &Path, text: &str) -> Result<ToricDatum, LoadError> {
    serde_json::from_str(text).map_err(|e| LoadError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Reads, parses and validates a datum file.
pub fn load_datum(path: &Path, options: &LoadOptions) -> Result<Loaded, LoadError> {
    let loaded = load_unvalidated(path, options)?;
    let report = validate_fan(&loaded.fan);
    if let Some(issue) = report.issues.first() {
        return Err(LoadError::Invalid {
            path: path.to_path_buf(),
            field: issue_field(issue).into(),
            message: issue_summary(&report),
        });
    }
    Ok(loaded)
}

/// Reads and parses a datum, checking everything except the fan axioms.
pub fn load_unvalidated(path: &Path, options: &LoadOptions) -> Result<Loaded, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let datum = parse_datum(path, &text)?;
    build(path, datum, options)
}

fn issue_summary(report: &ValidationReport) -> String {
    let mut msgs = report.messages();
    if msgs.len() > 1 {
        let extra = msgs.len() - 1;
        msgs.truncate(1);
        format!("{} (and {extra} more)", msgs[0])
    } else {
        msgs.pop().unwrap_or_default()
    }
}

/// The datum field a validation issue points at.
pub fn issue_field(issue: &ValidationIssue) -> &'static str {
    use ValidationIssue::*;
    match issue {
        LatticeRankMismatch { .. } => "lattice_rank",
        RayWrongLength { .. } | ZeroRay { .. } | NonPrimitiveRay { .. } | DuplicateRay { .. } => "rays",
        RayImageMissing { .. } | ConeImageMissing { .. } => "action",
        _ => "max_cones",
    }
}

fn resolve_group(
    ctx: &Ctx,
    spec: Option<&GroupSpec>,
    splitting: Option<&str>,
) -> Result<(FiniteGroup, Option<String>), LoadError> {
    let preset = |name: &str| {
        FiniteGroup::preset(name).ok_or_else(|| LoadError::UnknownPreset {
            path: ctx.path.to_path_buf(),
            name: name.to_string(),
        })
    };
    let (group, label) = match spec {
        None => {
            let name = splitting.unwrap_or("trivial");
            (preset(name)?, Some(name.to_string()))
        }
        Some(GroupSpec::Preset(name)) => (preset(name)?, Some(name.clone())),
        Some(GroupSpec::Table { order, table }) => {
            if table.len() != *order {
                return Err(ctx.invalid(
                    "group.table",
                    format!("table has {} rows, order is {order}", table.len()),
                ));
            }
            let g = FiniteGroup::from_table(table).map_err(|e| ctx.invalid("group.table", e))?;
            (g, None)
        }
    };
    if let (Some(name), Some(_)) = (splitting, spec) {
        let split = preset(name)?;
        if split != group {
            return Err(ctx.invalid(
                "group",
                format!("splitting group {name} differs from the group in the file"),
            ));
        }
    }
    Ok((group, label))
}

fn matrix(ctx: &Ctx, field: String, rows: &[Vec<i64>], rank: usize) -> Result<IntMatrix, LoadError> {
    if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
        return Err(ctx.invalid(field, format!("expected a {rank}x{rank} matrix")));
    }
    Ok(IntMatrix::from_rows_with_width(rows, rank))
}

fn build(path: &Path, datum: ToricDatum, options: &LoadOptions) -> Result<Loaded, LoadError> {
    let ctx = Ctx { path };
    let rank = datum.lattice_rank;
    let (group, group_label) =
        resolve_group(&ctx, datum.group.as_ref(), options.splitting_group.as_deref())?;

    let lattice = match &datum.action {
        None => GLattice::trivial(group.clone(), rank),
        Some(ActionSpec::PerElement(ms)) => {
            if ms.len() != group.order() {
                return Err(ctx.invalid(
                    "action.per_element",
                    format!("{} matrices given for a group of order {}", ms.len(), group.order()),
                ));
            }
            let action = ms
                .iter()
                .enumerate()
                .map(|(g, m)| matrix(&ctx, format!("action.per_element[{g}]"), m, rank))
                .collect::<Result<Vec<_>, _>>()?;
            GLattice::new(group.clone(), rank, action).map_err(|e| ctx.invalid("action", e))?
        }
        Some(ActionSpec::PerGenerator(gens)) => {
            let gens = gens
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    Ok((g.element, matrix(&ctx, format!("action.per_generator[{i}]"), &g.matrix, rank)?))
                })
                .collect::<Result<Vec<_>, LoadError>>()?;
            GLattice::from_generators(group.clone(), rank, &gens)
                .map_err(|e| ctx.invalid("action", e))?
        }
    };

    let mut rays = Vec::with_capacity(datum.rays.len());
    for (i, r) in datum.rays.iter().enumerate() {
        if r.len() != rank {
            return Err(ctx.invalid(
                format!("rays[{i}]"),
                format!("ray {i} has {} coordinates, expected {rank}", r.len()),
            ));
        }
        let mut v: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
        if options.normalize_rays {
            let c = content(&v);
            if c > BigInt::from(1) {
                v.iter_mut().for_each(|x| *x /= &c);
            }
        }
        rays.push(Ray::new(v));
    }

    let max_cones = datum
        .max_cones
        .clone()
        .unwrap_or_else(|| (0..rays.len()).map(|i| vec![i]).collect());
    for (i, c) in max_cones.iter().enumerate() {
        if let Some(&bad) = c.iter().find(|&&r| r >= rays.len()) {
            return Err(ctx.invalid(format!("max_cones[{i}]"), format!("ray index {bad} out of range")));
        }
        if c.len() > rank {
            return Err(ctx.invalid(
                format!("max_cones[{i}]"),
                format!("cone has {} rays in a lattice of rank {rank}", c.len()),
            ));
        }
    }
    let fan = GFan::from_max_cones_unchecked(rank, rays, &max_cones, lattice);
    let name = datum
        .name
        .clone()
        .or_else(|| path.file_stem().map(|s| s.to_string_lossy().into_owned()))
        .unwrap_or_default();
    Ok(Loaded {
        name,
        group_label,
        fan,
    })
}

fn to_i64(x: &BigInt) -> Option<i64> {
    i64::try_from(x).ok()
}

fn matrix_rows(m: &IntMatrix) -> Option<Vec<Vec<i64>>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(to_i64).collect())
        .collect()
}

/// Serializes a fan back into the file format. The action is written per
/// element; entries outside the `i64` range are not representable.
pub fn datum_from_fan(name: &str, group_label: Option<&str>, fan: &GFan) -> Option<ToricDatum> {
    let group = match group_label {
        Some(p) => GroupSpec::Preset(p.to_string()),
        None => GroupSpec::Table {
            order: fan.group().order(),
            table: fan.group().table(),
        },
    };
    let trivial = fan.lattice().actions().iter().all(IntMatrix::is_identity);
    let action = if trivial {
        None
    } else {
        Some(ActionSpec::PerElement(
            fan.lattice()
                .actions()
                .iter()
                .map(matrix_rows)
                .collect::<Option<Vec<_>>>()?,
        ))
    };
    let rays = fan
        .rays()
        .iter()
        .map(|r| r.generator().iter().map(to_i64).collect())
        .collect::<Option<Vec<_>>>()?;
    let max_cones = fan
        .maximal_cones()
        .into_iter()
        .filter(|c| c.dim() > 0)
        .map(|c| c.rays().to_vec())
        .collect();
    Some(ToricDatum {
        name: Some(name.to_string()),
        group: Some(group),
        lattice_rank: fan.rank(),
        action,
        rays,
        max_cones: Some(max_cones),
    })
}

pub fn matrix_to_json(m: &IntMatrix) -> serde_json::Value {
    serde_json::Value::Array(
        (0..m.rows())
            .map(|i| {
                serde_json::Value::Array(
                    m.row(i)
                        .iter()
                        .map(|x| match to_i64(x) {
                            Some(v) => serde_json::Value::from(v),
                            None => serde_json::Value::from(x.to_string()),
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}
