//! Reading and validating JSON inputs. Every failure carries an error code
//! and a JSON-path location.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use plexus_core::array::{Array, IndexSet};
use plexus_core::diagram::{DiagramJson, StandardDiagram};
use plexus_core::evaluator::default_axis_vertices;
use plexus_core::{Binding, Diagram, Semiring};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::error::{CliError, ErrorCode};

/// `{"axes": [...], "entries": [...]}`, optionally with the vertices each
/// axis sits on when used as an edge binding.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrayInput {
    pub axes: Vec<String>,
    pub entries: Vec<serde_json::Value>,
    #[serde(default)]
    pub legs: Option<Vec<String>>,
}

/// A single array in its own file, as taken by `plexus fish`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrayFile {
    #[serde(default)]
    pub semiring: Option<String>,
    #[serde(default)]
    pub index_sets: BTreeMap<String, usize>,
    pub axes: Vec<String>,
    pub entries: Vec<serde_json::Value>,
}

/// Edge arrays for one diagram, as taken by `plexus eval --bindings`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BindingsFile {
    pub semiring: String,
    #[serde(default)]
    pub index_sets: BTreeMap<String, usize>,
    pub arrays: BTreeMap<String, ArrayInput>,
}

/// Reference from an edge to a named workspace array.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRef {
    pub array: String,
    #[serde(default)]
    pub legs: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    pub semiring: String,
    #[serde(default)]
    pub index_sets: BTreeMap<String, usize>,
    #[serde(default)]
    pub arrays: BTreeMap<String, ArrayInput>,
    #[serde(default)]
    pub diagrams: BTreeMap<String, DiagramJson>,
    #[serde(default)]
    pub bindings: BTreeMap<String, BTreeMap<String, EdgeRef>>,
}

/// A fully validated workspace.
#[derive(Debug, Clone)]
pub struct Workspace {
    pub semiring: Semiring,
    pub index_sets: HashMap<String, IndexSet>,
    pub arrays: BTreeMap<String, Array>,
    pub diagrams: BTreeMap<String, Diagram>,
    pub bindings: BTreeMap<String, Binding>,
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::new(ErrorCode::Io, path.display().to_string(), e))
}

pub fn parse_json<T: DeserializeOwned>(path: &str, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::parse(path, &e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    parse_json(&path.display().to_string(), &read_text(path)?)
}

pub fn parse_semiring(text: &str, location: &str) -> Result<Semiring, CliError> {
    let normalized = text.replace('_', "-");
    normalized.parse().map_err(|e| CliError::from_semiring(location, e))
}

pub fn index_sets(declared: &BTreeMap<String, usize>, location: &str, into: &mut HashMap<String, IndexSet>) -> Result<(), CliError> {
    for (name, &size) in declared {
        let set = IndexSet::new(name.clone(), size).map_err(|e| CliError::from_array(format!("{location}.{name}"), e))?;
        into.insert(name.clone(), set);
    }
    Ok(())
}

pub fn load_array(axes: &[String], entries: &[serde_json::Value], sets: &HashMap<String, IndexSet>, s: Semiring, location: &str) -> Result<Array, CliError> {
    let axes = axes
        .iter()
        .enumerate()
        .map(|(k, name)| {
            sets.get(name)
                .cloned()
                .ok_or_else(|| CliError::new(ErrorCode::UnknownIndexSet, format!("{location}.axes[{k}]"), format!("unknown index set `{name}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let expected: usize = axes.iter().map(IndexSet::size).product();
    if entries.len() != expected {
        return Err(CliError::new(
            ErrorCode::SizeMismatch,
            format!("{location}.entries"),
            format!("expected {expected} entries, found {}", entries.len()),
        ));
    }
    let values = entries
        .iter()
        .enumerate()
        .map(|(k, v)| s.value_from_json(v).map_err(|e| CliError::from_semiring(format!("{location}.entries[{k}]"), e)))
        .collect::<Result<Vec<_>, _>>()?;
    Array::new(axes, values, s).map_err(|e| CliError::from_array(location, e))
}

pub fn load_diagram(json: &DiagramJson, known: &HashMap<String, IndexSet>, location: &str) -> Result<Diagram, CliError> {
    let mut sets = known.clone();
    index_sets(&json.index_sets, &format!("{location}.index_sets"), &mut sets)?;
    for (k, v) in json.vertices.iter().enumerate() {
        if !sets.contains_key(&v.index_set) {
            return Err(CliError::new(
                ErrorCode::UnknownIndexSet,
                format!("{location}.vertices[{k}].index_set"),
                format!("unknown index set `{}`", v.index_set),
            ));
        }
    }
    for (k, e) in json.edges.iter().enumerate() {
        for (m, leg) in e.legs.iter().enumerate() {
            if !json.vertices.iter().any(|v| &v.id == leg) {
                return Err(CliError::new(
                    ErrorCode::BadReference,
                    format!("{location}.edges[{k}].legs[{m}]"),
                    format!("edge `{}` references unknown vertex `{leg}`", e.id),
                ));
            }
        }
    }
    Diagram::from_json(json, &sets).map_err(|e| CliError::from_diagram(location, e))
}

/// Resolve leg ids to vertex positions; default is the evaluator's order.
fn axis_vertices(d: &Diagram, edge: &str, legs: Option<&[String]>, location: &str) -> Result<Vec<usize>, CliError> {
    let k = d
        .edge_index(edge)
        .ok_or_else(|| CliError::new(ErrorCode::BadReference, location, format!("diagram has no edge `{edge}`")))?;
    match legs {
        None => Ok(default_axis_vertices(d, k)),
        Some(legs) => legs
            .iter()
            .enumerate()
            .map(|(m, id)| {
                d.vertex_index(id)
                    .ok_or_else(|| CliError::new(ErrorCode::BadReference, format!("{location}.legs[{m}]"), format!("unknown vertex `{id}`")))
            })
            .collect(),
    }
}

fn check_binding(d: &Diagram, b: &Binding, location: &str) -> Result<(), CliError> {
    b.validate(d).map(|_| ()).map_err(|e| CliError::from_eval(location, e))
}

/// A diagram file plus a bindings file.
pub fn load_bindings(d: &Diagram, file: &BindingsFile, location: &str) -> Result<Binding, CliError> {
    let s = parse_semiring(&file.semiring, &format!("{location}.semiring"))?;
    let mut sets: HashMap<String, IndexSet> = d.vertices().iter().map(|v| (v.index_set.name().to_string(), v.index_set.clone())).collect();
    index_sets(&file.index_sets, &format!("{location}.index_sets"), &mut sets)?;
    let mut b = Binding::new();
    for (edge, input) in &file.arrays {
        let here = format!("{location}.arrays.{edge}");
        let array = load_array(&input.axes, &input.entries, &sets, s, &here)?;
        let vertices = axis_vertices(d, edge, input.legs.as_deref(), &here)?;
        b.bind(edge, array, vertices);
    }
    check_binding(d, &b, &format!("{location}.arrays"))?;
    Ok(b)
}

pub fn load_workspace_text(path: &str, text: &str) -> Result<Workspace, CliError> {
    let file: WorkspaceFile = parse_json(path, text)?;
    build_workspace(&file)
}

pub fn load_workspace(path: &Path) -> Result<Workspace, CliError> {
    load_workspace_text(&path.display().to_string(), &read_text(path)?)
}

pub fn build_workspace(file: &WorkspaceFile) -> Result<Workspace, CliError> {
    let semiring = parse_semiring(&file.semiring, "$.semiring")?;
    let mut sets = HashMap::new();
    index_sets(&file.index_sets, "$.index_sets", &mut sets)?;
    let mut arrays = BTreeMap::new();
    for (name, input) in &file.arrays {
        let array = load_array(&input.axes, &input.entries, &sets, semiring, &format!("$.arrays.{name}"))?;
        arrays.insert(name.clone(), array);
    }
    let mut diagrams = BTreeMap::new();
    for (name, json) in &file.diagrams {
        diagrams.insert(name.clone(), load_diagram(json, &sets, &format!("$.diagrams.{name}"))?);
    }
    let mut bindings = BTreeMap::new();
    for (name, edges) in &file.bindings {
        let location = format!("$.bindings.{name}");
        let d = diagrams
            .get(name)
            .ok_or_else(|| CliError::new(ErrorCode::BadReference, &location, format!("no diagram named `{name}`")))?;
        let mut b = Binding::new();
        for (edge, r) in edges {
            let here = format!("{location}.{edge}");
            let array = arrays
                .get(&r.array)
                .ok_or_else(|| CliError::new(ErrorCode::BadReference, format!("{here}.array"), format!("no array named `{}`", r.array)))?;
            let vertices = axis_vertices(d, edge, r.legs.as_deref(), &here)?;
            b.bind(edge, array.clone(), vertices);
        }
        check_binding(d, &b, &location)?;
        bindings.insert(name.clone(), b);
    }
    Ok(Workspace {
        semiring,
        index_sets: sets,
        arrays,
        diagrams,
        bindings,
    })
}

/// Load a diagram from a file, or build a standard one by name.
pub fn diagram_or_standard(arg: &str, size: usize) -> Result<Diagram, CliError> {
    let path = Path::new(arg);
    if path.exists() {
        let json: DiagramJson = read_json(path)?;
        return load_diagram(&json, &HashMap::new(), "$");
    }
    let name: StandardDiagram = arg
        .parse()
        .map_err(|e| CliError::new(ErrorCode::BadReference, arg, format!("not a file or standard diagram: {e}")))?;
    let set = IndexSet::new("I", size).map_err(|e| CliError::from_array("--size", e))?;
    plexus_core::diagram::standard_diagram(&name, &set).map_err(|e| CliError::from_diagram(arg, e))
}

/// One array file, in the semiring given on the command line or in the file.
pub fn load_array_file(path: &Path, semiring: Option<Semiring>) -> Result<Array, CliError> {
    let file: ArrayFile = read_json(path)?;
    let here = path.display().to_string();
    let s = match (semiring, &file.semiring) {
        (Some(s), _) => s,
        (None, Some(text)) => parse_semiring(text, &format!("{here}:$.semiring"))?,
        (None, None) => return Err(CliError::argument("--semiring", format!("{here} declares no semiring and none was given"))),
    };
    let mut sets = HashMap::new();
    index_sets(&file.index_sets, &format!("{here}:$.index_sets"), &mut sets)?;
    load_array(&file.axes, &file.entries, &sets, s, &format!("{here}:$"))
}

/// `{"axes": [...], "entries": [...]}` for output.
pub fn array_json(a: &Array) -> serde_json::Value {
    let sets: BTreeMap<&str, usize> = a.axes().iter().map(|x| (x.name(), x.size())).collect();
    serde_json::json!({
        "semiring": a.semiring().to_string(),
        "index_sets": sets,
        "axes": a.axes().iter().map(IndexSet::name).collect::<Vec<_>>(),
        "entries": a.to_json().entries,
    })
}
