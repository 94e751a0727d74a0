//! JSON instance files and report serialization.
//!
//! An instance file is `{"id": "...", "points": [[x, y], ...]}`; `id` is
//! optional. Floats are written in shortest round-trip form, so
//! `parse(to_json(inst)) == inst` bit for bit.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point, Tolerance};
use crate::spanning::Instance;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    points: Vec<[f64; 2]>,
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse { line: e.line(), column: e.column(), message: e.to_string() }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(parse_error)?;
    let points = file.points.into_iter().map(Point::from).collect();
    Instance::with_tolerance(points, file.id, &Tolerance::default())
}

/// Like [`parse_instance`] for raw bytes; invalid UTF-8 is a parse error.
pub fn parse_instance_bytes(bytes: &[u8]) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_slice(bytes).map_err(parse_error)?;
    let points = file.points.into_iter().map(Point::from).collect();
    Instance::with_tolerance(points, file.id, &Tolerance::default())
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance> {
    let text = std::fs::read_to_string(path)?;
    parse_instance(&text)
}

pub fn instance_to_json(inst: &Instance) -> String {
    let file = InstanceFile {
        id: inst.id().map(str::to_owned),
        points: inst.points().iter().map(|&p| p.into()).collect(),
    };
    serde_json::to_string(&file).expect("instance files always serialize")
}

pub fn save_instance(inst: &Instance, path: impl AsRef<Path>) -> Result<()> {
    let mut text = instance_to_json(inst);
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Pretty JSON for reports. Output depends only on the value.
pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports contain only finite numbers")
}

/// Tree edges given as index pairs: `[[i, j], ...]`.
pub fn parse_edge_list(text: &str) -> Result<Vec<(usize, usize)>> {
    let pairs: Vec<[usize; 2]> = serde_json::from_str(text).map_err(parse_error)?;
    Ok(pairs.into_iter().map(|[a, b]| (a, b)).collect())
}
