use anyhow::{bail, Context, Result};
use geosep::geometry::build_intersection_graph;
use geosep::{Graph, ObjectSet};
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::fs;
use std::path::Path;

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Writes pretty JSON to `path`, or to stdout when no path is given.
pub fn write_json(path: Option<&Path>, v: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(v)? + "\n";
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn kind_of(v: &Value) -> Option<&str> {
    v.get("kind").and_then(Value::as_str)
}

/// A graph, with the objects it came from when the input was geometric.
pub struct Input {
    pub graph: Graph,
    pub geometry: Option<ObjectSet>,
}

/// Accepts an instance (objects) or a plain graph (`n`, `edges`).
pub fn load_input(path: &Path) -> Result<Input> {
    input_from_value(read_json(path)?)
}

pub fn input_from_value(v: Value) -> Result<Input> {
    if v.get("objects").is_some() {
        let f = ObjectSet::from_json_value(v)?;
        let graph = build_intersection_graph(&f)?.graph;
        Ok(Input { graph, geometry: Some(f) })
    } else if v.get("edges").is_some() {
        Ok(Input { graph: Graph::from_json_value(v)?, geometry: None })
    } else {
        bail!(geosep::Error::InvalidInput("expected an instance or a graph".into()))
    }
}

pub fn load_instance(path: &Path) -> Result<ObjectSet> {
    let input = load_input(path)?;
    match input.geometry {
        Some(f) => Ok(f),
        None => bail!(geosep::Error::InvalidInput(format!("{} holds a graph, not geometric objects", path.display()))),
    }
}

/// First 16 hex digits of the SHA-256 of the compact JSON text.
pub fn hash_json(v: &Value) -> String {
    let digest = Sha256::digest(v.to_string().as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| format!("bad list element {x:?}")))
        .collect()
}
