//! JSON file formats. Rationals are `"p/q"` strings; node ids are 1-based.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::constructor::WeightVector;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ratlinalg::{MatrixSequence, RationalVector};

pub const GRAPH_SCHEMA: &str = r#"{"n": <int>, "arcs": [[from,to], ...], "undirected"?: bool}"#;
pub const SEQUENCE_SCHEMA: &str = r#"{"n": <int>, "matrices": [[["p/q", ...], ...], ...]}"#;
pub const VECTOR_SCHEMA: &str = r#"{"x": ["p/q", ...]}"#;

/// `{"x": [...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorFile {
    pub x: RationalVector,
}

fn read_json<T: DeserializeOwned>(path: &Path, schema: &'static str) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Format {
        path: path.display().to_string(),
        message: e.to_string(),
        schema,
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("report types serialize");
    fs::write(path, text + "\n").map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    read_json(path, GRAPH_SCHEMA)
}

pub fn load_sequence(path: &Path) -> Result<MatrixSequence> {
    read_json(path, SEQUENCE_SCHEMA)
}

pub fn load_vector(path: &Path) -> Result<RationalVector> {
    read_json::<VectorFile>(path, VECTOR_SCHEMA).map(|f| f.x)
}

pub fn load_weights(path: &Path) -> Result<WeightVector> {
    let x = load_vector(path)?;
    WeightVector::new(x).map_err(|e| Error::Format {
        path: path.display().to_string(),
        message: e.to_string(),
        schema: VECTOR_SCHEMA,
    })
}
