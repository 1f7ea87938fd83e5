use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use stanley_lab_core::{Graph, ModulePresentation, StanleyDecomposition};

use crate::CliError;

/// A graph preset such as `cycle:3+path:2`, or a path to a graph JSON file.
pub fn graph(arg: &str) -> Result<Graph, CliError> {
    if Path::new(arg).is_file() {
        return json_file(Path::new(arg));
    }
    arg.parse().map_err(|e| CliError::Input(format!("{arg}: {e}")))
}

pub fn json_file<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn module(path: &Path) -> Result<ModulePresentation, CliError> {
    json_file(path)
}

/// A certificate written by `construct`, or a bare decomposition.
pub fn certificate(path: &Path) -> Result<StanleyDecomposition, CliError> {
    let value: serde_json::Value = json_file(path)?;
    let inner = match value.get("decomposition") {
        Some(d) => d.clone(),
        None => value,
    };
    serde_json::from_value(inner).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
