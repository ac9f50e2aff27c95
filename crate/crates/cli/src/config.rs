//! The run configuration echoed into every artifact.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

pub const TOOL: &str = "bubbletrap";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: &'static str,
    pub inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha1: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha2: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timeout_secs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng_seed: Option<u64>,
    pub out: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<&'static str>,
    /// Subcommand-specific parameters.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<&'static str, Value>,
}

#[derive(Serialize)]
pub struct HeaderRecord<'a> {
    record: &'static str,
    #[serde(flatten)]
    config: &'a RunConfig,
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

impl RunConfig {
    pub fn new(subcommand: &'static str, out: &Path) -> Self {
        RunConfig {
            tool: TOOL,
            version: VERSION,
            subcommand,
            inputs: Vec::new(),
            k: None,
            alpha1: None,
            alpha2: None,
            b: None,
            timeout_secs: None,
            rng_seed: None,
            out: display(out),
            format: None,
            params: BTreeMap::new(),
        }
    }

    pub fn set_inputs<P: AsRef<Path>>(&mut self, paths: &[P]) {
        self.inputs = paths.iter().map(|p| display(p.as_ref())).collect();
    }

    pub fn param(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.params.insert(key, value.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    /// `{"record":"config", ...}` for JSON-lines outputs.
    pub fn header_record(&self) -> HeaderRecord<'_> {
        HeaderRecord {
            record: "config",
            config: self,
        }
    }

    pub fn output(&self, name: &str) -> PathBuf {
        PathBuf::from(&self.out).join(name)
    }
}
