use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use catalan_ops::qme::IterationTrace;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::CliError;

/// A double written as a JSON number in scientific notation.
#[derive(Clone, Copy, Debug)]
pub struct Sci(pub f64);

impl Serialize for Sci {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(format!("{:.17e}", self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

#[derive(Serialize)]
struct StepJson {
    k: usize,
    res: Sci,
    seconds: f64,
}

#[derive(Serialize)]
struct ValidationJson {
    residual: Sci,
    series_distance: Option<Sci>,
}

#[derive(Serialize)]
pub struct TraceJson {
    method: String,
    form: String,
    precision: String,
    n: usize,
    initial_res: Sci,
    steps: Vec<StepJson>,
    converged: bool,
    validation: Option<ValidationJson>,
}

impl From<&IterationTrace> for TraceJson {
    fn from(t: &IterationTrace) -> Self {
        Self {
            method: t.method.clone(),
            form: t.form.clone(),
            precision: t.precision.clone(),
            n: t.n,
            initial_res: Sci(t.initial_res),
            steps: t
                .steps
                .iter()
                .map(|s| StepJson {
                    k: s.k,
                    res: Sci(s.res),
                    seconds: s.seconds,
                })
                .collect(),
            converged: t.converged,
            validation: t.validation.as_ref().map(|v| ValidationJson {
                residual: Sci(v.residual),
                series_distance: v.series_distance.map(Sci),
            }),
        }
    }
}

/// Record of one invocation, written next to its outputs.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub flags: BTreeMap<String, String>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub seed: Option<u64>,
    pub version: String,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            flags: BTreeMap::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            seed: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn flag(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.flags.insert(name.to_string(), value.to_string());
        self
    }
}

/// Output directory plus the manifest of everything written into it.
pub struct OutDir {
    dir: PathBuf,
    pub manifest: RunManifest,
}

impl OutDir {
    pub fn create(dir: &Path, manifest: RunManifest) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        Ok(Self {
            dir: dir.to_path_buf(),
            manifest,
        })
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<(), CliError> {
        let path = self.dir.join(name);
        fs::write(&path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        self.manifest.outputs.push(path.display().to_string());
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), CliError> {
        let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
        text.push('\n');
        self.write(name, &text)
    }

    pub fn finish(self) -> Result<(), CliError> {
        let name = format!("{}.manifest.json", self.manifest.command);
        let path = self.dir.join(name);
        let mut text =
            serde_json::to_string_pretty(&self.manifest).map_err(|e| CliError::Io(e.to_string()))?;
        text.push('\n');
        fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}
