//! Instance persistence: an `SPC1` graph plus a `key=value` sidecar.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::linear::{spc1, IndexSet};

use super::{generate, validate, AdversaryStrategy, Instance, InstanceParams};

/// `<stem>.spc1` holds the graph, `<stem>.meta` the ground truth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstancePaths {
    pub graph: PathBuf,
    pub meta: PathBuf,
}

impl InstancePaths {
    pub fn from_stem(stem: impl AsRef<Path>) -> Self {
        let stem = stem.as_ref().as_os_str().to_owned();
        let with = |ext: &str| {
            let mut s = stem.clone();
            s.push(ext);
            PathBuf::from(s)
        };
        InstancePaths {
            graph: with(".spc1"),
            meta: with(".meta"),
        }
    }
}

pub fn save(i: &Instance, stem: impl AsRef<Path>) -> Result<InstancePaths> {
    let paths = InstancePaths::from_stem(stem);
    spc1::write(i.graph(), &paths.graph)?;
    let p = i.params();
    let meta = format!(
        "n={}\nk={}\nseed={}\nadversary={}\nplanted={}\n",
        p.n,
        p.k,
        p.seed,
        p.adversary,
        i.planted()
    );
    fs::write(&paths.meta, meta).map_err(|e| Error::io(&paths.meta, e))?;
    Ok(paths)
}

/// Loads and validates an instance.
///
/// The adversary trace is not stored on disk; it is recovered by
/// regenerating from the sidecar parameters and kept only if the
/// regenerated graph is identical to the loaded one.
pub fn load(stem: impl AsRef<Path>) -> Result<Instance> {
    let paths = InstancePaths::from_stem(stem);
    let graph = spc1::read(&paths.graph)?;
    let text = fs::read_to_string(&paths.meta).map_err(|e| Error::io(&paths.meta, e))?;

    let mut fields = std::collections::HashMap::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Format(format!("sidecar line {line:?} is not key=value")))?;
        fields.insert(key.trim().to_string(), value.trim().to_string());
    }
    let get = |key: &str| {
        fields
            .get(key)
            .ok_or_else(|| Error::Format(format!("sidecar is missing {key:?}")))
    };
    let num = |key: &str| -> Result<u64> {
        get(key)?
            .parse::<u64>()
            .map_err(|_| Error::Format(format!("sidecar field {key:?} is not an integer")))
    };
    let n = num("n")? as usize;
    let k = num("k")? as usize;
    let seed = num("seed")?;
    let adversary: AdversaryStrategy = get("adversary")?
        .parse()
        .map_err(|e: Error| Error::Format(e.to_string()))?;
    let planted = IndexSet::parse(get("planted")?, n)?;
    let params = InstanceParams::new(n, k, seed, adversary);

    let loaded = Instance::from_parts(graph, planted, params);
    let violations = validate(&loaded);
    if !violations.is_empty() {
        return Err(Error::Validation(violations));
    }
    match generate(loaded.params()) {
        Ok(regen) if regen.graph() == loaded.graph() && regen.planted() == loaded.planted() => Ok(regen),
        _ => Ok(loaded),
    }
}
