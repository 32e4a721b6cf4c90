use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::Value;

/// Environment variable naming a JSON workspace configuration file.
pub const CONFIG_ENV: &str = "SEMIGP_CONFIG";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => bail!("unknown output format {s:?} (expected json or text)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorkspaceConfig {
    pub field: String,
    pub bound: usize,
    pub cap: usize,
    pub seed: u64,
    pub format: Format,
}

impl Default for WorkspaceConfig {
    fn default() -> Self {
        WorkspaceConfig { field: "Q".into(), bound: 6, cap: 512, seed: 0, format: Format::Json }
    }
}

impl WorkspaceConfig {
    /// Reads `{field?, bound?, cap?, seed?, format?}`; absent keys keep defaults.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("{}: cannot read config", path.display()))?;
        let v: Value = serde_json::from_str(&text).with_context(|| format!("{}: bad JSON", path.display()))?;
        let mut c = WorkspaceConfig::default();
        let obj = v.as_object().with_context(|| format!("{}: config must be an object", path.display()))?;
        for (k, val) in obj {
            let bad = || anyhow::anyhow!("{}: bad value for {k:?}", path.display());
            match k.as_str() {
                "field" => c.field = val.as_str().ok_or_else(bad)?.to_string(),
                "bound" => c.bound = val.as_u64().ok_or_else(bad)? as usize,
                "cap" => c.cap = val.as_u64().ok_or_else(bad)? as usize,
                "seed" => c.seed = val.as_u64().ok_or_else(bad)?,
                "format" => c.format = Format::parse(val.as_str().ok_or_else(bad)?)?,
                _ => bail!("{}: unknown config key {k:?}", path.display()),
            }
        }
        c.check()?;
        Ok(c)
    }

    /// The configuration named by the environment, or defaults.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => Self::from_file(Path::new(&p)),
            _ => Ok(Self::default()),
        }
    }

    pub fn check(&self) -> Result<()> {
        if self.bound < 1 {
            bail!("bound must be at least 1");
        }
        if self.cap < 1 {
            bail!("dimension cap must be at least 1");
        }
        Ok(())
    }
}
