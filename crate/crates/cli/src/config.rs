//! Run configuration: defaults, then a `key=value` file, then flags.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use clap::ValueEnum;
use degen::genus2::Orders;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub eps_order: u32,
    pub q_order: usize,
    pub max_weight: u32,
    pub matrix_size: Option<usize>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        let o = Orders::default();
        RunConfig {
            eps_order: o.eps_trunc,
            q_order: o.q_trunc,
            max_weight: o.max_weight,
            matrix_size: None,
            format: Format::Table,
        }
    }
}

/// Values given on the command line; `None` defers to the file or default.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub eps_order: Option<u32>,
    pub q_order: Option<usize>,
    pub max_weight: Option<u32>,
    pub matrix_size: Option<usize>,
    pub format: Option<Format>,
}

fn parse_file(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", i + 1))?;
        let key = k.trim().replace('_', "-");
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, String> {
    v.parse().map_err(|_| format!("config key {key}: cannot parse {v:?}"))
}

impl RunConfig {
    pub fn resolve(file: Option<&Path>, flags: &Overrides) -> Result<RunConfig, String> {
        let mut cfg = RunConfig::default();
        if let Some(path) = file {
            let text = fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
            for (k, v) in parse_file(&text)? {
                match k.as_str() {
                    "eps-order" => cfg.eps_order = num(&k, &v)?,
                    "q-order" => cfg.q_order = num(&k, &v)?,
                    "max-weight" => cfg.max_weight = num(&k, &v)?,
                    "matrix-size" => cfg.matrix_size = Some(num(&k, &v)?),
                    "format" => cfg.format = Format::from_str(&v, true).map_err(|e| format!("config key format: {e}"))?,
                    other => return Err(format!("unknown config key {other:?}")),
                }
            }
        }
        if let Some(v) = flags.eps_order {
            cfg.eps_order = v;
        }
        if let Some(v) = flags.q_order {
            cfg.q_order = v;
        }
        if let Some(v) = flags.max_weight {
            cfg.max_weight = v;
        }
        if flags.matrix_size.is_some() {
            cfg.matrix_size = flags.matrix_size;
        }
        if let Some(v) = flags.format {
            cfg.format = v;
        }
        if let Some(n) = cfg.matrix_size {
            if n < cfg.eps_order as usize {
                return Err(format!("matrix size {n} must be at least the eps order {}", cfg.eps_order));
            }
        }
        Ok(cfg)
    }

    pub fn orders(&self) -> Orders {
        Orders {
            eps_trunc: self.eps_order,
            q_trunc: self.q_order,
            max_weight: self.max_weight,
            matrix_size: self.matrix_size,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let dir = std::env::temp_dir().join(format!("degen-cfg-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.cfg");
        fs::write(&path, "# orders\neps-order = 6\nq_order=4\nformat=json\n").unwrap();
        let flags = Overrides {
            q_order: Some(5),
            ..Overrides::default()
        };
        let cfg = RunConfig::resolve(Some(&path), &flags).unwrap();
        assert_eq!((cfg.eps_order, cfg.q_order, cfg.max_weight, cfg.format), (6, 5, 8, Format::Json));
        fs::write(&path, "colour=red\n").unwrap();
        assert!(RunConfig::resolve(Some(&path), &Overrides::default()).is_err());
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn small_matrix_is_rejected() {
        let flags = Overrides {
            matrix_size: Some(3),
            ..Overrides::default()
        };
        assert!(RunConfig::resolve(None, &flags).is_err());
    }
}
