//! Flat `key = value` configuration files merged under command-line flags.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};

/// Keys accepted in a configuration file.
pub const KNOWN_KEYS: &[&str] = &[
    "beta",
    "cooling",
    "in",
    "init",
    "iters",
    "json",
    "n",
    "out",
    "p",
    "q",
    "r",
    "repro-dir",
    "restarts",
    "seed",
    "seeds",
    "suite",
    "t0",
];

/// Parses `key = value` lines; `#` starts a comment, blank lines are skipped.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: i + 1, msg };
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected key = value, found {line:?}")))?;
        let (k, v) = (k.trim(), v.trim());
        if !KNOWN_KEYS.contains(&k) {
            return Err(err(format!("unknown key {k:?}")));
        }
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(err(format!("duplicate key {k:?}")));
        }
    }
    Ok(out)
}

pub fn read_config(path: &Path) -> Result<BTreeMap<String, String>> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

/// Resolves each setting from its flag, then the file, then a default, and
/// remembers every resolved value for the report's config echo.
#[derive(Debug, Default)]
pub struct Resolver {
    file: BTreeMap<String, String>,
    resolved: BTreeMap<String, String>,
}

impl Resolver {
    pub fn new(file: BTreeMap<String, String>) -> Self {
        Self {
            file,
            resolved: BTreeMap::new(),
        }
    }

    /// The raw value of `key`, if set anywhere.
    pub fn raw(&mut self, key: &str, flag: Option<&str>) -> Option<String> {
        let v = flag
            .map(str::to_string)
            .or_else(|| self.file.get(key).cloned())?;
        self.resolved.insert(key.to_string(), v.clone());
        Some(v)
    }

    pub fn opt<T>(
        &mut self,
        key: &str,
        flag: Option<&str>,
        parse: impl Fn(&str) -> Result<T>,
    ) -> Result<Option<T>> {
        match self.raw(key, flag) {
            Some(v) => parse(&v)
                .map(Some)
                .map_err(|e| Error::Domain(format!("--{key}: {e}"))),
            None => Ok(None),
        }
    }

    pub fn required<T>(
        &mut self,
        key: &str,
        flag: Option<&str>,
        parse: impl Fn(&str) -> Result<T>,
    ) -> Result<T> {
        self.opt(key, flag, parse)?
            .ok_or_else(|| Error::Domain(format!("missing required setting --{key}")))
    }

    pub fn or_default<T>(
        &mut self,
        key: &str,
        flag: Option<&str>,
        default: &str,
        parse: impl Fn(&str) -> Result<T>,
    ) -> Result<T> {
        let flag = flag.or(if self.file.contains_key(key) {
            None
        } else {
            Some(default)
        });
        self.required(key, flag, parse)
    }

    pub fn echo(&self) -> &BTreeMap<String, String> {
        &self.resolved
    }
}

pub fn parse_num<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Domain(format!("invalid number {s:?}")))
}

/// Comma-separated list.
pub fn parse_list<T>(s: &str, item: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    let items: Vec<T> = s
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(item)
        .collect::<Result<_>>()?;
    if items.is_empty() {
        return Err(Error::Domain(format!("empty list {s:?}")));
    }
    Ok(items)
}
