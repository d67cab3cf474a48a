//! Flat `[section]` / `key = value` config files.
//!
//! `#` starts a comment. Keys are unique inside a section and sections may
//! not repeat. Values are read lazily by the typed getters, which report the
//! line the value came from.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },

    #[error("line {line}: duplicate section [{section}]")]
    DuplicateSection { line: usize, section: String },

    #[error("missing section [{0}]")]
    MissingSection(String),

    #[error("[{section}]: missing key `{key}`")]
    MissingKey { section: String, key: String },

    #[error("line {line}: unknown key `{key}` in [{section}]")]
    UnknownKey {
        line: usize,
        section: String,
        key: String,
    },

    #[error("line {line}: `{key}`: {msg}")]
    Value {
        line: usize,
        key: String,
        msg: String,
    },
}

pub type ConfigResult<T> = std::result::Result<T, ConfigError>;

#[derive(Debug, Clone, PartialEq)]
struct Entry {
    value: String,
    line: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    name: String,
    entries: BTreeMap<String, Entry>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Config {
    sections: BTreeMap<String, Section>,
}

impl Config {
    pub fn parse(text: &str) -> ConfigResult<Self> {
        let mut sections: BTreeMap<String, Section> = BTreeMap::new();
        let mut current: Option<String> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .ok_or_else(|| ConfigError::Syntax {
                        line,
                        msg: "unterminated section header".into(),
                    })?
                    .trim();
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(ConfigError::Syntax {
                        line,
                        msg: format!("bad section name `{name}`"),
                    });
                }
                if sections.contains_key(name) {
                    return Err(ConfigError::DuplicateSection {
                        line,
                        section: name.into(),
                    });
                }
                sections.insert(
                    name.into(),
                    Section {
                        name: name.into(),
                        entries: BTreeMap::new(),
                    },
                );
                current = Some(name.into());
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line,
                msg: format!("expected `key = value`, found `{content}`"),
            })?;
            let key = key.trim();
            if key.is_empty() || key.contains(char::is_whitespace) {
                return Err(ConfigError::Syntax {
                    line,
                    msg: format!("bad key `{key}`"),
                });
            }
            let section = current
                .as_ref()
                .and_then(|s| sections.get_mut(s))
                .ok_or_else(|| ConfigError::Syntax {
                    line,
                    msg: "key outside of any [section]".into(),
                })?;
            if section.entries.contains_key(key) {
                return Err(ConfigError::DuplicateKey {
                    line,
                    key: key.into(),
                });
            }
            section.entries.insert(
                key.into(),
                Entry {
                    value: value.trim().into(),
                    line,
                },
            );
        }
        Ok(Config { sections })
    }

    pub fn section(&self, name: &str) -> ConfigResult<&Section> {
        self.sections
            .get(name)
            .ok_or_else(|| ConfigError::MissingSection(name.into()))
    }
}

impl Section {
    /// Key/value pairs in key order.
    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, e)| (k.as_str(), e.value.as_str()))
    }

    /// Rejects keys outside `allowed`.
    pub fn expect_keys(&self, allowed: &[&str]) -> ConfigResult<()> {
        match self
            .entries
            .iter()
            .filter(|(k, _)| !allowed.contains(&k.as_str()))
            .min_by_key(|(_, e)| e.line)
        {
            Some((k, e)) => Err(ConfigError::UnknownKey {
                line: e.line,
                section: self.name.clone(),
                key: k.clone(),
            }),
            None => Ok(()),
        }
    }

    fn entry(&self, key: &str) -> ConfigResult<&Entry> {
        self.entries.get(key).ok_or_else(|| ConfigError::MissingKey {
            section: self.name.clone(),
            key: key.into(),
        })
    }

    pub fn has(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    /// Line a key was defined on.
    pub fn line(&self, key: &str) -> Option<usize> {
        self.entries.get(key).map(|e| e.line)
    }

    pub fn value_error(&self, key: &str, msg: impl Into<String>) -> ConfigError {
        ConfigError::Value {
            line: self.line(key).unwrap_or(0),
            key: key.into(),
            msg: msg.into(),
        }
    }

    pub fn str(&self, key: &str) -> ConfigResult<&str> {
        let e = self.entry(key)?;
        if e.value.is_empty() {
            return Err(self.value_error(key, "empty value"));
        }
        Ok(&e.value)
    }

    pub fn str_or<'a>(&'a self, key: &str, default: &'a str) -> ConfigResult<&'a str> {
        if self.has(key) {
            self.str(key)
        } else {
            Ok(default)
        }
    }

    pub fn f64(&self, key: &str) -> ConfigResult<f64> {
        parse_number(self.str(key)?).map_err(|msg| self.value_error(key, msg))
    }

    pub fn f64_or(&self, key: &str, default: f64) -> ConfigResult<f64> {
        if self.has(key) {
            self.f64(key)
        } else {
            Ok(default)
        }
    }

    pub fn usize(&self, key: &str) -> ConfigResult<usize> {
        parse_count(self.str(key)?).map_err(|msg| self.value_error(key, msg))
    }

    pub fn usize_or(&self, key: &str, default: usize) -> ConfigResult<usize> {
        if self.has(key) {
            self.usize(key)
        } else {
            Ok(default)
        }
    }

    /// Comma-separated list; empty lists are rejected.
    pub fn list(&self, key: &str) -> ConfigResult<Vec<&str>> {
        let e = self.entry(key)?;
        let items: Vec<&str> = e.value.split(',').map(str::trim).collect();
        if e.value.trim().is_empty() {
            return Err(self.value_error(key, "empty list"));
        }
        if items.iter().any(|s| s.is_empty()) {
            return Err(self.value_error(key, "empty list item"));
        }
        Ok(items)
    }

    pub fn f64_list(&self, key: &str) -> ConfigResult<Vec<f64>> {
        self.list(key)?
            .into_iter()
            .map(|s| parse_number(s).map_err(|msg| self.value_error(key, msg)))
            .collect()
    }

    pub fn usize_list(&self, key: &str) -> ConfigResult<Vec<usize>> {
        self.list(key)?
            .into_iter()
            .map(|s| parse_count(s).map_err(|msg| self.value_error(key, msg)))
            .collect()
    }

    /// `MxN` pairs, e.g. `10x10, 20x20`.
    pub fn ladder(&self, key: &str) -> ConfigResult<Vec<(usize, usize)>> {
        self.list(key)?
            .into_iter()
            .map(|s| {
                let (m, n) = s
                    .split_once(['x', 'X'])
                    .ok_or_else(|| self.value_error(key, format!("`{s}` is not an MxN pair")))?;
                let m = parse_count(m.trim()).map_err(|msg| self.value_error(key, msg))?;
                let n = parse_count(n.trim()).map_err(|msg| self.value_error(key, msg))?;
                Ok((m, n))
            })
            .collect()
    }
}

/// A float, or a fraction `a/b` such as `1/20`.
pub fn parse_number(s: &str) -> Result<f64, String> {
    let value = match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
            let d: f64 = d.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
            if d == 0.0 {
                return Err(format!("`{s}` divides by zero"));
            }
            n / d
        }
        None => s.parse().map_err(|_| format!("`{s}` is not a number"))?,
    };
    if !value.is_finite() {
        return Err(format!("`{s}` is not finite"));
    }
    Ok(value)
}

fn parse_count(s: &str) -> Result<usize, String> {
    s.parse()
        .map_err(|_| format!("`{s}` is not a nonnegative integer"))
}
