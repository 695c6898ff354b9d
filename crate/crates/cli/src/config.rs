//! The JSON run configuration and its translation into library types.
//!
//! Relative paths inside a configuration (group tables, weight tables) are
//! resolved against the directory of the configuration file.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sobolev_core::fourier::ENorm;
use sobolev_core::group::GroupSpec;
use sobolev_core::{SuiteConfig, SuiteGroup, WeightChoice};

use crate::formats::GroupTableFile;
use crate::CliError;

/// Environment variable naming the configuration used when `--config` is absent.
pub const CONFIG_ENV: &str = "SOBOLEV_CONFIG";

/// The bundled default configuration.
pub const DEFAULT_CONFIG: &str = include_str!("../configs/default.json");

/// An exponent in `[1, inf]`, written as a number or `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Exponent(pub f64);

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            f.write_str("inf")
        } else {
            f.write_str(&crate::output::fmt_f64(self.0))
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(self.0)
        } else {
            s.serialize_str("inf")
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(p) => Ok(Exponent(p)),
            Raw::Text(t) if matches!(t.as_str(), "inf" | "infinity" | "Infinity") => {
                Ok(Exponent(f64::INFINITY))
            }
            Raw::Text(t) => Err(serde::de::Error::custom(format!(
                "expected a number or \"inf\", found \"{t}\""
            ))),
        }
    }
}

/// Output formats for tables and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Both,
}

impl Format {
    pub fn json(self) -> bool {
        matches!(self, Format::Json | Format::Both)
    }

    pub fn csv(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }
}

/// Where a finite group's tables come from.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum TableSource {
    Path(PathBuf),
    Inline(GroupTableFile),
}

/// `"canonical"`, `"zero"`, a path to a `{label: value}` file, or an inline table.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum WeightsEntry {
    Named(String),
    Table(BTreeMap<String, f64>),
}

impl Default for WeightsEntry {
    fn default() -> Self {
        WeightsEntry::Named("canonical".into())
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupEntry {
    pub kind: String,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub band: Option<f64>,
    #[serde(default)]
    pub half_integers: bool,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub table: Option<TableSource>,
    #[serde(default)]
    pub weights: WeightsEntry,
}

fn default_m() -> usize {
    3
}
fn default_p_e() -> Exponent {
    Exponent(2.0)
}
fn default_s_grid() -> Vec<f64> {
    vec![0.0, 0.5, 1.0, 2.0]
}
fn default_st_pairs() -> Vec<(f64, f64)> {
    vec![(1.0, 2.0), (1.0, 3.0), (0.5, 2.0)]
}
fn default_p_grid() -> Vec<Exponent> {
    vec![
        Exponent(1.0),
        Exponent(1.5),
        Exponent(2.0),
        Exponent(f64::INFINITY),
    ]
}
fn default_batch() -> usize {
    200
}
fn default_seed() -> u64 {
    SuiteConfig::default().seed
}
fn default_extra() -> usize {
    SuiteConfig::default().extra_samples
}

/// A run configuration as read from JSON. Missing fields take the defaults
/// of the bundled configuration.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub groups: Vec<GroupEntry>,
    #[serde(default = "default_m")]
    pub m: usize,
    #[serde(rename = "p_E", default = "default_p_e")]
    pub p_e: Exponent,
    #[serde(default = "default_s_grid")]
    pub s_grid: Vec<f64>,
    #[serde(default = "default_st_pairs")]
    pub st_pairs: Vec<(f64, f64)>,
    #[serde(default = "default_p_grid")]
    pub p_grid: Vec<Exponent>,
    #[serde(default = "default_batch")]
    pub batch_size: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_extra")]
    pub extra_samples: usize,
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<Format>,
    /// Directory that relative paths are resolved against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl RunConfig {
    /// Parses a configuration document.
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self, CliError> {
        let mut config: RunConfig = serde_json::from_str(text)
            .map_err(|e| CliError::Config(format!("configuration: {e}")))?;
        config.base_dir = base_dir.to_path_buf();
        config.validate()?;
        Ok(config)
    }

    /// The bundled default configuration.
    pub fn bundled() -> Self {
        Self::parse(DEFAULT_CONFIG, Path::new(".")).expect("bundled configuration is valid")
    }

    /// Reads `path`, or returns the bundled default. (The command line fills
    /// `path` from [`CONFIG_ENV`] when `--config` is absent.)
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Ok(Self::bundled()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Config(format!("cannot read {}: {e}", p.display())))?;
                let base = p.parent().map(Path::to_path_buf).unwrap_or_default();
                Self::parse(&text, &base)
            }
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if self.m == 0 {
            return bad("m must be at least 1".into());
        }
        if self.batch_size == 0 {
            return bad("batch_size must be at least 1".into());
        }
        if !(self.p_e.0 >= 1.0) {
            return bad(format!("p_E = {} must be >= 1", self.p_e));
        }
        for p in &self.p_grid {
            if !(p.0 >= 1.0) {
                return bad(format!("p_grid: p = {p} must be >= 1"));
            }
        }
        for &s in &self.s_grid {
            if !(s.is_finite() && s >= 0.0) {
                return bad(format!("s_grid: s = {s} must be finite and >= 0"));
            }
        }
        for &(s, t) in &self.st_pairs {
            if !(s.is_finite() && t.is_finite() && s > 0.0 && t > s) {
                return bad(format!("st_pairs: ({s}, {t}) must satisfy t > s > 0"));
            }
        }
        for (i, g) in self.groups.iter().enumerate() {
            self.group_spec(i, g)?;
        }
        Ok(())
    }

    fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    fn group_spec(&self, i: usize, g: &GroupEntry) -> Result<GroupSpec, CliError> {
        let err = |msg: &str| CliError::Config(format!("groups[{i}] ({}): {msg}", g.kind));
        let unused = |present: bool, field: &str| {
            if present {
                Err(err(&format!("field `{field}` does not apply to this kind")))
            } else {
                Ok(())
            }
        };
        match g.kind.as_str() {
            "cyclic" => {
                unused(g.band.is_some(), "band")?;
                unused(g.table.is_some(), "table")?;
                let n = g.n.ok_or_else(|| err("missing `n` (group order)"))?;
                Ok(GroupSpec::Cyclic { n })
            }
            "s3" => {
                unused(g.n.is_some(), "n")?;
                unused(g.band.is_some(), "band")?;
                Ok(GroupSpec::S3)
            }
            "circle" => {
                unused(g.n.is_some(), "n")?;
                let band = g.band.ok_or_else(|| err("missing `band` (largest |n|)"))?;
                if band.fract() != 0.0 || band < 0.0 {
                    return Err(err(&format!("band = {band} must be a nonnegative integer")));
                }
                Ok(GroupSpec::Circle { band: band as i64 })
            }
            "su2" => {
                unused(g.n.is_some(), "n")?;
                let band = g
                    .band
                    .ok_or_else(|| err("missing `band` (largest spin L)"))?;
                Ok(GroupSpec::Su2 {
                    band,
                    half_integers: g.half_integers,
                })
            }
            "finite" => {
                let name = g.name.clone().ok_or_else(|| err("missing `name`"))?;
                let table = match g.table.as_ref().ok_or_else(|| err("missing `table`"))? {
                    TableSource::Inline(t) => t.clone(),
                    TableSource::Path(p) => GroupTableFile::read(&self.resolve(p))?,
                };
                let table = table.into_table().map_err(|e| err(&e.to_string()))?;
                Ok(GroupSpec::Finite { name, table })
            }
            other => Err(err(&format!(
                "unknown kind `{other}`; expected cyclic, s3, circle, su2 or finite"
            ))),
        }
    }

    fn weight_choice(&self, w: &WeightsEntry) -> Result<WeightChoice, CliError> {
        let table = |t: &BTreeMap<String, f64>| {
            WeightChoice::Table(t.iter().map(|(k, v)| (k.clone(), *v)).collect())
        };
        match w {
            WeightsEntry::Named(n) if n == "canonical" => Ok(WeightChoice::Canonical),
            WeightsEntry::Named(n) if n == "zero" => Ok(WeightChoice::Zero),
            WeightsEntry::Named(path) => {
                let path = self.resolve(Path::new(path));
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    CliError::Config(format!(
                        "weights `{}`: not \"canonical\"/\"zero\" and not readable: {e}",
                        path.display()
                    ))
                })?;
                let t: BTreeMap<String, f64> = serde_json::from_str(&text)
                    .map_err(|e| CliError::Config(format!("weights {}: {e}", path.display())))?;
                Ok(table(&t))
            }
            WeightsEntry::Table(t) => Ok(table(t)),
        }
    }

    /// The suite groups, in configuration order.
    pub fn suite_groups(&self) -> Result<Vec<SuiteGroup>, CliError> {
        self.groups
            .iter()
            .enumerate()
            .map(|(i, g)| {
                Ok(SuiteGroup {
                    spec: self.group_spec(i, g)?,
                    weights: self.weight_choice(&g.weights)?,
                })
            })
            .collect()
    }

    /// The norm on `E`.
    pub fn e_norm(&self) -> Result<ENorm, CliError> {
        ENorm::new(self.p_e.0).map_err(|e| CliError::Config(format!("p_E: {e}")))
    }

    /// The library suite configuration.
    pub fn suite(&self) -> Result<SuiteConfig, CliError> {
        Ok(SuiteConfig {
            groups: self.suite_groups()?,
            m: self.m,
            e_norm: self.e_norm()?,
            s_grid: self.s_grid.clone(),
            st_pairs: self.st_pairs.clone(),
            batch_size: self.batch_size,
            seed: self.seed,
            extra_samples: self.extra_samples,
            scale: 1.0,
            tamper_rhs_scale: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_config_matches_library_default() {
        assert_eq!(
            RunConfig::bundled().suite().unwrap(),
            SuiteConfig::default()
        );
    }

    #[test]
    fn empty_document_takes_defaults() {
        let c = RunConfig::parse("{}", Path::new(".")).unwrap();
        assert!(c.groups.is_empty());
        assert_eq!(c.m, 3);
        assert_eq!(c.p_grid.last().unwrap().0, f64::INFINITY);
    }

    #[test]
    fn validation_messages_name_the_field() {
        let cases = [
            (r#"{"st_pairs": [[2, 1]]}"#, "st_pairs"),
            (r#"{"batch_size": 0}"#, "batch_size"),
            (r#"{"groups": [{"kind": "cyclic"}]}"#, "missing `n`"),
            (r#"{"groups": [{"kind": "torus"}]}"#, "unknown kind"),
            (r#"{"groups": [{"kind": "s3", "band": 2}]}"#, "`band`"),
            (r#"{"p_E": "huge"}"#, "inf"),
            (r#"{"bogus": 1}"#, "bogus"),
        ];
        for (text, needle) in cases {
            match RunConfig::parse(text, Path::new(".")) {
                Err(CliError::Config(msg)) => assert!(msg.contains(needle), "{msg}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn infinite_exponents_parse() {
        let c =
            RunConfig::parse(r#"{"p_E": "inf", "p_grid": [1, "inf"]}"#, Path::new(".")).unwrap();
        assert!(c.e_norm().unwrap().exponent().is_infinite());
        assert_eq!(c.p_grid[1].to_string(), "inf");
    }
}
