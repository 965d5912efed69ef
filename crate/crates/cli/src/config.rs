//! Resolution order: command-line flag, then config file, then default.

use std::path::{Path, PathBuf};

use anyhow::Context;
use gsws::model::{DEFAULT_HBARC, DEFAULT_MC2};
use gsws::{Matching, PotentialParams};
use serde::{Deserialize, Serialize};

use crate::args::{CommonArgs, Format, MatchingArg};

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub v0: Option<f64>,
    pub w0: Option<f64>,
    pub a: Option<f64>,
    #[serde(rename = "L")]
    pub l: Option<f64>,
    pub mass: Option<f64>,
    pub hbarc: Option<f64>,
    pub format: Option<Format>,
    pub matching: Option<MatchingArg>,
}

impl FileConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

/// Fully resolved settings of one run; echoed in every output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub params: PotentialParams,
    pub matching: Matching,
    #[serde(skip)]
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub options: serde_json::Value,
}

/// Defaults: V0 = 100 MeV, W0 = 250 MeV, a = 1 fm⁻¹, L = 6 fm with the
/// standard particle constants.
pub fn resolve(command: &str, flags: &CommonArgs, file: Option<&FileConfig>, options: serde_json::Value) -> anyhow::Result<RunConfig> {
    let file = file.cloned().unwrap_or_default();
    let pick = |flag: Option<f64>, from_file: Option<f64>, default: f64| flag.or(from_file).unwrap_or(default);
    let reference = PotentialParams::reference();
    let params = PotentialParams::with_constants(
        pick(flags.v0, file.v0, reference.v0),
        pick(flags.w0, file.w0, reference.w0),
        pick(flags.a, file.a, reference.a),
        pick(flags.l, file.l, reference.l),
        pick(flags.mass, file.mass, DEFAULT_MC2),
        pick(flags.hbarc, file.hbarc, DEFAULT_HBARC),
    )?;
    Ok(RunConfig {
        command: command.to_string(),
        params,
        matching: flags.matching.or(file.matching).unwrap_or_default().into(),
        format: flags.format.or(file.format).unwrap_or_default(),
        out: flags.out.clone(),
        options,
    })
}

impl RunConfig {
    pub fn method(&self) -> gsws::Method {
        gsws::Method {
            matching: self.matching,
            ..Default::default()
        }
    }

    /// `key=value` pairs for the CSV comment header.
    pub fn header(&self) -> Vec<(String, String)> {
        let p = &self.params;
        let matching = match self.matching {
            Matching::Asymptotic => "asymptotic",
            Matching::Exact => "exact",
        };
        let mut h = vec![
            ("command".to_string(), self.command.clone()),
            ("V0_MeV".into(), p.v0.to_string()),
            ("W0_MeV".into(), p.w0.to_string()),
            ("a_fm-1".into(), p.a.to_string()),
            ("L_fm".into(), p.l.to_string()),
            ("mc2_MeV".into(), p.mc2.to_string()),
            ("hbarc_MeV_fm".into(), p.hbarc.to_string()),
            ("matching".into(), matching.to_string()),
        ];
        if let serde_json::Value::Object(map) = &self.options {
            for (k, v) in map {
                let v = match v {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                h.push((k.clone(), v));
            }
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let file = FileConfig {
            v0: Some(80.0),
            w0: Some(300.0),
            matching: Some(MatchingArg::Exact),
            ..Default::default()
        };
        let flags = CommonArgs {
            v0: Some(90.0),
            ..Default::default()
        };
        let c = resolve("bound", &flags, Some(&file), serde_json::json!({})).unwrap();
        assert_eq!(c.params.v0, 90.0);
        assert_eq!(c.params.w0, 300.0);
        assert_eq!(c.params.a, 1.0);
        assert_eq!(c.params.mc2, DEFAULT_MC2);
        assert_eq!(c.matching, Matching::Exact);
        assert_eq!(c.format, Format::Csv);
    }

    #[test]
    fn unknown_file_keys_are_rejected() {
        assert!(toml::from_str::<FileConfig>("v0 = 1.0\nbogus = 2").is_err());
        let f: FileConfig = toml::from_str("L = 5.5\nformat = \"json\"").unwrap();
        assert_eq!(f.l, Some(5.5));
        assert_eq!(f.format, Some(Format::Json));
    }
}
