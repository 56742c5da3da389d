//! Curve files and family files.
//!
//! A curve file lists branches, each either a parametrization
//! `{"param": {"n": 2, "y": [[3, "1"]]}}` meaning `(t^2, t^3)`, or an
//! equation `{"poly": "y^2 - x^3"}`. A family file describes random pairs
//! for the `experiment` command. Both carry `"version": "1"`.

use serde::Deserialize;

use curvelab_core::branch::{BranchInput, Parametrization};
use curvelab_core::exactalg::{BivarPoly, Rat};

use crate::error::CliError;
use crate::polyparse::{parse_poly, parse_rational};

pub const INPUT_VERSION: &str = "1";

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub version: String,
    pub branches: Vec<BranchEntry>,
    #[serde(default)]
    pub options: FileOptions,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum BranchEntry {
    Param(ParamEntry),
    Poly(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamEntry {
    pub n: u32,
    pub y: Vec<(u32, Coefficient)>,
}

/// A coefficient written as a JSON integer or as a `"p/q"` string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Int(i64),
    Text(String),
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Switch {
    On,
    Off,
}

impl Switch {
    pub fn is_on(self) -> bool {
        self == Switch::On
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileOptions {
    pub truncation_cap: Option<u32>,
    pub modular_primes: Option<[u64; 2]>,
    pub oracle: Option<Switch>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub version: String,
    /// Generators `β̄_0..β̄_g` of the semigroup of the class.
    pub semigroup: Vec<u32>,
    /// Target intersection multiplicities for random pairs.
    #[serde(default)]
    pub intersections: Vec<u32>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Explicit pairs, each as two equations.
    #[serde(default)]
    pub pairs: Vec<[String; 2]>,
    #[serde(default)]
    pub options: FileOptions,
}

fn default_samples() -> usize {
    5
}

/// 1-based line and column of byte offset `at` in `text`.
fn line_col(text: &str, at: usize) -> (usize, usize) {
    let before = &text[..at.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn json_error(path: &str, e: serde_json::Error) -> CliError {
    CliError::Parse { path: path.into(), line: e.line(), column: e.column(), message: e.to_string() }
}

/// Resolves positions inside JSON string values back to the file.
struct Locator<'a> {
    path: &'a str,
    text: &'a str,
    cursor: usize,
}

impl Locator<'_> {
    /// File position of the string value `s` (searched after the previous
    /// hit) plus a position inside it.
    fn error_in(&mut self, s: &str, line: usize, column: usize, message: String) -> CliError {
        let literal = serde_json::to_string(s).expect("strings serialize");
        let found = self.text[self.cursor..].find(&literal).map(|i| i + self.cursor);
        let (line, column) = match found {
            Some(start) if line == 1 => {
                self.cursor = start + literal.len();
                let (l, c) = line_col(self.text, start + 1);
                (l, c + column - 1)
            }
            Some(start) => {
                self.cursor = start + literal.len();
                let (l, _) = line_col(self.text, start + 1);
                (l, column)
            }
            None => (line, column),
        };
        CliError::Parse { path: self.path.into(), line, column, message }
    }

    fn parse_poly(&mut self, s: &str) -> Result<BivarPoly, CliError> {
        parse_poly(s).map_err(|e| self.error_in(s, e.line, e.column, e.message))
    }

    fn parse_rat(&mut self, s: &str) -> Result<Rat, CliError> {
        parse_rational(s).ok_or_else(|| self.error_in(s, 1, 1, format!("'{s}' is not a rational number")))
    }
}

fn check_version(path: &str, v: &str) -> Result<(), CliError> {
    if v == INPUT_VERSION {
        Ok(())
    } else {
        Err(CliError::Invalid(format!("{path}: unsupported input version \"{v}\" (expected \"{INPUT_VERSION}\")")))
    }
}

/// A parsed curve file.
#[derive(Clone, Debug)]
pub struct CurveInput {
    pub branches: Vec<BranchInput>,
    pub options: FileOptions,
}

pub fn parse_curve(path: &str, text: &str) -> Result<CurveInput, CliError> {
    let file: SpecFile = serde_json::from_str(text).map_err(|e| json_error(path, e))?;
    check_version(path, &file.version)?;
    if file.branches.is_empty() {
        return Err(CliError::Invalid(format!("{path}: at least one branch is required")));
    }
    let mut loc = Locator { path, text, cursor: 0 };
    let mut branches = Vec::with_capacity(file.branches.len());
    for (k, entry) in file.branches.iter().enumerate() {
        branches.push(match entry {
            BranchEntry::Poly(s) => BranchInput::Equation(loc.parse_poly(s)?),
            BranchEntry::Param(p) => {
                let mut terms = Vec::with_capacity(p.y.len());
                for (j, c) in &p.y {
                    let c = match c {
                        Coefficient::Int(v) => Rat::from_integer((*v).into()),
                        Coefficient::Text(s) => loc.parse_rat(s)?,
                    };
                    terms.push((*j, c));
                }
                let param = Parametrization::puiseux(p.n, &terms)
                    .map_err(|e| CliError::Invalid(format!("{path}: branch {}: {e}", k + 1)))?;
                BranchInput::Param(param)
            }
        });
    }
    Ok(CurveInput { branches, options: file.options })
}

/// A parsed family file with its explicit pairs as equations.
#[derive(Clone, Debug)]
pub struct FamilyInput {
    pub semigroup: Vec<u32>,
    pub intersections: Vec<u32>,
    pub samples: usize,
    pub pairs: Vec<[BivarPoly; 2]>,
    pub options: FileOptions,
}

pub fn parse_family(path: &str, text: &str) -> Result<FamilyInput, CliError> {
    let file: FamilyFile = serde_json::from_str(text).map_err(|e| json_error(path, e))?;
    check_version(path, &file.version)?;
    if file.intersections.is_empty() && file.pairs.is_empty() {
        return Err(CliError::Invalid(format!("{path}: give target intersections, explicit pairs, or both")));
    }
    let mut loc = Locator { path, text, cursor: 0 };
    let mut pairs = Vec::with_capacity(file.pairs.len());
    for [a, b] in &file.pairs {
        pairs.push([loc.parse_poly(a)?, loc.parse_poly(b)?]);
    }
    Ok(FamilyInput {
        semigroup: file.semigroup,
        intersections: file.intersections,
        samples: file.samples,
        pairs,
        options: file.options,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_file_round_trip() {
        let text =
            r#"{"version": "1", "branches": [{"param": {"n": 2, "y": [[3, "1"], [4, 1]]}}, {"poly": "y^2 - x^3"}]}"#;
        let c = parse_curve("c.json", text).unwrap();
        assert_eq!(c.branches.len(), 2);
        assert!(matches!(c.branches[1], BranchInput::Equation(_)));
    }

    #[test]
    fn polynomial_errors_point_into_the_file() {
        let text = "{\n  \"version\": \"1\",\n  \"branches\": [\n    {\"poly\": \"y^2 - x^3 +\"}\n  ]\n}\n";
        match parse_curve("c.json", text).unwrap_err() {
            CliError::Parse { line, column, .. } => assert_eq!((line, column), (4, 26)),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn json_errors_have_positions() {
        let text = "{\n  \"version\": \"1\",\n  \"branches\": [\n    {\"poly\": }\n  ]\n}\n";
        match parse_curve("c.json", text).unwrap_err() {
            CliError::Parse { line, .. } => assert_eq!(line, 4),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn version_and_shape_are_checked() {
        assert!(parse_curve("c", r#"{"version": "2", "branches": [{"poly": "y"}]}"#).is_err());
        assert!(parse_curve("c", r#"{"version": "1", "branches": []}"#).is_err());
        assert!(parse_curve("c", r#"{"version": "1", "branches": [{"param": {"n": 2, "y": [[3, "1/0"]]}}]}"#).is_err());
        assert!(parse_curve("c", r#"{"version": "1", "branches": [{"poly": "y"}], "extra": 1}"#).is_err());
    }
}
