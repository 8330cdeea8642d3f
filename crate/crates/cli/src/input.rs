//! Algebra files, J matrix files and command-line hint parsing.
//!
//! An algebra file is JSON:
//!
//! ```json
//! {
//!   "name": "so3",
//!   "dim": 3,
//!   "brackets": [{"i": 1, "j": 2, "coeffs": {"3": "-1"}}],
//!   "torus": [1],
//!   "regular_element": ["1", "0", "0"]
//! }
//! ```
//!
//! Indices are 1-based, only `i < j` entries are listed, and scalars are
//! rational strings (`"-1"`, `"1/2"`). Torus entries are basis indices or
//! coordinate vectors.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use samelson_core::algebra::BracketEntry;
use samelson_core::scalar::{format_rational, int, parse_rational, Rational};
use samelson_core::{Element, LieAlgebra, Matrix};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// A rational written as a string, or as a bare JSON integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Text(String),
    Integer(i64),
}

impl Scalar {
    fn parse(&self, context: &str) -> Result<Rational, CliError> {
        match self {
            Self::Integer(n) => Ok(int(*n)),
            Self::Text(s) => parse_rational(s).map_err(|e| CliError::Parse(format!("{context}: {e}"))),
        }
    }
}

impl From<&Rational> for Scalar {
    fn from(q: &Rational) -> Self {
        Self::Text(format_rational(q))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<String, Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TorusHint {
    Index(usize),
    Coords(Vec<Scalar>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub brackets: Vec<BracketSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<Vec<TorusHint>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regular_element: Option<Vec<Scalar>>,
}

/// A parsed algebra plus the optional hints carried by its file.
#[derive(Clone, Debug, PartialEq)]
pub struct LoadedAlgebra {
    pub algebra: LieAlgebra,
    pub torus: Option<Vec<Element>>,
    pub regular: Option<Element>,
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid algebra file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Inverse of [`AlgebraFile::load`].
    pub fn emit(g: &LieAlgebra, torus: Option<&[Element]>, regular: Option<&Element>) -> Self {
        let brackets = g
            .nonzero_brackets()
            .map(|(i, j, b)| BracketSpec {
                i: i + 1,
                j: j + 1,
                coeffs: b.iter().map(|(k, c)| ((k + 1).to_string(), Scalar::from(c))).collect(),
            })
            .collect();
        let coords = |x: &Element| x.coords().iter().map(Scalar::from).collect::<Vec<_>>();
        Self {
            name: g.name().to_string(),
            dim: g.dim(),
            brackets,
            torus: torus.map(|t| t.iter().map(|h| TorusHint::Coords(coords(h))).collect()),
            regular_element: regular.map(coords),
        }
    }

    pub fn load(&self) -> Result<LoadedAlgebra, CliError> {
        let n = self.dim;
        if n == 0 {
            return Err(CliError::Parse("dim: must be at least 1".into()));
        }
        let mut seen = BTreeSet::new();
        let mut entries: Vec<BracketEntry> = Vec::with_capacity(self.brackets.len());
        for (idx, b) in self.brackets.iter().enumerate() {
            let ctx = format!("brackets[{idx}]");
            for (field, v) in [("i", b.i), ("j", b.j)] {
                if v == 0 || v > n {
                    return Err(CliError::Parse(format!("{ctx}.{field}: index {v} out of range 1..{n}")));
                }
            }
            if b.i >= b.j {
                return Err(CliError::Parse(format!(
                    "{ctx}: entries must have i < j, found i = {}, j = {}",
                    b.i, b.j
                )));
            }
            if !seen.insert((b.i, b.j)) {
                return Err(CliError::Parse(format!("{ctx}: duplicate entry for ({}, {})", b.i, b.j)));
            }
            let mut coeffs = Vec::with_capacity(b.coeffs.len());
            for (key, value) in &b.coeffs {
                let fctx = format!("{ctx}.coeffs[{key:?}]");
                let k: usize = key
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Parse(format!("{fctx}: basis index must be an integer")))?;
                if k == 0 || k > n {
                    return Err(CliError::Parse(format!("{fctx}: index {k} out of range 1..{n}")));
                }
                let c = value.parse(&fctx)?;
                if c != int(0) {
                    coeffs.push((k - 1, c));
                }
            }
            coeffs.sort_by_key(|(k, _)| *k);
            entries.push((b.i - 1, b.j - 1, coeffs));
        }
        let algebra = LieAlgebra::from_brackets(self.name.clone(), n, entries)
            .map_err(|e| CliError::Parse(format!("brackets: {e}")))?;
        let torus = match &self.torus {
            None => None,
            Some(hints) => Some(
                hints
                    .iter()
                    .enumerate()
                    .map(|(idx, h)| torus_element(h, n, &format!("torus[{idx}]")))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        let regular = match &self.regular_element {
            None => None,
            Some(v) => Some(Element::new(parse_scalars(v, n, "regular_element")?)),
        };
        Ok(LoadedAlgebra { algebra, torus, regular })
    }
}

fn parse_scalars(v: &[Scalar], n: usize, ctx: &str) -> Result<Vec<Rational>, CliError> {
    if v.len() != n {
        return Err(CliError::Parse(format!("{ctx}: expected {n} coordinates, found {}", v.len())));
    }
    v.iter().enumerate().map(|(i, s)| s.parse(&format!("{ctx}[{i}]"))).collect()
}

fn torus_element(h: &TorusHint, n: usize, ctx: &str) -> Result<Element, CliError> {
    match h {
        TorusHint::Index(k) if (1..=n).contains(k) => Ok(Element::basis(n, k - 1)),
        TorusHint::Index(k) => Err(CliError::Parse(format!("{ctx}: index {k} out of range 1..{n}"))),
        TorusHint::Coords(v) => Ok(Element::new(parse_scalars(v, n, ctx)?)),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

/// Reads and validates an algebra file.
pub fn parse_algebra(path: &Path) -> Result<LoadedAlgebra, CliError> {
    AlgebraFile::from_json(&read(path)?)
        .and_then(|f| f.load())
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixFile {
    Bare(Vec<Vec<Scalar>>),
    Wrapped { j_matrix: Vec<Vec<Scalar>> },
}

/// Reads a J matrix: a bare array of rows, or any object with a `j_matrix`
/// key (such as a JSON report).
pub fn parse_matrix(path: &Path) -> Result<Matrix<Rational>, CliError> {
    let text = read(path)?;
    let parsed: MatrixFile = serde_json::from_str(&text).map_err(|e| {
        CliError::Parse(format!(
            "{}: expected an array of rows or an object with \"j_matrix\": {e}",
            path.display()
        ))
    })?;
    let rows = match parsed {
        MatrixFile::Bare(r) | MatrixFile::Wrapped { j_matrix: r } => r,
    };
    let n = rows.len();
    let mut out = Vec::with_capacity(n);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(CliError::Parse(format!(
                "{}: row {} has {} entries, expected {n}",
                path.display(),
                r + 1,
                row.len()
            )));
        }
        out.push(
            row.iter()
                .enumerate()
                .map(|(c, s)| s.parse(&format!("{}: entry ({}, {})", path.display(), r + 1, c + 1)))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    if n == 0 {
        return Err(CliError::Parse(format!("{}: empty matrix", path.display())));
    }
    Ok(Matrix::from_rows(out))
}

/// `--torus` value: comma-separated 1-based indices (`1,2,3`) or a JSON list
/// of indices and coordinate vectors (`[[1,0,0],[0,1,1]]`).
pub fn parse_torus_arg(s: &str, n: usize) -> Result<Vec<Element>, CliError> {
    let hints: Vec<TorusHint> = if s.trim_start().starts_with('[') {
        serde_json::from_str(s).map_err(|e| CliError::Parse(format!("--torus: {e}")))?
    } else {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map(TorusHint::Index)
                    .map_err(|_| CliError::Parse(format!("--torus: {t:?} is not a basis index")))
            })
            .collect::<Result<_, _>>()?
    };
    if hints.is_empty() {
        return Err(CliError::Parse("--torus: empty".into()));
    }
    hints
        .iter()
        .enumerate()
        .map(|(i, h)| torus_element(h, n, &format!("--torus[{i}]")))
        .collect()
}

/// Comma-separated rationals, e.g. `2,1,3` or `1/2,-1`.
pub fn parse_rational_list(s: &str, flag: &str) -> Result<Vec<Rational>, CliError> {
    s.split(',')
        .enumerate()
        .map(|(i, t)| parse_rational(t).map_err(|e| CliError::Parse(format!("{flag}[{i}]: {e}"))))
        .collect()
}
