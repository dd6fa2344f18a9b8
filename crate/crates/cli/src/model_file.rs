//! The TOML model format.
//!
//! ```toml
//! name = "heisenberg"
//! dimension = 3
//!
//! # [X_i, X_j] = Σ c X_k, 1-based, only i < j.
//! [[structure_constants]]
//! i = 1
//! j = 2
//! k = 3
//! c = 1
//!
//! [structure]
//! metric = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
//! eta = [1, 0, 0]
//! xi = [1, 0, 0]
//! J = [[0, 0, 0], [0, 0, -1], [0, 1, 0]]
//! omega = "e2*e3"
//!
//! [mapping_torus]
//! order = 4
//! matrix = [[0, -1], [1, 0]]
//! ```
//!
//! Scalars are integers or strings such as `"-1/2"`. Matrices are lists of
//! rows; `J` acts on column vectors, and the mapping-torus matrix has the
//! image of `e^c` in column `c`.

use std::fmt;
use std::path::Path;

use anyhow::{bail, Context};
use cokahler::cdga::AlgebraMap;
use cokahler::contact::LieModel as GenericLieModel;
use cokahler::scalar::parse_scalar;
use cokahler::{Element, LieModel, Matrix, Q};
use serde::{Deserialize, Serialize};

/// A rational written either as an integer or as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Int(i64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    name: String,
    dimension: usize,
    #[serde(default)]
    structure_constants: Vec<RawConstant>,
    structure: Option<RawStructure>,
    mapping_torus: Option<RawTorus>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConstant {
    i: usize,
    j: usize,
    k: usize,
    c: RawScalar,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStructure {
    metric: Option<Vec<Vec<RawScalar>>>,
    eta: Option<Vec<RawScalar>>,
    xi: Option<Vec<RawScalar>>,
    #[serde(rename = "J")]
    j: Option<Vec<Vec<RawScalar>>>,
    omega: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTorus {
    order: u32,
    matrix: Vec<Vec<RawScalar>>,
}

/// `[X_i, X_j] = c X_k` with 1-based indices and `i < j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Automorphism {
    pub order: u32,
    pub matrix: Matrix,
}

/// A validated model file.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelFile {
    pub name: String,
    pub dimension: usize,
    pub constants: Vec<Constant>,
    pub metric: Option<Matrix>,
    pub eta: Option<Vec<Q>>,
    pub xi: Option<Vec<Q>>,
    pub j: Option<Matrix>,
    pub omega: Option<String>,
    pub automorphism: Option<Automorphism>,
}

/// A field-level problem, reported with its path in the file.
#[derive(Debug)]
pub struct FieldError {
    pub field: String,
    pub message: String,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

impl std::error::Error for FieldError {}

fn field_error(field: impl Into<String>, message: impl Into<String>) -> anyhow::Error {
    FieldError { field: field.into(), message: message.into() }.into()
}

fn scalar(field: &str, raw: &RawScalar) -> anyhow::Result<Q> {
    match raw {
        RawScalar::Int(n) => Ok(Q::from_integer((*n).into())),
        RawScalar::Text(s) => {
            parse_scalar(s).ok_or_else(|| field_error(field, format!("`{s}` is not a rational number")))
        }
    }
}

fn vector(field: &str, raw: &[RawScalar], len: usize) -> anyhow::Result<Vec<Q>> {
    if raw.len() != len {
        bail!(field_error(field, format!("expected {len} entries, found {}", raw.len())));
    }
    raw.iter().enumerate().map(|(i, x)| scalar(&format!("{field}[{i}]"), x)).collect()
}

fn matrix(field: &str, raw: &[Vec<RawScalar>], n: usize) -> anyhow::Result<Matrix> {
    if raw.len() != n {
        bail!(field_error(field, format!("expected {n} rows, found {}", raw.len())));
    }
    let rows = raw
        .iter()
        .enumerate()
        .map(|(r, row)| vector(&format!("{field}[{r}]"), row, n))
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows))
}

impl ModelFile {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let raw: RawFile = toml::from_str(text)?;
        Self::validate(raw)
    }

    fn validate(raw: RawFile) -> anyhow::Result<Self> {
        let n = raw.dimension;
        if n == 0 {
            bail!(field_error("dimension", "must be positive"));
        }
        if raw.name.trim().is_empty() {
            bail!(field_error("name", "must not be empty"));
        }
        let mut constants = Vec::with_capacity(raw.structure_constants.len());
        for (idx, c) in raw.structure_constants.iter().enumerate() {
            let field = format!("structure_constants[{idx}]");
            for (key, v) in [("i", c.i), ("j", c.j), ("k", c.k)] {
                if v == 0 || v > n {
                    bail!(field_error(format!("{field}.{key}"), format!("index {v} outside 1..={n}")));
                }
            }
            if c.i >= c.j {
                bail!(field_error(&field, format!("list only i < j entries, found i = {}, j = {}", c.i, c.j)));
            }
            if constants.iter().any(|x: &Constant| (x.i, x.j, x.k) == (c.i, c.j, c.k)) {
                bail!(field_error(&field, format!("duplicate entry for ({}, {}, {})", c.i, c.j, c.k)));
            }
            constants.push(Constant { i: c.i, j: c.j, k: c.k, c: scalar(&format!("{field}.c"), &c.c)? });
        }
        let structure =
            raw.structure.unwrap_or(RawStructure { metric: None, eta: None, xi: None, j: None, omega: None });
        let metric = structure.metric.as_deref().map(|m| matrix("structure.metric", m, n)).transpose()?;
        let eta = structure.eta.as_deref().map(|v| vector("structure.eta", v, n)).transpose()?;
        let xi = structure.xi.as_deref().map(|v| vector("structure.xi", v, n)).transpose()?;
        let j = structure.j.as_deref().map(|m| matrix("structure.J", m, n)).transpose()?;
        let automorphism = raw
            .mapping_torus
            .map(|t| {
                Ok::<_, anyhow::Error>(Automorphism {
                    order: t.order,
                    matrix: matrix("mapping_torus.matrix", &t.matrix, n)?,
                })
            })
            .transpose()?;
        let file =
            Self { name: raw.name, dimension: n, constants, metric, eta, xi, j, omega: structure.omega, automorphism };
        file.lie_model()?;
        if let Some(t) = &file.automorphism {
            file.fibre_automorphism(&file.lie_model()?, t.matrix.clone())?;
        }
        Ok(file)
    }

    /// Builds the Lie algebra model with whichever structure tensors are
    /// present.
    pub fn lie_model(&self) -> anyhow::Result<LieModel> {
        let entries: Vec<(usize, usize, usize, Q)> =
            self.constants.iter().map(|c| (c.i - 1, c.j - 1, c.k - 1, c.c.clone())).collect();
        let mut m = GenericLieModel::new(self.dimension, &entries)
            .map_err(|e| field_error("structure_constants", e.to_string()))?;
        if let Some(g) = &self.metric {
            m = m.with_metric(g.clone()).map_err(|e| field_error("structure.metric", e.to_string()))?;
        }
        if let Some(j) = &self.j {
            m = m.with_j(j.clone()).map_err(|e| field_error("structure.J", e.to_string()))?;
        }
        if let Some(xi) = &self.xi {
            m = m.with_xi(xi.clone()).map_err(|e| field_error("structure.xi", e.to_string()))?;
        }
        if let Some(eta) = &self.eta {
            m = m.with_eta(eta.clone()).map_err(|e| field_error("structure.eta", e.to_string()))?;
        }
        if let Some(text) = &self.omega {
            let w = Element::parse(m.algebra(), text).map_err(|e| field_error("structure.omega", e.to_string()))?;
            m = m.with_omega(w).map_err(|e| field_error("structure.omega", e.to_string()))?;
        }
        Ok(m)
    }

    /// The algebra automorphism of the Chevalley–Eilenberg algebra whose
    /// degree-1 part is `matrix`.
    pub fn fibre_automorphism(&self, m: &LieModel, matrix: Matrix) -> anyhow::Result<AlgebraMap<Q>> {
        let alg = m.algebra();
        let images = (0..self.dimension).map(|c| Element::from_vector(alg, 1, &matrix.column(c))).collect();
        AlgebraMap::new(alg, alg, images).map_err(|e| field_error("mapping_torus.matrix", e.to_string()))
    }

    /// The canonical TOML rendering: constants sorted, scalars in lowest
    /// terms, absent sections omitted.
    pub fn to_canonical_toml(&self) -> String {
        let text = |x: &Q| x.to_string();
        let row = |v: &[Q]| v.iter().map(text).collect::<Vec<_>>();
        let rows = |m: &Matrix| (0..m.rows()).map(|r| row(m.row(r))).collect::<Vec<_>>();
        let mut constants: Vec<CanonicalConstant> = self
            .constants
            .iter()
            .filter(|c| c.c != Q::from_integer(0.into()))
            .map(|c| CanonicalConstant { i: c.i, j: c.j, k: c.k, c: text(&c.c) })
            .collect();
        constants.sort_by_key(|c| (c.i, c.j, c.k));
        let has_structure = self.metric.is_some()
            || self.eta.is_some()
            || self.xi.is_some()
            || self.j.is_some()
            || self.omega.is_some();
        let canonical = Canonical {
            name: self.name.clone(),
            dimension: self.dimension,
            structure_constants: constants,
            structure: has_structure.then(|| CanonicalStructure {
                metric: self.metric.as_ref().map(rows),
                eta: self.eta.as_deref().map(row),
                xi: self.xi.as_deref().map(row),
                j: self.j.as_ref().map(rows),
                omega: self.omega.clone(),
            }),
            mapping_torus: self
                .automorphism
                .as_ref()
                .map(|t| CanonicalTorus { order: t.order, matrix: rows(&t.matrix) }),
        };
        toml::to_string(&canonical).expect("canonical form is serializable")
    }
}

#[derive(Serialize)]
struct Canonical {
    name: String,
    dimension: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    structure_constants: Vec<CanonicalConstant>,
    #[serde(skip_serializing_if = "Option::is_none")]
    structure: Option<CanonicalStructure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mapping_torus: Option<CanonicalTorus>,
}

#[derive(Serialize)]
struct CanonicalConstant {
    i: usize,
    j: usize,
    k: usize,
    c: String,
}

#[derive(Serialize)]
struct CanonicalStructure {
    #[serde(skip_serializing_if = "Option::is_none")]
    metric: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eta: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    xi: Option<Vec<String>>,
    #[serde(rename = "J", skip_serializing_if = "Option::is_none")]
    j: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega: Option<String>,
}

#[derive(Serialize)]
struct CanonicalTorus {
    order: u32,
    matrix: Vec<Vec<String>>,
}
