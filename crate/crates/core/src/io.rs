//! The algebra file format and its JSON mirror.
//!
//! ```text
//! # comments run to the end of the line
//! field gf 7          # or `field q`
//! dim 3
//! labels a b c        # optional
//! 0 1 1
//! 1 0 1
//! 1 1 2
//! ```
//!
//! The rows are the rows of the structure matrix, so column `i` is `e_i²`.
//! Scalars are integers or fractions `a/b`; over GF(p) they are reduced.

use serde_json::{json, Value};

use crate::algebra::{BasisCandidate, Element, EvolutionAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub field: Field,
    pub dim: usize,
    pub rows: Vec<Vec<Scalar>>,
    pub labels: Option<Vec<String>>,
}

impl AlgebraFile {
    pub fn from_algebra(a: &EvolutionAlgebra) -> Self {
        AlgebraFile {
            field: a.field(),
            dim: a.dim(),
            rows: a.structure_matrix().row_vectors(),
            labels: a.labels().map(<[String]>::to_vec),
        }
    }

    pub fn to_algebra(&self) -> Result<EvolutionAlgebra> {
        let a = EvolutionAlgebra::new(Matrix::from_rows(self.field, self.dim, &self.rows)?)?;
        match &self.labels {
            Some(l) => a.with_labels(l.clone()),
            None => Ok(a),
        }
    }

    /// Canonical text form.
    pub fn emit(&self) -> String {
        let mut out = format!("field {}\ndim {}\n", self.field, self.dim);
        if let Some(l) = &self.labels {
            out.push_str(&format!("labels {}\n", l.join(" ")));
        }
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "field": self.field.to_string(),
            "dim": self.dim,
            "matrix": self.rows.iter()
                .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        });
        if let Some(l) = &self.labels {
            v["labels"] = json!(l);
        }
        v
    }

    /// Text or JSON, chosen by the first non-blank character.
    pub fn parse_any(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse(text)
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut field = None;
        let mut dim = None;
        let mut labels = None;
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let mut last_line = 0;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            last_line = line;
            let body = raw.split('#').next().unwrap_or("");
            let Some((col, first)) = tokens(body).next() else {
                continue;
            };
            let rest = body[col - 1 + first.len()..].trim();
            match first {
                "field" => {
                    if field.is_some() {
                        return Err(Error::parse(line, col, "duplicate `field`"));
                    }
                    if rest.is_empty() {
                        return Err(Error::parse(line, col, "`field` needs `q` or `gf <p>`"));
                    }
                    field = Some(rest.parse::<Field>().map_err(|e| match e {
                        Error::NonPrimeModulus(p) => Error::NonPrimeModulus(p),
                        e => Error::parse(line, col + first.len() + 1, e.to_string()),
                    })?);
                }
                "dim" => {
                    if dim.is_some() {
                        return Err(Error::parse(line, col, "duplicate `dim`"));
                    }
                    let n: usize = rest
                        .parse()
                        .map_err(|_| Error::parse(line, col, format!("bad dimension `{rest}`")))?;
                    if n == 0 {
                        return Err(Error::parse(line, col, "dimension must be at least 1"));
                    }
                    dim = Some(n);
                }
                "labels" => {
                    if labels.is_some() {
                        return Err(Error::parse(line, col, "duplicate `labels`"));
                    }
                    labels = Some(rest.split_whitespace().map(str::to_string).collect::<Vec<_>>());
                }
                _ => {
                    let f = field.ok_or_else(|| Error::parse(line, col, "matrix row before `field`"))?;
                    let n = dim.ok_or_else(|| Error::parse(line, col, "matrix row before `dim`"))?;
                    let row = tokens(body)
                        .map(|(c, t)| f.parse_scalar(t).map_err(|e| Error::parse(line, c, e.to_string())))
                        .collect::<Result<Vec<_>>>()?;
                    if row.len() != n {
                        return Err(Error::NonSquareMatrix(format!(
                            "line {line}: {} entries in a row of a {n}x{n} matrix",
                            row.len()
                        )));
                    }
                    if rows.len() == n {
                        return Err(Error::NonSquareMatrix(format!("line {line}: more than {n} rows")));
                    }
                    rows.push(row);
                }
            }
        }
        let field = field.ok_or_else(|| Error::parse(last_line.max(1), 1, "missing `field`"))?;
        let dim = dim.ok_or_else(|| Error::parse(last_line.max(1), 1, "missing `dim`"))?;
        if rows.len() != dim {
            return Err(Error::NonSquareMatrix(format!("{} rows for dimension {dim}", rows.len())));
        }
        if let Some(l) = &labels {
            if l.len() != dim {
                return Err(Error::InvalidArgument(format!("{} labels for dimension {dim}", l.len())));
            }
        }
        Ok(AlgebraFile {
            field,
            dim,
            rows,
            labels,
        })
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
        let bad = |m: &str| Error::parse(1, 1, m.to_string());
        let field: Field = v["field"]
            .as_str()
            .ok_or_else(|| bad("`field` must be a string"))?
            .parse()
            .map_err(|e| match e {
                Error::NonPrimeModulus(p) => Error::NonPrimeModulus(p),
                e => bad(&e.to_string()),
            })?;
        let dim = v["dim"].as_u64().filter(|&n| n > 0).ok_or_else(|| bad("`dim` must be a positive integer"))? as usize;
        let matrix = v["matrix"].as_array().ok_or_else(|| bad("`matrix` must be an array of rows"))?;
        if matrix.len() != dim {
            return Err(Error::NonSquareMatrix(format!("{} rows for dimension {dim}", matrix.len())));
        }
        let mut rows = Vec::with_capacity(dim);
        for (r, row) in matrix.iter().enumerate() {
            let cells = row.as_array().ok_or_else(|| bad("each row must be an array"))?;
            if cells.len() != dim {
                return Err(Error::NonSquareMatrix(format!("row {}: {} entries for dimension {dim}", r + 1, cells.len())));
            }
            rows.push(
                cells
                    .iter()
                    .map(|c| match c {
                        Value::String(s) => field.parse_scalar(s),
                        Value::Number(k) => field.parse_scalar(&k.to_string()),
                        _ => Err(Error::InvalidArgument("entries must be strings or integers".into())),
                    })
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| bad(&format!("row {}: {e}", r + 1)))?,
            );
        }
        let labels = match &v["labels"] {
            Value::Null => None,
            Value::Array(ls) => Some(
                ls.iter()
                    .map(|l| l.as_str().map(str::to_string).ok_or_else(|| bad("labels must be strings")))
                    .collect::<Result<Vec<_>>>()?,
            ),
            _ => return Err(bad("`labels` must be an array")),
        };
        if labels.as_ref().is_some_and(|l| l.len() != dim) {
            return Err(Error::InvalidArgument(format!("label count differs from dimension {dim}")));
        }
        Ok(AlgebraFile {
            field,
            dim,
            rows,
            labels,
        })
    }
}

/// Whitespace- or comma-separated tokens with 1-based columns.
fn tokens(s: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut start = None;
    let mut out = Vec::new();
    for (i, c) in s.char_indices() {
        let sep = c.is_whitespace() || c == ',';
        match (sep, start) {
            (true, Some(b)) => {
                out.push((b + 1, &s[b..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(b) = start {
        out.push((b + 1, &s[b..]));
    }
    out.into_iter()
}

pub fn parse_algebra(text: &str) -> Result<EvolutionAlgebra> {
    AlgebraFile::parse_any(text)?.to_algebra()
}

pub fn emit_algebra(a: &EvolutionAlgebra) -> String {
    AlgebraFile::from_algebra(a).emit()
}

/// `1, -1/2, 0`: one vector of length `n`.
pub fn parse_vector(field: Field, n: usize, text: &str) -> Result<Element> {
    let coords = tokens(text)
        .map(|(c, t)| field.parse_scalar(t).map_err(|e| Error::parse(1, c, e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != n {
        return Err(Error::ShapeMismatch(format!("vector `{}` has {} entries, expected {n}", text.trim(), coords.len())));
    }
    Ok(Element::new(coords))
}

/// Vectors separated by `;`.
pub fn parse_vectors(field: Field, n: usize, text: &str) -> Result<Vec<Element>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_vector(field, n, s))
        .collect()
}

/// One vector per line; `#` comments and blank lines are skipped.
pub fn parse_basis(field: Field, n: usize, text: &str) -> Result<BasisCandidate> {
    let mut vectors = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        vectors.push(parse_vector(field, n, body).map_err(|e| match e {
            Error::Parse { column, message, .. } => Error::parse(k + 1, column, message),
            e => e,
        })?);
    }
    Ok(BasisCandidate::new(vectors))
}
