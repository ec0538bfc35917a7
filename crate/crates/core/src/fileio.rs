//! The algebra definition file format: JSON with coefficient strings in
//! the parameter grammar. Conventions: `products[name][i][j][k]` is the
//! coefficient of basis k in the product of basis i and basis j;
//! `alpha[i][j]` (and operator matrices) hold the coefficient of basis
//! i in the image of basis j.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, BilinearOp, HomAlgebra, HomModule, Provenance};
use crate::coeff::{CoeffError, Context, FieldElem, FieldMatrix};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field `{0}` has the wrong shape (expected {1})")]
    Shape(String, String),
    #[error("in `{location}`: {source}")]
    Coeff {
        location: String,
        source: CoeffError,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ProvenanceFile {
    pub construction: String,
    pub source: String,
    #[serde(default)]
    pub params: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    #[serde(default)]
    pub parameters: Vec<String>,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub products: BTreeMap<String, Vec<Vec<Vec<String>>>>,
    pub alpha: Vec<Vec<String>>,
    #[serde(default)]
    pub operators: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub kind_hints: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<ProvenanceFile>,
}

fn parse_at(ctx: &std::sync::Arc<Context>, s: &str, loc: String) -> Result<FieldElem, FileError> {
    ctx.parse(s).map_err(|source| FileError::Coeff {
        location: loc,
        source,
    })
}

fn parse_matrix(
    ctx: &std::sync::Arc<Context>,
    rows: &[Vec<String>],
    dim: usize,
    what: &str,
) -> Result<FieldMatrix, FileError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(FileError::Shape(what.into(), format!("{dim}x{dim}")));
    }
    let mut m = FieldMatrix::zero(ctx, dim, dim);
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            *m.at_mut(i, j) = parse_at(ctx, s, format!("{what}[{i}][{j}]"))?;
        }
    }
    Ok(m)
}

impl AlgebraFile {
    pub fn load(path: &Path) -> Result<AlgebraFile, FileError> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), FileError> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text + "\n")?;
        Ok(())
    }

    pub fn to_algebra(&self) -> Result<HomAlgebra, FileError> {
        let ctx = Context::new(self.parameters.iter().cloned());
        let dim = self.dim;
        if self.basis.len() != dim {
            return Err(FileError::Shape("basis".into(), format!("{dim} labels")));
        }
        let alpha = parse_matrix(&ctx, &self.alpha, dim, "alpha")?;
        let module = HomModule::new(self.basis.clone(), alpha)?;
        let mut a = HomAlgebra::new(&self.name, module);
        for (name, cube) in &self.products {
            if cube.len() != dim
                || cube
                    .iter()
                    .any(|p| p.len() != dim || p.iter().any(|r| r.len() != dim))
            {
                return Err(FileError::Shape(
                    format!("products.{name}"),
                    format!("{dim}x{dim}x{dim}"),
                ));
            }
            let mut op = BilinearOp::zero(&ctx, name, dim);
            for i in 0..dim {
                for j in 0..dim {
                    for k in 0..dim {
                        *op.coeff_mut(i, j, k) = parse_at(
                            &ctx,
                            &cube[i][j][k],
                            format!("products.{name}[{i}][{j}][{k}]"),
                        )?;
                    }
                }
            }
            a.add_product(op)?;
        }
        for (name, rows) in &self.operators {
            let m = parse_matrix(&ctx, rows, dim, &format!("operators.{name}"))?;
            a.add_operator(name, m)?;
        }
        if let Some(w) = &self.weight {
            a.weight = Some(parse_at(&ctx, w, "weight".into())?);
        }
        a.kind_hints = self.kind_hints.clone();
        if let Some(p) = &self.provenance {
            a.provenance = Some(Provenance {
                construction: p.construction.clone(),
                source: p.source.clone(),
                params: p.params.clone(),
            });
        }
        Ok(a)
    }

    pub fn from_algebra(a: &HomAlgebra) -> AlgebraFile {
        let dim = a.dim();
        let fmt = |e: &FieldElem| e.to_string();
        let matrix = |m: &FieldMatrix| -> Vec<Vec<String>> {
            (0..dim)
                .map(|i| (0..dim).map(|j| fmt(m.at(i, j))).collect())
                .collect()
        };
        let products = a
            .products
            .iter()
            .map(|(name, op)| {
                let cube = (0..dim)
                    .map(|i| {
                        (0..dim)
                            .map(|j| (0..dim).map(|k| fmt(op.coeff(i, j, k))).collect())
                            .collect()
                    })
                    .collect();
                (name.clone(), cube)
            })
            .collect();
        AlgebraFile {
            name: a.name.clone(),
            parameters: a.ctx().vars().to_vec(),
            dim,
            basis: a.module.basis_labels.clone(),
            products,
            alpha: matrix(&a.module.alpha),
            operators: a.operators.iter().map(|(n, m)| (n.clone(), matrix(m))).collect(),
            weight: a.weight.as_ref().map(|w| w.to_string()),
            kind_hints: a.kind_hints.clone(),
            provenance: a.provenance.as_ref().map(|p| ProvenanceFile {
                construction: p.construction.clone(),
                source: p.source.clone(),
                params: p.params.clone(),
            }),
        }
    }
}

/// Structural equality of the algebras two files denote.
pub fn files_equivalent(a: &AlgebraFile, b: &AlgebraFile) -> Result<bool, FileError> {
    let aa = a.to_algebra()?;
    let bb = b.to_algebra()?;
    if aa.dim() != bb.dim()
        || aa.module.basis_labels != bb.module.basis_labels
        || !aa.module.alpha.equals(&bb.module.alpha)
        || aa.products.len() != bb.products.len()
        || aa.operators.len() != bb.operators.len()
    {
        return Ok(false);
    }
    for (name, op) in &aa.products {
        match bb.products.get(name) {
            Some(op2) if op.equals(op2) => {}
            _ => return Ok(false),
        }
    }
    for (name, m) in &aa.operators {
        match bb.operators.get(name) {
            Some(m2) if m.equals(m2) => {}
            _ => return Ok(false),
        }
    }
    match (&aa.weight, &bb.weight) {
        (None, None) => {}
        (Some(x), Some(y)) if x.equals(y) => {}
        _ => return Ok(false),
    }
    Ok(true)
}
