//! Finite-dimensional Hom-algebras as structure-constant data: named
//! bilinear products, a twisting map, candidate Rota-Baxter operators, and
//! an optional weight.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::coeff::{CoeffError, Context, FieldElem, FieldMatrix};

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("unknown product `{0}`")]
    UnknownProduct(String),
    #[error("unknown operator `{0}`")]
    UnknownOperator(String),
    #[error("unknown basis label `{0}`")]
    UnknownBasisLabel(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// A Hom-module: a finite free module with named basis and a twisting map.
#[derive(Debug, Clone)]
pub struct HomModule {
    pub dim: usize,
    pub basis_labels: Vec<String>,
    pub alpha: FieldMatrix,
}

impl HomModule {
    pub fn new(
        basis_labels: Vec<String>,
        alpha: FieldMatrix,
    ) -> Result<Self, AlgebraError> {
        let dim = basis_labels.len();
        for (i, l) in basis_labels.iter().enumerate() {
            if basis_labels[..i].contains(l) {
                return Err(AlgebraError::DuplicateLabel(l.clone()));
            }
        }
        if alpha.rows() != dim || alpha.cols() != dim {
            return Err(AlgebraError::Dimension(format!(
                "alpha must be {dim}x{dim}"
            )));
        }
        Ok(HomModule {
            dim,
            basis_labels,
            alpha,
        })
    }

    pub fn ctx(&self) -> &Arc<Context> {
        self.alpha.ctx()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<FieldElem> {
        let mut v = vec![FieldElem::zero(self.ctx()); self.dim];
        v[i] = FieldElem::one(self.ctx());
        v
    }

    pub fn label_index(&self, label: &str) -> Result<usize, AlgebraError> {
        self.basis_labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| AlgebraError::UnknownBasisLabel(label.to_string()))
    }
}

/// A named bilinear product, stored as a dense rank-3 tensor:
/// `c[i][j][k]` is the coefficient of basis `k` in `e_i ∘ e_j`.
#[derive(Debug, Clone)]
pub struct BilinearOp {
    pub name: String,
    dim: usize,
    c: Vec<FieldElem>, // flattened (i*dim + j)*dim + k
}

impl BilinearOp {
    pub fn zero(ctx: &Arc<Context>, name: &str, dim: usize) -> Self {
        BilinearOp {
            name: name.to_string(),
            dim,
            c: vec![FieldElem::zero(ctx); dim * dim * dim],
        }
    }

    pub fn from_tensor(name: &str, dim: usize, c: Vec<FieldElem>) -> Result<Self, AlgebraError> {
        if c.len() != dim * dim * dim {
            return Err(AlgebraError::Dimension(format!(
                "product `{name}` needs {} coefficients",
                dim * dim * dim
            )));
        }
        Ok(BilinearOp {
            name: name.to_string(),
            dim,
            c,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &FieldElem {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn coeff_mut(&mut self, i: usize, j: usize, k: usize) -> &mut FieldElem {
        &mut self.c[(i * self.dim + j) * self.dim + k]
    }

    /// Bilinear contraction with two coordinate vectors.
    pub fn apply(
        &self,
        x: &[FieldElem],
        y: &[FieldElem],
    ) -> Result<Vec<FieldElem>, AlgebraError> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(AlgebraError::Dimension("product argument length".into()));
        }
        let ctx = self.c[0].ctx();
        let mut out = vec![FieldElem::zero(ctx); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let xy = x[i].mul(&y[j])?;
                for k in 0..self.dim {
                    let c = self.coeff(i, j, k);
                    if !c.is_zero() {
                        out[k] = out[k].add(&xy.mul(c)?)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Structure tensor of `x ∘ y - y ∘ x`.
    pub fn commutator(&self, name: &str) -> Result<BilinearOp, AlgebraError> {
        let mut out = self.clone();
        out.name = name.to_string();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    *out.coeff_mut(i, j, k) = self.coeff(i, j, k).sub(self.coeff(j, i, k))?;
                }
            }
        }
        Ok(out)
    }

    /// Post-compose with a linear map: new tensor of `m ∘ (x ∘ y)`.
    pub fn post_compose(&self, m: &FieldMatrix) -> Result<BilinearOp, AlgebraError> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(AlgebraError::Dimension("post_compose matrix".into()));
        }
        let mut out = self.clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let col: Vec<FieldElem> =
                    (0..self.dim).map(|k| self.coeff(i, j, k).clone()).collect();
                let img = m.apply(&col)?;
                for k in 0..self.dim {
                    *out.coeff_mut(i, j, k) = img[k].clone();
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &BilinearOp, name: &str) -> Result<BilinearOp, AlgebraError> {
        if other.dim != self.dim {
            return Err(AlgebraError::Dimension("product add".into()));
        }
        let mut out = self.clone();
        out.name = name.to_string();
        for n in 0..self.c.len() {
            out.c[n] = self.c[n].add(&other.c[n])?;
        }
        Ok(out)
    }

    pub fn equals(&self, other: &BilinearOp) -> bool {
        self.dim == other.dim
            && self
                .c
                .iter()
                .zip(other.c.iter())
                .all(|(a, b)| a.equals(b))
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|e| e.is_zero())
    }
}

/// Where a constructed algebra came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub construction: String,
    pub source: String,
    pub params: Vec<(String, String)>,
}

/// A Hom-algebra record: module, named products, candidate Rota-Baxter
/// operators, and an optional weight.
#[derive(Debug, Clone)]
pub struct HomAlgebra {
    pub name: String,
    pub module: HomModule,
    pub products: BTreeMap<String, BilinearOp>,
    pub operators: BTreeMap<String, FieldMatrix>,
    pub weight: Option<FieldElem>,
    pub kind_hints: Vec<String>,
    pub provenance: Option<Provenance>,
}

impl HomAlgebra {
    pub fn new(name: &str, module: HomModule) -> Self {
        HomAlgebra {
            name: name.to_string(),
            module,
            products: BTreeMap::new(),
            operators: BTreeMap::new(),
            weight: None,
            kind_hints: Vec::new(),
            provenance: None,
        }
    }

    pub fn ctx(&self) -> &Arc<Context> {
        self.module.ctx()
    }

    pub fn dim(&self) -> usize {
        self.module.dim
    }

    pub fn add_product(&mut self, op: BilinearOp) -> Result<(), AlgebraError> {
        if op.dim() != self.dim() {
            return Err(AlgebraError::Dimension(format!(
                "product `{}` dimension",
                op.name
            )));
        }
        self.products.insert(op.name.clone(), op);
        Ok(())
    }

    pub fn add_operator(&mut self, name: &str, m: FieldMatrix) -> Result<(), AlgebraError> {
        if m.rows() != self.dim() || m.cols() != self.dim() {
            return Err(AlgebraError::Dimension(format!("operator `{name}` shape")));
        }
        self.operators.insert(name.to_string(), m);
        Ok(())
    }

    pub fn product(&self, name: &str) -> Result<&BilinearOp, AlgebraError> {
        self.products
            .get(name)
            .ok_or_else(|| AlgebraError::UnknownProduct(name.to_string()))
    }

    pub fn operator(&self, name: &str) -> Result<&FieldMatrix, AlgebraError> {
        self.operators
            .get(name)
            .ok_or_else(|| AlgebraError::UnknownOperator(name.to_string()))
    }

    /// Resolve a product name, defaulting to the unique product if only one
    /// is present.
    pub fn resolve_product(&self, name: Option<&str>) -> Result<&BilinearOp, AlgebraError> {
        match name {
            Some(n) => self.product(n),
            None => {
                if self.products.len() == 1 {
                    Ok(self.products.values().next().unwrap())
                } else {
                    Err(AlgebraError::UnknownProduct(
                        "(ambiguous: specify a product name)".into(),
                    ))
                }
            }
        }
    }

    pub fn resolve_operator(&self, name: Option<&str>) -> Result<&FieldMatrix, AlgebraError> {
        match name {
            Some(n) => self.operator(n),
            None => {
                if self.operators.len() == 1 {
                    Ok(self.operators.values().next().unwrap())
                } else {
                    Err(AlgebraError::UnknownOperator(
                        "(ambiguous: specify an operator name)".into(),
                    ))
                }
            }
        }
    }

    pub fn apply_product(
        &self,
        op_name: &str,
        x: &[FieldElem],
        y: &[FieldElem],
    ) -> Result<Vec<FieldElem>, AlgebraError> {
        self.product(op_name)?.apply(x, y)
    }

    /// Hom-associator `(x∘y)∘α(z) - α(x)∘(y∘z)` for the named product.
    pub fn hom_associator(
        &self,
        op_name: &str,
        x: &[FieldElem],
        y: &[FieldElem],
        z: &[FieldElem],
    ) -> Result<Vec<FieldElem>, AlgebraError> {
        let op = self.product(op_name)?;
        self.hom_associator_op(op, x, y, z)
    }

    pub fn hom_associator_op(
        &self,
        op: &BilinearOp,
        x: &[FieldElem],
        y: &[FieldElem],
        z: &[FieldElem],
    ) -> Result<Vec<FieldElem>, AlgebraError> {
        let alpha = &self.module.alpha;
        let left = op.apply(&op.apply(x, y)?, &alpha.apply(z)?)?;
        let right = op.apply(&alpha.apply(x)?, &op.apply(y, z)?)?;
        sub_vec(&left, &right)
    }
}

pub fn sub_vec(a: &[FieldElem], b: &[FieldElem]) -> Result<Vec<FieldElem>, AlgebraError> {
    Ok(a.iter()
        .zip(b.iter())
        .map(|(x, y)| x.sub(y))
        .collect::<Result<_, _>>()?)
}

pub fn add_vec(a: &[FieldElem], b: &[FieldElem]) -> Result<Vec<FieldElem>, AlgebraError> {
    Ok(a.iter()
        .zip(b.iter())
        .map(|(x, y)| x.add(y))
        .collect::<Result<_, _>>()?)
}

pub fn scale_vec(a: &[FieldElem], k: &FieldElem) -> Result<Vec<FieldElem>, AlgebraError> {
    Ok(a.iter().map(|x| x.mul(k)).collect::<Result<_, _>>()?)
}

pub fn vec_is_zero(a: &[FieldElem]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// A linear map between Hom-algebras, to be checked for the intertwining
/// equations of a morphism.
#[derive(Debug, Clone)]
pub struct Morphism<'a> {
    pub source: &'a HomAlgebra,
    pub target: &'a HomAlgebra,
    pub matrix: FieldMatrix,
}

/// One failed intertwining equation with the basis indices where it broke.
#[derive(Debug, Clone)]
pub struct MorphismViolation {
    pub equation: String,
    pub indices: Vec<usize>,
    pub defect: Vec<FieldElem>,
}

impl fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at basis indices {:?}", self.equation, self.indices)
    }
}

impl<'a> Morphism<'a> {
    /// Check the requested intertwining equations on all basis tuples.
    /// Returns the first violation in index order, if any.
    pub fn check(
        &self,
        op_pairs: &[(String, String)],
        check_alpha: bool,
        operator_pairs: &[(String, String)],
    ) -> Result<Option<MorphismViolation>, AlgebraError> {
        let n = self.source.dim();
        if self.matrix.rows() != self.target.dim() || self.matrix.cols() != n {
            return Err(AlgebraError::Dimension(
                "morphism matrix must be target.dim x source.dim".into(),
            ));
        }
        let f = &self.matrix;
        for (src_op, tgt_op) in op_pairs {
            let mu = self.source.product(src_op)?;
            let mu_t = self.target.product(tgt_op)?;
            for i in 0..n {
                for j in 0..n {
                    let ei = self.source.module.basis_vector(i);
                    let ej = self.source.module.basis_vector(j);
                    let lhs = f.apply(&mu.apply(&ei, &ej)?)?;
                    let rhs = mu_t.apply(&f.apply(&ei)?, &f.apply(&ej)?)?;
                    let defect = sub_vec(&lhs, &rhs)?;
                    if !vec_is_zero(&defect) {
                        return Ok(Some(MorphismViolation {
                            equation: format!("f∘{src_op} = {tgt_op}∘(f⊗f)"),
                            indices: vec![i, j],
                            defect,
                        }));
                    }
                }
            }
        }
        if check_alpha {
            let lhs = f.matmul(&self.source.module.alpha)?;
            let rhs = self.target.module.alpha.matmul(f)?;
            if let Some(v) = first_matrix_defect("f∘α = α'∘f", &lhs, &rhs)? {
                return Ok(Some(v));
            }
        }
        for (src_r, tgt_r) in operator_pairs {
            let r = self.source.operator(src_r)?;
            let r_t = self.target.operator(tgt_r)?;
            let lhs = f.matmul(r)?;
            let rhs = r_t.matmul(f)?;
            if let Some(v) =
                first_matrix_defect(&format!("f∘{src_r} = {tgt_r}∘f"), &lhs, &rhs)?
            {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }
}

fn first_matrix_defect(
    equation: &str,
    lhs: &FieldMatrix,
    rhs: &FieldMatrix,
) -> Result<Option<MorphismViolation>, AlgebraError> {
    for j in 0..lhs.cols() {
        let mut defect = Vec::with_capacity(lhs.rows());
        let mut nonzero = false;
        for i in 0..lhs.rows() {
            let d = lhs.at(i, j).sub(rhs.at(i, j))?;
            nonzero |= !d.is_zero();
            defect.push(d);
        }
        if nonzero {
            return Ok(Some(MorphismViolation {
                equation: equation.to_string(),
                indices: vec![j],
                defect,
            }));
        }
    }
    Ok(None)
}
