//! Dense matrices over the rational-function field, with exact row
//! reduction, rank, kernel bases, solving, and inversion.

use std::fmt;
use std::sync::Arc;

use super::field::FieldElem;
use super::{CoeffError, Context};

#[derive(Debug, Clone, PartialEq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElem>,
}

/// Result of `solve`: one particular solution (the system may be
/// underdetermined; kernel vectors describe the rest).
pub type LinearSolution = Vec<FieldElem>;

impl FieldMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<FieldElem>) -> Result<Self, CoeffError> {
        if entries.len() != rows * cols {
            return Err(CoeffError::Dimension(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(FieldMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(ctx: &Arc<Context>, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            rows,
            cols,
            entries: vec![FieldElem::zero(ctx); rows * cols],
        }
    }

    pub fn identity(ctx: &Arc<Context>, n: usize) -> Self {
        let mut m = FieldMatrix::zero(ctx, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = FieldElem::one(ctx);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElem>>) -> Result<Self, CoeffError> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(CoeffError::Dimension("ragged rows".into()));
        }
        Ok(FieldMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &FieldElem {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut FieldElem {
        &mut self.entries[r * self.cols + c]
    }

    pub fn ctx(&self) -> &Arc<Context> {
        self.entries
            .first()
            .map(|e| e.ctx())
            .expect("empty matrix has no context")
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.at(i, j).equals(&FieldElem::one(self.ctx()))
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    pub fn equals(&self, other: &FieldMatrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .entries
                .iter()
                .zip(other.entries.iter())
                .all(|(a, b)| a.equals(b))
    }

    pub fn add(&self, other: &FieldMatrix) -> Result<FieldMatrix, CoeffError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CoeffError::Dimension("matrix add".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a.add(b))
            .collect::<Result<_, _>>()?;
        Ok(FieldMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn neg(&self) -> FieldMatrix {
        FieldMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.neg()).collect(),
        }
    }

    pub fn scale(&self, k: &FieldElem) -> Result<FieldMatrix, CoeffError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.mul(k))
            .collect::<Result<_, _>>()?;
        Ok(FieldMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn matmul(&self, other: &FieldMatrix) -> Result<FieldMatrix, CoeffError> {
        if self.cols != other.rows {
            return Err(CoeffError::Dimension("matrix product".into()));
        }
        let ctx = self.ctx();
        let mut out = FieldMatrix::zero(ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = FieldElem::zero(ctx);
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(other.at(k, j))?)?;
                }
                *out.at_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    /// Matrix applied to a column vector.
    pub fn apply(&self, v: &[FieldElem]) -> Result<Vec<FieldElem>, CoeffError> {
        if v.len() != self.cols {
            return Err(CoeffError::Dimension("matrix apply".into()));
        }
        let ctx = self.ctx();
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = FieldElem::zero(ctx);
            for j in 0..self.cols {
                acc = acc.add(&self.at(i, j).mul(&v[j])?)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<FieldMatrix, CoeffError> {
        let mut out = FieldMatrix::identity(self.ctx(), self.rows);
        for _ in 0..e {
            out = out.matmul(self)?;
        }
        Ok(out)
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    /// Pivoting takes the first row with a nonzero entry in the current
    /// column, so the result is deterministic.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    let a = self.at(p, c).clone();
                    let b = self.at(row, c).clone();
                    *self.at_mut(p, c) = b;
                    *self.at_mut(row, c) = a;
                }
            }
            let inv = self.at(row, col).inv().expect("pivot is nonzero");
            for c in 0..self.cols {
                let v = self.at(row, c).mul(&inv).expect("ctx");
                *self.at_mut(row, c) = v;
            }
            for r in 0..self.rows {
                if r != row && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    for c in 0..self.cols {
                        let v = self
                            .at(r, c)
                            .sub(&factor.mul(self.at(row, c)).expect("ctx"))
                            .expect("ctx");
                        *self.at_mut(r, c) = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// A spanning set of the null space `{v : M v = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElem>> {
        let ctx = self.ctx();
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![FieldElem::zero(ctx); self.cols];
            v[f] = FieldElem::one(ctx);
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = m.at(r, f).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `M x = rhs` exactly; errors with `NoSolution` if inconsistent.
    pub fn solve(&self, rhs: &[FieldElem]) -> Result<LinearSolution, CoeffError> {
        if rhs.len() != self.rows {
            return Err(CoeffError::Dimension("solve rhs length".into()));
        }
        let ctx = self.ctx();
        let mut aug = FieldMatrix::zero(ctx, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, self.cols) = rhs[r].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return Err(CoeffError::NoSolution);
        }
        let mut x = vec![FieldElem::zero(ctx); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.at(r, self.cols).clone();
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<FieldMatrix, CoeffError> {
        if self.rows != self.cols {
            return Err(CoeffError::Dimension("inverse of non-square matrix".into()));
        }
        let ctx = self.ctx();
        let n = self.rows;
        let mut aug = FieldMatrix::zero(ctx, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, n + r) = FieldElem::one(ctx);
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(CoeffError::Singular);
        }
        let mut out = FieldMatrix::zero(ctx, n, n);
        for r in 0..n {
            for c in 0..n {
                *out.at_mut(r, c) = aug.at(r, n + c).clone();
            }
        }
        Ok(out)
    }
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rank() {
        let ctx = Context::rational();
        let m = FieldMatrix::identity(&ctx, 3);
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn zero_matrix_kernel() {
        let ctx = Context::rational();
        let m = FieldMatrix::zero(&ctx, 2, 4);
        assert_eq!(m.kernel_basis().len(), 4);
    }

    #[test]
    fn rank_one_symbolic() {
        // [[1, q], [q, q^2]] has rank 1
        let ctx = Context::new(["q"]);
        let one = FieldElem::one(&ctx);
        let q = FieldElem::var(&ctx, "q").unwrap();
        let q2 = q.pow(2);
        let m = FieldMatrix::from_rows(vec![vec![one, q.clone()], vec![q, q2]]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel_basis().len(), 1);
    }

    #[test]
    fn rank_nullity() {
        let ctx = Context::new(["q"]);
        let one = FieldElem::one(&ctx);
        let q = FieldElem::var(&ctx, "q").unwrap();
        let z = FieldElem::zero(&ctx);
        let m = FieldMatrix::from_rows(vec![
            vec![one.clone(), q.clone(), z.clone()],
            vec![z.clone(), one.clone(), q.clone()],
        ])
        .unwrap();
        assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
    }

    #[test]
    fn solve_and_inverse() {
        let ctx = Context::new(["a"]);
        let a = FieldElem::var(&ctx, "a").unwrap();
        let one = FieldElem::one(&ctx);
        let z = FieldElem::zero(&ctx);
        let m = FieldMatrix::from_rows(vec![
            vec![a.clone(), one.clone()],
            vec![z.clone(), a.clone()],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.matmul(&inv).unwrap().is_identity());
        let x = m.solve(&[one.clone(), a.clone()]).unwrap();
        let back = m.apply(&x).unwrap();
        assert!(back[0].equals(&one) && back[1].equals(&a));
    }

    #[test]
    fn inconsistent_system() {
        let ctx = Context::rational();
        let one = FieldElem::one(&ctx);
        let z = FieldElem::zero(&ctx);
        let m = FieldMatrix::from_rows(vec![vec![one.clone()], vec![z.clone()]]).unwrap();
        assert!(matches!(
            m.solve(&[z.clone(), one.clone()]),
            Err(CoeffError::NoSolution)
        ));
    }
}
