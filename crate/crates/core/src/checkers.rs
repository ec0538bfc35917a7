//! Exact verdicts for every checkable identity: skew-symmetry, Hom-Jacobi,
//! the six G-Hom-associative identities, the Rota-Baxter identity,
//! multiplicativity, centroid membership, and the Hom-(tri)dendriform
//! axioms. Failure reports carry the lexicographically first failing basis
//! tuple and its nonzero defect vector.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{
    add_vec, scale_vec, sub_vec, vec_is_zero, AlgebraError, BilinearOp, HomAlgebra,
};
use crate::coeff::{CoeffError, FieldElem};

#[derive(Debug, Error)]
pub enum CheckError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("identity `{0}` requires a weight; none given and the algebra carries none")]
    MissingWeight(String),
    #[error("weight given both explicitly and on the algebra, with different values")]
    ConflictingWeight,
    #[error("identity `{0}` requires products {1:?}")]
    MissingProducts(String, Vec<String>),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}

/// The six subgroups of S3, as permutation lists with signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subgroup {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
}

impl Subgroup {
    pub const ALL: [Subgroup; 6] = [
        Subgroup::G1,
        Subgroup::G2,
        Subgroup::G3,
        Subgroup::G4,
        Subgroup::G5,
        Subgroup::G6,
    ];

    /// Elements as (permutation, sign): permutation `p` contributes the
    /// term sign * as(x_{p[0]}, x_{p[1]}, x_{p[2]}) (indices 0-based).
    pub fn elements(self) -> &'static [([usize; 3], i8)] {
        const ID: ([usize; 3], i8) = ([0, 1, 2], 1);
        const S12: ([usize; 3], i8) = ([1, 0, 2], -1);
        const S23: ([usize; 3], i8) = ([0, 2, 1], -1);
        const S13: ([usize; 3], i8) = ([2, 1, 0], -1);
        const C123: ([usize; 3], i8) = ([1, 2, 0], 1);
        const C132: ([usize; 3], i8) = ([2, 0, 1], 1);
        match self {
            Subgroup::G1 => &[ID],
            Subgroup::G2 => &[ID, S12],
            Subgroup::G3 => &[ID, S23],
            Subgroup::G4 => &[ID, S13],
            Subgroup::G5 => &[ID, C123, C132],
            Subgroup::G6 => &[ID, C123, C132, S12, S23, S13],
        }
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

impl FromStr for Subgroup {
    type Err = CheckError;
    fn from_str(s: &str) -> Result<Self, CheckError> {
        match s.to_ascii_lowercase().as_str() {
            "g1" => Ok(Subgroup::G1),
            "g2" => Ok(Subgroup::G2),
            "g3" => Ok(Subgroup::G3),
            "g4" => Ok(Subgroup::G4),
            "g5" => Ok(Subgroup::G5),
            "g6" => Ok(Subgroup::G6),
            _ => Err(CheckError::UnknownIdentity(s.to_string())),
        }
    }
}

/// The fixed catalog of checkable identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Identity {
    SkewSymmetry,
    HomJacobi,
    GHomAssociative(Subgroup),
    /// The classical (alpha = Id) associativity defect, for comparison.
    AssociativeClassical,
    RotaBaxter,
    Multiplicative,
    CentroidMember,
    HomDendriform,
    HomTridendriform,
    HomLie,
}

impl Identity {
    pub fn id(&self) -> String {
        match self {
            Identity::SkewSymmetry => "skew_symmetry".into(),
            Identity::HomJacobi => "hom_jacobi".into(),
            Identity::GHomAssociative(g) => format!("{:?}", g).to_ascii_lowercase(),
            Identity::AssociativeClassical => "associative-classical".into(),
            Identity::RotaBaxter => "rota_baxter".into(),
            Identity::Multiplicative => "multiplicative".into(),
            Identity::CentroidMember => "centroid_member".into(),
            Identity::HomDendriform => "hom_dendriform".into(),
            Identity::HomTridendriform => "hom_tridendriform".into(),
            Identity::HomLie => "hom_lie".into(),
        }
    }
}

impl FromStr for Identity {
    type Err = CheckError;
    fn from_str(s: &str) -> Result<Self, CheckError> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "skew_symmetry" => Ok(Identity::SkewSymmetry),
            "hom_jacobi" => Ok(Identity::HomJacobi),
            "g1" | "hom_associative" => Ok(Identity::GHomAssociative(Subgroup::G1)),
            "g2" | "left_hom_prelie" => Ok(Identity::GHomAssociative(Subgroup::G2)),
            "g3" | "right_hom_prelie" => Ok(Identity::GHomAssociative(Subgroup::G3)),
            "g4" => Ok(Identity::GHomAssociative(Subgroup::G4)),
            "g5" => Ok(Identity::GHomAssociative(Subgroup::G5)),
            "g6" | "hom_lie_admissible" => Ok(Identity::GHomAssociative(Subgroup::G6)),
            "associative_classical" => Ok(Identity::AssociativeClassical),
            "rota_baxter" => Ok(Identity::RotaBaxter),
            "multiplicative" => Ok(Identity::Multiplicative),
            "centroid_member" => Ok(Identity::CentroidMember),
            "hom_dendriform" => Ok(Identity::HomDendriform),
            "hom_tridendriform" => Ok(Identity::HomTridendriform),
            "hom_lie" => Ok(Identity::HomLie),
            other => Err(CheckError::UnknownIdentity(other.to_string())),
        }
    }
}

/// Extra inputs for a check: which product/operator to use and the weight.
#[derive(Debug, Clone, Default)]
pub struct CheckParams {
    pub product: Option<String>,
    pub operator: Option<String>,
    /// Operator name playing the centroid candidate for `centroid_member`.
    pub beta: Option<String>,
    pub weight: Option<FieldElem>,
}

#[derive(Debug, Clone)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub defect: Vec<FieldElem>,
    pub equation: String,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub identity: String,
    pub pass: bool,
    pub witness: Option<Witness>,
}

impl CheckReport {
    fn pass(identity: String) -> Self {
        CheckReport {
            identity,
            pass: true,
            witness: None,
        }
    }

    fn fail(identity: String, witness: Witness) -> Self {
        CheckReport {
            identity,
            pass: false,
            witness: Some(witness),
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            write!(f, "{}: pass", self.identity)
        } else {
            let w = self.witness.as_ref().unwrap();
            write!(
                f,
                "{}: FAIL ({} at {:?}, defect [{}])",
                self.identity,
                w.equation,
                w.indices,
                w.defect
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        }
    }
}

/// Resolve the weight per the precedence rule: both present and different
/// is an error, not an override.
pub fn resolve_weight(
    a: &HomAlgebra,
    given: Option<&FieldElem>,
    identity: &str,
) -> Result<FieldElem, CheckError> {
    match (given, a.weight.as_ref()) {
        (Some(w), Some(aw)) => {
            if w.equals(aw) {
                Ok(w.clone())
            } else {
                Err(CheckError::ConflictingWeight)
            }
        }
        (Some(w), None) => Ok(w.clone()),
        (None, Some(aw)) => Ok(aw.clone()),
        (None, None) => Err(CheckError::MissingWeight(identity.to_string())),
    }
}

/// Signed Hom-associator sum over the subgroup G, on arbitrary vectors.
pub fn g_hom_assoc_defect(
    a: &HomAlgebra,
    op_name: &str,
    g: Subgroup,
    x: &[FieldElem],
    y: &[FieldElem],
    z: &[FieldElem],
) -> Result<Vec<FieldElem>, CheckError> {
    let op = a.product(op_name)?;
    g_hom_assoc_defect_op(a, op, g, x, y, z)
}

fn g_hom_assoc_defect_op(
    a: &HomAlgebra,
    op: &BilinearOp,
    g: Subgroup,
    x: &[FieldElem],
    y: &[FieldElem],
    z: &[FieldElem],
) -> Result<Vec<FieldElem>, CheckError> {
    let args = [x, y, z];
    let ctx = a.ctx();
    let mut acc = vec![FieldElem::zero(ctx); a.dim()];
    for (perm, sign) in g.elements() {
        let term = a.hom_associator_op(op, args[perm[0]], args[perm[1]], args[perm[2]])?;
        acc = if *sign > 0 {
            add_vec(&acc, &term)?
        } else {
            sub_vec(&acc, &term)?
        };
    }
    Ok(acc)
}

/// Rota-Baxter defect `R(x)·R(y) - R(R(x)·y + x·R(y) + λ x·y)`.
pub fn rota_baxter_defect(
    a: &HomAlgebra,
    op_name: &str,
    r_name: &str,
    weight: &FieldElem,
    x: &[FieldElem],
    y: &[FieldElem],
) -> Result<Vec<FieldElem>, CheckError> {
    let op = a.product(op_name)?;
    let r = a.operator(r_name)?;
    let rx = r.apply(x)?;
    let ry = r.apply(y)?;
    let lhs = op.apply(&rx, &ry)?;
    let inner = add_vec(
        &add_vec(&op.apply(&rx, y)?, &op.apply(x, &ry)?)?,
        &scale_vec(&op.apply(x, y)?, weight)?,
    )?;
    let rhs = r.apply(&inner)?;
    Ok(sub_vec(&lhs, &rhs)?)
}

/// Run one identity over all basis tuples; multilinearity makes basis
/// tuples sufficient. Witness selection is the lexicographically first
/// failing tuple.
pub fn check_identity(
    a: &HomAlgebra,
    identity: &Identity,
    params: &CheckParams,
) -> Result<CheckReport, CheckError> {
    let id = identity.id();
    match identity {
        Identity::SkewSymmetry => {
            let op = a.resolve_product(params.product.as_deref())?;
            check_pairs(a, &id, "x∘y + y∘x", |x, y| {
                Ok(add_vec(&op.apply(x, y)?, &op.apply(y, x)?)?)
            })
        }
        Identity::HomJacobi => {
            let op = a.resolve_product(params.product.as_deref())?;
            check_triples(a, &id, "cyclic [α(x),[y,z]]", |x, y, z| {
                let alpha = &a.module.alpha;
                let mut acc = op.apply(&alpha.apply(x)?, &op.apply(y, z)?)?;
                acc = add_vec(&acc, &op.apply(&alpha.apply(y)?, &op.apply(z, x)?)?)?;
                acc = add_vec(&acc, &op.apply(&alpha.apply(z)?, &op.apply(x, y)?)?)?;
                Ok(acc)
            })
        }
        Identity::GHomAssociative(g) => {
            let op = a.resolve_product(params.product.as_deref())?;
            check_triples(a, &id, "signed Hom-associator sum", |x, y, z| {
                g_hom_assoc_defect_op(a, op, *g, x, y, z)
            })
        }
        Identity::AssociativeClassical => {
            let op = a.resolve_product(params.product.as_deref())?;
            check_triples(a, &id, "(x∘y)∘z - x∘(y∘z)", |x, y, z| {
                Ok(sub_vec(
                    &op.apply(&op.apply(x, y)?, z)?,
                    &op.apply(x, &op.apply(y, z)?)?,
                )?)
            })
        }
        Identity::RotaBaxter => {
            let op = a.resolve_product(params.product.as_deref())?;
            let op_name = op.name.clone();
            let r_name = match &params.operator {
                Some(n) => n.clone(),
                None => {
                    a.resolve_operator(None)?;
                    a.operators.keys().next().unwrap().clone()
                }
            };
            a.operator(&r_name)?;
            let weight = resolve_weight(a, params.weight.as_ref(), &id)?;
            check_pairs(a, &id, "R(x)R(y) - R(R(x)y + xR(y) + λxy)", |x, y| {
                rota_baxter_defect(a, &op_name, &r_name, &weight, x, y)
            })
        }
        Identity::Multiplicative => {
            // alpha intertwines every product; for RB algebras additionally
            // alpha R = R alpha for every operator.
            let alpha = &a.module.alpha;
            for op in a.products.values() {
                let report = check_pairs(a, &id, "α(x∘y) - α(x)∘α(y)", |x, y| {
                    Ok(sub_vec(
                        &alpha.apply(&op.apply(x, y)?)?,
                        &op.apply(&alpha.apply(x)?, &alpha.apply(y)?)?,
                    )?)
                })?;
                if !report.pass {
                    return Ok(report);
                }
            }
            for (name, r) in &a.operators {
                let lhs = alpha.matmul(r)?;
                let rhs = r.matmul(alpha)?;
                for j in 0..a.dim() {
                    let defect: Vec<FieldElem> = (0..a.dim())
                        .map(|i| lhs.at(i, j).sub(rhs.at(i, j)))
                        .collect::<Result<_, _>>()?;
                    if !vec_is_zero(&defect) {
                        return Ok(CheckReport::fail(
                            id,
                            Witness {
                                indices: vec![j],
                                defect,
                                equation: format!("α∘{name} - {name}∘α"),
                            },
                        ));
                    }
                }
            }
            Ok(CheckReport::pass(id))
        }
        Identity::CentroidMember => {
            let op = a.resolve_product(params.product.as_deref())?;
            let beta_name = params
                .beta
                .clone()
                .or_else(|| params.operator.clone())
                .ok_or_else(|| AlgebraError::UnknownOperator("(centroid candidate)".into()))?;
            let beta = a.operator(&beta_name)?;
            let r1 = check_pairs(a, &id, "β(x∘y) - β(x)∘y", |x, y| {
                Ok(sub_vec(
                    &beta.apply(&op.apply(x, y)?)?,
                    &op.apply(&beta.apply(x)?, y)?,
                )?)
            })?;
            if !r1.pass {
                return Ok(r1);
            }
            check_pairs(a, &id, "β(x∘y) - x∘β(y)", |x, y| {
                Ok(sub_vec(
                    &beta.apply(&op.apply(x, y)?)?,
                    &op.apply(x, &beta.apply(y)?)?,
                )?)
            })
        }
        Identity::HomDendriform => {
            let (prec, succ) = dendriform_products(a, &id)?;
            check_dendriform(a, &id, prec, succ)
        }
        Identity::HomTridendriform => {
            let names: Vec<String> = ["prec", "succ", "dot"]
                .iter()
                .map(|s| s.to_string())
                .collect();
            if !names.iter().all(|n| a.products.contains_key(n)) {
                return Err(CheckError::MissingProducts(id, names));
            }
            check_tridendriform(a, &id)
        }
        Identity::HomLie => {
            let skew = check_identity(a, &Identity::SkewSymmetry, params)?;
            if !skew.pass {
                return Ok(CheckReport {
                    identity: id,
                    ..skew
                });
            }
            let jac = check_identity(a, &Identity::HomJacobi, params)?;
            Ok(CheckReport {
                identity: id,
                ..jac
            })
        }
    }
}

fn dendriform_products<'a>(
    a: &'a HomAlgebra,
    id: &str,
) -> Result<(&'a BilinearOp, &'a BilinearOp), CheckError> {
    match (a.products.get("prec"), a.products.get("succ")) {
        (Some(p), Some(s)) => Ok((p, s)),
        _ => Err(CheckError::MissingProducts(
            id.to_string(),
            vec!["prec".into(), "succ".into()],
        )),
    }
}

fn check_dendriform(
    a: &HomAlgebra,
    id: &str,
    prec: &BilinearOp,
    succ: &BilinearOp,
) -> Result<CheckReport, CheckError> {
    let alpha = &a.module.alpha;
    let axioms: [(&str, Box<DefectFn>); 3] = [
        (
            "(x≺y)≺α(z) = α(x)≺(y≺z + y≻z)",
            Box::new(|x, y, z| {
                let lhs = prec.apply(&prec.apply(x, y)?, &alpha.apply(z)?)?;
                let sum = add_vec(&prec.apply(y, z)?, &succ.apply(y, z)?)?;
                let rhs = prec.apply(&alpha.apply(x)?, &sum)?;
                Ok(sub_vec(&lhs, &rhs)?)
            }),
        ),
        (
            "(x≻y)≺α(z) = α(x)≻(y≺z)",
            Box::new(|x, y, z| {
                let lhs = prec.apply(&succ.apply(x, y)?, &alpha.apply(z)?)?;
                let rhs = succ.apply(&alpha.apply(x)?, &prec.apply(y, z)?)?;
                Ok(sub_vec(&lhs, &rhs)?)
            }),
        ),
        (
            "(x≺y + x≻y)≻α(z) = α(x)≻(y≻z)",
            Box::new(|x, y, z| {
                let sum = add_vec(&prec.apply(x, y)?, &succ.apply(x, y)?)?;
                let lhs = succ.apply(&sum, &alpha.apply(z)?)?;
                let rhs = succ.apply(&alpha.apply(x)?, &succ.apply(y, z)?)?;
                Ok(sub_vec(&lhs, &rhs)?)
            }),
        ),
    ];
    for (eq, f) in &axioms {
        let r = check_triples(a, id, eq, f)?;
        if !r.pass {
            return Ok(r);
        }
    }
    Ok(CheckReport::pass(id.to_string()))
}

fn check_tridendriform(a: &HomAlgebra, id: &str) -> Result<CheckReport, CheckError> {
    let prec = a.product("prec")?;
    let succ = a.product("succ")?;
    let dot = a.product("dot")?;
    let alpha = &a.module.alpha;
    let star = |x: &[FieldElem], y: &[FieldElem]| -> Result<Vec<FieldElem>, CheckError> {
        Ok(add_vec(
            &add_vec(&prec.apply(x, y)?, &succ.apply(x, y)?)?,
            &dot.apply(x, y)?,
        )?)
    };
    let axioms: [(&str, Box<DefectFn>); 7] = [
        (
            "(x≺y)≺α(z) = α(x)≺(y∗z)",
            Box::new(|x, y, z| {
                let lhs = prec.apply(&prec.apply(x, y)?, &alpha.apply(z)?)?;
                let rhs = prec.apply(&alpha.apply(x)?, &star(y, z)?)?;
                Ok(sub_vec(&lhs, &rhs)?)
            }),
        ),
        (
            "(x≻y)≺α(z) = α(x)≻(y≺z)",
            Box::new(|x, y, z| {
                let lhs = prec.apply(&succ.apply(x, y)?, &alpha.apply(z)?)?;
                let rhs = succ.apply(&alpha.apply(x)?, &prec.apply(y, z)?)?;
                Ok(sub_vec(&lhs, &rhs)?)
            }),
        ),
        (
            "α(x)≻(y≻z) = (x∗y)≻α(z)",
            Box::new(|x, y, z| {
                let lhs = succ.apply(&alpha.apply(x)?, &succ.apply(y, z)?)?;
                let rhs = succ.apply(&star(x, y)?, &alpha.apply(z)?)?;
                Ok(sub_vec(&lhs, &rhs)?)
            }),
        ),
        (
            "(x≺y)•α(z) = α(x)•(y≻z)",
            Box::new(|x, y, z| {
                let lhs = dot.apply(&prec.apply(x, y)?, &alpha.apply(z)?)?;
                let rhs = dot.apply(&alpha.apply(x)?, &succ.apply(y, z)?)?;
                Ok(sub_vec(&lhs, &rhs)?)
            }),
        ),
        (
            "(x≻y)•α(z) = α(x)≻(y•z)",
            Box::new(|x, y, z| {
                let lhs = dot.apply(&succ.apply(x, y)?, &alpha.apply(z)?)?;
                let rhs = succ.apply(&alpha.apply(x)?, &dot.apply(y, z)?)?;
                Ok(sub_vec(&lhs, &rhs)?)
            }),
        ),
        (
            "(x•y)≺α(z) = α(x)•(y≺z)",
            Box::new(|x, y, z| {
                let lhs = prec.apply(&dot.apply(x, y)?, &alpha.apply(z)?)?;
                let rhs = dot.apply(&alpha.apply(x)?, &prec.apply(y, z)?)?;
                Ok(sub_vec(&lhs, &rhs)?)
            }),
        ),
        (
            "(x•y)•α(z) = α(x)•(y•z)",
            Box::new(|x, y, z| {
                let lhs = dot.apply(&dot.apply(x, y)?, &alpha.apply(z)?)?;
                let rhs = dot.apply(&alpha.apply(x)?, &dot.apply(y, z)?)?;
                Ok(sub_vec(&lhs, &rhs)?)
            }),
        ),
    ];
    for (eq, f) in &axioms {
        let r = check_triples(a, id, eq, f)?;
        if !r.pass {
            return Ok(r);
        }
    }
    Ok(CheckReport::pass(id.to_string()))
}

type DefectFn<'a> =
    dyn Fn(&[FieldElem], &[FieldElem], &[FieldElem]) -> Result<Vec<FieldElem>, CheckError> + 'a;

fn check_triples(
    a: &HomAlgebra,
    id: &str,
    equation: &str,
    defect: impl Fn(&[FieldElem], &[FieldElem], &[FieldElem]) -> Result<Vec<FieldElem>, CheckError>,
) -> Result<CheckReport, CheckError> {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let d = defect(
                    &a.module.basis_vector(i),
                    &a.module.basis_vector(j),
                    &a.module.basis_vector(k),
                )?;
                if !vec_is_zero(&d) {
                    return Ok(CheckReport::fail(
                        id.to_string(),
                        Witness {
                            indices: vec![i, j, k],
                            defect: d,
                            equation: equation.to_string(),
                        },
                    ));
                }
            }
        }
    }
    Ok(CheckReport::pass(id.to_string()))
}

fn check_pairs(
    a: &HomAlgebra,
    id: &str,
    equation: &str,
    defect: impl Fn(&[FieldElem], &[FieldElem]) -> Result<Vec<FieldElem>, CheckError>,
) -> Result<CheckReport, CheckError> {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let d = defect(&a.module.basis_vector(i), &a.module.basis_vector(j))?;
            if !vec_is_zero(&d) {
                return Ok(CheckReport::fail(
                    id.to_string(),
                    Witness {
                        indices: vec![i, j],
                        defect: d,
                        equation: equation.to_string(),
                    },
                ));
            }
        }
    }
    Ok(CheckReport::pass(id.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BilinearOp, HomAlgebra, HomModule};
    use crate::coeff::{Context, FieldMatrix};

    fn zero_products_algebra(dim: usize) -> HomAlgebra {
        let ctx = Context::rational();
        let alpha = FieldMatrix::identity(&ctx, dim);
        let labels = (0..dim).map(|i| format!("e{}", i + 1)).collect();
        let module = HomModule::new(labels, alpha).unwrap();
        let mut a = HomAlgebra::new("zero", module);
        a.add_product(BilinearOp::zero(&ctx, "mul", dim)).unwrap();
        a
    }

    #[test]
    fn zero_products_pass_everything_ternary() {
        let a = zero_products_algebra(2);
        for g in Subgroup::ALL {
            let r = check_identity(
                &a,
                &Identity::GHomAssociative(g),
                &CheckParams::default(),
            )
            .unwrap();
            assert!(r.pass, "{:?}", g);
        }
        assert!(
            check_identity(&a, &Identity::HomJacobi, &CheckParams::default())
                .unwrap()
                .pass
        );
        assert!(
            check_identity(&a, &Identity::SkewSymmetry, &CheckParams::default())
                .unwrap()
                .pass
        );
    }

    #[test]
    fn g1_defect_is_the_associator() {
        let ctx = Context::new(["t"]);
        let alpha = FieldMatrix::identity(&ctx, 2);
        let module = HomModule::new(vec!["u".into(), "v".into()], alpha).unwrap();
        let mut a = HomAlgebra::new("t", module);
        let mut mul = BilinearOp::zero(&ctx, "mul", 2);
        *mul.coeff_mut(0, 0, 1) = FieldElem::var(&ctx, "t").unwrap();
        *mul.coeff_mut(1, 0, 0) = FieldElem::one(&ctx);
        a.add_product(mul).unwrap();
        let x = a.module.basis_vector(0);
        let d = g_hom_assoc_defect(&a, "mul", Subgroup::G1, &x, &x, &x).unwrap();
        let assoc = a.hom_associator("mul", &x, &x, &x).unwrap();
        assert!(d
            .iter()
            .zip(assoc.iter())
            .all(|(l, r)| l.equals(r)));
    }

    #[test]
    fn g2_defect_cancels_on_repeated_first_arguments() {
        let ctx = Context::new(["t"]);
        let alpha = FieldMatrix::identity(&ctx, 2);
        let module = HomModule::new(vec!["u".into(), "v".into()], alpha).unwrap();
        let mut a = HomAlgebra::new("t", module);
        let mut mul = BilinearOp::zero(&ctx, "mul", 2);
        *mul.coeff_mut(0, 0, 1) = FieldElem::var(&ctx, "t").unwrap();
        *mul.coeff_mut(0, 1, 0) = FieldElem::one(&ctx);
        *mul.coeff_mut(1, 1, 1) = FieldElem::one(&ctx);
        a.add_product(mul).unwrap();
        let x = a.module.basis_vector(0);
        let z = a.module.basis_vector(1);
        let d = g_hom_assoc_defect(&a, "mul", Subgroup::G2, &x, &x, &z).unwrap();
        assert!(vec_is_zero(&d));
    }

    #[test]
    fn one_dim_field_with_identity_rb_at_weight_minus_one() {
        // xy = product, R = Id, weight -1: xy = R(xy + xy - xy).
        let ctx = Context::rational();
        let alpha = FieldMatrix::identity(&ctx, 1);
        let module = HomModule::new(vec!["x".into()], alpha).unwrap();
        let mut a = HomAlgebra::new("k", module);
        let mut mul = BilinearOp::zero(&ctx, "mul", 1);
        *mul.coeff_mut(0, 0, 0) = FieldElem::one(&ctx);
        a.add_product(mul).unwrap();
        a.add_operator("R", FieldMatrix::identity(&ctx, 1)).unwrap();
        a.weight = Some(FieldElem::int(&ctx, -1));
        let r = check_identity(&a, &Identity::RotaBaxter, &CheckParams::default()).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn conflicting_weight_is_an_error() {
        let ctx = Context::rational();
        let alpha = FieldMatrix::identity(&ctx, 1);
        let module = HomModule::new(vec!["x".into()], alpha).unwrap();
        let mut a = HomAlgebra::new("k", module);
        let mut mul = BilinearOp::zero(&ctx, "mul", 1);
        *mul.coeff_mut(0, 0, 0) = FieldElem::one(&ctx);
        a.add_product(mul).unwrap();
        a.add_operator("R", FieldMatrix::identity(&ctx, 1)).unwrap();
        a.weight = Some(FieldElem::int(&ctx, -1));
        let params = CheckParams {
            weight: Some(FieldElem::zero(&ctx)),
            ..Default::default()
        };
        assert!(matches!(
            check_identity(&a, &Identity::RotaBaxter, &params),
            Err(CheckError::ConflictingWeight)
        ));
    }

    #[test]
    fn missing_operator_reported() {
        let a = zero_products_algebra(2);
        let mut p = CheckParams::default();
        p.weight = Some(FieldElem::zero(a.ctx()));
        p.operator = Some("R".into());
        assert!(check_identity(&a, &Identity::RotaBaxter, &p).is_err());
    }

    fn random_vectors(a: &HomAlgebra, seed: u64) -> Vec<Vec<FieldElem>> {
        // small deterministic pseudo-random integer vectors
        let ctx = a.ctx();
        let mut s = seed;
        let mut next = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 33) % 7) as i64 - 3
        };
        (0..3)
            .map(|_| (0..a.dim()).map(|_| FieldElem::int(ctx, next())).collect())
            .collect()
    }

    #[test]
    fn defects_are_multilinear_spot_check() {
        // basis-tuple verdicts agree with random-vector evaluation
        let ctx = Context::new(["t"]);
        let alpha = FieldMatrix::identity(&ctx, 2);
        let module = HomModule::new(vec!["u".into(), "v".into()], alpha).unwrap();
        let mut a = HomAlgebra::new("t", module);
        let mut mul = BilinearOp::zero(&ctx, "mul", 2);
        *mul.coeff_mut(0, 0, 0) = FieldElem::one(&ctx);
        *mul.coeff_mut(0, 1, 1) = FieldElem::one(&ctx);
        *mul.coeff_mut(1, 0, 1) = FieldElem::one(&ctx);
        a.add_product(mul).unwrap();
        // dual numbers are associative, alpha = Id, so every G passes;
        // random vectors must give zero defects too
        for g in Subgroup::ALL {
            let v = random_vectors(&a, 42 + g as u64);
            let d = g_hom_assoc_defect(&a, "mul", g, &v[0], &v[1], &v[2]).unwrap();
            assert!(vec_is_zero(&d), "{:?}", g);
        }
    }
}
