//! The construction catalog: every transformation that produces a new
//! Hom-algebra from an existing one (twists, Rota-Baxter weight
//! transforms, commutator brackets, the preLie / dendriform /
//! tridendriform products), each paired with its hypothesis checks.

use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{
    AlgebraError, BilinearOp, HomAlgebra, Morphism, Provenance,
};
use crate::checkers::{
    check_identity, resolve_weight, CheckError, CheckParams, CheckReport, Identity, Subgroup,
};
use crate::coeff::{CoeffError, FieldElem, FieldMatrix};

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("twisting map is not invertible")]
    AlphaNotInvertible,
    #[error("weight must be nonzero for rb_normalize")]
    ZeroWeight,
    #[error("construction `{0}` requires {1}")]
    MissingInput(String, String),
    #[error("unknown construction `{0}`")]
    UnknownConstruction(String),
    #[error("subspaces are not complementary")]
    NotComplementary,
    #[error("subspace is not closed under the product")]
    NotClosed,
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Fixed enumeration of the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    TwistByMorphism,
    PowerTwist,
    Untwist,
    CentroidTwist,
    RbNegateShift,
    RbNegate,
    RbNormalize,
    CommutatorBracket,
    RbToLeftPreLieW0,
    RbToLeftPreLieWm1,
    DendToAssoc,
    DendToLeftPreLie,
    DendToRightPreLie,
    TridendToAssoc,
    TridendToDend,
    RbToDend,
    RbToTridend,
    RbStar,
    Rtilde,
}

impl Construction {
    pub fn name(self) -> &'static str {
        match self {
            Construction::TwistByMorphism => "twist_by_morphism",
            Construction::PowerTwist => "power_twist",
            Construction::Untwist => "untwist",
            Construction::CentroidTwist => "centroid_twist",
            Construction::RbNegateShift => "rb_negate_shift",
            Construction::RbNegate => "rb_negate",
            Construction::RbNormalize => "rb_normalize",
            Construction::CommutatorBracket => "commutator",
            Construction::RbToLeftPreLieW0 => "rb_to_left_prelie_w0",
            Construction::RbToLeftPreLieWm1 => "rb_to_left_prelie_wm1",
            Construction::DendToAssoc => "dend_to_assoc",
            Construction::DendToLeftPreLie => "dend_to_left_prelie",
            Construction::DendToRightPreLie => "dend_to_right_prelie",
            Construction::TridendToAssoc => "tridend_to_assoc",
            Construction::TridendToDend => "tridend_to_dend",
            Construction::RbToDend => "rb_to_dend",
            Construction::RbToTridend => "rb_to_tridend",
            Construction::RbStar => "rb_star",
            Construction::Rtilde => "rtilde",
        }
    }
}

impl FromStr for Construction {
    type Err = ConstructError;
    fn from_str(s: &str) -> Result<Self, ConstructError> {
        use Construction::*;
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "twist_by_morphism" => Ok(TwistByMorphism),
            "power_twist" => Ok(PowerTwist),
            "untwist" => Ok(Untwist),
            "centroid_twist" => Ok(CentroidTwist),
            "rb_negate_shift" => Ok(RbNegateShift),
            "rb_negate" => Ok(RbNegate),
            "rb_normalize" => Ok(RbNormalize),
            "commutator" | "commutator_bracket" => Ok(CommutatorBracket),
            "rb_to_left_prelie_w0" => Ok(RbToLeftPreLieW0),
            "rb_to_left_prelie_wm1" => Ok(RbToLeftPreLieWm1),
            "dend_to_assoc" => Ok(DendToAssoc),
            "dend_to_left_prelie" => Ok(DendToLeftPreLie),
            "dend_to_right_prelie" => Ok(DendToRightPreLie),
            "tridend_to_assoc" => Ok(TridendToAssoc),
            "tridend_to_dend" => Ok(TridendToDend),
            "rb_to_dend" => Ok(RbToDend),
            "rb_to_tridend" => Ok(RbToTridend),
            "rb_star" => Ok(RbStar),
            "rtilde" => Ok(Rtilde),
            other => Err(ConstructError::UnknownConstruction(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ConstructParams {
    pub product: Option<String>,
    pub operator: Option<String>,
    /// Morphism / centroid candidate (an operator name on the algebra).
    pub beta: Option<String>,
    pub n: u32,
    pub m: u32,
    pub weight: Option<FieldElem>,
}

/// Build a product tensor from a bilinear rule evaluated on basis pairs.
fn tensor_from_rule(
    a: &HomAlgebra,
    name: &str,
    rule: impl Fn(&[FieldElem], &[FieldElem]) -> Result<Vec<FieldElem>, ConstructError>,
) -> Result<BilinearOp, ConstructError> {
    let dim = a.dim();
    let mut op = BilinearOp::zero(a.ctx(), name, dim);
    for i in 0..dim {
        for j in 0..dim {
            let v = rule(&a.module.basis_vector(i), &a.module.basis_vector(j))?;
            for k in 0..dim {
                *op.coeff_mut(i, j, k) = v[k].clone();
            }
        }
    }
    Ok(op)
}

fn require_pass(report: CheckReport) -> Result<(), ConstructError> {
    if report.pass {
        Ok(())
    } else {
        Err(ConstructError::HypothesisFailed(report.to_string()))
    }
}

fn commutes(a: &FieldMatrix, b: &FieldMatrix) -> Result<bool, ConstructError> {
    Ok(a.matmul(b)?.equals(&b.matmul(a)?))
}

/// Check that beta intertwines every product, commutes with alpha, and
/// commutes with every operator: the morphism hypothesis of the twist
/// theorem.
fn check_morphism_hypothesis(a: &HomAlgebra, beta: &FieldMatrix) -> Result<(), ConstructError> {
    let pairs: Vec<(String, String)> = a
        .products
        .keys()
        .map(|k| (k.clone(), k.clone()))
        .collect();
    let op_pairs: Vec<(String, String)> = a
        .operators
        .keys()
        .map(|k| (k.clone(), k.clone()))
        .collect();
    let m = Morphism {
        source: a,
        target: a,
        matrix: beta.clone(),
    };
    if let Some(v) = m.check(&pairs, true, &op_pairs)? {
        return Err(ConstructError::HypothesisFailed(v.to_string()));
    }
    Ok(())
}

fn fresh(
    a: &HomAlgebra,
    construction: Construction,
    params: &[(String, String)],
) -> HomAlgebra {
    let mut out = a.clone();
    out.name = format!("{}({})", construction.name(), a.name);
    out.provenance = Some(Provenance {
        construction: construction.name().to_string(),
        source: a.name.clone(),
        params: params.to_vec(),
    });
    out
}

/// Run a catalog construction. With `verify_hypotheses`, the entry's
/// hypothesis checks run first (failures abort) and the conclusion
/// identity of the theorem is checked on the output and recorded in its
/// provenance.
pub fn construct(
    a: &HomAlgebra,
    c: Construction,
    params: &ConstructParams,
    verify_hypotheses: bool,
) -> Result<HomAlgebra, ConstructError> {
    let mut out = match c {
        Construction::TwistByMorphism => {
            let beta_name = params.beta.clone().ok_or_else(|| {
                ConstructError::MissingInput(c.name().into(), "a --beta operator".into())
            })?;
            let beta = a.operator(&beta_name)?.clone();
            if verify_hypotheses {
                check_morphism_hypothesis(a, &beta)?;
            }
            let mut out = fresh(a, c, &[("beta".into(), beta_name)]);
            for (name, op) in &a.products {
                out.products.insert(name.clone(), op.post_compose(&beta)?);
            }
            out.module.alpha = beta.matmul(&a.module.alpha)?;
            out
        }
        Construction::PowerTwist => {
            let n = params.n.max(1);
            if verify_hypotheses {
                require_pass(check_identity(
                    a,
                    &Identity::Multiplicative,
                    &CheckParams::default(),
                )?)?;
            }
            let alpha_n = a.module.alpha.pow(n)?;
            let mut out = fresh(a, c, &[("n".into(), n.to_string())]);
            for (name, op) in &a.products {
                out.products.insert(name.clone(), op.post_compose(&alpha_n)?);
            }
            out.module.alpha = a.module.alpha.pow(n + 1)?;
            out
        }
        Construction::Untwist => {
            let alpha_inv = a
                .module
                .alpha
                .inverse()
                .map_err(|_| ConstructError::AlphaNotInvertible)?;
            if verify_hypotheses {
                require_pass(check_identity(
                    a,
                    &Identity::Multiplicative,
                    &CheckParams::default(),
                )?)?;
            }
            let mut out = fresh(a, c, &[]);
            for (name, op) in &a.products {
                out.products
                    .insert(name.clone(), op.post_compose(&alpha_inv)?);
            }
            out.module.alpha = FieldMatrix::identity(a.ctx(), a.dim());
            out
        }
        Construction::CentroidTwist => {
            let beta_name = params.beta.clone().ok_or_else(|| {
                ConstructError::MissingInput(c.name().into(), "a --beta operator".into())
            })?;
            let beta = a.operator(&beta_name)?.clone();
            if verify_hypotheses {
                let p = CheckParams {
                    product: params.product.clone(),
                    beta: Some(beta_name.clone()),
                    ..Default::default()
                };
                require_pass(check_identity(a, &Identity::CentroidMember, &p)?)?;
                for r in a.operators.values() {
                    if !commutes(&beta, r)? {
                        return Err(ConstructError::HypothesisFailed(
                            "beta does not commute with the Rota-Baxter operator".into(),
                        ));
                    }
                }
            }
            let beta_n = beta.pow(params.n)?;
            let mut out = fresh(
                a,
                c,
                &[
                    ("beta".into(), beta_name),
                    ("n".into(), params.n.to_string()),
                    ("m".into(), params.m.to_string()),
                ],
            );
            for (name, op) in &a.products {
                out.products.insert(name.clone(), op.post_compose(&beta_n)?);
            }
            out.module.alpha = beta.pow(params.m)?;
            out
        }
        Construction::RbNegateShift => {
            let weight = resolve_weight(a, params.weight.as_ref(), c.name())?;
            let (r_name, r) = named_operator(a, params)?;
            if verify_hypotheses {
                let op = a.resolve_product(params.product.as_deref())?;
                rota_baxter_hypothesis(a, &op.name.clone(), &r_name, &weight)?;
            }
            let shifted = r
                .neg()
                .add(&FieldMatrix::identity(a.ctx(), a.dim()).scale(&weight.neg())?)?;
            let mut out = fresh(a, c, &[("operator".into(), r_name.clone())]);
            out.operators.insert(r_name, shifted);
            out.weight = Some(weight);
            out
        }
        Construction::RbNegate => {
            let weight = resolve_weight(a, params.weight.as_ref(), c.name())?;
            let (r_name, r) = named_operator(a, params)?;
            if verify_hypotheses {
                let op = a.resolve_product(params.product.as_deref())?;
                rota_baxter_hypothesis(a, &op.name.clone(), &r_name, &weight)?;
            }
            let mut out = fresh(a, c, &[("operator".into(), r_name.clone())]);
            out.operators.insert(r_name, r.neg());
            out.weight = Some(weight.neg());
            out
        }
        Construction::RbNormalize => {
            let weight = resolve_weight(a, params.weight.as_ref(), c.name())?;
            if weight.is_zero() {
                return Err(ConstructError::ZeroWeight);
            }
            let (r_name, r) = named_operator(a, params)?;
            if verify_hypotheses {
                let op = a.resolve_product(params.product.as_deref())?;
                rota_baxter_hypothesis(a, &op.name.clone(), &r_name, &weight)?;
            }
            let mut out = fresh(a, c, &[("operator".into(), r_name.clone())]);
            out.operators.insert(r_name, r.scale(&weight.inv()?)?);
            out.weight = Some(FieldElem::one(a.ctx()));
            out
        }
        Construction::CommutatorBracket => {
            let op = a.resolve_product(params.product.as_deref())?;
            let bracket = op.commutator("bracket")?;
            let src = op.name.clone();
            let mut out = fresh(a, c, &[("product".into(), src)]);
            out.products.clear();
            out.products.insert("bracket".into(), bracket);
            out.kind_hints = vec!["lie-like".into()];
            out
        }
        Construction::RbToLeftPreLieW0 => {
            let op = a.resolve_product(params.product.as_deref())?.clone();
            let (r_name, r) = named_operator(a, params)?;
            if verify_hypotheses {
                let weight = resolve_weight(a, params.weight.as_ref(), c.name())?;
                if !weight.is_zero() {
                    return Err(ConstructError::HypothesisFailed(
                        "rb_to_left_prelie_w0 requires weight 0".into(),
                    ));
                }
                if !commutes(&a.module.alpha, &r)? {
                    return Err(ConstructError::HypothesisFailed("αR ≠ Rα".into()));
                }
                let p = CheckParams {
                    product: Some(op.name.clone()),
                    ..Default::default()
                };
                require_pass(check_identity(
                    a,
                    &Identity::GHomAssociative(Subgroup::G6),
                    &p,
                )?)?;
                rota_baxter_hypothesis(a, &op.name, &r_name, &weight)?;
            }
            let star = tensor_from_rule(a, "star", |x, y| {
                let rx = r.apply(x)?;
                Ok(crate::algebra::sub_vec(
                    &op.apply(&rx, y)?,
                    &op.apply(y, &rx)?,
                )?)
            })?;
            let mut out = fresh(a, c, &[("operator".into(), r_name)]);
            out.products.clear();
            out.products.insert("star".into(), star);
            out.kind_hints = vec!["left-prelie".into()];
            out
        }
        Construction::RbToLeftPreLieWm1 => {
            let op = a.resolve_product(params.product.as_deref())?.clone();
            let (r_name, r) = named_operator(a, params)?;
            if verify_hypotheses {
                let weight = resolve_weight(a, params.weight.as_ref(), c.name())?;
                if !weight.equals(&FieldElem::int(a.ctx(), -1)) {
                    return Err(ConstructError::HypothesisFailed(
                        "rb_to_left_prelie_wm1 requires weight -1".into(),
                    ));
                }
                if !commutes(&a.module.alpha, &r)? {
                    return Err(ConstructError::HypothesisFailed("αR ≠ Rα".into()));
                }
                let p = CheckParams {
                    product: Some(op.name.clone()),
                    ..Default::default()
                };
                require_pass(check_identity(
                    a,
                    &Identity::GHomAssociative(Subgroup::G1),
                    &p,
                )?)?;
                rota_baxter_hypothesis(a, &op.name, &r_name, &weight)?;
            }
            let star = tensor_from_rule(a, "star", |x, y| {
                let rx = r.apply(x)?;
                let d = crate::algebra::sub_vec(&op.apply(&rx, y)?, &op.apply(y, &rx)?)?;
                Ok(crate::algebra::sub_vec(&d, &op.apply(x, y)?)?)
            })?;
            let mut out = fresh(a, c, &[("operator".into(), r_name)]);
            out.products.clear();
            out.products.insert("star".into(), star);
            out.kind_hints = vec!["left-prelie".into()];
            out
        }
        Construction::DendToAssoc => {
            let prec = a.product("prec")?;
            let succ = a.product("succ")?;
            let star = prec.add(succ, "star")?;
            let mut out = fresh(a, c, &[]);
            out.products.clear();
            out.products.insert("star".into(), star);
            out.kind_hints = vec!["associative-like".into()];
            out
        }
        Construction::DendToLeftPreLie => {
            let prec = a.product("prec")?.clone();
            let succ = a.product("succ")?.clone();
            let rhd = tensor_from_rule(a, "rhd", |x, y| {
                Ok(crate::algebra::sub_vec(
                    &succ.apply(x, y)?,
                    &prec.apply(y, x)?,
                )?)
            })?;
            let mut out = fresh(a, c, &[]);
            out.products.clear();
            out.products.insert("rhd".into(), rhd);
            out.kind_hints = vec!["left-prelie".into()];
            out
        }
        Construction::DendToRightPreLie => {
            let prec = a.product("prec")?.clone();
            let succ = a.product("succ")?.clone();
            let lhd = tensor_from_rule(a, "lhd", |x, y| {
                Ok(crate::algebra::sub_vec(
                    &prec.apply(x, y)?,
                    &succ.apply(y, x)?,
                )?)
            })?;
            let mut out = fresh(a, c, &[]);
            out.products.clear();
            out.products.insert("lhd".into(), lhd);
            out.kind_hints = vec!["right-prelie".into()];
            out
        }
        Construction::TridendToAssoc => {
            let star = a
                .product("prec")?
                .add(a.product("succ")?, "star")?
                .add(a.product("dot")?, "star")?;
            let mut out = fresh(a, c, &[]);
            out.products.clear();
            out.products.insert("star".into(), star);
            out.kind_hints = vec!["associative-like".into()];
            out
        }
        Construction::TridendToDend => {
            let prec = a.product("prec")?.clone();
            let succ = a.product("succ")?.clone();
            let mut out = fresh(a, c, &[]);
            out.products.clear();
            out.products.insert("prec".into(), prec);
            out.products.insert("succ".into(), succ);
            out.kind_hints = vec!["dendriform".into()];
            out
        }
        Construction::RbToDend => {
            let op = a.resolve_product(params.product.as_deref())?.clone();
            let (r_name, r) = named_operator(a, params)?;
            let weight = resolve_weight(a, params.weight.as_ref(), c.name())?;
            if verify_hypotheses {
                rb_to_dend_hypotheses(a, &op.name, &r_name, &r, &weight, c)?;
            }
            let prec = tensor_from_rule(a, "prec", |x, y| {
                let t = op.apply(x, &r.apply(y)?)?;
                Ok(crate::algebra::add_vec(
                    &t,
                    &crate::algebra::scale_vec(&op.apply(x, y)?, &weight)?,
                )?)
            })?;
            let succ = tensor_from_rule(a, "succ", |x, y| Ok(op.apply(&r.apply(x)?, y)?))?;
            let mut out = fresh(a, c, &[("operator".into(), r_name)]);
            out.products.clear();
            out.products.insert("prec".into(), prec);
            out.products.insert("succ".into(), succ);
            out.kind_hints = vec!["dendriform".into()];
            out
        }
        Construction::RbToTridend => {
            let op = a.resolve_product(params.product.as_deref())?.clone();
            let (r_name, r) = named_operator(a, params)?;
            let weight = resolve_weight(a, params.weight.as_ref(), c.name())?;
            if verify_hypotheses {
                rb_to_dend_hypotheses(a, &op.name, &r_name, &r, &weight, c)?;
            }
            let prec = tensor_from_rule(a, "prec", |x, y| Ok(op.apply(x, &r.apply(y)?)?))?;
            let succ = tensor_from_rule(a, "succ", |x, y| Ok(op.apply(&r.apply(x)?, y)?))?;
            let dot = tensor_from_rule(a, "dot", |x, y| {
                Ok(crate::algebra::scale_vec(&op.apply(x, y)?, &weight)?)
            })?;
            let mut out = fresh(a, c, &[("operator".into(), r_name)]);
            out.products.clear();
            out.products.insert("prec".into(), prec);
            out.products.insert("succ".into(), succ);
            out.products.insert("dot".into(), dot);
            out.kind_hints = vec!["tridendriform".into()];
            out
        }
        Construction::RbStar => {
            let op = a.resolve_product(params.product.as_deref())?.clone();
            let (r_name, r) = named_operator(a, params)?;
            let weight = resolve_weight(a, params.weight.as_ref(), c.name())?;
            if verify_hypotheses {
                rb_to_dend_hypotheses(a, &op.name, &r_name, &r, &weight, c)?;
            }
            let star = tensor_from_rule(a, "star", |x, y| {
                let t = crate::algebra::add_vec(
                    &op.apply(x, &r.apply(y)?)?,
                    &op.apply(&r.apply(x)?, y)?,
                )?;
                Ok(crate::algebra::add_vec(
                    &t,
                    &crate::algebra::scale_vec(&op.apply(x, y)?, &weight)?,
                )?)
            })?;
            let mut out = fresh(a, c, &[("operator".into(), r_name)]);
            out.products.clear();
            out.products.insert("star".into(), star);
            out.kind_hints = vec!["associative-like".into()];
            out
        }
        Construction::Rtilde => {
            let weight = resolve_weight(a, params.weight.as_ref(), c.name())?;
            let (r_name, r) = named_operator(a, params)?;
            if verify_hypotheses {
                let op = a.resolve_product(params.product.as_deref())?;
                rota_baxter_hypothesis(a, &op.name.clone(), &r_name, &weight)?;
            }
            let rtilde = FieldMatrix::identity(a.ctx(), a.dim())
                .scale(&weight.neg())?
                .add(&r.neg())?;
            let mut out = fresh(a, c, &[("operator".into(), r_name)]);
            out.operators.insert("Rtilde".into(), rtilde);
            out
        }
    };

    if verify_hypotheses {
        if let Some(report) = conclusion_check(&out, c, params)? {
            if let Some(p) = out.provenance.as_mut() {
                p.params.push((
                    "conclusion".into(),
                    format!("{}: {}", report.identity, if report.pass { "pass" } else { "fail" }),
                ));
            }
        }
    }
    Ok(out)
}

fn named_operator(
    a: &HomAlgebra,
    params: &ConstructParams,
) -> Result<(String, FieldMatrix), ConstructError> {
    match &params.operator {
        Some(n) => Ok((n.clone(), a.operator(n)?.clone())),
        None => {
            let r = a.resolve_operator(None)?.clone();
            let name = a.operators.keys().next().unwrap().clone();
            Ok((name, r))
        }
    }
}

/// Shared hypothesis block of the adjunction theorems: Hom-associative
/// Rota-Baxter input with αR = Rα.
fn rb_to_dend_hypotheses(
    a: &HomAlgebra,
    op_name: &str,
    r_name: &str,
    r: &FieldMatrix,
    weight: &FieldElem,
    c: Construction,
) -> Result<(), ConstructError> {
    if !commutes(&a.module.alpha, r)? {
        return Err(ConstructError::HypothesisFailed(format!(
            "{} requires αR = Rα",
            c.name()
        )));
    }
    let p = CheckParams {
        product: Some(op_name.to_string()),
        ..Default::default()
    };
    require_pass(check_identity(
        a,
        &Identity::GHomAssociative(Subgroup::G1),
        &p,
    )?)?;
    rota_baxter_hypothesis(a, op_name, r_name, weight)
}

fn rota_baxter_hypothesis(
    a: &HomAlgebra,
    op_name: &str,
    r_name: &str,
    weight: &FieldElem,
) -> Result<(), ConstructError> {
    let p = CheckParams {
        product: Some(op_name.to_string()),
        operator: Some(r_name.to_string()),
        weight: Some(weight.clone()),
        ..Default::default()
    };
    require_pass(check_identity(a, &Identity::RotaBaxter, &p)?)
}

/// The conclusion identity the construction's theorem promises for its
/// output, when one is defined.
fn conclusion_check(
    out: &HomAlgebra,
    c: Construction,
    params: &ConstructParams,
) -> Result<Option<CheckReport>, ConstructError> {
    let p = CheckParams {
        weight: params.weight.clone(),
        ..Default::default()
    };
    let report = match c {
        Construction::RbToDend => Some(check_identity(out, &Identity::HomDendriform, &p)?),
        Construction::RbToTridend => {
            Some(check_identity(out, &Identity::HomTridendriform, &p)?)
        }
        Construction::DendToAssoc | Construction::TridendToAssoc | Construction::RbStar => {
            Some(check_identity(
                out,
                &Identity::GHomAssociative(Subgroup::G1),
                &p,
            )?)
        }
        Construction::DendToLeftPreLie
        | Construction::RbToLeftPreLieW0
        | Construction::RbToLeftPreLieWm1 => Some(check_identity(
            out,
            &Identity::GHomAssociative(Subgroup::G2),
            &p,
        )?),
        Construction::DendToRightPreLie => Some(check_identity(
            out,
            &Identity::GHomAssociative(Subgroup::G3),
            &p,
        )?),
        Construction::CommutatorBracket => {
            Some(check_identity(out, &Identity::SkewSymmetry, &p)?)
        }
        Construction::RbNegateShift
        | Construction::RbNegate
        | Construction::RbNormalize => {
            // weight on the output is already the conclusion weight
            let p2 = CheckParams {
                operator: params.operator.clone(),
                ..Default::default()
            };
            if out.products.len() == 1 && (params.operator.is_some() || out.operators.len() == 1)
            {
                Some(check_identity(out, &Identity::RotaBaxter, &p2)?)
            } else {
                None
            }
        }
        _ => None,
    };
    Ok(report)
}

/// Commutator Hom-Lie algebra of the named product.
pub fn commutator_hom_lie(a: &HomAlgebra, op_name: &str) -> Result<HomAlgebra, ConstructError> {
    let params = ConstructParams {
        product: Some(op_name.to_string()),
        ..Default::default()
    };
    construct(a, Construction::CommutatorBracket, &params, false)
}

/// Projection onto `span(basis1)` along `span(basis2)`: a standard
/// weight -1 Rota-Baxter operator when both subspaces are subalgebras.
/// Verifies closure of each subspace under the product and that the two
/// jointly span the whole algebra.
pub fn build_projection_rb(
    a: &HomAlgebra,
    op_name: &str,
    basis1: &[Vec<FieldElem>],
    basis2: &[Vec<FieldElem>],
) -> Result<FieldMatrix, ConstructError> {
    let dim = a.dim();
    let ctx = a.ctx();
    if basis1.len() + basis2.len() != dim {
        return Err(ConstructError::NotComplementary);
    }
    let op = a.product(op_name)?;

    // closure of each subspace under the product
    for basis in [basis1, basis2] {
        if basis.is_empty() {
            continue;
        }
        let mut span = FieldMatrix::zero(ctx, dim, basis.len());
        for (j, v) in basis.iter().enumerate() {
            for i in 0..dim {
                *span.at_mut(i, j) = v[i].clone();
            }
        }
        for u in basis {
            for v in basis {
                let uv = op.apply(u, v)?;
                span.solve(&uv).map_err(|_| ConstructError::NotClosed)?;
            }
        }
    }

    // joint span: columns basis1 then basis2 must be invertible
    let mut b = FieldMatrix::zero(ctx, dim, dim);
    for (j, v) in basis1.iter().chain(basis2.iter()).enumerate() {
        for i in 0..dim {
            *b.at_mut(i, j) = v[i].clone();
        }
    }
    let b_inv = b.inverse().map_err(|_| ConstructError::NotComplementary)?;
    let mut diag = FieldMatrix::zero(ctx, dim, dim);
    for j in 0..basis1.len() {
        *diag.at_mut(j, j) = FieldElem::one(ctx);
    }
    Ok(b.matmul(&diag)?.matmul(&b_inv)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BilinearOp, HomAlgebra, HomModule};
    use crate::coeff::Context;

    /// 1-dim field algebra with R = Id at weight -1.
    fn one_dim() -> HomAlgebra {
        let ctx = Context::rational();
        let module =
            HomModule::new(vec!["x".into()], FieldMatrix::identity(&ctx, 1)).unwrap();
        let mut a = HomAlgebra::new("k", module);
        let mut mul = BilinearOp::zero(&ctx, "mul", 1);
        *mul.coeff_mut(0, 0, 0) = FieldElem::one(&ctx);
        a.add_product(mul).unwrap();
        a.add_operator("R", FieldMatrix::identity(&ctx, 1)).unwrap();
        a.weight = Some(FieldElem::int(&ctx, -1));
        a
    }

    #[test]
    fn rb_negate_shift_on_one_dim() {
        // R' = -Id + Id = 0, and (K, xy, 0) passes rota_baxter at λ=-1
        let a = one_dim();
        let out = construct(
            &a,
            Construction::RbNegateShift,
            &ConstructParams::default(),
            true,
        )
        .unwrap();
        assert!(out.operator("R").unwrap().is_zero());
        let r = check_identity(&out, &Identity::RotaBaxter, &CheckParams::default()).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn commutator_of_commutative_product_is_zero() {
        let a = one_dim();
        let out = commutator_hom_lie(&a, "mul").unwrap();
        assert!(out.product("bracket").unwrap().is_zero());
    }

    #[test]
    fn dend_then_assoc_equals_star() {
        // dend_to_assoc ∘ rb_to_dend = rb_star as tensors
        let a = one_dim();
        let dend = construct(&a, Construction::RbToDend, &ConstructParams::default(), false)
            .unwrap();
        let assoc = construct(
            &dend,
            Construction::DendToAssoc,
            &ConstructParams::default(),
            false,
        )
        .unwrap();
        let star = construct(&a, Construction::RbStar, &ConstructParams::default(), false)
            .unwrap();
        assert!(assoc
            .product("star")
            .unwrap()
            .equals(star.product("star").unwrap()));
    }

    #[test]
    fn untwist_requires_invertible_alpha() {
        let ctx = Context::rational();
        let module =
            HomModule::new(vec!["x".into()], FieldMatrix::zero(&ctx, 1, 1)).unwrap();
        let mut a = HomAlgebra::new("s", module);
        let mul = BilinearOp::zero(&ctx, "mul", 1);
        a.add_product(mul).unwrap();
        assert!(matches!(
            construct(&a, Construction::Untwist, &ConstructParams::default(), false),
            Err(ConstructError::AlphaNotInvertible)
        ));
    }

    #[test]
    fn rb_normalize_rejects_zero_weight() {
        let mut a = one_dim();
        a.weight = Some(FieldElem::zero(a.ctx()));
        assert!(matches!(
            construct(&a, Construction::RbNormalize, &ConstructParams::default(), false),
            Err(ConstructError::ZeroWeight)
        ));
    }

    #[test]
    fn projection_edge_cases() {
        let a = one_dim();
        let e = a.module.basis_vector(0);
        // subspace_2 = 0 -> projection = Id
        let p = build_projection_rb(&a, "mul", &[e.clone()], &[]).unwrap();
        assert!(p.is_identity());
        // subspace_1 = 0 -> zero map
        let p = build_projection_rb(&a, "mul", &[], &[e]).unwrap();
        assert!(p.is_zero());
    }
}
