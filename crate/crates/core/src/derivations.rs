//! The classified derivations, their action, Leibniz verification, and lifts
//! to the central extension.
//!
//! Degree-0 outer families on the centerless algebra:
//!
//!   phi:       L_a -> a I_a,          I_a -> 0
//!   psi:       L_a -> 0,              I_a -> I_a
//!   sigma_0:   L_a -> I_a             (lambda = 0)
//!   sigma_-1:  L_a -> a^2 I_a         (lambda = -1)
//!   sigma_-2:  L_a -> a^3 I_a         (lambda = -2)
//!   xi_A:      L_a -> A(a) L_a,       I_a -> A(a) I_a
//!   eta_{A,1}: L_a -> A(a) I_a        (lambda = 1)
//!
//! plus the inner derivations ad L_b, ad I_b of any variant. For
//! lambda not in {0, -1} every derivation extends uniquely to the central
//! cover; the extension fixes the non-central action and kills the center,
//! except that the psi family is forced to fix the L-against-I charge at
//! lambda in {1, -2}. At lambda = 0 the extensions form the two-parameter
//! families exposed below.

use crate::algebra::{bracket, BasisKey, Element, Report};
use crate::error::{HvError, Result};
use crate::grading::{AlgebraContext, GroupElem, Variant};
use crate::scalars::Scalar;

/// Additive group homomorphism G -> C, determined by its values on the
/// lattice basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AddHom {
    values: Vec<Scalar>,
}

impl AddHom {
    pub fn new(values: Vec<Scalar>) -> AddHom {
        AddHom { values }
    }

    pub fn zero(rank: usize, nvars: usize) -> AddHom {
        AddHom {
            values: vec![Scalar::zero(nvars); rank],
        }
    }

    /// The inclusion G -> C itself: eps_i -> value(eps_i).
    pub fn embedding(ctx: &AlgebraContext) -> AddHom {
        let values = (1..=ctx.rank())
            .map(|i| ctx.value(&GroupElem::basis(i, ctx.rank())).unwrap())
            .collect();
        AddHom { values }
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn eval(&self, a: &GroupElem) -> Result<Scalar> {
        if a.rank() != self.values.len() {
            return Err(HvError::RankMismatch {
                expected: self.values.len(),
                got: a.rank(),
            });
        }
        let nvars = self.values[0].nvars();
        let mut acc = Scalar::zero(nvars);
        for (i, &c) in a.0.iter().enumerate() {
            if c != 0 {
                acc = acc.add(&self.values[i].scale_rat(&crate::scalars::rat(c, 1)));
            }
        }
        Ok(acc)
    }

    pub fn add(&self, other: &AddHom) -> AddHom {
        AddHom {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> AddHom {
        AddHom {
            values: self.values.iter().map(|v| v.mul(s)).collect(),
        }
    }

    pub fn neg(&self) -> AddHom {
        AddHom {
            values: self.values.iter().map(|v| v.neg()).collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DerivationDescriptor {
    Phi,
    Psi,
    Sigma0,
    SigmaM1,
    SigmaM2,
    Xi(AddHom),
    Eta1(AddHom),
    AdL(GroupElem),
    AdI(GroupElem),
    /// Unique extension of a degree-0 outer family to the central cover
    /// (lambda not in {0, -1}).
    LiftedTrivial(Box<DerivationDescriptor>),
    /// Extensions at lambda = 0.
    LiftPhiBar,
    LiftSigma0Bar,
    LiftXiBar {
        hom: AddHom,
        l: Scalar,
        k: Scalar,
    },
    LiftPsiBar {
        l: Scalar,
        k: Scalar,
    },
}

fn require_variant(ctx: &AlgebraContext, expected: Variant, name: &'static str) -> Result<()> {
    if ctx.variant() != expected {
        return Err(HvError::VariantMismatch {
            expected: match expected {
                Variant::Plain => "plain",
                Variant::Extended => "extended",
                Variant::DerivedPrime => "derived-prime",
            },
            got: format!("{} (required by {name})", ctx.variant()),
        });
    }
    Ok(())
}

fn require_lambda(ctx: &AlgebraContext, c: i64, name: &str) -> Result<()> {
    if !ctx.delta_lambda_int(c) {
        return Err(HvError::GateViolation(format!(
            "{name} requires lambda = {c}, context has lambda = {}",
            ctx.lambda()
        )));
    }
    Ok(())
}

fn gate(ctx: &AlgebraContext, d: &DerivationDescriptor) -> Result<()> {
    use DerivationDescriptor::*;
    match d {
        Phi | Psi | Xi(_) => require_variant(ctx, Variant::Plain, "this outer family"),
        Sigma0 => {
            require_variant(ctx, Variant::Plain, "sigma_0")?;
            require_lambda(ctx, 0, "sigma_0")
        }
        SigmaM1 => {
            require_variant(ctx, Variant::Plain, "sigma_-1")?;
            require_lambda(ctx, -1, "sigma_-1")
        }
        SigmaM2 => {
            require_variant(ctx, Variant::Plain, "sigma_-2")?;
            require_lambda(ctx, -2, "sigma_-2")
        }
        Eta1(_) => {
            require_variant(ctx, Variant::Plain, "eta_1")?;
            require_lambda(ctx, 1, "eta_1")
        }
        AdL(a) => ctx.key_valid(&BasisKey::L(a.clone())),
        AdI(a) => ctx.key_valid(&BasisKey::I(a.clone())),
        LiftedTrivial(inner) => {
            require_variant(ctx, Variant::Extended, "the trivial lift")?;
            if ctx.delta_lambda_int(0) {
                return Err(HvError::GateViolation(
                    "lambda = 0 lifts are the explicit two-parameter families".into(),
                ));
            }
            match inner.as_ref() {
                Phi | Psi | Xi(_) => Ok(()),
                SigmaM2 => require_lambda(ctx, -2, "sigma_-2"),
                Eta1(_) => require_lambda(ctx, 1, "eta_1"),
                other => Err(HvError::GateViolation(format!(
                    "{other:?} has no trivial lift"
                ))),
            }
        }
        LiftPhiBar | LiftSigma0Bar | LiftXiBar { .. } | LiftPsiBar { .. } => {
            require_variant(ctx, Variant::Extended, "this lift family")?;
            require_lambda(ctx, 0, "this lift family")
        }
    }
}

/// Action of a degree-0 outer family on a non-central basis symbol, computed
/// in the centerless algebra.
fn outer_basis_action(
    ctx: &AlgebraContext,
    d: &DerivationDescriptor,
    key: &BasisKey,
) -> Result<Element> {
    use DerivationDescriptor::*;
    let plain = AlgebraContext::new(ctx.rank(), ctx.lambda().clone(), Variant::Plain)?;
    let out = match (d, key) {
        (Phi, BasisKey::L(a)) => Element::term(&plain, BasisKey::I(a.clone()), ctx.value(a)?)?,
        (Phi, BasisKey::I(_)) => Element::zero(),
        (Psi, BasisKey::L(_)) => Element::zero(),
        (Psi, BasisKey::I(a)) => Element::basis(&plain, BasisKey::I(a.clone()))?,
        (Sigma0, BasisKey::L(a)) => Element::basis(&plain, BasisKey::I(a.clone()))?,
        (Sigma0, BasisKey::I(_)) => Element::zero(),
        (SigmaM1, BasisKey::L(a)) => {
            let v = ctx.value(a)?;
            Element::term(&plain, BasisKey::I(a.clone()), v.mul(&v))?
        }
        (SigmaM1, BasisKey::I(_)) => Element::zero(),
        (SigmaM2, BasisKey::L(a)) => {
            Element::term(&plain, BasisKey::I(a.clone()), ctx.value(a)?.pow(3).unwrap())?
        }
        (SigmaM2, BasisKey::I(_)) => Element::zero(),
        (Xi(hom), BasisKey::L(a)) => Element::term(&plain, BasisKey::L(a.clone()), hom.eval(a)?)?,
        (Xi(hom), BasisKey::I(a)) => Element::term(&plain, BasisKey::I(a.clone()), hom.eval(a)?)?,
        (Eta1(hom), BasisKey::L(a)) => Element::term(&plain, BasisKey::I(a.clone()), hom.eval(a)?)?,
        (Eta1(_), BasisKey::I(_)) => Element::zero(),
        _ => {
            return Err(HvError::GateViolation(format!(
                "{d:?} is not an outer family action on {key}"
            )))
        }
    };
    Ok(out)
}

fn basis_action(ctx: &AlgebraContext, d: &DerivationDescriptor, key: &BasisKey) -> Result<Element> {
    use DerivationDescriptor::*;
    let n = ctx.nvars();
    let one = Scalar::one(n);
    match d {
        Phi | Psi | Sigma0 | SigmaM1 | SigmaM2 | Xi(_) | Eta1(_) => outer_basis_action(ctx, d, key),
        AdL(b) => {
            let x = Element::term(ctx, key.clone(), one)?;
            let gen = Element::basis(ctx, BasisKey::L(b.clone()))?;
            bracket(ctx, &gen, &x)
        }
        AdI(b) => {
            let x = Element::term(ctx, key.clone(), one)?;
            let gen = Element::basis(ctx, BasisKey::I(b.clone()))?;
            bracket(ctx, &gen, &x)
        }
        LiftedTrivial(inner) => {
            match key {
                BasisKey::L(_) | BasisKey::I(_) => outer_basis_action(ctx, inner, key),
                // The unique extension kills the center, except that psi must
                // fix the L-against-I charge where one exists.
                BasisKey::CLI(i) if inner.as_ref() == &Psi && *i >= 1 => {
                    Element::basis(ctx, BasisKey::CLI(*i))
                }
                _ => Ok(Element::zero()),
            }
        }
        LiftPhiBar => match key {
            BasisKey::L(a) => {
                let mut out = Element::term(ctx, BasisKey::I(a.clone()), ctx.value(a)?)?;
                if a.is_zero() {
                    out = out.add(&Element::basis(ctx, BasisKey::CLI(0))?);
                }
                Ok(out)
            }
            BasisKey::I(a) => {
                if a.is_zero() {
                    Element::basis(ctx, BasisKey::CI)
                } else {
                    Ok(Element::zero())
                }
            }
            BasisKey::CL => {
                Ok(Element::basis(ctx, BasisKey::CLI(0))?.scale(&Scalar::from_int(-24, n)))
            }
            BasisKey::CLI(0) => Element::basis(ctx, BasisKey::CI),
            _ => Ok(Element::zero()),
        },
        LiftSigma0Bar => match key {
            BasisKey::L(a) => {
                let mut out = Element::basis(ctx, BasisKey::I(a.clone()))?;
                if a.is_zero() {
                    out = out.sub(&Element::basis(ctx, BasisKey::CLI(0))?);
                }
                Ok(out)
            }
            BasisKey::I(a) => {
                if a.is_zero() {
                    Ok(Element::basis(ctx, BasisKey::CI)?.neg())
                } else {
                    Ok(Element::zero())
                }
            }
            _ => Ok(Element::zero()),
        },
        LiftXiBar { hom, l, k } => match key {
            BasisKey::L(a) => {
                let va = ctx.value(a)?;
                let mut out = Element::term(ctx, BasisKey::L(a.clone()), hom.eval(a)?)?;
                out = out.add(&Element::term(
                    ctx,
                    BasisKey::I(a.clone()),
                    l.add(&k.mul(&va)),
                )?);
                if a.is_zero() {
                    out = out.add(&Element::term(ctx, BasisKey::CLI(0), k.sub(l))?);
                }
                Ok(out)
            }
            BasisKey::I(a) => {
                let mut out = Element::term(ctx, BasisKey::I(a.clone()), hom.eval(a)?)?;
                if a.is_zero() {
                    out = out.add(&Element::term(ctx, BasisKey::CI, k.sub(l))?);
                }
                Ok(out)
            }
            BasisKey::CL => Element::term(
                ctx,
                BasisKey::CLI(0),
                k.scale_rat(&crate::scalars::rat(-24, 1)),
            ),
            BasisKey::CLI(0) => Element::term(ctx, BasisKey::CI, k.clone()),
            _ => Ok(Element::zero()),
        },
        LiftPsiBar { l, k } => match key {
            BasisKey::L(a) => {
                let va = ctx.value(a)?;
                let mut out = Element::term(ctx, BasisKey::I(a.clone()), l.add(&k.mul(&va)))?;
                if a.is_zero() {
                    out = out.add(&Element::term(ctx, BasisKey::CLI(0), k.sub(l))?);
                }
                Ok(out)
            }
            BasisKey::I(a) => {
                let mut out = Element::basis(ctx, BasisKey::I(a.clone()))?;
                if a.is_zero() {
                    out = out.add(&Element::term(ctx, BasisKey::CI, k.sub(l))?);
                }
                Ok(out)
            }
            BasisKey::CL => Element::term(
                ctx,
                BasisKey::CLI(0),
                k.scale_rat(&crate::scalars::rat(-24, 1)),
            ),
            BasisKey::CLI(0) => {
                let mut out = Element::basis(ctx, BasisKey::CLI(0))?;
                out = out.add(&Element::term(ctx, BasisKey::CI, k.clone())?);
                Ok(out)
            }
            BasisKey::CI => Ok(Element::basis(ctx, BasisKey::CI)?.scale(&Scalar::from_int(2, n))),
            _ => Ok(Element::zero()),
        },
    }
}

/// Linear extension of the descriptor's basis action.
pub fn der_apply(ctx: &AlgebraContext, d: &DerivationDescriptor, x: &Element) -> Result<Element> {
    gate(ctx, d)?;
    x.validate(ctx)?;
    let mut out = Element::zero();
    for (key, coef) in x.terms() {
        let img = basis_action(ctx, d, key)?;
        for (k, c) in img.terms() {
            out.accumulate(k.clone(), c.mul(coef));
        }
    }
    Ok(out)
}

/// d([x,y]) = [d x, y] + [x, d y] over all basis pairs with degrees in the
/// window (central generators included for extended contexts).
pub fn leibniz_check(
    ctx: &AlgebraContext,
    d: &DerivationDescriptor,
    radius: i64,
) -> Result<Report> {
    gate(ctx, d)?;
    leibniz_check_map(ctx, &mut |x| der_apply(ctx, d, x), radius)
}

/// Leibniz verification for an arbitrary linear map.
pub fn leibniz_check_map(
    ctx: &AlgebraContext,
    map: &mut dyn FnMut(&Element) -> Result<Element>,
    radius: i64,
) -> Result<Report> {
    if radius < 1 {
        return Err(HvError::InvalidParameter("radius must be >= 1".into()));
    }
    let mut keys = ctx.window_keys(radius);
    keys.extend(ctx.active_centrals());
    let elems: Vec<Element> = keys
        .iter()
        .map(|k| Element::basis(ctx, k.clone()))
        .collect::<Result<_>>()?;
    let images: Vec<Element> = elems.iter().map(|e| map(e)).collect::<Result<_>>()?;

    let mut report = Report::default();
    for i in 0..keys.len() {
        for j in i..keys.len() {
            let lhs = map(&bracket(ctx, &elems[i], &elems[j])?)?;
            let rhs =
                bracket(ctx, &images[i], &elems[j])?.add(&bracket(ctx, &elems[i], &images[j])?);
            report.record(lhs == rhs, || {
                format!("leibniz fails on ({}, {})", keys[i], keys[j])
            });
        }
    }
    Ok(report)
}

/// Pointwise identities tying the inner derivations at degree 0 to the outer
/// families: ad L_0 acts as xi with the embedding homomorphism, and
/// ad I_0 = lambda * phi (so ad I_0 = 0 at lambda = 0).
pub fn inner_derivation_identity_check(ctx: &AlgebraContext, radius: i64) -> Result<Report> {
    require_variant(ctx, Variant::Plain, "the inner-derivation identities")?;
    if radius < 1 {
        return Err(HvError::InvalidParameter("radius must be >= 1".into()));
    }
    let rank = ctx.rank();
    let zero = GroupElem::zero(rank);
    let xi_embed = DerivationDescriptor::Xi(AddHom::embedding(ctx));
    let ad_l0 = DerivationDescriptor::AdL(zero.clone());
    let ad_i0 = DerivationDescriptor::AdI(zero);
    let lambda = ctx.lambda_scalar();

    let mut report = Report::default();
    for key in ctx.window_keys(radius) {
        let x = Element::basis(ctx, key.clone())?;
        let lhs = der_apply(ctx, &xi_embed, &x)?;
        let rhs = der_apply(ctx, &ad_l0, &x)?;
        report.record(lhs == rhs, || {
            format!("xi with the embedding differs from ad L_0 on {key}")
        });
        let lhs = der_apply(ctx, &ad_i0, &x)?;
        let rhs = der_apply(ctx, &DerivationDescriptor::Phi, &x)?.scale(&lambda);
        report.record(lhs == rhs, || {
            format!("ad I_0 differs from lambda * phi on {key}")
        });
    }
    Ok(report)
}
