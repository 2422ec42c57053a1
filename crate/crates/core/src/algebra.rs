//! Elements and the Lie bracket.
//!
//! Basis symbols are L(a), I(a) for lattice points a, plus the central
//! generators that the ambient context activates. The bracket is the bilinear
//! extension of
//!
//!   [L_a, L_b] = (b - a) L_{a+b}
//!   [L_a, I_b] = (b - lambda a) I_{a+b}
//!   [I_a, I_b] = 0
//!
//! with the context's central correction terms added on top for the extended
//! variants (all corrections are supported on a + b = 0).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{HvError, Result};
use crate::grading::{AlgebraContext, GroupElem, Variant};
use crate::scalars::{rat, Scalar};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum BasisKey {
    L(GroupElem),
    I(GroupElem),
    CL,
    CI,
    /// Central charge pairing L against I; the index is 0 for the lambda = 0
    /// charge (also reused for the derived-subalgebra charge) and i >= 1 for
    /// the lambda = 1 and lambda = -2 families.
    CLI(usize),
    CLIPrime,
}

impl BasisKey {
    pub fn is_central(&self) -> bool {
        !matches!(self, BasisKey::L(_) | BasisKey::I(_))
    }

    pub fn degree(&self) -> Option<&GroupElem> {
        match self {
            BasisKey::L(a) | BasisKey::I(a) => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKey::L(a) => write!(f, "L{a}"),
            BasisKey::I(a) => write!(f, "I{a}"),
            BasisKey::CL => write!(f, "CL"),
            BasisKey::CI => write!(f, "CI"),
            BasisKey::CLI(i) => write!(f, "CLI{i}"),
            BasisKey::CLIPrime => write!(f, "CLIP"),
        }
    }
}

/// Finite linear combination of basis symbols. Zero coefficients are never
/// stored, so structural equality is element equality.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Element {
    terms: BTreeMap<BasisKey, Scalar>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn basis(ctx: &AlgebraContext, key: BasisKey) -> Result<Element> {
        Element::term(ctx, key, Scalar::one(ctx.nvars()))
    }

    pub fn term(ctx: &AlgebraContext, key: BasisKey, coef: Scalar) -> Result<Element> {
        ctx.key_valid(&key)?;
        let mut e = Element::zero();
        e.accumulate(key, coef);
        Ok(e)
    }

    pub(crate) fn accumulate(&mut self, key: BasisKey, coef: Scalar) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coef);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &BasisKey) -> Option<&Scalar> {
        self.terms.get(key)
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        if s.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.mul(s)))
                .collect(),
        }
    }

    /// Projection onto the central span.
    pub fn central_part(&self) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.is_central())
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Projection away from the central span.
    pub fn noncentral_part(&self) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| !k.is_central())
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn validate(&self, ctx: &AlgebraContext) -> Result<()> {
        for k in self.terms.keys() {
            ctx.key_valid(k)?;
        }
        Ok(())
    }
}

fn scalar_needs_parens(s: &str) -> bool {
    s.contains([' ', '+', '*', '/', '^']) || s[1..].contains('-')
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (key, coef)) in self.terms.iter().enumerate() {
            // Pull an explicit sign out of constant or single-monomial
            // coefficients so later terms read "- 3*L[1]" rather than "+ -3*L[1]".
            let (neg, mag) = match coef.as_rational() {
                Some(r) if r < crate::scalars::rat(0, 1) => (true, coef.neg()),
                _ => (false, coef.clone()),
            };
            let mag_str = mag.to_string();
            let coef_str = if scalar_needs_parens(&mag_str) {
                format!("({mag_str})")
            } else {
                mag_str
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{coef_str}*{key}")?;
        }
        Ok(())
    }
}

/// Bracket of two basis symbols.
fn bracket_basis(ctx: &AlgebraContext, x: &BasisKey, y: &BasisKey) -> Result<Element> {
    let n = ctx.nvars();
    let lambda = ctx.lambda_scalar();
    let mut out = Element::zero();
    match (x, y) {
        (BasisKey::L(a), BasisKey::L(b)) => {
            let (va, vb) = (ctx.value(a)?, ctx.value(b)?);
            out.accumulate(BasisKey::L(a.add(b)?), vb.sub(&va));
            if ctx.variant() != Variant::Plain && a.add(b)?.is_zero() {
                // (a^3 - a)/12 * CL
                let c = va.pow(3).unwrap().sub(&va).scale_rat(&rat(1, 12));
                out.accumulate(BasisKey::CL, c);
            }
        }
        (BasisKey::L(a), BasisKey::I(b)) => {
            let (va, vb) = (ctx.value(a)?, ctx.value(b)?);
            let coef = vb.sub(&lambda.mul(&va));
            let sum = a.add(b)?;
            if ctx.variant() == Variant::DerivedPrime && sum.is_zero() {
                // coef = a + b = 0 here; I[0] never appears.
                debug_assert!(coef.is_zero());
            } else {
                out.accumulate(BasisKey::I(sum.clone()), coef);
            }
            if sum.is_zero() {
                match ctx.variant() {
                    Variant::Extended => {
                        if ctx.delta_lambda_int(0) {
                            // (a^2 + a) * CLI0
                            let c = va.mul(&va).add(&va);
                            out.accumulate(BasisKey::CLI(0), c);
                        } else if ctx.delta_lambda_int(1) {
                            let c = va.pow(3).unwrap().sub(&va).scale_rat(&rat(1, 12));
                            out.accumulate(BasisKey::CLI(1), c);
                        } else if ctx.delta_lambda_int(-2) {
                            for i in 2..=ctx.rank() {
                                let ai = a.0[i - 1];
                                if ai != 0 {
                                    out.accumulate(BasisKey::CLI(i), Scalar::from_int(ai, n));
                                }
                            }
                        }
                    }
                    Variant::DerivedPrime => {
                        out.accumulate(BasisKey::CLI(0), va.clone());
                        out.accumulate(BasisKey::CLIPrime, Scalar::one(n));
                    }
                    Variant::Plain => {}
                }
            }
        }
        (BasisKey::I(_), BasisKey::L(_)) => {
            return Ok(bracket_basis(ctx, y, x)?.neg());
        }
        (BasisKey::I(a), BasisKey::I(b)) => {
            let sum = a.add(b)?;
            if sum.is_zero() {
                match ctx.variant() {
                    Variant::Extended if ctx.delta_lambda_int(0) => {
                        out.accumulate(BasisKey::CI, ctx.value(a)?);
                    }
                    Variant::DerivedPrime => {
                        out.accumulate(BasisKey::CI, ctx.value(a)?.inv()?);
                    }
                    _ => {}
                }
            }
        }
        // Central generators bracket to zero with everything.
        _ => {}
    }
    Ok(out)
}

/// Bilinear extension of the basis bracket. Both operands must be valid in
/// the given context.
pub fn bracket(ctx: &AlgebraContext, x: &Element, y: &Element) -> Result<Element> {
    x.validate(ctx)?;
    y.validate(ctx)?;
    let mut out = Element::zero();
    for (kx, cx) in x.terms() {
        for (ky, cy) in y.terms() {
            let base = bracket_basis(ctx, kx, ky)?;
            if base.is_zero() {
                continue;
            }
            let c = cx.mul(cy);
            for (k, v) in base.terms() {
                out.accumulate(k.clone(), v.mul(&c));
            }
        }
    }
    Ok(out)
}

/// Outcome of an exhaustive window check. `failures` lists every violating
/// pair or triple in iteration order.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(describe());
        }
    }
}

/// Memoized basis-pair brackets; window checks hit the same pairs many times.
pub(crate) struct BracketTable<'a> {
    ctx: &'a AlgebraContext,
    cache: std::collections::HashMap<(BasisKey, BasisKey), Element>,
}

impl<'a> BracketTable<'a> {
    pub(crate) fn new(ctx: &'a AlgebraContext) -> Self {
        BracketTable {
            ctx,
            cache: Default::default(),
        }
    }

    pub(crate) fn pair(&mut self, x: &BasisKey, y: &BasisKey) -> Result<Element> {
        if let Some(e) = self.cache.get(&(x.clone(), y.clone())) {
            return Ok(e.clone());
        }
        let e = bracket_basis(self.ctx, x, y)?;
        self.cache.insert((x.clone(), y.clone()), e.clone());
        Ok(e)
    }

    /// [e, z] for an element against a basis symbol.
    pub(crate) fn apply(&mut self, e: &Element, z: &BasisKey) -> Result<Element> {
        let mut out = Element::zero();
        for (k, c) in e.terms() {
            let base = self.pair(k, z)?;
            for (bk, bc) in base.terms() {
                out.accumulate(bk.clone(), bc.mul(c));
            }
        }
        Ok(out)
    }
}

/// Antisymmetry and the Jacobi identity over all basis pairs and triples with
/// degrees in the window of the given radius (central generators included).
pub fn jacobi_check(ctx: &AlgebraContext, radius: i64) -> Result<Report> {
    if radius < 1 {
        return Err(HvError::InvalidParameter("radius must be >= 1".into()));
    }
    let mut keys = ctx.window_keys(radius);
    keys.extend(ctx.active_centrals());
    let mut table = BracketTable::new(ctx);

    let mut report = Report::default();
    for i in 0..keys.len() {
        for j in i..keys.len() {
            let xy = table.pair(&keys[i], &keys[j])?;
            let yx = table.pair(&keys[j], &keys[i])?;
            report.record(xy.add(&yx).is_zero(), || {
                format!("antisymmetry fails on ({}, {})", keys[i], keys[j])
            });
            for k in j..keys.len() {
                let yz = table.pair(&keys[j], &keys[k])?;
                let zx = table.pair(&keys[k], &keys[i])?;
                let jac = table
                    .apply(&xy, &keys[k])?
                    .add(&table.apply(&yz, &keys[i])?)
                    .add(&table.apply(&zx, &keys[j])?);
                report.record(jac.is_zero(), || {
                    format!("jacobi fails on ({}, {}, {})", keys[i], keys[j], keys[k])
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::Variant;
    use crate::scalars::{parse_scalar, rat};

    fn ctx(rank: usize, lambda: crate::scalars::Rational, variant: Variant) -> AlgebraContext {
        AlgebraContext::new(rank, lambda, variant).unwrap()
    }

    fn l(ctx: &AlgebraContext, coords: &[i64]) -> Element {
        Element::basis(ctx, BasisKey::L(GroupElem(coords.to_vec()))).unwrap()
    }

    fn i(ctx: &AlgebraContext, coords: &[i64]) -> Element {
        Element::basis(ctx, BasisKey::I(GroupElem(coords.to_vec()))).unwrap()
    }

    fn sc(ctx: &AlgebraContext, text: &str) -> Scalar {
        parse_scalar(text, ctx.nvars()).unwrap()
    }

    #[test]
    fn witt_part() {
        let c = ctx(1, rat(0, 1), Variant::Plain);
        let out = bracket(&c, &l(&c, &[1]), &l(&c, &[2])).unwrap();
        assert_eq!(out, l(&c, &[3])); // coefficient b - a = 1
    }

    #[test]
    fn deformed_action() {
        let c = ctx(1, rat(-2, 1), Variant::Plain);
        let out = bracket(&c, &l(&c, &[1]), &i(&c, &[1])).unwrap();
        assert_eq!(out, i(&c, &[2]).scale(&sc(&c, "3"))); // b - lambda a = 1 + 2
    }

    #[test]
    fn central_term_on_ll() {
        let c = ctx(1, rat(5, 7), Variant::Extended);
        let out = bracket(&c, &l(&c, &[2]), &l(&c, &[-2])).unwrap();
        let expected = l(&c, &[0])
            .scale(&sc(&c, "-4"))
            .add(&Element::term(&c, BasisKey::CL, sc(&c, "1/2")).unwrap());
        assert_eq!(out, expected);
    }

    #[test]
    fn central_term_on_li_lambda_zero() {
        let c = ctx(1, rat(0, 1), Variant::Extended);
        let out = bracket(&c, &l(&c, &[1]), &i(&c, &[-1])).unwrap();
        let expected = i(&c, &[0])
            .scale(&sc(&c, "-1"))
            .add(&Element::term(&c, BasisKey::CLI(0), sc(&c, "2")).unwrap());
        assert_eq!(out, expected);
        assert_eq!(out.to_string(), "-1*I[0] + 2*CLI0");
    }

    #[test]
    fn central_term_on_ii_lambda_zero() {
        let c = ctx(1, rat(0, 1), Variant::Extended);
        let out = bracket(&c, &i(&c, &[1]), &i(&c, &[-1])).unwrap();
        assert_eq!(out, Element::basis(&c, BasisKey::CI).unwrap());
    }

    #[test]
    fn derived_prime_ii() {
        let c = ctx(1, rat(-1, 1), Variant::DerivedPrime);
        let out = bracket(&c, &i(&c, &[2]), &i(&c, &[-2])).unwrap();
        assert_eq!(out, Element::term(&c, BasisKey::CI, sc(&c, "1/2")).unwrap());
    }

    #[test]
    fn derived_prime_li_charges() {
        let c = ctx(1, rat(-1, 1), Variant::DerivedPrime);
        let out = bracket(&c, &l(&c, &[3]), &i(&c, &[-3])).unwrap();
        // b - lambda a = 0 at a + b = 0, so only the two charges remain.
        let expected = Element::term(&c, BasisKey::CLI(0), sc(&c, "3"))
            .unwrap()
            .add(&Element::basis(&c, BasisKey::CLIPrime).unwrap());
        assert_eq!(out, expected);
    }

    #[test]
    fn self_bracket_vanishes() {
        let c = ctx(1, rat(1, 1), Variant::Extended);
        let x = l(&c, &[2]).add(&i(&c, &[-1]).scale(&sc(&c, "5")));
        assert!(bracket(&c, &x, &x).unwrap().is_zero());
    }

    #[test]
    fn lambda_minus_two_rank_two_charges() {
        let c = ctx(2, rat(-2, 1), Variant::Extended);
        let out = bracket(&c, &l(&c, &[0, 1]), &i(&c, &[0, -1])).unwrap();
        // [L_a, I_{-a}] = (b - lambda a) I_0 + a_2 CLI2 with a = eps_2.
        let expected = i(&c, &[0, 0])
            .scale(&sc(&c, "e2"))
            .add(&Element::basis(&c, BasisKey::CLI(2)).unwrap());
        assert_eq!(out, expected);
    }

    #[test]
    fn inactive_central_key_rejected() {
        let c = ctx(1, rat(1, 1), Variant::Extended);
        assert_eq!(
            Element::basis(&c, BasisKey::CI),
            Err(HvError::InactiveCentralKey { key: "CI".into() })
        );
        let plain = ctx(1, rat(1, 1), Variant::Plain);
        assert!(Element::basis(&plain, BasisKey::CL).is_err());
    }

    #[test]
    fn i_zero_rejected_in_derived_prime() {
        let c = ctx(1, rat(-1, 1), Variant::DerivedPrime);
        assert!(Element::basis(&c, BasisKey::I(GroupElem(vec![0]))).is_err());
    }

    #[test]
    fn abelian_ideal() {
        let c = ctx(1, rat(5, 7), Variant::Plain);
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                let out = bracket(&c, &i(&c, &[a]), &i(&c, &[b])).unwrap();
                assert!(out.is_zero());
            }
        }
    }

    #[test]
    fn grading_respected() {
        let c = ctx(1, rat(0, 1), Variant::Extended);
        let out = bracket(&c, &l(&c, &[2]), &i(&c, &[1])).unwrap();
        for (k, _) in out.terms() {
            if let Some(d) = k.degree() {
                assert_eq!(d, &GroupElem(vec![3]));
            }
        }
    }

    #[test]
    fn jacobi_small_windows() {
        for (rank, lambda, variant, radius) in [
            (1, rat(0, 1), Variant::Extended, 3),
            (2, rat(-2, 1), Variant::Extended, 2),
            (1, rat(-1, 1), Variant::DerivedPrime, 3),
        ] {
            let c = ctx(rank, lambda, variant);
            let report = jacobi_check(&c, radius).unwrap();
            assert!(report.pass(), "failures: {:?}", report.failures);
        }
    }

    #[test]
    fn element_display_roundtrip_shapes() {
        let c = ctx(2, rat(0, 1), Variant::Extended);
        let e = l(&c, &[2, -1])
            .scale(&sc(&c, "-3"))
            .add(&i(&c, &[0, 1]).scale(&sc(&c, "e2 + 1")));
        assert_eq!(e.to_string(), "-3*L[2,-1] + (e2 + 1)*I[0,1]");
    }
}
