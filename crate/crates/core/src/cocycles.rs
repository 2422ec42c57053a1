//! 2-cocycles on the centerless algebra and on the derived subalgebra:
//! evaluation, the cocycle condition, coboundaries, gauge normalization and
//! the classified closed forms.
//!
//! A 2-cocycle is an antisymmetric bilinear form with
//! phi([x,y],z) + phi([y,z],x) + phi([z,x],y) = 0; every linear functional f
//! yields the coboundary phi_f(x,y) = f([x,y]). Cocycles here always live on
//! the *centerless* underlying algebra (Plain context, or DerivedPrime for the
//! derived subalgebra at lambda = -1), with the underlying bracket free of
//! central terms.

use std::collections::BTreeMap;

use crate::algebra::{BasisKey, Element, Report};
use crate::error::{HvError, Result};
use crate::grading::{AlgebraContext, GroupElem, Variant};
use crate::scalars::{rat, Scalar};

/// Finitely supported linear functional on basis symbols.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LinearFunctional {
    values: BTreeMap<BasisKey, Scalar>,
}

impl LinearFunctional {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: BasisKey, value: Scalar) {
        if value.is_zero() {
            self.values.remove(&key);
        } else {
            self.values.insert(key, value);
        }
    }

    pub fn get(&self, key: &BasisKey) -> Option<&Scalar> {
        self.values.get(key)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&BasisKey, &Scalar)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn apply(&self, e: &Element, nvars: usize) -> Scalar {
        let mut acc = Scalar::zero(nvars);
        for (k, c) in e.terms() {
            if let Some(v) = self.values.get(k) {
                acc = acc.add(&v.mul(c));
            }
        }
        acc
    }
}

/// The classified closed forms.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BuiltinKind {
    /// (L_a, L_b) -> (a^3 - a)/12 on a + b = 0; any lambda.
    CLform,
    /// (I_a, I_b) -> a on a + b = 0; lambda = 0.
    CIform,
    /// (L_a, I_b) -> a^2 + a on a + b = 0; lambda = 0.
    CLI0form,
    /// (L_a, I_b) -> (a^3 - a)/12 on a + b = 0; lambda = 1.
    CLI1form,
    /// (L_a, I_b) -> a_i on a + b = 0; lambda = -2, 2 <= i <= n.
    CLIiform(usize),
    /// (I_a, I_b) -> 1/a on a + b = 0; derived subalgebra, lambda = -1.
    PrimeCI,
    /// (L_a, I_b) -> a on a + b = 0; derived subalgebra.
    PrimeCLI,
    /// (L_a, I_b) -> 1 on a + b = 0; derived subalgebra.
    PrimeCLIprime,
}

impl BuiltinKind {
    /// The central generator this form is paired with in the extension.
    pub fn central_key(&self) -> BasisKey {
        match self {
            BuiltinKind::CLform => BasisKey::CL,
            BuiltinKind::CIform | BuiltinKind::PrimeCI => BasisKey::CI,
            BuiltinKind::CLI0form | BuiltinKind::PrimeCLI => BasisKey::CLI(0),
            BuiltinKind::CLI1form => BasisKey::CLI(1),
            BuiltinKind::CLIiform(i) => BasisKey::CLI(*i),
            BuiltinKind::PrimeCLIprime => BasisKey::CLIPrime,
        }
    }

    fn gate(&self, ctx: &AlgebraContext) -> Result<()> {
        let ok = match self {
            BuiltinKind::CLform => true,
            BuiltinKind::CIform | BuiltinKind::CLI0form => ctx.delta_lambda_int(0),
            BuiltinKind::CLI1form => ctx.delta_lambda_int(1),
            BuiltinKind::CLIiform(i) => {
                if !(2..=ctx.rank()).contains(i) {
                    return Err(HvError::GateViolation(format!(
                        "CLI({i}) form needs 2 <= i <= rank"
                    )));
                }
                ctx.delta_lambda_int(-2)
            }
            BuiltinKind::PrimeCI | BuiltinKind::PrimeCLI | BuiltinKind::PrimeCLIprime => {
                ctx.variant() == Variant::DerivedPrime
            }
        };
        if ok {
            Ok(())
        } else {
            Err(HvError::GateViolation(format!(
                "builtin {self:?} is not available at lambda = {} ({})",
                ctx.lambda(),
                ctx.variant()
            )))
        }
    }
}

/// Bilinear antisymmetric form on the underlying algebra.
#[derive(Clone, Debug)]
pub enum Cocycle {
    Builtin(BuiltinKind),
    Coboundary(LinearFunctional),
    /// Explicit window form: value on a pair of basis symbols, antisymmetry
    /// implied. Evaluation outside the window is an error, not a zero.
    Tabulated {
        radius: i64,
        entries: BTreeMap<(BasisKey, BasisKey), Scalar>,
    },
    Sum(Vec<(Scalar, Cocycle)>),
}

fn noncentral_degree<'k>(ctx: &AlgebraContext, key: &'k BasisKey) -> Result<&'k GroupElem> {
    ctx.key_valid(key)?;
    key.degree().ok_or_else(|| {
        HvError::GateViolation("cocycles are forms on the centerless algebra".into())
    })
}

/// The underlying (centerless) bracket used by the cocycle calculus.
fn underlying_bracket(ctx: &AlgebraContext, x: &Element, y: &Element) -> Result<Element> {
    let plain = AlgebraContext::new(ctx.rank(), ctx.lambda().clone(), Variant::Plain)?;
    crate::algebra::bracket(&plain, x, y)
}

fn eval_basis(ctx: &AlgebraContext, c: &Cocycle, x: &BasisKey, y: &BasisKey) -> Result<Scalar> {
    let n = ctx.nvars();
    let a = noncentral_degree(ctx, x)?.clone();
    let b = noncentral_degree(ctx, y)?.clone();
    match c {
        Cocycle::Builtin(kind) => {
            kind.gate(ctx)?;
            if !a.add(&b)?.is_zero() {
                return Ok(Scalar::zero(n));
            }
            let va = ctx.value(&a)?;
            match (kind, x, y) {
                (BuiltinKind::CLform, BasisKey::L(_), BasisKey::L(_)) => {
                    Ok(va.pow(3).unwrap().sub(&va).scale_rat(&rat(1, 12)))
                }
                (BuiltinKind::CIform, BasisKey::I(_), BasisKey::I(_)) => Ok(va),
                (BuiltinKind::PrimeCI, BasisKey::I(_), BasisKey::I(_)) => va.inv(),
                (BuiltinKind::CLI0form, BasisKey::L(_), BasisKey::I(_)) => Ok(va.mul(&va).add(&va)),
                (BuiltinKind::CLI1form, BasisKey::L(_), BasisKey::I(_)) => {
                    Ok(va.pow(3).unwrap().sub(&va).scale_rat(&rat(1, 12)))
                }
                (BuiltinKind::CLIiform(i), BasisKey::L(_), BasisKey::I(_)) => {
                    Ok(Scalar::from_int(a.0[*i - 1], n))
                }
                (BuiltinKind::PrimeCLI, BasisKey::L(_), BasisKey::I(_)) => Ok(va),
                (BuiltinKind::PrimeCLIprime, BasisKey::L(_), BasisKey::I(_)) => Ok(Scalar::one(n)),
                // Antisymmetric extension for the L-against-I forms.
                (_, BasisKey::I(_), BasisKey::L(_)) => Ok(eval_basis(ctx, c, y, x)?.neg()),
                _ => Ok(Scalar::zero(n)),
            }
        }
        Cocycle::Coboundary(f) => {
            let xe = Element::term(ctx, x.clone(), Scalar::one(n))?;
            let ye = Element::term(ctx, y.clone(), Scalar::one(n))?;
            Ok(f.apply(&underlying_bracket(ctx, &xe, &ye)?, n))
        }
        Cocycle::Tabulated { radius, entries } => {
            if !a.in_window(*radius) || !b.in_window(*radius) {
                return Err(HvError::OutOfWindow);
            }
            if x == y {
                return Ok(Scalar::zero(n));
            }
            if let Some(v) = entries.get(&(x.clone(), y.clone())) {
                return Ok(v.clone());
            }
            if let Some(v) = entries.get(&(y.clone(), x.clone())) {
                return Ok(v.neg());
            }
            Ok(Scalar::zero(n))
        }
        Cocycle::Sum(parts) => {
            let mut acc = Scalar::zero(n);
            for (w, part) in parts {
                acc = acc.add(&w.mul(&eval_basis(ctx, part, x, y)?));
            }
            Ok(acc)
        }
    }
}

/// Bilinear evaluation of a cocycle on two elements of the underlying algebra.
pub fn eval_cocycle(ctx: &AlgebraContext, c: &Cocycle, x: &Element, y: &Element) -> Result<Scalar> {
    let n = ctx.nvars();
    let mut acc = Scalar::zero(n);
    for (kx, cx) in x.terms() {
        for (ky, cy) in y.terms() {
            let v = eval_basis(ctx, c, kx, ky)?;
            if !v.is_zero() {
                acc = acc.add(&v.mul(&cx.mul(cy)));
            }
        }
    }
    Ok(acc)
}

/// Evaluation on a pair of basis symbols.
pub fn eval_cocycle_basis(
    ctx: &AlgebraContext,
    c: &Cocycle,
    x: &BasisKey,
    y: &BasisKey,
) -> Result<Scalar> {
    eval_basis(ctx, c, x, y)
}

/// The coboundary phi_f(x, y) = f([x, y]).
pub fn coboundary(f: LinearFunctional) -> Cocycle {
    Cocycle::Coboundary(f)
}

/// Checks antisymmetry and the cocycle condition over all basis pairs and
/// triples with degrees in the window.
pub fn is_cocycle(ctx: &AlgebraContext, c: &Cocycle, radius: i64) -> Result<Report> {
    if radius < 1 {
        return Err(HvError::InvalidParameter("radius must be >= 1".into()));
    }
    let keys = ctx.window_keys(radius);
    let n = ctx.nvars();
    let mut report = Report::default();

    let elems: Vec<Element> = keys
        .iter()
        .map(|k| Element::basis(ctx, k.clone()))
        .collect::<Result<_>>()?;
    let key_index: std::collections::HashMap<BasisKey, usize> = keys
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();

    // Cache basis evaluations and pair brackets; the triple loop revisits
    // both heavily.
    let mut memo: std::collections::HashMap<(usize, usize), Scalar> = Default::default();
    let mut brackets: std::collections::HashMap<(usize, usize), Element> = Default::default();

    fn pair_eval(
        ctx: &AlgebraContext,
        c: &Cocycle,
        keys: &[BasisKey],
        memo: &mut std::collections::HashMap<(usize, usize), Scalar>,
        i: usize,
        j: usize,
    ) -> Result<Scalar> {
        if let Some(v) = memo.get(&(i, j)) {
            return Ok(v.clone());
        }
        let v = eval_basis(ctx, c, &keys[i], &keys[j])?;
        memo.insert((i, j), v.clone());
        Ok(v)
    }

    // phi([x_i, x_j], x_k), expanding the bracket through the basis.
    let mut eval_bracketed = |i: usize,
                              j: usize,
                              k: usize,
                              memo: &mut std::collections::HashMap<(usize, usize), Scalar>|
     -> Result<Scalar> {
        let br = match brackets.get(&(i, j)) {
            Some(e) => e.clone(),
            None => {
                let e = underlying_bracket(ctx, &elems[i], &elems[j])?;
                brackets.insert((i, j), e.clone());
                e
            }
        };
        let mut acc = Scalar::zero(n);
        for (bk, bc) in br.terms() {
            let v = match key_index.get(bk) {
                Some(&bi) => pair_eval(ctx, c, &keys, memo, bi, k)?,
                None => eval_basis(ctx, c, bk, &keys[k])?,
            };
            if !v.is_zero() {
                acc = acc.add(&v.mul(bc));
            }
        }
        Ok(acc)
    };

    // Tabulated forms cannot see pairs outside their window; instances that
    // mention such a pair are skipped rather than treated as zero.
    for i in 0..keys.len() {
        for j in i..keys.len() {
            let v = pair_eval(ctx, c, &keys, &mut memo, i, j);
            if matches!(v, Err(HvError::OutOfWindow)) {
                continue;
            }
            let v = v?;
            let w = pair_eval(ctx, c, &keys, &mut memo, j, i)?;
            report.record(v.add(&w).is_zero(), || {
                format!("antisymmetry fails on ({}, {})", keys[i], keys[j])
            });
            for k in j..keys.len() {
                // phi([z,x],y) = -phi([x,z],y) reuses the cached (i,k) bracket.
                let terms = eval_bracketed(i, j, k, &mut memo).and_then(|t1| {
                    Ok(t1
                        .add(&eval_bracketed(j, k, i, &mut memo)?)
                        .sub(&eval_bracketed(i, k, j, &mut memo)?))
                });
                match terms {
                    Err(HvError::OutOfWindow) => continue,
                    Err(e) => return Err(e),
                    Ok(s) => report.record(s.is_zero(), || {
                        format!(
                            "cocycle condition fails on ({}, {}, {})",
                            keys[i], keys[j], keys[k]
                        )
                    }),
                }
            }
        }
    }
    Ok(report)
}

/// Gauge normalization: returns (c - phi_f, f) where f is built so that the
/// normalized form vanishes on (L_0, L_a), (L_0, I_a), (L_-1, L_1) and, when
/// lambda != -1, (L_-1, I_1). On the derived subalgebra the I_0 entry does not
/// exist and the last gauge condition is dropped.
pub fn normalize_cocycle(
    ctx: &AlgebraContext,
    c: &Cocycle,
    radius: i64,
) -> Result<(Cocycle, LinearFunctional)> {
    if ctx.variant() != Variant::DerivedPrime && ctx.delta_lambda_int(-1) {
        return Err(HvError::LambdaMinusOne);
    }
    let n = ctx.nvars();
    let rank = ctx.rank();
    let zero = GroupElem::zero(rank);
    let l0 = BasisKey::L(zero.clone());
    let l_minus = BasisKey::L(GroupElem::basis(1, rank).neg());
    let l_plus = BasisKey::L(GroupElem::basis(1, rank));
    let i_plus = BasisKey::I(GroupElem::basis(1, rank));

    let mut f = LinearFunctional::new();
    for a in ctx.window(radius) {
        if a.is_zero() {
            continue;
        }
        let va = ctx.value(&a)?;
        let fl = eval_basis(ctx, c, &l0, &BasisKey::L(a.clone()))?.div(&va)?;
        f.set(BasisKey::L(a.clone()), fl);
        let fi = eval_basis(ctx, c, &l0, &BasisKey::I(a.clone()))?.div(&va)?;
        f.set(BasisKey::I(a.clone()), fi);
    }
    f.set(
        l0.clone(),
        eval_basis(ctx, c, &l_minus, &l_plus)?.scale_rat(&rat(1, 2)),
    );
    if ctx.variant() != Variant::DerivedPrime {
        let lam_plus_one = ctx.lambda_scalar().add(&Scalar::one(n));
        f.set(
            BasisKey::I(zero),
            eval_basis(ctx, c, &l_minus, &i_plus)?.div(&lam_plus_one)?,
        );
    }
    let normalized = Cocycle::Sum(vec![
        (Scalar::one(n), c.clone()),
        (Scalar::from_int(-1, n), Cocycle::Coboundary(f.clone())),
    ]);
    Ok((normalized, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse_scalar;

    fn plain(rank: usize, lambda: crate::scalars::Rational) -> AlgebraContext {
        AlgebraContext::plain(rank, lambda).unwrap()
    }

    fn derived(rank: usize) -> AlgebraContext {
        AlgebraContext::new(rank, rat(-1, 1), Variant::DerivedPrime).unwrap()
    }

    fn lk(coords: &[i64]) -> BasisKey {
        BasisKey::L(GroupElem(coords.to_vec()))
    }

    fn ik(coords: &[i64]) -> BasisKey {
        BasisKey::I(GroupElem(coords.to_vec()))
    }

    fn sc(ctx: &AlgebraContext, text: &str) -> Scalar {
        parse_scalar(text, ctx.nvars()).unwrap()
    }

    #[test]
    fn builtin_values() {
        let c = plain(1, rat(5, 7));
        let v =
            eval_basis(&c, &Cocycle::Builtin(BuiltinKind::CLform), &lk(&[2]), &lk(&[-2])).unwrap();
        assert_eq!(v, sc(&c, "1/2"));

        let c0 = plain(1, rat(0, 1));
        let v = eval_basis(&c0, &Cocycle::Builtin(BuiltinKind::CLI0form), &lk(&[1]), &ik(&[-1]))
            .unwrap();
        assert_eq!(v, sc(&c0, "2"));

        let c2 = plain(2, rat(-2, 1));
        let v = eval_basis(
            &c2,
            &Cocycle::Builtin(BuiltinKind::CLIiform(2)),
            &lk(&[0, 1]),
            &ik(&[0, -1]),
        )
        .unwrap();
        assert!(v.is_one());

        let dp = derived(1);
        let v = eval_basis(&dp, &Cocycle::Builtin(BuiltinKind::PrimeCI), &ik(&[3]), &ik(&[-3]))
            .unwrap();
        assert_eq!(v, sc(&dp, "1/3"));
    }

    #[test]
    fn builtin_vanishes_on_diagonal() {
        let c = plain(1, rat(0, 1));
        for kind in [BuiltinKind::CLform, BuiltinKind::CIform, BuiltinKind::CLI0form] {
            let x = Element::basis(&c, lk(&[1]))
                .unwrap()
                .add(&Element::basis(&c, ik(&[-1])).unwrap());
            let v = eval_cocycle(&c, &Cocycle::Builtin(kind), &x, &x).unwrap();
            assert!(v.is_zero());
        }
    }

    #[test]
    fn gates_enforced() {
        let c = plain(1, rat(5, 7));
        assert!(matches!(
            eval_basis(&c, &Cocycle::Builtin(BuiltinKind::CIform), &ik(&[1]), &ik(&[-1])),
            Err(HvError::GateViolation(_))
        ));
        assert!(matches!(
            eval_basis(&c, &Cocycle::Builtin(BuiltinKind::PrimeCLI), &lk(&[1]), &ik(&[-1])),
            Err(HvError::GateViolation(_))
        ));
    }

    #[test]
    fn coboundary_unwound() {
        let c = plain(1, rat(3, 1));
        let mut f = LinearFunctional::new();
        f.set(lk(&[0]), Scalar::one(0));
        let phi = Cocycle::Coboundary(f);
        // phi_f(L_1, L_-1) = f(-2 L_0) = -2
        let v = eval_basis(&c, &phi, &lk(&[1]), &lk(&[-1])).unwrap();
        assert_eq!(v, sc(&c, "-2"));

        let c0 = plain(1, rat(0, 1));
        let mut f = LinearFunctional::new();
        f.set(ik(&[0]), Scalar::one(0));
        let phi = Cocycle::Coboundary(f);
        let v = eval_basis(&c0, &phi, &lk(&[1]), &ik(&[-1])).unwrap();
        assert_eq!(v, sc(&c0, "-1"));

        let zero = Cocycle::Coboundary(LinearFunctional::new());
        assert!(eval_basis(&c0, &zero, &lk(&[2]), &ik(&[1])).unwrap().is_zero());
    }

    #[test]
    fn builtins_satisfy_cocycle_condition() {
        let c = plain(1, rat(5, 7));
        assert!(is_cocycle(&c, &Cocycle::Builtin(BuiltinKind::CLform), 4)
            .unwrap()
            .pass());
        let dp = derived(1);
        for kind in [BuiltinKind::PrimeCI, BuiltinKind::PrimeCLI, BuiltinKind::PrimeCLIprime] {
            assert!(is_cocycle(&dp, &Cocycle::Builtin(kind), 3).unwrap().pass());
        }
    }

    #[test]
    fn corrupted_table_fails_with_triple() {
        let c = plain(1, rat(0, 1));
        // The cubic form tabulated on radius 3, with one corrupted entry.
        let mut entries = BTreeMap::new();
        for a in 1..=3i64 {
            let v = rat(a.pow(3) - a, 12);
            entries.insert((lk(&[a]), lk(&[-a])), Scalar::from_rational(v, 0));
        }
        entries.insert((lk(&[2]), lk(&[-2])), sc(&c, "7"));
        let t = Cocycle::Tabulated { radius: 3, entries };
        let report = is_cocycle(&c, &t, 1).unwrap();
        assert!(report.pass());
        let report = is_cocycle(&c, &t, 3).unwrap();
        assert!(!report.pass());
        assert!(report.failures[0].contains("cocycle condition fails"));
    }

    #[test]
    fn tabulated_out_of_window() {
        let t = Cocycle::Tabulated {
            radius: 2,
            entries: BTreeMap::new(),
        };
        let c = plain(1, rat(0, 1));
        assert_eq!(
            eval_basis(&c, &t, &lk(&[3]), &lk(&[-3])),
            Err(HvError::OutOfWindow)
        );
    }

    #[test]
    fn normalize_kills_coboundary() {
        let c = plain(1, rat(2, 1));
        let mut f0 = LinearFunctional::new();
        f0.set(lk(&[0]), sc(&c, "3"));
        f0.set(lk(&[2]), sc(&c, "-1/2"));
        f0.set(ik(&[-1]), sc(&c, "5"));
        f0.set(ik(&[0]), sc(&c, "7/3"));
        let phi = Cocycle::Coboundary(f0);
        let (normalized, f) = normalize_cocycle(&c, &phi, 4).unwrap();
        assert!(!f.is_zero());
        for a in -4..=4i64 {
            for b in -4..=4i64 {
                for (x, y) in [
                    (lk(&[a]), lk(&[b])),
                    (lk(&[a]), ik(&[b])),
                    (ik(&[a]), ik(&[b])),
                ] {
                    if x == y {
                        continue;
                    }
                    assert!(eval_basis(&c, &normalized, &x, &y).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn normalize_fixes_gauge_and_is_idempotent() {
        let c = plain(1, rat(0, 1));
        let mut f0 = LinearFunctional::new();
        f0.set(ik(&[2]), sc(&c, "4"));
        f0.set(lk(&[0]), sc(&c, "1"));
        let mix = Cocycle::Sum(vec![
            (Scalar::one(0), Cocycle::Builtin(BuiltinKind::CLform)),
            (sc(&c, "3"), Cocycle::Coboundary(f0)),
        ]);
        let (normalized, _) = normalize_cocycle(&c, &mix, 4).unwrap();
        for (x, y) in [
            (lk(&[0]), lk(&[3])),
            (lk(&[0]), ik(&[-2])),
            (lk(&[-1]), lk(&[1])),
            (lk(&[-1]), ik(&[1])),
        ] {
            assert!(eval_basis(&c, &normalized, &x, &y).unwrap().is_zero());
        }
        // The cubic class is untouched by the gauge.
        for a in 1..=4i64 {
            assert_eq!(
                eval_basis(&c, &normalized, &lk(&[a]), &lk(&[-a])).unwrap(),
                Scalar::from_rational(rat(a.pow(3) - a, 12), 0)
            );
        }
        // Idempotent: renormalizing yields a zero gauge functional.
        let (_, f2) = normalize_cocycle(&c, &normalized, 4).unwrap();
        assert!(f2.is_zero());
    }

    #[test]
    fn normalize_rejects_plain_lambda_minus_one() {
        let c = plain(1, rat(-1, 1));
        assert_eq!(
            normalize_cocycle(&c, &Cocycle::Builtin(BuiltinKind::CLform), 3)
                .err()
                .unwrap(),
            HvError::LambdaMinusOne
        );
    }

    #[test]
    fn normalize_on_derived_subalgebra() {
        let dp = derived(1);
        let mut f0 = LinearFunctional::new();
        f0.set(lk(&[1]), sc(&dp, "2"));
        f0.set(ik(&[3]), sc(&dp, "-1"));
        let (normalized, _) = normalize_cocycle(&dp, &Cocycle::Coboundary(f0), 4).unwrap();
        for a in -4..=4i64 {
            for b in -4..=4i64 {
                if b == 0 {
                    continue;
                }
                for (x, y) in [(lk(&[a]), lk(&[b])), (lk(&[a]), ik(&[b]))] {
                    if x == y {
                        continue;
                    }
                    assert!(eval_basis(&dp, &normalized, &x, &y).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn extended_bracket_is_plain_plus_builtins() {
        // Cross-check: the extended bracket equals the plain bracket plus each
        // builtin form paired with its central generator.
        for lambda in [rat(0, 1), rat(1, 1), rat(-2, 1), rat(5, 7)] {
            let ext = AlgebraContext::new(1, lambda.clone(), Variant::Extended).unwrap();
            let pl = plain(1, lambda);
            let forms: Vec<BuiltinKind> = ext
                .active_centrals()
                .iter()
                .map(|k| match k {
                    BasisKey::CL => BuiltinKind::CLform,
                    BasisKey::CI => BuiltinKind::CIform,
                    BasisKey::CLI(0) => BuiltinKind::CLI0form,
                    BasisKey::CLI(1) => BuiltinKind::CLI1form,
                    BasisKey::CLI(i) => BuiltinKind::CLIiform(*i),
                    _ => unreachable!(),
                })
                .collect();
            for x in pl.window_keys(3) {
                for y in pl.window_keys(3) {
                    let xe = Element::basis(&pl, x.clone()).unwrap();
                    let ye = Element::basis(&pl, y.clone()).unwrap();
                    let mut expected = crate::algebra::bracket(&pl, &xe, &ye).unwrap();
                    for kind in &forms {
                        let v = eval_basis(&pl, &Cocycle::Builtin(*kind), &x, &y).unwrap();
                        if !v.is_zero() {
                            expected =
                                expected.add(&Element::term(&ext, kind.central_key(), v).unwrap());
                        }
                    }
                    let got = crate::algebra::bracket(&ext, &xe, &ye).unwrap();
                    assert_eq!(got, expected, "pair ({x}, {y})");
                }
            }
        }
    }
}
