//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! Monomials are ordered graded-lexicographically: total degree first, ties
//! broken by comparing exponents from the highest variable down. Variable `i`
//! stands for the indeterminate `e(i+2)` of the coefficient field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(idx: usize, nvars: usize) -> Self {
        assert!(idx < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Self) -> Self {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    fn try_div(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: BigRational, nvars: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(nvars), c);
        }
        Poly { nvars, terms }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(BigRational::one(), nvars)
    }

    pub fn var(idx: usize, nvars: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(idx, nvars), BigRational::one());
        Poly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: BTreeMap<Monomial, BigRational>) -> Self {
        let mut p = Poly { nvars, terms };
        p.terms.retain(|_, c| !c.is_zero());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map_or(false, |c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.leading().0.is_unit())
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(c.clone());
            }
        }
        None
    }

    /// Leading term in grlex order. Panics on the zero polynomial.
    pub fn leading(&self) -> (&Monomial, &BigRational) {
        self.terms.iter().next_back().expect("leading of zero")
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Highest variable index that actually occurs, if any.
    fn top_var(&self) -> Option<usize> {
        (0..self.nvars).rev().find(|&v| self.degree_in(v) > 0)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        self.mul_term(&Monomial::unit(self.nvars), c)
    }

    pub fn eval(&self, assignment: &[BigRational]) -> BigRational {
        assert_eq!(assignment.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &assignment[v];
                }
            }
            acc += t;
        }
        acc
    }

    /// Positive rational `g` with `self / g` having coprime integer
    /// coefficients. Zero for the zero polynomial.
    pub fn content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
        BigRational::new(num_gcd, den_lcm)
    }

    /// `self / content`, with the leading coefficient made positive.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().1.is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Exact division; `None` if `other` does not divide `self`.
    pub fn divexact(&self, other: &Poly) -> Option<Poly> {
        assert_eq!(self.nvars, other.nvars);
        assert!(!other.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        let (lm, lc) = (other.leading().0.clone(), other.leading().1.clone());
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading();
                (m.clone(), c.clone())
            };
            let qm = rm.try_div(&lm)?;
            let qc = rc / &lc;
            quot.add_term(qm.clone(), qc.clone());
            rem = rem.sub(&other.mul_term(&qm, &qc));
        }
        Some(quot)
    }

    /// View as univariate in `var`: exponent -> coefficient polynomial
    /// (the coefficients have exponent 0 in `var`).
    fn coeffs_wrt(&self, var: usize) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut stripped = m.clone();
            stripped.0[var] = 0;
            out.entry(e)
                .or_insert_with(|| Poly::zero(self.nvars))
                .add_term(stripped, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    fn from_coeffs_wrt(var: usize, nvars: usize, coeffs: &BTreeMap<u32, Poly>) -> Poly {
        let mut out = Poly::zero(nvars);
        for (e, p) in coeffs {
            let mut m = Monomial::unit(nvars);
            m.0[var] = *e;
            out = out.add(&p.mul_term(&m, &BigRational::one()));
        }
        out
    }

    fn leading_coeff_wrt(&self, var: usize) -> Poly {
        let coeffs = self.coeffs_wrt(var);
        coeffs
            .into_iter()
            .next_back()
            .map(|(_, p)| p)
            .unwrap_or_else(|| Poly::zero(self.nvars))
    }

    /// Content with respect to `var`: the gcd of the univariate coefficients.
    fn content_wrt(&self, var: usize) -> Poly {
        let mut g = Poly::zero(self.nvars);
        for (_, p) in self.coeffs_wrt(var) {
            g = gcd(&g, &p);
            if g.is_constant() && !g.is_zero() {
                break;
            }
        }
        g
    }

    /// Pseudo-remainder of `self` by `other` with respect to `var`.
    fn prem(&self, other: &Poly, var: usize) -> Poly {
        let db = other.degree_in(var);
        let lb = other.leading_coeff_wrt(var);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(var) >= db {
            let da = r.degree_in(var);
            let la = r.leading_coeff_wrt(var);
            let mut shift = Monomial::unit(self.nvars);
            shift.0[var] = da - db;
            // lb * r  -  la * x^(da-db) * other
            r = r
                .mul(&lb)
                .sub(&other.mul(&la).mul_term(&shift, &BigRational::one()));
        }
        r
    }
}

/// Multivariate GCD by primitive pseudo-remainder sequences. The result is
/// primitive with positive leading coefficient; constants collapse to 1.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let var = match a.top_var().into_iter().chain(b.top_var()).max() {
        Some(v) => v,
        None => return Poly::one(a.nvars()),
    };
    let ca = a.content_wrt(var);
    let cb = b.content_wrt(var);
    let cont = gcd(&ca, &cb);
    let mut p = a.divexact(&ca).expect("content divides").primitive();
    let mut q = b.divexact(&cb).expect("content divides").primitive();
    if p.degree_in(var) < q.degree_in(var) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        let r = p.prem(&q, var);
        p = q;
        q = if r.is_zero() {
            r
        } else {
            let c = r.content_wrt(var);
            r.divexact(&c).expect("content divides").primitive()
        };
    }
    cont.mul(&p.primitive()).primitive()
}

pub fn rat_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        format!("e{}", v + 2)
                    } else {
                        format!("e{}^{}", v + 2, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", rat_to_string(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", rat_to_string(&mag), vars.join("*"))?;
            }
        }
        Ok(())
    }
}
