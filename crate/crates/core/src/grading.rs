//! The grading lattice and the ambient algebra context.
//!
//! The grading group is free of rank n with basis eps_1 = 1, eps_2, ..., eps_n;
//! group elements are integer coordinate vectors and their complex values are
//! modeled generically: eps_2, ..., eps_n are independent indeterminates of the
//! scalar field, so value(a) = a_1 + a_2*e2 + ... + a_n*en.

use std::fmt;

use crate::algebra::BasisKey;
use crate::error::{HvError, Result};
use crate::scalars::{Rational, Scalar};

/// Lattice point: coordinates with respect to eps_1 = 1, eps_2, ..., eps_n.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct GroupElem(pub Vec<i64>);

impl GroupElem {
    pub fn zero(rank: usize) -> Self {
        GroupElem(vec![0; rank])
    }

    /// The basis vector eps_i, 1-indexed.
    pub fn basis(i: usize, rank: usize) -> Self {
        assert!(i >= 1 && i <= rank);
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        GroupElem(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &GroupElem) -> Result<GroupElem> {
        if self.rank() != other.rank() {
            return Err(HvError::RankMismatch {
                expected: self.rank(),
                got: other.rank(),
            });
        }
        Ok(GroupElem(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn neg(&self) -> GroupElem {
        GroupElem(self.0.iter().map(|a| -a).collect())
    }

    pub fn sub(&self, other: &GroupElem) -> Result<GroupElem> {
        self.add(&other.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn in_window(&self, radius: i64) -> bool {
        self.0.iter().all(|a| a.abs() <= radius)
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variant {
    /// The centerless algebra g.
    Plain,
    /// The universal central extension (lambda != -1).
    Extended,
    /// The central extension of the derived subalgebra g' at lambda = -1
    /// (basis L_a, I_b with b != 0).
    DerivedPrime,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Plain => write!(f, "plain"),
            Variant::Extended => write!(f, "extended"),
            Variant::DerivedPrime => write!(f, "derived-prime"),
        }
    }
}

/// Rank, deformation parameter and variant, fixed for a whole computation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraContext {
    rank: usize,
    lambda: Rational,
    variant: Variant,
}

impl AlgebraContext {
    pub fn new(rank: usize, lambda: Rational, variant: Variant) -> Result<Self> {
        if rank == 0 {
            return Err(HvError::InvalidParameter(
                "rank must be at least 1".into(),
            ));
        }
        let minus_one = crate::scalars::rat(-1, 1);
        match variant {
            Variant::Extended if lambda == minus_one => {
                return Err(HvError::GateViolation(
                    "the extended variant requires lambda != -1".into(),
                ));
            }
            Variant::DerivedPrime if lambda != minus_one => {
                return Err(HvError::GateViolation(
                    "the derived-prime variant requires lambda = -1".into(),
                ));
            }
            _ => {}
        }
        Ok(AlgebraContext {
            rank,
            lambda,
            variant,
        })
    }

    pub fn plain(rank: usize, lambda: Rational) -> Result<Self> {
        AlgebraContext::new(rank, lambda, Variant::Plain)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.rank - 1
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn lambda_scalar(&self) -> Scalar {
        Scalar::from_rational(self.lambda.clone(), self.nvars())
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Exact test lambda = c.
    pub fn delta_lambda(&self, c: &Rational) -> bool {
        &self.lambda == c
    }

    pub fn delta_lambda_int(&self, c: i64) -> bool {
        self.delta_lambda(&crate::scalars::rat(c, 1))
    }

    /// value(a) = a_1 + a_2*e2 + ... + a_n*en.
    pub fn value(&self, a: &GroupElem) -> Result<Scalar> {
        if a.rank() != self.rank {
            return Err(HvError::RankMismatch {
                expected: self.rank,
                got: a.rank(),
            });
        }
        let n = self.nvars();
        let mut acc = Scalar::from_int(a.0[0], n);
        for (i, &c) in a.0.iter().enumerate().skip(1) {
            if c != 0 {
                acc = acc.add(&Scalar::var(i - 1, n).scale_rat(&crate::scalars::rat(c, 1)));
            }
        }
        Ok(acc)
    }

    /// Central generators that exist in this context, in key order.
    pub fn active_centrals(&self) -> Vec<BasisKey> {
        match self.variant {
            Variant::Plain => vec![],
            Variant::Extended => {
                let mut keys = vec![BasisKey::CL];
                if self.delta_lambda_int(0) {
                    keys.push(BasisKey::CI);
                    keys.push(BasisKey::CLI(0));
                } else if self.delta_lambda_int(1) {
                    keys.push(BasisKey::CLI(1));
                } else if self.delta_lambda_int(-2) {
                    for i in 2..=self.rank {
                        keys.push(BasisKey::CLI(i));
                    }
                }
                keys
            }
            Variant::DerivedPrime => vec![
                BasisKey::CL,
                BasisKey::CI,
                BasisKey::CLI(0),
                BasisKey::CLIPrime,
            ],
        }
    }

    /// Whether a key may appear in an element of this context.
    pub fn key_valid(&self, key: &BasisKey) -> Result<()> {
        match key {
            BasisKey::L(a) | BasisKey::I(a) => {
                if a.rank() != self.rank {
                    return Err(HvError::RankMismatch {
                        expected: self.rank,
                        got: a.rank(),
                    });
                }
                if self.variant == Variant::DerivedPrime
                    && matches!(key, BasisKey::I(a) if a.is_zero())
                {
                    return Err(HvError::InactiveCentralKey {
                        key: "I[0] (absent from the derived subalgebra)".into(),
                    });
                }
                Ok(())
            }
            central => {
                if self.active_centrals().contains(central) {
                    Ok(())
                } else {
                    Err(HvError::InactiveCentralKey {
                        key: central.to_string(),
                    })
                }
            }
        }
    }

    /// All lattice points with every coordinate in [-radius, radius],
    /// lexicographically ordered.
    pub fn window(&self, radius: i64) -> Vec<GroupElem> {
        let mut out = Vec::new();
        let mut cur = vec![-radius; self.rank];
        loop {
            out.push(GroupElem(cur.clone()));
            let mut i = self.rank;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < radius {
                    cur[i] += 1;
                    for c in cur.iter_mut().skip(i + 1) {
                        *c = -radius;
                    }
                    break;
                }
            }
        }
    }

    /// Window basis keys: L and I over the window, I[0] dropped for the
    /// derived subalgebra. Central generators are not included.
    pub fn window_keys(&self, radius: i64) -> Vec<BasisKey> {
        let mut keys = Vec::new();
        for a in self.window(radius) {
            keys.push(BasisKey::L(a));
        }
        for a in self.window(radius) {
            if self.variant == Variant::DerivedPrime && a.is_zero() {
                continue;
            }
            keys.push(BasisKey::I(a));
        }
        keys
    }
}
