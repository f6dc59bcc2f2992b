//! Exact arithmetic in the coefficient ring `R = Z[A^{±1}]` and in the
//! cyclic quotients `R/(1 - A^N)` used for torsion normal forms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// A Laurent polynomial in `A` with integer coefficients.
///
/// Stored as a sorted map from exponent to nonzero coefficient; the zero
/// polynomial is the empty map, and there is at most one term per exponent.
#[derive(Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c * A^e`, normalized (the zero monomial collapses to the zero polynomial).
    pub fn monomial(exponent: i64, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponent, coeff);
        }
        Self { terms }
    }

    /// `A^e`.
    pub fn a_pow(exponent: i64) -> Self {
        Self::monomial(exponent, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// `q_k = A^{-k} - A^k`; zero when `k = 0`.
    pub fn q(k: i64) -> Self {
        Self::a_pow(-k) - Self::a_pow(k)
    }

    /// `z = A^{-2} + A^2`, the recursion constant of the torsion lemmas.
    pub fn z() -> Self {
        Self::a_pow(-2) + Self::a_pow(2)
    }

    /// `-A^2 - A^{-2}`, the value of an unknot under the trivial-loop relation.
    pub fn loop_value() -> Self {
        -(Self::z())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Iterates `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exponent: i64) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, exponent: i64, coeff: &BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    /// Multiplies by `A^k` (a unit shift of every exponent).
    pub fn shifted(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scaled(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, k)| (*e, k * &c)).collect(),
        }
    }

    /// Accumulates `a * b` into `self` without building the product first.
    pub fn add_mul(&mut self, a: &Self, b: &Self) {
        for (e1, c1) in a.iter() {
            for (e2, c2) in b.iter() {
                self.add_term(e1 + e2, &(c1 * c2));
            }
        }
    }

    /// Exact division, or `None` when `self` is not a multiple of `d`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let mut rem = self.clone();
        let mut quo = Self::zero();
        let (d_lead, d_coeff) = {
            let e = d.max_exponent().unwrap();
            (e, d.coeff(e))
        };
        // An exact quotient has its exponents bounded below by
        // min(self) - min(d); descending past that means no quotient exists.
        let floor = match self.min_exponent() {
            Some(lo) => lo - d.min_exponent().unwrap(),
            None => return Some(Self::zero()),
        };
        while !rem.is_zero() {
            let e = rem.max_exponent().unwrap();
            if e - d_lead < floor {
                return None;
            }
            let c = rem.coeff(e);
            let (q, r) = (&c / &d_coeff, &c % &d_coeff);
            if !r.is_zero() || q.is_zero() {
                return None;
            }
            let t = Self::monomial(e - d_lead, q);
            rem -= &(&t * d);
            quo += &t;
        }
        Some(quo)
    }

    /// Canonical representative in `R/(1 - A^N)`: exponents reduced mod `N`,
    /// coefficients at equal residues summed.
    pub fn mod_cyclic(&self, modulus: i64) -> Result<CyclicQuotientElem, Error> {
        if modulus <= 0 {
            return Err(Error::NonPositiveModulus(modulus));
        }
        let mut residue = Self::zero();
        for (e, c) in self.iter() {
            residue.add_term(e.rem_euclid(modulus), c);
        }
        Ok(CyclicQuotientElem { modulus, residue })
    }

    /// Membership in the ideal `(1 - A^N)`.
    pub fn divisible_by_cyclic(&self, modulus: i64) -> Result<bool, Error> {
        Ok(self.mod_cyclic(modulus)?.is_zero())
    }
}

/// A canonical representative of an element of `R/(1 - A^N)`: every exponent
/// of the residue lies in `[0, N)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CyclicQuotientElem {
    modulus: i64,
    residue: LaurentPoly,
}

impl CyclicQuotientElem {
    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn residue(&self) -> &LaurentPoly {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn into_residue(self) -> LaurentPoly {
        self.residue
    }
}

impl fmt::Display for CyclicQuotientElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod (1-A^{})", self.residue, self.modulus)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.iter() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.iter() {
            out.add_term(e, &(-c));
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.iter() {
            for (e2, c2) in rhs.iter() {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned_ops {
    ($($trait:ident :: $m:ident),* $(,)?) => {$(
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly { (&self).$m(&rhs) }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly { (&self).$m(rhs) }
        }
    )*};
}

forward_owned_ops!(Add::add, Sub::sub, Mul::mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.iter() {
            self.add_term(e, c);
        }
    }
}

impl AddAssign<LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.iter() {
            self.add_term(e, &-c);
        }
    }
}

impl SubAssign<LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        *self -= &rhs;
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = (&*self) * rhs;
    }
}

impl MulAssign<LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: LaurentPoly) {
        *self = (&*self) * &rhs;
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Canonical textual form: terms in strictly descending exponent order,
/// e.g. `-A^4+1+A^-4`; the zero polynomial prints as `0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if c.is_negative() {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            if *e == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                if *e == 1 {
                    write!(f, "A")?;
                } else {
                    write!(f, "A^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
