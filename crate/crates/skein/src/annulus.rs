//! The skein module of the annulus as the polynomial ring `R[λ]`, the
//! polynomial families `P`, `Q`, `F`, `R`, `P_{m,k}` living in it, and the
//! basis changes between λ-powers, the P-family and the φ/ψ-family.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::laurent::LaurentPoly;

/// A polynomial in the annulus generator λ with `LaurentPoly` coefficients.
///
/// Coefficients are stored in ascending λ-degree; the last entry is nonzero
/// unless the polynomial is zero (empty vector). The degree of the zero
/// polynomial is reported as `None`, playing the role of minus infinity.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LambdaPoly {
    coeffs: Vec<LaurentPoly>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(LaurentPoly::one())
    }

    pub fn constant(c: LaurentPoly) -> Self {
        Self::monomial(0, c)
    }

    /// `c * λ^n`.
    pub fn monomial(n: usize, c: LaurentPoly) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![LaurentPoly::zero(); n + 1];
        coeffs[n] = c;
        Self { coeffs }
    }

    /// `λ^n`.
    pub fn lambda_pow(n: usize) -> Self {
        Self::monomial(n, LaurentPoly::one())
    }

    pub fn from_coeffs(coeffs: Vec<LaurentPoly>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(LaurentPoly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&LaurentPoly> {
        self.coeffs.last()
    }

    pub fn coeff(&self, n: usize) -> LaurentPoly {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    /// Iterates `(λ-degree, coefficient)` pairs, skipping zero coefficients.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &LaurentPoly)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn scaled(&self, c: &LaurentPoly) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|k| k * c).collect())
    }

    /// Accumulates `other * c` into `self` coefficient-wise.
    pub fn add_scaled(&mut self, other: &LambdaPoly, c: &LaurentPoly) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), LaurentPoly::zero());
        }
        for (i, k) in other.coeffs.iter().enumerate() {
            self.coeffs[i].add_mul(k, c);
        }
        self.normalize();
    }

    /// Multiplies by `λ^k`.
    pub fn shifted_lambda(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![LaurentPoly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(LaurentPoly::is_one)
    }
}

impl Add<&LambdaPoly> for &LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, rhs: &LambdaPoly) -> LambdaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_default();
            if let Some(d) = rhs.coeffs.get(i) {
                c += d;
            }
            coeffs.push(c);
        }
        LambdaPoly::from_coeffs(coeffs)
    }
}

impl Sub<&LambdaPoly> for &LambdaPoly {
    type Output = LambdaPoly;
    fn sub(self, rhs: &LambdaPoly) -> LambdaPoly {
        self + &(-rhs)
    }
}

impl Neg for &LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        LambdaPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&LambdaPoly> for &LambdaPoly {
    type Output = LambdaPoly;
    fn mul(self, rhs: &LambdaPoly) -> LambdaPoly {
        if self.is_zero() || rhs.is_zero() {
            return LambdaPoly::zero();
        }
        let mut coeffs =
            vec![LaurentPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LambdaPoly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned_lambda_ops {
    ($($trait:ident :: $m:ident),* $(,)?) => {$(
        impl $trait<LambdaPoly> for LambdaPoly {
            type Output = LambdaPoly;
            fn $m(self, rhs: LambdaPoly) -> LambdaPoly { (&self).$m(&rhs) }
        }
        impl $trait<&LambdaPoly> for LambdaPoly {
            type Output = LambdaPoly;
            fn $m(self, rhs: &LambdaPoly) -> LambdaPoly { (&self).$m(rhs) }
        }
    )*};
}

forward_owned_lambda_ops!(Add::add, Sub::sub, Mul::mul);

impl AddAssign<&LambdaPoly> for LambdaPoly {
    fn add_assign(&mut self, rhs: &LambdaPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), LaurentPoly::zero());
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            self.coeffs[i] += c;
        }
        self.normalize();
    }
}

impl AddAssign<LambdaPoly> for LambdaPoly {
    fn add_assign(&mut self, rhs: LambdaPoly) {
        *self += &rhs;
    }
}

impl SubAssign<&LambdaPoly> for LambdaPoly {
    fn sub_assign(&mut self, rhs: &LambdaPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), LaurentPoly::zero());
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            self.coeffs[i] -= c;
        }
        self.normalize();
    }
}

impl Neg for LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        -&self
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})l")?,
                _ => write!(f, "({c})l^{n}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `Q_m`: `Q_0 = 0`, `Q_1 = 1`, `Q_{m+2} = λ Q_{m+1} - Q_m`, extended to
/// negative indices by `Q_{-m} = -Q_m`.
pub fn poly_q(m: i64) -> LambdaPoly {
    if m < 0 {
        return -poly_q(-m);
    }
    let lambda = LambdaPoly::lambda_pow(1);
    let mut prev = LambdaPoly::zero();
    let mut cur = LambdaPoly::one();
    match m {
        0 => return prev,
        1 => return cur,
        _ => {}
    }
    for _ in 2..=m {
        let next = &(&lambda * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_m`: `P_0 = -A^2 - A^{-2}`, `P_1 = -A^3 λ`, and
/// `P_m - A λ P_{m-1} + A^2 P_{m-2} = 0` run forwards or backwards.
pub fn poly_p(m: i64) -> LambdaPoly {
    let p0 = LambdaPoly::constant(LaurentPoly::loop_value());
    let p1 = LambdaPoly::monomial(1, -LaurentPoly::a_pow(3));
    if m == 0 {
        return p0;
    }
    if m == 1 {
        return p1;
    }
    let lambda = LambdaPoly::lambda_pow(1);
    if m > 1 {
        let a_lambda = lambda.scaled(&LaurentPoly::a_pow(1));
        let a2 = LaurentPoly::a_pow(2);
        let (mut prev, mut cur) = (p0, p1);
        for _ in 2..=m {
            let next = &(&a_lambda * &cur) - &prev.scaled(&a2);
            prev = cur;
            cur = next;
        }
        cur
    } else {
        // P_{m-2} = A^{-1} λ P_{m-1} - A^{-2} P_m
        let ainv_lambda = lambda.scaled(&LaurentPoly::a_pow(-1));
        let a_minus2 = LaurentPoly::a_pow(-2);
        let (mut above, mut cur) = (p1, p0);
        for _ in 0..(-m) {
            let below = &(&ainv_lambda * &cur) - &above.scaled(&a_minus2);
            above = cur;
            cur = below;
        }
        cur
    }
}

/// `F_m = A^{-m} Q_{m+1} + A^{-m+2} Q_m`.
pub fn poly_f(m: i64) -> LambdaPoly {
    poly_q(m + 1).scaled(&LaurentPoly::a_pow(-m))
        + poly_q(m).scaled(&LaurentPoly::a_pow(-m + 2))
}

/// `R_m = A^{-1} P_{m-1} - A^{-2} P_m`.
pub fn poly_r(m: i64) -> LambdaPoly {
    &poly_p(m - 1).scaled(&LaurentPoly::a_pow(-1)) - &poly_p(m).scaled(&LaurentPoly::a_pow(-2))
}

/// `P_{m,k}`: `P_{m,0} = P_m` and `P_{m,k} = A P_{m+1,k-1} + A^{-1} P_{m-1,k-1}`.
pub fn poly_pmk(m: i64, k: u32) -> LambdaPoly {
    let k = k as i64;
    // Level 0 holds P_j for j in [m-k, m+k]; each pass shrinks the window.
    let mut level: Vec<LambdaPoly> = (m - k..=m + k).map(poly_p).collect();
    let a = LaurentPoly::a_pow(1);
    let a_inv = LaurentPoly::a_pow(-1);
    for _ in 0..k {
        level = level
            .windows(3)
            .map(|w| &w[2].scaled(&a) + &w[0].scaled(&a_inv))
            .collect();
    }
    level.pop().expect("window never empties")
}

/// `φ_m = Q_{m+1} - 2Q_m + 2Q_{m-1} - ... + 2(-1)^{m-1}Q_2 + (-1)^m Q_1`,
/// monic of degree `m`.
pub fn poly_phi(m: u32) -> LambdaPoly {
    let m = m as i64;
    let mut acc = poly_q(m + 1);
    for j in (2..=m).rev() {
        let sign = if (m + 1 - j) % 2 == 1 { -1 } else { 1 };
        acc += poly_q(j).scaled(&LaurentPoly::constant(2 * sign));
    }
    if m >= 1 {
        let parity = if m % 2 == 0 { 1 } else { -1 };
        acc += poly_q(1).scaled(&LaurentPoly::constant(parity));
    }
    acc
}

/// The λ-polynomial factor of `ψ_m`, i.e. `Q_{m+1} - Q_m + ... + (-1)^m Q_1`;
/// the `x_{ν₁}` prefix lives in the ε = 1 slot of a `SigmaVector`.
pub fn poly_psi_core(m: u32) -> LambdaPoly {
    let m = m as i64;
    let mut acc = LambdaPoly::zero();
    for j in 0..=m {
        let term = poly_q(m + 1 - j);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= &term;
        }
    }
    acc
}

/// Expands `p` over the family `{P_m}`, returning `(m, c_m)` with
/// `p = Σ c_m P_m` and `0 ≤ m ≤ deg p`. Returns `None` when `p` is not in
/// the `R`-span: `P_0 = -A^2-A^{-2}` is not unit-leading, so the last
/// back-substitution step needs an exact division that can fail.
pub fn to_p_basis(p: &LambdaPoly) -> Option<Vec<(i64, LaurentPoly)>> {
    let mut rem = p.clone();
    let mut coords = Vec::new();
    while let Some(d) = rem.degree() {
        if d == 0 {
            let c = rem.coeff(0).div_exact(&LaurentPoly::loop_value())?;
            coords.push((0, c.clone()));
            rem -= &LambdaPoly::constant(c * LaurentPoly::loop_value());
        } else {
            // leading coefficient of P_d is the unit -A^{d+2}
            let c = -rem.coeff(d).shifted(-(d as i64) - 2);
            rem -= &poly_p(d as i64).scaled(&c);
            coords.push((d as i64, c));
            debug_assert!(rem.degree().map_or(true, |e| e < d));
        }
    }
    coords.reverse();
    coords.retain(|(_, c)| !c.is_zero());
    Some(coords)
}

/// Expands `p` over the monic family `{φ_m}`; always exact.
pub fn to_phi_basis(p: &LambdaPoly) -> Vec<(usize, LaurentPoly)> {
    to_monic_basis(p, |m| poly_phi(m as u32))
}

/// Expands `p` over the monic family `{ψ_m-core}`; always exact.
pub fn to_psi_core_basis(p: &LambdaPoly) -> Vec<(usize, LaurentPoly)> {
    to_monic_basis(p, |m| poly_psi_core(m as u32))
}

fn to_monic_basis(p: &LambdaPoly, family: impl Fn(usize) -> LambdaPoly) -> Vec<(usize, LaurentPoly)> {
    let mut rem = p.clone();
    let mut coords = Vec::new();
    while let Some(d) = rem.degree() {
        let c = rem.coeff(d);
        rem -= &family(d).scaled(&c);
        coords.push((d, c));
        debug_assert!(rem.degree().map_or(true, |e| e < d));
    }
    coords.reverse();
    coords.retain(|(_, c)| !c.is_zero());
    coords
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;

    fn a(e: i64) -> LaurentPoly {
        LaurentPoly::a_pow(e)
    }

    fn l(n: usize) -> LambdaPoly {
        LambdaPoly::lambda_pow(n)
    }

    #[test]
    fn q_values() {
        assert_eq!(poly_q(0), LambdaPoly::zero());
        assert_eq!(poly_q(1), LambdaPoly::one());
        assert_eq!(poly_q(2), l(1));
        // two steps of the recursion by hand: Q_3 = λ^2 - 1
        assert_eq!(poly_q(3), &l(2) - &LambdaPoly::one());
        assert_eq!(poly_q(-2), -l(1));
        for m in 1..=20 {
            assert_eq!(poly_q(m).degree(), Some((m - 1) as usize));
            assert!(poly_q(m).is_monic());
        }
    }

    #[test]
    fn p_values() {
        assert_eq!(poly_p(0), LambdaPoly::constant(-(a(2) + a(-2))));
        assert_eq!(poly_p(1), LambdaPoly::monomial(1, -a(3)));
        // one forward step: P_2 = -A^4 λ^2 + A^4 + 1
        let p2 = LambdaPoly::monomial(2, -a(4)) + LambdaPoly::constant(a(4) + LaurentPoly::one());
        assert_eq!(poly_p(2), p2);
        // one backward step: P_{-1} = -A^{-3} λ
        assert_eq!(poly_p(-1), LambdaPoly::monomial(1, -a(-3)));
    }

    #[test]
    fn p_satisfies_q_identity() {
        // P_m = -A^{m+2} Q_{m+1} + A^{m-2} Q_{m-1}
        for m in -20..=20 {
            let rhs = poly_q(m + 1).scaled(&-a(m + 2)) + poly_q(m - 1).scaled(&a(m - 2));
            assert_eq!(poly_p(m), rhs, "m={m}");
        }
    }

    #[test]
    fn f_values() {
        assert_eq!(poly_f(0), LambdaPoly::one());
        assert_eq!(poly_f(-1), LambdaPoly::constant(-a(3)));
        assert_eq!(poly_f(1), LambdaPoly::monomial(1, a(-1)) + LambdaPoly::constant(a(1)));
        assert_eq!(
            poly_f(-2),
            LambdaPoly::constant(-a(2)) + LambdaPoly::monomial(1, -a(4))
        );
    }

    #[test]
    fn f_to_p_identity() {
        // P_m = -A^{-2} F_{-m} + A^{-1} F_{-m-1}
        for m in -20..=20 {
            let rhs = poly_f(-m).scaled(&-a(-2)) + poly_f(-m - 1).scaled(&a(-1));
            assert_eq!(poly_p(m), rhs, "m={m}");
        }
    }

    #[test]
    fn f_degree_and_leading() {
        for m in -20..=20i64 {
            let f = poly_f(m);
            let deg = m.max(-m - 1);
            assert_eq!(f.degree(), Some(deg as usize), "m={m}");
            let lead = if m >= 0 { a(-m) } else { -a(-m + 2) };
            assert_eq!(f.leading(), Some(&lead), "m={m}");
        }
    }

    #[test]
    fn r_values_degree_and_leading() {
        // R_1 = A λ - A - A^{-3}, from P_0 and P_1 by hand
        let r1 = LambdaPoly::monomial(1, a(1)) + LambdaPoly::constant(-a(1) - a(-3));
        assert_eq!(poly_r(1), r1);
        // R_0 = 1 + A^{-4} - A^{-4} λ, from P_{-1} = -A^{-3} λ
        let r0 = LambdaPoly::constant(LaurentPoly::one() + a(-4)) + LambdaPoly::monomial(1, -a(-4));
        assert_eq!(poly_r(0), r0);
        for m in -20..=20i64 {
            let r = poly_r(m);
            // definition restated
            let def = poly_p(m - 1).scaled(&a(-1)) - poly_p(m).scaled(&a(-2));
            assert_eq!(r, def);
            let deg = m.max(1 - m);
            assert_eq!(r.degree(), Some(deg as usize), "m={m}");
            let lead = if m >= 1 { a(m) } else { -a(m - 4) };
            assert_eq!(r.leading(), Some(&lead), "m={m}");
        }
    }

    #[test]
    fn pmk_values() {
        for m in -5..=5 {
            assert_eq!(poly_pmk(m, 0), poly_p(m));
        }
        // P_{0,1} = A P_1 + A^{-1} P_{-1} = -(A^4 + A^{-4}) λ
        assert_eq!(poly_pmk(0, 1), LambdaPoly::monomial(1, -(a(4) + a(-4))));
        let p11 = poly_p(2).scaled(&a(1)) + poly_p(0).scaled(&a(-1));
        assert_eq!(poly_pmk(1, 1), p11);
    }

    #[test]
    fn phi_and_psi_values() {
        assert_eq!(poly_phi(0), LambdaPoly::one());
        assert_eq!(poly_phi(1), &l(1) - &LambdaPoly::one());
        assert_eq!(poly_phi(2), &l(2) - &l(1).scaled(&LaurentPoly::constant(2)));
        assert_eq!(poly_psi_core(0), LambdaPoly::one());
        assert_eq!(poly_psi_core(1), &l(1) - &LambdaPoly::one());
        assert_eq!(poly_psi_core(2), &l(2) - &l(1));
        for m in 0..=20 {
            assert!(poly_phi(m).is_monic());
            assert_eq!(poly_phi(m).degree(), Some(m as usize));
            assert!(poly_psi_core(m).is_monic());
            assert_eq!(poly_psi_core(m).degree(), Some(m as usize));
        }
    }

    #[test]
    fn p_basis_examples() {
        let p3 = poly_p(3);
        assert_eq!(to_p_basis(&p3), Some(vec![(3, LaurentPoly::one())]));
        assert_eq!(
            to_p_basis(&poly_p(0)),
            Some(vec![(0, LaurentPoly::one())])
        );
        // λ = -A^{-3} P_1
        assert_eq!(to_p_basis(&l(1)), Some(vec![(1, -a(-3))]));
        // 1 has no expansion: P_0 is not unit-leading
        assert_eq!(to_p_basis(&LambdaPoly::one()), None);
    }

    #[test]
    fn p_basis_round_trip() {
        // combinations of P_m reconstruct exactly
        let coords = vec![(0, a(2)), (2, -a(-1)), (5, LaurentPoly::constant(3))];
        let p = coords
            .iter()
            .fold(LambdaPoly::zero(), |acc, (m, c)| acc + poly_p(*m).scaled(c));
        assert_eq!(to_p_basis(&p), Some(coords));
    }

    #[test]
    fn phi_basis_examples() {
        assert_eq!(
            to_phi_basis(&poly_phi(2)),
            vec![(2, LaurentPoly::one())]
        );
        // λ = φ_0 + φ_1
        assert_eq!(
            to_phi_basis(&l(1)),
            vec![(0, LaurentPoly::one()), (1, LaurentPoly::one())]
        );
        assert_eq!(
            to_phi_basis(&LambdaPoly::one()),
            vec![(0, LaurentPoly::one())]
        );
    }

    #[test]
    fn phi_basis_round_trip() {
        let coords = vec![(1, a(-2)), (3, LaurentPoly::constant(-7)), (4, a(5))];
        let p = coords
            .iter()
            .fold(LambdaPoly::zero(), |acc, (m, c)| acc + poly_phi(*m as u32).scaled(c));
        let got = to_phi_basis(&p);
        assert_eq!(got, coords);
        let back = got
            .iter()
            .fold(LambdaPoly::zero(), |acc, (m, c)| acc + poly_phi(*m as u32).scaled(c));
        assert_eq!(back, p);
    }
}
