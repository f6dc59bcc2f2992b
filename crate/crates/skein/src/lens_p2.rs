//! The ⟨·⟩⋆ reduction and the full normal-form pipeline for framed-link
//! classes in `L(β₁,2)`, with coordinates in the finite basis
//! `Λ_{ν₁} = {λ^n | 0 ≤ n ≤ κ-1}`, `κ = max{ν₁+1, -ν₁}`.

use std::collections::HashMap;
use std::fmt;

use crate::annulus::{poly_f, poly_p, poly_pmk, LambdaPoly};
use crate::error::Error;
use crate::laurent::LaurentPoly;
use crate::words::{
    expand_polynomial_at, reduce_to_sigma, Nu1Context, SigmaVector, SkeinVector, Word,
};

/// Coordinates of a framed-link class over `Λ_{ν₁}`.
#[derive(Clone, PartialEq, Eq)]
pub struct LambdaBasisVector {
    ctx: Nu1Context,
    kappa: usize,
    coords: Vec<LaurentPoly>,
}

impl LambdaBasisVector {
    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn coords(&self) -> &[LaurentPoly] {
        &self.coords
    }

    pub fn coord(&self, n: usize) -> &LaurentPoly {
        &self.coords[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(LaurentPoly::is_zero)
    }

    pub fn scaled(&self, c: &LaurentPoly) -> Self {
        Self {
            ctx: self.ctx,
            kappa: self.kappa,
            coords: self.coords.iter().map(|k| k * c).collect(),
        }
    }
}

impl fmt::Debug for LambdaBasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "l^{i}: {c}")?;
        }
        write!(f, "]")
    }
}

/// `κ = max{ν₁+1, -ν₁}`, the rank of the `L(β₁,2)` basis.
pub fn kappa(ctx: &Nu1Context) -> usize {
    (ctx.nu1() + 1).max(-ctx.nu1()) as usize
}

/// The case-defined bracket sending Σ'-coordinates into `RΛ_{ν₁}`.
///
/// Each `⟨(x_{ν₁})^ε λ^n⟩⋆` is memoized per context since the recursion
/// reuses lower keys heavily.
pub struct StarReducer {
    ctx: Nu1Context,
    memo: HashMap<(u8, usize), LambdaPoly>,
}

impl StarReducer {
    pub fn new(ctx: Nu1Context) -> Self {
        Self { ctx, memo: HashMap::new() }
    }

    pub fn ctx(&self) -> &Nu1Context {
        &self.ctx
    }

    /// Applies the bracket linearly to a Σ'-vector.
    pub fn reduce(&mut self, s: &SigmaVector) -> LambdaBasisVector {
        let mut acc = self.eval_poly(0, &s.part0);
        acc += self.eval_poly(1, &s.part1);
        let kappa = kappa(&self.ctx);
        debug_assert!(acc.degree().map_or(true, |d| d < kappa));
        let coords = (0..kappa).map(|n| acc.coeff(n)).collect();
        LambdaBasisVector { ctx: self.ctx, kappa, coords }
    }

    fn eval_poly(&mut self, eps: u8, p: &LambdaPoly) -> LambdaPoly {
        let mut acc = LambdaPoly::zero();
        for (n, c) in p.iter() {
            acc += self.eval(eps, n).scaled(c);
        }
        acc
    }

    /// `⟨(x_{ν₁})^ε λ^n⟩⋆` as an element of `RΛ_{ν₁}`.
    fn eval(&mut self, eps: u8, n: usize) -> LambdaPoly {
        if let Some(hit) = self.memo.get(&(eps, n)) {
            return hit.clone();
        }
        let nu1 = self.ctx.nu1();
        let ni = n as i64;
        let value = if eps == 0 {
            if nu1 >= 0 {
                if ni < nu1 + 1 {
                    LambdaPoly::lambda_pow(n)
                } else {
                    // ⟨λ^n + A^{n+2} P_{-n}⟩⋆ - A^{n+2} ⟨x_{ν₁} F_{ν₁-n}⟩⋆
                    let drop = LambdaPoly::lambda_pow(n)
                        + poly_p(-ni).scaled(&LaurentPoly::a_pow(ni + 2));
                    debug_assert!(drop.degree().map_or(true, |d| d < n));
                    let part0 = self.eval_poly(0, &drop);
                    let part1 = self.eval_poly(1, &poly_f(nu1 - ni));
                    part0 - part1.scaled(&LaurentPoly::a_pow(ni + 2))
                }
            } else if ni < -nu1 {
                LambdaPoly::lambda_pow(n)
            } else {
                // ⟨λ^n + A^{-n-2} P_n⟩⋆ - A^{-n-2} ⟨x_{ν₁} F_{ν₁+n}⟩⋆
                let drop = LambdaPoly::lambda_pow(n)
                    + poly_p(ni).scaled(&LaurentPoly::a_pow(-ni - 2));
                debug_assert!(drop.degree().map_or(true, |d| d < n));
                let part0 = self.eval_poly(0, &drop);
                let part1 = self.eval_poly(1, &poly_f(nu1 + ni));
                part0 - part1.scaled(&LaurentPoly::a_pow(-ni - 2))
            }
        } else if nu1 >= 0 {
            // ⟨x_{ν₁}(λ^n - A^n F_n)⟩⋆ + A^n ⟨P_{n-ν₁}⟩⋆
            let drop = LambdaPoly::lambda_pow(n) - poly_f(ni).scaled(&LaurentPoly::a_pow(ni));
            debug_assert!(drop.degree().map_or(true, |d| d < n));
            let part1 = self.eval_poly(1, &drop);
            let part0 = self.eval_poly(0, &poly_p(ni - nu1));
            part1 + part0.scaled(&LaurentPoly::a_pow(ni))
        } else {
            // ⟨x_{ν₁}(λ^n + A^{-n-3} F_{-n-1})⟩⋆ - A^{-n-3} ⟨P_{-n-1-ν₁}⟩⋆
            let drop = LambdaPoly::lambda_pow(n)
                + poly_f(-ni - 1).scaled(&LaurentPoly::a_pow(-ni - 3));
            debug_assert!(drop.degree().map_or(true, |d| d < n));
            let part1 = self.eval_poly(1, &drop);
            let part0 = self.eval_poly(0, &poly_p(-ni - 1 - nu1));
            part1 - part0.scaled(&LaurentPoly::a_pow(-ni - 3))
        };
        self.memo.insert((eps, n), value.clone());
        value
    }
}

/// Applies ⟨·⟩⋆ to a Σ'-vector.
pub fn star_reduce(s: &SigmaVector, ctx: &Nu1Context) -> LambdaBasisVector {
    StarReducer::new(*ctx).reduce(s)
}

/// The full pipeline `⟨·⟩⋆ ∘ ⟪·⟫_{Σ'}`: the unique coordinates of a
/// framed-link class in `L(β₁,2)`.
pub fn kbsm_class_p2(v: &SkeinVector, beta1: i64) -> Result<LambdaBasisVector, Error> {
    let ctx = Nu1Context::from_beta1(beta1)?;
    Ok(star_reduce(&reduce_to_sigma(v, &ctx), &ctx))
}

/// Checks one instance of the Ω∞ kernel relation
/// `(x_{ν₁})^ε λ^{n₁} x_m λ^{n₂} = (x_{ν₁})^ε λ^{n₁} P_{-m,n₂}`.
pub fn verify_omega_infinity(
    beta1: i64,
    eps: u8,
    n1: u32,
    m: i64,
    n2: u32,
) -> Result<bool, Error> {
    let ctx = Nu1Context::from_beta1(beta1)?;
    let prefix = if eps == 0 {
        Word::lambda(n1)
    } else {
        Word::x_lambda(ctx.nu1(), n1)
    };
    let lhs: SkeinVector = prefix.concat(&Word::x_lambda(m, n2)).into();
    let rhs = expand_polynomial_at(&prefix, &poly_pmk(-m, n2), &Word::empty());
    let diff = lhs - rhs;
    Ok(kbsm_class_p2(&diff, beta1)?.is_zero())
}

/// A finite basis listing: rank and the basis words in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisDescription {
    pub rank: usize,
    pub elements: Vec<Word>,
}

/// The basis `Λ_{ν₁}` of `L(β₁,2)`; its rank equals `⌊|β₁|/2⌋ + 1`.
pub fn basis_p2(beta1: i64) -> Result<BasisDescription, Error> {
    let ctx = Nu1Context::from_beta1(beta1)?;
    let kappa = kappa(&ctx);
    Ok(BasisDescription {
        rank: kappa,
        elements: (0..kappa).map(|n| Word::lambda(n as u32)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annulus::poly_r;
    use crate::words::Strategy;

    fn a(e: i64) -> LaurentPoly {
        LaurentPoly::a_pow(e)
    }

    fn class(v: &SkeinVector, beta1: i64) -> LambdaBasisVector {
        kbsm_class_p2(v, beta1).unwrap()
    }

    #[test]
    fn star_keeps_low_lambda_powers() {
        let ctx = Nu1Context::from_beta1(3).unwrap();
        let s = SigmaVector::from_parts(LambdaPoly::lambda_pow(1), LambdaPoly::zero());
        let out = star_reduce(&s, &ctx);
        assert_eq!(out.coords(), &[LaurentPoly::zero(), LaurentPoly::one()]);
    }

    #[test]
    fn star_on_x_generator() {
        // ν₁ = 1: ⟨x₁⟩⋆ = ⟨P_{-1}⟩⋆ = -A^{-3} λ
        let ctx = Nu1Context::from_beta1(3).unwrap();
        let s = SigmaVector::from_parts(LambdaPoly::zero(), LambdaPoly::one());
        let out = star_reduce(&s, &ctx);
        assert_eq!(out.coords(), &[LaurentPoly::zero(), -a(-3)]);
    }

    #[test]
    fn star_lowers_lambda_squared() {
        // ν₁ = 1: ⟨λ²⟩⋆ = (A⁴+1) - A⁴ λ, by case b2 then b3
        let ctx = Nu1Context::from_beta1(3).unwrap();
        let s = SigmaVector::from_parts(LambdaPoly::lambda_pow(2), LambdaPoly::zero());
        let out = star_reduce(&s, &ctx);
        assert_eq!(out.coords(), &[a(4) + LaurentPoly::one(), -a(4)]);
    }

    #[test]
    fn unknot_class_in_s3() {
        let out = class(&Word::x(0).into(), 1);
        assert_eq!(out.coords(), &[LaurentPoly::loop_value()]);
    }

    #[test]
    fn basis_element_is_fixed() {
        let out = class(&Word::lambda(1).into(), 3);
        assert_eq!(out.coords(), &[LaurentPoly::zero(), LaurentPoly::one()]);
    }

    #[test]
    fn omega_infinity_kernel_element() {
        // x₁ - t(-1) dies: t(-1) expands to P_{-1}
        let v = SkeinVector::from(Word::x(1))
            - SkeinVector::from_lambda_poly(&crate::words::t_substitute(-1, 0));
        assert!(class(&v, 3).is_zero());
    }

    #[test]
    fn omega_infinity_spot_checks() {
        assert!(verify_omega_infinity(3, 0, 0, 1, 0).unwrap());
        assert!(verify_omega_infinity(1, 1, 0, 0, 0).unwrap());
        assert!(verify_omega_infinity(-3, 0, 2, -2, 1).unwrap());
    }

    #[test]
    fn rank_law() {
        for beta1 in (-21..=21).filter(|b| b % 2 != 0) {
            let b = basis_p2(beta1).unwrap();
            assert_eq!(b.rank as i64, beta1.abs() / 2 + 1, "beta1={beta1}");
        }
        assert_eq!(basis_p2(1).unwrap().rank, 1);
        assert_eq!(basis_p2(3).unwrap().rank, 2);
        assert_eq!(basis_p2(-3).unwrap().rank, 2);
    }

    #[test]
    fn retraction_on_basis_words() {
        for beta1 in [-11, -5, -1, 1, 5, 11] {
            let basis = basis_p2(beta1).unwrap();
            for (i, w) in basis.elements.iter().enumerate() {
                let out = class(&w.clone().into(), beta1);
                for (j, c) in out.coords().iter().enumerate() {
                    let expect = if i == j {
                        LaurentPoly::one()
                    } else {
                        LaurentPoly::zero()
                    };
                    assert_eq!(c, &expect, "beta1={beta1} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn disjoint_unknot_scales_by_loop_value() {
        let v: SkeinVector = Word::lambda(1)
            .concat(&Word::x(2))
            .concat(&Word::lambda(1))
            .into();
        let scaled = class(&v.scaled(&LaurentPoly::loop_value()), 5);
        assert_eq!(scaled, class(&v, 5).scaled(&LaurentPoly::loop_value()));
    }

    #[test]
    fn even_beta_rejected() {
        assert!(kbsm_class_p2(&SkeinVector::one(), 2).is_err());
        assert!(basis_p2(0).is_err());
    }

    #[test]
    fn star_agrees_with_collapse_route() {
        // reduce x₀x₀ before and after the bracket: both give ⟨R₀⟩⋆
        let ctx = Nu1Context::from_beta1(1).unwrap();
        let v: SkeinVector = Word::x(0).concat(&Word::x(0)).into();
        let via_words = star_reduce(
            &crate::words::reduce_to_sigma_with(&v, &ctx, Strategy::LeftmostAbsorption),
            &ctx,
        );
        let direct = star_reduce(
            &SigmaVector::from_parts(poly_r(0), LambdaPoly::zero()),
            &ctx,
        );
        assert_eq!(via_words, direct);
    }
}
