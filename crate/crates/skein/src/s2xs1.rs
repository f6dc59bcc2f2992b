//! The `ν₀ = -1` case: change of basis to `{φ_m, ψ_m}`, the torsion
//! submodule, and the cyclic-decomposition normal form of the skein module
//! of `S²×S¹`, which is `R ⊕ ⨁_{i≥1} R/(1-A^{2i+4})`.

use std::collections::BTreeMap;
use std::fmt;

use crate::annulus::{
    poly_f, poly_phi, poly_psi_core, poly_q, poly_r, to_phi_basis, to_psi_core_basis, LambdaPoly,
};
use crate::error::Error;
use crate::laurent::{CyclicQuotientElem, LaurentPoly};
use crate::lens_4k::{sbeta2_combination, SBeta2Variant};
use crate::words::{
    expand_polynomial_at, reduce_to_sigma, Nu1Context, SigmaVector, SkeinVector, Word,
};

/// Coordinates of a Σ'-vector over the basis `{φ_m} ∪ {ψ_m}`; only nonzero
/// coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PhiPsiVector {
    pub phi: BTreeMap<usize, LaurentPoly>,
    pub psi: BTreeMap<usize, LaurentPoly>,
}

/// The normal form of a framed-link class in `S²×S¹`: one free coordinate on
/// `φ₀`, and torsion residues on `φ_i` mod `(1-A^{4i+4})` and `ψ_{i-1}` mod
/// `(1-A^{4i+2})`, `i ≥ 1`. Zero residues are dropped.
#[derive(Clone, PartialEq, Eq)]
pub struct CyclicDecomposition {
    free_part: LaurentPoly,
    phi_torsion: BTreeMap<usize, CyclicQuotientElem>,
    psi_torsion: BTreeMap<usize, CyclicQuotientElem>,
}

impl CyclicDecomposition {
    pub fn free_part(&self) -> &LaurentPoly {
        &self.free_part
    }

    /// Nonzero residues of the `φ_i` coordinates, keyed by `i ≥ 1`.
    pub fn phi_torsion(&self) -> &BTreeMap<usize, CyclicQuotientElem> {
        &self.phi_torsion
    }

    /// Nonzero residues of the `ψ_{i-1}` coordinates, keyed by `i ≥ 1`.
    pub fn psi_torsion(&self) -> &BTreeMap<usize, CyclicQuotientElem> {
        &self.psi_torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_part.is_zero() && self.phi_torsion.is_empty() && self.psi_torsion.is_empty()
    }
}

impl fmt::Debug for CyclicDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "free={}", self.free_part)?;
        for (i, r) in &self.phi_torsion {
            write!(f, ", phi({i})={r}")?;
        }
        for (i, r) in &self.psi_torsion {
            write!(f, ", psi({})={r}", i - 1)?;
        }
        Ok(())
    }
}

/// Modulus of the `φ_i` torsion summand, `i ≥ 1`.
pub fn phi_modulus(i: usize) -> i64 {
    4 * i as i64 + 4
}

/// Modulus of the `ψ_{i-1}` torsion summand, `i ≥ 1`.
pub fn psi_modulus(i: usize) -> i64 {
    4 * i as i64 + 2
}

/// Expands both ε-parts of a Σ'-vector over the monic families.
pub fn to_phipsi(s: &SigmaVector) -> PhiPsiVector {
    PhiPsiVector {
        phi: to_phi_basis(&s.part0).into_iter().collect(),
        psi: to_psi_core_basis(&s.part1).into_iter().collect(),
    }
}

/// Reduces φ/ψ-coordinates modulo their annihilators: `q_{2i+2}φ_i` spans
/// the same ideal as `(1-A^{4i+4})φ_i` since `q_k = A^{-k}(1-A^{2k})`.
pub fn torsion_normal_form(v: &PhiPsiVector) -> CyclicDecomposition {
    let mut phi_torsion = BTreeMap::new();
    let mut free_part = LaurentPoly::zero();
    for (&i, c) in &v.phi {
        if i == 0 {
            free_part = c.clone();
            continue;
        }
        let residue = c.mod_cyclic(phi_modulus(i)).expect("positive modulus");
        if !residue.is_zero() {
            phi_torsion.insert(i, residue);
        }
    }
    let mut psi_torsion = BTreeMap::new();
    for (&j, c) in &v.psi {
        let i = j + 1;
        let residue = c.mod_cyclic(psi_modulus(i)).expect("positive modulus");
        if !residue.is_zero() {
            psi_torsion.insert(i, residue);
        }
    }
    CyclicDecomposition { free_part, phi_torsion, psi_torsion }
}

/// The context of the `β₁ + β₂ = 0` presentation: `ν₂ = -ν₁ - 1`.
fn sphere_context(beta1: i64) -> Result<(Nu1Context, i64), Error> {
    let ctx = Nu1Context::from_beta1(beta1)?;
    Ok((ctx, -ctx.nu1() - 1))
}

/// The full pipeline for `S²×S¹`: Σ'-reduction (only fibered-torus relations,
/// valid in the quotient), φ/ψ expansion, then torsion normal form.
pub fn kbsm_class_s2xs1(v: &SkeinVector, beta1: i64) -> Result<CyclicDecomposition, Error> {
    let (ctx, _) = sphere_context(beta1)?;
    Ok(torsion_normal_form(&to_phipsi(&reduce_to_sigma(v, &ctx))))
}

/// Whether `v` lies in the kernel submodule, i.e. has zero free part and
/// all-zero torsion residues.
pub fn is_zero_class(v: &SkeinVector, beta1: i64) -> Result<bool, Error> {
    Ok(kbsm_class_s2xs1(v, beta1)?.is_zero())
}

/// `Φ_m` for any integer index: `q_{2m+2}φ_m` for `m ≥ 1`, zero at
/// `m ∈ {0,-1}`, and `Φ_m = -Φ_{-m-2}` below.
pub fn cap_phi(m: i64) -> LambdaPoly {
    match m {
        0 | -1 => LambdaPoly::zero(),
        _ if m >= 1 => poly_phi(m as u32).scaled(&LaurentPoly::q(2 * m + 2)),
        _ => -cap_phi(-m - 2),
    }
}

/// The λ-part of `Ψ_m` (the `x_{ν₁}` prefix is implicit): `q_{2m+1}ψ_{m-1}`
/// for `m ≥ 1`, zero at `m ∈ {0,-1}`, and `Ψ_m = Ψ_{-m-1}` below.
pub fn cap_psi(m: i64) -> LambdaPoly {
    match m {
        0 | -1 => LambdaPoly::zero(),
        _ if m >= 1 => poly_psi_core((m - 1) as u32).scaled(&LaurentPoly::q(2 * m + 1)),
        _ => cap_psi(-m - 1),
    }
}

/// Checks `x_{ν₁} F_m x_{-ν₂} - R_{m+1} = -A^{-m-1}(Φ_m + zΦ_{m-1} + Φ_{m-2})`
/// in the fibered torus, along with the intermediate two-term q-form.
pub fn verify_phi_relation(m: i64, beta1: i64) -> Result<bool, Error> {
    let (ctx, nu2) = sphere_context(beta1)?;
    let word_part = expand_polynomial_at(&Word::x(ctx.nu1()), &poly_f(m), &Word::x(-nu2));
    let lhs_vec = word_part - SkeinVector::from_lambda_poly(&poly_r(m + 1));
    let lhs = reduce_to_sigma(&lhs_vec, &ctx);

    let unit = -LaurentPoly::a_pow(-m - 1);
    let q_form = (&(&poly_q(m + 1) - &poly_q(m)).scaled(&LaurentPoly::q(2 * m + 2))
        + &(&poly_q(m) - &poly_q(m - 1)).scaled(&LaurentPoly::q(2 * m - 2)))
        .scaled(&unit);
    let intermediate = SigmaVector::from_parts(q_form, LambdaPoly::zero());

    let phi_form = (cap_phi(m) + cap_phi(m - 1).scaled(&LaurentPoly::z()) + cap_phi(m - 2))
        .scaled(&unit);
    let final_form = SigmaVector::from_parts(phi_form, LambdaPoly::zero());

    Ok(lhs == intermediate && lhs == final_form)
}

/// Checks `A^{m-2}(F_m x_{-ν₂} - x_{ν₁}F_{-1-m}) - A^{m-3}(F_{m-1}x_{-ν₂} - x_{ν₁}F_{-m})
/// = Ψ_m + zΨ_{m-1} + Ψ_{m-2}`, along with the intermediate q-form.
pub fn verify_psi_relation(m: i64, beta1: i64) -> Result<bool, Error> {
    let (ctx, nu2) = sphere_context(beta1)?;
    let fx = |j: i64| expand_polynomial_at(&Word::empty(), &poly_f(j), &Word::x(-nu2));
    let xf = |j: i64| expand_polynomial_at(&Word::x(ctx.nu1()), &poly_f(j), &Word::empty());
    let lhs_vec = (fx(m) - xf(-1 - m)).scaled(&LaurentPoly::a_pow(m - 2))
        - (fx(m - 1) - xf(-m)).scaled(&LaurentPoly::a_pow(m - 3));
    let lhs = reduce_to_sigma(&lhs_vec, &ctx);

    let q_form = poly_q(m).scaled(&LaurentPoly::q(2 * m + 1))
        + poly_q(m - 1).scaled(&LaurentPoly::q(2 * m - 3));
    let intermediate = SigmaVector::from_parts(LambdaPoly::zero(), q_form);

    let psi_form = cap_psi(m) + cap_psi(m - 1).scaled(&LaurentPoly::z()) + cap_psi(m - 2);
    let final_form = SigmaVector::from_parts(LambdaPoly::zero(), psi_form);

    Ok(lhs == intermediate && lhs == final_form)
}

/// The two coefficient sequences satisfying `u_{m+1} = z u_m - u_{m-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TelescopeKind {
    /// `u_m = q_{2m}`
    QEven,
    /// `u_m = q_{2m-1}`
    QOdd,
}

impl TelescopeKind {
    pub fn u(&self, m: i64) -> LaurentPoly {
        match self {
            TelescopeKind::QEven => LaurentPoly::q(2 * m),
            TelescopeKind::QOdd => LaurentPoly::q(2 * m - 1),
        }
    }
}

/// The telescoping sum `S_m`: `u_{m+1} Σ_{i=0}^{m-1} (-1)^i B_{m-i}` for
/// `m > 0` and `u_{m+1} Σ_{i=0}^{-m-1} (-1)^i B_{m+i+1}` for `m ≤ 0`.
pub fn telescope_s(kind: TelescopeKind, b: impl Fn(i64) -> LambdaPoly, m: i64) -> LambdaPoly {
    let mut sum = LambdaPoly::zero();
    if m > 0 {
        for i in 0..m {
            let term = b(m - i);
            if i % 2 == 0 {
                sum += term;
            } else {
                sum -= &term;
            }
        }
    } else {
        for i in 0..(-m) {
            let term = b(m + i + 1);
            if i % 2 == 0 {
                sum += term;
            } else {
                sum -= &term;
            }
        }
    }
    sum.scaled(&kind.u(m + 1))
}

/// `u_{m+1}B_m + u_{m-1}B_{m-1} = S_m + zS_{m-1} + S_{m-2}` for the given
/// sequence pair.
pub fn verify_telescope_identity(
    kind: TelescopeKind,
    b: impl Fn(i64) -> LambdaPoly + Copy,
    m: i64,
) -> bool {
    let lhs = b(m).scaled(&kind.u(m + 1)) + b(m - 1).scaled(&kind.u(m - 1));
    let rhs = telescope_s(kind, b, m)
        + telescope_s(kind, b, m - 1).scaled(&LaurentPoly::z())
        + telescope_s(kind, b, m - 2);
    lhs == rhs
}

/// Builds the `S_{β₂}`-move combination `T_m(n₁,n₂)` for the `β₁+β₂ = 0`
/// presentation and checks that it is a zero class.
pub fn verify_kernel_membership(
    variant: SBeta2Variant,
    eps: u8,
    m: i64,
    n1: u32,
    n2: u32,
    beta1: i64,
) -> Result<bool, Error> {
    let (ctx, nu2) = sphere_context(beta1)?;
    let v = sbeta2_combination(ctx.nu1(), nu2, variant, eps, m, n1, n2);
    is_zero_class(&v, beta1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annulus::poly_p;

    fn a(e: i64) -> LaurentPoly {
        LaurentPoly::a_pow(e)
    }

    #[test]
    fn phipsi_expansion_examples() {
        let s = SigmaVector::from_parts(LambdaPoly::one(), LambdaPoly::zero());
        let v = to_phipsi(&s);
        assert_eq!(v.phi.get(&0), Some(&LaurentPoly::one()));
        assert!(v.psi.is_empty());

        let s = SigmaVector::from_parts(LambdaPoly::lambda_pow(1), LambdaPoly::zero());
        let v = to_phipsi(&s);
        assert_eq!(v.phi.get(&0), Some(&LaurentPoly::one()));
        assert_eq!(v.phi.get(&1), Some(&LaurentPoly::one()));

        let s = SigmaVector::from_parts(LambdaPoly::zero(), LambdaPoly::one());
        let v = to_phipsi(&s);
        assert_eq!(v.psi.get(&0), Some(&LaurentPoly::one()));
    }

    #[test]
    fn torsion_normal_form_examples() {
        // q₄ φ₁ is Φ₁, hence zero in the quotient
        let mut v = PhiPsiVector::default();
        v.phi.insert(1, LaurentPoly::q(4));
        assert!(torsion_normal_form(&v).is_zero());

        let mut v = PhiPsiVector::default();
        v.phi.insert(1, a(9));
        let d = torsion_normal_form(&v);
        assert_eq!(d.phi_torsion()[&1].residue(), &a(1));

        let mut v = PhiPsiVector::default();
        v.phi.insert(0, LaurentPoly::loop_value());
        let d = torsion_normal_form(&v);
        assert_eq!(d.free_part(), &LaurentPoly::loop_value());
        assert!(d.phi_torsion().is_empty());
    }

    #[test]
    fn pair_collapse_is_zero_class() {
        // x₀x₁ - R₁ at β₁ = 1 (ν₁ = 0, ν₂ = -1)
        let v = SkeinVector::from(Word::x(0).concat(&Word::x(1)))
            - SkeinVector::from_lambda_poly(&poly_r(1));
        assert!(is_zero_class(&v, 1).unwrap());
    }

    #[test]
    fn cap_phi_is_zero_class() {
        // q₄(λ-1) = Φ₁
        let v = SkeinVector::from_lambda_poly(
            &(LambdaPoly::lambda_pow(1) - LambdaPoly::one()).scaled(&LaurentPoly::q(4)),
        );
        assert!(is_zero_class(&v, 1).unwrap());
        // λ-1 = φ₁ itself is not
        let v = SkeinVector::from_lambda_poly(
            &(LambdaPoly::lambda_pow(1) - LambdaPoly::one()),
        );
        let d = kbsm_class_s2xs1(&v, 1).unwrap();
        assert!(!d.is_zero());
        assert_eq!(d.phi_torsion()[&1].residue(), &LaurentPoly::one());
        assert_eq!(d.phi_torsion()[&1].modulus(), 8);
    }

    #[test]
    fn cap_psi_is_zero_class() {
        assert!(is_zero_class(&SkeinVector::zero(), 1).unwrap());
        // Ψ₁ = q₃ x₀ at β₁ = 1
        let v = SkeinVector::term(Word::x(0), LaurentPoly::q(3));
        assert!(is_zero_class(&v, 1).unwrap());
        // x₀ alone has ψ₀-coordinate 1, and 1 ∉ (1-A⁶)
        assert!(!is_zero_class(&Word::x(0).into(), 1).unwrap());
    }

    #[test]
    fn extended_indices() {
        assert!(cap_phi(0).is_zero());
        assert!(cap_phi(-1).is_zero());
        assert_eq!(cap_phi(-3), -cap_phi(1));
        assert!(cap_psi(0).is_zero());
        assert_eq!(cap_psi(-2), cap_psi(1));
    }

    #[test]
    fn phi_relation_spot_checks() {
        // m = 0 is the exact collapse x_{ν₁} F₀ x_{-ν₂} = R₁
        for beta1 in [1, -1, 3] {
            assert!(verify_phi_relation(0, beta1).unwrap(), "beta1={beta1}");
            assert!(verify_phi_relation(1, beta1).unwrap(), "beta1={beta1}");
            assert!(verify_phi_relation(-3, beta1).unwrap(), "beta1={beta1}");
        }
    }

    #[test]
    fn psi_relation_spot_checks() {
        for beta1 in [1, -1, 3] {
            assert!(verify_psi_relation(0, beta1).unwrap(), "beta1={beta1}");
            assert!(verify_psi_relation(1, beta1).unwrap(), "beta1={beta1}");
            assert!(verify_psi_relation(-2, beta1).unwrap(), "beta1={beta1}");
        }
    }

    #[test]
    fn psi_relation_m0_value() {
        // the combined left side at m = 0 is -q_{-3} x_{ν₁} = q₃ x_{ν₁}
        let (ctx, nu2) = super::sphere_context(1).unwrap();
        let fx = |j: i64| expand_polynomial_at(&Word::empty(), &poly_f(j), &Word::x(-nu2));
        let xf = |j: i64| expand_polynomial_at(&Word::x(ctx.nu1()), &poly_f(j), &Word::empty());
        let lhs_vec = (fx(0) - xf(-1)).scaled(&a(-2)) - (fx(-1) - xf(0)).scaled(&a(-3));
        let lhs = reduce_to_sigma(&lhs_vec, &ctx);
        let expect = SigmaVector::from_parts(
            LambdaPoly::zero(),
            LambdaPoly::constant(-LaurentPoly::q(-3)),
        );
        assert_eq!(lhs, expect);
    }

    #[test]
    fn telescope_values() {
        let b_phi = |m: i64| &poly_q(m + 1) - &poly_q(m);
        assert!(telescope_s(TelescopeKind::QEven, b_phi, 0).is_zero());
        // S₂ for the φ-family is q₆ φ₂ = Φ₂
        assert_eq!(telescope_s(TelescopeKind::QEven, b_phi, 2), cap_phi(2));

        let b_psi = poly_q;
        assert!(verify_telescope_identity(TelescopeKind::QOdd, b_psi, 3));
    }

    #[test]
    fn telescope_matches_cap_families() {
        let b_phi = |m: i64| &poly_q(m + 1) - &poly_q(m);
        let b_psi = poly_q;
        for m in -6..=6 {
            assert_eq!(telescope_s(TelescopeKind::QEven, b_phi, m), cap_phi(m), "phi m={m}");
            assert_eq!(telescope_s(TelescopeKind::QOdd, b_psi, m), cap_psi(m), "psi m={m}");
        }
    }

    #[test]
    fn kernel_membership_spot_checks() {
        assert!(verify_kernel_membership(SBeta2Variant::TForm, 0, 0, 0, 0, 1).unwrap());
        assert!(verify_kernel_membership(SBeta2Variant::XForm, 1, 1, 1, 0, 1).unwrap());
        assert!(verify_kernel_membership(SBeta2Variant::XForm, 0, -2, 0, 2, 3).unwrap());
    }

    #[test]
    fn unknot_lands_in_free_part() {
        // P₀'s constant stays on φ₀
        let v = SkeinVector::from_lambda_poly(&poly_p(0));
        let d = kbsm_class_s2xs1(&v, 1).unwrap();
        assert_eq!(d.free_part(), &LaurentPoly::loop_value());
        assert!(d.phi_torsion().is_empty() && d.psi_torsion().is_empty());
    }
}
