//! The ⟨·⟩⋆⋆ reduction and normal-form pipeline for `M₂(β₁,β₂) ≅ L(4k,2k+1)`
//! with `k = ν₀+1 ≠ 0`, plus the relation and bridge-identity verifiers.

use std::collections::HashMap;
use std::fmt;

use crate::annulus::{poly_f, poly_p, poly_pmk, poly_r, LambdaPoly};
use crate::error::Error;
use crate::laurent::LaurentPoly;
use crate::lens_p2::BasisDescription;
use crate::words::{
    expand_polynomial_at, reduce_to_sigma, Nu1Context, SigmaReducer, SigmaVector, SkeinVector,
    Word,
};

/// Parameters of the two-fiber model: `β₁, β₂` odd, `ν_i = ⌊β_i/2⌋`,
/// `ν₀ = ν₁+ν₂` and `k = ν₀+1`, so the manifold is `L(4k,2k+1)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TwoFiberParams {
    beta1: i64,
    beta2: i64,
    nu1: i64,
    nu2: i64,
    nu0: i64,
    k: i64,
}

impl TwoFiberParams {
    pub fn from_betas(beta1: i64, beta2: i64) -> Result<Self, Error> {
        if beta1.rem_euclid(2) == 0 {
            return Err(Error::EvenBeta { name: "beta1", value: beta1 });
        }
        if beta2.rem_euclid(2) == 0 {
            return Err(Error::EvenBeta { name: "beta2", value: beta2 });
        }
        let nu1 = beta1.div_euclid(2);
        let nu2 = beta2.div_euclid(2);
        let nu0 = nu1 + nu2;
        Ok(Self { beta1, beta2, nu1, nu2, nu0, k: nu0 + 1 })
    }

    pub fn beta1(&self) -> i64 {
        self.beta1
    }

    pub fn beta2(&self) -> i64 {
        self.beta2
    }

    pub fn nu1(&self) -> i64 {
        self.nu1
    }

    pub fn nu2(&self) -> i64 {
        self.nu2
    }

    pub fn nu0(&self) -> i64 {
        self.nu0
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn nu1_context(&self) -> Nu1Context {
        Nu1Context::from_beta1(self.beta1).expect("beta1 validated at construction")
    }

    /// Errors out of the free-module pipeline when `k = 0` (the `S²×S¹` case).
    fn require_lens(&self) -> Result<(), Error> {
        if self.k == 0 {
            return Err(Error::SphereProduct);
        }
        Ok(())
    }

    /// Index bounds `(N₀, N₁)` of `Σ''`: coordinates run over `λ^n` for
    /// `0 ≤ n ≤ N₀` and `x_{ν₁}λ^k` for `0 ≤ k ≤ N₁`.
    pub fn sigma_pp_bounds(&self) -> (usize, usize) {
        if self.nu0 >= 0 {
            ((self.nu0 + 1) as usize, self.nu0 as usize)
        } else {
            debug_assert!(self.nu0 <= -2);
            ((-self.nu0 - 1) as usize, (-self.nu0 - 2) as usize)
        }
    }
}

/// Coordinates over `Σ''_{ν₁,ν₂}`; total rank `2|ν₀+1|+1 = |β₁+β₂|+1`.
#[derive(Clone, PartialEq, Eq)]
pub struct SigmaPPVector {
    params: TwoFiberParams,
    coords0: Vec<LaurentPoly>,
    coords1: Vec<LaurentPoly>,
}

impl SigmaPPVector {
    pub fn params(&self) -> &TwoFiberParams {
        &self.params
    }

    /// Coefficients on `λ^0 ... λ^{N₀}`.
    pub fn coords0(&self) -> &[LaurentPoly] {
        &self.coords0
    }

    /// Coefficients on `x_{ν₁}λ^0 ... x_{ν₁}λ^{N₁}`.
    pub fn coords1(&self) -> &[LaurentPoly] {
        &self.coords1
    }

    pub fn rank(&self) -> usize {
        self.coords0.len() + self.coords1.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords0.iter().chain(&self.coords1).all(LaurentPoly::is_zero)
    }

    pub fn scaled(&self, c: &LaurentPoly) -> Self {
        Self {
            params: self.params,
            coords0: self.coords0.iter().map(|k| k * c).collect(),
            coords1: self.coords1.iter().map(|k| k * c).collect(),
        }
    }
}

impl fmt::Debug for SigmaPPVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coords0={:?} coords1={:?}", self.coords0, self.coords1)
    }
}

/// The ⟨·⟩⋆⋆ bracket. Embedded `⟪...⟫_{Σ'}` sub-terms are evaluated by
/// building the word and reducing it through the fibered-torus rules, then
/// recursing; results are memoized on `(ε, n)` per parameter set.
pub struct StarStarReducer {
    params: TwoFiberParams,
    sigma: SigmaReducer,
    memo: HashMap<(u8, usize), SigmaVector>,
}

impl StarStarReducer {
    pub fn new(params: TwoFiberParams) -> Result<Self, Error> {
        params.require_lens()?;
        let sigma = SigmaReducer::new(params.nu1_context());
        Ok(Self { params, sigma, memo: HashMap::new() })
    }

    pub fn reduce(&mut self, s: &SigmaVector) -> SigmaPPVector {
        let mut acc = self.eval_poly(0, &s.part0);
        acc += &self.eval_poly(1, &s.part1);
        let (n0, n1) = self.params.sigma_pp_bounds();
        debug_assert!(acc.part0.degree().map_or(true, |d| d <= n0));
        debug_assert!(acc.part1.degree().map_or(true, |d| d <= n1));
        SigmaPPVector {
            params: self.params,
            coords0: (0..=n0).map(|n| acc.part0.coeff(n)).collect(),
            coords1: (0..=n1).map(|n| acc.part1.coeff(n)).collect(),
        }
    }

    fn eval_poly(&mut self, eps: u8, p: &LambdaPoly) -> SigmaVector {
        let mut acc = SigmaVector::zero();
        for (n, c) in p.iter() {
            acc += &self.eval(eps, n).scaled(c);
        }
        acc
    }

    fn eval_sigma(&mut self, s: &SigmaVector) -> SigmaVector {
        let mut acc = self.eval_poly(0, &s.part0);
        acc += &self.eval_poly(1, &s.part1);
        acc
    }

    /// Reduces a word of the shape `pre · F(λ) · post` through `⟪·⟫_{Σ'}`.
    fn bridge_term(&mut self, pre: Option<i64>, f_index: i64, post: i64) -> SigmaVector {
        let prefix = match pre {
            Some(m) => Word::x(m),
            None => Word::empty(),
        };
        let v = expand_polynomial_at(&prefix, &poly_f(f_index), &Word::x(post));
        self.sigma.reduce(&v)
    }

    fn eval(&mut self, eps: u8, n: usize) -> SigmaVector {
        if let Some(hit) = self.memo.get(&(eps, n)) {
            return hit.clone();
        }
        let p = self.params;
        let ni = n as i64;
        let (nu0, nu1, nu2) = (p.nu0, p.nu1, p.nu2);
        let value = if nu0 >= 0 {
            match eps {
                0 if ni <= nu0 + 1 => {
                    SigmaVector::from_parts(LambdaPoly::lambda_pow(n), LambdaPoly::zero())
                }
                0 => {
                    // ⟨λ^n + A^{n+3} R_{-n+1}⟩ - A^{n+3} ⟨⟪x_{ν₁} F_{-n+ν₀+1} x_{-ν₂}⟫⟩
                    let drop = LambdaPoly::lambda_pow(n)
                        + poly_r(-ni + 1).scaled(&LaurentPoly::a_pow(ni + 3));
                    debug_assert!(drop.degree().map_or(true, |d| d < n));
                    let head = self.eval_poly(0, &drop);
                    let emb = self.bridge_term(Some(nu1), -ni + nu0 + 1, -nu2);
                    let tail = self.eval_sigma(&emb);
                    &head - &tail.scaled(&LaurentPoly::a_pow(ni + 3))
                }
                _ if ni <= nu0 => {
                    SigmaVector::from_parts(LambdaPoly::zero(), LambdaPoly::lambda_pow(n))
                }
                _ => {
                    // ⟨x_{ν₁}(λ^n - A^n F_n)⟩ + A^n ⟨⟪F_{ν₀-n} x_{-ν₂}⟫⟩
                    let drop =
                        LambdaPoly::lambda_pow(n) - poly_f(ni).scaled(&LaurentPoly::a_pow(ni));
                    debug_assert!(drop.degree().map_or(true, |d| d < n));
                    let head = self.eval_poly(1, &drop);
                    let emb = self.bridge_term(None, nu0 - ni, -nu2);
                    let tail = self.eval_sigma(&emb);
                    &head + &tail.scaled(&LaurentPoly::a_pow(ni))
                }
            }
        } else {
            match eps {
                0 if ni <= -nu0 - 1 => {
                    SigmaVector::from_parts(LambdaPoly::lambda_pow(n), LambdaPoly::zero())
                }
                0 => {
                    // ⟨λ^n - A^{-n} R_n⟩ - A^{-n-3} ⟨⟪x_{ν₁} F_{n+ν₀} x_{-ν₂-1}⟫⟩
                    let drop = LambdaPoly::lambda_pow(n)
                        - poly_r(ni).scaled(&LaurentPoly::a_pow(-ni));
                    debug_assert!(drop.degree().map_or(true, |d| d < n));
                    let head = self.eval_poly(0, &drop);
                    let emb = self.bridge_term(Some(nu1), ni + nu0, -nu2 - 1);
                    let tail = self.eval_sigma(&emb);
                    &head - &tail.scaled(&LaurentPoly::a_pow(-ni - 3))
                }
                _ if ni <= -nu0 - 2 => {
                    SigmaVector::from_parts(LambdaPoly::zero(), LambdaPoly::lambda_pow(n))
                }
                _ => {
                    // ⟨x_{ν₁}(λ^n + A^{-n-3} F_{-n-1})⟩ + A^{-n-6} ⟨⟪F_{n+ν₀+1} x_{-ν₂-1}⟫⟩
                    let drop = LambdaPoly::lambda_pow(n)
                        + poly_f(-ni - 1).scaled(&LaurentPoly::a_pow(-ni - 3));
                    debug_assert!(drop.degree().map_or(true, |d| d < n));
                    let head = self.eval_poly(1, &drop);
                    let emb = self.bridge_term(None, ni + nu0 + 1, -nu2 - 1);
                    let tail = self.eval_sigma(&emb);
                    &head + &tail.scaled(&LaurentPoly::a_pow(-ni - 6))
                }
            }
        };
        self.memo.insert((eps, n), value.clone());
        value
    }
}

/// Applies ⟨·⟩⋆⋆ to a Σ'-vector.
pub fn starstar_reduce(s: &SigmaVector, params: &TwoFiberParams) -> Result<SigmaPPVector, Error> {
    Ok(StarStarReducer::new(*params)?.reduce(s))
}

/// The full pipeline `⟨·⟩⋆⋆ ∘ ⟪·⟫_{Σ'}` for `L(4k,2k+1)`, `k ≠ 0`.
pub fn kbsm_class_4k(v: &SkeinVector, beta1: i64, beta2: i64) -> Result<SigmaPPVector, Error> {
    let params = TwoFiberParams::from_betas(beta1, beta2)?;
    params.require_lens()?;
    let sigma = reduce_to_sigma(v, &params.nu1_context());
    starstar_reduce(&sigma, &params)
}

/// Which of the two `S_{β₂}`-move relation families to instantiate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SBeta2Variant {
    /// `(x_{ν₁})^ε λ^{n₁} P_{m,n₂} - A (...) P_{m-1,n₂} - A^{-1} (...) x_{-m-ν₂} λ^{n₂} x_{-ν₂-1}`
    TForm,
    /// `(x_{ν₁})^ε λ^{n₁} x_m λ^{n₂} - A (...) x_{m-1} λ^{n₂} - A^{-1} (...) P_{-m-ν₂,n₂} x_{-ν₂-1}`
    XForm,
}

/// Builds the three-term `S_{β₂}`-move combination as a skein vector; shared
/// by the lens-space and S²×S¹ kernel checks.
pub fn sbeta2_combination(
    nu1: i64,
    nu2: i64,
    variant: SBeta2Variant,
    eps: u8,
    m: i64,
    n1: u32,
    n2: u32,
) -> SkeinVector {
    let prefix = if eps == 0 {
        Word::lambda(n1)
    } else {
        Word::x_lambda(nu1, n1)
    };
    match variant {
        SBeta2Variant::TForm => {
            let lead = expand_polynomial_at(&prefix, &poly_pmk(m, n2), &Word::empty());
            let mid = expand_polynomial_at(&prefix, &poly_pmk(m - 1, n2), &Word::empty());
            let tail: SkeinVector = prefix
                .concat(&Word::x_lambda(-m - nu2, n2))
                .concat(&Word::x(-nu2 - 1))
                .into();
            lead - mid.scaled(&LaurentPoly::a_pow(1)) - tail.scaled(&LaurentPoly::a_pow(-1))
        }
        SBeta2Variant::XForm => {
            let lead: SkeinVector = prefix.concat(&Word::x_lambda(m, n2)).into();
            let mid: SkeinVector = prefix.concat(&Word::x_lambda(m - 1, n2)).into();
            let tail = expand_polynomial_at(&prefix, &poly_pmk(-m - nu2, n2), &Word::x(-nu2 - 1));
            lead - mid.scaled(&LaurentPoly::a_pow(1)) - tail.scaled(&LaurentPoly::a_pow(-1))
        }
    }
}

/// Checks that one `S_{β₂}`-move combination maps to zero in `RΣ''`.
pub fn verify_sbeta2(
    params: &TwoFiberParams,
    variant: SBeta2Variant,
    eps: u8,
    m: i64,
    n1: u32,
    n2: u32,
) -> Result<bool, Error> {
    params.require_lens()?;
    let v = sbeta2_combination(params.nu1, params.nu2, variant, eps, m, n1, n2);
    Ok(kbsm_class_4k(&v, params.beta1, params.beta2)?.is_zero())
}

/// The three collapse identities tying the brackets of `F`-decorated words
/// together.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BridgeIdentity {
    /// `⟪F_m x_{-ν₂}⟫⋆⋆ = ⟪x_{ν₁} F_{ν₀-m}⟫⋆⋆`
    FxEqualsXf,
    /// `⟪x_{ν₁} F_m x_{-ν₂}⟫⋆⋆ = ⟪R_{m-ν₀}⟫⋆⋆`
    XfxEqualsR,
    /// `⟪(x_{ν₁})^ε λ^n x_{-ν₂-1}⟫⋆⋆ = -A³ ⟪(x_{ν₁})^ε λ^n x_{-ν₂}⟫⋆⋆`
    UnitShift,
}

/// Evaluates both sides of the selected identity through the full pipeline.
pub fn verify_bridge_identity(
    params: &TwoFiberParams,
    identity: BridgeIdentity,
    m: i64,
    eps: u8,
    n: u32,
) -> Result<bool, Error> {
    params.require_lens()?;
    let (b1, b2) = (params.beta1, params.beta2);
    let class = |v: &SkeinVector| kbsm_class_4k(v, b1, b2);
    match identity {
        BridgeIdentity::FxEqualsXf => {
            let lhs = expand_polynomial_at(&Word::empty(), &poly_f(m), &Word::x(-params.nu2));
            let rhs =
                expand_polynomial_at(&Word::x(params.nu1), &poly_f(params.nu0 - m), &Word::empty());
            Ok(class(&lhs)? == class(&rhs)?)
        }
        BridgeIdentity::XfxEqualsR => {
            let lhs =
                expand_polynomial_at(&Word::x(params.nu1), &poly_f(m), &Word::x(-params.nu2));
            let rhs = SkeinVector::from_lambda_poly(&poly_r(m - params.nu0));
            Ok(class(&lhs)? == class(&rhs)?)
        }
        BridgeIdentity::UnitShift => {
            let prefix = if eps == 0 {
                Word::lambda(n)
            } else {
                Word::x_lambda(params.nu1, n)
            };
            let lhs: SkeinVector = prefix.concat(&Word::x(-params.nu2 - 1)).into();
            let rhs: SkeinVector = prefix.concat(&Word::x(-params.nu2)).into();
            Ok(class(&lhs)? == class(&rhs)?.scaled(&-LaurentPoly::a_pow(3)))
        }
    }
}

/// Whether an Ω₅-move identity raises or lowers the first index.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Omega5Direction {
    /// `x_m x_n = A^{-2k} x_{m+k} x_{n-k} + Σ_{i<k} A^{-2i}(P_{n-m-2-2i} - A^{-2}P_{n-m-2i})`
    Raise,
    /// `x_m x_n = A^{2k} x_{m-k} x_{n+k} + Σ_{i<k} A^{2i}(P_{n-m+2+2i} - A^{2}P_{n-m+2i})`
    Lower,
}

/// Checks an Ω₅ passing identity already at the fibered-torus level, as an
/// equality of Σ'-coordinates.
pub fn verify_omega5_identity(
    ctx: &Nu1Context,
    m: i64,
    n: i64,
    k: u32,
    direction: Omega5Direction,
) -> bool {
    let lhs = reduce_to_sigma(&Word::x(m).concat(&Word::x(n)).into(), ctx);
    let ki = k as i64;
    let (shifted, unit, sign) = match direction {
        Omega5Direction::Raise => (
            Word::x(m + ki).concat(&Word::x(n - ki)),
            LaurentPoly::a_pow(-2 * ki),
            -1,
        ),
        Omega5Direction::Lower => (
            Word::x(m - ki).concat(&Word::x(n + ki)),
            LaurentPoly::a_pow(2 * ki),
            1,
        ),
    };
    let mut rhs = reduce_to_sigma(&shifted.into(), ctx).scaled(&unit);
    for i in 0..ki {
        let (outer, inner) = match sign {
            -1 => (
                poly_p(n - m - 2 - 2 * i).scaled(&LaurentPoly::a_pow(-2 * i)),
                poly_p(n - m - 2 * i).scaled(&LaurentPoly::a_pow(-2 * i - 2)),
            ),
            _ => (
                poly_p(n - m + 2 + 2 * i).scaled(&LaurentPoly::a_pow(2 * i)),
                poly_p(n - m + 2 * i).scaled(&LaurentPoly::a_pow(2 * i + 2)),
            ),
        };
        rhs += &SigmaVector::from_parts(outer - inner, LambdaPoly::zero());
    }
    lhs == rhs
}

/// Identification of the filled manifold: `(p, q)` of the lens space and a
/// printable name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldParams {
    pub p: i64,
    pub q: i64,
    pub name: String,
}

/// `M₂(β₁) = L(β₁,2)`; `M₂(β₁,β₂) = L(4k,2k+1)` with `k = ν₀+1`, which is
/// `S²×S¹ = L(0,1)` when `k = 0`.
pub fn manifold_params(beta1: i64, beta2: Option<i64>) -> Result<ManifoldParams, Error> {
    match beta2 {
        None => {
            Nu1Context::from_beta1(beta1)?;
            Ok(ManifoldParams {
                p: beta1,
                q: 2,
                name: format!("L({beta1},2)"),
            })
        }
        Some(beta2) => {
            let params = TwoFiberParams::from_betas(beta1, beta2)?;
            let k = params.k;
            if k == 0 {
                Ok(ManifoldParams {
                    p: 0,
                    q: 1,
                    name: "S^2 x S^1 = L(0,1)".to_string(),
                })
            } else {
                Ok(ManifoldParams {
                    p: 4 * k,
                    q: 2 * k + 1,
                    name: format!("L({},{})", 4 * k, 2 * k + 1),
                })
            }
        }
    }
}

/// The basis `Σ''_{ν₁,ν₂}` of `L(4k,2k+1)`: `λ^0..λ^{N₀}` then
/// `x_{ν₁}λ^0..x_{ν₁}λ^{N₁}`; rank `|β₁+β₂|+1`.
pub fn basis_4k(beta1: i64, beta2: i64) -> Result<BasisDescription, Error> {
    let params = TwoFiberParams::from_betas(beta1, beta2)?;
    params.require_lens()?;
    let (n0, n1) = params.sigma_pp_bounds();
    let mut elements: Vec<Word> = (0..=n0).map(|n| Word::lambda(n as u32)).collect();
    elements.extend((0..=n1).map(|n| Word::x_lambda(params.nu1, n as u32)));
    Ok(BasisDescription {
        rank: elements.len(),
        elements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(e: i64) -> LaurentPoly {
        LaurentPoly::a_pow(e)
    }

    fn params(b1: i64, b2: i64) -> TwoFiberParams {
        TwoFiberParams::from_betas(b1, b2).unwrap()
    }

    #[test]
    fn parameter_bookkeeping() {
        let p = params(1, 1);
        assert_eq!((p.nu0(), p.k()), (0, 1));
        let p = params(1, -1);
        assert_eq!((p.nu0(), p.k()), (-1, 0));
        let p = params(-3, -1);
        assert_eq!((p.nu0(), p.k()), (-3, -2));
        assert!(TwoFiberParams::from_betas(2, 1).is_err());
    }

    #[test]
    fn manifold_naming() {
        assert_eq!(manifold_params(3, None).unwrap().name, "L(3,2)");
        let m = manifold_params(1, Some(1)).unwrap();
        assert_eq!((m.p, m.q), (4, 3));
        let m = manifold_params(1, Some(-1)).unwrap();
        assert_eq!((m.p, m.q), (0, 1));
        assert!(m.name.contains("S^2 x S^1"));
    }

    #[test]
    fn starstar_identity_on_basis() {
        let p = params(1, 1);
        let s = SigmaVector::from_parts(LambdaPoly::one(), LambdaPoly::zero());
        let out = starstar_reduce(&s, &p).unwrap();
        assert_eq!(out.coords0(), &[LaurentPoly::one(), LaurentPoly::zero()]);
        assert_eq!(out.coords1(), &[LaurentPoly::zero()]);
    }

    #[test]
    fn starstar_on_x_lambda() {
        // L(4,3): ⟨x₀λ⟩⋆⋆ = -(A²+A⁴)·x₀
        let p = params(1, 1);
        let s = SigmaVector::from_parts(LambdaPoly::zero(), LambdaPoly::lambda_pow(1));
        let out = starstar_reduce(&s, &p).unwrap();
        assert_eq!(out.coords0(), &[LaurentPoly::zero(), LaurentPoly::zero()]);
        assert_eq!(out.coords1(), &[-(a(2) + a(4))]);
    }

    #[test]
    fn starstar_on_lambda_squared() {
        // L(4,3): ⟨λ²⟩⋆⋆ = (1+2A⁴+A⁸)·λ⁰ + (1-A⁴)·λ
        let p = params(1, 1);
        let s = SigmaVector::from_parts(LambdaPoly::lambda_pow(2), LambdaPoly::zero());
        let out = starstar_reduce(&s, &p).unwrap();
        let c0 = LaurentPoly::one() + a(4).scaled(2) + a(8);
        assert_eq!(out.coords0(), &[c0, LaurentPoly::one() - a(4)]);
        assert_eq!(out.coords1(), &[LaurentPoly::zero()]);
    }

    #[test]
    fn sphere_product_redirected() {
        assert!(matches!(
            kbsm_class_4k(&SkeinVector::one(), 1, -1),
            Err(Error::SphereProduct)
        ));
    }

    #[test]
    fn collapse_relation_kills_pair() {
        // x₀x₁ - R₁ dies already in the fibered torus
        let p = params(1, 1);
        let v = SkeinVector::from(Word::x(0).concat(&Word::x(1)))
            - SkeinVector::from_lambda_poly(&poly_r(1));
        assert!(kbsm_class_4k(&v, p.beta1(), p.beta2()).unwrap().is_zero());
    }

    #[test]
    fn adjacent_x_classes_differ_by_unit() {
        // x_{-ν₂-1} = -A³ x_{-ν₂} for (β₁,β₂) = (1,1)
        let lhs = kbsm_class_4k(&Word::x(-1).into(), 1, 1).unwrap();
        let rhs = kbsm_class_4k(&Word::x(0).into(), 1, 1).unwrap();
        assert_eq!(lhs, rhs.scaled(&-a(3)));
    }

    #[test]
    fn unit_lambda_class() {
        let out = kbsm_class_4k(&Word::lambda(0).into(), 1, 1).unwrap();
        assert_eq!(out.coords0(), &[LaurentPoly::one(), LaurentPoly::zero()]);
        assert!(out.coords1()[0].is_zero());
    }

    #[test]
    fn sbeta2_spot_checks() {
        let p = params(1, 1);
        assert!(verify_sbeta2(&p, SBeta2Variant::TForm, 0, 0, 0, 0).unwrap());
        assert!(verify_sbeta2(&p, SBeta2Variant::XForm, 1, 1, 1, 0).unwrap());
        let p = params(1, -3);
        assert!(verify_sbeta2(&p, SBeta2Variant::XForm, 0, -1, 0, 1).unwrap());
    }

    #[test]
    fn bridge_spot_checks() {
        let p = params(1, 1);
        assert!(verify_bridge_identity(&p, BridgeIdentity::FxEqualsXf, -1, 0, 0).unwrap());
        assert!(verify_bridge_identity(&p, BridgeIdentity::XfxEqualsR, 0, 0, 0).unwrap());
        assert!(verify_bridge_identity(&p, BridgeIdentity::UnitShift, 0, 0, 2).unwrap());
        // Eq. (15) at m = -1 collapses to -A³·class(x₀) on both sides
        let lhs = expand_polynomial_at(&Word::empty(), &poly_f(-1), &Word::x(0));
        let expect = kbsm_class_4k(&Word::x(0).into(), 1, 1)
            .unwrap()
            .scaled(&-a(3));
        assert_eq!(kbsm_class_4k(&lhs, 1, 1).unwrap(), expect);
    }

    #[test]
    fn omega5_spot_checks() {
        let c0 = Nu1Context::from_beta1(1).unwrap();
        // k = 0 is the empty identity
        assert!(verify_omega5_identity(&c0, 2, -1, 0, Omega5Direction::Raise));
        assert!(verify_omega5_identity(&c0, 0, 0, 1, Omega5Direction::Raise));
        let c1 = Nu1Context::from_beta1(3).unwrap();
        assert!(verify_omega5_identity(&c1, 2, -1, 2, Omega5Direction::Lower));
    }

    #[test]
    fn rank_law() {
        for (b1, b2) in [(1, 1), (1, 3), (3, 3), (1, -5), (-1, -3), (-3, -3), (5, -1)] {
            let p = params(b1, b2);
            if p.k() == 0 {
                continue;
            }
            let (n0, n1) = p.sigma_pp_bounds();
            let rank = n0 + n1 + 2;
            assert_eq!(rank as i64, 2 * p.k().abs() + 1, "({b1},{b2})");
            assert_eq!(rank as i64, (b1 + b2).abs() + 1, "({b1},{b2})");
            assert_eq!(basis_4k(b1, b2).unwrap().rank, rank);
        }
    }

    #[test]
    fn retraction_on_basis_words() {
        for (b1, b2) in [(1, 1), (3, 1), (1, -5), (-1, -3)] {
            let basis = basis_4k(b1, b2).unwrap();
            for (i, w) in basis.elements.iter().enumerate() {
                let out = kbsm_class_4k(&w.clone().into(), b1, b2).unwrap();
                let coords: Vec<&LaurentPoly> =
                    out.coords0().iter().chain(out.coords1()).collect();
                for (j, c) in coords.iter().enumerate() {
                    let expect = if i == j {
                        LaurentPoly::one()
                    } else {
                        LaurentPoly::zero()
                    };
                    assert_eq!(**c, expect, "({b1},{b2}) i={i} j={j}");
                }
            }
        }
    }
}
