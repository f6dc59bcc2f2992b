//! The `verify` command: parameter sweeps over every identity verifier the
//! library exposes, grouped into named suites with per-identity counts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use skein::annulus::{
    poly_f, poly_p, poly_phi, poly_psi_core, poly_q, poly_r, LambdaPoly,
};
use skein::laurent::LaurentPoly;
use skein::lens_4k::{
    basis_4k, kbsm_class_4k, verify_bridge_identity, verify_omega5_identity, verify_sbeta2,
    BridgeIdentity, Omega5Direction, SBeta2Variant, TwoFiberParams,
};
use skein::lens_p2::{basis_p2, kbsm_class_p2, verify_omega_infinity};
use skein::s2xs1::{
    is_zero_class, phi_modulus, psi_modulus, verify_kernel_membership, verify_phi_relation,
    verify_psi_relation, verify_telescope_identity, TelescopeKind,
};
use skein::words::{
    expand_polynomial_at, shift_x_expression, substitute_x, Nu1Context, ShiftDirection,
    SigmaReducer, SkeinVector, Strategy, Word,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Suite {
    Families,
    Sigma,
    Star,
    Starstar,
    Torsion,
    All,
}

pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
}

struct Check {
    name: &'static str,
    cases: usize,
    failures: usize,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Self { name, cases: 0, failures: 0 }
    }

    fn count(&mut self, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
        }
    }

    fn finish(self, out: &mut Vec<CheckResult>) {
        out.push(CheckResult {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
        });
    }
}

/// Runs the named suite. `range` is the suite's primary half-width: the
/// family-index bound (default 20) for `families`, the random-vector count
/// per ν₁ (default 200) for `sigma`, and the relation m-bound for the rest
/// (defaults 5 / 8 / 8).
pub fn run_suite(suite: Suite, range: Option<u32>) -> Vec<CheckResult> {
    match suite {
        Suite::Families => families(range.unwrap_or(20) as i64),
        Suite::Sigma => sigma(range.unwrap_or(200) as usize),
        Suite::Star => star(range.unwrap_or(5) as i64),
        Suite::Starstar => starstar(range.unwrap_or(8) as i64),
        Suite::Torsion => torsion(range.unwrap_or(8) as i64),
        Suite::All => {
            let mut out = families(range.unwrap_or(20) as i64);
            out.extend(sigma(200));
            out.extend(star(5));
            out.extend(starstar(8));
            out.extend(torsion(8));
            out
        }
    }
}

fn families(r: i64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let a = LaurentPoly::a_pow;

    let mut c = Check::new("P_m = -A^{m+2} Q_{m+1} + A^{m-2} Q_{m-1}");
    for m in -r..=r {
        let rhs = poly_q(m + 1).scaled(&-a(m + 2)) + poly_q(m - 1).scaled(&a(m - 2));
        c.count(poly_p(m) == rhs);
    }
    c.finish(&mut out);

    let mut c = Check::new("P_m = -A^{-2} F_{-m} + A^{-1} F_{-m-1}");
    for m in -r..=r {
        let rhs = poly_f(-m).scaled(&-a(-2)) + poly_f(-m - 1).scaled(&a(-1));
        c.count(poly_p(m) == rhs);
    }
    c.finish(&mut out);

    let mut c = Check::new("deg F_m = max(m,-m-1) with unit leading coefficient");
    for m in -r..=r {
        let f = poly_f(m);
        let lead = if m >= 0 { a(-m) } else { -a(-m + 2) };
        c.count(f.degree() == Some(m.max(-m - 1) as usize) && f.leading() == Some(&lead));
    }
    c.finish(&mut out);

    let mut c = Check::new("deg R_m = max(m,1-m) with unit leading coefficient");
    for m in -r..=r {
        let rm = poly_r(m);
        let lead = if m >= 1 { a(m) } else { -a(m - 4) };
        c.count(rm.degree() == Some(m.max(1 - m) as usize) && rm.leading() == Some(&lead));
    }
    c.finish(&mut out);

    let mut c = Check::new("q_{-k} = -q_k");
    for k in -50..=50 {
        c.count(LaurentPoly::q(-k) == -LaurentPoly::q(k));
    }
    c.finish(&mut out);

    let mut c = Check::new("phi_m and psi_m monic of degree m");
    for m in 0..=r.max(0) as u32 {
        let phi = poly_phi(m);
        let psi = poly_psi_core(m);
        c.count(
            phi.is_monic()
                && phi.degree() == Some(m as usize)
                && psi.is_monic()
                && psi.degree() == Some(m as usize),
        );
    }
    c.finish(&mut out);

    out
}

pub fn random_word(rng: &mut ChaCha8Rng, max_x: usize) -> Word {
    let k = rng.gen_range(0..=max_x);
    let mut w = Word::lambda(rng.gen_range(0..=4));
    for _ in 0..k {
        w = w
            .concat(&Word::x(rng.gen_range(-5..=5)))
            .concat(&Word::lambda(rng.gen_range(0..=4)));
    }
    w
}

pub fn random_vector(rng: &mut ChaCha8Rng) -> SkeinVector {
    let mut v = SkeinVector::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let coeff = LaurentPoly::monomial(rng.gen_range(-3..=3), rng.gen_range(1..=3i64))
            .scaled(if rng.gen_bool(0.5) { 1 } else { -1 });
        v.add_term(random_word(rng, 4), coeff);
    }
    v
}

fn sigma(count: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let contexts: Vec<Nu1Context> = [-3, -1, 1, 3, 5]
        .iter()
        .map(|b| Nu1Context::from_beta1(*b).unwrap())
        .collect();

    // (agreement, substitution, idempotence, linearity) as (cases, failures)
    let per_ctx: Vec<[(usize, usize); 4]> = contexts
        .par_iter()
        .map(|ctx| sigma_one_context(ctx, count))
        .collect();

    let names = [
        "reduction is independent of rewrite strategy (fold vs stepwise)",
        "x-shift substitution (Q right / Q left) is invariant",
        "reduction fixes Sigma'-shaped inputs",
        "reduction is R-linear",
    ];
    for (slot, name) in names.iter().enumerate() {
        let mut c = Check::new(name);
        for counts in &per_ctx {
            c.cases += counts[slot].0;
            c.failures += counts[slot].1;
        }
        c.finish(&mut out);
    }
    out
}

fn sigma_one_context(ctx: &Nu1Context, count: usize) -> [(usize, usize); 4] {
    let t0 = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5163 + (ctx.nu1() + 8) as u64);
    let mut fold = SigmaReducer::new(*ctx);
    let mut rightmost = SigmaReducer::with_strategy(*ctx, Strategy::RightmostAbsorption);
    let mut leftmost = SigmaReducer::with_strategy(*ctx, Strategy::LeftmostAbsorption);
    let mut tallies = [(0usize, 0usize); 4];
    let mut tally = |slot: usize, ok: bool| {
        tallies[slot].0 += 1;
        if !ok {
            tallies[slot].1 += 1;
        }
    };

    // collapse order independence: the eager fold against the two
    // step-rewriting absorption orders (the slower leftmost order on an
    // eighth of the sample)
    for case in 0..count {
        let v = random_vector(&mut rng);
        let mut ok = fold.reduce(&v) == rightmost.reduce(&v);
        if case % 8 == 0 {
            ok = ok && fold.reduce(&v) == leftmost.reduce(&v);
        }
        tally(0, ok);
    }

    for _ in 0..count / 2 {
        let w = random_word(&mut rng, 3);
        if w.x_count() == 0 {
            continue;
        }
        let pos = rng.gen_range(0..w.x_count());
        let m = w.pairs()[pos].0;
        let k = rng.gen_range(-3..=3);
        let dir = if rng.gen_bool(0.5) {
            ShiftDirection::QRight
        } else {
            ShiftDirection::QLeft
        };
        let direct = fold.reduce(&w.clone().into());
        let replaced = substitute_x(&w, pos, &shift_x_expression(k, m, dir));
        tally(1, fold.reduce(&replaced) == direct);
    }

    for n in 0..=6u32 {
        let s = fold.reduce(&Word::lambda(n).into());
        tally(2, s.part0 == LambdaPoly::lambda_pow(n as usize) && s.part1.is_zero());
        let s = fold.reduce(&Word::x_lambda(ctx.nu1(), n).into());
        tally(2, s.part1 == LambdaPoly::lambda_pow(n as usize) && s.part0.is_zero());
    }

    for _ in 0..count / 4 {
        let (u, v) = (random_vector(&mut rng), random_vector(&mut rng));
        let ca = LaurentPoly::monomial(rng.gen_range(-2..=2), rng.gen_range(1..=2i64));
        let cb = LaurentPoly::monomial(rng.gen_range(-2..=2), rng.gen_range(1..=2i64));
        let combined = fold.reduce(&(u.scaled(&ca) + v.scaled(&cb)));
        let split = &fold.reduce(&u).scaled(&ca) + &fold.reduce(&v).scaled(&cb);
        tally(3, combined == split);
    }

    eprintln!("[sigma] nu1={} took {:?}", ctx.nu1(), t0.elapsed());
    tallies
}

fn star(m_range: i64) -> Vec<CheckResult> {
    let mut out = Vec::new();

    let mut c = Check::new("rank of Lambda basis equals floor(|beta1|/2)+1");
    for beta1 in (-21..=21i64).filter(|b| b % 2 != 0) {
        c.count(basis_p2(beta1).unwrap().rank as i64 == beta1.abs() / 2 + 1);
    }
    c.finish(&mut out);

    let mut c = Check::new("retraction: basis words map to unit coordinates");
    for beta1 in (-11..=11i64).filter(|b| b % 2 != 0) {
        let basis = basis_p2(beta1).unwrap();
        for (i, w) in basis.elements.iter().enumerate() {
            let class = kbsm_class_p2(&w.clone().into(), beta1).unwrap();
            let ok = class.coords().iter().enumerate().all(|(j, coeff)| {
                if i == j {
                    coeff.is_one()
                } else {
                    coeff.is_zero()
                }
            });
            c.count(ok);
        }
    }
    c.finish(&mut out);

    let mut c = Check::new("Omega-infinity moves land in the kernel");
    for beta1 in [-5, -3, -1, 1, 3, 5] {
        for eps in [0u8, 1] {
            for n1 in 0..=3 {
                for n2 in 0..=3 {
                    for m in -m_range..=m_range {
                        c.count(verify_omega_infinity(beta1, eps, n1, m, n2).unwrap());
                    }
                }
            }
        }
    }
    c.finish(&mut out);

    out
}

/// Presentations (β₁,β₂) covering ν₀ ∈ {-4,-3,-2,0,1,2} with varying ν₁.
pub fn starstar_presentations() -> Vec<TwoFiberParams> {
    [
        (1, -7),
        (1, -5),
        (-1, -3),
        (1, -3),
        (-1, -1),
        (1, 1),
        (3, -1),
        (1, 3),
        (-1, 5),
        (3, 3),
    ]
    .iter()
    .map(|(b1, b2)| TwoFiberParams::from_betas(*b1, *b2).unwrap())
    .collect()
}

fn starstar(bridge_range: i64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let presentations = starstar_presentations();

    let mut c = Check::new("rank of Sigma'' equals 2|k|+1 = |beta1+beta2|+1");
    for p in &presentations {
        let rank = basis_4k(p.beta1(), p.beta2()).unwrap().rank as i64;
        c.count(rank == 2 * p.k().abs() + 1 && rank == (p.beta1() + p.beta2()).abs() + 1);
    }
    c.finish(&mut out);

    let mut c = Check::new("retraction: basis words map to unit coordinates");
    for p in &presentations {
        let basis = basis_4k(p.beta1(), p.beta2()).unwrap();
        for (i, w) in basis.elements.iter().enumerate() {
            let class = kbsm_class_4k(&w.clone().into(), p.beta1(), p.beta2()).unwrap();
            let coords: Vec<&LaurentPoly> =
                class.coords0().iter().chain(class.coords1()).collect();
            let ok = coords.iter().enumerate().all(|(j, coeff)| {
                if i == j {
                    coeff.is_one()
                } else {
                    coeff.is_zero()
                }
            });
            c.count(ok);
        }
    }
    c.finish(&mut out);

    let mut c = Check::new("S_beta2 moves land in the kernel (t-form and x-form)");
    for p in &presentations {
        for variant in [SBeta2Variant::TForm, SBeta2Variant::XForm] {
            for eps in [0u8, 1] {
                for m in -4..=4 {
                    for n1 in 0..=2 {
                        for n2 in 0..=2 {
                            c.count(verify_sbeta2(p, variant, eps, m, n1, n2).unwrap());
                        }
                    }
                }
            }
        }
    }
    c.finish(&mut out);

    let mut c = Check::new("bridge identities (Fx = xF, xFx = R, unit shift)");
    for p in &presentations {
        for m in -bridge_range..=bridge_range {
            c.count(verify_bridge_identity(p, BridgeIdentity::FxEqualsXf, m, 0, 0).unwrap());
            c.count(verify_bridge_identity(p, BridgeIdentity::XfxEqualsR, m, 0, 0).unwrap());
        }
        for eps in [0u8, 1] {
            for n in 0..=4 {
                c.count(
                    verify_bridge_identity(p, BridgeIdentity::UnitShift, 0, eps, n).unwrap(),
                );
            }
        }
    }
    c.finish(&mut out);

    let mut c = Check::new("Omega-5 passing identities (raise and lower)");
    for beta1 in [-3, -1, 1, 3, 5] {
        let ctx = Nu1Context::from_beta1(beta1).unwrap();
        for m in -4..=4 {
            for n in -4..=4 {
                for k in 0..=4 {
                    c.count(verify_omega5_identity(&ctx, m, n, k, Omega5Direction::Raise));
                    c.count(verify_omega5_identity(&ctx, m, n, k, Omega5Direction::Lower));
                }
            }
        }
    }
    c.finish(&mut out);

    out
}

fn torsion(m_range: i64) -> Vec<CheckResult> {
    let mut out = Vec::new();

    let mut c = Check::new("xFx - R collapses to the Phi combination");
    for beta1 in [-3, -1, 1, 3] {
        for m in -m_range..=m_range {
            c.count(verify_phi_relation(m, beta1).unwrap());
        }
    }
    c.finish(&mut out);

    let mut c = Check::new("Fx - xF differences collapse to the Psi combination");
    for beta1 in [-3, -1, 1, 3] {
        for m in -m_range..=m_range {
            c.count(verify_psi_relation(m, beta1).unwrap());
        }
    }
    c.finish(&mut out);

    let mut c = Check::new("telescoping identity for both u-kinds");
    let b_phi = |m: i64| &poly_q(m + 1) - &poly_q(m);
    let b_psi = poly_q;
    for m in -m_range..=m_range {
        c.count(verify_telescope_identity(TelescopeKind::QEven, b_phi, m));
        c.count(verify_telescope_identity(TelescopeKind::QOdd, b_psi, m));
    }
    c.finish(&mut out);

    let mut c = Check::new("S_beta2 moves are zero classes in S^2 x S^1");
    for beta1 in [-1, 1, 3] {
        for variant in [SBeta2Variant::TForm, SBeta2Variant::XForm] {
            for eps in [0u8, 1] {
                for m in -3..=3 {
                    for n1 in 0..=2 {
                        for n2 in 0..=2 {
                            c.count(
                                verify_kernel_membership(variant, eps, m, n1, n2, beta1).unwrap(),
                            );
                        }
                    }
                }
            }
        }
    }
    c.finish(&mut out);

    let mut c = Check::new("torsion-order census matches 1-A^{2i+4}");
    let n = 10usize;
    let mut got: Vec<i64> = (1..=n).flat_map(|i| [phi_modulus(i), psi_modulus(i)]).collect();
    got.sort();
    let mut want: Vec<i64> = (1..=2 * n as i64).map(|j| 2 * j + 4).collect();
    want.sort();
    c.count(got == want);
    c.finish(&mut out);

    let mut c = Check::new("annihilators are sharp on phi_i and psi_{i-1}");
    let samples = annihilator_samples();
    for i in 1..=6usize {
        for coeff in &samples {
            let phi_vec =
                SkeinVector::from_lambda_poly(&poly_phi(i as u32).scaled(coeff));
            let phi_zero = is_zero_class(&phi_vec, 1).unwrap();
            c.count(phi_zero == coeff.divisible_by_cyclic(phi_modulus(i)).unwrap());

            let psi_vec = expand_polynomial_at(
                &Word::x(0),
                &poly_psi_core((i - 1) as u32).scaled(coeff),
                &Word::empty(),
            );
            let psi_zero = is_zero_class(&psi_vec, 1).unwrap();
            c.count(psi_zero == coeff.divisible_by_cyclic(psi_modulus(i)).unwrap());
        }
    }
    c.finish(&mut out);

    out
}

fn annihilator_samples() -> Vec<LaurentPoly> {
    let mut samples = vec![
        LaurentPoly::one(),
        LaurentPoly::a_pow(3),
        -LaurentPoly::a_pow(-5),
    ];
    for k in 1..=8 {
        samples.push(LaurentPoly::q(k));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xA55);
    for _ in 0..6 {
        let mut p = LaurentPoly::zero();
        for _ in 0..rng.gen_range(1..=3) {
            p += LaurentPoly::monomial(rng.gen_range(-12..=12), rng.gen_range(-4..=4i64));
        }
        samples.push(p);
    }
    samples
}
