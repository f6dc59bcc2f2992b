use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skein::laurent::LaurentPoly;
use skein::words::*;

fn random_word(rng: &mut ChaCha8Rng, max_x: usize) -> Word {
    let k = rng.gen_range(0..=max_x);
    let mut w = Word::lambda(rng.gen_range(0..=4));
    for _ in 0..k {
        w = w
            .concat(&Word::x(rng.gen_range(-5..=5)))
            .concat(&Word::lambda(rng.gen_range(0..=4)));
    }
    w
}

fn random_vector(rng: &mut ChaCha8Rng) -> SkeinVector {
    let mut v = SkeinVector::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let coeff = LaurentPoly::monomial(rng.gen_range(-3..=3), rng.gen_range(1..=3i64))
            .scaled(if rng.gen_bool(0.5) { 1 } else { -1 });
        v.add_term(random_word(rng, 4), coeff);
    }
    v
}

fn parts() {
    use skein::words::{shift_x_expression, substitute_x, ShiftDirection};
    let ctx = Nu1Context::from_beta1(-3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5163 + 6);
    let mut fold = SigmaReducer::new(ctx);
    // consume the agreement-sample stream like the suite does
    let t0 = std::time::Instant::now();
    for _ in 0..200 { let v = random_vector(&mut rng); let _ = fold.reduce(&v); }
    eprintln!("agreement-fold: {:?}", t0.elapsed());
    let t0 = std::time::Instant::now();
    let mut worst = std::time::Duration::ZERO;
    for case in 0..100 {
        let w = random_word(&mut rng, 3);
        if w.x_count() == 0 { continue; }
        let pos = rng.gen_range(0..w.x_count());
        let m = w.pairs()[pos].0;
        let k = rng.gen_range(-3..=3);
        let dir = if rng.gen_bool(0.5) { ShiftDirection::QRight } else { ShiftDirection::QLeft };
        let t1 = std::time::Instant::now();
        let direct = fold.reduce(&w.clone().into());
        let replaced = substitute_x(&w, pos, &shift_x_expression(k, m, dir));
        assert_eq!(fold.reduce(&replaced), direct);
        let dt = t1.elapsed();
        if dt > worst { worst = dt; eprintln!("  subst case {case}: {dt:?} w={w} pos={pos} k={k} {dir:?}"); }
    }
    eprintln!("substitution: {:?}", t0.elapsed());
    let t0 = std::time::Instant::now();
    for _ in 0..50 {
        let (u, v) = (random_vector(&mut rng), random_vector(&mut rng));
        let ca = LaurentPoly::monomial(rng.gen_range(-2..=2), rng.gen_range(1..=2i64));
        let cb = LaurentPoly::monomial(rng.gen_range(-2..=2), rng.gen_range(1..=2i64));
        let combined = fold.reduce(&(u.scaled(&ca) + v.scaled(&cb)));
        let split = &fold.reduce(&u).scaled(&ca) + &fold.reduce(&v).scaled(&cb);
        assert_eq!(combined, split);
    }
    eprintln!("linearity: {:?}", t0.elapsed());
}

fn suite_replica() {
    let ctx = Nu1Context::from_beta1(-3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5163 + 6);
    let mut fold = SigmaReducer::new(ctx);
    let mut rightmost = SigmaReducer::with_strategy(ctx, Strategy::RightmostAbsorption);
    let mut leftmost = SigmaReducer::with_strategy(ctx, Strategy::LeftmostAbsorption);
    let t0 = std::time::Instant::now();
    let mut left_time = std::time::Duration::ZERO;
    for case in 0..200 {
        let v = random_vector(&mut rng);
        let mut ok = fold.reduce(&v) == rightmost.reduce(&v);
        if case % 8 == 0 {
            let t1 = std::time::Instant::now();
            ok = ok && fold.reduce(&v) == leftmost.reduce(&v);
            left_time += t1.elapsed();
        }
        assert!(ok);
    }
    eprintln!("suite-replica agreement: {:?} (leftmost part {:?})", t0.elapsed(), left_time);
}

fn main() {
    suite_replica();
    parts();
    let ctx = Nu1Context::from_beta1(-3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5163 + 6);
    let mut fold = SigmaReducer::new(ctx);
    let mut step = SigmaReducer::with_strategy(ctx, Strategy::RightmostAbsorption);
    let mut fold_total = std::time::Duration::ZERO;
    let mut step_total = std::time::Duration::ZERO;
    let mut worst = std::time::Duration::ZERO;
    for case in 0..200 {
        let v = random_vector(&mut rng);
        let t0 = std::time::Instant::now();
        let s1 = fold.reduce(&v);
        let dt_fold = t0.elapsed();
        fold_total += dt_fold;
        let t0 = std::time::Instant::now();
        let s2 = step.reduce(&v);
        let dt = t0.elapsed();
        step_total += dt;
        if dt_fold > worst {
            worst = dt_fold;
            let deg0 = s1.part0.degree();
            let terms: usize = (0..=deg0.unwrap_or(0))
                .map(|i| s1.part0.coeff(i).num_terms())
                .sum();
            eprintln!(
                "case {case}: fold {dt_fold:?} step {dt:?} deg0={deg0:?} coeff-terms={terms}"
            );
        }
        assert_eq!(s1, s2);
    }
    eprintln!("fold total {fold_total:?}  step total {step_total:?}");
}
