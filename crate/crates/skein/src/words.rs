//! The word algebra Γ of generic arrow diagrams, `R`-linear combinations of
//! words, and the rewriting system that reduces any word to the fibered-torus
//! basis `Σ'_{ν₁} = {λ^n, x_{ν₁}λ^n}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;

use crate::annulus::{poly_f, poly_p, poly_pmk, poly_q, poly_r, LambdaPoly};
use crate::error::Error;
use crate::laurent::LaurentPoly;

/// A word `λ^{n₀} x_{m₁} λ^{n₁} ... x_{m_k} λ^{n_k}` in canonical form:
/// adjacent λ-runs are merged by construction, all runs are nonnegative.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    head: u32,
    pairs: Vec<(i64, u32)>,
}

impl Word {
    /// The empty word, the class of the empty link.
    pub fn empty() -> Self {
        Self::default()
    }

    /// `λ^n`.
    pub fn lambda(n: u32) -> Self {
        Self { head: n, pairs: Vec::new() }
    }

    /// `x_m`.
    pub fn x(m: i64) -> Self {
        Self { head: 0, pairs: vec![(m, 0)] }
    }

    /// `x_m λ^n`.
    pub fn x_lambda(m: i64, n: u32) -> Self {
        Self { head: 0, pairs: vec![(m, n)] }
    }

    pub fn head_run(&self) -> u32 {
        self.head
    }

    /// The `(x-index, following λ-run)` pairs after the head run.
    pub fn pairs(&self) -> &[(i64, u32)] {
        &self.pairs
    }

    pub fn x_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.head == 0 && self.pairs.is_empty()
    }

    /// Concatenation in Γ; the boundary λ-runs merge.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        match out.pairs.last_mut() {
            Some(last) => last.1 += other.head,
            None => out.head += other.head,
        }
        out.pairs.extend_from_slice(&other.pairs);
        out
    }

    /// Splits off everything after pair `i`, merging run `i` into the head of
    /// the remainder.
    fn tail_from(&self, i: usize) -> Word {
        Word {
            head: self.pairs[i].1,
            pairs: self.pairs[i + 1..].to_vec(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = Vec::new();
        let run = |n: u32, parts: &mut Vec<String>| {
            if n == 1 {
                parts.push("l".into());
            } else if n > 1 {
                parts.push(format!("l^{n}"));
            }
        };
        run(self.head, &mut parts);
        for (m, n) in &self.pairs {
            parts.push(format!("x({m})"));
            run(*n, &mut parts);
        }
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite `R`-linear combination of words; the input representation of
/// generic framed-link diagrams.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SkeinVector {
    terms: BTreeMap<Word, LaurentPoly>,
}

impl SkeinVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Word::empty().into()
    }

    pub fn term(word: Word, coeff: LaurentPoly) -> Self {
        let mut v = Self::zero();
        v.add_term(word, coeff);
        v
    }

    pub fn add_term(&mut self, word: Word, coeff: LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scaled(&self, c: &LaurentPoly) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect(),
        }
    }

    /// Interprets a λ-polynomial as the vector `Σ c_n λ^n`.
    pub fn from_lambda_poly(p: &LambdaPoly) -> Self {
        let mut v = Self::zero();
        for (n, c) in p.iter() {
            v.add_term(Word::lambda(n as u32), c.clone());
        }
        v
    }

    /// Bilinear product by word concatenation; scalar coefficients commute,
    /// word letters keep their written order.
    pub fn product(&self, rhs: &SkeinVector) -> SkeinVector {
        let mut out = SkeinVector::zero();
        for (w1, c1) in self.iter() {
            for (w2, c2) in rhs.iter() {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }
}

impl From<Word> for SkeinVector {
    fn from(word: Word) -> Self {
        Self::term(word, LaurentPoly::one())
    }
}

impl Add<&SkeinVector> for &SkeinVector {
    type Output = SkeinVector;
    fn add(self, rhs: &SkeinVector) -> SkeinVector {
        let mut out = self.clone();
        for (w, c) in rhs.iter() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub<&SkeinVector> for &SkeinVector {
    type Output = SkeinVector;
    fn sub(self, rhs: &SkeinVector) -> SkeinVector {
        let mut out = self.clone();
        for (w, c) in rhs.iter() {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &SkeinVector {
    type Output = SkeinVector;
    fn neg(self) -> SkeinVector {
        SkeinVector {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned_vec_ops {
    ($($trait:ident :: $m:ident, $assign:ident :: $am:ident);* $(;)?) => {$(
        impl $trait<SkeinVector> for SkeinVector {
            type Output = SkeinVector;
            fn $m(self, rhs: SkeinVector) -> SkeinVector { (&self).$m(&rhs) }
        }
        impl $trait<&SkeinVector> for SkeinVector {
            type Output = SkeinVector;
            fn $m(self, rhs: &SkeinVector) -> SkeinVector { (&self).$m(rhs) }
        }
        impl $assign<&SkeinVector> for SkeinVector {
            fn $am(&mut self, rhs: &SkeinVector) { *self = (&*self).$m(rhs); }
        }
        impl $assign<SkeinVector> for SkeinVector {
            fn $am(&mut self, rhs: SkeinVector) { *self = (&*self).$m(&rhs); }
        }
    )*};
}

forward_owned_vec_ops! {
    Add::add, AddAssign::add_assign;
    Sub::sub, SubAssign::sub_assign;
}

impl Neg for SkeinVector {
    type Output = SkeinVector;
    fn neg(self) -> SkeinVector {
        -&self
    }
}

impl Mul<&SkeinVector> for &SkeinVector {
    type Output = SkeinVector;
    fn mul(self, rhs: &SkeinVector) -> SkeinVector {
        self.product(rhs)
    }
}

impl fmt::Display for SkeinVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if w.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "({c})*{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SkeinVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Distributes `p = Σ c_n λ^n` into `Σ c_n (prefix · λ^n · suffix)`.
pub fn expand_polynomial_at(prefix: &Word, p: &LambdaPoly, suffix: &Word) -> SkeinVector {
    let mut out = SkeinVector::zero();
    for (n, c) in p.iter() {
        let w = prefix.concat(&Word::lambda(n as u32)).concat(suffix);
        out.add_term(w, c.clone());
    }
    out
}

/// `⟨t_m⟩_r = P_m` and `⟨t_{m,n}⟩_r = P_{m,n}`: the λ-polynomial a t-curve
/// stands for once crossings are resolved.
pub fn t_substitute(m: i64, n: u32) -> LambdaPoly {
    if n == 0 {
        poly_p(m)
    } else {
        poly_pmk(m, n)
    }
}

/// One-step rewrite of `λ·x_m` as `A^{-1} x_{m-1} + A x_{m+1}`.
pub fn push_lambda_left(m: i64) -> SkeinVector {
    let mut v = SkeinVector::zero();
    v.add_term(Word::x(m - 1), LaurentPoly::a_pow(-1));
    v.add_term(Word::x(m + 1), LaurentPoly::a_pow(1));
    v
}

/// One-step rewrite of `x_m·λ` as `A x_{m-1} + A^{-1} x_{m+1}`.
pub fn push_lambda_right(m: i64) -> SkeinVector {
    let mut v = SkeinVector::zero();
    v.add_term(Word::x(m - 1), LaurentPoly::a_pow(1));
    v.add_term(Word::x(m + 1), LaurentPoly::a_pow(-1));
    v
}

/// The fibered-torus context: `β₁` odd and `ν₁ = ⌊β₁/2⌋`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Nu1Context {
    beta1: i64,
    nu1: i64,
}

impl Nu1Context {
    pub fn from_beta1(beta1: i64) -> Result<Self, Error> {
        if beta1.rem_euclid(2) == 0 {
            return Err(Error::EvenBeta { name: "beta1", value: beta1 });
        }
        Ok(Self { beta1, nu1: beta1.div_euclid(2) })
    }

    pub fn beta1(&self) -> i64 {
        self.beta1
    }

    pub fn nu1(&self) -> i64 {
        self.nu1
    }
}

/// Rewrites a leading `x_m` as `x_{ν₁} F_{ν₁-m}(λ)`; returns the λ-factor.
pub fn collapse_x(ctx: &Nu1Context, m: i64) -> LambdaPoly {
    poly_f(ctx.nu1 - m)
}

/// Rewrites a leading pair `x_{ν₁} x_m` as the λ-polynomial `R_{m-ν₁}`.
pub fn collapse_xx(ctx: &Nu1Context, m: i64) -> LambdaPoly {
    poly_r(m - ctx.nu1)
}

/// Coordinates of a reduced vector over `Σ'_{ν₁}`: `part0` collects the
/// `λ^n` coefficients (ε = 0) and `part1` the `x_{ν₁}λ^n` ones (ε = 1).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SigmaVector {
    pub part0: LambdaPoly,
    pub part1: LambdaPoly,
}

impl SigmaVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_parts(part0: LambdaPoly, part1: LambdaPoly) -> Self {
        Self { part0, part1 }
    }

    pub fn is_zero(&self) -> bool {
        self.part0.is_zero() && self.part1.is_zero()
    }

    pub fn scaled(&self, c: &LaurentPoly) -> Self {
        Self {
            part0: self.part0.scaled(c),
            part1: self.part1.scaled(c),
        }
    }

    /// Accumulates `other * c` into `self` without temporaries.
    pub fn add_scaled(&mut self, other: &SigmaVector, c: &LaurentPoly) {
        self.part0.add_scaled(&other.part0, c);
        self.part1.add_scaled(&other.part1, c);
    }

    /// The Σ'-shaped skein vector this coordinate pair denotes.
    pub fn to_skein_vector(&self, ctx: &Nu1Context) -> SkeinVector {
        let mut v = SkeinVector::from_lambda_poly(&self.part0);
        for (n, c) in self.part1.iter() {
            v.add_term(Word::x_lambda(ctx.nu1, n as u32), c.clone());
        }
        v
    }
}

impl Add<&SigmaVector> for &SigmaVector {
    type Output = SigmaVector;
    fn add(self, rhs: &SigmaVector) -> SigmaVector {
        SigmaVector {
            part0: &self.part0 + &rhs.part0,
            part1: &self.part1 + &rhs.part1,
        }
    }
}

impl Sub<&SigmaVector> for &SigmaVector {
    type Output = SigmaVector;
    fn sub(self, rhs: &SigmaVector) -> SigmaVector {
        SigmaVector {
            part0: &self.part0 - &rhs.part0,
            part1: &self.part1 - &rhs.part1,
        }
    }
}

impl AddAssign<&SigmaVector> for SigmaVector {
    fn add_assign(&mut self, rhs: &SigmaVector) {
        self.part0 += &rhs.part0;
        self.part1 += &rhs.part1;
    }
}

impl fmt::Display for SigmaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] + x*[{}]", self.part0, self.part1)
    }
}

impl fmt::Debug for SigmaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The order in which the reducer applies the rewrite rules. All strategies
/// must produce the same Σ'-coordinates; the agreement is checked
/// empirically rather than assumed from the freeness theorem.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    /// Step-by-step rewriting: absorb the rightmost eligible run, pushing λ
    /// into the generator on its right, and collapse at the left end once no
    /// absorbable run remains.
    RightmostAbsorption,
    /// Step-by-step rewriting: absorb the leftmost eligible run, pushing λ
    /// into the generator on its left when one exists.
    LeftmostAbsorption,
    /// Left-to-right fold: the Σ'-class of each prefix is kept as a pair of
    /// λ-polynomials and extended one letter at a time, collapsing eagerly.
    /// Same rules applied leftmost-first, without materializing
    /// intermediate words; the default engine.
    EagerCollapse,
}

enum Step {
    Lambda(u32),
    XLambda(u32),
    Rewrite(Vec<(Word, LaurentPoly)>),
}

fn rewrite_step(w: &Word, ctx: &Nu1Context, strat: Strategy) -> Step {
    let k = w.x_count();
    if k == 0 {
        return Step::Lambda(w.head);
    }
    if w.head == 0 && k == 1 && w.pairs[0].0 == ctx.nu1 {
        return Step::XLambda(w.pairs[0].1);
    }

    // λ-runs that still sit left of some x-generator must be absorbed before
    // any collapse; the trailing run is part of the basis shape.
    let absorbable: Vec<usize> = (0..k - 1).filter(|i| w.pairs[*i].1 > 0).collect();
    let has_prefix = w.head > 0;

    match strat {
        Strategy::RightmostAbsorption | Strategy::EagerCollapse => {
            if let Some(&i) = absorbable.last() {
                return Step::Rewrite(absorb_run_into_right(w, Some(i)));
            }
            if has_prefix {
                return Step::Rewrite(absorb_run_into_right(w, None));
            }
        }
        Strategy::LeftmostAbsorption => {
            if has_prefix {
                return Step::Rewrite(absorb_run_into_right(w, None));
            }
            if let Some(&i) = absorbable.first() {
                // Absorbing leftward into pair 0 would undo the x-collapse
                // and cycle; run 0 goes rightward instead.
                if i == 0 {
                    return Step::Rewrite(absorb_run_into_right(w, Some(0)));
                }
                return Step::Rewrite(absorb_run_into_left(w, i));
            }
        }
    }

    // No λ left of any x: collapse at the left end.
    if w.pairs[0].0 == ctx.nu1 {
        debug_assert!(k >= 2);
        // x_{ν₁} x_{m₂} w' = R_{m₂-ν₁}(λ) w'
        let r = collapse_xx(ctx, w.pairs[1].0);
        let rest = w.tail_from(1);
        let out = r
            .iter()
            .map(|(j, c)| {
                let mut nw = rest.clone();
                nw.head += j as u32;
                (nw, c.clone())
            })
            .collect();
        Step::Rewrite(out)
    } else {
        // x_m w' = x_{ν₁} F_{ν₁-m}(λ) w'
        let f = collapse_x(ctx, w.pairs[0].0);
        let rest = w.tail_from(0);
        let out = f
            .iter()
            .map(|(j, c)| {
                let mut nw = Word::x_lambda(ctx.nu1, j as u32).concat(&rest);
                nw.head = 0;
                (nw, c.clone())
            })
            .collect();
        Step::Rewrite(out)
    }
}

fn binomial(n: u32, i: u32) -> BigInt {
    let mut acc = BigInt::from(1);
    for j in 0..i.min(n - i) {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Absorbs a whole λ-run into the x-generator on its right: iterating
/// `λ x_m = A^{-1} x_{m-1} + A x_{m+1}` gives the closed form
/// `λ^n x_m = Σ_i binom(n,i) A^{n-2i} x_{m+n-2i}`. The run is the head when
/// `run` is `None`, otherwise the run after pair `i`.
fn absorb_run_into_right(w: &Word, run: Option<usize>) -> Vec<(Word, LaurentPoly)> {
    let (n, target) = match run {
        Some(i) => (w.pairs[i].1, i + 1),
        None => (w.head, 0),
    };
    let m = w.pairs[target].0;
    (0..=n)
        .map(|i| {
            let shift = n as i64 - 2 * i as i64;
            let mut nw = w.clone();
            match run {
                Some(r) => nw.pairs[r].1 = 0,
                None => nw.head = 0,
            }
            nw.pairs[target].0 = m + shift;
            (nw, LaurentPoly::monomial(shift, binomial(n, i)))
        })
        .collect()
}

/// Absorbs the λ-run after pair `i` into that pair's x-generator: iterating
/// `x_m λ = A x_{m-1} + A^{-1} x_{m+1}` gives
/// `x_m λ^n = Σ_i binom(n,i) A^{2i-n} x_{m+n-2i}`.
fn absorb_run_into_left(w: &Word, i: usize) -> Vec<(Word, LaurentPoly)> {
    let n = w.pairs[i].1;
    let m = w.pairs[i].0;
    (0..=n)
        .map(|j| {
            let shift = n as i64 - 2 * j as i64;
            let mut nw = w.clone();
            nw.pairs[i].1 = 0;
            nw.pairs[i].0 = m + shift;
            (nw, LaurentPoly::monomial(-shift, binomial(n, j)))
        })
        .collect()
}

/// Reduces a skein vector to its coordinates over `Σ'_{ν₁}` with the
/// canonical strategy.
pub fn reduce_to_sigma(v: &SkeinVector, ctx: &Nu1Context) -> SigmaVector {
    reduce_to_sigma_with(v, ctx, Strategy::RightmostAbsorption)
}

/// Strategy-parameterized reduction, exposed so order independence can be
/// tested.
pub fn reduce_to_sigma_with(v: &SkeinVector, ctx: &Nu1Context, strat: Strategy) -> SigmaVector {
    SigmaReducer::with_strategy(*ctx, strat).reduce(v)
}

/// A reusable Σ'-reducer. In the step-by-step strategies each distinct word
/// is rewritten once and its coordinates are memoized, so shared subwords do
/// not multiply work along rewrite paths; reusing one reducer across many
/// inputs amortizes the memo and the F/R polynomial caches further.
pub struct SigmaReducer {
    ctx: Nu1Context,
    strategy: Strategy,
    memo: HashMap<Word, Rc<SigmaVector>>,
    f_cache: HashMap<i64, Rc<LambdaPoly>>,
    r_cache: HashMap<i64, Rc<LambdaPoly>>,
}

impl SigmaReducer {
    pub fn new(ctx: Nu1Context) -> Self {
        Self::with_strategy(ctx, Strategy::EagerCollapse)
    }

    pub fn with_strategy(ctx: Nu1Context, strategy: Strategy) -> Self {
        Self {
            ctx,
            strategy,
            memo: HashMap::new(),
            f_cache: HashMap::new(),
            r_cache: HashMap::new(),
        }
    }

    pub fn ctx(&self) -> &Nu1Context {
        &self.ctx
    }

    pub fn reduce(&mut self, v: &SkeinVector) -> SigmaVector {
        let mut out = SigmaVector::zero();
        for (w, c) in v.iter() {
            let reduced = match self.strategy {
                Strategy::EagerCollapse => Rc::new(self.fold_word(w)),
                _ => self.reduce_word(w),
            };
            out.add_scaled(&reduced, c);
        }
        out
    }

    fn f_poly(&mut self, m: i64) -> Rc<LambdaPoly> {
        Rc::clone(self.f_cache.entry(m).or_insert_with(|| Rc::new(poly_f(m))))
    }

    fn r_poly(&mut self, m: i64) -> Rc<LambdaPoly> {
        Rc::clone(self.r_cache.entry(m).or_insert_with(|| Rc::new(poly_r(m))))
    }

    /// The fold engine: the state is the Σ'-class of the consumed prefix.
    /// Appending `λ^n` multiplies both parts by `λ^n`; appending `x_m`
    /// absorbs each λ-power into the new generator by the binomial rule and
    /// collapses it, swapping the two parts through `F` and `R`.
    fn fold_word(&mut self, w: &Word) -> SigmaVector {
        let mut state = SigmaVector::from_parts(
            LambdaPoly::lambda_pow(w.head as usize),
            LambdaPoly::zero(),
        );
        for &(m, run) in &w.pairs {
            let mut next = SigmaVector::zero();
            let (p0, p1) = (state.part0, state.part1);
            for (e, c) in p0.iter() {
                for i in 0..=e {
                    let j = m + e as i64 - 2 * i as i64;
                    let unit =
                        LaurentPoly::monomial(e as i64 - 2 * i as i64, binomial(e as u32, i as u32));
                    let f = self.f_poly(self.ctx.nu1 - j);
                    next.part1.add_scaled(&f, &(c * &unit));
                }
            }
            for (e, c) in p1.iter() {
                for i in 0..=e {
                    let j = m + e as i64 - 2 * i as i64;
                    let unit =
                        LaurentPoly::monomial(e as i64 - 2 * i as i64, binomial(e as u32, i as u32));
                    let r = self.r_poly(j - self.ctx.nu1);
                    next.part0.add_scaled(&r, &(c * &unit));
                }
            }
            state = SigmaVector::from_parts(
                next.part0.shifted_lambda(run as usize),
                next.part1.shifted_lambda(run as usize),
            );
        }
        state
    }

    fn reduce_word(&mut self, w: &Word) -> Rc<SigmaVector> {
        if let Some(hit) = self.memo.get(w) {
            return Rc::clone(hit);
        }
        let result = match rewrite_step(w, &self.ctx, self.strategy) {
            Step::Lambda(n) => {
                SigmaVector::from_parts(LambdaPoly::lambda_pow(n as usize), LambdaPoly::zero())
            }
            Step::XLambda(n) => {
                SigmaVector::from_parts(LambdaPoly::zero(), LambdaPoly::lambda_pow(n as usize))
            }
            Step::Rewrite(terms) => {
                let mut acc = SigmaVector::zero();
                for (nw, nc) in terms {
                    if nc.is_zero() {
                        continue;
                    }
                    let reduced = self.reduce_word(&nw);
                    acc.add_scaled(&reduced, &nc);
                }
                acc
            }
        };
        let result = Rc::new(result);
        self.memo.insert(w.clone(), Rc::clone(&result));
        result
    }
}

/// Which side the Q-polynomial factors land on when an `x_m` is re-expressed
/// through `x_k`, `x_{k+1}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ShiftDirection {
    /// `x_m = -A^{m-k} x_k Q_{m-k-1} + A^{m-k-1} x_{k+1} Q_{m-k}`
    QRight,
    /// `x_m = -A^{k-m} Q_{m-k-1} x_k + A^{k-m+1} Q_{m-k} x_{k+1}`
    QLeft,
}

/// The two-term re-expression of a bare `x_m` through `x_k` and `x_{k+1}`,
/// used to cross-validate the Σ'-reduction.
pub fn shift_x_expression(k: i64, m: i64, direction: ShiftDirection) -> SkeinVector {
    let q_low = poly_q(m - k - 1);
    let q_high = poly_q(m - k);
    match direction {
        ShiftDirection::QRight => {
            expand_polynomial_at(&Word::x(k), &q_low, &Word::empty())
                .scaled(&-LaurentPoly::a_pow(m - k))
                + expand_polynomial_at(&Word::x(k + 1), &q_high, &Word::empty())
                    .scaled(&LaurentPoly::a_pow(m - k - 1))
        }
        ShiftDirection::QLeft => {
            expand_polynomial_at(&Word::empty(), &q_low, &Word::x(k))
                .scaled(&-LaurentPoly::a_pow(k - m))
                + expand_polynomial_at(&Word::empty(), &q_high, &Word::x(k + 1))
                    .scaled(&LaurentPoly::a_pow(k - m + 1))
        }
    }
}

/// Replaces the x-generator at pair position `pos` of `word` by each term of
/// `template` (a combination of bare-x words), keeping the surrounding runs.
pub fn substitute_x(word: &Word, pos: usize, template: &SkeinVector) -> SkeinVector {
    let prefix = Word {
        head: word.head,
        pairs: word.pairs[..pos].to_vec(),
    };
    // the run that followed the replaced generator moves to the suffix head
    let suffix = word.tail_from(pos);
    let mut out = SkeinVector::zero();
    for (w, c) in template.iter() {
        out.add_term(prefix.concat(w).concat(&suffix), c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;

    fn a(e: i64) -> LaurentPoly {
        LaurentPoly::a_pow(e)
    }

    fn ctx(beta1: i64) -> Nu1Context {
        Nu1Context::from_beta1(beta1).unwrap()
    }

    #[test]
    fn context_floors_toward_negative_infinity() {
        assert_eq!(ctx(1).nu1(), 0);
        assert_eq!(ctx(3).nu1(), 1);
        assert_eq!(ctx(-3).nu1(), -2);
        assert!(Nu1Context::from_beta1(4).is_err());
    }

    #[test]
    fn word_concat_merges_runs() {
        let w = Word::lambda(2).concat(&Word::x(3)).concat(&Word::lambda(1));
        assert_eq!(w.head_run(), 2);
        assert_eq!(w.pairs(), &[(3, 1)]);
        let v = w.concat(&Word::lambda(2));
        assert_eq!(v.pairs(), &[(3, 3)]);
        assert_eq!(w.to_string(), "l^2*x(3)*l");
    }

    #[test]
    fn push_rules_match_quoted_forms() {
        let mut expect = SkeinVector::zero();
        expect.add_term(Word::x(-1), a(-1));
        expect.add_term(Word::x(1), a(1));
        assert_eq!(push_lambda_left(0), expect);

        let mut expect = SkeinVector::zero();
        expect.add_term(Word::x(-1), a(1));
        expect.add_term(Word::x(1), a(-1));
        assert_eq!(push_lambda_right(0), expect);
    }

    #[test]
    fn push_rules_commute_on_lambda_x_lambda() {
        // λ x_m λ: absorbing left-then-right must equal right-then-left.
        for m in -3..=3 {
            let left_first: SkeinVector = push_lambda_left(m)
                .iter()
                .map(|(w, c)| {
                    push_lambda_right(w.pairs()[0].0).scaled(c)
                })
                .fold(SkeinVector::zero(), |acc, v| acc + v);
            let right_first: SkeinVector = push_lambda_right(m)
                .iter()
                .map(|(w, c)| {
                    push_lambda_left(w.pairs()[0].0).scaled(c)
                })
                .fold(SkeinVector::zero(), |acc, v| acc + v);
            assert_eq!(left_first, right_first, "m={m}");
        }
    }

    #[test]
    fn expand_polynomial_examples() {
        let p = LambdaPoly::lambda_pow(1) + LambdaPoly::one();
        let v = expand_polynomial_at(&Word::x(0), &p, &Word::empty());
        let mut expect = SkeinVector::zero();
        expect.add_term(Word::x_lambda(0, 1), LaurentPoly::one());
        expect.add_term(Word::x(0), LaurentPoly::one());
        assert_eq!(v, expect);

        let z = expand_polynomial_at(&Word::empty(), &LambdaPoly::zero(), &Word::x(1));
        assert!(z.is_zero());

        // constant insertion: F_{-1} = -A^3 between x_2 and x_0
        let v = expand_polynomial_at(&Word::x(2), &poly_f(-1), &Word::x(0));
        let mut expect = SkeinVector::zero();
        expect.add_term(Word::x(2).concat(&Word::x(0)), -a(3));
        assert_eq!(v, expect);
    }

    #[test]
    fn t_substitution() {
        assert_eq!(t_substitute(0, 0), poly_p(0));
        assert_eq!(t_substitute(1, 0), LambdaPoly::monomial(1, -a(3)));
        assert_eq!(t_substitute(0, 1), LambdaPoly::monomial(1, -(a(4) + a(-4))));
    }

    #[test]
    fn collapse_rules() {
        let c0 = ctx(1);
        assert_eq!(collapse_x(&c0, 0), LambdaPoly::one());
        assert_eq!(collapse_x(&c0, 2), poly_f(-2));
        let c1 = ctx(3);
        assert_eq!(collapse_x(&c1, 0), poly_f(1));
        assert_eq!(collapse_xx(&c0, 0), poly_r(0));
        assert_eq!(collapse_xx(&c0, 1), poly_r(1));
        assert_eq!(collapse_xx(&c1, 1), poly_r(0));
    }

    #[test]
    fn reduce_examples() {
        let c0 = ctx(1);
        // already reduced
        let v = SkeinVector::from(Word::lambda(3));
        let s = reduce_to_sigma(&v, &c0);
        assert_eq!(s.part0, LambdaPoly::lambda_pow(3));
        assert!(s.part1.is_zero());

        // x_2 -> x_0 F_{-2} = x_0 (-A^2 - A^4 λ)
        let s = reduce_to_sigma(&Word::x(2).into(), &c0);
        assert!(s.part0.is_zero());
        assert_eq!(s.part1, poly_f(-2));

        // x_0 x_0 -> R_0 = 1 + A^{-4} - A^{-4} λ
        let s = reduce_to_sigma(&Word::x(0).concat(&Word::x(0)).into(), &c0);
        assert_eq!(s.part0, poly_r(0));
        assert!(s.part1.is_zero());
    }

    #[test]
    fn reduce_is_idempotent_on_sigma_shapes() {
        for beta1 in [-3, -1, 1, 3, 5] {
            let c = ctx(beta1);
            for n in 0..5u32 {
                let s = reduce_to_sigma(&Word::lambda(n).into(), &c);
                assert_eq!(s.part0, LambdaPoly::lambda_pow(n as usize));
                assert!(s.part1.is_zero());
                let s = reduce_to_sigma(&Word::x_lambda(c.nu1(), n).into(), &c);
                assert!(s.part0.is_zero());
                assert_eq!(s.part1, LambdaPoly::lambda_pow(n as usize));
            }
        }
    }

    #[test]
    fn reduce_is_linear() {
        let c = ctx(3);
        let u: SkeinVector = Word::lambda(1).concat(&Word::x(2)).into();
        let v: SkeinVector = Word::x(0).concat(&Word::x(-1)).concat(&Word::lambda(1)).into();
        let (ca, cb) = (a(2) - a(-1), LaurentPoly::constant(3));
        let combined = reduce_to_sigma(&(u.scaled(&ca) + v.scaled(&cb)), &c);
        let split = &reduce_to_sigma(&u, &c).scaled(&ca) + &reduce_to_sigma(&v, &c).scaled(&cb);
        assert_eq!(combined, split);
    }

    #[test]
    fn shift_templates_degenerate_correctly() {
        // m = k: Q_{-1} = -1, Q_0 = 0, so the template is x_k itself
        assert_eq!(
            shift_x_expression(2, 2, ShiftDirection::QRight),
            SkeinVector::from(Word::x(2))
        );
        // m = k+1: Q_0 = 0, Q_1 = 1, so the template is x_{k+1}
        assert_eq!(
            shift_x_expression(0, 1, ShiftDirection::QRight),
            SkeinVector::from(Word::x(1))
        );
        assert_eq!(
            shift_x_expression(0, 0, ShiftDirection::QLeft),
            SkeinVector::from(Word::x(0))
        );
    }

    #[test]
    fn shift_substitution_is_reduction_invariant() {
        let c0 = ctx(1);
        let direct = reduce_to_sigma(&Word::x(2).into(), &c0);
        for dir in [ShiftDirection::QRight, ShiftDirection::QLeft] {
            let template = shift_x_expression(0, 2, dir);
            let shifted = substitute_x(&Word::x(2), 0, &template);
            assert_eq!(reduce_to_sigma(&shifted, &c0), direct, "{dir:?}");
        }
    }

    #[test]
    fn strategies_agree_on_small_words() {
        let c = ctx(-1);
        let w = Word::lambda(2)
            .concat(&Word::x(1))
            .concat(&Word::lambda(1))
            .concat(&Word::x(-2))
            .concat(&Word::lambda(2));
        let v: SkeinVector = w.into();
        let s1 = reduce_to_sigma_with(&v, &c, Strategy::RightmostAbsorption);
        let s2 = reduce_to_sigma_with(&v, &c, Strategy::LeftmostAbsorption);
        assert_eq!(s1, s2);
    }
}
