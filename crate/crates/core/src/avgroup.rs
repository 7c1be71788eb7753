//! The free averaging group on normal words.
//!
//! Elements are [`NormalWord`]s; equality is structural. The product
//! [`diamond`] concatenates and repairs the seam, merging adjacent brackets of
//! equal sign. The operator [`op_apply`] brackets a word, first absorbing a
//! leading positive bracket or a trailing iterated one. Every outer iteration
//! `⌊·⌋^(t)` produced by these rules means `t` applications of the operator
//! itself, never `t` literal brackets.

use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::normalform::{is_normal, oracle_normalize, NormalWord};
use crate::words::{Factor, Generator, OperatedGroup, Sign, Unassigned, Word};

/// Deliberate defects used to check that the law suites notice broken
/// recursions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Merged brackets get iteration `s+t` instead of `s+t-1`.
    MergeExponent,
    /// Outer iterations in the operator are literal brackets.
    LiteralOuterBrackets,
    /// Merged brackets wrap their new content literally instead of applying
    /// the operator `s+t-1` times.
    LiteralMerge,
}

impl Mutation {
    pub const ALL: [Mutation; 3] = [Mutation::MergeExponent, Mutation::LiteralOuterBrackets, Mutation::LiteralMerge];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::MergeExponent => "merge-exponent",
            Mutation::LiteralOuterBrackets => "literal-outer-brackets",
            Mutation::LiteralMerge => "literal-merge",
        }
    }

    pub fn from_name(name: &str) -> Option<Mutation> {
        Mutation::ALL.into_iter().find(|m| m.name() == name)
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The free averaging group as a value, optionally with a [`Mutation`].
///
/// Outputs of a mutated group are not guaranteed to be normal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FreeAveragingGroup {
    mutation: Option<Mutation>,
}

impl FreeAveragingGroup {
    pub const fn new() -> Self {
        FreeAveragingGroup { mutation: None }
    }

    pub const fn with_mutation(mutation: Mutation) -> Self {
        FreeAveragingGroup { mutation: Some(mutation) }
    }

    pub fn mutation(&self) -> Option<Mutation> {
        self.mutation
    }

    pub fn diamond(&self, u: &NormalWord, v: &NormalWord) -> NormalWord {
        self.wrap(self.product(u.as_word(), v.as_word()))
    }

    pub fn op_apply(&self, w: &NormalWord) -> NormalWord {
        self.wrap(Word::letter(self.apply(w.as_word())))
    }

    pub fn op_iter(&self, w: &NormalWord, n: u32) -> NormalWord {
        if n == 0 {
            return w.clone();
        }
        self.wrap(Word::letter(self.iterate(w.as_word(), n)))
    }

    pub fn inverse(&self, w: &NormalWord) -> NormalWord {
        self.wrap(w.as_word().invert())
    }

    fn wrap(&self, w: Word) -> NormalWord {
        match self.mutation {
            None => NormalWord::trusted(w),
            Some(_) => NormalWord::unchecked(w),
        }
    }

    fn product(&self, u: &Word, v: &Word) -> Word {
        let mut stack = u.factors().to_vec();
        for f in v.factors() {
            self.push(&mut stack, f.clone());
        }
        Word::from_reduced(stack)
    }

    /// Pushes `f` onto the right end of `stack`, cancelling and merging at
    /// the seam until it is stable.
    fn push(&self, stack: &mut Vec<Factor>, mut f: Factor) {
        while let Some(top) = stack.last() {
            if top.is_inverse_of(&f) {
                stack.pop();
                return;
            }
            if top.is_positive_bracket() && f.is_positive_bracket() {
                let top = stack.pop().expect("nonempty");
                f = self.merge(&top, &f);
            } else if top.is_negative_bracket() && f.is_negative_bracket() {
                let top = stack.pop().expect("nonempty");
                f = self.merge(&f.inverse(), &top.inverse()).inverse();
            } else {
                break;
            }
        }
        stack.push(f);
    }

    /// `⌊a⌋^(s) ⋄ ⌊b⌋^(t) = A^(s+t-1)(a ⋄ A(b))` for positive brackets.
    fn merge(&self, left: &Factor, right: &Factor) -> Factor {
        let (a, s, _) = left.as_bracket().expect("positive bracket");
        let (b, t, _) = right.as_bracket().expect("positive bracket");
        let content = self.product(a, &Word::letter(self.apply(b)));
        match self.mutation {
            Some(Mutation::MergeExponent) => self.iterate(&content, s + t),
            Some(Mutation::LiteralMerge) => Factor::bracket(content, s + t - 1, Sign::Pos),
            _ => self.iterate(&content, s + t - 1),
        }
    }

    /// `A_X(w)`, always a single positive bracket.
    fn apply(&self, w: &Word) -> Factor {
        let fs = w.factors();
        let k = fs.len();
        if k >= 2 {
            if let Some((a, t, Sign::Pos)) = fs[0].as_bracket() {
                let rest = Word::from_reduced(fs[1..].to_vec());
                let content = self.product(a, &Word::letter(self.apply(&rest)));
                return self.outer(content, t);
            }
            if let Some((b, s, Sign::Pos)) = fs[k - 1].as_bracket() {
                if s >= 2 {
                    let head = Word::from_reduced(fs[..k - 1].to_vec());
                    let content = self.product(&head, &Word::letter(self.apply(b)));
                    return self.outer(content, s);
                }
            }
        }
        Factor::bracket(w.clone(), 1, Sign::Pos)
    }

    fn outer(&self, content: Word, n: u32) -> Factor {
        match self.mutation {
            Some(Mutation::LiteralOuterBrackets) => Factor::bracket(content, n, Sign::Pos),
            _ => self.iterate(&content, n),
        }
    }

    /// `A^n(w)` for `n >= 1`. Applying the operator to a single positive
    /// bracket only raises its iteration.
    fn iterate(&self, w: &Word, n: u32) -> Factor {
        debug_assert!(n >= 1);
        let f = self.apply(w);
        let (c, m, _) = f.as_bracket().expect("operator output is a bracket");
        Factor::bracket(c.clone(), m + n - 1, Sign::Pos)
    }
}

impl OperatedGroup for FreeAveragingGroup {
    type Elem = NormalWord;

    fn identity(&self) -> NormalWord {
        NormalWord::identity()
    }

    fn mul(&self, a: &NormalWord, b: &NormalWord) -> NormalWord {
        self.diamond(a, b)
    }

    fn inv(&self, a: &NormalWord) -> NormalWord {
        self.inverse(a)
    }

    fn op(&self, a: &NormalWord) -> NormalWord {
        self.op_apply(a)
    }

    fn op_iter(&self, a: &NormalWord, n: usize) -> NormalWord {
        FreeAveragingGroup::op_iter(self, a, u32::try_from(n).expect("iteration count fits in u32"))
    }
}

/// Operated groups whose operator is known to satisfy the averaging law.
pub trait AveragingGroup: OperatedGroup {}

impl AveragingGroup for FreeAveragingGroup {}

pub fn diamond(u: &NormalWord, v: &NormalWord) -> NormalWord {
    FreeAveragingGroup::new().diamond(u, v)
}

/// The operator `A_X`.
pub fn op_apply(w: &NormalWord) -> NormalWord {
    FreeAveragingGroup::new().op_apply(w)
}

pub fn op_iter(w: &NormalWord, n: u32) -> NormalWord {
    FreeAveragingGroup::new().op_iter(w, n)
}

pub fn inverse(w: &NormalWord) -> NormalWord {
    FreeAveragingGroup::new().inverse(w)
}

/// The averaging-group homomorphism out of the free averaging group that
/// extends a generator assignment.
pub struct Homomorphism<'a, G: ?Sized, F> {
    target: &'a G,
    assign: F,
}

pub fn extend_hom<G, F>(target: &G, assign: F) -> Homomorphism<'_, G, F>
where
    G: AveragingGroup + ?Sized,
    F: Fn(&Generator) -> Option<G::Elem>,
{
    Homomorphism { target, assign }
}

impl<G, F> Homomorphism<'_, G, F>
where
    G: AveragingGroup + ?Sized,
    F: Fn(&Generator) -> Option<G::Elem>,
{
    pub fn apply(&self, w: &NormalWord) -> Result<G::Elem, Unassigned> {
        w.as_word().eval(self.target, &self.assign)
    }
}

/// Parameters of the random word generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenParams {
    pub max_depth: usize,
    pub max_breadth: usize,
    pub alphabet: Vec<Generator>,
    pub seed: u64,
}

impl GenParams {
    /// Depth 3, breadth 4, alphabet `x y z`.
    pub fn standard(seed: u64) -> GenParams {
        let alphabet = ["x", "y", "z"].iter().map(|n| Generator::new(n).expect("valid name")).collect();
        GenParams { max_depth: 3, max_breadth: 4, alphabet, seed }
    }
}

/// A seeded stream of random words.
pub struct WordSampler {
    max_depth: usize,
    max_breadth: usize,
    alphabet: Vec<Generator>,
    rng: ChaCha8Rng,
}

impl WordSampler {
    /// Panics if the alphabet is empty or `max_breadth` is zero.
    pub fn new(p: &GenParams) -> WordSampler {
        assert!(!p.alphabet.is_empty(), "alphabet must be nonempty");
        assert!(p.max_breadth >= 1, "max_breadth must be at least 1");
        WordSampler {
            max_depth: p.max_depth,
            max_breadth: p.max_breadth,
            alphabet: p.alphabet.clone(),
            rng: ChaCha8Rng::seed_from_u64(p.seed),
        }
    }

    /// Grows a normal word directly, rejecting candidates that would break
    /// normality.
    pub fn normal_word(&mut self) -> NormalWord {
        let w = self.grow(self.max_depth);
        NormalWord::new(w).expect("grown words are normal")
    }

    /// A reduced word with no normality constraint.
    pub fn raw_word(&mut self) -> Word {
        self.grow_raw(self.max_depth)
    }

    /// A raw word pushed through the rewriting normalizer.
    pub fn normalized_raw_word(&mut self) -> NormalWord {
        let w = self.raw_word();
        oracle_normalize(&w).expect("random raw words normalize within the step limit")
    }

    fn generator(&mut self) -> Factor {
        let id = self.alphabet[self.rng.gen_range(0..self.alphabet.len())].clone();
        Factor::generator(id, self.sign())
    }

    fn sign(&mut self) -> Sign {
        if self.rng.gen_bool(0.5) {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    /// Iteration count for a bracket with `budget >= 1` depth left.
    fn iter(&mut self, budget: usize) -> u32 {
        let max = budget.min(3) as u32;
        if max == 1 || self.rng.gen_bool(0.7) {
            1
        } else {
            self.rng.gen_range(2..=max)
        }
    }

    fn grow(&mut self, depth: usize) -> Word {
        let n = self.rng.gen_range(0..=self.max_breadth);
        let mut fs: Vec<Factor> = Vec::with_capacity(n);
        let mut attempts = 0;
        while fs.len() < n && attempts < 8 * n {
            attempts += 1;
            let f = self.normal_factor(depth);
            if let Some(last) = fs.last() {
                let same_sign_brackets = last.is_bracket() && f.is_bracket() && last.sign() == f.sign();
                if same_sign_brackets || last.is_inverse_of(&f) {
                    continue;
                }
            }
            fs.push(f);
        }
        Word::from_reduced(fs)
    }

    fn normal_factor(&mut self, depth: usize) -> Factor {
        if depth > 0 && self.rng.gen_bool(0.45) {
            for _ in 0..8 {
                let iter = self.iter(depth);
                let content = self.grow(depth - iter as usize);
                let sign = self.sign();
                let f = Factor::bracket(content, iter, sign);
                if is_normal(&Word::letter(f.clone())) {
                    return f;
                }
            }
        }
        self.generator()
    }

    fn grow_raw(&mut self, depth: usize) -> Word {
        let n = self.rng.gen_range(0..=self.max_breadth);
        let mut fs = Vec::with_capacity(n);
        for _ in 0..n {
            let f = if depth > 0 && self.rng.gen_bool(0.45) {
                let iter = self.iter(depth);
                let content = self.grow_raw(depth - iter as usize);
                let sign = self.sign();
                Factor::bracket(content, iter, sign)
            } else {
                self.generator()
            };
            fs.push(f);
        }
        Word::from_factors(fs)
    }
}

/// One sample from the growth generator.
pub fn random_normal_word(p: &GenParams) -> NormalWord {
    WordSampler::new(p).normal_word()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::{String, ToString};

    fn nw(s: &str) -> NormalWord {
        s.parse().unwrap()
    }

    fn mul(a: &str, b: &str) -> String {
        diamond(&nw(a), &nw(b)).to_string()
    }

    fn op(a: &str) -> String {
        op_apply(&nw(a)).to_string()
    }

    #[test]
    fn product_examples() {
        assert_eq!(mul("[x [y]]@2", "[z]^-1"), "[x [y]]@2 [z]^-1");
        assert_eq!(mul("[x [y]]@2", "[z]@3"), "[x [y [z]]]@4");
        assert_eq!(mul("[z]^-1", "[z]@3"), "[z]^-1 [z]@3");
        assert_eq!(mul("[x]^-1", "[y]^-1"), "[y [x]]^-1");
    }

    #[test]
    fn product_cascades_through_cancellation() {
        // `[x]` cancels, exposing `[y] [z]`
        // `[q] [r]` merges into `[q [r]]`, which then cancels
        assert_eq!(mul("a [q [r]]^-1 [q]", "[r] b"), "a b");
        assert_eq!(mul("a [y] [x]^-1", "[x] b"), "a [y] b");
        assert_eq!(mul("x [y]", "[y]^-1 x^-1"), "1");
    }

    #[test]
    fn operator_examples() {
        assert_eq!(op("[x [y]]@2"), "[x [y]]@3");
        assert_eq!(op("[z]^-1"), "[[z]^-1]");
        assert_eq!(op("[x]@3 y [z]@2"), "[x [y [z]]]@4");
        assert_eq!(op("1"), "[1]");
    }

    #[test]
    fn outer_iterations_apply_the_operator() {
        // a literal bracket would leave `[x [c]@2]`
        assert_eq!(mul("[x [c]@2 [b]^-1]", "[b]"), "[x [c]]@2");
        assert_eq!(op("x [c]@2 [b]^-1 [b]@2"), "[x [c]]@3");
        let literal = FreeAveragingGroup::with_mutation(Mutation::LiteralMerge);
        let out = literal.diamond(&nw("[x [c]@2 [b]^-1]"), &nw("[b]"));
        assert!(!is_normal(out.as_word()));
    }

    #[test]
    fn iteration_examples() {
        assert_eq!(op_iter(&nw("x"), 2).to_string(), "[x]@2");
        assert_eq!(op_iter(&nw("x [y]@2"), 1).to_string(), "[x [y]]@2");
        assert_eq!(op_iter(&nw("x [y]"), 0), nw("x [y]"));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse(&nw("[x [y]]")).to_string(), "[x [y]]^-1");
        assert_eq!(inverse(&nw("x [y]")).to_string(), "[y]^-1 x^-1");
        assert_eq!(inverse(&nw("1")).to_string(), "1");
    }

    #[test]
    fn mutations_change_the_examples() {
        let g = FreeAveragingGroup::with_mutation(Mutation::MergeExponent);
        assert_eq!(g.diamond(&nw("[x [y]]@2"), &nw("[z]@3")).to_string(), "[x [y [z]]]@6");
        let g = FreeAveragingGroup::with_mutation(Mutation::LiteralOuterBrackets);
        let out = g.op_apply(&nw("[x]@3 y [z]@2"));
        assert_ne!(out.to_string(), "[x [y [z]]]@4");
        assert!(!is_normal(out.as_word()));
        assert_eq!(Mutation::from_name("literal-merge"), Some(Mutation::LiteralMerge));
    }

    #[test]
    fn hom_into_integers() {
        struct Shift;
        impl OperatedGroup for Shift {
            type Elem = i64;
            fn identity(&self) -> i64 {
                0
            }
            fn mul(&self, a: &i64, b: &i64) -> i64 {
                a + b
            }
            fn inv(&self, a: &i64) -> i64 {
                -a
            }
            fn op(&self, a: &i64) -> i64 {
                a + 5
            }
        }
        impl AveragingGroup for Shift {}
        let h = extend_hom(&Shift, |g: &Generator| match g.as_str() {
            "x" => Some(2),
            "y" => Some(3),
            _ => None,
        });
        assert_eq!(h.apply(&nw("x [y]")), Ok(10));
        assert!(h.apply(&nw("z")).is_err());
    }

    #[test]
    fn sampler_is_deterministic_and_normal() {
        let p = GenParams::standard(11);
        let mut a = WordSampler::new(&p);
        let mut b = WordSampler::new(&p);
        for _ in 0..200 {
            let (u, v) = (a.normal_word(), b.normal_word());
            assert_eq!(u, v);
            assert!(u.depth() <= 3 && u.breadth() <= 4, "{u}");
        }
        let shallow = GenParams { max_depth: 0, ..GenParams::standard(5) };
        let w = random_normal_word(&shallow);
        assert_eq!(w.op_degree(), 0);
    }
}
