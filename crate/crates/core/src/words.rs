//! Bracketed words: elements of the free operated group on a set of generators.
//!
//! A [`Word`] is a freely reduced sequence of [`Factor`]s. A factor is either a
//! signed generator or a signed, possibly iterated, bracket around another word.
//! Brackets are stored folded: `[[c]]` is kept as `Br { c, iter: 2 }`, so the
//! content of a bracket is never a lone positive bracket.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

mod parse;

pub use parse::ParseError;

/// Largest `|k|` accepted in a `^k` power by the parser.
pub const MAX_POWER: u64 = 4096;

/// A generator name: `[a-z][a-zA-Z0-9_]*`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(Arc<str>);

impl Generator {
    pub fn new(name: &str) -> Result<Self, InvalidGenerator> {
        if is_identifier(name) {
            Ok(Generator(Arc::from(name)))
        } else {
            Err(InvalidGenerator(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidGenerator(pub String);

impl fmt::Display for InvalidGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid generator name {:?}", self.0)
    }
}

impl core::error::Error for InvalidGenerator {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn is_pos(self) -> bool {
        self == Sign::Pos
    }
}

/// An indecomposable letter.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    Gen {
        id: Generator,
        sign: Sign,
    },
    /// `(⌊content⌋^(iter))^sign`, with `iter >= 1`.
    Br {
        content: Arc<Word>,
        iter: u32,
        sign: Sign,
    },
}

impl Factor {
    pub fn generator(id: Generator, sign: Sign) -> Factor {
        Factor::Gen { id, sign }
    }

    /// Builds `(⌊content⌋^(iter))^sign`, folding a lone positive bracket
    /// content into the iteration count.
    ///
    /// Panics if `iter == 0`.
    pub fn bracket(content: Word, iter: u32, sign: Sign) -> Factor {
        assert!(iter >= 1, "bracket iteration must be at least 1");
        if let [Factor::Br { content: inner, iter: n, sign: Sign::Pos }] = content.factors.as_slice() {
            return Factor::Br { content: inner.clone(), iter: n + iter, sign };
        }
        Factor::Br { content: Arc::new(content), iter, sign }
    }

    pub fn sign(&self) -> Sign {
        match self {
            Factor::Gen { sign, .. } | Factor::Br { sign, .. } => *sign,
        }
    }

    pub fn inverse(&self) -> Factor {
        match self {
            Factor::Gen { id, sign } => Factor::Gen { id: id.clone(), sign: sign.flip() },
            Factor::Br { content, iter, sign } => {
                Factor::Br { content: content.clone(), iter: *iter, sign: sign.flip() }
            }
        }
    }

    /// Same free-group letter with opposite signs.
    pub fn is_inverse_of(&self, other: &Factor) -> bool {
        match (self, other) {
            (Factor::Gen { id: a, sign: s }, Factor::Gen { id: b, sign: t }) => s != t && a == b,
            (Factor::Br { content: a, iter: m, sign: s }, Factor::Br { content: b, iter: n, sign: t }) => {
                s != t && m == n && (Arc::ptr_eq(a, b) || a == b)
            }
            _ => false,
        }
    }

    pub fn is_bracket(&self) -> bool {
        matches!(self, Factor::Br { .. })
    }

    pub fn is_positive_bracket(&self) -> bool {
        matches!(self, Factor::Br { sign: Sign::Pos, .. })
    }

    pub fn is_negative_bracket(&self) -> bool {
        matches!(self, Factor::Br { sign: Sign::Neg, .. })
    }

    /// `(content, iter, sign)` for a bracket letter.
    pub fn as_bracket(&self) -> Option<(&Word, u32, Sign)> {
        match self {
            Factor::Br { content, iter, sign } => Some((content, *iter, *sign)),
            Factor::Gen { .. } => None,
        }
    }

    fn op_degree(&self) -> usize {
        match self {
            Factor::Gen { .. } => 0,
            Factor::Br { content, iter, .. } => *iter as usize + content.op_degree(),
        }
    }

    fn depth(&self) -> usize {
        match self {
            Factor::Gen { .. } => 0,
            Factor::Br { content, iter, .. } => *iter as usize + content.depth(),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Gen { id, sign } => {
                write!(f, "{id}")?;
                if !sign.is_pos() {
                    f.write_str("^-1")?;
                }
            }
            Factor::Br { content, iter, sign } => {
                write!(f, "[{content}]")?;
                if *iter >= 2 {
                    write!(f, "@{iter}")?;
                }
                if !sign.is_pos() {
                    f.write_str("^-1")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Breadth, depth and operator degree of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WordMetrics {
    pub breadth: usize,
    pub depth: usize,
    pub op_degree: usize,
}

/// A freely reduced bracketed word. The empty word is the identity `1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    factors: Vec<Factor>,
}

impl Word {
    pub fn identity() -> Word {
        Word { factors: Vec::new() }
    }

    pub fn letter(f: Factor) -> Word {
        Word { factors: alloc::vec![f] }
    }

    pub fn generator(name: &str) -> Result<Word, InvalidGenerator> {
        Ok(Word::letter(Factor::generator(Generator::new(name)?, Sign::Pos)))
    }

    /// Collects factors and freely reduces the result.
    pub fn from_factors<I: IntoIterator<Item = Factor>>(factors: I) -> Word {
        let mut out: Vec<Factor> = Vec::new();
        for f in factors {
            push_reduced(&mut out, f);
        }
        Word { factors: out }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<Factor> {
        self.factors
    }

    pub fn breadth(&self) -> usize {
        self.factors.len()
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn first(&self) -> Option<&Factor> {
        self.factors.first()
    }

    pub fn last(&self) -> Option<&Factor> {
        self.factors.last()
    }

    /// The free-group product: concatenation with cancellation at the seam.
    /// Brackets are never merged here.
    pub fn reduce_concat(&self, other: &Word) -> Word {
        let mut out = self.factors.clone();
        out.reserve(other.factors.len());
        for f in &other.factors {
            push_reduced(&mut out, f.clone());
        }
        Word { factors: out }
    }

    pub fn invert(&self) -> Word {
        Word { factors: self.factors.iter().rev().map(Factor::inverse).collect() }
    }

    /// `⌊w⌋` as a literal bracket (with folding).
    pub fn bracket_literal(&self) -> Word {
        Word::letter(Factor::bracket(self.clone(), 1, Sign::Pos))
    }

    /// The free-group power `w^k`.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.reduce_concat(&base);
        }
        out
    }

    pub fn op_degree(&self) -> usize {
        self.factors.iter().map(Factor::op_degree).sum()
    }

    pub fn depth(&self) -> usize {
        self.factors.iter().map(Factor::depth).max().unwrap_or(0)
    }

    pub fn metrics(&self) -> WordMetrics {
        WordMetrics { breadth: self.breadth(), depth: self.depth(), op_degree: self.op_degree() }
    }

    /// All generators occurring at any nesting level.
    pub fn generators(&self) -> BTreeSet<Generator> {
        let mut out = BTreeSet::new();
        self.collect_generators(&mut out);
        out
    }

    fn collect_generators(&self, out: &mut BTreeSet<Generator>) {
        for f in &self.factors {
            match f {
                Factor::Gen { id, .. } => {
                    out.insert(id.clone());
                }
                Factor::Br { content, .. } => content.collect_generators(out),
            }
        }
    }

    /// Evaluates the word in an operated group: the unique operated-group
    /// homomorphism extending `assign`.
    pub fn eval<G, F>(&self, target: &G, assign: &F) -> Result<G::Elem, Unassigned>
    where
        G: OperatedGroup + ?Sized,
        F: Fn(&Generator) -> Option<G::Elem> + ?Sized,
    {
        let mut acc = target.identity();
        for f in &self.factors {
            let value = match f {
                Factor::Gen { id, sign } => {
                    let g = assign(id).ok_or_else(|| Unassigned(id.clone()))?;
                    if sign.is_pos() {
                        g
                    } else {
                        target.inv(&g)
                    }
                }
                Factor::Br { content, iter, sign } => {
                    let mut g = content.eval(target, assign)?;
                    for _ in 0..*iter {
                        g = target.op(&g);
                    }
                    if sign.is_pos() {
                        g
                    } else {
                        target.inv(&g)
                    }
                }
            };
            acc = target.mul(&acc, &value);
        }
        Ok(acc)
    }

    pub fn parse(text: &str) -> Result<Word, ParseError> {
        parse::parse_word(text)
    }

    /// Builds a word from already reduced factors.
    pub(crate) fn from_reduced(factors: Vec<Factor>) -> Word {
        debug_assert!(factors.windows(2).all(|p| !p[0].is_inverse_of(&p[1])));
        Word { factors }
    }
}

fn push_reduced(out: &mut Vec<Factor>, f: Factor) {
    if out.last().is_some_and(|last| last.is_inverse_of(&f)) {
        out.pop();
    } else {
        out.push(f);
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

/// A generator with no assigned value during evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unassigned(pub Generator);

impl fmt::Display for Unassigned {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "generator `{}` has no assigned value", self.0)
    }
}

impl core::error::Error for Unassigned {}

/// A group with one distinguished unary map `op`.
pub trait OperatedGroup {
    type Elem: Clone + PartialEq;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn op(&self, a: &Self::Elem) -> Self::Elem;

    fn op_iter(&self, a: &Self::Elem, n: usize) -> Self::Elem {
        let mut g = a.clone();
        for _ in 0..n {
            g = self.op(&g);
        }
        g
    }
}
