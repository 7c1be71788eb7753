//! Averaging normal forms and a rewriting normalizer.
//!
//! A word is *normal* when, at every nesting level (brackets read folded):
//!
//! * no two adjacent brackets have the same sign;
//! * a bracket content of breadth at least 2 neither starts with a positive
//!   bracket nor ends with a positive bracket of iteration at least 2;
//! * every bracket content is itself normal.
//!
//! [`Oracle`] rewrites an arbitrary reduced word into a normal one using rules
//! oriented from the averaging identities. It shares no code with the
//! constructive product in [`crate::avgroup`], so the two can be checked
//! against each other.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::words::{Factor, ParseError, Sign, Word};

/// Which clause of the normal-form predicate a word breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    AdjacentPositiveBrackets,
    AdjacentNegativeBrackets,
    ContentStartsWithPositiveBracket,
    ContentEndsWithIteratedBracket,
}

/// The first place where a word fails to be normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Factor indices descending into bracket contents.
    pub path: Vec<usize>,
    /// Index of the offending factor in the word at `path`.
    pub index: usize,
    pub kind: ViolationKind,
}

pub fn is_normal(w: &Word) -> bool {
    first_violation(w).is_none()
}

pub fn first_violation(w: &Word) -> Option<Violation> {
    let mut path = Vec::new();
    violation_in(w, &mut path)
}

fn violation_in(w: &Word, path: &mut Vec<usize>) -> Option<Violation> {
    let fs = w.factors();
    for (i, pair) in fs.windows(2).enumerate() {
        let kind = if pair[0].is_positive_bracket() && pair[1].is_positive_bracket() {
            ViolationKind::AdjacentPositiveBrackets
        } else if pair[0].is_negative_bracket() && pair[1].is_negative_bracket() {
            ViolationKind::AdjacentNegativeBrackets
        } else {
            continue;
        };
        return Some(Violation { path: path.clone(), index: i, kind });
    }
    for (i, f) in fs.iter().enumerate() {
        let Some((content, _, _)) = f.as_bracket() else { continue };
        if let Some(kind) = content_violation(content) {
            return Some(Violation { path: path.clone(), index: i, kind });
        }
        path.push(i);
        let inner = violation_in(content, path);
        path.pop();
        if inner.is_some() {
            return inner;
        }
    }
    None
}

fn content_violation(content: &Word) -> Option<ViolationKind> {
    if content.breadth() < 2 {
        return None;
    }
    if content.first().is_some_and(Factor::is_positive_bracket) {
        return Some(ViolationKind::ContentStartsWithPositiveBracket);
    }
    match content.last().and_then(Factor::as_bracket) {
        Some((_, iter, Sign::Pos)) if iter >= 2 => Some(ViolationKind::ContentEndsWithIteratedBracket),
        _ => None,
    }
}

/// A word certified by [`is_normal`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct NormalWord(Word);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotNormal(pub Violation);

impl fmt::Display for NotNormal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "word is not in averaging normal form: {:?} at {:?}/{}", self.0.kind, self.0.path, self.0.index)
    }
}

impl core::error::Error for NotNormal {}

impl NormalWord {
    pub fn new(w: Word) -> Result<NormalWord, NotNormal> {
        match first_violation(&w) {
            None => Ok(NormalWord(w)),
            Some(v) => Err(NotNormal(v)),
        }
    }

    pub fn identity() -> NormalWord {
        NormalWord(Word::identity())
    }

    pub fn as_word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    /// Wraps a word the caller has produced by a normality-preserving
    /// construction. Checked in debug builds only.
    pub(crate) fn trusted(w: Word) -> NormalWord {
        debug_assert!(is_normal(&w), "expected a normal word, got {w}");
        NormalWord(w)
    }

    /// Wraps without any check; used for outputs of deliberately broken
    /// arithmetic, which the property suites then inspect.
    pub(crate) fn unchecked(w: Word) -> NormalWord {
        NormalWord(w)
    }
}

impl AsRef<Word> for NormalWord {
    fn as_ref(&self) -> &Word {
        &self.0
    }
}

impl core::ops::Deref for NormalWord {
    type Target = Word;

    fn deref(&self) -> &Word {
        &self.0
    }
}

impl From<NormalWord> for Word {
    fn from(w: NormalWord) -> Word {
        w.0
    }
}

impl TryFrom<Word> for NormalWord {
    type Error = NotNormal;

    fn try_from(w: Word) -> Result<Self, NotNormal> {
        NormalWord::new(w)
    }
}

impl fmt::Display for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalWord({})", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalWordParseError {
    Syntax(ParseError),
    NotNormal(NotNormal),
}

impl fmt::Display for NormalWordParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalWordParseError::Syntax(e) => fmt::Display::fmt(e, f),
            NormalWordParseError::NotNormal(e) => fmt::Display::fmt(e, f),
        }
    }
}

impl core::error::Error for NormalWordParseError {}

impl FromStr for NormalWord {
    type Err = NormalWordParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let w = Word::parse(s).map_err(NormalWordParseError::Syntax)?;
        NormalWord::new(w).map_err(NormalWordParseError::NotNormal)
    }
}

/// Rewrite rules of the oracle. Free reduction is applied implicitly every
/// time a word is rebuilt, since [`Word`] is always reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// `⌊a⌋^(s) ⌊b⌋^(t) → ⌊a⌊b⌋⌋^(s+t-1)`
    MergePositive,
    /// `(⌊a⌋^(s))^-1 (⌊b⌋^(t))^-1 → (⌊b⌊a⌋⌋^(s+t-1))^-1`
    MergeNegative,
    /// `⌊⌊a⌋^(t) r⌋ → ⌊⌊a⌋^(t-1) ⌊r⌋⌋`, with `⌊a⌋^(0) = a`
    ShiftLeading,
    /// `⌊r ⌊b⌋^(m)⌋^(n) → ⌊r ⌊b⌋⌋^(n+m-1)` for `m >= 2`
    LiftTrailing,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::MergePositive => "R1",
            Rule::MergeNegative => "R1-",
            Rule::ShiftLeading => "R2",
            Rule::LiftTrailing => "R3",
        }
    }

    fn width(self) -> usize {
        match self {
            Rule::MergePositive | Rule::MergeNegative => 2,
            Rule::ShiftLeading | Rule::LiftTrailing => 1,
        }
    }

    fn from_name(name: &str) -> Option<Rule> {
        [Rule::MergePositive, Rule::MergeNegative, Rule::ShiftLeading, Rule::LiftTrailing]
            .into_iter()
            .find(|r| r.name() == name)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One rewrite: the factors `before` at `index` in the word reached by
/// descending through `path` were replaced by `after`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: Rule,
    pub path: Vec<usize>,
    pub index: usize,
    pub before: Word,
    pub after: Word,
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", self.rule)?;
        for p in &self.path {
            write!(f, "{p}.")?;
        }
        write!(f, "{}: {} => {}", self.index, self.before, self.after)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RewriteTrace {
    pub steps: Vec<RewriteStep>,
}

/// A trace step that does not match the word it is replayed on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayMismatch {
    pub step: usize,
}

impl fmt::Display for ReplayMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "trace step {} does not match the word being rewritten", self.step)
    }
}

impl core::error::Error for ReplayMismatch {}

impl RewriteTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Re-applies every step to `input`, checking each `before` in place.
    pub fn replay(&self, input: &Word) -> Result<Word, ReplayMismatch> {
        let mut w = input.clone();
        for (n, step) in self.steps.iter().enumerate() {
            let site = word_at(&w, &step.path).ok_or(ReplayMismatch { step: n })?;
            let width = step.before.breadth();
            let end = step.index + width;
            if end > site.breadth() || site.factors()[step.index..end] != *step.before.factors() {
                return Err(ReplayMismatch { step: n });
            }
            w = splice(&w, &step.path, step.index, width, step.after.factors());
        }
        Ok(w)
    }

    /// Parses the line format produced by `Display`.
    pub fn parse(text: &str) -> Result<RewriteTrace, TraceParseError> {
        let mut steps = Vec::new();
        for (line_no, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let bad = || TraceParseError { line: line_no + 1 };
            let (rule, rest) = line.trim().split_once(' ').ok_or_else(bad)?;
            let rule = Rule::from_name(rule).ok_or_else(bad)?;
            let (location, rest) = rest.split_once(": ").ok_or_else(bad)?;
            let (before, after) = rest.split_once(" => ").ok_or_else(bad)?;
            let mut idx: Vec<usize> = Vec::new();
            for part in location.split('.') {
                idx.push(part.parse().map_err(|_| bad())?);
            }
            let index = idx.pop().ok_or_else(bad)?;
            steps.push(RewriteStep {
                rule,
                path: idx,
                index,
                before: Word::parse(before).map_err(|_| bad())?,
                after: Word::parse(after).map_err(|_| bad())?,
            });
        }
        Ok(RewriteTrace { steps })
    }
}

impl fmt::Display for RewriteTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            writeln!(f, "{step}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceParseError {
    pub line: usize,
}

impl fmt::Display for TraceParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed trace line {}", self.line)
    }
}

impl core::error::Error for TraceParseError {}

/// Order in which the oracle picks the next redex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Deepest contents first, then left to right.
    #[default]
    InnermostLeftmost,
    /// Top level first, right to left, then into contents.
    OutermostRightmost,
}

/// The rewriting normalizer gave up after `limit` steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepLimitExceeded {
    pub limit: usize,
    pub partial: Word,
}

impl fmt::Display for StepLimitExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rewriting did not terminate within {} steps", self.limit)
    }
}

impl core::error::Error for StepLimitExceeded {}

#[derive(Debug, Clone)]
pub struct Normalized {
    pub word: NormalWord,
    pub steps: usize,
    pub trace: Option<RewriteTrace>,
}

pub const DEFAULT_STEP_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub strategy: Strategy,
    pub step_limit: usize,
    pub record_trace: bool,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { strategy: Strategy::default(), step_limit: DEFAULT_STEP_LIMIT, record_trace: false }
    }
}

impl Oracle {
    pub fn new(strategy: Strategy) -> Oracle {
        Oracle { strategy, ..Oracle::default() }
    }

    pub fn with_trace(mut self) -> Oracle {
        self.record_trace = true;
        self
    }

    pub fn with_step_limit(mut self, limit: usize) -> Oracle {
        self.step_limit = limit;
        self
    }

    pub fn normalize(&self, input: &Word) -> Result<Normalized, StepLimitExceeded> {
        let mut w = input.clone();
        let mut trace = self.record_trace.then(RewriteTrace::default);
        let mut steps = 0;
        loop {
            let found = match self.strategy {
                Strategy::InnermostLeftmost => innermost_leftmost(&w),
                Strategy::OutermostRightmost => outermost_rightmost(&w),
            };
            let Some(redex) = found else { break };
            if steps == self.step_limit {
                return Err(StepLimitExceeded { limit: self.step_limit, partial: w });
            }
            steps += 1;
            let site = word_at(&w, &redex.path).expect("redex path is valid");
            let width = redex.rule.width();
            let before = &site.factors()[redex.index..redex.index + width];
            let after = rewrite(redex.rule, before);
            if let Some(t) = trace.as_mut() {
                t.steps.push(RewriteStep {
                    rule: redex.rule,
                    path: redex.path.clone(),
                    index: redex.index,
                    before: Word::from_reduced(before.to_vec()),
                    after: Word::letter(after.clone()),
                });
            }
            w = splice(&w, &redex.path, redex.index, width, core::slice::from_ref(&after));
        }
        Ok(Normalized { word: NormalWord::trusted(w), steps, trace })
    }
}

/// Normalizes with the default oracle settings.
pub fn oracle_normalize(w: &Word) -> Result<NormalWord, StepLimitExceeded> {
    Oracle::default().normalize(w).map(|n| n.word)
}

struct Redex {
    path: Vec<usize>,
    index: usize,
    rule: Rule,
}

fn pair_rule(a: &Factor, b: &Factor) -> Option<Rule> {
    if a.is_positive_bracket() && b.is_positive_bracket() {
        Some(Rule::MergePositive)
    } else if a.is_negative_bracket() && b.is_negative_bracket() {
        Some(Rule::MergeNegative)
    } else {
        None
    }
}

fn bracket_rule(f: &Factor) -> Option<Rule> {
    let (content, _, _) = f.as_bracket()?;
    match content_violation(content)? {
        ViolationKind::ContentStartsWithPositiveBracket => Some(Rule::ShiftLeading),
        ViolationKind::ContentEndsWithIteratedBracket => Some(Rule::LiftTrailing),
        _ => None,
    }
}

fn innermost_leftmost(w: &Word) -> Option<Redex> {
    let fs = w.factors();
    for (i, f) in fs.iter().enumerate() {
        if let Some((content, _, _)) = f.as_bracket() {
            if let Some(mut r) = innermost_leftmost(content) {
                r.path.insert(0, i);
                return Some(r);
            }
        }
    }
    for i in 0..fs.len() {
        if let Some(rule) = bracket_rule(&fs[i]) {
            return Some(Redex { path: Vec::new(), index: i, rule });
        }
        if let Some(rule) = fs.get(i + 1).and_then(|next| pair_rule(&fs[i], next)) {
            return Some(Redex { path: Vec::new(), index: i, rule });
        }
    }
    None
}

fn outermost_rightmost(w: &Word) -> Option<Redex> {
    let fs = w.factors();
    for i in (0..fs.len()).rev() {
        if let Some(rule) = fs.get(i + 1).and_then(|next| pair_rule(&fs[i], next)) {
            return Some(Redex { path: Vec::new(), index: i, rule });
        }
        if let Some(rule) = bracket_rule(&fs[i]) {
            return Some(Redex { path: Vec::new(), index: i, rule });
        }
    }
    for (i, f) in fs.iter().enumerate().rev() {
        if let Some((content, _, _)) = f.as_bracket() {
            if let Some(mut r) = outermost_rightmost(content) {
                r.path.insert(0, i);
                return Some(r);
            }
        }
    }
    None
}

fn rewrite(rule: Rule, site: &[Factor]) -> Factor {
    match rule {
        Rule::MergePositive | Rule::MergeNegative => {
            let (a, s, _) = site[0].as_bracket().expect("bracket");
            let (b, t, _) = site[1].as_bracket().expect("bracket");
            if rule == Rule::MergePositive {
                Factor::bracket(a.reduce_concat(&b.bracket_literal()), s + t - 1, Sign::Pos)
            } else {
                Factor::bracket(b.reduce_concat(&a.bracket_literal()), s + t - 1, Sign::Neg)
            }
        }
        Rule::ShiftLeading => {
            let (content, n, sign) = site[0].as_bracket().expect("bracket");
            let fs = content.factors();
            let (a, t, _) = fs[0].as_bracket().expect("leading bracket");
            let lowered = if t == 1 { a.clone() } else { Word::letter(Factor::bracket(a.clone(), t - 1, Sign::Pos)) };
            let rest = Word::from_reduced(fs[1..].to_vec());
            Factor::bracket(lowered.reduce_concat(&rest.bracket_literal()), n, sign)
        }
        Rule::LiftTrailing => {
            let (content, n, sign) = site[0].as_bracket().expect("bracket");
            let fs = content.factors();
            let k = fs.len();
            let (b, m, _) = fs[k - 1].as_bracket().expect("trailing bracket");
            let mut new_content = fs[..k - 1].to_vec();
            new_content.push(Factor::bracket(b.clone(), 1, Sign::Pos));
            Factor::bracket(Word::from_factors(new_content), n + m - 1, sign)
        }
    }
}

fn word_at<'a>(w: &'a Word, path: &[usize]) -> Option<&'a Word> {
    let mut cur = w;
    for &i in path {
        cur = cur.factors().get(i)?.as_bracket()?.0;
    }
    Some(cur)
}

/// Replaces `width` factors at `index` of the word at `path` and rebuilds
/// every enclosing level, reducing and folding on the way up.
fn splice(w: &Word, path: &[usize], index: usize, width: usize, replacement: &[Factor]) -> Word {
    let fs = w.factors();
    match path.split_first() {
        None => {
            let mut out: Vec<Factor> = fs[..index].to_vec();
            out.extend_from_slice(replacement);
            out.extend_from_slice(&fs[index + width..]);
            Word::from_factors(out)
        }
        Some((&i, rest)) => {
            let (content, iter, sign) = fs[i].as_bracket().expect("path goes through brackets");
            let inner = splice(content, rest, index, width, replacement);
            let mut out: Vec<Factor> = fs[..i].to_vec();
            out.push(Factor::bracket(inner, iter, sign));
            out.extend_from_slice(&fs[i + 1..]);
            Word::from_factors(out)
        }
    }
}

/// Renders a violation for diagnostics.
pub fn describe_violation(v: &Violation) -> String {
    let what = match v.kind {
        ViolationKind::AdjacentPositiveBrackets => "adjacent positive brackets",
        ViolationKind::AdjacentNegativeBrackets => "adjacent negative brackets",
        ViolationKind::ContentStartsWithPositiveBracket => "bracket content starts with a positive bracket",
        ViolationKind::ContentEndsWithIteratedBracket => "bracket content ends with an iterated positive bracket",
    };
    let mut at = String::new();
    for p in &v.path {
        at.push_str(&alloc::format!("{p}."));
    }
    alloc::format!("{what} at {at}{}", v.index)
}
