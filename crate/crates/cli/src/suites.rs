//! Seeded property suites over random normal words.
//!
//! Each trial draws three normal words `u, v, w` from its own seed, so a
//! report is a pure function of the configuration. A law that fails is
//! reported with its first failing trial, shrunk greedily: delete a factor or
//! peel one bracket layer at any depth, keep the candidate only if it is
//! still normal and still breaks the same law.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Duration;

use freeavg_core::structures::{search_averaging_ops, FiniteAveragingGroup, FiniteGroup};
use freeavg_core::{
    extend_hom, is_normal, oracle_normalize, Factor, FreeAveragingGroup, GenParams, Generator, Mutation, NormalWord,
    Oracle, Sign, Strategy, Word, WordSampler,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Assoc,
    Averaging,
    Closure,
    Oracle,
    Hom,
    Derived,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] =
        [Suite::Assoc, Suite::Averaging, Suite::Closure, Suite::Oracle, Suite::Hom, Suite::Derived];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Assoc => "assoc",
            Suite::Averaging => "averaging",
            Suite::Closure => "closure",
            Suite::Oracle => "oracle",
            Suite::Hom => "hom",
            Suite::Derived => "derived",
            Suite::All => "all",
        }
    }

    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::EACH.to_vec(),
            s => vec![s],
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Suite, String> {
        Suite::EACH.into_iter().chain([Suite::All]).find(|x| x.name() == s).ok_or_else(|| {
            format!("unknown suite {s:?} (expected assoc, averaging, closure, oracle, hom, derived or all)")
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    pub max_depth: usize,
    pub max_breadth: usize,
    pub alphabet: Vec<Generator>,
    pub mutation: Option<Mutation>,
}

impl SuiteConfig {
    /// Depth 3, breadth 4, alphabet `x y z`.
    pub fn standard(suite: Suite, trials: usize, seed: u64) -> SuiteConfig {
        let p = GenParams::standard(seed);
        SuiteConfig {
            suite,
            trials,
            seed,
            max_depth: p.max_depth,
            max_breadth: p.max_breadth,
            alphabet: p.alphabet,
            mutation: None,
        }
    }

    fn params(&self, seed: u64) -> GenParams {
        GenParams { max_depth: self.max_depth, max_breadth: self.max_breadth, alphabet: self.alphabet.clone(), seed }
    }
}

/// One trial's inputs. `seed` drives anything besides the words, such as
/// generator assignments into finite targets.
#[derive(Debug, Clone)]
pub struct Sample {
    pub words: Vec<NormalWord>,
    pub seed: u64,
}

struct Ctx {
    free: FreeAveragingGroup,
    alphabet: Vec<Generator>,
    targets: Vec<FiniteAveragingGroup>,
}

type Check = fn(&Ctx, &Sample) -> Result<(), String>;

struct Law {
    name: &'static str,
    arity: usize,
    check: Check,
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub trial: usize,
    pub words: Vec<NormalWord>,
    pub detail: String,
    pub shrink_steps: usize,
}

#[derive(Debug, Clone)]
pub struct LawResult {
    pub suite: Suite,
    pub law: &'static str,
    pub passed: usize,
    pub trials: usize,
    pub counterexample: Option<Counterexample>,
}

impl LawResult {
    pub fn ok(&self) -> bool {
        self.passed == self.trials
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub config: SuiteConfig,
    pub laws: Vec<LawResult>,
    pub elapsed: Duration,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.laws.iter().all(LawResult::ok)
    }

    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.law == name)
    }

    /// The deterministic part of the report.
    pub fn body(&self) -> String {
        let c = &self.config;
        let alphabet: Vec<&str> = c.alphabet.iter().map(Generator::as_str).collect();
        let mut s = String::new();
        let _ = writeln!(
            s,
            "check {}: {} trials, seed {}, depth <= {}, breadth <= {}, alphabet {}",
            c.suite.name(),
            c.trials,
            c.seed,
            c.max_depth,
            c.max_breadth,
            alphabet.join(" ")
        );
        if let Some(m) = c.mutation {
            let _ = writeln!(s, "mutation: {m}");
        }
        let mut current = None;
        for l in &self.laws {
            if current != Some(l.suite) {
                let _ = writeln!(s, "suite {}", l.suite.name());
                current = Some(l.suite);
            }
            let verdict = if l.ok() { "ok" } else { "FAIL" };
            let _ = writeln!(s, "  {:<44} {:>6}/{:<6} {verdict}", l.law, l.passed, l.trials);
            if let Some(cx) = &l.counterexample {
                let _ = writeln!(s, "    first failure at trial {}, shrunk in {} steps:", cx.trial, cx.shrink_steps);
                for (name, w) in ["u", "v", "w"].iter().zip(&cx.words) {
                    let _ = writeln!(s, "    {name} = {w}");
                }
                for line in cx.detail.lines() {
                    let _ = writeln!(s, "    {line}");
                }
            }
        }
        let failed = self.laws.iter().filter(|l| !l.ok()).count();
        let _ = writeln!(s, "{} laws, {} failed: {}", self.laws.len(), failed, if failed == 0 { "ok" } else { "FAIL" });
        s
    }

    pub fn timing(&self) -> String {
        format!("time: {:.3}s", self.elapsed.as_secs_f64())
    }
}

/// A well-mixed seed for trial `i`.
pub fn trial_seed(seed: u64, i: usize) -> u64 {
    let mut z = seed ^ (i as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Every validated averaging operator on ℤ₂, ℤ₃, ℤ₄ and S₃.
pub fn hom_targets() -> Vec<FiniteAveragingGroup> {
    [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4), FiniteGroup::symmetric3()]
        .into_iter()
        .flat_map(|g| {
            search_averaging_ops(&g, false)
                .expect("small carriers are within the search cap")
                .into_iter()
                .map(move |op| FiniteAveragingGroup::new(g.clone(), op).expect("search returns valid operators"))
        })
        .collect()
}

pub fn run(cfg: &SuiteConfig) -> Report {
    let start = std::time::Instant::now();
    let suites = cfg.suite.expand();
    let ctx = Ctx {
        free: cfg.mutation.map_or(FreeAveragingGroup::new(), FreeAveragingGroup::with_mutation),
        alphabet: cfg.alphabet.clone(),
        targets: if suites.contains(&Suite::Hom) { hom_targets() } else { Vec::new() },
    };
    let samples: Vec<Sample> = (0..cfg.trials)
        .map(|i| {
            let seed = trial_seed(cfg.seed, i);
            let mut sampler = WordSampler::new(&cfg.params(seed));
            Sample { words: (0..3).map(|_| sampler.normal_word()).collect(), seed }
        })
        .collect();
    let mut laws = Vec::new();
    for suite in suites {
        for law in laws_of(suite) {
            laws.push(run_law(&ctx, suite, &law, &samples));
        }
    }
    Report { config: cfg.clone(), laws, elapsed: start.elapsed() }
}

fn run_law(ctx: &Ctx, suite: Suite, law: &Law, samples: &[Sample]) -> LawResult {
    let mut passed = 0;
    let mut first = None;
    for (i, s) in samples.iter().enumerate() {
        let s = Sample { words: s.words[..law.arity].to_vec(), seed: s.seed };
        match (law.check)(ctx, &s) {
            Ok(()) => passed += 1,
            Err(_) if first.is_some() => {}
            Err(_) => first = Some((i, s)),
        }
    }
    let counterexample = first.map(|(trial, s)| shrink(ctx, law.check, trial, s));
    LawResult { suite, law: law.name, passed, trials: samples.len(), counterexample }
}

const SHRINK_BUDGET: usize = 20_000;

fn shrink(ctx: &Ctx, check: Check, trial: usize, mut s: Sample) -> Counterexample {
    let mut detail = check(ctx, &s).expect_err("shrinking starts from a failure");
    let mut steps = 0;
    let mut budget = SHRINK_BUDGET;
    'outer: loop {
        for k in 0..s.words.len() {
            for cand in shrink_candidates(s.words[k].as_word()) {
                if budget == 0 {
                    break 'outer;
                }
                budget -= 1;
                let Ok(cand) = NormalWord::new(cand) else { continue };
                let mut t = s.clone();
                t.words[k] = cand;
                if let Err(d) = check(ctx, &t) {
                    s = t;
                    detail = d;
                    steps += 1;
                    continue 'outer;
                }
            }
        }
        break;
    }
    Counterexample { trial, words: s.words, detail, shrink_steps: steps }
}

/// Strictly smaller words: one factor deleted, or one bracket layer peeled,
/// at any nesting level. Candidates are not filtered for normality.
pub fn shrink_candidates(w: &Word) -> Vec<Word> {
    let fs = w.factors();
    let splice = |i: usize, repl: Vec<Factor>| {
        Word::from_factors(fs[..i].iter().cloned().chain(repl).chain(fs[i + 1..].iter().cloned()))
    };
    let mut out = Vec::new();
    for i in 0..fs.len() {
        out.push(splice(i, Vec::new()));
    }
    for (i, f) in fs.iter().enumerate() {
        let Some((c, n, sign)) = f.as_bracket() else { continue };
        let peeled = match (n, sign) {
            (2.., _) => vec![Factor::bracket(c.clone(), n - 1, sign)],
            (_, Sign::Pos) => c.factors().to_vec(),
            (_, Sign::Neg) => c.invert().into_factors(),
        };
        out.push(splice(i, peeled));
        for inner in shrink_candidates(c) {
            out.push(splice(i, vec![Factor::bracket(inner, n, sign)]));
        }
    }
    out
}

fn expect_eq(what: &str, lhs: &NormalWord, rhs: &NormalWord) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{what}\nlhs = {lhs}\nrhs = {rhs}"))
    }
}

fn expect_normal(what: &str, w: &NormalWord) -> Result<(), String> {
    if is_normal(w.as_word()) {
        Ok(())
    } else {
        Err(format!("{what} is not normal: {w}"))
    }
}

fn normalize(oracle: Oracle, w: &Word) -> Result<NormalWord, String> {
    oracle.normalize(w).map(|n| n.word).map_err(|e| format!("{e} on {w}"))
}

fn laws_of(suite: Suite) -> Vec<Law> {
    match suite {
        Suite::Assoc => vec![
            Law { name: "(u v) w = u (v w)", arity: 3, check: assoc },
            Law { name: "1 u = u = u 1", arity: 1, check: identity },
            Law { name: "u u^-1 = 1 = u^-1 u", arity: 1, check: inverses },
        ],
        Suite::Averaging => vec![
            Law { name: "A(u) A(v) = A(u A(v))", arity: 2, check: averaging_right },
            Law { name: "A(u) A(v) = A(A(u) v)", arity: 2, check: averaging_left },
        ],
        Suite::Closure => vec![
            Law { name: "u v is normal", arity: 2, check: closure_product },
            Law { name: "(u v) w is normal", arity: 3, check: closure_triple },
            Law { name: "A^n(u) is normal, n <= 4", arity: 1, check: closure_operator },
            Law { name: "u^-1 is normal", arity: 1, check: closure_inverse },
        ],
        Suite::Oracle => vec![
            Law { name: "u v = nf(u . v)", arity: 2, check: oracle_product },
            Law { name: "A(u) = nf([u])", arity: 1, check: oracle_operator },
            Law { name: "nf is idempotent", arity: 2, check: oracle_idempotent },
            Law { name: "both rewriting strategies agree", arity: 2, check: oracle_confluent },
        ],
        Suite::Hom => vec![
            Law { name: "f(u v) = f(u) f(v)", arity: 2, check: hom_product },
            Law { name: "f(A(u)) = A(f(u))", arity: 1, check: hom_operator },
            Law { name: "self-evaluation is the identity", arity: 1, check: hom_self },
        ],
        Suite::Derived => vec![
            Law { name: "A(u A^2(v)) = A^2(u A(v))", arity: 2, check: derived_aa2 },
            Law { name: "A(u A^n(v)) = A^n(u A(v)), n <= 4", arity: 2, check: derived_aan },
            Law { name: "deg A(u) = deg u + 1", arity: 1, check: derived_degree },
        ],
        Suite::All => Vec::new(),
    }
}

fn assoc(c: &Ctx, s: &Sample) -> Result<(), String> {
    let (u, v, w) = (&s.words[0], &s.words[1], &s.words[2]);
    let f = &c.free;
    expect_eq("associativity", &f.diamond(&f.diamond(u, v), w), &f.diamond(u, &f.diamond(v, w)))
}

fn identity(c: &Ctx, s: &Sample) -> Result<(), String> {
    let (u, one) = (&s.words[0], NormalWord::identity());
    expect_eq("left identity", &c.free.diamond(&one, u), u)?;
    expect_eq("right identity", &c.free.diamond(u, &one), u)
}

fn inverses(c: &Ctx, s: &Sample) -> Result<(), String> {
    let (u, one) = (&s.words[0], NormalWord::identity());
    let inv = c.free.inverse(u);
    expect_eq("right inverse", &c.free.diamond(u, &inv), &one)?;
    expect_eq("left inverse", &c.free.diamond(&inv, u), &one)
}

fn averaging_right(c: &Ctx, s: &Sample) -> Result<(), String> {
    let f = &c.free;
    let (u, v) = (&s.words[0], &s.words[1]);
    let lhs = f.diamond(&f.op_apply(u), &f.op_apply(v));
    expect_eq("A(u) A(v) against A(u A(v))", &lhs, &f.op_apply(&f.diamond(u, &f.op_apply(v))))
}

fn averaging_left(c: &Ctx, s: &Sample) -> Result<(), String> {
    let f = &c.free;
    let (u, v) = (&s.words[0], &s.words[1]);
    let lhs = f.diamond(&f.op_apply(u), &f.op_apply(v));
    expect_eq("A(u) A(v) against A(A(u) v)", &lhs, &f.op_apply(&f.diamond(&f.op_apply(u), v)))
}

fn closure_product(c: &Ctx, s: &Sample) -> Result<(), String> {
    expect_normal("u v", &c.free.diamond(&s.words[0], &s.words[1]))
}

fn closure_triple(c: &Ctx, s: &Sample) -> Result<(), String> {
    let f = &c.free;
    expect_normal("(u v) w", &f.diamond(&f.diamond(&s.words[0], &s.words[1]), &s.words[2]))
}

fn closure_operator(c: &Ctx, s: &Sample) -> Result<(), String> {
    let mut w = s.words[0].clone();
    for n in 1..=4 {
        w = c.free.op_apply(&w);
        expect_normal(&format!("A^{n}(u)"), &w)?;
    }
    Ok(())
}

fn closure_inverse(c: &Ctx, s: &Sample) -> Result<(), String> {
    expect_normal("u^-1", &c.free.inverse(&s.words[0]))
}

fn oracle_product(c: &Ctx, s: &Sample) -> Result<(), String> {
    let (u, v) = (&s.words[0], &s.words[1]);
    let nf = normalize(Oracle::default(), &u.reduce_concat(v))?;
    expect_eq("product against rewriting of the concatenation", &c.free.diamond(u, v), &nf)
}

fn oracle_operator(c: &Ctx, s: &Sample) -> Result<(), String> {
    let u = &s.words[0];
    let nf = normalize(Oracle::default(), &u.bracket_literal())?;
    expect_eq("operator against rewriting of the literal bracket", &c.free.op_apply(u), &nf)
}

/// The pair corpus: concatenation and both literal brackets.
fn corpus(s: &Sample) -> [Word; 3] {
    let (u, v) = (&s.words[0], &s.words[1]);
    [u.reduce_concat(v), u.bracket_literal(), v.bracket_literal()]
}

fn oracle_idempotent(_: &Ctx, s: &Sample) -> Result<(), String> {
    for w in corpus(s) {
        let once = normalize(Oracle::default(), &w)?;
        let twice = normalize(Oracle::default(), once.as_word())?;
        expect_eq(&format!("normalizing {w} twice"), &twice, &once)?;
    }
    Ok(())
}

fn oracle_confluent(_: &Ctx, s: &Sample) -> Result<(), String> {
    for w in corpus(s) {
        let a = normalize(Oracle::new(Strategy::InnermostLeftmost), &w)?;
        let b = normalize(Oracle::new(Strategy::OutermostRightmost), &w)?;
        expect_eq(&format!("innermost-leftmost against outermost-rightmost on {w}"), &a, &b)?;
    }
    Ok(())
}

/// A random assignment of the alphabet into each target, fixed by the seed.
fn assignments(c: &Ctx, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    c.targets.iter().map(|t| c.alphabet.iter().map(|_| rng.gen_range(0..t.group().order())).collect()).collect()
}

fn hom_check(
    c: &Ctx,
    s: &Sample,
    law: impl Fn(&dyn Fn(&NormalWord) -> usize, &FiniteAveragingGroup) -> Option<String>,
) -> Result<(), String> {
    for (t, values) in c.targets.iter().zip(assignments(c, s.seed)) {
        let h = extend_hom(t, |g: &Generator| c.alphabet.iter().position(|a| a == g).map(|i| values[i]));
        let eval = |w: &NormalWord| h.apply(w).expect("words use only the alphabet");
        if let Some(msg) = law(&eval, t) {
            let names = t.group().names();
            let map: Vec<String> = c.alphabet.iter().zip(&values).map(|(g, &v)| format!("{g}={}", names[v])).collect();
            let op: Vec<&str> = t.operator().0.iter().map(|&i| names[i].as_str()).collect();
            return Err(format!(
                "target of order {} with A = [{}], {}\n{msg}",
                t.group().order(),
                op.join(" "),
                map.join(",")
            ));
        }
    }
    Ok(())
}

fn hom_product(c: &Ctx, s: &Sample) -> Result<(), String> {
    let (u, v) = (&s.words[0], &s.words[1]);
    let uv = c.free.diamond(u, v);
    hom_check(c, s, |f, t| {
        let (lhs, rhs) = (f(&uv), t.group().mul(f(u), f(v)));
        (lhs != rhs).then(|| format!("f(u v) = {}, f(u) f(v) = {}", t.group().name(lhs), t.group().name(rhs)))
    })
}

fn hom_operator(c: &Ctx, s: &Sample) -> Result<(), String> {
    let u = &s.words[0];
    let au = c.free.op_apply(u);
    hom_check(c, s, |f, t| {
        let (lhs, rhs) = (f(&au), t.apply(f(u)));
        (lhs != rhs).then(|| format!("f(A(u)) = {}, A(f(u)) = {}", t.group().name(lhs), t.group().name(rhs)))
    })
}

fn hom_self(c: &Ctx, s: &Sample) -> Result<(), String> {
    let u = &s.words[0];
    let h = extend_hom(&c.free, |g: &Generator| {
        Some(NormalWord::new(Word::letter(Factor::generator(g.clone(), Sign::Pos))).expect("letters are normal"))
    });
    let image = h.apply(u).expect("every generator is assigned");
    expect_eq("self-evaluation", &image, u)
}

fn aan(c: &Ctx, u: &NormalWord, v: &NormalWord, n: u32) -> Result<(), String> {
    let f = &c.free;
    let lhs = f.op_apply(&f.diamond(u, &f.op_iter(v, n)));
    let rhs = f.op_iter(&f.diamond(u, &f.op_apply(v)), n);
    expect_eq(&format!("A(u A^{n}(v)) against A^{n}(u A(v))"), &lhs, &rhs)
}

fn derived_aa2(c: &Ctx, s: &Sample) -> Result<(), String> {
    aan(c, &s.words[0], &s.words[1], 2)
}

fn derived_aan(c: &Ctx, s: &Sample) -> Result<(), String> {
    (1..=4).try_for_each(|n| aan(c, &s.words[0], &s.words[1], n))
}

fn derived_degree(c: &Ctx, s: &Sample) -> Result<(), String> {
    let u = &s.words[0];
    let au = c.free.op_apply(u);
    if au.op_degree() == u.op_degree() + 1 {
        Ok(())
    } else {
        Err(format!("A(u) = {au} has degree {}, u has degree {}", au.op_degree(), u.op_degree()))
    }
}

/// Rewrites a raw word with the default oracle; used for non-normal input.
pub fn normal_form(w: &Word) -> Result<NormalWord, String> {
    oracle_normalize(w).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nw(s: &str) -> NormalWord {
        s.parse().unwrap()
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = SuiteConfig::standard(Suite::Closure, 20, 3);
        assert_eq!(run(&cfg).body(), run(&cfg).body());
        assert_ne!(run(&cfg).body(), run(&SuiteConfig { seed: 4, ..cfg }).body());
    }

    fn size(w: &Word) -> usize {
        w.factors().iter().map(|f| 1 + f.as_bracket().map_or(0, |(c, _, _)| size(c))).sum::<usize>() + w.op_degree()
    }

    #[test]
    fn shrink_candidates_are_smaller() {
        let w: Word = "x [y [z]@2]^-1".parse().unwrap();
        let cands = shrink_candidates(&w);
        assert!(cands.contains(&"[y [z]@2]^-1".parse().unwrap()));
        assert!(cands.contains(&"x [z]@2^-1 y^-1".parse().unwrap()));
        assert!(cands.contains(&"x [y [z]]^-1".parse().unwrap()));
        assert!(cands.iter().all(|c| size(c) < size(&w)));
    }

    #[test]
    fn shrinking_keeps_the_law_failing() {
        let cfg =
            SuiteConfig { mutation: Some(Mutation::MergeExponent), ..SuiteConfig::standard(Suite::Oracle, 50, 1) };
        let r = run(&cfg);
        let l = r.law("u v = nf(u . v)").unwrap();
        let cx = l.counterexample.as_ref().expect("the mutation breaks the product");
        let ctx = Ctx {
            free: cfg.mutation.map_or(FreeAveragingGroup::new(), FreeAveragingGroup::with_mutation),
            alphabet: cfg.alphabet,
            targets: vec![],
        };
        assert!(oracle_product(&ctx, &Sample { words: cx.words.clone(), seed: 0 }).is_err());
        assert!(cx.words.iter().map(|w| w.breadth()).sum::<usize>() <= 3, "{:?}", cx.words);
    }

    #[test]
    fn law_checks_pass_on_handpicked_words() {
        let ctx =
            Ctx { free: FreeAveragingGroup::new(), alphabet: GenParams::standard(0).alphabet, targets: hom_targets() };
        let s = Sample { words: vec![nw("[x [y]]@2"), nw("[z]@3"), nw("x^-1")], seed: 9 };
        for suite in Suite::EACH {
            for law in laws_of(suite) {
                let t = Sample { words: s.words[..law.arity].to_vec(), seed: s.seed };
                assert_eq!((law.check)(&ctx, &t), Ok(()), "{}", law.name);
            }
        }
    }
}
