//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines are always printed; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use freeavg::suites::{self, hom_targets, trial_seed, Suite, SuiteConfig};
use freeavg_core::linearalg::{
    check_antipode_averaging, check_averaging_lie, check_coalgebra_map, check_hopf_equivalence, check_leibniz,
    linear_extend, AntipodeVerdict, LieAlgebra, LieFailure, Matrix, Rational,
};
use freeavg_core::structures::{
    check_disemigroup, check_pointed_consequences, check_rack, search_averaging_ops, FiniteAveragingGroup, FiniteGroup,
    OperatorTable, PointedReport,
};
use freeavg_core::{is_normal, FreeAveragingGroup, GenParams, Mutation, NormalWord, WordSampler};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 7;
const TRIALS: usize = 1000;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn nw(s: &str) -> NormalWord {
    s.parse().expect("example inputs are normal")
}

enum Example {
    Mul(&'static str, &'static str, &'static str),
    Op(&'static str, &'static str),
}

const EXAMPLES: [Example; 6] = [
    Example::Mul("[x [y]]@2", "[z]^-1", "[x [y]]@2 [z]^-1"),
    Example::Mul("[z]^-1", "[z]@3", "[z]^-1 [z]@3"),
    Example::Mul("[x [y]]@2", "[z]@3", "[x [y [z]]]@4"),
    Example::Op("[x [y]]@2", "[x [y]]@3"),
    Example::Op("[z]^-1", "[[z]^-1]"),
    Example::Op("[x]@3 y [z]@2", "[x [y [z]]]@4"),
];

/// Runs the worked examples against `f`: (exact matches, slowest, mismatches).
fn run_examples(f: &FreeAveragingGroup) -> (usize, Duration, Vec<String>) {
    let mut hits = 0;
    let mut slowest = Duration::ZERO;
    let mut misses = Vec::new();
    for ex in &EXAMPLES {
        let (label, want, start, got) = match ex {
            Example::Mul(u, v, want) => {
                let (u, v) = (nw(u), nw(v));
                let start = Instant::now();
                let got = f.diamond(&u, &v).to_string();
                (format!("mul {u} {v}"), *want, start, got)
            }
            Example::Op(w, want) => {
                let w = nw(w);
                let start = Instant::now();
                let got = f.op_apply(&w).to_string();
                (format!("op {w}"), *want, start, got)
            }
        };
        slowest = slowest.max(start.elapsed());
        if got == want {
            hits += 1;
        } else {
            misses.push(format!("{label} gave {got}, expected {want}"));
        }
    }
    (hits, slowest, misses)
}

fn criterion_1() -> Verdict {
    let (hits, slowest, misses) = run_examples(&FreeAveragingGroup::new());
    let fast = slowest < Duration::from_millis(1);
    let mut detail = format!("{hits}/{} exact, slowest {:.3} ms", EXAMPLES.len(), slowest.as_secs_f64() * 1e3);
    if let Some(m) = misses.first() {
        detail += &format!("; {m}");
    }
    verdict(misses.is_empty() && fast, detail)
}

fn suite_summary(r: &suites::Report, laws: &[&str]) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in laws {
        let l = r.law(name).unwrap_or_else(|| panic!("law {name:?} is in the suite"));
        ok &= l.ok();
        parts.push(format!("{} {}/{}", l.law, l.passed, l.trials));
    }
    (ok, parts.join(", "))
}

fn first_counterexample(r: &suites::Report) -> String {
    r.laws
        .iter()
        .find_map(|l| l.counterexample.as_ref().map(|c| (l.law, c)))
        .map(|(law, c)| {
            let words: Vec<String> = c.words.iter().map(ToString::to_string).collect();
            format!("; counterexample to {law}: {}", words.join(" | "))
        })
        .unwrap_or_default()
}

fn criterion_2() -> Verdict {
    let r = suites::run(&SuiteConfig::standard(Suite::Assoc, TRIALS, SEED));
    let (ok, detail) = suite_summary(&r, &["(u v) w = u (v w)", "1 u = u = u 1", "u u^-1 = 1 = u^-1 u"]);
    let fast = r.elapsed < Duration::from_secs(30);
    verdict(ok && fast, format!("{detail}; {:.2}s{}", r.elapsed.as_secs_f64(), first_counterexample(&r)))
}

fn criterion_3() -> Verdict {
    let avg = suites::run(&SuiteConfig::standard(Suite::Averaging, TRIALS, SEED));
    let der = suites::run(&SuiteConfig::standard(Suite::Derived, TRIALS, SEED));
    let (ok1, d1) = suite_summary(&avg, &["A(u) A(v) = A(u A(v))", "A(u) A(v) = A(A(u) v)"]);
    let (ok2, d2) = suite_summary(&der, &["A(u A^2(v)) = A^2(u A(v))", "A(u A^n(v)) = A^n(u A(v)), n <= 4"]);
    let elapsed = avg.elapsed + der.elapsed;
    let cx = first_counterexample(&avg) + &first_counterexample(&der);
    verdict(ok1 && ok2 && elapsed < Duration::from_secs(30), format!("{d1}, {d2}; {:.2}s{cx}", elapsed.as_secs_f64()))
}

/// Every product and operator output computed by suites 2 and 3, on the
/// same trial corpus, must be normal.
fn criterion_4() -> Verdict {
    let f = FreeAveragingGroup::new();
    let (mut outputs, mut bad) = (0usize, Vec::new());
    for i in 0..TRIALS {
        let mut s = WordSampler::new(&GenParams { seed: trial_seed(SEED, i), ..GenParams::standard(0) });
        let (u, v, w) = (s.normal_word(), s.normal_word(), s.normal_word());
        let one = NormalWord::identity();
        let (au, av) = (f.op_apply(&u), f.op_apply(&v));
        let mut out = vec![
            f.diamond(&u, &v),
            f.diamond(&v, &w),
            f.diamond(&f.diamond(&u, &v), &w),
            f.diamond(&u, &f.diamond(&v, &w)),
            f.diamond(&one, &u),
            f.diamond(&u, &one),
            f.diamond(&u, &f.inverse(&u)),
            f.diamond(&f.inverse(&u), &u),
            au.clone(),
            av.clone(),
            f.diamond(&au, &av),
            f.op_apply(&f.diamond(&u, &av)),
            f.op_apply(&f.diamond(&au, &v)),
        ];
        for n in 1..=4 {
            out.push(f.op_apply(&f.diamond(&u, &f.op_iter(&v, n))));
            out.push(f.op_iter(&f.diamond(&u, &av), n));
        }
        outputs += out.len();
        bad.extend(out.into_iter().filter(|o| !is_normal(o.as_word())).map(|o| o.to_string()));
    }
    let closure = suites::run(&SuiteConfig::standard(Suite::Closure, TRIALS, SEED));
    let mut detail = format!(
        "{}/{outputs} outputs normal; closure suite {}",
        outputs - bad.len(),
        if closure.ok() { "ok" } else { "FAIL" }
    );
    if let Some(b) = bad.first() {
        detail += &format!("; first non-normal output {b}");
    }
    verdict(bad.is_empty() && closure.ok(), detail)
}

fn criterion_5() -> Verdict {
    let r = suites::run(&SuiteConfig::standard(Suite::Oracle, TRIALS, SEED));
    let (ok, detail) = suite_summary(
        &r,
        &["u v = nf(u . v)", "A(u) = nf([u])", "nf is idempotent", "both rewriting strategies agree"],
    );
    verdict(ok, format!("{detail}{}", first_counterexample(&r)))
}

fn criterion_6() -> Verdict {
    let targets = hom_targets();
    let r = suites::run(&SuiteConfig::standard(Suite::Hom, TRIALS, SEED));
    let (ok, detail) =
        suite_summary(&r, &["f(u v) = f(u) f(v)", "f(A(u)) = A(f(u))", "self-evaluation is the identity"]);
    let has_sign =
        targets.iter().any(|t| t.group().order() == 6 && t.operator() == &OperatorTable(vec![0, 1, 1, 1, 0, 0]));
    verdict(ok && has_sign, format!("{} targets (S3 sign retraction included: {has_sign}); {detail}", targets.len()))
}

fn criterion_7() -> Verdict {
    let z2 = search_averaging_ops(&FiniteGroup::cyclic(2), false).expect("within cap");
    let z2_ok = z2 == vec![OperatorTable(vec![0, 0]), OperatorTable(vec![0, 1]), OperatorTable(vec![1, 0])];
    let carriers: Vec<FiniteGroup> =
        (1..=6).map(FiniteGroup::cyclic).chain([FiniteGroup::klein(), FiniteGroup::symmetric3()]).collect();
    let (mut handles, mut pointed, mut problems) = (0, 0, Vec::new());
    let mut sign_seen = false;
    for g in carriers {
        for op in search_averaging_ops(&g, false).expect("within cap") {
            let h = FiniteAveragingGroup::new(g.clone(), op.clone()).expect("search output validates");
            handles += 1;
            pointed += usize::from(h.is_pointed());
            sign_seen |= g.order() == 6 && !g.is_abelian() && op == OperatorTable(vec![0, 1, 1, 1, 0, 0]);
            let d = check_disemigroup(&h);
            let rack = check_rack(&h).map(|r| r.is_rack());
            let consequences = match check_pointed_consequences(&h) {
                PointedReport::NotPointed => !h.is_pointed(),
                r => h.is_pointed() && r.all_hold(),
            };
            let ok = d.is_disemigroup()
                && d.is_dimonoid() == h.is_pointed()
                && rack == h.is_pointed().then_some(true)
                && consequences;
            if !ok {
                problems.push(format!("order {} op {:?}", g.order(), op.0));
            }
        }
    }
    let mut detail = format!(
        "Z2 search {:?}; {handles} handles of order <= 6, {pointed} pointed, S3 sign retraction found: {sign_seen}",
        z2.iter().map(|o| o.0.clone()).collect::<Vec<_>>()
    );
    if let Some(p) = problems.first() {
        detail += &format!("; {} handles fail, first {p}", problems.len());
    }
    verdict(z2_ok && sign_seen && problems.is_empty(), detail)
}

fn criterion_8() -> Verdict {
    let start = Instant::now();
    let carriers = [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4), FiniteGroup::klein()];
    let (mut maps, mut averaging, mut problems) = (0, 0, Vec::new());
    for g in &carriers {
        let n = g.order();
        for code in 0..n.pow(n as u32) {
            let op = OperatorTable((0..n).map(|i| code / n.pow(i as u32) % n).collect());
            maps += 1;
            match check_hopf_equivalence(g, &op, code as u64) {
                Ok(v) => averaging += usize::from(v.group),
                Err(d) => problems.push(format!("order {n} map {:?}: {}", op.0, d.0)),
            }
            if let Err(e) = check_coalgebra_map(g, &linear_extend(&op), code as u64) {
                problems.push(format!("order {n} map {:?} is not a coalgebra map: {e}", op.0));
            }
        }
    }
    let antipode = [FiniteGroup::cyclic(2), FiniteGroup::klein()].map(|g| check_antipode_averaging(&g, 0));
    let antipode_ok = antipode.iter().all(|a| *a == AntipodeVerdict::Verified);
    let elapsed = start.elapsed();
    let mut detail = format!(
        "{maps} maps, {averaging} averaging, antipode on Z2 and Z2xZ2 verified: {antipode_ok}; {:.2}s",
        elapsed.as_secs_f64()
    );
    if let Some(p) = problems.first() {
        detail += &format!("; {p}");
    }
    verdict(
        maps == 4 + 27 + 256 + 256 && problems.is_empty() && antipode_ok && elapsed < Duration::from_secs(60),
        detail,
    )
}

fn projection(k: usize) -> Matrix {
    let rows = (0..2).map(|i| (0..2).map(|j| Rational::from_integer(i128::from(i == k && j == k))).collect()).collect();
    Matrix::from_rows(rows).expect("square")
}

fn criterion_9() -> Verdict {
    let l = LieAlgebra::solvable2();
    let e1 = check_averaging_lie(&l, &projection(0)).is_ok() && check_leibniz(&l, &projection(0)).is_ok();
    let e2 = check_averaging_lie(&l, &projection(1));
    let e2_named = matches!(e2, Err(LieFailure::BasisPair { .. }));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut abelian_ok = 0;
    for _ in 0..100 {
        let d = rng.gen_range(1..=4);
        let rows = (0..d)
            .map(|_| (0..d).map(|_| Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect())
            .collect();
        let m = Matrix::from_rows(rows).expect("square");
        let a = LieAlgebra::abelian(d);
        abelian_ok += usize::from(check_averaging_lie(&a, &m).is_ok() && check_leibniz(&a, &m).is_ok());
    }
    let e2_text = match &e2 {
        Err(e) => e.to_string(),
        Ok(()) => "accepted".to_string(),
    };
    verdict(
        e1 && e2_named && abelian_ok == 100,
        format!("e1-projection ok: {e1}; e2-projection: {e2_text}; abelian {abelian_ok}/100"),
    )
}

/// Both recursion mutations must make the worked examples or the oracle
/// suite fail.
fn criterion_10() -> Verdict {
    let mut parts = Vec::new();
    let mut all_caught = true;
    for m in [Mutation::MergeExponent, Mutation::LiteralOuterBrackets] {
        let (hits, _, _) = run_examples(&FreeAveragingGroup::with_mutation(m));
        let examples_fail = hits < EXAMPLES.len();
        let oracle =
            suites::run(&SuiteConfig { mutation: Some(m), ..SuiteConfig::standard(Suite::Oracle, TRIALS, SEED) });
        let caught = examples_fail || !oracle.ok();
        all_caught &= caught;
        let failed: Vec<&str> = oracle.laws.iter().filter(|l| !l.ok()).map(|l| l.law).collect();
        parts.push(format!(
            "{m}: examples {hits}/{}, oracle failures [{}]{}",
            EXAMPLES.len(),
            failed.join("; "),
            if caught { "" } else { " NOT CAUGHT" }
        ));
    }
    verdict(all_caught, parts.join("; "))
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("worked examples", criterion_1),
        ("group laws", criterion_2),
        ("averaging and derived laws", criterion_3),
        ("closure", criterion_4),
        ("oracle equivalence", criterion_5),
        ("homomorphisms", criterion_6),
        ("structure theory", criterion_7),
        ("Hopf equivalence", criterion_8),
        ("Lie layer", criterion_9),
        ("mutation sensitivity", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        failed += usize::from(!v.pass);
        println!("criterion {:>2} {:<28} {}  {}", i + 1, name, if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
