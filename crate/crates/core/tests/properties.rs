use freeavg_core::avgroup::{extend_hom, FreeAveragingGroup, GenParams, WordSampler};
use freeavg_core::normalform::{Oracle, RewriteTrace};
use freeavg_core::structures::{search_averaging_ops, FiniteAveragingGroup, FiniteGroup, OperatorTable};
use freeavg_core::words::{Generator, OperatedGroup, Word};
use freeavg_core::{diamond, inverse, is_normal, op_apply, op_iter, oracle_normalize, NormalWord};
use proptest::prelude::*;

fn sampler(seed: u64, depth: usize, breadth: usize, alphabet: &[&str]) -> WordSampler {
    let alphabet = alphabet.iter().map(|n| Generator::new(n).unwrap()).collect();
    WordSampler::new(&GenParams { max_depth: depth, max_breadth: breadth, alphabet, seed })
}

fn standard(seed: u64) -> WordSampler {
    WordSampler::new(&GenParams::standard(seed))
}

/// Every averaging operator on ℤ₂ and ℤ₃, plus a few on S₃.
fn small_targets() -> Vec<FiniteAveragingGroup> {
    let mut out = Vec::new();
    for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)] {
        for op in search_averaging_ops(&g, false).unwrap() {
            out.push(FiniteAveragingGroup::new(g.clone(), op).unwrap());
        }
    }
    let s3 = FiniteGroup::symmetric3();
    for op in [OperatorTable(vec![0, 1, 1, 1, 0, 0]), OperatorTable::identity(6), OperatorTable::constant(6, 0)] {
        out.push(FiniteAveragingGroup::new(s3.clone(), op).unwrap());
    }
    out
}

fn assignments(order: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..order).flat_map(move |a| (0..order).map(move |b| (a, b)))
}

fn eval_xy(h: &FiniteAveragingGroup, w: &Word, x: usize, y: usize) -> usize {
    w.eval(h, &|g: &Generator| match g.as_str() {
        "x" => Some(x),
        "y" => Some(y),
        _ => None,
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn render_then_parse_is_identity(seed in any::<u64>()) {
        let w = standard(seed).raw_word();
        prop_assert_eq!(Word::parse(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn oracle_output_is_normal_and_stable(seed in any::<u64>()) {
        let raw = standard(seed).raw_word();
        let out = Oracle::default().with_trace().normalize(&raw).unwrap();
        prop_assert!(is_normal(out.word.as_word()));
        prop_assert_eq!(oracle_normalize(out.word.as_word()).unwrap(), out.word.clone());
        let trace = out.trace.unwrap();
        prop_assert_eq!(trace.replay(&raw).unwrap(), out.word.into_word());
        prop_assert_eq!(RewriteTrace::parse(&trace.to_string()).unwrap(), trace);
    }

    #[test]
    fn rewrite_steps_preserve_every_evaluation(seed in any::<u64>()) {
        let raw = sampler(seed, 2, 3, &["x", "y"]).raw_word();
        let trace = Oracle::default().with_trace().normalize(&raw).unwrap().trace.unwrap();
        for h in small_targets() {
            for (x, y) in assignments(h.group().order()) {
                for step in &trace.steps {
                    prop_assert_eq!(eval_xy(&h, &step.before, x, y), eval_xy(&h, &step.after, x, y), "{}", step);
                }
            }
        }
    }

    #[test]
    fn product_is_normal_and_matches_oracle(seed in any::<u64>()) {
        let mut s = standard(seed);
        let (u, v) = (s.normal_word(), s.normal_word());
        let d = diamond(&u, &v);
        prop_assert!(is_normal(d.as_word()));
        prop_assert_eq!(oracle_normalize(&u.as_word().reduce_concat(v.as_word())).unwrap(), d);
    }

    #[test]
    fn operator_is_normal_and_matches_oracle(seed in any::<u64>()) {
        let u = standard(seed).normal_word();
        let a = op_apply(&u);
        prop_assert!(is_normal(a.as_word()));
        prop_assert_eq!(oracle_normalize(&u.as_word().bracket_literal()).unwrap(), a.clone());
        prop_assert_eq!(op_iter(&u, 1), a.clone());
        prop_assert_eq!(op_iter(&u, 3), op_apply(&op_apply(&a)));
    }

    #[test]
    fn identity_and_inverses(seed in any::<u64>()) {
        let u = standard(seed).normal_word();
        let one = NormalWord::identity();
        prop_assert_eq!(diamond(&u, &one), u.clone());
        prop_assert_eq!(diamond(&one, &u), u.clone());
        prop_assert!(diamond(&u, &inverse(&u)).is_identity());
        prop_assert!(diamond(&inverse(&u), &u).is_identity());
        prop_assert!(is_normal(inverse(&u).as_word()));
    }

    #[test]
    fn evaluation_is_an_averaging_homomorphism(seed in any::<u64>()) {
        let mut s = sampler(seed, 3, 4, &["x", "y"]);
        let (u, v) = (s.normal_word(), s.normal_word());
        for h in small_targets() {
            for (x, y) in assignments(h.group().order()) {
                let f = extend_hom(&h, move |g: &Generator| match g.as_str() {
                    "x" => Some(x),
                    _ => Some(y),
                });
                let (fu, fv) = (f.apply(&u).unwrap(), f.apply(&v).unwrap());
                prop_assert_eq!(f.apply(&diamond(&u, &v)).unwrap(), h.mul(&fu, &fv));
                prop_assert_eq!(f.apply(&op_apply(&u)).unwrap(), h.op(&fu));
            }
        }
    }

    #[test]
    fn self_target_evaluation_is_identity(seed in any::<u64>()) {
        let u = standard(seed).normal_word();
        let free = FreeAveragingGroup::new();
        let f = extend_hom(&free, |g: &Generator| Some(NormalWord::new(Word::generator(g.as_str()).unwrap()).unwrap()));
        prop_assert_eq!(f.apply(&u).unwrap(), u);
    }

    #[test]
    fn sampler_is_deterministic(seed in any::<u64>()) {
        let (mut a, mut b) = (standard(seed), standard(seed));
        for _ in 0..8 {
            prop_assert_eq!(a.normal_word(), b.normal_word());
            prop_assert_eq!(a.raw_word(), b.raw_word());
        }
    }
}

#[test]
fn grown_and_normalized_corpora_are_normal() {
    let mut s = standard(2024);
    for _ in 0..1000 {
        let w = s.normal_word();
        assert!(w.depth() <= 3 && w.breadth() <= 4);
        assert!(is_normal(s.normalized_raw_word().as_word()));
    }
    let mut shallow = sampler(9, 0, 3, &["x", "y"]);
    for _ in 0..100 {
        assert_eq!(shallow.normal_word().op_degree(), 0);
    }
}

#[test]
fn related_words_agree_under_every_target() {
    let lhs = oracle_normalize(&Word::parse("[x][y]").unwrap()).unwrap();
    let rhs: NormalWord = "[x [y]]".parse().unwrap();
    assert_eq!(lhs, rhs);
    for h in small_targets() {
        for (x, y) in assignments(h.group().order()) {
            let raw = Word::parse("[x][y]").unwrap();
            assert_eq!(eval_xy(&h, &raw, x, y), eval_xy(&h, rhs.as_word(), x, y));
        }
    }
}
