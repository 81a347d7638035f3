use std::collections::BTreeSet;

use proptest::prelude::*;
use twisted_bruhat::biclosed::all_p_data;
use twisted_bruhat::coxeter::{CoxeterGroup, CoxeterMatrix};
use twisted_bruhat::lp::{cone_member_int, to_q, verify};
use twisted_bruhat::poset::{parse_dot, parse_jsonl};
use twisted_bruhat::topes::{tope_leq, Hemispace};
use twisted_bruhat::{alcove, cli, AffineElement, AffineRoot, AffineWeyl, BiclosedSet, GradedPoset, TwistedOrder, TypeLabel};

fn any_type() -> impl Strategy<Value = TypeLabel> {
    prop::sample::select(TypeLabel::ALL.to_vec())
}

fn raw_word(max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..8, 0..=max_len)
}

fn element(g: &AffineWeyl, raw: &[usize]) -> AffineElement {
    let word: Vec<usize> = raw.iter().map(|i| i % g.num_generators()).collect();
    g.from_word(&word).unwrap()
}

fn biclosed(g: &AffineWeyl, pick: usize, twist: &[usize]) -> BiclosedSet {
    let data = all_p_data(&g.datum);
    let (psi, d1, d2) = data[pick % data.len()];
    BiclosedSet::new(g, element(g, twist), psi, d1, d2).unwrap()
}

/// `N(s₁⋯s_k) = {α_{s₁}, s₁α_{s₂}, …}` straight from a word.
fn inversions_of_word(g: &AffineWeyl, word: &[usize]) -> BTreeSet<AffineRoot> {
    let mut prefix = g.identity();
    let mut out = BTreeSet::new();
    for &s in word {
        out.insert(g.act(&prefix, g.affine_simple_root(s)));
        prefix = g.mul(&prefix, &g.simple(s));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn reduced_words_and_inversions(t in any_type(), raw in raw_word(10)) {
        let g = AffineWeyl::new(t);
        let w = element(&g, &raw);
        let word = g.reduced_word(&w);
        prop_assert_eq!(g.from_word(&word).unwrap(), w);
        prop_assert_eq!(word.len(), g.length(&w));
        prop_assert_eq!(g.length(&g.inv(&w)), g.length(&w));
        let n = inversions_of_word(&g, &word);
        prop_assert_eq!(n.len(), word.len());
        prop_assert_eq!(&g.inversion_set(&w), &n);
        prop_assert!(g.mul(&w, &g.inv(&w)).is_identity());
    }

    #[test]
    fn product_inversion_formula(t in any_type(), a in raw_word(7), b in raw_word(7)) {
        let g = AffineWeyl::new(t);
        let (w, u) = (element(&g, &a), element(&g, &b));
        prop_assert_eq!(g.product_inversion(&w, &u), g.inversion_set(&g.mul(&w, &u)));
    }

    #[test]
    fn biclosed_profile_matches_formula(t in any_type(), pick in 0usize..64, twist in raw_word(6)) {
        let g = AffineWeyl::new(t);
        let b = biclosed(&g, pick, &twist);
        let d = &g.datum;
        let c = b.complement(&g);
        for beta in d.positive_roots().chain(d.positive_roots().map(|r| d.neg[r])) {
            for k in -6..=6 {
                let r = AffineRoot::new(beta, k);
                prop_assert_eq!(b.contains(&g, r), b.contains_by_formula(&g, r));
                if r.is_positive(d) {
                    prop_assert!(b.contains(&g, r) != c.contains(&g, r));
                }
            }
        }
        prop_assert!(Hemispace::new(b.clone()).partition_ok(&g, 4));
    }

    #[test]
    fn biclosed_text_round_trip(t in any_type(), pick in 0usize..64, twist in raw_word(6)) {
        let g = AffineWeyl::new(t);
        let b = biclosed(&g, pick, &twist);
        let s = b.format(&g);
        let back = BiclosedSet::parse(&g, &s).unwrap();
        prop_assert_eq!(back.format(&g), s);
        prop_assert!(back.equals(&g, &b));
    }

    #[test]
    fn twisted_length_brute_force(t in any_type(), pick in 0usize..64, twist in raw_word(5), raw in raw_word(8)) {
        let g = AffineWeyl::new(t);
        let b = biclosed(&g, pick, &twist);
        let ord = TwistedOrder::new(&g, b.clone());
        let w = element(&g, &raw);
        let count = |x: &AffineElement| g.inversion_set(x).into_iter().filter(|&r| b.contains_by_formula(&g, r)).count() as i64;
        prop_assert_eq!(ord.length_left(&w), g.length(&w) as i64 - 2 * count(&g.inv(&w)));
        prop_assert_eq!(ord.length_right(&w), g.length(&w) as i64 - 2 * count(&w));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn covers_are_reflections_one_step_apart(t in any_type(), pick in 0usize..64, twist in raw_word(4), raw in raw_word(6)) {
        let g = AffineWeyl::new(t);
        let ord = TwistedOrder::new(&g, biclosed(&g, pick, &twist));
        let w = element(&g, &raw);
        let lw = ord.length_left(&w);
        let c = ord.covers(&w).unwrap();
        for cv in &c.lower {
            prop_assert_eq!(ord.length_left(&cv.elem), lw - 1);
            prop_assert_eq!(g.mul(&g.reflection(cv.root), &w), cv.elem);
        }
        for cv in &c.upper {
            prop_assert_eq!(ord.length_left(&cv.elem), lw + 1);
            prop_assert_eq!(g.mul(&g.reflection(cv.root), &w), cv.elem);
            let back = ord.lower_covers(&cv.elem).unwrap();
            prop_assert!(back.iter().any(|x| x.elem == w));
        }
    }

    #[test]
    fn tope_order_on_finite_hemispaces(t in any_type(), a in raw_word(6), b in raw_word(6), c in raw_word(6), base in raw_word(4)) {
        let g = AffineWeyl::new(t);
        let h = |r: &[usize]| Hemispace::from_word(&g, element(&g, r), true);
        let (x, y, z, base) = (h(&a), h(&b), h(&c), h(&base));
        let leq = |p: &Hemispace, q: &Hemispace| tope_leq(&g, p, q, &base).unwrap();
        prop_assert!(leq(&x, &x));
        if leq(&x, &y) && leq(&y, &x) {
            prop_assert!(x.same_set(&g, &y));
        }
        if leq(&x, &y) && leq(&y, &z) {
            prop_assert!(leq(&x, &z));
        }
        // At base −Φ̂ the order is containment of inversion sets.
        let bottom = Hemispace::new(BiclosedSet::empty(&g));
        let nx = g.inversion_set(&element(&g, &a));
        let ny = g.inversion_set(&element(&g, &b));
        prop_assert_eq!(tope_leq(&g, &x, &y, &bottom).unwrap(), nx.is_subset(&ny));
        prop_assert!(x.negate(&g).negate(&g).same_set(&g, &x));
    }
}

proptest! {
    #[test]
    fn cone_certificates_verify(
        dim in 1usize..5,
        raw_gens in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..6),
        raw_target in prop::collection::vec(-4i64..=4, 4),
        mix in prop::collection::vec(0i64..3, 6),
        inside in any::<bool>(),
    ) {
        let gens: Vec<Vec<i64>> = raw_gens.iter().map(|v| v[..dim].to_vec()).collect();
        let target: Vec<i64> = if inside {
            (0..dim).map(|i| gens.iter().zip(&mix).map(|(g, c)| g[i] * c).sum()).collect()
        } else {
            raw_target[..dim].to_vec()
        };
        let ans = cone_member_int(&gens, &target);
        let q: Vec<_> = gens.iter().map(|v| to_q(v)).collect();
        prop_assert!(verify(&q, &to_q(&target), &ans));
        if inside {
            prop_assert!(ans.is_member());
        }
    }

    #[test]
    fn poset_exports_round_trip(grades in prop::collection::vec(0i64..4, 1..12), pairs in prop::collection::vec((0usize..12, 0usize..12, any::<bool>()), 0..20)) {
        let mut p: GradedPoset<usize> = GradedPoset::new();
        for (i, &gr) in grades.iter().enumerate() {
            p.add_node(i, format!("v{i}"), gr);
        }
        let n = grades.len();
        let mut seen = BTreeSet::new();
        for (a, b, weak) in pairs {
            let (a, b) = (a % n, b % n);
            if grades[b] == grades[a] + 1 && seen.insert((a, b)) {
                p.add_edge(a, b, "r".into(), weak);
            }
        }
        p.canonicalize();
        let q = parse_jsonl(&p.to_jsonl()).unwrap();
        prop_assert_eq!(q.to_jsonl(), p.to_jsonl());
        let (name, r) = parse_dot(&p.to_dot("p")).unwrap();
        prop_assert_eq!(name, "p");
        prop_assert_eq!(r.to_dot("p"), p.to_dot("p"));
        prop_assert!(p.grading_ok());
    }

    #[test]
    fn generic_coxeter_words(raw in prop::collection::vec(0usize..3, 0..12), universal in any::<bool>()) {
        let g = CoxeterGroup::new(if universal { CoxeterMatrix::universal(3) } else { CoxeterMatrix::two_three_infinity() });
        let w = g.from_word(&raw);
        let word = g.reduced_word(&w);
        prop_assert_eq!(g.from_word(&word), w.clone());
        prop_assert_eq!(g.length(&g.inv(&w)), word.len());
        prop_assert_eq!(g.inversion_roots(&word).len(), word.len());
        prop_assert!(word.len() <= raw.len() && (raw.len() - word.len()).is_multiple_of(2));
    }

    #[test]
    fn poincare_closed_form_recursion(d_max in 0usize..40) {
        let (r1, r2) = alcove::poincare_recursion_residual(&alcove::poincare_series(true, d_max), &alcove::poincare_series(false, d_max));
        prop_assert!(r1.iter().chain(&r2).all(|&x| x == 0));
    }

    #[test]
    fn config_round_trip(vals in prop::collection::btree_map(prop::sample::select(vec!["type", "elem", "radius", "seed", "budgets", "format"]), "[A-Za-z0-9.,{}]{1,8}", 0..6), pad in 0usize..3) {
        let text: String = vals.iter().map(|(k, v)| format!("{}{k} ={}{v}\n", " ".repeat(pad), " ".repeat(pad))).collect();
        let parsed = cli::parse_config(&text).unwrap();
        let want: Vec<(String, String)> = vals.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        prop_assert_eq!(parsed.into_iter().collect::<Vec<_>>(), want);
    }
}
