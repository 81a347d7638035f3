use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twisted_bruhat::biclosed::all_p_data;
use twisted_bruhat::topes::*;
use twisted_bruhat::{AffineRoot, AffineWeyl, BiclosedClass, BiclosedSet, Side, TwistedOrder, TypeLabel};

fn p_hemispaces(g: &AffineWeyl) -> Vec<Hemispace> {
    all_p_data(&g.datum).into_iter().map(|(psi, d1, d2)| Hemispace::new(BiclosedSet::new(g, g.identity(), psi, d1, d2).unwrap())).collect()
}

#[test]
fn hemispaces_partition_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for t in [TypeLabel::A2, TypeLabel::A3] {
        let g = AffineWeyl::new(t);
        for h in p_hemispaces(&g) {
            let w = g.random_element(&mut rng, 5);
            let hw = Hemispace::new(h.b.dot_action(&g, &w));
            assert!(h.partition_ok(&g, 8));
            assert!(hw.partition_ok(&g, 8));
            assert!(hw.negate(&g).partition_ok(&g, 8));
        }
    }
}

#[test]
fn finite_hemispace_is_minus_w_positive_system() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let g = AffineWeyl::new(TypeLabel::A2);
    let d = &g.datum;
    for _ in 0..20 {
        let w = g.random_element(&mut rng, 6);
        let h = Hemispace::from_word(&g, w, true);
        for r in all_roots_upto(d, 6) {
            // r ∈ −wΦ̂ ⟺ −w⁻¹r is positive.
            let pre = g.act(&g.inv(&w), r.neg(d));
            assert_eq!(h.contains(&g, r), pre.is_positive(d));
        }
    }
}

#[test]
fn convexity_dichotomy_on_a2() {
    let g = AffineWeyl::new(TypeLabel::A2);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut hs = p_hemispaces(&g);
    for _ in 0..6 {
        let w = g.random_element(&mut rng, 4);
        let h = hs[rng.gen_range(0..hs.len())].clone();
        hs.push(Hemispace::new(h.b.dot_action(&g, &w)));
    }
    for h in hs {
        assert_ne!(h.class(&g.datum), BiclosedClass::Mixed);
        let rep = check_convex_truncated(&g, &h, 6, 3);
        assert!(rep.violation.is_none(), "{}", h.b.format(&g));
    }
}

#[test]
fn mixed_hemispaces_on_a3_are_not_convex() {
    let g = AffineWeyl::new(TypeLabel::A3);
    let d = &g.datum;
    let mut mixed = 0;
    for h in p_hemispaces(&g) {
        if h.class(d) != BiclosedClass::Mixed {
            continue;
        }
        mixed += 1;
        let rep = check_convex_truncated(&g, &h, 6, 3);
        let v = rep.violation.expect("mixed hemispace has a certificate");
        assert!(v.generators.iter().all(|&r| h.contains(&g, r)));
        assert!(!h.contains(&g, v.target));
        assert!(cone_member(d, &v.generators, v.target).is_member());
    }
    assert!(mixed > 0);
}

#[test]
fn some_non_mixed_a3_hemispaces_are_convex() {
    let g = AffineWeyl::new(TypeLabel::A3);
    let d = &g.datum;
    let hs: Vec<Hemispace> = p_hemispaces(&g).into_iter().filter(|h| h.class(d) != BiclosedClass::Mixed).collect();
    for h in hs.iter().step_by(hs.len() / 6 + 1) {
        assert!(check_convex_truncated(&g, h, 4, 3).violation.is_none(), "{}", h.b.format(&g));
    }
}

#[test]
fn oriented_matroid_axioms_sampled() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for t in [TypeLabel::A2, TypeLabel::A3] {
        let g = AffineWeyl::new(t);
        let rep = om_axiom_check(&g, 300, 6, &mut rng);
        assert_eq!(rep.instances, 300);
        assert!(rep.failures.is_empty(), "{:?}", rep.failures);
    }
}

#[test]
fn radius_zero_block_is_the_center() {
    let g = AffineWeyl::new(TypeLabel::A2);
    let h = Hemispace::new(BiclosedSet::positive_hat(&g, 0));
    let blk = tope_block(&g, &h, &h, 0).unwrap();
    assert_eq!(blk.poset.len(), 1);
}

#[test]
fn bottom_of_the_finite_block() {
    let g = AffineWeyl::new(TypeLabel::A2);
    let h1 = Hemispace::new(BiclosedSet::empty(&g));
    let blk = tope_block(&g, &h1, &h1, 2).unwrap();
    let e = blk.poset.index_of(&g.identity()).unwrap();
    let ups: BTreeSet<String> = blk.poset.edges.iter().filter(|x| x.lower == e).map(|x| x.label.clone()).collect();
    assert_eq!(ups, ["a", "b", "-a-b+d"].iter().map(|s| s.to_string()).collect());
    assert!(blk.poset.grading_ok());
}

#[test]
fn finite_block_matches_twisted_weak_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let g = AffineWeyl::new(TypeLabel::A2);
    let center = Hemispace::new(BiclosedSet::empty(&g));
    for _ in 0..3 {
        let bases = p_hemispaces(&g);
        let base = Hemispace::new(bases[rng.gen_range(0..bases.len())].b.dot_action(&g, &g.random_element(&mut rng, 3)));
        let tw = TwistedOrder::new(&g, base.b.clone());
        let blk = tope_block(&g, &center, &base, 4).unwrap();
        for (w1, f1) in &blk.members {
            for (w2, f2) in &blk.members {
                assert_eq!(tope_leq(&g, f1, f2, &base).unwrap(), tw.weak_leq(w1, w2, Side::Right));
            }
        }
    }
}

#[test]
fn blocks_match_subgroup_weak_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for t in [TypeLabel::A2, TypeLabel::A3] {
        let g = AffineWeyl::new(t);
        let hs = p_hemispaces(&g);
        for _ in 0..6 {
            let c = &hs[rng.gen_range(0..hs.len())];
            let center = Hemispace::new(c.b.dot_action(&g, &g.random_element(&mut rng, 3)));
            let base = Hemispace::new(hs[rng.gen_range(0..hs.len())].b.dot_action(&g, &g.random_element(&mut rng, 3)));
            let radius = if t == TypeLabel::A2 { 4 } else { 3 };
            let blk = tope_block(&g, &center, &base, radius).unwrap();
            assert!(blk.poset.grading_ok());
            for (w1, f1) in &blk.members {
                for (w2, f2) in &blk.members {
                    assert_eq!(
                        tope_leq(&g, f1, f2, &base).unwrap(),
                        block_order_oracle(&g, &center, &blk.group, w1, w2, &base),
                    );
                }
            }
        }
    }
}

#[test]
fn singleton_blocks() {
    let g = AffineWeyl::new(TypeLabel::A2);
    for psi in 0..6 {
        let u = Hemispace::new(BiclosedSet::positive_hat(&g, psi));
        assert_eq!(tope_block(&g, &u, &u, 3).unwrap().members.len(), 1);
    }
}

#[test]
fn finite_intervals_are_lattices() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let g = AffineWeyl::new(TypeLabel::A2);
    let hs = p_hemispaces(&g);
    let h1 = Hemispace::new(BiclosedSet::empty(&g));
    let trivial = interval_lattice_check(&g, &h1, &h1, &h1, 10).unwrap();
    assert_eq!(trivial.size, 1);
    let top = random_upper(&g, &h1, &h1, 4, &mut rng).unwrap();
    let rep = interval_lattice_check(&g, &h1, &top, &h1, 1000).unwrap();
    assert_eq!(rep.height, 4);
    assert!(rep.is_lattice());
    for _ in 0..20 {
        let c = &hs[rng.gen_range(0..hs.len())];
        let lo = Hemispace::new(c.b.dot_action(&g, &g.random_element(&mut rng, 4)));
        let base = Hemispace::new(hs[rng.gen_range(0..hs.len())].b.dot_action(&g, &g.random_element(&mut rng, 3)));
        let hi = random_upper(&g, &lo, &base, 6, &mut rng).unwrap();
        let rep = interval_lattice_check(&g, &lo, &hi, &base, 5000).unwrap();
        assert!(rep.height <= 6);
        assert!(rep.is_lattice(), "{rep:?}");
    }
}

#[test]
fn interval_members_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let g = AffineWeyl::new(TypeLabel::A2);
    let h1 = Hemispace::new(BiclosedSet::empty(&g));
    let base = Hemispace::new(BiclosedSet::positive_hat(&g, 0));
    for _ in 0..5 {
        let hi = random_upper(&g, &h1, &base, 4, &mut rng).unwrap();
        let rep = interval_lattice_check(&g, &h1, &hi, &base, 1000).unwrap();
        let brute = g
            .ball(12)
            .into_iter()
            .map(|w| Hemispace::from_word(&g, w, true))
            .filter(|f| tope_leq(&g, &h1, f, &base).unwrap() && tope_leq(&g, f, &hi, &base).unwrap())
            .count();
        assert_eq!(rep.size, brute);
    }
}

#[test]
fn incomparable_and_cross_block_intervals_error() {
    let g = AffineWeyl::new(TypeLabel::A2);
    let h1 = Hemispace::new(BiclosedSet::empty(&g));
    let u = Hemispace::new(BiclosedSet::positive_hat(&g, 0));
    assert!(interval_lattice_check(&g, &h1, &u, &h1, 10).is_err());
    let a = Hemispace::from_word(&g, g.parse_element("1").unwrap(), true);
    let b = Hemispace::from_word(&g, g.parse_element("2").unwrap(), true);
    assert!(interval_lattice_check(&g, &a, &b, &h1, 10).is_err());
}

#[test]
fn figure_sets_match_with_typo_corrections() {
    let fig = figure_topes();
    let g = &fig.g;
    let d = &g.datum;
    for (label, _, printed, corrected) in FIGURE_H {
        let got = fig.find(label).unwrap().hemispace.b.materialize(g).unwrap();
        assert_eq!(got, parse_root_set(d, corrected).unwrap(), "{label}");
        if printed != corrected {
            assert!(parse_root_set(d, printed).map(|p| p != got).unwrap_or(true));
        }
    }
    assert!(fig.find("H1").unwrap().hemispace.same_set(g, &Hemispace::new(BiclosedSet::empty(g))));
    let t1 = &fig.find("T1").unwrap().hemispace;
    for r in all_roots_upto(d, 6) {
        let positive = r.is_positive(d);
        let name = d.root_name(r.base);
        let over = ["a", "a+b"].contains(&name.as_str());
        assert_eq!(t1.contains(g, r), if positive { over } else { !["-a", "-a-b"].contains(&name.as_str()) });
    }
    let extras = [("1", "{G}"), ("2", "{-G+d}"), ("3", "{G,G+d}"), ("4", "{-G+d,-G+2d}")];
    for (t, _, gamma) in FIGURE_T {
        let base = &fig.find(t).unwrap().hemispace;
        for (suffix, pattern) in extras {
            let expect = pattern.replace("-G", &neg_name(gamma)).replace('G', gamma);
            let got = fig.find(&format!("{t}{suffix}")).unwrap().hemispace.difference(g, base).unwrap();
            assert_eq!(got, parse_root_set(d, &expect).unwrap(), "{t}{suffix}");
        }
    }
}

fn neg_name(gamma: &str) -> String {
    match gamma {
        "a" => "-a".into(),
        "b" => "-b".into(),
        _ => "-a-b".into(),
    }
}

#[test]
fn figure_edges_and_grading() {
    let fig = figure_topes();
    assert_eq!(fig.edges(), figure_edges());
    assert!(fig.poset.grading_ok());
    for t in ["U1", "U2", "U3", "U4", "U5", "U6"] {
        let i = fig.poset.find_label(t).unwrap();
        assert!(fig.poset.edges.iter().all(|e| e.lower != i && e.upper != i));
    }
    let _ = AffineRoot::new(0, 0);
}
