//! Engine checks for the alcove order on Ã2.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twisted_bruhat::alcove::*;

#[test]
fn eta_eta_prime_rho_are_poset_automorphisms() {
    let al = Alcove::new();
    let ball = al.g.ball(8);
    for kind in [Automorphism::Eta, Automorphism::EtaPrime, Automorphism::Rho] {
        assert!(al.automorphism_violations(kind, &ball).unwrap().is_empty(), "{}", kind.as_str());
    }
}

#[test]
fn sigma_alone_moves_b() {
    // σ sends α to β and β to δ−α−β, so it does not fix B; only the corrected maps do.
    let al = Alcove::new();
    let ball = al.g.ball(4);
    assert!(!al.automorphism_violations(Automorphism::Sigma, &ball).unwrap().is_empty());
}

#[test]
fn rho_shifts_coset_index_by_two() {
    let al = Alcove::new();
    let g = &al.g;
    for i in -8..=8i64 {
        for form in [UForm::UVU, UForm::VU, UForm::VUV, UForm::UV] {
            for k in 0..4 {
                let z = al.u_element(form, k);
                let w = g.mul(&g.inv(&al.prefix(i)), &z);
                let once = g.mul(&g.inv(&al.prefix(i + 2)), &z);
                let twice = g.mul(&g.inv(&al.prefix(i + 4)), &z);
                assert_eq!(al.apply(Automorphism::Rho, &w), once);
                assert_eq!(al.apply_pow(Automorphism::Rho, &w, 2), twice);
            }
        }
    }
}

#[test]
fn decomposition_is_unique() {
    let al = Alcove::new();
    for w in al.g.ball(6) {
        let idx = al.decomposition_indices(&w, 12);
        assert_eq!(idx.len(), 1, "{}", al.g.label(&w));
        assert_eq!(idx[0], al.dihedral_decompose(&w).i);
    }
}

#[test]
fn equal_parity_elements_are_related_by_rho_and_eta() {
    let al = Alcove::new();
    let ball = al.g.ball(6);
    for x in ball.iter().step_by(3) {
        for y in ball.iter().step_by(5) {
            if (al.length(x) - al.length(y)) % 2 == 0 {
                let (a, b) = al.transitivity_witness(x, y, 40).expect("witness");
                let img = al.apply_pow(Automorphism::Rho, &al.apply_pow(Automorphism::Eta, x, b), a);
                assert_eq!(img, *y);
            }
        }
    }
}

#[test]
fn poincare_counts_follow_the_twisted_grading() {
    let al = Alcove::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut reps = vec![al.g.identity(), al.g.simple(0)];
    reps.extend((0..4).map(|_| al.g.random_element(&mut rng, 7)));
    for w in reps {
        let r = al.poincare_report(&w, 8).unwrap();
        assert!(r.twisted_matches(), "{} {:?}", al.g.label(&w), r);
        assert!(!r.ordinary_matches());
    }
}

#[test]
fn figure_fragment_labels_and_grading() {
    let al = Alcove::new();
    let f = figure_fragment(&al).unwrap();
    assert_eq!(f.len(), 27);
    assert!(f.grading_ok());
    let e = f.find_label("e").unwrap();
    assert_eq!(f.nodes[e].grade, 0);
    let full = figure_hasse(&al, 6).unwrap();
    assert!(full.grading_ok());
    let labels: BTreeSet<&str> = full.nodes.iter().map(|n| n.label.as_str()).collect();
    assert!(FIGURE_LABELS.iter().all(|l| labels.contains(l)));
    // 2132 sits directly under the 32 region.
    let a = f.find_label("2132").unwrap();
    let b = f.find_label("32132").unwrap();
    assert!(f.edges.iter().any(|x| (x.lower, x.upper) == (b, a) || (x.lower, x.upper) == (a, b)));
}

#[test]
fn length3_exceptional_shapes_are_spherical() {
    let al = Alcove::new();
    let ord = al.order();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut seen = [0usize; 2];
    for _ in 0..5 {
        let x = al.g.random_element(&mut rng, 7);
        let mut tops = BTreeSet::new();
        for c in ord.upper_covers(&x).unwrap() {
            for c2 in ord.upper_covers(&c.elem).unwrap() {
                for c3 in ord.upper_covers(&c2.elem).unwrap() {
                    tops.insert(c3.elem);
                }
            }
        }
        for y in tops {
            let p = ord.interval(&x, &y).unwrap();
            let s = sphericity(&p).unwrap();
            let exceptional = al.is_exceptional_length3(&x, &y);
            assert_eq!(s == Sphericity::Spherical, exceptional, "{} {}", al.g.label(&x), al.g.label(&y));
            seen[exceptional as usize] += 1;
        }
    }
    assert!(seen[0] > 0);
}

#[test]
fn exceptional_length3_types_occur() {
    let al = Alcove::new();
    let g = &al.g;
    let ord = al.order();
    let types = [(SixClass::SbSaSbT, [0, 1, 0]), (SixClass::SbT, [2, 1, 2]), (SixClass::SaT, [0, 2, 0])];
    for (class, word) in types {
        let z = g.from_word(&word).unwrap();
        let mut found = 0;
        for c1 in -2..=2 {
            for c2 in -2..=2 {
                let x = al.class_element(class, [c1, c2]);
                let y = g.mul(&z, &x);
                if al.length(&y) - al.length(&x) == 3 {
                    let p = ord.interval(&x, &y).unwrap();
                    assert_eq!(sphericity(&p).unwrap(), Sphericity::Spherical);
                    found += 1;
                }
            }
        }
        assert!(found > 0, "{class:?}");
    }
}
