//! Biclosed sets of positive affine roots: parsing, classes, and the dot action.

use twisted_bruhat::finite::count_p_triples;
use twisted_bruhat::{AffineRoot, AffineWeyl, BiclosedSet, TypeLabel};

fn main() -> Result<(), twisted_bruhat::Error> {
    for t in TypeLabel::ALL {
        let g = AffineWeyl::new(t);
        println!("{t}: {} sets P(psi, d1, d2)", count_p_triples(&g.datum));
    }

    let g = AffineWeyl::new(TypeLabel::A2);
    let d = &g.datum;
    for spec in ["twist:e psi:e d1:{} d2:{}", "twist:1.2 psi:e d1:{1,2} d2:{}", "twist:3 psi:e d1:{1} d2:{}", "twist:e psi:2 d1:{} d2:{1,2}"] {
        let b = BiclosedSet::parse(&g, spec)?;
        let low: Vec<String> = b.members_upto(&g, 1).iter().map(|r| r.name(d)).collect();
        println!("{:<36} {:<24} levels <= 1: {}", b.format(&g), format!("{:?}", b.classify(d)), low.join(" "));
    }

    // u·B = N(u) Δ u(B) and the complement swap of d1, d2.
    let b = BiclosedSet::parse(&g, "twist:e psi:e d1:{1} d2:{}")?;
    let u = g.parse_element("3.1")?;
    let ub = b.dot_action(&g, &u);
    println!("u = {}, u.B = {}", g.format(&u), ub.format(&g));
    println!("complement of B = {}", b.complement(&g).format(&g));
    let r = AffineRoot::parse(d, "a+b-d")?;
    println!("{} in u.B: {} (profile) {} (formula)", r.name(d), ub.contains(&g, r), ub.contains_by_formula(&g, r));
    Ok(())
}
