//! Twisted weak order `≤′_B`: infinite level sets and an infinite antichain.

use twisted_bruhat::{AffineWeyl, BiclosedSet, Side, TwistedOrder, TypeLabel};

fn main() -> Result<(), twisted_bruhat::Error> {
    let g = AffineWeyl::new(TypeLabel::A2);
    let ord = TwistedOrder::new(&g, BiclosedSet::parse(&g, "twist:e psi:e d1:{1} d2:{}")?);
    println!("B = {} ({:?})", ord.b.format(&g), ord.b.classify(&g.datum));
    for k in -2..=2 {
        let sizes: Vec<usize> = [4, 8, 12, 16].iter().map(|&r| ord.level_set_sample(k, r).len()).collect();
        println!("  l'_B = {k:>2}: sizes in balls of radius 4, 8, 12, 16: {sizes:?}");
    }
    println!("no element of the radius-6 ball is a local extremum: checked {}", ord.no_local_extremum_check(6).checked);

    let u = g.parse_element("3.1")?;
    let v = g.parse_element("3.1.2.3")?;
    if ord.weak_leq(&u, &v, Side::Right) {
        let chain: Vec<String> = ord.weak_chain(&u, &v)?.iter().map(|w| g.format(w)).collect();
        println!("weak chain: {}", chain.join(" < "));
    }

    let g3 = AffineWeyl::new(TypeLabel::A3);
    let ord3 = TwistedOrder::new(&g3, BiclosedSet::parse(&g3, "twist:e psi:e d1:{2} d2:{}")?);
    let anti = ord3.antichain_at_level(0, 20, 14)?;
    let words: Vec<String> = anti.iter().map(|w| g3.format(w)).collect();
    println!("A3 antichain at l'_B = 0: {}", words.join(", "));
    Ok(())
}
