//! Blocks of the tope poset as orbits of a reflection subgroup, and lattice intervals.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twisted_bruhat::topes::{interval_lattice_check, random_upper, tope_block, Hemispace};
use twisted_bruhat::{AffineWeyl, BiclosedSet, TypeLabel};

fn main() -> Result<(), twisted_bruhat::Error> {
    let g = AffineWeyl::new(TypeLabel::A2);
    let d = &g.datum;
    let base = Hemispace::new(BiclosedSet::empty(&g));
    for spec in ["twist:e psi:e d1:{1,2} d2:{}", "twist:e psi:e d1:{1} d2:{}", "twist:e psi:e d1:{} d2:{}"] {
        let center = Hemispace::new(BiclosedSet::parse(&g, spec)?);
        let block = tope_block(&g, &center, &base, 4)?;
        let simples: Vec<String> = block.group.simple_roots.iter().map(|r| r.name(d)).collect();
        println!(
            "{spec}: W' simple roots {{{}}}, {} hemispaces within radius 4, {} covers",
            simples.join(", "),
            block.members.len(),
            block.poset.edges.len()
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let lo = Hemispace::new(BiclosedSet::parse(&g, "twist:e psi:e d1:{1} d2:{}")?);
    for steps in [2, 4, 6] {
        let hi = random_upper(&g, &lo, &base, steps, &mut rng)?;
        let rep = interval_lattice_check(&g, &lo, &hi, &base, 200)?;
        println!("interval of height {}: {} elements, lattice: {}", rep.height, rep.size, rep.is_lattice());
    }
    Ok(())
}
