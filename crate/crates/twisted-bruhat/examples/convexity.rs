//! Hemispaces `H_B = B ⊎ −(Φ̂ \ B)`: only the Mixed ones fail to be convex.

use twisted_bruhat::biclosed::all_p_data;
use twisted_bruhat::topes::{check_convex_truncated, Hemispace};
use twisted_bruhat::{AffineWeyl, BiclosedSet, TypeLabel};

fn main() {
    let g = AffineWeyl::new(TypeLabel::A3);
    let d = &g.datum;
    let mut seen = std::collections::BTreeSet::new();
    for (psi, d1, d2) in all_p_data(d) {
        let h = Hemispace::new(BiclosedSet::new(&g, g.identity(), psi, d1, d2).unwrap());
        let class = h.class(d);
        if psi != 0 || !seen.insert((class, d1.count_ones(), d2.count_ones())) {
            continue;
        }
        let rep = check_convex_truncated(&g, &h, 4, 3);
        let verdict = match &rep.violation {
            None => format!("no violation in {} subsets", rep.subsets_checked),
            Some(v) => {
                let terms: Vec<String> = v.generators.iter().zip(&v.coeffs).map(|(r, c)| format!("{c}({})", r.name(d))).collect();
                format!("{} = {} lies outside H", terms.join(" + "), v.target.name(d))
            }
        };
        println!("{:<48} {:<24} {verdict}", h.b.format(&g), format!("{class:?}"));
    }
}
