//! The labelled Ã₂ tope poset, written as DOT.

use twisted_bruhat::topes::{figure_edges, figure_topes};

fn main() {
    let fig = figure_topes();
    let d = &fig.g.datum;
    for t in fig.items.iter().filter(|t| t.label.starts_with('H')) {
        let set = t.hemispace.b.materialize(&fig.g).unwrap_or_default();
        let names: Vec<String> = set.iter().map(|r| r.name(d)).collect();
        println!("{:<4} grade {:>2}  B = {{{}}}", t.label, t.grade, names.join(", "));
    }
    println!("computed covers equal the drawn ones: {}", fig.edges() == figure_edges());
    let mut p = fig.poset.clone();
    p.canonicalize();
    print!("{}", p.to_dot("topes"));
}
