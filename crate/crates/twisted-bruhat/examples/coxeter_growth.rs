//! The (2,3,∞) Coxeter group: reflection subgroup inversions and interval growth.

use twisted_bruhat::affine_weyl::format_word;
use twisted_bruhat::coxeter::{RankThreeExample, TwistedCoxeter};

fn main() -> Result<(), twisted_bruhat::Error> {
    let s = RankThreeExample::new();
    for i in 0..3 {
        let r = s.r(i);
        let n: Vec<String> = s.g.n_tilde(&r, 64)?.iter().map(|t| format_word(&t.word, "")).collect();
        println!("N~(r{}) = {{{}}}", i + 1, n.join(", "));
    }
    println!("x = r1 r2 r3 = {}", format_word(&s.target_word(), ""));
    let tw = TwistedCoxeter::new(&s.g, s.a(64));
    for row in tw.interval_growth(&s.target(), &[9, 11, 13, 15]) {
        println!("budget {:>2}: {:>3} elements, new: {}", row.budget, row.count, row.new_elements.join(" "));
    }
    Ok(())
}
