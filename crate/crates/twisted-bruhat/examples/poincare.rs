//! Downset counts by corank against the closed-form Poincaré series.

use twisted_bruhat::alcove::{poincare_recursion_residual, poincare_series, Alcove};

fn main() -> Result<(), twisted_bruhat::Error> {
    let al = Alcove::new();
    println!("even closed form: {:?}", poincare_series(true, 8));
    println!("odd closed form:  {:?}", poincare_series(false, 8));
    for word in ["e", "1", "1.2", "3.1.2", "1.2.3.1"] {
        let w = al.g.parse_element(word)?;
        let r = al.poincare_report(&w, 8)?;
        println!("{word:<8} l = {} counts {:?} match: {}", al.g.length(&w), r.twisted, r.twisted_matches());
    }
    let (r1, r2) = poincare_recursion_residual(&poincare_series(true, 10), &poincare_series(false, 10));
    println!("recursion residuals: {r1:?} {r2:?}");
    Ok(())
}
