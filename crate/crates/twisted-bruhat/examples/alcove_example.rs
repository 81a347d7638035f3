//! The worked Ã₂ example: six classes, length changes along rays, and the Hasse diagram.

use twisted_bruhat::alcove::{self, predicted_delta, Alcove, Gamma, NFormula, SixClass};

fn main() -> Result<(), twisted_bruhat::Error> {
    let al = Alcove::new();
    let g = &al.g;
    println!("B = {}", al.b.format(g));
    for class in SixClass::ALL {
        let w = al.class_element(class, [1, -2]);
        let row: Vec<String> = Gamma::ALL
            .iter()
            .map(|&gm| {
                let pred: Vec<i64> = (-2..=2).map(|k| predicted_delta(class, gm, k)).collect();
                let eng: Vec<i64> = (-2..=2).map(|k| al.engine_delta(&w, gm, k)).collect();
                assert_eq!(pred, eng);
                format!("{}:{pred:?}", gm.name())
            })
            .collect();
        println!("{:<8} w = {:<18} {}", class.as_str(), g.format(&w), row.join(" "));
    }

    let mut agree = 0;
    for f in NFormula::ALL {
        for k in -3..=3 {
            agree += al.check_formula(f, 1, 2, k).unwrap_or(true) as usize;
        }
    }
    println!("closed forms for N(.) agree on {agree} of {} instances", NFormula::ALL.len() * 7);

    let frag = alcove::figure_fragment(&al)?;
    println!("figure fragment: {} elements, {} covers", frag.len(), frag.edges.len());
    let ord = al.order();
    let (x, y) = (g.identity(), g.parse_element("2.1.3.1")?);
    println!("[e, 2.1.3.1] has {} elements: {:?}", ord.interval(&x, &y)?.len(), al.length2_form(&x, &y));
    // An exceptional length-3 interval: y = s_3 s_2 s_3 x with x of class sbT.
    let z = g.parse_element("3.2.3")?;
    for c in (-2..=2).flat_map(|a| (-2..=2).map(move |b| [a, b])) {
        let x = al.class_element(SixClass::SbT, c);
        let y = g.mul(&z, &x);
        if al.length(&y) - al.length(&x) == 3 {
            let p = ord.interval(&x, &y)?;
            println!("[{}, {}]: {} elements, {:?}", g.format(&x), g.format(&y), p.len(), alcove::sphericity(&p)?);
            break;
        }
    }
    print!("{}", frag.to_dot("alcove"));
    Ok(())
}
