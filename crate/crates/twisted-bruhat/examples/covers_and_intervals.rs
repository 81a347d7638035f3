//! Covers and intervals in the twisted strong order `≤_B` on Ã₂.

use twisted_bruhat::{AffineWeyl, BiclosedSet, TwistedOrder, TypeLabel};

fn main() -> Result<(), twisted_bruhat::Error> {
    let g = AffineWeyl::new(TypeLabel::A2);
    let d = &g.datum;
    let ord = TwistedOrder::new(&g, BiclosedSet::parse(&g, "twist:e psi:e d1:{} d2:{}")?);

    let e = g.identity();
    let c = ord.covers(&e)?;
    println!("l_B(e) = {}", ord.length_left(&e));
    for cv in &c.lower {
        println!("  lower  s_{{{}}} e = {}", cv.root.name(d), g.format(&cv.elem));
    }
    for cv in &c.upper {
        println!("  upper  s_{{{}}} e = {}", cv.root.name(d), g.format(&cv.elem));
    }
    for cert in &c.certificates {
        println!("  ray {} dir {:+}: window {:?}, drift {}", d.root_name(cert.base_root), cert.direction, cert.window, cert.drift);
    }

    let x = g.parse_element("2")?;
    let y = g.parse_element("2.1.3")?;
    let p = ord.interval(&x, &y)?;
    println!("[{}, {}]: {} elements, {} covers", g.format(&x), g.format(&y), p.len(), p.edges.len());
    print!("{}", p.to_dot("interval"));

    let down = ord.downset_corank(&y, 3)?;
    let sizes: Vec<usize> = down.layers.iter().map(|l| l.len()).collect();
    println!("downset of {} by corank: {sizes:?} ({} ray certificates)", g.format(&y), down.certificates);
    Ok(())
}
