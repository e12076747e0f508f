//! Rewriting to normal form in SUq(2), the truncated basis and the
//! critical-pair check.

use qfibre::dsl::parse_element;
use qfibre::ncalg::confluence_check;
use qfibre::presets;

fn main() -> qfibre::Result<()> {
    let model = presets::load("suq2")?;
    let p = model.algebra("SUq2")?;
    for src in ["d*a", "a*d - q*b*c", "c*b*a", "d^2*a^2"] {
        let x = p.reduce(&parse_element(src, p.gens())?)?;
        println!("{src:>12}  ->  {}", p.render(&x));
    }
    for k in 0..=3 {
        println!("degree {k}: {} normal words", p.basis_of_degree(k).len());
    }
    let c = confluence_check(&p, 6)?;
    println!(
        "{} critical pairs, {} failures",
        c.pairs_checked,
        c.failures.len()
    );
    Ok(())
}
