//! Hopf axioms of SUq(2) and of k[Z, Z^-1] on truncated bases.

use qfibre::dsl::parse_element;
use qfibre::presets;

fn main() -> qfibre::Result<()> {
    let model = presets::load("suq2")?;
    for name in ["SUq2", "H"] {
        print!("{}", model.hopf(name)?.check_hopf_axioms(3)?.render_text());
    }
    let h = model.hopf("SUq2")?;
    let p = h.presentation();
    let a = parse_element("a", p.gens())?;
    println!("Δ(a) = {}", h.coproduct(&a)?.render(&[p.gens(), p.gens()]));
    println!(
        "Ad(a) = {}",
        h.adjoint_coaction(&a)?.render(&[p.gens(), p.gens()])
    );
    Ok(())
}
