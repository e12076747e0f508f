//! The 3D calculus on SUq(2): differentials of the generators in the
//! left-module basis `w0, w1, w2`.

use qfibre::diffcalc::ThreeDCalculus;
use qfibre::dsl::parse_element;
use qfibre::presets;

fn main() -> qfibre::Result<()> {
    let p = presets::load("suq2")?.algebra("SUq2")?;
    let calc = ThreeDCalculus::new(p.clone())?;
    for (g, name) in p.gens().names().iter().enumerate() {
        println!("d{name} = {}", calc.d_generator(g as u32).render(&p));
    }
    let x = parse_element("a*b", p.gens())?;
    println!("d(ab) = {}", calc.d(&x)?.render(&p));
    print!("{}", calc.consistency_report(2)?.render_text());
    Ok(())
}
