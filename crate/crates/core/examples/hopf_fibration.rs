//! The quantum Hopf fibration: coinvariants, translation map, freeness and
//! exactness of the canonical map.

use qfibre::bundle::BundleSpec;
use qfibre::ncalg::NCElement;
use qfibre::presets;

fn main() -> qfibre::Result<()> {
    let model = presets::load("suq2")?;
    let spec = BundleSpec::from_model(&model, 3)?;
    let p = spec.total();
    let hp = spec.h_pres();
    let (basis, _) = spec.coinvariant_report(2)?;
    let names: Vec<String> = basis.iter().map(|b| p.render(b)).collect();
    println!("coinvariants to degree 2: {}", names.join(", "));
    for g in ["Z", "Zi"] {
        let w = hp.gens().generator(g)?;
        let tau = spec.translation_map(&NCElement::word(w))?;
        println!("τ({g}) = {}", tau.render(&[p.gens(), p.gens()]));
    }
    print!("{}", spec.freeness_check(3)?.render_text());
    print!("{}", spec.exactness_check(3)?.render_text());
    Ok(())
}
