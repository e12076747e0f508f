//! Cross sections of the associated bundle with fibre `k[Z, Z^-1]` over the
//! quantum sphere: a section that is not an algebra map.

use std::sync::Arc;

use qfibre::bundle::{AssociatedBundle, BundleSpec, Fibre};
use qfibre::dsl::parse_element;
use qfibre::gauge::{
    section_from_phi, section_on_p, section_roundtrip_report, trivialisation_from_section,
};
use qfibre::hopf::BasisLinearMap;
use qfibre::presets;
use qfibre::sample::DEFAULT_SEED;

fn main() -> qfibre::Result<()> {
    let model = presets::load("suq2")?;
    let spec = Arc::new(BundleSpec::from_model(&model, 2)?);
    let p = spec.total().clone();
    let ab = AssociatedBundle::new(spec.clone(), Fibre::regular(spec.hopf(), 2)?);
    let phimap = model.algebra_map("phi")?;
    let phi = BasisLinearMap::from_fn(spec.h_pres().clone(), p.clone(), 2, 1, |w| {
        phimap.apply_word(w)
    })?;
    let (s, rep) = section_from_phi(phi.clone(), &ab, 2)?;
    print!("{}", rep.render_text());
    for u in ["a", "b", "a*b"] {
        let x = section_on_p(&s, &ab, &parse_element(u, p.gens())?)?;
        println!("s({u}) = {}", p.render(&x));
    }
    print!("{}", section_roundtrip_report(&phi, &ab, 2)?.render_text());
    match trivialisation_from_section(&|u| section_on_p(&s, &ab, u), &spec, 2, DEFAULT_SEED) {
        Ok(_) => println!("unexpected: a trivialisation"),
        Err(e) => println!("{e}"),
    }
    Ok(())
}
