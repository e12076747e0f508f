//! Gauge transformations of the crossed product: vertical automorphisms,
//! the base gauge group and the action on connections.

use qfibre::bundle::BundleSpec;
use qfibre::dsl::parse_element;
use qfibre::gauge::{
    degree_beta, gauge_covariance_report, gauge_group_report, gauge_to_base, sample_gauge_maps,
    trivial_connection, vertical_auto_from_f,
};
use qfibre::presets;
use qfibre::sample::DEFAULT_SEED;

fn main() -> qfibre::Result<()> {
    let spec = BundleSpec::from_model(&presets::load("trivial")?, 2)?;
    let p = spec.total();
    let y = parse_element("y", p.gens())?;
    let yi = parse_element("Y", p.gens())?;
    let maps = sample_gauge_maps(&spec, &y, &yi, 2, DEFAULT_SEED, 3)?;
    let f = &maps[0];
    println!("f:\n{}", f.render());
    println!("γ = Φ∗f∗Φ⁻¹:\n{}", gauge_to_base(f, &spec)?.render());
    let big_f = vertical_auto_from_f(f, &spec)?;
    let u = parse_element("y*Z", p.gens())?;
    println!("F_f(yZ) = {}", p.render(&big_f.apply(&u)?));
    print!(
        "{}",
        gauge_group_report(&spec, &maps, 2, DEFAULT_SEED)?.render_text()
    );
    let omega = trivial_connection(&spec, &degree_beta(&spec, &y, 2)?)?;
    print!(
        "{}",
        gauge_covariance_report(&omega, f, &spec, 2)?.render_text()
    );
    Ok(())
}
