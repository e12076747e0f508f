//! Connections on the crossed product `k[y, y^-1] # k[Z, Z^-1]` built from
//! a base form `β`, their projections and curvature.

use qfibre::bundle::BundleSpec;
use qfibre::dsl::parse_element;
use qfibre::gauge::{curvature, degree_beta, trivial_connection, trivial_curvature_report};
use qfibre::presets;

fn main() -> qfibre::Result<()> {
    let spec = BundleSpec::from_model(&presets::load("trivial")?, 2)?;
    let p = spec.total();
    let y = parse_element("y", p.gens())?;
    let beta = degree_beta(&spec, &y, 2)?;
    let omega = trivial_connection(&spec, &beta)?;
    println!("ω:\n{}", omega.map().render());
    let f = curvature(&omega, &spec, 2)?;
    println!("F:\n{}", f.map.render());
    print!(
        "{}",
        trivial_curvature_report(&spec, &beta, 2)?.render_text()
    );
    Ok(())
}
