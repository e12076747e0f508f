//! A presentation document written inline: the quantum plane with a
//! coaction of k[Z, Z^-1] scaling `u` and fixing `v`.

use qfibre::bundle::BundleSpec;
use qfibre::dsl::{parse, Model};

const DOC: &str = "
algebra H {
  gens: Z, Zi
  rel: Z*Zi = 1
  rel: Zi*Z = 1
}
hopf H {
  D Z = Z(x)Z;    eps Z = 1;   S Z = Zi;   Sinv Z = Zi
  D Zi = Zi(x)Zi; eps Zi = 1;  S Zi = Z;   Sinv Zi = Z
}
algebra Plane {
  gens: u, v
  rel: v*u = q*u*v
}
coaction DR : Plane -> H {
  u = u(x)Z; v = v(x)1
}
";

fn main() -> qfibre::Result<()> {
    let doc = parse(DOC)?;
    print!("{}", doc.print());
    let model = Model::build(doc, qfibre::ncalg::DEFAULT_BUDGET)?;
    print!("{}", model.hopf("H")?.check_hopf_axioms(3)?.render_text());
    let spec = BundleSpec::from_model(&model, 3)?;
    print!("{}", spec.comodule().coaction_axioms(3)?.render_text());
    print!("{}", spec.coinvariant_report(3)?.1.render_text());
    Ok(())
}
