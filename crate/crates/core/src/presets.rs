//! Built-in documents.
//!
//! * `suq2`: the quantum group SUq(2) (generators `a b c d` for the matrix
//!   entries), the Hopf algebra `H = k[Z,Z^-1]`, the projection `pi`, the
//!   inclusion `i` and the section data `phi`.
//! * `u1`: `H` alone.
//! * `trivial`: a crossed product `P = B#H` over `B = k[y,y^-1]` with `Z y =
//!   q y Z`, trivialised by `Phi(Z^n) = Z^n`.
//! * `product`: the same with `Z` and `y` commuting.

use crate::dsl::Model;
use crate::error::{Error, Result};
use crate::ncalg::DEFAULT_BUDGET;

const U1: &str = "\
algebra H {
  gens: Z, Zi
  rel: Z*Zi = 1
  rel: Zi*Z = 1
}
hopf H {
  D Z = Z(x)Z;    eps Z = 1;   S Z = Zi;   Sinv Z = Zi
  D Zi = Zi(x)Zi; eps Zi = 1;  S Zi = Z;   Sinv Zi = Z
}
";

const SUQ2: &str = "\
algebra SUq2 {
  gens: a, b, c, d
  order: a < d < b < c
  weights: a = 1, d = 1
  rel: b*a = q^-1*a*b
  rel: c*a = q^-1*a*c
  rel: c*b = b*c
  rel: b*d = q*d*b
  rel: c*d = q*d*c
  rel: a*d = 1 + q*b*c
  rel: d*a = 1 + q^-1*b*c
}
hopf SUq2 {
  D a = a(x)a + b(x)c
  D b = a(x)b + b(x)d
  D c = c(x)a + d(x)c
  D d = c(x)b + d(x)d
  eps a = 1; eps b = 0; eps c = 0; eps d = 1
  S a = d;   S b = -q^-1*b;  S c = -q*c;    S d = a
  Sinv a = d; Sinv b = -q*b; Sinv c = -q^-1*c; Sinv d = a
}
";

const FIBRATION: &str = "\
projection pi : SUq2 -> H {
  a = Z; b = 0; c = 0; d = Zi
}
map i : H -> SUq2 {
  Z = a; Zi = d
}
map phi : H -> SUq2 {
  Z = d; Zi = a
}
";

const TRIVIAL: &str = "\
algebra P {
  gens: y, Y, Z, Zi
  rel: y*Y = 1
  rel: Y*y = 1
  rel: Z*y = q*y*Z
  rel: Z*Y = q^-1*Y*Z
  rel: Zi*y = q^-1*y*Zi
  rel: Zi*Y = q*Y*Zi
  rel: Z*Zi = 1
  rel: Zi*Z = 1
}
coaction DR : P -> H {
  y = y(x)1; Y = Y(x)1; Z = Z(x)Z; Zi = Zi(x)Zi
}
trivialisation Phi : H -> P {
  Z = Z; Zi = Zi
}
";

const PRODUCT: &str = "\
algebra P {
  gens: y, Y, Z, Zi
  rel: y*Y = 1
  rel: Y*y = 1
  rel: Z*y = y*Z
  rel: Z*Y = Y*Z
  rel: Zi*y = y*Zi
  rel: Zi*Y = Y*Zi
  rel: Z*Zi = 1
  rel: Zi*Z = 1
}
coaction DR : P -> H {
  y = y(x)1; Y = Y(x)1; Z = Z(x)Z; Zi = Zi(x)Zi
}
trivialisation Phi : H -> P {
  Z = Z; Zi = Zi
}
";

pub const PRESET_NAMES: &[&str] = &["suq2", "u1", "trivial", "product"];

/// Source text of a preset.
pub fn source(name: &str) -> Option<String> {
    Some(match name {
        "suq2" | "hopf-fibration" => format!("{SUQ2}{U1}{FIBRATION}"),
        "u1" | "laurent" => U1.to_string(),
        "trivial" => format!("{U1}{TRIVIAL}"),
        "product" => format!("{U1}{PRODUCT}"),
        _ => return None,
    })
}

pub fn load(name: &str) -> Result<Model> {
    load_with_budget(name, DEFAULT_BUDGET)
}

pub fn load_with_budget(name: &str, budget: usize) -> Result<Model> {
    let src = source(name).ok_or_else(|| Error::Usage(format!("unknown preset `{name}`")))?;
    Model::build(crate::dsl::parse(&src)?, budget)
}
