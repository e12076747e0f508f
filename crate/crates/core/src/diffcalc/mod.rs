//! First-order differential calculi: the universal calculus `Ω¹P = ker m`,
//! ideals generating quotient calculi, and the 3D calculus on SUq(2).

mod threed;
mod universal;

pub use threed::{FormalTerm, ThreeDCalculus, ThreeDForm};
pub use universal::{
    bicovariance_check, bimodule_action, d_envelope, d_universal, kappa, kappa_inv,
    right_ideal_closure, Side, UnivOneForm,
};

use crate::error::{Error, Result};
use crate::hopf::HopfStructure;
use crate::ncalg::{NCElement, Presentation};

/// Generators of a subbimodule `N ⊂ Ω¹P` and of the matching right ideal
/// `Q ⊂ ker ε` of the structure Hopf algebra.
#[derive(Debug, Clone, Default)]
pub struct CalculusIdeal {
    pub n: Vec<UnivOneForm>,
    pub q: Vec<NCElement>,
}

impl CalculusIdeal {
    pub fn new(
        n: Vec<UnivOneForm>,
        q: Vec<NCElement>,
        p: &Presentation,
        h: &HopfStructure,
    ) -> Result<Self> {
        for rho in &n {
            if !rho.tensor().multiply_out(p)?.is_zero() {
                return Err(Error::NotExpressible(format!(
                    "{} is not in ker m",
                    rho.render(p)
                )));
            }
        }
        let q = q
            .iter()
            .map(|x| h.presentation().reduce(x))
            .collect::<Result<Vec<_>>>()?;
        for x in &q {
            if !h.counit(x)?.is_zero() {
                return Err(Error::Hypothesis(format!(
                    "ε({}) ≠ 0",
                    h.presentation().render(x)
                )));
            }
        }
        Ok(CalculusIdeal { n, q })
    }
}
