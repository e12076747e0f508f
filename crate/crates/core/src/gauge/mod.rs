//! Connections, curvature, cross sections and gauge transformations on
//! quantum principal bundles.

mod connection;
mod group;
mod section;

pub use connection::{
    canonical_connection, connection_check, curvature, degree_beta, gauge_covariance_report,
    gauge_transform_connection, monopole_omega, monopole_report, projection_from_omega,
    strongness_check, trivial_connection, trivial_curvature_report, Projection,
};
pub use group::{
    f_from_vertical, gauge_from_base, gauge_group_report, gauge_to_base, sample_gauge_maps,
    vertical_auto_from_f, VerticalAuto,
};
pub use section::{
    equivariance_failure, gauge_act_on_section, phi_e, phi_e_report, phi_from_section,
    section_from_phi, section_on_p, section_roundtrip_report, trivialisation_from_section,
    SectionData,
};

use std::collections::BTreeMap;

use crate::diffcalc::{ThreeDCalculus, ThreeDForm};
use crate::error::{Error, Result};
use crate::hopf::{
    convolution_inverse, convolve, BasisLinearMap, HopfStructure, InverseStrategy, Tensor,
};
use crate::ncalg::{NCElement, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectionMode {
    Universal,
    ThreeD,
}

/// `ω : H → Ω¹P` on the `H`-basis, as universal one-forms, optionally with
/// the images in the 3D calculus.
#[derive(Debug, Clone)]
pub struct ConnectionForm {
    omega: BasisLinearMap,
    three_d: Option<BTreeMap<Word, ThreeDForm>>,
}

impl ConnectionForm {
    /// Every value must have two legs and lie in `ker m`.
    pub fn universal(omega: BasisLinearMap) -> Result<Self> {
        if omega.arity() != 2 {
            return Err(Error::NotExpressible(format!(
                "connection values need 2 legs, got {}",
                omega.arity()
            )));
        }
        let p = omega.codomain().clone();
        for (w, t) in omega.values() {
            if !t.multiply_out(&p)?.is_zero() {
                return Err(Error::NotExpressible(format!(
                    "ω({}) is not in ker m",
                    w.render(omega.domain().gens())
                )));
            }
        }
        Ok(ConnectionForm {
            omega,
            three_d: None,
        })
    }

    /// Attaches the images of the values in the 3D calculus.
    pub fn with_three_d(mut self, calc: &ThreeDCalculus) -> Result<Self> {
        let mut m = BTreeMap::new();
        for (w, t) in self.omega.values() {
            m.insert(w.clone(), calc.reduce_tensor(t)?);
        }
        self.three_d = Some(m);
        Ok(self)
    }

    pub fn mode(&self) -> ConnectionMode {
        if self.three_d.is_some() {
            ConnectionMode::ThreeD
        } else {
            ConnectionMode::Universal
        }
    }

    pub fn map(&self) -> &BasisLinearMap {
        &self.omega
    }

    pub fn degree(&self) -> usize {
        self.omega.degree()
    }

    pub fn value(&self, a: &Word) -> Result<&Tensor> {
        self.omega.apply_word(a)
    }

    pub fn three_d_value(&self, a: &Word) -> Option<&ThreeDForm> {
        self.three_d.as_ref().and_then(|m| m.get(a))
    }
}

/// Universal two-form representatives of `F = dω + ω∗ω`.
#[derive(Debug, Clone)]
pub struct Curvature {
    pub map: BasisLinearMap,
    /// Set when `ω` failed the strongness check at the requested degree.
    pub warning: Option<String>,
}

/// A convolution-invertible `f : H → P` with `f(1) = 1`.
#[derive(Debug, Clone)]
pub struct GaugeMap {
    f: BasisLinearMap,
    inv: BasisLinearMap,
    strategy: InverseStrategy,
}

impl GaugeMap {
    pub fn new(f: BasisLinearMap, h: &HopfStructure) -> Result<Self> {
        if f.element_value(&Word::one())? != NCElement::one() {
            return Err(Error::Hypothesis("f(1) ≠ 1".into()));
        }
        let (inv, strategy) = convolution_inverse(&f, h)?;
        Ok(GaugeMap { f, inv, strategy })
    }

    /// `a ↦ ε(a)1`.
    pub fn unit(
        h: &HopfStructure,
        p: std::sync::Arc<crate::ncalg::Presentation>,
        degree: usize,
    ) -> Result<Self> {
        Self::new(h.unit_counit_map(p, degree)?, h)
    }

    pub fn map(&self) -> &BasisLinearMap {
        &self.f
    }

    pub fn inverse(&self) -> &BasisLinearMap {
        &self.inv
    }

    pub fn strategy(&self) -> InverseStrategy {
        self.strategy
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    /// `f∗g`.
    pub fn compose(&self, g: &GaugeMap, h: &HopfStructure) -> Result<GaugeMap> {
        GaugeMap::new(convolve(&self.f, &g.f, h)?, h)
    }

    pub fn render(&self) -> String {
        self.f.render()
    }
}
