use std::collections::BTreeMap;

use super::GaugeMap;
use crate::bundle::{AssociatedBundle, BundleSpec};
use crate::error::{Error, Result};
use crate::hopf::{convolve, BasisLinearMap, Tensor};
use crate::ncalg::linalg::rank;
use crate::ncalg::{NCElement, Presentation, Word};
use crate::qscalar::QRat;
use crate::report::Report;
use crate::sample::sample_pairs;

/// A cross section `s : E → B`, stored through an extension to `P⊗V`:
/// either `m∘(id⊗φ)` for an equivariant `φ : V → P`, or a table of values
/// on pairs of words.
#[derive(Debug, Clone)]
pub enum SectionData {
    FromPhi(BasisLinearMap),
    Table(BTreeMap<Vec<Word>, NCElement>),
}

impl SectionData {
    pub fn phi(&self) -> Option<&BasisLinearMap> {
        match self {
            SectionData::FromPhi(f) => Some(f),
            SectionData::Table(_) => None,
        }
    }

    /// `s(Σ u⊗v)`.
    pub fn apply(&self, x: &Tensor, p: &Presentation) -> Result<NCElement> {
        let mut out = NCElement::zero();
        for (legs, c) in x.terms() {
            let v = match self {
                SectionData::FromPhi(f) => p.multiply(
                    &NCElement::word(legs[0].clone()),
                    &f.element_value(&legs[1])?,
                )?,
                SectionData::Table(t) => t.get(legs).cloned().ok_or_else(|| {
                    Error::TruncationTooSmall(format!(
                        "section table has no value on pair {legs:?}"
                    ))
                })?,
            };
            out.add_scaled(&v, c);
        }
        Ok(out)
    }
}

/// First `V`-basis word with `Δ_R φ(v) ≠ (φ⊗id)ρ_R(v)`.
pub fn equivariance_failure(phi: &BasisLinearMap, ab: &AssociatedBundle) -> Result<Option<String>> {
    let ca = ab.bundle.comodule();
    for (v, val) in phi.values() {
        let lhs = ca.coaction(&val.to_element())?;
        let rhs = phi.apply_on_leg(ab.fibre.rho_word(v)?, 0)?;
        if lhs != rhs {
            return Ok(Some(v.render(ab.fibre_pres().gens())));
        }
    }
    Ok(None)
}

/// `s = m∘(id⊗φ)` with its section laws on the `E`-basis of degree
/// `<= degree`.
pub fn section_from_phi(
    phi: BasisLinearMap,
    ab: &AssociatedBundle,
    degree: usize,
) -> Result<(SectionData, Report)> {
    if phi.element_value(&Word::one())? != NCElement::one() {
        return Err(Error::Hypothesis("φ(1) ≠ 1".into()));
    }
    if let Some(v) = equivariance_failure(&phi, ab)? {
        return Err(Error::Hypothesis(format!("φ is not equivariant at {v}")));
    }
    if !ab.bundle.hopf().has_bijective_antipode() {
        return Err(Error::IncompleteHopf(
            "sections need an inverse antipode".into(),
        ));
    }
    let s = SectionData::FromPhi(phi);
    let p = ab.total();
    let ca = ab.bundle.comodule();
    let mut rep = Report::new("cross section");
    let ebasis = ab.coinvariants(degree)?;
    let bbasis = ab.bundle.coinvariants(degree)?;
    let g2 = ab.gens();
    let mut bad = None;
    for e in &ebasis {
        if !ca.is_coinvariant(&s.apply(e, p)?)? {
            bad = Some(e.render(&g2));
            break;
        }
    }
    rep.check(
        "section.lands_in_b",
        "s(E) ⊂ B",
        degree,
        bad.is_none(),
        bad.unwrap_or_else(|| format!("dim E = {}", ebasis.len())),
    );
    let one = s.apply(&Tensor::unit(2), p)?;
    rep.check(
        "section.unital",
        "s(1⊗1) = 1",
        degree,
        one == NCElement::one(),
        p.render(&one),
    );
    let mut bad = None;
    'outer: for b in &bbasis {
        for e in &ebasis {
            let lhs = s.apply(&ab.left_b_action(b, e)?, p)?;
            if lhs != p.multiply(b, &s.apply(e, p)?)? {
                bad = Some(format!("b = {}, e = {}", p.render(b), e.render(&g2)));
                break 'outer;
            }
        }
    }
    rep.check(
        "section.left_b_linear",
        "s(b·e) = b·s(e)",
        degree,
        bad.is_none(),
        bad.unwrap_or_default(),
    );
    let bad = bbasis
        .iter()
        .find(|b| s.apply(&ab.j_e(b), p).map(|x| x != **b).unwrap_or(true))
        .map(|b| p.render(b));
    rep.check(
        "section.splits_j",
        "s∘j_E = id",
        degree,
        bad.is_none(),
        bad.unwrap_or_default(),
    );
    Ok((s, rep))
}

/// `φ(v) = τ⁽¹⁾(S⁻¹v₍₁₎)·s(τ⁽²⁾(S⁻¹v₍₁₎)⊗v₍₀₎)` on the `V`-basis.
pub fn phi_from_section(
    s: &SectionData,
    ab: &AssociatedBundle,
    degree: usize,
) -> Result<BasisLinearMap> {
    let spec = &ab.bundle;
    let p = ab.total();
    let h = spec.hopf();
    BasisLinearMap::from_element_fn(ab.fibre_pres().clone(), p.clone(), degree, |v| {
        let mut out = NCElement::zero();
        for (legs, c) in ab.fibre.rho_word(v)?.terms() {
            let x = h.antipode_inverse(&NCElement::word(legs[1].clone()))?;
            let tau = spec.translation_map(&x)?;
            for (tl, tc) in tau.terms() {
                let sv = s.apply(
                    &Tensor::pure(vec![tl[1].clone(), legs[0].clone()], QRat::one()),
                    p,
                )?;
                out.add_scaled(
                    &p.multiply(&NCElement::word(tl[0].clone()), &sv)?,
                    &(c * tc),
                );
            }
        }
        Ok(out)
    })
}

/// `s(u₍₀₎⊗u₍₁₎)`, the section seen on `P` through `u ↦ Δ_R u` when the
/// fibre is the structure Hopf algebra.
pub fn section_on_p(s: &SectionData, ab: &AssociatedBundle, u: &NCElement) -> Result<NCElement> {
    s.apply(&ab.principal_embedding(u)?, ab.total())
}

/// `Φ_E(v) = Φ(S⁻¹v₍₁₎)⊗v₍₀₎`.
pub fn phi_e(v: &NCElement, ab: &AssociatedBundle) -> Result<Tensor> {
    let tr = ab
        .bundle
        .trivialisation()
        .ok_or_else(|| Error::Hypothesis("Φ_E needs a trivialisation".into()))?;
    let h = ab.bundle.hopf();
    let t = ab.fibre.rho(v)?.replace_leg(1, 1, |a| {
        tr.phi
            .apply(&h.antipode_inverse(&NCElement::word(a.clone()))?)
    })?;
    let mut out = Tensor::zero(2);
    for (legs, c) in t.terms() {
        out.add_term(vec![legs[1].clone(), legs[0].clone()], c);
    }
    Ok(out)
}

/// `Φ_E` lands in `E`, `Φ_E(1) = 1⊗1`, and `b⊗v ↦ b·Φ_E(v)` is injective
/// on basis pairs of degree `<= degree`.
pub fn phi_e_report(ab: &AssociatedBundle, degree: usize) -> Result<Report> {
    let mut rep = Report::new("Φ_E");
    let vbasis = ab
        .fibre_pres()
        .monomial_basis(degree.min(ab.fibre.degree()));
    let g2 = ab.gens();
    let mut bad = None;
    let mut values = Vec::new();
    for v in &vbasis {
        let x = phi_e(&NCElement::word(v.clone()), ab)?;
        if bad.is_none() && !ab.is_in_e(&x)? {
            bad = Some(v.render(ab.fibre_pres().gens()));
        }
        values.push((v, x));
    }
    rep.check(
        "section.phi_e.coinvariant",
        "Δ_E Φ_E(v) = Φ_E(v)⊗1",
        degree,
        bad.is_none(),
        bad.unwrap_or_default(),
    );
    let one = phi_e(&NCElement::one(), ab)?;
    rep.check(
        "section.phi_e.unit",
        "Φ_E(1) = 1⊗1",
        degree,
        one == Tensor::unit(2),
        one.render(&g2),
    );
    let bbasis = ab.bundle.coinvariants(degree)?;
    let mut images = Vec::new();
    for b in &bbasis {
        for (v, x) in &values {
            if b.max_degree() + v.degree() <= degree {
                images.push(ab.left_b_action(b, x)?.as_map().clone());
            }
        }
    }
    let r = rank(&images);
    rep.check(
        "section.phi_e.injective",
        "b⊗v ↦ b·Φ_E(v) injective",
        degree,
        r == images.len(),
        format!("rank {r} of {} pairs", images.len()),
    );
    Ok(rep)
}

/// Both directions of the bijection between sections and equivariant
/// maps, starting from `φ`; on a trivial bundle also the explicit form
/// `φ(v) = Φ⁻¹(S⁻¹v₍₁₎)·s(Φ_E(v₍₀₎))`.
pub fn section_roundtrip_report(
    phi: &BasisLinearMap,
    ab: &AssociatedBundle,
    degree: usize,
) -> Result<Report> {
    let p = ab.total();
    let (s, mut rep) = section_from_phi(phi.clone(), ab, degree)?;
    let d = degree.min(phi.degree());
    let back = phi_from_section(&s, ab, d)?;
    rep.check(
        "section.roundtrip.phi",
        "φ → s → φ",
        d,
        back == phi.restrict(d),
        back.render(),
    );
    let (s2, _) = section_from_phi(back.clone(), ab, degree)?;
    let mut bad = None;
    for e in ab.coinvariants(degree)? {
        if s2.apply(&e, p)? != s.apply(&e, p)? {
            bad = Some(e.render(&ab.gens()));
            break;
        }
    }
    rep.check(
        "section.roundtrip.s",
        "s → φ → s on E",
        degree,
        bad.is_none(),
        bad.unwrap_or_default(),
    );
    if let Some(tr) = ab.bundle.trivialisation() {
        let h = ab.bundle.hopf();
        let explicit =
            BasisLinearMap::from_element_fn(ab.fibre_pres().clone(), p.clone(), d, |v| {
                let mut out = NCElement::zero();
                for (legs, c) in ab.fibre.rho_word(v)?.terms() {
                    let a = tr
                        .phi_inv
                        .apply_element(&h.antipode_inverse(&NCElement::word(legs[1].clone()))?)?;
                    let sv = s.apply(&phi_e(&NCElement::word(legs[0].clone()), ab)?, p)?;
                    out.add_scaled(&p.multiply(&a, &sv)?, c);
                }
                Ok(out)
            })?;
        rep.check(
            "section.trivial_formula",
            "Φ⁻¹(S⁻¹v₍₁₎)s(Φ_E(v₍₀₎)) = φ(v)",
            d,
            explicit == back,
            explicit.render(),
        );
    }
    Ok(rep)
}

/// Proposition-style reconstruction of a trivialisation from a
/// multiplicative section `s : P → B`: `Φ(a) = s(τ⁽¹⁾(a))τ⁽²⁾(a)` with
/// inverse `τ⁽¹⁾(a)s(τ⁽²⁾(a))`. Fails with [`Error::NotAlgebraMap`] when
/// `s` is not multiplicative on sampled basis pairs.
pub fn trivialisation_from_section(
    s: &dyn Fn(&NCElement) -> Result<NCElement>,
    spec: &BundleSpec,
    degree: usize,
    seed: u64,
) -> Result<(BundleSpec, Report)> {
    let p = spec.total();
    let hp = spec.h_pres();
    for (u, v) in sample_pairs(
        &p.monomial_basis(degree),
        2.min(degree),
        crate::sample::EXTRA_PAIRS,
        seed,
    ) {
        if u.degree() + v.degree() > degree {
            continue;
        }
        let (ue, ve) = (NCElement::word(u.clone()), NCElement::word(v.clone()));
        let lhs = s(&p.multiply(&ue, &ve)?)?;
        let rhs = p.multiply(&s(&ue)?, &s(&ve)?)?;
        if lhs != rhs {
            let (un, vn) = (u.render(p.gens()), v.render(p.gens()));
            return Err(Error::NotAlgebraMap(format!(
                "s({un}·{vn}) = {} but s({un})s({vn}) = {}",
                p.render(&lhs),
                p.render(&rhs)
            )));
        }
    }
    let tau = |a: &Word| spec.translation_map(&NCElement::word(a.clone()));
    let phi = BasisLinearMap::from_element_fn(hp.clone(), p.clone(), degree, |a| {
        tau(a)?
            .map_leg(0, |w| s(&NCElement::word(w.clone())))?
            .multiply_out(p)
    })?;
    let exhibited = BasisLinearMap::from_element_fn(hp.clone(), p.clone(), degree, |a| {
        tau(a)?
            .map_leg(1, |w| s(&NCElement::word(w.clone())))?
            .multiply_out(p)
    })?;
    let mut rep = Report::new("trivialisation from a section").with_seed(seed);
    let one = phi.element_value(&Word::one())?;
    rep.check(
        "section.trivialisation.unital",
        "Φ(1) = 1",
        degree,
        one == NCElement::one(),
        p.render(&one),
    );
    let h = spec.hopf();
    let unit = h.unit_counit_map(p.clone(), degree)?;
    let ok = convolve(&exhibited, &phi, h)? == unit && convolve(&phi, &exhibited, h)? == unit;
    rep.check(
        "section.trivialisation.inverse",
        "Φ⁻¹(a) = τ⁽¹⁾(a)s(τ⁽²⁾(a))",
        degree,
        ok,
        exhibited.render(),
    );
    let rebuilt = BundleSpec::trivial(spec.comodule().clone(), phi)?;
    rep.check(
        "section.trivialisation.intertwiner",
        "Δ_R Φ = (Φ⊗id)Δ",
        degree,
        true,
        format!(
            "convolution inverse by {:?}",
            rebuilt.trivialisation().unwrap().strategy
        ),
    );
    rep.extend(rebuilt.theta_report(degree, seed)?);
    Ok((rebuilt, rep))
}

/// `φ^f = φ∗f`, `v ↦ φ(v₍₀₎)f(v₍₁₎)`.
pub fn gauge_act_on_section(
    phi: &BasisLinearMap,
    f: &GaugeMap,
    ab: &AssociatedBundle,
) -> Result<BasisLinearMap> {
    let p = ab.total();
    BasisLinearMap::from_element_fn(
        ab.fibre_pres().clone(),
        p.clone(),
        phi.degree().min(f.degree()),
        |v| {
            let t = ab.fibre.rho_word(v)?;
            Ok(f.map()
                .apply_on_leg(&phi.apply_on_leg(t, 0)?, 1)?
                .merge_legs(0, p)?
                .to_element())
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::Fibre;
    use crate::dsl::parse_element;
    use crate::presets;
    use std::sync::Arc;

    fn fibration_with_regular_fibre(
        d: usize,
    ) -> (crate::dsl::Model, AssociatedBundle, BasisLinearMap) {
        let m = presets::load("suq2").unwrap();
        let spec = Arc::new(BundleSpec::from_model(&m, d).unwrap());
        let fibre = Fibre::regular(spec.hopf(), d).unwrap();
        let phimap = m.algebra_map("phi").unwrap();
        let phi = BasisLinearMap::from_fn(spec.h_pres().clone(), spec.total().clone(), d, 1, |w| {
            phimap.apply_word(w)
        })
        .unwrap();
        (m, AssociatedBundle::new(spec, fibre), phi)
    }

    #[test]
    fn fibration_section_is_not_multiplicative() {
        let (_, ab, phi) = fibration_with_regular_fibre(2);
        let p = ab.total().clone();
        let el = |s: &str| parse_element(s, p.gens()).unwrap();
        let (s, rep) = section_from_phi(phi.clone(), &ab, 2).unwrap();
        assert!(rep.passed(), "{}", rep.render_text());
        let sp = |x: &str| section_on_p(&s, &ab, &el(x)).unwrap();
        assert_eq!(sp("a*b"), el("a*b"));
        let prod = p.multiply(&sp("a"), &sp("b")).unwrap();
        let expect = p
            .multiply(&el("a*d"), &p.multiply(&el("q^-1"), &el("a*b")).unwrap())
            .unwrap();
        assert_eq!(prod, expect);
        assert_ne!(prod, sp("a*b"));
        let err = trivialisation_from_section(&|u| section_on_p(&s, &ab, u), &ab.bundle, 2, 1996)
            .unwrap_err();
        assert!(
            err.to_string().starts_with("section is not an algebra map"),
            "{err}"
        );
        let rt = section_roundtrip_report(&phi, &ab, 2).unwrap();
        assert!(rt.passed(), "{}", rt.render_text());
    }

    #[test]
    fn product_bundle_section_gives_back_a_trivialisation() {
        let spec = BundleSpec::from_model(&presets::load("product").unwrap(), 2).unwrap();
        let tr = spec.trivialisation().unwrap();
        let p = spec.total().clone();
        // s = id∗Φ⁻¹
        let s = |u: &NCElement| -> Result<NCElement> {
            let t = spec.comodule().coaction(&p.reduce(u)?)?;
            Ok(tr
                .phi_inv
                .apply_on_leg(&t, 1)?
                .merge_legs(0, &p)?
                .to_element())
        };
        let (rebuilt, rep) = trivialisation_from_section(&s, &spec, 2, 1996).unwrap();
        assert!(rep.passed(), "{}", rep.render_text());
        assert_eq!(rebuilt.trivialisation().unwrap().phi, tr.phi);
        // on the crossed product the same recipe is not multiplicative
        let spec = BundleSpec::from_model(&presets::load("trivial").unwrap(), 2).unwrap();
        let tr = spec.trivialisation().unwrap();
        let p = spec.total().clone();
        let s = |u: &NCElement| -> Result<NCElement> {
            let t = spec.comodule().coaction(&p.reduce(u)?)?;
            Ok(tr
                .phi_inv
                .apply_on_leg(&t, 1)?
                .merge_legs(0, &p)?
                .to_element())
        };
        assert!(matches!(
            trivialisation_from_section(&s, &spec, 2, 1996),
            Err(Error::NotAlgebraMap(_))
        ));
    }

    #[test]
    fn trivial_bundle_sections_and_phi_e() {
        let spec = Arc::new(BundleSpec::from_model(&presets::load("trivial").unwrap(), 2).unwrap());
        let fibre = Fibre::regular(spec.hopf(), 2).unwrap();
        let ab = AssociatedBundle::new(spec.clone(), fibre);
        assert!(phi_e_report(&ab, 2).unwrap().passed());
        // φ = Φ∘S is equivariant for the regular fibre
        let tr = spec.trivialisation().unwrap();
        let h = spec.hopf();
        let phi =
            BasisLinearMap::from_element_fn(spec.h_pres().clone(), spec.total().clone(), 2, |w| {
                tr.phi
                    .apply_element(&h.antipode(&NCElement::word(w.clone()))?)
            })
            .unwrap();
        let rep = section_roundtrip_report(&phi, &ab, 2).unwrap();
        assert!(rep.passed(), "{}", rep.render_text());
        let scalars = AssociatedBundle::new(spec.clone(), Fibre::scalars(h).unwrap());
        let unit = BasisLinearMap::from_element_fn(
            scalars.fibre_pres().clone(),
            spec.total().clone(),
            0,
            |_| Ok(NCElement::one()),
        )
        .unwrap();
        let (s, rep) = section_from_phi(unit, &scalars, 2).unwrap();
        assert!(rep.passed(), "{}", rep.render_text());
        assert_eq!(phi_e(&NCElement::one(), &scalars).unwrap(), Tensor::unit(2));
        assert!(s.phi().is_some());
    }

    #[test]
    fn gauge_action_on_sections() {
        let (_, ab, phi) = fibration_with_regular_fibre(2);
        let spec = &ab.bundle;
        let lam = |c: i64| {
            let f = BasisLinearMap::from_element_fn(
                spec.h_pres().clone(),
                spec.total().clone(),
                2,
                |w| {
                    let sign = if w.letters().first() == Some(&0) {
                        1
                    } else {
                        -1
                    };
                    Ok(NCElement::scalar(
                        QRat::from_int(c).pow(sign * w.degree() as i64)?,
                    ))
                },
            )
            .unwrap();
            GaugeMap::new(f, spec.hopf()).unwrap()
        };
        let (f, g) = (lam(2), lam(3));
        let pf = gauge_act_on_section(&phi, &f, &ab).unwrap();
        assert!(equivariance_failure(&pf, &ab).unwrap().is_none());
        let lhs = gauge_act_on_section(&pf, &g, &ab).unwrap();
        let rhs = gauge_act_on_section(&phi, &f.compose(&g, spec.hopf()).unwrap(), &ab).unwrap();
        assert_eq!(lhs, rhs);
        let one = GaugeMap::unit(spec.hopf(), spec.total().clone(), 2).unwrap();
        assert_eq!(gauge_act_on_section(&phi, &one, &ab).unwrap(), phi);
    }
}
