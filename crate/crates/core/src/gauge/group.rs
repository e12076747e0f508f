use super::GaugeMap;
use crate::bundle::BundleSpec;
use crate::error::{Error, Result};
use crate::hopf::{convolve, BasisLinearMap};
use crate::ncalg::{NCElement, Word};
use crate::qscalar::QRat;
use crate::report::Report;
use crate::sample::{sample_indices, sample_pairs};

/// First basis word where `Δ_R f(a) ≠ (f⊗id)Ad_R(a)`.
pub(crate) fn ad_failure(f: &BasisLinearMap, spec: &BundleSpec) -> Result<Option<String>> {
    let h = spec.hopf();
    for (a, v) in f.values() {
        let lhs = spec.comodule().coaction(&v.to_element())?;
        let rhs = f.apply_on_leg(&h.adjoint_coaction(&NCElement::word(a.clone()))?, 0)?;
        if lhs != rhs {
            return Ok(Some(a.render(spec.h_pres().gens())));
        }
    }
    Ok(None)
}

/// The vertical automorphism `F = id∗f`, `F(u) = u₍₀₎f(u₍₁₎)`.
pub struct VerticalAuto<'a> {
    spec: &'a BundleSpec,
    f: GaugeMap,
}

pub fn vertical_auto_from_f<'a>(f: &GaugeMap, spec: &'a BundleSpec) -> Result<VerticalAuto<'a>> {
    if let Some(a) = ad_failure(f.map(), spec)? {
        return Err(Error::Hypothesis(format!("Δ_R f ≠ (f⊗id)Ad_R at {a}")));
    }
    Ok(VerticalAuto { spec, f: f.clone() })
}

fn id_conv(spec: &BundleSpec, f: &BasisLinearMap, x: &NCElement) -> Result<NCElement> {
    let p = spec.total();
    let t = spec.comodule().coaction(&p.reduce(x)?)?;
    Ok(f.apply_on_leg(&t, 1)?.merge_legs(0, p)?.to_element())
}

impl VerticalAuto<'_> {
    pub fn gauge_map(&self) -> &GaugeMap {
        &self.f
    }

    pub fn apply(&self, x: &NCElement) -> Result<NCElement> {
        id_conv(self.spec, self.f.map(), x)
    }

    /// `id∗f⁻¹`.
    pub fn apply_inverse(&self, x: &NCElement) -> Result<NCElement> {
        id_conv(self.spec, self.f.inverse(), x)
    }

    /// Unital, left `B`-linear, intertwines `Δ_R`, inverted by `id∗f⁻¹`,
    /// and `f(a) = τ⁽¹⁾(a)F(τ⁽²⁾(a))` recovers `f`.
    pub fn report(&self, degree: usize, seed: u64) -> Result<Report> {
        let spec = self.spec;
        let p = spec.total();
        let ca = spec.comodule();
        let mut rep = Report::new("vertical automorphism").with_seed(seed);
        let one = self.apply(&NCElement::one())?;
        rep.check(
            "vertical.unital",
            "F(1) = 1",
            degree,
            one == NCElement::one(),
            p.render(&one),
        );

        let basis = p.monomial_basis(degree);
        let coinv = spec.coinvariants(degree)?;
        let mut bad = None;
        for j in sample_indices(basis.len(), 2 * crate::sample::EXTRA_PAIRS, seed) {
            let u = NCElement::word(basis[j].clone());
            for b in &coinv {
                if p.multiply(b, &self.apply(&u)?)? != self.apply(&p.multiply(b, &u)?)? {
                    bad = Some(format!("b = {}, u = {}", p.render(b), p.render(&u)));
                }
            }
            if bad.is_some() {
                break;
            }
        }
        rep.check(
            "vertical.left_b_linear",
            "F(bu) = bF(u)",
            degree,
            bad.is_none(),
            bad.unwrap_or_default(),
        );

        let (mut inter, mut inv) = (None, None);
        for w in &basis {
            let u = NCElement::word(w.clone());
            let fu = self.apply(&u)?;
            let lhs = ca.coaction(&fu)?;
            let rhs = ca
                .coaction(&u)?
                .map_leg(0, |x| self.apply(&NCElement::word(x.clone())))?;
            if inter.is_none() && lhs != rhs {
                inter = Some(w.render(p.gens()));
            }
            if inv.is_none()
                && (self.apply_inverse(&fu)? != u || self.apply(&self.apply_inverse(&u)?)? != u)
            {
                inv = Some(w.render(p.gens()));
            }
        }
        rep.check(
            "vertical.intertwines",
            "Δ_R F = (F⊗id)Δ_R",
            degree,
            inter.is_none(),
            inter.unwrap_or_default(),
        );
        rep.check(
            "vertical.invertible",
            "(id∗f⁻¹)∘F = F∘(id∗f⁻¹) = id",
            degree,
            inv.is_none(),
            inv.unwrap_or_default(),
        );

        let back = f_from_vertical(&|x| self.apply(x), spec, degree.min(self.f.degree()))?;
        let ok = back == self.f.map().restrict(back.degree());
        rep.check("vertical.roundtrip", "f = m(id⊗F)τ", back.degree(), ok, "");
        Ok(rep)
    }
}

/// `f(a) = τ⁽¹⁾(a)F(τ⁽²⁾(a))` on the `H`-basis.
pub fn f_from_vertical(
    big_f: &dyn Fn(&NCElement) -> Result<NCElement>,
    spec: &BundleSpec,
    degree: usize,
) -> Result<BasisLinearMap> {
    let p = spec.total();
    BasisLinearMap::from_fn(spec.h_pres().clone(), p.clone(), degree, 1, |a| {
        let tau = spec.translation_map(&NCElement::word(a.clone()))?;
        tau.map_leg(1, |w| big_f(&NCElement::word(w.clone())))?
            .merge_legs(0, p)
    })
}

fn need_phi(spec: &BundleSpec) -> Result<&crate::bundle::Trivialisation> {
    spec.trivialisation()
        .ok_or_else(|| Error::Hypothesis("the base gauge group needs a trivialisation".into()))
}

/// `γ = Φ∗f∗Φ⁻¹ : H → B`.
pub fn gauge_to_base(f: &GaugeMap, spec: &BundleSpec) -> Result<BasisLinearMap> {
    let tr = need_phi(spec)?;
    let h = spec.hopf();
    convolve(&convolve(&tr.phi, f.map(), h)?, &tr.phi_inv, h)
}

/// `f = Φ⁻¹∗γ∗Φ`, checked to be `Ad`-equivariant.
pub fn gauge_from_base(gamma: &BasisLinearMap, spec: &BundleSpec) -> Result<GaugeMap> {
    let tr = need_phi(spec)?;
    let h = spec.hopf();
    let f = convolve(&convolve(&tr.phi_inv, gamma, h)?, &tr.phi, h)?;
    if let Some(a) = ad_failure(&f, spec)? {
        return Err(Error::Hypothesis(format!(
            "Φ⁻¹∗γ∗Φ is not Ad-equivariant at {a}"
        )));
    }
    GaugeMap::new(f, h)
}

/// Letterwise gauge maps on a Laurent structure group `k[Z, Z⁻¹]`
/// (generators in that order): `Z ↦ λ bᵏ`, `Z⁻¹ ↦ λ⁻¹ b⁻ᵏ` with `λ` and
/// `k` drawn from small fixed menus. `b` must be an invertible coinvariant.
pub fn sample_gauge_maps(
    spec: &BundleSpec,
    b: &NCElement,
    b_inv: &NCElement,
    degree: usize,
    seed: u64,
    count: usize,
) -> Result<Vec<GaugeMap>> {
    let p = spec.total();
    let hp = spec.h_pres();
    if hp.gens().len() != 2 {
        return Err(Error::Hypothesis(
            "sampled gauge maps need k[Z, Z⁻¹]".into(),
        ));
    }
    if p.multiply(b, b_inv)? != NCElement::one() || !spec.comodule().is_coinvariant(b)? {
        return Err(Error::Hypothesis(
            "b must be an invertible coinvariant".into(),
        ));
    }
    let lambdas = [
        QRat::one(),
        QRat::from_int(2),
        QRat::from_int(-1),
        QRat::q(),
        QRat::q_pow(-1),
        QRat::ratio(1, 3)?,
    ];
    let ks: [i64; 5] = [-2, -1, 0, 1, 2];
    let picks = sample_indices(lambdas.len() * ks.len(), count, seed);
    let mut out = Vec::new();
    for j in picks {
        let (lam, k) = (&lambdas[j % lambdas.len()], ks[j / lambdas.len()]);
        let pw = |x: &NCElement, n: i64| p.pow(x, n.unsigned_abs() as usize);
        let (x, xi) = if k >= 0 {
            (pw(b, k)?, pw(b_inv, k)?)
        } else {
            (pw(b_inv, k)?, pw(b, k)?)
        };
        let vals = [x.scale(lam), xi.scale(&lam.inv()?)];
        let f = BasisLinearMap::from_element_fn(hp.clone(), p.clone(), degree, |w| {
            let mut acc = NCElement::one();
            for &g in w.letters() {
                acc = p.multiply(&acc, &vals[g as usize])?;
            }
            Ok(acc)
        })?;
        out.push(GaugeMap::new(f, spec.hopf())?);
    }
    Ok(out)
}

/// Group laws of `H(P)`, the anti-isomorphism `f ↦ id∗f` onto `Aut_B(P)`
/// with its inverse `F ↦ m(id⊗F)τ`, and the isomorphism
/// `f ↦ Φ∗f∗Φ⁻¹` onto the base gauge group `H(B)`, on the given maps.
pub fn gauge_group_report(
    spec: &BundleSpec,
    maps: &[GaugeMap],
    degree: usize,
    seed: u64,
) -> Result<Report> {
    let h = spec.hopf();
    let p = spec.total();
    let hp = spec.h_pres();
    let mut rep = Report::new("gauge groups").with_seed(seed);
    let unit = GaugeMap::unit(h, p.clone(), degree)?;
    let d = maps
        .iter()
        .map(GaugeMap::degree)
        .min()
        .unwrap_or(degree)
        .min(degree);
    let idx: Vec<Word> = (0..maps.len()).map(|i| Word(vec![i as u32])).collect();
    let pairs = sample_pairs(&idx, 1, crate::sample::EXTRA_PAIRS, seed);
    let pick = |w: &Word| &maps[w.letters()[0] as usize];
    let basis = p.monomial_basis(d);
    let unit_d = unit.map().restrict(d);
    let has_phi = spec.trivialisation().is_some();

    let mut bad: [Option<String>; 9] = Default::default();
    let note = |slot: &mut Option<String>, msg: String| {
        if slot.is_none() {
            *slot = Some(msg);
        }
    };
    for (k, f) in maps.iter().enumerate() {
        let fm = f.map().restrict(d);
        if convolve(&fm, &unit_d, h)? != fm || convolve(&unit_d, &fm, h)? != fm {
            note(&mut bad[0], format!("map {k}"));
        }
        if convolve(&fm, &f.inverse().restrict(d), h)? != unit_d {
            note(&mut bad[1], format!("map {k}"));
        }
        let big = vertical_auto_from_f(f, spec)?;
        if f_from_vertical(&|x| big.apply(x), spec, d)? != fm {
            note(&mut bad[3], format!("map {k}"));
        }
        if !has_phi {
            continue;
        }
        let gamma = gauge_to_base(f, spec)?;
        for (a, v) in gamma.values() {
            if !spec.comodule().is_coinvariant(&v.to_element())? {
                note(&mut bad[5], format!("map {k} at {}", a.render(hp.gens())));
            }
        }
        if gauge_from_base(&gamma, spec)?.map().restrict(d) != fm {
            note(&mut bad[6], format!("map {k}"));
        }
    }
    for (i, j) in &pairs {
        let (f, g) = (pick(i), pick(j));
        let fg = f.compose(g, h)?;
        let (bf, bg, bfg) = (
            vertical_auto_from_f(f, spec)?,
            vertical_auto_from_f(g, spec)?,
            vertical_auto_from_f(&fg, spec)?,
        );
        for w in &basis {
            let u = NCElement::word(w.clone());
            if bfg.apply(&u)? != bg.apply(&bf.apply(&u)?)? {
                note(&mut bad[2], format!("u = {}", w.render(p.gens())));
                break;
            }
        }
        let composite = f_from_vertical(&|x| bg.apply(&bf.apply(x)?), spec, d)?;
        if composite != fg.map().restrict(d) {
            note(
                &mut bad[4],
                format!("pair {}, {}", i.letters()[0], j.letters()[0]),
            );
        }
        if has_phi {
            let lhs = gauge_to_base(&fg, spec)?;
            let rhs = convolve(&gauge_to_base(f, spec)?, &gauge_to_base(g, spec)?, h)?;
            if lhs != rhs {
                note(
                    &mut bad[7],
                    format!("pair {}, {}", i.letters()[0], j.letters()[0]),
                );
            }
        }
        for k in &maps[..maps.len().min(2)] {
            let l = convolve(&fg.map().restrict(d), &k.map().restrict(d), h)?;
            let r = convolve(&f.map().restrict(d), &g.compose(k, h)?.map().restrict(d), h)?;
            if l != r {
                note(
                    &mut bad[8],
                    format!("pair {}, {}", i.letters()[0], j.letters()[0]),
                );
            }
        }
    }
    let n = format!("{} maps, {} sampled pairs", maps.len(), pairs.len());
    let entries = [
        ("gauge.group.unit", "f∗ε = ε∗f = f"),
        ("gauge.group.inverse", "f∗f⁻¹ = ε"),
        ("gauge.iso.aut_anti_hom", "F_{f∗g} = F_g∘F_f"),
        ("gauge.iso.aut_roundtrip", "m(id⊗F_f)τ = f"),
        ("gauge.iso.aut_composite", "m(id⊗(F_g∘F_f))τ = f∗g"),
        ("gauge.iso.base_lands_in_b", "Φ∗f∗Φ⁻¹ : H → B"),
        ("gauge.iso.base_roundtrip", "Φ⁻¹∗(Φ∗f∗Φ⁻¹)∗Φ = f"),
        ("gauge.iso.base_hom", "γ_{f∗g} = γ_f∗γ_g"),
        ("gauge.group.associative", "(f∗g)∗k = f∗(g∗k)"),
    ];
    for ((id, anchor), b) in entries.iter().zip(bad) {
        if !has_phi && id.starts_with("gauge.iso.base") {
            rep.info(*id, *anchor, d, "needs a trivialisation");
        } else {
            rep.check(*id, *anchor, d, b.is_none(), b.unwrap_or_else(|| n.clone()));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_element;
    use crate::presets;
    use crate::sample::DEFAULT_SEED;

    #[test]
    fn gauge_groups_on_the_trivial_bundle() {
        let spec = BundleSpec::from_model(&presets::load("trivial").unwrap(), 2).unwrap();
        let el = |s: &str| parse_element(s, spec.total().gens()).unwrap();
        let maps = sample_gauge_maps(&spec, &el("y"), &el("Y"), 2, DEFAULT_SEED, 3).unwrap();
        let rep = gauge_group_report(&spec, &maps, 2, DEFAULT_SEED).unwrap();
        assert!(rep.passed(), "{}", rep.render_text());
        let v = vertical_auto_from_f(&maps[0], &spec).unwrap();
        assert!(v.report(2, DEFAULT_SEED).unwrap().passed());
    }

    #[test]
    fn base_gauge_map_of_y() {
        // f(Zⁿ) = yⁿ gives γ(Zⁿ) = ZⁿyⁿZ⁻ⁿ = q^(n²) yⁿ
        let spec = BundleSpec::from_model(&presets::load("trivial").unwrap(), 2).unwrap();
        let p = spec.total();
        let hp = spec.h_pres();
        let f = BasisLinearMap::from_element_fn(hp.clone(), p.clone(), 2, |w| {
            let y = if w.letters().first() == Some(&0) {
                "y"
            } else {
                "Y"
            };
            p.pow(&parse_element(y, p.gens()).unwrap(), w.degree())
        })
        .unwrap();
        let g = GaugeMap::new(f, spec.hopf()).unwrap();
        let gamma = gauge_to_base(&g, &spec).unwrap();
        let z2 = hp.gens().parse_word("Z^2").unwrap();
        assert_eq!(
            gamma.element_value(&z2).unwrap(),
            parse_element("q^4*y^2", p.gens()).unwrap()
        );
    }

    #[test]
    fn non_equivariant_f_is_rejected() {
        let spec = BundleSpec::from_model(&presets::load("trivial").unwrap(), 1).unwrap();
        let p = spec.total();
        let f = BasisLinearMap::from_element_fn(spec.h_pres().clone(), p.clone(), 1, |w| {
            parse_element(&w.render(spec.h_pres().gens()), p.gens())
        });
        // Z ↦ Z is not coinvariant, so id∗f is not vertical
        let g = GaugeMap::new(f.unwrap(), spec.hopf()).unwrap();
        assert!(vertical_auto_from_f(&g, &spec).is_err());
    }
}
