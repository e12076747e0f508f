use super::{ConnectionForm, ConnectionMode, Curvature, GaugeMap};
use crate::bundle::{chi_n, universal_forms, BundleSpec, EXACT_SLACK};
use crate::diffcalc::{d_envelope, d_universal, right_ideal_closure, ThreeDCalculus, ThreeDForm};
use crate::error::{Error, Result};
use crate::hopf::{convolve, is_unital_algebra_map, BasisLinearMap, Tensor};
use crate::ncalg::linalg::{span, SparseVec};
use crate::ncalg::{element_vec, NCElement, Word};
use crate::presets;
use crate::qscalar::{monopole_coefficient, QRat};
use crate::report::Report;
use num_rational::BigRational;

fn d_map(f: &BasisLinearMap) -> Result<BasisLinearMap> {
    f.map_values(2, |_, t| Ok(d_universal(&t.to_element()).into_tensor()))
}

/// `1⊗(a − ε(a))`.
fn vertical_target(spec: &BundleSpec, a: &Word) -> Result<Tensor> {
    let mut t = Tensor::pure(vec![Word::one(), a.clone()], QRat::one());
    t.add_term(
        vec![Word::one(), Word::one()],
        &-spec.hopf().counit_word(a)?,
    );
    Ok(t)
}

/// The three properties of a connection form on the `H`-basis of degree
/// `<= degree`: `ω(1) = 0`, `χω(a) = 1⊗(a − ε(a))` and
/// `Δ_R∘ω = (ω⊗id)∘Ad_R`.
pub fn connection_check(
    omega: &ConnectionForm,
    spec: &BundleSpec,
    degree: usize,
) -> Result<Report> {
    let d = degree.min(omega.degree());
    let h = spec.hopf();
    let hp = spec.h_pres();
    let p = spec.total();
    let g2 = [p.gens(), hp.gens()];
    let mode = match omega.mode() {
        ConnectionMode::Universal => "universal",
        ConnectionMode::ThreeD => "3D",
    };
    let mut rep = Report::new(format!("connection form ({mode})"));
    let w1 = omega.value(&Word::one())?;
    rep.check(
        "connection.unital",
        "ω(1) = 0",
        d,
        w1.is_zero(),
        w1.render_uniform(p.gens()),
    );

    let basis = hp.monomial_basis(d);
    let (mut chi_bad, mut eq_bad) = (None, None);
    for a in &basis {
        let w = omega.value(a)?;
        let an = a.render(hp.gens());
        if chi_bad.is_none() {
            let lhs = spec.chi(w)?;
            if lhs != vertical_target(spec, a)? {
                chi_bad = Some(format!("χω({an}) = {}", lhs.render(&g2)));
            }
        }
        if eq_bad.is_none() {
            let lhs = spec.comodule().coaction_tensor(w)?;
            let ad = h.adjoint_coaction(&NCElement::word(a.clone()))?;
            let rhs = ad.replace_leg(0, 2, |x| omega.value(x).cloned())?;
            if lhs != rhs {
                eq_bad = Some(format!("a = {an}"));
            }
        }
    }
    let n = format!("{} basis elements", basis.len());
    rep.check(
        "connection.chi",
        "χω(a) = 1⊗(a − ε(a))",
        d,
        chi_bad.is_none(),
        chi_bad.unwrap_or_else(|| n.clone()),
    );
    rep.check(
        "connection.equivariant",
        "Δ_R ω = (ω⊗id)Ad_R",
        d,
        eq_bad.is_none(),
        eq_bad.unwrap_or(n),
    );

    if omega.mode() == ConnectionMode::ThreeD {
        match spec.ideal().filter(|i| !i.q.is_empty()) {
            Some(ideal) => {
                let qspan = right_ideal_closure(&ideal.q, hp, d)?;
                let mut bad = None;
                for a in &basis {
                    let lhs = chi_n(spec, ideal, omega.value(a)?, d)?;
                    let mut x = NCElement::word(a.clone());
                    x.add_term(Word::one(), &-h.counit_word(a)?);
                    let (res, _) = qspan.reduce(&element_vec(&x));
                    let mut rhs = Tensor::zero(2);
                    for (w, c) in res {
                        rhs.add_term(vec![Word::one(), w], &c);
                    }
                    if lhs != rhs {
                        bad = Some(format!("a = {}", a.render(hp.gens())));
                        break;
                    }
                }
                rep.check(
                    "connection.3d.chi",
                    "χ_N ω(a) = 1⊗π_Q(a − ε(a))",
                    d,
                    bad.is_none(),
                    bad.unwrap_or_default(),
                );
            }
            None => rep.info(
                "connection.3d.chi",
                "χ_N ω(a) = 1⊗π_Q(a − ε(a))",
                d,
                "property 2: certified in universal mode only",
            ),
        }
    }
    Ok(rep)
}

/// `Π = m∘(id⊗ω)∘χ` on `Ω¹P`.
pub struct Projection<'a> {
    omega: &'a ConnectionForm,
    spec: &'a BundleSpec,
}

pub fn projection_from_omega<'a>(
    omega: &'a ConnectionForm,
    spec: &'a BundleSpec,
) -> Projection<'a> {
    Projection { omega, spec }
}

impl Projection<'_> {
    pub fn apply(&self, rho: &Tensor) -> Result<Tensor> {
        let chi = self.spec.chi(rho)?;
        chi.replace_leg(1, 2, |a| self.omega.value(a).cloned())?
            .merge_legs(0, self.spec.total())
    }

    /// `(id − Π)ρ`.
    pub fn horizontal_part(&self, rho: &Tensor) -> Result<Tensor> {
        Ok(rho.sub(&self.apply(rho)?))
    }

    /// Projection laws on the spanning forms `u·dv` of degree `<= degree`.
    pub fn report(&self, degree: usize) -> Result<Report> {
        let spec = self.spec;
        let p = spec.total();
        let hp = spec.h_pres();
        let ca = spec.comodule();
        let render = |t: &Tensor| t.render_uniform(p.gens());
        let mut rep = Report::new("projection Π = m(id⊗ω)χ");
        let forms = universal_forms(p, degree)?;
        let (mut idem, mut equi, mut chi) = (None, None, None);
        let mut horizontal = Vec::with_capacity(forms.len());
        for f in &forms {
            let rho = f.tensor();
            let pr = self.apply(rho)?;
            if idem.is_none() && self.apply(&pr)? != pr {
                idem = Some(render(rho));
            }
            if equi.is_none() {
                let lhs = ca.coaction_tensor(&pr)?;
                let mut rhs = Tensor::zero(3);
                for (hw, rest) in ca.coaction_tensor(rho)?.split_on_leg(2) {
                    for (legs, c) in self.apply(&rest)?.terms() {
                        rhs.add_term(vec![legs[0].clone(), legs[1].clone(), hw.clone()], c);
                    }
                }
                if lhs != rhs {
                    equi = Some(render(rho));
                }
            }
            if chi.is_none() && spec.chi(&pr)? != spec.chi(rho)? {
                chi = Some(render(rho));
            }
            horizontal.push(rho.sub(&pr));
        }
        let n = format!("{} spanning forms", forms.len());
        rep.check(
            "projection.idempotent",
            "Π∘Π = Π",
            degree,
            idem.is_none(),
            idem.unwrap_or_else(|| n.clone()),
        );
        rep.check(
            "projection.equivariant",
            "Δ_R Π = (Π⊗id)Δ_R",
            degree,
            equi.is_none(),
            equi.unwrap_or_else(|| n.clone()),
        );
        rep.check(
            "projection.chi",
            "χΠ = χ",
            degree,
            chi.is_none(),
            chi.unwrap_or_else(|| n.clone()),
        );

        let top = horizontal
            .iter()
            .map(Tensor::max_total_degree)
            .max()
            .unwrap_or(0)
            + EXACT_SLACK;
        let hspan = span(&spec.horizontal_span(top)?);
        let bad = horizontal.iter().find(|x| !hspan.contains(x.as_map()));
        rep.check(
            "projection.complement_horizontal",
            "(id − Π)ρ ∈ P(dB)P",
            degree,
            bad.is_none(),
            bad.map(render)
                .unwrap_or_else(|| format!("{n}, horizontal span built to degree {top}")),
        );

        let mut bad = None;
        for b in spec.coinvariants(degree)? {
            if b.as_scalar().is_none() && !self.apply(d_universal(&b).tensor())?.is_zero() {
                bad = Some(p.render(&b));
                break;
            }
        }
        rep.check(
            "projection.kills_db",
            "Π(db) = 0 for b ∈ B",
            degree,
            bad.is_none(),
            bad.unwrap_or_default(),
        );

        let (mut fixed, mut recover) = (None, None);
        for a in hp.monomial_basis(degree.min(self.omega.degree())) {
            let w = self.omega.value(&a)?;
            let an = a.render(hp.gens());
            if fixed.is_none() && self.apply(w)? != *w {
                fixed = Some(an.clone());
            }
            if recover.is_none() {
                let mut lift = spec.translation_map(&NCElement::word(a.clone()))?;
                lift.add_term(
                    vec![Word::one(), Word::one()],
                    &-spec.hopf().counit_word(&a)?,
                );
                if self.apply(&lift)? != *w {
                    recover = Some(an);
                }
            }
        }
        rep.check(
            "projection.fixes_omega",
            "Π(ω(a)) = ω(a)",
            degree,
            fixed.is_none(),
            fixed.unwrap_or_default(),
        );
        rep.check(
            "projection.recovers_omega",
            "ω(a) = Π(τ(a) − ε(a)1⊗1)",
            degree,
            recover.is_none(),
            recover.unwrap_or_default(),
        );
        Ok(rep)
    }
}

/// Spanning set of `(Ω¹B)P`: `b·d(b')·u` with total degree `<= top`.
fn base_forms_times_p(spec: &BundleSpec, top: usize) -> Result<Vec<SparseVec<Vec<Word>>>> {
    let p = spec.total();
    let coinv = spec.coinvariants(top)?;
    let pbasis = p.monomial_basis(top);
    let mut out = Vec::new();
    for b in &coinv {
        for b2 in coinv.iter().filter(|x| x.as_scalar().is_none()) {
            let used = b.max_degree() + b2.max_degree();
            if used > top {
                continue;
            }
            let base = d_universal(b2).tensor().left_act(b, p)?;
            for u in pbasis.iter().filter(|u| used + u.degree() <= top) {
                let t = base.right_act(&NCElement::word(u.clone()), p)?;
                if !t.is_zero() {
                    out.push(t.as_map().clone());
                }
            }
        }
    }
    Ok(out)
}

/// `(id − Π)du ∈ (Ω¹B)P` for every `P`-basis word `u` of degree `<= degree`.
pub fn strongness_check(
    omega: &ConnectionForm,
    spec: &BundleSpec,
    degree: usize,
) -> Result<Report> {
    let p = spec.total();
    let proj = projection_from_omega(omega, spec);
    let mut targets = Vec::new();
    for u in p.monomial_basis(degree) {
        if u.degree() == 0 {
            continue;
        }
        let x = proj.horizontal_part(d_universal(&NCElement::word(u.clone())).tensor())?;
        targets.push((u, x));
    }
    let top = targets
        .iter()
        .map(|(_, x)| x.max_total_degree())
        .max()
        .unwrap_or(0)
        + EXACT_SLACK;
    let ech = span(&base_forms_times_p(spec, top)?);
    let bad = targets.iter().find(|(_, x)| !ech.contains(x.as_map()));
    let mut rep = Report::new("strong connection");
    rep.check(
        "connection.strong",
        "(id − Π)dP ⊂ (Ω¹B)P",
        degree,
        bad.is_none(),
        match bad {
            Some((u, _)) => format!("u = {}", u.render(p.gens())),
            None => format!("{} words, (Ω¹B)P built to degree {top}", targets.len()),
        },
    );
    Ok(rep)
}

fn insert_unit_after(t: &Tensor, i: usize) -> Result<Tensor> {
    t.replace_leg(i, 2, |w| {
        Ok(Tensor::pure(vec![w.clone(), Word::one()], QRat::one()))
    })
}

/// `ω = Φ⁻¹∗β∗Φ + Φ⁻¹∗dΦ` for `β : H → Ω¹B` with `β(1) = 0`.
pub fn trivial_connection(spec: &BundleSpec, beta: &BasisLinearMap) -> Result<ConnectionForm> {
    let tr = spec
        .trivialisation()
        .ok_or_else(|| Error::Hypothesis("trivial connection needs a trivialisation".into()))?;
    let p = spec.total();
    let hp = spec.h_pres();
    if !beta
        .value(&Word::one())
        .map(Tensor::is_zero)
        .unwrap_or(true)
    {
        return Err(Error::Hypothesis("β(1) ≠ 0".into()));
    }
    for (a, t) in beta.values() {
        let in_b = (0..2).all(|i| {
            matches!(
                (spec.comodule().coaction_on_leg(t, i), insert_unit_after(t, i)),
                (Ok(x), Ok(y)) if x == y
            )
        });
        if !in_b || !t.multiply_out(p)?.is_zero() {
            return Err(Error::Hypothesis(format!(
                "β({}) is not in Ω¹B",
                a.render(hp.gens())
            )));
        }
    }
    let h = spec.hopf();
    let w = convolve(&convolve(&tr.phi_inv, beta, h)?, &tr.phi, h)?.add(&convolve(
        &tr.phi_inv,
        &d_map(&tr.phi)?,
        h,
    )?);
    ConnectionForm::universal(w)
}

/// `β(a) = deg(a)·db` for a coinvariant `b`; `β(1) = 0`.
pub fn degree_beta(spec: &BundleSpec, b: &NCElement, degree: usize) -> Result<BasisLinearMap> {
    if !spec.comodule().is_coinvariant(b)? {
        return Err(Error::Hypothesis(format!(
            "{} is not coinvariant",
            spec.total().render(b)
        )));
    }
    let db = d_universal(b).into_tensor();
    BasisLinearMap::from_fn(
        spec.h_pres().clone(),
        spec.total().clone(),
        degree,
        2,
        |a| Ok(db.scale(&QRat::from_int(a.degree() as i64))),
    )
}

/// Representatives of `ω(a) = S(i(a)₍₁₎)·d(i(a)₍₂₎)` for a lift `i` of the
/// projection. The hypotheses `π∘i = id`, `ε∘i = ε` and
/// `(id⊗π)Ad_R∘i = (i⊗id)Ad_R` are errors when they fail; whether `i` is
/// multiplicative is only reported.
pub fn canonical_connection(
    spec: &BundleSpec,
    i: &BasisLinearMap,
) -> Result<(ConnectionForm, Report)> {
    let (ph, pi) = match (spec.total_hopf(), spec.projection()) {
        (Some(ph), Some(pi)) => (ph, pi),
        _ => {
            return Err(Error::Hypothesis(
                "canonical connection needs a Hopf projection".into(),
            ))
        }
    };
    let h = spec.hopf();
    let hp = spec.h_pres();
    let d = i.degree();
    for (a, v) in i.values() {
        let x = v.to_element();
        let an = a.render(hp.gens());
        if pi.apply(&x)?.to_element() != NCElement::word(a.clone()) {
            return Err(Error::Hypothesis(format!("π∘i ≠ id at {an}")));
        }
        if ph.counit(&x)? != h.counit_word(a)? {
            return Err(Error::Hypothesis(format!("ε∘i ≠ ε at {an}")));
        }
        let lhs = pi.apply_on_leg(&ph.adjoint_coaction(&x)?, 1)?;
        let rhs = i.apply_on_leg(&h.adjoint_coaction(&NCElement::word(a.clone()))?, 0)?;
        if lhs != rhs {
            return Err(Error::Hypothesis(format!(
                "(id⊗π)Ad_R i ≠ (i⊗id)Ad_R at {an}"
            )));
        }
    }
    let mut rep = Report::new("canonical connection");
    let n = format!("{} basis elements", i.values().count());
    rep.check(
        "connection.canonical.section",
        "π∘i = id",
        d,
        true,
        n.clone(),
    );
    rep.check("connection.canonical.counit", "ε∘i = ε", d, true, n.clone());
    rep.check(
        "connection.canonical.adjoint",
        "(id⊗π)Ad_R i = (i⊗id)Ad_R",
        d,
        true,
        n,
    );
    let mult = is_unital_algebra_map(i)?;
    rep.info(
        "connection.canonical.multiplicative",
        "i an algebra map",
        d,
        if mult {
            "i is multiplicative"
        } else {
            "i is not multiplicative on the truncated basis"
        },
    );
    let omega = BasisLinearMap::from_fn(hp.clone(), spec.total().clone(), d, 2, |a| {
        let x = i.element_value(a)?;
        let mut t = ph.antipode_on_leg(&ph.coproduct(&x)?, 0)?;
        t.add_term(vec![Word::one(), Word::one()], &-ph.counit(&x)?);
        Ok(t)
    })?;
    Ok((ConnectionForm::universal(omega)?, rep))
}

/// `ω(Zⁿ) = c(n)ω¹` with `c(n) = (q⁻²ⁿ − 1)/(q⁻² − 1)`.
pub fn monopole_omega(n: i64) -> (ThreeDForm, QRat) {
    let c = monopole_coefficient(n);
    (ThreeDForm::basis(1, NCElement::scalar(c.clone())), c)
}

/// Builds the canonical connection of the Hopf fibration from the lift
/// `Z ↦ a`, `Z⁻¹ ↦ d`, reduces it into the 3D calculus and compares with
/// [`monopole_omega`] for `|n| <= nmax`, together with the connection
/// properties, the cocycle identity of `c` and its value at `q = 1`.
pub fn monopole_report(nmax: usize) -> Result<Report> {
    let m = presets::load("suq2")?;
    let spec = BundleSpec::from_model(&m, nmax)?;
    let p = spec.total().clone();
    let hp = spec.h_pres().clone();
    let imap = m.algebra_map("i")?;
    let i = BasisLinearMap::from_fn(hp.clone(), p.clone(), nmax, 1, |w| imap.apply_word(w))?;
    let calc = ThreeDCalculus::new(p.clone())?;
    let (conn, hyp) = canonical_connection(&spec, &i)?;
    let conn = conn.with_three_d(&calc)?;
    let mut rep = Report::new("q-monopole");
    rep.extend(hyp);
    let z = hp.gens().generator("Z")?;
    let zi = hp.gens().generator("Zi")?;
    let k = nmax as i64;
    for n in -k..=k {
        let w = if n >= 0 {
            z.pow(n as usize)
        } else {
            zi.pow((-n) as usize)
        };
        let got = conn
            .three_d_value(&w)
            .cloned()
            .unwrap_or_else(ThreeDForm::zero);
        let (want, c) = monopole_omega(n);
        rep.check(
            format!("monopole.omega.n{n}"),
            "ω(Zⁿ) = c(n)ω¹",
            w.degree(),
            got == want,
            format!("ω({}) = {}; c = {}", w.render(hp.gens()), got.render(&p), c),
        );
    }
    let mut bad = None;
    for a in -k..=k {
        for b in -k..=k {
            let lhs = monopole_coefficient(a + b);
            let rhs = &monopole_coefficient(a) + &(&QRat::q_pow(-2 * a) * &monopole_coefficient(b));
            if lhs != rhs && bad.is_none() {
                bad = Some(format!("m = {a}, n = {b}"));
            }
        }
    }
    rep.check(
        "monopole.cocycle",
        "c(m+n) = c(m) + q^(-2m) c(n)",
        nmax,
        bad.is_none(),
        bad.unwrap_or_else(|| format!("|m|, |n| <= {nmax}")),
    );
    let one = BigRational::from_integer(1.into());
    let mut bad = None;
    for n in -k..=k {
        if monopole_coefficient(n).evaluate(&one)? != BigRational::from_integer(n.into()) {
            bad = Some(format!("n = {n}"));
            break;
        }
    }
    rep.check(
        "monopole.classical_limit",
        "c(n)|_{q=1} = n",
        nmax,
        bad.is_none(),
        bad.unwrap_or_else(|| "charge n".into()),
    );
    rep.extend(connection_check(&conn, &spec, nmax)?);
    rep.extend(calc.consistency_report(2)?);
    Ok(rep)
}

fn curvature_map(omega: &BasisLinearMap, spec: &BundleSpec) -> Result<BasisLinearMap> {
    let dw = omega.map_values(3, |_, t| Ok(d_envelope(t)))?;
    Ok(dw.add(&convolve(omega, omega, spec.hopf())?))
}

/// `F = dω + ω∗ω` on the `H`-basis of degree `<= degree`, with a warning
/// when `ω` fails the strongness check.
pub fn curvature(omega: &ConnectionForm, spec: &BundleSpec, degree: usize) -> Result<Curvature> {
    let w = omega.map().restrict(degree.min(omega.degree()));
    let map = curvature_map(&w, spec)?;
    let strong = strongness_check(omega, spec, degree)?;
    let warning = strong
        .failures()
        .next()
        .map(|r| format!("connection is not strong: {}", r.witness));
    Ok(Curvature { map, warning })
}

/// For `ω = Φ⁻¹∗β∗Φ + Φ⁻¹∗dΦ`: the connection properties and
/// `F = Φ⁻¹∗(dβ + β∗β)∗Φ` on every basis element.
pub fn trivial_curvature_report(
    spec: &BundleSpec,
    beta: &BasisLinearMap,
    degree: usize,
) -> Result<Report> {
    let tr = spec
        .trivialisation()
        .ok_or_else(|| Error::Hypothesis("trivial connection needs a trivialisation".into()))?;
    let h = spec.hopf();
    let omega = trivial_connection(spec, &beta.restrict(degree.min(beta.degree())))?;
    let mut rep = Report::new("trivial bundle connection");
    rep.extend(connection_check(&omega, spec, degree)?);
    rep.extend(projection_from_omega(&omega, spec).report(degree)?);
    rep.extend(strongness_check(&omega, spec, degree)?);
    let f = curvature_map(omega.map(), spec)?;
    let b = beta.restrict(f.degree());
    let inner = b
        .map_values(3, |_, t| Ok(d_envelope(t)))?
        .add(&convolve(&b, &b, h)?);
    let expect = convolve(&convolve(&tr.phi_inv, &inner, h)?, &tr.phi, h)?;
    let hp = spec.h_pres();
    let bad = f
        .values()
        .find(|(a, t)| expect.value(a) != Some(*t))
        .map(|(a, _)| a.render(hp.gens()));
    rep.check(
        "connection.curvature.trivial",
        "F = Φ⁻¹∗(dβ + β∗β)∗Φ",
        f.degree(),
        bad.is_none(),
        bad.unwrap_or_else(|| format!("{} basis elements", f.values().count())),
    );
    let f1 = f.apply_word(&Word::one())?;
    rep.check(
        "connection.curvature.unital",
        "F(1) = 0",
        f.degree(),
        f1.is_zero(),
        f1.render_uniform(spec.total().gens()),
    );
    Ok(rep)
}

/// `ω^f = f⁻¹∗ω∗f + f⁻¹∗df`.
pub fn gauge_transform_connection(
    omega: &ConnectionForm,
    f: &GaugeMap,
    spec: &BundleSpec,
) -> Result<ConnectionForm> {
    let h = spec.hopf();
    let w = convolve(&convolve(f.inverse(), omega.map(), h)?, f.map(), h)?.add(&convolve(
        f.inverse(),
        &d_map(f.map())?,
        h,
    )?);
    ConnectionForm::universal(w)
}

/// `ω^f` is again a connection, strong when `ω` is, with curvature
/// `f⁻¹∗F∗f`.
pub fn gauge_covariance_report(
    omega: &ConnectionForm,
    f: &GaugeMap,
    spec: &BundleSpec,
    degree: usize,
) -> Result<Report> {
    let h = spec.hopf();
    let wf = gauge_transform_connection(omega, f, spec)?;
    let mut rep = Report::new("gauge transformation of a connection");
    let cc = connection_check(&wf, spec, degree)?;
    let bad = cc
        .failures()
        .next()
        .map(|r| format!("{}: {}", r.id, r.witness));
    rep.check(
        "gauge.covariance.connection",
        "ω^f is a connection",
        degree,
        bad.is_none(),
        bad.unwrap_or_default(),
    );
    let strong = strongness_check(omega, spec, degree)?.passed();
    let strong_f = strongness_check(&wf, spec, degree)?.passed();
    rep.check(
        "gauge.covariance.strong",
        "ω strong ⇒ ω^f strong",
        degree,
        !strong || strong_f,
        format!("ω strong: {strong}, ω^f strong: {strong_f}"),
    );
    let d = degree.min(omega.degree()).min(f.degree());
    let big_f = curvature_map(&omega.map().restrict(d), spec)?;
    let lhs = curvature_map(&wf.map().restrict(d), spec)?;
    let rhs = convolve(
        &convolve(&f.inverse().restrict(d), &big_f, h)?,
        &f.map().restrict(d),
        h,
    )?;
    let bad = lhs
        .values()
        .find(|(a, t)| rhs.value(a) != Some(*t))
        .map(|(a, _)| a.render(spec.h_pres().gens()));
    rep.check(
        "gauge.covariance.curvature",
        "F(ω^f) = f⁻¹∗F(ω)∗f",
        d,
        bad.is_none(),
        bad.unwrap_or_else(|| format!("{} basis elements", lhs.values().count())),
    );
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_element;

    fn trivial(d: usize) -> BundleSpec {
        BundleSpec::from_model(&presets::load("trivial").unwrap(), d).unwrap()
    }

    #[test]
    fn trivial_connection_laws() {
        let spec = trivial(2);
        let y = parse_element("y", spec.total().gens()).unwrap();
        let beta = degree_beta(&spec, &y, 2).unwrap();
        let rep = trivial_curvature_report(&spec, &beta, 2).unwrap();
        assert!(rep.passed(), "{}", rep.render_text());
        // β(1) ≠ 0 is rejected
        let bad = beta
            .map_values(2, |_, t| Ok(t.add(&d_universal(&y).into_tensor())))
            .unwrap();
        assert!(trivial_connection(&spec, &bad).is_err());
    }

    #[test]
    fn flat_connection_has_zero_curvature() {
        let spec = trivial(2);
        let zero = BasisLinearMap::zero(spec.h_pres().clone(), spec.total().clone(), 2, 2);
        let omega = trivial_connection(&spec, &zero).unwrap();
        let f = curvature(&omega, &spec, 2).unwrap();
        assert!(f.map.is_zero());
        assert!(f.warning.is_none());
        let z = spec.h_pres().gens().parse_word("Z").unwrap();
        // Φ⁻¹(Z)dΦ(Z) = Zi(x)Z − 1(x)1
        assert_eq!(
            omega.value(&z).unwrap().render_uniform(spec.total().gens()),
            "-1(x)1 + Zi(x)Z"
        );
    }

    #[test]
    fn zero_map_is_not_a_connection() {
        let spec = trivial(1);
        let zero = BasisLinearMap::zero(spec.h_pres().clone(), spec.total().clone(), 1, 2);
        let rep = connection_check(&ConnectionForm::universal(zero).unwrap(), &spec, 1).unwrap();
        assert_eq!(
            rep.find("connection.unital").unwrap().status,
            crate::report::Status::Pass
        );
        assert_eq!(
            rep.find("connection.chi").unwrap().status,
            crate::report::Status::Fail
        );
    }

    #[test]
    fn monopole_values() {
        let (f, c) = monopole_omega(1);
        assert_eq!(f, ThreeDForm::unit(1));
        assert!(c.is_one());
        assert!(monopole_omega(0).0.is_zero());
        let rep = monopole_report(2).unwrap();
        assert!(rep.passed(), "{}", rep.render_text());
        assert_eq!(
            rep.find("connection.3d.chi").unwrap().status,
            crate::report::Status::Info
        );
    }

    #[test]
    fn canonical_connection_on_the_fibration() {
        let m = presets::load("suq2").unwrap();
        let spec = BundleSpec::from_model(&m, 1).unwrap();
        let imap = m.algebra_map("i").unwrap();
        let i = BasisLinearMap::from_fn(spec.h_pres().clone(), spec.total().clone(), 1, 1, |w| {
            imap.apply_word(w)
        })
        .unwrap();
        let (conn, _) = canonical_connection(&spec, &i).unwrap();
        let z = spec.h_pres().gens().parse_word("Z").unwrap();
        let g = [spec.total().gens(), spec.h_pres().gens()];
        assert_eq!(
            spec.chi(conn.value(&z).unwrap()).unwrap().render(&g),
            "-1(x)1 + 1(x)Z"
        );
        // a lift that misses π∘i = id is rejected
        let bad = BasisLinearMap::from_fn(spec.h_pres().clone(), spec.total().clone(), 1, 1, |w| {
            Ok(if w.degree() == 0 {
                Tensor::unit(1)
            } else {
                Tensor::zero(1)
            })
        })
        .unwrap();
        let err = canonical_connection(&spec, &bad).unwrap_err();
        assert!(err.to_string().contains("π∘i ≠ id"), "{err}");
    }
}
