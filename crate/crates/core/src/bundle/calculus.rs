//! Differential structure on bundles: quotients `Ω¹P = Ω¹_U P / N` and
//! their compatibility with quotients `Ω¹H = ker ε / Q` through `χ`.

use std::collections::BTreeMap;

use super::BundleSpec;
use crate::diffcalc::{
    d_universal, right_ideal_closure, CalculusIdeal, ThreeDCalculus, UnivOneForm,
};
use crate::error::Result;
use crate::hopf::Tensor;
use crate::ncalg::linalg::{kernel, reduced_basis, span, SparseVec};
use crate::ncalg::{element_vec, NCElement, Presentation, Word};
use crate::report::Report;

/// Spanning set `u·dv` (`v ≠ 1`, `deg u + deg v <= degree`) of the
/// truncated universal one-forms.
pub fn universal_forms(p: &Presentation, degree: usize) -> Result<Vec<UnivOneForm>> {
    let basis = p.monomial_basis(degree);
    let mut out = Vec::new();
    for u in &basis {
        for v in &basis {
            if v.degree() == 0 || u.degree() + v.degree() > degree {
                continue;
            }
            let dv = d_universal(&NCElement::word(v.clone()));
            let t = dv.tensor().left_act(&NCElement::word(u.clone()), p)?;
            out.push(UnivOneForm::new(t, p)?);
        }
    }
    Ok(out)
}

fn form_vec(f: &crate::diffcalc::ThreeDForm) -> SparseVec<(usize, Word)> {
    let mut v = BTreeMap::new();
    for i in 0..3 {
        for (w, c) in f.coeff(i).terms() {
            v.insert((i, w.clone()), c.clone());
        }
    }
    v
}

/// `N` is the kernel of `Ω¹_U P → Ω¹_3D` in degree `<= degree`; `Q` is
/// spanned by the `H`-coefficients of `χ(N)`.
pub fn three_d_ideal(
    calc: &ThreeDCalculus,
    spec: &BundleSpec,
    degree: usize,
) -> Result<CalculusIdeal> {
    let p = spec.total();
    let forms = universal_forms(p, degree)?;
    let images = forms
        .iter()
        .map(|f| Ok(form_vec(&calc.reduce_universal(f)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut nvecs: Vec<SparseVec<Vec<Word>>> = Vec::new();
    for rel in kernel(&images) {
        let mut t = Tensor::zero(2);
        for (j, c) in rel {
            t.add_scaled(forms[j].tensor(), &c);
        }
        nvecs.push(t.as_map().clone());
    }
    let n: Vec<UnivOneForm> = reduced_basis(&nvecs)
        .into_iter()
        .map(|m| UnivOneForm::new(Tensor::from_map(2, m), p))
        .collect::<Result<_>>()?;
    let mut qvecs = Vec::new();
    for rho in &n {
        for (_, rest) in spec.chi(rho.tensor())?.split_on_leg(0) {
            qvecs.push(element_vec(&rest.to_element()));
        }
    }
    let q = reduced_basis(&qvecs)
        .into_iter()
        .map(NCElement::from_terms)
        .collect();
    CalculusIdeal::new(n, q, p, spec.hopf())
}

/// `Δ_R(N) ⊂ N⊗H` and `χ(N) ⊂ P⊗Q` within degree `<= degree`, where
/// `N` and `Q` are the truncated spans generated by `ideal`.
pub fn calculus_agreement_check(
    spec: &BundleSpec,
    ideal: &CalculusIdeal,
    degree: usize,
) -> Result<Report> {
    let p = spec.total();
    let hp = spec.h_pres();
    let mut rep = Report::new("calculus on the bundle");
    let nspan = span(&bimodule_closure(ideal, p, degree)?);
    let qspan = right_ideal_closure(&ideal.q, hp, degree)?;
    let (mut cov, mut chi) = (None, None);
    for (k, rho) in ideal.n.iter().enumerate() {
        if cov.is_none() {
            let d = spec.comodule().coaction_tensor(rho.tensor())?;
            for (hw, rest) in d.split_on_leg(2) {
                if !nspan.contains(rest.as_map()) {
                    cov = Some(format!(
                        "generator {k}, H-component {}",
                        hw.render(hp.gens())
                    ));
                    break;
                }
            }
        }
        if chi.is_none() {
            for (pw, rest) in spec.chi(rho.tensor())?.split_on_leg(0) {
                if !qspan.contains(&element_vec(&rest.to_element())) {
                    chi = Some(format!(
                        "generator {k}, P-component {}",
                        pw.render(p.gens())
                    ));
                    break;
                }
            }
        }
    }
    let n = format!(
        "{} generators of N, dim Q = {}",
        ideal.n.len(),
        qspan.rank()
    );
    rep.check(
        "bundle.calculus.covariant",
        "Δ_R N ⊂ N⊗H",
        degree,
        cov.is_none(),
        cov.unwrap_or_else(|| n.clone()),
    );
    rep.check(
        "bundle.calculus.chi",
        "χ(N) ⊂ P⊗Q",
        degree,
        chi.is_none(),
        chi.unwrap_or(n),
    );
    Ok(rep)
}

/// `P·N·P` truncated at `degree`, as coefficient vectors.
fn bimodule_closure(
    ideal: &CalculusIdeal,
    p: &Presentation,
    degree: usize,
) -> Result<Vec<SparseVec<Vec<Word>>>> {
    let basis = p.monomial_basis(degree);
    let mut out = Vec::new();
    for rho in &ideal.n {
        let t = rho.tensor();
        let room = degree.saturating_sub(t.max_total_degree());
        for u in basis.iter().filter(|w| w.degree() <= room) {
            let left = t.left_act(&NCElement::word(u.clone()), p)?;
            for v in basis.iter().filter(|w| u.degree() + w.degree() <= room) {
                out.push(
                    left.right_act(&NCElement::word(v.clone()), p)?
                        .as_map()
                        .clone(),
                );
            }
        }
    }
    Ok(out)
}

/// `χ(ρ)` with its `H` leg reduced modulo the right ideal generated by
/// `ideal.q`, truncated at `degree`.
pub fn chi_n(
    spec: &BundleSpec,
    ideal: &CalculusIdeal,
    rho: &Tensor,
    degree: usize,
) -> Result<Tensor> {
    let hp = spec.h_pres();
    let qspan = right_ideal_closure(&ideal.q, hp, degree)?;
    let mut out = Tensor::zero(2);
    for (pw, rest) in spec.chi(rho)?.split_on_leg(0) {
        let (res, _) = qspan.reduce(&element_vec(&rest.to_element()));
        for (hw, c) in res {
            out.add_term(vec![pw.clone(), hw], &c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn three_d_ideal_agrees_with_the_coaction() {
        let spec = BundleSpec::from_model(&presets::load("suq2").unwrap(), 2).unwrap();
        let calc = ThreeDCalculus::new(spec.total().clone()).unwrap();
        let ideal = three_d_ideal(&calc, &spec, 2).unwrap();
        assert!(!ideal.n.is_empty());
        let rep = calculus_agreement_check(&spec, &ideal, 2).unwrap();
        assert!(rep.passed(), "{}", rep.render_text());
        for rho in &ideal.n {
            assert!(calc.reduce_universal(rho).unwrap().is_zero());
            assert!(chi_n(&spec, &ideal, rho.tensor(), 2).unwrap().is_zero());
        }
        // d_U(a) survives in the quotient
        let a = NCElement::word(spec.total().gens().parse_word("a").unwrap());
        assert!(!calc.reduce_universal(&d_universal(&a)).unwrap().is_zero());
    }
}
