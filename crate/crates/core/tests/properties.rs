//! Property suites for the algebraic invariants.

use std::sync::Arc;

use num_rational::BigRational;
use proptest::prelude::*;
use qfibre::bundle::BundleSpec;
use qfibre::cli::{run_command, CheckTarget, Command, SessionConfig};
use qfibre::diffcalc::{bimodule_action, d_universal, Side, ThreeDCalculus, ThreeDForm};
use qfibre::dsl::{parse, Model};
use qfibre::gauge::{gauge_group_report, sample_gauge_maps};
use qfibre::hopf::{convolve, BasisLinearMap, Tensor};
use qfibre::ncalg::{NCElement, Presentation, Word};
use qfibre::presets;
use qfibre::qscalar::{monopole_coefficient, QRat};
use qfibre::report::Format;

fn qrat() -> impl Strategy<Value = QRat> {
    let laurent = (-3i64..=3, prop::collection::vec(-4i64..=4, 1..4));
    (laurent.clone(), laurent).prop_map(|((l1, c1), (l2, c2))| {
        let den = QRat::laurent(l2, &c2);
        let den = if den.is_zero() { QRat::one() } else { den };
        &QRat::laurent(l1, &c1) / &den
    })
}

fn coeff() -> impl Strategy<Value = QRat> {
    (-3i64..=3, -2i64..=2).prop_map(|(c, k)| &QRat::from_int(c) * &QRat::q_pow(k))
}

/// Sums of arbitrary (unreduced) words over the generators of `SUq2`.
fn raw_element() -> impl Strategy<Value = Vec<(Vec<u32>, QRat)>> {
    prop::collection::vec((prop::collection::vec(0u32..4, 0..5), coeff()), 1..4)
}

fn element(terms: &[(Vec<u32>, QRat)]) -> NCElement {
    let mut x = NCElement::zero();
    for (w, c) in terms {
        x.add_term(Word(w.clone()), c);
    }
    x
}

fn suq2() -> (Model, Arc<Presentation>) {
    let m = presets::load("suq2").unwrap();
    let p = m.algebra("SUq2").unwrap();
    (m, p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn q_scalars_form_a_field(a in qrat(), b in qrat(), c in qrat()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn normalize_is_idempotent(a in qrat()) {
        let again = QRat::normalize(a.numerator().clone(), a.denominator().clone(), 0).unwrap();
        prop_assert_eq!(again, a);
    }

    #[test]
    fn monopole_coefficient_is_a_geometric_sum(n in 1i64..12, m in -5i64..=5, k in -5i64..=5) {
        let mut sum = QRat::zero();
        for j in 0..n {
            sum = &sum + &QRat::q_pow(-2 * j);
        }
        prop_assert_eq!(monopole_coefficient(n), sum);
        prop_assert_eq!(
            monopole_coefficient(n).evaluate(&BigRational::from_integer(1.into())).unwrap(),
            BigRational::from_integer(n.into())
        );
        let rhs = &monopole_coefficient(m) + &(&QRat::q_pow(-2 * m) * &monopole_coefficient(k));
        prop_assert_eq!(monopole_coefficient(m + k), rhs);
    }

    #[test]
    fn reduce_is_a_projection(t in raw_element()) {
        let (_, p) = suq2();
        let x = p.reduce(&element(&t)).unwrap();
        prop_assert_eq!(p.reduce(&x).unwrap(), x.clone());
        prop_assert!(x.terms().all(|(w, _)| p.is_irreducible(w)));
    }

    #[test]
    fn multiplication_is_associative(i in 0usize..1000, j in 0usize..1000, k in 0usize..1000) {
        let (_, p) = suq2();
        let basis = p.monomial_basis(3);
        let pick = |n: usize| NCElement::word(basis[n % basis.len()].clone());
        let (u, v, w) = (pick(i), pick(j), pick(k));
        let l = p.multiply(&p.multiply(&u, &v).unwrap(), &w).unwrap();
        let r = p.multiply(&u, &p.multiply(&v, &w).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn adjoint_coaction_has_the_counit_property(t in raw_element()) {
        let (m, p) = suq2();
        let h = m.hopf("SUq2").unwrap();
        let x = p.reduce(&element(&t)).unwrap();
        let ad = h.adjoint_coaction(&x).unwrap();
        prop_assert_eq!(h.counit_on_leg(&ad, 1).unwrap().to_element(), x);
    }

    #[test]
    fn universal_forms_stay_in_ker_m(t in raw_element(), s in raw_element(), u in raw_element()) {
        let (_, p) = suq2();
        let rho = d_universal(&p.reduce(&element(&t)).unwrap());
        let rho = bimodule_action(&p.reduce(&element(&s)).unwrap(), &rho, Side::Left, &p).unwrap();
        let rho = bimodule_action(&p.reduce(&element(&u)).unwrap(), &rho, Side::Right, &p).unwrap();
        prop_assert!(rho.tensor().multiply_out(&p).unwrap().is_zero());
    }

    #[test]
    fn universal_d_is_a_derivation(i in 0usize..1000, j in 0usize..1000) {
        let (_, p) = suq2();
        let basis = p.monomial_basis(3);
        let u = NCElement::word(basis[i % basis.len()].clone());
        let v = NCElement::word(basis[j % basis.len()].clone());
        let lhs = d_universal(&p.multiply(&u, &v).unwrap());
        let rhs = bimodule_action(&v, &d_universal(&u), Side::Right, &p)
            .unwrap()
            .add(&bimodule_action(&u, &d_universal(&v), Side::Left, &p).unwrap());
        prop_assert_eq!(lhs.tensor(), rhs.tensor());
    }

    #[test]
    fn three_d_reduction_of_basis_forms(t in raw_element(), i in 0usize..3) {
        let (_, p) = suq2();
        let calc = ThreeDCalculus::new(p.clone()).unwrap();
        let x = p.reduce(&element(&t)).unwrap();
        let form = bimodule_action(&x, &calc.omega_universal(i).unwrap(), Side::Left, &p).unwrap();
        prop_assert_eq!(calc.reduce_universal(&form).unwrap(), ThreeDForm::basis(i, x));
    }

    #[test]
    fn chi_is_left_linear(i in 0usize..1000, j in 0usize..1000, k in 0usize..1000) {
        let (m, p) = suq2();
        let spec = BundleSpec::from_model(&m, 2).unwrap();
        let basis = p.monomial_basis(2);
        let w = |n: usize| basis[n % basis.len()].clone();
        let x = Tensor::pure(vec![w(j), w(k)], QRat::one());
        let u = NCElement::word(w(i));
        let lhs = spec.chi(&x.left_act(&u, &p).unwrap()).unwrap();
        let rhs = spec.chi(&x).unwrap().left_act(&u, &p).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

fn linear_map(
    h: &Arc<Presentation>,
    p: &Arc<Presentation>,
    picks: &[(usize, i64)],
) -> BasisLinearMap {
    let pb = p.monomial_basis(2);
    let hb = h.monomial_basis(2);
    BasisLinearMap::from_element_fn(h.clone(), p.clone(), 2, |w| {
        let k = hb.iter().position(|x| x == w).unwrap();
        let (idx, c) = picks[k % picks.len()];
        let mut out = NCElement::word(pb[idx % pb.len()].clone()).scale(&QRat::from_int(c));
        if w.is_one() {
            out = NCElement::one();
        }
        Ok(out)
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn convolution_is_associative_with_unit(
        f in prop::collection::vec((0usize..40, -3i64..=3), 5),
        g in prop::collection::vec((0usize..40, -3i64..=3), 5),
        k in prop::collection::vec((0usize..40, -3i64..=3), 5),
    ) {
        let spec = BundleSpec::from_model(&presets::load("trivial").unwrap(), 2).unwrap();
        let (h, p) = (spec.hopf(), spec.total());
        let (f, g, k) = (linear_map(spec.h_pres(), p, &f), linear_map(spec.h_pres(), p, &g), linear_map(spec.h_pres(), p, &k));
        let l = convolve(&convolve(&f, &g, h).unwrap(), &k, h).unwrap();
        let r = convolve(&f, &convolve(&g, &k, h).unwrap(), h).unwrap();
        prop_assert_eq!(l, r);
        let unit = h.unit_counit_map(p.clone(), 2).unwrap();
        prop_assert_eq!(convolve(&f, &unit, h).unwrap(), f.clone());
        prop_assert_eq!(convolve(&unit, &f, h).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn sampled_gauge_groups_satisfy_the_group_laws(seed in any::<u64>()) {
        let spec = BundleSpec::from_model(&presets::load("trivial").unwrap(), 2).unwrap();
        let p = spec.total();
        let y = NCElement::word(p.gens().generator("y").unwrap());
        let yi = NCElement::word(p.gens().generator("Y").unwrap());
        let maps = sample_gauge_maps(&spec, &y, &yi, 2, seed, 3).unwrap();
        let rep = gauge_group_report(&spec, &maps, 2, seed).unwrap();
        prop_assert!(rep.passed(), "{}", rep.render_text());
    }

    #[test]
    fn reports_are_deterministic(seed in any::<u64>()) {
        let cfg = SessionConfig { seed, ..SessionConfig::preset("trivial").with_degree(2) };
        let cmd = Command::Check { what: CheckTarget::Bundle };
        let a = run_command(&cmd, &cfg).unwrap();
        let b = run_command(&cmd, &cfg).unwrap();
        prop_assert_eq!(a.render(Format::Records), b.render(Format::Records));
        prop_assert_eq!(a.render(Format::Text), b.render(Format::Text));
        let seed_tag = format!("seed={seed} ");
        prop_assert!(a.render(Format::Records).lines().all(|l| l.contains(&seed_tag)));
    }
}

#[test]
fn printing_documents_is_idempotent() {
    for name in presets::PRESET_NAMES {
        let once = parse(&presets::source(name).unwrap()).unwrap().print();
        let twice = parse(&once).unwrap().print();
        assert_eq!(once, twice, "{name}");
        assert_eq!(parse(&once).unwrap(), parse(&twice).unwrap());
    }
}
