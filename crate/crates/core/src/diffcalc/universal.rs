use crate::error::{Error, Result};
use crate::hopf::{HopfStructure, Tensor};
use crate::ncalg::linalg::Echelon;
use crate::ncalg::{element_vec, NCElement, Presentation, Word};
use crate::qscalar::QRat;
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// An element of `Ω¹P = ker m ⊂ P⊗P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivOneForm(Tensor);

impl UnivOneForm {
    /// Checks that `t` has two legs and multiplies out to zero.
    pub fn new(t: Tensor, pres: &Presentation) -> Result<Self> {
        if t.arity() != 2 {
            return Err(Error::NotExpressible(format!(
                "one-form needs 2 legs, got {}",
                t.arity()
            )));
        }
        let t = t.reduce(&[pres, pres])?;
        if !t.multiply_out(pres)?.is_zero() {
            return Err(Error::NotExpressible(format!(
                "{} is not in ker m",
                t.render_uniform(pres.gens())
            )));
        }
        Ok(UnivOneForm(t))
    }

    pub fn tensor(&self) -> &Tensor {
        &self.0
    }

    pub fn into_tensor(self) -> Tensor {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &UnivOneForm) -> UnivOneForm {
        UnivOneForm(self.0.add(&other.0))
    }

    pub fn scale(&self, c: &QRat) -> UnivOneForm {
        UnivOneForm(self.0.scale(c))
    }

    pub fn render(&self, pres: &Presentation) -> String {
        self.0.render_uniform(pres.gens())
    }
}

/// `d u = 1⊗u − u⊗1`.
pub fn d_universal(u: &NCElement) -> UnivOneForm {
    let one = NCElement::one();
    let t = Tensor::from_elements(&[&one, u]).sub(&Tensor::from_elements(&[u, &one]));
    UnivOneForm(t)
}

/// Legwise product with `p` on the given side.
pub fn bimodule_action(
    p: &NCElement,
    rho: &UnivOneForm,
    side: Side,
    pres: &Presentation,
) -> Result<UnivOneForm> {
    let t = match side {
        Side::Left => rho.0.left_act(p, pres)?,
        Side::Right => rho.0.right_act(p, pres)?,
    };
    Ok(UnivOneForm(t))
}

/// Differential of the universal envelope on an `n`-fold tensor:
/// `d(u₀⊗…⊗uₙ) = Σₖ (−1)ᵏ u₀⊗…⊗1⊗uₖ⊗…⊗uₙ` (1 inserted at position `k`).
pub fn d_envelope(t: &Tensor) -> Tensor {
    let n = t.arity();
    let mut out = Tensor::zero(n + 1);
    for (legs, c) in t.terms() {
        for k in 0..=n {
            let mut l = legs.clone();
            l.insert(k, Word::one());
            let s = if k % 2 == 0 { c.clone() } else { -c };
            out.add_term(l, &s);
        }
    }
    out
}

/// `κ(a⊗b) = a b₍₁₎ ⊗ b₍₂₎`.
pub fn kappa(x: &Tensor, h: &HopfStructure) -> Result<Tensor> {
    let p = h.presentation();
    let t = h.coproduct_on_leg(x, 1)?;
    t.merge_legs(0, p)
}

/// `κ⁻¹(a⊗b) = a S(b₍₁₎) ⊗ b₍₂₎`.
pub fn kappa_inv(x: &Tensor, h: &HopfStructure) -> Result<Tensor> {
    let p = h.presentation();
    let t = h.antipode_on_leg(&h.coproduct_on_leg(x, 1)?, 1)?;
    t.merge_legs(0, p)
}

/// Span of `{x·w}` for generators `x` and basis words `w` of degree
/// `<= degree`: the right ideal generated by `gens`, truncated.
pub fn right_ideal_closure(
    gens: &[NCElement],
    pres: &Presentation,
    degree: usize,
) -> Result<Echelon<Word>> {
    let mut ech = Echelon::new();
    let basis = pres.monomial_basis(degree);
    for x in gens {
        for w in &basis {
            let y = pres.multiply(x, &NCElement::word(w.clone()))?;
            ech.insert(&element_vec(&y));
        }
    }
    Ok(ech)
}

/// For every generator `x` of `Q`: `ε(x) = 0` and `Ad_R(x) ∈ Q_{≤D}⊗H`
/// where `Q_{≤D}` is the truncated right-ideal closure.
pub fn bicovariance_check(
    q_gens: &[NCElement],
    h: &HopfStructure,
    degree: usize,
) -> Result<Report> {
    let p = h.presentation();
    let g = p.gens();
    let mut rep = Report::new("bicovariance of Q");
    let closure = right_ideal_closure(q_gens, p, degree)?;
    if q_gens.is_empty() {
        rep.check(
            "calculus.bicovariant",
            "Ad_R(Q) ⊂ Q⊗H",
            degree,
            true,
            "Q = 0",
        );
        return Ok(rep);
    }
    for (k, x) in q_gens.iter().enumerate() {
        let x = p.reduce(x)?;
        let id = format!("calculus.bicovariant.{k}");
        if !h.counit(&x)?.is_zero() {
            rep.check(
                id,
                "Q ⊂ ker ε",
                degree,
                false,
                format!("ε({}) ≠ 0", p.render(&x)),
            );
            continue;
        }
        let ad = h.adjoint_coaction(&x)?;
        let mut bad = None;
        for (hw, rest) in ad.split_on_leg(1) {
            let e = rest.to_element();
            if !closure.contains(&element_vec(&e)) {
                bad = Some(format!(
                    "coefficient of {} is {}",
                    hw.render(g),
                    p.render(&e)
                ));
                break;
            }
        }
        let ok = bad.is_none();
        let wit =
            bad.unwrap_or_else(|| format!("Ad_R({}) = {}", p.render(&x), ad.render_uniform(g)));
        rep.check(id, "Ad_R(Q) ⊂ Q⊗H", degree, ok, wit);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_element;
    use crate::presets;

    #[test]
    fn karoubi_differential() {
        let m = presets::load("suq2").unwrap();
        let p = m.algebra("SUq2").unwrap();
        assert!(d_universal(&NCElement::one()).is_zero());
        let a = parse_element("a", p.gens()).unwrap();
        assert_eq!(d_universal(&a).render(&p), "1(x)a - a(x)1");
        // u·dv = u⊗v − uv⊗1
        let b = parse_element("b", p.gens()).unwrap();
        let l = bimodule_action(&a, &d_universal(&b), Side::Left, &p).unwrap();
        assert_eq!(l.render(&p), "a(x)b - a*b(x)1");
        // Leibniz on a pair that needs reduction
        let d = parse_element("d", p.gens()).unwrap();
        let da = p.multiply(&d, &a).unwrap();
        let lhs = UnivOneForm::new(d_universal(&da).into_tensor(), &p).unwrap();
        let rhs = bimodule_action(&a, &d_universal(&d), Side::Right, &p)
            .unwrap()
            .add(&bimodule_action(&d, &d_universal(&a), Side::Left, &p).unwrap());
        assert_eq!(lhs, UnivOneForm::new(rhs.into_tensor(), &p).unwrap());
    }

    #[test]
    fn envelope_differential_squares_to_zero() {
        let t = Tensor::pure(vec![Word(vec![0]), Word(vec![1])], QRat::q());
        let dd = d_envelope(&d_envelope(&t));
        assert!(dd.is_zero());
    }

    #[test]
    fn kappa_roundtrip() {
        let m = presets::load("suq2").unwrap();
        let h = m.hopf("SUq2").unwrap();
        let p = h.presentation();
        let basis = p.monomial_basis(2);
        for u in &basis {
            for v in &basis {
                let x = Tensor::pure(vec![u.clone(), v.clone()], QRat::one());
                assert_eq!(kappa(&kappa_inv(&x, h).unwrap(), h).unwrap(), x);
                assert_eq!(kappa_inv(&kappa(&x, h).unwrap(), h).unwrap(), x);
            }
        }
        let mu = presets::load("u1").unwrap();
        let hu = mu.hopf("H").unwrap();
        let z3 = hu.presentation().gens().parse_word("Z^3").unwrap();
        let x = Tensor::pure(vec![Word::one(), z3.clone()], QRat::one());
        assert_eq!(
            kappa(&x, hu).unwrap(),
            Tensor::pure(vec![z3.clone(), z3], QRat::one())
        );
    }
}
