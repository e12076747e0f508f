//! Trivial bundles `P ≅ B_Φ#H`.

use super::BundleSpec;
use crate::error::{Error, Result};
use crate::hopf::Tensor;
use crate::ncalg::{NCElement, Word};
use crate::report::Report;
use crate::sample::{sample_pairs, EXTRA_PAIRS};

impl BundleSpec {
    fn need_triv(&self) -> Result<&super::Trivialisation> {
        self.trivialisation()
            .ok_or_else(|| Error::Hypothesis("bundle has no trivialisation".into()))
    }

    /// `Θ_Φ(u) = u₍₀₎Φ⁻¹(u₍₁₎) ⊗ u₍₂₎ ∈ B⊗H`.
    pub fn theta(&self, u: &NCElement) -> Result<Tensor> {
        let tr = self.need_triv()?;
        let p = self.total();
        let d = self.comodule().coaction(&p.reduce(u)?)?;
        let d = self.hopf().coproduct_on_leg(&d, 1)?;
        let t = tr.phi_inv.apply_on_leg(&d, 1)?.merge_legs(0, p)?;
        for (a, rest) in t.split_on_leg(1) {
            let b = rest.to_element();
            if !self.comodule().is_coinvariant(&b)? {
                return Err(Error::NotIntertwiner(format!(
                    "the B-leg {} at {} is not coinvariant",
                    p.render(&b),
                    a.render(self.h_pres().gens())
                )));
            }
        }
        Ok(t)
    }

    /// `b⊗a ↦ b·Φ(a)`.
    pub fn theta_inv(&self, x: &Tensor) -> Result<NCElement> {
        let tr = self.need_triv()?;
        let p = self.total();
        let t = tr.phi.apply_on_leg(x, 1)?.merge_legs(0, p)?;
        Ok(t.to_element())
    }

    /// Product in `B_Φ#H`:
    /// `(b¹⊗a¹)(b²⊗a²) = b¹Φ(a¹₍₁₎)b²Φ(a²₍₁₎)Φ⁻¹(a¹₍₂₎a²₍₂₎) ⊗ a¹₍₃₎a²₍₃₎`.
    pub fn crossed_product_multiply(&self, x: &Tensor, y: &Tensor) -> Result<Tensor> {
        let tr = self.need_triv()?;
        let p = self.total();
        let h = self.hopf();
        let hp = self.h_pres();
        let mut out = Tensor::zero(2);
        for (xl, xc) in x.terms() {
            let dx = h.iterated_coproduct(&NCElement::word(xl[1].clone()))?;
            for (yl, yc) in y.terms() {
                let dy = h.iterated_coproduct(&NCElement::word(yl[1].clone()))?;
                for (a1, c1) in dx.terms() {
                    for (a2, c2) in dy.terms() {
                        let c = &(&(xc * yc) * c1) * c2;
                        let head = p.product(&[
                            &NCElement::word(xl[0].clone()),
                            &tr.phi.element_value(&a1[0])?,
                            &NCElement::word(yl[0].clone()),
                            &tr.phi.element_value(&a2[0])?,
                        ])?;
                        let mid = tr.phi_inv.apply_element(&hp.mul_words(&a1[1], &a2[1])?)?;
                        let left = p.multiply(&head, &mid)?;
                        let right = hp.mul_words(&a1[2], &a2[2])?;
                        out.add_scaled(&Tensor::from_elements(&[&left, &right]), &c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `Θ_Φ⁻¹Θ_Φ = id` on `P`-words, `Θ_ΦΘ_Φ⁻¹ = id` on `b⊗a` and
    /// `Θ_Φ(uv) = Θ_Φ(u)Θ_Φ(v)` on sampled pairs.
    pub fn theta_report(&self, degree: usize, seed: u64) -> Result<Report> {
        let p = self.total();
        let hp = self.h_pres();
        let mut rep = Report::new("trivial bundle as a crossed product").with_seed(seed);
        let basis = p.monomial_basis(degree);
        let mut bad = None;
        for w in &basis {
            let u = NCElement::word(w.clone());
            if self.theta_inv(&self.theta(&u)?)? != u {
                bad = Some(format!("word: {}", w.render(p.gens())));
                break;
            }
        }
        rep.check(
            "bundle.theta.left_inverse",
            "Θ⁻¹Θ = id",
            degree,
            bad.is_none(),
            bad.unwrap_or_else(|| format!("checked {} words", basis.len())),
        );

        let bbasis = self.coinvariants(degree)?;
        let hbasis = hp.monomial_basis(degree);
        let mut bad = None;
        'outer: for b in &bbasis {
            for a in &hbasis {
                let x = Tensor::from_elements(&[b, &NCElement::word(a.clone())]);
                if self.theta(&self.theta_inv(&x)?)? != x {
                    bad = Some(format!("b = {}, a = {}", p.render(b), a.render(hp.gens())));
                    break 'outer;
                }
            }
        }
        rep.check(
            "bundle.theta.right_inverse",
            "ΘΘ⁻¹ = id on B⊗H",
            degree,
            bad.is_none(),
            bad.unwrap_or_else(|| format!("checked {} pairs", bbasis.len() * hbasis.len())),
        );

        let mut bad = None;
        // products must stay inside the truncation of Φ⁻¹
        let pairs: Vec<_> = sample_pairs(&basis, 2.min(degree), EXTRA_PAIRS, seed)
            .into_iter()
            .filter(|(u, v)| u.degree() + v.degree() <= self.degree())
            .collect();
        for (u, v) in &pairs {
            let (ue, ve) = (NCElement::word(u.clone()), NCElement::word(v.clone()));
            let lhs = self.theta(&p.multiply(&ue, &ve)?)?;
            let rhs = self.crossed_product_multiply(&self.theta(&ue)?, &self.theta(&ve)?)?;
            if lhs != rhs {
                bad = Some(format!(
                    "u = {}, v = {}",
                    u.render(p.gens()),
                    v.render(p.gens())
                ));
                break;
            }
        }
        rep.check(
            "bundle.theta.multiplicative",
            "Θ(uv) = Θ(u)Θ(v) in B_Φ#H",
            degree,
            bad.is_none(),
            bad.unwrap_or_else(|| format!("checked {} sampled pairs", pairs.len())),
        );
        Ok(rep)
    }
}

/// `b⊗a` as an arity-2 tensor.
pub fn crossed_pair(b: &NCElement, a: &Word) -> Tensor {
    Tensor::from_elements(&[b, &NCElement::word(a.clone())])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_element;
    use crate::presets;
    use crate::sample::DEFAULT_SEED;

    #[test]
    fn crossed_product_structure() {
        let b = BundleSpec::from_model(&presets::load("trivial").unwrap(), 3).unwrap();
        let p = b.total();
        let hp = b.h_pres();
        let g = [p.gens(), hp.gens()];
        let el = |s: &str| p.reduce(&parse_element(s, p.gens()).unwrap()).unwrap();
        let z = hp.gens().parse_word("Z").unwrap();
        // Θ(Φ(a)) = 1⊗a, Θ(b) = b⊗1
        assert_eq!(b.theta(&el("Z")).unwrap().render(&g), "1(x)Z");
        assert_eq!(b.theta(&el("y^2")).unwrap().render(&g), "y^2(x)1");
        assert_eq!(b.theta(&el("y*Z")).unwrap().render(&g), "y(x)Z");
        // (1⊗Z)(y⊗1) = Z y Z⁻¹ ⊗ Z = q y ⊗ Z
        let lhs = b
            .crossed_product_multiply(
                &crossed_pair(&NCElement::one(), &z),
                &crossed_pair(&el("y"), &Word::one()),
            )
            .unwrap();
        assert_eq!(lhs.render(&g), "(q)*y(x)Z");
        let (x, y) = (
            crossed_pair(&el("y"), &Word::one()),
            crossed_pair(&el("Y"), &Word::one()),
        );
        assert_eq!(b.crossed_product_multiply(&x, &y).unwrap(), Tensor::unit(2));
        let rep = b.theta_report(3, DEFAULT_SEED).unwrap();
        assert!(rep.passed(), "{}", rep.render_text());
    }
}
