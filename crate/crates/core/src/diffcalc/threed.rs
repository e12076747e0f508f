//! The left-covariant 3D calculus on SUq(2), with left-module basis
//! `ω⁰, ω¹, ω²`.
//!
//! The forms are defined through the universal calculus by
//! `ω⁰ = d·db − q⁻¹ b·dd`, `ω¹ = d·da − q⁻¹ b·dc`, `ω² = c·da − q⁻¹ a·dc`.
//! Moving a form past a generator is `ωⁱ g = q^{±kᵢ} g ωⁱ` with
//! `k = (1, 2, 1)`. The sign is `−` for `a, c` and `+` for `b, d`. The
//! differential on generators is obtained by solving these definitions
//! together with `d(lhs) = d(rhs)` for every rewrite rule.

use std::collections::BTreeMap;

use super::universal::{bimodule_action, d_universal, Side, UnivOneForm};
use crate::error::{Error, Result};
use crate::hopf::Tensor;
use crate::ncalg::linalg::{Echelon, SparseVec};
use crate::ncalg::{NCElement, Presentation, Word};
use crate::qscalar::QRat;
use crate::report::Report;

const K: [i64; 3] = [1, 2, 1];

/// `p₀ω⁰ + p₁ω¹ + p₂ω²` with reduced left coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeDForm(pub [NCElement; 3]);

impl ThreeDForm {
    pub fn zero() -> Self {
        ThreeDForm([NCElement::zero(), NCElement::zero(), NCElement::zero()])
    }

    /// `p·ωⁱ`.
    pub fn basis(i: usize, p: NCElement) -> Self {
        let mut f = Self::zero();
        f.0[i] = p;
        f
    }

    pub fn unit(i: usize) -> Self {
        Self::basis(i, NCElement::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(NCElement::is_zero)
    }

    pub fn coeff(&self, i: usize) -> &NCElement {
        &self.0[i]
    }

    pub fn add(&self, o: &ThreeDForm) -> ThreeDForm {
        ThreeDForm([
            &self.0[0] + &o.0[0],
            &self.0[1] + &o.0[1],
            &self.0[2] + &o.0[2],
        ])
    }

    pub fn sub(&self, o: &ThreeDForm) -> ThreeDForm {
        ThreeDForm([
            &self.0[0] - &o.0[0],
            &self.0[1] - &o.0[1],
            &self.0[2] - &o.0[2],
        ])
    }

    pub fn scale(&self, c: &QRat) -> ThreeDForm {
        ThreeDForm([self.0[0].scale(c), self.0[1].scale(c), self.0[2].scale(c)])
    }

    pub fn render(&self, pres: &Presentation) -> String {
        let mut parts = Vec::new();
        for (i, p) in self.0.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let s = pres.render(p);
            if p.len() == 1 && p.as_scalar().map(|c| c.is_one()).unwrap_or(false) {
                parts.push(format!("w{i}"));
            } else if p.len() == 1 {
                parts.push(format!("{s}*w{i}"));
            } else {
                parts.push(format!("({s})*w{i}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// A term `left · d(gen) · right` of a formal d-expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalTerm {
    pub left: NCElement,
    pub gen: u32,
    pub right: NCElement,
}

/// The 3D calculus over a presentation with generators `a, b, c, d`.
#[derive(Debug, Clone)]
pub struct ThreeDCalculus {
    pres: std::sync::Arc<Presentation>,
    /// `+1` for `b, d`, `−1` for `a, c`, indexed by generator.
    sign: Vec<i64>,
    dgen: Vec<ThreeDForm>,
    unique: bool,
}

impl ThreeDCalculus {
    pub fn new(pres: std::sync::Arc<Presentation>) -> Result<Self> {
        let g = pres.gens();
        if g.len() != 4 {
            return Err(Error::Presentation(
                "3D calculus needs generators a, b, c, d".into(),
            ));
        }
        let idx = |n: &str| {
            g.lookup(n)
                .ok_or_else(|| Error::Presentation(format!("3D calculus needs a generator `{n}`")))
        };
        let (a, b, c, d) = (idx("a")?, idx("b")?, idx("c")?, idx("d")?);
        let mut sign = vec![0; 4];
        sign[a as usize] = -1;
        sign[c as usize] = -1;
        sign[b as usize] = 1;
        sign[d as usize] = 1;
        let mut calc = ThreeDCalculus {
            pres,
            sign,
            dgen: Vec::new(),
            unique: false,
        };
        let (dgen, unique) = calc.solve_differential([a, b, c, d])?;
        calc.dgen = dgen;
        calc.unique = unique;
        Ok(calc)
    }

    pub fn presentation(&self) -> &std::sync::Arc<Presentation> {
        &self.pres
    }

    /// Whether the linear system for `d` on generators had a unique solution.
    pub fn is_unique(&self) -> bool {
        self.unique
    }

    /// `d(g)` for generator `g`.
    pub fn d_generator(&self, g: u32) -> &ThreeDForm {
        &self.dgen[g as usize]
    }

    /// The defining relations, as `(coefficient, left factor, differentiated generator)` triples.
    fn definitions(abcd: [u32; 4]) -> [[(QRat, u32, u32); 2]; 3] {
        let [a, b, c, d] = abcd;
        let m = -QRat::q_pow(-1);
        [
            [(QRat::one(), d, b), (m.clone(), b, d)],
            [(QRat::one(), d, a), (m.clone(), b, c)],
            [(QRat::one(), c, a), (m, a, c)],
        ]
    }

    /// Universal representative of `ωⁱ`.
    pub fn omega_universal(&self, i: usize) -> Result<UnivOneForm> {
        let abcd = self.abcd();
        let [(c0, l0, g0), (c1, l1, g1)] = Self::definitions(abcd)[i].clone();
        let t0 = bimodule_action(
            &NCElement::word(Word::gen(l0)),
            &d_universal(&NCElement::word(Word::gen(g0))),
            Side::Left,
            &self.pres,
        )?;
        let t1 = bimodule_action(
            &NCElement::word(Word::gen(l1)),
            &d_universal(&NCElement::word(Word::gen(g1))),
            Side::Left,
            &self.pres,
        )?;
        Ok(t0.scale(&c0).add(&t1.scale(&c1)))
    }

    fn abcd(&self) -> [u32; 4] {
        let g = self.pres.gens();
        ["a", "b", "c", "d"].map(|n| g.lookup(n).unwrap())
    }

    /// `p'` with `ωⁱ p = p' ωⁱ`.
    pub fn commute_past(&self, p: &NCElement, i: usize) -> NCElement {
        NCElement::from_terms(
            p.terms()
                .map(|(w, c)| (w.clone(), c * &QRat::q_pow(K[i] * self.charge(w)))),
        )
    }

    fn charge(&self, w: &Word) -> i64 {
        w.letters().iter().map(|&g| self.sign[g as usize]).sum()
    }

    /// `form · r`.
    pub fn right_mul(&self, f: &ThreeDForm, r: &NCElement) -> Result<ThreeDForm> {
        let mut out = ThreeDForm::zero();
        for i in 0..3 {
            out.0[i] = self.pres.multiply(&f.0[i], &self.commute_past(r, i))?;
        }
        Ok(out)
    }

    /// `p · form`.
    pub fn left_mul(&self, p: &NCElement, f: &ThreeDForm) -> Result<ThreeDForm> {
        let mut out = ThreeDForm::zero();
        for i in 0..3 {
            out.0[i] = self.pres.multiply(p, &f.0[i])?;
        }
        Ok(out)
    }

    /// `d` of a word, by the Leibniz rule.
    pub fn d_word(&self, w: &Word) -> Result<ThreeDForm> {
        let mut out = ThreeDForm::zero();
        for k in 0..w.degree() {
            let pre = NCElement::word(w.slice(0, k));
            let post = NCElement::word(w.slice(k + 1, w.degree()));
            let t = self.left_mul(
                &pre,
                &self.right_mul(&self.dgen[w.letters()[k] as usize], &post)?,
            )?;
            out = out.add(&t);
        }
        Ok(out)
    }

    pub fn d(&self, x: &NCElement) -> Result<ThreeDForm> {
        let mut out = ThreeDForm::zero();
        for (w, c) in x.terms() {
            out = out.add(&self.d_word(w)?.scale(c));
        }
        Ok(out)
    }

    /// Reduces `Σ left·d(gen)·right`.
    pub fn reduce_formal(&self, terms: &[FormalTerm]) -> Result<ThreeDForm> {
        let mut out = ThreeDForm::zero();
        for t in terms {
            if t.gen as usize >= self.dgen.len() {
                return Err(Error::NotExpressible(format!(
                    "no generator with index {}",
                    t.gen
                )));
            }
            let f = self.right_mul(&self.dgen[t.gen as usize], &self.pres.reduce(&t.right)?)?;
            out = out.add(&self.left_mul(&self.pres.reduce(&t.left)?, &f)?);
        }
        Ok(out)
    }

    /// Image of a universal form `Σ u⊗v` (with `Σ uv = 0`) as `Σ u·dv`.
    pub fn reduce_universal(&self, rho: &UnivOneForm) -> Result<ThreeDForm> {
        self.reduce_tensor(rho.tensor())
    }

    /// `Σ u⊗v ↦ Σ u·dv` on any arity-2 tensor.
    pub fn reduce_tensor(&self, t: &Tensor) -> Result<ThreeDForm> {
        if t.arity() != 2 {
            return Err(Error::NotExpressible(format!(
                "expected 2 legs, got {}",
                t.arity()
            )));
        }
        let mut out = ThreeDForm::zero();
        for (legs, c) in t.terms() {
            let f = self.left_mul(&NCElement::word(legs[0].clone()), &self.d_word(&legs[1])?)?;
            out = out.add(&f.scale(c));
        }
        Ok(out)
    }

    fn solve_differential(&self, abcd: [u32; 4]) -> Result<(Vec<ThreeDForm>, bool)> {
        type Key = (usize, usize, Word);
        let p = &self.pres;
        let coeffs = p.monomial_basis(1);
        let nw = coeffs.len();
        let unknown = |g: u32, i: usize, w: usize| (g as usize * 3 + i) * nw + w;
        let n = 4 * 3 * nw;
        let mut cols: Vec<SparseVec<Key>> = vec![SparseVec::new(); n];
        let mut add = |col: usize, eq: usize, i: usize, x: &NCElement, s: &QRat| {
            for (w, c) in x.terms() {
                let e = cols[col]
                    .entry((eq, i, w.clone()))
                    .or_insert_with(QRat::zero);
                *e = &*e + &(c * s);
            }
            cols[col].retain(|_, v| !v.is_zero());
        };
        for (eq, def) in Self::definitions(abcd).iter().enumerate() {
            for (c, l, g) in def {
                for i in 0..3 {
                    for (wi, w) in coeffs.iter().enumerate() {
                        let x = p.mul_words(&Word::gen(*l), w)?;
                        add(unknown(*g, i, wi), eq, i, &x, c);
                    }
                }
            }
        }
        for (r, rule) in p.rules().iter().enumerate() {
            let eq = 3 + r;
            let mut side: Vec<(Word, QRat)> = vec![(rule.lhs.clone(), QRat::one())];
            side.extend(rule.rhs.terms().map(|(w, c)| (w.clone(), -c)));
            for (word, c) in &side {
                for k in 0..word.degree() {
                    let g = word.letters()[k];
                    let pre = word.slice(0, k);
                    let post = NCElement::word(word.slice(k + 1, word.degree()));
                    for i in 0..3 {
                        let moved = self.commute_past(&post, i);
                        for (wi, w) in coeffs.iter().enumerate() {
                            let x = p.multiply(&NCElement::word(pre.concat(w)), &moved)?;
                            add(unknown(g, i, wi), eq, i, &x, c);
                        }
                    }
                }
            }
        }
        let mut ech = Echelon::new();
        for c in &cols {
            ech.insert(c);
        }
        let mut target: SparseVec<Key> = BTreeMap::new();
        for i in 0..3 {
            target.insert((i, i, Word::one()), QRat::one());
        }
        let x = ech.coordinates(&target).ok_or_else(|| {
            Error::NotExpressible("3D calculus relations have no solution in degree 1".into())
        })?;
        let mut dgen = vec![ThreeDForm::zero(); 4];
        for (j, v) in x {
            let (gi, wi) = (j / nw, j % nw);
            let (g, i) = (gi / 3, gi % 3);
            dgen[g].0[i].add_term(coeffs[wi].clone(), &v);
        }
        Ok((dgen, ech.rank() == n))
    }

    /// Checks that `d` respects every rule and that the defining
    /// combinations reduce to the unit vectors.
    pub fn consistency_report(&self, degree: usize) -> Result<Report> {
        let p = &self.pres;
        let mut rep = Report::new("3D calculus");
        rep.check(
            "calculus.3d.unique",
            "d on generators",
            1,
            self.unique,
            if self.unique {
                "linear system has full rank"
            } else {
                "solution not unique"
            },
        );
        for i in 0..3 {
            let f = self.reduce_universal(&self.omega_universal(i)?)?;
            let ok = f == ThreeDForm::unit(i);
            rep.check(
                format!("calculus.3d.omega{i}"),
                "defining relation",
                1,
                ok,
                f.render(p),
            );
        }
        let mut bad = None;
        for r in p.rules() {
            let diff = self.d_word(&r.lhs)?.sub(&self.d(&r.rhs)?);
            if !diff.is_zero() {
                bad = Some(format!("{}: {}", r.lhs.render(p.gens()), diff.render(p)));
                break;
            }
        }
        rep.check(
            "calculus.3d.rules",
            "d respects relations",
            2,
            bad.is_none(),
            bad.unwrap_or_default(),
        );
        let basis = p.monomial_basis(degree);
        let mut bad = None;
        'outer: for u in &basis {
            for v in &basis {
                let uv = p.mul_words(u, v)?;
                let lhs = self.d(&uv)?;
                let ue = NCElement::word(u.clone());
                let ve = NCElement::word(v.clone());
                let rhs = self
                    .right_mul(&self.d_word(u)?, &ve)?
                    .add(&self.left_mul(&ue, &self.d_word(v)?)?);
                if lhs != rhs {
                    bad = Some(format!(
                        "u = {}, v = {}",
                        u.render(p.gens()),
                        v.render(p.gens())
                    ));
                    break 'outer;
                }
            }
        }
        rep.check(
            "calculus.3d.leibniz",
            "d(uv) = d(u)v + u d(v)",
            degree,
            bad.is_none(),
            bad.unwrap_or_else(|| format!("checked {} pairs", basis.len() * basis.len())),
        );
        Ok(rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_element;
    use crate::presets;

    fn calc() -> ThreeDCalculus {
        let m = presets::load("suq2").unwrap();
        ThreeDCalculus::new(m.algebra("SUq2").unwrap()).unwrap()
    }

    fn el(c: &ThreeDCalculus, s: &str) -> NCElement {
        let p = c.presentation();
        p.reduce(&parse_element(s, p.gens()).unwrap()).unwrap()
    }

    fn form(c: &ThreeDCalculus, p: [&str; 3]) -> ThreeDForm {
        ThreeDForm(p.map(|s| el(c, s)))
    }

    #[test]
    fn differential_on_generators_matches_hand_solution() {
        let c = calc();
        assert!(c.is_unique());
        let g = |n: &str| c.presentation().gens().lookup(n).unwrap();
        assert_eq!(c.d_generator(g("a")), &form(&c, ["0", "a", "-q*b"]));
        assert_eq!(c.d_generator(g("b")), &form(&c, ["a", "-q^2*b", "0"]));
        assert_eq!(c.d_generator(g("c")), &form(&c, ["0", "c", "-q*d"]));
        assert_eq!(c.d_generator(g("d")), &form(&c, ["c", "-q^2*d", "0"]));
    }

    #[test]
    fn defining_forms_reduce_to_unit_vectors() {
        let c = calc();
        for i in 0..3 {
            assert_eq!(
                c.reduce_universal(&c.omega_universal(i).unwrap()).unwrap(),
                ThreeDForm::unit(i)
            );
        }
        let rep = c.consistency_report(2).unwrap();
        assert!(rep.failures().next().is_none(), "{}", rep.render_text());
    }

    #[test]
    fn commutation_with_forms() {
        let c = calc();
        assert_eq!(c.commute_past(&el(&c, "a"), 1), el(&c, "q^-2*a"));
        assert_eq!(c.commute_past(&el(&c, "b"), 1), el(&c, "q^2*b"));
        assert_eq!(c.commute_past(&el(&c, "a"), 0), el(&c, "q^-1*a"));
        assert_eq!(c.commute_past(&NCElement::one(), 2), NCElement::one());
        let cd = c
            .presentation()
            .multiply(&el(&c, "c"), &el(&c, "d"))
            .unwrap();
        assert_eq!(c.commute_past(&cd, 0), cd);
        // ω¹·a through the universal calculus
        let w1a = bimodule_action(
            &el(&c, "a"),
            &c.omega_universal(1).unwrap(),
            Side::Right,
            c.presentation(),
        )
        .unwrap();
        assert_eq!(
            c.reduce_universal(&w1a).unwrap(),
            form(&c, ["0", "q^-2*a", "0"])
        );
    }

    #[test]
    fn formal_expression() {
        let c = calc();
        let g = |n: &str| c.presentation().gens().lookup(n).unwrap();
        let t = vec![
            FormalTerm {
                left: el(&c, "d"),
                gen: g("b"),
                right: NCElement::one(),
            },
            FormalTerm {
                left: el(&c, "-q^-1*b"),
                gen: g("d"),
                right: NCElement::one(),
            },
        ];
        let f = c.reduce_formal(&t).unwrap();
        assert_eq!(f, ThreeDForm::unit(0));
        assert_eq!(f.render(c.presentation()), "w0");
        let da = c.d(&el(&c, "a")).unwrap();
        assert_eq!(da.render(c.presentation()), "a*w1 + (-q)*b*w2");
    }
}
