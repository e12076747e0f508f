use std::collections::BTreeMap;
use std::sync::Arc;

use super::{parse, CalculusDecl, Document, Extend, GenValues, MapDecl, MapKind};
use crate::error::{Error, Result};
use crate::hopf::{AlgebraMap, HopfStructure, Tensor};
use crate::ncalg::{GeneratorTable, Presentation, RewriteRule, DEFAULT_BUDGET};

/// A parsed document turned into live algebraic objects.
#[derive(Debug)]
pub struct Model {
    doc: Document,
    algebras: BTreeMap<String, Arc<Presentation>>,
    hopf: BTreeMap<String, HopfStructure>,
}

impl Model {
    pub fn from_source(src: &str) -> Result<Model> {
        Self::build(parse(src)?, DEFAULT_BUDGET)
    }

    pub fn build(doc: Document, budget: usize) -> Result<Model> {
        let mut algebras = BTreeMap::new();
        for a in &doc.algebras {
            let table = a.table();
            let order = a.order();
            let rules = a
                .rules
                .iter()
                .map(|(l, r)| RewriteRule::oriented(l.clone(), r.clone(), &order))
                .collect::<Result<Vec<_>>>()?;
            let p = Presentation::new(a.name.clone(), table, rules, None)?
                .with_order(order)
                .with_budget(budget);
            algebras.insert(a.name.clone(), Arc::new(p));
        }
        let mut hopf = BTreeMap::new();
        for h in &doc.hopfs {
            let p: Arc<Presentation> = algebras[&h.algebra].clone();
            let g = p.gens().clone();
            let delta = by_generator(&g, &h.delta);
            let eps = by_generator(&g, &h.eps)
                .into_iter()
                .map(|v| v.map(|t| t.to_scalar()))
                .collect();
            let s = by_generator(&g, &h.antipode)
                .into_iter()
                .map(|v| v.map(|t| t.to_element()))
                .collect();
            let s_inv = if h.antipode_inv.is_empty() {
                None
            } else {
                Some(
                    by_generator(&g, &h.antipode_inv)
                        .into_iter()
                        .map(|v| v.map(|t| t.to_element()))
                        .collect(),
                )
            };
            hopf.insert(
                h.algebra.clone(),
                HopfStructure::new(p, delta, eps, s, s_inv)?,
            );
        }
        Ok(Model {
            doc,
            algebras,
            hopf,
        })
    }

    pub fn document(&self) -> &Document {
        &self.doc
    }

    pub fn warnings(&self) -> &[String] {
        &self.doc.warnings
    }

    pub fn algebra(&self, name: &str) -> Result<Arc<Presentation>> {
        self.algebras
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Undeclared(name.to_string()))
    }

    pub fn algebra_names(&self) -> impl Iterator<Item = &str> {
        self.doc.algebras.iter().map(|a| a.name.as_str())
    }

    pub fn hopf(&self, algebra: &str) -> Result<&HopfStructure> {
        self.hopf
            .get(algebra)
            .ok_or_else(|| Error::IncompleteHopf(format!("no hopf block for `{algebra}`")))
    }

    pub fn map_decl(&self, name: &str) -> Result<&MapDecl> {
        self.doc.map(name)
    }

    /// First map of the given kind, if any.
    pub fn map_of_kind(&self, kind: MapKind) -> Option<&MapDecl> {
        self.doc.maps.iter().find(|m| m.kind == kind)
    }

    pub fn calculus(&self, name: &str) -> Result<&CalculusDecl> {
        self.doc
            .calculi
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::Undeclared(name.to_string()))
    }

    /// The declared map as an [`AlgebraMap`]. Multiplicative maps are
    /// checked against every relation of the source.
    pub fn algebra_map(&self, name: &str) -> Result<AlgebraMap> {
        let m = self.map_decl(name)?;
        let src = self.algebra(&m.source)?;
        let tgt = self.algebra(&m.target)?;
        let legs = if m.kind == MapKind::Coaction {
            vec![src.clone(), tgt]
        } else {
            vec![tgt]
        };
        let vals = by_generator(src.gens(), &m.values);
        let map = AlgebraMap::new(m.name.clone(), src.gens().clone(), legs, vals, false)?;
        if m.extend == Extend::Multiplicative {
            if let Some(v) = map.rule_violations(&src)?.first() {
                let r = &src.rules()[v.rule];
                return Err(Error::Hypothesis(format!(
                    "{} does not respect {} = {}",
                    m.name,
                    r.lhs.render(src.gens()),
                    src.render(&r.rhs)
                )));
            }
        }
        Ok(map)
    }
}

fn by_generator(g: &GeneratorTable, vals: &GenValues) -> Vec<Option<Tensor>> {
    let mut out = vec![None; g.len()];
    for (name, t) in vals {
        if let Some(i) = g.lookup(name) {
            out[i as usize] = Some(t.clone());
        }
    }
    out
}
