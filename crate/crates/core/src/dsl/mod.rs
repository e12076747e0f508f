//! Line-oriented presentation language.
//!
//! ```text
//! algebra H {
//!   gens: Z, Zi
//!   rel: Z*Zi = 1
//!   rel: Zi*Z = 1
//! }
//! hopf H {
//!   D Z = Z(x)Z;  eps Z = 1;  S Z = Zi
//!   D Zi = Zi(x)Zi;  eps Zi = 1;  S Zi = Z
//! }
//! ```
//!
//! Statements end at `;` or a newline, `#` starts a comment, `(x)` separates
//! tensor legs and `q` is the deformation parameter.

mod expr;
mod lexer;
mod model;

pub use expr::Expr;
pub use model::Model;

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hopf::Tensor;
use crate::ncalg::{GeneratorTable, MonomialOrder, NCElement, Word};
use expr::ExprParser;
use lexer::{lex, Tok, Token};

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraDecl {
    pub name: String,
    /// In increasing term order.
    pub gens: Vec<String>,
    /// Nonzero generator weights of the term order, in generator order.
    pub weights: Vec<(String, i64)>,
    pub rules: Vec<(Word, NCElement)>,
}

impl AlgebraDecl {
    pub fn table(&self) -> GeneratorTable {
        GeneratorTable::new(&self.gens).expect("validated at parse time")
    }

    pub fn order(&self) -> MonomialOrder {
        order_from(&self.table(), &self.weights)
    }
}

fn order_from(t: &GeneratorTable, weights: &[(String, i64)]) -> MonomialOrder {
    let mut w = vec![0; t.len()];
    for (n, k) in weights {
        if let Some(g) = t.lookup(n) {
            w[g as usize] = *k;
        }
    }
    MonomialOrder::weighted(w)
}

/// Generator values keyed by generator name, kept in term order.
pub type GenValues = Vec<(String, Tensor)>;

#[derive(Debug, Clone, PartialEq)]
pub struct HopfDecl {
    pub algebra: String,
    pub delta: GenValues,
    pub eps: GenValues,
    pub antipode: GenValues,
    pub antipode_inv: GenValues,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Map,
    Projection,
    Trivialisation,
    /// Right coaction `P -> P(x)H`.
    Coaction,
}

impl MapKind {
    fn keyword(self) -> &'static str {
        match self {
            MapKind::Map => "map",
            MapKind::Projection => "projection",
            MapKind::Trivialisation => "trivialisation",
            MapKind::Coaction => "coaction",
        }
    }
}

/// How generator values extend to normal words. Both multiply letter by
/// letter; `Multiplicative` additionally requires every relation to be
/// respected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extend {
    Letterwise,
    Multiplicative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapDecl {
    pub kind: MapKind,
    pub name: String,
    pub source: String,
    pub target: String,
    pub values: GenValues,
    pub extend: Extend,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CalculusDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    /// Generators of the subbimodule `N` (two legs over the source).
    pub n: Vec<Tensor>,
    /// Generators of the right ideal `Q` (over the target).
    pub q: Vec<Tensor>,
    pub three_d: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Document {
    pub algebras: Vec<AlgebraDecl>,
    pub hopfs: Vec<HopfDecl>,
    pub maps: Vec<MapDecl>,
    pub calculi: Vec<CalculusDecl>,
    pub warnings: Vec<String>,
}

impl Document {
    pub fn algebra(&self, name: &str) -> Result<&AlgebraDecl> {
        self.algebras
            .iter()
            .find(|a| a.name == name)
            .ok_or_else(|| Error::Undeclared(name.to_string()))
    }

    pub fn map(&self, name: &str) -> Result<&MapDecl> {
        self.maps
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| Error::Undeclared(name.to_string()))
    }

    /// Canonical source text; parsing it gives back an equal document.
    pub fn print(&self) -> String {
        let mut s = String::new();
        for a in &self.algebras {
            let t = a.table();
            let _ = writeln!(s, "algebra {} {{", a.name);
            if !a.gens.is_empty() {
                let _ = writeln!(s, "  gens: {}", a.gens.join(", "));
            }
            if !a.weights.is_empty() {
                let w: Vec<String> = a
                    .weights
                    .iter()
                    .map(|(n, k)| format!("{n} = {k}"))
                    .collect();
                let _ = writeln!(s, "  weights: {}", w.join(", "));
            }
            for (l, r) in &a.rules {
                let _ = writeln!(s, "  rel: {} = {}", l.render(&t), r.render(&t));
            }
            s.push_str("}\n");
        }
        for h in &self.hopfs {
            let t = self.algebra(&h.algebra).map(|a| a.table()).unwrap();
            let _ = writeln!(s, "hopf {} {{", h.algebra);
            for (key, vals, k) in [
                ("D", &h.delta, 2),
                ("eps", &h.eps, 0),
                ("S", &h.antipode, 1),
                ("Sinv", &h.antipode_inv, 1),
            ] {
                for (g, v) in vals {
                    let legs = vec![&t; k];
                    let _ = writeln!(s, "  {} {} = {}", key, g, render_value(v, &legs));
                }
            }
            s.push_str("}\n");
        }
        for m in &self.maps {
            let src = self.algebra(&m.source).map(|a| a.table()).unwrap();
            let tgt = self.algebra(&m.target).map(|a| a.table()).unwrap();
            if m.kind == MapKind::Coaction {
                let _ = writeln!(s, "coaction {} : {} -> {} {{", m.name, m.source, m.target);
            } else {
                let _ = writeln!(
                    s,
                    "{} {} : {} -> {} {{",
                    m.kind.keyword(),
                    m.name,
                    m.source,
                    m.target
                );
            }
            for (g, v) in &m.values {
                let legs = if m.kind == MapKind::Coaction {
                    vec![&src, &tgt]
                } else {
                    vec![&tgt]
                };
                let _ = writeln!(s, "  {} = {}", g, render_value(v, &legs));
            }
            let ext = match m.extend {
                Extend::Letterwise => "letterwise",
                Extend::Multiplicative => "multiplicative",
            };
            let _ = writeln!(s, "  extend: {ext}");
            s.push_str("}\n");
        }
        for c in &self.calculi {
            let src = self.algebra(&c.source).map(|a| a.table()).unwrap();
            let tgt = self.algebra(&c.target).map(|a| a.table()).unwrap();
            let _ = writeln!(s, "calculus {} : {} -> {} {{", c.name, c.source, c.target);
            for n in &c.n {
                let _ = writeln!(s, "  N: {}", render_value(n, &[&src, &src]));
            }
            for x in &c.q {
                let _ = writeln!(s, "  Q: {}", render_value(x, &[&tgt]));
            }
            if c.three_d {
                s.push_str("  threeD\n");
            }
            s.push_str("}\n");
        }
        s
    }
}

fn render_value(t: &Tensor, legs: &[&GeneratorTable]) -> String {
    if t.arity() == 0 {
        return t.to_scalar().to_string();
    }
    t.render(legs)
}

/// Parses a document. Relations given with `rel:` must already be oriented
/// (every right-hand word smaller than the left-hand word); `eq:` relations
/// are oriented automatically and a warning is recorded.
pub fn parse(src: &str) -> Result<Document> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        doc: Document::default(),
    };
    p.document()?;
    Ok(p.doc)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    doc: Document,
}

/// A raw statement inside a block: leading keyword tokens up to `=` or `:`,
/// then the remaining tokens.
struct Stmt {
    head: Vec<Token>,
    sep: Option<Tok>,
    body: Vec<Token>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn err_at(&self, t: &Token, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: t.line,
            col: t.col,
            msg: msg.into(),
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        self.err_at(&self.toks[self.pos], msg)
    }

    fn skip_newlines(&mut self) {
        while matches!(self.peek(), Tok::Newline | Tok::Semi) {
            self.pos += 1;
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err("expected identifier")),
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn document(&mut self) -> Result<()> {
        loop {
            self.skip_newlines();
            if *self.peek() == Tok::Eof {
                return Ok(());
            }
            let kw_tok = self.toks[self.pos].clone();
            let kw = self.ident()?;
            match kw.as_str() {
                "algebra" => self.algebra_block()?,
                "hopf" => self.hopf_block()?,
                "coaction" => self.map_block(MapKind::Coaction)?,
                "projection" => self.map_block(MapKind::Projection)?,
                "trivialisation" => self.map_block(MapKind::Trivialisation)?,
                "map" => self.map_block(MapKind::Map)?,
                "calculus" => self.calculus_block()?,
                _ => return Err(self.err_at(&kw_tok, format!("unknown block `{kw}`"))),
            }
        }
    }

    /// Reads `{ ... }` into statements.
    fn block_body(&mut self) -> Result<Vec<Stmt>> {
        self.skip_inline_newlines();
        self.expect(Tok::LBrace, "`{`")?;
        let mut out = Vec::new();
        loop {
            self.skip_newlines();
            if *self.peek() == Tok::RBrace {
                self.pos += 1;
                return Ok(out);
            }
            if *self.peek() == Tok::Eof {
                return Err(self.err("unterminated block"));
            }
            let mut head = Vec::new();
            let mut sep = None;
            while !matches!(
                self.peek(),
                Tok::Eq | Tok::Colon | Tok::Semi | Tok::Newline | Tok::RBrace | Tok::Eof
            ) {
                head.push(self.toks[self.pos].clone());
                self.pos += 1;
            }
            if matches!(self.peek(), Tok::Eq | Tok::Colon) {
                sep = Some(self.peek().clone());
                self.pos += 1;
            }
            let mut body = Vec::new();
            while !matches!(
                self.peek(),
                Tok::Semi | Tok::Newline | Tok::RBrace | Tok::Eof
            ) {
                body.push(self.toks[self.pos].clone());
                self.pos += 1;
            }
            let last = self.toks[self.pos].clone();
            body.push(Token {
                tok: Tok::Eof,
                line: last.line,
                col: last.col,
            });
            out.push(Stmt { head, sep, body });
        }
    }

    fn skip_inline_newlines(&mut self) {
        while *self.peek() == Tok::Newline {
            self.pos += 1;
        }
    }

    fn algebra_block(&mut self) -> Result<()> {
        let name = self.ident()?;
        if self.doc.algebras.iter().any(|a| a.name == name) {
            return Err(self.err(format!("algebra `{name}` declared twice")));
        }
        let stmts = self.block_body()?;
        let mut gens: Vec<String> = Vec::new();
        let mut order: Option<Vec<String>> = None;
        let mut weights: Vec<(String, i64)> = Vec::new();
        let mut rels = Vec::new();
        for st in &stmts {
            let key = head_name(&st.head);
            match (key.as_deref(), &st.sep) {
                (Some("gens"), Some(Tok::Colon)) => {
                    gens = list(&st.body, Tok::Comma)
                        .map_err(|t| self.err_at(&t, "expected generator list"))?;
                    for g in &gens {
                        if g == "q" || g == "x" {
                            return Err(self.err_at(&st.head[0], format!("`{g}` is reserved")));
                        }
                    }
                }
                (Some("order"), Some(Tok::Colon)) => {
                    order = Some(
                        list(&st.body, Tok::Lt)
                            .map_err(|t| self.err_at(&t, "expected `a < b < ...`"))?,
                    );
                }
                (Some("weights"), Some(Tok::Colon)) => {
                    weights = weight_list(&st.body)
                        .map_err(|t| self.err_at(&t, "expected `g = n, ...`"))?;
                }
                (Some("rel"), Some(Tok::Colon)) => rels.push((st, true)),
                (Some("eq"), Some(Tok::Colon)) => rels.push((st, false)),
                _ => {
                    return Err(
                        self.err_at(stmt_tok(st), "expected `gens:`, `order:`, `rel:` or `eq:`")
                    )
                }
            }
        }
        if let Some(o) = order {
            let mut a = o.clone();
            let mut b = gens.clone();
            a.sort();
            b.sort();
            if a != b {
                return Err(Error::Presentation(format!(
                    "order of `{name}` must list every generator once"
                )));
            }
            gens = o;
        }
        let table = GeneratorTable::new(&gens)?;
        for (n, _) in &weights {
            if table.lookup(n).is_none() {
                return Err(Error::Undeclared(n.clone()));
            }
        }
        weights.retain(|(_, k)| *k != 0);
        weights.sort_by_key(|(n, _)| table.lookup(n));
        let ord = order_from(&table, &weights);
        let mut rules = Vec::new();
        for (st, oriented) in rels {
            let (lhs_e, rhs_e) =
                split_eq(&st.body).map_err(|t| self.err_at(&t, "expected `lhs = rhs`"))?;
            let l = eval_tokens(&lhs_e, &[&table])?.to_element();
            let r = eval_tokens(&rhs_e, &[&table])?.to_element();
            let text = format!("{} = {}", l.render(&table), r.render(&table));
            let (lw, rhs) = if oriented {
                let mut it = l.terms();
                let (lw, c) = match (it.next(), it.next()) {
                    (Some((w, c)), None) => (w.clone(), c.clone()),
                    _ => return Err(Error::NonOrientable(text)),
                };
                if !c.is_one() {
                    return Err(Error::NonOrientable(text));
                }
                if r.terms().any(|(w, _)| ord.cmp(w, &lw).is_ge()) {
                    return Err(Error::NonOrientable(text));
                }
                (lw, r)
            } else {
                let diff = &l - &r;
                let Some((m, c)) = diff
                    .terms()
                    .max_by(|x, y| ord.cmp(x.0, y.0))
                    .map(|(w, c)| (w.clone(), c.clone()))
                else {
                    return Err(Error::NonOrientable(text));
                };
                let mut rest = diff.clone();
                rest.add_term(m.clone(), &-&c);
                let rhs = rest.scale(&(-&c.inv()?));
                self.doc.warnings.push(format!(
                    "auto-oriented `{}` as `{} = {}`",
                    text,
                    m.render(&table),
                    rhs.render(&table)
                ));
                (m, rhs)
            };
            if lw.degree() < 2 {
                return Err(Error::NonOrientable(text));
            }
            rules.push((lw, rhs));
        }
        self.doc.algebras.push(AlgebraDecl {
            name,
            gens,
            weights,
            rules,
        });
        Ok(())
    }

    fn hopf_block(&mut self) -> Result<()> {
        let algebra = match self.peek() {
            Tok::Ident(_) => self.ident()?,
            _ => self
                .doc
                .algebras
                .last()
                .map(|a| a.name.clone())
                .ok_or_else(|| self.err("hopf block before any algebra"))?,
        };
        let table = self.doc.algebra(&algebra)?.table();
        let stmts = self.block_body()?;
        let mut decl = HopfDecl {
            algebra,
            delta: Vec::new(),
            eps: Vec::new(),
            antipode: Vec::new(),
            antipode_inv: Vec::new(),
        };
        for st in &stmts {
            let bad = || {
                self.err_at(
                    stmt_tok(st),
                    "expected `D g = ...`, `eps g = ...`, `S g = ...` or `Sinv g = ...`",
                )
            };
            if st.sep != Some(Tok::Eq) || st.head.len() != 2 {
                return Err(bad());
            }
            let (Tok::Ident(k), Tok::Ident(g)) = (&st.head[0].tok, &st.head[1].tok) else {
                return Err(bad());
            };
            if table.lookup(g).is_none() {
                return Err(Error::Undeclared(g.clone()));
            }
            let (slot, legs): (&mut GenValues, Vec<&GeneratorTable>) = match k.as_str() {
                "D" => (&mut decl.delta, vec![&table, &table]),
                "eps" => (&mut decl.eps, vec![]),
                "S" => (&mut decl.antipode, vec![&table]),
                "Sinv" => (&mut decl.antipode_inv, vec![&table]),
                _ => return Err(bad()),
            };
            let v = eval_tokens(&st.body, &legs)?;
            insert_value(slot, &table, g, v).map_err(|m| self.err_at(&st.head[1], m))?;
        }
        self.doc.hopfs.push(decl);
        Ok(())
    }

    fn arrow_header(&mut self) -> Result<(String, String, String)> {
        let name = self.ident()?;
        self.expect(Tok::Colon, "`:`")?;
        let source = self.ident()?;
        self.expect(Tok::Arrow, "`->`")?;
        let target = self.ident()?;
        Ok((name, source, target))
    }

    fn map_block(&mut self, kind: MapKind) -> Result<()> {
        let (name, source, target) = self.arrow_header()?;
        if self.doc.maps.iter().any(|m| m.name == name) {
            return Err(self.err(format!("map `{name}` declared twice")));
        }
        let src = self.doc.algebra(&source)?.table();
        let tgt = self.doc.algebra(&target)?.table();
        let legs: Vec<&GeneratorTable> = if kind == MapKind::Coaction {
            vec![&src, &tgt]
        } else {
            vec![&tgt]
        };
        let stmts = self.block_body()?;
        let mut values = Vec::new();
        let mut extend = if kind == MapKind::Map || kind == MapKind::Trivialisation {
            Extend::Letterwise
        } else {
            Extend::Multiplicative
        };
        for st in &stmts {
            match (head_name(&st.head).as_deref(), &st.sep) {
                (Some("extend"), Some(Tok::Colon)) => {
                    extend = match single_ident(&st.body).as_deref() {
                        Some("letterwise") => Extend::Letterwise,
                        Some("multiplicative") => Extend::Multiplicative,
                        _ => {
                            return Err(self
                                .err_at(stmt_tok(st), "expected `letterwise` or `multiplicative`"))
                        }
                    };
                }
                (Some(g), Some(Tok::Eq)) => {
                    if src.lookup(g).is_none() {
                        return Err(Error::Undeclared(g.to_string()));
                    }
                    let v = eval_tokens(&st.body, &legs)?;
                    insert_value(&mut values, &src, g, v)
                        .map_err(|m| self.err_at(&st.head[0], m))?;
                }
                _ => return Err(self.err_at(stmt_tok(st), "expected `g = ...` or `extend: ...`")),
            }
        }
        self.doc.maps.push(MapDecl {
            kind,
            name,
            source,
            target,
            values,
            extend,
        });
        Ok(())
    }

    fn calculus_block(&mut self) -> Result<()> {
        let (name, source, target) = self.arrow_header()?;
        let src = self.doc.algebra(&source)?.table();
        let tgt = self.doc.algebra(&target)?.table();
        let stmts = self.block_body()?;
        let mut decl = CalculusDecl {
            name,
            source,
            target,
            n: Vec::new(),
            q: Vec::new(),
            three_d: false,
        };
        for st in &stmts {
            match (head_name(&st.head).as_deref(), &st.sep) {
                (Some("N"), Some(Tok::Colon)) => decl.n.push(eval_tokens(&st.body, &[&src, &src])?),
                (Some("Q"), Some(Tok::Colon)) => decl.q.push(eval_tokens(&st.body, &[&tgt])?),
                (Some("threeD"), None) => decl.three_d = true,
                _ => return Err(self.err_at(stmt_tok(st), "expected `N:`, `Q:` or `threeD`")),
            }
        }
        self.doc.calculi.push(decl);
        Ok(())
    }
}

fn stmt_tok(st: &Stmt) -> &Token {
    st.head.first().unwrap_or(&st.body[0])
}

fn head_name(head: &[Token]) -> Option<String> {
    match head {
        [Token {
            tok: Tok::Ident(s), ..
        }] => Some(s.clone()),
        _ => None,
    }
}

fn single_ident(body: &[Token]) -> Option<String> {
    match body {
        [Token {
            tok: Tok::Ident(s), ..
        }, Token { tok: Tok::Eof, .. }] => Some(s.clone()),
        _ => None,
    }
}

/// `a sep b sep c` (body ends with `Eof`). Empty bodies give an empty list.
fn list(body: &[Token], sep: Tok) -> std::result::Result<Vec<String>, Token> {
    let mut out = Vec::new();
    let items = &body[..body.len() - 1];
    if items.is_empty() {
        return Ok(out);
    }
    for (i, t) in items.iter().enumerate() {
        match (&t.tok, i % 2) {
            (Tok::Ident(s), 0) => out.push(s.clone()),
            (x, 1) if *x == sep => {}
            _ => return Err(t.clone()),
        }
    }
    if items.len().is_multiple_of(2) {
        return Err(items[items.len() - 1].clone());
    }
    Ok(out)
}

fn weight_list(body: &[Token]) -> std::result::Result<Vec<(String, i64)>, Token> {
    let items = &body[..body.len() - 1];
    let mut out = Vec::new();
    for chunk in items.split(|t| t.tok == Tok::Comma) {
        match chunk {
            [Token {
                tok: Tok::Ident(n), ..
            }, Token { tok: Tok::Eq, .. }, Token {
                tok: Tok::Int(k), ..
            }] => {
                let k: i64 = k.try_into().map_err(|_| chunk[2].clone())?;
                out.push((n.clone(), k));
            }
            [] => return Err(body[body.len() - 1].clone()),
            _ => return Err(chunk[0].clone()),
        }
    }
    Ok(out)
}

fn split_eq(body: &[Token]) -> std::result::Result<(Vec<Token>, Vec<Token>), Token> {
    let k = body
        .iter()
        .position(|t| t.tok == Tok::Eq)
        .ok_or_else(|| body[0].clone())?;
    let mut l = body[..k].to_vec();
    let e = &body[k];
    l.push(Token {
        tok: Tok::Eof,
        line: e.line,
        col: e.col,
    });
    Ok((l, body[k + 1..].to_vec()))
}

fn eval_tokens(body: &[Token], legs: &[&GeneratorTable]) -> Result<Tensor> {
    let mut p = ExprParser { toks: body, pos: 0 };
    let e = p.parse()?;
    if body[p.pos].tok != Tok::Eof {
        let t = &body[p.pos];
        return Err(Error::Parse {
            line: t.line,
            col: t.col,
            msg: "unexpected token after expression".into(),
        });
    }
    expr::eval(&e, legs)
}

fn insert_value(
    slot: &mut GenValues,
    table: &GeneratorTable,
    g: &str,
    v: Tensor,
) -> std::result::Result<(), String> {
    if slot.iter().any(|(n, _)| n == g) {
        return Err(format!("value for `{g}` given twice"));
    }
    slot.push((g.to_string(), v));
    slot.sort_by_key(|(n, _)| table.lookup(n));
    Ok(())
}

/// Parses a single element over `gens` (no tensor legs).
pub fn parse_element(src: &str, gens: &GeneratorTable) -> Result<NCElement> {
    let toks: Vec<Token> = lex(src)?
        .into_iter()
        .filter(|t| t.tok != Tok::Newline)
        .collect();
    Ok(eval_tokens(&toks, &[gens])?.to_element())
}

/// Parses a tensor expression whose legs use the given tables.
pub fn parse_tensor(src: &str, legs: &[&GeneratorTable]) -> Result<Tensor> {
    let toks: Vec<Token> = lex(src)?
        .into_iter()
        .filter(|t| t.tok != Tok::Newline)
        .collect();
    eval_tokens(&toks, legs)
}
