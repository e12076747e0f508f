//! Expressions: sums of products of scalars, generators and `(x)`-separated
//! tensor legs.

use num_bigint::BigInt;

use super::lexer::{Tok, Token};
use crate::error::{Error, Result};
use crate::hopf::Tensor;
use crate::ncalg::{GeneratorTable, Word};
use crate::qscalar::QRat;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Sym {
        name: String,
        line: usize,
        col: usize,
    },
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Tensor(Vec<Expr>),
}

pub struct ExprParser<'a> {
    pub toks: &'a [Token],
    pub pos: usize,
}

impl<'a> ExprParser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let t = &self.toks[self.pos];
        Error::Parse {
            line: t.line,
            col: t.col,
            msg: msg.into(),
        }
    }

    pub fn parse(&mut self) -> Result<Expr> {
        let mut lhs = match self.peek() {
            Tok::Minus => {
                self.pos += 1;
                Expr::Neg(Box::new(self.tprod()?))
            }
            Tok::Plus => {
                self.pos += 1;
                self.tprod()?
            }
            _ => self.tprod()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.tprod()?));
                }
                Tok::Minus => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.tprod()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn tprod(&mut self) -> Result<Expr> {
        let first = self.prod()?;
        if *self.peek() != Tok::Tensor {
            return Ok(first);
        }
        let mut legs = vec![first];
        while *self.peek() == Tok::Tensor {
            self.pos += 1;
            legs.push(self.prod()?);
        }
        Ok(Expr::Tensor(legs))
    }

    fn prod(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if *self.peek() == Tok::Minus {
            self.pos += 1;
            true
        } else {
            false
        };
        let Tok::Int(n) = self.peek().clone() else {
            return Err(self.err("expected integer exponent"));
        };
        self.pos += 1;
        let n: i64 = n.try_into().map_err(|_| self.err("exponent too large"))?;
        Ok(Expr::Pow(Box::new(base), if neg { -n } else { n }))
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.toks[self.pos].clone();
        match t.tok {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                Ok(Expr::Sym {
                    name,
                    line: t.line,
                    col: t.col,
                })
            }
            Tok::LParen => {
                self.pos += 1;
                let e = self.parse()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.err("expected a number, symbol or `(`")),
        }
    }
}

/// Evaluates `e` as a tensor whose leg `i` uses `legs[i]` for symbol
/// lookup. Words are concatenated freely (no reduction).
pub fn eval(e: &Expr, legs: &[&GeneratorTable]) -> Result<Tensor> {
    let t = eval_at(e, legs, 0)?;
    promote(t, legs.len())
}

fn promote(t: Tensor, arity: usize) -> Result<Tensor> {
    if t.arity() == arity {
        return Ok(t);
    }
    if t.arity() == 0 {
        return Ok(Tensor::unit(arity).scale(&t.to_scalar()));
    }
    Err(Error::Presentation(format!(
        "expression has {} tensor legs, expected {}",
        t.arity(),
        arity
    )))
}

fn free_mul(a: &Tensor, b: &Tensor) -> Result<Tensor> {
    if a.arity() == 0 {
        return Ok(b.scale(&a.to_scalar()));
    }
    if b.arity() == 0 {
        return Ok(a.scale(&b.to_scalar()));
    }
    if a.arity() != b.arity() {
        return Err(Error::Presentation(
            "product of tensors with different leg counts".into(),
        ));
    }
    let mut out = Tensor::zero(a.arity());
    for (x, c) in a.terms() {
        for (y, d) in b.terms() {
            let legs = x.iter().zip(y).map(|(u, v)| u.concat(v)).collect();
            out.add_term(legs, &(c * d));
        }
    }
    Ok(out)
}

fn eval_at(e: &Expr, legs: &[&GeneratorTable], off: usize) -> Result<Tensor> {
    match e {
        Expr::Int(n) => Ok(Tensor::scalar(QRat::from_bigint(n.clone()))),
        Expr::Sym { name, line, col } => {
            if name == "q" {
                return Ok(Tensor::scalar(QRat::q()));
            }
            let table = legs.get(off).ok_or_else(|| Error::Parse {
                line: *line,
                col: *col,
                msg: "too many tensor legs".into(),
            })?;
            let g = table
                .lookup(name)
                .ok_or_else(|| Error::Undeclared(name.clone()))?;
            Ok(Tensor::pure(vec![Word::gen(g)], QRat::one()))
        }
        Expr::Neg(a) => Ok(eval_at(a, legs, off)?.scale(&QRat::from_int(-1))),
        Expr::Pow(a, n) => {
            let b = eval_at(a, legs, off)?;
            if b.arity() == 0 {
                return Ok(Tensor::scalar(b.to_scalar().pow(*n)?));
            }
            if *n < 0 {
                return Err(Error::Presentation("negative power of a non-scalar".into()));
            }
            let mut acc = Tensor::scalar(QRat::one());
            for _ in 0..*n {
                acc = free_mul(&acc, &b)?;
            }
            promote(acc, b.arity())
        }
        Expr::Mul(a, b) => free_mul(&eval_at(a, legs, off)?, &eval_at(b, legs, off)?),
        Expr::Div(a, b) => {
            let d = eval_at(b, legs, off)?;
            if d.arity() != 0 {
                return Err(Error::Presentation("division by a non-scalar".into()));
            }
            Ok(eval_at(a, legs, off)?.scale(&d.to_scalar().inv()?))
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let x = eval_at(a, legs, off)?;
            let y = eval_at(b, legs, off)?;
            let k = x.arity().max(y.arity());
            let (x, mut y) = (promote(x, k)?, promote(y, k)?);
            if matches!(e, Expr::Sub(..)) {
                y = y.scale(&QRat::from_int(-1));
            }
            Ok(x.add(&y))
        }
        Expr::Tensor(parts) => {
            let mut acc = Tensor::scalar(QRat::one());
            let mut o = off;
            for p in parts {
                let mut t = eval_at(p, legs, o)?;
                if t.arity() == 0 {
                    t = promote(t, 1)?;
                }
                o += t.arity();
                acc = acc.tensor(&t);
            }
            Ok(acc)
        }
    }
}
