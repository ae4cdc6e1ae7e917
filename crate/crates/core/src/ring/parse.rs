//! Parser for scalar expressions, used for parameter files and for
//! re-reading canonical output.
//!
//! Grammar: sums and differences of products and quotients of powers of
//! integers, generators (`name` or `name[index]`) and parenthesized
//! expressions. A divisor that is syntactically a product or power is
//! divided out factor by factor, so re-reading a canonical string rebuilds
//! exactly the same factored denominator.

use super::coef::{Coef, CoefError};
use super::q::Q;
use super::var::Var;

#[derive(Debug, Clone)]
enum Ast {
    Num(Q),
    Var(Var),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> CoefError {
        CoefError::Parse(self.src.to_string(), format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Ast, CoefError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some('-') => {
                    self.pos += 1;
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast, CoefError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some('/') => {
                    self.pos += 1;
                    lhs = Ast::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast, CoefError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(Ast::Neg(Box::new(self.unary()?)))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Ast, CoefError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let s: String = self.chars[start..self.pos].iter().collect();
            let e: u32 = s.parse().map_err(|_| self.err("expected exponent"))?;
            return Ok(Ast::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast, CoefError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                let q: Q = s.parse().map_err(|_| self.err("bad integer"))?;
                Ok(Ast::Num(q))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric()
                        || self.chars[self.pos] == '_'
                        || self.chars[self.pos] == '\'')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if self.chars.get(self.pos) == Some(&'[') {
                    self.pos += 1;
                    let istart = self.pos;
                    while self.pos < self.chars.len() && self.chars[self.pos] != ']' {
                        self.pos += 1;
                    }
                    let idx: String = self.chars[istart..self.pos].iter().collect();
                    if self.chars.get(self.pos) != Some(&']') {
                        return Err(self.err("expected `]`"));
                    }
                    self.pos += 1;
                    let i: i64 = idx.trim().parse().map_err(|_| self.err("bad index"))?;
                    Ok(Ast::Var(Var::indexed(&name, i)))
                } else {
                    Ok(Ast::Var(Var::named(&name)))
                }
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

fn eval(a: &Ast) -> Result<Coef, CoefError> {
    Ok(match a {
        Ast::Num(q) => Coef::rational(q.clone()),
        Ast::Var(v) => Coef::var(*v),
        Ast::Neg(x) => eval(x)?.neg(),
        Ast::Add(x, y) => eval(x)?.add(&eval(y)?),
        Ast::Sub(x, y) => eval(x)?.sub(&eval(y)?),
        Ast::Mul(x, y) => eval(x)?.mul(&eval(y)?),
        Ast::Div(x, y) => divide_by_factors(eval(x)?, y)?,
        Ast::Pow(x, e) => eval(x)?.pow(*e as i32)?,
    })
}

fn divide_by_factors(acc: Coef, d: &Ast) -> Result<Coef, CoefError> {
    match d {
        Ast::Mul(x, y) => divide_by_factors(divide_by_factors(acc, x)?, y),
        Ast::Pow(x, e) => {
            let mut acc = acc;
            for _ in 0..*e {
                acc = divide_by_factors(acc, x)?;
            }
            Ok(acc)
        }
        other => acc.div(&eval(other)?),
    }
}

/// Parses a scalar expression.
pub fn parse_coef(s: &str) -> Result<Coef, CoefError> {
    let mut p = Parser { src: s, chars: s.chars().collect(), pos: 0 };
    let ast = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    eval(&ast)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_expressions() {
        let c = parse_coef("(1 - alpha[5]*beta[5])/(1 - beta[5]*x)").unwrap();
        let a = Coef::sym("alpha", Some(5));
        let b = Coef::sym("beta", Some(5));
        let x = Coef::sym("x", None);
        let e = Coef::one().sub(&a.mul(&b)).div(&Coef::one().sub(&b.mul(&x))).unwrap();
        assert_eq!(c, e);
        assert_eq!(parse_coef("3/7").unwrap(), Coef::rational(Q::frac(3, 7)));
        assert_eq!(parse_coef("-2^2").unwrap(), Coef::int(-4));
        assert!(parse_coef("(1").is_err());
        assert!(parse_coef("1 +").is_err());
    }

    #[test]
    fn canonical_round_trip() {
        let x = Coef::sym("rx", None);
        let y = Coef::sym("ry", None);
        let one = Coef::one();
        let v = x
            .add(&y)
            .div(&one.sub(&x).pow(2).unwrap().mul(&one.add(&y.mul(&x))))
            .unwrap()
            .scale(&Q::frac(-3, 2));
        let s = v.to_string();
        let back = parse_coef(&s).unwrap();
        assert_eq!(back.to_string(), s);
        assert_eq!(back, v);
    }
}
