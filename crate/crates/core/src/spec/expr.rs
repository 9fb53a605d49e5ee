//! The expression language of spec files: rationals, names, `+ - * / ^`
//! and parentheses.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{Algebra, Element};
use crate::scalars::{Field, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Name(String, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

/// Error with a 0-based column into the parsed text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    pub col: usize,
    pub msg: String,
}

fn err<T>(col: usize, msg: impl Into<String>) -> Result<T, ExprError> {
    Err(ExprError { col, msg: msg.into() })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let cs: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let (pos, c) = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = cs[start..i].iter().map(|p| p.1).collect();
            out.push((Tok::Num(text.parse().expect("digits")), pos));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < cs.len() && (cs[i].1.is_alphanumeric() || cs[i].1 == '_') {
                i += 1;
            }
            out.push((Tok::Name(cs[start..i].iter().map(|p| p.1).collect()), pos));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), pos));
            i += 1;
        } else if c == '·' {
            out.push((Tok::Op('*'), pos));
            i += 1;
        } else {
            return err(pos, format!("unexpected character '{c}'"));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.at).map(|t| t.1).unwrap_or(self.end)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.product()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                let e: i64 = n.try_into().map_err(|_| ExprError { col, msg: "exponent too large".into() })?;
                Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
            }
            _ => err(col, "expected an integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Name(s)) => {
                self.at += 1;
                Ok(Expr::Name(s, col))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return err(self.col(), "expected ')'");
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => err(col, format!("unexpected '{c}'")),
            None => err(col, "unexpected end of expression"),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr, ExprError> {
    let toks = lex(s)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: s.len(),
    };
    let e = p.sum()?;
    if p.at < p.toks.len() {
        return err(p.col(), "unexpected trailing input");
    }
    Ok(e)
}

impl Expr {
    /// Names in order of appearance with their columns.
    pub fn names(&self) -> Vec<(String, usize)> {
        let mut out = Vec::new();
        self.walk(&mut |e| {
            if let Expr::Name(n, c) = e {
                out.push((n.clone(), *c));
            }
        });
        out
    }

    fn walk(&self, f: &mut impl FnMut(&Expr)) {
        f(self);
        match self {
            Expr::Num(_) | Expr::Name(..) => {}
            Expr::Neg(a) | Expr::Pow(a, _) => a.walk(f),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.walk(f);
                b.walk(f);
            }
        }
    }

    pub fn eval<D: Domain>(&self, d: &D) -> Result<D::V, ExprError> {
        match self {
            Expr::Num(n) => Ok(d.rational(&BigRational::from_integer(n.clone()))),
            Expr::Name(s, c) => d.name(s).ok_or_else(|| ExprError {
                col: *c,
                msg: format!("unknown symbol '{s}'"),
            }),
            Expr::Neg(a) => Ok(d.neg(&a.eval(d)?)),
            Expr::Add(a, b) => Ok(d.add(&a.eval(d)?, &b.eval(d)?)),
            Expr::Sub(a, b) => Ok(d.add(&a.eval(d)?, &d.neg(&b.eval(d)?))),
            Expr::Mul(a, b) => Ok(d.mul(&a.eval(d)?, &b.eval(d)?)),
            Expr::Div(a, b) => {
                let den = b.eval(d)?;
                let inv = d.inv(&den).ok_or_else(|| ExprError {
                    col: b.first_col(),
                    msg: "division by a non-invertible value".into(),
                })?;
                Ok(d.mul(&a.eval(d)?, &inv))
            }
            Expr::Pow(a, e) => {
                let base = a.eval(d)?;
                let base = if *e < 0 {
                    d.inv(&base).ok_or_else(|| ExprError {
                        col: a.first_col(),
                        msg: "negative power of a non-invertible value".into(),
                    })?
                } else {
                    base
                };
                let mut acc = d.rational(&BigRational::from_integer(1.into()));
                for _ in 0..e.unsigned_abs() {
                    acc = d.mul(&acc, &base);
                }
                Ok(acc)
            }
        }
    }

    fn first_col(&self) -> usize {
        let mut col = usize::MAX;
        self.walk(&mut |e| {
            if let Expr::Name(_, c) = e {
                col = col.min(*c);
            }
        });
        if col == usize::MAX {
            0
        } else {
            col
        }
    }
}

/// Where an expression is evaluated.
pub trait Domain {
    type V;
    fn rational(&self, q: &BigRational) -> Self::V;
    fn name(&self, s: &str) -> Option<Self::V>;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn inv(&self, a: &Self::V) -> Option<Self::V>;
}

/// Scalars of a field tower.
pub struct ScalarDomain<'a>(pub &'a Field);

impl Domain for ScalarDomain<'_> {
    type V = Scalar;
    fn rational(&self, q: &BigRational) -> Scalar {
        self.0.rational(q)
    }
    fn name(&self, s: &str) -> Option<Scalar> {
        self.0.generator(s)
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn inv(&self, a: &Scalar) -> Option<Scalar> {
        a.inv().ok()
    }
}

/// Polynomials in one new symbol over a field, coefficients constant term
/// first.
pub struct PolyDomain<'a> {
    pub field: &'a Field,
    pub var: &'a str,
}

fn trim(mut p: Vec<Scalar>) -> Vec<Scalar> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

impl Domain for PolyDomain<'_> {
    type V = Vec<Scalar>;
    fn rational(&self, q: &BigRational) -> Vec<Scalar> {
        trim(vec![self.field.rational(q)])
    }
    fn name(&self, s: &str) -> Option<Vec<Scalar>> {
        if s == self.var {
            Some(vec![self.field.zero(), self.field.one()])
        } else {
            self.field.generator(s).map(|g| trim(vec![g]))
        }
    }
    fn neg(&self, a: &Vec<Scalar>) -> Vec<Scalar> {
        a.iter().map(|c| -c).collect()
    }
    fn add(&self, a: &Vec<Scalar>, b: &Vec<Scalar>) -> Vec<Scalar> {
        let n = a.len().max(b.len());
        let z = self.field.zero();
        trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
    }
    fn mul(&self, a: &Vec<Scalar>, b: &Vec<Scalar>) -> Vec<Scalar> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.field.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        trim(out)
    }
    fn inv(&self, a: &Vec<Scalar>) -> Option<Vec<Scalar>> {
        match a.as_slice() {
            [c] => c.inv().ok().map(|i| vec![i]),
            _ => None,
        }
    }
}

/// Elements of an algebra; names resolve to algebra generators and to
/// generators of the coefficient tower.
pub struct ElementDomain<'a>(pub &'a Algebra);

impl Domain for ElementDomain<'_> {
    type V = Element;
    fn rational(&self, q: &BigRational) -> Element {
        Element::scalar(self.0, &self.0.coeff_field().rational(q))
    }
    fn name(&self, s: &str) -> Option<Element> {
        self.0.generator(s).ok()
    }
    fn neg(&self, a: &Element) -> Element {
        -a
    }
    fn add(&self, a: &Element, b: &Element) -> Element {
        a + b
    }
    fn mul(&self, a: &Element, b: &Element) -> Element {
        a * b
    }
    fn inv(&self, a: &Element) -> Option<Element> {
        let c = a.as_scalar()?.inv().ok()?;
        Some(Element::scalar(self.0, &c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        let f = Field::rationals();
        parse_expr(s).unwrap().eval(&ScalarDomain(&f)).unwrap()
    }

    #[test]
    fn precedence_and_powers() {
        let f = Field::rationals();
        assert_eq!(q("1 + 2*3^2"), f.int(19));
        assert_eq!(q("-2^2"), f.int(-4));
        assert_eq!(q("(1 - 3)/4"), f.frac(-1, 2));
        assert_eq!(q("2^-2 · 8"), f.int(2));
    }

    #[test]
    fn errors_point_at_columns() {
        assert_eq!(parse_expr("1 + * 2").unwrap_err().col, 4);
        assert_eq!(parse_expr("(1 + 2").unwrap_err().col, 6);
        assert_eq!(parse_expr("2 3").unwrap_err().col, 2);
        let f = Field::rationals();
        let e = parse_expr("1 + zz").unwrap().eval(&ScalarDomain(&f)).unwrap_err();
        assert_eq!((e.col, e.msg.as_str()), (4, "unknown symbol 'zz'"));
        assert!(parse_expr("1/0").unwrap().eval(&ScalarDomain(&f)).is_err());
    }

    #[test]
    fn polynomials_in_a_new_symbol() {
        let f = Field::rationals();
        let d = PolyDomain { field: &f, var: "t" };
        let p = parse_expr("(t - 1)*(t + 1)").unwrap().eval(&d).unwrap();
        assert_eq!(p, vec![f.int(-1), f.zero(), f.one()]);
        assert!(parse_expr("1/t").unwrap().eval(&d).is_err());
    }
}
