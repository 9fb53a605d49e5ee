//! Field towers with involution and their elements.
//!
//! A tower is built bottom-up from the rationals by two kinds of levels:
//! simple algebraic extensions `base[t]/(m(t))` and rational function fields
//! `base(v_1, ..., v_r)`. Every level carries an involution: on an algebraic
//! level it is the base involution on coefficients followed by a declared
//! image of the generator, on a function level it acts on coefficients and
//! fixes the variables.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::mpoly::{MPoly, Mono};
use super::qpoly::{self, Irreducibility, QPoly};
use super::FieldError;

/// Canonical representation of an element of one tower level.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Value {
    Rat(BigRational),
    /// Residue coefficients over the base, constant term first, trimmed.
    Alg(Vec<Value>),
    Frac(Box<Frac>),
}

/// Reduced fraction with monic (graded-lex leading coefficient one) denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Frac {
    pub num: MPoly,
    pub den: MPoly,
}

#[derive(Debug, PartialEq)]
pub(crate) struct AlgebraicLevel {
    pub base: Field,
    pub name: String,
    /// Monic modulus, constant term first.
    pub modulus: Vec<Value>,
    /// Image of the generator under the involution; `None` means fixed.
    pub conj: Option<Value>,
    /// Isolating intervals of real roots (only over the rationals).
    pub embeddings: Vec<(BigRational, BigRational)>,
}

#[derive(Debug, PartialEq)]
pub(crate) struct FunctionLevel {
    pub base: Field,
    pub vars: Vec<String>,
}

#[derive(Debug, PartialEq)]
pub(crate) enum FieldNode {
    Rationals,
    Algebraic(AlgebraicLevel),
    Functions(FunctionLevel),
}

/// Shared handle to a tower level. Cheap to clone.
#[derive(Clone)]
pub struct Field(pub(crate) Arc<FieldNode>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.describe())
    }
}

/// Element of a field tower in canonical form.
#[derive(Clone)]
pub struct Scalar {
    pub(crate) field: Field,
    pub(crate) value: Value,
}

fn trim(k: &FieldNode, v: &mut Vec<Value>) {
    while v.last().is_some_and(|c| k.is_zero(c)) {
        v.pop();
    }
}

impl FieldNode {
    pub fn zero(&self) -> Value {
        match self {
            FieldNode::Rationals => Value::Rat(BigRational::zero()),
            FieldNode::Algebraic(_) => Value::Alg(Vec::new()),
            FieldNode::Functions(fl) => {
                let n = fl.vars.len();
                Value::Frac(Box::new(Frac {
                    num: MPoly::zero(n),
                    den: MPoly::one(&fl.base.0, n),
                }))
            }
        }
    }

    pub fn one(&self) -> Value {
        match self {
            FieldNode::Rationals => Value::Rat(BigRational::one()),
            FieldNode::Algebraic(l) => Value::Alg(vec![l.base.0.one()]),
            FieldNode::Functions(fl) => {
                let n = fl.vars.len();
                let one = MPoly::one(&fl.base.0, n);
                Value::Frac(Box::new(Frac {
                    num: one.clone(),
                    den: one,
                }))
            }
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Value {
        match self {
            FieldNode::Rationals => Value::Rat(q.clone()),
            FieldNode::Algebraic(l) => self.lift(l.base.0.from_rational(q)),
            FieldNode::Functions(fl) => self.lift(fl.base.0.from_rational(q)),
        }
    }

    /// Embeds a value of the immediate base level.
    pub fn lift(&self, v: Value) -> Value {
        match self {
            FieldNode::Rationals => panic!("the rationals have no base level"),
            FieldNode::Algebraic(l) => {
                if l.base.0.is_zero(&v) {
                    Value::Alg(Vec::new())
                } else {
                    Value::Alg(vec![v])
                }
            }
            FieldNode::Functions(fl) => {
                let n = fl.vars.len();
                Value::Frac(Box::new(Frac {
                    num: MPoly::constant(&fl.base.0, n, v),
                    den: MPoly::one(&fl.base.0, n),
                }))
            }
        }
    }

    pub fn is_zero(&self, v: &Value) -> bool {
        match v {
            Value::Rat(q) => q.is_zero(),
            Value::Alg(c) => c.is_empty(),
            Value::Frac(f) => f.num.is_zero(),
        }
    }

    pub fn add(&self, a: &Value, b: &Value) -> Value {
        match (self, a, b) {
            (FieldNode::Rationals, Value::Rat(x), Value::Rat(y)) => Value::Rat(x + y),
            (FieldNode::Algebraic(l), Value::Alg(x), Value::Alg(y)) => {
                Value::Alg(up_add(&l.base.0, x, y))
            }
            (FieldNode::Functions(fl), Value::Frac(x), Value::Frac(y)) => {
                let k = &fl.base.0;
                if x.den == y.den {
                    normalize(k, x.num.add(k, &y.num), x.den.clone())
                } else if x.den.is_constant() || y.den.is_constant() {
                    let num = x.num.mul(k, &y.den).add(k, &y.num.mul(k, &x.den));
                    normalize(k, num, x.den.mul(k, &y.den))
                } else {
                    // Henrici: common factors of the sum can only divide gcd(b, d)
                    let g = x.den.gcd(k, &y.den);
                    let xd = x.den.div_exact(k, &g).expect("gcd divides");
                    let yd = y.den.div_exact(k, &g).expect("gcd divides");
                    let num = x.num.mul(k, &yd).add(k, &y.num.mul(k, &xd));
                    if num.is_zero() {
                        return self.zero();
                    }
                    let (num, g) = if g.is_constant() {
                        (num, g)
                    } else {
                        let g2 = num.gcd(k, &g);
                        (
                            num.div_exact(k, &g2).expect("gcd divides"),
                            g.div_exact(k, &g2).expect("gcd divides"),
                        )
                    };
                    let den = xd.mul(k, &yd).mul(k, &g);
                    let (lc, den) = den.monic(k);
                    let num = num.scale(k, &k.inv(&lc).expect("nonzero"));
                    Value::Frac(Box::new(Frac { num, den }))
                }
            }
            _ => panic!("value does not belong to this tower level"),
        }
    }

    pub fn neg(&self, a: &Value) -> Value {
        match (self, a) {
            (FieldNode::Rationals, Value::Rat(x)) => Value::Rat(-x),
            (FieldNode::Algebraic(l), Value::Alg(x)) => {
                Value::Alg(x.iter().map(|c| l.base.0.neg(c)).collect())
            }
            (FieldNode::Functions(fl), Value::Frac(x)) => Value::Frac(Box::new(Frac {
                num: x.num.neg(&fl.base.0),
                den: x.den.clone(),
            })),
            _ => panic!("value does not belong to this tower level"),
        }
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Value {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Value {
        match (self, a, b) {
            (FieldNode::Rationals, Value::Rat(x), Value::Rat(y)) => Value::Rat(x * y),
            (FieldNode::Algebraic(l), Value::Alg(x), Value::Alg(y)) => {
                let k = &l.base.0;
                let prod = up_mul(k, x, y);
                Value::Alg(reduce_mod(k, prod, &l.modulus))
            }
            (FieldNode::Functions(fl), Value::Frac(x), Value::Frac(y)) => {
                let k = &fl.base.0;
                if self.is_zero(a) || self.is_zero(b) {
                    return self.zero();
                }
                if x.den.is_constant() && y.den.is_constant() {
                    return Value::Frac(Box::new(Frac {
                        num: x.num.mul(k, &y.num),
                        den: x.den.clone(),
                    }));
                }
                // cross-cancel before multiplying
                let g1 = x.num.gcd(k, &y.den);
                let g2 = y.num.gcd(k, &x.den);
                let n1 = x.num.div_exact(k, &g1).expect("gcd divides");
                let d2 = y.den.div_exact(k, &g1).expect("gcd divides");
                let n2 = y.num.div_exact(k, &g2).expect("gcd divides");
                let d1 = x.den.div_exact(k, &g2).expect("gcd divides");
                let num = n1.mul(k, &n2);
                let den = d1.mul(k, &d2);
                let (lc, den) = den.monic(k);
                let num = num.scale(k, &k.inv(&lc).expect("nonzero"));
                Value::Frac(Box::new(Frac { num, den }))
            }
            _ => panic!("value does not belong to this tower level"),
        }
    }

    pub fn inv(&self, a: &Value) -> Option<Value> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (FieldNode::Rationals, Value::Rat(x)) => Some(Value::Rat(x.recip())),
            (FieldNode::Algebraic(l), Value::Alg(x)) => {
                alg_inverse(&l.base.0, x, &l.modulus).map(Value::Alg)
            }
            (FieldNode::Functions(fl), Value::Frac(x)) => {
                let k = &fl.base.0;
                let (lc, den) = x.num.monic(k);
                let num = x.den.scale(k, &k.inv(&lc)?);
                Some(Value::Frac(Box::new(Frac { num, den })))
            }
            _ => panic!("value does not belong to this tower level"),
        }
    }

    /// The tower involution.
    pub fn conj(&self, a: &Value) -> Value {
        match (self, a) {
            (FieldNode::Rationals, Value::Rat(_)) => a.clone(),
            (FieldNode::Algebraic(l), Value::Alg(x)) => {
                let k = &l.base.0;
                let coeffs: Vec<Value> = x.iter().map(|c| k.conj(c)).collect();
                match &l.conj {
                    None => Value::Alg(coeffs),
                    Some(img) => {
                        let mut acc = self.zero();
                        for c in coeffs.into_iter().rev() {
                            acc = self.add(&self.mul(&acc, img), &self.lift(c));
                        }
                        acc
                    }
                }
            }
            (FieldNode::Functions(fl), Value::Frac(x)) => {
                let k = &fl.base.0;
                if k.involution_is_trivial() {
                    return a.clone();
                }
                let num = x.num.map_coeffs(k, |c| k.conj(c));
                let den = x.den.map_coeffs(k, |c| k.conj(c));
                Value::Frac(Box::new(Frac { num, den }))
            }
            _ => panic!("value does not belong to this tower level"),
        }
    }

    pub fn involution_is_trivial(&self) -> bool {
        match self {
            FieldNode::Rationals => true,
            FieldNode::Algebraic(l) => l.conj.is_none() && l.base.0.involution_is_trivial(),
            FieldNode::Functions(fl) => fl.base.0.involution_is_trivial(),
        }
    }

    /// Rational value of a constant element, looking through every level.
    pub fn as_rational(&self, v: &Value) -> Option<BigRational> {
        match (self, v) {
            (FieldNode::Rationals, Value::Rat(q)) => Some(q.clone()),
            (FieldNode::Algebraic(l), Value::Alg(x)) => match x.len() {
                0 => Some(BigRational::zero()),
                1 => l.base.0.as_rational(&x[0]),
                _ => None,
            },
            (FieldNode::Functions(fl), Value::Frac(x)) => {
                if !x.den.is_constant() {
                    return None;
                }
                let c = x.num.as_constant(&fl.base.0)?;
                fl.base.0.as_rational(&c)
            }
            _ => None,
        }
    }

    /// First rational coefficient met in the canonical representation; used
    /// to normalize elements up to positive rational multiples.
    pub fn first_rational(&self, v: &Value) -> Option<BigRational> {
        match (self, v) {
            (FieldNode::Rationals, Value::Rat(q)) => (!q.is_zero()).then(|| q.clone()),
            (FieldNode::Algebraic(l), Value::Alg(x)) => {
                x.iter().rev().find_map(|c| l.base.0.first_rational(c))
            }
            (FieldNode::Functions(fl), Value::Frac(x)) => {
                let (_, c) = x.num.leading()?;
                fl.base.0.first_rational(c)
            }
            _ => None,
        }
    }

    pub fn base(&self) -> Option<&Field> {
        match self {
            FieldNode::Rationals => None,
            FieldNode::Algebraic(l) => Some(&l.base),
            FieldNode::Functions(fl) => Some(&fl.base),
        }
    }

    pub fn fmt_value(&self, v: &Value) -> String {
        match (self, v) {
            (FieldNode::Rationals, Value::Rat(q)) => q.to_string(),
            (FieldNode::Algebraic(l), Value::Alg(x)) => {
                if x.is_empty() {
                    return "0".into();
                }
                let terms: Vec<String> = x
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, c)| !l.base.0.is_zero(c))
                    .map(|(k, c)| {
                        let mono = match k {
                            0 => String::new(),
                            1 => l.name.clone(),
                            _ => format!("{}^{}", l.name, k),
                        };
                        term_string(&l.base.0.fmt_value(c), &mono)
                    })
                    .collect();
                join_terms(&terms)
            }
            (FieldNode::Functions(fl), Value::Frac(x)) => {
                let num = fmt_mpoly(&fl.base.0, &fl.vars, &x.num);
                if x.den.is_constant() {
                    return num;
                }
                let den = fmt_mpoly(&fl.base.0, &fl.vars, &x.den);
                let num = if num.contains(' ') {
                    format!("({num})")
                } else {
                    num
                };
                let den = if den.contains([' ', '*', '/']) {
                    format!("({den})")
                } else {
                    den
                };
                format!("{num}/{den}")
            }
            _ => "<invalid>".into(),
        }
    }
}

fn term_string(coeff: &str, mono: &str) -> String {
    if mono.is_empty() {
        return coeff.to_string();
    }
    match coeff {
        "1" => mono.to_string(),
        "-1" => format!("-{mono}"),
        c if c.contains(' ') => format!("({c})*{mono}"),
        c => format!("{c}*{mono}"),
    }
}

fn join_terms(terms: &[String]) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn fmt_mpoly(k: &FieldNode, vars: &[String], p: &MPoly) -> String {
    let terms: Vec<String> = p
        .terms
        .iter()
        .rev()
        .map(|(m, c)| {
            let mono: Vec<String> = m
                .0
                .iter()
                .zip(vars)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| {
                    if *e == 1 {
                        v.clone()
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect();
            term_string(&k.fmt_value(c), &mono.join("*"))
        })
        .collect();
    join_terms(&terms)
}

fn normalize(k: &FieldNode, num: MPoly, den: MPoly) -> Value {
    let n = num.nvars;
    if num.is_zero() {
        return Value::Frac(Box::new(Frac {
            num,
            den: MPoly::one(k, n),
        }));
    }
    let (num, den) = if den.is_constant() {
        (num, den)
    } else {
        let g = num.gcd(k, &den);
        if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(k, &g).expect("gcd divides numerator"),
                den.div_exact(k, &g).expect("gcd divides denominator"),
            )
        }
    };
    let (lc, den) = den.monic(k);
    let num = num.scale(k, &k.inv(&lc).expect("denominator is nonzero"));
    Value::Frac(Box::new(Frac { num, den }))
}

fn up_add(k: &FieldNode, a: &[Value], b: &[Value]) -> Vec<Value> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => k.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        });
    }
    trim(k, &mut out);
    out
}

fn up_sub(k: &FieldNode, a: &[Value], b: &[Value]) -> Vec<Value> {
    let nb: Vec<Value> = b.iter().map(|c| k.neg(c)).collect();
    up_add(k, a, &nb)
}

fn up_mul(k: &FieldNode, a: &[Value], b: &[Value]) -> Vec<Value> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if k.is_zero(y) {
                continue;
            }
            out[i + j] = k.add(&out[i + j], &k.mul(x, y));
        }
    }
    trim(k, &mut out);
    out
}

fn up_divrem(k: &FieldNode, a: &[Value], b: &[Value]) -> (Vec<Value>, Vec<Value>) {
    let db = b.len() - 1;
    let lc_inv = k.inv(&b[db]).expect("nonzero leading coefficient");
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![k.zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        if k.is_zero(&rem[i]) {
            continue;
        }
        let c = k.mul(&rem[i], &lc_inv);
        for (j, bj) in b.iter().enumerate() {
            rem[i - db + j] = k.sub(&rem[i - db + j], &k.mul(&c, bj));
        }
        quot[i - db] = c;
    }
    rem.truncate(db);
    trim(k, &mut rem);
    trim(k, &mut quot);
    (quot, rem)
}

fn reduce_mod(k: &FieldNode, mut v: Vec<Value>, modulus: &[Value]) -> Vec<Value> {
    let d = modulus.len() - 1;
    while v.len() > d {
        let top = v.pop().expect("nonempty");
        if k.is_zero(&top) {
            continue;
        }
        let shift = v.len() - d;
        for j in 0..d {
            v[shift + j] = k.sub(&v[shift + j], &k.mul(&top, &modulus[j]));
        }
    }
    trim(k, &mut v);
    v
}

fn alg_inverse(k: &FieldNode, a: &[Value], modulus: &[Value]) -> Option<Vec<Value>> {
    let (mut r0, mut r1) = (modulus.to_vec(), a.to_vec());
    let (mut s0, mut s1): (Vec<Value>, Vec<Value>) = (Vec::new(), vec![k.one()]);
    while !r1.is_empty() {
        let (q, r) = up_divrem(k, &r0, &r1);
        let s2 = up_sub(k, &s0, &up_mul(k, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = k.inv(&r0[0])?;
    let s: Vec<Value> = s0.iter().map(|x| k.mul(x, &c)).collect();
    Some(reduce_mod(k, s, modulus))
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldNode::Rationals))
    }

    /// Simple algebraic extension `base[name]/(modulus)`. The modulus is given
    /// constant term first over `base` and is made monic. Over the rationals
    /// the modulus is tested for irreducibility up to degree six and the real
    /// embeddings are isolated.
    pub fn algebraic(base: &Field, name: &str, modulus: &[Scalar]) -> Result<Field, FieldError> {
        let k = &base.0;
        let mut coeffs = Vec::with_capacity(modulus.len());
        for c in modulus {
            coeffs.push(base.coerce(c)?.value);
        }
        trim(k, &mut coeffs);
        if coeffs.len() < 2 {
            return Err(FieldError::InvalidModulus(format!(
                "modulus for {name} must have positive degree"
            )));
        }
        let lc_inv = k.inv(coeffs.last().unwrap()).expect("nonzero");
        let coeffs: Vec<Value> = coeffs.iter().map(|c| k.mul(c, &lc_inv)).collect();
        let mut embeddings = Vec::new();
        if let FieldNode::Rationals = **k {
            let q = QPoly::new(
                coeffs
                    .iter()
                    .map(|c| k.as_rational(c).expect("rational coefficient"))
                    .collect(),
            );
            match qpoly::irreducibility(&q) {
                Irreducibility::Irreducible => {}
                Irreducibility::Reducible => {
                    return Err(FieldError::InvalidModulus(format!(
                        "minimal polynomial of {name} is reducible over Q"
                    )))
                }
                Irreducibility::Untested => log::warn!(
                    "irreducibility of the minimal polynomial of {name} is not checked (degree {})",
                    coeffs.len() - 1
                ),
            }
            embeddings = qpoly::isolate_real_roots(&q);
        } else if !is_binomial_in_variable(base, &coeffs) {
            log::warn!("irreducibility of the modulus of {name} over {} is trusted", base.describe());
        }
        Ok(Field(Arc::new(FieldNode::Algebraic(AlgebraicLevel {
            base: base.clone(),
            name: name.to_string(),
            modulus: coeffs,
            conj: None,
            embeddings,
        }))))
    }

    /// Rational function field over `base` in the named variables.
    pub fn functions(base: &Field, vars: &[&str]) -> Field {
        Field(Arc::new(FieldNode::Functions(FunctionLevel {
            base: base.clone(),
            vars: vars.iter().map(|v| v.to_string()).collect(),
        })))
    }

    /// Sets the image of the top algebraic generator under the involution.
    /// `image` must be an element of this field.
    pub fn with_involution(&self, image: &Scalar) -> Result<Field, FieldError> {
        let FieldNode::Algebraic(l) = &*self.0 else {
            return Err(FieldError::InvalidInvolution(
                "only an algebraic level has a generator image".into(),
            ));
        };
        if image.field != *self {
            return Err(FieldError::TowerMismatch);
        }
        let gen = Value::Alg(vec![l.base.0.zero(), l.base.0.one()]);
        let conj = if image.value == gen {
            None
        } else {
            Some(image.value.clone())
        };
        let field = Field(Arc::new(FieldNode::Algebraic(AlgebraicLevel {
            base: l.base.clone(),
            name: l.name.clone(),
            modulus: l.modulus.clone(),
            conj,
            embeddings: if image.value == gen {
                l.embeddings.clone()
            } else {
                Vec::new()
            },
        })));
        field.validate_involution()?;
        Ok(field)
    }

    /// Replaces the automatically isolated embeddings by user-chosen intervals.
    pub fn with_embeddings(
        &self,
        intervals: &[(BigRational, BigRational)],
    ) -> Result<Field, FieldError> {
        let FieldNode::Algebraic(l) = &*self.0 else {
            return Err(FieldError::NotRealEmbeddable("not an algebraic level".into()));
        };
        let m = self.rational_modulus().ok_or_else(|| {
            FieldError::NotRealEmbeddable(format!("{} is not defined over Q", l.name))
        })?;
        for (lo, hi) in intervals {
            if lo >= hi || m.eval(lo).is_zero() || m.eval(hi).is_zero() {
                return Err(FieldError::NotRealEmbeddable(format!(
                    "interval ({lo}, {hi}] has a root endpoint or is empty"
                )));
            }
            if qpoly::count_roots(&m, lo, hi) != 1 {
                return Err(FieldError::NotRealEmbeddable(format!(
                    "interval ({lo}, {hi}] does not isolate exactly one root of the minimal polynomial of {}",
                    l.name
                )));
            }
        }
        Ok(Field(Arc::new(FieldNode::Algebraic(AlgebraicLevel {
            base: l.base.clone(),
            name: l.name.clone(),
            modulus: l.modulus.clone(),
            conj: l.conj.clone(),
            embeddings: intervals.to_vec(),
        }))))
    }

    fn validate_involution(&self) -> Result<(), FieldError> {
        let FieldNode::Algebraic(l) = &*self.0 else {
            return Ok(());
        };
        let k = &l.base.0;
        let gen = self.level_generator();
        let image = gen.conj();
        // the conjugated modulus must vanish at the image
        let mut acc = self.zero();
        for c in l.modulus.iter().rev() {
            acc = &(&acc * &image) + &Scalar::new(self.clone(), self.0.lift(k.conj(c)));
        }
        if !acc.is_zero() {
            return Err(FieldError::InvalidInvolution(format!(
                "image {} of {} is not a root of the conjugated modulus",
                image, l.name
            )));
        }
        if image.conj() != gen {
            return Err(FieldError::InvalidInvolution(format!(
                "involution applied twice does not fix {}",
                l.name
            )));
        }
        Ok(())
    }

    pub(crate) fn level_generator(&self) -> Scalar {
        match &*self.0 {
            FieldNode::Algebraic(l) => Scalar::new(
                self.clone(),
                Value::Alg(vec![l.base.0.zero(), l.base.0.one()]),
            ),
            _ => panic!("no generator on this level"),
        }
    }

    pub(crate) fn rational_modulus(&self) -> Option<QPoly> {
        match &*self.0 {
            FieldNode::Algebraic(l) if matches!(*l.base.0, FieldNode::Rationals) => {
                Some(QPoly::new(
                    l.modulus
                        .iter()
                        .map(|c| l.base.0.as_rational(c).expect("rational"))
                        .collect(),
                ))
            }
            _ => None,
        }
    }

    /// Isolating intervals of the real embeddings of the top generator (only
    /// for number fields over Q with trivial involution).
    pub fn embeddings(&self) -> Vec<(BigRational, BigRational)> {
        match &*self.0 {
            FieldNode::Algebraic(l) => l.embeddings.clone(),
            _ => Vec::new(),
        }
    }

    pub fn base(&self) -> Option<Field> {
        self.0.base().cloned()
    }

    pub fn is_rationals(&self) -> bool {
        matches!(*self.0, FieldNode::Rationals)
    }

    /// Degree of the top level over its base (0 for a function level).
    pub fn level_degree(&self) -> usize {
        match &*self.0 {
            FieldNode::Rationals => 1,
            FieldNode::Algebraic(l) => l.modulus.len() - 1,
            FieldNode::Functions(_) => 0,
        }
    }

    /// Names of every generator and variable in the tower, bottom first.
    pub fn generator_names(&self) -> Vec<String> {
        let mut out = match self.base() {
            Some(b) => b.generator_names(),
            None => Vec::new(),
        };
        match &*self.0 {
            FieldNode::Rationals => {}
            FieldNode::Algebraic(l) => out.push(l.name.clone()),
            FieldNode::Functions(fl) => out.extend(fl.vars.iter().cloned()),
        }
        out
    }

    /// A named generator or variable of the tower, as an element of this field.
    pub fn generator(&self, name: &str) -> Option<Scalar> {
        match &*self.0 {
            FieldNode::Rationals => None,
            FieldNode::Algebraic(l) => {
                if l.name == name {
                    Some(self.level_generator())
                } else {
                    let g = l.base.generator(name)?;
                    Some(Scalar::new(self.clone(), self.0.lift(g.value)))
                }
            }
            FieldNode::Functions(fl) => {
                let n = fl.vars.len();
                if let Some(i) = fl.vars.iter().position(|v| v == name) {
                    Some(Scalar::new(
                        self.clone(),
                        Value::Frac(Box::new(Frac {
                            num: MPoly::var(&fl.base.0, n, i),
                            den: MPoly::one(&fl.base.0, n),
                        })),
                    ))
                } else {
                    let g = fl.base.generator(name)?;
                    Some(Scalar::new(self.clone(), self.0.lift(g.value)))
                }
            }
        }
    }

    /// Embeds an element of a lower level of this tower.
    pub fn coerce(&self, s: &Scalar) -> Result<Scalar, FieldError> {
        if s.field == *self {
            return Ok(s.clone());
        }
        match self.base() {
            None => Err(FieldError::TowerMismatch),
            Some(b) => {
                let inner = b.coerce(s)?;
                Ok(Scalar::new(self.clone(), self.0.lift(inner.value)))
            }
        }
    }

    /// True when `sub` is this field or one of its lower levels.
    pub fn contains_level(&self, sub: &Field) -> bool {
        self == sub || self.base().is_some_and(|b| b.contains_level(sub))
    }

    pub fn zero(&self) -> Scalar {
        Scalar::new(self.clone(), self.0.zero())
    }

    pub fn one(&self) -> Scalar {
        Scalar::new(self.clone(), self.0.one())
    }

    pub fn rational(&self, q: &BigRational) -> Scalar {
        Scalar::new(self.clone(), self.0.from_rational(q))
    }

    pub fn int(&self, n: i64) -> Scalar {
        self.rational(&BigRational::from_integer(BigInt::from(n)))
    }

    pub fn frac(&self, n: i64, d: i64) -> Scalar {
        self.rational(&BigRational::new(n.into(), d.into()))
    }

    pub fn involution_is_trivial(&self) -> bool {
        self.0.involution_is_trivial()
    }

    /// Element `sum c_i t^i` of an algebraic level from base coefficients.
    pub fn from_residue(&self, coeffs: &[Scalar]) -> Result<Scalar, FieldError> {
        let FieldNode::Algebraic(l) = &*self.0 else {
            return Err(FieldError::TowerMismatch);
        };
        let t = self.level_generator();
        let mut acc = self.zero();
        for c in coeffs.iter().rev() {
            let c = l.base.coerce(c)?;
            acc = &(&acc * &t) + &Scalar::new(self.clone(), self.0.lift(c.value));
        }
        Ok(acc)
    }

    /// Generator of the top algebraic level.
    pub fn top_generator(&self) -> Option<Scalar> {
        match &*self.0 {
            FieldNode::Algebraic(_) => Some(self.level_generator()),
            _ => None,
        }
    }

    /// Name of the top algebraic generator.
    pub fn top_name(&self) -> Option<String> {
        match &*self.0 {
            FieldNode::Algebraic(l) => Some(l.name.clone()),
            _ => None,
        }
    }

    /// Monic modulus of the top algebraic level over its base.
    pub fn modulus(&self) -> Option<Vec<Scalar>> {
        match &*self.0 {
            FieldNode::Algebraic(l) => Some(
                l.modulus
                    .iter()
                    .map(|c| Scalar::new(l.base.clone(), c.clone()))
                    .collect(),
            ),
            _ => None,
        }
    }

    /// Variables of the top function level.
    pub fn variables(&self) -> Vec<String> {
        match &*self.0 {
            FieldNode::Functions(fl) => fl.vars.clone(),
            _ => Vec::new(),
        }
    }

    /// Human-readable tower description such as `Q(e)(a, b)`.
    pub fn describe(&self) -> String {
        match &*self.0 {
            FieldNode::Rationals => "Q".into(),
            FieldNode::Algebraic(l) => format!("{}({})", l.base.describe(), l.name),
            FieldNode::Functions(fl) => format!("{}({})", fl.base.describe(), fl.vars.join(", ")),
        }
    }

    /// Ring homomorphism out of this tower determined by generator images in
    /// `target`; generators without an image map to themselves (which then
    /// must exist in `target`).
    pub fn substitute(
        &self,
        s: &Scalar,
        target: &Field,
        images: &dyn Fn(&str) -> Option<Scalar>,
    ) -> Result<Scalar, FieldError> {
        self.substitute_value(&s.value, target, images)
    }

    fn substitute_value(
        &self,
        v: &Value,
        target: &Field,
        images: &dyn Fn(&str) -> Option<Scalar>,
    ) -> Result<Scalar, FieldError> {
        match (&*self.0, v) {
            (FieldNode::Rationals, Value::Rat(q)) => Ok(target.rational(q)),
            (FieldNode::Algebraic(l), Value::Alg(x)) => {
                let g = match images(&l.name) {
                    Some(g) => target.coerce(&g)?,
                    None => target.coerce(&self.level_generator())?,
                };
                let mut acc = target.zero();
                for c in x.iter().rev() {
                    acc = &(&acc * &g) + &l.base.substitute_value(c, target, images)?;
                }
                Ok(acc)
            }
            (FieldNode::Functions(fl), Value::Frac(x)) => {
                let mut imgs = Vec::with_capacity(fl.vars.len());
                for name in &fl.vars {
                    imgs.push(match images(name) {
                        Some(g) => target.coerce(&g)?,
                        None => target.coerce(&self.generator(name).expect("own variable"))?,
                    });
                }
                let eval = |p: &MPoly| -> Result<Scalar, FieldError> {
                    let mut acc = target.zero();
                    for (m, c) in &p.terms {
                        let mut t = fl.base.substitute_value(c, target, images)?;
                        for (e, g) in m.0.iter().zip(&imgs) {
                            t = &t * &g.pow(*e as i64)?;
                        }
                        acc = &acc + &t;
                    }
                    Ok(acc)
                };
                let num = eval(&x.num)?;
                let den = eval(&x.den)?;
                num.checked_div(&den)
                    .map_err(|_| FieldError::InvalidAutomorphism("denominator maps to zero".into()))
            }
            _ => Err(FieldError::TowerMismatch),
        }
    }
}

fn is_binomial_in_variable(base: &Field, coeffs: &[Value]) -> bool {
    // t^n - v with v a variable of a function level is irreducible (Eisenstein at v)
    let k = &base.0;
    let n = coeffs.len() - 1;
    if coeffs[1..n].iter().any(|c| !k.is_zero(c)) {
        return false;
    }
    match (&**k, &coeffs[0]) {
        (FieldNode::Functions(_), Value::Frac(f)) => {
            f.den.is_constant()
                && f.num.terms.len() == 1
                && f.num.leading().is_some_and(|(m, _)| m.degree() == 1)
        }
        _ => false,
    }
}

impl Scalar {
    pub(crate) fn new(field: Field, value: Value) -> Scalar {
        Scalar { field, value }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.field.0.is_zero(&self.value)
    }

    pub fn is_one(&self) -> bool {
        self.value == self.field.0.one()
    }

    /// The tower involution.
    pub fn conj(&self) -> Scalar {
        Scalar::new(self.field.clone(), self.field.0.conj(&self.value))
    }

    pub fn is_symmetric(&self) -> bool {
        self.conj() == *self
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        self.field
            .0
            .inv(&self.value)
            .map(|v| Scalar::new(self.field.clone(), v))
            .ok_or(FieldError::DivisionByZero)
    }

    pub fn pow(&self, e: i64) -> Result<Scalar, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    fn same_field(&self, other: &Scalar) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::TowerMismatch)
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(Scalar::new(
            self.field.clone(),
            self.field.0.add(&self.value, &other.value),
        ))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(Scalar::new(
            self.field.clone(),
            self.field.0.sub(&self.value, &other.value),
        ))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(Scalar::new(
            self.field.clone(),
            self.field.0.mul(&self.value, &other.value),
        ))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    /// The value as a rational number, when it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.field.0.as_rational(&self.value)
    }

    /// Splits off a positive rational factor: `self = q * rest` with `q > 0`
    /// and `rest` canonical under positive rational rescaling.
    /// Coordinates over the immediate base of an algebraic level, padded to
    /// the level degree.
    pub fn residue_coeffs(&self) -> Option<Vec<Scalar>> {
        match (&*self.field.0, &self.value) {
            (FieldNode::Algebraic(l), Value::Alg(x)) => {
                let d = l.modulus.len() - 1;
                Some(
                    (0..d)
                        .map(|i| {
                            Scalar::new(
                                l.base.clone(),
                                x.get(i).cloned().unwrap_or_else(|| l.base.0.zero()),
                            )
                        })
                        .collect(),
                )
            }
            _ => None,
        }
    }

    pub fn split_positive_rational(&self) -> (BigRational, Scalar) {
        match self.field.0.first_rational(&self.value) {
            None => (BigRational::one(), self.clone()),
            Some(q) => {
                let q = q.abs();
                let rest = self * &self.field.rational(&q.recip());
                (q, rest)
            }
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.value == other.value
    }
}

impl Eq for Scalar {}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.0.fmt_value(&self.value))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.field.describe())
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar operation across different towers")
            }
        }
        impl std::ops::$trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);
scalar_binop!(Div, div, checked_div);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(self.field.clone(), self.field.0.neg(&self.value))
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// The four field operations, as named by the spec-file runner.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact arithmetic with tower and zero-divisor checks.
pub fn field_arith(lhs: &Scalar, rhs: &Scalar, op: ArithOp) -> Result<Scalar, FieldError> {
    match op {
        ArithOp::Add => lhs.checked_add(rhs),
        ArithOp::Sub => lhs.checked_sub(rhs),
        ArithOp::Mul => lhs.checked_mul(rhs),
        ArithOp::Div => lhs.checked_div(rhs),
    }
}

#[allow(dead_code)]
pub(crate) fn mono_of(exps: &[u32]) -> Mono {
    Mono(exps.to_vec())
}
