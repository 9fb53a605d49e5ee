use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::scalars::{Field, Scalar};

use super::{AlgebraError, Element};

/// The quantum plane `R = k<x, y>/(yx - q xy)` with `x* = x`, `y* = y` and the
/// tower involution on scalars. Exponents are unbounded, so leading terms are
/// multiplicative.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumPlane {
    field: Field,
    q: Scalar,
    names: [String; 2],
}

/// Exponent pair ordered graded-lexicographically with x > y.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Exps(pub u32, pub u32);

impl Ord for Exps {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0 + self.1, self.0).cmp(&(other.0 + other.1, other.0))
    }
}

impl PartialOrd for Exps {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTerm {
    pub coeff: Scalar,
    pub m: u32,
    pub n: u32,
}

impl fmt::Display for LeadingTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*x^{}*y^{}", self.coeff, self.m, self.n)
    }
}

#[derive(Clone, PartialEq)]
pub struct SkewPoly {
    plane: QuantumPlane,
    terms: BTreeMap<Exps, Scalar>,
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPoly({self})")
    }
}

impl QuantumPlane {
    pub fn new(field: &Field, q: &Scalar, names: [&str; 2]) -> Result<QuantumPlane, AlgebraError> {
        let q = field.coerce(q)?;
        if q.is_zero() {
            return Err(AlgebraError::InvalidParameters("q must be nonzero".into()));
        }
        Ok(QuantumPlane {
            field: field.clone(),
            q,
            names: [names[0].to_string(), names[1].to_string()],
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn zero(&self) -> SkewPoly {
        SkewPoly {
            plane: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(&self, c: &Scalar, m: u32, n: u32) -> SkewPoly {
        let c = self.field.coerce(c).expect("scalar of the plane's field");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Exps(m, n), c);
        }
        SkewPoly {
            plane: self.clone(),
            terms,
        }
    }

    pub fn one(&self) -> SkewPoly {
        self.monomial(&self.field.one(), 0, 0)
    }

    pub fn x(&self) -> SkewPoly {
        self.monomial(&self.field.one(), 1, 0)
    }

    pub fn y(&self) -> SkewPoly {
        self.monomial(&self.field.one(), 0, 1)
    }

    /// Reads the normal form `sum c x^i y^j` of a symbol-algebra element as a
    /// polynomial of the plane (exponents below the degree).
    pub fn from_symbol(&self, u: &Element) -> Result<SkewPoly, AlgebraError> {
        let s = u
            .algebra()
            .as_symbol()
            .ok_or_else(|| AlgebraError::InvalidParameters("not a symbol algebra".into()))?;
        let mut p = self.zero();
        for (idx, c) in u.terms() {
            let (i, j) = s.exponents(*idx);
            p = p.add(&self.monomial(c, i as u32, j as u32));
        }
        Ok(p)
    }
}

impl SkewPoly {
    pub fn plane(&self) -> &QuantumPlane {
        &self.plane
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exps, &Scalar)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, e: Exps, c: Scalar) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &SkewPoly) -> SkewPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> SkewPoly {
        SkewPoly {
            plane: self.plane.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &SkewPoly) -> SkewPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> SkewPoly {
        let mut out = self.plane.zero();
        for (e, a) in &self.terms {
            out.insert(*e, a * c);
        }
        out
    }

    /// `(c x^m y^n)(d x^k y^l) = c d q^(nk) x^(m+k) y^(n+l)`.
    pub fn mul(&self, other: &SkewPoly) -> SkewPoly {
        let q = &self.plane.q;
        let mut out = self.plane.zero();
        for (e1, c) in &self.terms {
            for (e2, d) in &other.terms {
                let tw = q.pow((e1.1 * e2.0) as i64).expect("nonzero q");
                out.insert(Exps(e1.0 + e2.0, e1.1 + e2.1), &(c * d) * &tw);
            }
        }
        out
    }

    /// `(c x^m y^n)* = c* y^n x^m = c* q^(mn) x^m y^n`.
    pub fn star(&self) -> SkewPoly {
        let q = &self.plane.q;
        let mut out = self.plane.zero();
        for (e, c) in &self.terms {
            let tw = q.pow((e.0 * e.1) as i64).expect("nonzero q");
            out.insert(*e, &c.conj() * &tw);
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.star() == *self
    }

    pub fn leading_term(&self) -> Result<LeadingTerm, AlgebraError> {
        let (e, c) = self.terms.iter().next_back().ok_or(AlgebraError::ZeroElement)?;
        Ok(LeadingTerm {
            coeff: c.clone(),
            m: e.0,
            n: e.1,
        })
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = &self.plane.names;
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mut mono = Vec::new();
                for (k, name) in [(e.0, &names[0]), (e.1, &names[1])] {
                    match k {
                        0 => {}
                        1 => mono.push(name.clone()),
                        _ => mono.push(format!("{name}^{k}")),
                    }
                }
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", mono.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Leading term of a symbol-algebra element under graded-lex order with x > y.
pub fn symbol_leading_term(u: &Element) -> Result<LeadingTerm, AlgebraError> {
    let s = u
        .algebra()
        .as_symbol()
        .ok_or_else(|| AlgebraError::InvalidParameters("not a symbol algebra".into()))?;
    u.terms()
        .iter()
        .map(|(idx, c)| {
            let (i, j) = s.exponents(*idx);
            (Exps(i as u32, j as u32), c)
        })
        .max_by(|a, b| a.0.cmp(&b.0))
        .map(|(e, c)| LeadingTerm {
            coeff: c.clone(),
            m: e.0,
            n: e.1,
        })
        .ok_or(AlgebraError::ZeroElement)
}
