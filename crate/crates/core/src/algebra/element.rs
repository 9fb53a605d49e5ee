use std::collections::BTreeMap;
use std::fmt;

use crate::scalars::Scalar;

use super::{Algebra, AlgebraError, AlgebraKind};

/// Element in normal form: a sparse, zero-free map from basis index to
/// coefficient. For a crossed product the coefficient of `e_g` sits on the
/// right, `sum e_g c_g`.
#[derive(Clone)]
pub struct Element {
    alg: Algebra,
    terms: BTreeMap<usize, Scalar>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.terms == other.terms
    }
}

impl Eq for Element {}

impl std::hash::Hash for Element {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (k, v) in &self.terms {
            k.hash(state);
            v.hash(state);
        }
    }
}

impl Element {
    pub fn zero(alg: &Algebra) -> Element {
        Element {
            alg: alg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alg: &Algebra) -> Element {
        Element::basis(alg, 0)
    }

    pub fn basis(alg: &Algebra, idx: usize) -> Element {
        let mut terms = BTreeMap::new();
        terms.insert(idx, alg.coeff_field().one());
        Element {
            alg: alg.clone(),
            terms,
        }
    }

    /// Embeds a coefficient-field element (central for symbol algebras,
    /// `e_1 c` for crossed products). Lower tower levels are coerced.
    pub fn scalar(alg: &Algebra, c: &Scalar) -> Element {
        let c = alg
            .coeff_field()
            .coerce(c)
            .expect("scalar from the coefficient tower");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        Element {
            alg: alg.clone(),
            terms,
        }
    }

    /// `c x^i y^j` in a symbol algebra; exponents are reduced.
    pub fn monomial(alg: &Algebra, i: usize, j: usize, c: &Scalar) -> Element {
        let s = alg.as_symbol().expect("symbol algebra");
        let x = Element::basis(alg, s.index(1, 0));
        let y = Element::basis(alg, s.index(0, 1));
        &(&x.pow(i as u32) * &y.pow(j as u32)) * &Element::scalar(alg, c)
    }

    pub fn from_terms(alg: &Algebra, terms: BTreeMap<usize, Scalar>) -> Element {
        let f = alg.coeff_field();
        Element {
            alg: alg.clone(),
            terms: terms
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, f.coerce(&c).expect("coefficient field")))
                .collect(),
        }
    }

    /// Dense coefficient vector over the basis.
    pub fn from_coeffs(alg: &Algebra, coeffs: &[Scalar]) -> Element {
        Element::from_terms(alg, coeffs.iter().cloned().enumerate().collect())
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<usize, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, idx: usize) -> Scalar {
        self.terms
            .get(&idx)
            .cloned()
            .unwrap_or_else(|| self.alg.coeff_field().zero())
    }

    pub fn coeffs(&self) -> Vec<Scalar> {
        (0..self.alg.basis_len()).map(|i| self.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(Scalar::is_one)
    }

    /// The coefficient when the element lies in the coefficient field.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.terms.keys().all(|&k| k == 0) {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    fn same_host(&self, other: &Element) -> Result<(), AlgebraError> {
        if self.alg == other.alg {
            Ok(())
        } else {
            Err(AlgebraError::HostMismatch)
        }
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.same_host(other)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            add_into(&mut terms, *k, c.clone());
        }
        Ok(Element {
            alg: self.alg.clone(),
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.same_host(other)?;
        let mut terms = BTreeMap::new();
        match &*self.alg.0 {
            AlgebraKind::Symbol(s) => {
                for (p, c) in &self.terms {
                    for (q, d) in &other.terms {
                        let (k, r) = &s.table[*p][*q];
                        add_into(&mut terms, *r, &(c * d) * k);
                    }
                }
            }
            AlgebraKind::Crossed(cp) => {
                for (g, c) in &self.terms {
                    for (h, d) in &other.terms {
                        let (gh, v) = cp.mul_terms(*g, c, *h, d);
                        add_into(&mut terms, gh, v);
                    }
                }
            }
        }
        Ok(Element {
            alg: self.alg.clone(),
            terms,
        })
    }

    /// Right multiplication by a coefficient-field scalar.
    pub fn scale(&self, c: &Scalar) -> Element {
        let c = self.alg.coeff_field().coerce(c).expect("coefficient field");
        Element::from_terms(
            &self.alg,
            self.terms.iter().map(|(k, v)| (*k, v * &c)).collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Element {
        let mut acc = Element::one(&self.alg);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

fn add_into(terms: &mut BTreeMap<usize, Scalar>, k: usize, c: Scalar) {
    use std::collections::btree_map::Entry;
    match terms.entry(k) {
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

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (n, (k, c)) in self.terms.iter().enumerate() {
            let name = self.alg.basis_name(*k);
            let cs = c.to_string();
            let term = if name == "1" {
                cs
            } else if self.alg.is_crossed() {
                if cs == "1" {
                    name
                } else if cs.contains(' ') || cs.starts_with('-') {
                    format!("{name}*({cs})")
                } else {
                    format!("{name}*{cs}")
                }
            } else if cs == "1" {
                name
            } else if cs == "-1" {
                format!("-{name}")
            } else if cs.contains(' ') {
                format!("({cs})*{name}")
            } else {
                format!("{cs}*{name}")
            };
            if n == 0 {
                out.push_str(&term);
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

macro_rules! element_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&Element> for &Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                self.$checked(rhs).expect("elements of different algebras")
            }
        }
        impl std::ops::$trait<Element> for Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                (&self).$method(&rhs)
            }
        }
    };
}

element_binop!(Add, add, checked_add);
element_binop!(Sub, sub, checked_sub);
element_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl std::ops::Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}
