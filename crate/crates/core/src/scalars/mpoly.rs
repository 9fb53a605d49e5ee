//! Sparse multivariate polynomials with coefficients in a tower level.
//!
//! Monomials are ordered graded-lexicographically; the leading term is the
//! largest key. Coefficient arithmetic goes through the coefficient field's
//! [`FieldNode`].

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::field::{FieldNode, Value};

/// Exponent vector, ordered by total degree and then lexicographically with
/// the first variable largest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(n: usize) -> Mono {
        Mono(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct MPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Mono, Value>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> MPoly {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(k: &FieldNode, nvars: usize, c: Value) -> MPoly {
        let mut p = MPoly::zero(nvars);
        if !k.is_zero(&c) {
            p.terms.insert(Mono::one(nvars), c);
        }
        p
    }

    pub fn one(k: &FieldNode, nvars: usize) -> MPoly {
        MPoly::constant(k, nvars, k.one())
    }

    pub fn var(k: &FieldNode, nvars: usize, i: usize) -> MPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = MPoly::zero(nvars);
        p.terms.insert(Mono(e), k.one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }

    /// Coefficient of the unit monomial when the polynomial is constant.
    pub fn as_constant(&self, k: &FieldNode) -> Option<Value> {
        if self.is_zero() {
            return Some(k.zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn leading(&self) -> Option<(&Mono, &Value)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    fn insert_add(&mut self, k: &FieldNode, m: Mono, c: Value) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                if !k.is_zero(&c) {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = k.add(o.get(), &c);
                if k.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, k: &FieldNode, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(k, m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self, k: &FieldNode) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), k.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, k: &FieldNode, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(k, m.clone(), k.neg(c));
        }
        out
    }

    pub fn mul(&self, k: &FieldNode, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert_add(k, m1.mul(m2), k.mul(c1, c2));
            }
        }
        out
    }

    pub fn scale(&self, k: &FieldNode, c: &Value) -> MPoly {
        if k.is_zero(c) {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), k.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, k: &FieldNode, m: &Mono, c: &Value) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m2, a)| (m2.mul(m), k.mul(a, c)))
                .collect(),
        }
    }

    pub fn map_coeffs(&self, k: &FieldNode, f: impl Fn(&Value) -> Value) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.insert_add(k, m.clone(), f(c));
        }
        out
    }

    /// Scales so that the leading coefficient is one; returns the old leading
    /// coefficient alongside.
    pub fn monic(&self, k: &FieldNode) -> (Value, MPoly) {
        match self.leading() {
            None => (k.one(), self.clone()),
            Some((_, lc)) => {
                let lc = lc.clone();
                let inv = k.inv(&lc).expect("nonzero leading coefficient");
                (lc, self.scale(k, &inv))
            }
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, k: &FieldNode, divisor: &MPoly) -> Option<MPoly> {
        let (lm, lc) = divisor.leading()?;
        let lc_inv = k.inv(lc)?;
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.nvars);
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = m.div(lm);
            let qc = k.mul(c, &lc_inv);
            rem = rem.sub(k, &divisor.mul_term(k, &qm, &qc));
            quot.insert_add(k, qm, qc);
        }
        Some(quot)
    }

    fn to_univariate(&self, var: usize) -> Vec<MPoly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![MPoly::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut stripped = m.clone();
            stripped.0[var] = 0;
            out[e].terms.insert(stripped, c.clone());
        }
        out
    }

    fn from_univariate(k: &FieldNode, coeffs: &[MPoly], var: usize, nvars: usize) -> MPoly {
        let mut out = MPoly::zero(nvars);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut m = m.clone();
                m.0[var] += e as u32;
                out.insert_add(k, m, v.clone());
            }
        }
        out
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, k: &FieldNode, other: &MPoly) -> MPoly {
        let n = self.nvars;
        if self.is_zero() {
            return other.monic(k).1;
        }
        if other.is_zero() {
            return self.monic(k).1;
        }
        if self.is_constant() || other.is_constant() {
            return MPoly::one(k, n);
        }
        if self.terms.len() == 1 || other.terms.len() == 1 {
            return monomial_gcd(k, self, other);
        }
        let var = (0..n)
            .find(|&i| self.degree_in(i) > 0 || other.degree_in(i) > 0)
            .expect("non-constant polynomial has a variable");
        let ua = self.to_univariate(var);
        let ub = other.to_univariate(var);
        let ca = content(k, &ua);
        let cb = content(k, &ub);
        if ua.len() == 1 {
            return self.gcd(k, &cb);
        }
        if ub.len() == 1 {
            return ca.gcd(k, other);
        }
        let c = ca.gcd(k, &cb);
        let mut p = primitive(k, &ua, &ca);
        let mut q = primitive(k, &ub, &cb);
        if p.len() < q.len() {
            std::mem::swap(&mut p, &mut q);
        }
        loop {
            let r = prem(k, &p, &q);
            if r.is_empty() {
                break;
            }
            if r.len() == 1 {
                return c.monic(k).1;
            }
            let cr = content(k, &r);
            p = q;
            q = primitive(k, &r, &cr);
        }
        let cq = content(k, &q);
        let g = MPoly::from_univariate(k, &primitive(k, &q, &cq), var, n);
        c.mul(k, &g).monic(k).1
    }
}

fn monomial_gcd(k: &FieldNode, a: &MPoly, b: &MPoly) -> MPoly {
    let n = a.nvars;
    let mut e = vec![u32::MAX; n];
    for m in a.terms.keys().chain(b.terms.keys()) {
        for (x, y) in e.iter_mut().zip(&m.0) {
            *x = (*x).min(*y);
        }
    }
    let mut p = MPoly::zero(n);
    p.terms.insert(Mono(e), k.one());
    p
}

fn content(k: &FieldNode, coeffs: &[MPoly]) -> MPoly {
    let nvars = coeffs.first().map(|c| c.nvars).unwrap_or(0);
    let mut g = MPoly::zero(nvars);
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = g.gcd(k, c);
        if g.is_constant() {
            return MPoly::one(k, nvars);
        }
    }
    g
}

fn primitive(k: &FieldNode, coeffs: &[MPoly], cont: &MPoly) -> Vec<MPoly> {
    let mut out: Vec<MPoly> = coeffs
        .iter()
        .map(|c| c.div_exact(k, cont).expect("content divides every coefficient"))
        .collect();
    // scalar normalization keeps coefficient growth in check
    if let Some(top) = out.iter().rev().find(|c| !c.is_zero()) {
        let lc = top.leading().expect("nonzero").1.clone();
        let inv = k.inv(&lc).expect("nonzero leading coefficient");
        for c in out.iter_mut() {
            *c = c.scale(k, &inv);
        }
    }
    out
}

fn trim(v: &mut Vec<MPoly>) {
    while v.last().is_some_and(MPoly::is_zero) {
        v.pop();
    }
}

/// Pseudo-remainder of univariate polynomials with polynomial coefficients.
fn prem(k: &FieldNode, a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lc = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = c.mul(k, lc);
        }
        for (j, bj) in b.iter().enumerate() {
            let t = bj.mul(k, &lr);
            r[j + dr - db] = r[j + dr - db].sub(k, &t);
        }
        trim(&mut r);
    }
    r
}
