use std::collections::BTreeMap;

use crate::scalars::{Automorphism, Field, Scalar};

use super::{Algebra, AlgebraError, Element, Involution};

/// `(K/F, Phi)`: right K-space on basis `e_g`, `g` in a finite group G acting
/// on K, with `k e_g = e_g k^g` and `e_g e_h = e_(gh) Phi(g, h)`. Group
/// element 0 is the identity.
pub struct CrossedProduct {
    pub(crate) field: Field,
    pub(crate) group: Vec<String>,
    pub(crate) table: Vec<Vec<usize>>,
    pub(crate) autos: Vec<Automorphism>,
    pub(crate) cocycle: Vec<Vec<Scalar>>,
    pub(crate) inverse: Vec<usize>,
}

/// Outcome of the cocycle validation; lists every failing index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CocycleReport {
    pub normalization_failures: Vec<(String, String)>,
    pub associativity_failures: Vec<(String, String, String)>,
    pub zero_entries: Vec<(String, String)>,
}

impl CocycleReport {
    pub fn ok(&self) -> bool {
        self.normalization_failures.is_empty()
            && self.associativity_failures.is_empty()
            && self.zero_entries.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.ok() {
            return "valid".into();
        }
        let mut parts = Vec::new();
        for (g, h) in &self.zero_entries {
            parts.push(format!("Phi({g},{h}) = 0"));
        }
        for (g, h) in &self.normalization_failures {
            parts.push(format!("Phi({g},{h}) != 1"));
        }
        for (g, h, k) in &self.associativity_failures {
            parts.push(format!("associativity fails on ({g},{h},{k})"));
        }
        parts.join("; ")
    }
}

impl CrossedProduct {
    pub(crate) fn new(
        field: &Field,
        group: &[&str],
        table: Vec<Vec<usize>>,
        autos: Vec<Automorphism>,
        cocycle: Vec<Vec<Scalar>>,
    ) -> Result<CrossedProduct, AlgebraError> {
        let n = group.len();
        let bad = |m: &str| Err(AlgebraError::InvalidGroup(m.to_string()));
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&g| g >= n)) {
            return bad("multiplication table must be square over the listed elements");
        }
        for g in 0..n {
            if table[0][g] != g || table[g][0] != g {
                return bad("the first listed element must be the identity");
            }
        }
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    if table[table[g][h]][k] != table[g][table[h][k]] {
                        return bad("multiplication table is not associative");
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == 0) {
                Some(h) => inverse.push(h),
                None => return bad("an element has no inverse"),
            }
        }
        if autos.len() != n || cocycle.len() != n || cocycle.iter().any(|r| r.len() != n) {
            return bad("automorphism and cocycle tables must cover the group");
        }
        let gens: Vec<Scalar> = field
            .generator_names()
            .iter()
            .map(|g| field.generator(g).expect("declared"))
            .collect();
        let same = |s: &Automorphism, t: &Automorphism| -> Result<bool, AlgebraError> {
            for x in &gens {
                if s.apply(x)? != t.apply(x)? {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        if !same(&autos[0], &Automorphism::identity(field))? {
            return bad("the identity must act trivially");
        }
        for g in 0..n {
            for h in 0..n {
                let composed = autos[g].then(&autos[h])?;
                if !same(&composed, &autos[table[g][h]])? {
                    return Err(AlgebraError::InvalidGroup(format!(
                        "action of {}{} does not match the composite of {} then {}",
                        group[g], group[h], group[g], group[h]
                    )));
                }
                if g < h && same(&autos[g], &autos[h])? {
                    return Err(AlgebraError::InvalidGroup(format!(
                        "{} and {} act identically",
                        group[g], group[h]
                    )));
                }
            }
        }
        let mut coc = Vec::with_capacity(n);
        for row in cocycle {
            let mut r = Vec::with_capacity(n);
            for c in row {
                r.push(field.coerce(&c)?);
            }
            coc.push(r);
        }
        Ok(CrossedProduct {
            field: field.clone(),
            group: group.iter().map(|s| s.to_string()).collect(),
            table,
            autos,
            cocycle: coc,
            inverse,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.group.len()
    }

    pub fn group(&self) -> &[String] {
        &self.group
    }

    pub fn mul_index(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inverse_index(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn automorphism(&self, g: usize) -> &Automorphism {
        &self.autos[g]
    }

    pub fn cocycle(&self, g: usize, h: usize) -> &Scalar {
        &self.cocycle[g][h]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.group.iter().position(|g| g == name)
    }

    pub(crate) fn basis_name(&self, idx: usize) -> String {
        if idx == 0 {
            "1".into()
        } else {
            format!("e_{}", self.group[idx])
        }
    }

    /// `(e_g c)(e_h d) = e_(gh) Phi(g,h) c^h d`.
    pub(crate) fn mul_terms(&self, g: usize, c: &Scalar, h: usize, d: &Scalar) -> (usize, Scalar) {
        let ch = self.autos[h].apply(c).expect("automorphism of the coefficient field");
        (self.table[g][h], &(&self.cocycle[g][h] * &ch) * d)
    }

    pub fn validate_cocycle(&self) -> CocycleReport {
        let n = self.order();
        let mut report = CocycleReport::default();
        let one = self.field.one();
        for g in 0..n {
            for h in 0..n {
                if self.cocycle[g][h].is_zero() {
                    report
                        .zero_entries
                        .push((self.group[g].clone(), self.group[h].clone()));
                }
                if (g == 0 || h == 0) && self.cocycle[g][h] != one {
                    report
                        .normalization_failures
                        .push((self.group[g].clone(), self.group[h].clone()));
                }
            }
        }
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    let (gh, c1) = self.mul_terms(g, &one, h, &one);
                    let left = self.mul_terms(gh, &c1, k, &one);
                    let (hk, c2) = self.mul_terms(h, &one, k, &one);
                    let right = self.mul_terms(g, &one, hk, &c2);
                    if left != right {
                        report.associativity_failures.push((
                            self.group[g].clone(),
                            self.group[h].clone(),
                            self.group[k].clone(),
                        ));
                    }
                }
            }
        }
        report
    }
}

/// A symbol algebra rewritten as the cyclic crossed product over
/// `K = F(x)`: `e_k = y^k`, `x^(s_k) = eps^(-k) x`, `Phi(j,k) = b` when
/// `j + k >= n` and 1 otherwise.
pub struct SymbolToCrossed {
    pub symbol: Algebra,
    pub crossed: Algebra,
    pub k_field: Field,
}

impl SymbolToCrossed {
    /// `x_star` is the image of x under the involution to be transported; it
    /// must be a polynomial in x over the center.
    pub fn new(symbol: &Algebra, x_star: Option<&Element>) -> Result<SymbolToCrossed, AlgebraError> {
        let s = symbol
            .as_symbol()
            .ok_or_else(|| AlgebraError::InvalidParameters("not a symbol algebra".into()))?;
        let (n, f) = (s.n, &s.field);
        let mut modulus = vec![f.zero(); n + 1];
        modulus[0] = -&s.a;
        modulus[n] = f.one();
        let mut k = Field::algebraic(f, &s.names[0], &modulus)?;
        if let Some(xs) = x_star {
            let mut coeffs = vec![f.zero(); n];
            for (idx, c) in xs.terms() {
                let (i, j) = s.exponents(*idx);
                if j != 0 {
                    return Err(AlgebraError::InvalidInvolution(format!(
                        "{}* = {xs} leaves the subfield generated by {}",
                        s.names[0], s.names[0]
                    )));
                }
                coeffs[i] = c.clone();
            }
            let img = k.from_residue(&coeffs)?;
            k = k.with_involution(&img)?;
        }
        let t = k.top_generator().expect("algebraic level");
        let eps = k.coerce(&s.eps)?;
        let eps_inv = eps.inv()?;
        let names: Vec<String> = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "s".to_string(),
                _ => format!("s{i}"),
            })
            .collect();
        let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let table: Vec<Vec<usize>> = (0..n).map(|j| (0..n).map(|l| (j + l) % n).collect()).collect();
        let mut autos = Vec::with_capacity(n);
        for i in 0..n {
            let img = &eps_inv.pow(i as i64)? * &t;
            autos.push(Automorphism::new(&k, &[(&s.names[0], img)])?);
        }
        let bk = k.coerce(&s.b)?;
        let cocycle: Vec<Vec<Scalar>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|l| if j + l >= n { bk.clone() } else { k.one() })
                    .collect()
            })
            .collect();
        let crossed = Algebra::crossed(&k, &name_refs, table, autos, cocycle)?;
        Ok(SymbolToCrossed {
            symbol: symbol.clone(),
            crossed,
            k_field: k,
        })
    }

    /// `x^i y^j c = e_j eps^(-ij) c x^i`.
    pub fn forward(&self, u: &Element) -> Result<Element, AlgebraError> {
        if u.algebra() != &self.symbol {
            return Err(AlgebraError::HostMismatch);
        }
        let s = self.symbol.as_symbol().expect("symbol");
        let n = s.n;
        let k = &self.k_field;
        let t = k.top_generator().expect("algebraic");
        let eps_inv = k.coerce(&s.eps)?.inv()?;
        let mut terms: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (idx, c) in u.terms() {
            let (i, j) = s.exponents(*idx);
            let coeff = &(&eps_inv.pow(((i * j) % n) as i64)? * &k.coerce(c)?) * &t.pow(i as i64)?;
            let e = terms.entry(j).or_insert_with(|| k.zero());
            *e = &*e + &coeff;
        }
        Ok(Element::from_terms(&self.crossed, terms))
    }

    /// Inverse of [`SymbolToCrossed::forward`]: `e_j sum c_i x^i = sum c_i eps^(ij) x^i y^j`.
    pub fn backward(&self, u: &Element) -> Result<Element, AlgebraError> {
        if u.algebra() != &self.crossed {
            return Err(AlgebraError::HostMismatch);
        }
        let s = self.symbol.as_symbol().expect("symbol");
        let n = s.n;
        let mut terms: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (j, c) in u.terms() {
            let coeffs = c.residue_coeffs().expect("algebraic level");
            for (i, ci) in coeffs.iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                let v = ci * &s.eps.pow(((i * j) % n) as i64)?;
                terms.insert(s.index(i, *j), v);
            }
        }
        Ok(Element::from_terms(&self.symbol, terms))
    }

    /// Transports an involution of the symbol algebra (`y*` must be a
    /// polynomial in y over K, i.e. every image is converted exactly).
    pub fn involution(&self, inv: &Involution) -> Result<Involution, AlgebraError> {
        let s = self.symbol.as_symbol().expect("symbol");
        let mut images = Vec::with_capacity(s.n);
        for j in 0..s.n {
            let yj = Element::basis(&self.symbol, s.index(0, j));
            images.push(self.forward(&inv.apply(&yj))?);
        }
        Involution::new(&self.crossed, images)
    }
}
