use std::collections::BTreeMap;

use crate::algebra::Element;
use crate::hermitian::{diagonalize, CongruenceResult, HermitianError};
use crate::matrix::{FieldRing, Matrix};
use crate::projection::SubfieldPresentation;
use crate::scalars::{sign_at, Field, Scalar, Sign, SignOracle};

use super::ordering_pool;

/// Monomials `x^i y^j` ordered by `(j, i)` for a symbol algebra; `e_g t^l`
/// for a crossed product with `K = F(t)`.
pub fn default_f_basis(pres: &SubfieldPresentation) -> Vec<Element> {
    let alg = pres.algebra();
    match alg.as_crossed() {
        None => {
            let n = alg.degree();
            (0..n)
                .flat_map(|j| (0..n).map(move |i| i * n + j))
                .map(|idx| Element::basis(alg, idx))
                .collect()
        }
        Some(cp) => {
            let k = pres.k_field();
            let t = k.top_generator().expect("algebraic level");
            let mut out = Vec::new();
            for g in 0..cp.order() {
                let mut p = k.one();
                for _ in 0..k.level_degree() {
                    out.push(Element::from_terms(alg, BTreeMap::from([(g, p.clone())])));
                    p = &p * &t;
                }
            }
            out
        }
    }
}

fn gram_with(
    pres: &SubfieldPresentation,
    basis: &[Element],
    pair: impl Fn(&Element, &Element) -> Element,
) -> Result<Matrix<FieldRing>, HermitianError> {
    let ring = FieldRing(pres.center());
    let mut rows = Vec::with_capacity(basis.len());
    for gi in basis {
        let mut row = Vec::with_capacity(basis.len());
        for gj in basis {
            row.push(ring.0.coerce(&pres.reduced_trace(&pair(gi, gj))?)?);
        }
        rows.push(row);
    }
    Ok(Matrix::from_rows(&ring, rows)?)
}

/// `[tr(g_i g_j)]`, the bilinear trace form without the involution.
pub fn bilinear_trace_form(pres: &SubfieldPresentation, basis: &[Element]) -> Result<Matrix<FieldRing>, HermitianError> {
    gram_with(pres, basis, |a, b| a * b)
}

#[derive(Clone, Debug)]
pub struct OrderingSigns {
    pub oracle: SignOracle,
    pub signs: Vec<Sign>,
    pub psd: bool,
}

#[derive(Clone, Debug)]
pub struct TraceFormReport {
    pub basis: Vec<Element>,
    /// `[tr(g_i* g_j)]`
    pub gram: Matrix<FieldRing>,
    pub diagonalization: CongruenceResult<FieldRing>,
    pub verified: bool,
    pub per_ordering: Vec<OrderingSigns>,
}

impl TraceFormReport {
    /// Nonnegative diagonal under every ordering examined.
    pub fn psd(&self) -> bool {
        !self.per_ordering.is_empty() && self.per_ordering.iter().all(|o| o.psd)
    }

    pub fn diagonal(&self) -> Vec<Scalar> {
        self.diagonalization.diagonal()
    }
}

/// The hermitian trace form `a -> tr(a* a)` on an F-basis. With no oracles
/// the ordering pool of the center is used.
pub fn trace_form_report(
    pres: &SubfieldPresentation,
    basis: Option<&[Element]>,
    oracles: &[SignOracle],
) -> Result<TraceFormReport, HermitianError> {
    let basis = basis.map(|b| b.to_vec()).unwrap_or_else(|| default_f_basis(pres));
    let inv = pres.involution();
    let gram = gram_with(pres, &basis, |a, b| &inv.apply(a) * b)?;
    let diag = diagonalize(&gram, &gram.ring().0.one())?;
    let verified = diag.verify(&gram)?;
    let center = pres.center();
    let oracles = if oracles.is_empty() {
        ordering_pool(&center)
    } else {
        oracles.to_vec()
    };
    let entries = diag.diagonal();
    let mut per_ordering = Vec::new();
    for o in oracles {
        let signs = entries.iter().map(|e| sign_at(e, &o)).collect::<Result<Vec<_>, _>>()?;
        let psd = signs.iter().all(|s| s.is_nonnegative());
        per_ordering.push(OrderingSigns { oracle: o, signs, psd });
    }
    Ok(TraceFormReport {
        basis,
        gram,
        diagonalization: diag,
        verified,
        per_ordering,
    })
}

#[derive(Clone, Debug)]
pub struct StarOrderingReport {
    pub multiplicative: bool,
    pub contains_norms: bool,
    pub contains_generators: bool,
    /// First element found outside the ordering, if any.
    pub failure: Option<Scalar>,
}

impl StarOrderingReport {
    pub fn holds(&self) -> bool {
        self.multiplicative && self.contains_norms && self.contains_generators
    }
}

/// Checks an ordering of F against sampled values `tr(a* a)` and extra
/// generators, and multiplicativity on sampled member pairs.
pub fn star_ordering_check(
    field: &Field,
    oracle: &SignOracle,
    pres: Option<&SubfieldPresentation>,
    samples: &[Element],
    generators: &[Scalar],
) -> Result<StarOrderingReport, HermitianError> {
    let member = |x: &Scalar| -> Result<bool, HermitianError> { Ok(sign_at(x, oracle)?.is_nonnegative()) };
    let mut report = StarOrderingReport {
        multiplicative: true,
        contains_norms: true,
        contains_generators: true,
        failure: None,
    };
    let mut members = vec![field.one()];
    for g in generators {
        let g = field.coerce(g)?;
        if member(&g)? {
            members.push(g);
        } else if report.contains_generators {
            report.contains_generators = false;
            report.failure.get_or_insert(g);
        }
    }
    if let Some(pres) = pres {
        let inv = pres.involution();
        for a in samples {
            let t = field.coerce(&pres.reduced_trace(&(&inv.apply(a) * a))?)?;
            if member(&t)? {
                members.push(t);
            } else if report.contains_norms {
                report.contains_norms = false;
                report.failure.get_or_insert(t);
            }
        }
    }
    'outer: for (i, x) in members.iter().enumerate() {
        for y in &members[i..] {
            let p = x * y;
            if !member(&p)? {
                report.multiplicative = false;
                report.failure.get_or_insert(p);
                break 'outer;
            }
        }
    }
    Ok(report)
}
