//! Formal-reality verdicts: cone existence, the diagonal criterion for
//! extended involutions, crossed-product criteria, sums of hermitian squares
//! and hermitian trace forms.

mod crossed;
mod sohs;
mod trace;

use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::hermitian::{
    alternating_degenerate_witness, diagonalize, repair_allowed, BoundedClosure, ClosureBounds, ClosureCertificate,
    Cone, DegenerateWitness, HermitianError, Membership, OrderingCone, Step,
};
use crate::matrix::{FieldRing, Matrix};
use crate::scalars::{sign_at, Field, Scalar, SignOracle};

pub use crossed::{
    cocycle_norm_identity, d_sigma, norm_criteria, extension_formally_real, extension_identities, transformation_law,
    ExtensionReport, NormCriteria, ExtensionIdentities, Tally,
};
pub use sohs::{leading_term_witness, verify_sohs, SohsCertificate, SohsCheck};
pub use trace::{
    bilinear_trace_form, default_f_basis, star_ordering_check, trace_form_report, OrderingSigns, StarOrderingReport,
    TraceFormReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RealityStatus {
    FormallyReal,
    NotFormallyReal,
    Unknown,
}

impl RealityStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RealityStatus::FormallyReal => "FORMALLY_REAL",
            RealityStatus::NotFormallyReal => "NOT_FORMALLY_REAL",
            RealityStatus::Unknown => "UNKNOWN",
        }
    }
}

/// A cone containing the required generators.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Ordering(SignOracle),
    /// `-P` for an ordering `P`, a cone that is not unital.
    NegatedOrdering(SignOracle),
    LeadingTerm { description: String, samples: usize },
}

#[derive(Clone, Debug)]
pub enum Certificate {
    /// `c` and `-c` both derived from the generators.
    Opposite(ClosureCertificate<Scalar>),
    Sohs(SohsCertificate),
    /// Alternating form over a field with trivial involution.
    Alternating(Box<DegenerateWitness>),
    /// `e_g* e_g` is not in the maximal subfield.
    NormNotInSubfield { group_element: String, value: String },
}

#[derive(Clone, Debug)]
pub struct RealityVerdict {
    pub status: RealityStatus,
    pub witness: Option<Witness>,
    pub certificate: Option<Certificate>,
    pub generators: Vec<Scalar>,
    pub bounds: ClosureBounds,
    pub oracles_tried: usize,
    pub notes: Vec<String>,
}

impl RealityVerdict {
    fn new(status: RealityStatus, generators: &[Scalar], bounds: ClosureBounds, oracles_tried: usize) -> Self {
        RealityVerdict {
            status,
            witness: None,
            certificate: None,
            generators: generators.to_vec(),
            bounds,
            oracles_tried,
            notes: Vec::new(),
        }
    }

    /// Re-checks the attached witness or certificate.
    pub fn verify(&self) -> Result<bool, HermitianError> {
        match self.status {
            RealityStatus::Unknown => Ok(true),
            RealityStatus::FormallyReal => match &self.witness {
                Some(Witness::Ordering(o)) => all_in(&self.generators, o, false),
                Some(Witness::NegatedOrdering(o)) => all_in(&self.generators, o, true),
                Some(Witness::LeadingTerm { .. }) => Ok(true),
                None => Ok(false),
            },
            RealityStatus::NotFormallyReal => match &self.certificate {
                Some(Certificate::Opposite(c)) => {
                    let Some(g) = c.gens.first() else {
                        return Ok(false);
                    };
                    Ok(c.verify_opposite(&FieldRing(g.field().clone())))
                }
                Some(Certificate::Sohs(s)) => Ok(verify_sohs(s)?.holds),
                Some(Certificate::Alternating(w)) => w.verify(),
                Some(Certificate::NormNotInSubfield { .. }) => Ok(true),
                None => Ok(false),
            },
        }
    }

    pub fn witness_json(&self) -> Json {
        match &self.witness {
            None => Json::Null,
            Some(Witness::Ordering(o)) => json!({"kind": "ordering", "oracle": o.describe()}),
            Some(Witness::NegatedOrdering(o)) => json!({"kind": "negated-ordering", "oracle": o.describe()}),
            Some(Witness::LeadingTerm { description, samples }) => {
                json!({"kind": "leading-term", "cone": description, "samples": samples})
            }
        }
    }

    pub fn certificate_json(&self) -> Json {
        match &self.certificate {
            None => Json::Null,
            Some(Certificate::Opposite(c)) => closure_json(c),
            Some(Certificate::Sohs(s)) => s.to_json(),
            Some(Certificate::Alternating(w)) => json!({
                "kind": "alternating",
                "P": w.p.to_string(),
                "Q": w.q.to_string(),
                "normal_form": w.normal_form.to_string(),
            }),
            Some(Certificate::NormNotInSubfield { group_element, value }) => json!({
                "kind": "norm-not-in-subfield",
                "group_element": group_element,
                "value": value,
            }),
        }
    }
}

pub fn closure_json(c: &ClosureCertificate<Scalar>) -> Json {
    let steps: Vec<Json> = c
        .steps
        .iter()
        .map(|d| match &d.step {
            Step::Generator(g) => json!({"value": d.value.to_string(), "rule": "generator", "index": g}),
            Step::Conj { r, src } => {
                json!({"value": d.value.to_string(), "rule": "conjugate", "r": r.to_string(), "of": src})
            }
            Step::Sum(a, b) => json!({"value": d.value.to_string(), "rule": "sum", "of": [a, b]}),
        })
        .collect();
    let targets: Vec<String> = c.target_values().iter().map(|v| v.to_string()).collect();
    json!({
        "kind": "opposite-pair",
        "generators": c.gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "steps": steps,
        "targets": targets,
    })
}

const POOL_CAP: usize = 64;

/// Orderings of the symmetric part of a tower, level by level: real
/// embeddings of number fields, positive or negative roots of radical
/// levels, and leading-term orderings of function fields with every choice
/// of variable signs.
pub fn ordering_pool(field: &Field) -> Vec<SignOracle> {
    let Some(base) = field.base() else {
        return vec![SignOracle::Rational];
    };
    let below = ordering_pool(&base);
    if !field.variables().is_empty() && field.modulus().is_none() {
        let nv = field.variables().len();
        let mut out = Vec::new();
        for b in &below {
            for mask in 0..(1u32 << nv) {
                out.push(SignOracle::Monomial {
                    base: Box::new(b.clone()),
                    flips: (0..nv).map(|i| mask >> i & 1 == 1).collect(),
                });
                if out.len() >= POOL_CAP {
                    return out;
                }
            }
        }
        return out;
    }
    let Some(g) = field.top_generator() else {
        return below;
    };
    if g.conj() != g {
        return below;
    }
    let mut out: Vec<SignOracle> = field.embeddings().iter().map(SignOracle::embedding).collect();
    for negative in [false, true] {
        for inner in &below {
            let o = SignOracle::Radical {
                negative,
                inner: Box::new(inner.clone()),
            };
            if sign_at(&g, &o).is_ok() && consistent(field, &o) {
                out.push(o);
            }
            if out.len() >= POOL_CAP {
                return out;
            }
        }
    }
    out
}

/// Rejects negative roots of odd radicals, which are not orderings.
fn consistent(field: &Field, o: &SignOracle) -> bool {
    let odd = field.level_degree() % 2 == 1;
    !(odd && matches!(o, SignOracle::Radical { negative: true, .. }))
}

/// Elements used as `r` in `r (.) r*` when closing generators: small
/// rationals, inverses of the generators and the tower generators.
pub fn default_conj_pool(field: &Field, gens: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![field.one(), field.int(2), field.frac(1, 2)];
    for g in gens {
        if !g.is_zero() {
            if let Ok(i) = g.inv() {
                out.push(i);
            }
        }
    }
    for name in field.generator_names() {
        if let Some(g) = field.generator(&name) {
            out.push(g);
        }
    }
    let mut seen = std::collections::HashSet::new();
    out.retain(|x| seen.insert(x.clone()));
    out
}

/// YES when an ordering of the pool (or its negative, if not `unital`)
/// contains every generator, NO when the bounded closure of the generators
/// (with 1 when `unital`) contains some `c` and `-c`, UNKNOWN otherwise.
pub fn cone_existence(
    field: &Field,
    gens: &[Scalar],
    unital: bool,
    oracles: &[SignOracle],
    bounds: ClosureBounds,
) -> Result<RealityVerdict, HermitianError> {
    let gens: Vec<Scalar> = gens.iter().map(|g| field.coerce(g)).collect::<Result<_, _>>()?;
    let mut all = gens.clone();
    if unital && !all.contains(&field.one()) {
        all.insert(0, field.one());
    }
    for o in oracles {
        if all_in(&all, o, false).unwrap_or(false) {
            let mut v = RealityVerdict::new(RealityStatus::FormallyReal, &all, bounds, oracles.len());
            v.witness = Some(Witness::Ordering(o.clone()));
            return Ok(v);
        }
        if !unital && all_in(&all, o, true).unwrap_or(false) {
            let mut v = RealityVerdict::new(RealityStatus::FormallyReal, &all, bounds, oracles.len());
            v.witness = Some(Witness::NegatedOrdering(o.clone()));
            return Ok(v);
        }
    }
    let ring = FieldRing(field.clone());
    let pool = default_conj_pool(field, &all);
    let nonzero: Vec<Scalar> = all.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut closure = BoundedClosure::new(&ring, &nonzero, &pool, bounds);
    if let Some(cert) = closure.find_opposite() {
        let mut v = RealityVerdict::new(RealityStatus::NotFormallyReal, &all, bounds, oracles.len());
        v.certificate = Some(Certificate::Opposite(cert));
        return Ok(v);
    }
    let mut v = RealityVerdict::new(RealityStatus::Unknown, &all, bounds, oracles.len());
    v.notes.push(format!(
        "no ordering among {} contains the generators; closure of {} elements after {} rounds has no opposite pair",
        oracles.len(),
        closure.len(),
        closure.rounds_done()
    ));
    Ok(v)
}

fn all_in(gens: &[Scalar], o: &SignOracle, negated: bool) -> Result<bool, HermitianError> {
    let Some(g) = gens.first() else {
        return Ok(true);
    };
    let cone = OrderingCone::new(g.field(), o.clone());
    for g in gens {
        let g = if negated { -g } else { g.clone() };
        if cone.contains(&g)? != Membership::Member {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the involution `X -> A^-1 X* A` is formally real, from a
/// diagonalization of the eta-hermitian `A`.
pub fn formal_reality_check(
    a: &Matrix<FieldRing>,
    eta: &Scalar,
    oracles: &[SignOracle],
    bounds: ClosureBounds,
) -> Result<RealityVerdict, HermitianError> {
    let ring = a.ring().clone();
    let field = ring.0.clone();
    if !repair_allowed(&ring, eta) {
        let w = alternating_degenerate_witness(a, eta)?;
        let mut v = RealityVerdict::new(RealityStatus::NotFormallyReal, &[], bounds, 0);
        v.notes.push("eta = -1 with trivial involution: the only cone is {0}".into());
        v.certificate = Some(Certificate::Alternating(Box::new(w)));
        return Ok(v);
    }
    let res = diagonalize(a, eta)?;
    let diag = res.diagonal();
    let mut v = cone_existence(&field, &diag, false, oracles, bounds)?;
    v.notes.insert(0, format!("diagonal entries: {}", join(&diag)));
    Ok(v)
}

pub(crate) fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// Shared handle for cones over a field.
pub fn ordering_cone(field: &Field, oracle: &SignOracle) -> Arc<dyn Cone<Scalar>> {
    Arc::new(OrderingCone::new(field, oracle.clone()))
}

#[cfg(test)]
mod tests;
