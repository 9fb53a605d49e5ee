use serde_json::{json, Value as Json};

use crate::algebra::{Element, Involution, SkewPoly};
use crate::hermitian::{Cone, HermitianError, Membership};

use super::Witness;

/// Elements `d_1..d_m` with `sum d_i* d_i` claimed equal to `target`.
#[derive(Clone, Debug)]
pub struct SohsCertificate {
    pub elements: Vec<Element>,
    pub target: Element,
    pub involution: Involution,
}

#[derive(Clone, Debug)]
pub struct SohsCheck {
    pub holds: bool,
    /// `sum d_i* d_i - target`
    pub residual: Element,
}

impl SohsCertificate {
    pub fn new(involution: &Involution, elements: Vec<Element>, target: Element) -> Self {
        SohsCertificate {
            elements,
            target,
            involution: involution.clone(),
        }
    }

    /// Certificate that some nonzero hermitian squares sum to zero.
    pub fn vanishing(involution: &Involution, elements: Vec<Element>) -> Self {
        let zero = Element::zero(involution.algebra());
        SohsCertificate::new(involution, elements, zero)
    }

    /// Whether the certificate, if it holds, refutes formal reality.
    pub fn is_obstruction(&self) -> bool {
        self.target.is_zero() && self.elements.iter().any(|d| !d.is_zero())
    }

    pub fn to_json(&self) -> Json {
        json!({
            "kind": "sohs",
            "elements": self.elements.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "target": self.target.to_string(),
        })
    }
}

pub fn verify_sohs(cert: &SohsCertificate) -> Result<SohsCheck, HermitianError> {
    let alg = cert.involution.algebra();
    if cert.target.algebra() != alg || cert.elements.iter().any(|d| d.algebra() != alg) {
        return Err(crate::algebra::AlgebraError::HostMismatch.into());
    }
    let mut sum = Element::zero(alg);
    for d in &cert.elements {
        sum = &sum + &(&cert.involution.apply(d) * d);
    }
    let residual = &sum - &cert.target;
    Ok(SohsCheck {
        holds: residual.is_zero(),
        residual,
    })
}

/// A leading-term witness when `cone` contains every generator.
pub fn leading_term_witness(cone: &dyn Cone<SkewPoly>, gens: &[SkewPoly]) -> Result<Option<Witness>, HermitianError> {
    for g in gens {
        if cone.contains(g)? != Membership::Member {
            return Ok(None);
        }
    }
    Ok(Some(Witness::LeadingTerm {
        description: cone.describe(),
        samples: gens.len(),
    }))
}
