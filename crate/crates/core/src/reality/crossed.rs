use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{CrossedProduct, Element};
use crate::hermitian::{Acted, ClosureBounds, Cone, Contracted, Extended, HermitianError, Intersection, Membership};
use crate::matrix::RepresentationContext;
use crate::projection::ProjectionError;
use crate::sample::{self, SampleRng};
use crate::scalars::{Scalar, SignOracle};
use rand::Rng;

use super::{cone_existence, formal_reality_check, Certificate, RealityStatus, RealityVerdict};

fn crossed_of(rep: &RepresentationContext) -> Result<&CrossedProduct, HermitianError> {
    rep.presentation()
        .algebra()
        .as_crossed()
        .ok_or_else(|| HermitianError::WrongCase("not a crossed product".into()))
}

/// The three equivalent conditions on a crossed product with involution:
/// the action commutes with the involution on K, every `e_g* e_g` lies in K,
/// and the Gram matrix is diagonal.
#[derive(Clone, Debug)]
pub struct NormCriteria {
    pub commuting: bool,
    pub norms_in_k: bool,
    pub gram_diagonal: bool,
    /// `(g, e_g* e_g)`
    pub norms: Vec<(String, Element)>,
}

impl NormCriteria {
    pub fn agree(&self) -> bool {
        self.commuting == self.norms_in_k && self.norms_in_k == self.gram_diagonal
    }

    /// `a_g = e_g* e_g` when every norm lies in K.
    pub fn a(&self) -> Option<Vec<Scalar>> {
        self.norms.iter().map(|(_, n)| n.as_scalar()).collect()
    }
}

pub fn norm_criteria(rep: &RepresentationContext) -> Result<NormCriteria, HermitianError> {
    let cp = crossed_of(rep)?;
    let pres = rep.presentation();
    let inv = pres.involution();
    let alg = pres.algebra();
    let mut commuting = true;
    for g in 0..cp.order() {
        commuting &= cp.automorphism(g).commutes_with_involution()?;
    }
    let mut norms = Vec::new();
    for g in 0..cp.order() {
        let e = Element::basis(alg, g);
        norms.push((cp.group()[g].clone(), &inv.apply(&e) * &e));
    }
    let norms_in_k = norms.iter().all(|(_, n)| n.as_scalar().is_some());
    let gram = rep.gram();
    let gram_diagonal = gram.is_diagonal();
    Ok(NormCriteria {
        commuting,
        norms_in_k,
        gram_diagonal,
        norms,
    })
}

#[derive(Clone, Debug)]
pub struct ExtensionReport {
    pub verdict: RealityVerdict,
    pub criteria: NormCriteria,
    pub clause: String,
}

/// Whether the involution extended to `D (x) K` is formally real: every
/// `e_g* e_g` must lie in K and some unital cone on K must contain them all.
pub fn extension_formally_real(
    rep: &RepresentationContext,
    oracles: &[SignOracle],
    bounds: ClosureBounds,
) -> Result<ExtensionReport, HermitianError> {
    let criteria = norm_criteria(rep)?;
    let k = rep.presentation().k_field().clone();
    if let Some(a) = criteria.a() {
        let verdict = cone_existence(&k, &a, true, oracles, bounds)?;
        let clause = match verdict.status {
            RealityStatus::FormallyReal => "a unital cone on K contains every e_g* e_g".to_string(),
            RealityStatus::NotFormallyReal => "no unital cone on K contains every e_g* e_g".to_string(),
            RealityStatus::Unknown => "cone existence undecided within bounds".to_string(),
        };
        return Ok(ExtensionReport { verdict, criteria, clause });
    }
    let (g, n) = criteria
        .norms
        .iter()
        .find(|(_, n)| n.as_scalar().is_none())
        .cloned()
        .expect("some norm outside K");
    let mut verdict = formal_reality_check(rep.gram(), &k.one(), oracles, bounds)?;
    if verdict.status != RealityStatus::NotFormallyReal {
        verdict.status = RealityStatus::NotFormallyReal;
        verdict.witness = None;
        verdict.certificate = Some(Certificate::NormNotInSubfield {
            group_element: g.clone(),
            value: n.to_string(),
        });
    }
    Ok(ExtensionReport {
        verdict,
        clause: format!("e_{g}* e_{g} = {n} is not in K"),
        criteria,
    })
}

/// `a_s a_t^s = Phi(t, s)* a_ts Phi(t, s)` for every pair `(s, t)`.
pub fn cocycle_norm_identity(rep: &RepresentationContext) -> Result<Vec<(String, String, bool)>, HermitianError> {
    let cp = crossed_of(rep)?;
    let a = norm_criteria(rep)?
        .a()
        .ok_or_else(|| HermitianError::HypothesisViolated("some e_g* e_g is not in K".into()))?;
    let names = cp.group();
    let mut out = Vec::new();
    for s in 0..cp.order() {
        for t in 0..cp.order() {
            let lhs = &a[s] * &cp.automorphism(s).apply(&a[t])?;
            let phi = cp.cocycle(t, s);
            let rhs = &(&phi.conj() * &a[cp.mul_index(t, s)]) * phi;
            out.push((names[s].clone(), names[t].clone(), lhs == rhs));
        }
    }
    Ok(out)
}

/// `d_s = sum_p e_(ps) Phi(p, s) k_p^s` for `d = sum_p e_p k_p`.
pub fn d_sigma(rep: &RepresentationContext, d: &Element, s: usize) -> Result<Element, HermitianError> {
    let cp = crossed_of(rep)?;
    let mut terms = BTreeMap::new();
    for (p, k) in d.terms() {
        let v = cp.cocycle(*p, s) * &cp.automorphism(s).apply(k)?;
        terms.insert(cp.mul_index(*p, s), v);
    }
    Ok(Element::from_terms(d.algebra(), terms))
}

/// `f(d_s* u d_s) = a_s f(d* u d)^s`.
pub fn transformation_law(rep: &RepresentationContext, u: &Element, d: &Element, s: usize) -> Result<bool, HermitianError> {
    let cp = crossed_of(rep)?;
    let pres = rep.presentation();
    let inv = pres.involution();
    let ds = d_sigma(rep, d, s)?;
    let e = Element::basis(pres.algebra(), s);
    let a_s = (&inv.apply(&e) * &e)
        .as_scalar()
        .ok_or_else(|| ProjectionError::NotInK(format!("e_{}* e_{}", cp.group()[s], cp.group()[s])))?;
    let lhs = pres.f(&(&(&inv.apply(&ds) * u) * &ds))?;
    let inner = pres.f(&(&(&inv.apply(d) * u) * d))?;
    let rhs = &a_s * &cp.automorphism(s).apply(&inner)?;
    Ok(lhs == rhs)
}

/// Outcomes of one sampled identity.
#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct Tally {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub unknown: usize,
}

impl Tally {
    fn new(name: &str) -> Tally {
        Tally {
            name: name.to_string(),
            ..Tally::default()
        }
    }

    fn record(&mut self, a: Membership, b: Membership) {
        if a == Membership::Unknown || b == Membership::Unknown {
            self.unknown += 1;
        } else if a == b {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExtensionIdentities {
    pub norm_identity: Vec<(String, String, bool)>,
    pub tallies: Vec<Tally>,
}

impl ExtensionIdentities {
    pub fn holds(&self) -> bool {
        self.norm_identity.iter().all(|r| r.2) && self.tallies.iter().all(|t| t.failed == 0)
    }
}

/// Samples the identities relating a cone `N` on K, its extension `N^e` to
/// D and the contraction back to K: the norm identity, the transformation
/// law of `f`, `N^ec = meet of the N_s`, `(M^c)_s = M^c` and `M^cec = M^c`
/// for `M = N^e`.
pub fn extension_identities(
    rep: &Arc<RepresentationContext>,
    base: Arc<dyn Cone<Scalar>>,
    rng: &mut SampleRng,
    samples: usize,
) -> Result<ExtensionIdentities, HermitianError> {
    let cp = crossed_of(rep)?;
    let pres = rep.presentation();
    let inv = pres.involution();
    let alg = pres.algebra();
    let k = pres.k_field();
    let norm_identity = cocycle_norm_identity(rep)?;
    let a = norm_criteria(rep)?
        .a()
        .ok_or_else(|| HermitianError::HypothesisViolated("some e_g* e_g is not in K".into()))?;

    let mut law = Tally::new("f(d_s* u d_s) = a_s f(d* u d)^s");
    for _ in 0..samples {
        let v = sample::element(alg, rng, 3);
        let u = &v + &inv.apply(&v);
        let d = sample::nonzero_element(alg, rng, 3);
        let s = rng.gen_range(0..cp.order());
        if transformation_law(rep, &u, &d, s)? {
            law.passed += 1;
        } else {
            law.failed += 1;
        }
    }

    let acted = |c: Arc<dyn Cone<Scalar>>| -> Result<Vec<Arc<dyn Cone<Scalar>>>, HermitianError> {
        (0..cp.order())
            .map(|s| Ok(Arc::new(Acted::new(c.clone(), cp.automorphism(s), &a[s])?) as Arc<dyn Cone<Scalar>>))
            .collect()
    };
    let ext: Arc<dyn Cone<Element>> = Arc::new(Extended::new(base.clone(), rep.clone()));
    let ec: Arc<dyn Cone<Scalar>> = Arc::new(Contracted::new(ext, rep.clone()));
    let meet = Intersection::new(acted(base)?);
    let mc = ec.clone();
    let mc_acted = acted(mc.clone())?;
    let mcec = Contracted::new(Arc::new(Extended::new(mc.clone(), rep.clone())), rep.clone());

    let mut ec_meet = Tally::new("N^ec = meet of N_s");
    let mut mc_fixed = Tally::new("(M^c)_s = M^c");
    let mut mc_round = Tally::new("M^cec = M^c");
    for _ in 0..samples {
        let x = sample::scalar(k, rng, 4);
        let h = &x + &x.conj();
        ec_meet.record(ec.contains(&h)?, meet.contains(&h)?);
        let m = mc.contains(&h)?;
        let s = rng.gen_range(0..cp.order());
        mc_fixed.record(mc_acted[s].contains(&h)?, m);
        mc_round.record(mcec.contains(&h)?, m);
    }
    Ok(ExtensionIdentities {
        norm_identity,
        tallies: vec![law, ec_meet, mc_fixed, mc_round],
    })
}
