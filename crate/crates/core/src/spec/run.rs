use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Map, Value as Json};

use crate::algebra::{Element, SymbolToCrossed};
use crate::hermitian::{diagonalize, match_diagonal, ClosureBounds};
use crate::matrix::{FieldRing, Matrix, RepresentationContext, StarRing};
use crate::projection::SubfieldPresentation;
use crate::reality::{
    bilinear_trace_form, cone_existence, extension_formally_real, extension_identities, formal_reality_check,
    norm_criteria, ordering_cone, ordering_pool, trace_form_report, verify_sohs, RealityStatus, RealityVerdict,
};
use crate::sample;
use crate::scalars::{Scalar, SignOracle};

use super::doc::{parse_element, parse_scalar, CheckSpec, SpecDocument};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunOptions {
    pub seed: u64,
    pub bounds: ClosureBounds,
    /// Cap on the number of orderings tried as witnesses; `Some(0)` leaves
    /// only the closure search.
    pub witness_pool: Option<usize>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 0,
            bounds: ClosureBounds::default(),
            witness_pool: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRecord {
    pub fixture: String,
    pub check: String,
    pub status: String,
    pub ok: bool,
    pub witness: Json,
    pub certificate: Json,
    pub values: Json,
    pub seed: u64,
    pub bounds: ClosureBounds,
    pub error: Option<String>,
    pub timing_ms: u64,
}

type CheckResult = Result<Outcome, String>;

struct Outcome {
    status: String,
    ok: bool,
    witness: Json,
    certificate: Json,
    values: Map<String, Json>,
}

impl Outcome {
    fn pass_fail(ok: bool, values: Map<String, Json>) -> Outcome {
        Outcome {
            status: if ok { "PASS" } else { "FAIL" }.into(),
            ok,
            witness: Json::Null,
            certificate: Json::Null,
            values,
        }
    }
}

fn matrix_json(m: &Matrix<FieldRing>) -> Json {
    Json::Array(
        (0..m.rows())
            .map(|i| Json::Array(m.row(i).iter().map(|x| Json::String(x.to_string())).collect()))
            .collect(),
    )
}

fn strings<T: ToString>(xs: &[T]) -> Json {
    Json::Array(xs.iter().map(|x| Json::String(x.to_string())).collect())
}

fn parse_bool(check: &CheckSpec, key: &str) -> Result<Option<bool>, String> {
    match check.param(key) {
        None => Ok(None),
        Some("true") => Ok(Some(true)),
        Some("false") => Ok(Some(false)),
        Some(v) => Err(format!("{key} must be true or false, found '{v}'")),
    }
}

struct Runner<'a> {
    doc: &'a SpecDocument,
    opts: &'a RunOptions,
    rep: Option<Result<Arc<RepresentationContext>, String>>,
    crossed: Option<Result<Arc<RepresentationContext>, String>>,
}

impl<'a> Runner<'a> {
    fn pres(&self) -> Result<&'a SubfieldPresentation, String> {
        self.doc.presentation.as_ref().map_err(|e| e.clone())
    }

    fn rep(&mut self) -> Result<Arc<RepresentationContext>, String> {
        if self.rep.is_none() {
            let r = self
                .pres()
                .and_then(|p| RepresentationContext::new(p).map(Arc::new).map_err(|e| e.to_string()));
            self.rep = Some(r);
        }
        self.rep.clone().expect("set")
    }

    /// The crossed-product form: the document itself, or the cyclic
    /// crossed product over `F(x)` of a symbol algebra.
    fn crossed(&mut self) -> Result<Arc<RepresentationContext>, String> {
        if self.crossed.is_none() {
            let r = if self.doc.algebra.is_crossed() {
                self.rep()
            } else {
                self.pres().and_then(|_| {
                    let alg = &self.doc.algebra;
                    let x = alg.generator(&alg.generator_names()[0]).map_err(|e| e.to_string())?;
                    let xs = self.doc.involution.apply(&x);
                    let conv = SymbolToCrossed::new(alg, Some(&xs)).map_err(|e| e.to_string())?;
                    let inv = conv.involution(&self.doc.involution).map_err(|e| e.to_string())?;
                    let pres = SubfieldPresentation::crossed(&inv).map_err(|e| e.to_string())?;
                    RepresentationContext::new(&pres).map(Arc::new).map_err(|e| e.to_string())
                })
            };
            self.crossed = Some(r);
        }
        self.crossed.clone().expect("set")
    }

    fn pool(&self, field: &crate::scalars::Field) -> Vec<SignOracle> {
        let mut p = ordering_pool(field);
        if let Some(cap) = self.opts.witness_pool {
            p.truncate(cap);
        }
        p
    }

    fn element(&self, check: &CheckSpec, key: &str) -> Result<Option<Element>, String> {
        check
            .param(key)
            .map(|t| parse_element(&self.doc.algebra, t).map_err(|e| format!("{key}: {} at column {}", e.msg, e.col + 1)))
            .transpose()
    }

    /// `A` itself, or `A lambda(u)` when `element=u` is given.
    fn target_matrix(&mut self, check: &CheckSpec) -> Result<(Matrix<FieldRing>, Option<Element>), String> {
        let rep = self.rep()?;
        match self.element(check, "element")? {
            None => Ok((rep.gram().clone(), None)),
            Some(u) => {
                let l = rep.lambda(&u).map_err(|e| e.to_string())?;
                Ok((rep.gram().checked_mul(&l).map_err(|e| e.to_string())?, Some(u)))
            }
        }
    }

    fn run(&mut self, check: &CheckSpec) -> CheckResult {
        match check.name.as_str() {
            "validate-involution" => self.validate_involution(),
            "validate-cocycle" => self.validate_cocycle(),
            "gram" => self.gram(),
            "diagonalize" => self.diagonalize(check),
            "reality" => self.reality(check),
            "crossinvo" => self.extension_verdict(check),
            "exti" => self.norm_agreement(check),
            "sohs-verify" => self.sohs(check),
            "trace-form" => self.trace_form(check),
            "mainext-sample" => self.extension_sample(check),
            other => Err(format!("unknown check '{other}'")),
        }
    }

    fn validate_involution(&self) -> CheckResult {
        let r = &self.doc.involution_report;
        let mut v = Map::new();
        v.insert("images".into(), json!(self.doc.involution.basis_images()));
        v.insert("summary".into(), json!(r.summary()));
        Ok(Outcome::pass_fail(r.ok(), v))
    }

    fn validate_cocycle(&mut self) -> CheckResult {
        let report = if self.doc.algebra.is_crossed() {
            self.doc.algebra.validate_cocycle()
        } else {
            let conv = SymbolToCrossed::new(&self.doc.algebra, None).map_err(|e| e.to_string())?;
            conv.crossed.validate_cocycle()
        };
        let mut v = Map::new();
        v.insert("summary".into(), json!(report.summary()));
        Ok(Outcome::pass_fail(report.ok(), v))
    }

    fn gram(&mut self) -> CheckResult {
        let rep = self.rep()?;
        let pres = rep.presentation();
        let a = rep.gram();
        let hermitian = a.is_eps_hermitian(&a.ring().one());
        let invertible = !a.det().map_err(|e| e.to_string())?.is_zero();
        let mut v = Map::new();
        v.insert("basis".into(), strings(pres.basis()));
        v.insert("gram".into(), matrix_json(a));
        v.insert("hermitian".into(), json!(hermitian));
        v.insert("invertible".into(), json!(invertible));
        Ok(Outcome::pass_fail(hermitian && invertible, v))
    }

    fn diagonalize(&mut self, check: &CheckSpec) -> CheckResult {
        let (m, _) = self.target_matrix(check)?;
        let ring = m.ring().clone();
        let k = ring.0.clone();
        let eps = match check.param("eps") {
            Some(t) => parse_scalar(&k, t).map_err(|e| format!("eps: {}", e.msg))?,
            None => k.one(),
        };
        let res = diagonalize(&m, &eps).map_err(|e| e.to_string())?;
        let verified = res.verify(&m).map_err(|e| e.to_string())?;
        let diag = res.diagonal();
        let mut v = Map::new();
        v.insert("matrix".into(), matrix_json(&m));
        v.insert("diagonal".into(), strings(&diag));
        v.insert("hyperbolic".into(), strings(&res.hyperbolic()));
        v.insert("zeros".into(), json!(res.zeros));
        v.insert("P".into(), matrix_json(&res.p));
        v.insert("verified".into(), json!(verified));
        let mut ok = verified;
        if let Some(exp) = check.param("expect") {
            let expected: Vec<Scalar> = exp
                .split(',')
                .map(|t| parse_scalar(&k, t).map_err(|e| format!("expect: {}", e.msg)))
                .collect::<Result<_, _>>()?;
            let mut pool = vec![k.one(), k.int(-1), k.int(2), k.frac(1, 2)];
            for name in k.generator_names() {
                pool.extend(k.generator(&name));
            }
            let matched = match_diagonal(&ring, &diag, &expected, &pool);
            v.insert("matches_expected".into(), json!(matched.is_some()));
            ok &= matched.is_some();
        }
        Ok(Outcome::pass_fail(ok, v))
    }

    fn verdict_outcome(&self, check: &CheckSpec, verdict: &RealityVerdict, mut values: Map<String, Json>) -> CheckResult {
        let verified = verdict.verify().map_err(|e| e.to_string())?;
        values.insert("generators".into(), strings(&verdict.generators));
        values.insert("oracles_tried".into(), json!(verdict.oracles_tried));
        values.insert("notes".into(), json!(verdict.notes));
        values.insert("verified".into(), json!(verified));
        let mut ok = verified;
        if let Some(exp) = check.param("expect") {
            ok &= verdict.status.as_str() == exp;
        }
        Ok(Outcome {
            status: verdict.status.as_str().into(),
            ok,
            witness: verdict.witness_json(),
            certificate: verdict.certificate_json(),
            values,
        })
    }

    fn reality(&mut self, check: &CheckSpec) -> CheckResult {
        let (m, u) = self.target_matrix(check)?;
        let k = m.ring().0.clone();
        let pool = self.pool(&k);
        let mut v = Map::new();
        let verdict = match u {
            None => {
                let eta = match check.param("eta") {
                    Some(t) => parse_scalar(&k, t).map_err(|e| format!("eta: {}", e.msg))?,
                    None => k.one(),
                };
                formal_reality_check(&m, &eta, &pool, self.opts.bounds).map_err(|e| e.to_string())?
            }
            Some(u) => {
                if self.doc.involution.apply(&u) != u {
                    return Err(format!("{u} is not hermitian"));
                }
                let res = diagonalize(&m, &k.one()).map_err(|e| e.to_string())?;
                v.insert("element".into(), json!(u.to_string()));
                v.insert("diagonal".into(), strings(&res.diagonal()));
                if !res.is_diagonal() {
                    return Err("congruence produced hyperbolic blocks".into());
                }
                cone_existence(&k, &res.diagonal(), true, &pool, self.opts.bounds).map_err(|e| e.to_string())?
            }
        };
        self.verdict_outcome(check, &verdict, v)
    }

    fn extension_verdict(&mut self, check: &CheckSpec) -> CheckResult {
        let rep = self.crossed()?;
        let pool = self.pool(rep.presentation().k_field());
        let r = extension_formally_real(&rep, &pool, self.opts.bounds).map_err(|e| e.to_string())?;
        let mut v = Map::new();
        v.insert("clause".into(), json!(r.clause));
        v.insert("norms_in_k".into(), json!(r.criteria.norms_in_k));
        v.insert(
            "norms".into(),
            Json::Object(r.criteria.norms.iter().map(|(g, n)| (g.clone(), json!(n.to_string()))).collect()),
        );
        self.verdict_outcome(check, &r.verdict, v)
    }

    fn norm_agreement(&mut self, check: &CheckSpec) -> CheckResult {
        let rep = self.crossed()?;
        let c = norm_criteria(&rep).map_err(|e| e.to_string())?;
        let mut v = Map::new();
        v.insert("commuting".into(), json!(c.commuting));
        v.insert("norms_in_k".into(), json!(c.norms_in_k));
        v.insert("gram_diagonal".into(), json!(c.gram_diagonal));
        v.insert("agree".into(), json!(c.agree()));
        v.insert(
            "norms".into(),
            Json::Object(c.norms.iter().map(|(g, n)| (g.clone(), json!(n.to_string()))).collect()),
        );
        let mut ok = c.agree();
        if let Some(exp) = parse_bool(check, "expect")? {
            ok &= c.norms_in_k == exp;
        }
        Ok(Outcome::pass_fail(ok, v))
    }

    fn sohs(&mut self, check: &CheckSpec) -> CheckResult {
        let cert = self
            .doc
            .certificate
            .as_ref()
            .ok_or_else(|| "no [certificate] section".to_string())?;
        let res = verify_sohs(cert).map_err(|e| e.to_string())?;
        let mut v = Map::new();
        v.insert("holds".into(), json!(res.holds));
        v.insert("residual".into(), json!(res.residual.to_string()));
        v.insert("obstruction".into(), json!(res.holds && cert.is_obstruction()));
        let expect = parse_bool(check, "expect")?.unwrap_or(true);
        let mut out = Outcome::pass_fail(res.holds == expect, v);
        out.certificate = cert.to_json();
        Ok(out)
    }

    fn trace_form(&mut self, check: &CheckSpec) -> CheckResult {
        let pres = self.pres()?;
        let center = pres.center();
        let pool = self.pool(&center);
        let r = trace_form_report(pres, None, &pool).map_err(|e| e.to_string())?;
        let bil = bilinear_trace_form(pres, &r.basis).map_err(|e| e.to_string())?;
        let mut v = Map::new();
        v.insert("basis".into(), strings(&r.basis));
        v.insert("gram".into(), matrix_json(&r.gram));
        v.insert("bilinear".into(), matrix_json(&bil));
        v.insert("diagonal".into(), strings(&r.diagonal()));
        v.insert("verified".into(), json!(r.verified));
        v.insert(
            "orderings".into(),
            Json::Array(
                r.per_ordering
                    .iter()
                    .map(|o| json!({"oracle": o.oracle.describe(), "signs": strings(&o.signs), "psd": o.psd}))
                    .collect(),
            ),
        );
        v.insert("psd".into(), json!(r.psd()));
        let mut ok = r.verified;
        if let Some(exp) = parse_bool(check, "expect-psd")? {
            ok &= r.psd() == exp;
        }
        Ok(Outcome::pass_fail(ok, v))
    }

    fn extension_sample(&mut self, check: &CheckSpec) -> CheckResult {
        let rep = self.crossed()?;
        let k = rep.presentation().k_field().clone();
        let samples: usize = match check.param("samples") {
            Some(t) => t.parse().map_err(|_| format!("samples must be a count, found '{t}'"))?,
            None => 30,
        };
        let mut rng = sample::rng(self.opts.seed.wrapping_add(check.line as u64));
        let mut ok = true;
        let mut per = Vec::new();
        let mut pool = self.pool(&k);
        pool.truncate(4);
        if pool.is_empty() {
            return Err("no ordering of K to sample against".into());
        }
        for o in pool {
            let r = extension_identities(&rep, ordering_cone(&k, &o), &mut rng, samples).map_err(|e| e.to_string())?;
            ok &= r.holds();
            per.push(json!({
                "oracle": o.describe(),
                "norm_identity": r.norm_identity.iter().all(|x| x.2),
                "tallies": r.tallies,
            }));
        }
        let mut v = Map::new();
        v.insert("samples".into(), json!(samples));
        v.insert("per_ordering".into(), Json::Array(per));
        Ok(Outcome::pass_fail(ok, v))
    }
}

/// Runs every check of the document in declaration order; failures are
/// captured in the records.
pub fn run_checks(doc: &SpecDocument, opts: &RunOptions) -> Vec<ReportRecord> {
    let mut runner = Runner {
        doc,
        opts,
        rep: None,
        crossed: None,
    };
    let mut out = Vec::new();
    for check in &doc.checks {
        let start = Instant::now();
        let res = runner.run(check);
        let timing_ms = start.elapsed().as_millis() as u64;
        let rec = match res {
            Ok(o) => ReportRecord {
                fixture: doc.name.clone(),
                check: check.name.clone(),
                status: o.status,
                ok: o.ok,
                witness: o.witness,
                certificate: o.certificate,
                values: Json::Object(o.values),
                seed: opts.seed,
                bounds: opts.bounds,
                error: None,
                timing_ms,
            },
            Err(e) => ReportRecord {
                fixture: doc.name.clone(),
                check: check.name.clone(),
                status: "ERROR".into(),
                ok: false,
                witness: Json::Null,
                certificate: Json::Null,
                values: Json::Object(Map::new()),
                seed: opts.seed,
                bounds: opts.bounds,
                error: Some(e),
                timing_ms,
            },
        };
        out.push(rec);
    }
    out
}

impl RealityStatus {
    pub fn parse(s: &str) -> Option<RealityStatus> {
        [RealityStatus::FormallyReal, RealityStatus::NotFormallyReal, RealityStatus::Unknown]
            .into_iter()
            .find(|r| r.as_str() == s)
    }
}
