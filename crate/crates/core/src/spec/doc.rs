use std::collections::BTreeMap;

use crate::algebra::{Algebra, Element, Involution, InvolutionReport};
use crate::projection::SubfieldPresentation;
use crate::reality::SohsCertificate;
use crate::scalars::{Automorphism, Field, Scalar};

use super::expr::{parse_expr, Domain, ElementDomain, ExprError, PolyDomain, ScalarDomain};
use super::SpecError;

const SECTIONS: [&str; 7] = ["field", "algebra", "involution", "subfield", "basis", "checks", "certificate"];

#[derive(Clone, Debug)]
struct Line {
    no: usize,
    key: String,
    key_col: usize,
    value: String,
    value_col: usize,
}

#[derive(Clone, Debug)]
pub struct CheckSpec {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub line: usize,
}

impl CheckSpec {
    pub fn param(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(|s| s.as_str())
    }
}

/// A parsed and validated spec file.
#[derive(Clone)]
pub struct SpecDocument {
    pub name: String,
    pub field: Field,
    pub algebra: Algebra,
    pub involution: Involution,
    pub involution_report: InvolutionReport,
    /// `Err` holds the reason no presentation could be built, typically an
    /// invalid involution or cocycle.
    pub presentation: Result<SubfieldPresentation, String>,
    pub checks: Vec<CheckSpec>,
    pub certificate: Option<SohsCertificate>,
}

impl std::fmt::Debug for SpecDocument {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpecDocument")
            .field("name", &self.name)
            .field("field", &self.field.describe())
            .field("algebra", &self.algebra.describe())
            .field("checks", &self.checks.iter().map(|c| &c.name).collect::<Vec<_>>())
            .finish()
    }
}

fn parse_error(line: usize, col: usize, msg: impl Into<String>) -> SpecError {
    SpecError::Parse {
        line,
        col: col + 1,
        msg: msg.into(),
    }
}

fn validation(section: &str, msg: impl Into<String>) -> SpecError {
    SpecError::Validation {
        section: section.to_string(),
        msg: msg.into(),
    }
}

fn split_sections(text: &str) -> Result<Vec<(String, usize, Vec<Line>)>, SpecError> {
    let mut out: Vec<(String, usize, Vec<Line>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                return Err(parse_error(no, indent, "unterminated section header"));
            };
            let name = name.trim();
            if !SECTIONS.contains(&name) {
                return Err(parse_error(no, indent + 1, format!("unknown section [{name}]")));
            }
            if out.iter().any(|(n, ..)| n == name) {
                return Err(parse_error(no, indent, format!("duplicate section [{name}]")));
            }
            out.push((name.to_string(), no, Vec::new()));
            continue;
        }
        let Some(section) = out.last_mut() else {
            return Err(parse_error(no, indent, "content before the first section"));
        };
        let line = if section.0 == "checks" {
            let key_end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
            let value = trimmed[key_end..].trim();
            Line {
                no,
                key: trimmed[..key_end].to_string(),
                key_col: indent,
                value_col: indent + trimmed.len() - value.len(),
                value: value.to_string(),
            }
        } else {
            let Some(eq) = content.find('=') else {
                return Err(parse_error(no, indent, "expected 'key = value'"));
            };
            let key = content[..eq].trim();
            if key.is_empty() {
                return Err(parse_error(no, indent, "missing key"));
            }
            let after = &content[eq + 1..];
            let value = after.trim();
            Line {
                no,
                key: key.split_whitespace().collect::<Vec<_>>().join(" "),
                key_col: indent,
                value_col: eq + 1 + after.len() - after.trim_start().len(),
                value: value.to_string(),
            }
        };
        section.2.push(line);
    }
    let order: Vec<usize> = out
        .iter()
        .map(|(n, ..)| SECTIONS.iter().position(|s| s == n).expect("known"))
        .collect();
    for w in order.windows(2).zip(out.windows(2)) {
        if w.0[0] > w.0[1] {
            return Err(parse_error(
                w.1[1].1,
                0,
                format!("section [{}] must come before [{}]", w.1[1].0, w.1[0].0),
            ));
        }
    }
    Ok(out)
}

fn eval_in<D: Domain>(line: &Line, text: &str, offset: usize, d: &D) -> Result<D::V, SpecError> {
    let e = parse_expr(text).map_err(|e| parse_error(line.no, line.value_col + offset + e.col, e.msg))?;
    e.eval(d)
        .map_err(|e| parse_error(line.no, line.value_col + offset + e.col, e.msg))
}

fn scalar(line: &Line, field: &Field) -> Result<Scalar, SpecError> {
    eval_in(line, &line.value, 0, &ScalarDomain(field))
}

fn element(line: &Line, alg: &Algebra) -> Result<Element, SpecError> {
    eval_in(line, &line.value, 0, &ElementDomain(alg))
}

/// Comma-separated items with their offsets in the value.
fn items(value: &str) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for part in value.split(',') {
        let lead = part.len() - part.trim_start().len();
        out.push((part.trim().to_string(), start + lead));
        start += part.len() + 1;
    }
    out
}

fn parse_field(lines: &[Line]) -> Result<Field, SpecError> {
    let mut field = Field::rationals();
    for l in lines {
        let words: Vec<&str> = l.key.split(' ').collect();
        match words.as_slice() {
            ["base"] => {
                if l.value != "Q" {
                    return Err(parse_error(l.no, l.value_col, "the base field must be Q"));
                }
            }
            ["algebraic", name] => {
                if field.generator(name).is_some() {
                    return Err(parse_error(l.no, l.key_col, format!("'{name}' is already declared")));
                }
                let modulus = eval_in(l, &l.value, 0, &PolyDomain { field: &field, var: name })?;
                field = Field::algebraic(&field, name, &modulus)
                    .map_err(|e| parse_error(l.no, l.value_col, e.to_string()))?;
            }
            ["involution", name] => {
                if field.top_name().as_deref() != Some(*name) {
                    return Err(parse_error(
                        l.no,
                        l.key_col,
                        format!("'{name}' is not the most recently adjoined algebraic generator"),
                    ));
                }
                let img = scalar(l, &field)?;
                field = field
                    .with_involution(&img)
                    .map_err(|e| parse_error(l.no, l.value_col, e.to_string()))?;
            }
            ["functions"] => {
                let vars: Vec<(String, usize)> = items(&l.value);
                for (v, off) in &vars {
                    if v.is_empty() || !v.chars().all(|c| c.is_alphanumeric() || c == '_') {
                        return Err(parse_error(l.no, l.value_col + off, format!("bad variable name '{v}'")));
                    }
                    if field.generator(v).is_some() {
                        return Err(parse_error(l.no, l.value_col + off, format!("'{v}' is already declared")));
                    }
                }
                let names: Vec<&str> = vars.iter().map(|(v, _)| v.as_str()).collect();
                field = Field::functions(&field, &names);
            }
            _ => return Err(parse_error(l.no, l.key_col, format!("unknown [field] key '{}'", l.key))),
        }
    }
    Ok(field)
}

fn get<'a>(lines: &'a [Line], key: &str) -> Option<&'a Line> {
    lines.iter().find(|l| l.key == key)
}

fn require<'a>(lines: &'a [Line], key: &str, section: &str) -> Result<&'a Line, SpecError> {
    get(lines, key).ok_or_else(|| validation(section, format!("missing key '{key}'")))
}

fn parse_algebra(lines: &[Line], field: &Field) -> Result<Algebra, SpecError> {
    let kind = require(lines, "kind", "algebra")?;
    let to_err = |l: &Line, e: crate::algebra::AlgebraError| parse_error(l.no, l.value_col, e.to_string());
    match kind.value.as_str() {
        "quaternion" => {
            for l in lines {
                if !["kind", "a", "b"].contains(&l.key.as_str()) {
                    return Err(parse_error(l.no, l.key_col, format!("unknown key '{}' for a quaternion algebra", l.key)));
                }
            }
            let a = scalar(require(lines, "a", "algebra")?, field)?;
            let b = scalar(require(lines, "b", "algebra")?, field)?;
            Algebra::quaternion(field, &a, &b).map_err(|e| to_err(kind, e))
        }
        "symbol" => {
            for l in lines {
                if !["kind", "n", "a", "b", "eps", "names"].contains(&l.key.as_str()) {
                    return Err(parse_error(l.no, l.key_col, format!("unknown key '{}' for a symbol algebra", l.key)));
                }
            }
            let nl = require(lines, "n", "algebra")?;
            let n: usize = nl
                .value
                .parse()
                .map_err(|_| parse_error(nl.no, nl.value_col, "n must be a positive integer"))?;
            let a = scalar(require(lines, "a", "algebra")?, field)?;
            let b = scalar(require(lines, "b", "algebra")?, field)?;
            let eps = scalar(require(lines, "eps", "algebra")?, field)?;
            let names: Vec<String> = match get(lines, "names") {
                Some(l) => {
                    let v: Vec<String> = items(&l.value).into_iter().map(|p| p.0).collect();
                    if v.len() != 2 {
                        return Err(parse_error(l.no, l.value_col, "names needs exactly two generators"));
                    }
                    v
                }
                None => vec!["x".into(), "y".into()],
            };
            for nm in &names {
                if field.generator(nm).is_some() {
                    return Err(validation("algebra", format!("generator '{nm}' clashes with a field generator")));
                }
            }
            Algebra::symbol(field, n, &a, &b, &eps, [&names[0], &names[1]]).map_err(|e| to_err(kind, e))
        }
        "crossed" => parse_crossed(lines, field),
        other => Err(parse_error(
            kind.no,
            kind.value_col,
            format!("unknown algebra kind '{other}' (expected symbol, quaternion or crossed)"),
        )),
    }
}

fn parse_crossed(lines: &[Line], field: &Field) -> Result<Algebra, SpecError> {
    let gl = require(lines, "group", "algebra")?;
    let group: Vec<(String, usize)> = items(&gl.value);
    let names: Vec<&str> = group.iter().map(|g| g.0.as_str()).collect();
    let n = names.len();
    let index = |l: &Line, name: &str, col: usize| {
        names
            .iter()
            .position(|g| *g == name)
            .ok_or_else(|| parse_error(l.no, col, format!("unknown group element '{name}'")))
    };
    let mut table: Vec<Vec<usize>> = vec![(0..n).collect(); n];
    table[0] = (0..n).collect();
    let mut autos: Vec<Automorphism> = vec![Automorphism::identity(field); n];
    let mut cocycle = vec![vec![field.one(); n]; n];
    let mut seen_rows = vec![false; n];
    seen_rows[0] = true;
    for l in lines {
        let key = l.key.as_str();
        if key == "kind" || key == "group" {
            continue;
        }
        if let Some(g) = key.strip_prefix("mul.") {
            let gi = index(l, g, l.key_col + 4)?;
            let row = items(&l.value);
            if row.len() != n {
                return Err(parse_error(l.no, l.value_col, format!("row needs {n} entries")));
            }
            for (h, (name, off)) in row.iter().enumerate() {
                table[gi][h] = index(l, name, l.value_col + off)?;
            }
            seen_rows[gi] = true;
        } else if let Some(g) = key.strip_prefix("act.") {
            let gi = index(l, g, l.key_col + 4)?;
            let mut images = Vec::new();
            let mut off = 0;
            for part in l.value.split(';') {
                let Some(colon) = part.find(':') else {
                    return Err(parse_error(l.no, l.value_col + off, "expected 'generator: image'"));
                };
                let gen = part[..colon].trim();
                if field.generator(gen).is_none() {
                    return Err(parse_error(l.no, l.value_col + off, format!("unknown generator '{gen}'")));
                }
                let img = eval_in(l, &part[colon + 1..], off + colon + 1, &ScalarDomain(field))?;
                images.push((gen.to_string(), img));
                off += part.len() + 1;
            }
            let refs: Vec<(&str, Scalar)> = images.iter().map(|(g, s)| (g.as_str(), s.clone())).collect();
            autos[gi] = Automorphism::new(field, &refs).map_err(|e| parse_error(l.no, l.value_col, e.to_string()))?;
        } else if let Some(pair) = key.strip_prefix("cocycle.") {
            let Some((g, h)) = pair.split_once('.') else {
                return Err(parse_error(l.no, l.key_col, "expected cocycle.<g>.<h>"));
            };
            let gi = index(l, g, l.key_col)?;
            let hi = index(l, h, l.key_col)?;
            cocycle[gi][hi] = scalar(l, field)?;
        } else {
            return Err(parse_error(l.no, l.key_col, format!("unknown key '{key}' for a crossed product")));
        }
    }
    if let Some(g) = seen_rows.iter().position(|s| !s) {
        return Err(validation("algebra", format!("missing multiplication row mul.{}", names[g])));
    }
    Algebra::crossed_unchecked(field, &names, table, autos, cocycle)
        .map_err(|e| validation("algebra", e.to_string()))
}

fn parse_involution(lines: &[Line], alg: &Algebra) -> Result<Involution, SpecError> {
    let gens = alg.generator_names();
    for l in lines {
        if !gens.contains(&l.key) {
            return Err(validation(
                "involution",
                format!("line {}: unknown generator '{}' (expected one of {})", l.no, l.key, gens.join(", ")),
            ));
        }
    }
    let mut images = Vec::new();
    for g in &gens {
        let img = match get(lines, g) {
            Some(l) => element(l, alg)?,
            None if alg.is_crossed() && g == "e_1" => Element::one(alg),
            None => return Err(validation("involution", format!("missing image of '{g}'"))),
        };
        images.push(img);
    }
    Involution::unchecked(alg, images).map_err(|e| validation("involution", e.to_string()))
}

fn parse_presentation(
    sub: Option<&[Line]>,
    basis: Option<&[Line]>,
    inv: &Involution,
    report: &InvolutionReport,
) -> Result<Result<SubfieldPresentation, String>, SpecError> {
    let alg = inv.algebra();
    if !report.ok() {
        return Ok(Err(format!("invalid involution: {}", report.summary())));
    }
    if alg.is_crossed() {
        if sub.is_some() || basis.is_some() {
            return Err(validation("subfield", "a crossed product is presented over its coefficient field"));
        }
        let cr = alg.validate_cocycle();
        if !cr.ok() {
            return Ok(Err(format!("invalid cocycle: {}", cr.summary())));
        }
        return Ok(SubfieldPresentation::crossed(inv).map_err(|e| e.to_string()));
    }
    let Some(sub) = sub else {
        if basis.is_some() {
            return Err(validation("basis", "a basis needs a [subfield] section"));
        }
        return Ok(SubfieldPresentation::symbol_standard(inv).map_err(|e| e.to_string()));
    };
    let f = alg.coeff_field();
    let gl = require(sub, "generator", "subfield")?;
    let x = element(gl, alg)?;
    let ml = require(sub, "minpoly", "subfield")?;
    let mut chi = Vec::new();
    for (text, off) in items(&ml.value) {
        chi.push(eval_in(ml, &text, off, &ScalarDomain(f))?);
    }
    let name = get(sub, "name").map(|l| l.value.clone()).unwrap_or_else(|| "t".into());
    let basis: Vec<Element> = match basis {
        Some(b) => b.iter().map(|l| element(l, alg)).collect::<Result<_, _>>()?,
        None => {
            let y = alg.generator(&alg.generator_names()[1]).expect("second generator");
            (0..alg.degree()).map(|j| y.pow(j as u32)).collect()
        }
    };
    Ok(SubfieldPresentation::symbol(inv, &x, &chi, &basis, &name).map_err(|e| e.to_string()))
}

fn parse_checks(lines: &[Line]) -> Result<Vec<CheckSpec>, SpecError> {
    const KNOWN: [&str; 10] = [
        "validate-involution",
        "validate-cocycle",
        "gram",
        "diagonalize",
        "reality",
        "crossinvo",
        "exti",
        "sohs-verify",
        "trace-form",
        "mainext-sample",
    ];
    let mut out = Vec::new();
    for l in lines {
        if !KNOWN.contains(&l.key.as_str()) {
            return Err(parse_error(l.no, l.key_col, format!("unknown check '{}'", l.key)));
        }
        let mut params = BTreeMap::new();
        let mut off = 0;
        for word in l.value.split_whitespace() {
            let col = l.value_col + l.value[off..].find(word).expect("word") + off;
            off = col - l.value_col + word.len();
            let Some((k, v)) = word.split_once('=') else {
                return Err(parse_error(l.no, col, format!("expected key=value, found '{word}'")));
            };
            params.insert(k.to_string(), v.to_string());
        }
        out.push(CheckSpec {
            name: l.key.clone(),
            params,
            line: l.no,
        });
    }
    Ok(out)
}

fn parse_certificate(lines: &[Line], inv: &Involution) -> Result<SohsCertificate, SpecError> {
    let alg = inv.algebra();
    let mut elements = Vec::new();
    let mut target = Element::zero(alg);
    for l in lines {
        match l.key.as_str() {
            "d" => elements.push(element(l, alg)?),
            "target" => target = element(l, alg)?,
            other => return Err(parse_error(l.no, l.key_col, format!("unknown [certificate] key '{other}'"))),
        }
    }
    Ok(SohsCertificate::new(inv, elements, target))
}

/// Parses a spec document. Sections must appear in the order
/// `[field] [algebra] [involution] [subfield] [basis] [checks] [certificate]`.
pub fn parse_spec(text: &str) -> Result<SpecDocument, SpecError> {
    let sections = split_sections(text)?;
    let sec = |name: &str| sections.iter().find(|s| s.0 == name).map(|s| s.2.as_slice());
    let field = parse_field(sec("field").unwrap_or(&[]))?;
    let alg_lines = sec("algebra").ok_or_else(|| validation("algebra", "missing [algebra] section"))?;
    let algebra = parse_algebra(alg_lines, &field)?;
    let inv_lines = sec("involution").ok_or_else(|| validation("involution", "missing [involution] section"))?;
    let involution = parse_involution(inv_lines, &algebra)?;
    let involution_report = involution.validate();
    let presentation = parse_presentation(sec("subfield"), sec("basis"), &involution, &involution_report)?;
    let checks = parse_checks(sec("checks").unwrap_or(&[]))?;
    let certificate = sec("certificate").map(|l| parse_certificate(l, &involution)).transpose()?;
    Ok(SpecDocument {
        name: "spec".into(),
        field,
        algebra,
        involution,
        involution_report,
        presentation,
        checks,
        certificate,
    })
}

/// Parses a scalar of `field` written in the expression language.
pub fn parse_scalar(field: &Field, text: &str) -> Result<Scalar, ExprError> {
    parse_expr(text)?.eval(&ScalarDomain(field))
}

/// Parses an element of `alg` written in the expression language.
pub fn parse_element(alg: &Algebra, text: &str) -> Result<Element, ExprError> {
    parse_expr(text)?.eval(&ElementDomain(alg))
}
