//! Signs of field elements under a chosen ordering.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::field::{Field, FieldNode, Scalar, Value};
use super::qpoly::{self, QPoly};
use super::FieldError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn from_ordering(o: Ordering) -> Sign {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn mul(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }

    pub fn is_nonnegative(self) -> bool {
        self != Sign::Negative
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
        })
    }
}

/// An ordering of a field tower, described level by level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignOracle {
    /// The unique ordering of Q; also accepted for constants of higher levels.
    Rational,
    /// Real embedding of a number field over Q sending the generator into
    /// the half-open interval (lo, hi].
    Embedding { lo: BigRational, hi: BigRational },
    /// Ordering of a rational function field in which the graded-lex leading
    /// term dominates. Variable `i` is infinitely large of sign
    /// `(-1)^flips[i]`; coefficients are ordered by `base`.
    Monomial { base: Box<SignOracle>, flips: Vec<bool> },
    /// Ordering of `F[t]/(t^m - v)` for a variable `v` of the function field
    /// F: pulled back along `v -> v^m`, `t -> v` (or `-v` when `negative`),
    /// then ordered by `inner` on F.
    Radical { negative: bool, inner: Box<SignOracle> },
}

impl SignOracle {
    pub fn embedding(interval: &(BigRational, BigRational)) -> SignOracle {
        SignOracle::Embedding {
            lo: interval.0.clone(),
            hi: interval.1.clone(),
        }
    }

    /// Leading-term ordering with every variable positive.
    pub fn monomial(nvars: usize) -> SignOracle {
        SignOracle::Monomial {
            base: Box::new(SignOracle::Rational),
            flips: vec![false; nvars],
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SignOracle::Rational => "Q".into(),
            SignOracle::Embedding { lo, hi } => format!("root in ({lo}, {hi}]"),
            SignOracle::Monomial { base, flips } => {
                let signs: Vec<&str> = flips.iter().map(|f| if *f { "-" } else { "+" }).collect();
                format!("leading term [{}] over {}", signs.join(""), base.describe())
            }
            SignOracle::Radical { negative, inner } => format!(
                "{} root over {}",
                if *negative { "negative" } else { "positive" },
                inner.describe()
            ),
        }
    }
}

/// Exact sign of `e` under `oracle`.
pub fn sign_at(e: &Scalar, oracle: &SignOracle) -> Result<Sign, FieldError> {
    sign_value(&e.field, &e.value, oracle).map(Sign::from_ordering)
}

fn not_real(field: &Field, oracle: &SignOracle) -> FieldError {
    FieldError::NotRealEmbeddable(format!(
        "ordering '{}' does not apply to {}",
        oracle.describe(),
        field.describe()
    ))
}

fn sign_value(field: &Field, v: &Value, oracle: &SignOracle) -> Result<Ordering, FieldError> {
    let node = &*field.0;
    match (node, v) {
        (FieldNode::Rationals, Value::Rat(q)) => Ok(q.cmp(&BigRational::zero())),
        (FieldNode::Algebraic(l), Value::Alg(x)) => {
            if x.len() <= 1 && !matches!(oracle, SignOracle::Radical { .. }) {
                return match x.first() {
                    None => Ok(Ordering::Equal),
                    Some(c) => sign_value(&l.base, c, oracle),
                };
            }
            match oracle {
                SignOracle::Embedding { lo, hi } => {
                    let m = field.rational_modulus().ok_or_else(|| not_real(field, oracle))?;
                    if l.conj.is_some() {
                        return Err(not_real(field, oracle));
                    }
                    if qpoly::count_roots(&m, lo, hi) != 1 {
                        return Err(FieldError::NotRealEmbeddable(format!(
                            "({lo}, {hi}] does not isolate a root of the minimal polynomial of {}",
                            l.name
                        )));
                    }
                    let p = QPoly::new(
                        x.iter()
                            .map(|c| l.base.0.as_rational(c).expect("rational coefficient"))
                            .collect(),
                    );
                    Ok(qpoly::sign_at_root(&p, &m, lo, hi))
                }
                SignOracle::Radical { negative, inner } => {
                    radical_sign(field, v, *negative, inner)
                }
                _ => Err(not_real(field, oracle)),
            }
        }
        (FieldNode::Functions(fl), Value::Frac(fr)) => {
            if fr.num.is_zero() {
                return Ok(Ordering::Equal);
            }
            match oracle {
                SignOracle::Monomial { base, flips } => {
                    let term_sign = |p: &super::mpoly::MPoly| -> Result<Ordering, FieldError> {
                        let (m, c) = p.leading().expect("nonzero");
                        let s = sign_value(&fl.base, c, base)?;
                        let parity = m
                            .0
                            .iter()
                            .zip(flips.iter().chain(std::iter::repeat(&false)))
                            .filter(|(e, f)| **f && *e % 2 == 1)
                            .count();
                        Ok(if parity % 2 == 1 { s.reverse() } else { s })
                    };
                    let a = term_sign(&fr.num)?;
                    let b = term_sign(&fr.den)?;
                    Ok(if b == Ordering::Less { a.reverse() } else { a })
                }
                _ => {
                    if fr.den.is_constant() {
                        if let Some(c) = fr.num.as_constant(&fl.base.0) {
                            let den = fr.den.as_constant(&fl.base.0).expect("constant");
                            let q = fl.base.0.mul(&c, &fl.base.0.inv(&den).expect("nonzero"));
                            return sign_value(&fl.base, &q, oracle);
                        }
                    }
                    Err(not_real(field, oracle))
                }
            }
        }
        _ => Err(FieldError::TowerMismatch),
    }
}

fn radical_sign(
    field: &Field,
    v: &Value,
    negative: bool,
    inner: &SignOracle,
) -> Result<Ordering, FieldError> {
    let FieldNode::Algebraic(l) = &*field.0 else {
        unreachable!()
    };
    let base = &l.base;
    let FieldNode::Functions(fl) = &*base.0 else {
        return Err(not_real(field, &SignOracle::Radical {
            negative,
            inner: Box::new(inner.clone()),
        }));
    };
    let m = l.modulus.len() - 1;
    let k = &base.0;
    let var_index = if l.modulus[1..m].iter().all(|c| k.is_zero(c)) {
        match &l.modulus[0] {
            Value::Frac(f) if f.den.is_constant() && f.num.terms.len() == 1 => {
                let (mono, c) = f.num.leading().expect("nonzero");
                let is_minus_one = fl.base.0.as_rational(c) == Some(-BigRational::from_integer(1.into()));
                if mono.degree() == 1 && is_minus_one {
                    mono.0.iter().position(|e| *e == 1)
                } else {
                    None
                }
            }
            _ => None,
        }
    } else {
        None
    };
    let Some(idx) = var_index else {
        return Err(FieldError::NotRealEmbeddable(format!(
            "{} is not a radical t^m - v over a variable",
            l.name
        )));
    };
    let vname = fl.vars[idx].clone();
    let vgen = base.generator(&vname).expect("own variable");
    let vpow = vgen.pow(m as i64)?;
    let root = if negative { -&vgen } else { vgen };
    let name = l.name.clone();
    let image = field.substitute(
        &Scalar::new(field.clone(), v.clone()),
        base,
        &|g: &str| {
            if g == name {
                Some(root.clone())
            } else if g == vname {
                Some(vpow.clone())
            } else {
                None
            }
        },
    )?;
    sign_value(base, &image.value, inner)
}
