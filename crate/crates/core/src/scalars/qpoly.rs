//! Dense univariate polynomials over the rationals.
//!
//! Used for minimal polynomials of number-field generators: Sturm sequences,
//! real root isolation, sign determination at an isolated root and a small
//! irreducibility test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients from the constant term upwards; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoly(pub Vec<BigRational>);

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        QPoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn neg(&self) -> QPoly {
        QPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.0.len().max(other.0.len());
        let zero = BigRational::zero();
        QPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::default();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        QPoly::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn divrem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.0[dd].clone();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (QPoly::default(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] / &lc;
            if c.is_zero() {
                continue;
            }
            for j in 0..=dd {
                let t = &c * &divisor.0[j];
                rem[k - dd + j] -= t;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    pub fn rem(&self, divisor: &QPoly) -> QPoly {
        self.divrem(divisor).1
    }

    pub fn monic(&self) -> QPoly {
        match self.lc() {
            Some(lc) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn squarefree_part(&self) -> QPoly {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.monic()
        } else {
            self.divrem(&g).0.monic()
        }
    }

    /// Primitive integer polynomial with positive leading coefficient.
    pub fn to_primitive_integer(&self) -> Vec<BigInt> {
        let den = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * &den).to_integer()).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(|c| c.is_negative()) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &content * &sign).collect()
    }
}

/// Sturm sequence p, p', -rem(p, p'), ...
pub fn sturm_sequence(p: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    while let Some(last) = seq.last() {
        if last.is_zero() || last.degree() == Some(0) {
            break;
        }
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).neg();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq.retain(|q| !q.is_zero());
    seq
}

fn sign_changes(seq: &[QPoly], x: &BigRational) -> usize {
    let mut changes = 0;
    let mut prev: Option<bool> = None;
    for q in seq {
        let v = q.eval(x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if prev.is_some_and(|p| p != pos) {
            changes += 1;
        }
        prev = Some(pos);
    }
    changes
}

/// Number of distinct real roots of `p` in the half-open interval (lo, hi].
pub fn count_roots(p: &QPoly, lo: &BigRational, hi: &BigRational) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(&p.squarefree_part());
    sign_changes(&seq, lo).saturating_sub(sign_changes(&seq, hi))
}

pub fn cauchy_bound(p: &QPoly) -> BigRational {
    let lc = p.lc().expect("nonzero polynomial").abs();
    let m = p.0[..p.0.len() - 1]
        .iter()
        .map(|c| c.abs() / &lc)
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    m + BigRational::one()
}

/// Isolating intervals (lo, hi] with rational endpoints, one per distinct real
/// root, sorted increasingly. Endpoints are never roots.
pub fn isolate_real_roots(p: &QPoly) -> Vec<(BigRational, BigRational)> {
    let sf = p.squarefree_part();
    if sf.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let b = cauchy_bound(&sf);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = count_roots(&sf, &lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push((lo, hi));
            continue;
        }
        let mid = nonroot_between(&sf, &lo, &hi);
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort();
    out
}

/// A point strictly inside (lo, hi) where `p` does not vanish, near the midpoint.
fn nonroot_between(p: &QPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let two = rat(2);
    let mut mid = (lo + hi) / &two;
    let mut k = 3;
    while p.eval(&mid).is_zero() {
        mid = (lo * rat(k - 1) + hi) / rat(k);
        k += 1;
    }
    mid
}

/// Shrinks an isolating interval of a root of `m` by bisection.
pub fn bisect(m: &QPoly, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let mid = nonroot_between(m, lo, hi);
    if count_roots(m, lo, &mid) == 1 {
        (lo.clone(), mid)
    } else {
        (mid, hi.clone())
    }
}

/// Sign of `p(theta)` where `theta` is the unique root of `m` in (lo, hi].
/// `p` is reduced modulo `m` first; a zero residue reports zero.
pub fn sign_at_root(
    p: &QPoly,
    m: &QPoly,
    lo: &BigRational,
    hi: &BigRational,
) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let p = p.rem(m);
    if p.is_zero() {
        return Ordering::Equal;
    }
    if m.degree() == Some(1) {
        let root = -&m.0[0] / &m.0[1];
        return p.eval(&root).cmp(&BigRational::zero());
    }
    let g = p.gcd(m);
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    if g.degree().unwrap_or(0) > 0 && count_roots(&g, &lo, &hi) == 1 {
        return Ordering::Equal;
    }
    while count_roots(&p, &lo, &hi) > 0 {
        let (l, h) = bisect(m, &lo, &hi);
        lo = l;
        hi = h;
    }
    p.eval(&hi).cmp(&BigRational::zero())
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return Vec::new();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn rational_roots(p: &QPoly) -> Vec<BigRational> {
    let ints = p.to_primitive_integer();
    if ints.is_empty() {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let shift = ints.iter().take_while(|c| c.is_zero()).count();
    if shift > 0 {
        roots.push(BigRational::zero());
    }
    let a0 = &ints[shift];
    let an = ints.last().unwrap();
    for num in divisors(a0) {
        for den in divisors(an) {
            for s in [1, -1] {
                let cand = BigRational::new(&num * BigInt::from(s), den.clone());
                if !roots.contains(&cand) && p.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Outcome of the bounded irreducibility test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    /// Degree above six or factor search over budget.
    Untested,
}

const KRONECKER_BUDGET: usize = 200_000;

/// Irreducibility over Q for degree <= 6: rational roots plus a Kronecker
/// search for quadratic and cubic integer factors.
pub fn irreducibility(p: &QPoly) -> Irreducibility {
    let Some(deg) = p.degree() else {
        return Irreducibility::Reducible;
    };
    if deg == 0 {
        return Irreducibility::Reducible;
    }
    if deg == 1 {
        return Irreducibility::Irreducible;
    }
    if deg > 6 {
        return Irreducibility::Untested;
    }
    if !rational_roots(p).is_empty() {
        return Irreducibility::Reducible;
    }
    if deg <= 3 {
        return Irreducibility::Irreducible;
    }
    let ints = QPoly::new(
        p.to_primitive_integer()
            .into_iter()
            .map(BigRational::from_integer)
            .collect(),
    );
    for d in 2..=deg / 2 {
        match kronecker_factor(&ints, d) {
            Some(true) => return Irreducibility::Reducible,
            Some(false) => {}
            None => return Irreducibility::Untested,
        }
    }
    Irreducibility::Irreducible
}

/// Searches for an integer factor of exact degree `d`. `None` when over budget.
fn kronecker_factor(p: &QPoly, d: usize) -> Option<bool> {
    let points: Vec<BigRational> = [0i64, 1, -1, 2, -2, 3, -3, 4]
        .iter()
        .take(d + 1)
        .map(|&x| rat(x))
        .collect();
    let values: Vec<Vec<BigInt>> = points
        .iter()
        .map(|x| {
            let v = p.eval(x).to_integer();
            let mut ds = Vec::new();
            for dv in divisors(&v) {
                ds.push(dv.clone());
                ds.push(-dv);
            }
            ds
        })
        .collect();
    let total: usize = values.iter().map(Vec::len).product();
    if total > KRONECKER_BUDGET {
        return None;
    }
    let mut idx = vec![0usize; values.len()];
    loop {
        let ys: Vec<BigRational> = idx
            .iter()
            .zip(&values)
            .map(|(&i, vs)| BigRational::from_integer(vs[i].clone()))
            .collect();
        let cand = lagrange(&points, &ys);
        if cand.degree() == Some(d)
            && cand.0.iter().all(|c| c.is_integer())
            && p.rem(&cand).is_zero()
        {
            return Some(true);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Some(false);
            }
            idx[k] += 1;
            if idx[k] < values[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn lagrange(xs: &[BigRational], ys: &[BigRational]) -> QPoly {
    let mut acc = QPoly::default();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = QPoly::new(vec![BigRational::one()]);
        let mut denom = BigRational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&QPoly::new(vec![-xj.clone(), BigRational::one()]));
                denom *= xi - xj;
            }
        }
        acc = acc.add(&basis.scale(&(yi / denom)));
    }
    acc
}

/// Approximate value for diagnostics only.
pub fn approx(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering;

    #[test]
    fn sqrt2_isolation_and_sign() {
        let m = QPoly::from_ints(&[-2, 0, 1]);
        let roots = isolate_real_roots(&m);
        assert_eq!(roots.len(), 2);
        let p = QPoly::from_ints(&[-1, 1]); // t - 1
        assert_eq!(sign_at_root(&p, &m, &rat(1), &rat(2)), Ordering::Greater);
        assert_eq!(sign_at_root(&p, &m, &rat(-2), &rat(-1)), Ordering::Less);
        // t^2 - 2 reduces to zero
        assert_eq!(sign_at_root(&m, &m, &rat(1), &rat(2)), Ordering::Equal);
    }

    #[test]
    fn sign_close_to_root() {
        // 1414/1000 < sqrt2 < 1415/1000
        let m = QPoly::from_ints(&[-2, 0, 1]);
        let p = QPoly::new(vec![BigRational::new((-1414).into(), 1000.into()), rat(1)]);
        assert_eq!(sign_at_root(&p, &m, &rat(1), &rat(2)), Ordering::Greater);
        let p = QPoly::new(vec![BigRational::new((-1415).into(), 1000.into()), rat(1)]);
        assert_eq!(sign_at_root(&p, &m, &rat(1), &rat(2)), Ordering::Less);
    }

    #[test]
    fn irreducibility_small_cases() {
        assert_eq!(irreducibility(&QPoly::from_ints(&[1, 1, 1])), Irreducibility::Irreducible);
        assert_eq!(irreducibility(&QPoly::from_ints(&[-1, 0, 1])), Irreducibility::Reducible);
        // t^4 - 10 t^2 + 1 is the minimal polynomial of sqrt2 + sqrt3
        assert_eq!(
            irreducibility(&QPoly::from_ints(&[1, 0, -10, 0, 1])),
            Irreducibility::Irreducible
        );
        // (t^2 + 1)(t^2 + 2)
        assert_eq!(
            irreducibility(&QPoly::from_ints(&[2, 0, 3, 0, 1])),
            Irreducibility::Reducible
        );
    }

    #[test]
    fn root_count_quartic() {
        let m = QPoly::from_ints(&[1, 0, -10, 0, 1]);
        assert_eq!(isolate_real_roots(&m).len(), 4);
        assert_eq!(count_roots(&m, &rat(0), &rat(1)), 1);
    }
}
