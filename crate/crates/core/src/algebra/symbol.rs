use crate::scalars::{Field, Scalar};

use super::AlgebraError;

/// `A_eps(a, b; F)`: generators x, y with `x^n = a`, `y^n = b`, `yx = eps xy`.
/// Basis monomials `x^i y^j` (0 <= i, j < n) are indexed by `i * n + j`.
pub struct SymbolAlgebra {
    pub(crate) field: Field,
    pub(crate) n: usize,
    pub(crate) a: Scalar,
    pub(crate) b: Scalar,
    pub(crate) eps: Scalar,
    pub(crate) names: [String; 2],
    /// `table[p][q] = (c, r)` with `b_p b_q = c b_r`.
    pub(crate) table: Vec<Vec<(Scalar, usize)>>,
}

impl SymbolAlgebra {
    pub(crate) fn new(
        field: &Field,
        n: usize,
        a: &Scalar,
        b: &Scalar,
        eps: &Scalar,
        names: [&str; 2],
    ) -> Result<SymbolAlgebra, AlgebraError> {
        if n < 2 {
            return Err(AlgebraError::InvalidParameters("degree must be at least 2".into()));
        }
        let a = field.coerce(a)?;
        let b = field.coerce(b)?;
        let eps = field.coerce(eps)?;
        if a.is_zero() || b.is_zero() {
            return Err(AlgebraError::InvalidParameters("a and b must be nonzero".into()));
        }
        let mut p = field.one();
        for k in 1..=n {
            p = &p * &eps;
            if k < n && p.is_one() {
                return Err(AlgebraError::InvalidParameters(format!(
                    "root of unity {eps} has order {k} < {n}"
                )));
            }
        }
        if !p.is_one() {
            return Err(AlgebraError::InvalidParameters(format!(
                "{eps} is not an {n}-th root of unity"
            )));
        }
        if names[0] == names[1] {
            return Err(AlgebraError::InvalidParameters("generator names must differ".into()));
        }
        let eps_pow: Vec<Scalar> = (0..n).map(|k| eps.pow(k as i64).expect("nonzero")).collect();
        let mut table = Vec::with_capacity(n * n);
        for p in 0..n * n {
            let (i, j) = (p / n, p % n);
            let mut row = Vec::with_capacity(n * n);
            for q in 0..n * n {
                let (k, l) = (q / n, q % n);
                let mut c = eps_pow[(j * k) % n].clone();
                let (mut xi, mut yj) = (i + k, j + l);
                if xi >= n {
                    xi -= n;
                    c = &c * &a;
                }
                if yj >= n {
                    yj -= n;
                    c = &c * &b;
                }
                row.push((c, xi * n + yj));
            }
            table.push(row);
        }
        Ok(SymbolAlgebra {
            field: field.clone(),
            n,
            a,
            b,
            eps,
            names: [names[0].to_string(), names[1].to_string()],
            table,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    pub fn eps(&self) -> &Scalar {
        &self.eps
    }

    pub fn names(&self) -> [&str; 2] {
        [&self.names[0], &self.names[1]]
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    pub fn exponents(&self, idx: usize) -> (usize, usize) {
        (idx / self.n, idx % self.n)
    }

    pub(crate) fn monomial_name(&self, idx: usize) -> String {
        let (i, j) = self.exponents(idx);
        let part = |name: &str, e: usize| match e {
            0 => None,
            1 => Some(name.to_string()),
            _ => Some(format!("{name}^{e}")),
        };
        let parts: Vec<String> = [part(&self.names[0], i), part(&self.names[1], j)]
            .into_iter()
            .flatten()
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}
