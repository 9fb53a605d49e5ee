use crate::matrix::{FieldRing, Matrix, StarRing};

use super::HermitianError;

/// One diagonal block of a congruence normal form.
#[derive(Clone, Debug, PartialEq)]
pub enum Block<E> {
    Scalar(E),
    /// `[[0, b], [eps b*, 0]]`
    Hyperbolic(E),
}

/// `P* A P = blocks (+) 0_zeros`.
#[derive(Clone, Debug)]
pub struct CongruenceResult<R: StarRing> {
    pub p: Matrix<R>,
    pub blocks: Vec<Block<R::Elem>>,
    pub zeros: usize,
    pub eps: R::Elem,
}

impl<R: StarRing> CongruenceResult<R> {
    /// Scalar blocks in order.
    pub fn diagonal(&self) -> Vec<R::Elem> {
        self.blocks
            .iter()
            .filter_map(|b| match b {
                Block::Scalar(e) => Some(e.clone()),
                Block::Hyperbolic(_) => None,
            })
            .collect()
    }

    pub fn hyperbolic(&self) -> Vec<R::Elem> {
        self.blocks
            .iter()
            .filter_map(|b| match b {
                Block::Hyperbolic(e) => Some(e.clone()),
                Block::Scalar(_) => None,
            })
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.blocks.iter().all(|b| matches!(b, Block::Scalar(_)))
    }

    /// The block-diagonal matrix the result claims.
    pub fn normal_form(&self) -> Matrix<R> {
        let r = self.p.ring();
        let mut mats = Vec::new();
        for b in &self.blocks {
            match b {
                Block::Scalar(e) => mats.push(Matrix::diagonal(r, std::slice::from_ref(e))),
                Block::Hyperbolic(c) => {
                    let lower = r.mul(&self.eps, &r.star(c));
                    mats.push(
                        Matrix::from_rows(r, vec![vec![r.zero(), c.clone()], vec![lower, r.zero()]])
                            .expect("2x2"),
                    );
                }
            }
        }
        if self.zeros > 0 {
            mats.push(Matrix::zeros(r, self.zeros, self.zeros));
        }
        Matrix::block_diagonal(r, &mats)
    }

    /// Exact check of `P* A P` against the normal form.
    pub fn verify(&self, a: &Matrix<R>) -> Result<bool, HermitianError> {
        Ok(a.congruence(&self.p)? == self.normal_form())
    }
}

fn elementary<R: StarRing>(ring: &R, n: usize, entries: &[(usize, usize, R::Elem)]) -> Matrix<R> {
    let mut t = Matrix::identity(ring, n);
    for (i, j, v) in entries {
        t.set(*i, *j, v.clone());
    }
    t
}

fn permutation<R: StarRing>(ring: &R, n: usize, a: usize, b: usize) -> Matrix<R> {
    let mut t = Matrix::identity(ring, n);
    t.swap_cols(a, b);
    t
}

/// Whether a zero diagonal can be repaired by an elementary congruence,
/// i.e. we are not in the alternating case `eps = -1`, `* = id`.
pub fn repair_allowed<R: StarRing>(ring: &R, eps: &R::Elem) -> bool {
    *eps != ring.neg(&ring.one()) || !ring.star_is_trivial()
}

/// Congruence diagonalization of an eps-hermitian matrix over a division
/// ring with involution.
pub fn diagonalize<R: StarRing>(a: &Matrix<R>, eps: &R::Elem) -> Result<CongruenceResult<R>, HermitianError> {
    if !a.is_eps_hermitian(eps) {
        return Err(HermitianError::NotHermitian(a.to_string()));
    }
    let ring = a.ring().clone();
    let r = &ring;
    let n = a.rows();
    let repair = repair_allowed(r, eps);
    let mut b = a.clone();
    let mut p = Matrix::identity(r, n);
    let mut blocks = Vec::new();
    let mut k = 0;
    let apply = |b: &mut Matrix<R>, p: &mut Matrix<R>, t: &Matrix<R>| -> Result<(), HermitianError> {
        *b = b.congruence(t)?;
        *p = p.checked_mul(t)?;
        Ok(())
    };
    while k < n {
        let nz = |b: &Matrix<R>, i: usize, j: usize| !r.is_zero(b.get(i, j));
        if (k..n).all(|i| (k..n).all(|j| !nz(&b, i, j))) {
            break;
        }
        if let Some(i) = (k..n).find(|&i| nz(&b, i, i)) {
            if i != k {
                apply(&mut b, &mut p, &permutation(r, n, i, k))?;
            }
            let pinv = r.inv(b.get(k, k)).ok_or_else(|| HermitianError::NotInvertible(b.get(k, k).to_string()))?;
            let entries: Vec<(usize, usize, R::Elem)> = (k + 1..n)
                .filter(|&j| nz(&b, k, j))
                .map(|j| (k, j, r.neg(&r.mul(&pinv, b.get(k, j)))))
                .collect();
            if !entries.is_empty() {
                apply(&mut b, &mut p, &elementary(r, n, &entries))?;
            }
            blocks.push(Block::Scalar(b.get(k, k).clone()));
            k += 1;
            continue;
        }
        let (i, j) = (k..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| nz(&b, i, j))
            .expect("nonzero off-diagonal entry");
        if repair {
            let c = b.get(i, j).clone();
            let t = repair_scalar(r, eps, &c)?;
            if let Some(t) = t {
                apply(&mut b, &mut p, &elementary(r, n, &[(j, i, t)]))?;
                continue;
            }
        }
        if i != k {
            apply(&mut b, &mut p, &permutation(r, n, i, k))?;
        }
        let j = if j == k { i } else { j };
        if j != k + 1 {
            apply(&mut b, &mut p, &permutation(r, n, j, k + 1))?;
        }
        let c = b.get(k, k + 1).clone();
        let lower = b.get(k + 1, k).clone();
        let cinv = r.inv(&c).ok_or_else(|| HermitianError::NotInvertible(c.to_string()))?;
        let linv = r.inv(&lower).ok_or_else(|| HermitianError::NotInvertible(lower.to_string()))?;
        let mut entries = Vec::new();
        for l in k + 2..n {
            if nz(&b, k, l) {
                entries.push((k + 1, l, r.neg(&r.mul(&cinv, b.get(k, l)))));
            }
            if nz(&b, k + 1, l) {
                entries.push((k, l, r.neg(&r.mul(&linv, b.get(k + 1, l)))));
            }
        }
        if !entries.is_empty() {
            apply(&mut b, &mut p, &elementary(r, n, &entries))?;
        }
        blocks.push(Block::Hyperbolic(c));
        k += 2;
    }
    Ok(CongruenceResult {
        p,
        blocks,
        zeros: n - k,
        eps: eps.clone(),
    })
}

/// A scalar `t` such that congruence by `I + t E_ji` makes the zero diagonal
/// entry `ii` nonzero, given `c = B_ij != 0`. The new entry is
/// `c t + eps (c t)*`.
fn repair_scalar<R: StarRing>(r: &R, eps: &R::Elem, c: &R::Elem) -> Result<Option<R::Elem>, HermitianError> {
    let sym = |v: &R::Elem| r.add(v, &r.mul(eps, &r.star(v)));
    if !r.is_zero(&sym(c)) {
        return Ok(r.inv(&r.int(2)));
    }
    let cinv = r.inv(c).ok_or_else(|| HermitianError::NotInvertible(c.to_string()))?;
    for k in r.probes() {
        if !r.is_zero(&sym(&k)) {
            return Ok(Some(r.mul(&cinv, &k)));
        }
    }
    Ok(None)
}

/// For the alternating case (`eps = -1`, trivial involution): the
/// diagonalizing `P` and a `Q` with `Q* (P* C P) Q = -(P* C P)`.
#[derive(Clone, Debug)]
pub struct DegenerateWitness {
    pub p: Matrix<FieldRing>,
    pub q: Matrix<FieldRing>,
    pub normal_form: Matrix<FieldRing>,
}

impl DegenerateWitness {
    pub fn verify(&self) -> Result<bool, HermitianError> {
        Ok(self.normal_form.congruence(&self.q)? == self.normal_form.neg())
    }
}

pub fn alternating_degenerate_witness(c: &Matrix<FieldRing>, eps: &crate::scalars::Scalar) -> Result<DegenerateWitness, HermitianError> {
    let ring = c.ring();
    if repair_allowed(ring, eps) {
        return Err(HermitianError::WrongCase(
            "the witness exists only for eps = -1 with trivial involution".into(),
        ));
    }
    let res = diagonalize(c, eps)?;
    let n = c.rows();
    let mut q = Matrix::identity(ring, n);
    let mut k = 0;
    for b in &res.blocks {
        match b {
            Block::Hyperbolic(_) => {
                q.swap_cols(k, k + 1);
                k += 2;
            }
            Block::Scalar(_) => {
                return Err(HermitianError::WrongCase("alternating matrix produced a scalar block".into()));
            }
        }
    }
    Ok(DegenerateWitness {
        normal_form: res.normal_form(),
        p: res.p,
        q,
    })
}

/// Searches `d` in `pool` with `y = d x d*`.
pub fn congruent_scalars<R: StarRing>(ring: &R, x: &R::Elem, y: &R::Elem, pool: &[R::Elem]) -> Option<R::Elem> {
    pool.iter()
        .find(|d| ring.mul(&ring.mul(d, x), &ring.star(d)) == *y)
        .cloned()
}

/// Matches the diagonal of a result against expected entries up to order and
/// scaling `d e d*` with `d` from `pool`; returns the scalars used, in the
/// order of `expected`.
pub fn match_diagonal<R: StarRing>(
    ring: &R,
    got: &[R::Elem],
    expected: &[R::Elem],
    pool: &[R::Elem],
) -> Option<Vec<(usize, R::Elem)>> {
    if got.len() != expected.len() {
        return None;
    }
    let mut used = vec![false; got.len()];
    let mut out = Vec::new();
    for e in expected {
        let hit = got.iter().enumerate().find_map(|(i, g)| {
            if used[i] {
                return None;
            }
            congruent_scalars(ring, g, e, pool).map(|d| (i, d))
        })?;
        used[hit.0] = true;
        out.push(hit);
    }
    Some(out)
}
