//! Seeded random scalars, algebra elements and matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Element};
use crate::matrix::{FieldRing, Matrix};
use crate::scalars::{Field, Scalar};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random scalar with small integer coefficients at every level; over a
/// function field the result is affine in the variables.
pub fn scalar(field: &Field, rng: &mut SampleRng, bound: i64) -> Scalar {
    let Some(base) = field.base() else {
        let n = rng.gen_range(-bound..=bound);
        let d = if rng.gen_bool(0.25) { rng.gen_range(1..=bound.max(1)) } else { 1 };
        return field.frac(n, d);
    };
    if field.modulus().is_some() {
        let cs: Vec<Scalar> = (0..field.level_degree())
            .map(|_| if rng.gen_bool(0.3) { base.zero() } else { scalar(&base, rng, bound) })
            .collect();
        return field.from_residue(&cs).expect("residue of the right length");
    }
    let mut acc = field.coerce(&scalar(&base, rng, bound)).expect("base embeds");
    for v in field.variables() {
        if rng.gen_bool(0.5) {
            let c = field.coerce(&scalar(&base, rng, bound)).expect("base embeds");
            acc = &acc + &(&c * &field.generator(&v).expect("variable"));
        }
    }
    acc
}

pub fn nonzero_scalar(field: &Field, rng: &mut SampleRng, bound: i64) -> Scalar {
    loop {
        let s = scalar(field, rng, bound);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A random element with about a third of its coefficients zero.
pub fn element(alg: &Algebra, rng: &mut SampleRng, bound: i64) -> Element {
    let f = alg.coeff_field();
    let cs: Vec<Scalar> = (0..alg.basis_len())
        .map(|_| if rng.gen_bool(0.35) { f.zero() } else { scalar(f, rng, bound) })
        .collect();
    Element::from_coeffs(alg, &cs)
}

pub fn nonzero_element(alg: &Algebra, rng: &mut SampleRng, bound: i64) -> Element {
    loop {
        let e = element(alg, rng, bound);
        if !e.is_zero() {
            return e;
        }
    }
}

pub fn matrix(ring: &FieldRing, rows: usize, cols: usize, rng: &mut SampleRng, bound: i64) -> Matrix<FieldRing> {
    let m = (0..rows)
        .map(|_| (0..cols).map(|_| scalar(&ring.0, rng, bound)).collect())
        .collect();
    Matrix::from_rows(ring, m).expect("rectangular")
}

/// `M + eps M*` for a random `M`; eps-hermitian when `eps = 1` or `-1`.
pub fn eps_hermitian(ring: &FieldRing, n: usize, eps: &Scalar, rng: &mut SampleRng, bound: i64) -> Matrix<FieldRing> {
    let m = matrix(ring, n, n, rng, bound);
    m.checked_add(&m.star().scale_left(eps)).expect("square")
}
