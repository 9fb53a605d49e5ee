//! Congruence diagonalization of the Gram matrix of D3 over K = F(x),
//! matched against the expected diagonal (1, b, -b).

use hermcone::catalog;
use hermcone::hermitian::{diagonalize, match_diagonal};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fx = catalog::d3_symbolic()?;
    let a = fx.rep.gram();
    let k = fx.k_field();
    println!("K = {}", k.describe());
    println!("A =\n{a}");

    let res = diagonalize(a, &k.one())?;
    println!("P =\n{}", res.p);
    println!("P* A P = diag({})", join(&res.diagonal()));
    println!("verified: {}", res.verify(a)?);

    let b = k.generator("b").expect("b");
    let expected = vec![k.one(), b.clone(), -&b];
    let pool = vec![k.one(), k.int(-1), k.int(2), k.frac(1, 2)];
    match match_diagonal(a.ring(), &res.diagonal(), &expected, &pool) {
        Some(_) => println!("congruent to diag({}) entrywise", join(&expected)),
        None => println!("no entrywise match with diag({})", join(&expected)),
    }

    let q = hermcone::scalars::Field::rationals();
    let ring = hermcone::matrix::FieldRing(q.clone());
    let c = hermcone::matrix::Matrix::from_rows(&ring, vec![vec![q.zero(), q.one()], vec![q.int(-1), q.zero()]])?;
    let alt = diagonalize(&c, &q.int(-1))?;
    println!("alternating form over Q: {} hyperbolic block(s)", alt.hyperbolic().len());
    Ok(())
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}
