//! A quaternion algebra (a, b) with i* = i, j* = j as a right vector space
//! over K = F(i): the Gram matrix, the regular representation and the
//! extended involution on 2x2 matrices over K.

use hermcone::algebra::Element;
use hermcone::catalog;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fx = catalog::quaternion_symbolic()?;
    let rep = &fx.rep;
    let pres = fx.presentation();
    let basis: Vec<String> = pres.basis().iter().map(|e| e.to_string()).collect();
    println!("basis over K: {}", basis.join(", "));
    println!("Gram matrix A:\n{}", rep.gram());

    let (i, j) = (fx.gen("i"), fx.gen("j"));
    let f = fx.algebra().coeff_field();
    let z = &(&Element::scalar(fx.algebra(), &f.int(2)) + &i) + &(&j * &i);
    println!("z = {z}");
    println!("lambda(z) =\n{}", rep.lambda(&z)?);
    let lhs = rep.lambda(&fx.involution().apply(&z))?;
    let rhs = rep.sharp(&rep.lambda(&z)?)?;
    println!("lambda(z*) = lambda(z)^#: {}", lhs == rhs);
    println!("f(z) = {}, f(z j) = {}", pres.f(&z)?, pres.f(&(&z * &j))?);
    Ok(())
}
