//! The degree 3 symbol algebra x^3 = a, y^3 = b, yx = e xy over Q(e)(a, b)
//! with x* = x, y* = y and e* = e^2.

use hermcone::algebra::{Algebra, Element, Involution};
use hermcone::catalog;
use hermcone::scalars::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::functions(&catalog::eisenstein(), &["a", "b"]);
    let e = f.generator("e").expect("e");
    let (a, b) = (f.generator("a").expect("a"), f.generator("b").expect("b"));
    let alg = Algebra::symbol(&f, 3, &a, &b, &e, ["x", "y"])?;
    let x = alg.generator("x")?;
    let y = alg.generator("y")?;
    println!("{}", alg.describe());
    println!("y x = {}", &y * &x);
    println!("x^3 = {}, y^4 = {}", x.pow(3), y.pow(4));

    let inv = Involution::fixing_generators(&alg)?;
    println!("involution: {}", inv.validate().summary());
    let xy = &x * &y;
    println!("(xy)* = {}", inv.apply(&xy));
    let z = &(&Element::scalar(&alg, &e) * &xy) + &y.pow(2);
    println!("z = {z}");
    println!("z* = {}", inv.apply(&z));
    println!("z** = z: {}", inv.apply(&inv.apply(&z)) == z);
    println!("(z x)* = x* z*: {}", inv.apply(&(&z * &x)) == &inv.apply(&x) * &inv.apply(&z));
    Ok(())
}
