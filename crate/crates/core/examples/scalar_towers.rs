//! Exact arithmetic in field towers: number fields with real embeddings,
//! a field with involution and rational function fields.

use hermcone::catalog;
use hermcone::scalars::{sign_at, Field, SignOracle};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = Field::rationals();
    let k = Field::algebraic(&q, "t", &[q.int(-2), q.zero(), q.one()])?;
    let t = k.generator("t").expect("t");
    let u = &(&k.int(3) + &t) / &(&k.int(1) - &t);
    println!("in {}: (3 + t)/(1 - t) = {u}", k.describe());
    println!("check: u (1 - t) = {}", &u * &(&k.int(1) - &t));
    for root in k.embeddings() {
        let o = SignOracle::embedding(&root);
        println!("  at the {}: t is {}, u is {}", o.describe(), sign_at(&t, &o)?, sign_at(&u, &o)?);
    }

    let e_field = catalog::eisenstein();
    let e = e_field.generator("e").expect("e");
    println!("in {}: e* = {}, e e* = {}", e_field.describe(), e.conj(), &e * &e.conj());

    let f = Field::functions(&q, &["a", "b"]);
    let (a, b) = (f.generator("a").expect("a"), f.generator("b").expect("b"));
    let r = &(&a + &b) / &(&a - &b);
    println!("in {}: (a + b)/(a - b) + 1 = {}", f.describe(), &r + &f.one());
    Ok(())
}
