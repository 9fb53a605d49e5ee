//! Two obstructions. In (2, 3) with i* = i, j* = j no ordering of Q(i)
//! extends, because j* i j = -3i. In D3 with a = b = 2 four hermitian
//! squares sum to zero.

use hermcone::catalog;
use hermcone::hermitian::{BoundedClosure, ClosureBounds};
use hermcone::matrix::FieldRing;
use hermcone::reality::{verify_sohs, SohsCertificate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fx = catalog::quaternion(2, 3)?;
    let (i, j) = (fx.gen("i"), fx.gen("j"));
    let inv = fx.involution();
    println!("j* i j = {}", &(&inv.apply(&j) * &i) * &j);

    let k = fx.k_field().clone();
    let t = k.top_generator().expect("i");
    let gens = vec![k.one(), k.int(3), t.clone(), &k.int(-3) * &t];
    let ring = FieldRing(k.clone());
    let mut closure = BoundedClosure::new(&ring, &gens, &[k.one(), k.frac(1, 3)], ClosureBounds::default());
    if let Some(cert) = closure.find_opposite() {
        println!("closure of 1, 3, i, -3i contains {}", join(&cert.target_values()));
        for s in &cert.steps {
            println!("  {s:?}");
        }
    }

    let d3 = catalog::d3(2, 2)?;
    let ds = catalog::vanishing_squares(&d3)?;
    for (n, d) in ds.iter().enumerate() {
        println!("d{} = {d}", n + 1);
    }
    let cert = SohsCertificate::vanishing(d3.involution(), ds);
    let check = verify_sohs(&cert)?;
    println!("sum d* d = {} (obstruction: {})", check.residual, check.holds && cert.is_obstruction());

    let d3b = catalog::d3(3, 3)?;
    let ds = catalog::vanishing_squares(&d3b)?;
    let check = verify_sohs(&SohsCertificate::vanishing(d3b.involution(), ds))?;
    println!("with a = b = 3 the sum is {}", check.residual);
    Ok(())
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" and ")
}
