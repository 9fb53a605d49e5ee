//! Hermitian cones: orderings of K = Q(sqrt 2), their extensions to the
//! quaternion algebra (2, 3) and back, and the leading-term cones of the
//! anticommuting plane ji = -ij.

use std::sync::Arc;

use hermcone::catalog;
use hermcone::hermitian::{Cone, Contracted, Extended, OrderingCone};
use hermcone::scalars::{Scalar, SignOracle};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fx = catalog::quaternion(2, 3)?;
    let k = fx.k_field().clone();
    let i = k.top_generator().expect("K = Q(i)");
    for root in k.embeddings() {
        let n: Arc<dyn Cone<Scalar>> = Arc::new(OrderingCone::new(&k, SignOracle::embedding(&root)));
        let ext: Arc<dyn Cone<_>> = Arc::new(Extended::new(n.clone(), fx.rep.clone()));
        let back = Contracted::new(ext.clone(), fx.rep.clone());
        println!("N = {}", n.describe());
        for c in [k.one(), k.int(3), i.clone(), -&i] {
            println!(
                "  {c:>3}: in N {:?}, in (N^e)^c {:?}",
                n.contains(&c)?,
                back.contains(&c)?
            );
        }
        let j = fx.gen("j");
        println!("  j in N^e: {:?}", ext.contains(&j)?);
    }

    let plane = catalog::anticommuting_plane();
    let (m1, m2) = catalog::anticommuting_cones();
    let j = plane.y();
    let j2 = j.mul(&j);
    for (name, m) in [("M1", &m1), ("M2", &m2)] {
        println!(
            "{name}: j {:?}, -j {:?}, j^2 {:?}",
            m.contains(&j)?,
            m.contains(&j.neg())?,
            m.contains(&j2)?
        );
    }
    Ok(())
}
