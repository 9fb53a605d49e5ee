//! Crossed products: a biquaternion algebra over Q(sqrt 2 + sqrt 3) and D3
//! rewritten as a cyclic crossed product, with their norm criteria and
//! extension verdicts.

use hermcone::catalog;
use hermcone::hermitian::ClosureBounds;
use hermcone::reality::{cocycle_norm_identity, extension_formally_real, norm_criteria, ordering_pool};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d3 = catalog::d3_symbolic()?;
    for fx in [catalog::biquaternion()?, catalog::d3_crossed(&d3)?] {
        println!("== {}: {}", fx.name, fx.algebra().describe());
        println!("cocycle: {}", fx.algebra().validate_cocycle().summary());
        let c = norm_criteria(&fx.rep)?;
        for (g, n) in &c.norms {
            println!("  e_{g}* e_{g} = {n}");
        }
        println!(
            "  commuting {}, norms in K {}, diagonal Gram {}",
            c.commuting, c.norms_in_k, c.gram_diagonal
        );
        if c.norms_in_k {
            let rows = cocycle_norm_identity(&fx.rep)?;
            println!("  a_s a_t^s = Phi* a_ts Phi on {} of {} pairs", rows.iter().filter(|r| r.2).count(), rows.len());
        }
        let pool = ordering_pool(fx.k_field());
        let r = extension_formally_real(&fx.rep, &pool, ClosureBounds::default())?;
        println!("  {}: {}", r.verdict.status.as_str(), r.clause);
    }
    Ok(())
}
