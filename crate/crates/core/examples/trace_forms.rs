//! Hermitian and bilinear trace forms over the center, with their signs
//! under each ordering.

use hermcone::catalog;
use hermcone::reality::{bilinear_trace_form, trace_form_report};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for fx in [catalog::quaternion(2, 3)?, catalog::quaternion(-1, -1)?, catalog::d3(2, 2)?] {
        let pres = fx.presentation();
        let r = trace_form_report(pres, None, &[])?;
        let basis: Vec<String> = r.basis.iter().map(|e| e.to_string()).collect();
        println!("== {} over {}: basis {}", fx.algebra().describe(), pres.center().describe(), basis.join(", "));
        println!("tr(g_i* g_j) =\n{}", r.gram);
        println!("tr(g_i g_j) =\n{}", bilinear_trace_form(pres, &r.basis)?);
        for o in &r.per_ordering {
            let signs: Vec<String> = o.signs.iter().map(|s| s.to_string()).collect();
            println!("  {}: {} (psd {})", o.oracle.describe(), signs.join(" "), o.psd);
        }
    }
    Ok(())
}
