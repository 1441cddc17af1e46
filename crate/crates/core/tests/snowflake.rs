//! Two-sided comparison between a metric and its snowflake on the desk
//! universe, with constants from the sub-unit exponent path.

use std::sync::Arc;

use nlgap::corpus::{desk_graphs, desk_metrics};
use nlgap::extrapolation::{certified_cheeger, constants};
use nlgap::poincare::gamma_exact;

#[test]
fn snowflake_comparison_on_desk_universe() {
    let metrics = desk_metrics();
    for (gname, g) in desk_graphs() {
        let (h, exact) = certified_cheeger(&g).unwrap();
        assert!(exact);
        let d = g.regular_degree().unwrap();
        for p in [0.5, 0.75] {
            let c = constants(d, h, p, 1.0).unwrap();
            assert!(c.via_snowflake);
            // c·γ(ρ^p) ≤ max{1, γ(ρ)} with c = 1/max(C1, C2).
            let ln_small_c = -c.ln_c1.max(c.ln_c2);
            // γ(ρ) ≤ C·γ(ρ^p)^{1/p}; the C3 branch absorbs 2^{1/p} since γ ≥ 1/2.
            let ln_big_c = c.ln_c4.max(c.ln_c3 + std::f64::consts::LN_2 / p);
            for (mname, m) in &metrics {
                let snow = Arc::new(m.snowflake(1.0 - p).unwrap());
                let g_snow = gamma_exact(&g, &snow, 1.0).unwrap().value;
                let g_orig = gamma_exact(&g, m, 1.0).unwrap().value;
                assert!(g_snow >= 0.5 && g_orig >= 0.5);
                assert!(
                    ln_small_c + g_snow.ln() < g_orig.max(1.0).ln(),
                    "{gname}/{mname} p={p}: lower comparison"
                );
                assert!(g_orig.ln() < ln_big_c + g_snow.ln() / p, "{gname}/{mname} p={p}: upper comparison");
            }
        }
    }
}
