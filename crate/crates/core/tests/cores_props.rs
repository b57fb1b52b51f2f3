mod common;

use common::*;
use proptest::prelude::*;
use shell_ergm::cores::{k_core_vertices, shell_distribution, shell_sequence};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn matches_definition(g in arb_graph_density(0, 12)) {
        prop_assert_eq!(shell_sequence(&g).0, definition_shells(&g));
    }
}

proptest! {
    #[test]
    fn cores_nest(g in arb_graph_density(1, 15)) {
        let n = g.n();
        for k in 0..n {
            let outer = k_core_vertices(&g, k);
            let inner = k_core_vertices(&g, k + 1);
            prop_assert!(inner.iter().all(|v| outer.contains(v)));
            // Induced subgraphs, so edge nesting follows from vertex nesting;
            // check every inner vertex keeps degree >= k+1 inside the core.
            for &v in &inner {
                let d = g.neighbors(v).iter().filter(|w| inner.contains(w)).count();
                prop_assert!(d > k);
            }
        }
    }

    #[test]
    fn permutation_equivariance((g, perm) in arb_graph_with_perm(1, 14)) {
        let h = g.relabel(&perm);
        let s = shell_sequence(&g).0;
        let t = shell_sequence(&h).0;
        for v in 0..g.n() {
            prop_assert_eq!(t[perm[v]], s[v]);
        }
        prop_assert_eq!(shell_distribution(&g), shell_distribution(&h));
    }

    #[test]
    fn distribution_sums_to_n(g in arb_graph_density(0, 20)) {
        let d = shell_distribution(&g);
        prop_assert_eq!(d.counts().len(), g.n());
        prop_assert_eq!(d.total(), g.n());
    }
}
