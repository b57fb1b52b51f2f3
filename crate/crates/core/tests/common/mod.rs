#![allow(dead_code)]

use proptest::prelude::*;
use shell_ergm::Graph;

/// Random graph with edge probability `p` drawn per case, so sparse and dense
/// graphs both show up.
pub fn arb_graph_density(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n, 0.0f64..=1.0, any::<u64>()).prop_map(|(n, p, seed)| {
        use rand::Rng;
        let mut rng = shell_ergm::rng_from_seed(seed);
        let mut edges = Vec::new();
        for v in 1..n {
            for u in 0..v {
                if rng.gen::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, edges).unwrap()
    })
}

pub fn arb_graph_with_perm(min_n: usize, max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph_density(min_n, max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// Shell indices straight from the k-core definition: for each k, delete
/// vertices of degree < k until none remain, and take the largest k a vertex
/// survives.
pub fn definition_shells(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut shell = vec![0; n];
    for k in 1..n {
        let mut alive = vec![true; n];
        loop {
            let doomed: Vec<usize> = (0..n)
                .filter(|&v| alive[v])
                .filter(|&v| g.neighbors(v).iter().filter(|&&w| alive[w]).count() < k)
                .collect();
            if doomed.is_empty() {
                break;
            }
            for v in doomed {
                alive[v] = false;
            }
        }
        if !alive.iter().any(|&a| a) {
            break;
        }
        for v in 0..n {
            if alive[v] {
                shell[v] = k;
            }
        }
    }
    shell
}

pub fn brute_triangles(g: &Graph) -> usize {
    let n = g.n();
    let mut c = 0;
    for a in 0..n {
        for b in a + 1..n {
            for d in b + 1..n {
                if g.has_edge(a, b) && g.has_edge(b, d) && g.has_edge(a, d) {
                    c += 1;
                }
            }
        }
    }
    c
}
