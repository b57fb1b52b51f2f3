use std::collections::BTreeSet;

use shell_ergm::cores::shell_distribution;
use shell_ergm::enumerate::realizable_distributions;
use shell_ergm::realizability::{construct_witness, is_realizable, mle_exists};
use shell_ergm::{Graph, ShellDistribution};

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = n * (n - 1) / 2;
    (0..1u64 << pairs).map(move |m| Graph::from_dyad_mask(n, m))
}

/// Every length-`n` vector of non-negative integers summing to `n`.
fn compositions(n: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(left - x, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

#[test]
fn every_small_graph_is_realizable_and_on_the_boundary() {
    assert!(mle_exists(&[Graph::empty(1)]).unwrap());
    for n in 2..=5 {
        for g in all_graphs(n) {
            let d = shell_distribution(&g);
            assert!(is_realizable(&d), "{d}");
            assert!(!mle_exists(std::slice::from_ref(&g)).unwrap());
            let t = d.truncated();
            assert!(t.contains(&0) || t.iter().sum::<usize>() == n, "{d}");
        }
    }
}

#[test]
fn predicate_matches_brute_force_realizability() {
    for n in 1..=6 {
        let seen: BTreeSet<Vec<usize>> = all_graphs(n)
            .map(|g| shell_distribution(&g).counts().to_vec())
            .collect();
        for c in compositions(n) {
            let d = ShellDistribution::from_counts(c.clone());
            assert_eq!(is_realizable(&d), seen.contains(&c), "{d}");
        }
        let listed: BTreeSet<Vec<usize>> = realizable_distributions(n)
            .iter()
            .map(|d| d.counts().to_vec())
            .collect();
        assert_eq!(listed, seen);
    }
}

#[test]
fn witness_realizes_its_distribution() {
    for n in 1..=9 {
        for c in compositions(n) {
            let d = ShellDistribution::from_counts(c);
            match construct_witness(&d) {
                Ok(g) => {
                    assert!(is_realizable(&d));
                    assert_eq!(shell_distribution(&g), d);
                }
                Err(_) => assert!(!is_realizable(&d)),
            }
        }
    }
}

#[test]
fn pooled_samples_can_reach_the_interior() {
    // Empty graph, one edge and K3 on three vertices.
    let sample = [
        Graph::empty(3),
        Graph::from_edges(3, [(0, 1)]).unwrap(),
        Graph::complete(3),
    ];
    // Mean (4/3, 2/3): positive with sum 2 < 3.
    assert!(mle_exists(&sample).unwrap());
    assert!(!mle_exists(&[Graph::complete(4), Graph::complete(4)]).unwrap());
}
