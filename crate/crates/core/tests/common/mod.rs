#![allow(dead_code)]

use copwin_core::experiments::{sample_gnp, SamplerConfig};
use copwin_core::Graph;
use proptest::prelude::*;

pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    sample_gnp(&SamplerConfig::new(n, p, seed).unwrap()).unwrap()
}

/// Arbitrary graphs on `1..=max_n` vertices.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n).unwrap();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        g.add_edge(u, v).unwrap();
                    }
                    i += 1;
                }
            }
            g
        })
    })
}

/// Labelled tree from a Prüfer sequence over `0..seq.len() + 2`.
pub fn prufer_tree(seq: &[usize]) -> Graph {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut g = Graph::empty(n).unwrap();
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        g.add_edge(leaf, s).unwrap();
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    g.add_edge(rest[0], rest[1]).unwrap();
    g
}
