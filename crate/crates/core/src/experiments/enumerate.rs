use rayon::prelude::*;
use serde::Serialize;

use super::events::{event_holds_with, EventSpec};
use crate::error::{Error, Result};
use crate::game::SolveOptions;
use crate::graph::Graph;

pub const DEFAULT_ENUMERATION_CAP: usize = 6;
/// 2^21 graphs at n = 7; anything larger is refused outright.
pub const MAX_ENUMERATION_CAP: usize = 7;

const CHUNK: u64 = 1 << 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub max_n: usize,
    pub solve: SolveOptions,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { max_n: DEFAULT_ENUMERATION_CAP, solve: SolveOptions::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LabelledCount {
    pub n: usize,
    pub event: EventSpec,
    pub count: u64,
    pub total: u64,
}

/// Per-event and pairwise joint counts over every labelled graph on `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EventTally {
    pub n: usize,
    pub events: Vec<EventSpec>,
    pub total: u64,
    pub counts: Vec<u64>,
    /// `joint[i][j]` counts graphs where events `i` and `j` both hold.
    pub joint: Vec<Vec<u64>>,
}

/// Graph whose pair `(u, v)`, taken in row-major order, is present iff the
/// corresponding bit of `mask` is set.
pub fn graph_from_mask(n: usize, mask: u64) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(u, v)?;
            }
            bit += 1;
        }
    }
    Ok(g)
}

pub fn enumerate_labelled(n: usize, event: &EventSpec) -> Result<LabelledCount> {
    enumerate_labelled_with(n, event, &EnumerateOptions::default())
}

pub fn enumerate_labelled_with(n: usize, event: &EventSpec, opts: &EnumerateOptions) -> Result<LabelledCount> {
    let t = enumerate_events(n, std::slice::from_ref(event), opts)?;
    Ok(LabelledCount { n, event: *event, count: t.counts[0], total: t.total })
}

/// Exact counts for all 2^C(n,2) labelled graphs, treating the triangle bits as
/// a counter. Work is sharded across threads; the merge is plain addition.
pub fn enumerate_events(n: usize, events: &[EventSpec], opts: &EnumerateOptions) -> Result<EventTally> {
    if opts.max_n > MAX_ENUMERATION_CAP {
        return Err(Error::InvalidParameter(format!(
            "enumeration cap {} above the hard maximum {MAX_ENUMERATION_CAP}",
            opts.max_n
        )));
    }
    if n == 0 || n > opts.max_n {
        return Err(Error::InvalidParameter(format!("n = {n} outside 1..={}", opts.max_n)));
    }
    if n == MAX_ENUMERATION_CAP {
        log::warn!("enumerating all 2^21 labelled graphs on 7 vertices; this is slow");
    }
    let total = 1u64 << (n * (n - 1) / 2);
    let m = events.len();
    let zero = || vec![0u64; m * (m + 1)];
    let merged = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|chunk| -> Result<Vec<u64>> {
            let mut acc = zero();
            let mut holds = vec![false; m];
            for mask in chunk * CHUNK..((chunk + 1) * CHUNK).min(total) {
                let g = graph_from_mask(n, mask)?;
                for (h, e) in holds.iter_mut().zip(events) {
                    *h = event_holds_with(&g, e, &opts.solve)?;
                }
                tally(&mut acc, &holds);
            }
            Ok(acc)
        })
        .try_reduce(zero, |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            Ok(a)
        })?;
    Ok(EventTally {
        n,
        events: events.to_vec(),
        total,
        counts: merged[..m].to_vec(),
        joint: merged[m..].chunks(m.max(1)).map(<[u64]>::to_vec).collect(),
    })
}

/// Layout: `m` single counts followed by an `m x m` joint matrix.
fn tally(acc: &mut [u64], holds: &[bool]) {
    let m = holds.len();
    for i in 0..m {
        if holds[i] {
            acc[i] += 1;
            for j in 0..m {
                if holds[j] {
                    acc[m + i * m + j] += 1;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_and_three_vertices() {
        let c = enumerate_labelled(2, &EventSpec::dismantlable()).unwrap();
        assert_eq!((c.count, c.total), (1, 2));
        let c = enumerate_labelled(3, &EventSpec::k_cop_win(1)).unwrap();
        assert_eq!((c.count, c.total), (4, 8));
    }

    #[test]
    fn single_vertex() {
        let c = enumerate_labelled(1, &EventSpec::universal()).unwrap();
        assert_eq!((c.count, c.total), (1, 1));
    }

    #[test]
    fn joint_counts() {
        let events = [EventSpec::universal(), EventSpec::k_dom(1)];
        let t = enumerate_events(3, &events, &EnumerateOptions::default()).unwrap();
        assert_eq!(t.counts, vec![4, 4]);
        assert_eq!(t.joint, vec![vec![4, 4], vec![4, 4]]);
    }

    #[test]
    fn caps() {
        assert!(enumerate_labelled(7, &EventSpec::universal()).is_err());
        assert!(enumerate_labelled(0, &EventSpec::universal()).is_err());
        let opts = EnumerateOptions { max_n: 8, ..Default::default() };
        assert!(enumerate_labelled_with(3, &EventSpec::universal(), &opts).is_err());
    }

    #[test]
    fn masks_cover_every_graph_once() {
        let mut seen = std::collections::HashSet::new();
        for mask in 0..64 {
            assert!(seen.insert(graph_from_mask(4, mask).unwrap()));
        }
    }
}
