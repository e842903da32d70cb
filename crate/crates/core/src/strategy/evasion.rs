//! The evasion strategy: avoid dangerous vertices, stay unwatched.
//!
//! A vertex `b` is dangerous when some `k`-set `A` not containing `b` leaves at
//! most `2q` neighbours of `b` undominated. With fewer than `q` dangerous
//! vertices and `delta_k >= q` the robber can always step to a safe vertex.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;

use super::{Certificate, CertificateKind, Witness};
use crate::combinatorics::binomial;
use crate::domination::{delta_k_with_limit, for_each_k_set, DEFAULT_WORK_LIMIT};
use crate::error::{Error, Result};
use crate::game::RobberController;
use crate::graph::{Graph, VertexSet};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DangerReport {
    pub k: usize,
    pub q: usize,
    /// Dangerous vertex -> its lexicographically first threatening set.
    pub dangerous: BTreeMap<usize, VertexSet>,
    pub delta_k: usize,
}

impl DangerReport {
    pub fn dangerous_set(&self) -> VertexSet {
        self.dangerous.keys().collect()
    }
}

pub fn dangerous_vertices(g: &Graph, k: usize, q: usize) -> Result<DangerReport> {
    dangerous_vertices_with_limit(g, k, q, DEFAULT_WORK_LIMIT)
}

/// Exhaustive scan over all `(b, A)`; `work_limit` bounds `n * C(n-1, k)`.
pub fn dangerous_vertices_with_limit(g: &Graph, k: usize, q: usize, work_limit: u64) -> Result<DangerReport> {
    let n = g.n();
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!("k = {k} outside 1..{n}")));
    }
    if q == 0 {
        return Err(Error::InvalidParameter("q must be at least 1".into()));
    }
    let needed = binomial(n as u64 - 1, k as u64).saturating_mul(n as u128);
    if needed > work_limit as u128 {
        return Err(Error::WorkBudgetExceeded { needed, budget: work_limit });
    }
    let threshold = 2 * q;
    let full = g.vertices();
    let threats: Vec<Option<VertexSet>> = (0..n)
        .into_par_iter()
        .map(|b| {
            let nb = g.neighbors(b);
            match for_each_k_set(g, k, VertexSet::singleton(b), |a| {
                let open = full.difference(g.closed_neighborhood_of(a)).intersection(nb);
                if open.len() <= threshold {
                    ControlFlow::Break(a)
                } else {
                    ControlFlow::Continue(())
                }
            }) {
                ControlFlow::Break(a) => Some(a),
                ControlFlow::Continue(()) => None,
            }
        })
        .collect();
    let dangerous = threats
        .into_iter()
        .enumerate()
        .filter_map(|(b, a)| a.map(|a| (b, a)))
        .collect();
    let delta = delta_k_with_limit(g, k, work_limit)?.value;
    Ok(DangerReport { k, q, dangerous, delta_k: delta })
}

pub fn evasion_certificate(g: &Graph, k: usize, q: usize) -> Result<Certificate> {
    evasion_certificate_with_limit(g, k, q, DEFAULT_WORK_LIMIT)
}

/// True iff fewer than `q` vertices are dangerous and every `k`-set leaves at
/// least `q` vertices undominated.
pub fn evasion_certificate_with_limit(g: &Graph, k: usize, q: usize, work_limit: u64) -> Result<Certificate> {
    let report = dangerous_vertices_with_limit(g, k, q, work_limit)?;
    Ok(certificate_from(&report))
}

pub(crate) fn certificate_from(report: &DangerReport) -> Certificate {
    let dangerous = report.dangerous.len();
    Certificate {
        kind: CertificateKind::Evasion,
        k: report.k,
        verdict: dangerous < report.q && report.delta_k >= report.q,
        witness: Witness::Evasion { q: report.q, dangerous, delta_k: report.delta_k },
    }
}

/// Vertices that are neither dangerous nor in the closed neighbourhood of a cop.
pub fn safe_vertices(g: &Graph, cops: &[usize], report: &DangerReport) -> VertexSet {
    let occupied: VertexSet = cops.iter().collect();
    g.vertices()
        .difference(report.dangerous_set())
        .difference(g.closed_neighborhood_of(occupied))
}

/// Lowest safe vertex (placement), else the lowest safe vertex in `N[current]`.
pub fn evasion_robber_move(
    g: &Graph,
    report: &DangerReport,
    cops: &[usize],
    current: Option<usize>,
    cops_passed: bool,
) -> Result<usize> {
    let occupied: VertexSet = cops.iter().collect();
    g.check_set(occupied)?;
    let safe = safe_vertices(g, cops, report);
    let choice = match current {
        None => safe.first(),
        Some(cur) => {
            g.check_vertex(cur)?;
            if cops_passed {
                return Ok(cur);
            }
            safe.intersection(g.closed_neighbors(cur)).first()
        }
    };
    choice.ok_or_else(|| Error::NoSafeMove(format!("no safe vertex from {current:?} with cops at {cops:?}")))
}

#[derive(Debug, Clone)]
pub struct EvasionRobber {
    pub report: DangerReport,
}

impl RobberController for EvasionRobber {
    fn place(&mut self, g: &Graph, cops: &[usize], _rng: &mut SplitMix64) -> Result<usize> {
        evasion_robber_move(g, &self.report, cops, None, false)
    }

    fn step(
        &mut self,
        g: &Graph,
        cops: &[usize],
        previous: &[usize],
        robber: usize,
        _rng: &mut SplitMix64,
    ) -> Result<usize> {
        evasion_robber_move(g, &self.report, cops, Some(robber), cops == previous)
    }
}
