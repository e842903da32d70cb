use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dismantle::dismantling_order;
use crate::domination::{delta_k_with_limit, has_universal_vertex};
use crate::error::{Error, Result};
use crate::game::{is_k_cop_win_with, SolveOptions};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    KCopWin,
    KDom,
    Universal,
    Dismantlable,
}

/// A graph property whose probability is measured. `k` is ignored by
/// `Universal` and `Dismantlable`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EventSpec {
    pub kind: EventKind,
    pub k: usize,
}

impl EventSpec {
    pub fn new(kind: EventKind, k: usize) -> Result<Self> {
        if matches!(kind, EventKind::KCopWin | EventKind::KDom) && k == 0 {
            return Err(Error::InvalidParameter(format!("{kind} needs k >= 1")));
        }
        Ok(EventSpec { kind, k })
    }

    pub fn k_cop_win(k: usize) -> Self {
        EventSpec { kind: EventKind::KCopWin, k }
    }

    pub fn k_dom(k: usize) -> Self {
        EventSpec { kind: EventKind::KDom, k }
    }

    pub fn universal() -> Self {
        EventSpec { kind: EventKind::Universal, k: 1 }
    }

    pub fn dismantlable() -> Self {
        EventSpec { kind: EventKind::Dismantlable, k: 1 }
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EventKind::KCopWin => "kcopwin",
            EventKind::KDom => "kdom",
            EventKind::Universal => "universal",
            EventKind::Dismantlable => "dismantlable",
        })
    }
}

impl FromStr for EventKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "kcopwin" | "copwin" => Ok(EventKind::KCopWin),
            "kdom" | "dom" => Ok(EventKind::KDom),
            "universal" => Ok(EventKind::Universal),
            "dismantlable" => Ok(EventKind::Dismantlable),
            _ => Err(Error::InvalidParameter(format!("unknown event '{s}'"))),
        }
    }
}

impl fmt::Display for EventSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            EventKind::KCopWin | EventKind::KDom => write!(f, "{}(k={})", self.kind, self.k),
            _ => write!(f, "{}", self.kind),
        }
    }
}

pub fn event_holds(g: &Graph, e: &EventSpec) -> Result<bool> {
    event_holds_with(g, e, &SolveOptions::default())
}

/// Exact evaluation. `KDom` with `k >= n` holds trivially (all of `V` dominates).
pub fn event_holds_with(g: &Graph, e: &EventSpec, opts: &SolveOptions) -> Result<bool> {
    match e.kind {
        EventKind::KCopWin => is_k_cop_win_with(g, e.k, opts),
        EventKind::KDom => {
            if e.k >= g.n() {
                Ok(true)
            } else {
                Ok(delta_k_with_limit(g, e.k, opts.work_limit)?.value == 0)
            }
        }
        EventKind::Universal => Ok(has_universal_vertex(g).is_some()),
        EventKind::Dismantlable => Ok(dismantling_order(g).success),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let c4 = Graph::cycle(4).unwrap();
        assert!(event_holds(&c4, &EventSpec::k_dom(2)).unwrap());
        assert!(!event_holds(&c4, &EventSpec::k_cop_win(1)).unwrap());
        assert!(!event_holds(&c4, &EventSpec::dismantlable()).unwrap());
        assert!(event_holds(&Graph::empty(1).unwrap(), &EventSpec::universal()).unwrap());
    }

    #[test]
    fn parsing() {
        assert_eq!("kcopwin".parse::<EventKind>().unwrap(), EventKind::KCopWin);
        assert_eq!("K-Dom".parse::<EventKind>().unwrap(), EventKind::KDom);
        assert!("nope".parse::<EventKind>().is_err());
        assert!(EventSpec::new(EventKind::KDom, 0).is_err());
        assert_eq!(EventSpec::k_cop_win(2).to_string(), "kcopwin(k=2)");
    }
}
