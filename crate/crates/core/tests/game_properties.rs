mod common;

use common::{arb_graph, gnp};
use copwin_core::dismantle::{corners, dismantling_order};
use copwin_core::domination::{domination_number, DEFAULT_WORK_LIMIT};
use copwin_core::game::*;
use copwin_core::Graph;
use proptest::prelude::*;

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(n, k, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// All joint cop destinations from `cops`, as sorted multisets.
fn cop_moves(g: &Graph, cops: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for &c in cops {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                g.closed_neighbors(c).iter().map(move |d| {
                    let mut p = prefix.clone();
                    p.push(d);
                    p
                })
            })
            .collect();
    }
    for m in &mut out {
        m.sort_unstable();
    }
    out
}

/// Checks every position against the one-step game rules, using ranks for
/// the least-fixed-point part.
fn check_local_rules(g: &Graph, t: &GameTable) {
    let n = g.n();
    for cops in multisets(n, t.k()) {
        for r in 0..n {
            let cp = Position::new(g, cops.clone(), r, Side::Cops).unwrap();
            let rp = Position::new(g, cops.clone(), r, Side::Robber).unwrap();
            if cops.contains(&r) {
                assert_eq!(t.rank(&cp).unwrap(), Some(0));
                assert_eq!(t.rank(&rp).unwrap(), Some(0));
                continue;
            }
            // cops to move: 1 + min over successors
            let best = cop_moves(g, &cops)
                .into_iter()
                .filter_map(|c2| t.rank(&Position::new(g, c2, r, Side::Robber).unwrap()).unwrap())
                .min();
            assert_eq!(t.rank(&cp).unwrap(), best.map(|b| b + 1), "{cops:?} {r}");
            // robber to move: max over successors, all must be cop-win
            let succ: Vec<Option<u32>> = g
                .closed_neighbors(r)
                .iter()
                .map(|r2| t.rank(&Position::new(g, cops.clone(), r2, Side::Cops).unwrap()).unwrap())
                .collect();
            let want = if succ.iter().all(Option::is_some) {
                succ.iter().map(|x| x.unwrap()).max()
            } else {
                None
            };
            assert_eq!(t.rank(&rp).unwrap(), want, "{cops:?} {r}");
        }
    }
}

#[test]
fn local_rules_hold_on_small_graphs() {
    for (g, k) in [
        (Graph::cycle(5).unwrap(), 1),
        (Graph::cycle(5).unwrap(), 2),
        (Graph::petersen(), 2),
        (Graph::path(5).unwrap(), 1),
        (gnp(7, 0.4, 11), 2),
        (gnp(6, 0.5, 3), 3),
    ] {
        check_local_rules(&g, &solve_game(&g, k).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn local_rules_hold(g in arb_graph(6), k in 1usize..3) {
        check_local_rules(&g, &solve_game(&g, k).unwrap());
    }

    #[test]
    fn cop_win_iff_dismantlable(g in arb_graph(9)) {
        prop_assert_eq!(is_k_cop_win(&g, 1).unwrap(), dismantling_order(&g).success);
    }

    #[test]
    fn corner_deletion_preserves_cop_win(g in arb_graph(8)) {
        let base = is_k_cop_win(&g, 1).unwrap();
        for c in corners(&g) {
            if g.n() > 1 {
                prop_assert_eq!(is_k_cop_win(&g.remove_vertex(c.vertex).unwrap(), 1).unwrap(), base);
            }
        }
    }

    #[test]
    fn monotone_in_k_and_capped_by_domination(g in arb_graph(7)) {
        let mut prev = false;
        for k in 1..=3 {
            let w = is_k_cop_win(&g, k).unwrap();
            prop_assert!(!prev || w);
            prev = w;
        }
        let c = cop_number(&g).unwrap();
        prop_assert!(c.value <= c.domination_number);
        prop_assert_eq!(c.domination_number, domination_number(&g, DEFAULT_WORK_LIMIT).unwrap().k);
        prop_assert!(is_k_cop_win(&g, c.value).unwrap());
        if c.value > 1 {
            prop_assert!(!is_k_cop_win(&g, c.value - 1).unwrap());
        }
    }

    #[test]
    fn optimal_play_captures_in_exactly_rank_moves(g in arb_graph(8), k in 1usize..3) {
        let t = solve_game(&g, k).unwrap();
        for cops in multisets(g.n(), k) {
            for r in 0..g.n() {
                let p = Position::new(&g, cops.clone(), r, Side::Cops).unwrap();
                let Some(rank) = t.rank(&p).unwrap() else { continue };
                if rank == 0 {
                    continue;
                }
                let Move::Cops(dest) = t.optimal_move(&g, &p).unwrap() else { unreachable!() };
                let after = Position::new(&g, dest, r, Side::Robber).unwrap();
                prop_assert_eq!(t.rank(&after).unwrap(), Some(rank - 1));
            }
        }
        if let Some((placement, rank)) = t.winning_placement() {
            let mut cops = OptimalCops { table: &t };
            let trace = play_match(&g, k, &mut cops, &mut OptimalRobber { table: &t }, 1000, 0).unwrap();
            prop_assert_eq!(&trace.cop_start, &placement);
            prop_assert_eq!(trace.outcome, MatchOutcome::Captured(rank as usize));
        }
    }
}

#[test]
fn cycles_need_two_cops() {
    for n in 4..=10 {
        assert_eq!(cop_number(&Graph::cycle(n).unwrap()).unwrap().value, 2, "C{n}");
    }
}

#[test]
fn seeded_samples_agree_with_dismantling() {
    for n in 6..=9 {
        for seed in 0..150 {
            let g = gnp(n, 0.5, seed);
            assert_eq!(is_k_cop_win(&g, 1).unwrap(), dismantling_order(&g).success);
        }
    }
}
