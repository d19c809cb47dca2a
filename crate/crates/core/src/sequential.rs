//! Classical chip-firing: one firable vertex (chips >= degree) fires per
//! move, and the game ends when none can.
//!
//! For terminating games, the final configuration and the number of firings
//! do not depend on the order of play, and whether a game terminates at all
//! depends only on the start. [`check_abelian`] tests this by replaying a
//! start under many random orders.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::parallel::DEFAULT_STATE_CAP;
use crate::rng;

/// Which firable vertex moves next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    LowestIndex,
    /// Most chips; ties go to the lower index.
    HighestCandy,
    /// Move `i` picks firable vertex number `splitmix_at(seed, i) % k` (in
    /// ascending order) among the `k` firable ones.
    SeededRandom(u64),
}

impl Policy {
    pub fn is_deterministic(&self) -> bool {
        !matches!(self, Policy::SeededRandom(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SeqOutcome {
    Terminated { final_config: Configuration, length: u64 },
    /// A configuration came back under a deterministic policy, so the play
    /// (and by order independence every play) is infinite.
    Infinite { witness: Configuration, first_seen: u64, revisited_at: u64 },
    /// Random play used up its move budget.
    Unknown { moves: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeqLimits {
    /// Distinct configurations remembered by deterministic policies.
    pub state_cap: usize,
    /// Moves allowed to random policies.
    pub move_budget: u64,
}

impl Default for SeqLimits {
    fn default() -> Self {
        SeqLimits { state_cap: DEFAULT_STATE_CAP, move_budget: 1_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    /// 1-based.
    pub index: u64,
    pub vertex: usize,
    /// Chips after the move.
    pub snapshot: Vec<u64>,
}

/// CSV move log: `move_index,fired_vertex,candy_0,...`.
pub fn moves_csv(n: usize, moves: &[Move]) -> String {
    let mut out = String::from("move_index,fired_vertex");
    for v in 0..n {
        let _ = write!(out, ",candy_{v}");
    }
    out.push('\n');
    for m in moves {
        let _ = write!(out, "{},{}", m.index, m.vertex);
        for x in &m.snapshot {
            let _ = write!(out, ",{x}");
        }
        out.push('\n');
    }
    out
}

fn choose(g: &Graph, chips: &[u64], policy: Policy, move_index: u64) -> Option<usize> {
    let firable = |v: &usize| chips[*v] >= g.degree(*v) as u64;
    match policy {
        Policy::LowestIndex => (0..g.n()).find(firable),
        Policy::HighestCandy => (0..g.n())
            .filter(firable)
            .fold(None, |best: Option<usize>, v| match best {
                Some(b) if chips[b] >= chips[v] => Some(b),
                _ => Some(v),
            }),
        Policy::SeededRandom(seed) => {
            let k = (0..g.n()).filter(firable).count();
            if k == 0 {
                return None;
            }
            let pick = (rng::splitmix_at(seed, move_index) % k as u64) as usize;
            (0..g.n()).filter(firable).nth(pick)
        }
    }
}

fn fire(g: &Graph, chips: &mut [u64], v: usize) {
    chips[v] -= g.degree(v) as u64;
    for &w in g.neighbors(v) {
        chips[w] += 1;
    }
}

pub fn seq_run(g: &Graph, init: &Configuration, policy: Policy, limits: SeqLimits) -> Result<SeqOutcome> {
    seq_run_inner(g, init, policy, limits, None)
}

/// [`seq_run`] that also records every move.
pub fn seq_run_logged(
    g: &Graph,
    init: &Configuration,
    policy: Policy,
    limits: SeqLimits,
) -> Result<(SeqOutcome, Vec<Move>)> {
    let mut log = Vec::new();
    let outcome = seq_run_inner(g, init, policy, limits, Some(&mut log))?;
    Ok((outcome, log))
}

fn seq_run_inner(
    g: &Graph,
    init: &Configuration,
    policy: Policy,
    limits: SeqLimits,
    mut log: Option<&mut Vec<Move>>,
) -> Result<SeqOutcome> {
    init.check_size(g)?;
    let mut chips = init.as_slice().to_vec();
    let deterministic = policy.is_deterministic();
    // state -> number of moves after which it was first seen
    let mut seen: HashMap<Vec<u64>, u64> = HashMap::new();
    if deterministic {
        seen.insert(chips.clone(), 0);
    }
    let mut moves = 0u64;
    loop {
        let Some(v) = choose(g, &chips, policy, moves) else {
            return Ok(SeqOutcome::Terminated {
                final_config: Configuration::new(chips)?,
                length: moves,
            });
        };
        if !deterministic && moves >= limits.move_budget {
            return Ok(SeqOutcome::Unknown { moves });
        }
        fire(g, &mut chips, v);
        moves += 1;
        if let Some(log) = log.as_deref_mut() {
            log.push(Move { index: moves, vertex: v, snapshot: chips.clone() });
        }
        if deterministic {
            if let Some(&first_seen) = seen.get(&chips) {
                return Ok(SeqOutcome::Infinite {
                    witness: Configuration::new(chips)?,
                    first_seen,
                    revisited_at: moves,
                });
            }
            if seen.len() >= limits.state_cap {
                return Err(Error::ResourceExhausted { what: "sequential state store", cap: limits.state_cap as u64 });
            }
            seen.insert(chips.clone(), moves);
        }
    }
}

/// How a batch of random orders compared with the reference play.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AbelianVerdict {
    /// Every order matched the reference.
    Agree,
    /// A random order terminated differently from the reference.
    Diverged { order: u64, seed: u64, final_config: Configuration, length: u64 },
    /// The reference terminated but a random order ran past its budget.
    /// This contradicts order independence and is a hard failure.
    BudgetExceeded { order: u64, seed: u64, budget: u64 },
    /// The reference is infinite but a random order terminated.
    TerminatedUnexpectedly { order: u64, seed: u64, final_config: Configuration, length: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianReport {
    pub reference: SeqOutcome,
    pub orders: u64,
    /// Move budget each random order received.
    pub budget: u64,
    pub verdict: AbelianVerdict,
}

impl AbelianReport {
    pub fn passed(&self) -> bool {
        self.verdict == AbelianVerdict::Agree
    }

    pub fn terminating(&self) -> bool {
        matches!(self.reference, SeqOutcome::Terminated { .. })
    }
}

/// Seed of random order `order` in a batch seeded with `seed`.
pub fn order_seed(seed: u64, order: u64) -> u64 {
    rng::derive(seed, order)
}

/// Plays `init` with the lowest-index policy, then under `n_orders` seeded
/// random orders, each with a budget of ten times the reference length plus
/// 1000 moves, and compares the results.
pub fn check_abelian(g: &Graph, init: &Configuration, n_orders: u64, seed: u64) -> Result<AbelianReport> {
    let reference = seq_run(g, init, Policy::LowestIndex, SeqLimits::default())?;
    let reference_moves = match &reference {
        SeqOutcome::Terminated { length, .. } => *length,
        SeqOutcome::Infinite { revisited_at, .. } => *revisited_at,
        SeqOutcome::Unknown { .. } => unreachable!("deterministic play never returns Unknown"),
    };
    let budget = reference_moves.saturating_mul(10).saturating_add(1000);
    let limits = SeqLimits { move_budget: budget, ..SeqLimits::default() };

    let mut verdict = AbelianVerdict::Agree;
    for order in 0..n_orders {
        let s = order_seed(seed, order);
        let out = seq_run(g, init, Policy::SeededRandom(s), limits)?;
        verdict = match (&reference, out) {
            (SeqOutcome::Terminated { final_config, length }, SeqOutcome::Terminated { final_config: f, length: l }) => {
                if *final_config == f && *length == l {
                    continue;
                }
                AbelianVerdict::Diverged { order, seed: s, final_config: f, length: l }
            }
            (SeqOutcome::Terminated { .. }, _) => AbelianVerdict::BudgetExceeded { order, seed: s, budget },
            (_, SeqOutcome::Terminated { final_config, length }) => {
                AbelianVerdict::TerminatedUnexpectedly { order, seed: s, final_config, length }
            }
            _ => continue,
        };
        break;
    }
    Ok(AbelianReport { reference, orders: n_orders, budget, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphKind;
    use std::collections::BTreeSet;

    fn conf(v: &[u64]) -> Configuration {
        Configuration::new(v.to_vec()).unwrap()
    }

    fn graph(kind: GraphKind) -> Graph {
        kind.generate().unwrap()
    }

    /// Every terminal (final, length) pair reachable by some order of play,
    /// found by exhausting the game tree. `None` if some play revisits a
    /// state (then the game is infinite along that play).
    fn all_play_orders(g: &Graph, chips: &mut Vec<u64>, depth: u64, path: &mut Vec<Vec<u64>>,
                       out: &mut BTreeSet<(Vec<u64>, u64)>) -> bool {
        if path.contains(chips) {
            return false;
        }
        let firable: Vec<usize> = (0..g.n()).filter(|&v| chips[v] >= g.degree(v) as u64).collect();
        if firable.is_empty() {
            out.insert((chips.clone(), depth));
            return true;
        }
        path.push(chips.clone());
        let mut finite = true;
        for v in firable {
            let saved = chips.clone();
            fire(g, chips, v);
            finite &= all_play_orders(g, chips, depth + 1, path, out);
            *chips = saved;
        }
        path.pop();
        finite
    }

    #[test]
    fn examples() {
        let p3 = graph(GraphKind::Path(3));
        for policy in [Policy::LowestIndex, Policy::HighestCandy, Policy::SeededRandom(5)] {
            assert_eq!(
                seq_run(&p3, &conf(&[1, 0, 0]), policy, SeqLimits::default()).unwrap(),
                SeqOutcome::Terminated { final_config: conf(&[0, 1, 0]), length: 1 }
            );
            assert_eq!(
                seq_run(&p3, &conf(&[0, 1, 0]), policy, SeqLimits::default()).unwrap(),
                SeqOutcome::Terminated { final_config: conf(&[0, 1, 0]), length: 0 }
            );
        }

        let k2 = graph(GraphKind::Complete(2));
        assert_eq!(
            seq_run(&k2, &conf(&[1, 0]), Policy::LowestIndex, SeqLimits::default()).unwrap(),
            SeqOutcome::Infinite { witness: conf(&[1, 0]), first_seen: 0, revisited_at: 2 }
        );
        assert_eq!(
            seq_run(&k2, &conf(&[1, 0]), Policy::SeededRandom(1), SeqLimits { move_budget: 50, ..Default::default() })
                .unwrap(),
            SeqOutcome::Unknown { moves: 50 }
        );
    }

    #[test]
    fn highest_candy_prefers_richest() {
        let p3 = graph(GraphKind::Path(3));
        let (_, log) = seq_run_logged(&p3, &conf(&[1, 3, 0]), Policy::HighestCandy, SeqLimits::default()).unwrap();
        assert_eq!(log[0].vertex, 1);
        let (_, log) = seq_run_logged(&p3, &conf(&[1, 3, 0]), Policy::LowestIndex, SeqLimits::default()).unwrap();
        assert_eq!(log[0].vertex, 0);
    }

    #[test]
    fn state_cap() {
        let k2 = graph(GraphKind::Complete(2));
        let limits = SeqLimits { state_cap: 1, ..Default::default() };
        assert!(matches!(
            seq_run(&k2, &conf(&[1, 0]), Policy::LowestIndex, limits),
            Err(Error::ResourceExhausted { .. })
        ));
    }

    #[test]
    fn move_log() {
        let p3 = graph(GraphKind::Path(3));
        let (outcome, log) = seq_run_logged(&p3, &conf(&[1, 0, 0]), Policy::LowestIndex, SeqLimits::default()).unwrap();
        assert_eq!(outcome, SeqOutcome::Terminated { final_config: conf(&[0, 1, 0]), length: 1 });
        assert_eq!(moves_csv(3, &log), "move_index,fired_vertex,candy_0,candy_1,candy_2\n1,0,0,1,0\n");
    }

    #[test]
    fn abelian_examples() {
        let p3 = graph(GraphKind::Path(3));
        let rep = check_abelian(&p3, &conf(&[1, 0, 0]), 10, 0).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.reference, SeqOutcome::Terminated { final_config: conf(&[0, 1, 0]), length: 1 });

        let rep = check_abelian(&p3, &conf(&[0, 1, 0]), 10, 0).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.reference, SeqOutcome::Terminated { final_config: conf(&[0, 1, 0]), length: 0 });

        let c3 = graph(GraphKind::Cycle(3));
        let rep = check_abelian(&c3, &conf(&[2, 0, 0]), 10, 0).unwrap();
        assert!(rep.passed());
        let mut finals = BTreeSet::new();
        assert!(all_play_orders(&c3, &mut vec![2, 0, 0], 0, &mut vec![], &mut finals));
        assert_eq!(finals.len(), 1);
        let (f, l) = finals.into_iter().next().unwrap();
        assert_eq!(rep.reference, SeqOutcome::Terminated { final_config: conf(&f), length: l });

        let k2 = graph(GraphKind::Complete(2));
        let rep = check_abelian(&k2, &conf(&[1, 0]), 10, 0).unwrap();
        assert!(rep.passed());
        assert!(!rep.terminating());
    }

    #[test]
    fn random_orders_match_game_tree_oracle() {
        let corpus = [
            graph(GraphKind::Path(3)),
            graph(GraphKind::Cycle(3)),
            graph(GraphKind::Path(4)),
            graph(GraphKind::Star(4)),
            graph(GraphKind::Cycle(4)),
        ];
        for g in &corpus {
            for c in 0..=5 {
                for init in crate::oracle::enumerate_configs(g.n(), c).unwrap() {
                    let mut finals = BTreeSet::new();
                    let finite = all_play_orders(g, &mut init.as_slice().to_vec(), 0, &mut vec![], &mut finals);
                    let rep = check_abelian(g, &init, 6, c).unwrap();
                    assert!(rep.passed(), "{g:?} {init}");
                    if finite {
                        assert_eq!(finals.len(), 1, "{g:?} {init}");
                        let (f, l) = finals.into_iter().next().unwrap();
                        assert_eq!(rep.reference, SeqOutcome::Terminated { final_config: conf(&f), length: l });
                    } else {
                        assert!(!rep.terminating(), "{g:?} {init}");
                    }
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn moves_conserve_and_stay_non_negative(n in 2usize..8, p in 0.3f64..0.9, gseed in any::<u64>(),
                                                     c in 0u64..25, cseed in any::<u64>(), pseed in any::<u64>()) {
                let g = GraphKind::RandomConnected { n, p, seed: gseed }.generate().unwrap();
                let init = crate::oracle::random_config(n, c, cseed).unwrap();
                let limits = SeqLimits { move_budget: 500, ..Default::default() };
                let (_, log) = seq_run_logged(&g, &init, Policy::SeededRandom(pseed), limits).unwrap();
                let mut prev = init.as_slice().to_vec();
                for m in &log {
                    prop_assert!(prev[m.vertex] >= g.degree(m.vertex) as u64);
                    prop_assert_eq!(m.snapshot.iter().sum::<u64>(), c);
                    prev = m.snapshot.clone();
                }
            }
        }
    }
}
