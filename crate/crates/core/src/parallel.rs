//! The candy-passing game: in every round each vertex holding at least its
//! degree in candy sends one candy to every neighbor, all simultaneously.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default number of distinct configurations [`classify`] keeps in memory
/// before switching to constant-memory cycle detection.
pub const DEFAULT_STATE_CAP: usize = 1 << 20;

/// Default number of rounds the constant-memory fallback may simulate.
pub const DEFAULT_ROUND_LIMIT: u64 = 1 << 32;

/// Incremental simulation over reusable buffers. [`run`] and [`classify`]
/// are built on it.
#[derive(Debug, Clone)]
pub struct Game<'g> {
    graph: &'g Graph,
    candy: Vec<u64>,
    next: Vec<u64>,
    firing: Vec<bool>,
    fired: Vec<usize>,
    total: u64,
    round: u64,
}

impl<'g> Game<'g> {
    pub fn new(graph: &'g Graph, init: &Configuration) -> Result<Self> {
        init.check_size(graph)?;
        let n = graph.n();
        Ok(Game {
            graph,
            candy: init.as_slice().to_vec(),
            next: vec![0; n],
            firing: vec![false; n],
            fired: Vec::with_capacity(n),
            total: init.total(),
            round: 0,
        })
    }

    /// Plays one round. Returns whether any vertex's candy changed.
    pub fn advance(&mut self) -> bool {
        let g = self.graph;
        self.fired.clear();
        for v in 0..g.n() {
            let fires = self.candy[v] >= g.degree(v) as u64;
            self.firing[v] = fires;
            if fires {
                self.fired.push(v);
            }
        }
        let mut changed = false;
        for v in 0..g.n() {
            let incoming = g.neighbors(v).iter().filter(|&&w| self.firing[w]).count() as u64;
            let outgoing = if self.firing[v] { g.degree(v) as u64 } else { 0 };
            // outgoing <= candy[v] whenever v fires, so this cannot underflow
            let next = self.candy[v] - outgoing + incoming;
            changed |= next != self.candy[v];
            self.next[v] = next;
        }
        std::mem::swap(&mut self.candy, &mut self.next);
        self.round += 1;
        changed
    }

    /// Rounds played so far.
    pub fn round(&self) -> u64 {
        self.round
    }

    pub fn candy(&self) -> &[u64] {
        &self.candy
    }

    /// Vertices that fired in the latest round, ascending.
    pub fn fired(&self) -> &[usize] {
        &self.fired
    }

    pub fn configuration(&self) -> Configuration {
        Configuration::from_parts_unchecked(self.candy.clone(), self.total)
    }
}

/// One round: the next configuration and the ascending list of vertices
/// that fired.
pub fn step(g: &Graph, conf: &Configuration) -> Result<(Configuration, Vec<usize>)> {
    let mut game = Game::new(g, conf)?;
    game.advance();
    let fired = game.fired().to_vec();
    Ok((game.configuration(), fired))
}

/// Whether a round leaves `conf` unchanged.
///
/// On a connected graph this holds exactly when nobody or everybody fires: a
/// firing vertex keeps its count only if all its neighbors fire too, so the
/// fired set is a union of components. Other graphs fall back to simulating
/// the round.
pub fn is_fixed_point(g: &Graph, conf: &Configuration) -> Result<bool> {
    conf.check_size(g)?;
    if !g.is_connected() {
        return is_fixed_point_direct(g, conf);
    }
    let firing = (0..g.n())
        .filter(|&v| conf[v] >= g.degree(v) as u64)
        .count();
    Ok(firing == 0 || firing == g.n())
}

/// [`is_fixed_point`] by definition: play the round and compare.
pub fn is_fixed_point_direct(g: &Graph, conf: &Configuration) -> Result<bool> {
    let (next, _) = step(g, conf)?;
    Ok(&next == conf)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// The last recorded round left the configuration unchanged.
    FixedPoint,
    /// The round budget ran out first.
    Budget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    /// 1-based round index.
    pub t: u64,
    /// Vertices that fired during the round, ascending.
    pub fired: Vec<usize>,
    /// Configuration after the round.
    pub config: Configuration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameTrace {
    pub initial: Configuration,
    pub rounds: Vec<Round>,
    pub stop: StopReason,
}

impl GameTrace {
    /// Assembles a trace from parts, e.g. a hand-built one for testing the
    /// checkers. Round indices must run 1, 2, ... and sizes must agree.
    pub fn from_parts(initial: Configuration, rounds: Vec<Round>, stop: StopReason) -> Result<Self> {
        let n = initial.len();
        for (i, r) in rounds.iter().enumerate() {
            if r.t != i as u64 + 1 {
                return Err(Error::InvalidParameter(format!(
                    "round at position {i} has index {}",
                    r.t
                )));
            }
            if r.config.len() != n {
                return Err(Error::SizeMismatch { expected: n, found: r.config.len() });
            }
            if r.fired.iter().any(|&v| v >= n) || r.fired.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidParameter(format!(
                    "round {} fired set is not an ascending subset of 0..{n}",
                    r.t
                )));
            }
        }
        Ok(GameTrace { initial, rounds, stop })
    }

    pub fn n(&self) -> usize {
        self.initial.len()
    }

    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    /// Configuration after round `t`; `t = 0` is the initial one.
    pub fn config_at(&self, t: usize) -> &Configuration {
        if t == 0 {
            &self.initial
        } else {
            &self.rounds[t - 1].config
        }
    }

    pub fn final_config(&self) -> &Configuration {
        self.config_at(self.rounds.len())
    }

    /// Smallest `t` whose configuration never changes again, known only when
    /// the trace ended at a fixed point.
    pub fn stab_round(&self) -> Option<u64> {
        match self.stop {
            StopReason::FixedPoint => Some(self.rounds.len() as u64 - 1),
            StopReason::Budget => None,
        }
    }

    /// Cumulative pass counts after the last recorded round.
    pub fn pass_counts(&self) -> Vec<u64> {
        self.pass_count_history().last().map(|(_, p)| p).unwrap_or_else(|| vec![0; self.n()])
    }

    /// `(t, pass_t)` for `t = 0, 1, ..., len()`.
    pub fn pass_count_history(&self) -> PassCountHistory<'_> {
        PassCountHistory { trace: self, counts: vec![0; self.n()], next_t: 0 }
    }

    /// For each vertex, the last round in which its candy changed (0 if it
    /// never did). Vertices may settle before the whole configuration does.
    pub fn vertex_settle_rounds(&self) -> Vec<u64> {
        let mut settle = vec![0u64; self.n()];
        let mut prev = &self.initial;
        for r in &self.rounds {
            for (v, s) in settle.iter_mut().enumerate() {
                if r.config[v] != prev[v] {
                    *s = r.t;
                }
            }
            prev = &r.config;
        }
        settle
    }

    /// CSV export: `t,fired_count,fired_bitmask_hex,candy_0,...` for graphs
    /// with at most 64 vertices, otherwise `t,fired_count,fired_list,...`
    /// with `;`-separated vertex ids. Row `t = 0` holds the initial
    /// configuration with an empty fired set. Hex masks are lowercase with
    /// no prefix; bit `v` is vertex `v`.
    pub fn to_csv(&self) -> String {
        let n = self.n();
        let use_mask = n <= 64;
        let mut out = String::from("t,fired_count,");
        out.push_str(if use_mask { "fired_bitmask_hex" } else { "fired_list" });
        for v in 0..n {
            let _ = write!(out, ",candy_{v}");
        }
        out.push('\n');
        let mut row = |t: u64, fired: &[usize], conf: &Configuration| {
            let _ = write!(out, "{t},{},", fired.len());
            if use_mask {
                let mask = fired.iter().fold(0u64, |m, &v| m | (1 << v));
                let _ = write!(out, "{mask:x}");
            } else {
                let list: Vec<String> = fired.iter().map(usize::to_string).collect();
                out.push_str(&list.join(";"));
            }
            for x in conf.as_slice() {
                let _ = write!(out, ",{x}");
            }
            out.push('\n');
        };
        row(0, &[], &self.initial);
        for r in &self.rounds {
            row(r.t, &r.fired, &r.config);
        }
        out
    }
}

pub struct PassCountHistory<'a> {
    trace: &'a GameTrace,
    counts: Vec<u64>,
    next_t: usize,
}

impl Iterator for PassCountHistory<'_> {
    type Item = (u64, Vec<u64>);

    fn next(&mut self) -> Option<Self::Item> {
        let t = self.next_t;
        if t > self.trace.rounds.len() {
            return None;
        }
        if t > 0 {
            for &v in &self.trace.rounds[t - 1].fired {
                self.counts[v] += 1;
            }
        }
        self.next_t += 1;
        Some((t as u64, self.counts.clone()))
    }
}

/// Plays up to `max_rounds` rounds, stopping after the first round that
/// leaves the configuration unchanged.
pub fn run(g: &Graph, init: &Configuration, max_rounds: u64) -> Result<GameTrace> {
    let mut game = Game::new(g, init)?;
    let mut rounds = Vec::new();
    let mut stop = StopReason::Budget;
    while game.round() < max_rounds {
        let changed = game.advance();
        rounds.push(Round {
            t: game.round(),
            fired: game.fired().to_vec(),
            config: game.configuration(),
        });
        if !changed {
            stop = StopReason::FixedPoint;
            break;
        }
    }
    Ok(GameTrace { initial: init.clone(), rounds, stop })
}

/// Plays exactly `rounds` rounds, continuing through fixed points.
pub fn run_exact(g: &Graph, init: &Configuration, rounds: u64) -> Result<GameTrace> {
    let mut game = Game::new(g, init)?;
    let mut out = Vec::new();
    while game.round() < rounds {
        game.advance();
        out.push(Round {
            t: game.round(),
            fired: game.fired().to_vec(),
            config: game.configuration(),
        });
    }
    Ok(GameTrace { initial: init.clone(), rounds: out, stop: StopReason::Budget })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Stabilized { stab_round: u64, fixed: Configuration },
    EventuallyPeriodic { preperiod: u64, period: u64 },
}

impl Outcome {
    pub fn is_stabilized(&self) -> bool {
        matches!(self, Outcome::Stabilized { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyLimits {
    /// Distinct configurations remembered before switching strategy.
    pub state_cap: usize,
    /// Whether to fall back to Brent's constant-memory cycle detection once
    /// the cap is hit. Without it, hitting the cap is `ResourceExhausted`.
    pub fallback: bool,
    /// Rounds the fallback may simulate.
    pub round_limit: u64,
}

impl Default for ClassifyLimits {
    fn default() -> Self {
        ClassifyLimits {
            state_cap: DEFAULT_STATE_CAP,
            fallback: true,
            round_limit: DEFAULT_ROUND_LIMIT,
        }
    }
}

/// Exact fate of the orbit of `init`.
pub fn classify(g: &Graph, init: &Configuration) -> Result<Outcome> {
    classify_with(g, init, ClassifyLimits::default())
}

pub fn classify_with(g: &Graph, init: &Configuration, limits: ClassifyLimits) -> Result<Outcome> {
    let mut game = Game::new(g, init)?;
    let mut seen: HashMap<Vec<u64>, u64> = HashMap::new();
    if limits.state_cap > 0 {
        seen.insert(init.as_slice().to_vec(), 0);
    }
    loop {
        let changed = game.advance();
        let t = game.round();
        if !changed {
            return Ok(Outcome::Stabilized { stab_round: t - 1, fixed: game.configuration() });
        }
        if let Some(&first) = seen.get(game.candy()) {
            return Ok(Outcome::EventuallyPeriodic { preperiod: first, period: t - first });
        }
        if seen.len() >= limits.state_cap {
            break;
        }
        seen.insert(game.candy().to_vec(), t);
    }
    if !limits.fallback {
        return Err(Error::ResourceExhausted {
            what: "orbit store",
            cap: limits.state_cap as u64,
        });
    }
    drop(seen);
    brent(g, init, limits.round_limit)
}

/// Brent's cycle detection on the orbit of `init`, in constant memory.
fn brent(g: &Graph, init: &Configuration, round_limit: u64) -> Result<Outcome> {
    let exhausted = || Error::ResourceExhausted { what: "cycle detection rounds", cap: round_limit };
    let mut spent: u64 = 0;
    let mut tick = |n: u64| -> Result<()> {
        spent += n;
        if spent > round_limit {
            Err(exhausted())
        } else {
            Ok(())
        }
    };

    // Find the cycle length.
    let mut power: u64 = 1;
    let mut period: u64 = 1;
    let mut tortoise = init.as_slice().to_vec();
    let mut hare = Game::new(g, init)?;
    hare.advance();
    tick(1)?;
    while hare.candy() != tortoise.as_slice() {
        if power == period {
            tortoise.copy_from_slice(hare.candy());
            power *= 2;
            period = 0;
        }
        hare.advance();
        tick(1)?;
        period += 1;
    }

    // Find where it starts: run two copies `period` rounds apart.
    let mut lead = Game::new(g, init)?;
    for _ in 0..period {
        lead.advance();
    }
    let mut trail = Game::new(g, init)?;
    tick(period)?;
    let mut preperiod = 0;
    while lead.candy() != trail.candy() {
        lead.advance();
        trail.advance();
        tick(2)?;
        preperiod += 1;
    }
    Ok(if period == 1 {
        Outcome::Stabilized { stab_round: preperiod, fixed: trail.configuration() }
    } else {
        Outcome::EventuallyPeriodic { preperiod, period }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphKind;

    fn conf(v: &[u64]) -> Configuration {
        Configuration::new(v.to_vec()).unwrap()
    }

    fn c3() -> Graph {
        GraphKind::Cycle(3).generate().unwrap()
    }

    fn c4() -> Graph {
        GraphKind::Cycle(4).generate().unwrap()
    }

    fn p3() -> Graph {
        GraphKind::Path(3).generate().unwrap()
    }

    #[test]
    fn single_steps() {
        assert_eq!(step(&c3(), &conf(&[9, 0, 0])).unwrap(), (conf(&[7, 1, 1]), vec![0]));
        assert_eq!(step(&c4(), &conf(&[2, 0, 2, 0])).unwrap(), (conf(&[0, 2, 0, 2]), vec![0, 2]));
        let g = GraphKind::Complete(5).generate().unwrap();
        assert_eq!(step(&g, &Configuration::zeros(5)).unwrap(), (Configuration::zeros(5), vec![]));
        assert_eq!(
            step(&c3(), &conf(&[1, 1])),
            Err(Error::SizeMismatch { expected: 3, found: 2 })
        );
    }

    #[test]
    fn fixed_points() {
        assert!(is_fixed_point(&c3(), &conf(&[5, 2, 2])).unwrap());
        assert!(is_fixed_point(&c3(), &conf(&[1, 1, 1])).unwrap());
        assert!(!is_fixed_point(&c4(), &conf(&[2, 0, 2, 0])).unwrap());

        // Two disjoint edges: one component firing, the other idle, is fixed
        // although the fired set is neither empty nor everything.
        let split = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(is_fixed_point(&split, &conf(&[1, 1, 0, 0])).unwrap());
        assert!(!is_fixed_point(&split, &conf(&[1, 0, 0, 0])).unwrap());
    }

    #[test]
    fn run_triangle_to_fixed_point() {
        let trace = run(&c3(), &conf(&[9, 0, 0]), 27).unwrap();
        assert_eq!(trace.stop, StopReason::FixedPoint);
        let configs: Vec<_> = trace.rounds.iter().map(|r| r.config.clone()).collect();
        assert_eq!(configs, vec![conf(&[7, 1, 1]), conf(&[5, 2, 2]), conf(&[5, 2, 2])]);
        assert_eq!(trace.pass_counts(), vec![3, 1, 1]);
        assert_eq!(trace.stab_round(), Some(2));
    }

    #[test]
    fn run_path_to_fixed_point() {
        let trace = run(&p3(), &conf(&[5, 0, 0]), 30).unwrap();
        assert_eq!(trace.stop, StopReason::FixedPoint);
        assert_eq!(trace.len(), 6);
        assert_eq!(trace.final_config(), &conf(&[2, 2, 1]));
        assert_eq!(trace.stab_round(), Some(5));
    }

    #[test]
    fn run_square_oscillates() {
        let trace = run(&c4(), &conf(&[2, 0, 2, 0]), 10).unwrap();
        assert_eq!(trace.stop, StopReason::Budget);
        assert_eq!(trace.len(), 10);
        for r in &trace.rounds {
            let expect = if r.t % 2 == 1 { [0, 2, 0, 2] } else { [2, 0, 2, 0] };
            assert_eq!(r.config, conf(&expect));
        }
        assert_eq!(trace.stab_round(), None);
    }

    #[test]
    fn zero_budget_records_nothing() {
        let trace = run(&c3(), &conf(&[9, 0, 0]), 0).unwrap();
        assert!(trace.is_empty());
        assert_eq!(trace.final_config(), &conf(&[9, 0, 0]));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&c3(), &conf(&[9, 0, 0])).unwrap(),
            Outcome::Stabilized { stab_round: 2, fixed: conf(&[5, 2, 2]) }
        );
        assert_eq!(
            classify(&c4(), &conf(&[2, 0, 2, 0])).unwrap(),
            Outcome::EventuallyPeriodic { preperiod: 0, period: 2 }
        );
        for g in [c3(), c4(), p3()] {
            assert_eq!(
                classify(&g, &Configuration::zeros(g.n())).unwrap(),
                Outcome::Stabilized { stab_round: 0, fixed: Configuration::zeros(g.n()) }
            );
        }
    }

    #[test]
    fn single_vertex_is_fixed_at_zero() {
        let g = Graph::from_edges(1, &[]).unwrap();
        let c = conf(&[7]);
        assert!(is_fixed_point(&g, &c).unwrap());
        assert_eq!(
            classify(&g, &c).unwrap(),
            Outcome::Stabilized { stab_round: 0, fixed: c.clone() }
        );
        assert_eq!(step(&g, &c).unwrap().1, vec![0]);
    }

    #[test]
    fn cap_without_fallback_is_exhausted() {
        let limits = ClassifyLimits { state_cap: 1, fallback: false, ..Default::default() };
        // P_3 from [5,0,0] visits six distinct states before its fixed point.
        assert!(matches!(
            classify_with(&p3(), &conf(&[5, 0, 0]), limits),
            Err(Error::ResourceExhausted { .. })
        ));
    }

    #[test]
    fn brent_fallback_agrees_with_store() {
        let g = GraphKind::Cycle(7).generate().unwrap();
        for seed in 0..40 {
            let init = crate::oracle::random_config(7, 12 + seed % 9, seed).unwrap();
            let exact = classify(&g, &init).unwrap();
            for cap in [0, 1, 3] {
                let limits = ClassifyLimits { state_cap: cap, ..Default::default() };
                assert_eq!(classify_with(&g, &init, limits).unwrap(), exact, "seed {seed} cap {cap}");
            }
        }
        let limits = ClassifyLimits { state_cap: 0, fallback: true, round_limit: 2 };
        assert!(matches!(
            classify_with(&p3(), &conf(&[5, 0, 0]), limits),
            Err(Error::ResourceExhausted { .. })
        ));
    }

    #[test]
    fn csv_export() {
        let trace = run(&c3(), &conf(&[9, 0, 0]), 27).unwrap();
        assert_eq!(
            trace.to_csv(),
            "t,fired_count,fired_bitmask_hex,candy_0,candy_1,candy_2\n\
             0,0,0,9,0,0\n\
             1,1,1,7,1,1\n\
             2,1,1,5,2,2\n\
             3,3,7,5,2,2\n"
        );
        let big = GraphKind::Cycle(65).generate().unwrap();
        let trace = run(&big, &Configuration::concentrated(65, 4, 64).unwrap(), 1).unwrap();
        let csv = trace.to_csv();
        assert!(csv.starts_with("t,fired_count,fired_list,candy_0,"));
        assert!(csv.lines().nth(2).unwrap().starts_with("1,1,64,1,"));
    }

    #[test]
    fn pass_history_and_settle_rounds() {
        let trace = run_exact(&c3(), &conf(&[9, 0, 0]), 5).unwrap();
        let history: Vec<_> = trace.pass_count_history().collect();
        assert_eq!(history.len(), 6);
        assert_eq!(history[0], (0, vec![0, 0, 0]));
        assert_eq!(history[5], (5, vec![5, 3, 3]));
        assert_eq!(trace.vertex_settle_rounds(), vec![2, 2, 2]);

        let trace = run(&p3(), &conf(&[5, 0, 0]), 30).unwrap();
        assert_eq!(trace.vertex_settle_rounds(), vec![4, 5, 5]);
    }

    #[test]
    fn synthetic_traces_are_validated() {
        let bad = Round { t: 2, fired: vec![], config: conf(&[1, 0]) };
        assert!(GameTrace::from_parts(conf(&[1, 0]), vec![bad], StopReason::Budget).is_err());
        let unsorted = Round { t: 1, fired: vec![1, 0], config: conf(&[1, 0]) };
        assert!(GameTrace::from_parts(conf(&[1, 0]), vec![unsorted], StopReason::Budget).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn instance() -> impl Strategy<Value = (Graph, Configuration)> {
            (2usize..10, 0.2f64..0.8, any::<u64>(), 0u64..60, any::<u64>()).prop_map(
                |(n, p, gseed, c, cseed)| {
                    let g = GraphKind::RandomConnected { n, p, seed: gseed }.generate().unwrap();
                    let init = crate::oracle::random_config(n, c, cseed).unwrap();
                    (g, init)
                },
            )
        }

        proptest! {
            #[test]
            fn step_conserves_and_matches_rule((g, init) in instance()) {
                let (next, fired) = step(&g, &init).unwrap();
                prop_assert_eq!(next.total(), init.total());
                prop_assert_eq!(next.as_slice().iter().sum::<u64>(), init.total());
                for v in 0..g.n() {
                    let fires = init[v] >= g.degree(v) as u64;
                    prop_assert_eq!(fires, fired.contains(&v));
                    let incoming = g.neighbors(v).iter().filter(|w| fired.contains(w)).count() as i64;
                    let expect = init[v] as i64 - if fires { g.degree(v) as i64 } else { 0 } + incoming;
                    prop_assert_eq!(next[v] as i64, expect);
                }
            }

            #[test]
            fn fixed_point_shortcut_matches_definition((g, init) in instance()) {
                prop_assert_eq!(
                    is_fixed_point(&g, &init).unwrap(),
                    is_fixed_point_direct(&g, &init).unwrap()
                );
            }

            #[test]
            fn runs_are_deterministic((g, init) in instance()) {
                prop_assert_eq!(run(&g, &init, 200).unwrap(), run(&g, &init, 200).unwrap());
            }

            #[test]
            fn classify_is_consistent_with_run((g, init) in instance()) {
                match classify(&g, &init).unwrap() {
                    Outcome::Stabilized { stab_round, fixed } => {
                        prop_assert!(is_fixed_point(&g, &fixed).unwrap());
                        let trace = run(&g, &init, stab_round + 1).unwrap();
                        prop_assert_eq!(trace.stab_round(), Some(stab_round));
                        prop_assert_eq!(trace.final_config(), &fixed);
                    }
                    Outcome::EventuallyPeriodic { preperiod, period } => {
                        prop_assert!(period >= 2);
                        let trace = run_exact(&g, &init, preperiod + 2 * period).unwrap();
                        let start = preperiod as usize;
                        prop_assert_eq!(trace.config_at(start), trace.config_at(start + period as usize));
                        for k in 1..period as usize {
                            prop_assert_ne!(trace.config_at(start), trace.config_at(start + k));
                        }
                        if preperiod > 0 {
                            prop_assert_ne!(
                                trace.config_at(start - 1),
                                trace.config_at(start - 1 + period as usize)
                            );
                        }
                    }
                }
            }
        }
    }
}
