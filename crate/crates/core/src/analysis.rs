//! Executable checks of the stabilization results, applied to game traces,
//! plus experiment sweeps and exhaustive threshold probing.
//!
//! Every check produces a [`CheckResult`] inside a [`VerificationReport`].
//! Check names are stable and double as JSON keys:
//!
//! | name | property |
//! |---|---|
//! | `conservation` | total candy equals `c` after every round |
//! | `no_gain` | a vertex that fires never ends the round with more candy |
//! | `abundant_monotone` | the set of vertices holding `>= 2 deg(v)` never grows |
//! | `lemma1_adjacent` | `|pass_t(v) - pass_t(v')| <= c` on every edge, every round |
//! | `lemma1_distance` | `|pass_t(v) - pass_t(w)| <= dist(v, w) c` on every pair |
//! | `lemma2_nonempty_fired` | some vertex fires in every round |
//! | `lemma2_always_firing` | one vertex (`v_star`) fires in every recorded round |
//! | `lemma2_pigeonhole` | a vertex with `<= 2 deg(v) - 2` forces one with `>= 2 deg(v')` |
//! | `theorem_bound` | a fixed point is reached by round `n d c` |
//! | `theorem_idle_gap` | no vertex idles more than `d c` consecutive rounds before stabilizing |
//! | `stabilizes` | the orbit reaches a fixed point at all |
//!
//! The lemma and theorem checks need `c >= 4m - n` and are `not_applicable`
//! below it.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphKind, GraphSummary, UNREACHABLE};
use crate::oracle::{self, Verdict};
use crate::parallel::{self, ClassifyLimits, GameTrace, Outcome, StopReason};
use crate::rng;

pub const CORE_CHECKS: &[&str] = &["conservation", "no_gain", "abundant_monotone"];
pub const LEMMA1_CHECKS: &[&str] = &["lemma1_adjacent", "lemma1_distance"];
pub const LEMMA2_CHECKS: &[&str] = &["lemma2_nonempty_fired", "lemma2_always_firing", "lemma2_pigeonhole"];
pub const THEOREM_CHECKS: &[&str] = &["theorem_bound", "theorem_idle_gap"];

const FINITE_PREFIX_NOTE: &str = "trace ends at a fixed point where every vertex fires in every later round, \
     so checking the recorded prefix covers the whole game";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

/// First violation found by a check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub round: u64,
    /// One vertex, or the pair involved.
    pub vertices: Vec<usize>,
    pub observed: u64,
    pub bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    fn pass(name: &str) -> Self {
        CheckResult { name: name.into(), status: Status::Pass, counterexample: None, detail: None }
    }

    fn not_applicable(name: &str, why: &str) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::NotApplicable,
            counterexample: None,
            detail: Some(why.into()),
        }
    }

    fn fail(name: &str, cx: Counterexample, detail: String) -> Self {
        CheckResult { name: name.into(), status: Status::Fail, counterexample: Some(cx), detail: Some(detail) }
    }

    fn from_first(name: &str, first: Option<(Counterexample, String)>) -> Self {
        match first {
            None => CheckResult::pass(name),
            Some((cx, detail)) => CheckResult::fail(name, cx, detail),
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn describe(&self) -> String {
        match &self.detail {
            Some(d) => format!("{}: {d}", self.name),
            None => self.name.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportMeta {
    pub graph: GraphSummary,
    pub initial: Configuration,
    pub c: u64,
    pub threshold: i64,
    pub diameter: Option<u32>,
    /// `n d c`.
    pub bound: Option<u64>,
    pub stab_round: Option<u64>,
    /// `bound - stab_round`.
    pub slack: Option<i128>,
    pub v_star: Option<usize>,
    pub notes: Vec<String>,
}

impl ReportMeta {
    fn new(g: &Graph, initial: &Configuration) -> Self {
        let c = initial.total();
        let diameter = g.diameter().ok();
        ReportMeta {
            graph: g.summary(),
            initial: initial.clone(),
            c,
            threshold: g.candy_threshold(),
            diameter,
            bound: diameter.and_then(|d| stabilization_bound(g.n(), d, c)),
            stab_round: None,
            slack: None,
            v_star: None,
            notes: Vec::new(),
        }
    }

    fn above_threshold(&self) -> bool {
        self.c as i128 >= self.threshold as i128
    }

    fn note(&mut self, s: &str) {
        if !self.notes.iter().any(|n| n == s) {
            self.notes.push(s.into());
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub meta: ReportMeta,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn status(&self, name: &str) -> Option<Status> {
        self.get(name).map(|c| c.status)
    }

    /// Copy restricted to the named checks.
    pub fn only(&self, names: &[&str]) -> Self {
        VerificationReport {
            checks: self.checks.iter().filter(|c| names.contains(&c.name.as_str())).cloned().collect(),
            meta: self.meta.clone(),
        }
    }

    fn absorb(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        let m = other.meta;
        self.meta.stab_round = self.meta.stab_round.or(m.stab_round);
        self.meta.slack = self.meta.slack.or(m.slack);
        self.meta.v_star = self.meta.v_star.or(m.v_star);
        for note in m.notes {
            self.meta.note(&note);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

/// `n d c`, or `None` on overflow.
pub fn stabilization_bound(n: usize, diameter: u32, c: u64) -> Option<u64> {
    (n as u64).checked_mul(diameter as u64)?.checked_mul(c)
}

/// Conservation, no-gain for firing vertices, and abundant-set monotonicity
/// over every round of `trace`.
pub fn check_core_invariants(g: &Graph, trace: &GameTrace) -> Result<VerificationReport> {
    trace.initial.check_size(g)?;
    let c = trace.initial.total();
    let mut conservation = None;
    let mut no_gain = None;
    let mut monotone = None;

    let mut prev = &trace.initial;
    for r in &trace.rounds {
        let cur = &r.config;
        cur.check_size(g)?;
        if conservation.is_none() {
            let sum: u128 = cur.as_slice().iter().map(|&x| x as u128).sum();
            if sum != c as u128 {
                conservation = Some((
                    Counterexample { round: r.t, vertices: vec![], observed: sum as u64, bound: c },
                    format!("round {} holds {sum} candies, expected {c}", r.t),
                ));
            }
        }
        for v in 0..g.n() {
            let deg = g.degree(v) as u64;
            if no_gain.is_none() && prev[v] >= deg && cur[v] > prev[v] {
                no_gain = Some((
                    Counterexample { round: r.t, vertices: vec![v], observed: cur[v], bound: prev[v] },
                    format!("vertex {v} could fire with {} but ended round {} with {}", prev[v], r.t, cur[v]),
                ));
            }
            if monotone.is_none() && cur[v] >= 2 * deg && prev[v] < 2 * deg {
                monotone = Some((
                    Counterexample { round: r.t, vertices: vec![v], observed: cur[v], bound: 2 * deg },
                    format!("vertex {v} became abundant in round {}", r.t),
                ));
            }
        }
        if conservation.is_some() && no_gain.is_some() && monotone.is_some() {
            break;
        }
        prev = cur;
    }

    Ok(VerificationReport {
        checks: vec![
            CheckResult::from_first("conservation", conservation),
            CheckResult::from_first("no_gain", no_gain),
            CheckResult::from_first("abundant_monotone", monotone),
        ],
        meta: ReportMeta::new(g, &trace.initial),
    })
}

/// Pass-count gaps: at most `c` across an edge, at most `dist(v, w) c`
/// between any two vertices, for every recorded round.
pub fn check_lemma1(g: &Graph, trace: &GameTrace) -> Result<VerificationReport> {
    trace.initial.check_size(g)?;
    let c = trace.initial.total();
    let mut adjacent = None;
    let mut distance = None;
    for (t, pass) in trace.pass_count_history() {
        if adjacent.is_none() {
            for &(u, v) in g.edges() {
                let gap = pass[u].abs_diff(pass[v]);
                if gap > c {
                    adjacent = Some((
                        Counterexample { round: t, vertices: vec![u, v], observed: gap, bound: c },
                        format!("edge ({u}, {v}) pass counts differ by {gap} > c = {c} after round {t}"),
                    ));
                    break;
                }
            }
        }
        if distance.is_none() {
            'pairs: for u in 0..g.n() {
                for w in u + 1..g.n() {
                    let d = g.distance(u, w);
                    if d == UNREACHABLE {
                        continue;
                    }
                    let gap = pass[u].abs_diff(pass[w]);
                    let limit = (d as u64).saturating_mul(c);
                    if gap > limit {
                        distance = Some((
                            Counterexample { round: t, vertices: vec![u, w], observed: gap, bound: limit },
                            format!("pair ({u}, {w}) at distance {d} differs by {gap} > {limit} after round {t}"),
                        ));
                        break 'pairs;
                    }
                }
            }
        }
        if adjacent.is_some() && distance.is_some() {
            break;
        }
    }
    Ok(VerificationReport {
        checks: vec![
            CheckResult::from_first("lemma1_adjacent", adjacent),
            CheckResult::from_first("lemma1_distance", distance),
        ],
        meta: ReportMeta::new(g, &trace.initial),
    })
}

/// Ascending intersection of the fired sets of every recorded round.
pub fn always_firing(trace: &GameTrace) -> Vec<usize> {
    let mut common: Vec<usize> = (0..trace.n()).collect();
    for r in &trace.rounds {
        common.retain(|v| r.fired.binary_search(v).is_ok());
        if common.is_empty() {
            break;
        }
    }
    common
}

/// Whether `conf` breaks the counting step behind the always-firing vertex:
/// returns the starved vertex when some vertex holds `<= 2 deg(v) - 2` while
/// no vertex holds `>= 2 deg(v')`.
pub fn pigeonhole_violation(g: &Graph, conf: &Configuration) -> Option<usize> {
    let starved = (0..g.n()).find(|&v| (conf[v] as i128) <= 2 * g.degree(v) as i128 - 2)?;
    let any_abundant = (0..g.n()).any(|v| conf[v] >= 2 * g.degree(v) as u64);
    (!any_abundant).then_some(starved)
}

/// Nonempty fired sets, a vertex firing in every round, and the pigeonhole
/// step on every visited configuration. Requires `c >= 4m - n`.
pub fn check_lemma2(g: &Graph, trace: &GameTrace) -> Result<VerificationReport> {
    trace.initial.check_size(g)?;
    let mut meta = ReportMeta::new(g, &trace.initial);
    if !meta.above_threshold() {
        let why = format!("c = {} is below 4m - n = {}", meta.c, meta.threshold);
        return Ok(VerificationReport {
            checks: LEMMA2_CHECKS.iter().map(|n| CheckResult::not_applicable(n, &why)).collect(),
            meta,
        });
    }

    let nonempty = trace
        .rounds
        .iter()
        .find(|r| r.fired.is_empty())
        .map(|r| {
            (
                Counterexample { round: r.t, vertices: vec![], observed: 0, bound: 1 },
                format!("nobody fired in round {}", r.t),
            )
        });

    let always = if trace.is_empty() {
        CheckResult::not_applicable("lemma2_always_firing", "trace has no rounds")
    } else {
        let common = always_firing(trace);
        meta.v_star = common.first().copied();
        match meta.v_star {
            Some(_) => CheckResult::pass("lemma2_always_firing"),
            None => {
                // report the round at which the running intersection emptied
                let mut alive: Vec<usize> = (0..trace.n()).collect();
                let mut round = 0;
                for r in &trace.rounds {
                    alive.retain(|v| r.fired.binary_search(v).is_ok());
                    if alive.is_empty() {
                        round = r.t;
                        break;
                    }
                }
                CheckResult::fail(
                    "lemma2_always_firing",
                    Counterexample { round, vertices: vec![], observed: 0, bound: 1 },
                    format!("no vertex fired in every round 1..={round}"),
                )
            }
        }
    };

    let pigeonhole = (0..=trace.len()).find_map(|t| {
        pigeonhole_violation(g, trace.config_at(t)).map(|v| {
            (
                Counterexample { round: t as u64, vertices: vec![v], observed: trace.config_at(t)[v], bound: 0 },
                format!("vertex {v} is starved after round {t} but no vertex is abundant"),
            )
        })
    });

    match trace.stop {
        StopReason::FixedPoint => meta.note(FINITE_PREFIX_NOTE),
        StopReason::Budget => meta.note("trace ended on its round budget; only the recorded prefix was checked"),
    }

    Ok(VerificationReport {
        checks: vec![
            CheckResult::from_first("lemma2_nonempty_fired", nonempty),
            always,
            CheckResult::from_first("lemma2_pigeonhole", pigeonhole),
        ],
        meta,
    })
}

/// Longest run of consecutive rounds in `1..=last` in which `v` did not fire,
/// with the round that run ends at.
fn longest_idle_run(trace: &GameTrace, v: usize, last: usize) -> (u64, u64) {
    let mut best = (0, 0);
    let mut run = 0;
    for r in &trace.rounds[..last] {
        if r.fired.binary_search(&v).is_ok() {
            run = 0;
        } else {
            run += 1;
            if run > best.0 {
                best = (run, r.t);
            }
        }
    }
    best
}

/// Stabilization within `n d c` rounds and the idle-gap bound `d c`, judged
/// on an existing trace. The trace must extend to its fixed point or past
/// round `n d c` for a verdict.
pub fn check_theorem_trace(g: &Graph, trace: &GameTrace) -> Result<VerificationReport> {
    g.require_checkable()?;
    trace.initial.check_size(g)?;
    let mut meta = ReportMeta::new(g, &trace.initial);
    if !meta.above_threshold() {
        let why = format!("c = {} is below 4m - n = {}", meta.c, meta.threshold);
        return Ok(VerificationReport {
            checks: THEOREM_CHECKS.iter().map(|n| CheckResult::not_applicable(n, &why)).collect(),
            meta,
        });
    }
    let d = meta.diameter.expect("connected graphs have a diameter");
    let bound = meta.bound.ok_or(Error::Overflow("n * d * c does not fit in 64 bits"))?;
    let gap_limit = d as u64 * meta.c;

    meta.stab_round = trace.stab_round();
    let bound_check = match meta.stab_round {
        Some(s) => {
            meta.slack = Some(bound as i128 - s as i128);
            if s <= bound {
                CheckResult::pass("theorem_bound").with_detail(format!("stab_round {s} <= {bound}"))
            } else {
                CheckResult::fail(
                    "theorem_bound",
                    Counterexample { round: s, vertices: vec![], observed: s, bound },
                    format!("stabilized at round {s} > n d c = {bound}"),
                )
            }
        }
        None if trace.len() as u64 > bound => CheckResult::fail(
            "theorem_bound",
            Counterexample { round: trace.len() as u64, vertices: vec![], observed: trace.len() as u64, bound },
            format!("no fixed point within {} rounds; bound is {bound}", trace.len()),
        ),
        None => CheckResult::not_applicable(
            "theorem_bound",
            &format!("trace stops at round {} before a verdict", trace.len()),
        ),
    };

    // Idle gaps are measured up to stabilization, or over the whole trace
    // when it never got there.
    let last = meta.stab_round.map_or(trace.len(), |s| s as usize);
    let gap = (0..g.n()).find_map(|v| {
        let (len, ends) = longest_idle_run(trace, v, last);
        (len > gap_limit).then(|| {
            (
                Counterexample { round: ends, vertices: vec![v], observed: len, bound: gap_limit },
                format!("vertex {v} idled {len} consecutive rounds ending at {ends}; limit d c = {gap_limit}"),
            )
        })
    });

    Ok(VerificationReport {
        checks: vec![bound_check, CheckResult::from_first("theorem_idle_gap", gap)],
        meta,
    })
}

/// Plays the game from `init` for up to `n d c + 1` rounds and checks the
/// stabilization bound on the result.
pub fn check_theorem(g: &Graph, init: &Configuration) -> Result<VerificationReport> {
    g.require_checkable()?;
    init.check_size(g)?;
    let meta = ReportMeta::new(g, init);
    if !meta.above_threshold() {
        return check_theorem_trace(g, &GameTrace::from_parts(init.clone(), vec![], StopReason::Budget)?);
    }
    let bound = meta.bound.ok_or(Error::Overflow("n * d * c does not fit in 64 bits"))?;
    let trace = parallel::run(g, init, bound.saturating_add(1))?;
    check_theorem_trace(g, &trace)
}

/// Every check on the game from `init`, plus `stabilizes`. Returns the trace
/// the checks ran on: up to the fixed point, or one full preperiod and period
/// when the game never stabilizes.
pub fn verify_instance(g: &Graph, init: &Configuration) -> Result<(VerificationReport, GameTrace)> {
    verify_instance_with(g, init, ClassifyLimits::default())
}

pub fn verify_instance_with(
    g: &Graph,
    init: &Configuration,
    limits: ClassifyLimits,
) -> Result<(VerificationReport, GameTrace)> {
    g.require_checkable()?;
    init.check_size(g)?;
    let outcome = parallel::classify_with(g, init, limits)?;
    let (trace, stabilizes) = match outcome {
        Outcome::Stabilized { stab_round, .. } => {
            (parallel::run(g, init, stab_round + 1)?, CheckResult::pass("stabilizes"))
        }
        Outcome::EventuallyPeriodic { preperiod, period } => (
            parallel::run_exact(g, init, preperiod + period)?,
            CheckResult::fail(
                "stabilizes",
                Counterexample { round: preperiod, vertices: vec![], observed: period, bound: 1 },
                format!("eventually periodic: preperiod {preperiod}, period {period}"),
            ),
        ),
    };
    let mut report = check_core_invariants(g, &trace)?;
    report.absorb(check_lemma1(g, &trace)?);
    report.absorb(check_lemma2(g, &trace)?);
    report.absorb(check_theorem_trace(g, &trace)?);
    report.checks.push(stabilizes);
    Ok((report, trace))
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub d: u32,
    pub c: u64,
    pub threshold: i64,
    pub trial: u64,
    pub config_seed: u64,
    /// `stabilized` or `periodic`.
    pub outcome: String,
    pub stab_round: Option<u64>,
    pub preperiod: Option<u64>,
    pub period: Option<u64>,
    pub bound: u64,
    pub slack: Option<i128>,
    /// `-1` when no vertex fired in every round.
    pub v_star: i64,
    pub abundant_initial: usize,
    pub abundant_final: usize,
}

pub const SWEEP_HEADER: &str = "graph,n,m,d,c,threshold,trial,config_seed,outcome,stab_round,preperiod,period,bound,slack,v_star,abundant_initial,abundant_final";

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(T::to_string).unwrap_or_default()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.graph,
            r.n,
            r.m,
            r.d,
            r.c,
            r.threshold,
            r.trial,
            r.config_seed,
            r.outcome,
            opt(&r.stab_round),
            opt(&r.preperiod),
            opt(&r.period),
            r.bound,
            opt(&r.slack),
            r.v_star,
            r.abundant_initial,
            r.abundant_final
        );
    }
    out
}

/// Seed for trial `trial` of the `c_index`-th candy total.
fn trial_seed(seed: u64, c_index: usize, trial: u64) -> u64 {
    rng::derive(rng::derive(seed, c_index as u64), trial)
}

fn sweep_row(g: &Graph, label: &str, c: u64, trial: u64, config_seed: u64) -> Result<SweepRow> {
    let init = oracle::random_config(g.n(), c, config_seed)?;
    let d = g.diameter()?;
    let bound = stabilization_bound(g.n(), d, c).ok_or(Error::Overflow("n * d * c does not fit in 64 bits"))?;
    let outcome = parallel::classify(g, &init)?;
    let (trace, stab_round, preperiod, period) = match outcome {
        Outcome::Stabilized { stab_round, .. } => {
            (parallel::run(g, &init, stab_round + 1)?, Some(stab_round), None, None)
        }
        Outcome::EventuallyPeriodic { preperiod, period } => {
            (parallel::run_exact(g, &init, preperiod + period)?, None, Some(preperiod), Some(period))
        }
    };
    Ok(SweepRow {
        graph: label.into(),
        n: g.n(),
        m: g.m(),
        d,
        c,
        threshold: g.candy_threshold(),
        trial,
        config_seed,
        outcome: if stab_round.is_some() { "stabilized" } else { "periodic" }.into(),
        stab_round,
        preperiod,
        period,
        bound,
        slack: stab_round.map(|s| bound as i128 - s as i128),
        v_star: always_firing(&trace).first().map_or(-1, |&v| v as i64),
        abundant_initial: init.abundant(g).len(),
        abundant_final: trace.final_config().abundant(g).len(),
    })
}

/// One row per `(c, trial)` on the graph built from `family`, each from a
/// uniformly random starting distribution. Trials run in parallel; row order
/// is always `(c, trial)`.
pub fn sweep_experiment(family: &GraphKind, c_values: &[u64], trials: u64, seed: u64) -> Result<Vec<SweepRow>> {
    let g = family.generate()?;
    g.require_checkable()?;
    let label = family.to_string();
    let jobs: Vec<(u64, u64, u64)> = c_values
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| (0..trials).map(move |t| (c, t, trial_seed(seed, i, t))))
        .collect();
    jobs.par_iter()
        .map(|&(c, trial, s)| sweep_row(&g, &label, c, trial, s))
        .collect()
}

// ---------------------------------------------------------------------------
// Random instance suite
// ---------------------------------------------------------------------------

/// One random `(graph, configuration)` instance at the threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub index: u64,
    pub kind: GraphKind,
    pub graph: Graph,
    pub init: Configuration,
    pub config_seed: u64,
}

/// Instance `index` of the suite seeded with `seed`: a random tree or a
/// connected `G(n, 0.4)` on `2..=max_n` vertices, with `c = 4m - n` candies
/// distributed uniformly at random.
pub fn random_instance(index: u64, max_n: usize, seed: u64) -> Result<Instance> {
    if max_n < 2 {
        return Err(Error::InvalidParameter("instances need at least two vertices".into()));
    }
    let graph_seed = rng::derive(seed, 2 * index);
    let config_seed = rng::derive(seed, 2 * index + 1);
    let n = 2 + (graph_seed % (max_n as u64 - 1)) as usize;
    let kind = if rng::mix64(graph_seed).is_multiple_of(2) {
        GraphKind::RandomTree { n, seed: graph_seed }
    } else {
        GraphKind::RandomConnected { n, p: 0.4, seed: graph_seed }
    };
    let graph = kind.generate()?;
    let c = graph.candy_threshold() as u64;
    let init = oracle::random_config(n, c, config_seed)?;
    Ok(Instance { index, kind, graph, init, config_seed })
}

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub instances: Vec<Instance>,
    pub reports: Vec<VerificationReport>,
}

pub const SUITE_HEADER: &str = "index,graph,n,m,d,c,config_seed,stab_round,bound,slack,v_star,failed_checks";

impl SuiteResult {
    pub fn failures(&self) -> impl Iterator<Item = (&Instance, &VerificationReport)> {
        self.instances.iter().zip(&self.reports).filter(|(_, r)| !r.passed())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(SUITE_HEADER);
        out.push('\n');
        for (inst, rep) in self.instances.iter().zip(&self.reports) {
            let failed: Vec<&str> = rep
                .checks
                .iter()
                .filter(|c| c.status == Status::Fail)
                .map(|c| c.name.as_str())
                .collect();
            let m = &rep.meta;
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                inst.index,
                inst.kind.to_string().replace(',', ";"),
                inst.graph.n(),
                inst.graph.m(),
                opt(&m.diameter),
                m.c,
                inst.config_seed,
                opt(&m.stab_round),
                opt(&m.bound),
                opt(&m.slack),
                m.v_star.map_or(-1, |v| v as i64),
                failed.join(";")
            );
        }
        out
    }
}

/// Runs [`verify_instance`] on `count` random threshold instances.
pub fn random_instance_suite(count: u64, max_n: usize, seed: u64) -> Result<SuiteResult> {
    let instances: Vec<Instance> = (0..count)
        .into_par_iter()
        .map(|i| random_instance(i, max_n, seed))
        .collect::<Result<_>>()?;
    let reports = instances
        .par_iter()
        .map(|inst| verify_instance(&inst.graph, &inst.init).map(|(r, _)| r))
        .collect::<Result<_>>()?;
    Ok(SuiteResult { instances, reports })
}

// ---------------------------------------------------------------------------
// Threshold probe
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeEntry {
    pub c: u64,
    pub configs: u64,
    pub all_stabilize: bool,
    /// Lexicographically first configuration that never stabilizes.
    pub counterexample: Option<Configuration>,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdProbe {
    pub entries: Vec<ProbeEntry>,
    /// Least `c` such that every total in `c..=c_max` always stabilizes.
    pub c_star: Option<u64>,
    /// Whether "every configuration stabilizes" never switches back off as
    /// `c` grows within the probed range.
    pub monotone: bool,
    pub threshold: i64,
    /// `c_star <= 4m - n`; `None` when `c_max` is below the threshold.
    pub c_star_within_threshold: Option<bool>,
}

/// For every `c` in `0..=c_max`, whether all compositions of `c` stabilize.
pub fn threshold_probe(g: &Graph, c_max: u64) -> Result<ThresholdProbe> {
    threshold_probe_with(g, c_max, &oracle::ExhaustiveOptions::default())
}

pub fn threshold_probe_with(g: &Graph, c_max: u64, opts: &oracle::ExhaustiveOptions) -> Result<ThresholdProbe> {
    g.require_checkable()?;
    let mut entries = Vec::new();
    for c in 0..=c_max {
        let count = oracle::composition_count(g.n(), c)?;
        let verdict = oracle::exhaustive_verify_with(g, c, oracle::Property::Stabilizes, opts)?;
        let configs = num_traits::ToPrimitive::to_u64(&count).expect("capped counts fit in u64");
        entries.push(match verdict {
            Verdict::Pass { .. } => ProbeEntry { c, configs, all_stabilize: true, counterexample: None, detail: None },
            Verdict::Counterexample { config, detail, .. } => ProbeEntry {
                c,
                configs,
                all_stabilize: false,
                counterexample: Some(config),
                detail: Some(detail),
            },
        });
    }
    let c_star = entries
        .iter()
        .rev()
        .take_while(|e| e.all_stabilize)
        .last()
        .map(|e| e.c);
    let first_good = entries.iter().position(|e| e.all_stabilize);
    let monotone = first_good.is_none_or(|i| entries[i..].iter().all(|e| e.all_stabilize));
    let threshold = g.candy_threshold();
    let c_star_within_threshold =
        (c_max as i128 >= threshold as i128).then(|| c_star.is_some_and(|s| s as i128 <= threshold as i128));
    Ok(ThresholdProbe { entries, c_star, monotone, threshold, c_star_within_threshold })
}
