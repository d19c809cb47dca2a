//! Simple undirected graphs with dense `0..n` vertex ids.
//!
//! A [`Graph`] is immutable once built. Construction validates simplicity,
//! lays the adjacency out in CSR form (sorted neighbor lists) and computes the
//! all-pairs distance matrix eagerly with one BFS per vertex, which costs
//! O(n·(n+m)) time and n² words of memory.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;

/// Distance between vertices in different components.
pub const UNREACHABLE: u32 = u32::MAX;

/// Attempts made by the `gnp` generator before giving up on connectivity.
pub const CONNECT_ATTEMPTS: usize = 1000;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    targets: Vec<usize>,
    distance: Vec<u32>,
    connected: bool,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph on `n` vertices. Edges are unordered; `(u, v)` and
    /// `(v, u)` are the same edge and listing both is a duplicate.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({}, {})",
                    key.0, key.1
                )));
            }
        }
        let edges: Vec<(usize, usize)> = seen.into_iter().collect();

        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0usize; 2 * edges.len()];
        for &(u, v) in &edges {
            targets[fill[u]] = v;
            fill[u] += 1;
            targets[fill[v]] = u;
            fill[v] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }

        let mut g = Graph {
            n,
            edges,
            offsets,
            targets,
            distance: Vec::new(),
            connected: false,
        };
        g.distance = g.all_pairs_bfs();
        g.connected = g.distance[..n].iter().all(|&d| d != UNREACHABLE);
        Ok(g)
    }

    fn all_pairs_bfs(&self) -> Vec<u32> {
        let n = self.n;
        let mut dist = vec![UNREACHABLE; n * n];
        let mut queue = VecDeque::with_capacity(n);
        for src in 0..n {
            let row = &mut dist[src * n..(src + 1) * n];
            row[src] = 0;
            queue.push_back(src);
            while let Some(u) = queue.pop_front() {
                let du = row[u];
                for &w in &self.targets[self.offsets[u]..self.offsets[u + 1]] {
                    if row[w] == UNREACHABLE {
                        row[w] = du + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        dist
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// BFS distance, or [`UNREACHABLE`].
    #[inline]
    pub fn distance(&self, u: usize, v: usize) -> u32 {
        self.distance[u * self.n + v]
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// Fewer than two vertices. Valid as a value, but theorem checks refuse it.
    pub fn is_degenerate(&self) -> bool {
        self.n < 2
    }

    /// Largest pairwise distance. Zero exactly when `n == 1`.
    pub fn diameter(&self) -> Result<u32> {
        if !self.connected {
            return Err(Error::Disconnected);
        }
        Ok(self.distance.iter().copied().max().unwrap_or(0))
    }

    /// The candy total `4m - n` above which every game on a connected graph
    /// stabilizes. Negative only for the single vertex graph.
    pub fn candy_threshold(&self) -> i64 {
        4 * self.m() as i64 - self.n as i64
    }

    pub fn validate(&self) -> Validation {
        let simple = (0..self.n).all(|v| {
            let nb = self.neighbors(v);
            nb.windows(2).all(|w| w[0] < w[1])
                && nb
                    .iter()
                    .all(|&w| w != v && self.neighbors(w).binary_search(&v).is_ok())
        });
        let degree_sum: usize = (0..self.n).map(|v| self.degree(v)).sum();
        Validation {
            simple,
            connected: self.connected,
            degree_sum_ok: degree_sum == 2 * self.m(),
            degenerate: self.is_degenerate(),
        }
    }

    /// Errors unless the graph is usable by the theorem checks.
    pub fn require_checkable(&self) -> Result<()> {
        if self.is_degenerate() {
            return Err(Error::InvalidGraph(
                "theorem checks need at least two vertices".into(),
            ));
        }
        if !self.connected {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    /// Parses the edge-list text format: one `u v` pair per line, `#` starts
    /// a comment line, and an optional `n <count>` header fixes the vertex
    /// count (otherwise it is one more than the largest id mentioned).
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut declared_n: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let parse_id = |tok: &str| {
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("expected a non-negative integer, found {tok:?}"),
                })
            };
            match tokens.as_slice() {
                ["n", count] => {
                    if declared_n.is_some() {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: "repeated `n` header".into(),
                        });
                    }
                    declared_n = Some(parse_id(count)?);
                }
                [u, v] => edges.push((parse_id(u)?, parse_id(v)?)),
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("expected `u v` or `n <count>`, found {line:?}"),
                    })
                }
            }
        }
        let implied = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        let n = match declared_n {
            Some(n) if n < implied => {
                return Err(Error::InvalidGraph(format!(
                    "header declares n = {n} but vertex {} appears",
                    implied - 1
                )))
            }
            Some(n) => n,
            None => implied,
        };
        Graph::from_edges(n, &edges)
    }

    /// Edge list text accepted by [`Graph::parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// DOT text for external visualizers.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph {\n");
        for v in 0..self.n {
            if self.degree(v) == 0 {
                let _ = writeln!(out, "  {v};");
            }
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    pub fn summary(&self) -> GraphSummary {
        GraphSummary {
            n: self.n,
            m: self.m(),
            connected: self.connected,
            diameter: self.diameter().ok(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub simple: bool,
    pub connected: bool,
    pub degree_sum_ok: bool,
    pub degenerate: bool,
}

impl Validation {
    pub fn checkable(&self) -> bool {
        self.simple && self.connected && self.degree_sum_ok && !self.degenerate
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    pub connected: bool,
    pub diameter: Option<u32>,
}

/// A graph family with its parameters. Parses from and prints as the compact
/// spec strings `cycle:6`, `path:3`, `complete:4`, `star:5`,
/// `tree:10,seed=3` and `gnp:12,0.3,seed=5`.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphKind {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    /// Star on `n` vertices, center 0.
    Star(usize),
    /// Uniform labelled tree via a random Prüfer sequence.
    RandomTree { n: usize, seed: u64 },
    /// G(n, p) resampled until connected.
    RandomConnected { n: usize, p: f64, seed: u64 },
}

impl GraphKind {
    pub fn generate(&self) -> Result<Graph> {
        match *self {
            GraphKind::Cycle(n) => {
                if n < 3 {
                    return Err(Error::Unsatisfiable(format!(
                        "a simple cycle needs at least 3 vertices, got {n}"
                    )));
                }
                let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
                Graph::from_edges(n, &edges)
            }
            GraphKind::Path(n) => {
                check_order(n)?;
                let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
                Graph::from_edges(n, &edges)
            }
            GraphKind::Complete(n) => {
                check_order(n)?;
                let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
                for u in 0..n {
                    for v in u + 1..n {
                        edges.push((u, v));
                    }
                }
                Graph::from_edges(n, &edges)
            }
            GraphKind::Star(n) => {
                check_order(n)?;
                let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
                Graph::from_edges(n, &edges)
            }
            GraphKind::RandomTree { n, seed } => {
                check_order(n)?;
                Graph::from_edges(n, &random_tree_edges(n, seed))
            }
            GraphKind::RandomConnected { n, p, seed } => {
                check_order(n)?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidParameter(format!(
                        "edge probability {p} outside [0, 1]"
                    )));
                }
                let mut rng = rng::seeded(seed);
                for _ in 0..CONNECT_ATTEMPTS {
                    let mut edges = Vec::new();
                    for u in 0..n {
                        for v in u + 1..n {
                            if rng.gen_bool(p) {
                                edges.push((u, v));
                            }
                        }
                    }
                    let g = Graph::from_edges(n, &edges)?;
                    if g.is_connected() {
                        return Ok(g);
                    }
                }
                Err(Error::Unsatisfiable(format!(
                    "no connected G({n}, {p}) sample in {CONNECT_ATTEMPTS} attempts"
                )))
            }
        }
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptyGraph)
    } else {
        Ok(())
    }
}

fn random_tree_edges(n: usize, seed: u64) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    let mut rng = rng::seeded(seed);
    if n == 2 {
        return vec![(0, 1)];
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut remaining = vec![1usize; n];
    for &c in &code {
        remaining[c] += 1;
    }
    // Leaves are consumed smallest first; a BTreeSet keeps that order.
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| remaining[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = leaves.pop_first().expect("Prüfer decoding always has a leaf");
        edges.push((leaf, c));
        remaining[c] -= 1;
        if remaining[c] == 1 {
            leaves.insert(c);
        }
    }
    let mut last = leaves.into_iter();
    let (a, b) = (last.next().unwrap(), last.next().unwrap());
    edges.push((a, b));
    // Relabel so vertex ids carry no information about the decoding order.
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    edges.into_iter().map(|(u, v)| (perm[u], perm[v])).collect()
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphKind::Cycle(n) => write!(f, "cycle:{n}"),
            GraphKind::Path(n) => write!(f, "path:{n}"),
            GraphKind::Complete(n) => write!(f, "complete:{n}"),
            GraphKind::Star(n) => write!(f, "star:{n}"),
            GraphKind::RandomTree { n, seed } => write!(f, "tree:{n},seed={seed}"),
            GraphKind::RandomConnected { n, p, seed } => write!(f, "gnp:{n},{p},seed={seed}"),
        }
    }
}

impl FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidParameter(format!("graph spec {s:?}: {msg}"));
        let (kind, rest) = s.split_once(':').ok_or_else(|| bad("expected `kind:args`"))?;
        let mut positional = Vec::new();
        let mut seed = None;
        for arg in rest.split(',').map(str::trim) {
            if let Some(value) = arg.strip_prefix("seed=") {
                seed = Some(value.parse::<u64>().map_err(|_| bad("seed must be an integer"))?);
            } else {
                positional.push(arg);
            }
        }
        let order = |idx: usize| -> Result<usize> {
            positional
                .get(idx)
                .ok_or_else(|| bad("missing vertex count"))?
                .parse()
                .map_err(|_| bad("vertex count must be an integer"))
        };
        let expect_args = |count: usize| -> Result<()> {
            if positional.len() == count {
                Ok(())
            } else {
                Err(bad(&format!("expected {count} positional argument(s)")))
            }
        };
        let seed = seed.unwrap_or(0);
        match kind.trim() {
            "cycle" => expect_args(1).and(Ok(GraphKind::Cycle(order(0)?))),
            "path" => expect_args(1).and(Ok(GraphKind::Path(order(0)?))),
            "complete" => expect_args(1).and(Ok(GraphKind::Complete(order(0)?))),
            "star" => expect_args(1).and(Ok(GraphKind::Star(order(0)?))),
            "tree" => expect_args(1).and(Ok(GraphKind::RandomTree { n: order(0)?, seed })),
            "gnp" => {
                expect_args(2)?;
                let p = positional[1]
                    .parse::<f64>()
                    .map_err(|_| bad("edge probability must be a number"))?;
                Ok(GraphKind::RandomConnected { n: order(0)?, p, seed })
            }
            other => Err(bad(&format!("unknown graph kind {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::parse_edge_list("0 1\n1 2").unwrap()
    }

    #[test]
    fn parses_path_and_triangle() {
        let g = p3();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(g.degrees(), vec![1, 2, 1]);

        let c3 = Graph::parse_edge_list("0 1\n1 2\n2 0").unwrap();
        assert_eq!((c3.n(), c3.m()), (3, 3));
        assert_eq!(c3.degrees(), vec![2, 2, 2]);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(
            Graph::parse_edge_list("0 0"),
            Err(Error::InvalidGraph(msg)) if msg.contains("self-loop")
        ));
        assert!(matches!(
            Graph::parse_edge_list("0 1\n1 0"),
            Err(Error::InvalidGraph(msg)) if msg.contains("duplicate")
        ));
        assert_eq!(
            Graph::parse_edge_list("0 1\n1 x").unwrap_err(),
            Error::Parse {
                line: 2,
                msg: "expected a non-negative integer, found \"x\"".into()
            }
        );
        assert!(matches!(Graph::parse_edge_list("0 -1"), Err(Error::Parse { .. })));
        assert!(matches!(Graph::parse_edge_list("0 1 2"), Err(Error::Parse { .. })));
        assert_eq!(Graph::parse_edge_list("# nothing\n\n"), Err(Error::EmptyGraph));
        assert!(matches!(
            Graph::parse_edge_list("n 2\n0 5"),
            Err(Error::InvalidGraph(_))
        ));
    }

    #[test]
    fn parse_header_and_comments() {
        let g = Graph::parse_edge_list("# a comment\nn 5\n0 1\n  # indented comment\n3 4\n").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.m(), 2);
        assert!(!g.is_connected());
        let single = Graph::parse_edge_list("n 1").unwrap();
        assert_eq!(single.n(), 1);
        assert_eq!(single.diameter(), Ok(0));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = GraphKind::RandomTree { n: 9, seed: 4 }.generate().unwrap();
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn generators() {
        let c4 = GraphKind::Cycle(4).generate().unwrap();
        assert_eq!(c4.m(), 4);
        assert!(c4.degrees().iter().all(|&d| d == 2));

        let k4 = GraphKind::Complete(4).generate().unwrap();
        assert_eq!(k4.m(), 6);
        assert_eq!(k4.diameter(), Ok(1));

        let t = GraphKind::RandomTree { n: 6, seed: 1 }.generate().unwrap();
        assert_eq!(t.m(), 5);
        assert!(t.is_connected());

        let s = GraphKind::Star(4).generate().unwrap();
        assert_eq!(s.degrees(), vec![3, 1, 1, 1]);

        assert!(matches!(GraphKind::Cycle(2).generate(), Err(Error::Unsatisfiable(_))));
        assert_eq!(GraphKind::Path(0).generate(), Err(Error::EmptyGraph));
        assert!(matches!(
            GraphKind::RandomConnected { n: 8, p: 0.0, seed: 1 }.generate(),
            Err(Error::Unsatisfiable(_))
        ));
    }

    #[test]
    fn generators_are_deterministic() {
        let kind = GraphKind::RandomConnected { n: 12, p: 0.3, seed: 5 };
        assert_eq!(kind.generate().unwrap(), kind.generate().unwrap());
        let a = GraphKind::RandomTree { n: 20, seed: 1 }.generate().unwrap();
        let b = GraphKind::RandomTree { n: 20, seed: 2 }.generate().unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn diameters() {
        assert_eq!(GraphKind::Cycle(4).generate().unwrap().diameter(), Ok(2));
        assert_eq!(p3().diameter(), Ok(2));
        let split = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(split.diameter(), Err(Error::Disconnected));
    }

    #[test]
    fn cycle_diameter_is_half_n() {
        for n in 3..=64 {
            let g = GraphKind::Cycle(n).generate().unwrap();
            assert_eq!(g.diameter().unwrap() as usize, n / 2, "C_{n}");
        }
    }

    #[test]
    fn thresholds() {
        let c3 = GraphKind::Cycle(3).generate().unwrap();
        assert_eq!(c3.candy_threshold(), 9);
        assert_eq!(GraphKind::Cycle(4).generate().unwrap().candy_threshold(), 12);
        assert_eq!(p3().candy_threshold(), 5);
        for n in 3..30 {
            assert_eq!(GraphKind::Cycle(n).generate().unwrap().candy_threshold(), 3 * n as i64);
            let tree = GraphKind::RandomTree { n, seed: n as u64 }.generate().unwrap();
            assert_eq!(tree.candy_threshold(), 3 * n as i64 - 4);
        }
    }

    #[test]
    fn validation_reports() {
        let c3 = GraphKind::Cycle(3).generate().unwrap().validate();
        assert!(c3.simple && c3.connected && c3.degree_sum_ok && !c3.degenerate);
        assert!(c3.checkable());

        let split = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap().validate();
        assert!(!split.connected);

        let single = Graph::from_edges(1, &[]).unwrap().validate();
        assert!(single.simple && single.connected && single.degenerate);
        assert!(!single.checkable());
    }

    #[test]
    fn dot_export() {
        let dot = p3().to_dot();
        assert_eq!(dot, "graph {\n  0 -- 1;\n  1 -- 2;\n}\n");
    }

    #[test]
    fn spec_strings() {
        for s in ["cycle:6", "path:3", "complete:4", "star:5", "tree:10,seed=3", "gnp:12,0.3,seed=5"] {
            let kind: GraphKind = s.parse().unwrap();
            assert_eq!(kind.to_string(), s);
        }
        assert_eq!("tree:4".parse::<GraphKind>(), Ok(GraphKind::RandomTree { n: 4, seed: 0 }));
        assert!("wheel:5".parse::<GraphKind>().is_err());
        assert!("cycle".parse::<GraphKind>().is_err());
        assert!("cycle:4,5".parse::<GraphKind>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn any_kind() -> impl Strategy<Value = GraphKind> {
            prop_oneof![
                (3usize..20).prop_map(GraphKind::Cycle),
                (1usize..20).prop_map(GraphKind::Path),
                (1usize..10).prop_map(GraphKind::Complete),
                (1usize..20).prop_map(GraphKind::Star),
                (1usize..20, any::<u64>()).prop_map(|(n, seed)| GraphKind::RandomTree { n, seed }),
                (2usize..14, 0.3f64..0.9, any::<u64>())
                    .prop_map(|(n, p, seed)| GraphKind::RandomConnected { n, p, seed }),
            ]
        }

        proptest! {
            #[test]
            fn generated_graphs_satisfy_invariants(kind in any_kind()) {
                let g = kind.generate().unwrap();
                prop_assert!(g.validate().simple);
                prop_assert!(g.is_connected());
                let degree_sum: usize = g.degrees().iter().sum();
                prop_assert_eq!(degree_sum, 2 * g.m());
                let n = g.n();
                let mut max = 0;
                for u in 0..n {
                    prop_assert_eq!(g.distance(u, u), 0);
                    for v in 0..n {
                        let duv = g.distance(u, v);
                        prop_assert_eq!(duv, g.distance(v, u));
                        max = max.max(duv);
                        for w in 0..n {
                            prop_assert!(duv <= g.distance(u, w) + g.distance(w, v));
                        }
                    }
                }
                prop_assert_eq!(g.diameter().unwrap(), max);
            }

            #[test]
            fn parsed_edges_are_symmetric(edges in proptest::collection::btree_set((0usize..10, 0usize..10), 0..30)) {
                let edges: Vec<_> = edges.into_iter().filter(|(u, v)| u < v).collect();
                let g = Graph::from_edges(10, &edges).unwrap();
                for v in 0..10 {
                    for &w in g.neighbors(v) {
                        prop_assert!(g.neighbors(w).contains(&v));
                    }
                }
                // connectivity flag agrees with reachability from vertex 0
                let reach = (0..10).filter(|&v| g.distance(0, v) != UNREACHABLE).count();
                prop_assert_eq!(g.is_connected(), reach == 10);
            }
        }
    }
}
