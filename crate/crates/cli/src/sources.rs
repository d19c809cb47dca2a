//! Resolution of graph and configuration sources given on the command line.

use std::fs;

use candypass::{oracle, Configuration, Error, Graph, GraphKind};

/// Where a graph came from, kept for the run manifest.
#[derive(Debug, Clone)]
pub enum GraphSource {
    Generator(GraphKind),
    File(String),
}

impl GraphSource {
    /// A compact generator spec such as `cycle:6` or `gnp:12,0.3,seed=5`,
    /// otherwise a path to an edge-list file.
    pub fn parse(arg: &str) -> Result<Self, Error> {
        const KINDS: [&str; 6] = ["cycle", "path", "complete", "star", "tree", "gnp"];
        match arg.split_once(':') {
            Some((kind, _)) if KINDS.contains(&kind) => Ok(GraphSource::Generator(arg.parse()?)),
            _ => Ok(GraphSource::File(arg.to_string())),
        }
    }

    pub fn load(&self) -> Result<Graph, Error> {
        match self {
            GraphSource::Generator(kind) => kind.generate(),
            GraphSource::File(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Error::InvalidParameter(format!("cannot read {path}: {e}")))?;
                Graph::parse_edge_list(&text)
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            GraphSource::Generator(kind) => kind.to_string(),
            GraphSource::File(path) => format!("file:{path}"),
        }
    }
}

/// Parses `explicit:2,0,2,0` (or a bare `2,0,2,0`), `random:c[,seed]` and
/// `concentrated:c,vertex`. `random:c` without its own seed uses
/// `default_seed`.
pub fn parse_config(arg: &str, n: usize, default_seed: u64) -> Result<Configuration, Error> {
    let bad = |msg: &str| Error::InvalidParameter(format!("configuration {arg:?}: {msg}"));
    let numbers = |s: &str| -> Result<Vec<u64>, Error> {
        s.split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| bad(&format!("{t:?} is not a non-negative integer"))))
            .collect()
    };
    let (kind, rest) = arg.split_once(':').unwrap_or(("explicit", arg));
    let conf = match kind {
        "explicit" => Configuration::new(numbers(rest)?)?,
        "random" => match numbers(rest)?.as_slice() {
            [c] => oracle::random_config(n, *c, default_seed)?,
            [c, seed] => oracle::random_config(n, *c, *seed)?,
            _ => return Err(bad("expected random:c or random:c,seed")),
        },
        "concentrated" => match numbers(rest)?.as_slice() {
            [c, v] => Configuration::concentrated(n, *c, *v as usize)?,
            _ => return Err(bad("expected concentrated:c,vertex")),
        },
        other => return Err(bad(&format!("unknown kind {other:?}"))),
    };
    if conf.len() != n {
        return Err(Error::SizeMismatch { expected: n, found: conf.len() });
    }
    Ok(conf)
}
