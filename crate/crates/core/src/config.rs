use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Candy held by each vertex. The total is computed once at construction;
/// the engines conserve it, so no entry can ever exceed it.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Configuration {
    candy: Vec<u64>,
    total: u64,
}

impl Configuration {
    /// Fails with `Overflow` when the total does not fit below `2^63`.
    pub fn new(candy: Vec<u64>) -> Result<Self> {
        let total = candy
            .iter()
            .try_fold(0u64, |acc, &x| acc.checked_add(x))
            .filter(|&t| t <= i64::MAX as u64)
            .ok_or(Error::Overflow("candy total exceeds 2^63 - 1"))?;
        Ok(Configuration { candy, total })
    }

    pub fn zeros(n: usize) -> Self {
        Configuration { candy: vec![0; n], total: 0 }
    }

    /// All `c` candies on one vertex.
    pub fn concentrated(n: usize, c: u64, vertex: usize) -> Result<Self> {
        if vertex >= n {
            return Err(Error::InvalidParameter(format!(
                "vertex {vertex} outside 0..{n}"
            )));
        }
        let mut candy = vec![0; n];
        candy[vertex] = c;
        Configuration::new(candy)
    }

    pub(crate) fn from_parts_unchecked(candy: Vec<u64>, total: u64) -> Self {
        debug_assert_eq!(candy.iter().sum::<u64>(), total);
        Configuration { candy, total }
    }

    pub fn len(&self) -> usize {
        self.candy.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candy.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.candy
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.candy
    }

    pub fn check_size(&self, g: &Graph) -> Result<()> {
        if self.candy.len() == g.n() {
            Ok(())
        } else {
            Err(Error::SizeMismatch { expected: g.n(), found: self.candy.len() })
        }
    }

    /// Vertices holding at least twice their degree.
    pub fn abundant(&self, g: &Graph) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| self.candy[v] >= 2 * g.degree(v) as u64)
            .collect()
    }
}

impl Index<usize> for Configuration {
    type Output = u64;

    fn index(&self, v: usize) -> &u64 {
        &self.candy[v]
    }
}

impl TryFrom<Vec<u64>> for Configuration {
    type Error = Error;

    fn try_from(candy: Vec<u64>) -> Result<Self> {
        Configuration::new(candy)
    }
}

impl From<Configuration> for Vec<u64> {
    fn from(c: Configuration) -> Self {
        c.candy
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.candy, f)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.candy.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totals_and_overflow() {
        let c = Configuration::new(vec![2, 0, 2, 0]).unwrap();
        assert_eq!(c.total(), 4);
        assert_eq!(c.to_string(), "[2,0,2,0]");
        assert!(Configuration::new(vec![u64::MAX, 1]).is_err());
        assert!(Configuration::new(vec![1 << 62, 1 << 62]).is_err());
        assert!(Configuration::new(vec![i64::MAX as u64]).is_ok());
    }

    #[test]
    fn concentrated_bounds() {
        assert_eq!(Configuration::concentrated(3, 9, 0).unwrap().as_slice(), &[9, 0, 0]);
        assert!(Configuration::concentrated(3, 9, 3).is_err());
    }

    #[test]
    fn serde_as_plain_list() {
        let c = Configuration::new(vec![5, 2, 2]).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, "[5,2,2]");
        let back: Configuration = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }
}
