//! Permutations of `0..n` with composition, inversion and cycle notation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    map: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = crate::error::Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.map
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycles())
    }
}

impl Permutation {
    /// `map[i]` is the image of `i`; rejects non-bijections.
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; map.len()];
        for &v in &map {
            if v >= map.len() || std::mem::replace(&mut seen[v], true) {
                return input(format!("not a bijection on 0..{}", map.len()));
            }
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { map: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &Permutation) -> Result<Permutation> {
        if self.len() != next.len() {
            return input(format!("permutation sizes {} and {} differ", self.len(), next.len()));
        }
        Ok(Permutation { map: self.map.iter().map(|&i| next.map[i]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { map: inv }
    }

    /// One-line cycle notation without fixed points; `()` for the identity.
    pub fn cycles(&self) -> String {
        let mut seen = vec![false; self.len()];
        let mut out = String::new();
        for start in 0..self.len() {
            if seen[start] || self.map[start] == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i.to_string());
                i = self.map[i];
            }
            out.push('(');
            out.push_str(&cyc.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            "()".into()
        } else {
            out
        }
    }
}
