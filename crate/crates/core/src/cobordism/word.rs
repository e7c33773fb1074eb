//! Cobordism words: typed sequences of cylinder, pants, copants and
//! rotation generators between boundary objects (ordered sector lists).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest total slot count a boundary may carry.
pub const MAX_SLOTS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sector {
    pub name: String,
    /// Slot labels, in the order their bits are read (first = most
    /// significant).
    pub slots: Vec<usize>,
}

impl Sector {
    pub fn new(name: impl Into<String>, slots: Vec<usize>) -> Self {
        Sector { name: name.into(), slots }
    }

    /// Contiguous half-open slot range `a..b`, named `s{a}_{b}`.
    pub fn block(a: usize, b: usize) -> Self {
        Sector { name: format!("s{a}_{b}"), slots: (a..b).collect() }
    }

    /// Qubit-register dimension `2^n`.
    pub fn register_dim(&self) -> usize {
        1 << self.slots.len()
    }
}

pub type Boundary = Vec<Sector>;

pub fn register_dim(b: &[Sector]) -> usize {
    1 << b.iter().map(|s| s.slots.len()).sum::<usize>()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Generator {
    Cylinder { sector: String },
    /// Joins two sectors into one, placed where the earlier of them stood.
    Pants { left: String, right: String, into: Sector },
    /// Splits a sector in place into two.
    Copants { from: String, left: Sector, right: Sector },
    /// Permutes the values of a sector's register.
    Rotate { sector: String, rho: Permutation },
}

fn typing<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Typing(msg.into()))
}

pub fn check_boundary(b: &[Sector]) -> Result<()> {
    let mut names = BTreeSet::new();
    let mut slots = BTreeSet::new();
    for s in b {
        if s.slots.is_empty() {
            return typing(format!("sector {} has no slots", s.name));
        }
        if !names.insert(&s.name) {
            return typing(format!("sector name {} repeated", s.name));
        }
        for &x in &s.slots {
            if !slots.insert(x) {
                return typing(format!("slot {x} appears twice"));
            }
        }
    }
    if slots.len() > MAX_SLOTS {
        return typing(format!("{} slots exceed the limit of {MAX_SLOTS}", slots.len()));
    }
    Ok(())
}

fn find(b: &[Sector], name: &str) -> Result<usize> {
    b.iter().position(|s| s.name == name).ok_or_else(|| Error::Typing(format!("sector {name} not on the boundary")))
}

fn slot_set(s: &[usize]) -> BTreeSet<usize> {
    s.iter().copied().collect()
}

/// Boundary after one generator.
pub fn apply_generator(b: &[Sector], g: &Generator) -> Result<Boundary> {
    let mut out = b.to_vec();
    match g {
        Generator::Cylinder { sector } => {
            find(b, sector)?;
        }
        Generator::Rotate { sector, rho } => {
            let i = find(b, sector)?;
            if rho.len() != b[i].register_dim() {
                return typing(format!("rotation of {sector} must permute {} values", b[i].register_dim()));
            }
        }
        Generator::Copants { from, left, right } => {
            let i = find(b, from)?;
            let mut union = slot_set(&left.slots);
            let r = slot_set(&right.slots);
            if left.slots.is_empty() || right.slots.is_empty() || !union.is_disjoint(&r) {
                return typing("copants legs must be nonempty and disjoint");
            }
            union.extend(r);
            if union != slot_set(&b[i].slots) {
                return typing(format!("copants legs do not partition the slots of {from}"));
            }
            out.splice(i..=i, [left.clone(), right.clone()]);
        }
        Generator::Pants { left, right, into } => {
            let (i, j) = (find(b, left)?, find(b, right)?);
            if i == j {
                return typing("pants needs two different sectors");
            }
            let mut union = slot_set(&b[i].slots);
            union.extend(slot_set(&b[j].slots));
            if union != slot_set(&into.slots) || into.slots.len() != union.len() {
                return typing(format!("pants target {} does not carry exactly the joined slots", into.name));
            }
            let (lo, hi) = (i.min(j), i.max(j));
            out.remove(hi);
            out[lo] = into.clone();
        }
    }
    check_boundary(&out)?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cobordism {
    source: Boundary,
    word: Vec<Generator>,
    target: Boundary,
}

impl Cobordism {
    pub fn new(source: Boundary, word: Vec<Generator>) -> Result<Self> {
        check_boundary(&source)?;
        let mut b = source.clone();
        for g in &word {
            b = apply_generator(&b, g)?;
        }
        Ok(Cobordism { source, word, target: b })
    }

    pub fn identity(b: Boundary) -> Result<Self> {
        Self::new(b, vec![])
    }

    pub fn source(&self) -> &[Sector] {
        &self.source
    }

    pub fn target(&self) -> &[Sector] {
        &self.target
    }

    pub fn word(&self) -> &[Generator] {
        &self.word
    }

    /// Boundaries before each generator, then the target.
    pub fn boundaries(&self) -> Vec<Boundary> {
        let mut out = vec![self.source.clone()];
        for g in &self.word {
            let next = apply_generator(out.last().expect("nonempty"), g).expect("typed at construction");
            out.push(next);
        }
        out
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &Cobordism) -> Result<Cobordism> {
        if self.target != next.source {
            return typing("target boundary differs from the next source boundary");
        }
        let word = self.word.iter().chain(&next.word).cloned().collect();
        Ok(Cobordism { source: self.source.clone(), word, target: next.target.clone() })
    }

    /// Equality up to cylinders, which act as identities.
    pub fn equivalent(&self, other: &Cobordism) -> bool {
        let strip = |c: &Cobordism| -> Vec<Generator> {
            c.word.iter().filter(|g| !matches!(g, Generator::Cylinder { .. })).cloned().collect()
        };
        self.source == other.source && self.target == other.target && strip(self) == strip(other)
    }
}
