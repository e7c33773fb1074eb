//! The canonical permutation TQFT on qubit registers.
//!
//! A boundary's basis index concatenates its sectors' bits in boundary
//! order, slots within a sector in their listed order, most significant
//! first. Cylinders, pants and copants only re-index; a rotation permutes
//! the values of one sector.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::perm::Permutation;

use super::word::{apply_generator, register_dim, Cobordism, Generator, Sector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TqftMap {
    pub source_dim: usize,
    pub target_dim: usize,
    /// Source basis index to target basis index.
    pub perm: Permutation,
}

pub type Assignment = BTreeMap<usize, bool>;

pub fn decode(b: &[Sector], index: usize) -> Assignment {
    let n: usize = b.iter().map(|s| s.slots.len()).sum();
    let mut out = Assignment::new();
    let mut k = n;
    for s in b {
        for &slot in &s.slots {
            k -= 1;
            out.insert(slot, (index >> k) & 1 == 1);
        }
    }
    out
}

pub fn encode(b: &[Sector], a: &Assignment) -> usize {
    b.iter().flat_map(|s| s.slots.iter()).fold(0, |acc, slot| (acc << 1) | a[slot] as usize)
}

/// Value of one sector's register under an assignment.
pub fn sector_value(s: &Sector, a: &Assignment) -> usize {
    s.slots.iter().fold(0, |acc, slot| (acc << 1) | a[slot] as usize)
}

fn set_sector_value(s: &Sector, a: &mut Assignment, v: usize) {
    let n = s.slots.len();
    for (i, &slot) in s.slots.iter().enumerate() {
        a.insert(slot, (v >> (n - 1 - i)) & 1 == 1);
    }
}

/// Effect of one generator on slot assignments.
pub fn act(before: &[Sector], g: &Generator, a: &mut Assignment) {
    if let Generator::Rotate { sector, rho } = g {
        let s = before.iter().find(|s| &s.name == sector).expect("typed word");
        let v = sector_value(s, a);
        set_sector_value(s, a, rho.apply(v));
    }
}

pub fn generator_map(before: &[Sector], g: &Generator) -> Result<TqftMap> {
    let after = apply_generator(before, g)?;
    let n = register_dim(before);
    let map = (0..n)
        .map(|i| {
            let mut a = decode(before, i);
            act(before, g, &mut a);
            encode(&after, &a)
        })
        .collect();
    Ok(TqftMap { source_dim: n, target_dim: register_dim(&after), perm: Permutation::new(map)? })
}

/// Product of the generators' permutations, first generator applied first.
pub fn tqft_eval(c: &Cobordism) -> Result<TqftMap> {
    let boundaries = c.boundaries();
    let n = register_dim(c.source());
    let mut perm = Permutation::identity(n);
    for (g, before) in c.word().iter().zip(&boundaries) {
        perm = perm.then(&generator_map(before, g)?.perm)?;
    }
    Ok(TqftMap { source_dim: n, target_dim: register_dim(c.target()), perm })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobordism::word::Sector;

    #[test]
    fn split_then_join_is_identity() {
        let s = Sector::block(0, 3);
        let c = Cobordism::new(
            vec![s.clone()],
            vec![
                Generator::Copants { from: s.name.clone(), left: Sector::block(0, 1), right: Sector::block(1, 3) },
                Generator::Pants { left: "s0_1".into(), right: "s1_3".into(), into: s.clone() },
            ],
        )
        .unwrap();
        assert!(tqft_eval(&c).unwrap().perm.is_identity());
        assert!(tqft_eval(&Cobordism::identity(vec![s]).unwrap()).unwrap().perm.is_identity());
    }

    #[test]
    fn rotation_and_inverse() {
        let s = Sector::block(0, 2);
        let rho = Permutation::new(vec![1, 2, 3, 0]).unwrap();
        let c = Cobordism::new(
            vec![s.clone()],
            vec![
                Generator::Rotate { sector: s.name.clone(), rho: rho.clone() },
                Generator::Rotate { sector: s.name.clone(), rho: rho.inverse() },
            ],
        )
        .unwrap();
        assert!(tqft_eval(&c).unwrap().perm.is_identity());
    }

    #[test]
    fn reordering_slots_reindexes() {
        // joining (s1, s0) into a sector that lists slot 0 first swaps bits
        let c = Cobordism::new(
            vec![Sector::new("b", vec![1]), Sector::new("a", vec![0])],
            vec![Generator::Pants { left: "b".into(), right: "a".into(), into: Sector::new("ab", vec![0, 1]) }],
        )
        .unwrap();
        assert_eq!(tqft_eval(&c).unwrap().perm.as_slice(), &[0, 2, 1, 3]);
    }
}
