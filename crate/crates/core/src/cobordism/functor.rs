//! The functor from diagram morphisms to cobordism words, and the
//! register-level commuting square that ties the two together.

use serde::Serialize;

use crate::cccd::{cccd_to_qrf, Diagram, DiagramMorphism, Role, Step, StepRecord};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::qrf::BitString;

use super::tqft::{decode, encode, sector_value, tqft_eval, Assignment};
use super::word::{Boundary, Cobordism, Generator, Sector};

/// Boundary object of a block structure: one sector per block.
pub fn blocks_boundary(blocks: &[(usize, usize)]) -> Boundary {
    blocks.iter().map(|&(a, b)| Sector::block(a, b)).collect()
}

fn block_containing(blocks: &[(usize, usize)], slot: usize) -> Result<usize> {
    blocks
        .iter()
        .position(|&(a, b)| a <= slot && slot < b)
        .ok_or_else(|| Error::Structure(format!("slot {slot} lies in no block")))
}

fn name(a: usize, b: usize) -> String {
    Sector::block(a, b).name
}

/// Rotation of slots `k..m`. When they form a block the word is a single
/// rotation; otherwise the blocks from the one holding slot `k` onward are
/// joined, the suffix is split off, rotated, and everything is put back.
fn rotation_word(blocks: &[(usize, usize)], m: usize, k: usize, rho: &Permutation) -> Result<Vec<Generator>> {
    let j = block_containing(blocks, k)?;
    let tail = &blocks[j..];
    if tail.last().map(|b| b.1) != Some(m) || tail.windows(2).any(|w| w[0].1 != w[1].0) {
        return Err(Error::Structure("blocks after the rotation point do not tile the suffix".into()));
    }
    let mut word = Vec::new();
    let a = blocks[j].0;
    let mut end = blocks[j].1;
    for &(c, d) in &tail[1..] {
        word.push(Generator::Pants { left: name(a, end), right: name(c, d), into: Sector::block(a, d) });
        end = d;
    }
    let split = a < k;
    if split {
        word.push(Generator::Copants { from: name(a, m), left: Sector::block(a, k), right: Sector::block(k, m) });
    }
    word.push(Generator::Rotate { sector: name(k, m), rho: rho.clone() });
    if split {
        word.push(Generator::Pants { left: name(a, k), right: name(k, m), into: Sector::block(a, m) });
    }
    for &(c, d) in tail[1..].iter().rev() {
        word.push(Generator::Copants { from: name(a, d), left: Sector::block(a, c), right: Sector::block(c, d) });
    }
    Ok(word)
}

fn step_word(r: &StepRecord) -> Result<Vec<Generator>> {
    let blocks = &r.blocks_before;
    match &r.step {
        Step::Fission { split } => {
            let (a, b) = blocks[block_containing(blocks, *split)?];
            if a == *split {
                return Err(Error::Structure(format!("split {split} is not interior to a block")));
            }
            Ok(vec![Generator::Copants { from: name(a, b), left: Sector::block(a, *split), right: Sector::block(*split, b) }])
        }
        Step::Fusion { split } => {
            let l = blocks.iter().find(|x| x.1 == *split);
            let r = blocks.iter().find(|x| x.0 == *split);
            match (l, r) {
                (Some(&(a, _)), Some(&(_, b))) => {
                    Ok(vec![Generator::Pants { left: name(a, *split), right: name(*split, b), into: Sector::block(a, b) }])
                }
                _ => Err(Error::Structure(format!("no blocks meet at {split}"))),
            }
        }
        Step::Rotation { k, rho } => rotation_word(blocks, r.dimension, *k, rho),
    }
}

/// Image of a morphism: identities become cylinders on every sector,
/// everything else the concatenation of its steps' generators.
pub fn functor_f(m: &DiagramMorphism) -> Result<Cobordism> {
    let blocks = m.source().blocks();
    if blocks.is_empty() {
        return Err(Error::Structure("morphism source carries no block structure".into()));
    }
    let source = blocks_boundary(blocks);
    if m.steps().is_empty() {
        let word = source.iter().map(|s| Generator::Cylinder { sector: s.name.clone() }).collect();
        return Cobordism::new(source, word);
    }
    let mut word = Vec::new();
    for r in m.steps() {
        word.extend(step_word(r)?);
    }
    Cobordism::new(source, word)
}

/// Register coordinates of every token: slot `p-1` carries the value the
/// base at position `p` reads off the token.
fn coordinates(d: &Diagram) -> Result<Vec<usize>> {
    let m = d.dimension();
    let mut coords = vec![0usize; 1 << m];
    let mut seen = vec![false; m];
    for i in d.bases() {
        let n = &d.nodes()[i];
        let Role::Base { position, expect } = n.role() else { unreachable!() };
        if position == 0 || position > m || std::mem::replace(&mut seen[position - 1], true) {
            return Err(Error::Structure(format!("base position {position} repeated or out of range")));
        }
        let col = n.classifier().column(0);
        for (z, c) in coords.iter_mut().enumerate() {
            let bit = if col[z] { expect } else { !expect };
            *c |= (bit as usize) << (m - position);
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Structure("some position has no base".into()));
    }
    Ok(coords)
}

/// Per-sector values: (slots, value) pairs in boundary order.
pub type SectorValues = Vec<(Vec<usize>, usize)>;

fn split_by(boundary: &[Sector], a: &Assignment) -> SectorValues {
    boundary.iter().map(|s| (s.slots.clone(), sector_value(s, a))).collect()
}

fn slot_assignment(m: usize, x: usize) -> Assignment {
    (0..m).map(|s| (s, (x >> (m - 1 - s)) & 1 == 1)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareWitness {
    pub state: String,
    pub top: SectorValues,
    pub bottom: SectorValues,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareReport {
    pub holds: bool,
    pub states: usize,
    pub witness: Option<SquareWitness>,
}

/// Compares, for every basis state of the source register, the relabeling
/// the morphism performs on tokens (top route) with the permutation of
/// the cobordism's TQFT image (bottom route).
pub fn commuting_square_check(m: &DiagramMorphism) -> Result<SquareReport> {
    cccd_to_qrf(m.source())?;
    cccd_to_qrf(m.target())?;
    square_against(m, &functor_f(m)?)
}

/// Square check against a supplied cobordism in place of the functor image.
pub fn square_against(m: &DiagramMorphism, c: &Cobordism) -> Result<SquareReport> {
    let (src, tgt) = (m.source(), m.target());
    let w = src.dimension();
    if tgt.dimension() != w {
        return Err(Error::Input(format!("dimension mismatch: {w} vs {}", tgt.dimension())));
    }
    let slots: usize = c.source().iter().map(|s| s.slots.len()).sum();
    if slots != w || c.source().iter().flat_map(|s| &s.slots).any(|&s| s >= w) {
        return Err(Error::Input(format!("cobordism does not act on the {w} slots of the diagram")));
    }
    let src_coords = coordinates(src)?;
    let tgt_coords = coordinates(tgt)?;
    let mut token_of = vec![usize::MAX; 1 << w];
    for (z, &x) in src_coords.iter().enumerate() {
        token_of[x] = z;
    }
    if token_of.contains(&usize::MAX) {
        return Err(Error::Structure("source bases do not determine tokens".into()));
    }
    let tqft = tqft_eval(c)?;
    let tgt_boundary = blocks_boundary(tgt.blocks());
    for (x, &z) in token_of.iter().enumerate() {
        let a = slot_assignment(w, x);
        let top = split_by(&tgt_boundary, &slot_assignment(w, tgt_coords[z]));
        let image = tqft.perm.apply(encode(c.source(), &a));
        let bottom = split_by(c.target(), &decode(c.target(), image));
        if top != bottom {
            let state = BitString::new(w, x as u64)?.to_string();
            return Ok(SquareReport { holds: false, states: x + 1, witness: Some(SquareWitness { state, top, bottom }) });
        }
    }
    Ok(SquareReport { holds: true, states: 1 << w, witness: None })
}
