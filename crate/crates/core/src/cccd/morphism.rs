//! Morphisms between sectored diagrams: fission (split a block), fusion
//! (merge two adjacent blocks) and basis rotation of a suffix.
//!
//! A morphism records node and edge maps. An edge may collapse onto a
//! node when both of its endpoints land on the same node (fusion sends
//! sub-cores onto the merged core). Each morphism also keeps its list of
//! elementary steps together with the block structure they started from;
//! the cobordism functor reads only these.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::perm::Permutation;

use super::build::{sectored, sectored_parts, BaseSpec};
use super::diagram::{Diagram, Role, MAX_DIAGRAM_WIDTH};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Step {
    /// Split the block containing slot boundary `split` there.
    Fission { split: usize },
    /// Merge the two blocks meeting at slot boundary `split`.
    Fusion { split: usize },
    /// Re-express slots `k..m` through the bijection `rho` of their values.
    Rotation { k: usize, rho: Permutation },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub step: Step,
    pub dimension: usize,
    pub blocks_before: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeImage {
    Edge(usize),
    Collapsed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MorphismKind {
    Identity,
    Fission,
    Fusion,
    Rotation,
    Composite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramMorphism {
    source: Arc<Diagram>,
    target: Arc<Diagram>,
    node_map: Vec<usize>,
    edge_map: Vec<EdgeImage>,
    steps: Vec<StepRecord>,
}

impl DiagramMorphism {
    pub fn identity(d: Arc<Diagram>) -> Self {
        DiagramMorphism {
            node_map: (0..d.nodes().len()).collect(),
            edge_map: (0..d.edges().len()).map(EdgeImage::Edge).collect(),
            steps: vec![],
            source: d.clone(),
            target: d,
        }
    }

    pub fn source(&self) -> &Arc<Diagram> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Diagram> {
        &self.target
    }

    pub fn node_map(&self) -> &[usize] {
        &self.node_map
    }

    pub fn edge_map(&self) -> &[EdgeImage] {
        &self.edge_map
    }

    pub fn steps(&self) -> &[StepRecord] {
        &self.steps
    }

    pub fn kind(&self) -> MorphismKind {
        match self.steps.as_slice() {
            [] => MorphismKind::Identity,
            [s] => match s.step {
                Step::Fission { .. } => MorphismKind::Fission,
                Step::Fusion { .. } => MorphismKind::Fusion,
                Step::Rotation { .. } => MorphismKind::Rotation,
            },
            _ => MorphismKind::Composite,
        }
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &DiagramMorphism) -> Result<DiagramMorphism> {
        if !(Arc::ptr_eq(&self.target, &next.source) || *self.target == *next.source) {
            return Err(Error::Composition("target of the first morphism is not the source of the second".into()));
        }
        let node_map = self.node_map.iter().map(|&v| next.node_map[v]).collect();
        let edge_map = self
            .edge_map
            .iter()
            .map(|e| match e {
                EdgeImage::Edge(x) => next.edge_map[*x],
                EdgeImage::Collapsed => EdgeImage::Collapsed,
            })
            .collect();
        let steps = self.steps.iter().chain(&next.steps).cloned().collect();
        Ok(DiagramMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            node_map,
            edge_map,
            steps,
        })
    }

    /// Equality of the underlying graph maps and endpoints.
    pub fn same_maps(&self, other: &DiagramMorphism) -> bool {
        self.node_map == other.node_map
            && self.edge_map == other.edge_map
            && *self.source == *other.source
            && *self.target == *other.target
    }

    /// Every edge lands on an edge with the mapped endpoints, or collapses
    /// onto a single node.
    pub fn preserves_incidence(&self) -> bool {
        self.source.edges().iter().zip(&self.edge_map).all(|(e, img)| {
            let (s, d) = (self.node_map[e.src], self.node_map[e.dst]);
            match img {
                EdgeImage::Edge(x) => {
                    let t = &self.target.edges()[*x];
                    t.src == s && t.dst == d && t.leg == e.leg
                }
                EdgeImage::Collapsed => s == d,
            }
        })
    }
}

fn core_block(d: &Diagram, node: usize) -> Option<(usize, usize)> {
    let rule = d.nodes()[node].rule()?;
    let ps: Vec<usize> = rule.children.iter().filter_map(|&c| d.nodes()[c].role().position()).collect();
    Some((ps.iter().min()? - 1, *ps.iter().max()?))
}

/// Graph maps between two sectored diagrams over the same positions.
fn sectored_map(src: &Diagram, tgt: &Diagram) -> Result<(Vec<usize>, Vec<EdgeImage>)> {
    let tgt_blocks: Vec<(usize, (usize, usize))> = (0..tgt.nodes().len())
        .filter(|&i| tgt.nodes()[i].role() == Role::ComponentCore)
        .filter_map(|i| core_block(tgt, i).map(|b| (i, b)))
        .collect();
    let node_map = src
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, n)| match n.role() {
            Role::Base { position, .. } => tgt
                .nodes()
                .iter()
                .position(|t| t.role().position() == Some(position))
                .ok_or_else(|| Error::Structure(format!("position {position} missing in target"))),
            Role::TopCore => Ok(tgt.top()),
            Role::ComponentCore => {
                let (a, b) = core_block(src, i).ok_or_else(|| Error::Structure("empty component core".into()))?;
                Ok(tgt_blocks
                    .iter()
                    .find(|(_, (c, d))| *c <= a && b <= *d)
                    .map(|(t, _)| *t)
                    .unwrap_or_else(|| tgt.top()))
            }
        })
        .collect::<Result<Vec<usize>>>()?;
    let edge_map = src
        .edges()
        .iter()
        .map(|e| {
            let (s, d) = (node_map[e.src], node_map[e.dst]);
            if s == d {
                return Ok(EdgeImage::Collapsed);
            }
            tgt.edges()
                .iter()
                .position(|t| t.src == s && t.dst == d && t.leg == e.leg)
                .map(EdgeImage::Edge)
                .ok_or_else(|| Error::Structure("no target edge for a source edge".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((node_map, edge_map))
}

fn step_morphism(source: &Diagram, target: Diagram, step: Step) -> Result<(DiagramMorphism, Diagram)> {
    let (node_map, edge_map) = sectored_map(source, &target)?;
    let record = StepRecord { step, dimension: source.dimension(), blocks_before: source.blocks().to_vec() };
    let m = DiagramMorphism {
        source: Arc::new(source.clone()),
        target: Arc::new(target.clone()),
        node_map,
        edge_map,
        steps: vec![record],
    };
    debug_assert!(m.preserves_incidence());
    Ok((m, target))
}

/// Splits the block containing slot boundary `split` (1 <= split < m).
pub fn fission(d: &Diagram, split: usize) -> Result<(DiagramMorphism, Diagram)> {
    let m = d.dimension();
    if split == 0 || split >= m {
        return input(format!("split {split} outside 1..{m}"));
    }
    let (bases, blocks) = sectored_parts(d)?;
    let k = blocks
        .iter()
        .position(|&(a, b)| a < split && split < b)
        .ok_or_else(|| Error::Input(format!("split {split} is not interior to any block")))?;
    let (a, b) = blocks[k];
    let mut new_blocks = blocks.clone();
    new_blocks.splice(k..=k, [(a, split), (split, b)]);
    let target = sectored(m, bases, new_blocks)?;
    step_morphism(d, target, Step::Fission { split })
}

/// Merges the two blocks meeting at slot boundary `split`.
pub fn fuse_split(d: &Diagram, split: usize) -> Result<(DiagramMorphism, Diagram)> {
    let (bases, blocks) = sectored_parts(d)?;
    let k = blocks
        .iter()
        .position(|&(_, b)| b == split)
        .filter(|&k| k + 1 < blocks.len() && blocks[k + 1].0 == split)
        .ok_or_else(|| Error::Input(format!("no two adjacent blocks meet at {split}")))?;
    let mut new_blocks = blocks.clone();
    new_blocks.splice(k..=k + 1, [(blocks[k].0, blocks[k + 1].1)]);
    let target = sectored(d.dimension(), bases, new_blocks)?;
    step_morphism(d, target, Step::Fusion { split })
}

/// One sector diagram per block of `d`, over the same token set.
pub fn fission_parts(d: &Diagram) -> Result<Vec<Diagram>> {
    let (bases, blocks) = sectored_parts(d)?;
    blocks
        .iter()
        .map(|&(a, b)| {
            let part = bases.iter().filter(|s| s.position > a && s.position <= b).cloned().collect();
            sectored(d.dimension(), part, vec![(a, b)])
        })
        .collect()
}

fn single_block(d: &Diagram) -> Result<(Vec<BaseSpec>, (usize, usize))> {
    let (bases, blocks) = sectored_parts(d)?;
    match blocks.as_slice() {
        [b] => Ok((bases, *b)),
        _ => input("fuse expects single-block diagrams"),
    }
}

/// Joins two single-block diagrams. Sector diagrams over a common width
/// with disjoint adjacent blocks are joined over the shared tokens;
/// stand-alone diagrams (covering all their own positions) are
/// concatenated, the second one's positions shifted past the first's.
/// Returns the fusion morphism out of the juxtaposed, still-split diagram.
pub fn fuse(s1: &Diagram, s2: &Diagram) -> Result<(DiagramMorphism, Diagram)> {
    let (b1, k1) = single_block(s1)?;
    let (b2, k2) = single_block(s2)?;
    let overlap = k1.0 < k2.1 && k2.0 < k1.1;
    let standalone = |d: &Diagram, k: (usize, usize)| k == (0, d.dimension());
    if s1.dimension() == s2.dimension() && !overlap {
        let (left, right) = if k1.1 == k2.0 { (k1, k2) } else { (k2, k1) };
        if left.1 != right.0 {
            return input("sector blocks are not adjacent");
        }
        let bases = b1.into_iter().chain(b2).collect();
        let joined = sectored(s1.dimension(), bases, vec![left, right])?;
        return fuse_split(&joined, left.1);
    }
    if standalone(s1, k1) && standalone(s2, k2) {
        let (m1, m2) = (s1.dimension(), s2.dimension());
        let m = m1 + m2;
        if m > MAX_DIAGRAM_WIDTH {
            return input(format!("joined width {m} exceeds {MAX_DIAGRAM_WIDTH}"));
        }
        let mask = (1usize << m2) - 1;
        let mut bases: Vec<BaseSpec> = b1
            .into_iter()
            .map(|b| BaseSpec { column: (0..1usize << m).map(|z| b.column[z >> m2]).collect(), ..b })
            .collect();
        bases.extend(b2.into_iter().map(|b| BaseSpec {
            position: b.position + m1,
            type_name: format!("tau{}", b.position + m1),
            column: (0..1usize << m).map(|z| b.column[z & mask]).collect(),
            ..b
        }));
        let joined = sectored(m, bases, vec![(0, m1), (m1, m)])?;
        return fuse_split(&joined, m1);
    }
    if s1.dimension() == s2.dimension() {
        input("overlapping blocks")
    } else {
        input(format!("incompatible widths {} and {}", s1.dimension(), s2.dimension()))
    }
}

/// Index of `R(z)`: prefix of length `k` kept, suffix value sent through `rho`.
pub fn rotate_index(m: usize, k: usize, rho: &Permutation, z: usize) -> usize {
    let s = m - k;
    let mask = (1usize << s) - 1;
    (z & !mask) | rho.apply(z & mask)
}

/// Bases at positions `k+1..=m` now test the suffix of the register value
/// after it passes through `rho`: if the bases read `c(z)` off token `z`,
/// the rotated bases read `R(c(z))`. On freshly built diagrams `c` is the
/// identity and this is `new(z) = old(R(z))`; in general it keeps
/// successive rotations composing in application order.
pub fn basis_rotation(d: &Diagram, k: usize, rho: &Permutation) -> Result<(DiagramMorphism, Diagram)> {
    let m = d.dimension();
    if k >= m {
        return input(format!("rotation prefix {k} leaves no suffix in width {m}"));
    }
    if rho.len() != 1 << (m - k) {
        return input(format!("rotation must permute {} suffix values, got {}", 1usize << (m - k), rho.len()));
    }
    let (bases, blocks) = sectored_parts(d)?;
    let mut read = vec![0usize; 1 << m];
    for b in &bases {
        for (z, r) in read.iter_mut().enumerate() {
            *r |= ((b.column[z] == b.expect) as usize) << (m - b.position);
        }
    }
    let rotated = bases
        .into_iter()
        .map(|b| {
            if b.position <= k {
                return b;
            }
            let column =
                read.iter().map(|&c| ((rotate_index(m, k, rho, c) >> (m - b.position)) & 1 == 1) == b.expect).collect();
            BaseSpec { column, ..b }
        })
        .collect();
    let target = sectored(m, rotated, blocks)?;
    step_morphism(d, target, Step::Rotation { k, rho: rho.clone() })
}
