//! Commutativity by exhaustive simple-path enumeration.
//!
//! The cocone half (cocone and cross edges) and the cone half are checked
//! separately. For every ordered node pair the simple paths are listed in
//! lexicographic edge-id order and each is compared with the first; the
//! earliest disagreement (start node, end node, path order) is the witness.
//! Paired cross edges `u -> v`, `v -> u` must also compose to identities.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::classifier::Infomorphism;

use super::diagram::{Diagram, Leg};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Half {
    Cocone,
    Cone,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "table")]
pub enum Difference {
    /// Token-map tables disagree at `token` (a token of the common target).
    Token { token: String, left: String, right: String },
    /// Type-map tables disagree at `ty` (a type of the common source).
    Type { ty: String, left: String, right: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub half: Half,
    pub from: String,
    pub to: String,
    /// Edge ids; an empty `right` stands for the identity (round trips).
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub difference: Difference,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommuteReport {
    pub comparisons: usize,
    pub witness: Option<Witness>,
}

impl CommuteReport {
    pub fn ok(&self) -> bool {
        self.witness.is_none()
    }
}

/// Worker count from `TQRF_WORKERS`, defaulting to sequential.
pub fn workers_from_env() -> usize {
    std::env::var("TQRF_WORKERS").ok().and_then(|v| v.parse().ok()).filter(|&n| n >= 1).unwrap_or(1)
}

pub fn check_commutes(d: &Diagram) -> CommuteReport {
    check_commutes_with(d, workers_from_env())
}

/// Same result for every worker count; work is sharded by start node and
/// merged in start-node order.
pub fn check_commutes_with(d: &Diagram, workers: usize) -> CommuteReport {
    let mut comparisons = 0;
    for half in [Half::Cocone, Half::Cone] {
        let starts: Vec<usize> = (0..d.nodes().len()).collect();
        let per_start: Vec<(usize, Option<Witness>)> = if workers > 1 {
            match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
                Ok(pool) => pool.install(|| starts.par_iter().map(|&u| paths_from(d, half, u)).collect()),
                Err(_) => starts.iter().map(|&u| paths_from(d, half, u)).collect(),
            }
        } else {
            starts.iter().map(|&u| paths_from(d, half, u)).collect()
        };
        for (n, w) in per_start {
            comparisons += n;
            if let Some(w) = w {
                return CommuteReport { comparisons, witness: Some(w) };
            }
        }
        if half == Half::Cocone {
            let (n, w) = round_trips(d);
            comparisons += n;
            if w.is_some() {
                return CommuteReport { comparisons, witness: w };
            }
        }
    }
    CommuteReport { comparisons, witness: None }
}

fn in_half(leg: Leg, half: Half) -> bool {
    match half {
        Half::Cocone => leg != Leg::Cone,
        Half::Cone => leg == Leg::Cone,
    }
}

pub fn difference(p: &Infomorphism, q: &Infomorphism) -> Option<Difference> {
    let (src, dst) = (p.src(), p.dst());
    if let Some(b) = (0..p.tok_map().len()).find(|&b| p.tok_map()[b] != q.tok_map()[b]) {
        return Some(Difference::Token {
            token: dst.tokens()[b].clone(),
            left: src.tokens()[p.tok_map()[b]].clone(),
            right: src.tokens()[q.tok_map()[b]].clone(),
        });
    }
    (0..p.typ_map().len()).find(|&a| p.typ_map()[a] != q.typ_map()[a]).map(|a| Difference::Type {
        ty: src.types()[a].clone(),
        left: dst.types()[p.typ_map()[a]].clone(),
        right: dst.types()[q.typ_map()[a]].clone(),
    })
}

fn paths_from(d: &Diagram, half: Half, u: usize) -> (usize, Option<Witness>) {
    let mut by_end: BTreeMap<usize, Vec<(Vec<usize>, Infomorphism)>> = BTreeMap::new();
    let mut visited = vec![false; d.nodes().len()];
    visited[u] = true;
    let mut path = Vec::new();
    dfs(d, half, u, None, &mut visited, &mut path, &mut by_end);
    let mut comparisons = 0;
    for (v, paths) in by_end {
        let (first_path, first) = &paths[0];
        for (p, f) in &paths[1..] {
            comparisons += 1;
            if let Some(diff) = difference(first, f) {
                let w = Witness {
                    half,
                    from: d.nodes()[u].id().to_string(),
                    to: d.nodes()[v].id().to_string(),
                    left: first_path.clone(),
                    right: p.clone(),
                    difference: diff,
                };
                return (comparisons, Some(w));
            }
        }
    }
    (comparisons, None)
}

fn dfs(
    d: &Diagram,
    half: Half,
    at: usize,
    acc: Option<&Infomorphism>,
    visited: &mut Vec<bool>,
    path: &mut Vec<usize>,
    out: &mut BTreeMap<usize, Vec<(Vec<usize>, Infomorphism)>>,
) {
    for (i, e) in d.edges().iter().enumerate() {
        if e.src != at || !in_half(e.leg, half) || visited[e.dst] {
            continue;
        }
        let next = match acc {
            None => e.map.clone(),
            // Endpoint classifiers match by construction; adjointness of a
            // composite of valid arrows always holds.
            Some(f) => f.compose(&e.map).expect("composable path"),
        };
        path.push(i);
        visited[e.dst] = true;
        out.entry(e.dst).or_default().push((path.clone(), next.clone()));
        dfs(d, half, e.dst, Some(&next), visited, path, out);
        visited[e.dst] = false;
        path.pop();
    }
}

fn round_trips(d: &Diagram) -> (usize, Option<Witness>) {
    let mut n = 0;
    let cross: Vec<usize> = (0..d.edges().len()).filter(|&i| d.edges()[i].leg == Leg::Cross).collect();
    for &i in &cross {
        for &j in &cross {
            let (e, f) = (&d.edges()[i], &d.edges()[j]);
            if e.dst != f.src || f.dst != e.src {
                continue;
            }
            n += 1;
            let there_and_back = e.map.compose(&f.map).expect("composable round trip");
            let id = Infomorphism::identity(e.map.src().clone());
            if let Some(diff) = difference(&id, &there_and_back) {
                let w = Witness {
                    half: Half::Cocone,
                    from: d.nodes()[e.src].id().to_string(),
                    to: d.nodes()[e.src].id().to_string(),
                    left: vec![i, j],
                    right: vec![],
                    difference: diff,
                };
                return (n, Some(w));
            }
        }
    }
    (n, None)
}
