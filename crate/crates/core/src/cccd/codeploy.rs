//! Joint deployment of two frames over one token set.
//!
//! The joint diagram keeps both frames, demotes their top cores, adds a new
//! top core whose types are the distinct columns of the two old tops, and
//! links bases at equal positions with cross arrows. Co-deployability is
//! commutativity of that diagram; a cross arrow that is not an
//! infomorphism makes the pair non-co-deployable outright.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::classifier::{Classifier, Infomorphism};
use crate::error::{input, Error, Result};
use crate::perm::Permutation;

use super::commute::{check_commutes, Witness};
use super::diagram::{cone_edge, token_labels, CoreRule, Diagram, Edge, Leg, Node, Role, RuleKind};
use super::morphism::rotate_index;

/// Token tables for cross arrows `x.A_l -> y.A_l`, indexed by token of
/// `y`, valued in tokens of `x`. Positions without a table use identity.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CrossMaps {
    pub tables: BTreeMap<usize, Vec<usize>>,
}

impl CrossMaps {
    pub fn identity() -> Self {
        CrossMaps::default()
    }

    /// Change of basis `z -> R(z)` at every position of the rotated suffix.
    pub fn basis_change(m: usize, k: usize, rho: &Permutation) -> Self {
        let table: Vec<usize> = (0..1usize << m).map(|z| rotate_index(m, k, rho, z)).collect();
        CrossMaps { tables: (k + 1..=m).map(|p| (p, table.clone())).collect() }
    }

    fn table(&self, position: usize, n: usize) -> Vec<usize> {
        self.tables.get(&position).cloned().unwrap_or_else(|| (0..n).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Failure {
    /// The supplied cross arrow violates adjointness.
    InvalidCross { from: String, to: String, violations: Vec<(String, String)> },
    /// The assembled diagram does not commute.
    NotCommuting { witness: Witness },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoDeployment {
    pub deployable: bool,
    pub failure: Option<Failure>,
}

fn relabel(d: &Diagram, prefix: &str, offset: usize) -> Result<(Vec<Node>, Vec<Edge>)> {
    let nodes = d
        .nodes()
        .iter()
        .map(|n| {
            let role = if n.role() == Role::TopCore { Role::ComponentCore } else { n.role() };
            let rule = n.rule().map(|r| CoreRule { kind: r.kind, children: r.children.iter().map(|c| c + offset).collect() });
            Node::new(n.classifier().with_id(format!("{prefix}.{}", n.id())), role, rule, n.pointer())
        })
        .collect::<Result<Vec<_>>>()?;
    let edges = d
        .edges()
        .iter()
        .map(|e| {
            let (s, t) = (&nodes[e.src], &nodes[e.dst]);
            let (sa, ta) = match e.leg {
                Leg::Cone => (s.dual().clone(), t.dual().clone()),
                _ => (s.classifier().clone(), t.classifier().clone()),
            };
            let map = Infomorphism::new(sa, ta, e.map.tok_map().to_vec(), e.map.typ_map().to_vec())?;
            Ok(Edge { src: e.src + offset, dst: e.dst + offset, leg: e.leg, map })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((nodes, edges))
}

fn by_column(src: &Arc<Classifier>, dst: &Arc<Classifier>, columns: &[Vec<bool>]) -> Result<Infomorphism> {
    let typ = (0..src.n_types())
        .map(|a| {
            let c = src.column(a);
            columns.iter().position(|x| *x == c).ok_or_else(|| Error::Structure("joint column missing".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Infomorphism::new(src.clone(), dst.clone(), (0..dst.n_tokens()).collect(), typ)
}

/// Assembles the joint diagram; an invalid cross arrow is reported as an
/// adjointness error.
pub fn joint_diagram(x: &Diagram, y: &Diagram, cross: &CrossMaps) -> Result<Diagram> {
    if x.dimension() != y.dimension() || !x.has_token_scheme() || !y.has_token_scheme() {
        return input("token-set mismatch between the two frames");
    }
    if x.edges().iter().chain(y.edges()).any(|e| e.leg == Leg::Cross) {
        return input("co-deployment expects single-frame diagrams");
    }
    let m = x.dimension();
    let n_tok = 1usize << m;
    for (p, t) in &cross.tables {
        if t.len() != n_tok || t.iter().any(|&v| v >= n_tok) {
            return input(format!("cross table at position {p} is not a token map"));
        }
    }
    let (mut nodes, mut edges) = relabel(x, "x", 0)?;
    let (ny, ey) = relabel(y, "y", nodes.len())?;
    let (xt, yt) = (x.top(), nodes.len() + y.top());
    nodes.extend(ny);
    edges.extend(ey);

    let mut names = Vec::new();
    let mut columns: Vec<Vec<bool>> = Vec::new();
    for t in [xt, yt] {
        let c = nodes[t].classifier();
        for (a, name) in c.types().iter().enumerate() {
            let col = c.column(a);
            if !columns.contains(&col) {
                names.push(format!("{}.{name}", if t == xt { "x" } else { "y" }));
                columns.push(col);
            }
        }
    }
    let joint_col: Vec<bool> = (0..n_tok).map(|z| nodes[xt].pointer_column()[z] && nodes[yt].pointer_column()[z]).collect();
    let pointer = match columns.iter().position(|c| *c == joint_col) {
        Some(p) => p,
        None => {
            names.push("joint".into());
            columns.push(joint_col);
            columns.len() - 1
        }
    };
    let jc = Classifier::from_fn("J", token_labels(m), names, |t, a| columns[a][t])?;
    let j = nodes.len();
    nodes.push(Node::new(jc, Role::TopCore, Some(CoreRule { kind: RuleKind::Conj, children: vec![xt, yt] }), pointer)?);

    let mut tops = Vec::new();
    for t in [xt, yt] {
        let map = by_column(nodes[t].classifier(), nodes[j].classifier(), &columns)?;
        tops.push(Edge { src: t, dst: j, leg: Leg::Cocone, map });
    }
    let duals = tops.iter().map(|e| cone_edge(&nodes, e)).collect::<Result<Vec<_>>>()?;
    edges.extend(tops);
    edges.extend(duals);

    let x_bases: Vec<usize> = (0..x.nodes().len()).filter(|&i| !nodes[i].role().is_core()).collect();
    let y_bases: Vec<usize> = (x.nodes().len()..j).filter(|&i| !nodes[i].role().is_core()).collect();
    for p in x.positions() {
        let xs = x_bases.iter().filter(|&&i| nodes[i].role().position() == Some(p));
        let ys: Vec<&usize> = y_bases.iter().filter(|&&i| nodes[i].role().position() == Some(p)).collect();
        for (&a, &b) in xs.zip(ys) {
            let map = Infomorphism::new(
                nodes[a].classifier().clone(),
                nodes[b].classifier().clone(),
                cross.table(p, n_tok),
                vec![0],
            )?;
            edges.push(Edge { src: a, dst: b, leg: Leg::Cross, map });
        }
    }
    Diagram::new(m, nodes, edges, vec![])
}

pub fn co_deployable(x: &Diagram, y: &Diagram, cross: &CrossMaps) -> Result<CoDeployment> {
    match joint_diagram(x, y, cross) {
        Ok(j) => {
            let report = check_commutes(&j);
            Ok(match report.witness {
                None => CoDeployment { deployable: true, failure: None },
                Some(witness) => CoDeployment { deployable: false, failure: Some(Failure::NotCommuting { witness }) },
            })
        }
        Err(Error::Adjointness(violations)) => {
            let (from, to) = first_invalid_cross(x, y, cross);
            Ok(CoDeployment { deployable: false, failure: Some(Failure::InvalidCross { from, to, violations }) })
        }
        Err(e) => Err(e),
    }
}

fn first_invalid_cross(x: &Diagram, y: &Diagram, cross: &CrossMaps) -> (String, String) {
    let n_tok = 1usize << x.dimension();
    for p in x.positions() {
        let xs = x.bases().into_iter().filter(|&i| x.nodes()[i].role().position() == Some(p));
        let ys: Vec<usize> = y.bases().into_iter().filter(|&i| y.nodes()[i].role().position() == Some(p)).collect();
        for (a, b) in xs.zip(ys) {
            let (ca, cb) = (x.nodes()[a].classifier(), y.nodes()[b].classifier());
            let table = cross.table(p, n_tok);
            if (0..n_tok).any(|z| ca.holds(table[z], 0) != cb.holds(z, 0)) {
                return (format!("x.{}", ca.id()), format!("y.{}", cb.id()));
            }
        }
    }
    (String::new(), String::new())
}
