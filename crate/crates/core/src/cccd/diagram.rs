//! Diagram data: nodes are classifiers tagged with a role, edges are
//! infomorphisms tagged with the half of the diagram they belong to.
//!
//! Cone edges live between the *transposed* classifiers of their endpoints
//! (tokens and types swapped), so a cone arrow `core -> base` is an honest
//! infomorphism `core^T -> base^T`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::classifier::{Classifier, Infomorphism};
use crate::error::{input, Error, Result};
use crate::qrf::BitString;

/// Largest bit width for which diagrams over `{0,1}^m` are materialized.
pub const MAX_DIAGRAM_WIDTH: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Role {
    /// Single-type classifier testing one coordinate. `position` is 1-based;
    /// the coordinate read by the base is `expect` when the type holds and
    /// its negation otherwise.
    Base { position: usize, expect: bool },
    ComponentCore,
    TopCore,
}

impl Role {
    pub fn position(&self) -> Option<usize> {
        match self {
            Role::Base { position, .. } => Some(*position),
            _ => None,
        }
    }

    pub fn is_core(&self) -> bool {
        !matches!(self, Role::Base { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    Conj,
    Disj,
}

/// How a core's pointer column is computed from its children's pointer
/// columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoreRule {
    pub kind: RuleKind,
    pub children: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Leg {
    Cocone,
    Cone,
    Cross,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    classifier: Arc<Classifier>,
    dual: Arc<Classifier>,
    role: Role,
    rule: Option<CoreRule>,
    pointer: usize,
}

impl Node {
    pub fn new(classifier: Classifier, role: Role, rule: Option<CoreRule>, pointer: usize) -> Result<Self> {
        if pointer >= classifier.n_types() {
            return input(format!("pointer type {pointer} out of range in {}", classifier.id()));
        }
        if matches!(role, Role::Base { .. }) && rule.is_some() {
            return input("base nodes carry no core rule");
        }
        if let Role::Base { position: 0, .. } = role {
            return input("base positions are 1-based");
        }
        let dual = Arc::new(classifier.transpose());
        Ok(Node { classifier: Arc::new(classifier), dual, role, rule, pointer })
    }

    pub fn classifier(&self) -> &Arc<Classifier> {
        &self.classifier
    }

    pub fn dual(&self) -> &Arc<Classifier> {
        &self.dual
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn rule(&self) -> Option<&CoreRule> {
        self.rule.as_ref()
    }

    pub fn pointer(&self) -> usize {
        self.pointer
    }

    pub fn pointer_column(&self) -> Vec<bool> {
        self.classifier.column(self.pointer)
    }

    pub fn id(&self) -> &str {
        self.classifier.id()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub leg: Leg,
    pub map: Infomorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    dimension: usize,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    blocks: Vec<(usize, usize)>,
}

impl Diagram {
    /// Validates edge endpoints and classifiers and the single top core.
    /// Commutativity is *not* enforced here; see `check_commutes`.
    pub fn new(dimension: usize, nodes: Vec<Node>, edges: Vec<Edge>, blocks: Vec<(usize, usize)>) -> Result<Self> {
        let tops = nodes.iter().filter(|n| n.role == Role::TopCore).count();
        if tops != 1 {
            return Err(Error::Structure(format!("expected exactly one top core, found {tops}")));
        }
        for n in &nodes {
            if let Some(rule) = &n.rule {
                if rule.children.iter().any(|&c| c >= nodes.len()) {
                    return Err(Error::Structure(format!("core {} names a missing child", n.id())));
                }
            }
        }
        for (i, e) in edges.iter().enumerate() {
            if e.src >= nodes.len() || e.dst >= nodes.len() {
                return Err(Error::Structure(format!("edge {i} has a missing endpoint")));
            }
            let (s, d) = match e.leg {
                Leg::Cocone | Leg::Cross => (&nodes[e.src].classifier, &nodes[e.dst].classifier),
                Leg::Cone => (&nodes[e.src].dual, &nodes[e.dst].dual),
            };
            let fits = |a: &Arc<Classifier>, b: &Arc<Classifier>| Arc::ptr_eq(a, b) || a == b;
            if !fits(e.map.src(), s) || !fits(e.map.dst(), d) {
                return Err(Error::Structure(format!("edge {i} map does not match its endpoint classifiers")));
            }
        }
        for &(a, b) in &blocks {
            if a >= b || b > dimension {
                return input(format!("block ({a},{b}) invalid for dimension {dimension}"));
            }
        }
        Ok(Diagram { dimension, nodes, edges, blocks })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Sector structure: half-open 0-based slot ranges.
    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn top(&self) -> usize {
        self.nodes.iter().position(|n| n.role == Role::TopCore).expect("validated")
    }

    pub fn node_by_id(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id() == id)
    }

    /// Base nodes in node order.
    pub fn bases(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| !self.nodes[i].role.is_core()).collect()
    }

    /// Distinct base positions, ascending.
    pub fn positions(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.nodes.iter().filter_map(|n| n.role.position()).collect();
        p.sort_unstable();
        p.dedup();
        p
    }

    /// True when every node's tokens are the strings of `{0,1}^dimension`
    /// in index order.
    pub fn has_token_scheme(&self) -> bool {
        if self.dimension == 0 || self.dimension > MAX_DIAGRAM_WIDTH {
            return false;
        }
        let labels = token_labels(self.dimension);
        self.nodes.iter().all(|n| n.classifier.tokens().iter().eq(labels.iter()))
    }

    pub(crate) fn require_token_scheme(&self) -> Result<()> {
        if self.has_token_scheme() {
            Ok(())
        } else {
            input(format!("diagram tokens are not the strings of width {}", self.dimension))
        }
    }

    /// Checks every core rule against the stored columns.
    pub fn verify_rules(&self) -> Result<()> {
        for n in &self.nodes {
            let Some(rule) = &n.rule else { continue };
            let expect = combine(
                rule.kind,
                rule.children.iter().map(|&c| self.nodes[c].pointer_column()).collect(),
                n.classifier.n_tokens(),
            );
            if expect != n.pointer_column() {
                return Err(Error::Structure(format!(
                    "core {} pointer column is not the {:?} of its children",
                    n.id(),
                    rule.kind
                )));
            }
        }
        Ok(())
    }
}

pub fn token_labels(m: usize) -> Vec<String> {
    BitString::all(m).map(|b| b.to_string()).collect()
}

pub(crate) fn combine(kind: RuleKind, cols: Vec<Vec<bool>>, n: usize) -> Vec<bool> {
    (0..n)
        .map(|t| match kind {
            RuleKind::Conj => cols.iter().all(|c| c[t]),
            RuleKind::Disj => cols.iter().any(|c| c[t]),
        })
        .collect()
}

/// Identity on tokens, types matched by label. Both classifiers must share
/// their token list.
pub(crate) fn by_name(src: &Arc<Classifier>, dst: &Arc<Classifier>) -> Result<Infomorphism> {
    if !src.tokens().iter().eq(dst.tokens().iter()) {
        return input(format!("{} and {} do not share tokens", src.id(), dst.id()));
    }
    let tok = (0..dst.n_tokens()).collect();
    let typ = src.types().iter().map(|a| dst.type_index(a)).collect::<Result<Vec<_>>>()?;
    Infomorphism::new(src.clone(), dst.clone(), tok, typ)
}

pub(crate) fn cocone_edge(nodes: &[Node], src: usize, dst: usize) -> Result<Edge> {
    Ok(Edge { src, dst, leg: Leg::Cocone, map: by_name(&nodes[src].classifier, &nodes[dst].classifier)? })
}

/// Dual of the cocone arrow `base -> core`, running `core -> base`.
pub(crate) fn cone_edge(nodes: &[Node], cocone: &Edge) -> Result<Edge> {
    let f = &cocone.map;
    let map = Infomorphism::new(
        nodes[cocone.dst].dual.clone(),
        nodes[cocone.src].dual.clone(),
        f.typ_map().to_vec(),
        f.tok_map().to_vec(),
    )?;
    Ok(Edge { src: cocone.dst, dst: cocone.src, leg: Leg::Cone, map })
}

/// Recipe from which a single-frame diagram over `{0,1}^m` is rebuilt:
/// base columns are given, core columns are recomputed from rules, cocone
/// edges follow `wiring` and every cocone edge gets its cone dual.
#[derive(Clone, Debug)]
pub(crate) struct Blueprint {
    pub dimension: usize,
    pub nodes: Vec<NodePlan>,
    pub wiring: Vec<(usize, usize)>,
    pub blocks: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub(crate) struct NodePlan {
    pub id: String,
    pub role: Role,
    pub kind: PlanKind,
}

#[derive(Clone, Debug)]
pub(crate) enum PlanKind {
    Base { type_name: String, column: Vec<bool> },
    Core { rule: CoreRule, pointer_name: String },
}

impl Blueprint {
    pub fn build(&self) -> Result<Diagram> {
        let m = self.dimension;
        if m == 0 || m > MAX_DIAGRAM_WIDTH {
            return input(format!("diagram width {m} outside 1..={MAX_DIAGRAM_WIDTH}"));
        }
        let tokens = token_labels(m);
        let mut built: Vec<Option<Node>> = vec![None; self.nodes.len()];
        for i in 0..self.nodes.len() {
            self.build_node(i, &tokens, &mut built, &mut Vec::new())?;
        }
        let nodes: Vec<Node> = built.into_iter().map(|n| n.expect("all built")).collect();
        let cocone = self
            .wiring
            .iter()
            .map(|&(s, d)| cocone_edge(&nodes, s, d))
            .collect::<Result<Vec<_>>>()?;
        let cone = cocone.iter().map(|e| cone_edge(&nodes, e)).collect::<Result<Vec<_>>>()?;
        let edges = cocone.into_iter().chain(cone).collect();
        Diagram::new(m, nodes, edges, self.blocks.clone())
    }

    fn build_node(
        &self,
        i: usize,
        tokens: &[String],
        built: &mut Vec<Option<Node>>,
        stack: &mut Vec<usize>,
    ) -> Result<()> {
        if built[i].is_some() {
            return Ok(());
        }
        if stack.contains(&i) {
            return Err(Error::Structure("core rules are cyclic".into()));
        }
        let plan = &self.nodes[i];
        let node = match &plan.kind {
            PlanKind::Base { type_name, column } => {
                if column.len() != tokens.len() {
                    return input(format!("base {} column has wrong length", plan.id));
                }
                let c = Classifier::from_fn(plan.id.clone(), tokens.to_vec(), vec![type_name.clone()], |t, _| {
                    column[t]
                })?;
                Node::new(c, plan.role, None, 0)?
            }
            PlanKind::Core { rule, pointer_name } => {
                stack.push(i);
                for &c in &rule.children {
                    if c >= self.nodes.len() {
                        return Err(Error::Structure(format!("core {} names a missing child", plan.id)));
                    }
                    self.build_node(c, tokens, built, stack)?;
                }
                stack.pop();
                let mut names: Vec<String> = Vec::new();
                let mut columns: Vec<Vec<bool>> = Vec::new();
                for &c in &rule.children {
                    let child = built[c].as_ref().expect("built above");
                    for (a, name) in child.classifier.types().iter().enumerate() {
                        let col = child.classifier.column(a);
                        match names.iter().position(|n| n == name) {
                            Some(k) if columns[k] != col => {
                                return Err(Error::Structure(format!(
                                    "type {name} carries different columns below core {}",
                                    plan.id
                                )))
                            }
                            Some(_) => {}
                            None => {
                                names.push(name.clone());
                                columns.push(col);
                            }
                        }
                    }
                }
                if names.contains(pointer_name) {
                    return Err(Error::Structure(format!("pointer type {pointer_name} clashes with a child type")));
                }
                let child_ptrs = rule
                    .children
                    .iter()
                    .map(|&c| built[c].as_ref().expect("built").pointer_column())
                    .collect();
                names.push(pointer_name.clone());
                columns.push(combine(rule.kind, child_ptrs, tokens.len()));
                let pointer = names.len() - 1;
                let c = Classifier::from_fn(plan.id.clone(), tokens.to_vec(), names, |t, a| columns[a][t])?;
                Node::new(c, plan.role, Some(rule.clone()), pointer)?
            }
        };
        built[i] = Some(node);
        Ok(())
    }
}

/// Recovers the recipe of a single-frame diagram (no cross edges).
pub(crate) fn blueprint_of(d: &Diagram) -> Result<Blueprint> {
    d.require_token_scheme()?;
    if d.edges.iter().any(|e| e.leg == Leg::Cross) {
        return Err(Error::Structure("diagram with cross edges has no single-frame recipe".into()));
    }
    let nodes = d
        .nodes
        .iter()
        .map(|n| {
            let kind = match (&n.rule, n.role) {
                (None, Role::Base { .. }) => {
                    if n.classifier.n_types() != 1 {
                        return Err(Error::Structure(format!("base {} must carry exactly one type", n.id())));
                    }
                    PlanKind::Base { type_name: n.classifier.types()[0].clone(), column: n.classifier.column(0) }
                }
                (Some(rule), _) => PlanKind::Core {
                    rule: rule.clone(),
                    pointer_name: n.classifier.types()[n.pointer].clone(),
                },
                (None, _) => return Err(Error::Structure(format!("core {} has no rule", n.id()))),
            };
            Ok(NodePlan { id: n.id().to_string(), role: n.role, kind })
        })
        .collect::<Result<Vec<_>>>()?;
    let wiring = d.edges.iter().filter(|e| e.leg == Leg::Cocone).map(|e| (e.src, e.dst)).collect();
    Ok(Blueprint { dimension: d.dimension, nodes, wiring, blocks: d.blocks.clone() })
}
