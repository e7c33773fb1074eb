//! Compilers from frames to diagrams and back.
//!
//! Elementary frames become one conjunctive core over single-bit bases.
//! Composite frames get one conjunctive component core per pointer and a
//! disjunctive top core. Sectored diagrams (the outputs of fission) keep
//! one conjunctive core per block under a conjunctive top core, with
//! shortcut arrows from every base straight to the top.

use crate::error::{input, Error, Result};
use crate::qrf::{BitString, CompositeQrf};

use super::diagram::{blueprint_of, Blueprint, CoreRule, Diagram, NodePlan, PlanKind, Role, RuleKind};

/// One base classifier of a sectored diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BaseSpec {
    pub position: usize,
    pub expect: bool,
    pub type_name: String,
    pub column: Vec<bool>,
}

pub(crate) fn bit_base(m: usize, position: usize, expect: bool) -> BaseSpec {
    BaseSpec {
        position,
        expect,
        type_name: format!("tau{position}"),
        column: BitString::all(m).map(|x| x.bit(position) == expect).collect(),
    }
}

/// Lemma-style construction: bases test one bit each, the core's pointer
/// type is their conjunction and so holds exactly at `e`.
pub fn build_elementary(e: &BitString) -> Result<Diagram> {
    let m = e.width();
    let bases = (1..=m).map(|p| bit_base(m, p, e.bit(p))).collect();
    sectored(m, bases, vec![(0, m)])
}

/// Theorem-style construction: a conjunctive component core per pointer,
/// all feeding a disjunctive top core.
pub fn build_composite(pointers: &[BitString]) -> Result<Diagram> {
    // Validates distinctness, common width and count.
    let qrf = CompositeQrf::new(pointers.to_vec())?;
    let m = qrf.dimension();
    let n = pointers.len();
    let mut nodes = Vec::new();
    let mut wiring = Vec::new();
    for (j, e) in pointers.iter().enumerate() {
        for p in 1..=m {
            let b = bit_base(m, p, e.bit(p));
            nodes.push(NodePlan {
                id: format!("A{}_{p}", j + 1),
                role: Role::Base { position: p, expect: b.expect },
                kind: PlanKind::Base { type_name: format!("tau{}_{p}", j + 1), column: b.column },
            });
        }
    }
    for j in 0..n {
        let children: Vec<usize> = (j * m..(j + 1) * m).collect();
        let core = nodes.len();
        wiring.extend(children.iter().map(|&c| (c, core)));
        nodes.push(NodePlan {
            id: format!("C{}", j + 1),
            role: Role::ComponentCore,
            kind: PlanKind::Core {
                rule: CoreRule { kind: RuleKind::Conj, children },
                pointer_name: format!("pi{}", j + 1),
            },
        });
    }
    let top = nodes.len();
    let cores: Vec<usize> = (n * m..n * m + n).collect();
    wiring.extend(cores.iter().map(|&c| (c, top)));
    nodes.push(NodePlan {
        id: "C".into(),
        role: Role::TopCore,
        kind: PlanKind::Core { rule: CoreRule { kind: RuleKind::Disj, children: cores }, pointer_name: "sigma".into() },
    });
    Blueprint { dimension: m, nodes, wiring, blocks: vec![(0, m)] }.build()
}

/// Builds the sectored conjunctive shape. `blocks` must partition the base
/// positions into intervals (0-based, half-open).
pub(crate) fn sectored(m: usize, mut bases: Vec<BaseSpec>, mut blocks: Vec<(usize, usize)>) -> Result<Diagram> {
    bases.sort_by_key(|b| b.position);
    blocks.sort_unstable();
    if bases.is_empty() {
        return input("a sectored diagram needs at least one base");
    }
    for w in bases.windows(2) {
        if w[0].position == w[1].position {
            return input(format!("position {} has two bases", w[0].position));
        }
    }
    let block_of = |p: usize| blocks.iter().position(|&(a, b)| a < p && p <= b);
    for b in &bases {
        if b.position > m || block_of(b.position).is_none() {
            return input(format!("base position {} is outside every block", b.position));
        }
    }
    for (k, &(a, b)) in blocks.iter().enumerate() {
        if k > 0 && blocks[k - 1].1 > a {
            return input("blocks overlap");
        }
        if (a + 1..=b).any(|p| !bases.iter().any(|s| s.position == p)) {
            return input(format!("block ({a},{b}) has positions without a base"));
        }
    }
    let mut nodes: Vec<NodePlan> = bases
        .iter()
        .map(|b| NodePlan {
            id: format!("A{}", b.position),
            role: Role::Base { position: b.position, expect: b.expect },
            kind: PlanKind::Base { type_name: b.type_name.clone(), column: b.column.clone() },
        })
        .collect();
    let nb = nodes.len();
    let mut wiring = Vec::new();
    let top_children = if blocks.len() == 1 {
        (0..nb).collect()
    } else {
        let mut cores = Vec::new();
        for (k, &(a, b)) in blocks.iter().enumerate() {
            let children: Vec<usize> = (0..nb).filter(|&i| bases[i].position > a && bases[i].position <= b).collect();
            let core = nodes.len();
            wiring.extend(children.iter().map(|&c| (c, core)));
            nodes.push(NodePlan {
                id: format!("S{}", k + 1),
                role: Role::ComponentCore,
                kind: PlanKind::Core {
                    rule: CoreRule { kind: RuleKind::Conj, children },
                    pointer_name: format!("pi{}", k + 1),
                },
            });
            cores.push(core);
        }
        cores
    };
    let top = nodes.len();
    wiring.extend(top_children.iter().map(|&c: &usize| (c, top)));
    if blocks.len() > 1 {
        wiring.extend((0..nb).map(|c| (c, top)));
    }
    nodes.push(NodePlan {
        id: "C".into(),
        role: Role::TopCore,
        kind: PlanKind::Core { rule: CoreRule { kind: RuleKind::Conj, children: top_children }, pointer_name: "pi".into() },
    });
    Blueprint { dimension: m, nodes, wiring, blocks }.build()
}

/// Bases and blocks of a diagram in sectored form; anything else is a
/// structure error.
pub(crate) fn sectored_parts(d: &Diagram) -> Result<(Vec<BaseSpec>, Vec<(usize, usize)>)> {
    d.require_token_scheme()?;
    let bases: Vec<BaseSpec> = d
        .bases()
        .into_iter()
        .map(|i| {
            let n = &d.nodes()[i];
            let Role::Base { position, expect } = n.role() else { unreachable!() };
            BaseSpec {
                position,
                expect,
                type_name: n.classifier().types()[0].clone(),
                column: n.classifier().column(0),
            }
        })
        .collect();
    let blocks = d.blocks().to_vec();
    let rebuilt = sectored(d.dimension(), bases.clone(), blocks.clone())
        .map_err(|e| Error::Structure(format!("not a sectored conjunctive diagram: {e}")))?;
    if rebuilt != *d {
        return Err(Error::Structure("not a sectored conjunctive diagram".into()));
    }
    let mut bases = bases;
    bases.sort_by_key(|b| b.position);
    Ok((bases, blocks))
}

/// Reads pointer values off conjunctive cores: the top core itself when it
/// is conjunctive, otherwise each child of a disjunctive top core.
pub fn cccd_to_qrf(d: &Diagram) -> Result<CompositeQrf> {
    d.require_token_scheme()?;
    d.verify_rules()?;
    let top = &d.nodes()[d.top()];
    let rule = top.rule().ok_or_else(|| Error::Structure("top core has no rule".into()))?;
    let cores: Vec<usize> = match rule.kind {
        RuleKind::Conj => vec![d.top()],
        RuleKind::Disj => rule.children.clone(),
    };
    let mut pointers = Vec::new();
    for c in cores {
        let node = &d.nodes()[c];
        match node.rule() {
            Some(r) if r.kind == RuleKind::Conj => {}
            _ => return Err(Error::Structure(format!("core {} is not conjunctive", node.id()))),
        }
        let col = node.pointer_column();
        let hits: Vec<usize> = (0..col.len()).filter(|&t| col[t]).collect();
        if hits.len() != 1 {
            return Err(Error::Structure(format!(
                "core {} singles out {} tokens, not exactly one",
                node.id(),
                hits.len()
            )));
        }
        pointers.push(BitString::new(d.dimension(), hits[0] as u64)?);
    }
    CompositeQrf::new(pointers)
}

/// Rebuilds a single-frame diagram after deleting every base at `positions`;
/// cores keep their rules over the surviving children.
pub(crate) fn remove_positions(d: &Diagram, positions: &[usize]) -> Result<Diagram> {
    let bp = blueprint_of(d)?;
    let keep: Vec<bool> = bp
        .nodes
        .iter()
        .map(|n| !matches!(n.role, Role::Base { position, .. } if positions.contains(&position)))
        .collect();
    let mut new_index = vec![usize::MAX; keep.len()];
    let mut k = 0;
    for (i, &kp) in keep.iter().enumerate() {
        if kp {
            new_index[i] = k;
            k += 1;
        }
    }
    let nodes = bp
        .nodes
        .iter()
        .zip(&keep)
        .filter(|(_, &kp)| kp)
        .map(|(n, _)| {
            let mut n = n.clone();
            if let PlanKind::Core { rule, .. } = &mut n.kind {
                rule.children = rule.children.iter().filter(|&&c| keep[c]).map(|&c| new_index[c]).collect();
            }
            n
        })
        .collect();
    let wiring = bp
        .wiring
        .iter()
        .filter(|(s, t)| keep[*s] && keep[*t])
        .map(|&(s, t)| (new_index[s], new_index[t]))
        .collect();
    Blueprint { dimension: bp.dimension, nodes, wiring, blocks: vec![] }.build()
}
