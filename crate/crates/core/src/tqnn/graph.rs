//! Oriented graphs, face cycles and holonomies of group-valued link
//! configurations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::group::FiniteGroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Link {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNode {
    pub name: String,
    /// Open nodes end boundary legs and carry no gauge freedom.
    #[serde(default)]
    pub open: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct Graph {
    nodes: Vec<GraphNode>,
    links: Vec<Link>,
}

#[derive(Deserialize)]
struct RawGraph {
    nodes: Vec<GraphNode>,
    links: Vec<Link>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = Error;
    fn try_from(r: RawGraph) -> Result<Self> {
        Graph::new(r.nodes, r.links)
    }
}

impl Graph {
    pub fn new(nodes: Vec<GraphNode>, links: Vec<Link>) -> Result<Self> {
        if let Some(l) = links.iter().find(|l| l.src >= nodes.len() || l.dst >= nodes.len()) {
            return Err(Error::Structure(format!("link {} has a missing endpoint", l.name)));
        }
        Ok(Graph { nodes, links })
    }

    /// All nodes closed, links given as `(src, dst)`; names `v{i}`, `e{i}`.
    pub fn simple(nodes: usize, links: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            (0..nodes).map(|i| GraphNode { name: format!("v{i}"), open: false }).collect(),
            links.iter().enumerate().map(|(i, &(s, d))| Link { name: format!("e{i}"), src: s, dst: d }).collect(),
        )
    }

    pub fn nodes(&self) -> &[GraphNode] {
        &self.nodes
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    /// Nodes carrying gauge freedom.
    pub fn gauge_nodes(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&v| !self.nodes[v].open).collect()
    }

    /// Inserts a bivalent node on link `l`: `l` now ends at the new node
    /// and a new last link continues to the old target.
    pub fn subdivide(&self, l: usize) -> Result<Graph> {
        let link = self.links.get(l).ok_or_else(|| Error::Input(format!("no link {l}")))?.clone();
        let w = self.nodes.len();
        let mut nodes = self.nodes.clone();
        nodes.push(GraphNode { name: format!("{}_mid", link.name), open: false });
        let mut links = self.links.clone();
        links[l].dst = w;
        links.push(Link { name: format!("{}_b", link.name), src: w, dst: link.dst });
        Graph::new(nodes, links)
    }
}

/// A link traversed forwards (`true`) or backwards.
pub type Step = (usize, bool);

fn ends(g: &Graph, (l, fwd): Step) -> (usize, usize) {
    let k = &g.links[l];
    if fwd { (k.src, k.dst) } else { (k.dst, k.src) }
}

fn check_path(g: &Graph, path: &[Step]) -> Result<()> {
    if let Some(&(l, _)) = path.iter().find(|s| s.0 >= g.links.len()) {
        return Err(Error::Path(format!("no link {l}")));
    }
    for w in path.windows(2) {
        if ends(g, w[0]).1 != ends(g, w[1]).0 {
            return Err(Error::Path(format!("links {} and {} do not meet", g.links[w[0].0].name, g.links[w[1].0].name)));
        }
    }
    Ok(())
}

/// Ordered product along a path; later links multiply on the left, so
/// the result transforms as `h(end) H h(start)^-1`.
pub fn holonomy(g: &Graph, group: &FiniteGroup, config: &[usize], path: &[Step]) -> Result<usize> {
    check_path(g, path)?;
    Ok(holonomy_unchecked(group, config, path))
}

pub(crate) fn holonomy_unchecked(group: &FiniteGroup, config: &[usize], path: &[Step]) -> usize {
    path.iter().fold(group.identity(), |h, &(l, fwd)| {
        let x = if fwd { config[l] } else { group.inv(config[l]) };
        group.mul(x, h)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSet {
    faces: Vec<Vec<Step>>,
}

impl FaceSet {
    /// Every face must be a nonempty closed path.
    pub fn new(g: &Graph, faces: Vec<Vec<Step>>) -> Result<Self> {
        for f in &faces {
            check_path(g, f)?;
            match (f.first(), f.last()) {
                (Some(&a), Some(&b)) if ends(g, b).1 == ends(g, a).0 => {}
                _ => return Err(Error::Path("face is not a closed cycle".into())),
            }
        }
        Ok(FaceSet { faces })
    }

    pub fn empty() -> Self {
        FaceSet { faces: vec![] }
    }

    pub fn faces(&self) -> &[Vec<Step>] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Faces after [`Graph::subdivide`] of link `l`, whose second half is
    /// link `new_link`.
    pub fn subdivide(&self, l: usize, new_link: usize) -> FaceSet {
        let faces = self
            .faces
            .iter()
            .map(|f| {
                f.iter()
                    .flat_map(|&(k, fwd)| match (k == l, fwd) {
                        (false, _) => vec![(k, fwd)],
                        (true, true) => vec![(l, true), (new_link, true)],
                        (true, false) => vec![(new_link, false), (l, false)],
                    })
                    .collect()
            })
            .collect();
        FaceSet { faces }
    }
}

/// One node with two loops `a`, `b` and the face `a b a^-1 b^-1`.
pub fn torus() -> (Graph, FaceSet) {
    let g = Graph::simple(1, &[(0, 0), (0, 0)]).expect("valid");
    let f = FaceSet::new(&g, vec![vec![(0, true), (1, true), (0, false), (1, false)]]).expect("closed");
    (g, f)
}

/// One node, one loop `a`, faces `a` and `a^-1`.
pub fn sphere() -> (Graph, FaceSet) {
    let g = Graph::simple(1, &[(0, 0)]).expect("valid");
    let f = FaceSet::new(&g, vec![vec![(0, true)], vec![(0, false)]]).expect("closed");
    (g, f)
}
