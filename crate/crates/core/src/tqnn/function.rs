//! Cylindrical functions as dense tables over link configurations, with
//! the kinematic and flatness-projected inner products.
//!
//! A configuration assigns a group element to every link; its table
//! index reads the assignment as a mixed-radix number, link 0 most
//! significant.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{q, Q};

use super::cyclo::Cyclo;
use super::graph::{holonomy_unchecked, FaceSet, Graph};
use super::group::FiniteGroup;

/// Largest table a cylindrical function may carry.
pub const MAX_TABLE: usize = 1_000_000;

pub fn table_size(group: &FiniteGroup, links: usize) -> Result<usize> {
    let mut n: usize = 1;
    for _ in 0..links {
        n = n.checked_mul(group.order()).filter(|&n| n <= MAX_TABLE).ok_or_else(|| {
            Error::Bound(format!("|G|^|E| = {}^{links} exceeds the table limit {MAX_TABLE}", group.order()))
        })?;
    }
    Ok(n)
}

pub fn decode_config(order: usize, links: usize, mut idx: usize) -> Vec<usize> {
    let mut c = vec![0; links];
    for slot in c.iter_mut().rev() {
        *slot = idx % order;
        idx /= order;
    }
    c
}

pub fn encode_config(order: usize, c: &[usize]) -> usize {
    c.iter().fold(0, |acc, &g| acc * order + g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylindricalFunction {
    graph: Arc<Graph>,
    group: Arc<FiniteGroup>,
    values: Vec<Cyclo>,
}

impl CylindricalFunction {
    pub fn new(graph: Arc<Graph>, group: Arc<FiniteGroup>, values: Vec<Cyclo>) -> Result<Self> {
        let n = table_size(&group, graph.links().len())?;
        if values.len() != n {
            return Err(Error::Input(format!("table has {} entries, expected {n}", values.len())));
        }
        if values.iter().any(|v| v.order() != group.root()) {
            return Err(Error::Input("table values live over the wrong root of unity".into()));
        }
        Ok(CylindricalFunction { graph, group, values })
    }

    pub fn from_fn(graph: Arc<Graph>, group: Arc<FiniteGroup>, f: impl Fn(&[usize]) -> Cyclo) -> Result<Self> {
        let e = graph.links().len();
        let n = table_size(&group, e)?;
        let values = (0..n).map(|i| f(&decode_config(group.order(), e, i))).collect();
        Self::new(graph, group, values)
    }

    pub fn constant(graph: Arc<Graph>, group: Arc<FiniteGroup>, v: Q) -> Result<Self> {
        let root = group.root();
        Self::from_fn(graph, group, |_| Cyclo::from_q(root, v.clone()))
    }

    /// `prod_l chi_{labels[l]}(H_l)`.
    pub fn characters(graph: Arc<Graph>, group: Arc<FiniteGroup>, labels: &[usize]) -> Result<Self> {
        CharacterProduct::new(&graph, &group, labels.to_vec())?.expand(graph, group)
    }

    /// Matrix element `rho(H_l)[a][b]` of irrep `k` on link `l`.
    pub fn matrix_element(graph: Arc<Graph>, group: Arc<FiniteGroup>, l: usize, k: usize, a: usize, b: usize) -> Result<Self> {
        let r = group.irreps().get(k).ok_or_else(|| Error::Input(format!("no irrep {k}")))?.clone();
        if l >= graph.links().len() || a >= r.dim || b >= r.dim {
            return Err(Error::Input("link or matrix index out of range".into()));
        }
        Self::from_fn(graph, group, |c| r.matrices[c[l]][a * r.dim + b].clone())
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclo] {
        &self.values
    }

    pub fn value(&self, config: &[usize]) -> &Cyclo {
        &self.values[encode_config(self.group.order(), config)]
    }

    fn same_space(&self, o: &Self) -> Result<()> {
        if self.graph != o.graph || self.group != o.group {
            return Err(Error::Input("cylindrical functions live on different graphs or groups".into()));
        }
        Ok(())
    }

    fn configs(&self) -> impl Iterator<Item = (usize, Vec<usize>)> + '_ {
        let (g, e) = (self.group.order(), self.graph.links().len());
        (0..self.values.len()).map(move |i| (i, decode_config(g, e, i)))
    }

    /// Value at the gauge-transformed configuration:
    /// `H_e -> h(t(e)) H_e h(s(e))^-1`, open nodes fixed.
    pub fn gauge_transform(&self, h: &[usize]) -> Result<Self> {
        if h.len() != self.graph.nodes().len() {
            return Err(Error::Input("one group element per node is needed".into()));
        }
        let values = self.configs().map(|(_, c)| self.value(&act(&self.graph, &self.group, h, &c)).clone()).collect();
        Ok(CylindricalFunction { values, ..self.clone() })
    }
}

fn act(graph: &Graph, group: &FiniteGroup, h: &[usize], c: &[usize]) -> Vec<usize> {
    let hv = |v: usize| if graph.nodes()[v].open { group.identity() } else { h[v] };
    graph
        .links()
        .iter()
        .zip(c)
        .map(|(l, &x)| group.mul(group.mul(hv(l.dst), x), group.inv(hv(l.src))))
        .collect()
}

/// Product of one character per link, evaluated lazily.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterProduct {
    pub labels: Vec<usize>,
}

impl CharacterProduct {
    pub fn new(graph: &Graph, group: &FiniteGroup, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != graph.links().len() || labels.iter().any(|&k| k >= group.irreps().len()) {
            return Err(Error::Input("one valid irrep label per link is needed".into()));
        }
        Ok(CharacterProduct { labels })
    }

    pub fn eval(&self, group: &FiniteGroup, config: &[usize]) -> Cyclo {
        self.labels.iter().zip(config).fold(Cyclo::one(group.root()), |acc, (&k, &g)| &acc * &group.character(k, g))
    }

    pub fn expand(&self, graph: Arc<Graph>, group: Arc<FiniteGroup>) -> Result<CylindricalFunction> {
        let g = group.clone();
        CylindricalFunction::from_fn(graph, group, |c| self.eval(&g, c))
    }
}

fn inv_power(order: usize, e: usize) -> Q {
    Q::one() / Q::from_integer(num_bigint::BigInt::from(order).pow(e as u32))
}

/// `(1/|G|^|E|) sum_c conj(psi(c)) phi(c)`.
pub fn kinematic_inner(psi: &CylindricalFunction, phi: &CylindricalFunction) -> Result<Cyclo> {
    delta_inner(psi, phi, &FaceSet::empty(), 1)
}

/// The kinematic sum with `power` copies of the face deltas
/// `delta(g) = |G| [g = 1]` inserted for every face.
pub fn delta_inner(psi: &CylindricalFunction, phi: &CylindricalFunction, faces: &FaceSet, power: u32) -> Result<Cyclo> {
    psi.same_space(phi)?;
    let g = &psi.group;
    let e = psi.graph.links().len();
    let delta = Q::from_integer(g.order().into()).pow(power as i32 * faces.len() as i32);
    let mut sum = Cyclo::zero(g.root());
    for (i, c) in psi.configs() {
        if faces.faces().iter().all(|f| holonomy_unchecked(g, &c, f) == g.identity()) {
            sum.add_assign_ref(&(&psi.values[i].conj() * &phi.values[i]));
        }
    }
    Ok(sum.scale(&(delta * inv_power(g.order(), e))))
}

/// Flatness-projected inner product, `|G|^(|F|-|E|) sum over flat c`.
pub fn physical_inner(psi: &CylindricalFunction, phi: &CylindricalFunction, faces: &FaceSet) -> Result<Cyclo> {
    delta_inner(psi, phi, faces, 1)
}

/// Averages over gauge transformations at every closed node, one node at a
/// time (the node projectors commute and their product is the full average).
pub fn gauge_average(psi: &CylindricalFunction) -> CylindricalFunction {
    let g = &psi.group;
    let graph = &psi.graph;
    let e = graph.links().len();
    let inv_g = q(1, g.order() as i64);
    let mut values = psi.values.clone();
    for v in graph.gauge_nodes() {
        let incident: Vec<usize> = (0..e).filter(|&l| graph.links()[l].src == v || graph.links()[l].dst == v).collect();
        let mut next = Vec::with_capacity(values.len());
        for i in 0..values.len() {
            let c = decode_config(g.order(), e, i);
            let mut acc = Cyclo::zero(g.root());
            for h in 0..g.order() {
                let mut d = c.clone();
                for &l in &incident {
                    let link = &graph.links()[l];
                    let mut x = d[l];
                    if link.dst == v {
                        x = g.mul(h, x);
                    }
                    if link.src == v {
                        x = g.mul(x, g.inv(h));
                    }
                    d[l] = x;
                }
                acc.add_assign_ref(&values[encode_config(g.order(), &d)]);
            }
            next.push(acc.scale(&inv_g));
        }
        values = next;
    }
    CylindricalFunction { values, ..psi.clone() }
}

pub fn is_gauge_invariant(psi: &CylindricalFunction) -> bool {
    gauge_average(psi) == *psi
}

/// `|G|^(|F|-|E|)` times the number of flat configurations.
pub fn partition_function(graph: &Graph, faces: &FaceSet, group: &FiniteGroup) -> Result<Q> {
    let e = graph.links().len();
    let n = table_size(group, e)?;
    let flat = (0..n)
        .filter(|&i| {
            let c = decode_config(group.order(), e, i);
            faces.faces().iter().all(|f| holonomy_unchecked(group, &c, f) == group.identity())
        })
        .count();
    let scale = Q::from_integer(group.order().into()).pow(faces.len() as i32 - e as i32);
    Ok(scale * Q::from_integer(flat.into()))
}

/// Lifts a function to the graph with link `l` subdivided: the two halves
/// multiply back to the old link's element.
pub fn lift_subdivided(psi: &CylindricalFunction, l: usize) -> Result<CylindricalFunction> {
    let graph = Arc::new(psi.graph.subdivide(l)?);
    let e = psi.graph.links().len();
    let g = psi.group.clone();
    CylindricalFunction::from_fn(graph, g.clone(), |c| {
        let mut old = c[..e].to_vec();
        old[l] = g.mul(c[e], c[l]);
        psi.value(&old).clone()
    })
}

/// Dimension of the invariant space at node `v` for the given irrep
/// labels: `(1/|G|) sum_g prod chi(g)` with incoming links conjugated.
pub fn intertwiner_dimension(graph: &Graph, group: &FiniteGroup, labels: &[usize], v: usize) -> Cyclo {
    let one = |_g: usize| Cyclo::one(group.root());
    let f = |g: usize| {
        graph.links().iter().zip(labels).fold(Cyclo::one(group.root()), |acc, (link, &k)| {
            let mut acc = acc;
            if link.src == v {
                acc = &acc * &group.character(k, g).conj();
            }
            if link.dst == v {
                acc = &acc * &group.character(k, g);
            }
            acc
        })
    };
    group.class_inner(&one, &f)
}

/// Spin-network data: an irrep per link; its state is the gauge average of
/// the link-character product.
#[derive(Clone, Debug)]
pub struct SpinNetworkState {
    pub graph: Arc<Graph>,
    pub group: Arc<FiniteGroup>,
    pub labels: Vec<usize>,
}

impl SpinNetworkState {
    pub fn new(graph: Arc<Graph>, group: Arc<FiniteGroup>, labels: Vec<usize>) -> Result<Self> {
        CharacterProduct::new(&graph, &group, labels.clone())?;
        Ok(SpinNetworkState { graph, group, labels })
    }

    /// Invariant-space dimension at every closed node.
    pub fn intertwiner_dimensions(&self) -> Vec<Q> {
        self.graph
            .gauge_nodes()
            .into_iter()
            .map(|v| intertwiner_dimension(&self.graph, &self.group, &self.labels, v).as_rational().unwrap_or_else(Q::zero))
            .collect()
    }

    /// Whether every closed node admits an invariant (for cyclic groups:
    /// charge conservation).
    pub fn admissible(&self) -> bool {
        self.intertwiner_dimensions().iter().all(|d| *d >= Q::one())
    }

    pub fn state(&self) -> Result<CylindricalFunction> {
        Ok(gauge_average(&CylindricalFunction::characters(self.graph.clone(), self.group.clone(), &self.labels)?))
    }
}
