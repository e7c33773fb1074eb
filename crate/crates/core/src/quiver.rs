//! Quiver representations over exact rationals, global sections, the
//! parallel-path obstruction report, and contextuality metrics for pairs
//! of frames.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::cccd::{check_commutes, co_deployable, remove_positions, CrossMaps, Diagram, Leg};
use crate::error::{input, Error, Result};
use crate::linalg::Matrix;
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepEdge {
    pub name: String,
    pub src: usize,
    pub dst: usize,
    /// Shape `dims[dst] x dims[src]`.
    pub matrix: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    vertices: Vec<String>,
    dims: Vec<usize>,
    edges: Vec<RepEdge>,
}

impl QuiverRep {
    pub fn new(vertices: Vec<String>, dims: Vec<usize>, edges: Vec<RepEdge>) -> Result<Self> {
        if vertices.len() != dims.len() {
            return input("one dimension per vertex required");
        }
        for e in &edges {
            if e.src >= dims.len() || e.dst >= dims.len() {
                return input(format!("edge {} has a missing endpoint", e.name));
            }
            if e.matrix.rows() != dims[e.dst] || e.matrix.cols() != dims[e.src] {
                return input(format!(
                    "edge {} matrix is {}x{}, expected {}x{}",
                    e.name,
                    e.matrix.rows(),
                    e.matrix.cols(),
                    dims[e.dst],
                    dims[e.src]
                ));
            }
        }
        Ok(QuiverRep { vertices, dims, edges })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn edges(&self) -> &[RepEdge] {
        &self.edges
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    fn offsets(&self) -> Vec<usize> {
        self.dims
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect()
    }

    /// Composite along `path` starting at `start`; identity for no edges.
    pub fn path_map(&self, start: usize, path: &[usize]) -> Result<Matrix> {
        if start >= self.dims.len() {
            return input("start vertex out of range");
        }
        let mut at = start;
        let mut m = Matrix::identity(self.dims[start]);
        for &e in path {
            let edge = self.edges.get(e).ok_or_else(|| Error::Path(format!("edge {e} does not exist")))?;
            if edge.src != at {
                return Err(Error::Path(format!("edge {} does not start where the path stands", edge.name)));
            }
            m = edge.matrix.mul(&m)?;
            at = edge.dst;
        }
        Ok(m)
    }

    /// The stacked constraint system `A_e γ_s − γ_t = 0`.
    pub fn constraint_matrix(&self) -> Matrix {
        let off = self.offsets();
        let n = self.total_dim();
        let mut rows = Vec::new();
        for e in &self.edges {
            for r in 0..self.dims[e.dst] {
                let mut row = vec![Q::zero(); n];
                for c in 0..self.dims[e.src] {
                    row[off[e.src] + c] += e.matrix.get(r, c);
                }
                row[off[e.dst] + r] -= Q::one();
                rows.push(row);
            }
        }
        Matrix::from_rows(rows, n).expect("rows have total length")
    }

    pub fn sections_basis(&self) -> SectionBasis {
        let vectors = self.constraint_matrix().nullspace();
        SectionBasis { rank: vectors.len(), offsets: self.offsets(), dims: self.dims.clone(), vectors }
    }

    /// Component of a vector of `Tot` at vertex `v`.
    pub fn component<'a>(&self, v: usize, gamma: &'a [Q]) -> &'a [Q] {
        let o = self.offsets()[v];
        &gamma[o..o + self.dims[v]]
    }

    pub fn is_section(&self, gamma: &[Q]) -> bool {
        gamma.len() == self.total_dim()
            && self.edges.iter().all(|e| {
                e.matrix.mul_vec(self.component(e.src, gamma)).map(|img| img == self.component(e.dst, gamma)).unwrap_or(false)
            })
    }

    /// Simple paths from `u`, grouped by end vertex; closed simple cycles
    /// back to `u` are listed under `u`.
    fn simple_paths(&self, u: usize) -> Vec<(usize, Vec<usize>)> {
        fn go(r: &QuiverRep, u: usize, at: usize, seen: &mut Vec<bool>, path: &mut Vec<usize>, out: &mut Vec<(usize, Vec<usize>)>) {
            for (i, e) in r.edges.iter().enumerate() {
                if e.src != at {
                    continue;
                }
                path.push(i);
                if e.dst == u {
                    out.push((u, path.clone()));
                } else if !seen[e.dst] {
                    seen[e.dst] = true;
                    out.push((e.dst, path.clone()));
                    go(r, u, e.dst, seen, path, out);
                    seen[e.dst] = false;
                }
                path.pop();
            }
        }
        let mut seen = vec![false; self.dims.len()];
        seen[u] = true;
        let mut out = Vec::new();
        go(self, u, u, &mut seen, &mut Vec::new(), &mut out);
        out
    }

    pub fn obstruction(&self) -> Result<ObstructionReport> {
        let mut pairs = Vec::new();
        let mut cycles = Vec::new();
        for u in 0..self.dims.len() {
            let paths = self.simple_paths(u);
            for v in 0..self.dims.len() {
                let to_v: Vec<&Vec<usize>> = paths.iter().filter(|(e, _)| *e == v).map(|(_, p)| p).collect();
                if v == u {
                    for p in to_v {
                        let diff = self.path_map(u, p)?.sub(&Matrix::identity(self.dims[u]))?;
                        let kernel = diff.nullspace();
                        cycles.push(Obstruction {
                            from: u,
                            to: u,
                            left: p.clone(),
                            right: vec![],
                            kernel_dim: kernel.len(),
                            difference: diff,
                            kernel,
                        });
                    }
                    continue;
                }
                for i in 0..to_v.len() {
                    for j in i + 1..to_v.len() {
                        let diff = self.path_map(u, to_v[i])?.sub(&self.path_map(u, to_v[j])?)?;
                        let kernel = diff.nullspace();
                        pairs.push(Obstruction {
                            from: u,
                            to: v,
                            left: to_v[i].clone(),
                            right: to_v[j].clone(),
                            kernel_dim: kernel.len(),
                            difference: diff,
                            kernel,
                        });
                    }
                }
            }
        }
        Ok(ObstructionReport { pairs, cycles })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionBasis {
    pub vectors: Vec<Vec<Q>>,
    pub rank: usize,
    offsets: Vec<usize>,
    dims: Vec<usize>,
}

impl SectionBasis {
    pub fn component<'a>(&self, gamma: &'a [Q], v: usize) -> &'a [Q] {
        &gamma[self.offsets[v]..self.offsets[v] + self.dims[v]]
    }
}

/// A parallel pair (or a closed cycle against the identity) and the kernel
/// of the difference of the two path maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub from: usize,
    pub to: usize,
    pub left: Vec<usize>,
    /// Empty for a cycle compared with the identity.
    pub right: Vec<usize>,
    pub difference: Matrix,
    pub kernel_dim: usize,
    pub kernel: Vec<Vec<Q>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub pairs: Vec<Obstruction>,
    pub cycles: Vec<Obstruction>,
}

impl ObstructionReport {
    /// Every section's component at each pair's source is annihilated by
    /// the pair's difference.
    pub fn sections_in_kernels(&self, r: &QuiverRep, basis: &SectionBasis) -> bool {
        self.pairs.iter().chain(&self.cycles).all(|o| {
            basis.vectors.iter().all(|g| {
                o.difference.mul_vec(basis.component(g, o.from)).map(|v| v.iter().all(Zero::is_zero)).unwrap_or(false)
            })
        }) && basis.vectors.iter().all(|g| r.is_section(g))
    }

    /// Vertices at which some pair forces every section to vanish.
    pub fn zero_vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.pairs.iter().chain(&self.cycles).filter(|o| o.kernel_dim == 0).map(|o| o.from).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Functions on tokens, pulled back along token maps: the edge of an
/// arrow `f: A -> B` acts as `(Lφ)(b) = φ(tok(b))`. Only commuting diagrams
/// are accepted; the cone half is omitted.
pub fn cccd_rep(d: &Diagram) -> Result<QuiverRep> {
    if let Some(w) = check_commutes(d).witness {
        return Err(Error::Structure(format!("diagram does not commute ({} to {})", w.from, w.to)));
    }
    let vertices = d.nodes().iter().map(|n| n.id().to_string()).collect();
    let dims: Vec<usize> = d.nodes().iter().map(|n| n.classifier().n_tokens()).collect();
    let edges = d
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.leg != Leg::Cone)
        .map(|(i, e)| {
            let mut m = Matrix::zeros(dims[e.dst], dims[e.src]);
            for (b, &a) in e.map.tok_map().iter().enumerate() {
                m.set(b, a, Q::one());
            }
            RepEdge { name: format!("e{i}"), src: e.src, dst: e.dst, matrix: m }
        })
        .collect();
    QuiverRep::new(vertices, dims, edges)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Contextuality {
    pub dimension: usize,
    /// Number of base positions of the second frame.
    pub total: usize,
    /// Positions removed in the minimizing choice.
    pub removed: Vec<usize>,
    /// The minimum needed the empty survivor set.
    pub empty_survivor: bool,
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Smallest number of base positions of `y` whose removal (cores rebuilt on
/// the survivors) makes `y` co-deployable with `x`; ties broken by the
/// lexicographically first position set.
pub fn contextuality_dimension(x: &Diagram, y: &Diagram, cross: &CrossMaps) -> Result<Contextuality> {
    if x.dimension() != y.dimension() || !x.has_token_scheme() || !y.has_token_scheme() {
        return input("incompatible token schemes");
    }
    let positions = y.positions();
    let total = positions.len();
    for r in 0..=total {
        for removed in combinations(&positions, r) {
            let reduced = if r == 0 { y.clone() } else { remove_positions(y, &removed)? };
            if co_deployable(x, &reduced, cross)?.deployable {
                return Ok(Contextuality { dimension: r, total, empty_survivor: r == total && r > 0, removed });
            }
        }
    }
    Err(Error::Structure("no reduction is co-deployable; the first frame does not commute".into()))
}

/// `(CF, 1 - CF)` with `CF = dimension / total`.
pub fn contextual_fraction(x: &Diagram, y: &Diagram, cross: &CrossMaps) -> Result<(Q, Q)> {
    let c = contextuality_dimension(x, y, cross)?;
    if c.total == 0 {
        return Err(Error::Degenerate("second frame has no base classifiers".into()));
    }
    let cf = Q::new(c.dimension.into(), c.total.into());
    Ok((cf.clone(), Q::one() - cf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cccd::{basis_rotation, build_elementary, fission};
    use crate::perm::Permutation;
    use crate::qrf::BitString;
    use crate::rational::{q, qi};

    fn mat(rows: &[Vec<i64>], cols: usize) -> Matrix {
        Matrix::from_i64(rows, cols).unwrap()
    }

    fn rep(dims: Vec<usize>, edges: Vec<(usize, usize, Matrix)>) -> QuiverRep {
        let vertices = (0..dims.len()).map(|i| format!("v{i}")).collect();
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(i, (src, dst, matrix))| RepEdge { name: format!("e{i}"), src, dst, matrix })
            .collect();
        QuiverRep::new(vertices, dims, edges).unwrap()
    }

    #[test]
    fn path_maps() {
        let a = mat(&[vec![1, 2], vec![0, 1]], 2);
        let b = mat(&[vec![0, 1], vec![1, 0]], 2);
        let r = rep(vec![2, 2, 2], vec![(0, 1, a.clone()), (1, 2, b.clone())]);
        assert_eq!(r.path_map(0, &[]).unwrap(), Matrix::identity(2));
        assert_eq!(r.path_map(0, &[0]).unwrap(), a);
        assert_eq!(r.path_map(0, &[0, 1]).unwrap(), mat(&[vec![0, 1], vec![1, 2]], 2));
        assert!(matches!(r.path_map(0, &[1]), Err(Error::Path(_))));
    }

    #[test]
    fn section_ranks() {
        assert_eq!(rep(vec![2, 3], vec![]).sections_basis().rank, 5);
        let r = rep(vec![2, 3], vec![(0, 1, mat(&[vec![1, 0], vec![2, 1], vec![0, 0]], 2))]);
        let s = r.sections_basis();
        assert_eq!(s.rank, 2);
        assert!(s.vectors.iter().all(|g| r.is_section(g)));
        // parallel edges: rank = dim ker(f - g)
        let f = mat(&[vec![1, 0], vec![0, 1]], 2);
        let g = mat(&[vec![1, 0], vec![0, 2]], 2);
        let r = rep(vec![2, 2], vec![(0, 1, f), (1, 1, Matrix::identity(2)), (0, 1, g)]);
        assert_eq!(r.sections_basis().rank, 1);
        assert!(QuiverRep::new(vec!["a".into()], vec![1], vec![RepEdge { name: "x".into(), src: 0, dst: 0, matrix: Matrix::identity(2) }]).is_err());
    }

    #[test]
    fn obstructions() {
        // f - g invertible: nothing survives at the source
        let f = mat(&[vec![1, 0], vec![0, 1]], 2);
        let g = mat(&[vec![0, 1], vec![-1, 0]], 2);
        let r = rep(vec![2, 2], vec![(0, 1, f), (0, 1, g)]);
        let report = r.obstruction().unwrap();
        assert_eq!(report.pairs.len(), 1);
        assert_eq!(report.pairs[0].kernel_dim, 0);
        assert_eq!(report.zero_vertices(), vec![0]);
        let s = r.sections_basis();
        assert_eq!(s.rank, 0);
        assert!(report.sections_in_kernels(&r, &s));
        // loop: sections are the eigenvalue-1 eigenspace
        let m = Matrix::from_rows(vec![vec![qi(1), qi(1)], vec![qi(0), q(1, 2)]], 2).unwrap();
        let r = rep(vec![2], vec![(0, 0, m.clone())]);
        let direct = m.sub(&Matrix::identity(2)).unwrap().nullspace();
        assert_eq!(r.sections_basis().rank, direct.len());
        assert_eq!(r.obstruction().unwrap().cycles[0].kernel_dim, 1);
    }

    #[test]
    fn elementary_representation() {
        let d = build_elementary(&"10".parse().unwrap()).unwrap();
        let r = cccd_rep(&d).unwrap();
        assert_eq!(r.dims(), &[4, 4, 4]);
        assert!(r.edges().iter().all(|e| e.matrix == Matrix::identity(4)));
        let report = r.obstruction().unwrap();
        assert!(report.pairs.iter().all(|o| o.difference.is_zero() && o.kernel_dim == 4));
        let (_, s) = fission(&build_elementary(&"101".parse().unwrap()).unwrap(), 1).unwrap();
        let rs = cccd_rep(&s).unwrap();
        let rep_report = rs.obstruction().unwrap();
        assert!(!rep_report.pairs.is_empty());
        assert!(rep_report.pairs.iter().all(|o| o.difference.is_zero()));
    }

    #[test]
    fn contextuality() {
        let e: BitString = "1011".parse().unwrap();
        let x = build_elementary(&e).unwrap();
        let c = contextuality_dimension(&x, &x, &CrossMaps::identity()).unwrap();
        assert_eq!(c.dimension, 0);
        let flip = Permutation::new(vec![1, 0]).unwrap();
        let (_, y) = basis_rotation(&x, 3, &flip).unwrap();
        for cross in [CrossMaps::identity(), CrossMaps::basis_change(4, 3, &flip)] {
            let c = contextuality_dimension(&x, &y, &cross).unwrap();
            assert_eq!((c.dimension, c.removed.clone()), (1, vec![4]));
            assert_eq!(contextual_fraction(&x, &y, &cross).unwrap(), (q(1, 4), q(3, 4)));
        }
        // every position flipped: only the empty survivor set works
        let (_, z) = basis_rotation(&x, 0, &Permutation::new((0..16).map(|v| 15 - v).collect()).unwrap()).unwrap();
        let c = contextuality_dimension(&x, &z, &CrossMaps::identity()).unwrap();
        assert_eq!(c.dimension, 4);
        assert!(c.empty_survivor);
        assert_eq!(contextual_fraction(&x, &z, &CrossMaps::identity()).unwrap().0, qi(1));
    }
}
