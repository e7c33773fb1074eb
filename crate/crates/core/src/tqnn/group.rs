//! Finite gauge groups with exact irreducible representations.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rational::{q, qi, Q};

use super::cyclo::Cyclo;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irrep {
    pub name: String,
    pub dim: usize,
    /// One row-major `dim x dim` matrix per group element.
    pub matrices: Vec<Vec<Cyclo>>,
}

impl Irrep {
    pub fn character(&self, g: usize) -> Cyclo {
        let m = &self.matrices[g];
        let root = m[0].order();
        (0..self.dim).fold(Cyclo::zero(root), |acc, i| &acc + &m[i * self.dim + i])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    mul: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    root: usize,
    irreps: Vec<Irrep>,
}

fn structure<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Structure(msg.into()))
}

fn mat_mul(a: &[Cyclo], b: &[Cyclo], d: usize, root: usize) -> Vec<Cyclo> {
    let mut out = vec![Cyclo::zero(root); d * d];
    for i in 0..d {
        for k in 0..d {
            for j in 0..d {
                out[i * d + j].add_assign_ref(&(&a[i * d + k] * &b[k * d + j]));
            }
        }
    }
    out
}

impl FiniteGroup {
    /// Validates the table (closure, identity, inverses, associativity for
    /// orders up to 24), that every irrep is a homomorphism, and character
    /// orthonormality.
    pub fn new(name: &str, labels: Vec<String>, mul: Vec<usize>, root: usize, irreps: Vec<Irrep>) -> Result<Self> {
        let n = labels.len();
        if n == 0 || mul.len() != n * n || mul.iter().any(|&x| x >= n) {
            return structure("multiplication table is not closed");
        }
        let at = |a: usize, b: usize| mul[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or_else(|| Error::Structure("no identity".into()))?;
        let inverse = (0..n)
            .map(|g| (0..n).find(|&h| at(g, h) == identity && at(h, g) == identity))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Structure("an element has no inverse".into()))?;
        if n <= 24 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if at(at(a, b), c) != at(a, at(b, c)) {
                            return structure(format!("not associative at ({a},{b},{c})"));
                        }
                    }
                }
            }
        }
        let g = FiniteGroup { name: name.into(), labels, mul, identity, inverse, root, irreps };
        for r in &g.irreps {
            if r.matrices.len() != n || r.matrices.iter().any(|m| m.len() != r.dim * r.dim) {
                return structure(format!("irrep {} has the wrong shape", r.name));
            }
            for a in 0..n {
                for b in 0..n {
                    if mat_mul(&r.matrices[a], &r.matrices[b], r.dim, root) != r.matrices[g.mul(a, b)] {
                        return structure(format!("irrep {} is not a homomorphism", r.name));
                    }
                }
            }
        }
        for i in 0..g.irreps.len() {
            for j in 0..g.irreps.len() {
                let ip = g.class_inner(&|x| g.character(i, x), &|x| g.character(j, x));
                let want = Cyclo::from_q(root, if i == j { qi(1) } else { Q::zero() });
                if ip != want {
                    return structure(format!("characters {i} and {j} are not orthonormal"));
                }
            }
        }
        Ok(g)
    }

    /// `Z_n` with irreps `g -> z^(k g)`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return structure("Z_0 is not a finite group");
        }
        let labels = (0..n).map(|g| g.to_string()).collect();
        let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let irreps = (0..n)
            .map(|k| Irrep {
                name: format!("chi{k}"),
                dim: 1,
                matrices: (0..n).map(|g| vec![Cyclo::root(n, (k * g) as i64)]).collect(),
            })
            .collect();
        Self::new(&format!("z{n}"), labels, mul, n, irreps)
    }

    /// Symmetric group on three letters; irreps trivial, sign and the
    /// two-dimensional standard one in the basis `e0-e1, e1-e2`.
    pub fn s3() -> Self {
        let perms: Vec<Permutation> = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]]
            .iter()
            .map(|p| Permutation::new(p.to_vec()).expect("valid"))
            .collect();
        let idx = |p: &Permutation| perms.iter().position(|x| x == p).expect("closed");
        // (a b)(x) = a(b(x))
        let mul = perms.iter().flat_map(|a| perms.iter().map(|b| idx(&b.then(a).expect("same size")))).collect();
        let c = |v: i64| Cyclo::from_q(1, qi(v));
        let sign = |p: &Permutation| {
            let inv = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p.apply(i) > p.apply(j)).count();
            if inv % 2 == 0 { 1 } else { -1 }
        };
        let standard = |p: &Permutation| {
            // image of basis vector b_j, re-expanded: v -> (v0, -v2)
            let img = |v: [i64; 3]| {
                let mut w = [0i64; 3];
                for (i, x) in v.iter().enumerate() {
                    w[p.apply(i)] += x;
                }
                (w[0], -w[2])
            };
            let (a0, b0) = img([1, -1, 0]);
            let (a1, b1) = img([0, 1, -1]);
            vec![c(a0), c(a1), c(b0), c(b1)]
        };
        let irreps = vec![
            Irrep { name: "trivial".into(), dim: 1, matrices: perms.iter().map(|_| vec![c(1)]).collect() },
            Irrep { name: "sign".into(), dim: 1, matrices: perms.iter().map(|p| vec![c(sign(p))]).collect() },
            Irrep { name: "standard".into(), dim: 2, matrices: perms.iter().map(standard).collect() },
        ];
        let labels = perms.iter().map(|p| p.cycles()).collect();
        Self::new("s3", labels, mul, 1, irreps).expect("built-in table is a group")
    }

    /// `z2` .. `z12` or `s3`.
    pub fn by_name(name: &str) -> Result<Self> {
        if name == "s3" {
            return Ok(Self::s3());
        }
        match name.strip_prefix('z').and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if (2..=12).contains(&n) => Self::cyclic(n),
            _ => Err(Error::Input(format!("unknown group {name}; expected z2..z12 or s3"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Order of the root of unity all values live over.
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn character(&self, k: usize, g: usize) -> Cyclo {
        self.irreps[k].character(g)
    }

    /// `(1/|G|) sum_g conj(f(g)) h(g)`.
    pub fn class_inner(&self, f: &dyn Fn(usize) -> Cyclo, h: &dyn Fn(usize) -> Cyclo) -> Cyclo {
        let mut s = Cyclo::zero(self.root);
        for g in 0..self.order() {
            s.add_assign_ref(&(&f(g).conj() * &h(g)));
        }
        s.scale(&q(1, self.order() as i64))
    }
}
