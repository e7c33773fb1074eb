//! Finite binary classifiers, infomorphisms, sequents and counting-measure
//! probabilities.
//!
//! An infomorphism `f: A -> B` carries a token map `Tok(B) -> Tok(A)` and a
//! type map `Typ(A) -> Typ(B)`; construction rejects any pair violating
//! `A.rel(tok(b), a) == B.rel(b, typ(a))`.

use std::sync::Arc;

use indexmap::{IndexMap, IndexSet};
use num_traits::{One, Zero};

use crate::error::{input, Error, Result};
use crate::rational::{in_unit_interval, Q};

#[derive(Clone, Debug)]
pub struct Classifier {
    id: String,
    tokens: IndexSet<String>,
    types: IndexSet<String>,
    rel: Vec<bool>,
}

// IndexSet equality ignores order; label order is part of a classifier.
impl PartialEq for Classifier {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
            && self.rel == other.rel
            && self.tokens.iter().eq(other.tokens.iter())
            && self.types.iter().eq(other.types.iter())
    }
}

impl Eq for Classifier {}

fn distinct(labels: Vec<String>, what: &str) -> Result<IndexSet<String>> {
    let mut set = IndexSet::with_capacity(labels.len());
    for l in labels {
        if !set.insert(l.clone()) {
            return input(format!("duplicate {what} label {l:?}"));
        }
    }
    Ok(set)
}

impl Classifier {
    /// `rel[t][a]` relates token `t` to type `a`.
    pub fn new(
        id: impl Into<String>,
        tokens: Vec<String>,
        types: Vec<String>,
        rel: Vec<Vec<bool>>,
    ) -> Result<Self> {
        let tokens = distinct(tokens, "token")?;
        let types = distinct(types, "type")?;
        if rel.len() != tokens.len() || rel.iter().any(|r| r.len() != types.len()) {
            return input(format!(
                "relation table must be {}x{}",
                tokens.len(),
                types.len()
            ));
        }
        Ok(Classifier { id: id.into(), tokens, types, rel: rel.into_iter().flatten().collect() })
    }

    pub fn from_fn(
        id: impl Into<String>,
        tokens: Vec<String>,
        types: Vec<String>,
        f: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let rel = (0..tokens.len()).map(|t| (0..types.len()).map(|a| f(t, a)).collect()).collect();
        Self::new(id, tokens, types, rel)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn tokens(&self) -> &IndexSet<String> {
        &self.tokens
    }

    pub fn types(&self) -> &IndexSet<String> {
        &self.types
    }

    pub fn n_tokens(&self) -> usize {
        self.tokens.len()
    }

    pub fn n_types(&self) -> usize {
        self.types.len()
    }

    pub fn holds(&self, token: usize, ty: usize) -> bool {
        self.rel[token * self.types.len() + ty]
    }

    pub fn column(&self, ty: usize) -> Vec<bool> {
        (0..self.n_tokens()).map(|t| self.holds(t, ty)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        (0..self.n_tokens()).map(|t| (0..self.n_types()).map(|a| self.holds(t, a)).collect()).collect()
    }

    pub fn token_index(&self, label: &str) -> Result<usize> {
        self.tokens
            .get_index_of(label)
            .ok_or_else(|| Error::Input(format!("unknown token {label:?} in {}", self.id)))
    }

    pub fn type_index(&self, label: &str) -> Result<usize> {
        self.types
            .get_index_of(label)
            .ok_or_else(|| Error::Input(format!("unknown type {label:?} in {}", self.id)))
    }

    pub fn type_indices(&self, labels: &[&str]) -> Result<Vec<usize>> {
        labels.iter().map(|l| self.type_index(l)).collect()
    }

    pub fn with_id(&self, id: impl Into<String>) -> Classifier {
        Classifier { id: id.into(), ..self.clone() }
    }

    /// Conjunction of the relation over `types`; vacuously true for none.
    pub fn satisfies(&self, token: usize, types: &[usize]) -> bool {
        types.iter().all(|&a| self.holds(token, a))
    }

    /// Label-level conjunction check.
    pub fn token_satisfies(&self, token: &str, types: &[&str]) -> Result<bool> {
        let t = self.token_index(token)?;
        let s = self.type_indices(types)?;
        Ok(self.satisfies(t, &s))
    }

    /// Tokens and types swapped, relation transposed.
    pub fn transpose(&self) -> Classifier {
        let rel = (0..self.n_types())
            .flat_map(|a| (0..self.n_tokens()).map(move |t| (a, t)))
            .map(|(a, t)| self.holds(t, a))
            .collect();
        Classifier {
            id: format!("{}^T", self.id),
            tokens: self.types.clone(),
            types: self.tokens.clone(),
            rel,
        }
    }
}

/// Result of checking adjointness: the violating (token of dst, type of src)
/// pairs, by label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<(String, String)>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks adjointness of raw index maps without constructing anything.
pub fn validate_infomorphism(
    src: &Classifier,
    dst: &Classifier,
    tok: &[usize],
    typ: &[usize],
) -> Result<ValidationReport> {
    if tok.len() != dst.n_tokens() || tok.iter().any(|&t| t >= src.n_tokens()) {
        return input("token map must be total from dst tokens into src tokens");
    }
    if typ.len() != src.n_types() || typ.iter().any(|&a| a >= dst.n_types()) {
        return input("type map must be total from src types into dst types");
    }
    let mut violations = Vec::new();
    for b in 0..dst.n_tokens() {
        for a in 0..src.n_types() {
            if src.holds(tok[b], a) != dst.holds(b, typ[a]) {
                violations.push((dst.tokens[b].clone(), src.types[a].clone()));
            }
        }
    }
    Ok(ValidationReport { violations })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Infomorphism {
    src: Arc<Classifier>,
    dst: Arc<Classifier>,
    tok: Vec<usize>,
    typ: Vec<usize>,
}

fn same(a: &Arc<Classifier>, b: &Arc<Classifier>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Infomorphism {
    pub fn new(src: Arc<Classifier>, dst: Arc<Classifier>, tok: Vec<usize>, typ: Vec<usize>) -> Result<Self> {
        let report = validate_infomorphism(&src, &dst, &tok, &typ)?;
        if !report.ok() {
            return Err(Error::Adjointness(report.violations));
        }
        Ok(Infomorphism { src, dst, tok, typ })
    }

    pub fn from_labels(
        src: Arc<Classifier>,
        dst: Arc<Classifier>,
        tok_map: &IndexMap<String, String>,
        typ_map: &IndexMap<String, String>,
    ) -> Result<Self> {
        let tok = dst
            .tokens()
            .iter()
            .map(|b| {
                let a = tok_map.get(b).ok_or_else(|| Error::Input(format!("token map misses {b:?}")))?;
                src.token_index(a)
            })
            .collect::<Result<Vec<_>>>()?;
        let typ = src
            .types()
            .iter()
            .map(|a| {
                let b = typ_map.get(a).ok_or_else(|| Error::Input(format!("type map misses {a:?}")))?;
                dst.type_index(b)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(src, dst, tok, typ)
    }

    pub fn identity(c: Arc<Classifier>) -> Self {
        let tok = (0..c.n_tokens()).collect();
        let typ = (0..c.n_types()).collect();
        Infomorphism { src: c.clone(), dst: c, tok, typ }
    }

    pub fn src(&self) -> &Arc<Classifier> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<Classifier> {
        &self.dst
    }

    pub fn tok_map(&self) -> &[usize] {
        &self.tok
    }

    pub fn typ_map(&self) -> &[usize] {
        &self.typ
    }

    pub fn tok_labels(&self) -> IndexMap<String, String> {
        self.dst
            .tokens()
            .iter()
            .zip(&self.tok)
            .map(|(b, &a)| (b.clone(), self.src.tokens()[a].clone()))
            .collect()
    }

    pub fn typ_labels(&self) -> IndexMap<String, String> {
        self.src
            .types()
            .iter()
            .zip(&self.typ)
            .map(|(a, &b)| (a.clone(), self.dst.types()[b].clone()))
            .collect()
    }

    /// `self: A -> B` followed by `g: B -> C`.
    pub fn compose(&self, g: &Infomorphism) -> Result<Infomorphism> {
        if !same(&self.dst, &g.src) {
            return Err(Error::Composition(format!(
                "codomain {} differs from domain {}",
                self.dst.id(),
                g.src.id()
            )));
        }
        let tok = g.tok.iter().map(|&c| self.tok[c]).collect();
        let typ = self.typ.iter().map(|&b| g.typ[b]).collect();
        Infomorphism::new(self.src.clone(), g.dst.clone(), tok, typ)
    }

    /// Dual arrow `B^T -> A^T` between transposed classifiers.
    pub fn transpose(&self) -> Infomorphism {
        Infomorphism {
            src: Arc::new(self.dst.transpose()),
            dst: Arc::new(self.src.transpose()),
            tok: self.typ.clone(),
            typ: self.tok.clone(),
        }
    }

    pub fn same_maps(&self, other: &Infomorphism) -> bool {
        self.tok == other.tok && self.typ == other.typ
    }

    pub fn is_identity(&self) -> bool {
        same(&self.src, &self.dst)
            && self.tok.iter().enumerate().all(|(i, &t)| i == t)
            && self.typ.iter().enumerate().all(|(i, &t)| i == t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequent {
    owner: Arc<Classifier>,
    antecedent: Vec<usize>,
    consequent: Vec<usize>,
}

impl Sequent {
    pub fn new(owner: Arc<Classifier>, antecedent: &[&str], consequent: &[&str]) -> Result<Self> {
        let antecedent = owner.type_indices(antecedent)?;
        let consequent = owner.type_indices(consequent)?;
        Ok(Sequent { owner, antecedent, consequent })
    }

    pub fn from_indices(owner: Arc<Classifier>, antecedent: Vec<usize>, consequent: Vec<usize>) -> Result<Self> {
        if antecedent.iter().chain(&consequent).any(|&a| a >= owner.n_types()) {
            return input("sequent type index out of range");
        }
        Ok(Sequent { owner, antecedent, consequent })
    }

    /// Every token satisfying all of M satisfies all of N.
    pub fn holds(&self) -> bool {
        (0..self.owner.n_tokens())
            .filter(|&t| self.owner.satisfies(t, &self.antecedent))
            .all(|t| self.owner.satisfies(t, &self.consequent))
    }

    pub fn probability(&self) -> Result<Q> {
        conditional_probability_idx(&self.owner, &self.antecedent, &self.consequent)
    }
}

/// `|M ∧ N| / |M|` under the uniform counting measure on tokens.
pub fn conditional_probability(c: &Classifier, m: &[&str], n: &[&str]) -> Result<Q> {
    conditional_probability_idx(c, &c.type_indices(m)?, &c.type_indices(n)?)
}

pub fn conditional_probability_idx(c: &Classifier, m: &[usize], n: &[usize]) -> Result<Q> {
    let m_tokens: Vec<usize> = (0..c.n_tokens()).filter(|&t| c.satisfies(t, m)).collect();
    if m_tokens.is_empty() {
        return Err(Error::UndefinedConditional(format!("no token of {} satisfies the antecedent", c.id())));
    }
    let both = m_tokens.iter().filter(|&&t| c.satisfies(t, n)).count();
    Ok(Q::new(both.into(), m_tokens.len().into()))
}

/// Marginal `|M| / |Tok|`.
pub fn marginal_probability(c: &Classifier, m: &[usize]) -> Result<Q> {
    if c.n_tokens() == 0 {
        return Err(Error::UndefinedConditional("classifier has no tokens".into()));
    }
    let k = (0..c.n_tokens()).filter(|&t| c.satisfies(t, m)).count();
    Ok(Q::new(k.into(), c.n_tokens().into()))
}

pub fn bayes_posterior(likelihood: &Q, prior: &Q, evidence: &Q) -> Result<Q> {
    for (name, v) in [("likelihood", likelihood), ("prior", prior), ("evidence", evidence)] {
        if !in_unit_interval(v) {
            return input(format!("{name} outside [0,1]"));
        }
    }
    if evidence.is_zero() {
        return Err(Error::Division("evidence is zero".into()));
    }
    let post = likelihood * prior / evidence;
    if post > Q::one() {
        return Err(Error::Inconsistent("posterior exceeds 1".into()));
    }
    Ok(post)
}

/// Edge of a belief diagram. `cond[k]` is the probability of the evidence
/// carried by this edge given the core alternative `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeliefEdge {
    pub src: usize,
    pub dst: usize,
    pub cond: Vec<Q>,
}

impl BeliefEdge {
    /// Conditionals read off a classifier: `cond[k] = P(evidence | alternative_k)`.
    pub fn from_classifier(
        src: usize,
        dst: usize,
        c: &Classifier,
        alternatives: &[&str],
        evidence: &[&str],
    ) -> Result<Self> {
        let cond = alternatives
            .iter()
            .map(|alt| conditional_probability(c, &[alt], evidence))
            .collect::<Result<Vec<_>>>()?;
        Ok(BeliefEdge { src, dst, cond })
    }
}

/// Hierarchical evidence diagram flowing from leaves toward a single core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeliefDiagram {
    pub nodes: Vec<String>,
    pub core: usize,
    pub alternatives: Vec<String>,
    pub prior: Vec<Q>,
    pub edges: Vec<BeliefEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Beliefs {
    /// Product of edge conditionals over all paths, before the prior.
    pub unnormalized: Vec<Q>,
    /// `prior * unnormalized`, renormalized over the alternatives.
    pub posterior: Vec<Q>,
}

/// Conditional independence across paths: each observed leaf contributes
/// the product of conditionals along every path to the core; contributions
/// multiply, then the prior is applied and the result renormalized.
pub fn propagate_beliefs(d: &BeliefDiagram, observed: &[usize]) -> Result<Beliefs> {
    let k = d.alternatives.len();
    if d.prior.len() != k || d.core >= d.nodes.len() {
        return input("prior length or core index inconsistent with diagram");
    }
    for e in &d.edges {
        if e.src >= d.nodes.len() || e.dst >= d.nodes.len() || e.cond.len() != k {
            return input("belief edge out of range or with wrong conditional count");
        }
        if e.cond.iter().any(|c| !in_unit_interval(c)) {
            return input("conditional outside [0,1]");
        }
    }
    if has_cycle(d.nodes.len(), &d.edges) {
        return Err(Error::Structure("belief diagram contains a cycle".into()));
    }
    let mut score = vec![Q::one(); k];
    for &leaf in observed {
        if leaf >= d.nodes.len() {
            return input("observed node out of range");
        }
        let mut path = Vec::new();
        collect_paths(d, leaf, &mut path, &mut |p: &[usize]| {
            for (alt, s) in score.iter_mut().enumerate() {
                for &e in p {
                    *s *= &d.edges[e].cond[alt];
                }
            }
        });
    }
    let weighted: Vec<Q> = score.iter().zip(&d.prior).map(|(s, p)| s * p).collect();
    let total = weighted.iter().fold(Q::zero(), |a, b| a + b);
    if total.is_zero() {
        return Err(Error::Degenerate("all alternatives have zero belief".into()));
    }
    let posterior = weighted.iter().map(|w| w / &total).collect();
    Ok(Beliefs { unnormalized: score, posterior })
}

fn collect_paths(d: &BeliefDiagram, at: usize, path: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if at == d.core {
        if !path.is_empty() {
            visit(path);
        }
        return;
    }
    for (i, e) in d.edges.iter().enumerate() {
        if e.src == at {
            path.push(i);
            collect_paths(d, e.dst, path, visit);
            path.pop();
        }
    }
}

fn has_cycle(n: usize, edges: &[BeliefEdge]) -> bool {
    // Kahn's algorithm: a cycle leaves nodes with positive in-degree.
    let mut indeg = vec![0usize; n];
    for e in edges {
        indeg[e.dst] += 1;
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for e in edges.iter().filter(|e| e.src == v) {
            indeg[e.dst] -= 1;
            if indeg[e.dst] == 0 {
                stack.push(e.dst);
            }
        }
    }
    seen != n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn two_by_one() -> Arc<Classifier> {
        Arc::new(Classifier::new("c", labels(&["t0", "t1"]), labels(&["a"]), vec![vec![true], vec![false]]).unwrap())
    }

    #[test]
    fn satisfaction_is_conjunction() {
        let c = Classifier::new(
            "c",
            labels(&["x", "y", "z"]),
            labels(&["a", "b"]),
            vec![vec![true, true], vec![true, false], vec![false, false]],
        )
        .unwrap();
        assert!(c.token_satisfies("z", &[]).unwrap());
        assert!(c.token_satisfies("x", &["a", "b"]).unwrap());
        assert!(!c.token_satisfies("y", &["a", "b"]).unwrap());
        assert!(c.token_satisfies("w", &[]).is_err());
        assert!(c.token_satisfies("x", &["q"]).is_err());
    }

    #[test]
    fn swapped_tokens_violate_adjointness() {
        let c = two_by_one();
        let report = validate_infomorphism(&c, &c, &[1, 0], &[0]).unwrap();
        assert_eq!(report.violations[0], ("t0".to_string(), "a".to_string()));
        assert!(Infomorphism::new(c.clone(), c.clone(), vec![1, 0], vec![0]).is_err());
        assert!(validate_infomorphism(&c, &c, &[0, 1], &[0]).unwrap().ok());
    }

    #[test]
    fn composition_matches_table_composition() {
        // A: tokens {p,q}, type {u}; B = transpose-free copy with swapped rows.
        let a = Arc::new(
            Classifier::new("A", labels(&["p", "q"]), labels(&["u", "v"]), vec![vec![true, false], vec![false, true]])
                .unwrap(),
        );
        let b = Arc::new(
            Classifier::new("B", labels(&["r", "s"]), labels(&["w", "x"]), vec![vec![false, true], vec![true, false]])
                .unwrap(),
        );
        let f = Infomorphism::new(a.clone(), b.clone(), vec![0, 1], vec![1, 0]).unwrap();
        let g = Infomorphism::new(b.clone(), a.clone(), vec![1, 0], vec![0, 1]).unwrap();
        let h = f.compose(&g).unwrap();
        // tok(c) = f.tok(g.tok(c)); typ(a) = g.typ(f.typ(a))
        assert_eq!(h.tok_map(), &[1, 0]);
        assert_eq!(h.typ_map(), &[1, 0]);
        assert!(f.compose(&Infomorphism::identity(b.clone())).unwrap().same_maps(&f));
        assert!(Infomorphism::identity(a.clone()).compose(&f).unwrap().same_maps(&f));
        assert!(f.compose(&f).is_err());
    }

    #[test]
    fn transpose_is_valid() {
        let a = two_by_one();
        let f = Infomorphism::identity(a);
        let t = f.transpose();
        assert!(validate_infomorphism(t.src(), t.dst(), t.tok_map(), t.typ_map()).unwrap().ok());
    }

    fn four_tokens() -> Classifier {
        // M = {a}; N = {b}. Tokens: 0:a,b  1:a  2:a,b  3:none
        Classifier::new(
            "c",
            labels(&["0", "1", "2", "3"]),
            labels(&["a", "b", "c"]),
            vec![vec![true, true, false], vec![true, false, true], vec![true, true, false], vec![false, false, false]],
        )
        .unwrap()
    }

    #[test]
    fn sequents() {
        let c = Arc::new(four_tokens());
        assert!(Sequent::new(c.clone(), &["a"], &["a"]).unwrap().holds());
        // no token satisfies {b, c}
        assert!(Sequent::new(c.clone(), &["b", "c"], &["a"]).unwrap().holds());
        // 2 of 3 a-tokens satisfy b
        assert!(!Sequent::new(c.clone(), &["a"], &["b"]).unwrap().holds());
        assert!(Sequent::new(c.clone(), &["b"], &["a"]).unwrap().holds());
    }

    #[test]
    fn counting_conditionals() {
        let c = four_tokens();
        assert_eq!(conditional_probability(&c, &["a"], &["b"]).unwrap(), q(2, 3));
        assert_eq!(conditional_probability(&c, &["a"], &[]).unwrap(), q(1, 1));
        assert_eq!(conditional_probability(&c, &["b"], &["a"]).unwrap(), q(1, 1));
        assert!(matches!(
            conditional_probability(&c, &["b", "c"], &["a"]),
            Err(Error::UndefinedConditional(_))
        ));
        // 4 tokens, 2 satisfy M, 1 of those N
        let d = Classifier::new(
            "d",
            labels(&["0", "1", "2", "3"]),
            labels(&["m", "n"]),
            vec![vec![true, true], vec![true, false], vec![false, true], vec![false, false]],
        )
        .unwrap();
        assert_eq!(conditional_probability(&d, &["m"], &["n"]).unwrap(), q(1, 2));
    }

    #[test]
    fn bayes() {
        assert_eq!(bayes_posterior(&q(1, 2), &q(1, 3), &q(1, 2)).unwrap(), q(1, 3));
        assert_eq!(bayes_posterior(&q(1, 1), &q(2, 5), &q(2, 5)).unwrap(), q(1, 1));
        assert!(matches!(bayes_posterior(&q(1, 2), &q(1, 2), &q(0, 1)), Err(Error::Division(_))));
        assert!(matches!(bayes_posterior(&q(1, 1), &q(1, 1), &q(1, 2)), Err(Error::Inconsistent(_))));
        // counting route vs formula route
        let c = four_tokens();
        let (a, b) = (vec![0], vec![1]);
        let lik = conditional_probability_idx(&c, &a, &b).unwrap();
        let prior = marginal_probability(&c, &a).unwrap();
        let ev = marginal_probability(&c, &b).unwrap();
        assert_eq!(bayes_posterior(&lik, &prior, &ev).unwrap(), conditional_probability_idx(&c, &b, &a).unwrap());
    }

    fn diagram(edges: Vec<BeliefEdge>, n: usize) -> BeliefDiagram {
        BeliefDiagram {
            nodes: (0..n).map(|i| format!("n{i}")).collect(),
            core: n - 1,
            alternatives: labels(&["k0", "k1"]),
            prior: vec![q(1, 2), q(1, 2)],
            edges,
        }
    }

    #[test]
    fn beliefs() {
        let one = vec![q(1, 1), q(1, 1)];
        let d = diagram(vec![BeliefEdge { src: 0, dst: 1, cond: one.clone() }], 2);
        assert_eq!(propagate_beliefs(&d, &[0]).unwrap().posterior, d.prior);

        let half = vec![q(1, 2), q(1, 2)];
        let d = diagram(
            vec![BeliefEdge { src: 0, dst: 1, cond: half.clone() }, BeliefEdge { src: 1, dst: 2, cond: half.clone() }],
            3,
        );
        let b = propagate_beliefs(&d, &[0]).unwrap();
        assert_eq!(b.unnormalized, vec![q(1, 4), q(1, 4)]);

        // diamond 0 -> {1,2} -> 3 with symmetric conditionals
        let sym = vec![q(1, 3), q(1, 3)];
        let d = diagram(
            vec![
                BeliefEdge { src: 0, dst: 1, cond: sym.clone() },
                BeliefEdge { src: 0, dst: 2, cond: sym.clone() },
                BeliefEdge { src: 1, dst: 3, cond: sym.clone() },
                BeliefEdge { src: 2, dst: 3, cond: sym.clone() },
            ],
            4,
        );
        let b = propagate_beliefs(&d, &[0]).unwrap();
        assert_eq!(b.posterior[0], b.posterior[1]);

        let d = diagram(
            vec![BeliefEdge { src: 0, dst: 1, cond: half.clone() }, BeliefEdge { src: 1, dst: 0, cond: half }],
            2,
        );
        assert!(matches!(propagate_beliefs(&d, &[0]), Err(Error::Structure(_))));
    }
}
