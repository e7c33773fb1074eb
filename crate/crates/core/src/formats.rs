//! JSON documents for every exchanged value, plus the plain-text and
//! greymap image readers. Rationals travel as `"a/b"` strings and bit
//! strings as `"0101"`.

use std::sync::Arc;

use indexmap::IndexMap;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cccd::{CoreRule, Diagram, Edge, Leg, Node, Role, RuleKind};
use crate::classifier::{Classifier, Infomorphism};
use crate::cobordism::{Cobordism, Generator, Sector};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::qrf::{BitString, CompositeQrf, ElementaryQrf, ProbabilisticQrf};
use crate::quiver::{QuiverRep, RepEdge};
use crate::rational::{fmt_q, parse_q, Q};
use crate::tqnn::{FaceSet, Graph, GraphNode, Link, TqnnImage};

/// Parses JSON, reporting the line and column of malformed input.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn bits_row(r: &[bool]) -> String {
    r.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn parse_bits_row(s: &str, width: usize) -> Result<Vec<bool>> {
    if s.len() != width {
        return Err(Error::Parse(format!("row {s:?} should have {width} entries")));
    }
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::Parse(format!("row {s:?} may only contain 0 and 1"))),
        })
        .collect()
}

fn qs(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

fn parse_qs(v: &[String]) -> Result<Vec<Q>> {
    v.iter().map(|s| parse_q(s)).collect()
}

/// A classifier: one `0/1` row per token, one column per type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifierDoc {
    pub id: String,
    pub tokens: Vec<String>,
    pub types: Vec<String>,
    pub rows: Vec<String>,
}

impl From<&Classifier> for ClassifierDoc {
    fn from(c: &Classifier) -> Self {
        ClassifierDoc {
            id: c.id().to_string(),
            tokens: c.tokens().iter().cloned().collect(),
            types: c.types().iter().cloned().collect(),
            rows: c.rows().iter().map(|r| bits_row(r)).collect(),
        }
    }
}

impl ClassifierDoc {
    pub fn build(&self) -> Result<Classifier> {
        if self.rows.len() != self.tokens.len() {
            return Err(Error::Parse(format!("classifier {} needs one row per token", self.id)));
        }
        let rel = self.rows.iter().map(|r| parse_bits_row(r, self.types.len())).collect::<Result<_>>()?;
        Classifier::new(self.id.clone(), self.tokens.clone(), self.types.clone(), rel)
    }
}

/// An infomorphism: token map from target tokens to source tokens, type
/// map from source types to target types.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfomorphismDoc {
    pub src: ClassifierDoc,
    pub dst: ClassifierDoc,
    pub tok: IndexMap<String, String>,
    pub typ: IndexMap<String, String>,
}

impl From<&Infomorphism> for InfomorphismDoc {
    fn from(f: &Infomorphism) -> Self {
        InfomorphismDoc {
            src: f.src().as_ref().into(),
            dst: f.dst().as_ref().into(),
            tok: f.tok_labels(),
            typ: f.typ_labels(),
        }
    }
}

impl InfomorphismDoc {
    pub fn build(&self) -> Result<Infomorphism> {
        Infomorphism::from_labels(Arc::new(self.src.build()?), Arc::new(self.dst.build()?), &self.tok, &self.typ)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QrfKind {
    Elementary,
    Composite,
    Probabilistic,
}

/// A frame: pointer bit strings, and for probabilistic frames the
/// `pointers x columns` table of rational probabilities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QrfDoc {
    pub kind: QrfKind,
    pub pointers: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QrfSpec {
    Elementary(ElementaryQrf),
    Composite(CompositeQrf),
    Probabilistic(ProbabilisticQrf),
}

impl QrfDoc {
    pub fn build(&self) -> Result<QrfSpec> {
        let pointers = self.pointers.iter().map(|s| s.parse()).collect::<Result<Vec<BitString>>>()?;
        match (self.kind, &self.table) {
            (QrfKind::Elementary, None) => match pointers.as_slice() {
                [e] => Ok(QrfSpec::Elementary(ElementaryQrf::new(*e))),
                _ => Err(Error::Input("an elementary frame has exactly one pointer".into())),
            },
            (QrfKind::Composite, None) => Ok(QrfSpec::Composite(CompositeQrf::new(pointers)?)),
            (QrfKind::Probabilistic, Some(t)) => {
                let table = t.iter().map(|r| parse_qs(r)).collect::<Result<_>>()?;
                Ok(QrfSpec::Probabilistic(ProbabilisticQrf::new(pointers, table)?))
            }
            (QrfKind::Probabilistic, None) => Err(Error::Parse("a probabilistic frame needs a table".into())),
            (_, Some(_)) => Err(Error::Parse("only probabilistic frames carry a table".into())),
        }
    }
}

impl From<&QrfSpec> for QrfDoc {
    fn from(s: &QrfSpec) -> Self {
        let strs = |ps: &[BitString]| ps.iter().map(|p| p.to_string()).collect();
        match s {
            QrfSpec::Elementary(e) => QrfDoc { kind: QrfKind::Elementary, pointers: vec![e.pointer().to_string()], table: None },
            QrfSpec::Composite(c) => QrfDoc { kind: QrfKind::Composite, pointers: strs(&c.pointers()), table: None },
            QrfSpec::Probabilistic(p) => QrfDoc {
                kind: QrfKind::Probabilistic,
                pointers: strs(p.pointers()),
                table: Some(p.table().iter().map(|r| qs(r)).collect()),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleDoc {
    pub kind: RuleKind,
    pub children: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDoc {
    pub classifier: ClassifierDoc,
    pub role: Role,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<RuleDoc>,
    pub pointer: String,
}

/// An arrow between nodes named by classifier id. Cone arrows map between
/// the transposed classifiers, so their token and type maps are read
/// against those.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub src: String,
    pub dst: String,
    pub leg: Leg,
    pub tok: IndexMap<String, String>,
    pub typ: IndexMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDoc {
    pub dimension: usize,
    #[serde(default)]
    pub blocks: Vec<(usize, usize)>,
    pub nodes: Vec<NodeDoc>,
    pub edges: Vec<EdgeDoc>,
}

impl From<&Diagram> for DiagramDoc {
    fn from(d: &Diagram) -> Self {
        let id = |i: usize| d.nodes()[i].id().to_string();
        DiagramDoc {
            dimension: d.dimension(),
            blocks: d.blocks().to_vec(),
            nodes: d
                .nodes()
                .iter()
                .map(|n| NodeDoc {
                    classifier: n.classifier().as_ref().into(),
                    role: n.role(),
                    rule: n.rule().map(|r| RuleDoc { kind: r.kind, children: r.children.iter().map(|&c| id(c)).collect() }),
                    pointer: n.classifier().types()[n.pointer()].clone(),
                })
                .collect(),
            edges: d
                .edges()
                .iter()
                .map(|e| EdgeDoc { src: id(e.src), dst: id(e.dst), leg: e.leg, tok: e.map.tok_labels(), typ: e.map.typ_labels() })
                .collect(),
        }
    }
}

impl DiagramDoc {
    pub fn build(&self) -> Result<Diagram> {
        let index: IndexMap<&str, usize> = self.nodes.iter().enumerate().map(|(i, n)| (n.classifier.id.as_str(), i)).collect();
        if index.len() != self.nodes.len() {
            return Err(Error::Parse("node ids must be distinct".into()));
        }
        let find = |s: &str| index.get(s).copied().ok_or_else(|| Error::Parse(format!("unknown node {s:?}")));
        let nodes = self
            .nodes
            .iter()
            .map(|n| {
                let c = n.classifier.build()?;
                let pointer = c.type_index(&n.pointer)?;
                let rule = match &n.rule {
                    Some(r) => Some(CoreRule { kind: r.kind, children: r.children.iter().map(|c| find(c)).collect::<Result<_>>()? }),
                    None => None,
                };
                Node::new(c, n.role, rule, pointer)
            })
            .collect::<Result<Vec<_>>>()?;
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let (s, d) = (find(&e.src)?, find(&e.dst)?);
                let (a, b) = match e.leg {
                    Leg::Cone => (nodes[s].dual().clone(), nodes[d].dual().clone()),
                    _ => (nodes[s].classifier().clone(), nodes[d].classifier().clone()),
                };
                Ok(Edge { src: s, dst: d, leg: e.leg, map: Infomorphism::from_labels(a, b, &e.tok, &e.typ)? })
            })
            .collect::<Result<Vec<_>>>()?;
        Diagram::new(self.dimension, nodes, edges, self.blocks.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepEdgeDoc {
    pub name: String,
    pub src: String,
    pub dst: String,
    /// `dim(dst)` rows of `dim(src)` rational entries.
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverDoc {
    pub vertices: Vec<String>,
    pub dims: Vec<usize>,
    pub edges: Vec<RepEdgeDoc>,
}

impl From<&QuiverRep> for QuiverDoc {
    fn from(r: &QuiverRep) -> Self {
        QuiverDoc {
            vertices: r.vertices().to_vec(),
            dims: r.dims().to_vec(),
            edges: r
                .edges()
                .iter()
                .map(|e| RepEdgeDoc {
                    name: e.name.clone(),
                    src: r.vertices()[e.src].clone(),
                    dst: r.vertices()[e.dst].clone(),
                    matrix: e.matrix.to_rows().iter().map(|row| qs(row)).collect(),
                })
                .collect(),
        }
    }
}

impl QuiverDoc {
    pub fn build(&self) -> Result<QuiverRep> {
        if self.dims.len() != self.vertices.len() {
            return Err(Error::Parse("one dimension per vertex is needed".into()));
        }
        let find = |s: &str| {
            self.vertices.iter().position(|v| v == s).ok_or_else(|| Error::Parse(format!("unknown vertex {s:?}")))
        };
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let (s, d) = (find(&e.src)?, find(&e.dst)?);
                let rows = e.matrix.iter().map(|r| parse_qs(r)).collect::<Result<Vec<_>>>()?;
                Ok(RepEdge { name: e.name.clone(), src: s, dst: d, matrix: Matrix::from_rows(rows, self.dims[s])? })
            })
            .collect::<Result<Vec<_>>>()?;
        QuiverRep::new(self.vertices.clone(), self.dims.clone(), edges)
    }
}

/// A cobordism word; the target boundary is emitted for reference and,
/// when present on input, must match the computed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CobordismDoc {
    pub source: Vec<Sector>,
    pub word: Vec<Generator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Vec<Sector>>,
}

impl From<&Cobordism> for CobordismDoc {
    fn from(c: &Cobordism) -> Self {
        CobordismDoc { source: c.source().to_vec(), word: c.word().to_vec(), target: Some(c.target().to_vec()) }
    }
}

impl CobordismDoc {
    pub fn build(&self) -> Result<Cobordism> {
        let c = Cobordism::new(self.source.clone(), self.word.clone())?;
        match &self.target {
            Some(t) if t.as_slice() != c.target() => Err(Error::Typing("declared target differs from the computed one".into())),
            _ => Ok(c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkDoc {
    pub name: String,
    pub src: String,
    pub dst: String,
}

/// A graph with face cycles; a face lists link names, `-name` for a
/// link traversed against its orientation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub nodes: Vec<GraphNode>,
    pub links: Vec<LinkDoc>,
    #[serde(default)]
    pub faces: Vec<Vec<String>>,
}

impl GraphDoc {
    pub fn from_graph(g: &Graph, faces: &FaceSet) -> Self {
        let name = |v: usize| g.nodes()[v].name.clone();
        GraphDoc {
            nodes: g.nodes().to_vec(),
            links: g.links().iter().map(|l| LinkDoc { name: l.name.clone(), src: name(l.src), dst: name(l.dst) }).collect(),
            faces: faces
                .faces()
                .iter()
                .map(|f| f.iter().map(|&(l, fwd)| format!("{}{}", if fwd { "" } else { "-" }, g.links()[l].name)).collect())
                .collect(),
        }
    }

    pub fn build(&self) -> Result<(Graph, FaceSet)> {
        let node = |s: &str| {
            self.nodes.iter().position(|n| n.name == s).ok_or_else(|| Error::Parse(format!("unknown node {s:?}")))
        };
        let links = self
            .links
            .iter()
            .map(|l| Ok(Link { name: l.name.clone(), src: node(&l.src)?, dst: node(&l.dst)? }))
            .collect::<Result<Vec<_>>>()?;
        let g = Graph::new(self.nodes.clone(), links)?;
        let link = |s: &str| {
            let (name, fwd) = match s.strip_prefix('-') {
                Some(rest) => (rest, false),
                None => (s, true),
            };
            g.links()
                .iter()
                .position(|l| l.name == name)
                .map(|i| (i, fwd))
                .ok_or_else(|| Error::Parse(format!("unknown link {name:?}")))
        };
        let faces = self.faces.iter().map(|f| f.iter().map(|s| link(s)).collect()).collect::<Result<Vec<_>>>()?;
        let faces = FaceSet::new(&g, faces)?;
        Ok((g, faces))
    }
}

/// Reads a grey-level grid: either whitespace-separated levels `0..=10`
/// one row per line (`#` starts a comment), or a plain greymap (`P2`)
/// whose values are rescaled to `0..=10` with rounding.
pub fn parse_image(text: &str) -> Result<TqnnImage> {
    let tokens: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .flat_map(|(i, l)| l.split('#').next().unwrap_or("").split_whitespace().map(move |t| (i + 1, t)))
        .collect();
    let num = |(line, t): (usize, &str)| {
        t.parse::<u32>().map_err(|_| Error::Parse(format!("line {line}: expected a nonnegative integer, got {t:?}")))
    };
    if tokens.first().map(|t| t.1) == Some("P2") {
        if tokens.len() < 4 {
            return Err(Error::Parse("line 1: truncated greymap header".into()));
        }
        let (w, h, max) = (num(tokens[1])? as usize, num(tokens[2])? as usize, num(tokens[3])?);
        if max == 0 {
            return Err(Error::Parse(format!("line {}: maximum value must be positive", tokens[3].0)));
        }
        let body = &tokens[4..];
        if body.len() != w * h {
            return Err(Error::Parse(format!("greymap declares {w}x{h} values but has {}", body.len())));
        }
        let levels = body
            .iter()
            .map(|&t| {
                let v = num(t)?;
                if v > max {
                    return Err(Error::Parse(format!("line {}: value {v} exceeds the maximum {max}", t.0)));
                }
                Ok(((v * 10 + max / 2) / max) as u8)
            })
            .collect::<Result<Vec<_>>>()?;
        return TqnnImage::new(h, w, levels);
    }
    let mut rows: Vec<Vec<u8>> = Vec::new();
    let mut last_line = 0;
    for (line, t) in tokens {
        let v = num((line, t))?;
        if v > 10 {
            return Err(Error::Parse(format!("line {line}: grey level {v} outside 0..=10")));
        }
        if line != last_line {
            rows.push(Vec::new());
            last_line = line;
        }
        rows.last_mut().expect("pushed").push(v as u8);
    }
    if let Some(w) = rows.first().map(Vec::len) {
        if let Some(i) = rows.iter().position(|r| r.len() != w) {
            return Err(Error::Parse(format!("image row {} has {} levels, expected {w}", i + 1, rows[i].len())));
        }
    }
    TqnnImage::from_rows(&rows)
}

pub fn image_to_text(img: &TqnnImage) -> String {
    let mut s = String::new();
    for r in 0..img.height() {
        let row: Vec<String> = (0..img.width()).map(|c| img.level(r, c).to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}
