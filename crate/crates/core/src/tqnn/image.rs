//! Grey-level images as labelled dual-lattice graphs, and classification
//! by normalized physical overlaps.

use std::cmp::Ordering;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{q, Q};

use super::cyclo::Cyclo;
use super::function::{gauge_average, physical_inner, CylindricalFunction};
use super::graph::{FaceSet, Graph, GraphNode, Link};
use super::group::FiniteGroup;

pub const MAX_LEVEL: u8 = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TqnnImage {
    height: usize,
    width: usize,
    levels: Vec<u8>,
}

impl TqnnImage {
    pub fn new(height: usize, width: usize, levels: Vec<u8>) -> Result<Self> {
        if height == 0 || width == 0 || levels.len() != height * width {
            return Err(Error::Input(format!("a {height}x{width} grid needs {} levels", height * width)));
        }
        if let Some(l) = levels.iter().find(|&&l| l > MAX_LEVEL) {
            return Err(Error::Input(format!("grey level {l} outside 0..={MAX_LEVEL}")));
        }
        Ok(TqnnImage { height, width, levels })
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let w = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != w) {
            return Err(Error::Input("ragged image rows".into()));
        }
        Self::new(rows.len(), w, rows.concat())
    }

    pub fn uniform(height: usize, width: usize, level: u8) -> Result<Self> {
        Self::new(height, width, vec![level; height * width])
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn level(&self, r: usize, c: usize) -> u8 {
        self.levels[r * self.width + c]
    }

    pub fn levels(&self) -> &[u8] {
        &self.levels
    }
}

/// Dual-lattice graph of an image. Links are ordered: horizontal neighbour
/// links row by row, then vertical ones, then the boundary legs (up,
/// right, down, left per boundary pixel, pixels row by row). A neighbour
/// link carries the smaller of its two pixel levels; a leg carries its
/// pixel's own level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EncodedImage {
    pub graph: Graph,
    pub labels: Vec<u8>,
    pub faces: FaceSet,
    /// Number of neighbour links (legs follow them).
    pub internal: usize,
}

impl EncodedImage {
    /// Spin labels `m/2`.
    pub fn su2_labels(&self) -> Vec<Q> {
        self.labels.iter().map(|&m| q(m as i64, 2)).collect()
    }
}

pub fn encode_image(img: &TqnnImage) -> Result<EncodedImage> {
    let (h, w) = (img.height, img.width);
    let px = |r: usize, c: usize| r * w + c;
    let mut nodes: Vec<GraphNode> =
        (0..h * w).map(|i| GraphNode { name: format!("p{}_{}", i / w, i % w), open: false }).collect();
    let mut links = Vec::new();
    let mut labels = Vec::new();
    let mut link = |links: &mut Vec<Link>, name: String, src, dst, m| {
        links.push(Link { name, src, dst });
        labels.push(m);
    };
    for r in 0..h {
        for c in 0..w.saturating_sub(1) {
            let m = img.level(r, c).min(img.level(r, c + 1));
            link(&mut links, format!("h{r}_{c}"), px(r, c), px(r, c + 1), m);
        }
    }
    for r in 0..h.saturating_sub(1) {
        for c in 0..w {
            let m = img.level(r, c).min(img.level(r + 1, c));
            link(&mut links, format!("v{r}_{c}"), px(r, c), px(r + 1, c), m);
        }
    }
    let internal = links.len();
    for r in 0..h {
        for c in 0..w {
            let sides = [("up", r == 0), ("right", c + 1 == w), ("down", r + 1 == h), ("left", c == 0)];
            for (dir, edge) in sides {
                if edge {
                    let o = nodes.len();
                    nodes.push(GraphNode { name: format!("o{r}_{c}_{dir}"), open: true });
                    link(&mut links, format!("leg{r}_{c}_{dir}"), px(r, c), o, img.level(r, c));
                }
            }
        }
    }
    let graph = Graph::new(nodes, links)?;
    let hl = |r: usize, c: usize| r * (w - 1) + c;
    let vl = |r: usize, c: usize| h * (w - 1) + r * w + c;
    let mut faces = Vec::new();
    for r in 0..h.saturating_sub(1) {
        for c in 0..w.saturating_sub(1) {
            faces.push(vec![(hl(r, c), true), (vl(r, c + 1), true), (hl(r + 1, c), false), (vl(r, c), false)]);
        }
    }
    let faces = FaceSet::new(&graph, faces)?;
    Ok(EncodedImage { graph, labels, faces, internal })
}

/// Gauge-averaged product of `Z_n` characters `chi_(m mod n)` over links.
pub fn image_state(enc: &EncodedImage, n: usize) -> Result<CylindricalFunction> {
    let group = Arc::new(FiniteGroup::cyclic(n)?);
    let labels: Vec<usize> = enc.labels.iter().map(|&m| m as usize % n).collect();
    let psi = CylindricalFunction::characters(Arc::new(enc.graph.clone()), group, &labels)?;
    Ok(gauge_average(&psi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EncodeMode {
    Su2Labels,
    Abelian(usize),
}

#[derive(Clone, Debug)]
pub struct TqnnEncoding {
    pub encoded: EncodedImage,
    pub su2: Option<Vec<Q>>,
    pub state: Option<CylindricalFunction>,
}

pub fn image_to_tqnn(img: &TqnnImage, mode: EncodeMode) -> Result<TqnnEncoding> {
    let encoded = encode_image(img)?;
    Ok(match mode {
        EncodeMode::Su2Labels => TqnnEncoding { su2: Some(encoded.su2_labels()), encoded, state: None },
        EncodeMode::Abelian(n) => TqnnEncoding { state: Some(image_state(&encoded, n)?), encoded, su2: None },
    })
}

/// One archetype's normalized overlap with the test state, kept exactly
/// as `score^2 = |<test,arch>|^2 / (<test,test> <arch,arch>)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Score {
    pub archetype: usize,
    pub overlap_sq: String,
    pub norm_product: String,
    pub score: f64,
    pub exactly_one: bool,
    #[serde(skip)]
    exact: (Cyclo, Cyclo),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub ranking: Vec<Score>,
    /// Archetypes whose state (or the test state) has zero norm.
    pub unclassifiable: Vec<usize>,
}

fn compare(a: &Score, b: &Score) -> Ordering {
    // exact comparison when the floats cannot separate them
    let tie = (&a.exact.0 * &b.exact.1) == (&b.exact.0 * &a.exact.1);
    if tie {
        a.archetype.cmp(&b.archetype)
    } else {
        b.score.partial_cmp(&a.score).unwrap_or(Ordering::Equal).then(a.archetype.cmp(&b.archetype))
    }
}

/// Ranks archetypes by normalized physical overlap with the test image,
/// highest first, ties broken by archetype index.
pub fn tqnn_classify(test: &TqnnImage, archetypes: &[TqnnImage], n: usize, faces: Option<&FaceSet>) -> Result<Classification> {
    if archetypes.iter().any(|a| (a.height, a.width) != (test.height, test.width)) {
        return Err(Error::Input("archetypes and test image differ in shape".into()));
    }
    let enc = encode_image(test)?;
    let faces = faces.unwrap_or(&enc.faces);
    let psi = image_state(&enc, n)?;
    let psi_norm = physical_inner(&psi, &psi, faces)?;
    let mut ranking = Vec::new();
    let mut unclassifiable = Vec::new();
    for (k, a) in archetypes.iter().enumerate() {
        let phi = CylindricalFunction::new(psi.graph().clone(), psi.group().clone(), image_state(&encode_image(a)?, n)?.values().to_vec())?;
        let phi_norm = physical_inner(&phi, &phi, faces)?;
        let den = &psi_norm * &phi_norm;
        if den.is_zero() {
            unclassifiable.push(k);
            continue;
        }
        let num = physical_inner(&psi, &phi, faces)?.norm_sq();
        let score = (num.abs_f64() / den.abs_f64()).sqrt();
        ranking.push(Score {
            archetype: k,
            overlap_sq: num.to_string(),
            norm_product: den.to_string(),
            score,
            exactly_one: num == den,
            exact: (num, den),
        });
    }
    ranking.sort_by(compare);
    Ok(Classification { ranking, unclassifiable })
}
