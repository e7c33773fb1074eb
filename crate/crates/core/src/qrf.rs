//! Deterministic and probabilistic reference frames on m-bit strings.
//!
//! Bit positions are 1-based with position 1 the most significant bit, so
//! a string's integer index orders strings lexicographically.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{input, Error, Result};
use crate::rational::{in_unit_interval, Q};

pub const MAX_WIDTH: usize = 63;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    width: usize,
    bits: u64,
}

impl BitString {
    pub fn new(width: usize, bits: u64) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return input(format!("bit-string width {width} outside 1..={MAX_WIDTH}"));
        }
        if bits >> width != 0 {
            return input(format!("value {bits} does not fit in {width} bits"));
        }
        Ok(BitString { width, bits })
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let v = bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
        Self::new(bits.len(), v)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn index(&self) -> u64 {
        self.bits
    }

    /// Bit at 1-based position `i`.
    pub fn bit(&self, i: usize) -> bool {
        assert!(i >= 1 && i <= self.width, "bit position {i} out of range");
        (self.bits >> (self.width - i)) & 1 == 1
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (1..=self.width).map(|i| self.bit(i)).collect()
    }

    /// Substring of positions `from..=to` (1-based), as a value.
    pub fn slice(&self, from: usize, to: usize) -> u64 {
        let len = to + 1 - from;
        (self.bits >> (self.width - to)) & ((1u64 << len) - 1)
    }

    pub fn flip(&self, i: usize) -> BitString {
        BitString { width: self.width, bits: self.bits ^ (1 << (self.width - i)) }
    }

    /// All strings of a width, in index order.
    pub fn all(width: usize) -> impl Iterator<Item = BitString> {
        (0..1u64 << width).map(move |bits| BitString { width, bits })
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.width {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for BitString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("bit string {s:?} contains {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if bits.is_empty() {
            return Err(Error::Parse("empty bit string".into()));
        }
        Self::from_bits(&bits)
    }
}

fn check_width(expected: usize, x: &BitString) -> Result<()> {
    if x.width != expected {
        return input(format!("width {} does not match dimension {expected}", x.width));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ElementaryQrf {
    pointer: BitString,
}

impl ElementaryQrf {
    pub fn new(pointer: BitString) -> Self {
        ElementaryQrf { pointer }
    }

    pub fn dimension(&self) -> usize {
        self.pointer.width
    }

    pub fn pointer(&self) -> BitString {
        self.pointer
    }

    pub fn measure(&self, x: &BitString) -> Result<u8> {
        check_width(self.dimension(), x)?;
        Ok((*x == self.pointer) as u8)
    }

    /// Outcome 1 writes the pointer; outcome 0 needs the caller to name which
    /// non-pointer string to write.
    pub fn prepare(&self, outcome: u8, target: Option<&BitString>) -> Result<BitString> {
        match (outcome, target) {
            (1, _) => Ok(self.pointer),
            (0, None) => Err(Error::Preparation("outcome 0 needs an explicit target string".into())),
            (0, Some(t)) => {
                check_width(self.dimension(), t)?;
                if *t == self.pointer {
                    Err(Error::Preparation(format!("target {t} is the pointer value; outcome 0 contradicts it")))
                } else {
                    Ok(*t)
                }
            }
            _ => input(format!("outcome must be 0 or 1, got {outcome}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompositeQrf {
    dimension: usize,
    members: Vec<ElementaryQrf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureOutcome {
    pub one_hot: Vec<u8>,
    /// 0-based member index that matched.
    pub index: Option<usize>,
}

impl CompositeQrf {
    pub fn new(pointers: Vec<BitString>) -> Result<Self> {
        let Some(first) = pointers.first() else {
            return Err(Error::Degenerate("a composite frame needs at least one pointer".into()));
        };
        let m = first.width;
        for (j, p) in pointers.iter().enumerate() {
            check_width(m, p)?;
            if pointers[..j].contains(p) {
                return input(format!("pointer {p} repeated; pointer values must be distinct"));
            }
        }
        if pointers.len() > m {
            return input(format!("{} pointers exceed dimension {m}", pointers.len()));
        }
        Ok(CompositeQrf { dimension: m, members: pointers.into_iter().map(ElementaryQrf::new).collect() })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn members(&self) -> &[ElementaryQrf] {
        &self.members
    }

    pub fn pointers(&self) -> Vec<BitString> {
        self.members.iter().map(|e| e.pointer).collect()
    }

    pub fn is_fine_grained(&self) -> bool {
        self.members.len() == self.dimension
    }

    pub fn composite_measure(&self, x: &BitString) -> Result<MeasureOutcome> {
        check_width(self.dimension, x)?;
        let one_hot: Vec<u8> = self.members.iter().map(|e| (e.pointer == *x) as u8).collect();
        let index = one_hot.iter().position(|&b| b == 1);
        Ok(MeasureOutcome { one_hot, index })
    }

    pub fn coarse_grain(&self, keep: &[usize]) -> Result<CompositeQrf> {
        if keep.is_empty() {
            return Err(Error::Degenerate("coarse-graining to no members".into()));
        }
        let mut members = Vec::with_capacity(keep.len());
        for &j in keep {
            let e = self.members.get(j).ok_or_else(|| Error::Input(format!("member {j} out of range")))?;
            if members.contains(e) {
                return input(format!("member {j} kept twice"));
            }
            members.push(*e);
        }
        Ok(CompositeQrf { dimension: self.dimension, members })
    }
}

/// Rows are candidate pointers `e_1..e_m`, columns `j = 1..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbabilisticQrf {
    pointers: Vec<BitString>,
    table: Vec<Vec<Q>>,
}

impl ProbabilisticQrf {
    pub fn new(pointers: Vec<BitString>, table: Vec<Vec<Q>>) -> Result<Self> {
        let m = pointers.first().map(|p| p.width).ok_or_else(|| Error::Degenerate("no candidates".into()))?;
        if pointers.len() != m {
            return input(format!("need exactly {m} candidate pointers, got {}", pointers.len()));
        }
        for (i, p) in pointers.iter().enumerate() {
            check_width(m, p)?;
            if pointers[..i].contains(p) {
                return input(format!("candidate {p} repeated"));
            }
        }
        if table.len() != m {
            return input(format!("table needs {m} rows"));
        }
        let n = table[0].len();
        if n == 0 || n > m || table.iter().any(|r| r.len() != n) {
            return input(format!("table needs a common column count in 1..={m}"));
        }
        if table.iter().flatten().any(|p| !in_unit_interval(p)) {
            return input("probabilities must lie in [0,1]");
        }
        for j in 0..n {
            let s = table.iter().fold(Q::zero(), |acc, r| acc + &r[j]);
            if !s.is_one() {
                return input(format!("column {j} sums to {s}, not 1"));
            }
        }
        Ok(ProbabilisticQrf { pointers, table })
    }

    /// Point-mass embedding of a deterministic frame: member `j` becomes a
    /// column concentrated on its pointer; unused candidate rows are filled
    /// with the smallest strings not already present.
    pub fn from_deterministic(q: &CompositeQrf) -> Self {
        let m = q.dimension;
        let mut pointers = q.pointers();
        for s in BitString::all(m) {
            if pointers.len() == m {
                break;
            }
            if !pointers.contains(&s) {
                pointers.push(s);
            }
        }
        let n = q.members.len();
        let table = (0..m)
            .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect();
        ProbabilisticQrf { pointers, table }
    }

    pub fn dimension(&self) -> usize {
        self.pointers.len()
    }

    pub fn columns(&self) -> usize {
        self.table[0].len()
    }

    pub fn pointers(&self) -> &[BitString] {
        &self.pointers
    }

    pub fn table(&self) -> &[Vec<Q>] {
        &self.table
    }

    /// `(1/n) Σ_ij p_ij`; equals 1 whenever every column is stochastic.
    pub fn aggregate(&self) -> Q {
        let total = self.table.iter().flatten().fold(Q::zero(), |a, b| a + b);
        total / Q::from_integer(BigInt::from(self.columns()))
    }

    pub fn aggregate_holds(&self) -> bool {
        self.aggregate().is_one()
    }

    /// Column `j` (0-based) as a distribution over the candidates.
    pub fn prob_measure(&self, j: usize) -> Result<Vec<Q>> {
        if j >= self.columns() {
            return input(format!("column {j} out of range 0..{}", self.columns()));
        }
        Ok(self.table.iter().map(|r| r[j].clone()).collect())
    }

    /// Draws a candidate with probability `p_ij` from a seeded ChaCha stream.
    /// Sampling is exact: a uniform integer below the column's common
    /// denominator selects the row.
    pub fn prob_prepare(&self, j: usize, seed: u64) -> Result<BitString> {
        let col = self.prob_measure(j)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(self.pointers[sample_row(&col, &mut rng)])
    }

    pub fn sample_many(&self, j: usize, seed: u64, count: usize) -> Result<Vec<BitString>> {
        let col = self.prob_measure(j)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok((0..count).map(|_| self.pointers[sample_row(&col, &mut rng)]).collect())
    }
}

fn sample_row(col: &[Q], rng: &mut ChaCha8Rng) -> usize {
    let lcm = col.iter().fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
    let u = rng.gen_bigint_range(&BigInt::zero(), &lcm);
    let mut acc = BigInt::zero();
    for (i, p) in col.iter().enumerate() {
        acc += p.numer() * (&lcm / p.denom());
        if u < acc {
            return i;
        }
    }
    // Columns sum to one, so the loop always returns.
    debug_assert!(!acc.is_negative());
    col.len() - 1
}
