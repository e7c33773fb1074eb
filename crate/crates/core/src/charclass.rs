//! Characteristic-class arithmetic in degrees up to four and the two
//! index formulas of four-dimensional Dirac operators.
//!
//! Classes are polynomials in a single formal degree-2 generator `x`,
//! truncated above `x^2`; integrated numbers are plain rationals.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, qi, Q};

/// `r0 + r2 x + r4 x^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalClass {
    pub r0: Q,
    pub r2: Q,
    pub r4: Q,
}

impl FormalClass {
    pub fn new(r0: Q, r2: Q, r4: Q) -> Self {
        FormalClass { r0, r2, r4 }
    }

    pub fn scalar(r0: Q) -> Self {
        Self::new(r0, Q::zero(), Q::zero())
    }

    pub fn degree2(a: Q) -> Self {
        Self::new(Q::zero(), a, Q::zero())
    }

    pub fn degree4(b: Q) -> Self {
        Self::new(Q::zero(), Q::zero(), b)
    }

    /// Rank, first and second Chern numbers of a bundle with this Chern
    /// character: `c1 = r2`, `c2 = r2^2/2 - r4`.
    pub fn chern_numbers(&self) -> (Q, Q, Q) {
        (self.r0.clone(), self.r2.clone(), &self.r2 * &self.r2 / qi(2) - &self.r4)
    }
}

impl Add for &FormalClass {
    type Output = FormalClass;
    fn add(self, o: &FormalClass) -> FormalClass {
        FormalClass::new(&self.r0 + &o.r0, &self.r2 + &o.r2, &self.r4 + &o.r4)
    }
}

impl Sub for &FormalClass {
    type Output = FormalClass;
    fn sub(self, o: &FormalClass) -> FormalClass {
        self + &(-o)
    }
}

impl Neg for &FormalClass {
    type Output = FormalClass;
    fn neg(self) -> FormalClass {
        FormalClass::new(-&self.r0, -&self.r2, -&self.r4)
    }
}

impl Mul for &FormalClass {
    type Output = FormalClass;
    fn mul(self, o: &FormalClass) -> FormalClass {
        FormalClass::new(
            &self.r0 * &o.r0,
            &self.r0 * &o.r2 + &self.r2 * &o.r0,
            &self.r0 * &o.r4 + &self.r2 * &o.r2 + &self.r4 * &o.r0,
        )
    }
}

impl std::fmt::Display for FormalClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} + ({})x + ({})x^2", fmt_q(&self.r0), fmt_q(&self.r2), fmt_q(&self.r4))
    }
}

/// `dim E + c1 + c1^2/2 - c2`.
pub fn chern_character(dim_e: i64, c1: &Q, c2: &Q) -> FormalClass {
    FormalClass::new(qi(dim_e), c1.clone(), c1 * c1 / qi(2) - c2)
}

/// Chern classes from the trace invariants: `c1 = tau1`,
/// `c2 = (tau1^2 - tau2)/2`.
pub fn chern_from_tau(tau1: &Q, tau2: &Q) -> (Q, Q) {
    (tau1.clone(), (tau1 * tau1 - tau2) / qi(2))
}

/// `1 - p1/24`.
pub fn a_hat(p1: &Q) -> FormalClass {
    FormalClass::new(Q::one(), Q::zero(), -p1 / qi(24))
}

/// First Pontryagin number from the Chern character of the
/// complexified bundle: `p1 = -c2`.
pub fn pontryagin_from_complexification(ch: &FormalClass) -> Q {
    -ch.chern_numbers().2
}

/// `(2 - c2)^2 = 4 - c2(E x E)`; returns `c2(E x E)` and whether it is
/// four times `c2`.
pub fn su2_c2_check(c2: &Q) -> (Q, bool) {
    let ch = chern_character(2, &Q::zero(), c2);
    let sq = &ch * &ch;
    let (_, c1, tensor) = sq.chern_numbers();
    let holds = c1.is_zero() && sq.r0 == qi(4) && *c2 == &tensor / qi(4);
    (tensor, holds)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiVector {
    pub b: [u64; 5],
    pub b_plus: u64,
    pub b_minus: u64,
}

impl BettiVector {
    pub fn new(b: [u64; 5], b_plus: u64, b_minus: u64) -> Result<Self> {
        if b[2] != b_plus + b_minus {
            return Err(Error::Input(format!("b2 = {} but b+ + b- = {}", b[2], b_plus + b_minus)));
        }
        Ok(BettiVector { b, b_plus, b_minus })
    }

    /// `b+ - b-`.
    pub fn signature(&self) -> i64 {
        self.b_plus as i64 - self.b_minus as i64
    }

    /// `b0 + b2 + b4 - b1 - b3`.
    pub fn euler(&self) -> i64 {
        let b = self.b.map(|x| x as i64);
        b[0] + b[2] + b[4] - b[1] - b[3]
    }
}

/// Integrated inputs of the index formulas; absent ones count as zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndexData {
    pub tau: Q,
    pub c1sq_line: Q,
    pub dim_e: Q,
    pub p1: Q,
    pub c1sq_e: Q,
    pub c2_e: Q,
}

impl IndexData {
    /// Parses `name=value` pairs: `tau`, `c1sq`, `dimE`, `p1`, `c1sqE`, `c2E`.
    pub fn parse<'a>(pairs: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        let mut d = IndexData::default();
        for p in pairs {
            let (k, v) = p.split_once('=').ok_or_else(|| Error::Parse(format!("expected name=value, got {p:?}")))?;
            let v = crate::rational::parse_q(v)?;
            let slot = match k.trim() {
                "tau" => &mut d.tau,
                "c1sq" => &mut d.c1sq_line,
                "dimE" => &mut d.dim_e,
                "p1" => &mut d.p1,
                "c1sqE" => &mut d.c1sq_e,
                "c2E" => &mut d.c2_e,
                other => return Err(Error::Parse(format!("unknown index input {other:?}"))),
            };
            *slot = v;
        }
        Ok(d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexValue {
    pub value: String,
    pub expansion: String,
    pub integral: bool,
    pub warning: Option<String>,
    #[serde(skip)]
    pub exact: Q,
}

fn index_value(value: Q, expansion: String) -> IndexValue {
    let integral = value.is_integer();
    let warning = (!integral).then(|| format!("index {} is not an integer; the inputs are geometrically inconsistent", fmt_q(&value)));
    IndexValue { value: fmt_q(&value), expansion, integral, warning, exact: value }
}

/// `-tau/8 + (int c1(L)^2)/2`.
pub fn index_line(d: &IndexData) -> IndexValue {
    let v = -&d.tau / qi(8) + &d.c1sq_line / qi(2);
    let e = format!("-({})/8 + ({})/2", fmt_q(&d.tau), fmt_q(&d.c1sq_line));
    index_value(v, e)
}

/// `-dimE p1/24 + (int c1(E)^2)/2 - int c2(E)`.
pub fn index_bundle(d: &IndexData) -> IndexValue {
    let v = -(&d.dim_e * &d.p1) / qi(24) + &d.c1sq_e / qi(2) - &d.c2_e;
    let e = format!(
        "-({})({})/24 + ({})/2 - ({})",
        fmt_q(&d.dim_e),
        fmt_q(&d.p1),
        fmt_q(&d.c1sq_e),
        fmt_q(&d.c2_e)
    );
    index_value(v, e)
}

/// Degree-4 coefficient of `A-hat(p1) ch(E)`.
pub fn index_integrand(dim_e: i64, p1: &Q, c1: &Q, c2: &Q) -> Q {
    (&a_hat(p1) * &chern_character(dim_e, c1, c2)).r4
}

/// Optional reconciliation of the two index formulas through the
/// signature theorem `int p1 = 3 tau` (a fact from outside the formulas
/// themselves): the rank-one bundle form with `p1 = 3 tau` and no `c2`
/// must equal the line form. Returns both values.
pub fn signature_cross_check(d: &IndexData) -> (IndexValue, IndexValue, bool) {
    let line = index_line(d);
    let bundle = index_bundle(&IndexData {
        dim_e: Q::one(),
        p1: &d.tau * qi(3),
        c1sq_e: d.c1sq_line.clone(),
        c2_e: Q::zero(),
        ..d.clone()
    });
    let ok = line.exact == bundle.exact;
    (line, bundle, ok)
}

/// Exact Gaussian rational `re + i im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussQ {
    pub re: Q,
    pub im: Q,
}

impl GaussQ {
    pub fn new(re: Q, im: Q) -> Self {
        GaussQ { re, im }
    }

    pub fn real(re: Q) -> Self {
        GaussQ { re, im: Q::zero() }
    }

    pub fn zero() -> Self {
        Self::real(Q::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, o: &Self) -> Self {
        GaussQ::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn sub(&self, o: &Self) -> Self {
        GaussQ::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn mul(&self, o: &Self) -> Self {
        GaussQ::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }

    fn inv(&self) -> Self {
        let n = &self.re * &self.re + &self.im * &self.im;
        GaussQ::new(&self.re / &n, -&self.im / &n)
    }
}

/// Square matrix of Gaussian rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussMatrix {
    pub n: usize,
    pub data: Vec<GaussQ>,
}

impl GaussMatrix {
    pub fn new(n: usize, data: Vec<GaussQ>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Input(format!("a {n}x{n} matrix needs {} entries", n * n)));
        }
        Ok(GaussMatrix { n, data })
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n * n).map(|i| GaussQ::real(if i / n == i % n { Q::one() } else { Q::zero() })).collect();
        GaussMatrix { n, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussQ {
        &self.data[i * self.n + j]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let data = (0..n * n)
            .map(|ij| (0..n).fold(GaussQ::zero(), |acc, k| acc.add(&self.get(ij / n, k).mul(o.get(k, ij % n)))))
            .collect();
        GaussMatrix { n, data }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.n), |acc, _| acc.mul(self))
    }

    pub fn trace(&self) -> GaussQ {
        (0..self.n).fold(GaussQ::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    /// Gauss-Jordan inverse; singular matrices are a degenerate-input error.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or_else(|| Error::Degenerate("matrix is singular".into()))?;
            for j in 0..n {
                a.data.swap(col * n + j, p * n + j);
                inv.data.swap(col * n + j, p * n + j);
            }
            let s = a.get(col, col).inv();
            for j in 0..n {
                a.data[col * n + j] = a.data[col * n + j].mul(&s);
                inv.data[col * n + j] = inv.data[col * n + j].mul(&s);
            }
            for r in (0..n).filter(|&r| r != col) {
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.data[r * n + j] = a.data[r * n + j].sub(&f.mul(a.get(col, j)));
                    inv.data[r * n + j] = inv.data[r * n + j].sub(&f.mul(inv.get(col, j)));
                }
            }
        }
        Ok(inv)
    }
}

/// `Tr((g F g^-1)^k) = Tr(F^k)`.
pub fn trace_invariance_check(f: &GaussMatrix, g: &GaussMatrix, k: u32) -> Result<bool> {
    if f.n != g.n {
        return Err(Error::Input("matrices differ in size".into()));
    }
    let conj = g.mul(f).mul(&g.inverse()?);
    Ok(conj.pow(k).trace() == f.pow(k).trace())
}

pub fn q_pair(re: (i64, i64), im: (i64, i64)) -> GaussQ {
    GaussQ::new(q(re.0, re.1), q(im.0, im.1))
}
