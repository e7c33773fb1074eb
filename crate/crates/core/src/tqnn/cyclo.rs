//! Exact elements of cyclotomic fields `Q(z)`, `z = exp(2 pi i / n)`.
//!
//! Values are stored as coefficient vectors over `1, z, ..., z^(n-1)`
//! (arithmetic modulo `x^n - 1`); comparisons reduce modulo the
//! cyclotomic polynomial, so equal field elements always compare equal.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::{fmt_q, Q};

#[derive(Clone, Debug)]
pub struct Cyclo {
    n: usize,
    c: Vec<Q>,
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1 divided by every smaller-index factor dividing n
    let mut p = vec![0i64; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        p = div_exact(&p, &cyclotomic_polynomial(d));
    }
    p
}

fn div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; r.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd] / den[dd];
        q[i] = c;
        for (j, &b) in den.iter().enumerate() {
            r[i + j] -= c * b;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

impl Cyclo {
    pub fn zero(n: usize) -> Self {
        Cyclo { n, c: vec![Q::zero(); n] }
    }

    pub fn one(n: usize) -> Self {
        Self::from_q(n, Q::one())
    }

    pub fn from_q(n: usize, v: Q) -> Self {
        let mut x = Self::zero(n);
        x.c[0] = v;
        x
    }

    /// `z^k`.
    pub fn root(n: usize, k: i64) -> Self {
        let mut x = Self::zero(n);
        x.c[k.rem_euclid(n as i64) as usize] = Q::one();
        x
    }

    pub fn from_coeffs(n: usize, mut c: Vec<Q>) -> Self {
        assert!(c.len() <= n);
        c.resize(n, Q::zero());
        Cyclo { n, c }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn scale(&self, s: &Q) -> Self {
        Cyclo { n: self.n, c: self.c.iter().map(|x| x * s).collect() }
    }

    /// Complex conjugate: `z -> z^-1`.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (k, v) in self.c.iter().enumerate() {
            out.c[(self.n - k) % self.n] = v.clone();
        }
        out
    }

    pub fn add_assign_ref(&mut self, o: &Cyclo) {
        assert_eq!(self.n, o.n, "mixing cyclotomic orders");
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    /// Remainder modulo the cyclotomic polynomial; the canonical form.
    pub fn reduced(&self) -> Vec<Q> {
        let phi = cyclotomic_polynomial(self.n);
        let deg = phi.len() - 1;
        let mut r = self.c.clone();
        for i in (deg..r.len()).rev() {
            let lead = std::mem::replace(&mut r[i], Q::zero());
            if lead.is_zero() {
                continue;
            }
            for (j, &b) in phi.iter().enumerate().take(deg) {
                r[i - deg + j] -= &lead * Q::from_integer(b.into());
            }
        }
        r.truncate(deg);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().iter().all(Zero::is_zero)
    }

    /// The value when it is rational.
    pub fn as_rational(&self) -> Option<Q> {
        let r = self.reduced();
        r[1..].iter().all(Zero::is_zero).then(|| r[0].clone())
    }

    /// Decimal approximation, evaluated on the canonical form.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, v) in self.reduced().iter().enumerate() {
            let a = std::f64::consts::TAU * k as f64 / self.n as f64;
            let v = v.to_f64().unwrap_or(f64::NAN);
            re += v * a.cos();
            im += v * a.sin();
        }
        (re, im)
    }

    pub fn abs_f64(&self) -> f64 {
        let (re, im) = self.to_complex();
        re.hypot(im)
    }

    /// `|x|^2 = x * conj(x)`.
    pub fn norm_sq(&self) -> Cyclo {
        self * &self.conj()
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && (self - o).is_zero()
    }
}

impl Eq for Cyclo {}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, o: &Cyclo) -> Cyclo {
        let mut x = self.clone();
        x.add_assign_ref(o);
        x
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, o: &Cyclo) -> Cyclo {
        self + &(-o)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { n: self.n, c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, o: &Cyclo) -> Cyclo {
        assert_eq!(self.n, o.n, "mixing cyclotomic orders");
        let n = self.n;
        let mut out = Cyclo::zero(n);
        for (i, a) in self.c.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in o.c.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out.c[(i + j) % n] += a * b;
            }
        }
        out
    }
}

impl fmt::Display for Cyclo {
    /// Canonical form, e.g. `1/2 + 3*z^1 - z^2`, `z = exp(2 pi i/n)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        let mut first = true;
        for (k, v) in r.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            let mag = v.abs();
            let sign = if v.is_negative() { "-" } else { "+" };
            if first {
                if v.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{}", fmt_q(&mag))?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{}*z^{k}", fmt_q(&mag))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
