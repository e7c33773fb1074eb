//! Brute-force kernel counting over a prime field.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use tqrf_core::linalg::Matrix;

/// Rows of `m` scaled to integers and reduced mod `p`.
pub fn reduce(m: &Matrix, p: i64) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|r| {
            let lcm = m.row(r).iter().fold(num_bigint::BigInt::from(1), |a, x| a.lcm(x.denom()));
            m.row(r)
                .iter()
                .map(|x| {
                    let v = (x.numer() * (&lcm / x.denom())).mod_floor(&p.into());
                    v.abs().to_i64().unwrap()
                })
                .collect()
        })
        .collect()
}

/// Number of vectors `v ∈ F_p^n` with `M v = 0`, by enumerating all `p^n`
/// vectors in odometer order and updating `M v` one column at a time.
pub fn kernel_count(rows: &[Vec<i64>], n: usize, p: i64) -> u64 {
    let mut digits = vec![0i64; n];
    let mut img = vec![0i64; rows.len()];
    let mut count = 0u64;
    loop {
        if img.iter().all(|&x| x == 0) {
            count += 1;
        }
        let mut j = 0;
        loop {
            if j == n {
                return count;
            }
            digits[j] += 1;
            let wrap = digits[j] == p;
            if wrap {
                digits[j] = 0;
            }
            for (r, row) in rows.iter().enumerate() {
                // +col on an increment, and the wrap from p-1 to 0 is the same
                // net change mod p
                img[r] = (img[r] + row[j]) % p;
            }
            if !wrap {
                break;
            }
            j += 1;
        }
    }
}

/// Nullity over `F_p`, read off the brute-force count `p^k`.
pub fn nullity_mod(m: &Matrix, p: i64) -> usize {
    let mut c = kernel_count(&reduce(m, p), m.cols(), p);
    let mut k = 0;
    while c > 1 {
        assert_eq!(c % p as u64, 0, "kernel count is a power of p");
        c /= p as u64;
        k += 1;
    }
    k
}

/// Reduction mod a prime can only shrink rank, so the smallest nullity over
/// a few primes is the rational nullity unless every prime divides all
/// maximal nonzero minors.
pub fn nullity_brute(m: &Matrix) -> usize {
    [7, 11].iter().map(|&p| nullity_mod(m, p)).min().unwrap()
}
