//! Rank over a prime field `F_p` with `p < 2^32`.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::matrix::Matrix;
use super::rational::Rational;
use crate::error::{Error, Result};

/// `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut f = 3;
    while f * f <= p {
        if p.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

fn check_modulus(p: u64) -> Result<()> {
    if p >= 1 << 32 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

/// Reduces a rational into `F_p`; `None` when `p` divides the denominator.
pub fn reduce_rational(q: &Rational, p: u64) -> Option<u64> {
    let modulus = num_bigint::BigInt::from(p);
    let n = q.numer().mod_floor(&modulus).to_u64()?;
    let d = q.denom().mod_floor(&modulus).to_u64()?;
    if d.is_zero() {
        return None;
    }
    Some(n * inv_mod(d, p) % p)
}

/// Rank of a matrix whose entries are already reduced modulo `p`.
pub fn rank_mod_p(m: &Matrix<u64>, p: u64) -> Result<usize> {
    check_modulus(p)?;
    let mut a = m.clone();
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[(i, c)].is_multiple_of(p)) else {
            continue;
        };
        a.swap_rows(r, piv);
        let inv = inv_mod(a[(r, c)] % p, p);
        for j in c..cols {
            a[(r, j)] = a[(r, j)] % p * inv % p;
        }
        for i in r + 1..rows {
            let f = a[(i, c)] % p;
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let sub = f * a[(r, j)] % p;
                a[(i, j)] = (a[(i, j)] % p + p - sub) % p;
            }
        }
        r += 1;
    }
    Ok(r)
}

/// Rank over `F_p` of a rational matrix; fails when some denominator vanishes mod `p`.
pub fn rational_rank_mod_p(m: &Matrix<Rational>, p: u64) -> Result<Option<usize>> {
    check_modulus(p)?;
    let mut reduced = Matrix::zeros(m.nrows(), m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            match reduce_rational(&m[(i, j)], p) {
                Some(x) => reduced[(i, j)] = x,
                None => return Ok(None),
            }
        }
    }
    rank_mod_p(&reduced, p).map(Some)
}
