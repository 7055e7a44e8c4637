//! Determinants of matrices over `Z[x]`.
//!
//! The default strategy first strips structure that costs nothing: rows or
//! columns with a single nonzero entry are expanded directly, and columns whose
//! entries are all integer constants with a `±1` among them are cleared by
//! integer row operations (the hyperplane-offset columns and pin rows of a
//! redrawing matrix are of this kind). What remains goes through fraction-free
//! Bareiss elimination, or cofactor expansion when it is smaller than 4x4.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::exec::Execution;

pub type PolyMatrix = Matrix<Polynomial>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DetStrategy {
    /// Unit-structure stripping, then Bareiss (cofactor expansion below 4x4).
    #[default]
    Auto,
    /// Fraction-free Bareiss elimination on the whole matrix.
    Bareiss,
    /// Row-by-row Laplace expansion memoized on the set of used columns.
    MemoizedMinors,
    /// Plain recursive cofactor expansion along the first row.
    Cofactor,
}

pub fn det_polynomial(m: &PolyMatrix) -> Result<Polynomial> {
    det_polynomial_with(m, DetStrategy::Auto, Execution::Sequential)
}

pub fn det_polynomial_with(m: &PolyMatrix, strategy: DetStrategy, exec: Execution) -> Result<Polynomial> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(match strategy {
        DetStrategy::Auto => {
            let (factor, residual) = strip_unit_structure(m.clone());
            if factor.is_zero() {
                return Ok(Polynomial::zero());
            }
            let rest = if residual.nrows() < 4 {
                cofactor(&residual)
            } else {
                bareiss(residual, exec)
            };
            &factor * &rest
        }
        DetStrategy::Bareiss => bareiss(m.clone(), exec),
        DetStrategy::MemoizedMinors => memoized_minors(m),
        DetStrategy::Cofactor => cofactor(m),
    })
}

fn sign_of(i: usize, j: usize) -> BigInt {
    if (i + j).is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn is_unit(p: &Polynomial) -> bool {
    p.as_constant().is_some_and(|c| c.abs().is_one())
}

/// Returns `(factor, residual)` with `det(m) = factor * det(residual)`.
pub fn strip_unit_structure(mut m: PolyMatrix) -> (Polynomial, PolyMatrix) {
    let mut factor = Polynomial::one();
    loop {
        let n = m.nrows();
        if n == 0 {
            return (factor, m);
        }
        // lone entry in a row
        if let Some((i, j)) = (0..n).find_map(|i| {
            let mut nz = m.nonzeros_in_row(i);
            match (nz.next(), nz.next()) {
                (Some((j, _)), None) => Some((i, j)),
                (None, _) => Some((i, usize::MAX)),
                _ => None,
            }
        }) {
            if j == usize::MAX {
                return (Polynomial::zero(), Matrix::zeros(0, 0));
            }
            factor = (&factor * &m[(i, j)]).scale(&sign_of(i, j));
            m = m.minor(i, j);
            continue;
        }
        // lone entry in a column
        if let Some((i, j)) = (0..n).find_map(|j| {
            let rows: Vec<usize> = (0..n).filter(|&i| !m[(i, j)].is_zero()).collect();
            match rows.as_slice() {
                [] => Some((usize::MAX, j)),
                [i] => Some((*i, j)),
                _ => None,
            }
        }) {
            if i == usize::MAX {
                return (Polynomial::zero(), Matrix::zeros(0, 0));
            }
            factor = (&factor * &m[(i, j)]).scale(&sign_of(i, j));
            m = m.minor(i, j);
            continue;
        }
        // constant column with a unit pivot: clear it with integer row operations
        let pivot = (0..n).find_map(|j| {
            let mut unit_row = None;
            for i in 0..n {
                let e = &m[(i, j)];
                if e.is_zero() {
                    continue;
                }
                e.as_constant()?;
                if unit_row.is_none() && is_unit(e) {
                    unit_row = Some(i);
                }
            }
            unit_row.map(|i| (i, j))
        });
        let Some((pi, pj)) = pivot else {
            return (factor, m);
        };
        let u = m[(pi, pj)].as_constant().expect("unit pivot");
        let pivot_row = m.row(pi).to_vec();
        for i in 0..n {
            if i == pi || m[(i, pj)].is_zero() {
                continue;
            }
            // row_i -= (a / u) row_p, exact since u = ±1
            let a = m[(i, pj)].as_constant().expect("constant column");
            let scale = -(&a * &u);
            for (j, p) in pivot_row.iter().enumerate() {
                if !p.is_zero() {
                    let delta = p.scale(&scale);
                    m[(i, j)] += &delta;
                }
            }
        }
        factor = factor.scale(&(&u * sign_of(pi, pj)));
        m = m.minor(pi, pj);
    }
}

/// Fraction-free Gaussian elimination. Every division is exact in `Z[x]`.
pub fn bareiss(mut m: PolyMatrix, exec: Execution) -> Polynomial {
    let n = m.nrows();
    if n == 0 {
        return Polynomial::one();
    }
    let mut negate = false;
    let mut prev = Polynomial::one();
    for k in 0..n - 1 {
        // sparsest nonzero pivot in column k
        let Some(p) = (k..n)
            .filter(|&i| !m[(k.max(i), k)].is_zero())
            .min_by_key(|&i| (m[(i, k)].len(), i))
        else {
            return Polynomial::zero();
        };
        if p != k {
            m.swap_rows(p, k);
            negate = !negate;
        }
        let pivot = m[(k, k)].clone();
        let pivot_row = m.row(k).to_vec();
        let updated: Vec<Vec<Polynomial>> = exec.map_range(k + 1..n, |i| {
            let lead = &m[(i, k)];
            (k + 1..n)
                .map(|j| {
                    let mut num = &pivot * &m[(i, j)];
                    if !lead.is_zero() && !pivot_row[j].is_zero() {
                        num -= &(lead * &pivot_row[j]);
                    }
                    num.exact_div(&prev)
                        .expect("Bareiss quotient is exact over an integral domain")
                })
                .collect()
        });
        for (offset, row) in updated.into_iter().enumerate() {
            let i = k + 1 + offset;
            m[(i, k)] = Polynomial::zero();
            for (t, value) in row.into_iter().enumerate() {
                m[(i, k + 1 + t)] = value;
            }
        }
        prev = pivot;
    }
    let det = m[(n - 1, n - 1)].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Laplace expansion building permutations row by row; partial sums are
/// keyed by the set of columns already used.
pub fn memoized_minors(m: &PolyMatrix) -> Polynomial {
    let n = m.nrows();
    assert!(n <= 128, "memoized expansion supports at most 128 columns");
    let mut layer: std::collections::BTreeMap<u128, Polynomial> = std::iter::once((0u128, Polynomial::one())).collect();
    for i in 0..n {
        let mut next: std::collections::BTreeMap<u128, Polynomial> = Default::default();
        let entries: Vec<(usize, &Polynomial)> = m.nonzeros_in_row(i).collect();
        for (mask, partial) in &layer {
            for &(j, a) in &entries {
                let bit = 1u128 << j;
                if mask & bit != 0 {
                    continue;
                }
                // inversions against earlier rows that used a larger column
                let above = (mask >> j).count_ones();
                let mut term = partial * a;
                if above % 2 == 1 {
                    term = -term;
                }
                *next.entry(mask | bit).or_default() += &term;
            }
        }
        next.retain(|_, p| !p.is_zero());
        layer = next;
    }
    layer.into_values().next().unwrap_or_default()
}

/// Recursive cofactor expansion along the first row.
pub fn cofactor(m: &PolyMatrix) -> Polynomial {
    let n = m.nrows();
    match n {
        0 => Polynomial::one(),
        1 => m[(0, 0)].clone(),
        _ => {
            let mut det = Polynomial::zero();
            for j in 0..n {
                if m[(0, j)].is_zero() {
                    continue;
                }
                let sub = cofactor(&m.minor(0, j));
                let term = (&m[(0, j)] * &sub).scale(&sign_of(0, j));
                det += &term;
            }
            det
        }
    }
}
