//! Bracket algebra over the symbolic normals.
//!
//! The bracket `[h_1 ... h_d]` is the determinant of the `d x d` matrix whose
//! columns are the normals of `h_1, ..., h_d`. Brackets are stored with
//! strictly increasing hyperplane indices.
//!
//! Under the monomial order of [`crate::exactalg::Monomial`] and the variable
//! numbering of [`crate::purecond::variable`], the leading term of a sorted
//! bracket is its diagonal `n_{h_1,1} n_{h_2,2} ... n_{h_d,d}` with
//! coefficient one. Rewriting an invariant polynomial therefore proceeds by subduction:
//! split the leading monomial into one sorted list of hyperplanes per
//! coordinate, read the lists as the rows of a tableau, and subtract the
//! bracket monomial whose columns are the tableau columns. Every tableau
//! produced this way is row-sorted and column-strict, so the result is
//! written in standard monomials.

mod parse;
mod reduce;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use parse::parse_bracket_polynomial;
pub use reduce::{block_reduce, BlockReduction};

use crate::error::{Error, Result};
use crate::exactalg::{Monomial, Polynomial, Rational};
use crate::geometry::IncidenceGeometry;
use crate::purecond::variable;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bracket(Vec<usize>);

impl Bracket {
    /// Sorts `indices`, returning the bracket and the sign of the sorting
    /// permutation, or `None` when an index repeats.
    pub fn normalize(mut indices: Vec<usize>) -> Option<(Bracket, i8)> {
        let mut sign = 1i8;
        for i in 1..indices.len() {
            let mut j = i;
            while j > 0 && indices[j - 1] > indices[j] {
                indices.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Bracket(indices), sign))
    }

    /// Panics unless `indices` is strictly increasing.
    pub fn sorted(indices: Vec<usize>) -> Bracket {
        assert!(indices.windows(2).all(|w| w[0] < w[1]), "bracket indices must increase");
        Bracket(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn label(&self, hyperplanes: &[String]) -> String {
        let labels: Vec<&str> = self.0.iter().map(|&h| hyperplanes[h].as_str()).collect();
        format!("[{}]", labels.join(" "))
    }

    /// The determinant in the normal variables.
    pub fn expand(&self) -> Polynomial {
        let d = self.0.len();
        let mut out = Polynomial::zero();
        permutations(d, &mut |perm, sign| {
            let m = Monomial::from_pairs(
                perm.iter()
                    .enumerate()
                    .map(|(k, &j)| (variable(d, self.0[j], k + 1), 1)),
            );
            out.add_term(m, BigInt::from(sign));
        });
        out
    }
}

/// Calls `f` with every permutation of `0..n` and its sign.
fn permutations(n: usize, f: &mut dyn FnMut(&[usize], i8)) {
    fn go(perm: &mut Vec<usize>, k: usize, sign: i8, f: &mut dyn FnMut(&[usize], i8)) {
        if k == perm.len() {
            f(perm, sign);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            go(perm, k + 1, if i == k { sign } else { -sign }, f);
            perm.swap(k, i);
        }
    }
    go(&mut (0..n).collect(), 0, 1, f);
}

/// Normalizes labelled brackets against the hyperplane order of `g`.
pub fn normalize_bracket(g: &IncidenceGeometry, labels: &[&str]) -> Result<Option<(Bracket, i8)>> {
    if labels.len() != g.dimension() {
        return Err(Error::BracketArity(format!("[{}]", labels.join(" ")), g.dimension()));
    }
    let indices = labels
        .iter()
        .map(|l| g.hyperplane_index(l))
        .collect::<Result<Vec<_>>>()?;
    Ok(Bracket::normalize(indices))
}

/// Sorted multiset of brackets.
pub type BracketMonomial = Vec<Bracket>;

fn merge(a: &[Bracket], b: &[Bracket]) -> BracketMonomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketPolynomial {
    d: usize,
    terms: BTreeMap<BracketMonomial, BigInt>,
}

impl BracketPolynomial {
    pub fn zero(d: usize) -> Self {
        BracketPolynomial {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(d: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(d);
        p.add_term(Vec::new(), c.into());
        p
    }

    pub fn bracket(b: Bracket) -> Self {
        let d = b.0.len();
        let mut p = Self::zero(d);
        p.add_term(vec![b], BigInt::one());
        p
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&BracketMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, mut m: BracketMonomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        m.sort();
        let entry = self.terms.entry(m).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.d);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.d);
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(merge(m, n), a * b);
            }
        }
        out
    }

    /// Coordinate form of the bracket polynomial.
    pub fn expand(&self) -> Polynomial {
        let mut cache: HashMap<&Bracket, Polynomial> = HashMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone());
            for b in m {
                let e = cache.entry(b).or_insert_with(|| b.expand());
                t = &t * e;
            }
            out += &t;
        }
        out
    }

    /// Returns `(q, c)` with `self = c * q`, `q` having coprime coefficients
    /// and a positive coefficient on its largest bracket monomial.
    pub fn canonicalize(&self) -> Result<(Self, Rational)> {
        let (_, lc) = self.terms.iter().next_back().ok_or(Error::ZeroPolynomial)?;
        let mut content = self
            .terms
            .values()
            .fold(BigInt::zero(), |g, c| num_integer::Integer::gcd(&g, c));
        if lc.is_negative() {
            content = -content;
        }
        let mut out = Self::zero(self.d);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c / &content);
        }
        Ok((out, Rational::from_integer(content)))
    }

    pub fn display_with<'a>(&'a self, hyperplanes: &'a [String]) -> BracketDisplay<'a> {
        BracketDisplay {
            poly: self,
            hyperplanes,
        }
    }
}

pub struct BracketDisplay<'a> {
    poly: &'a BracketPolynomial,
    hyperplanes: &'a [String],
}

impl fmt::Display for BracketDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if !abs.is_one() || m.is_empty() {
                write!(f, "{abs}")?;
                if !m.is_empty() {
                    write!(f, "*")?;
                }
            }
            for b in m {
                write!(f, "{}", b.label(self.hyperplanes))?;
            }
        }
        Ok(())
    }
}

/// Splits a monomial into one sorted hyperplane list per coordinate.
fn tableau_rows(m: &Monomial, d: usize) -> Vec<Vec<usize>> {
    let mut rows = vec![Vec::new(); d];
    for &(v, e) in m.pairs() {
        let (h, k) = (v as usize / d, v as usize % d);
        rows[k].extend(std::iter::repeat_n(h, e as usize));
    }
    for r in &mut rows {
        r.sort_unstable();
    }
    rows
}

/// Writes an invariant polynomial as a bracket polynomial in standard
/// monomials. The expansion of the result equals `p` exactly.
pub fn bracketize(p: &Polynomial, d: usize) -> Result<BracketPolynomial> {
    let mut out = BracketPolynomial::zero(d);
    let mut rest = p.clone();
    let mut cache: HashMap<Bracket, Polynomial> = HashMap::new();
    while let Some((m, c)) = rest.leading_term() {
        let (m, c) = (m.clone(), c.clone());
        let rows = tableau_rows(&m, d);
        let width = rows[0].len();
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::SubductionFailure(format!(
                "leading monomial {m:?} has unequal degree across coordinates"
            )));
        }
        let mut monomial = Vec::with_capacity(width);
        for t in 0..width {
            let column: Vec<usize> = rows.iter().map(|r| r[t]).collect();
            if column.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::SubductionFailure(format!(
                    "leading monomial {m:?} is not a product of bracket leading terms"
                )));
            }
            monomial.push(Bracket(column));
        }
        let mut product = Polynomial::constant(c.clone());
        for b in &monomial {
            let e = cache.entry(b.clone()).or_insert_with(|| b.expand());
            product = &product * e;
        }
        rest -= &product;
        out.add_term(monomial, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::purecond::pure_condition;

    fn br(i: &[usize]) -> BracketPolynomial {
        BracketPolynomial::bracket(Bracket::sorted(i.to_vec()))
    }

    #[test]
    fn normalization() {
        let g = fixtures::nf7();
        assert_eq!(
            normalize_bracket(&g, &["h3", "h1"]).unwrap(),
            Some((Bracket(vec![1, 3]), -1))
        );
        assert_eq!(
            normalize_bracket(&g, &["h1", "h3"]).unwrap(),
            Some((Bracket(vec![1, 3]), 1))
        );
        assert_eq!(normalize_bracket(&g, &["h2", "h2"]).unwrap(), None);
        assert!(matches!(normalize_bracket(&g, &["h2"]), Err(Error::BracketArity(..))));
        assert!(normalize_bracket(&g, &["h2", "zz"]).is_err());
    }

    #[test]
    fn two_by_two_expansion() {
        let p = br(&[0, 3]).expand();
        let expected = Polynomial::from_terms([
            (Monomial::from_pairs([(0, 1), (7, 1)]), 1.into()),
            (Monomial::from_pairs([(1, 1), (6, 1)]), (-1).into()),
        ]);
        assert_eq!(p, expected);
        assert_eq!(br(&[1, 5]).mul(&br(&[2, 4])).expand().len(), 4);
    }

    #[test]
    fn plucker_relation_vanishes() {
        let p = br(&[0, 1])
            .mul(&br(&[2, 3]))
            .add(&br(&[0, 2]).mul(&br(&[1, 3])).scale(&(-1).into()))
            .add(&br(&[0, 3]).mul(&br(&[1, 2])));
        assert!(p.expand().is_zero());
    }

    #[test]
    fn leading_term_is_diagonal() {
        for d in 1..=4 {
            let b = Bracket::sorted((0..d).map(|i| 2 * i + 1).collect());
            let p = b.expand();
            let (m, c) = p.leading_term().unwrap();
            assert!(c.is_one());
            let diag = Monomial::from_pairs((0..d).map(|k| (variable(d, b.0[k], k + 1), 1)));
            assert_eq!(*m, diag);
        }
    }

    #[test]
    fn subduction_round_trips() {
        let p = br(&[0, 3]).expand();
        assert_eq!(bracketize(&p, 2).unwrap(), br(&[0, 3]));
        let q = br(&[0, 2])
            .mul(&br(&[1, 3]))
            .add(&br(&[0, 1]).mul(&br(&[0, 3])))
            .expand();
        let b = bracketize(&q, 2).unwrap();
        assert_eq!(b.expand(), q);
        // a non-standard product comes back straightened
        let r = br(&[0, 3]).mul(&br(&[1, 2])).expand();
        let b = bracketize(&r, 2).unwrap();
        assert_eq!(b.expand(), r);
        assert_eq!(b.len(), 2);
        let three = br(&[0, 2, 4]).mul(&br(&[1, 3, 5])).expand();
        assert_eq!(bracketize(&three, 3).unwrap().expand(), three);
    }

    #[test]
    fn subduction_rejects_non_invariants() {
        assert!(matches!(
            bracketize(&Polynomial::var(0), 2),
            Err(Error::SubductionFailure(_))
        ));
        // f_{h1} g_{h0}: both factors present but the pairing is not increasing
        let p = Polynomial::term(1, Monomial::from_pairs([(1, 1), (2, 1)]));
        assert!(matches!(bracketize(&p, 2), Err(Error::SubductionFailure(_))));
    }

    #[test]
    fn pure_conditions_round_trip() {
        for g in [fixtures::g1(), fixtures::dg4(), fixtures::nf7()] {
            let pc = pure_condition(&g).unwrap();
            let b = bracketize(&pc.polynomial, 2).unwrap();
            assert_eq!(b.expand(), pc.polynomial);
        }
    }

    #[test]
    fn display_and_canonical_form() {
        let hs: Vec<String> = (0..4).map(|i| format!("h{i}")).collect();
        let p = br(&[0, 1])
            .mul(&br(&[2, 3]))
            .scale(&(-2).into())
            .add(&br(&[0, 3]).mul(&br(&[1, 2])).scale(&4.into()));
        let (c, s) = p.canonicalize().unwrap();
        assert_eq!(s, Rational::from_integer(2.into()));
        assert_eq!(c.display_with(&hs).to_string(), "2*[h0 h3][h1 h2] - [h0 h1][h2 h3]");
        assert_eq!(BracketPolynomial::constant(2, 3).display_with(&hs).to_string(), "3");
    }
}
