//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.
//!
//! Variables are plain indices. For an incidence geometry in dimension `d` the
//! normal entry `n_{h,k}` (hyperplane `h` in input order, coordinate `k` in
//! `1..=d`) is variable `h * d + (k - 1)`, so the global order is
//! `n_{h0,1} < n_{h0,2} < ... < n_{h1,1} < ...`.
//!
//! Monomials are ordered graded-lexicographically: total degree first, then the
//! exponent of the largest variable where the two monomials differ.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent vector stored sparsely as `(variable, exponent)` pairs sorted by
/// variable, with every exponent positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: u32) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: u32) -> u32 {
        self.0
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest variable exponent in this monomial.
    pub fn max_exponent(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let mut a = self.0.iter().rev();
        let mut b = other.0.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va != vb {
                        return va.cmp(&vb);
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over the integers. No zero coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: u32) -> Self {
        Self::term(1, Monomial::var(v))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    /// True when every monomial has the same total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn variables(&self) -> Vec<u32> {
        let mut vars: Vec<u32> = self
            .terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|&(v, _)| v))
            .collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Adds `c * m * other` to `self`.
    pub fn add_scaled(&mut self, other: &Polynomial, c: &BigInt, m: &Monomial) {
        if c.is_zero() {
            return;
        }
        for (n, d) in &other.terms {
            self.add_term(n.mul(m), d * c);
        }
    }

    pub fn mul_term(&self, c: &BigInt, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        self.mul_term(c, &Monomial::one())
    }

    /// Greatest common divisor of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading_term()?;
        if let Some(c) = divisor.as_constant() {
            let mut q = Polynomial::zero();
            for (m, d) in &self.terms {
                let (quo, rem) = d.div_rem(&c);
                if !rem.is_zero() {
                    return None;
                }
                q.terms.insert(m.clone(), quo);
            }
            return Some(q);
        }
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quotient = Polynomial::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&lm)?;
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            rem.add_scaled(divisor, &-&qc, &qm);
            quotient.add_term(qm, qc);
        }
        Some(quotient)
    }

    /// Evaluates at exact rational values, indexed by variable.
    pub fn evaluate(&self, values: &[BigRational]) -> BigRational {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for &(v, e) in m.pairs() {
                t *= pow(&values[v as usize], e);
            }
            total += t;
        }
        total
    }

    /// Substitutes every variable by a polynomial.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone());
            for &(v, e) in m.pairs() {
                for _ in 0..e {
                    t = &t * &images[v as usize];
                }
            }
            out += &t;
        }
        out
    }

    /// Returns `(q, c)` with `self = c * q`, `q` primitive and its leading
    /// coefficient positive.
    pub fn canonicalize(&self) -> Result<(Polynomial, BigRational)> {
        let (_, lc) = self.leading_term().ok_or(Error::ZeroPolynomial)?;
        let mut content = self.content();
        if lc.is_negative() {
            content = -content;
        }
        let q = self
            .exact_div(&Polynomial::constant(content.clone()))
            .expect("content divides every coefficient");
        Ok((q, BigRational::from_integer(content)))
    }

    /// Renders the polynomial with terms in descending monomial order.
    pub fn display_with<'a>(&'a self, names: &'a dyn Fn(u32) -> String) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

fn pow(x: &BigRational, e: u32) -> BigRational {
    let mut r = BigRational::one();
    for _ in 0..e {
        r *= x;
    }
    r
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a dyn Fn(u32) -> String,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mut first = true;
            if !abs.is_one() || m.is_one() {
                write!(f, "{abs}")?;
                first = false;
            }
            for &(v, e) in m.pairs() {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", (self.names)(v))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |v: u32| format!("x{v}");
        write!(f, "{}", self.display_with(&names))
    }
}

impl Zero for Polynomial {
    fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Polynomial {
    fn one() -> Self {
        Polynomial::constant(1)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let (small, large) = if self.len() <= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = Polynomial::zero();
        for (m, c) in &small.terms {
            out.add_scaled(large, c, m);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: u32) -> Polynomial {
        Polynomial::var(v)
    }

    #[test]
    fn grlex_compares_largest_variable_first() {
        // f0*g1 vs g0*f1 with f0=0, g0=1, f1=2, g1=3
        let a = Monomial::from_pairs([(0, 1), (3, 1)]);
        let b = Monomial::from_pairs([(1, 1), (2, 1)]);
        assert!(a > b);
        assert!(Monomial::var(0) < Monomial::var(1));
        assert!(Monomial::from_pairs([(0, 2)]) > Monomial::var(5));
    }

    #[test]
    fn canonicalize_extracts_content_and_sign() {
        // -6 f0 g1 + 6 f1 g0
        let p = &(&x(0) * &x(3)).scale(&BigInt::from(-6)) + &(&x(2) * &x(1)).scale(&BigInt::from(6));
        let (q, c) = p.canonicalize().unwrap();
        assert_eq!(q, &(&x(0) * &x(3)) - &(&x(2) * &x(1)));
        assert_eq!(c, BigRational::from_integer((-6).into()));

        let (q, c) = x(0).canonicalize().unwrap();
        assert_eq!((q, c), (x(0), BigRational::one()));

        let p = (&x(0) * &x(0)).scale(&BigInt::from(2));
        let (q, c) = p.canonicalize().unwrap();
        assert_eq!(q, &x(0) * &x(0));
        assert_eq!(c, BigRational::from_integer(2.into()));
        assert!(matches!(Polynomial::zero().canonicalize(), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn exact_division_recovers_factor() {
        let a = &(&x(0) + &x(1)) - &Polynomial::constant(3);
        let b = &(&x(2) * &x(1)) + &x(4).scale(&BigInt::from(7));
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b), Some(a.clone()));
        assert_eq!(prod.exact_div(&a), Some(b));
        assert_eq!((&a + &x(9)).exact_div(&x(9)), None);
    }

    #[test]
    fn display_is_descending() {
        let p = &(&x(0) * &x(3)) - &(&x(1) * &x(2));
        let names = |v: u32| ["f_{h0}", "g_{h0}", "f_{h1}", "g_{h1}"][v as usize].to_string();
        assert_eq!(p.display_with(&names).to_string(), "f_{h0}*g_{h1} - g_{h0}*f_{h1}");
        assert_eq!((-&Polynomial::constant(4)).to_string(), "-4");
    }
}
