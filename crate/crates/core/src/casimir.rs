//! Sparse polynomials with big-integer coefficients in the commuting
//! generalized Casimir variables `c_0, c_1, c_2, ...`.
//!
//! A monomial is stored as the sorted multiset of its indices, so `c_0 c_2^2`
//! is `[0, 2, 2]`. The empty multiset is the constant monomial.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Indices = SmallVec<[u32; 8]>;

/// A product `c_{i_1} ... c_{i_k}`.
///
/// Ordering is the canonical output order: more factors first, then
/// lexicographic on the sorted index list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CasimirMonomial(Indices);

impl CasimirMonomial {
    pub fn new<I: IntoIterator<Item = u32>>(indices: I) -> Self {
        let mut v: Indices = indices.into_iter().collect();
        v.sort_unstable();
        CasimirMonomial(v)
    }

    /// Wraps an index list that is already sorted ascending.
    pub(crate) fn from_sorted(v: Indices) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] <= w[1]));
        CasimirMonomial(v)
    }

    pub fn one() -> Self {
        CasimirMonomial(SmallVec::new())
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    /// Number of factors; every `c_j`, including `c_0`, counts once.
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Sum of indices, i.e. the weight when `c_j` has weight `j`.
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&i| i as u64).sum()
    }

    pub fn exponent_of(&self, index: u32) -> usize {
        self.0.iter().filter(|&&i| i == index).count()
    }

    pub fn mul(&self, other: &CasimirMonomial) -> CasimirMonomial {
        let mut v: Indices = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                v.push(self.0[i]);
                i += 1;
            } else {
                v.push(other.0[j]);
                j += 1;
            }
        }
        v.extend_from_slice(&self.0[i..]);
        v.extend_from_slice(&other.0[j..]);
        CasimirMonomial(v)
    }
}

impl Ord for CasimirMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .len()
            .cmp(&self.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for CasimirMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CasimirMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CasimirMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (n, i) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            write!(f, "c_{i}")?;
        }
        Ok(())
    }
}

/// One serialized term: the sorted index list and a decimal coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub indices: Vec<u32>,
    pub coeff: String,
}

/// A polynomial in `c_0, c_1, ...` with exact integer coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CasimirPoly {
    terms: BTreeMap<CasimirMonomial, BigInt>,
}

impl CasimirPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term<C: Into<BigInt>>(coeff: C, monomial: CasimirMonomial) -> Self {
        let mut p = Self::zero();
        p.add_term(monomial, coeff.into());
        p
    }

    /// Builds a polynomial from `(coefficient, indices)` pairs; like monomials merge.
    pub fn from_pairs<C, I>(pairs: I) -> Self
    where
        C: Into<BigInt>,
        I: IntoIterator<Item = (C, Vec<u32>)>,
    {
        let mut p = Self::zero();
        for (c, idx) in pairs {
            p.add_term(CasimirMonomial::new(idx), c.into());
        }
        p
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

    /// Terms in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&CasimirMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &CasimirMonomial> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, monomial: CasimirMonomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, monomial: &CasimirMonomial) -> BigInt {
        self.terms.get(monomial).cloned().unwrap_or_default()
    }

    pub fn scale(&self, k: &BigInt) -> CasimirPoly {
        if k.is_zero() {
            return Self::zero();
        }
        CasimirPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Largest factor count over all monomials, `None` for the zero polynomial.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// The terms whose monomials have the maximal number of factors.
    pub fn top_homogeneous_part(&self) -> Result<CasimirPoly> {
        let top = self.max_degree().ok_or(Error::ZeroPolynomial)?;
        Ok(CasimirPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == top)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    /// Replaces every `c_0` by the scalar `n`.
    pub fn substitute_c0(&self, n: &BigInt) -> CasimirPoly {
        let mut out = CasimirPoly::zero();
        for (m, c) in &self.terms {
            let zeros = m.exponent_of(0);
            let rest = CasimirMonomial::from_sorted(m.0.iter().copied().filter(|&i| i != 0).collect());
            out.add_term(rest, c * num_traits::pow(n.clone(), zeros));
        }
        out
    }

    pub fn to_terms(&self) -> Vec<PolyTerm> {
        self.terms
            .iter()
            .map(|(m, c)| PolyTerm {
                indices: m.indices().to_vec(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_terms(terms: &[PolyTerm]) -> Result<CasimirPoly> {
        let mut p = CasimirPoly::zero();
        for t in terms {
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.coeff)))?;
            p.add_term(CasimirMonomial::new(t.indices.iter().copied()), c);
        }
        Ok(p)
    }

    /// Serialized form: a JSON list of `{indices, coeff}` in canonical order.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_terms()).expect("terms serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<CasimirPoly> {
        let terms: Vec<PolyTerm> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_terms(&terms)
    }
}

impl fmt::Debug for CasimirPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CasimirPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            match (n, c.is_negative()) {
                (0, false) => write!(f, "{abs}")?,
                (0, true) => write!(f, "-{abs}")?,
                (_, false) => write!(f, " + {abs}")?,
                (_, true) => write!(f, " - {abs}")?,
            }
            if m.degree() > 0 {
                write!(f, " * {m}")?;
            }
        }
        Ok(())
    }
}

impl Add<&CasimirPoly> for &CasimirPoly {
    type Output = CasimirPoly;
    fn add(self, rhs: &CasimirPoly) -> CasimirPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for CasimirPoly {
    type Output = CasimirPoly;
    fn add(mut self, rhs: CasimirPoly) -> CasimirPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&CasimirPoly> for CasimirPoly {
    fn add_assign(&mut self, rhs: &CasimirPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Neg for &CasimirPoly {
    type Output = CasimirPoly;
    fn neg(self) -> CasimirPoly {
        CasimirPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Sub<&CasimirPoly> for &CasimirPoly {
    type Output = CasimirPoly;
    fn sub(self, rhs: &CasimirPoly) -> CasimirPoly {
        let mut out = self.clone();
        out += &-rhs;
        out
    }
}

impl Mul<&CasimirPoly> for &CasimirPoly {
    type Output = CasimirPoly;
    fn mul(self, rhs: &CasimirPoly) -> CasimirPoly {
        let mut out = CasimirPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Sum for CasimirPoly {
    fn sum<I: Iterator<Item = CasimirPoly>>(iter: I) -> Self {
        iter.fold(CasimirPoly::zero(), |acc, p| acc + p)
    }
}

impl From<CasimirMonomial> for CasimirPoly {
    fn from(m: CasimirMonomial) -> Self {
        CasimirPoly::term(BigInt::one(), m)
    }
}
