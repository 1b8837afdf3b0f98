use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::Rational;

/// Sparse vector over Q; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: BTreeMap<usize, Rational>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(index: usize) -> Self {
        let mut v = Self::new();
        v.entries.insert(index, Rational::one());
        v
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, Rational)>>(pairs: I) -> Self {
        let mut v = Self::new();
        for (i, c) in pairs {
            v.add_at(i, &c);
        }
        v
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        Self::from_pairs(values.iter().cloned().enumerate())
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); len];
        for (&i, c) in &self.entries {
            out[i] = c.clone();
        }
        out
    }

    pub fn get(&self, index: usize) -> Option<&Rational> {
        self.entries.get(&index)
    }

    pub fn coeff(&self, index: usize) -> Rational {
        self.entries.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_at(&mut self, index: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.entries.entry(index).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.entries.remove(&index);
        }
    }

    /// `self += factor * other`
    pub fn add_scaled(&mut self, other: &SparseVec, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (&i, c) in &other.entries {
            self.add_at(i, &(c * factor));
        }
    }

    pub fn scaled(&self, factor: &Rational) -> SparseVec {
        if factor.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(&i, c)| (i, c * factor)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().map(|(&i, c)| (i, c))
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.iter().next().map(|(&i, c)| (i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    /// Keeps only the coordinates accepted by `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(usize) -> bool) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(&i, _)| keep(i))
                .map(|(&i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn dot(&self, other: &SparseVec) -> Rational {
        let (small, large) = if self.nnz() <= other.nnz() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .entries
            .iter()
            .filter_map(|(i, c)| large.entries.get(i).map(|d| c * d))
            .fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl std::ops::Add<&SparseVec> for &SparseVec {
    type Output = SparseVec;
    fn add(self, rhs: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl std::ops::Sub<&SparseVec> for &SparseVec {
    type Output = SparseVec;
    fn sub(self, rhs: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl std::ops::Neg for &SparseVec {
    type Output = SparseVec;
    fn neg(self) -> SparseVec {
        self.scaled(&-Rational::one())
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(i, c)| format!("{c}*e{i}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
