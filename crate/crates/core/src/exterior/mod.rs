//! The exterior algebra Λ(Q^{2g}) as a model for the cohomology of a principally
//! polarized abelian variety of dimension g.
//!
//! Basis monomials are bitmasks over the interleaved generators
//! `a1 b1 a2 b2 ...`: bit `2i` is `a_{i+1}` and bit `2i + 1` is `b_{i+1}`.
//! The top monomial `a1 b1 ... ag bg` is the point class and integrates to 1.

mod checks;
mod fourier;
mod maps;
mod shadow;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{factorial, from_bigint, Rational, SparseVec};

pub use checks::{identity_checks, random_class};
pub use fourier::{fourier, fourier_kernel, pontryagin, FourierKernel, ProductClass};
pub use maps::{pullback, pushforward, PullbackMap};
pub use shadow::{algebra_generated, shadow_closure, ShadowOptions};

/// Largest supported genus (masks are `u32`).
pub const MAX_GENUS: usize = 15;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("ring mismatch: genus {left} vs genus {right}")]
    RingMismatch { left: usize, right: usize },
    #[error("genus {0} is not supported (maximum {MAX_GENUS})")]
    GenusTooLarge(usize),
    #[error("matrix has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    Shape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("generator index {0} out of range")]
    GeneratorOutOfRange(usize),
}

pub(crate) fn full_mask(genus: usize) -> u32 {
    if genus == 0 {
        0
    } else {
        u32::MAX >> (32 - 2 * genus)
    }
}

/// Sign of `e_S ∧ e_T` relative to `e_{S ∪ T}`; zero if `S` and `T` meet.
pub fn merge_sign(s: u32, t: u32) -> i32 {
    if s & t != 0 {
        return 0;
    }
    let mut inversions = 0;
    let mut rest = t;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += ((s as u64) >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn mask_label(mask: u32) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    let mut names = Vec::new();
    let mut rest = mask;
    while rest != 0 {
        let j = rest.trailing_zeros();
        let letter = if j.is_multiple_of(2) { 'a' } else { 'b' };
        names.push(format!("{letter}{}", j / 2 + 1));
        rest &= rest - 1;
    }
    names.join("*")
}

fn signed(sign: i32, c: &Rational) -> Rational {
    if sign > 0 {
        c.clone()
    } else {
        -c.clone()
    }
}

/// Element of Λ(Q^{2g}).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtClass {
    genus: usize,
    terms: BTreeMap<u32, Rational>,
}

impl ExtClass {
    pub fn zero(genus: usize) -> Self {
        assert!(genus <= MAX_GENUS, "genus {genus} exceeds {MAX_GENUS}");
        Self {
            genus,
            terms: BTreeMap::new(),
        }
    }

    pub fn try_zero(genus: usize) -> Result<Self, ExteriorError> {
        if genus > MAX_GENUS {
            return Err(ExteriorError::GenusTooLarge(genus));
        }
        Ok(Self::zero(genus))
    }

    pub fn monomial(genus: usize, mask: u32, coeff: Rational) -> Self {
        let mut x = Self::zero(genus);
        assert!(mask & !full_mask(genus) == 0, "mask outside the ring");
        x.add_term(mask, &coeff);
        x
    }

    /// The unit, i.e. the fundamental class.
    pub fn one(genus: usize) -> Self {
        Self::monomial(genus, 0, Rational::one())
    }

    /// Degree-one generator number `index` (0-based, interleaved order).
    pub fn generator(genus: usize, index: usize) -> Result<Self, ExteriorError> {
        if index >= 2 * genus {
            return Err(ExteriorError::GeneratorOutOfRange(index));
        }
        Ok(Self::monomial(genus, 1 << index, Rational::one()))
    }

    /// `a_i`, 1-based.
    pub fn a(genus: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= genus);
        Self::monomial(genus, 1 << (2 * (i - 1)), Rational::one())
    }

    /// `b_i`, 1-based.
    pub fn b(genus: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= genus);
        Self::monomial(genus, 1 << (2 * (i - 1) + 1), Rational::one())
    }

    /// The polarization `θ = Σ a_i b_i`.
    pub fn theta(genus: usize) -> Self {
        let mut x = Self::zero(genus);
        for i in 0..genus {
            x.add_term(0b11 << (2 * i), &Rational::one());
        }
        x
    }

    /// Point class `θ^g / g!`.
    pub fn point(genus: usize) -> Self {
        Self::monomial(genus, full_mask(genus), Rational::one())
    }

    /// Class of an Abel-Jacobi curve, `θ^{g-1} / (g-1)!`.
    pub fn curve(genus: usize) -> Self {
        assert!(genus >= 1);
        let power = Self::theta(genus).power(genus as u32 - 1);
        power.scale(&from_bigint(factorial(genus as u32 - 1)).recip())
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn terms(&self) -> &BTreeMap<u32, Rational> {
        &self.terms
    }

    pub fn coeff(&self, mask: u32) -> Rational {
        self.terms.get(&mask).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mask: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    fn check_same(&self, other: &ExtClass) -> Result<(), ExteriorError> {
        if self.genus != other.genus {
            return Err(ExteriorError::RingMismatch {
                left: self.genus,
                right: other.genus,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &ExtClass) -> Result<ExtClass, ExteriorError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> ExtClass {
        let mut out = ExtClass::zero(self.genus);
        for (&m, x) in &self.terms {
            out.add_term(m, &(x * c));
        }
        out
    }

    pub fn wedge(&self, other: &ExtClass) -> Result<ExtClass, ExteriorError> {
        self.check_same(other)?;
        let mut out = ExtClass::zero(self.genus);
        for (&s, x) in &self.terms {
            for (&t, y) in &other.terms {
                let sign = merge_sign(s, t);
                if sign != 0 {
                    out.add_term(s | t, &signed(sign, &(x * y)));
                }
            }
        }
        Ok(out)
    }

    pub fn power(&self, k: u32) -> ExtClass {
        (0..k).fold(ExtClass::one(self.genus), |acc, _| {
            acc.wedge(self).expect("same ring")
        })
    }

    /// `Σ x^k / k!`; terminates since positive-degree classes are nilpotent.
    pub fn exp(&self) -> ExtClass {
        let mut total = ExtClass::one(self.genus);
        let mut term = ExtClass::one(self.genus);
        for k in 1..=(2 * self.genus + 1) {
            term = term.wedge(self).expect("same ring").scale(&Rational::from_integer(k.into()).recip());
            if term.is_zero() {
                break;
            }
            total = &total + &term;
        }
        total
    }

    pub fn integrate(&self) -> Rational {
        self.coeff(full_mask(self.genus))
    }

    /// Part of cohomological degree `k` (number of generators).
    pub fn homogeneous_part(&self, k: u32) -> ExtClass {
        ExtClass {
            genus: self.genus,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.count_ones() == k)
                .map(|(&m, c)| (m, c.clone()))
                .collect(),
        }
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.terms.keys().map(|m| m.count_ones()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn homogeneous_degree(&self) -> Option<u32> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    /// `(-1)^*` acting by `(-1)^k` in degree `k`.
    pub fn minus_star(&self) -> ExtClass {
        ExtClass {
            genus: self.genus,
            terms: self
                .terms
                .iter()
                .map(|(&m, c)| (m, if m.count_ones() % 2 == 0 { c.clone() } else { -c.clone() }))
                .collect(),
        }
    }

    pub fn to_sparse(&self) -> SparseVec {
        SparseVec::from_pairs(self.terms.iter().map(|(&m, c)| (m as usize, c.clone())))
    }

    pub fn from_sparse(genus: usize, v: &SparseVec) -> ExtClass {
        let mut x = ExtClass::zero(genus);
        for (i, c) in v.iter() {
            x.add_term(i as u32, c);
        }
        x
    }

    pub fn ambient_dim(genus: usize) -> usize {
        1 << (2 * genus)
    }
}

impl std::ops::Add<&ExtClass> for &ExtClass {
    type Output = ExtClass;
    fn add(self, rhs: &ExtClass) -> ExtClass {
        self.try_add(rhs).expect("classes in different rings")
    }
}

impl std::ops::Sub<&ExtClass> for &ExtClass {
    type Output = ExtClass;
    fn sub(self, rhs: &ExtClass) -> ExtClass {
        self.try_add(&-rhs).expect("classes in different rings")
    }
}

impl std::ops::Neg for &ExtClass {
    type Output = ExtClass;
    fn neg(self) -> ExtClass {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for ExtClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&u32, &Rational)> = self.terms.iter().collect();
        ordered.sort_by_key(|(m, _)| (m.count_ones(), **m));
        for (k, (&m, c)) in ordered.into_iter().enumerate() {
            let negative = c < &Rational::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m == 0 {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{}", mask_label(m))?;
            } else {
                write!(f, "{magnitude}*{}", mask_label(m))?;
            }
        }
        Ok(())
    }
}
