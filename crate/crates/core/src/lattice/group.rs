use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{LatticeError, SymplecticEndo};
use crate::exact::{IntMatrix, QMatrix, Rational};

/// Finite group of integral matrices with its multiplication table.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    elements: Vec<IntMatrix>,
    index: HashMap<IntMatrix, usize>,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

impl MatrixGroup {
    /// Closure of the generators under multiplication, in breadth-first order
    /// starting from the identity.
    pub fn generated_by(generators: &[IntMatrix], limit: usize) -> Result<Self, LatticeError> {
        let n = generators
            .first()
            .map(IntMatrix::rows)
            .ok_or_else(|| LatticeError::Dimension("no generators".to_string()))?;
        let mut elements = vec![IntMatrix::identity(n)];
        let mut index = HashMap::from([(elements[0].clone(), 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let product = elements[i].mul(g);
                if !index.contains_key(&product) {
                    if elements.len() == limit {
                        return Err(LatticeError::GroupTooLarge(limit));
                    }
                    index.insert(product.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(product);
                }
            }
        }
        Ok(Self::with_elements(elements, index))
    }

    /// `⟨σ⟩` with element `i` equal to `σ^i`.
    pub fn cyclic(sigma: &SymplecticEndo) -> Self {
        let n = sigma.matrix().rows();
        let mut elements = Vec::new();
        let mut power = IntMatrix::identity(n);
        for _ in 0..sigma.order() {
            elements.push(power.clone());
            power = power.mul(sigma.matrix());
        }
        let index = elements.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Self::with_elements(elements, index)
    }

    fn with_elements(elements: Vec<IntMatrix>, index: HashMap<IntMatrix, usize>) -> Self {
        let table: Vec<Vec<usize>> = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&a.mul(b)]).collect())
            .collect();
        let inverses = (0..elements.len())
            .map(|i| (0..elements.len()).find(|&j| table[i][j] == 0).expect("finite group"))
            .collect();
        Self {
            elements,
            index,
            table,
            inverses,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &IntMatrix {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &IntMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn product(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }
}

/// Element `Σ a_h h` of the integral group ring.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupAlgebraElt {
    coeffs: BTreeMap<usize, BigInt>,
}

impl GroupAlgebraElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::element(0)
    }

    pub fn element(h: usize) -> Self {
        Self::from_pairs([(h, BigInt::one())])
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, BigInt)>>(pairs: I) -> Self {
        let mut x = Self::zero();
        for (h, a) in pairs {
            x.add_term(h, &a);
        }
        x
    }

    /// `1 + h + ... + h^{n-1}` written on the elements of a cyclic group.
    pub fn norm(group: &MatrixGroup) -> Self {
        Self::from_pairs((0..group.order()).map(|h| (h, BigInt::one())))
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, BigInt> {
        &self.coeffs
    }

    fn add_term(&mut self, h: usize, a: &BigInt) {
        if a.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(h).or_insert_with(BigInt::zero);
        *entry += a;
        if entry.is_zero() {
            self.coeffs.remove(&h);
        }
    }

    pub fn add(&self, other: &GroupAlgebraElt) -> GroupAlgebraElt {
        let mut out = self.clone();
        for (&h, a) in &other.coeffs {
            out.add_term(h, a);
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> GroupAlgebraElt {
        GroupAlgebraElt::from_pairs(self.coeffs.iter().map(|(&h, a)| (h, a * c)))
    }

    pub fn mul(&self, other: &GroupAlgebraElt, group: &MatrixGroup) -> GroupAlgebraElt {
        let mut out = GroupAlgebraElt::zero();
        for (&h, a) in &self.coeffs {
            for (&k, b) in &other.coeffs {
                out.add_term(group.product(h, k), &(a * b));
            }
        }
        out
    }

    /// `h ↦ h^{-1}`, which is the Rosati involution for automorphisms.
    pub fn rosati(&self, group: &MatrixGroup) -> GroupAlgebraElt {
        GroupAlgebraElt::from_pairs(self.coeffs.iter().map(|(&h, a)| (group.inverse(h), a.clone())))
    }

    pub fn realize(&self, group: &MatrixGroup) -> IntMatrix {
        let n = group.element(0).rows();
        self.coeffs
            .iter()
            .fold(IntMatrix::zeros(n, n), |acc, (&h, a)| acc.add(&group.element(h).scale(a)))
    }

    pub fn realize_q(&self, group: &MatrixGroup) -> QMatrix {
        self.realize(group).to_q()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn label(&self, symbol: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&h, a)) in self.coeffs.iter().enumerate() {
            let unit = match h {
                0 => "1".to_string(),
                1 => symbol.to_string(),
                _ => format!("{symbol}^{h}"),
            };
            let magnitude = a.abs();
            let negative = a.is_negative();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if magnitude.is_one() {
                out.push_str(&unit);
            } else {
                out.push_str(&format!("{magnitude}*{unit}"));
            }
        }
        out
    }

    pub fn coefficient_sum(&self) -> Rational {
        Rational::from_integer(self.coeffs.values().sum())
    }
}
