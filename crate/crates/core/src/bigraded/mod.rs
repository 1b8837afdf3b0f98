//! Finite-dimensional bigraded Q-algebras `A = ⊕ A^p_(s)` with an intersection
//! product, an axiomatic Fourier operator, and the Pontryagin product it induces.

mod axioms;
mod closure;
mod fourier;
mod import;
mod newton;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Range;
use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{Rational, SparseVec};
use crate::exterior::{merge_sign, ExteriorError};

pub use axioms::{axiom_check, stability_conditions, AxiomOptions, AxiomReport, StabilityConditions};
pub use closure::{
    audit, generated_subalgebra, subspace_hilbert_function, taut_closure, AuditOutcome, ClosureOptions, ClosureOutcome,
    LinearOperator,
};
pub use fourier::{exponential_fourier, FourierSpec};
pub use import::ExteriorImport;
pub use newton::{newton_inverse, newton_transform, ExteriorAlgebra, ProductAlgebra};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BigradedError {
    #[error("classes belong to different presentations")]
    PresentationMismatch,
    #[error("basis element {label} has bidegree ({p},{s}) outside -(d-p) <= s <= p")]
    BidegreeOutOfRange { label: String, p: i32, s: i32 },
    #[error("generator {0} must have positive codimension")]
    GeneratorCodim(String),
    #[error("duplicate generator name {0}")]
    DuplicateGenerator(String),
    #[error("exponent vector has length {got}, expected {expected}")]
    ExponentLength { expected: usize, got: usize },
    #[error("invalid polarization: {0}")]
    Polarization(String),
    #[error("invalid structure table: {0}")]
    Table(String),
    #[error("basis index {0} out of range")]
    UnknownIndex(usize),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("presentation has no Fourier operator")]
    NoFourier,
    #[error("invalid Fourier operator: {0}")]
    Fourier(String),
    #[error("no Fourier operator exists: {0}")]
    FourierObstruction(String),
    #[error("subspace does not contain the polarization class")]
    PolarizationMissing,
    #[error("subspace is not a subalgebra")]
    NotSubalgebra,
    #[error("subspace is not bigraded")]
    NotBigraded,
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

/// `(p, s)`: codimension and Beauville index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bidegree {
    pub p: i32,
    pub s: i32,
}

impl Bidegree {
    pub fn new(p: i32, s: i32) -> Self {
        Self { p, s }
    }

    /// Block that the Fourier transform maps this block to, `(d - p + s, s)`.
    pub fn fourier_target(self, dim: u32) -> Bidegree {
        Bidegree::new(dim as i32 - self.p + self.s, self.s)
    }

    pub fn in_bounds(self, dim: u32) -> bool {
        self.p >= 0 && self.p <= dim as i32 && self.s <= self.p && self.s >= self.p - dim as i32
    }
}

impl std::ops::Add for Bidegree {
    type Output = Bidegree;
    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.p + rhs.p, self.s + rhs.s)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub bidegree: Bidegree,
}

impl Generator {
    pub fn new(name: impl Into<String>, p: i32, s: i32) -> Self {
        Self {
            name: name.into(),
            bidegree: Bidegree::new(p, s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub bidegree: Bidegree,
    pub exponents: Option<Vec<u32>>,
}

#[derive(Clone, Debug)]
enum Product {
    Monomial { lookup: HashMap<Vec<u32>, usize> },
    Table(Vec<Vec<SparseVec>>),
    ExteriorEven { masks: Vec<u32>, lookup: HashMap<u32, usize> },
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Immutable presentation of a bigraded algebra.
#[derive(Clone, Debug)]
pub struct Presentation {
    id: u64,
    dim: u32,
    generators: Vec<Generator>,
    relations: Vec<Vec<u32>>,
    basis: Vec<BasisElement>,
    blocks: BTreeMap<Bidegree, Range<usize>>,
    product: Product,
    unit: usize,
    polarization: SparseVec,
    fourier: Option<FourierSpec>,
}

/// Element of a presentation, stored in the global monomial basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigradedClass {
    pres_id: u64,
    coeffs: SparseVec,
}

impl BigradedClass {
    pub fn coeffs(&self) -> &SparseVec {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    fn check(&self, other: &BigradedClass) -> Result<(), BigradedError> {
        if self.pres_id != other.pres_id {
            return Err(BigradedError::PresentationMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &BigradedClass) -> Result<BigradedClass, BigradedError> {
        self.check(other)?;
        Ok(BigradedClass {
            pres_id: self.pres_id,
            coeffs: &self.coeffs + &other.coeffs,
        })
    }

    pub fn sub(&self, other: &BigradedClass) -> Result<BigradedClass, BigradedError> {
        self.check(other)?;
        Ok(BigradedClass {
            pres_id: self.pres_id,
            coeffs: &self.coeffs - &other.coeffs,
        })
    }

    pub fn scale(&self, c: &Rational) -> BigradedClass {
        BigradedClass {
            pres_id: self.pres_id,
            coeffs: self.coeffs.scaled(c),
        }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn monomial_label(generators: &[Generator], exps: &[u32]) -> String {
    let parts: Vec<String> = generators
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(g, &e)| if e == 1 { g.name.clone() } else { format!("{}^{e}", g.name) })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl Presentation {
    /// `Q[generators] / (ideal)` truncated above codimension `dim`.
    pub fn monomial(
        dim: u32,
        generators: Vec<Generator>,
        ideal: Vec<Vec<u32>>,
        polarization: &[(Vec<u32>, Rational)],
    ) -> Result<Self, BigradedError> {
        for (i, g) in generators.iter().enumerate() {
            if g.bidegree.p < 1 {
                return Err(BigradedError::GeneratorCodim(g.name.clone()));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(BigradedError::DuplicateGenerator(g.name.clone()));
            }
        }
        let k = generators.len();
        for r in &ideal {
            if r.len() != k {
                return Err(BigradedError::ExponentLength { expected: k, got: r.len() });
            }
        }
        let mut monomials = Vec::new();
        let mut current = vec![0u32; k];
        enumerate(&generators, dim as i32, 0, 0, &mut current, &mut monomials);
        monomials.retain(|m| !ideal.iter().any(|r| divides(r, m)));
        let mut basis: Vec<BasisElement> = monomials
            .into_iter()
            .map(|exps| {
                let bidegree = generators
                    .iter()
                    .zip(&exps)
                    .fold(Bidegree::new(0, 0), |acc, (g, &e)| {
                        Bidegree::new(acc.p + e as i32 * g.bidegree.p, acc.s + e as i32 * g.bidegree.s)
                    });
                BasisElement {
                    label: monomial_label(&generators, &exps),
                    bidegree,
                    exponents: Some(exps),
                }
            })
            .collect();
        basis.sort_by(|a, b| (a.bidegree, &a.exponents).cmp(&(b.bidegree, &b.exponents)));
        let lookup: HashMap<Vec<u32>, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, b)| (b.exponents.clone().expect("monomial"), i))
            .collect();
        let unit = lookup.get(&vec![0; k]).copied().ok_or_else(|| BigradedError::Table("the unit lies in the ideal".to_string()))?;
        let mut xi = SparseVec::new();
        for (exps, c) in polarization {
            if exps.len() != k {
                return Err(BigradedError::ExponentLength { expected: k, got: exps.len() });
            }
            match lookup.get(exps) {
                Some(&i) => xi.add_at(i, c),
                None => return Err(BigradedError::Polarization(format!("monomial {} vanishes", monomial_label(&generators, exps)))),
            }
        }
        Self::assemble(dim, generators, ideal, basis, Product::Monomial { lookup }, unit, xi)
    }

    /// Presentation given by structure constants `products[i][j] = e_i · e_j`.
    /// The basis must be listed in increasing bidegree order.
    pub fn from_table(
        dim: u32,
        basis: Vec<(String, Bidegree)>,
        products: Vec<Vec<SparseVec>>,
        unit: usize,
        polarization: SparseVec,
    ) -> Result<Self, BigradedError> {
        let n = basis.len();
        if products.len() != n || products.iter().any(|row| row.len() != n) {
            return Err(BigradedError::Table(format!("expected a {n}x{n} table")));
        }
        if basis.windows(2).any(|w| w[0].1 > w[1].1) {
            return Err(BigradedError::Table("basis is not sorted by bidegree".to_string()));
        }
        if unit >= n {
            return Err(BigradedError::UnknownIndex(unit));
        }
        let basis: Vec<BasisElement> = basis
            .into_iter()
            .map(|(label, bidegree)| BasisElement {
                label,
                bidegree,
                exponents: None,
            })
            .collect();
        for (i, row) in products.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let expected = basis[i].bidegree + basis[j].bidegree;
                for (k, _) in v.iter() {
                    if k >= n {
                        return Err(BigradedError::UnknownIndex(k));
                    }
                    if basis[k].bidegree != expected {
                        return Err(BigradedError::Table(format!(
                            "{} * {} has a term in bidegree {}, expected {expected}",
                            basis[i].label, basis[j].label, basis[k].bidegree
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            if products[unit][i] != SparseVec::unit(i) || products[i][unit] != SparseVec::unit(i) {
                return Err(BigradedError::Table(format!("{} is not a unit", basis[unit].label)));
            }
        }
        Self::assemble(dim, Vec::new(), Vec::new(), basis, Product::Table(products), unit, polarization)
    }

    fn assemble(
        dim: u32,
        generators: Vec<Generator>,
        relations: Vec<Vec<u32>>,
        basis: Vec<BasisElement>,
        product: Product,
        unit: usize,
        polarization: SparseVec,
    ) -> Result<Self, BigradedError> {
        for b in &basis {
            if !b.bidegree.in_bounds(dim) {
                return Err(BigradedError::BidegreeOutOfRange {
                    label: b.label.clone(),
                    p: b.bidegree.p,
                    s: b.bidegree.s,
                });
            }
        }
        if basis[unit].bidegree != Bidegree::new(0, 0) {
            return Err(BigradedError::Table("unit is not in bidegree (0,0)".to_string()));
        }
        if polarization.is_zero() && dim > 0 {
            return Err(BigradedError::Polarization("polarization is zero".to_string()));
        }
        for (i, _) in polarization.iter() {
            if i >= basis.len() {
                return Err(BigradedError::UnknownIndex(i));
            }
            if basis[i].bidegree != Bidegree::new(1, 0) {
                return Err(BigradedError::Polarization(format!(
                    "term {} has bidegree {}, expected (1,0)",
                    basis[i].label, basis[i].bidegree
                )));
            }
        }
        let mut blocks: BTreeMap<Bidegree, Range<usize>> = BTreeMap::new();
        for (i, b) in basis.iter().enumerate() {
            blocks.entry(b.bidegree).and_modify(|r| r.end = i + 1).or_insert(i..i + 1);
        }
        Ok(Self {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            dim,
            generators,
            relations,
            basis,
            blocks,
            product,
            unit,
            polarization,
            fourier: None,
        })
    }

    pub(crate) fn exterior_even(
        dim: u32,
        masks: Vec<u32>,
        labels: Vec<String>,
    ) -> Result<Self, BigradedError> {
        let basis: Vec<BasisElement> = masks
            .iter()
            .zip(labels)
            .map(|(&m, label)| BasisElement {
                label,
                bidegree: Bidegree::new((m.count_ones() / 2) as i32, 0),
                exponents: None,
            })
            .collect();
        let lookup: HashMap<u32, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut theta = SparseVec::new();
        for i in 0..dim {
            theta.add_at(lookup[&(0b11 << (2 * i))], &Rational::one());
        }
        let unit = lookup[&0];
        Self::assemble(dim, Vec::new(), Vec::new(), basis, Product::ExteriorEven { masks, lookup }, unit, theta)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Vec<u32>] {
        &self.relations
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn total_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_monomial(&self) -> bool {
        matches!(self.product, Product::Monomial { .. })
    }

    pub fn blocks(&self) -> &BTreeMap<Bidegree, Range<usize>> {
        &self.blocks
    }

    pub fn block(&self, b: Bidegree) -> Range<usize> {
        self.blocks.get(&b).cloned().unwrap_or(0..0)
    }

    pub fn bidegree_of(&self, i: usize) -> Bidegree {
        self.basis[i].bidegree
    }

    pub fn hilbert_function(&self) -> BTreeMap<Bidegree, usize> {
        self.blocks.iter().map(|(&b, r)| (b, r.len())).collect()
    }

    pub fn fourier(&self) -> Option<&FourierSpec> {
        self.fourier.as_ref()
    }

    pub fn has_fourier(&self) -> bool {
        self.fourier.is_some()
    }

    pub fn polarization_vector(&self) -> &SparseVec {
        &self.polarization
    }

    // construction of classes

    fn wrap(&self, coeffs: SparseVec) -> BigradedClass {
        BigradedClass {
            pres_id: self.id,
            coeffs,
        }
    }

    fn owns(&self, x: &BigradedClass) -> Result<(), BigradedError> {
        if x.pres_id != self.id {
            return Err(BigradedError::PresentationMismatch);
        }
        Ok(())
    }

    pub fn class(&self, coeffs: SparseVec) -> Result<BigradedClass, BigradedError> {
        if let Some(m) = coeffs.max_index() {
            if m >= self.basis.len() {
                return Err(BigradedError::UnknownIndex(m));
            }
        }
        Ok(self.wrap(coeffs))
    }

    pub fn zero(&self) -> BigradedClass {
        self.wrap(SparseVec::new())
    }

    pub fn unit(&self) -> BigradedClass {
        self.wrap(SparseVec::unit(self.unit))
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn polarization(&self) -> BigradedClass {
        self.wrap(self.polarization.clone())
    }

    pub fn basis_class(&self, i: usize) -> Result<BigradedClass, BigradedError> {
        if i >= self.basis.len() {
            return Err(BigradedError::UnknownIndex(i));
        }
        Ok(self.wrap(SparseVec::unit(i)))
    }

    /// Monomial class; zero when the monomial lies in the ideal or above codimension d.
    pub fn monomial_class(&self, exps: &[u32]) -> Result<BigradedClass, BigradedError> {
        let Product::Monomial { lookup } = &self.product else {
            return Err(BigradedError::Table("presentation is not monomial".to_string()));
        };
        if exps.len() != self.generators.len() {
            return Err(BigradedError::ExponentLength {
                expected: self.generators.len(),
                got: exps.len(),
            });
        }
        Ok(self.wrap(lookup.get(exps).map(|&i| SparseVec::unit(i)).unwrap_or_default()))
    }

    pub fn generator_class(&self, name: &str) -> Result<BigradedClass, BigradedError> {
        let i = self
            .generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| BigradedError::UnknownGenerator(name.to_string()))?;
        let mut exps = vec![0; self.generators.len()];
        exps[i] = 1;
        self.monomial_class(&exps)
    }

    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    // products on coordinate vectors

    fn basis_product(&self, i: usize, j: usize) -> SparseVec {
        match &self.product {
            Product::Monomial { lookup } => {
                let a = self.basis[i].exponents.as_ref().expect("monomial");
                let b = self.basis[j].exponents.as_ref().expect("monomial");
                let sum: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                lookup.get(&sum).map(|&k| SparseVec::unit(k)).unwrap_or_default()
            }
            Product::Table(t) => t[i][j].clone(),
            Product::ExteriorEven { masks, lookup } => {
                let sign = merge_sign(masks[i], masks[j]);
                if sign == 0 {
                    return SparseVec::new();
                }
                let k = lookup[&(masks[i] | masks[j])];
                SparseVec::from_pairs([(k, Rational::from_integer(sign.into()))])
            }
        }
    }

    pub fn mult_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(&self.basis_product(i, j), &(a * b));
            }
        }
        out
    }

    pub fn components_vec(&self, x: &SparseVec) -> Vec<(Bidegree, SparseVec)> {
        let mut parts: BTreeMap<Bidegree, SparseVec> = BTreeMap::new();
        for (i, c) in x.iter() {
            parts.entry(self.basis[i].bidegree).or_default().add_at(i, c);
        }
        parts.into_iter().collect()
    }

    pub fn project_vec(&self, x: &SparseVec, b: Bidegree) -> SparseVec {
        let r = self.block(b);
        x.filtered(|i| r.contains(&i))
    }

    pub fn minus_star_vec(&self, x: &SparseVec) -> SparseVec {
        SparseVec::from_pairs(x.iter().map(|(i, c)| {
            if self.basis[i].bidegree.s.rem_euclid(2) == 0 {
                (i, c.clone())
            } else {
                (i, -c.clone())
            }
        }))
    }

    /// Pull-back by multiplication by `k`: acts as `k^{2p - s}` on block `(p, s)`.
    pub fn homothety_vec(&self, x: &SparseVec, k: i64) -> SparseVec {
        SparseVec::from_pairs(x.iter().map(|(i, c)| {
            let b = self.basis[i].bidegree;
            (i, c * crate::exact::pow(&Rational::from_integer(k.into()), (2 * b.p - b.s) as u32))
        }))
    }

    pub fn fourier_vec(&self, x: &SparseVec) -> Result<SparseVec, BigradedError> {
        let f = self.fourier.as_ref().ok_or(BigradedError::NoFourier)?;
        Ok(f.apply(x))
    }

    pub fn fourier_inverse_vec(&self, x: &SparseVec) -> Result<SparseVec, BigradedError> {
        let f = self.fourier.as_ref().ok_or(BigradedError::NoFourier)?;
        let sign = if self.dim.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
        let scaled = self.minus_star_vec(&f.apply(x)).scaled(&(sign / f.degree()));
        Ok(scaled)
    }

    pub fn pontryagin_vec(&self, x: &SparseVec, y: &SparseVec) -> Result<SparseVec, BigradedError> {
        let fx = self.fourier_vec(x)?;
        let fy = self.fourier_vec(y)?;
        self.fourier_inverse_vec(&self.mult_vec(&fx, &fy))
    }

    // operations on classes

    pub fn mult(&self, x: &BigradedClass, y: &BigradedClass) -> Result<BigradedClass, BigradedError> {
        self.owns(x)?;
        self.owns(y)?;
        Ok(self.wrap(self.mult_vec(&x.coeffs, &y.coeffs)))
    }

    pub fn power(&self, x: &BigradedClass, k: u32) -> Result<BigradedClass, BigradedError> {
        (0..k).try_fold(self.unit(), |acc, _| self.mult(&acc, x))
    }

    pub fn component_project(&self, x: &BigradedClass, b: Bidegree) -> Result<BigradedClass, BigradedError> {
        self.owns(x)?;
        Ok(self.wrap(self.project_vec(&x.coeffs, b)))
    }

    pub fn components(&self, x: &BigradedClass) -> Result<Vec<(Bidegree, BigradedClass)>, BigradedError> {
        self.owns(x)?;
        Ok(self
            .components_vec(&x.coeffs)
            .into_iter()
            .map(|(b, v)| (b, self.wrap(v)))
            .collect())
    }

    pub fn minus_star(&self, x: &BigradedClass) -> Result<BigradedClass, BigradedError> {
        self.owns(x)?;
        Ok(self.wrap(self.minus_star_vec(&x.coeffs)))
    }

    pub fn fourier_apply(&self, x: &BigradedClass) -> Result<BigradedClass, BigradedError> {
        self.owns(x)?;
        Ok(self.wrap(self.fourier_vec(&x.coeffs)?))
    }

    pub fn fourier_inverse(&self, x: &BigradedClass) -> Result<BigradedClass, BigradedError> {
        self.owns(x)?;
        Ok(self.wrap(self.fourier_inverse_vec(&x.coeffs)?))
    }

    pub fn pontryagin_derived(&self, x: &BigradedClass, y: &BigradedClass) -> Result<BigradedClass, BigradedError> {
        self.owns(x)?;
        self.owns(y)?;
        Ok(self.wrap(self.pontryagin_vec(&x.coeffs, &y.coeffs)?))
    }

    /// Unit for the derived Pontryagin product, `F^{-1}(1)`.
    pub fn pontryagin_unit(&self) -> Result<BigradedClass, BigradedError> {
        Ok(self.wrap(self.fourier_inverse_vec(&SparseVec::unit(self.unit))?))
    }

    pub fn format_vec(&self, x: &SparseVec) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (i, c)) in x.iter().enumerate() {
            let negative = c < &Rational::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let label = &self.basis[i].label;
            if label == "1" {
                out.push_str(&magnitude.to_string());
            } else if magnitude.is_one() {
                out.push_str(label);
            } else {
                out.push_str(&format!("{magnitude}*{label}"));
            }
        }
        out
    }

    pub fn format(&self, x: &BigradedClass) -> String {
        self.format_vec(&x.coeffs)
    }
}

fn enumerate(gens: &[Generator], budget: i32, at: usize, used: i32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if at == gens.len() {
        out.push(current.clone());
        return;
    }
    let step = gens[at].bidegree.p;
    let mut e = 0;
    while used + e * step <= budget {
        current[at] = e as u32;
        enumerate(gens, budget, at + 1, used + e * step, current, out);
        e += 1;
    }
    current[at] = 0;
}
