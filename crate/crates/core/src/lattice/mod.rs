//! Integral symplectic lattices modelling H_1 of a polarized abelian variety,
//! their automorphisms, and the decomposition attached to a cyclic cover.

mod blocks;
mod decompose;
mod examples;
mod group;
mod ns;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::exact::{alternating_normal_form, IntMatrix, QMatrix};

pub use blocks::{cyclic_shift, random_symplectic, rotation, transvection};
pub use decompose::{fixed_part_decomposition, norm_identities_check, CoveringData, NormReport, SubvarietyData};
pub use examples::{block_example, conjugated, cover_suite, fixed_point_free_suite, Block, CoverExample};
pub use group::{GroupAlgebraElt, MatrixGroup};
pub use ns::{endomorphism_of_class, ns_class};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("polarization form must be a square matrix of even size, got {rows}x{cols}")]
    Shape { rows: usize, cols: usize },
    #[error("polarization form is not alternating")]
    NotAlternating,
    #[error("polarization form is degenerate")]
    Degenerate,
    #[error("matrix is not integral")]
    NotIntegral,
    #[error("matrix does not preserve the polarization (M^T E M != E)")]
    NotSymplectic,
    #[error("sigma^{order} is not the identity")]
    OrderMismatch { order: u32 },
    #[error("declared order {declared} is not exact: sigma^{divisor} is already the identity")]
    OrderNotExact { declared: u32, divisor: u32 },
    #[error("order must be positive")]
    ZeroOrder,
    #[error("endomorphism is not symmetric under the Rosati involution")]
    NotRosatiSymmetric,
    #[error("class is not a pure degree-2 class of genus {0}")]
    NotDivisorClass(usize),
    #[error("restricted form divided by n = {n} is not integral")]
    JprimeNotIntegral { n: u32 },
    #[error("restricted form divided by n = {n} is not principal (elementary divisors {divisors:?})")]
    JprimeNotPrincipal { n: u32, divisors: Vec<String> },
    #[error("matrix group generated by the inputs exceeds {0} elements")]
    GroupTooLarge(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Lattice Z^{2g} with an integral nondegenerate alternating form E.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizedLattice {
    gram: IntMatrix,
    divisors: Vec<BigInt>,
}

impl PolarizedLattice {
    pub fn new(gram: IntMatrix) -> Result<Self, LatticeError> {
        if !gram.is_square() || !gram.rows().is_multiple_of(2) {
            return Err(LatticeError::Shape {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        let form = alternating_normal_form(&gram).map_err(|_| LatticeError::NotAlternating)?;
        if form.radical_rank > 0 {
            return Err(LatticeError::Degenerate);
        }
        Ok(Self {
            gram,
            divisors: form.divisors,
        })
    }

    /// Principal polarization `⊕ [[0, 1], [-1, 0]]` in the interleaved basis.
    pub fn standard(genus: usize) -> Self {
        let mut gram = IntMatrix::zeros(2 * genus, 2 * genus);
        for i in 0..genus {
            gram.set(2 * i, 2 * i + 1, BigInt::one());
            gram.set(2 * i + 1, 2 * i, -BigInt::one());
        }
        Self {
            gram,
            divisors: vec![BigInt::one(); genus],
        }
    }

    pub fn genus(&self) -> usize {
        self.gram.rows() / 2
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn gram_q(&self) -> QMatrix {
        self.gram.to_q()
    }

    /// One elementary divisor per symplectic pair, `d_1 | d_2 | ...`.
    pub fn elementary_divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    pub fn is_principal(&self) -> bool {
        self.divisors.iter().all(One::is_one)
    }

    pub fn is_standard(&self) -> bool {
        *self == Self::standard(self.genus())
    }

    /// `χ = d_1 ⋯ d_g`, so that `det E = χ^2`.
    pub fn euler_char(&self) -> BigInt {
        self.divisors.iter().fold(BigInt::one(), |acc, d| acc * d)
    }

    /// Degree of the polarization isogeny, `χ^2`.
    pub fn polarization_degree(&self) -> BigInt {
        let chi = self.euler_char();
        &chi * &chi
    }

    /// Adjoint with respect to E: `R(M) = E^{-1} M^T E`.
    pub fn rosati(&self, m: &QMatrix) -> QMatrix {
        let e = self.gram_q();
        e.inverse()
            .expect("nondegenerate form")
            .mul(&m.transpose())
            .mul(&e)
    }

    pub fn is_symplectic(&self, m: &IntMatrix) -> bool {
        m.rows() == self.rank() && m.cols() == self.rank() && m.transpose().mul(&self.gram).mul(m) == self.gram
    }
}

/// Automorphism of a polarized lattice of exact finite order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticEndo {
    matrix: IntMatrix,
    order: u32,
}

impl SymplecticEndo {
    pub fn new(lattice: &PolarizedLattice, matrix: IntMatrix, order: u32) -> Result<Self, LatticeError> {
        if matrix.rows() != lattice.rank() || matrix.cols() != lattice.rank() {
            return Err(LatticeError::Dimension(format!(
                "automorphism is {}x{}, lattice has rank {}",
                matrix.rows(),
                matrix.cols(),
                lattice.rank()
            )));
        }
        if order == 0 {
            return Err(LatticeError::ZeroOrder);
        }
        if !lattice.is_symplectic(&matrix) {
            return Err(LatticeError::NotSymplectic);
        }
        let id = IntMatrix::identity(matrix.rows());
        if matrix.pow(order) != id {
            return Err(LatticeError::OrderMismatch { order });
        }
        if let Some(divisor) = (1..order).find(|d| order.is_multiple_of(*d) && matrix.pow(*d) == id) {
            return Err(LatticeError::OrderNotExact { declared: order, divisor });
        }
        Ok(Self { matrix, order })
    }

    pub fn from_rational(lattice: &PolarizedLattice, matrix: &QMatrix, order: u32) -> Result<Self, LatticeError> {
        let m = matrix.to_int().ok_or(LatticeError::NotIntegral)?;
        Self::new(lattice, m, order)
    }

    /// Order computed by iteration (up to `limit`).
    pub fn find_order(lattice: &PolarizedLattice, matrix: IntMatrix, limit: u32) -> Result<Self, LatticeError> {
        if matrix.rows() != lattice.rank() || matrix.cols() != lattice.rank() {
            return Self::new(lattice, matrix, 1);
        }
        if !lattice.is_symplectic(&matrix) {
            return Err(LatticeError::NotSymplectic);
        }
        let id = IntMatrix::identity(matrix.rows());
        let mut power = matrix.clone();
        for k in 1..=limit {
            if power == id {
                return Self::new(lattice, matrix, k);
            }
            power = power.mul(&matrix);
        }
        Err(LatticeError::OrderMismatch { order: limit })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn matrix_q(&self) -> QMatrix {
        self.matrix.to_q()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `Φ_n(σ) = 1 + σ + ... + σ^{n-1}`.
    pub fn norm_element(&self) -> IntMatrix {
        let n = self.matrix.rows();
        let mut total = IntMatrix::zeros(n, n);
        let mut power = IntMatrix::identity(n);
        for _ in 0..self.order {
            total = total.add(&power);
            power = power.mul(&self.matrix);
        }
        total
    }

    pub fn inverse(&self) -> IntMatrix {
        self.matrix.pow(self.order - 1)
    }
}
