use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Bidegree, BigradedError, Presentation};
use crate::exact::{factorial, from_bigint, sign_power, QMatrix, Rational, SparseVec};

/// Fourier operator given by the images of the basis vectors, together with
/// `deg(φ_ξ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierSpec {
    degree: Rational,
    images: Vec<SparseVec>,
}

impl FourierSpec {
    pub fn degree(&self) -> &Rational {
        &self.degree
    }

    pub fn images(&self) -> &[SparseVec] {
        &self.images
    }

    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in x.iter() {
            out.add_scaled(&self.images[i], c);
        }
        out
    }

    /// Matrix of the restriction to block `b` (rows: target block, columns: `b`).
    pub fn block_matrix(&self, pres: &Presentation, b: Bidegree) -> QMatrix {
        let source = pres.block(b);
        let target = pres.block(b.fourier_target(pres.dim()));
        QMatrix::from_fn(target.len(), source.len(), |i, j| {
            self.images[source.start + j].coeff(target.start + i)
        })
    }
}

impl Presentation {
    /// Attaches a Fourier operator after checking the grading contract and the
    /// inversion formula `F∘F = deg · (-1)^d · (-1)^*`.
    pub fn with_fourier_images(mut self, degree: BigInt, images: Vec<SparseVec>) -> Result<Self, BigradedError> {
        if !degree.is_positive() {
            return Err(BigradedError::Fourier("degree must be positive".to_string()));
        }
        let n = self.total_dim();
        if images.len() != n {
            return Err(BigradedError::Fourier(format!("{} images for {n} basis vectors", images.len())));
        }
        for (i, image) in images.iter().enumerate() {
            let target = self.bidegree_of(i).fourier_target(self.dim());
            if let Some((k, _)) = image.iter().find(|(k, _)| *k >= n || self.bidegree_of(*k) != target) {
                return Err(BigradedError::Fourier(format!(
                    "F({}) has a term outside block {target} (index {k})",
                    self.basis()[i].label
                )));
            }
        }
        let spec = FourierSpec {
            degree: from_bigint(degree),
            images,
        };
        let sign_d = sign_power(i64::from(self.dim()));
        for i in 0..n {
            let twice = spec.apply(&spec.images[i]);
            let expected = SparseVec::unit(i)
                .scaled(&(&spec.degree * &sign_d * sign_power(i64::from(self.bidegree_of(i).s))));
            if twice != expected {
                return Err(BigradedError::Fourier(format!(
                    "inversion formula fails on {}",
                    self.basis()[i].label
                )));
            }
        }
        self.fourier = Some(spec);
        Ok(self)
    }

    /// Same as [`Presentation::with_fourier_images`], from one matrix per block.
    pub fn with_fourier_blocks(self, degree: BigInt, blocks: &BTreeMap<Bidegree, QMatrix>) -> Result<Self, BigradedError> {
        for b in blocks.keys() {
            if !self.blocks().contains_key(b) {
                return Err(BigradedError::Fourier(format!("block {b} is empty in this presentation")));
            }
        }
        let mut images = vec![SparseVec::new(); self.total_dim()];
        for (&b, source) in self.blocks() {
            let target = self.block(b.fourier_target(self.dim()));
            let m = blocks
                .get(&b)
                .ok_or_else(|| BigradedError::Fourier(format!("missing matrix for block {b}")))?;
            if m.rows() != target.len() || m.cols() != source.len() {
                return Err(BigradedError::Fourier(format!(
                    "block {b} needs a {}x{} matrix, got {}x{}",
                    target.len(),
                    source.len(),
                    m.rows(),
                    m.cols()
                )));
            }
            for (j, col) in source.clone().enumerate() {
                images[col] = SparseVec::from_pairs((0..target.len()).map(|i| (target.start + i, m.get(i, j).clone())));
            }
        }
        self.with_fourier_images(degree, images)
    }

    pub fn fourier_blocks(&self) -> Option<BTreeMap<Bidegree, QMatrix>> {
        let spec = self.fourier()?;
        Some(self.blocks().keys().map(|&b| (b, spec.block_matrix(self, b))).collect())
    }
}

/// Fourier images for a monomial presentation whose polarization is a single
/// generator `ξ` with coefficient 1.
///
/// Blocks with `s = 0` must be spanned by `ξ^p`; there the exponential identity
/// `F(e^ξ) = χ e^{-ξ}` fixes `F(ξ^p) = χ (-1)^{d-p} p!/(d-p)! · ξ^{d-p}`. Other
/// blocks must be one-dimensional with one-dimensional partners; the scalar is
/// `χ` on the smaller block of each pair and is forced on the other by
/// inversion. Returns the degree `χ^2` and the images.
pub fn exponential_fourier(pres: &Presentation, chi: &BigInt) -> Result<(BigInt, Vec<SparseVec>), BigradedError> {
    if !chi.is_positive() {
        return Err(BigradedError::Fourier("χ must be positive".to_string()));
    }
    let d = pres.dim();
    let xi_index = match pres.polarization_vector().iter().collect::<Vec<_>>().as_slice() {
        [(i, c)] if c.is_one() => *i,
        _ => return Err(BigradedError::FourierObstruction("polarization is not a single basis monomial".to_string())),
    };
    let chi_q = from_bigint(chi.clone());
    let degree = chi * chi;
    let sign_d = sign_power(i64::from(d));
    let mut images = vec![SparseVec::new(); pres.total_dim()];
    for (&b, source) in pres.blocks() {
        let t = b.fourier_target(d);
        let target = pres.block(t);
        if source.len() != 1 || target.len() != 1 {
            return Err(BigradedError::FourierObstruction(format!(
                "block {b} has dimension {} but its Fourier partner {t} has dimension {}",
                source.len(),
                target.len()
            )));
        }
        let (i, j) = (source.start, target.start);
        let scalar = if b.s == 0 {
            let p = b.p as u32;
            let xi_power = pres.power(&pres.basis_class(xi_index)?, p)?;
            let xi_dual = pres.power(&pres.basis_class(xi_index)?, d - p)?;
            if xi_power.coeffs() != &SparseVec::unit(i) || xi_dual.coeffs() != &SparseVec::unit(j) {
                return Err(BigradedError::FourierObstruction(format!("block {b} is not spanned by a power of ξ")));
            }
            &chi_q * sign_power(i64::from(d - p)) * Rational::new(factorial(p), factorial(d - p))
        } else if b < t {
            chi_q.clone()
        } else if b > t {
            let forced = &Rational::from_integer(degree.clone()) * &sign_d * sign_power(i64::from(b.s));
            forced / &chi_q
        } else {
            let square = &sign_d * sign_power(i64::from(b.s));
            if square < Rational::zero() {
                return Err(BigradedError::FourierObstruction(format!(
                    "self-dual block {b} would need a scalar with negative square"
                )));
            }
            chi_q.clone()
        };
        images[i] = SparseVec::from_pairs([(j, scalar)]);
    }
    Ok((degree, images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraded::Generator;
    use crate::exact::int;

    fn line(d: u32) -> Presentation {
        Presentation::monomial(d, vec![Generator::new("eta", 1, 0)], vec![vec![d + 1]], &[(vec![1], int(1))]).unwrap()
    }

    #[test]
    fn exponential_identity_and_inversion() {
        for d in 1..8 {
            for chi in [1i64, 2, 3] {
                let pres = line(d);
                let (deg, images) = exponential_fourier(&pres, &BigInt::from(chi)).unwrap();
                let pres = pres.with_fourier_images(deg, images).unwrap();
                for i in 0..pres.total_dim() {
                    let x = pres.basis_class(i).unwrap();
                    let back = pres.fourier_inverse(&pres.fourier_apply(&x).unwrap()).unwrap();
                    assert_eq!(back, x);
                }
            }
        }
    }

    #[test]
    fn bad_blocks_are_rejected() {
        let pres = line(1);
        let mut blocks = BTreeMap::new();
        for p in 0..=1 {
            blocks.insert(Bidegree::new(p, 0), QMatrix::scalar(1, &int(1)));
        }
        let err = pres.clone().with_fourier_blocks(BigInt::one(), &blocks).unwrap_err();
        assert!(matches!(err, BigradedError::Fourier(_)));
        blocks.insert(Bidegree::new(1, 0), QMatrix::scalar(1, &int(-1)));
        blocks.insert(Bidegree::new(2, 0), QMatrix::scalar(1, &int(1)));
        assert!(pres.clone().with_fourier_blocks(BigInt::one(), &blocks).is_err());
        blocks.remove(&Bidegree::new(2, 0));
        assert!(pres.with_fourier_blocks(BigInt::one(), &blocks).is_ok());
    }
}
