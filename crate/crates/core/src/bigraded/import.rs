use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use super::closure::LinearOperator;
use super::{BigradedClass, BigradedError, Presentation};
use crate::exact::SparseVec;
use crate::exterior::{fourier, mask_label, ExtClass, ExteriorError, MAX_GENUS};

/// Even part of the cohomology of a `g`-dimensional abelian variety as a
/// bigraded presentation with all classes in `s = 0`.
#[derive(Clone, Debug)]
pub struct ExteriorImport {
    presentation: Presentation,
    masks: Vec<u32>,
    index: HashMap<u32, usize>,
    genus: usize,
}

impl ExteriorImport {
    pub fn new(genus: usize) -> Result<Self, BigradedError> {
        if genus > MAX_GENUS {
            return Err(ExteriorError::GenusTooLarge(genus).into());
        }
        let mut masks: Vec<u32> = (0u32..1 << (2 * genus)).filter(|m| m.count_ones() % 2 == 0).collect();
        masks.sort_by_key(|&m| (m.count_ones(), m));
        let labels = masks.iter().map(|&m| mask_label(m)).collect();
        let index: HashMap<u32, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let pres = Presentation::exterior_even(genus as u32, masks.clone(), labels)?;
        let images = masks
            .iter()
            .map(|&m| {
                let image = fourier(&ExtClass::monomial(genus, m, crate::exact::int(1)));
                SparseVec::from_pairs(image.terms().iter().map(|(t, c)| (index[t], c.clone())))
            })
            .collect();
        let presentation = pres.with_fourier_images(BigInt::one(), images)?;
        Ok(Self {
            presentation,
            masks,
            index,
            genus,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn to_class(&self, x: &ExtClass) -> Result<BigradedClass, BigradedError> {
        if x.genus() != self.genus {
            return Err(ExteriorError::RingMismatch {
                left: x.genus(),
                right: self.genus,
            }
            .into());
        }
        let mut v = SparseVec::new();
        for (m, c) in x.terms() {
            let i = self.index.get(m).ok_or(BigradedError::NotBigraded)?;
            v.add_at(*i, c);
        }
        self.presentation.class(v)
    }

    pub fn vector_to_exterior(&self, v: &SparseVec) -> ExtClass {
        let mut out = ExtClass::zero(self.genus);
        for (i, c) in v.iter() {
            out.add_term(self.masks[i], c);
        }
        out
    }

    pub fn to_exterior(&self, x: &BigradedClass) -> Result<ExtClass, BigradedError> {
        self.presentation.owns(x)?;
        Ok(self.vector_to_exterior(x.coeffs()))
    }

    /// Wraps an operator on exterior classes as an operator on coordinate
    /// vectors. Odd terms in the output are dropped.
    pub fn operator<'a, F>(&'a self, f: F) -> LinearOperator<'a>
    where
        F: Fn(&ExtClass) -> ExtClass + Send + Sync + 'a,
    {
        Box::new(move |v: &SparseVec| {
            let image = f(&self.vector_to_exterior(v));
            SparseVec::from_pairs(
                image
                    .terms()
                    .iter()
                    .filter_map(|(m, c)| self.index.get(m).map(|&i| (i, c.clone()))),
            )
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraded::{axiom_check, AxiomOptions};
    use crate::exterior::pontryagin;

    #[test]
    fn theta_is_the_polarization() {
        let imp = ExteriorImport::new(2).unwrap();
        let theta = imp.to_class(&ExtClass::theta(2)).unwrap();
        assert_eq!(theta, imp.presentation().polarization());
        assert_eq!(imp.presentation().total_dim(), 8);
    }

    #[test]
    fn products_match_the_exterior_ring() {
        let imp = ExteriorImport::new(2).unwrap();
        let pres = imp.presentation();
        let x = ExtClass::a(2, 1).wedge(&ExtClass::b(2, 2)).unwrap();
        let y = ExtClass::b(2, 1).wedge(&ExtClass::a(2, 2)).unwrap();
        let prod = pres.mult(&imp.to_class(&x).unwrap(), &imp.to_class(&y).unwrap()).unwrap();
        assert_eq!(imp.to_exterior(&prod).unwrap(), x.wedge(&y).unwrap());
        let star = pres.pontryagin_derived(&imp.to_class(&x).unwrap(), &imp.to_class(&y).unwrap()).unwrap();
        assert_eq!(imp.to_exterior(&star).unwrap(), pontryagin(&x, &y).unwrap());
    }

    #[test]
    fn imported_ring_satisfies_axioms() {
        let imp = ExteriorImport::new(2).unwrap();
        let report = axiom_check(imp.presentation(), &AxiomOptions::default());
        assert!(report.all_passed(), "{:?}", report.checks);
    }

    #[test]
    fn odd_classes_are_rejected() {
        let imp = ExteriorImport::new(1).unwrap();
        assert!(imp.to_class(&ExtClass::a(1, 1)).is_err());
    }
}
