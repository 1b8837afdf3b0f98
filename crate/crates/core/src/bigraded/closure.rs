use std::collections::BTreeMap;

use super::{Bidegree, BigradedClass, BigradedError, Presentation};
use crate::exact::{saturate_vectors, ClosureMap, SparseVec, SubspaceBasis};

pub type LinearOperator<'a> = Box<dyn Fn(&SparseVec) -> SparseVec + Send + Sync + 'a>;

#[derive(Clone, Debug)]
pub struct ClosureOptions {
    /// Always include the unit `[X]`.
    pub adjoin_unit: bool,
    pub pontryagin: bool,
    pub projections: bool,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        Self {
            adjoin_unit: true,
            pontryagin: true,
            projections: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClosureOutcome {
    pub basis: SubspaceBasis,
    pub unit_adjoined: bool,
}

/// Smallest subspace containing the seeds (and the unit) that is closed under
/// `·`, the derived `*`, projection onto every bidegree and every pusher.
pub fn taut_closure(
    pres: &Presentation,
    seeds: &[BigradedClass],
    pushers: &[LinearOperator<'_>],
    options: &ClosureOptions,
) -> Result<ClosureOutcome, BigradedError> {
    if options.pontryagin && !pres.has_fourier() {
        return Err(BigradedError::NoFourier);
    }
    let mut start: Vec<SparseVec> = Vec::new();
    if options.adjoin_unit {
        start.push(pres.unit().coeffs().clone());
    }
    for s in seeds {
        pres.owns(s)?;
        start.push(s.coeffs().clone());
    }
    let mut maps = vec![ClosureMap::symmetric(|x: &SparseVec, y: &SparseVec| pres.mult_vec(x, y))];
    if options.pontryagin {
        maps.push(ClosureMap::symmetric(|x: &SparseVec, y: &SparseVec| {
            pres.pontryagin_vec(x, y).expect("Fourier operator present")
        }));
    }
    if options.projections {
        maps.push(ClosureMap::split(|x: &SparseVec| {
            pres.components_vec(x).into_iter().map(|(_, v)| v).collect()
        }));
    }
    for op in pushers {
        maps.push(ClosureMap::unary(move |x: &SparseVec| op(x)));
    }
    let basis = saturate_vectors(pres.total_dim(), &start, &maps);
    Ok(ClosureOutcome {
        basis,
        unit_adjoined: options.adjoin_unit,
    })
}

/// Subalgebra generated by the unit and the given vectors under `·`.
pub fn generated_subalgebra(pres: &Presentation, generators: &[SparseVec]) -> SubspaceBasis {
    let maps: Vec<ClosureMap<'_>> = generators
        .iter()
        .map(|g| ClosureMap::unary(move |x: &SparseVec| pres.mult_vec(x, g)))
        .collect();
    saturate_vectors(pres.total_dim(), &[pres.unit().coeffs().clone()], &maps)
}

/// Dimension of each bidegree piece, for a subspace closed under projections.
pub fn subspace_hilbert_function(pres: &Presentation, basis: &SubspaceBasis) -> BTreeMap<Bidegree, usize> {
    let mut counts = BTreeMap::new();
    for &b in pres.blocks().keys() {
        let parts: Vec<SparseVec> = basis.rows().iter().map(|r| pres.project_vec(r, b)).collect();
        let dim = SubspaceBasis::spanned_by(pres.total_dim(), &parts).dim();
        if dim > 0 {
            counts.insert(b, dim);
        }
    }
    counts
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditOutcome {
    pub operators: usize,
    pub added_dimension: usize,
}

impl AuditOutcome {
    pub fn stable(&self) -> bool {
        self.added_dimension == 0
    }
}

/// Applies extra operators to a closed subspace and measures how much it grows.
pub fn audit(basis: &SubspaceBasis, operators: &[LinearOperator<'_>]) -> AuditOutcome {
    let mut grown = basis.clone();
    for op in operators {
        for row in basis.rows() {
            grown.insert(&op(row));
        }
    }
    AuditOutcome {
        operators: operators.len(),
        added_dimension: grown.dim() - basis.dim(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraded::{exponential_fourier, Generator};
    use crate::exact::int;
    use num_bigint::BigInt;

    fn line(d: u32) -> Presentation {
        let pres = Presentation::monomial(d, vec![Generator::new("eta", 1, 0)], vec![vec![d + 1]], &[(vec![1], int(1))]).unwrap();
        let (deg, images) = exponential_fourier(&pres, &BigInt::from(1)).unwrap();
        pres.with_fourier_images(deg, images).unwrap()
    }

    #[test]
    fn closure_of_polarization_is_everything() {
        let pres = line(5);
        let out = taut_closure(&pres, &[pres.polarization()], &[], &ClosureOptions::default()).unwrap();
        assert_eq!(out.basis.dim(), 6);
    }

    #[test]
    fn empty_and_zero_seeds() {
        let pres = line(4);
        let out = taut_closure(&pres, &[], &[], &ClosureOptions::default()).unwrap();
        assert_eq!(out.basis.dim(), 1);
        let bare = ClosureOptions {
            adjoin_unit: false,
            ..ClosureOptions::default()
        };
        let out = taut_closure(&pres, &[pres.zero()], &[], &bare).unwrap();
        assert_eq!(out.basis.dim(), 0);
    }

    #[test]
    fn point_class_pontryagin_generates() {
        // the top class is a multiple of the *-unit, so only 1 and η^3 survive
        let pres = line(3);
        let top = pres.basis_class(3).unwrap();
        let out = taut_closure(&pres, &[top], &[], &ClosureOptions::default()).unwrap();
        assert_eq!(out.basis.dim(), 2);
        let hilbert = subspace_hilbert_function(&pres, &out.basis);
        assert_eq!(hilbert.len(), 2);
    }

    #[test]
    fn closure_is_idempotent_and_monotone() {
        let pres = line(6);
        let seeds = [pres.basis_class(4).unwrap()];
        let once = taut_closure(&pres, &seeds, &[], &ClosureOptions::default()).unwrap().basis;
        let as_classes: Vec<BigradedClass> = once.rows().iter().map(|r| pres.class(r.clone()).unwrap()).collect();
        let twice = taut_closure(&pres, &as_classes, &[], &ClosureOptions::default()).unwrap().basis;
        assert_eq!(once, twice);
        let more = [pres.basis_class(4).unwrap(), pres.basis_class(5).unwrap()];
        let bigger = taut_closure(&pres, &more, &[], &ClosureOptions::default()).unwrap().basis;
        assert!(once.is_subspace_of(&bigger));
    }
}
