use super::{fourier, pontryagin, ExtClass};
use crate::exact::{saturate_vectors, ClosureMap, SparseVec, SubspaceBasis};

#[derive(Clone, Debug)]
pub struct ShadowOptions {
    pub fourier: bool,
    pub pontryagin: bool,
    pub degree_projections: bool,
}

impl Default for ShadowOptions {
    fn default() -> Self {
        Self {
            fourier: true,
            pontryagin: true,
            degree_projections: true,
        }
    }
}

/// Smallest subspace of Λ containing `1` and `seeds`, closed under `∧`, the
/// selected tautological operations and every extra operator.
pub fn shadow_closure<'a>(
    genus: usize,
    seeds: &[ExtClass],
    options: &ShadowOptions,
    extra: Vec<ClosureMap<'a>>,
) -> SubspaceBasis {
    let dim = ExtClass::ambient_dim(genus);
    let mut start = vec![ExtClass::one(genus).to_sparse()];
    start.extend(seeds.iter().map(ExtClass::to_sparse));
    let mut maps = vec![ClosureMap::symmetric(move |x: &SparseVec, y: &SparseVec| {
        let x = ExtClass::from_sparse(genus, x);
        let y = ExtClass::from_sparse(genus, y);
        x.wedge(&y).expect("same ring").to_sparse()
    })];
    if options.pontryagin {
        maps.push(ClosureMap::symmetric(move |x: &SparseVec, y: &SparseVec| {
            let x = ExtClass::from_sparse(genus, x);
            let y = ExtClass::from_sparse(genus, y);
            pontryagin(&x, &y).expect("same ring").to_sparse()
        }));
    }
    if options.fourier {
        maps.push(ClosureMap::unary(move |x: &SparseVec| {
            fourier(&ExtClass::from_sparse(genus, x)).to_sparse()
        }));
    }
    if options.degree_projections {
        maps.push(ClosureMap::split(move |x: &SparseVec| {
            let x = ExtClass::from_sparse(genus, x);
            x.degrees().into_iter().map(|d| x.homogeneous_part(d).to_sparse()).collect()
        }));
    }
    maps.extend(extra);
    saturate_vectors(dim, &start, &maps)
}

/// Subalgebra of (Λ, ∧) generated by the given classes.
pub fn algebra_generated(genus: usize, generators: &[ExtClass]) -> SubspaceBasis {
    let dim = ExtClass::ambient_dim(genus);
    let maps: Vec<ClosureMap<'_>> = generators
        .iter()
        .map(|g| {
            ClosureMap::unary(move |x: &SparseVec| {
                ExtClass::from_sparse(genus, x).wedge(g).expect("same ring").to_sparse()
            })
        })
        .collect();
    saturate_vectors(dim, &[ExtClass::one(genus).to_sparse()], &maps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tautological_ring_of_theta() {
        // closure of θ is spanned by the powers of θ
        for g in 1..=4 {
            let closed = shadow_closure(g, &[ExtClass::theta(g)], &ShadowOptions::default(), Vec::new());
            assert_eq!(closed.dim(), g + 1);
            let powers = algebra_generated(g, &[ExtClass::theta(g)]);
            assert_eq!(closed, powers);
        }
    }

    #[test]
    fn closure_of_curve_matches_theta() {
        let g = 3;
        let closed = shadow_closure(g, &[ExtClass::curve(g)], &ShadowOptions::default(), Vec::new());
        assert_eq!(closed.dim(), g + 1);
    }
}
