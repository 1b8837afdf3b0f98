use rayon::prelude::*;

use super::{SparseVec, SubspaceBasis};

type UnaryFn<'a> = dyn Fn(&SparseVec) -> SparseVec + Send + Sync + 'a;
type SplitFn<'a> = dyn Fn(&SparseVec) -> Vec<SparseVec> + Send + Sync + 'a;
type BinaryFn<'a> = dyn Fn(&SparseVec, &SparseVec) -> SparseVec + Send + Sync + 'a;

/// Operation under which a subspace is to be closed.
pub enum ClosureMap<'a> {
    Unary(Box<UnaryFn<'a>>),
    /// One input, several outputs (e.g. projections onto graded pieces).
    Split(Box<SplitFn<'a>>),
    /// Bilinear map; `symmetric` means `f(x, y)` and `f(y, x)` span the same line.
    Binary { map: Box<BinaryFn<'a>>, symmetric: bool },
}

impl<'a> ClosureMap<'a> {
    pub fn unary(f: impl Fn(&SparseVec) -> SparseVec + Send + Sync + 'a) -> Self {
        ClosureMap::Unary(Box::new(f))
    }

    pub fn split(f: impl Fn(&SparseVec) -> Vec<SparseVec> + Send + Sync + 'a) -> Self {
        ClosureMap::Split(Box::new(f))
    }

    pub fn binary(f: impl Fn(&SparseVec, &SparseVec) -> SparseVec + Send + Sync + 'a) -> Self {
        ClosureMap::Binary {
            map: Box::new(f),
            symmetric: false,
        }
    }

    pub fn symmetric(f: impl Fn(&SparseVec, &SparseVec) -> SparseVec + Send + Sync + 'a) -> Self {
        ClosureMap::Binary {
            map: Box::new(f),
            symmetric: true,
        }
    }
}

enum Task<'m, 'a> {
    Unary(&'m UnaryFn<'a>, usize),
    Split(&'m SplitFn<'a>, usize),
    Binary(&'m BinaryFn<'a>, usize, usize),
}

/// Smallest subspace containing `start` and closed under every map.
///
/// Works in rounds: each round applies the maps to the vectors found in the previous
/// round (paired with every vector found so far for binary maps). Images are computed
/// in parallel and merged serially in a fixed order, so the result does not depend on
/// scheduling.
pub fn subspace_saturate(start: &SubspaceBasis, maps: &[ClosureMap<'_>]) -> SubspaceBasis {
    saturate_vectors(start.ambient_dim(), start.rows(), maps)
}

pub fn saturate_vectors(ambient_dim: usize, seeds: &[SparseVec], maps: &[ClosureMap<'_>]) -> SubspaceBasis {
    let mut basis = SubspaceBasis::new(ambient_dim);
    let mut gens: Vec<SparseVec> = Vec::new();
    for s in seeds {
        if basis.insert(s) {
            gens.push(s.clone());
        }
    }
    let mut frontier: Vec<usize> = (0..gens.len()).collect();
    while !frontier.is_empty() {
        let known = gens.len();
        let first_new = frontier[0];
        let mut tasks = Vec::new();
        for map in maps {
            match map {
                ClosureMap::Unary(f) => tasks.extend(frontier.iter().map(|&i| Task::Unary(f.as_ref(), i))),
                ClosureMap::Split(f) => tasks.extend(frontier.iter().map(|&i| Task::Split(f.as_ref(), i))),
                ClosureMap::Binary { map, symmetric } => {
                    for &i in &frontier {
                        for j in 0..known {
                            if *symmetric && j >= first_new && j < i {
                                continue;
                            }
                            tasks.push(Task::Binary(map.as_ref(), i, j));
                            if !symmetric && j < first_new {
                                tasks.push(Task::Binary(map.as_ref(), j, i));
                            }
                        }
                    }
                }
            }
        }
        let images: Vec<Vec<SparseVec>> = tasks
            .par_iter()
            .map(|t| match t {
                Task::Unary(f, i) => vec![f(&gens[*i])],
                Task::Split(f, i) => f(&gens[*i]),
                Task::Binary(f, i, j) => vec![f(&gens[*i], &gens[*j])],
            })
            .collect();
        let mut next = Vec::new();
        for v in images.into_iter().flatten() {
            if basis.insert(&v) {
                next.push(gens.len());
                gens.push(v);
            }
        }
        frontier = next;
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn closure_under_shift_and_square() {
        // coordinates model polynomials in x of degree < 6
        let shift = ClosureMap::unary(|v: &SparseVec| {
            SparseVec::from_pairs(v.iter().filter(|(i, _)| i + 1 < 6).map(|(i, c)| (i + 1, c.clone())))
        });
        let start = SubspaceBasis::spanned_by(6, &[SparseVec::unit(2)]);
        let closed = subspace_saturate(&start, &[shift]);
        assert_eq!(closed.dim(), 4);
    }

    #[test]
    fn non_symmetric_binary_sees_both_orders() {
        // f(x, y) = x_0 * y_1 placed on coordinate 2
        let f = ClosureMap::binary(|x: &SparseVec, y: &SparseVec| {
            SparseVec::from_pairs([(2, x.coeff(0) * y.coeff(1))])
        });
        let seeds = [SparseVec::unit(1), SparseVec::unit(0)];
        let closed = saturate_vectors(3, &seeds, &[f]);
        assert_eq!(closed.dim(), 3);
        assert!(closed.contains(&SparseVec::from_pairs([(2, int(1))])));
    }
}
