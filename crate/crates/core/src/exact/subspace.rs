use num_traits::Zero;

use super::{QMatrix, Rational, SparseVec};

/// Subspace of Q^n kept in reduced row echelon form.
///
/// Every stored row has a leading 1 at its pivot and vanishes at all other pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn new(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by<'a, I>(ambient_dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a SparseVec>,
    {
        let mut basis = Self::new(ambient_dim);
        for v in vectors {
            basis.insert(v);
        }
        basis
    }

    pub fn full(ambient_dim: usize) -> Self {
        let units: Vec<SparseVec> = (0..ambient_dim).map(SparseVec::unit).collect();
        Self::spanned_by(ambient_dim, &units)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = r.get(p).cloned() {
                r.add_scaled(row, &-c);
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        debug_assert!(v.max_index().is_none_or(|m| m < self.ambient_dim));
        let r = self.reduce(v);
        let Some((p, lead)) = r.leading() else {
            return false;
        };
        let r = r.scaled(&lead.recip());
        for row in &mut self.rows {
            if let Some(c) = row.get(p).cloned() {
                row.add_scaled(&r, &-c);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn join(&self, other: &SubspaceBasis) -> SubspaceBasis {
        let mut out = self.clone();
        for r in &other.rows {
            out.insert(r);
        }
        out
    }

    /// Rows as a dense `dim x ambient_dim` matrix.
    pub fn to_matrix(&self) -> QMatrix {
        let mut m = QMatrix::zeros(self.dim(), self.ambient_dim);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in row.iter() {
                m.set(i, j, c.clone());
            }
        }
        m
    }

    /// Image of the subspace under a linear map.
    pub fn image(&self, target_dim: usize, f: impl Fn(&SparseVec) -> SparseVec) -> SubspaceBasis {
        let images: Vec<SparseVec> = self.rows.iter().map(f).collect();
        SubspaceBasis::spanned_by(target_dim, &images)
    }

    /// Coordinates of `v` in terms of the stored rows, if `v` lies in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Rational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v.coeff(p)).collect())
    }
}

/// Dense RREF of a list of row vectors (zero rows dropped).
pub fn rref(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let Some(first) = rows.first() else {
        return Vec::new();
    };
    let cols = first.len();
    let m = QMatrix::from_rows(rows.to_vec()).expect("rectangular input");
    let (reduced, pivots) = m.rref_with_pivots();
    (0..pivots.len())
        .map(|i| (0..cols).map(|j| reduced.get(i, j).clone()).collect())
        .filter(|r: &Vec<Rational>| r.iter().any(|x| !x.is_zero()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use proptest::prelude::*;

    fn arb_vec(n: usize) -> impl Strategy<Value = SparseVec> {
        proptest::collection::vec(-3i64..=3, n)
            .prop_map(|v| SparseVec::from_pairs(v.into_iter().enumerate().map(|(i, c)| (i, int(c)))))
    }

    proptest! {
        #[test]
        fn incremental_matches_dense_rref(vs in proptest::collection::vec(arb_vec(5), 0..7)) {
            let basis = SubspaceBasis::spanned_by(5, &vs);
            let dense: Vec<Vec<Rational>> = vs.iter().map(|v| v.to_dense(5)).collect();
            let expected = rref(&dense);
            let got: Vec<Vec<Rational>> = basis.rows().iter().map(|r| r.to_dense(5)).collect();
            prop_assert_eq!(got, expected);
            for v in &vs {
                prop_assert!(basis.contains(v));
            }
        }

        #[test]
        fn insertion_order_is_irrelevant(vs in proptest::collection::vec(arb_vec(4), 0..6)) {
            let a = SubspaceBasis::spanned_by(4, &vs);
            let rev: Vec<SparseVec> = vs.iter().rev().cloned().collect();
            let b = SubspaceBasis::spanned_by(4, &rev);
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn coordinates_recover_combination() {
        let vs = vec![SparseVec::from_dense(&[int(1), int(2), int(0)]), SparseVec::from_dense(&[int(0), int(1), int(1)])];
        let b = SubspaceBasis::spanned_by(3, &vs);
        let target = SparseVec::from_dense(&[int(2), int(5), int(1)]);
        let coords = b.coordinates(&target).unwrap();
        let mut rebuilt = SparseVec::new();
        for (row, c) in b.rows().iter().zip(&coords) {
            rebuilt.add_scaled(row, c);
        }
        assert_eq!(rebuilt, target);
        assert!(b.coordinates(&SparseVec::unit(2)).is_none());
    }
}
