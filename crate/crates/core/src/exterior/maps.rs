use std::sync::OnceLock;

use num_traits::Zero;

use super::{full_mask, merge_sign, ExtClass, ExteriorError, MAX_GENUS};
use crate::exact::{QMatrix, Rational};

/// Pullback along a homomorphism whose action on H_1 is `matrix`
/// (shape `2 g_target x 2 g_source`).
///
/// Images of basis monomials are computed on demand and cached.
pub struct PullbackMap {
    matrix: QMatrix,
    source_genus: usize,
    target_genus: usize,
    images: Vec<ExtClass>,
    cache: Vec<OnceLock<ExtClass>>,
}

fn genus_of(dim: usize, matrix: &QMatrix) -> Result<usize, ExteriorError> {
    if !dim.is_multiple_of(2) || dim / 2 > MAX_GENUS {
        return Err(ExteriorError::Shape {
            rows: matrix.rows(),
            cols: matrix.cols(),
            expected_rows: matrix.rows() + matrix.rows() % 2,
            expected_cols: matrix.cols() + matrix.cols() % 2,
        });
    }
    Ok(dim / 2)
}

impl PullbackMap {
    pub fn new(matrix: &QMatrix) -> Result<Self, ExteriorError> {
        let target_genus = genus_of(matrix.rows(), matrix)?;
        let source_genus = genus_of(matrix.cols(), matrix)?;
        let images = (0..matrix.rows())
            .map(|j| {
                let mut x = ExtClass::zero(source_genus);
                for k in 0..matrix.cols() {
                    x.add_term(1 << k, matrix.get(j, k));
                }
                x
            })
            .collect();
        let cache = (0..ExtClass::ambient_dim(target_genus)).map(|_| OnceLock::new()).collect();
        Ok(Self {
            matrix: matrix.clone(),
            source_genus,
            target_genus,
            images,
            cache,
        })
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn source_genus(&self) -> usize {
        self.source_genus
    }

    pub fn target_genus(&self) -> usize {
        self.target_genus
    }

    /// Image of the target monomial `mask`; coefficients are minors of the matrix.
    pub fn monomial_image(&self, mask: u32) -> &ExtClass {
        self.cache[mask as usize].get_or_init(|| {
            if mask == 0 {
                return ExtClass::one(self.source_genus);
            }
            let low = mask.trailing_zeros() as usize;
            let rest = self.monomial_image(mask & (mask - 1));
            self.images[low].wedge(rest).expect("same ring")
        })
    }

    pub fn apply(&self, x: &ExtClass) -> Result<ExtClass, ExteriorError> {
        if x.genus() != self.target_genus {
            return Err(ExteriorError::RingMismatch {
                left: x.genus(),
                right: self.target_genus,
            });
        }
        let mut out = ExtClass::zero(self.source_genus);
        for (&m, c) in x.terms() {
            for (&t, d) in self.monomial_image(m).terms() {
                out.add_term(t, &(c * d));
            }
        }
        Ok(out)
    }

    /// Pushforward of a class on the source, via the Poincaré pairing.
    pub fn push(&self, x: &ExtClass) -> Result<ExtClass, ExteriorError> {
        if x.genus() != self.source_genus {
            return Err(ExteriorError::RingMismatch {
                left: x.genus(),
                right: self.source_genus,
            });
        }
        let full_s = full_mask(self.source_genus);
        let full_t = full_mask(self.target_genus);
        let degrees = x.degrees();
        let shift = 2 * self.source_genus as i64 - 2 * self.target_genus as i64;
        let mut out = ExtClass::zero(self.target_genus);
        for u in 0..=full_t {
            let wanted = u.count_ones() as i64 + shift;
            if !degrees.iter().any(|&d| d as i64 == wanted) {
                continue;
            }
            let v = full_t ^ u;
            let pulled = self.monomial_image(v);
            let mut total = Rational::zero();
            for (&s, c) in x.terms() {
                let complement = full_s ^ s;
                if let Some(d) = pulled.terms().get(&complement) {
                    let term = c * d;
                    if merge_sign(s, complement) > 0 {
                        total += term;
                    } else {
                        total -= term;
                    }
                }
            }
            if merge_sign(u, v) < 0 {
                total = -total;
            }
            out.add_term(u, &total);
        }
        Ok(out)
    }
}

pub fn pullback(matrix: &QMatrix, x: &ExtClass) -> Result<ExtClass, ExteriorError> {
    PullbackMap::new(matrix)?.apply(x)
}

pub fn pushforward(matrix: &QMatrix, x: &ExtClass) -> Result<ExtClass, ExteriorError> {
    PullbackMap::new(matrix)?.push(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, pow};
    use proptest::prelude::*;

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
        proptest::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
            QMatrix::from_fn(rows, cols, |i, j| int(v[i * cols + j]))
        })
    }

    fn arb_class(genus: usize) -> impl Strategy<Value = ExtClass> {
        let dim = ExtClass::ambient_dim(genus);
        proptest::collection::vec((0..dim as u32, -4i64..=4), 0..8).prop_map(move |terms| {
            let mut x = ExtClass::zero(genus);
            for (m, c) in terms {
                x.add_term(m, &int(c));
            }
            x
        })
    }

    /// Pushforward from the defining pairing, solved densely.
    fn dense_pushforward(matrix: &QMatrix, x: &ExtClass) -> ExtClass {
        let map = PullbackMap::new(matrix).unwrap();
        let gt = map.target_genus();
        let n = ExtClass::ambient_dim(gt);
        let pairing = QMatrix::from_fn(n, n, |v, u| {
            ExtClass::monomial(gt, u as u32, int(1))
                .wedge(&ExtClass::monomial(gt, v as u32, int(1)))
                .unwrap()
                .integrate()
        });
        let rhs: Vec<Rational> = (0..n)
            .map(|v| x.wedge(&map.apply(&ExtClass::monomial(gt, v as u32, int(1))).unwrap()).unwrap().integrate())
            .collect();
        let sol = pairing.solve(&rhs).unwrap();
        let mut out = ExtClass::zero(gt);
        for (u, c) in sol.iter().enumerate() {
            out.add_term(u as u32, c);
        }
        out
    }

    #[test]
    fn homotheties_scale_by_degree() {
        let g = 2;
        let k = int(3);
        let m = QMatrix::scalar(2 * g, &k);
        let x = &ExtClass::theta(g) + &ExtClass::a(g, 1);
        let pulled = pullback(&m, &x).unwrap();
        assert_eq!(pulled, &ExtClass::theta(g).scale(&int(9)) + &ExtClass::a(g, 1).scale(&int(3)));
        let pushed = pushforward(&m, &ExtClass::point(g)).unwrap();
        assert_eq!(pushed, ExtClass::point(g));
        let pushed_one = pushforward(&m, &ExtClass::one(g)).unwrap();
        assert_eq!(pushed_one, ExtClass::one(g).scale(&pow(&k, 4)));
    }

    #[test]
    fn pullback_is_multiplicative() {
        let m = QMatrix::from_i64(&[vec![1, 2, 0, 1], vec![0, 1, 1, 0], vec![3, 0, 1, 1], vec![0, 1, 0, 2]]);
        let x = ExtClass::theta(2);
        let y = &ExtClass::a(2, 2) + &ExtClass::b(2, 1);
        let lhs = pullback(&m, &x.wedge(&y).unwrap()).unwrap();
        let rhs = pullback(&m, &x).unwrap().wedge(&pullback(&m, &y).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    proptest! {
        #[test]
        fn pushforward_matches_dense_solve(m in arb_matrix(4, 4), x in arb_class(2)) {
            prop_assert_eq!(pushforward(&m, &x).unwrap(), dense_pushforward(&m, &x));
        }

        #[test]
        fn rectangular_pushforward_matches_dense_solve(m in arb_matrix(4, 2), x in arb_class(1)) {
            prop_assert_eq!(pushforward(&m, &x).unwrap(), dense_pushforward(&m, &x));
        }

        #[test]
        fn pullback_functoriality(a in arb_matrix(4, 4), b in arb_matrix(4, 4), x in arb_class(2)) {
            // (a b)^* = b^* a^*
            let lhs = pullback(&a.mul(&b), &x).unwrap();
            let rhs = pullback(&b, &pullback(&a, &x).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn projection_formula(m in arb_matrix(4, 4), x in arb_class(2), y in arb_class(2)) {
            let lhs = pushforward(&m, &x.wedge(&pullback(&m, &y).unwrap()).unwrap()).unwrap();
            let rhs = pushforward(&m, &x).unwrap().wedge(&y).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
