use super::{LatticeError, PolarizedLattice};
use crate::exact::QMatrix;
use crate::exterior::ExtClass;

/// Degree-2 class whose alternating form is `(x, y) ↦ E(Mx, y)`.
pub fn ns_class(lattice: &PolarizedLattice, m: &QMatrix) -> Result<ExtClass, LatticeError> {
    let n = lattice.rank();
    if m.rows() != n || m.cols() != n {
        return Err(LatticeError::Dimension(format!("endomorphism is {}x{}, lattice has rank {n}", m.rows(), m.cols())));
    }
    if lattice.rosati(m) != *m {
        return Err(LatticeError::NotRosatiSymmetric);
    }
    let omega = m.transpose().mul(&lattice.gram_q());
    let mut x = ExtClass::zero(lattice.genus());
    for j in 0..n {
        for k in j + 1..n {
            x.add_term((1u32 << j) | (1u32 << k), omega.get(j, k));
        }
    }
    Ok(x)
}

/// Inverse of [`ns_class`]: the symmetric endomorphism attached to a degree-2 class.
pub fn endomorphism_of_class(lattice: &PolarizedLattice, x: &ExtClass) -> Result<QMatrix, LatticeError> {
    let g = lattice.genus();
    if x.genus() != g || x.terms().keys().any(|m| m.count_ones() != 2) {
        return Err(LatticeError::NotDivisorClass(g));
    }
    let n = 2 * g;
    let mut omega = QMatrix::zeros(n, n);
    for (&mask, c) in x.terms() {
        let j = mask.trailing_zeros() as usize;
        let k = (mask & (mask - 1)).trailing_zeros() as usize;
        omega.set(j, k, c.clone());
        omega.set(k, j, -c.clone());
    }
    let e_inv = lattice.gram_q().inverse().expect("nondegenerate form");
    Ok(omega.mul(&e_inv).transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, QMatrix};
    use crate::exterior::pullback;
    use crate::lattice::{cyclic_shift, rotation, GroupAlgebraElt, MatrixGroup, SymplecticEndo};

    #[test]
    fn identity_gives_theta() {
        for g in 1..=4 {
            let lat = PolarizedLattice::standard(g);
            assert_eq!(ns_class(&lat, &QMatrix::identity(2 * g)).unwrap(), ExtClass::theta(g));
        }
    }

    #[test]
    fn dictionary_round_trip_and_pullback() {
        let lat = PolarizedLattice::standard(3);
        let sigma = SymplecticEndo::new(&lat, cyclic_shift(3), 3).unwrap();
        let group = MatrixGroup::cyclic(&sigma);
        let pi = GroupAlgebraElt::from_pairs([(0, 2.into()), (1, 1.into()), (2, 1.into())]);
        let m = pi.realize_q(&group);
        let class = ns_class(&lat, &m).unwrap();
        assert_eq!(endomorphism_of_class(&lat, &class).unwrap(), m);
        // π^*θ corresponds to R(π)π, which is π^2 for symmetric π
        assert_eq!(pullback(&m, &ExtClass::theta(3)).unwrap(), ns_class(&lat, &m.mul(&m)).unwrap());
    }

    #[test]
    fn gamma_relation() {
        // (σ^i + σ^{-i})^*θ = Γ_{2i} + 2θ
        let lat = PolarizedLattice::standard(2);
        let block = rotation(6).unwrap();
        let sigma_m = crate::exact::IntMatrix::block_diag(&[block.clone(), block]);
        let sigma = SymplecticEndo::new(&lat, sigma_m, 6).unwrap();
        let group = MatrixGroup::cyclic(&sigma);
        for i in 1..6 {
            let sym = |k: usize| {
                GroupAlgebraElt::element(k % 6).add(&GroupAlgebraElt::element((6 - k % 6) % 6)).realize_q(&group)
            };
            let gamma = pullback(&sym(i), &ExtClass::theta(2)).unwrap();
            let big_gamma = ns_class(&lat, &sym(2 * i)).unwrap();
            assert_eq!(gamma, &big_gamma + &ExtClass::theta(2).scale(&int(2)));
        }
    }

    #[test]
    fn rejects_non_symmetric() {
        let lat = PolarizedLattice::standard(1);
        let m = rotation(4).unwrap().to_q();
        assert_eq!(ns_class(&lat, &m), Err(LatticeError::NotRosatiSymmetric));
    }
}
