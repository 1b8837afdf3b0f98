use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;

use super::{LatticeError, PolarizedLattice};
use crate::exact::IntMatrix;

/// Order-`n` element of SL_2(Z) = Sp_2(Z) for `n ∈ {1, 2, 3, 4, 6}`.
pub fn rotation(order: u32) -> Option<IntMatrix> {
    let rows: [[i64; 2]; 2] = match order {
        1 => [[1, 0], [0, 1]],
        2 => [[-1, 0], [0, -1]],
        3 => [[0, -1], [1, -1]],
        4 => [[0, -1], [1, 0]],
        6 => [[1, -1], [1, 0]],
        _ => return None,
    };
    Some(IntMatrix::from_i64(&[rows[0].to_vec(), rows[1].to_vec()]))
}

/// Cyclic permutation of `copies` orthogonal symplectic planes.
pub fn cyclic_shift(copies: usize) -> IntMatrix {
    let n = 2 * copies;
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..copies {
        let j = (i + 1) % copies;
        m.set(2 * j, 2 * i, BigInt::one());
        m.set(2 * j + 1, 2 * i + 1, BigInt::one());
    }
    m
}

/// Symplectic transvection `x ↦ x + c E(x, v) v`.
pub fn transvection(lattice: &PolarizedLattice, v: &[BigInt], c: &BigInt) -> Result<IntMatrix, LatticeError> {
    let n = lattice.rank();
    if v.len() != n {
        return Err(LatticeError::Dimension(format!("vector of length {} in rank {n}", v.len())));
    }
    let e = lattice.gram();
    let ev: Vec<BigInt> = (0..n)
        .map(|i| (0..n).map(|k| e.get(i, k) * &v[k]).sum())
        .collect();
    let mut t = IntMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let add = c * &v[i] * &ev[j];
            let value = t.get(i, j) + add;
            t.set(i, j, value);
        }
    }
    Ok(t)
}

/// Product of `steps` random transvections with small entries.
pub fn random_symplectic<R: Rng>(lattice: &PolarizedLattice, rng: &mut R, steps: usize) -> IntMatrix {
    let n = lattice.rank();
    let mut m = IntMatrix::identity(n);
    for _ in 0..steps {
        let v: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-1i64..=1))).collect();
        let c = BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 });
        let t = transvection(lattice, &v, &c).expect("matching rank");
        m = m.mul(&t);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rotations_have_exact_order() {
        let lat = PolarizedLattice::standard(1);
        for n in [1, 2, 3, 4, 6] {
            let r = rotation(n).unwrap();
            assert!(super::super::SymplecticEndo::new(&lat, r, n).is_ok(), "order {n}");
        }
        assert!(rotation(5).is_none());
    }

    #[test]
    fn shift_and_transvections_are_symplectic() {
        let lat = PolarizedLattice::standard(3);
        assert!(lat.is_symplectic(&cyclic_shift(3)));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            assert!(lat.is_symplectic(&random_symplectic(&lat, &mut rng, 4)));
        }
    }
}
