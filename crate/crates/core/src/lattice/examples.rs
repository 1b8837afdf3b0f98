use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::{cyclic_shift, random_symplectic, rotation, LatticeError, PolarizedLattice, SymplecticEndo};
use crate::exact::IntMatrix;

/// Building block of a block-diagonal automorphism of the standard lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    /// Cyclic permutation of `k` symplectic planes (`shiftK`).
    Shift(usize),
    /// Order-`n` rotation of one plane (`rotN`, with `id` and `minus` for 1 and 2).
    Rotation(u32),
}

impl Block {
    pub fn genus(self) -> usize {
        match self {
            Block::Shift(k) => k,
            Block::Rotation(_) => 1,
        }
    }

    pub fn matrix(self) -> IntMatrix {
        match self {
            Block::Shift(k) => cyclic_shift(k),
            Block::Rotation(n) => rotation(n).expect("validated order"),
        }
    }
}

impl FromStr for Block {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LatticeError::Dimension(format!("unknown block '{s}' (expected shiftK, rotN, id or minus)"));
        match s {
            "id" => Ok(Block::Rotation(1)),
            "minus" => Ok(Block::Rotation(2)),
            _ => {
                if let Some(k) = s.strip_prefix("shift") {
                    let k: usize = k.parse().map_err(|_| bad())?;
                    if k == 0 {
                        return Err(bad());
                    }
                    Ok(Block::Shift(k))
                } else if let Some(n) = s.strip_prefix("rot") {
                    let n: u32 = n.parse().map_err(|_| bad())?;
                    rotation(n).ok_or_else(bad)?;
                    Ok(Block::Rotation(n))
                } else {
                    Err(bad())
                }
            }
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Shift(k) => write!(f, "shift{k}"),
            Block::Rotation(1) => write!(f, "id"),
            Block::Rotation(2) => write!(f, "minus"),
            Block::Rotation(n) => write!(f, "rot{n}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CoverExample {
    pub name: String,
    pub lattice: PolarizedLattice,
    pub sigma: SymplecticEndo,
}

/// Block-diagonal automorphism of the standard principally polarized lattice.
pub fn block_example(blocks: &[Block]) -> Result<CoverExample, LatticeError> {
    let genus = blocks.iter().map(|b| b.genus()).sum();
    let lattice = PolarizedLattice::standard(genus);
    let matrix = IntMatrix::block_diag(&blocks.iter().map(|b| b.matrix()).collect::<Vec<_>>());
    let sigma = SymplecticEndo::find_order(&lattice, matrix, 60)?;
    let name = blocks.iter().map(Block::to_string).collect::<Vec<_>>().join("+");
    Ok(CoverExample { name, lattice, sigma })
}

/// Conjugates σ by `τ` from `random_symplectic`, which keeps the cover type
/// but hides the block structure.
pub fn conjugated<R: Rng>(example: &CoverExample, rng: &mut R, steps: usize) -> CoverExample {
    let tau = random_symplectic(&example.lattice, rng, steps);
    let tau_inv = tau.to_q().inverse().expect("unimodular").to_int().expect("integral inverse");
    let matrix = tau.mul(example.sigma.matrix()).mul(&tau_inv);
    let sigma = SymplecticEndo::new(&example.lattice, matrix, example.sigma.order()).expect("conjugate keeps order");
    CoverExample {
        name: format!("{} (conjugated)", example.name),
        lattice: example.lattice.clone(),
        sigma,
    }
}

const COVER_SUITE: &[&[Block]] = &[
    &[Block::Shift(2)],
    &[Block::Shift(2), Block::Rotation(2)],
    &[Block::Shift(2), Block::Shift(2)],
    &[Block::Shift(2), Block::Rotation(2), Block::Rotation(2)],
    &[Block::Shift(3)],
    &[Block::Shift(3), Block::Rotation(3)],
    &[Block::Shift(4)],
    &[Block::Rotation(1), Block::Rotation(1)],
];

const FIXED_POINT_FREE_SUITE: &[&[Block]] = &[
    &[Block::Rotation(2), Block::Rotation(2)],
    &[Block::Rotation(3)],
    &[Block::Rotation(4)],
    &[Block::Rotation(6)],
    &[Block::Rotation(6), Block::Rotation(3)],
    &[Block::Rotation(4), Block::Rotation(2)],
    &[Block::Rotation(3), Block::Rotation(2)],
    &[Block::Rotation(6), Block::Rotation(2)],
];

/// Automorphisms of genus ≤ 4 whose quotient has positive genus and whose
/// induced form on `Y` is `n` times a principal one.
pub fn cover_suite() -> Vec<CoverExample> {
    COVER_SUITE.iter().map(|b| block_example(b).expect("valid block")).collect()
}

/// Automorphisms with no nonzero fixed vectors, of orders 2, 3, 4 and 6.
pub fn fixed_point_free_suite() -> Vec<CoverExample> {
    FIXED_POINT_FREE_SUITE.iter().map(|b| block_example(b).expect("valid block")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::fixed_part_decomposition;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parse_and_print_blocks() {
        for s in ["shift3", "rot6", "id", "minus"] {
            assert_eq!(s.parse::<Block>().unwrap().to_string(), s);
        }
        assert_eq!("rot2".parse::<Block>().unwrap(), Block::Rotation(2));
        for s in ["rot5", "shift0", "spin", "shift"] {
            assert!(s.parse::<Block>().is_err());
        }
    }

    #[test]
    fn suites_decompose() {
        for ex in cover_suite() {
            let cov = fixed_part_decomposition(&ex.lattice, &ex.sigma).unwrap();
            assert!(!cov.y.is_trivial(), "{}", ex.name);
        }
        for ex in fixed_point_free_suite() {
            let cov = fixed_part_decomposition(&ex.lattice, &ex.sigma).unwrap();
            assert!(cov.y.is_trivial(), "{}", ex.name);
        }
        let ex = block_example(&[Block::Shift(3), Block::Rotation(3)]).unwrap();
        assert_eq!(ex.sigma.order(), 3);
        assert_eq!(ex.lattice.genus(), 4);
    }

    #[test]
    fn conjugation_keeps_exponents() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ex = block_example(&[Block::Shift(2), Block::Rotation(2)]).unwrap();
        let base = fixed_part_decomposition(&ex.lattice, &ex.sigma).unwrap();
        let conj = conjugated(&ex, &mut rng, 6);
        let cov = fixed_part_decomposition(&conj.lattice, &conj.sigma).unwrap();
        assert_eq!(cov.y.exponent, base.y.exponent);
        assert_eq!(cov.z.divisors, base.z.divisors);
    }
}
