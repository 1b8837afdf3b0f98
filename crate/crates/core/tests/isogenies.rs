use num_traits::Signed;
use proptest::prelude::*;
use taut_core::exact::{int, QMatrix, Rational};
use taut_core::exterior::{fourier, pullback, pushforward, ExtClass};
use taut_core::lattice::PolarizedLattice;

/// Lattice maps of positive determinant; the determinant is the degree.
fn isogeny(g: usize, entries: &[i64]) -> Option<QMatrix> {
    let n = 2 * g;
    let m = QMatrix::from_fn(n, n, |i, j| int(entries[i * n + j]));
    m.determinant().is_positive().then_some(m)
}

fn class(g: usize, coeffs: &[i64]) -> ExtClass {
    let mut x = ExtClass::zero(g);
    for (mask, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            x.add_term(mask as u32, &int(c));
        }
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn fourier_intertwines_pushforward_and_rosati_pullback(
        g in 1usize..=3,
        entries in prop::collection::vec(-2i64..=2, 36),
        coeffs in prop::collection::vec(-3i64..=3, 64),
    ) {
        let n = 2 * g;
        let Some(alpha) = isogeny(g, &entries[..n * n]) else { return Ok(()); };
        let x = class(g, &coeffs[..1 << n]);
        let rosati = PolarizedLattice::standard(g).rosati(&alpha);
        let lhs = fourier(&pushforward(&alpha, &x).unwrap());
        let rhs = pullback(&rosati, &fourier(&x)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dual_isogeny_pushforward(
        g in 1usize..=3,
        entries in prop::collection::vec(-2i64..=2, 36),
        coeffs in prop::collection::vec(-3i64..=3, 64),
    ) {
        let n = 2 * g;
        let Some(alpha) = isogeny(g, &entries[..n * n]) else { return Ok(()); };
        let x = class(g, &coeffs[..1 << n]);
        let deg = alpha.determinant();
        let beta = alpha.inverse().unwrap().scale(&deg);
        let multiplication = QMatrix::scalar(n, &deg);
        let lhs = pushforward(&beta, &x).unwrap();
        let rhs = pushforward(&multiplication, &pullback(&alpha, &x).unwrap()).unwrap().scale(&(Rational::from_integer(1.into()) / &deg));
        prop_assert_eq!(lhs, rhs);
    }
}
