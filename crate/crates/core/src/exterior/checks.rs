use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{fourier, pontryagin, ExtClass};
use crate::exact::{factorial, int, sign_power, Rational};
use crate::report::Check;

/// Class with up to `terms` random monomials and small integer coefficients.
pub fn random_class<R: Rng>(genus: usize, rng: &mut R, terms: usize) -> ExtClass {
    let mut x = ExtClass::zero(genus);
    for _ in 0..terms {
        let mask = rng.gen_range(0..1u32 << (2 * genus));
        x.add_term(mask, &int(rng.gen_range(-5..=5)));
    }
    x
}

fn star(x: &ExtClass, y: &ExtClass) -> ExtClass {
    pontryagin(x, y).expect("same ring")
}

/// Operator identities of the exterior model, exact, on the full basis and on
/// `random_pairs` random pairs drawn from `seed`.
pub fn identity_checks(genus: usize, random_pairs: usize, seed: u64) -> Vec<Check> {
    let g = genus;
    let mut checks = Vec::new();
    let sign_g = sign_power(g as i64);
    let inversion = (0..1u32 << (2 * g)).all(|m| {
        let e = ExtClass::monomial(g, m, int(1));
        fourier(&fourier(&e)) == e.minus_star().scale(&sign_g)
    });
    checks.push(Check::new("F F = (-1)^g (-1)^*", inversion));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(ExtClass, ExtClass)> = (0..random_pairs)
        .map(|_| (random_class(g, &mut rng, 3), random_class(g, &mut rng, 3)))
        .collect();
    let star_exchange = pairs.iter().all(|(x, y)| fourier(&star(x, y)) == fourier(x).wedge(&fourier(y)).expect("same ring"));
    checks.push(Check::new("F(x * y) = F(x) F(y)", star_exchange).with_detail(format!("{random_pairs} random pairs")));
    let wedge_exchange = pairs
        .iter()
        .all(|(x, y)| fourier(&x.wedge(y).expect("same ring")) == star(&fourier(x), &fourier(y)).scale(&sign_g));
    checks.push(Check::new("F(x y) = (-1)^g F(x) * F(y)", wedge_exchange).with_detail(format!("{random_pairs} random pairs")));
    let even = |x: &ExtClass| {
        let mut out = ExtClass::zero(g);
        for (m, c) in x.terms() {
            if m.count_ones() % 2 == 0 {
                out.add_term(*m, c);
            }
        }
        out
    };
    let commutes = pairs.iter().all(|(x, y)| star(&even(x), &even(y)) == star(&even(y), &even(x)));
    checks.push(Check::new("Pontryagin product commutative on even classes", commutes));
    let associative = pairs.windows(2).all(|w| {
        let (x, y) = &w[0];
        let z = &w[1].0;
        star(&star(x, y), z) == star(x, &star(y, z))
    });
    checks.push(Check::new("Pontryagin product associative", associative));
    let point = ExtClass::point(g);
    checks.push(Check::new(
        "[pt] is the Pontryagin unit",
        pairs.iter().all(|(x, _)| star(&point, x) == *x),
    ));

    let theta = ExtClass::theta(g);
    checks.push(Check::new("F(e^theta) = e^(-theta)", fourier(&theta.exp()) == theta.scale(&int(-1)).exp()));
    let components = (0..=g as u32).all(|p| {
        let q = g as u32 - p;
        let lhs = fourier(&theta.power(p).scale(&Rational::new(1.into(), factorial(p))));
        let rhs = theta.power(q).scale(&(sign_power(i64::from(q)) / Rational::from_integer(factorial(q))));
        lhs == rhs
    });
    checks.push(Check::new("F(theta^p/p!) = (-1)^(g-p) theta^(g-p)/(g-p)!", components));
    let curve = ExtClass::curve(g);
    let mut power = ExtClass::point(g);
    let mut curve_powers = true;
    for k in 0..=g as u32 {
        let i = g as u32 - k;
        let lhs = power.scale(&Rational::new(1.into(), factorial(k)));
        let rhs = theta.power(i).scale(&Rational::new(1.into(), factorial(i)));
        curve_powers &= lhs == rhs;
        power = star(&power, &curve);
    }
    checks.push(Check::new("C^{*(g-i)}/(g-i)! = theta^i/i!", curve_powers));
    checks
}
