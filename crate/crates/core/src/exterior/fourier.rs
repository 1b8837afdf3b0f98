use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use super::{full_mask, merge_sign, signed, ExtClass, ExteriorError};
use crate::exact::Rational;

/// Element of Λ ⊗ Λ, the cohomology of the self-product. Terms are keyed by
/// `(left mask, right mask)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductClass {
    genus: usize,
    terms: BTreeMap<(u32, u32), Rational>,
}

impl ProductClass {
    pub fn zero(genus: usize) -> Self {
        Self {
            genus,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(genus: usize) -> Self {
        Self::tensor(&ExtClass::one(genus), &ExtClass::one(genus))
    }

    /// `x ⊗ y`, i.e. `p_1^* x · p_2^* y`.
    pub fn tensor(x: &ExtClass, y: &ExtClass) -> Self {
        let mut out = Self::zero(x.genus());
        for (&s, c) in x.terms() {
            for (&t, d) in y.terms() {
                out.add_term(s, t, &(c * d));
            }
        }
        out
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Rational> {
        &self.terms
    }

    pub fn add_term(&mut self, left: u32, right: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((left, right)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(left, right));
        }
    }

    pub fn add(&self, other: &ProductClass) -> ProductClass {
        let mut out = self.clone();
        for (&(s, t), c) in &other.terms {
            out.add_term(s, t, c);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> ProductClass {
        let mut out = ProductClass::zero(self.genus);
        for (&(s, t), x) in &self.terms {
            out.add_term(s, t, &(x * c));
        }
        out
    }

    /// Product with the Koszul sign `(x ⊗ y)(x' ⊗ y') = (-1)^{|y||x'|} xx' ⊗ yy'`.
    pub fn mul(&self, other: &ProductClass) -> ProductClass {
        let mut out = ProductClass::zero(self.genus);
        for (&(x, y), c) in &self.terms {
            for (&(x2, y2), d) in &other.terms {
                let s1 = merge_sign(x, x2);
                let s2 = merge_sign(y, y2);
                if s1 == 0 || s2 == 0 {
                    continue;
                }
                let koszul = if (y.count_ones() * x2.count_ones()) % 2 == 0 { 1 } else { -1 };
                out.add_term(x | x2, y | y2, &signed(s1 * s2 * koszul, &(c * d)));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn exp(&self) -> ProductClass {
        let mut total = ProductClass::one(self.genus);
        let mut term = ProductClass::one(self.genus);
        for k in 1..=(4 * self.genus + 1) {
            term = term.mul(self).scale(&Rational::from_integer(k.into()).recip());
            if term.is_zero() {
                break;
            }
            total = total.add(&term);
        }
        total
    }

    /// Integral over the product.
    pub fn integrate(&self) -> Rational {
        let full = full_mask(self.genus);
        self.terms.get(&(full, full)).cloned().unwrap_or_else(Rational::zero)
    }

    /// The Poincaré class `l = Σ (a_i ⊗ b_i - b_i ⊗ a_i)`.
    pub fn poincare(genus: usize) -> ProductClass {
        let mut l = ProductClass::zero(genus);
        for i in 0..genus {
            let (a, b) = (1u32 << (2 * i), 1u32 << (2 * i + 1));
            l.add_term(a, b, &Rational::one());
            l.add_term(b, a, &-Rational::one());
        }
        l
    }
}

/// `e^l`, stored by its left factor: every left monomial occurs in exactly one term.
#[derive(Debug)]
pub struct FourierKernel {
    genus: usize,
    by_left: Vec<Option<(u32, Rational)>>,
}

impl FourierKernel {
    fn build(genus: usize) -> Self {
        let kernel = ProductClass::poincare(genus).exp();
        let mut by_left = vec![None; ExtClass::ambient_dim(genus)];
        for (&(u, v), c) in kernel.terms() {
            debug_assert!(by_left[u as usize].is_none());
            by_left[u as usize] = Some((v, c.clone()));
        }
        Self { genus, by_left }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn term(&self, left: u32) -> Option<&(u32, Rational)> {
        self.by_left[left as usize].as_ref()
    }

    pub fn as_product_class(&self) -> ProductClass {
        let mut p = ProductClass::zero(self.genus);
        for (u, entry) in self.by_left.iter().enumerate() {
            if let Some((v, c)) = entry {
                p.add_term(u as u32, *v, c);
            }
        }
        p
    }

    /// `F(e_S)` is a single signed monomial.
    pub fn transform_monomial(&self, s: u32) -> Option<(u32, Rational)> {
        let complement = full_mask(self.genus) ^ s;
        let (v, c) = self.term(complement)?;
        Some((*v, signed(merge_sign(s, complement), c)))
    }
}

pub fn fourier_kernel(genus: usize) -> Arc<FourierKernel> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<FourierKernel>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(k) = cache.lock().expect("kernel cache").get(&genus) {
        return Arc::clone(k);
    }
    let built = Arc::new(FourierKernel::build(genus));
    let mut guard = cache.lock().expect("kernel cache");
    Arc::clone(guard.entry(genus).or_insert(built))
}

/// Fourier transform `F(x) = p_{2*}(p_1^* x · e^l)`.
pub fn fourier(x: &ExtClass) -> ExtClass {
    let kernel = fourier_kernel(x.genus());
    let mut out = ExtClass::zero(x.genus());
    for (&s, c) in x.terms() {
        if let Some((v, d)) = kernel.transform_monomial(s) {
            out.add_term(v, &(c * &d));
        }
    }
    out
}

/// Pontryagin product `m_*(x ⊗ y)`; the unit is the point class.
pub fn pontryagin(x: &ExtClass, y: &ExtClass) -> Result<ExtClass, ExteriorError> {
    if x.genus() != y.genus() {
        return Err(ExteriorError::RingMismatch {
            left: x.genus(),
            right: y.genus(),
        });
    }
    let full = full_mask(x.genus());
    let mut out = ExtClass::zero(x.genus());
    for (&s1, c) in x.terms() {
        let a = full ^ s1;
        for (&s2, d) in y.terms() {
            let b = full ^ s2;
            if a & b != 0 {
                continue;
            }
            let u = full ^ (a | b);
            let parity = if (s2.count_ones() * a.count_ones()).is_multiple_of(2) { 1 } else { -1 };
            let sign = merge_sign(u, a | b) * merge_sign(a, b) * parity * merge_sign(s1, a) * merge_sign(s2, b);
            out.add_term(u, &signed(sign, &(c * d)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, sign_power};
    use crate::exterior::{pullback, pushforward};
    use crate::exact::QMatrix;
    use proptest::prelude::*;

    fn arb_class(genus: usize) -> impl Strategy<Value = ExtClass> {
        let dim = ExtClass::ambient_dim(genus);
        proptest::collection::vec((0..dim as u32, -4i64..=4), 0..6).prop_map(move |terms| {
            let mut x = ExtClass::zero(genus);
            for (m, c) in terms {
                x.add_term(m, &int(c));
            }
            x
        })
    }

    /// Pontryagin product from the pairing against the addition map.
    fn slow_pontryagin(x: &ExtClass, y: &ExtClass) -> ExtClass {
        let g = x.genus();
        let full = full_mask(g);
        let xy = ProductClass::tensor(x, y);
        let mut out = ExtClass::zero(g);
        for u in 0..=full {
            let v = full ^ u;
            let mut m_star = ProductClass::one(g);
            let mut rest = v;
            while rest != 0 {
                let j = rest.trailing_zeros();
                let mut gen = ProductClass::zero(g);
                gen.add_term(1 << j, 0, &int(1));
                gen.add_term(0, 1 << j, &int(1));
                m_star = m_star.mul(&gen);
                rest &= rest - 1;
            }
            let value = xy.mul(&m_star).integrate();
            out.add_term(u, &signed(merge_sign(u, v), &value));
        }
        out
    }

    #[test]
    fn genus_one_values() {
        let g = 1;
        let kernel = fourier_kernel(g).as_product_class();
        let mut expected = ProductClass::one(g);
        expected.add_term(0b01, 0b10, &int(1));
        expected.add_term(0b10, 0b01, &int(-1));
        expected.add_term(0b11, 0b11, &int(-1));
        assert_eq!(kernel, expected);
        assert_eq!(fourier(&ExtClass::one(g)), -&ExtClass::theta(g));
        assert_eq!(fourier(&ExtClass::theta(g)), ExtClass::one(g));
        assert_eq!(fourier(&ExtClass::a(g, 1)), -&ExtClass::a(g, 1));
    }

    #[test]
    fn point_is_pontryagin_unit() {
        for g in 1..=3 {
            let x = &ExtClass::theta(g) + &ExtClass::a(g, 1);
            assert_eq!(pontryagin(&x, &ExtClass::point(g)).unwrap(), x);
            assert_eq!(pontryagin(&ExtClass::point(g), &x).unwrap(), x);
        }
    }

    #[test]
    fn curve_powers_give_theta_powers() {
        // C^{*k} = k! θ^{g-k} / (g-k)!
        for g in 1..=4u32 {
            let c = ExtClass::curve(g as usize);
            let mut power = ExtClass::point(g as usize);
            for k in 0..=g {
                let expected = ExtClass::theta(g as usize).power(g - k).scale(&Rational::new(
                    crate::exact::factorial(k),
                    crate::exact::factorial(g - k),
                ));
                assert_eq!(power, expected, "g={g} k={k}");
                power = pontryagin(&power, &c).unwrap();
            }
        }
    }

    #[test]
    fn fourier_of_theta_powers() {
        // F(θ^p / p!) = (-1)^{g-p} θ^{g-p} / (g-p)!
        for g in 1..=4u32 {
            let theta = ExtClass::theta(g as usize);
            for p in 0..=g {
                let x = theta.power(p).scale(&Rational::new(1.into(), crate::exact::factorial(p)));
                let expected = theta
                    .power(g - p)
                    .scale(&Rational::new(1.into(), crate::exact::factorial(g - p)))
                    .scale(&sign_power((g - p) as i64));
                assert_eq!(fourier(&x), expected);
            }
            assert_eq!(fourier(&theta.exp()), theta.scale(&int(-1)).exp());
        }
    }

    proptest! {
        #[test]
        fn pontryagin_matches_slow_oracle(x in arb_class(2), y in arb_class(2)) {
            prop_assert_eq!(pontryagin(&x, &y).unwrap(), slow_pontryagin(&x, &y));
        }

        #[test]
        fn pontryagin_matches_slow_oracle_g1(x in arb_class(1), y in arb_class(1)) {
            prop_assert_eq!(pontryagin(&x, &y).unwrap(), slow_pontryagin(&x, &y));
        }

        #[test]
        fn fourier_inversion(x in arb_class(3)) {
            let g = 3;
            let twice = fourier(&fourier(&x));
            let minus = pullback(&QMatrix::scalar(2 * g, &int(-1)), &x).unwrap();
            prop_assert_eq!(twice, minus.scale(&sign_power(g as i64)));
        }

        #[test]
        fn exchange_identities(x in arb_class(2), y in arb_class(2)) {
            let g = 2;
            let lhs = fourier(&pontryagin(&x, &y).unwrap());
            prop_assert_eq!(lhs, fourier(&x).wedge(&fourier(&y)).unwrap());
            let lhs2 = fourier(&x.wedge(&y).unwrap());
            let rhs2 = pontryagin(&fourier(&x), &fourier(&y)).unwrap().scale(&sign_power(g));
            prop_assert_eq!(lhs2, rhs2);
        }

        #[test]
        fn pontryagin_commutes_with_pushforward(x in arb_class(2), y in arb_class(2), k in 2i64..4) {
            // homomorphisms respect the group law
            let m = QMatrix::scalar(4, &int(k));
            let lhs = pushforward(&m, &pontryagin(&x, &y).unwrap()).unwrap();
            let rhs = pontryagin(&pushforward(&m, &x).unwrap(), &pushforward(&m, &y).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
