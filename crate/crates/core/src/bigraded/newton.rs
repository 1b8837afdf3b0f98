use num_traits::One;

use super::{BigradedClass, BigradedError, Presentation};
use crate::exact::{int, Rational};
use crate::exterior::{ExtClass, ExteriorError};

/// Minimal commutative algebra interface used by the Newton transforms.
pub trait ProductAlgebra {
    type Elem: Clone;
    type Error;

    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem, Self::Error>;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem, Self::Error>;
    fn scale(&self, x: &Self::Elem, c: &Rational) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
}

#[derive(Clone, Copy, Debug)]
pub struct ExteriorAlgebra(pub usize);

impl ProductAlgebra for ExteriorAlgebra {
    type Elem = ExtClass;
    type Error = ExteriorError;

    fn mul(&self, x: &ExtClass, y: &ExtClass) -> Result<ExtClass, ExteriorError> {
        x.wedge(y)
    }

    fn add(&self, x: &ExtClass, y: &ExtClass) -> Result<ExtClass, ExteriorError> {
        x.try_add(y)
    }

    fn scale(&self, x: &ExtClass, c: &Rational) -> ExtClass {
        x.scale(c)
    }

    fn zero(&self) -> ExtClass {
        ExtClass::zero(self.0)
    }
}

impl ProductAlgebra for Presentation {
    type Elem = BigradedClass;
    type Error = BigradedError;

    fn mul(&self, x: &BigradedClass, y: &BigradedClass) -> Result<BigradedClass, BigradedError> {
        Presentation::mult(self, x, y)
    }

    fn add(&self, x: &BigradedClass, y: &BigradedClass) -> Result<BigradedClass, BigradedError> {
        x.add(y)
    }

    fn scale(&self, x: &BigradedClass, c: &Rational) -> BigradedClass {
        x.scale(c)
    }

    fn zero(&self) -> BigradedClass {
        Presentation::zero(self)
    }
}

fn signed(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `N^k = Σ_{i=1}^{k-1} (-1)^{i-1} w^i N^{k-i} + (-1)^{k-1} k w^k` for the
/// sequence `w = [w^1, w^2, ...]`, returning `[N^1, ..., N^len]`.
pub fn newton_transform<A: ProductAlgebra>(alg: &A, w: &[A::Elem]) -> Result<Vec<A::Elem>, A::Error> {
    let mut n: Vec<A::Elem> = Vec::with_capacity(w.len());
    for k in 1..=w.len() {
        let mut acc = alg.scale(&w[k - 1], &(signed(k - 1) * int(k as i64)));
        for i in 1..k {
            let term = alg.mul(&w[i - 1], &n[k - i - 1])?;
            acc = alg.add(&acc, &alg.scale(&term, &signed(i - 1)))?;
        }
        n.push(acc);
    }
    Ok(n)
}

/// Inverse of [`newton_transform`].
pub fn newton_inverse<A: ProductAlgebra>(alg: &A, n: &[A::Elem]) -> Result<Vec<A::Elem>, A::Error> {
    let mut w: Vec<A::Elem> = Vec::with_capacity(n.len());
    for k in 1..=n.len() {
        let mut rest = alg.zero();
        for i in 1..k {
            let term = alg.mul(&w[i - 1], &n[k - i - 1])?;
            rest = alg.add(&rest, &alg.scale(&term, &signed(i - 1)))?;
        }
        let diff = alg.add(&n[k - 1], &alg.scale(&rest, &-Rational::one()))?;
        w.push(alg.scale(&diff, &(signed(k - 1) / int(k as i64))));
    }
    Ok(w)
}
