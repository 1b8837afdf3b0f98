//! Reference implementations used by the acceptance run. Everything here is
//! written from the definitions, without calling the algorithms under test.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use taut_core::exact::{IntMatrix, QMatrix, Rational};
use taut_core::exterior::ExtClass;

/// Element of the exterior algebra on `n` generators, keyed by bit mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub n: usize,
    pub terms: BTreeMap<u64, Rational>,
}

fn indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Sign of sorting the concatenation of the index lists of `s` and `t`.
fn concat_sign(s: u64, t: u64) -> Option<bool> {
    if s & t != 0 {
        return None;
    }
    let left = indices(s);
    let right = indices(t);
    let swaps = left.iter().map(|i| right.iter().filter(|j| *j < i).count()).sum::<usize>();
    Some(swaps % 2 == 0)
}

impl Form {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, 0, Rational::one())
    }

    pub fn monomial(n: usize, mask: u64, c: Rational) -> Self {
        let mut f = Self::zero(n);
        f.add(mask, &c);
        f
    }

    pub fn linear(n: usize, coeffs: &[Rational]) -> Self {
        let mut f = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            f.add(1 << i, c);
        }
        f
    }

    pub fn add(&mut self, mask: u64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mask).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn plus(&self, other: &Form) -> Form {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add(*m, c);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Form {
        let mut out = Form::zero(self.n);
        for (m, x) in &self.terms {
            out.add(*m, &(x * c));
        }
        out
    }

    pub fn wedge(&self, other: &Form) -> Form {
        let mut out = Form::zero(self.n);
        for (s, c) in &self.terms {
            for (t, d) in &other.terms {
                match concat_sign(*s, *t) {
                    Some(true) => out.add(s | t, &(c * d)),
                    Some(false) => out.add(s | t, &-(c * d)),
                    None => {}
                }
            }
        }
        out
    }

    pub fn power(&self, k: u32) -> Form {
        (0..k).fold(Form::one(self.n), |acc, _| acc.wedge(self))
    }

    pub fn exp(&self) -> Form {
        let mut total = Form::one(self.n);
        let mut term = Form::one(self.n);
        for k in 1..=self.n as i64 {
            term = term.wedge(self).scale(&Rational::new(BigInt::one(), BigInt::from(k)));
            total = total.plus(&term);
        }
        total
    }

    pub fn minus_star(&self) -> Form {
        let mut out = Form::zero(self.n);
        for (m, c) in &self.terms {
            let c = if m.count_ones() % 2 == 0 { c.clone() } else { -c.clone() };
            out.add(*m, &c);
        }
        out
    }

    pub fn is_symmetric_under_minus(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() % 2 == 0)
    }

    pub fn integral(&self) -> Rational {
        let full = (1u64 << self.n) - 1;
        self.terms.get(&full).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn from_class(x: &ExtClass) -> Form {
        let mut f = Form::zero(2 * x.genus());
        for (m, c) in x.terms() {
            f.add(u64::from(*m), c);
        }
        f
    }

    pub fn matches(&self, x: &ExtClass) -> bool {
        *self == Form::from_class(x)
    }

    pub fn dense(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); 1 << self.n];
        for (m, c) in &self.terms {
            v[*m as usize] = c.clone();
        }
        v
    }
}

pub fn factorial(k: u32) -> Rational {
    Rational::from_integer((1..=k).map(BigInt::from).product())
}

/// `Σ_{i<j} E_ij e_i e_j` for an alternating Gram matrix.
pub fn theta_of(gram: &IntMatrix) -> Form {
    let n = gram.rows();
    let mut f = Form::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            f.add((1 << i) | (1 << j), &Rational::from_integer(gram.get(i, j).clone()));
        }
    }
    f
}

pub fn standard_theta(genus: usize) -> Form {
    let mut f = Form::zero(2 * genus);
    for i in 0..genus {
        f.add(0b11 << (2 * i), &Rational::one());
    }
    f
}

/// `θ^{g-1}/(g-1)!` for a principal form.
pub fn curve_of(theta: &Form) -> Form {
    let g = theta.n as u32 / 2;
    theta.power(g - 1).scale(&factorial(g - 1).recip())
}

/// Pullback along a map with H_1 matrix `m` (rows: target basis, cols: source basis).
pub fn pullback(m: &QMatrix, x: &Form) -> Form {
    assert_eq!(x.n, m.rows());
    let images: Vec<Form> = (0..m.rows()).map(|j| Form::linear(m.cols(), m.row(j))).collect();
    let mut out = Form::zero(m.cols());
    for (mask, c) in &x.terms {
        let mut img = Form::one(m.cols());
        for j in indices(*mask) {
            img = img.wedge(&images[j]);
        }
        out = out.plus(&img.scale(c));
    }
    out
}

/// Gysin map, defined by `∫ f_*x ∧ z = ∫ x ∧ f^*z` for every target monomial `z`.
pub fn pushforward(m: &QMatrix, x: &Form) -> Form {
    assert_eq!(x.n, m.cols());
    let n = m.rows();
    let full = (1u64 << n) - 1;
    let mut out = Form::zero(n);
    for u in 0..=full {
        let paired = x.wedge(&pullback(m, &Form::monomial(n, u, Rational::one()))).integral();
        if paired.is_zero() {
            continue;
        }
        let t = full ^ u;
        let sign = Form::monomial(n, t, Rational::one()).wedge(&Form::monomial(n, u, Rational::one())).integral();
        out.add(t, &(paired / sign));
    }
    out
}

/// Pushforward along an isogeny as `deg f · (f^*)^{-1}`.
pub fn isogeny_push(m: &QMatrix, x: &Form) -> Form {
    let inv = m.inverse().expect("isogeny");
    pullback(&inv, x).scale(&m.determinant())
}

fn embed(x: &Form, offset: usize, n: usize) -> Form {
    let mut out = Form::zero(n);
    for (m, c) in &x.terms {
        out.add(m << offset, c);
    }
    out
}

/// Keeps the terms whose left half is full and returns their right halves.
fn integrate_left(z: &Form, half: usize) -> Form {
    let left = (1u64 << half) - 1;
    let mut out = Form::zero(half);
    for (m, c) in &z.terms {
        if m & left == left {
            out.add(m >> half, c);
        }
    }
    out
}

/// `F(x) = p_{2*}(p_1^* x · e^l)` with `l = Σ (a_i ⊗ b_i - b_i ⊗ a_i)`.
pub fn fourier(x: &Form) -> Form {
    let h = x.n;
    let mut l = Form::zero(2 * h);
    for i in 0..h / 2 {
        let (a, b) = (2 * i, 2 * i + 1);
        l.add((1 << a) | (1 << (h + b)), &Rational::one());
        l.add((1 << b) | (1 << (h + a)), &-Rational::one());
    }
    integrate_left(&embed(x, 0, 2 * h).wedge(&l.exp()), h)
}

/// `x * y = m_*(x ⊗ y)`, computed as `p_{2*}(x(u) ∧ y(v - u))` via the shear `(u, v) ↦ (u, v - u)`.
pub fn pontryagin(x: &Form, y: &Form) -> Form {
    let h = x.n;
    let mut shear = QMatrix::zeros(h, 2 * h);
    for i in 0..h {
        shear.set(i, i, -Rational::one());
        shear.set(i, h + i, Rational::one());
    }
    integrate_left(&embed(x, 0, 2 * h).wedge(&pullback(&shear, y)), h)
}

pub fn random_form<R: Rng>(n: usize, rng: &mut R, terms: usize) -> Form {
    let mut f = Form::zero(n);
    for _ in 0..terms {
        let mask = rng.gen_range(0..1u64 << n);
        f.add(mask, &Rational::from_integer(rng.gen_range(-4i64..=4).into()));
    }
    f
}

pub fn to_class(f: &Form) -> ExtClass {
    let mut x = ExtClass::zero(f.n / 2);
    for (m, c) in &f.terms {
        x.add_term(*m as u32, c);
    }
    x
}

/// Rank of a list of dense vectors by Gaussian elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                for j in c..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        r += 1;
    }
    r
}

/// Whether two finite families of forms span the same subspace.
pub fn same_span(a: &[Form], b: &[Form]) -> bool {
    let da: Vec<_> = a.iter().map(Form::dense).collect();
    let db: Vec<_> = b.iter().map(Form::dense).collect();
    let ra = rank(&da);
    let rb = rank(&db);
    let both: Vec<_> = da.iter().chain(&db).cloned().collect();
    ra == rb && rank(&both) == ra
}

pub fn span_dim(a: &[Form]) -> usize {
    rank(&a.iter().map(Form::dense).collect::<Vec<_>>())
}

/// Reduced basis of the span, for repeated containment tests.
pub fn basis_of(a: &[Form]) -> Vec<Form> {
    let mut out: Vec<Form> = Vec::new();
    for f in a {
        let mut candidate = out.clone();
        candidate.push(f.clone());
        if span_dim(&candidate) > out.len() {
            out.push(f.clone());
        }
    }
    out
}

/// Subalgebra of (Λ, ∧) generated by the given forms.
pub fn generated_algebra(n: usize, generators: &[Form]) -> Vec<Form> {
    let mut basis = vec![Form::one(n)];
    let mut frontier = basis.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for g in generators {
                let p = f.wedge(g);
                let mut candidate = basis.clone();
                candidate.push(p.clone());
                if span_dim(&candidate) > basis.len() {
                    basis.push(p.clone());
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    basis
}

/// Smallest positive integer `e` with `e·m` integral.
pub fn denominator_lcm(m: &QMatrix) -> BigInt {
    let mut e = BigInt::one();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let d = m.get(i, j).denom().clone();
            let g = num_integer::Integer::gcd(&e, &d);
            e = &e * &d / g;
        }
    }
    e.abs()
}

/// `(1/n) Σ σ^i`, the projector onto the fixed space.
pub fn averaging(sigma: &QMatrix, n: u32) -> QMatrix {
    let size = sigma.rows();
    let mut total = QMatrix::zeros(size, size);
    let mut power = QMatrix::identity(size);
    for _ in 0..n {
        total = total.add(&power);
        power = power.mul(sigma);
    }
    total.scale(&Rational::new(BigInt::one(), BigInt::from(n)))
}
