use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactError, IntMatrix};

/// `u * m * v == d` with `u`, `v` unimodular and `d` diagonal, `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries, including trailing zeros up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(a.get(t, t));
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(a.get(t, t));
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                let mut best = (t, t, a.get(t, t).abs());
                for i in t + 1..rows {
                    let x = a.get(i, t).abs();
                    if !x.is_zero() && x < best.2 {
                        best = (i, t, x);
                    }
                }
                for j in t + 1..cols {
                    let x = a.get(t, j).abs();
                    if !x.is_zero() && x < best.2 {
                        best = (t, j, x);
                    }
                }
                a.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                a.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            let pivot = a.get(t, t).clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    a.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    SmithForm { d: a, u, v }
}

fn min_abs_entry(a: &IntMatrix, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in r0..a.rows() {
        for j in c0..a.cols() {
            let x = a.get(i, j).abs();
            if x.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|b| x < b.2) {
                best = Some((i, j, x));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Z-basis (as columns) of `{x in Z^n : m x = 0}`; this lattice is saturated.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    snf.v.column_slice(rank, m.cols())
}

/// Symplectic normal form of an integral alternating form.
///
/// `basis^T * form * basis == gram` where `gram` is block diagonal with blocks
/// `[[0, d_i], [-d_i, 0]]`, `d_1 | d_2 | ...`, followed by a zero block of size
/// `radical_rank`.
#[derive(Clone, Debug)]
pub struct AlternatingForm {
    pub basis: IntMatrix,
    pub gram: IntMatrix,
    pub divisors: Vec<BigInt>,
    pub radical_rank: usize,
}

struct Congruence {
    a: IntMatrix,
    basis: IntMatrix,
}

impl Congruence {
    fn swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.a.swap_cols(i, j);
        self.basis.swap_cols(i, j);
    }

    /// Replaces basis vector `target` by `target + c * source`.
    fn add(&mut self, target: usize, source: usize, c: &BigInt) {
        self.a.add_col_multiple(target, source, c);
        self.a.add_row_multiple(target, source, c);
        self.basis.add_col_multiple(target, source, c);
    }

    fn negate(&mut self, i: usize) {
        self.a.negate_row(i);
        self.a.negate_col(i);
        self.basis.negate_col(i);
    }

    fn entry(&self, i: usize, j: usize) -> &BigInt {
        self.a.get(i, j)
    }
}

pub fn alternating_normal_form(form: &IntMatrix) -> Result<AlternatingForm, ExactError> {
    if !form.is_antisymmetric() || (0..form.rows()).any(|i| !form.get(i, i).is_zero()) {
        return Err(ExactError::NotAlternating);
    }
    let n = form.rows();
    let mut st = Congruence {
        a: form.clone(),
        basis: IntMatrix::identity(n),
    };
    let mut divisors = Vec::new();
    let mut t = 0;
    while t + 1 < n {
        let Some((i, j)) = min_abs_entry(&st.a, t, t) else {
            break;
        };
        st.swap(t, i);
        let j = if j == t { i } else { j };
        st.swap(t + 1, j);
        loop {
            let d = st.entry(t, t + 1).clone();
            let mut clean = true;
            for m in t + 2..n {
                let q = st.entry(t, m).div_floor(&d);
                st.add(m, t + 1, &-q);
                let q2 = st.entry(t + 1, m).div_floor(&d);
                st.add(m, t, &q2);
                clean &= st.entry(t, m).is_zero() && st.entry(t + 1, m).is_zero();
            }
            if !clean {
                let mut best: (usize, usize, BigInt) = (t, t + 1, d.abs());
                for m in t + 2..n {
                    for r in [t, t + 1] {
                        let x = st.entry(r, m).abs();
                        if !x.is_zero() && x < best.2 {
                            best = (r, m, x);
                        }
                    }
                }
                let (r, m, _) = best;
                if r == t && m != t + 1 {
                    st.swap(t + 1, m);
                } else if r == t + 1 {
                    st.swap(t, m);
                }
                continue;
            }
            let offender = (t + 2..n).find(|&r| (t + 2..n).any(|c| !st.entry(r, c).is_multiple_of(&d)));
            match offender {
                Some(r) => st.add(t, r, &BigInt::one()),
                None => break,
            }
        }
        if st.entry(t, t + 1).is_negative() {
            st.negate(t + 1);
        }
        divisors.push(st.entry(t, t + 1).clone());
        t += 2;
    }
    let radical_rank = n - 2 * divisors.len();
    Ok(AlternatingForm {
        basis: st.basis,
        gram: st.a,
        divisors,
        radical_rank,
    })
}
