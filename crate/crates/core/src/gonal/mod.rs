//! Presentations of the restricted tautological rings of curves of low
//! gonality carrying an involution.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::bigraded::{exponential_fourier, Bidegree, BigradedClass, BigradedError, Generator, Presentation};
use crate::exact::{int, SparseVec};
use crate::report::Check;

pub const MAX_GONALITY: u32 = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GonalError {
    #[error("gonality {0} is outside the supported range 2..=5")]
    Gonality(u32),
    #[error("gonality {0} needs the parameter k")]
    MissingK(u32),
    #[error("k = {k} must satisfy 1 <= k and 5k <= d = {d}")]
    KRange { k: u32, d: u32 },
    #[error("k is only meaningful for gonality 4 or 5")]
    UnexpectedK,
    #[error("χ must be positive")]
    Chi,
    #[error(transparent)]
    Bigraded(#[from] BigradedError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GonalModelParams {
    pub d: u32,
    pub gonality: u32,
    pub k: Option<u32>,
    /// Scalar of the Fourier operator on the lowest block of each pair.
    pub chi: BigInt,
}

impl GonalModelParams {
    pub fn new(d: u32, gonality: u32, k: Option<u32>) -> Self {
        Self {
            d,
            gonality,
            k,
            chi: BigInt::one(),
        }
    }

    pub fn validate(&self) -> Result<(), GonalError> {
        if !(2..=MAX_GONALITY).contains(&self.gonality) {
            return Err(GonalError::Gonality(self.gonality));
        }
        if !self.chi.is_positive() {
            return Err(GonalError::Chi);
        }
        match (self.gonality, self.k) {
            (2 | 3, None) => Ok(()),
            (2 | 3, Some(_)) => Err(GonalError::UnexpectedK),
            (_, None) => Err(GonalError::MissingK(self.gonality)),
            (_, Some(k)) if k == 0 || 5 * k > self.d => Err(GonalError::KRange { k, d: self.d }),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GonalRing {
    pub params: GonalModelParams,
    pub presentation: Presentation,
    pub notes: Vec<String>,
    /// Why no Fourier operator could be attached, if none was.
    pub fourier_obstruction: Option<String>,
}

impl GonalRing {
    pub fn dim(&self) -> usize {
        self.presentation.total_dim()
    }
}

/// `N^i(w)` sits in bidegree `(i, i-1)`. Vanishing leaves `i < gonality`.
pub fn candidate_generators(gonality: u32) -> Vec<(u32, Bidegree)> {
    (1..gonality).map(|i| (i, Bidegree::new(i as i32, i as i32 - 1))).collect()
}

/// Keeps the indices whose restriction can be symmetric, i.e. odd `i`.
pub fn symmetric_indices(indices: &[(u32, Bidegree)]) -> Vec<(u32, Bidegree)> {
    indices.iter().copied().filter(|(i, _)| i % 2 == 1).collect()
}

/// Drops the odd-`s` components of every class and discards classes that vanish.
pub fn symmetry_filter(pres: &Presentation, classes: &[BigradedClass]) -> Result<Vec<BigradedClass>, BigradedError> {
    let mut out = Vec::new();
    for x in classes {
        let mut kept = SparseVec::new();
        for (b, part) in pres.components(x)? {
            if b.s.rem_euclid(2) == 0 {
                kept = &kept + part.coeffs();
            }
        }
        if !kept.is_zero() {
            out.push(pres.class(kept)?);
        }
    }
    Ok(out)
}

fn generator_name(index: u32) -> String {
    match index {
        1 => "eta".to_string(),
        3 => "mu".to_string(),
        i => format!("n{i}"),
    }
}

/// Generators of the relation ideal as exponent vectors over `(eta, mu)`.
pub fn gonal_ideal(params: &GonalModelParams) -> Vec<Vec<u32>> {
    let d = params.d;
    match params.k {
        None => vec![vec![d + 1]],
        Some(k) => {
            let mut ideal = vec![vec![d + 1, 0]];
            ideal.extend((1..=k).map(|j| vec![d + 1 - 5 * j, j]));
            ideal.push(vec![0, k + 1]);
            ideal
        }
    }
}

pub fn build_gonal(params: &GonalModelParams) -> Result<GonalRing, GonalError> {
    params.validate()?;
    let generators: Vec<Generator> = symmetric_indices(&candidate_generators(params.gonality))
        .into_iter()
        .map(|(i, b)| Generator::new(generator_name(i), b.p, b.s))
        .collect();
    let polarization = if params.d == 0 {
        Vec::new()
    } else {
        let mut eta = vec![0; generators.len()];
        eta[0] = 1;
        vec![(eta, int(1))]
    };
    let pres = Presentation::monomial(params.d, generators, gonal_ideal(params), &polarization)?;
    let mut notes = vec!["the stated ideal is treated as the complete set of relations".to_string()];
    if params.k.is_some() {
        notes.push("k is taken as given; it is not derived from the curve".to_string());
    }
    let fourier = if params.d == 0 {
        let chi = crate::exact::from_bigint(params.chi.clone());
        Ok((&params.chi * &params.chi, vec![SparseVec::from_pairs([(0, chi)])]))
    } else {
        exponential_fourier(&pres, &params.chi)
    };
    let (presentation, fourier_obstruction) = match fourier {
        Ok((degree, images)) => (pres.with_fourier_images(degree, images)?, None),
        Err(BigradedError::FourierObstruction(why)) => {
            notes.push(format!("no Fourier operator: {why}"));
            (pres, Some(why))
        }
        Err(e) => return Err(e.into()),
    };
    Ok(GonalRing {
        params: params.clone(),
        presentation,
        notes,
        fourier_obstruction,
    })
}

pub fn hilbert_function(ring: &GonalRing) -> BTreeMap<Bidegree, usize> {
    ring.presentation.hilbert_function()
}

/// Checks that `(a, b) ↦ (d - a - 4b, b)`, the exponent map induced by the
/// Fourier bidegree shift on `η^a μ^b`, permutes the surviving monomials.
pub fn index_map_check(ring: &GonalRing) -> Check {
    let pres = &ring.presentation;
    let d = ring.params.d as i64;
    let survivors: Vec<Vec<u32>> = pres.basis().iter().filter_map(|b| b.exponents.clone()).collect();
    let shift = |e: &[u32]| -> Option<Vec<u32>> {
        match e {
            [a] => u32::try_from(d - i64::from(*a)).ok().map(|x| vec![x]),
            [a, b] => u32::try_from(d - i64::from(*a) - 4 * i64::from(*b)).ok().map(|x| vec![x, *b]),
            _ => None,
        }
    };
    let failures: Vec<String> = survivors
        .iter()
        .filter(|e| shift(e).is_none_or(|t| !survivors.contains(&t)))
        .map(|e| pres.basis()[pres.basis().iter().position(|b| b.exponents.as_ref() == Some(e)).expect("present")].label.clone())
        .collect();
    let status = Check::new("Fourier index map preserves the surviving monomials", failures.is_empty());
    if failures.is_empty() {
        status.with_detail(format!("{} monomials", survivors.len()))
    } else {
        status.with_detail(format!("image lies in the ideal for {}", failures.join(", ")))
    }
}
