use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{LatticeError, PolarizedLattice, SymplecticEndo};
use crate::exact::{alternating_normal_form, from_bigint, integer_kernel, IntMatrix, QMatrix, Rational};
use crate::exterior::{pushforward, ExtClass};
use crate::report::Check;

/// Abelian subvariety given by a saturated sublattice of H_1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubvarietyData {
    /// Columns span the sublattice; chosen so that the induced form is in
    /// symplectic normal form.
    pub lattice_basis: IntMatrix,
    pub induced_gram: IntMatrix,
    pub divisors: Vec<BigInt>,
    pub exponent: BigInt,
    /// Inclusion `Y → J` on H_1, shape `2g x r`.
    pub iota: QMatrix,
    /// `ψ = e · E_Y^{-1} ι^T E`, shape `r x 2g`, so that `ψ ι = e`.
    pub psi: QMatrix,
    /// Norm endomorphism `N = ι ψ`.
    pub norm_endo: QMatrix,
    /// Symmetric idempotent `N / e`.
    pub idempotent: QMatrix,
}

impl SubvarietyData {
    pub fn from_saturated_basis(lattice: &PolarizedLattice, basis: &IntMatrix) -> Result<Self, LatticeError> {
        let n = lattice.rank();
        if basis.rows() != n {
            return Err(LatticeError::Dimension(format!("basis has {} rows, lattice rank {n}", basis.rows())));
        }
        let r = basis.cols();
        if r == 0 {
            return Ok(Self {
                lattice_basis: IntMatrix::zeros(n, 0),
                induced_gram: IntMatrix::zeros(0, 0),
                divisors: Vec::new(),
                exponent: BigInt::one(),
                iota: QMatrix::zeros(n, 0),
                psi: QMatrix::zeros(0, n),
                norm_endo: QMatrix::zeros(n, n),
                idempotent: QMatrix::zeros(n, n),
            });
        }
        let restricted = basis.transpose().mul(lattice.gram()).mul(basis);
        let form = alternating_normal_form(&restricted).map_err(|_| LatticeError::NotAlternating)?;
        if form.radical_rank > 0 {
            return Err(LatticeError::Degenerate);
        }
        let lattice_basis = basis.mul(&form.basis);
        let exponent = form.divisors.last().cloned().unwrap_or_else(BigInt::one);
        let e = from_bigint(exponent.clone());
        let iota = lattice_basis.to_q();
        let gram_inv = form.gram.to_q().inverse().expect("nondegenerate restriction");
        let psi = gram_inv.mul(&iota.transpose()).mul(&lattice.gram_q()).scale(&e);
        let norm_endo = iota.mul(&psi);
        let idempotent = norm_endo.scale(&e.recip());
        Ok(Self {
            lattice_basis,
            induced_gram: form.gram,
            divisors: form.divisors,
            exponent,
            iota,
            psi,
            norm_endo,
            idempotent,
        })
    }

    pub fn rank(&self) -> usize {
        self.lattice_basis.cols()
    }

    /// Dimension as an abelian variety.
    pub fn dim(&self) -> usize {
        self.rank() / 2
    }

    pub fn is_trivial(&self) -> bool {
        self.rank() == 0
    }

    pub fn euler_char(&self) -> BigInt {
        self.divisors.iter().fold(BigInt::one(), |acc, d| acc * d)
    }
}

/// H_1-level data of the quotient map by a cyclic group of automorphisms.
#[derive(Clone, Debug)]
pub struct CoveringData {
    pub n: u32,
    pub sigma: SymplecticEndo,
    pub lattice: PolarizedLattice,
    /// Fixed part `ker(σ - 1)`.
    pub y: SubvarietyData,
    /// Complement `ker Φ_n(σ)`.
    pub z: SubvarietyData,
    /// Y with the form `E|_Y / n`.
    pub jprime: PolarizedLattice,
    /// `f̄`, the inclusion of `J'` on H_1.
    pub fbar: QMatrix,
    /// `N_f = E'^{-1} f̄^T E`.
    pub nf: QMatrix,
    pub phi: QMatrix,
}

pub fn fixed_part_decomposition(lattice: &PolarizedLattice, sigma: &SymplecticEndo) -> Result<CoveringData, LatticeError> {
    let n = sigma.order();
    let dim = lattice.rank();
    let fixed = integer_kernel(&sigma.matrix().sub(&IntMatrix::identity(dim)));
    let phi = sigma.norm_element();
    let complement = integer_kernel(&phi);
    let y = SubvarietyData::from_saturated_basis(lattice, &fixed)?;
    let z = SubvarietyData::from_saturated_basis(lattice, &complement)?;
    let nn = BigInt::from(n);
    let gram = &y.induced_gram;
    let mut jp = IntMatrix::zeros(gram.rows(), gram.cols());
    for i in 0..gram.rows() {
        for j in 0..gram.cols() {
            let (q, rem) = gram.get(i, j).div_rem(&nn);
            if !rem.is_zero() {
                return Err(LatticeError::JprimeNotIntegral { n });
            }
            jp.set(i, j, q);
        }
    }
    let jprime = PolarizedLattice::new(jp)?;
    if !jprime.is_principal() {
        return Err(LatticeError::JprimeNotPrincipal {
            n,
            divisors: jprime.elementary_divisors().iter().map(ToString::to_string).collect(),
        });
    }
    let fbar = y.iota.clone();
    let nf = if y.is_trivial() {
        QMatrix::zeros(0, dim)
    } else {
        jprime
            .gram_q()
            .inverse()
            .expect("nondegenerate")
            .mul(&fbar.transpose())
            .mul(&lattice.gram_q())
    };
    Ok(CoveringData {
        n,
        sigma: sigma.clone(),
        lattice: lattice.clone(),
        y,
        z,
        jprime,
        fbar,
        nf,
        phi: phi.to_q(),
    })
}

impl CoveringData {
    pub fn genus(&self) -> usize {
        self.lattice.genus()
    }

    pub fn quotient_genus(&self) -> usize {
        self.y.dim()
    }

    /// Situations excluded or degenerate for the cover.
    pub fn notes(&self) -> Vec<String> {
        let mut notes = Vec::new();
        if self.y.is_trivial() {
            notes.push("fixed part is zero: quotient curve has genus 0, a case left out of the covering theory".to_string());
        }
        if self.z.is_trivial() {
            notes.push("complement is zero: Y = J and e(Y) = 1 (degenerate branch)".to_string());
        }
        notes.push("deg j is not computed: it needs kernel data of the covering that the lattice does not carry".to_string());
        notes
    }

    /// Shadow checks in the exterior model of J.
    pub fn shadow_checks(&self) -> Result<Vec<Check>, crate::exterior::ExteriorError> {
        let g = self.genus();
        let mut checks = Vec::new();
        let curve = ExtClass::curve(g);
        if self.y.is_trivial() {
            checks.push(Check::not_computed("(N_f)_*[C] = n[C']", "quotient has genus 0"));
        } else {
            let pushed = pushforward(&self.nf, &curve)?;
            let expected = ExtClass::curve(self.quotient_genus()).scale(&Rational::from_integer(self.n.into()));
            checks.push(Check::new("(N_f)_*[C] = n[C']", pushed == expected));
        }
        if self.z.is_trivial() {
            checks.push(Check::not_computed("(-1)^* psi_Z*[C] = psi_Z*[C]", "complement is zero"));
        } else {
            let pushed = pushforward(&self.z.psi, &curve)?;
            checks.push(Check::new("(-1)^* psi_Z*[C] = psi_Z*[C]", pushed.minus_star() == pushed));
        }
        Ok(checks)
    }
}

#[derive(Clone, Debug)]
pub struct NormReport {
    pub checks: Vec<Check>,
}

impl NormReport {
    pub fn all_passed(&self) -> bool {
        crate::report::all_passed(&self.checks)
    }
}

pub fn norm_identities_check(cov: &CoveringData) -> NormReport {
    let lat = &cov.lattice;
    let dim = lat.rank();
    let id = QMatrix::identity(dim);
    let e_y = from_bigint(cov.y.exponent.clone());
    let n = Rational::from_integer(cov.n.into());
    let (ny, nz) = (&cov.y.norm_endo, &cov.z.norm_endo);
    let (ey, ez) = (&cov.y.idempotent, &cov.z.idempotent);
    let e = lat.gram_q();
    let mut checks = vec![
        Check::new("N_Y + N_Z = e(Y) Id", ny.add(nz) == id.scale(&e_y)),
        Check::new("N_Y N_Z = 0", ny.mul(nz).is_zero() && nz.mul(ny).is_zero()),
        Check::new("N_Y|Y = e(Y) Id_Y", ny.mul(&cov.y.iota) == cov.y.iota.scale(&e_y)),
        Check::new("psi_Y iota_Y = e(Y) Id_Y", cov.y.psi.mul(&cov.y.iota) == QMatrix::scalar(cov.y.rank(), &e_y)),
        Check::new("R(N_Y) = N_Y", lat.rosati(ny) == *ny),
        Check::new("R(N_Z) = N_Z", lat.rosati(nz) == *nz),
        Check::new("N_Y^2 = e(Y) N_Y", ny.mul(ny) == ny.scale(&e_y)),
        Check::new(
            "N_Z^2 = e(Z) N_Z",
            nz.mul(nz) == nz.scale(&from_bigint(cov.z.exponent.clone())),
        ),
        Check::new("eps_Y^2 = eps_Y", ey.mul(ey) == *ey),
        Check::new("R(eps_Y) = eps_Y", lat.rosati(ey) == *ey),
        Check::new("eps_Y + eps_Z = Id", ey.add(ez) == id),
        Check::new("N_Y = (e(Y)/n) Phi_n(sigma)", *ny == cov.phi.scale(&(&e_y / &n))),
        Check::new("N_Y integral", ny.is_integral() && nz.is_integral()),
        Check::new("R(Phi_n(sigma)) = Phi_n(sigma)", lat.rosati(&cov.phi) == cov.phi),
        Check::new("Phi_n(sigma)^2 = n Phi_n(sigma)", cov.phi.mul(&cov.phi) == cov.phi.scale(&n)),
        Check::new("e(Y) divides n", BigInt::from(cov.n).is_multiple_of(&cov.y.exponent)),
        Check::new("e(Y) = e(Z)", cov.y.exponent == cov.z.exponent),
    ];
    let mut both = cov.y.iota.transpose().to_rows();
    both.extend(cov.z.iota.transpose().to_rows());
    let spans = both.len() == dim && (dim == 0 || QMatrix::from_rows(both).map(|m| m.rank() == dim).unwrap_or(false));
    checks.push(Check::new("W_Y + W_Z = Q^2g", spans));
    checks.push(Check::new(
        "E(W_Y, W_Z) = 0",
        cov.y.iota.transpose().mul(&e).mul(&cov.z.iota).is_zero(),
    ));
    checks.push(Check::new("fbar N_f = Phi_n(sigma)", cov.fbar.mul(&cov.nf) == cov.phi));
    checks.push(Check::new(
        "N_f fbar = n Id",
        cov.nf.mul(&cov.fbar) == QMatrix::scalar(cov.y.rank(), &n),
    ));
    let ejp = cov.jprime.gram_q();
    checks.push(Check::new("fbar^T E fbar = n E'", cov.fbar.transpose().mul(&e).mul(&cov.fbar) == ejp.scale(&n)));
    let lhs = cov.z.psi.transpose().mul(&cov.z.induced_gram.to_q()).mul(&cov.z.psi);
    let e2 = &e_y * &e_y;
    let rhs = e.scale(&e2).sub(&cov.nf.transpose().mul(&ejp).mul(&cov.nf).scale(&(&e2 / &n)));
    checks.push(Check::new(
        "psi_Z^T E_Z psi_Z = e(Y)^2 E - (e(Y)^2/n) N_f^T E' N_f",
        lhs == rhs,
    ));
    checks.push(Check::not_computed(
        "deg j divides n",
        "requires the kernel of the covering on torsion points",
    ));
    NormReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{cyclic_shift, rotation};

    #[test]
    fn bielliptic_swap() {
        let lat = PolarizedLattice::standard(2);
        let sigma = SymplecticEndo::new(&lat, cyclic_shift(2), 2).unwrap();
        let cov = fixed_part_decomposition(&lat, &sigma).unwrap();
        assert_eq!((cov.y.dim(), cov.z.dim()), (1, 1));
        assert_eq!(cov.y.exponent, BigInt::from(2));
        assert_eq!(cov.z.exponent, BigInt::from(2));
        assert!(cov.jprime.is_principal());
        let report = norm_identities_check(&cov);
        assert!(report.all_passed(), "{:?}", report.checks);
        assert!(cov.shadow_checks().unwrap().iter().all(Check::passed));
    }

    #[test]
    fn identity_and_hyperelliptic() {
        let lat = PolarizedLattice::standard(2);
        let id = SymplecticEndo::new(&lat, IntMatrix::identity(4), 1).unwrap();
        let cov = fixed_part_decomposition(&lat, &id).unwrap();
        assert_eq!(cov.y.exponent, BigInt::one());
        assert!(cov.z.is_trivial());
        assert_eq!(cov.y.norm_endo, QMatrix::identity(4));
        assert!(cov.z.norm_endo.is_zero());
        assert!(norm_identities_check(&cov).all_passed());

        let minus = IntMatrix::block_diag(&[rotation(2).unwrap(), rotation(2).unwrap()]);
        let hyper = SymplecticEndo::new(&lat, minus, 2).unwrap();
        let cov = fixed_part_decomposition(&lat, &hyper).unwrap();
        assert!(cov.y.is_trivial());
        assert_eq!(cov.z.exponent, BigInt::one());
        assert!(norm_identities_check(&cov).all_passed());
    }

    #[test]
    fn non_principal_quotient_is_rejected() {
        let lat = PolarizedLattice::standard(2);
        let m = IntMatrix::block_diag(&[IntMatrix::identity(2), rotation(3).unwrap()]);
        let sigma = SymplecticEndo::new(&lat, m, 3).unwrap();
        assert!(matches!(
            fixed_part_decomposition(&lat, &sigma),
            Err(LatticeError::JprimeNotIntegral { n: 3 })
        ));
    }
}
