//! Cohomological shadow of the tautological ring of a curve with a cyclic
//! group of automorphisms, computed in the exterior model of `J`.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bigraded::{audit, AuditOutcome, LinearOperator};
use crate::exact::{ClosureMap, SparseVec, SubspaceBasis};
use crate::exterior::{algebra_generated, shadow_closure, ExtClass, ExteriorError, PullbackMap, ShadowOptions};
use crate::lattice::{CoveringData, GroupAlgebraElt, MatrixGroup, PolarizedLattice, SubvarietyData, SymplecticEndo};
use crate::report::Check;

pub struct GroupShadow {
    genus: usize,
    group: MatrixGroup,
    pi: Vec<GroupAlgebraElt>,
    maps: Vec<PullbackMap>,
}

impl GroupShadow {
    /// Uses `Π = {σ^i} ∪ {1 + σ^i}` for the cyclic group generated by `σ`.
    pub fn cyclic(lattice: &PolarizedLattice, sigma: &SymplecticEndo) -> Result<Self, ExteriorError> {
        let group = MatrixGroup::cyclic(sigma);
        let n = group.order();
        let mut pi: Vec<GroupAlgebraElt> = (0..n).map(GroupAlgebraElt::element).collect();
        pi.extend((1..n).map(|i| GroupAlgebraElt::one().add(&GroupAlgebraElt::element(i))));
        Self::with_elements(lattice.genus(), group, pi)
    }

    pub fn with_elements(genus: usize, group: MatrixGroup, pi: Vec<GroupAlgebraElt>) -> Result<Self, ExteriorError> {
        let maps = pi
            .iter()
            .map(|p| PullbackMap::new(&p.realize_q(&group)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { genus, group, pi, maps })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn elements(&self) -> &[GroupAlgebraElt] {
        &self.pi
    }

    pub fn labels(&self) -> Vec<String> {
        self.pi.iter().map(|p| p.label("s")).collect()
    }

    /// `π_*[C]` for `π ∈ Π`.
    pub fn seeds(&self) -> Result<Vec<ExtClass>, ExteriorError> {
        let curve = ExtClass::curve(self.genus);
        self.maps.iter().map(|m| m.push(&curve)).collect()
    }

    /// `π^*θ` for `π ∈ Π`.
    pub fn pulled_back_thetas(&self) -> Result<Vec<ExtClass>, ExteriorError> {
        let theta = ExtClass::theta(self.genus);
        self.maps.iter().map(|m| m.apply(&theta)).collect()
    }

    /// Closure of the seeds under both products, Fourier, degree projections
    /// and push-forward by every `π ∈ Π`.
    pub fn closure(&self) -> Result<SubspaceBasis, ExteriorError> {
        self.closure_with(&[])
    }

    /// Same closure with additional seed classes.
    pub fn closure_with(&self, extra_seeds: &[ExtClass]) -> Result<SubspaceBasis, ExteriorError> {
        let mut seeds = self.seeds()?;
        seeds.extend_from_slice(extra_seeds);
        let g = self.genus;
        let extra = self
            .maps
            .iter()
            .map(|m| {
                ClosureMap::unary(move |x: &SparseVec| {
                    m.push(&ExtClass::from_sparse(g, x)).expect("same ring").to_sparse()
                })
            })
            .collect();
        Ok(shadow_closure(g, &seeds, &ShadowOptions::default(), extra))
    }

    /// Subalgebra generated by the classes `π^*θ`.
    pub fn pullback_algebra(&self) -> Result<SubspaceBasis, ExteriorError> {
        Ok(algebra_generated(self.genus, &self.pulled_back_thetas()?))
    }

    /// Random elements of `Z[G]` with small coefficients, none of them zero.
    pub fn random_elements(&self, seed: u64, count: usize) -> Vec<GroupAlgebraElt> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.group.order();
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let p = GroupAlgebraElt::from_pairs((0..n).map(|i| (i, BigInt::from(rng.gen_range(-2i64..=2)))));
            if !p.is_zero() {
                out.push(p);
            }
        }
        out
    }

    /// Applies `π_*` and `π^*` for `samples` random `π` and reports the growth.
    pub fn audit(&self, basis: &SubspaceBasis, seed: u64, samples: usize) -> Result<AuditOutcome, ExteriorError> {
        let g = self.genus;
        let maps = self
            .random_elements(seed, samples)
            .iter()
            .map(|p| PullbackMap::new(&p.realize_q(&self.group)))
            .collect::<Result<Vec<_>, _>>()?;
        let mut ops: Vec<LinearOperator<'_>> = Vec::with_capacity(2 * maps.len());
        for m in &maps {
            ops.push(Box::new(move |x: &SparseVec| m.push(&ExtClass::from_sparse(g, x)).expect("same ring").to_sparse()));
            ops.push(Box::new(move |x: &SparseVec| m.apply(&ExtClass::from_sparse(g, x)).expect("same ring").to_sparse()));
        }
        Ok(audit(basis, &ops))
    }
}

fn image(basis: &SubspaceBasis, target_genus: usize, f: impl Fn(&ExtClass) -> Result<ExtClass, ExteriorError>, genus: usize) -> Result<SubspaceBasis, ExteriorError> {
    let mut out = SubspaceBasis::new(ExtClass::ambient_dim(target_genus));
    for row in basis.rows() {
        out.insert(&f(&ExtClass::from_sparse(genus, row))?.to_sparse());
    }
    Ok(out)
}

/// Images of a subspace of Λ(J) under `ι^*` and `ψ_*` for a subvariety.
pub fn restriction_images(genus: usize, sub: &SubvarietyData, basis: &SubspaceBasis) -> Result<(SubspaceBasis, SubspaceBasis), ExteriorError> {
    let target = sub.dim();
    let pull = PullbackMap::new(&sub.iota)?;
    let push = PullbackMap::new(&sub.psi)?;
    let restricted = image(basis, target, |x| pull.apply(x), genus)?;
    let pushed = image(basis, target, |x| push.push(x), genus)?;
    Ok((restricted, pushed))
}

/// Compares `ι^*` and `ψ_*` images of the closure for `Y` and for `Z`.
pub fn restriction_checks(cov: &CoveringData, basis: &SubspaceBasis) -> Result<Vec<Check>, ExteriorError> {
    let mut checks = Vec::new();
    for (name, sub) in [("Y", &cov.y), ("Z", &cov.z)] {
        let title = format!("iota_{name}^* R = psi_{name}* R");
        if sub.is_trivial() {
            checks.push(Check::not_computed(title, format!("{name} is zero")));
            continue;
        }
        let (restricted, pushed) = restriction_images(cov.genus(), sub, basis)?;
        checks.push(Check::new(title, restricted == pushed).with_detail(format!(
            "dim iota^* image {}, dim psi_* image {}",
            restricted.dim(),
            pushed.dim()
        )));
    }
    Ok(checks)
}
