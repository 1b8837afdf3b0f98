use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::closure::generated_subalgebra;
use super::{BigradedError, Presentation};
use crate::exact::{sign_power, Rational, SparseVec, SubspaceBasis};
use crate::report::{all_passed, Check};

/// Truth values of the four equivalent stability statements for a bigraded
/// subalgebra `T` containing the polarization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StabilityConditions {
    /// `T * T ⊂ T`
    pub pontryagin_closed: bool,
    /// `F(T) ⊂ T`
    pub fourier_stable: bool,
    /// `F(F(T)) ⊂ F(T)`
    pub double_fourier_stable: bool,
    /// `ξ · F(T) ⊂ F(T)`
    pub polarization_stable: bool,
}

impl StabilityConditions {
    pub fn agree(&self) -> bool {
        let v = self.pontryagin_closed;
        self.fourier_stable == v && self.double_fourier_stable == v && self.polarization_stable == v
    }

    pub fn all(&self) -> bool {
        self.agree() && self.pontryagin_closed
    }
}

pub fn stability_conditions(pres: &Presentation, t: &SubspaceBasis) -> Result<StabilityConditions, BigradedError> {
    if !pres.has_fourier() {
        return Err(BigradedError::NoFourier);
    }
    if !t.contains(pres.polarization_vector()) {
        return Err(BigradedError::PolarizationMissing);
    }
    let rows = t.rows();
    if !t.contains(pres.unit().coeffs())
        || rows.iter().any(|x| rows.iter().any(|y| !t.contains(&pres.mult_vec(x, y))))
    {
        return Err(BigradedError::NotSubalgebra);
    }
    if rows.iter().any(|x| pres.components_vec(x).iter().any(|(_, c)| !t.contains(c))) {
        return Err(BigradedError::NotBigraded);
    }
    let fourier = |x: &SparseVec| pres.fourier_vec(x).expect("Fourier operator present");
    let pontryagin_closed = rows
        .iter()
        .enumerate()
        .all(|(i, x)| rows[i..].iter().all(|y| t.contains(&pres.pontryagin_vec(x, y).expect("Fourier operator present"))));
    let images: Vec<SparseVec> = rows.iter().map(fourier).collect();
    let fourier_stable = images.iter().all(|v| t.contains(v));
    let ft = SubspaceBasis::spanned_by(pres.total_dim(), &images);
    let double_fourier_stable = images.iter().all(|v| ft.contains(&fourier(v)));
    let xi = pres.polarization_vector();
    let polarization_stable = images.iter().all(|v| ft.contains(&pres.mult_vec(xi, v)));
    Ok(StabilityConditions {
        pontryagin_closed,
        fourier_stable,
        double_fourier_stable,
        polarization_stable,
    })
}

#[derive(Clone, Debug)]
pub struct AxiomOptions {
    pub seed: u64,
    pub random_triples: usize,
    pub random_subalgebras: usize,
}

impl Default for AxiomOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            random_triples: 100,
            random_subalgebras: 4,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub checks: Vec<Check>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        all_passed(&self.checks)
    }
}

fn random_vector(pres: &Presentation, rng: &mut ChaCha8Rng) -> SparseVec {
    let n = pres.total_dim();
    let terms = rng.gen_range(1..=3.min(n));
    SparseVec::from_pairs((0..terms).map(|_| (rng.gen_range(0..n), Rational::from_integer(rng.gen_range(-3i64..=3).into()))))
}

pub fn axiom_check(pres: &Presentation, options: &AxiomOptions) -> AxiomReport {
    let mut checks = Vec::new();
    let n = pres.total_dim();
    let d = pres.dim();
    checks.push(Check::new(
        "bidegree bounds -(d-p) <= s <= p",
        pres.basis().iter().all(|b| b.bidegree.in_bounds(d)),
    ));
    checks.push(Check::new(
        "polarization lies in bidegree (1,0)",
        pres.polarization_vector().iter().all(|(i, _)| pres.bidegree_of(i) == super::Bidegree::new(1, 0)),
    ));
    let units: Vec<SparseVec> = (0..n).map(SparseVec::unit).collect();
    let commutative = (0..n).all(|i| (i..n).all(|j| pres.mult_vec(&units[i], &units[j]) == pres.mult_vec(&units[j], &units[i])));
    checks.push(Check::new("intersection product commutative", commutative));
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let triples: Vec<[SparseVec; 3]> = (0..options.random_triples)
        .map(|_| [random_vector(pres, &mut rng), random_vector(pres, &mut rng), random_vector(pres, &mut rng)])
        .collect();
    let associative = triples.iter().all(|[x, y, z]| {
        pres.mult_vec(&pres.mult_vec(x, y), z) == pres.mult_vec(x, &pres.mult_vec(y, z))
    });
    checks.push(Check::new("intersection product associative", associative));
    let unit = pres.unit().coeffs().clone();
    checks.push(Check::new(
        "1 is the unit of the intersection product",
        units.iter().all(|e| pres.mult_vec(&unit, e) == *e),
    ));

    let Some(spec) = pres.fourier() else {
        checks.push(Check::new("Fourier operator present", false).with_detail("no Fourier operator satisfies the axioms for this presentation"));
        for name in [
            "F maps (p,s) to (d-p+s,s)",
            "F F = deg (-1)^d (-1)^*",
            "Pontryagin product commutative",
            "Pontryagin product associative",
            "F^{-1}(1) is the Pontryagin unit",
            "F(x y) = ((-1)^d / deg) F(x) * F(y)",
        ] {
            checks.push(Check::not_computed(name, "no Fourier operator"));
        }
        checks.push(Check::not_computed("stability conditions", "no Fourier operator"));
        return AxiomReport { checks };
    };
    checks.push(Check::new("Fourier operator present", true));
    let grading = (0..n).all(|i| {
        let target = pres.bidegree_of(i).fourier_target(d);
        spec.images()[i].iter().all(|(k, _)| pres.bidegree_of(k) == target)
    });
    checks.push(Check::new("F maps (p,s) to (d-p+s,s)", grading));
    let sign_d = sign_power(i64::from(d));
    let inversion = (0..n).all(|i| {
        let s = pres.bidegree_of(i).s;
        spec.apply(&spec.images()[i]) == units[i].scaled(&(spec.degree() * &sign_d * sign_power(i64::from(s))))
    });
    checks.push(Check::new("F F = deg (-1)^d (-1)^*", inversion));
    let star = |x: &SparseVec, y: &SparseVec| pres.pontryagin_vec(x, y).expect("Fourier operator present");
    let star_commutative = (0..n).all(|i| (i..n).all(|j| star(&units[i], &units[j]) == star(&units[j], &units[i])));
    checks.push(Check::new("Pontryagin product commutative", star_commutative));
    let star_associative = triples.iter().all(|[x, y, z]| star(&star(x, y), z) == star(x, &star(y, z)));
    checks.push(Check::new("Pontryagin product associative", star_associative));
    let star_unit = pres.pontryagin_unit().expect("Fourier operator present");
    checks.push(Check::new(
        "F^{-1}(1) is the Pontryagin unit",
        units.iter().all(|e| star(star_unit.coeffs(), e) == *e),
    ));
    let factor = sign_d / spec.degree();
    let exchange = triples.iter().all(|[x, y, _]| {
        let lhs = spec.apply(&pres.mult_vec(x, y));
        let rhs = star(&spec.apply(x), &spec.apply(y)).scaled(&factor);
        lhs == rhs
    });
    checks.push(Check::new("F(x y) = ((-1)^d / deg) F(x) * F(y)", exchange));

    let mut subalgebras: Vec<(String, SubspaceBasis)> = vec![
        ("whole ring".to_string(), SubspaceBasis::full(n)),
        (
            "subalgebra generated by the polarization".to_string(),
            generated_subalgebra(pres, std::slice::from_ref(pres.polarization_vector())),
        ),
    ];
    let mut homogeneous: Vec<usize> = (0..n).filter(|&i| i != pres.unit_index()).collect();
    for k in 0..options.random_subalgebras {
        homogeneous.shuffle(&mut rng);
        let count = rng.gen_range(1..=2.min(homogeneous.len().max(1)));
        let mut gens = vec![pres.polarization_vector().clone()];
        gens.extend(homogeneous.iter().take(count).map(|&i| units[i].clone()));
        let labels: Vec<&str> = homogeneous.iter().take(count).map(|&i| pres.basis()[i].label.as_str()).collect();
        subalgebras.push((format!("random subalgebra {k} (xi, {})", labels.join(", ")), generated_subalgebra(pres, &gens)));
    }
    for (name, t) in subalgebras {
        let check = match stability_conditions(pres, &t) {
            Ok(c) => Check::new(format!("stability conditions agree on {name}"), c.agree()).with_detail(format!(
                "T*T in T: {}, F(T) in T: {}, FF(T) in F(T): {}, xi F(T) in F(T): {} (dim {})",
                c.pontryagin_closed,
                c.fourier_stable,
                c.double_fourier_stable,
                c.polarization_stable,
                t.dim()
            )),
            Err(e) => Check::new(format!("stability conditions agree on {name}"), false).with_detail(e.to_string()),
        };
        checks.push(check);
    }
    AxiomReport { checks }
}
