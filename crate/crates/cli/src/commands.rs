use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use taut_core::bigraded::{
    axiom_check, stability_conditions, subspace_hilbert_function, taut_closure, AxiomOptions, BigradedClass, ClosureOptions,
    LinearOperator, Presentation,
};
use taut_core::exact::{is_integer, ClosureMap, Rational, SparseVec, SubspaceBasis};
use taut_core::exterior::{fourier, identity_checks, pontryagin, shadow_closure, ExtClass, ShadowOptions};
use taut_core::gonal::{index_map_check, GonalRing};
use taut_core::lattice::{fixed_part_decomposition, norm_identities_check, GroupAlgebraElt, MatrixGroup, PolarizedLattice, SymplecticEndo};
use taut_core::report::Check;
use taut_core::tautological::{restriction_checks, GroupShadow};

use crate::expr::{parse_and_evaluate, Evaluator};
use crate::model::{Backend, Model};
use crate::report::Report;

pub const EXCHANGE_PAIRS: usize = 200;
pub const AUDIT_SAMPLES: usize = 50;

#[derive(Clone, Debug)]
pub struct Settings {
    pub genus_cap: usize,
    pub audit_seed: u64,
}

/// Error in the user's input, as opposed to a failed identity.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

type Outcome = Result<(), InputError>;

fn input(e: impl std::fmt::Display) -> InputError {
    InputError(e.to_string())
}

fn cap(genus: usize, settings: &Settings) -> Outcome {
    if genus > settings.genus_cap {
        return Err(InputError(format!(
            "genus {genus} exceeds the genus cap {} (exterior model has dimension 2^{}); raise --genus-cap to proceed",
            settings.genus_cap,
            2 * genus
        )));
    }
    Ok(())
}

// expression evaluation

struct ExteriorEval<'a> {
    genus: usize,
    classes: &'a BTreeMap<String, String>,
    depth: usize,
}

impl ExteriorEval<'_> {
    fn eval(&self, src: &str) -> Result<ExtClass, InputError> {
        parse_and_evaluate(src, self).map_err(|e| InputError(format!("in '{src}': {e}")))
    }
}

fn index_suffix(name: &str, prefix: char, genus: usize) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    let i: usize = rest.parse().ok()?;
    (1..=genus).contains(&i).then_some(i)
}

impl Evaluator for ExteriorEval<'_> {
    type Value = ExtClass;

    fn constant(&self, c: &Rational) -> Result<ExtClass, String> {
        Ok(ExtClass::one(self.genus).scale(c))
    }

    fn atom(&self, name: &str) -> Result<ExtClass, String> {
        let g = self.genus;
        match name {
            "theta" => Ok(ExtClass::theta(g)),
            "C" => Ok(ExtClass::curve(g)),
            "pt" => Ok(ExtClass::point(g)),
            _ => {
                if let Some(i) = index_suffix(name, 'a', g) {
                    return Ok(ExtClass::a(g, i));
                }
                if let Some(i) = index_suffix(name, 'b', g) {
                    return Ok(ExtClass::b(g, i));
                }
                let src = self.classes.get(name).ok_or_else(|| format!("unknown class '{name}'"))?;
                if self.depth > 16 {
                    return Err(format!("class '{name}' is defined recursively"));
                }
                let inner = ExteriorEval {
                    genus: g,
                    classes: self.classes,
                    depth: self.depth + 1,
                };
                parse_and_evaluate(src, &inner).map_err(|e| format!("in class '{name}': {e}"))
            }
        }
    }

    fn call(&self, name: &str, args: &[ExtClass]) -> Result<ExtClass, String> {
        match (name, args) {
            ("F", [x]) => Ok(fourier(x)),
            ("minus", [x]) => Ok(x.minus_star()),
            ("exp", [x]) => Ok(x.exp()),
            ("pont", [x, y]) => pontryagin(x, y).map_err(|e| e.to_string()),
            _ => Err(format!("unknown function '{name}' with {} argument(s)", args.len())),
        }
    }

    fn add(&self, x: &ExtClass, y: &ExtClass) -> Result<ExtClass, String> {
        x.try_add(y).map_err(|e| e.to_string())
    }

    fn mul(&self, x: &ExtClass, y: &ExtClass) -> Result<ExtClass, String> {
        x.wedge(y).map_err(|e| e.to_string())
    }

    fn neg(&self, x: &ExtClass) -> Result<ExtClass, String> {
        Ok(x.scale(&-Rational::one()))
    }
}

struct PresentationEval<'a> {
    pres: &'a Presentation,
    classes: &'a BTreeMap<String, String>,
    depth: usize,
}

impl PresentationEval<'_> {
    fn eval(&self, src: &str) -> Result<BigradedClass, InputError> {
        parse_and_evaluate(src, self).map_err(|e| InputError(format!("in '{src}': {e}")))
    }

    fn integer(&self, x: &BigradedClass) -> Result<i32, String> {
        let unit = SparseVec::unit(self.pres.unit_index());
        let c = x.coeffs().coeff(self.pres.unit_index());
        if x.coeffs() != &unit.scaled(&c) || !is_integer(&c) {
            return Err("expected an integer argument".to_string());
        }
        c.to_integer().to_i32().ok_or_else(|| "integer argument too large".to_string())
    }
}

impl Evaluator for PresentationEval<'_> {
    type Value = BigradedClass;

    fn constant(&self, c: &Rational) -> Result<BigradedClass, String> {
        Ok(self.pres.unit().scale(c))
    }

    fn atom(&self, name: &str) -> Result<BigradedClass, String> {
        if name == "xi" {
            return Ok(self.pres.polarization());
        }
        if let Ok(x) = self.pres.generator_class(name) {
            return Ok(x);
        }
        let src = self.classes.get(name).ok_or_else(|| format!("unknown class '{name}'"))?;
        if self.depth > 16 {
            return Err(format!("class '{name}' is defined recursively"));
        }
        let inner = PresentationEval {
            pres: self.pres,
            classes: self.classes,
            depth: self.depth + 1,
        };
        parse_and_evaluate(src, &inner).map_err(|e| format!("in class '{name}': {e}"))
    }

    fn call(&self, name: &str, args: &[BigradedClass]) -> Result<BigradedClass, String> {
        let p = self.pres;
        let r = match (name, args) {
            ("F", [x]) => p.fourier_apply(x),
            ("Finv", [x]) => p.fourier_inverse(x),
            ("minus", [x]) => p.minus_star(x),
            ("pont", [x, y]) => p.pontryagin_derived(x, y),
            ("proj", [x, a, b]) => {
                let b = taut_core::bigraded::Bidegree::new(self.integer(a)?, self.integer(b)?);
                p.component_project(x, b)
            }
            _ => return Err(format!("unknown function '{name}' with {} argument(s)", args.len())),
        };
        r.map_err(|e| e.to_string())
    }

    fn add(&self, x: &BigradedClass, y: &BigradedClass) -> Result<BigradedClass, String> {
        x.add(y).map_err(|e| e.to_string())
    }

    fn mul(&self, x: &BigradedClass, y: &BigradedClass) -> Result<BigradedClass, String> {
        self.pres.mult(x, y).map_err(|e| e.to_string())
    }

    fn neg(&self, x: &BigradedClass) -> Result<BigradedClass, String> {
        Ok(x.scale(&-Rational::one()))
    }
}

struct GroupEval<'a> {
    group: &'a MatrixGroup,
}

impl Evaluator for GroupEval<'_> {
    type Value = GroupAlgebraElt;

    fn constant(&self, c: &Rational) -> Result<GroupAlgebraElt, String> {
        if !is_integer(c) {
            return Err("group algebra coefficients must be integers".to_string());
        }
        Ok(GroupAlgebraElt::one().scale(&c.to_integer()))
    }

    fn atom(&self, name: &str) -> Result<GroupAlgebraElt, String> {
        match name {
            "s" | "sigma" => Ok(GroupAlgebraElt::element(1 % self.group.order())),
            _ => Err(format!("unknown group element '{name}' (use s)")),
        }
    }

    fn call(&self, name: &str, _: &[GroupAlgebraElt]) -> Result<GroupAlgebraElt, String> {
        Err(format!("unknown function '{name}'"))
    }

    fn add(&self, x: &GroupAlgebraElt, y: &GroupAlgebraElt) -> Result<GroupAlgebraElt, String> {
        Ok(x.add(y))
    }

    fn mul(&self, x: &GroupAlgebraElt, y: &GroupAlgebraElt) -> Result<GroupAlgebraElt, String> {
        Ok(x.mul(y, self.group))
    }

    fn neg(&self, x: &GroupAlgebraElt) -> Result<GroupAlgebraElt, String> {
        Ok(x.scale(&BigInt::from(-1)))
    }
}

// tables

fn degree_table(genus: usize, basis: &SubspaceBasis) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for k in 0..=2 * genus as u32 {
        let parts: Vec<SparseVec> = basis
            .rows()
            .iter()
            .map(|r| ExtClass::from_sparse(genus, r).homogeneous_part(k).to_sparse())
            .collect();
        let dim = SubspaceBasis::spanned_by(ExtClass::ambient_dim(genus), &parts).dim();
        if dim > 0 {
            rows.push(vec![k.to_string(), dim.to_string()]);
        }
    }
    rows
}

fn bidegree_rows(counts: &BTreeMap<taut_core::bigraded::Bidegree, usize>) -> Vec<Vec<String>> {
    counts
        .iter()
        .map(|(b, n)| vec![b.p.to_string(), b.s.to_string(), n.to_string()])
        .collect()
}

// check

pub fn check(model: &Model, settings: &Settings, report: &mut Report) -> Outcome {
    match &model.backend {
        Backend::Exterior { genus } => {
            cap(*genus, settings)?;
            report.value("genus", genus);
            report.value("ambient dimension", ExtClass::ambient_dim(*genus));
            report.checks(identity_checks(*genus, EXCHANGE_PAIRS, settings.audit_seed));
        }
        Backend::Lattice { lattice, sigma } => lattice_checks(lattice, sigma, settings, report),
        Backend::Presentation(pres) => presentation_checks(pres, settings, report),
        Backend::Gonal(ring) => gonal_checks(ring, settings, report),
    }
    Ok(())
}

fn lattice_checks(lattice: &PolarizedLattice, sigma: &SymplecticEndo, settings: &Settings, report: &mut Report) {
    report.value("genus", lattice.genus());
    report.value("order n", sigma.order());
    let s = sigma.matrix_q();
    report.check(Check::new("R(sigma) = sigma^-1", lattice.rosati(&s) == sigma.inverse().to_q()));
    report.check(Check::new("R(R(sigma)) = sigma", lattice.rosati(&lattice.rosati(&s)) == s));
    let phi = sigma.norm_element().to_q();
    report.check(Check::new("R(Phi_n(sigma)) = Phi_n(sigma)", lattice.rosati(&phi) == phi));
    decomposition_checks(lattice, sigma, settings, report);
}

fn decomposition_checks(lattice: &PolarizedLattice, sigma: &SymplecticEndo, settings: &Settings, report: &mut Report) {
    let cov = match fixed_part_decomposition(lattice, sigma) {
        Ok(c) => c,
        Err(e) => {
            report.check(Check::new("covering decomposition exists", false).with_detail(e.to_string()));
            return;
        }
    };
    report.value("dim Y", cov.y.dim());
    report.value("dim Z", cov.z.dim());
    report.value("e(Y)", &cov.y.exponent);
    report.value("e(Z)", &cov.z.exponent);
    report.checks(norm_identities_check(&cov).checks);
    if lattice.genus() <= settings.genus_cap {
        match cov.shadow_checks() {
            Ok(cs) => report.checks(cs),
            Err(e) => report.check(Check::new("exterior shadow checks", false).with_detail(e.to_string())),
        }
    } else {
        report.check(Check::not_computed("exterior shadow checks", "genus above --genus-cap"));
    }
    for n in cov.notes() {
        report.note(n);
    }
}

fn presentation_checks(pres: &Presentation, settings: &Settings, report: &mut Report) {
    report.value("dimension d", pres.dim());
    report.value("total dimension", pres.total_dim());
    report.value(
        "Fourier degree",
        pres.fourier().map_or_else(|| "none".to_string(), |f| f.degree().to_string()),
    );
    let options = AxiomOptions {
        seed: settings.audit_seed,
        ..AxiomOptions::default()
    };
    report.checks(axiom_check(pres, &options).checks);
}

pub fn gonal_expected_dim(ring: &GonalRing) -> usize {
    let d = ring.params.d as usize;
    match ring.params.k {
        None => d + 1,
        Some(k) => (0..=k as usize).map(|b| d - 5 * b + 1).sum(),
    }
}

fn gonal_checks(ring: &GonalRing, settings: &Settings, report: &mut Report) {
    report.value("d", ring.params.d);
    report.value("gonality", ring.params.gonality);
    report.value("k", ring.params.k.map_or_else(|| "-".to_string(), |k| k.to_string()));
    report.value("chi", &ring.params.chi);
    let expected = gonal_expected_dim(ring);
    report.check(
        Check::new("dimension matches the monomial count", ring.dim() == expected)
            .with_detail(format!("dim {}, expected {expected}", ring.dim())),
    );
    report.check(index_map_check(ring));
    presentation_checks(&ring.presentation, settings, report);
    for n in &ring.notes {
        report.note(n.clone());
    }
}

// closure

pub struct ClosureArgs<'a> {
    pub seeds: &'a [String],
    pub pushers: &'a [String],
    pub adjoin_unit: bool,
}

pub fn closure(model: &Model, args: &ClosureArgs<'_>, settings: &Settings, report: &mut Report) -> Outcome {
    match &model.backend {
        Backend::Exterior { genus } => exterior_closure(model, *genus, args, settings, report),
        Backend::Lattice { lattice, sigma } => lattice_closure(model, lattice, sigma, args, settings, report),
        Backend::Presentation(pres) => presentation_closure(model, pres, args, settings, report),
        Backend::Gonal(ring) => presentation_closure(model, &ring.presentation, args, settings, report),
    }
}

fn exterior_pushers(genus: usize, names: &[String]) -> Result<Vec<ClosureMap<'static>>, InputError> {
    names
        .iter()
        .map(|n| match n.as_str() {
            "minus" => Ok(ClosureMap::unary(move |x: &SparseVec| ExtClass::from_sparse(genus, x).minus_star().to_sparse())),
            "F" => Ok(ClosureMap::unary(move |x: &SparseVec| fourier(&ExtClass::from_sparse(genus, x)).to_sparse())),
            other => Err(InputError(format!("unknown operator '{other}' (exterior models accept F, minus)"))),
        })
        .collect()
}

fn exterior_closure(model: &Model, genus: usize, args: &ClosureArgs<'_>, settings: &Settings, report: &mut Report) -> Outcome {
    cap(genus, settings)?;
    if !args.adjoin_unit {
        return Err(InputError("exterior closures always contain the unit".to_string()));
    }
    let ev = ExteriorEval {
        genus,
        classes: &model.classes,
        depth: 0,
    };
    let seeds = args.seeds.iter().map(|s| ev.eval(s)).collect::<Result<Vec<_>, _>>()?;
    let extra = exterior_pushers(genus, args.pushers)?;
    let options = ShadowOptions {
        fourier: false,
        ..ShadowOptions::default()
    };
    let basis = shadow_closure(genus, &seeds, &options, extra);
    report.value("genus", genus);
    report.value("seeds", seeds.len());
    report.value("closure dimension", basis.dim());
    report.table("dimension by cohomological degree", &["degree", "dim"], degree_table(genus, &basis));
    report.note("the unit [X] is always adjoined");
    Ok(())
}

fn lattice_closure(
    model: &Model,
    lattice: &PolarizedLattice,
    sigma: &SymplecticEndo,
    args: &ClosureArgs<'_>,
    settings: &Settings,
    report: &mut Report,
) -> Outcome {
    let g = lattice.genus();
    cap(g, settings)?;
    if !args.adjoin_unit {
        return Err(InputError("exterior closures always contain the unit".to_string()));
    }
    let base = GroupShadow::cyclic(lattice, sigma).map_err(input)?;
    let group = base.group().clone();
    let mut pi = base.elements().to_vec();
    let ev = GroupEval { group: &group };
    for p in args.pushers {
        let elt = parse_and_evaluate(p, &ev).map_err(|e| InputError(format!("in pusher '{p}': {e}")))?;
        if !pi.contains(&elt) {
            pi.push(elt);
        }
    }
    let shadow = GroupShadow::with_elements(g, group, pi).map_err(input)?;
    let ev = ExteriorEval {
        genus: g,
        classes: &model.classes,
        depth: 0,
    };
    let extra = args.seeds.iter().map(|s| ev.eval(s)).collect::<Result<Vec<_>, _>>()?;
    let closure = shadow.closure_with(&extra).map_err(input)?;
    let algebra = shadow.pullback_algebra().map_err(input)?;
    report.value("genus", g);
    report.value("order n", sigma.order());
    report.value("Pi", shadow.labels().join(", "));
    report.value("closure dimension", closure.dim());
    report.value("pullback algebra dimension", algebra.dim());
    report.table("dimension by cohomological degree", &["degree", "dim"], degree_table(g, &closure));
    report.check(
        Check::new("closure of {pi_* C} = algebra generated by {pi^* theta}", closure == algebra)
            .with_detail(format!("{} vs {}", closure.dim(), algebra.dim())),
    );
    let audit = shadow.audit(&closure, settings.audit_seed, AUDIT_SAMPLES).map_err(input)?;
    report.check(
        Check::new(format!("audit with {AUDIT_SAMPLES} random pi adds no dimension"), audit.stable())
            .with_detail(format!("seed {}, added {}", settings.audit_seed, audit.added_dimension)),
    );
    match fixed_part_decomposition(lattice, sigma) {
        Ok(cov) => report.checks(restriction_checks(&cov, &closure).map_err(input)?),
        Err(e) => report.check(Check::not_computed("restriction to Y and Z", e.to_string())),
    }
    report.note("the unit [X] is always adjoined");
    Ok(())
}

fn presentation_pushers<'a>(pres: &'a Presentation, names: &[String]) -> Result<Vec<LinearOperator<'a>>, InputError> {
    names
        .iter()
        .map(|n| -> Result<LinearOperator<'a>, InputError> {
            match n.as_str() {
                "minus" => Ok(Box::new(move |x: &SparseVec| pres.minus_star_vec(x))),
                "F" | "Finv" if !pres.has_fourier() => Err(InputError("model has no Fourier operator".to_string())),
                "F" => Ok(Box::new(move |x: &SparseVec| pres.fourier_vec(x).expect("Fourier operator present"))),
                "Finv" => Ok(Box::new(move |x: &SparseVec| pres.fourier_inverse_vec(x).expect("Fourier operator present"))),
                other => {
                    let k = other
                        .strip_prefix("hom:")
                        .and_then(|k| k.parse::<i64>().ok())
                        .ok_or_else(|| InputError(format!("unknown operator '{other}' (use minus, F, Finv, hom:K)")))?;
                    Ok(Box::new(move |x: &SparseVec| pres.homothety_vec(x, k)))
                }
            }
        })
        .collect()
}

fn presentation_closure(model: &Model, pres: &Presentation, args: &ClosureArgs<'_>, settings: &Settings, report: &mut Report) -> Outcome {
    let ev = PresentationEval {
        pres,
        classes: &model.classes,
        depth: 0,
    };
    let seeds = args.seeds.iter().map(|s| ev.eval(s)).collect::<Result<Vec<_>, _>>()?;
    let pushers = presentation_pushers(pres, args.pushers)?;
    let options = ClosureOptions {
        adjoin_unit: args.adjoin_unit,
        pontryagin: pres.has_fourier(),
        projections: true,
    };
    if !pres.has_fourier() {
        report.note("no Fourier operator: closure uses the intersection product and projections only");
    }
    let out = taut_closure(pres, &seeds, &pushers, &options).map_err(input)?;
    report.value("seeds", seeds.len());
    report.value("closure dimension", out.basis.dim());
    report.value("unit adjoined", out.unit_adjoined);
    report.table("closure by bidegree", &["p", "s", "dim"], bidegree_rows(&subspace_hilbert_function(pres, &out.basis)));
    if out.basis.contains(pres.polarization_vector()) && pres.has_fourier() && out.unit_adjoined {
        if let Ok(c) = stability_conditions(pres, &out.basis) {
            report.check(Check::new("stability conditions agree on the closure", c.agree()).with_detail(format!(
                "T*T in T: {}, F(T) in T: {}, FF(T) in F(T): {}, xi F(T) in F(T): {}",
                c.pontryagin_closed, c.fourier_stable, c.double_fourier_stable, c.polarization_stable
            )));
        }
    }
    let _ = settings;
    Ok(())
}

// decompose

pub fn decompose(model: &Model, settings: &Settings, report: &mut Report) -> Outcome {
    let Backend::Lattice { lattice, sigma } = &model.backend else {
        return Err(InputError(format!("decompose needs a lattice model, got '{}'", model.kind.as_str())));
    };
    report.value("genus", lattice.genus());
    report.value("order n", sigma.order());
    let cov = match fixed_part_decomposition(lattice, sigma) {
        Ok(c) => c,
        Err(e) => {
            report.check(Check::new("covering decomposition exists", false).with_detail(e.to_string()));
            return Ok(());
        }
    };
    let row = |name: &str, sub: &taut_core::lattice::SubvarietyData| {
        vec![
            name.to_string(),
            sub.dim().to_string(),
            sub.divisors.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
            sub.exponent.to_string(),
            sub.euler_char().to_string(),
        ]
    };
    report.table(
        "subvarieties",
        &["", "dim", "divisors", "exponent", "chi"],
        vec![row("Y", &cov.y), row("Z", &cov.z)],
    );
    report.value("quotient genus", cov.quotient_genus());
    report.checks(norm_identities_check(&cov).checks);
    if lattice.genus() <= settings.genus_cap {
        report.checks(cov.shadow_checks().map_err(input)?);
    } else {
        report.check(Check::not_computed("exterior shadow checks", "genus above --genus-cap"));
    }
    for n in cov.notes() {
        report.note(n);
    }
    Ok(())
}

// hilbert

pub fn hilbert(model: &Model, settings: &Settings, report: &mut Report) -> Outcome {
    match &model.backend {
        Backend::Exterior { genus } => {
            cap(*genus, settings)?;
            let full = SubspaceBasis::full(ExtClass::ambient_dim(*genus));
            report.value("total dimension", full.dim());
            report.table("dimension by cohomological degree", &["degree", "dim"], degree_table(*genus, &full));
            Ok(())
        }
        Backend::Lattice { .. } => Err(InputError("hilbert needs an exterior, presentation or gonal-preset model".to_string())),
        Backend::Presentation(pres) => {
            report.value("total dimension", pres.total_dim());
            report.table("dimension by bidegree", &["p", "s", "dim"], bidegree_rows(&pres.hilbert_function()));
            Ok(())
        }
        Backend::Gonal(ring) => {
            report.value("total dimension", ring.dim());
            report.table(
                "dimension by bidegree",
                &["p", "s", "dim"],
                bidegree_rows(&taut_core::gonal::hilbert_function(ring)),
            );
            Ok(())
        }
    }
}

// fourier

pub fn fourier_cmd(model: &Model, class: &str, settings: &Settings, report: &mut Report) -> Outcome {
    match &model.backend {
        Backend::Exterior { genus } => {
            cap(*genus, settings)?;
            let ev = ExteriorEval {
                genus: *genus,
                classes: &model.classes,
                depth: 0,
            };
            let x = ev.eval(class)?;
            let fx = fourier(&x);
            report.value("class", &x);
            report.value("F(class)", &fx);
            let rows = fx
                .degrees()
                .into_iter()
                .map(|k| vec![k.to_string(), fx.homogeneous_part(k).to_string()])
                .collect();
            report.table("F(class) by cohomological degree", &["degree", "component"], rows);
            let sign = taut_core::exact::sign_power(*genus as i64);
            report.check(Check::new("F F(class) = (-1)^g (-1)^* class", fourier(&fx) == x.minus_star().scale(&sign)));
            Ok(())
        }
        Backend::Lattice { .. } => Err(InputError("fourier needs an exterior, presentation or gonal-preset model".to_string())),
        Backend::Presentation(_) | Backend::Gonal(_) => {
            let pres = model.presentation().expect("presentation backend");
            let ev = PresentationEval {
                pres,
                classes: &model.classes,
                depth: 0,
            };
            let x = ev.eval(class)?;
            report.value("class", pres.format(&x));
            if !pres.has_fourier() {
                let why = match &model.backend {
                    Backend::Gonal(r) => r.fourier_obstruction.clone().unwrap_or_default(),
                    _ => "no [fourier] section".to_string(),
                };
                report.check(Check::new("Fourier operator present", false).with_detail(why));
                return Ok(());
            }
            let fx = pres.fourier_apply(&x).map_err(input)?;
            report.value("F(class)", pres.format(&fx));
            let rows = pres
                .components(&fx)
                .map_err(input)?
                .into_iter()
                .map(|(b, c)| vec![b.p.to_string(), b.s.to_string(), pres.format(&c)])
                .collect();
            report.table("F(class) by bidegree", &["p", "s", "component"], rows);
            let back = pres.fourier_inverse(&fx).map_err(input)?;
            report.check(Check::new("F^-1 F(class) = class", back == x));
            Ok(())
        }
    }
}

/// Determines the exit status: input problems first, then failed checks.
pub fn exit_code(report: &Report) -> i32 {
    if report.failed() {
        1
    } else {
        0
    }
}
