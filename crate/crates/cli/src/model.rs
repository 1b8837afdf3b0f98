//! Model files: TOML documents with a `kind` header and kind-specific tables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Deserialize;
use taut_core::bigraded::{exponential_fourier, Bidegree, Generator, Presentation};
use taut_core::exact::{parse_rational, IntMatrix, QMatrix};
use taut_core::gonal::{build_gonal, GonalModelParams, GonalRing};
use taut_core::lattice::{block_example, Block, PolarizedLattice, SymplecticEndo};

#[derive(Debug)]
pub enum ModelError {
    Syntax { line: usize, column: usize, message: String },
    Construction(String),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::Syntax { line, column, message } => write!(f, "parse error at line {line}, column {column}: {message}"),
            ModelError::Construction(m) => write!(f, "construction error: {m}"),
        }
    }
}

impl std::error::Error for ModelError {}

fn construction(e: impl fmt::Display) -> ModelError {
    ModelError::Construction(e.to_string())
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Exterior,
    Lattice,
    Presentation,
    GonalPreset,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Exterior => "exterior",
            Kind::Lattice => "lattice",
            Kind::Presentation => "presentation",
            Kind::GonalPreset => "gonal-preset",
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    pub name: Option<String>,
    pub description: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExteriorSection {
    genus: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeSection {
    gram: Option<Vec<Vec<i64>>>,
    sigma: Option<Vec<Vec<i64>>>,
    blocks: Option<Vec<String>>,
    order: Option<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorSpec {
    name: String,
    p: i32,
    s: i32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationSection {
    dim: u32,
    generators: Vec<GeneratorSpec>,
    #[serde(default)]
    relations: Vec<String>,
    polarization: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
enum FourierMode {
    Exponential,
    Blocks,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FourierSection {
    mode: FourierMode,
    chi: Option<i64>,
    degree: Option<i64>,
    #[serde(default)]
    blocks: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GonalSection {
    d: u32,
    gonality: u32,
    k: Option<u32>,
    chi: Option<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    kind: Kind,
    #[serde(default)]
    meta: Meta,
    exterior: Option<ExteriorSection>,
    lattice: Option<LatticeSection>,
    presentation: Option<PresentationSection>,
    fourier: Option<FourierSection>,
    gonal: Option<GonalSection>,
    #[serde(default)]
    classes: BTreeMap<String, String>,
}

#[derive(Debug)]
pub enum Backend {
    Exterior { genus: usize },
    Lattice { lattice: PolarizedLattice, sigma: SymplecticEndo },
    Presentation(Presentation),
    Gonal(GonalRing),
}

#[derive(Debug)]
pub struct Model {
    pub kind: Kind,
    pub meta: Meta,
    pub backend: Backend,
    /// Named class expressions usable as atoms.
    pub classes: BTreeMap<String, String>,
}

impl Model {
    pub fn name(&self) -> String {
        self.meta.name.clone().unwrap_or_else(|| self.kind.as_str().to_string())
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        match &self.backend {
            Backend::Presentation(p) => Some(p),
            Backend::Gonal(r) => Some(&r.presentation),
            _ => None,
        }
    }
}

fn line_column(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

pub fn parse_model(src: &str) -> Result<Model, ModelError> {
    let raw: RawModel = toml::from_str(src).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| line_column(src, s.start));
        ModelError::Syntax {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;
    let expect_only = |present: &[(&str, bool)]| -> Result<(), ModelError> {
        for (name, is_set) in present {
            if *is_set {
                return Err(ModelError::Construction(format!(
                    "section [{name}] is not used by kind '{}'",
                    raw.kind.as_str()
                )));
            }
        }
        Ok(())
    };
    let backend = match raw.kind {
        Kind::Exterior => {
            expect_only(&[
                ("lattice", raw.lattice.is_some()),
                ("presentation", raw.presentation.is_some()),
                ("fourier", raw.fourier.is_some()),
                ("gonal", raw.gonal.is_some()),
            ])?;
            let section = raw.exterior.as_ref().ok_or_else(|| construction("missing [exterior] section"))?;
            Backend::Exterior { genus: section.genus }
        }
        Kind::Lattice => {
            expect_only(&[
                ("exterior", raw.exterior.is_some()),
                ("presentation", raw.presentation.is_some()),
                ("fourier", raw.fourier.is_some()),
                ("gonal", raw.gonal.is_some()),
            ])?;
            let section = raw.lattice.as_ref().ok_or_else(|| construction("missing [lattice] section"))?;
            build_lattice(section)?
        }
        Kind::Presentation => {
            expect_only(&[
                ("exterior", raw.exterior.is_some()),
                ("lattice", raw.lattice.is_some()),
                ("gonal", raw.gonal.is_some()),
            ])?;
            let section = raw.presentation.as_ref().ok_or_else(|| construction("missing [presentation] section"))?;
            Backend::Presentation(build_presentation(section, raw.fourier.as_ref())?)
        }
        Kind::GonalPreset => {
            expect_only(&[
                ("exterior", raw.exterior.is_some()),
                ("lattice", raw.lattice.is_some()),
                ("presentation", raw.presentation.is_some()),
                ("fourier", raw.fourier.is_some()),
            ])?;
            let g = raw.gonal.as_ref().ok_or_else(|| construction("missing [gonal] section"))?;
            let mut params = GonalModelParams::new(g.d, g.gonality, g.k);
            if let Some(chi) = g.chi {
                params.chi = BigInt::from(chi);
            }
            Backend::Gonal(build_gonal(&params).map_err(construction)?)
        }
    };
    Ok(Model {
        kind: raw.kind,
        meta: raw.meta,
        backend,
        classes: raw.classes,
    })
}

fn int_matrix(rows: &[Vec<i64>], what: &str) -> Result<IntMatrix, ModelError> {
    IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
        .map_err(|_| construction(format!("{what} has rows of different lengths")))
}

fn build_lattice(section: &LatticeSection) -> Result<Backend, ModelError> {
    match (&section.sigma, &section.blocks) {
        (Some(_), Some(_)) => Err(construction("give either sigma or blocks, not both")),
        (None, None) => Err(construction("[lattice] needs sigma or blocks")),
        (None, Some(blocks)) => {
            if section.gram.is_some() {
                return Err(construction("blocks always use the standard form; drop gram"));
            }
            let blocks = blocks.iter().map(|b| b.parse::<Block>()).collect::<Result<Vec<_>, _>>().map_err(construction)?;
            let ex = block_example(&blocks).map_err(construction)?;
            if let Some(order) = section.order {
                SymplecticEndo::new(&ex.lattice, ex.sigma.matrix().clone(), order).map_err(construction)?;
            }
            Ok(Backend::Lattice {
                lattice: ex.lattice,
                sigma: ex.sigma,
            })
        }
        (Some(sigma), None) => {
            let sigma = int_matrix(sigma, "sigma")?;
            let lattice = match &section.gram {
                Some(g) => PolarizedLattice::new(int_matrix(g, "gram")?).map_err(construction)?,
                None => {
                    if sigma.rows() % 2 != 0 {
                        return Err(construction("sigma must have even size"));
                    }
                    PolarizedLattice::standard(sigma.rows() / 2)
                }
            };
            let sigma = match section.order {
                Some(order) => SymplecticEndo::new(&lattice, sigma, order),
                None => SymplecticEndo::find_order(&lattice, sigma, 60),
            }
            .map_err(construction)?;
            Ok(Backend::Lattice { lattice, sigma })
        }
    }
}

/// Parses `eta^2*mu` into an exponent vector over the generators.
pub fn parse_monomial(src: &str, generators: &[Generator]) -> Result<Vec<u32>, String> {
    let mut exps = vec![0u32; generators.len()];
    let src = src.trim();
    if src == "1" {
        return Ok(exps);
    }
    for factor in src.split('*') {
        let factor = factor.trim();
        let (name, power) = match factor.split_once('^') {
            Some((n, p)) => (n.trim(), p.trim().parse::<u32>().map_err(|_| format!("bad exponent in '{factor}'"))?),
            None => (factor, 1),
        };
        let i = generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| format!("unknown generator '{name}'"))?;
        exps[i] += power;
    }
    Ok(exps)
}

fn parse_bidegree(key: &str) -> Result<Bidegree, String> {
    let inner = key.trim().trim_start_matches('(').trim_end_matches(')');
    let (p, s) = inner.split_once(',').ok_or_else(|| format!("block key '{key}' is not of the form (p,s)"))?;
    let p = p.trim().parse().map_err(|_| format!("bad p in '{key}'"))?;
    let s = s.trim().parse().map_err(|_| format!("bad s in '{key}'"))?;
    Ok(Bidegree::new(p, s))
}

fn build_presentation(section: &PresentationSection, fourier: Option<&FourierSection>) -> Result<Presentation, ModelError> {
    let generators: Vec<Generator> = section.generators.iter().map(|g| Generator::new(g.name.clone(), g.p, g.s)).collect();
    let relations = section
        .relations
        .iter()
        .map(|r| parse_monomial(r, &generators))
        .collect::<Result<Vec<_>, _>>()
        .map_err(construction)?;
    let polarization = section
        .polarization
        .iter()
        .map(|(m, c)| Ok((parse_monomial(m, &generators)?, parse_rational(c).map_err(|e| e.to_string())?)))
        .collect::<Result<Vec<_>, String>>()
        .map_err(construction)?;
    let pres = Presentation::monomial(section.dim, generators, relations, &polarization).map_err(construction)?;
    let Some(f) = fourier else {
        return Ok(pres);
    };
    match f.mode {
        FourierMode::Exponential => {
            if f.degree.is_some() || !f.blocks.is_empty() {
                return Err(construction("exponential mode takes only chi"));
            }
            let chi = BigInt::from(f.chi.unwrap_or(1));
            let (degree, images) = exponential_fourier(&pres, &chi).map_err(construction)?;
            pres.with_fourier_images(degree, images).map_err(construction)
        }
        FourierMode::Blocks => {
            if f.chi.is_some() {
                return Err(construction("blocks mode takes degree and blocks, not chi"));
            }
            let degree = f.degree.ok_or_else(|| construction("blocks mode needs degree"))?;
            let mut blocks = BTreeMap::new();
            for (key, rows) in &f.blocks {
                let b = parse_bidegree(key).map_err(construction)?;
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(construction)?;
                let m = if rows.is_empty() {
                    QMatrix::zeros(0, 0)
                } else {
                    QMatrix::from_rows(rows).map_err(construction)?
                };
                blocks.insert(b, m);
            }
            pres.with_fourier_blocks(BigInt::from(degree), &blocks).map_err(construction)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exterior_model() {
        let m = parse_model("kind = \"exterior\"\n[exterior]\ngenus = 2\n").unwrap();
        assert!(matches!(m.backend, Backend::Exterior { genus: 2 }));
        assert_eq!(m.name(), "exterior");
    }

    #[test]
    fn unknown_keys_report_position() {
        let err = parse_model("kind = \"exterior\"\n[exterior]\ngenus = 2\ncolour = 1\n").unwrap_err();
        match err {
            ModelError::Syntax { line, column, .. } => assert_eq!((line, column), (4, 1)),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn lattice_from_blocks_and_matrices() {
        let m = parse_model("kind = \"lattice\"\n[lattice]\nblocks = [\"shift2\"]\n").unwrap();
        let Backend::Lattice { sigma, .. } = m.backend else { panic!() };
        assert_eq!(sigma.order(), 2);
        let bad = "kind = \"lattice\"\n[lattice]\nsigma = [[1, 1], [0, 2]]\norder = 2\n";
        let err = parse_model(bad).unwrap_err().to_string();
        assert!(err.contains("construction error"), "{err}");
    }

    #[test]
    fn presentation_with_fourier() {
        let src = r#"
kind = "presentation"
[presentation]
dim = 3
generators = [{ name = "eta", p = 1, s = 0 }]
relations = ["eta^4"]
polarization = { eta = "1" }
[fourier]
mode = "exponential"
chi = 2
"#;
        let m = parse_model(src).unwrap();
        let pres = m.presentation().unwrap();
        assert_eq!(pres.total_dim(), 4);
        assert_eq!(pres.fourier().unwrap().degree(), &taut_core::exact::int(4));
    }

    #[test]
    fn explicit_blocks() {
        let src = r#"
kind = "presentation"
[presentation]
dim = 1
generators = [{ name = "t", p = 1, s = 0 }]
relations = ["t^2"]
polarization = { t = "1" }
[fourier]
mode = "blocks"
degree = 1
blocks = { "(0,0)" = [["1"]], "(1,0)" = [["-1"]] }
"#;
        assert!(parse_model(src).unwrap().presentation().unwrap().has_fourier());
    }

    #[test]
    fn monomials() {
        let gens = vec![Generator::new("eta", 1, 0), Generator::new("mu", 3, 2)];
        assert_eq!(parse_monomial("eta^2*mu", &gens).unwrap(), vec![2, 1]);
        assert_eq!(parse_monomial("1", &gens).unwrap(), vec![0, 0]);
        assert!(parse_monomial("nu", &gens).is_err());
    }
}
