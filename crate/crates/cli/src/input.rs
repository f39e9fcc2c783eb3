//! JSON input documents: an algebra, a Lie algebra or a space descriptor,
//! with optional bounds.

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::IgnoredAny;
use serde::Deserialize;

use koszulkit_core::exactlin::Rational;
use koszulkit_core::graded::{Generator, TruncationBounds};
use koszulkit_core::presentations::{QuadraticCommPresentation, QuadraticLiePresentation};
use koszulkit_core::spaces::{cohomology_presentation, SpaceDescriptor};

use crate::CliError;

/// What a document describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    Space(SpaceDescriptor),
    Lie(QuadraticLiePresentation),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDocument {
    pub subject: Subject,
    pub bounds: Option<TruncationBounds>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    algebra: Option<RawAlgebra>,
    lie: Option<RawLie>,
    space: Option<RawSpace>,
    bounds: Option<RawBounds>,
    // written by `dual`; tolerated so its output can be read back
    #[allow(dead_code)]
    command: Option<IgnoredAny>,
    #[allow(dead_code)]
    rows: Option<IgnoredAny>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBounds {
    max_weight: u32,
    max_degree: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    name: String,
    degree: u32,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCoef {
    Integer(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMonomialTerm {
    coef: RawCoef,
    monomial: [String; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBracketTerm {
    coef: RawCoef,
    bracket: [String; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    generators: Vec<RawGenerator>,
    #[serde(default)]
    relations: Vec<Vec<RawMonomialTerm>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLie {
    generators: Vec<RawGenerator>,
    #[serde(default)]
    relations: Vec<Vec<RawBracketTerm>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClass {
    degree: u32,
    dim: u64,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum RawSpace {
    Sphere { n: u32 },
    Suspension { homology: Vec<RawClass> },
    #[serde(alias = "loop-space-of")]
    Free { degrees: Vec<u32> },
    Wedge { factors: Vec<RawSpace> },
    Product { factors: Vec<RawSpace> },
    Configuration { n: u32, k: u32 },
    Manifold { degrees: Vec<u32>, q: Vec<Vec<RawCoef>>, m: u32 },
    Algebra { generators: Vec<RawGenerator>, #[serde(default)] relations: Vec<Vec<RawMonomialTerm>> },
}

fn coefficient(c: &RawCoef, field: &str) -> Result<Rational, CliError> {
    match c {
        RawCoef::Integer(n) => Ok(Rational::from_integer(*n)),
        RawCoef::Text(s) => {
            s.trim().parse().map_err(|_| CliError::Schema(format!("{field}: {s:?} is not an integer or p/q rational")))
        }
    }
}

fn generators(raw: &[RawGenerator]) -> Vec<Generator> {
    raw.iter().map(|g| Generator::new(g.name.clone(), g.degree)).collect()
}

/// Relations as `(coefficient, i, j)` terms over named generators.
fn terms<'a>(
    gens: &[Generator],
    relations: impl Iterator<Item = Vec<(&'a RawCoef, &'a [String; 2])>>,
    what: &str,
) -> Result<Vec<Vec<(Rational, usize, usize)>>, CliError> {
    let index = |name: &str, r: usize, t: usize| {
        gens.iter().position(|g| g.name == name).ok_or_else(|| {
            CliError::Schema(format!("{what}.relations[{r}][{t}]: unknown generator {name:?}"))
        })
    };
    relations
        .enumerate()
        .map(|(r, rel)| {
            rel.into_iter()
                .enumerate()
                .map(|(t, (c, [a, b]))| {
                    let coef = coefficient(c, &format!("{what}.relations[{r}][{t}].coef"))?;
                    Ok((coef, index(a, r, t)?, index(b, r, t)?))
                })
                .collect()
        })
        .collect()
}

fn algebra(gens: &[RawGenerator], rels: &[Vec<RawMonomialTerm>], what: &str) -> Result<QuadraticCommPresentation, CliError> {
    let gens = generators(gens);
    let terms = terms(&gens, rels.iter().map(|r| r.iter().map(|t| (&t.coef, &t.monomial)).collect()), what)?;
    Ok(QuadraticCommPresentation::from_terms(gens, terms)?)
}

fn lie(raw: &RawLie) -> Result<QuadraticLiePresentation, CliError> {
    let gens = generators(&raw.generators);
    let terms = terms(&gens, raw.relations.iter().map(|r| r.iter().map(|t| (&t.coef, &t.bracket)).collect()), "lie")?;
    Ok(QuadraticLiePresentation::from_bracket_terms(gens, terms)?)
}

fn space(raw: &RawSpace, path: &str) -> Result<SpaceDescriptor, CliError> {
    Ok(match raw {
        RawSpace::Sphere { n } => SpaceDescriptor::Sphere(*n),
        RawSpace::Suspension { homology } => {
            let mut dims = BTreeMap::new();
            for c in homology {
                *dims.entry(c.degree).or_insert(0) += c.dim;
            }
            dims.retain(|_, n| *n > 0);
            SpaceDescriptor::Suspension(dims)
        }
        RawSpace::Free { degrees } => SpaceDescriptor::LoopSpaceOf(degrees.clone()),
        RawSpace::Wedge { factors } => SpaceDescriptor::Wedge(factor_list(factors, path)?),
        RawSpace::Product { factors } => SpaceDescriptor::Product(factor_list(factors, path)?),
        RawSpace::Configuration { n, k } => SpaceDescriptor::ConfigurationSpace { n: *n, k: *k },
        RawSpace::Manifold { degrees, q, m } => {
            let q = q
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter().enumerate().map(|(j, c)| coefficient(c, &format!("{path}.q[{i}][{j}]"))).collect()
                })
                .collect::<Result<_, _>>()?;
            SpaceDescriptor::HighlyConnectedManifold { degrees: degrees.clone(), q, m: *m }
        }
        RawSpace::Algebra { generators, relations } => SpaceDescriptor::Presented(algebra(generators, relations, path)?),
    })
}

fn factor_list(factors: &[RawSpace], path: &str) -> Result<Vec<SpaceDescriptor>, CliError> {
    factors.iter().enumerate().map(|(i, f)| space(f, &format!("{path}.factors[{i}]"))).collect()
}

/// Parses and validates a document. Space descriptors are checked by
/// building their cohomology presentation.
pub fn parse_input(text: &str) -> Result<InputDocument, CliError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| match e.classify() {
        // well-formed JSON with the wrong shape
        serde_json::error::Category::Data => CliError::Schema(e.to_string()),
        _ => CliError::Syntax(e.to_string()),
    })?;
    let given = [raw.algebra.is_some(), raw.lie.is_some(), raw.space.is_some()].iter().filter(|&&b| b).count();
    if given != 1 {
        return Err(CliError::Schema("document needs exactly one of \"algebra\", \"lie\", \"space\"".into()));
    }
    let bounds = match raw.bounds {
        Some(b) => Some(
            TruncationBounds::new(b.max_weight, b.max_degree).map_err(|e| CliError::Schema(format!("bounds: {e}")))?,
        ),
        None => None,
    };
    let subject = if let Some(a) = &raw.algebra {
        Subject::Space(SpaceDescriptor::Presented(algebra(&a.generators, &a.relations, "algebra")?))
    } else if let Some(l) = &raw.lie {
        Subject::Lie(lie(l)?)
    } else {
        let s = space(raw.space.as_ref().expect("counted above"), "space")?;
        cohomology_presentation(&s)?;
        Subject::Space(s)
    };
    Ok(InputDocument { subject, bounds })
}

pub fn read_input(path: &Path) -> Result<InputDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_input(&text)
}
