//! Dispatch from a parsed document to the core computations.

use serde_json::{json, Value};

use koszulkit_core::exactlin::Rational;
use koszulkit_core::graded::TruncationBounds;
use koszulkit_core::koszul::{dual_comm, dual_lie, koszul_check, koszul_complex_check, AcyclicityVerdict, KoszulVerdict};
use koszulkit_core::presentations::{
    comm_algebra_dims, lie_algebra_dims, QuadraticCommPresentation, QuadraticLiePresentation,
};
use koszulkit_core::series::{dims_to_series, koszul_inversion, rational_closed_form, PoincareSeries};
use koszulkit_core::spaces::{cohomology_presentation, homotopy_lie, loop_homology, SpaceDescriptor};

use crate::input::{InputDocument, Subject};
use crate::output::{integer, OutputTable, Table};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Dual,
    Check,
    Pi,
    Loop,
    Series,
    RationalForm,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Dual => "dual",
            Command::Check => "check",
            Command::Pi => "pi",
            Command::Loop => "loop",
            Command::Series => "series",
            Command::RationalForm => "rational-form",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flags {
    pub max_weight: Option<u32>,
    pub max_degree: Option<u32>,
    /// Loop order for `loop`.
    pub n: u32,
    /// `check`: also run the Koszul-complex acyclicity test.
    pub cross_check: bool,
    /// `pi`: report degrees of `π_*(X)` instead of `π_*(ΩX)`.
    pub homotopy_degrees: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Flags { max_weight: None, max_degree: None, n: 1, cross_check: false, homotopy_degrees: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: OutputTable,
    pub exit_code: i32,
}

/// Flags override the document, which overrides the defaults.
pub fn effective_bounds(doc: &InputDocument, flags: &Flags) -> Result<TruncationBounds, CliError> {
    let base = doc.bounds.unwrap_or(TruncationBounds::DEFAULT);
    TruncationBounds::new(flags.max_weight.unwrap_or(base.max_weight), flags.max_degree.unwrap_or(base.max_degree))
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn coef(c: &Rational) -> Value {
    Value::String(c.to_string())
}

fn generators_json(gens: &[koszulkit_core::graded::Generator]) -> Value {
    gens.iter().map(|g| json!({"name": g.name, "degree": g.degree})).collect()
}

pub fn algebra_json(p: &QuadraticCommPresentation) -> Value {
    let names = |i: usize| p.generators()[i].name.clone();
    let relations: Vec<Value> = p
        .relations()
        .iter()
        .map(|r| r.iter().map(|(pair, c)| json!({"coef": coef(c), "monomial": [names(pair.0), names(pair.1)]})).collect())
        .collect();
    json!({"generators": generators_json(p.generators()), "relations": relations})
}

/// Canonical coordinates written as brackets; a square coordinate `c` is
/// the bracket term `c/2 [a, a]`.
pub fn lie_json(l: &QuadraticLiePresentation) -> Value {
    let names = |i: usize| l.generators()[i].name.clone();
    let half = Rational::new(1, 2);
    let relations: Vec<Value> = l
        .relations()
        .iter()
        .map(|r| {
            r.iter()
                .map(|(pair, c)| {
                    let c = if pair.0 == pair.1 { c * &half } else { c.clone() };
                    json!({"coef": coef(&c), "bracket": [names(pair.0), names(pair.1)]})
                })
                .collect()
        })
        .collect();
    json!({"generators": generators_json(l.generators()), "relations": relations})
}

/// The space a document describes; a Lie document stands for the space
/// whose cohomology is its Koszul dual.
fn as_space(doc: &InputDocument) -> SpaceDescriptor {
    match &doc.subject {
        Subject::Space(s) => s.clone(),
        Subject::Lie(l) => SpaceDescriptor::Presented(dual_comm(l)),
    }
}

fn verdict_json(v: &KoszulVerdict) -> Value {
    match v {
        KoszulVerdict::KoszulUpTo(_) => json!({"verdict": "KoszulUpTo"}),
        KoszulVerdict::NotKoszul { witness: (s, w), degree, dim } => {
            json!({"verdict": "NotKoszul", "s": s, "weight": w, "degree": degree, "dim": dim})
        }
    }
}

fn acyclicity_json(v: &AcyclicityVerdict) -> Value {
    match v {
        AcyclicityVerdict::AcyclicUpTo(_) => json!({"verdict": "AcyclicUpTo"}),
        AcyclicityVerdict::NotAcyclic { weight, s, degree, dim } => {
            json!({"verdict": "NotAcyclic", "s": s, "weight": weight, "degree": degree, "dim": dim})
        }
    }
}

fn series_table(name: &str, s: &PoincareSeries) -> Table {
    let mut t = Table::new(name, &["weight", "degree", "coefficient"]);
    for (bd, c) in s.iter() {
        t.rows.push(vec![bd.weight.into(), bd.degree.into(), integer(c)]);
    }
    t
}

fn cohomology_series(space: &SpaceDescriptor, bounds: TruncationBounds) -> Result<PoincareSeries, CliError> {
    let p = cohomology_presentation(space)?;
    Ok(dims_to_series(&comm_algebra_dims(&p, bounds), false))
}

pub fn run_command(cmd: Command, doc: &InputDocument, flags: &Flags) -> Result<Outcome, CliError> {
    let bounds = effective_bounds(doc, flags)?;
    let mut out = OutputTable::new(cmd.name(), bounds);
    let mut exit_code = 0;
    match cmd {
        Command::Dual => match &doc.subject {
            Subject::Space(s) => {
                let lie = dual_lie(&cohomology_presentation(s)?);
                out.meta("lie", lie_json(&lie));
                out.table(Table::from_dims("rows", &lie_algebra_dims(&lie, bounds), "degree", 0));
            }
            Subject::Lie(l) => {
                let algebra = dual_comm(l);
                out.meta("algebra", algebra_json(&algebra));
                out.table(Table::from_dims("rows", &comm_algebra_dims(&algebra, bounds), "degree", 0));
            }
        },
        Command::Check => {
            let p = cohomology_presentation(&as_space(doc))?;
            let verdict = koszul_check(&p, bounds);
            out.meta("koszul", verdict_json(&verdict));
            let mut ok = verdict.is_koszul();
            if flags.cross_check {
                let complex = koszul_complex_check(&p, bounds);
                ok &= complex.is_acyclic();
                out.meta("complex", acyclicity_json(&complex));
            }
            let mut rows = Table::new("rows", &["s", "weight", "degree", "dim"]);
            if let KoszulVerdict::NotKoszul { witness: (s, w), degree, dim } = verdict {
                rows.rows.push(vec![s.into(), w.into(), degree.into(), dim.into()]);
            }
            out.table(rows);
            if !ok {
                exit_code = 1;
            }
        }
        Command::Pi => {
            let h = homotopy_lie(&as_space(doc), bounds)?;
            out.meta("koszul", verdict_json(&h.verdict));
            let (column, shift) = if flags.homotopy_degrees { ("homotopy_degree", 1) } else { ("degree", 0) };
            out.table(Table::from_dims("rows", &h.dims, column, shift));
        }
        Command::Loop => {
            let dims = loop_homology(&as_space(doc), flags.n, bounds)?;
            out.meta("n", flags.n.into());
            out.table(Table::from_dims("rows", &dims, "degree", 0));
        }
        Command::Series => {
            let a = cohomology_series(&as_space(doc), bounds)?;
            let inverse = koszul_inversion(&a, bounds)?;
            out.meta("cohomology_series", a.to_string().into());
            out.table(series_table("cohomology", &a));
            out.table(series_table("loop_homology", &inverse));
        }
        Command::RationalForm => {
            let a = cohomology_series(&as_space(doc), bounds)?;
            let form = rational_closed_form(&a)?;
            out.meta("closed_form", form.to_string().into());
            out.meta("numerator", form.numerator.iter().map(|&c| integer(c)).collect());
            out.meta("denominator", form.denominator.iter().map(|&c| integer(c)).collect());
        }
    }
    Ok(Outcome { output: out, exit_code })
}
