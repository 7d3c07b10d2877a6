//! JSON reports behind the command-line tool.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::abrams::{abrams_complex, check_abrams_conditions, cubical_chain_complex, ConditionReport};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homology::{chain_complex, homology, ChainComplex, HomologyResult};
use crate::model::ConfigurationModel;
use crate::nerve::{collapse_free_faces, SemiSimplicialSet};
use crate::pi1::{abelianization, free_rank, presentation, simplify, Presentation, TwoComplex};
use crate::reduced::{build_reduced, classify_2cells, glued_chain_complex, type_counts, GluedComplex, Tag};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModelOptions {
    pub k: usize,
    pub quotient: bool,
    pub remove_leaves: bool,
    pub collapse: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<(String, i32)>>,
    pub abelianization: Abelianization,
    /// Rank of the fundamental group when the complex is a graph.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_rank: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub fvector: Vec<usize>,
    /// `null` for the empty complex.
    pub dimension: Option<usize>,
    pub euler: i64,
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<u64>>,
    pub components: usize,
    /// `null` unless the complex is connected.
    pub presentation: Option<PresentationReport>,
}

fn to_u64(h: &HomologyResult) -> Result<Vec<Vec<u64>>> {
    h.torsion
        .iter()
        .map(|t| t.iter().map(|x| u64::try_from(x).map_err(|_| Error::InvalidConfig("torsion exceeds 64 bits".into()))).collect())
        .collect()
}

pub fn group_report<C: TwoComplex>(c: &C) -> Result<PresentationReport> {
    let p: Presentation = simplify(&presentation(c)?);
    let (rank, torsion) = abelianization(&p);
    let torsion = torsion.iter().map(|x| u64::try_from(x).unwrap_or(u64::MAX)).collect();
    let free_rank = if c.top_dimension() <= 1 { Some(free_rank(c)?) } else { None };
    Ok(PresentationReport {
        generators: p.generators.clone(),
        relators: p.named_relators(),
        abelianization: Abelianization { rank, torsion },
        free_rank,
    })
}

fn report<C: TwoComplex>(c: &C, cc: &ChainComplex) -> Result<Report> {
    cc.check()?;
    let h = homology(cc)?;
    let fvector = cc.sizes().to_vec();
    let components = h.betti.first().copied().unwrap_or(0);
    Ok(Report {
        dimension: fvector.len().checked_sub(1),
        euler: cc.euler_characteristic(),
        torsion: to_u64(&h)?,
        presentation: if components == 1 { Some(group_report(c)?) } else { None },
        betti: h.betti,
        components,
        fvector,
    })
}

pub fn complex_report(s: &SemiSimplicialSet) -> Result<Report> {
    report(s, &chain_complex(s))
}

pub fn glued_report(c: &GluedComplex) -> Result<Report> {
    report(c, &glued_chain_complex(c))
}

/// The model complex selected by the options.
pub fn model_complex(g: &Graph, opts: &ModelOptions) -> Result<SemiSimplicialSet> {
    let g = if opts.remove_leaves { g.remove_leaves() } else { g.clone() };
    let model = ConfigurationModel::new(&g, opts.k)?;
    let s = if opts.quotient { model.unordered()? } else { model.complex().clone() };
    Ok(if opts.collapse { collapse_free_faces(&s) } else { s })
}

pub fn cmd_model(g: &Graph, opts: &ModelOptions) -> Result<Report> {
    complex_report(&model_complex(g, opts)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraidGroupReport {
    pub ordered: PresentationReport,
    pub unordered: PresentationReport,
}

/// Pure and full braid groups as fundamental groups of the ordered and
/// unordered models. Free faces are collapsed first to shorten the
/// presentations.
pub fn cmd_braidgroup(g: &Graph, opts: &ModelOptions) -> Result<BraidGroupReport> {
    let g = if opts.remove_leaves { g.remove_leaves() } else { g.clone() };
    let model = ConfigurationModel::new(&g, opts.k)?;
    let ordered = collapse_free_faces(model.complex());
    let unordered = collapse_free_faces(&model.unordered()?);
    Ok(BraidGroupReport { ordered: group_report(&ordered)?, unordered: group_report(&unordered)? })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Side {
    pub fvector: Vec<usize>,
    pub betti: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompareReport {
    pub model: Side,
    pub abrams: Side,
    pub conditions: ConditionReport,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Betti vectors agree after padding with zeros.
pub fn betti_agree(a: &[usize], b: &[usize]) -> bool {
    (0..a.len().max(b.len())).all(|i| a.get(i).copied().unwrap_or(0) == b.get(i).copied().unwrap_or(0))
}

/// The nerve model of `g` against the Abrams complex of `g` subdivided
/// `n` times.
pub fn cmd_compare(g: &Graph, opts: &ModelOptions, n: usize) -> Result<CompareReport> {
    let fine = g.subdivide(n)?;
    let conditions = check_abrams_conditions(&fine, opts.k)?;
    let a = abrams_complex(&fine, opts.k)?;
    let cc = cubical_chain_complex(&a);
    cc.check()?;
    let abrams = Side { fvector: cc.sizes().to_vec(), betti: homology(&cc)?.betti };
    let s = model_complex(g, &ModelOptions { quotient: false, remove_leaves: false, ..opts.clone() })?;
    let mcc = chain_complex(&s);
    mcc.check()?;
    let model = Side { fvector: mcc.sizes().to_vec(), betti: homology(&mcc)?.betti };
    let matches = betti_agree(&model.betti, &abrams.betti);
    Ok(CompareReport { model, abrams, conditions, matches })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReducedReport {
    #[serde(flatten)]
    pub report: Report,
    pub type_counts: BTreeMap<Tag, usize>,
    pub complex: GluedComplex,
}

pub fn cmd_reduced(g: &Graph, opts: &ModelOptions) -> Result<ReducedReport> {
    if opts.k != 2 {
        return Err(Error::InvalidConfig("the reduced model exists for two points only".into()));
    }
    let g = if opts.remove_leaves { g.remove_leaves() } else { g.clone() };
    let r = build_reduced(&g)?;
    let complex = if opts.quotient { r.complex.quotient()? } else { r.complex };
    Ok(ReducedReport { report: glued_report(&complex)?, type_counts: type_counts(&classify_2cells(&g)?), complex })
}
