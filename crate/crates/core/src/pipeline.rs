//! End-to-end series: spherical conjugacy growth from cyclically shortlex
//! blocks, plus standard, geodesic and conjugacy geodesic growth.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::automata::growth_series;
use crate::graph::{GraphDocument, SimpleGraph, VertexSet};
use crate::languages::{
    conjgeo_fsa, conjgeo_series_incl_excl, cycsl_fsa, cycsl_support_fsa, geo_fsa, shortlex_fsa,
    support_require, LanguageError,
};
use crate::poly::{RationalFunction, RationalJson};
use crate::series::{expand, neck, rho, PowerSeries, SeriesError};

/// Default cap on the number of vertices for the subset enumeration.
pub const DEFAULT_MAX_VERTICES: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PipelineError {
    #[error("graph has {found} vertices, the bound is {bound}")]
    TooManyVertices { found: usize, bound: usize },
    #[error(transparent)]
    Language(#[from] LanguageError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("graph is not one of the built-in families (free group, Z*Z^n, path on four vertices)")]
    UnknownFamily,
}

#[derive(Debug, Clone)]
pub struct ConjGrowthOptions {
    pub max_vertices: usize,
    /// Compute one block per isomorphism class of induced subgraph.
    pub collapse_isomorphic: bool,
    pub record_timing: bool,
}

impl Default for ConjGrowthOptions {
    fn default() -> Self {
        ConjGrowthOptions { max_vertices: DEFAULT_MAX_VERTICES, collapse_isomorphic: false, record_timing: false }
    }
}

/// Data for one indecomposable block `U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSeries {
    pub rational: RationalFunction,
    pub rho: PowerSeries,
    pub automaton_states: usize,
}

#[derive(Debug, Clone)]
pub struct ConjGrowthReport {
    pub graph: SimpleGraph,
    pub degree: usize,
    pub sigma_tilde: PowerSeries,
    /// Keyed by the vertex bitmask, so iteration follows subset order.
    pub per_subset: BTreeMap<u64, BlockSeries>,
    pub timing_ms: Option<BTreeMap<String, f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportJson {
    pub graph: GraphDocument,
    pub degree: usize,
    pub sigma_tilde: Vec<String>,
    pub per_subset: BTreeMap<String, SubsetJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubsetJson {
    pub rational: RationalJson,
    pub rho: Vec<String>,
    pub automaton_states: usize,
}

impl ConjGrowthReport {
    pub fn to_json(&self) -> ReportJson {
        ReportJson {
            graph: self.graph.to_document(),
            degree: self.degree,
            sigma_tilde: self.sigma_tilde.to_strings(),
            per_subset: self
                .per_subset
                .iter()
                .map(|(&u, b)| {
                    (
                        self.graph.format_set(VertexSet(u)),
                        SubsetJson {
                            rational: b.rational.to_json(),
                            rho: b.rho.to_strings(),
                            automaton_states: b.automaton_states,
                        },
                    )
                })
                .collect(),
            timing_ms: self.timing_ms.clone(),
        }
    }
}

fn check_size(g: &SimpleGraph, bound: usize) -> Result<(), PipelineError> {
    if g.vertex_count() > bound {
        Err(PipelineError::TooManyVertices { found: g.vertex_count(), bound })
    } else {
        Ok(())
    }
}

/// Growth function of the cyclically shortlex words with support exactly
/// `u`, its rho-transform to degree `n`, and the automaton size.
fn block_series(g: &SimpleGraph, u: VertexSet, n: usize) -> Result<BlockSeries, PipelineError> {
    let d = cycsl_support_fsa(g, u)?;
    let rational = growth_series(&d);
    let rho = rho(&expand(&rational, n)?)?;
    Ok(BlockSeries { rational, rho, automaton_states: d.state_count() })
}

pub fn spherical_conj_series(g: &SimpleGraph, n: usize) -> Result<ConjGrowthReport, PipelineError> {
    spherical_conj_series_with(g, n, &ConjGrowthOptions::default())
}

/// Spherical conjugacy growth to degree `n`: one plus, over every nonempty
/// vertex subset, the product of the rho-transforms of its blocks.
pub fn spherical_conj_series_with(
    g: &SimpleGraph,
    n: usize,
    opts: &ConjGrowthOptions,
) -> Result<ConjGrowthReport, PipelineError> {
    check_size(g, opts.max_vertices)?;
    let start = Instant::now();

    let decompositions: Vec<(VertexSet, Vec<VertexSet>)> = g
        .vertices()
        .subsets()
        .filter(|u| !u.is_empty())
        .map(|u| g.decompose(u).map(|d| (u, d.blocks)))
        .collect::<Result<_, _>>()
        .map_err(LanguageError::from)?;

    let mut blocks: Vec<VertexSet> = decompositions.iter().flat_map(|(_, b)| b.iter().copied()).collect();
    blocks.sort_by_key(|b| b.0);
    blocks.dedup();

    // With collapsing, every block is served by the first block of its class.
    let mut representative: HashMap<u64, VertexSet> = HashMap::new();
    let mut to_compute: Vec<VertexSet> = Vec::new();
    if opts.collapse_isomorphic {
        let mut seen: HashMap<(usize, u64), VertexSet> = HashMap::new();
        for &b in &blocks {
            let rep = match g.canonical_key(b) {
                Some(key) => *seen.entry(key).or_insert(b),
                None => b,
            };
            if rep == b {
                to_compute.push(b);
            }
            representative.insert(b.0, rep);
        }
    } else {
        to_compute = blocks.clone();
    }

    let computed: Vec<(u64, BlockSeries)> = to_compute
        .par_iter()
        .map(|&b| block_series(g, b, n).map(|s| (b.0, s)))
        .collect::<Result<_, _>>()?;
    let computed: BTreeMap<u64, BlockSeries> = computed.into_iter().collect();
    let blocks_done = start.elapsed();

    let per_subset: BTreeMap<u64, BlockSeries> = blocks
        .iter()
        .map(|b| {
            let rep = representative.get(&b.0).copied().unwrap_or(*b);
            (b.0, computed[&rep.0].clone())
        })
        .collect();

    let mut sigma = PowerSeries::one(n);
    for (_, parts) in &decompositions {
        let term = parts.iter().fold(PowerSeries::one(n), |acc, b| &acc * &per_subset[&b.0].rho);
        sigma = &sigma + &term;
    }

    let timing_ms = opts.record_timing.then(|| {
        BTreeMap::from([
            ("blocks".to_string(), blocks_done.as_secs_f64() * 1e3),
            ("total".to_string(), start.elapsed().as_secs_f64() * 1e3),
        ])
    });
    Ok(ConjGrowthReport { graph: g.clone(), degree: n, sigma_tilde: sigma, per_subset, timing_ms })
}

/// Growth function of the shortlex normal forms, i.e. of the group elements.
pub fn spherical_growth_series(g: &SimpleGraph) -> Result<RationalFunction, PipelineError> {
    Ok(growth_series(&shortlex_fsa(g)?))
}

pub fn geodesic_series(g: &SimpleGraph) -> Result<RationalFunction, PipelineError> {
    Ok(growth_series(&geo_fsa(g)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjGeoMethod {
    /// Growth of the cyclic closure automaton.
    Direct,
    /// Alternating sum over vertex subsets.
    InclusionExclusion,
}

pub fn conj_geodesic_series(g: &SimpleGraph, method: ConjGeoMethod) -> Result<RationalFunction, PipelineError> {
    Ok(match method {
        ConjGeoMethod::Direct => growth_series(&conjgeo_fsa(g)?),
        ConjGeoMethod::InclusionExclusion => conjgeo_series_incl_excl(g)?,
    })
}

/// Growth function of all cyclically shortlex words, including the empty word.
pub fn cycsl_series(g: &SimpleGraph) -> Result<RationalFunction, PipelineError> {
    Ok(growth_series(&cycsl_fsa(g)?))
}

/// Growth function of the cyclically shortlex words that use at least one
/// letter of a vertex in `w`.
pub fn cycsl_touching_series(g: &SimpleGraph, w: VertexSet) -> Result<RationalFunction, PipelineError> {
    let mut d = cycsl_fsa(g)?;
    let mut touching = crate::automata::Dfa::empty_language(d.alphabet());
    for v in w.iter() {
        touching = crate::automata::union(&touching, &support_require(d.alphabet(), v)?)
            .map_err(LanguageError::from)?;
    }
    d = crate::automata::intersect(&d, &touching).map_err(LanguageError::from)?;
    Ok(growth_series(&d))
}

/// `g` with one extra isolated vertex, i.e. the free product with `Z`. The
/// new vertex gets the first unused single-letter label.
pub fn free_product_with_z(g: &SimpleGraph) -> SimpleGraph {
    let mut labels: Vec<String> = g.labels().to_vec();
    let fresh = (b'a'..=b'z')
        .map(|c| (c as char).to_string())
        .find(|l| !labels.contains(l))
        .unwrap_or_else(|| format!("v{}", labels.len()));
    labels.push(fresh);
    SimpleGraph::new(labels, g.edges()).expect("adding an isolated vertex keeps the graph valid")
}

/// Spherical conjugacy growth of `g * Z` predicted from that of `g`: the
/// rho-transform of the difference of the cyclically shortlex series.
pub fn free_product_prediction(g: &SimpleGraph, n: usize) -> Result<PowerSeries, PipelineError> {
    let base = spherical_conj_series(g, n)?.sigma_tilde;
    let diff = cycsl_series(&free_product_with_z(g))? - cycsl_series(g)?;
    Ok(&base + &rho(&expand(&diff, n)?)?)
}

/// Families with a closed-form necklace expression for the spherical
/// conjugacy growth series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part1Family {
    /// Free group of the given rank.
    Free(usize),
    /// `Z * Z^n`.
    FreeTimesAbelian(usize),
    /// Path on four vertices.
    Path4,
}

impl Part1Family {
    pub fn graph(self) -> SimpleGraph {
        match self {
            Part1Family::Free(n) => SimpleGraph::edgeless(n),
            Part1Family::FreeTimesAbelian(n) => {
                let labels: Vec<String> = (0..=n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
                let mut edges = Vec::new();
                for i in 1..=n {
                    for j in i + 1..=n {
                        edges.push((i, j));
                    }
                }
                SimpleGraph::new(labels, edges).expect("valid")
            }
            Part1Family::Path4 => SimpleGraph::path(4),
        }
    }

    /// Recognizes the family of `g` up to isomorphism. Edgeless graphs are
    /// reported as free groups.
    pub fn detect(g: &SimpleGraph) -> Result<Part1Family, PipelineError> {
        let n = g.vertex_count();
        if n == 0 || n > 8 {
            return Err(PipelineError::UnknownFamily);
        }
        let key = g.canonical_key(g.vertices());
        let mut candidates = vec![Part1Family::Free(n), Part1Family::FreeTimesAbelian(n - 1)];
        if n == 4 {
            candidates.push(Part1Family::Path4);
        }
        candidates
            .into_iter()
            .find(|f| f.graph().canonical_key(f.graph().vertices()) == key)
            .ok_or(PipelineError::UnknownFamily)
    }
}

/// Evaluates the family's necklace expression to degree `n`.
pub fn part1_crosscheck(family: Part1Family, n: usize) -> Result<PowerSeries, PipelineError> {
    let ex = |num: &[i64], den: &[&[i64]]| expand(&RationalFunction::from_factors(num, den), n);
    let one_minus_z: &[i64] = &[1, -1];
    Ok(match family {
        Part1Family::Free(k) => {
            let mut s = ex(&[1, 2 * k as i64 - 1], &[one_minus_z])?;
            for j in 1..k as i64 {
                s = &s + &neck(&ex(&[0, 0, 4 * j], &[one_minus_z, &[1, 1 - 2 * j]])?)?;
            }
            s
        }
        Part1Family::FreeTimesAbelian(k) => {
            let ratio = RationalFunction::from_factors(&[1, 1], &[one_minus_z]);
            let power = ratio.pow(k as u32);
            let free = RationalFunction::from_factors(&[0, 2], &[one_minus_z]);
            let inner = (power.clone() - RationalFunction::one()) * free.clone();
            &(&expand(&free, n)? + &expand(&power, n)?) + &neck(&expand(&inner, n)?)?
        }
        Part1Family::Path4 => {
            let head = ex(&[1, 6, 5], &[one_minus_z, one_minus_z])?;
            let mid = &ex(&[1, 3], &[one_minus_z])? * &neck(&ex(&[0, 0, 4], &[one_minus_z, one_minus_z])?)?;
            let tail = neck(&ex(&[0, 0, 8], &[one_minus_z, &[1, -3]])?)?;
            &(&head + &mid) + &tail
        }
    })
}
