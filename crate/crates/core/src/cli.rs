//! Command-line front end. Every subcommand produces a JSON document; the
//! `--pretty` flag switches to a plain-text rendering of the same data.

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::graph::{parse_graph, SimpleGraph};
use crate::oracle;
use crate::pipeline::{
    conj_geodesic_series, geodesic_series, part1_crosscheck, spherical_conj_series_with,
    spherical_growth_series, ConjGeoMethod, ConjGrowthOptions, Part1Family, DEFAULT_MAX_VERTICES,
};
use crate::poly::RationalFunction;
use crate::series::{self, expand, PowerSeries, DEFAULT_DEGREE};

#[derive(Debug, Parser)]
#[command(name = "raag-growth", version, about = "Growth series of right-angled Artin groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spherical conjugacy growth series, truncated.
    ConjGrowth {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        max_degree: usize,
        /// Include the per-block rational functions and their rho-transforms.
        #[arg(long)]
        per_subset: bool,
        #[arg(long, value_enum)]
        crosscheck: Option<Crosscheck>,
        /// Compute one block per isomorphism class of induced subgraph.
        #[arg(long)]
        collapse_isomorphic: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
        /// Add wall-clock timings to the report.
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        pretty: bool,
    },
    /// Standard (element) growth series as a rational function.
    StdGrowth {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        expand: Option<usize>,
        #[arg(long)]
        pretty: bool,
    },
    /// Geodesic growth series as a rational function.
    GeoGrowth {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        expand: Option<usize>,
        #[arg(long)]
        pretty: bool,
    },
    /// Conjugacy geodesic growth series as a rational function.
    ConjGeoGrowth {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Direct)]
        method: Method,
        #[arg(long)]
        expand: Option<usize>,
        #[arg(long)]
        pretty: bool,
    },
    /// Brute-force element and conjugacy class counts.
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        max_length: usize,
        #[arg(long)]
        pretty: bool,
    },
    /// Applies rho to a JSON array of coefficients.
    Rho {
        #[arg(long)]
        series: String,
    },
    /// Applies the necklace operator to a JSON array of coefficients.
    Neck {
        #[arg(long)]
        series: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Crosscheck {
    /// Closed-form necklace expression of a recognized family.
    Part1,
    /// Brute-force class counts (up to the oracle length limit).
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Direct,
    InclExcl,
}

/// Result of a subcommand. `ok` is false when a requested cross-check
/// disagreed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn plain(json: Value, text: String) -> Self {
        Outcome { json, text, ok: true }
    }

    pub fn render(&self, pretty: bool) -> String {
        if pretty {
            self.text.trim_end().to_string()
        } else {
            serde_json::to_string(&self.json).expect("JSON values serialize")
        }
    }
}

fn load_graph(path: &PathBuf) -> Result<SimpleGraph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("invalid graph file {}", path.display()))
}

fn format_series(s: &PowerSeries) -> String {
    s.to_strings().join(" ")
}

fn rational_outcome(r: &RationalFunction, n: Option<usize>) -> Result<Outcome> {
    let mut json = json!({ "rational": r.to_json() });
    let mut text = format!("{r}\n");
    if let Some(n) = n {
        let s = expand(r, n)?;
        json["series"] = json!(s.to_strings());
        writeln!(text, "series: {}", format_series(&s))?;
    }
    Ok(Outcome::plain(json, text))
}

/// Whether `pretty` output was requested for the subcommand.
pub fn wants_pretty(cmd: &Command) -> bool {
    match cmd {
        Command::ConjGrowth { pretty, .. }
        | Command::StdGrowth { pretty, .. }
        | Command::GeoGrowth { pretty, .. }
        | Command::ConjGeoGrowth { pretty, .. }
        | Command::Oracle { pretty, .. } => *pretty,
        Command::Rho { .. } | Command::Neck { .. } => false,
    }
}

pub fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::ConjGrowth {
            graph,
            max_degree,
            per_subset,
            crosscheck,
            collapse_isomorphic,
            max_vertices,
            timing,
            ..
        } => {
            let g = load_graph(graph)?;
            let opts = ConjGrowthOptions {
                max_vertices: *max_vertices,
                collapse_isomorphic: *collapse_isomorphic,
                record_timing: *timing,
            };
            let report = spherical_conj_series_with(&g, *max_degree, &opts)?;
            let mut json = serde_json::to_value(report.to_json())?;
            if !per_subset {
                json.as_object_mut().expect("report is an object").remove("per_subset");
            }
            let mut text = format!("sigma_tilde: {}\n", format_series(&report.sigma_tilde));
            if *per_subset {
                for (&u, b) in &report.per_subset {
                    let name = g.format_set(crate::graph::VertexSet(u));
                    writeln!(text, "{name}: F = {}  rho = {}", b.rational, format_series(&b.rho))?;
                }
            }
            let mut ok = true;
            if let Some(kind) = crosscheck {
                let (label, expected) = match kind {
                    Crosscheck::Part1 => {
                        let family = Part1Family::detect(&g)?;
                        (format!("{family:?}"), part1_crosscheck(family, *max_degree)?)
                    }
                    Crosscheck::Oracle => {
                        let n = (*max_degree).min(oracle::MAX_LENGTH);
                        let counts = oracle::enumerate_classes(&g, n)?;
                        let coeffs = counts.into_iter().map(num_bigint::BigInt::from).collect();
                        ("oracle".to_string(), PowerSeries::from_coeffs(coeffs))
                    }
                };
                let n = expected.max_degree().min(report.sigma_tilde.max_degree());
                ok = expected.truncate(n) == report.sigma_tilde.truncate(n);
                json["crosscheck"] = json!({
                    "kind": label,
                    "expected": expected.to_strings(),
                    "agrees": ok,
                });
                writeln!(
                    text,
                    "crosscheck {label}: {}\nexpected: {}",
                    if ok { "agrees" } else { "MISMATCH" },
                    format_series(&expected)
                )?;
            }
            Ok(Outcome { json, text, ok })
        }
        Command::StdGrowth { graph, expand, .. } => {
            rational_outcome(&spherical_growth_series(&load_graph(graph)?)?, *expand)
        }
        Command::GeoGrowth { graph, expand, .. } => rational_outcome(&geodesic_series(&load_graph(graph)?)?, *expand),
        Command::ConjGeoGrowth { graph, method, expand, .. } => {
            let method = match method {
                Method::Direct => ConjGeoMethod::Direct,
                Method::InclExcl => ConjGeoMethod::InclusionExclusion,
            };
            rational_outcome(&conj_geodesic_series(&load_graph(graph)?, method)?, *expand)
        }
        Command::Oracle { graph, max_length, .. } => {
            let g = load_graph(graph)?;
            let elements = oracle::element_counts(&g, *max_length)?;
            let classes = oracle::enumerate_classes(&g, *max_length)?;
            let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>();
            let text = format!("elements: {}\nclasses: {}\n", join(&elements).join(" "), join(&classes).join(" "));
            Ok(Outcome::plain(json!({ "element_counts": join(&elements), "class_counts": join(&classes) }), text))
        }
        Command::Rho { series: s } => {
            let out = series::rho(&PowerSeries::from_json(s)?)?;
            Ok(Outcome::plain(json!(out.to_strings()), format_series(&out)))
        }
        Command::Neck { series: s } => {
            let out = series::neck(&PowerSeries::from_json(s)?)?;
            Ok(Outcome::plain(json!(out.to_strings()), format_series(&out)))
        }
    }
}
