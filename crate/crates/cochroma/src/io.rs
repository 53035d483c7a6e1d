//! File formats: graphs, series, class configurations, and report payloads.
//!
//! Graphs: `{"vertices":[{"id":"a","weight":2},…],"edges":[["a","b"],…]}`
//! with weights defaulting to 1. The vertex order in the file is the fixed
//! vertex order used by orientation-based computations.
//!
//! Series: `{"basis":"p","algebra":"Lambda","cap":null,
//! "terms":[{"lambda":[3,1],"coef":"-4/1"}]}`; rationals are always `p/q`
//! strings; magnitude/phase scalars are `{"mag":"p/q","phase":"a/b"}`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::FoundationError;
use crate::graph::WeightedGraph;
use crate::kromatic::{KBasis, KSeries};
use crate::morphism::{ClassConfig, MorphismSpec, PhasedSeries, SolveOutcome, SolvedMap};
use crate::partition::Partition;
use crate::scalar::{format_rational, parse_rational, PhaseScalar};
use crate::series::{Algebra, Basis, Series};

/// Serialization problems, with a field-level description where possible.
#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Graph(#[from] crate::error::GraphError),
    #[error(transparent)]
    Foundation(#[from] FoundationError),
}

fn schema(msg: impl Into<String>) -> IoError {
    IoError::Schema(msg.into())
}

// ----------------------------------------------------------------------
// Graphs
// ----------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct VertexDto {
    id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight: Option<u32>,
}

#[derive(Serialize, Deserialize)]
struct GraphDto {
    vertices: Vec<VertexDto>,
    edges: Vec<(String, String)>,
}

pub fn graph_from_json(text: &str) -> Result<WeightedGraph, IoError> {
    let dto: GraphDto = serde_json::from_str(text)?;
    let vertices: Vec<(String, u32)> =
        dto.vertices.into_iter().map(|v| (v.id, v.weight.unwrap_or(1))).collect();
    Ok(WeightedGraph::new(vertices, &dto.edges)?)
}

pub fn graph_to_json(g: &WeightedGraph) -> serde_json::Value {
    let vertices: Vec<serde_json::Value> = (0..g.vertex_count())
        .map(|v| serde_json::json!({"id": g.id(v), "weight": g.weight(v)}))
        .collect();
    let edges: Vec<serde_json::Value> =
        g.edges().into_iter().map(|(i, j)| serde_json::json!([g.id(i), g.id(j)])).collect();
    serde_json::json!({"vertices": vertices, "edges": edges})
}

// ----------------------------------------------------------------------
// Scalars
// ----------------------------------------------------------------------

pub fn phase_scalar_to_json(x: &PhaseScalar) -> serde_json::Value {
    serde_json::json!({
        "mag": format_rational(x.magnitude()),
        "phase": format_rational(x.phase()),
    })
}

pub fn phase_scalar_from_json(v: &serde_json::Value) -> Result<PhaseScalar, IoError> {
    if let Some(s) = v.as_str() {
        // plain rational shorthand
        return Ok(PhaseScalar::from_rational(&parse_rational(s)?));
    }
    let mag = v
        .get("mag")
        .and_then(|m| m.as_str())
        .ok_or_else(|| schema("scalar needs a \"mag\" field"))?;
    let phase = v
        .get("phase")
        .and_then(|m| m.as_str())
        .ok_or_else(|| schema("scalar needs a \"phase\" field"))?;
    Ok(PhaseScalar::new(parse_rational(mag)?, parse_rational(phase)?))
}

// ----------------------------------------------------------------------
// Series
// ----------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TermDto {
    lambda: Vec<u32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct SeriesDto {
    basis: String,
    algebra: String,
    cap: Option<u32>,
    terms: Vec<TermDto>,
}

pub fn series_to_json(s: &Series) -> serde_json::Value {
    let dto = SeriesDto {
        basis: s.basis().name().to_string(),
        algebra: s.algebra().name().to_string(),
        cap: s.cap(),
        terms: s
            .terms()
            .map(|(l, c)| TermDto { lambda: l.parts().to_vec(), coef: format_rational(c) })
            .collect(),
    };
    serde_json::to_value(dto).expect("series serializes")
}

pub fn series_from_json(text: &str) -> Result<Series, IoError> {
    let dto: SeriesDto = serde_json::from_str(text)?;
    let basis =
        Basis::parse(&dto.basis).ok_or_else(|| schema(format!("unknown basis `{}`", dto.basis)))?;
    let algebra = match dto.algebra.as_str() {
        "Lambda" => Algebra::Lambda,
        "LambdaTilde" => Algebra::LambdaTilde,
        other => return Err(schema(format!("unknown algebra `{}`", other))),
    };
    if !algebra.admits(basis) {
        return Err(schema(format!("basis {} unavailable in {}", dto.basis, dto.algebra)));
    }
    let mut out = Series::zero(basis, algebra);
    if let Some(cap) = dto.cap {
        out = out.with_cap(cap);
    }
    for term in dto.terms {
        let lambda = Partition::from_parts(term.lambda)?;
        out.add_term(lambda, parse_rational(&term.coef)?);
    }
    Ok(out)
}

pub fn kseries_to_json(s: &KSeries) -> serde_json::Value {
    serde_json::json!({
        "basis": s.basis().name(),
        "cap": s.cap(),
        "terms": s.terms().map(|(l, c)| serde_json::json!({
            "lambda": l.parts(),
            "coef": format_rational(c),
        })).collect::<Vec<_>>(),
    })
}

pub fn kseries_from_json(text: &str) -> Result<KSeries, IoError> {
    let v: serde_json::Value = serde_json::from_str(text)?;
    let basis = match v.get("basis").and_then(|b| b.as_str()) {
        Some("mbar") => KBasis::MTildeBar,
        Some("omegap") => KBasis::OmegaPBarPrime,
        Some("m") => KBasis::MTruncated,
        other => return Err(schema(format!("unknown K basis {:?}", other))),
    };
    let cap = v.get("cap").and_then(|c| c.as_u64()).map(|c| c as u32);
    let mut out = KSeries::zero(basis, cap);
    let terms = v
        .get("terms")
        .and_then(|t| t.as_array())
        .ok_or_else(|| schema("K series needs a \"terms\" array"))?;
    for term in terms {
        let lambda: Vec<u32> = term
            .get("lambda")
            .and_then(|l| l.as_array())
            .ok_or_else(|| schema("term needs a \"lambda\" array"))?
            .iter()
            .map(|x| x.as_u64().map(|v| v as u32).ok_or_else(|| schema("bad part")))
            .collect::<Result<_, _>>()?;
        let coef = term
            .get("coef")
            .and_then(|c| c.as_str())
            .ok_or_else(|| schema("term needs a \"coef\" string"))?;
        out.add_term(Partition::from_parts(lambda)?, parse_rational(coef)?);
    }
    Ok(out)
}

pub fn phased_series_to_json(s: &PhasedSeries) -> serde_json::Value {
    serde_json::json!({
        "basis": "mtilde",
        "terms": s.terms().map(|(l, c)| serde_json::json!({
            "lambda": l.parts(),
            "coef": phase_scalar_to_json(c),
        })).collect::<Vec<_>>(),
    })
}

// ----------------------------------------------------------------------
// Class configurations and morphism specs
// ----------------------------------------------------------------------

pub fn class_config_from_json(text: &str) -> Result<ClassConfig, IoError> {
    let v: serde_json::Value = serde_json::from_str(text)?;
    let parse_set = |val: &serde_json::Value| -> Result<BTreeSet<u32>, IoError> {
        val.as_array()
            .ok_or_else(|| schema("expected an array of positive integers"))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .filter(|&n| n >= 1)
                    .map(|n| n as u32)
                    .ok_or_else(|| schema("class entries must be positive integers"))
            })
            .collect()
    };
    let c_star = match v.get("C_star") {
        Some(val) => parse_set(val)?,
        None => BTreeSet::new(),
    };
    let mut classes: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
    if let Some(obj) = v.get("classes") {
        let obj = obj.as_object().ok_or_else(|| schema("\"classes\" must be an object"))?;
        for (key, val) in obj {
            let k: u32 = key
                .parse()
                .ok()
                .filter(|&k| k >= 1)
                .ok_or_else(|| schema(format!("class key `{}` is not a positive integer", key)))?;
            classes.insert(k, parse_set(val)?);
        }
    }
    let default = match v.get("default") {
        Some(val) => phase_scalar_from_json(val)?,
        None => PhaseScalar::zero(),
    };
    Ok(ClassConfig { c_star, classes, default })
}

pub fn morphism_spec_to_json(spec: &MorphismSpec) -> serde_json::Value {
    let entries: serde_json::Map<String, serde_json::Value> =
        spec.entries().map(|(n, a)| (n.to_string(), phase_scalar_to_json(a))).collect();
    serde_json::json!({
        "cap": spec.cap(),
        "provenance": spec.provenance(),
        "entries": entries,
    })
}

fn solved_map_to_json(s: &SolvedMap) -> serde_json::Value {
    let entries: serde_json::Map<String, serde_json::Value> =
        s.entries.iter().map(|(n, a)| (n.to_string(), phase_scalar_to_json(a))).collect();
    serde_json::json!({
        "entries": entries,
        "free": s.free.iter().collect::<Vec<_>>(),
    })
}

pub fn solve_outcome_to_json(outcome: &SolveOutcome) -> serde_json::Value {
    match outcome {
        SolveOutcome::Solutions(sols) => serde_json::json!({
            "outcome": "solutions",
            "solutions": sols.iter().map(solved_map_to_json).collect::<Vec<_>>(),
        }),
        SolveOutcome::Infeasible { witness } => serde_json::json!({
            "outcome": "infeasible",
            "witness": {
                "lambda": witness.lambda.parts(),
                "rhs": phase_scalar_to_json(&witness.rhs),
                "equation": witness.to_string(),
            },
        }),
        SolveOutcome::NoExactRoot { witness } => serde_json::json!({
            "outcome": "no-exact-root",
            "witness": {
                "lambda": witness.lambda.parts(),
                "equation": witness.to_string(),
            },
        }),
        SolveOutcome::Undetermined { residual } => serde_json::json!({
            "outcome": "undetermined",
            "residual": residual.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        }),
    }
}
