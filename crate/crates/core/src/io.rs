//! JSON file formats.
//!
//! Values are exact rationals written as strings `"p/q"` or `"p"`; plain JSON
//! integers are accepted on input. Points are strings (`"inf"`, `"-1/3"`) or
//! integers.
//!
//! Cross-ratio tables and rectangle measures only need a generating set of
//! entries: the loaders complete them with the defining linear identities
//! and reject data that is inconsistent or leaves free parameters.

use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::circle::{parse_rational, BoundaryPoint, Configuration};
use crate::cocycle::{all_distinct, crossratio_system, distinct_triples, sort_triple, AltCochain2, Cochain2, CrossRatioTable};
use crate::coarse::FiniteGraphSpace;
use crate::error::{Error, Result};
use crate::linalg::{row, Echelon, Insert};
use crate::measure::RectMeasure;
use crate::{Quad, Rational, Triple};

/// Largest label count the table loader accepts.
pub const MAX_TABLE_LABELS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Str(String),
}

impl Scalar {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Scalar::Int(i) => Ok(Rational::from_integer((*i).into())),
            Scalar::Str(s) => parse_rational(s),
        }
    }

    pub fn from_rational(q: &Rational) -> Self {
        Scalar::Str(q.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointRepr {
    Int(i64),
    Str(String),
}

impl PointRepr {
    pub fn to_point(&self) -> Result<BoundaryPoint> {
        match self {
            PointRepr::Int(i) => Ok(BoundaryPoint::int(*i)),
            PointRepr::Str(s) => s.parse(),
        }
    }
}

pub fn config_from_json(points: &[PointRepr]) -> Result<Configuration> {
    Configuration::new(points.iter().map(PointRepr::to_point).collect::<Result<_>>()?)
}

pub fn config_to_json(cfg: &Configuration) -> Vec<PointRepr> {
    cfg.points().iter().map(|p| PointRepr::Str(p.to_string())).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadEntry {
    pub q: Quad,
    pub v: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub n: usize,
    pub entries: Vec<QuadEntry>,
}

fn check_labels(labels: &[usize], n: usize) -> Result<()> {
    for &l in labels {
        if l >= n {
            return Err(Error::Label { label: l, n });
        }
    }
    if !all_distinct(labels) {
        return Err(Error::Parse(format!("labels {labels:?} are not pairwise distinct")));
    }
    Ok(())
}

/// Completes the entries to a full table through axioms i)–iii).
pub fn table_from_json(json: &TableJson) -> Result<CrossRatioTable> {
    let n = json.n;
    if n > MAX_TABLE_LABELS {
        return Err(Error::Size {
            what: "cross ratio table",
            n,
            min: 0,
            max: MAX_TABLE_LABELS,
        });
    }
    let (cols, mut e) = crossratio_system(n, false);
    for entry in &json.entries {
        check_labels(&entry.q, n)?;
        let v = entry.v.to_rational()?;
        if let Insert::Inconsistent(_) = e.insert(row([(cols.col(entry.q), 1)]), v.clone()) {
            return Err(Error::Inconsistent(format!("entry {:?} = {v}", entry.q)));
        }
    }
    if e.nullity() > 0 {
        return Err(Error::Underdetermined(e.nullity()));
    }
    let x = e.particular_solution();
    let mut t = CrossRatioTable::zero(n);
    for (q, v) in cols.tuples.iter().zip(x) {
        t.set(*q, v);
    }
    Ok(t)
}

/// Every value on a distinct 4-tuple, in lexicographic order.
pub fn table_to_json(t: &CrossRatioTable) -> TableJson {
    TableJson {
        n: t.n(),
        entries: t
            .entries()
            .map(|(q, v)| QuadEntry {
                q,
                v: Scalar::from_rational(v),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleEntry {
    pub t: Triple,
    pub v: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainJson {
    pub n: usize,
    pub entries: Vec<TripleEntry>,
}

/// Completes the entries by alternation; every unordered triple of distinct
/// labels needs a value.
pub fn cochain_from_json(json: &CochainJson) -> Result<AltCochain2> {
    let n = json.n;
    let mut given: HashMap<Triple, Rational> = HashMap::new();
    for entry in &json.entries {
        check_labels(&entry.t, n)?;
        let (sorted, sign) = sort_triple(entry.t);
        let v = entry.v.to_rational()? * Rational::from_integer(sign.into());
        if let Some(old) = given.insert(sorted, v.clone()) {
            if old != v {
                return Err(Error::Inconsistent(format!("entry {:?} = {}", entry.t, entry.v.to_rational()?)));
            }
        }
    }
    let missing = distinct_triples(n)
        .filter(|t| t[0] < t[1] && t[1] < t[2] && !given.contains_key(t))
        .count();
    if missing > 0 {
        return Err(Error::Underdetermined(missing));
    }
    let c = Cochain2::from_fn(n, |t| {
        if !all_distinct(&t) {
            return Rational::zero();
        }
        let (sorted, sign) = sort_triple(t);
        &given[&sorted] * Rational::from_integer(sign.into())
    });
    AltCochain2::new(c)
}

/// Values on increasing triples.
pub fn cochain_to_json(phi: &AltCochain2) -> CochainJson {
    CochainJson {
        n: phi.n(),
        entries: distinct_triples(phi.n())
            .filter(|t| t[0] < t[1] && t[1] < t[2])
            .map(|t| TripleEntry {
                t,
                v: Scalar::from_rational(phi.get(t)),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectEntry {
    pub ab: [usize; 2],
    pub cd: [usize; 2],
    pub v: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureJson {
    pub config: Vec<PointRepr>,
    pub rects: Vec<RectEntry>,
}

/// Completes the given rectangles by flip-antiinvariance and additivity.
pub fn measure_from_json(json: &MeasureJson) -> Result<RectMeasure> {
    let cfg = config_from_json(&json.config)?;
    let n = cfg.len();
    let probe = RectMeasure::zero(cfg.clone());
    let rects = probe.rects();
    let col: HashMap<Quad, usize> = rects.iter().enumerate().map(|(i, q)| (*q, i)).collect();
    let mut e = Echelon::new(rects.len());
    for &[a, b, c, d] in &rects {
        e.insert_homogeneous(row([(col[&[a, b, c, d]], 1), (col[&[c, d, a, b]], 1)]));
        for b1 in 0..n {
            if cfg.ordered4([a, b1, c, d]) && cfg.ordered3(a, b, b1) {
                e.insert_homogeneous(row([
                    (col[&[a, b, c, d]], 1),
                    (col[&[b, b1, c, d]], 1),
                    (col[&[a, b1, c, d]], -1),
                ]));
            }
        }
    }
    for entry in &json.rects {
        let q = [entry.ab[0], entry.ab[1], entry.cd[0], entry.cd[1]];
        check_labels(&q, n)?;
        let Some(&c) = col.get(&q) else {
            return Err(Error::NotAdmissible(q));
        };
        let v = entry.v.to_rational()?;
        if let Insert::Inconsistent(_) = e.insert(row([(c, 1)]), v.clone()) {
            return Err(Error::Inconsistent(format!(
                "rectangle [{},{})x[{},{}) = {v}",
                q[0], q[1], q[2], q[3]
            )));
        }
    }
    if e.nullity() > 0 {
        return Err(Error::Underdetermined(e.nullity()));
    }
    let x = e.particular_solution();
    let mut m = probe;
    for (q, v) in rects.into_iter().zip(x) {
        m.set(q, v);
    }
    Ok(m)
}

/// Every admissible rectangle.
pub fn measure_to_json(m: &RectMeasure) -> MeasureJson {
    MeasureJson {
        config: config_to_json(m.config()),
        rects: m
            .rects()
            .into_iter()
            .map(|[a, b, c, d]| RectEntry {
                ab: [a, b],
                cd: [c, d],
                v: Scalar::from_rational(m.get([a, b, c, d])),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

pub fn graph_from_json(json: &GraphJson) -> Result<FiniteGraphSpace> {
    let edges: Vec<(usize, usize)> = json.edges.iter().map(|[a, b]| (*a, *b)).collect();
    FiniteGraphSpace::new(json.n, &edges)
}

pub fn graph_to_json(g: &FiniteGraphSpace) -> GraphJson {
    GraphJson {
        n: g.n(),
        edges: g.edges().into_iter().map(|(a, b)| [a, b]).collect(),
    }
}

/// `serde_json::from_str` with errors mapped to [`Error::Parse`].
pub fn parse_json<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}
