//! Vertex labelings `V -> {0, 1, 2}` and the domination predicates over them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// A function `f: V -> {0, 1, 2}` stored by vertex index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLabeling")]
pub struct Labeling {
    values: Vec<u8>,
}

#[derive(Deserialize)]
struct RawLabeling {
    values: Vec<u8>,
}

impl TryFrom<RawLabeling> for Labeling {
    type Error = LabelingError;

    fn try_from(raw: RawLabeling) -> Result<Self, Self::Error> {
        Labeling::new(raw.values)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingError {
    #[error("label {value} at vertex {vertex} is not in {{0, 1, 2}}")]
    BadValue { vertex: usize, value: u8 },
    #[error("labeling has length {found}, graph has order {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("cannot parse labeling: {0}")]
    Parse(String),
    #[error("vertex {0} is not in the set")]
    NotInSet(usize),
}

impl Labeling {
    pub fn new(values: Vec<u8>) -> Result<Self, LabelingError> {
        if let Some((vertex, &value)) = values.iter().enumerate().find(|(_, &v)| v > 2) {
            return Err(LabelingError::BadValue { vertex, value });
        }
        Ok(Labeling { values })
    }

    pub fn zeros(n: usize) -> Self {
        Labeling { values: vec![0; n] }
    }

    pub fn constant(n: usize, value: u8) -> Self {
        assert!(value <= 2);
        Labeling { values: vec![value; n] }
    }

    /// Indicator labeling: 1 on `set`, 0 elsewhere.
    pub fn indicator(n: usize, set: &VertexSet) -> Self {
        let mut f = Labeling::zeros(n);
        for &v in set {
            f.values[v] = 1;
        }
        f
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn get(&self, v: usize) -> u8 {
        self.values[v]
    }

    pub fn set(&mut self, v: usize, value: u8) {
        assert!(value <= 2, "label out of range");
        self.values[v] = value;
    }

    pub fn weight(&self) -> u32 {
        self.values.iter().map(|&x| x as u32).sum()
    }

    /// Vertices carrying `value`.
    pub fn class(&self, value: u8) -> VertexSet {
        (0..self.len()).filter(|&v| self.values[v] == value).collect()
    }

    pub(crate) fn from_masks(n: usize, ones: u64, twos: u64) -> Self {
        let values = (0..n).map(|v| (ones >> v & 1) as u8 + 2 * (twos >> v & 1) as u8).collect();
        Labeling { values }
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Labeling {
    type Err = LabelingError;

    /// Whitespace-separated digits (`"1 1 0 1 1"`) or the JSON object form.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| LabelingError::Parse(e.to_string()));
        }
        let values = s
            .split_whitespace()
            .map(|t| t.parse::<u8>().map_err(|_| LabelingError::Parse(format!("bad token {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Labeling::new(values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ViolationKind {
    /// A 0-vertex with neither a 2-neighbour nor two 1-neighbours.
    UncoveredZero,
    /// A positive vertex with no positive neighbour.
    IsolatedPositive,
    UndominatedVertex,
    NotDoublyDominated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub vertex: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error(transparent)]
    Labeling(#[from] LabelingError),
    #[error("{} violation(s), first at vertex {}", .0.len(), .0[0].vertex)]
    Violations(Vec<Violation>),
}

impl CheckError {
    pub fn violations(&self) -> &[Violation] {
        match self {
            CheckError::Violations(v) => v,
            CheckError::Labeling(_) => &[],
        }
    }
}

fn ensure_len(g: &Graph, f: &Labeling) -> Result<(), LabelingError> {
    if f.len() != g.order() {
        return Err(LabelingError::LengthMismatch { expected: g.order(), found: f.len() });
    }
    Ok(())
}

fn coverage_violations(g: &Graph, f: &Labeling, out: &mut Vec<Violation>) {
    for v in 0..g.order() {
        if f.get(v) != 0 {
            continue;
        }
        let (mut ones, mut twos) = (0, 0);
        for &w in g.neighbors(v) {
            match f.get(w) {
                1 => ones += 1,
                2 => twos += 1,
                _ => {}
            }
        }
        if twos == 0 && ones < 2 {
            out.push(Violation {
                kind: ViolationKind::UncoveredZero,
                vertex: v,
                detail: format!("label 0 with {ones} neighbour(s) labelled 1 and none labelled 2"),
            });
        }
    }
}

fn finish(violations: Vec<Violation>) -> Result<(), CheckError> {
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CheckError::Violations(violations))
    }
}

/// Roman {2}-domination: every 0-vertex has a 2-neighbour or two 1-neighbours.
/// All violating vertices are reported.
pub fn check_r2f(g: &Graph, f: &Labeling) -> Result<(), CheckError> {
    ensure_len(g, f)?;
    let mut out = Vec::new();
    coverage_violations(g, f, &mut out);
    finish(out)
}

/// Total Roman {2}-domination: [`check_r2f`] plus no isolated vertex in the
/// subgraph induced by the positive labels.
pub fn check_tr2df(g: &Graph, f: &Labeling) -> Result<(), CheckError> {
    ensure_len(g, f)?;
    let mut out = Vec::new();
    coverage_violations(g, f, &mut out);
    for v in 0..g.order() {
        if f.get(v) > 0 && g.neighbors(v).iter().all(|&w| f.get(w) == 0) {
            out.push(Violation {
                kind: ViolationKind::IsolatedPositive,
                vertex: v,
                detail: format!("label {} without a positive neighbour", f.get(v)),
            });
        }
    }
    out.sort_by_key(|x| (x.vertex, x.kind));
    finish(out)
}

pub fn is_tr2df(g: &Graph, f: &Labeling) -> bool {
    check_tr2df(g, f).is_ok()
}

/// `V0`, `V1`, `V2` and the split of `V0` by whether a 2-neighbour exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub v0: VertexSet,
    pub v1: VertexSet,
    pub v2: VertexSet,
    pub v01: VertexSet,
    pub v02: VertexSet,
}

pub fn partition(g: &Graph, f: &Labeling) -> Result<Partition, LabelingError> {
    ensure_len(g, f)?;
    let v0 = f.class(0);
    let (v02, v01) = v0
        .iter()
        .partition(|&&w| g.neighbors(w).iter().any(|&x| f.get(x) == 2));
    Ok(Partition { v1: f.class(1), v2: f.class(2), v0, v01, v02 })
}

/// Vertices outside `s` whose closed neighbourhood meets `s` exactly in `{u}`.
pub fn external_private_neighbors(g: &Graph, s: &VertexSet, u: usize) -> Result<VertexSet, LabelingError> {
    if !s.contains(&u) {
        return Err(LabelingError::NotInSet(u));
    }
    Ok(g.neighbors(u)
        .iter()
        .copied()
        .filter(|v| !s.contains(v) && g.neighbors(*v).iter().all(|w| *w == u || !s.contains(w)))
        .collect())
}

pub fn check_dominating(g: &Graph, s: &VertexSet) -> bool {
    (0..g.order()).all(|v| s.contains(&v) || g.neighbors(v).iter().any(|w| s.contains(w)))
}

pub fn check_total_dominating(g: &Graph, s: &VertexSet) -> bool {
    (0..g.order()).all(|v| g.neighbors(v).iter().any(|w| s.contains(w)))
}

pub fn check_double_dominating(g: &Graph, s: &VertexSet) -> bool {
    (0..g.order()).all(|v| {
        s.contains(&v) as usize + g.neighbors(v).iter().filter(|w| s.contains(w)).count() >= 2
    })
}

/// Which set property [`set_violations`] checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SetProperty {
    Dominating,
    TotalDominating,
    DoubleDominating,
}

/// Per-vertex diagnostics for the set predicates; empty iff the predicate holds.
pub fn set_violations(g: &Graph, s: &VertexSet, property: SetProperty) -> Vec<Violation> {
    (0..g.order())
        .filter_map(|v| {
            let hits = g.neighbors(v).iter().filter(|w| s.contains(w)).count();
            let inside = s.contains(&v);
            let (ok, kind, need) = match property {
                SetProperty::Dominating => (inside || hits > 0, ViolationKind::UndominatedVertex, "a neighbour in the set"),
                SetProperty::TotalDominating => (hits > 0, ViolationKind::UndominatedVertex, "a neighbour in the set"),
                SetProperty::DoubleDominating => {
                    (inside as usize + hits >= 2, ViolationKind::NotDoublyDominated, "two set vertices in its closed neighbourhood")
                }
            };
            (!ok).then(|| Violation { kind, vertex: v, detail: format!("needs {need}") })
        })
        .collect()
}

/// Bitmask forms of the predicates for graphs with at most 64 vertices.
pub(crate) mod bits {
    #[inline]
    pub fn covered(nbr: u64, ones: u64, twos: u64) -> bool {
        nbr & twos != 0 || (nbr & ones).count_ones() >= 2
    }

    pub fn is_r2f(masks: &[u64], ones: u64, twos: u64) -> bool {
        let pos = ones | twos;
        masks
            .iter()
            .enumerate()
            .all(|(v, &nbr)| pos >> v & 1 == 1 || covered(nbr, ones, twos))
    }

    pub fn is_tr2df(masks: &[u64], ones: u64, twos: u64) -> bool {
        let pos = ones | twos;
        masks.iter().enumerate().all(|(v, &nbr)| {
            if pos >> v & 1 == 1 {
                nbr & pos != 0
            } else {
                covered(nbr, ones, twos)
            }
        })
    }

    pub fn is_dominating(masks: &[u64], s: u64) -> bool {
        masks.iter().enumerate().all(|(v, &nbr)| s >> v & 1 == 1 || nbr & s != 0)
    }

    pub fn is_total_dominating(masks: &[u64], s: u64) -> bool {
        masks.iter().all(|&nbr| nbr & s != 0)
    }

    pub fn is_double_dominating(masks: &[u64], s: u64) -> bool {
        masks
            .iter()
            .enumerate()
            .all(|(v, &nbr)| ((nbr | 1 << v) & s).count_ones() >= 2)
    }
}
