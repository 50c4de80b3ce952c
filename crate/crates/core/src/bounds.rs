//! Every inequality relating `γ_tR2` to other invariants, evaluated on one
//! graph with its applicability gate.

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{profile, Graph, StructuralProfile};
use crate::solvers::{self, enumerate_optimal_tr2df, SolveError, SolverConfig};

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has fewer than two vertices")]
    TooSmall,
    #[error("hypotheses not met: {0}")]
    NotApplicable(&'static str),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// The five parameters of one graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParamValues {
    pub tr2: u32,
    pub dom: u32,
    pub total: u32,
    pub r2: u32,
    pub double: u32,
}

impl ParamValues {
    pub fn compute(g: &Graph, cfg: &SolverConfig) -> Result<Self, SolveError> {
        let auto = SolverConfig { force_method: None, ..cfg.clone() };
        Ok(ParamValues {
            tr2: solvers::gamma_tr2_exact(g, &auto)?.value,
            dom: solvers::gamma(g)?.value,
            total: solvers::gamma_t(g)?.value,
            r2: solvers::gamma_r2(g)?.value,
            double: solvers::gamma_x2(g)?.value,
        })
    }
}

fn ratio_ser<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    if r.is_integer() {
        s.serialize_i64(r.to_integer())
    } else {
        s.collect_str(r)
    }
}

/// One inequality `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    pub applicable: bool,
    #[serde(serialize_with = "ratio_ser")]
    pub lhs: Rational,
    #[serde(serialize_with = "ratio_ser")]
    pub rhs: Rational,
    pub holds: bool,
    pub tight: bool,
}

impl BoundEntry {
    fn new(name: &'static str, applicable: bool, lhs: Rational, rhs: Rational) -> Self {
        BoundEntry { name, applicable, lhs, rhs, holds: lhs <= rhs, tight: applicable && lhs == rhs }
    }

    pub fn violated(&self) -> bool {
        self.applicable && !self.holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub entries: Vec<BoundEntry>,
    pub graph_profile: StructuralProfile,
    pub gamma_values: ParamValues,
}

impl BoundReport {
    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

/// Names of the entries of a [`BoundReport`], in report order.
pub const BOUND_NAMES: [&str; 8] =
    ["obs_lower", "obs_upper", "prop_3gamma", "obs_r2", "upp1", "upp2", "tree_lower", "tree_upper"];

fn int(x: impl Into<i64>) -> Rational {
    Rational::from_integer(x.into())
}

fn ceil_div(a: i64, b: i64) -> Rational {
    int(a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0))
}

fn precheck(g: &Graph) -> Result<StructuralProfile, BoundsError> {
    if g.order() < 2 {
        return Err(BoundsError::TooSmall);
    }
    let p = profile(g);
    if !p.is_connected {
        return Err(BoundsError::Disconnected);
    }
    Ok(p)
}

/// Evaluates every bound on a connected graph. Parameters are computed when
/// not supplied.
pub fn bound_report(g: &Graph, precomputed: Option<&ParamValues>) -> Result<BoundReport, BoundsError> {
    let p = precheck(g)?;
    let v = match precomputed {
        Some(v) => *v,
        None => ParamValues::compute(g, &SolverConfig::default())?,
    };
    let n = p.order as i64;
    let (big, small) = (p.max_degree as i64, p.min_degree as i64);
    let tr2 = int(v.tr2);
    let entries = vec![
        BoundEntry::new("obs_lower", true, int(v.total), tr2),
        BoundEntry::new("obs_upper", true, tr2, int(2 * v.total)),
        BoundEntry::new("prop_3gamma", true, tr2, int(3 * v.dom)),
        BoundEntry::new("obs_r2", true, int(v.r2), tr2),
        BoundEntry::new("upp1", p.girth.is_some_and(|g| g >= 6) && small >= 2, tr2, int(n + 2 - big - small)),
        BoundEntry::new("upp2", true, ceil_div(2 * n, big + 1), tr2),
        BoundEntry::new("tree_lower", p.is_tree, ceil_div(2 * (n - p.leaf_count as i64 + 3), 3), tr2),
        BoundEntry::new("tree_upper", p.is_tree && n >= 4, tr2, Rational::new(3 * n + 2 * p.support_count as i64, 4)),
    ];
    Ok(BoundReport { entries, graph_profile: p, gamma_values: v })
}

/// Outcome of [`check_upp1_corollary`]: a maximum-degree vertex `u` with a
/// neighbour `v` of degree above `δ`, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryCheck {
    pub holds: bool,
    pub counterexample: Option<(usize, usize)>,
}

/// When the girth/min-degree bound is attained, every neighbour of every
/// maximum-degree vertex has minimum degree.
pub fn check_upp1_corollary(g: &Graph, tr2: Option<u32>) -> Result<CorollaryCheck, BoundsError> {
    let p = precheck(g)?;
    if !(p.girth.is_some_and(|g| g >= 6) && p.min_degree >= 2) {
        return Err(BoundsError::NotApplicable("girth >= 6 and minimum degree >= 2"));
    }
    let value = match tr2 {
        Some(v) => v,
        None => solvers::gamma_tr2_exact(g, &SolverConfig::default())?.value,
    };
    if value as usize + p.max_degree + p.min_degree != p.order + 2 {
        return Err(BoundsError::NotApplicable("bound is not attained"));
    }
    let counterexample = (0..g.order())
        .filter(|&u| g.degree(u) == p.max_degree)
        .flat_map(|u| g.neighbors(u).iter().map(move |&v| (u, v)))
        .find(|&(_, v)| g.degree(v) != p.min_degree);
    Ok(CorollaryCheck { holds: counterexample.is_none(), counterexample })
}

/// When `γ_tR2 = 2n / (Δ + 1)` exactly, no optimal labeling uses the value 2.
/// Enumerates all optima, so `3^n` must stay within `cap`.
pub fn check_upp2_equality(g: &Graph, cap: u64) -> Result<bool, BoundsError> {
    let p = precheck(g)?;
    let optima = enumerate_optimal_tr2df(g, cap)?;
    if 2 * p.order != optima.value() as usize * (p.max_degree + 1) {
        return Err(BoundsError::NotApplicable("2n / (Δ + 1) is not the exact value"));
    }
    let mut optima = optima;
    Ok(optima.all(|f| f.values().iter().all(|&x| x != 2)))
}
