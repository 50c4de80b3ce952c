//! Exact solvers for `γ_tR2` and the companion parameters `γ`, `γ_t`,
//! `γ_R2`, `γ_×2`.
//!
//! Every solver returns a witness that passes the matching predicate from
//! [`crate::labeling`]. Disconnected inputs are solved per component and
//! summed.

mod bnb;
mod brute;
mod subsets;

pub use bnb::{branch_and_bound, greedy_tr2df};
pub use brute::{enumerate_optimal_tr2df, OptimalLabelings, DEFAULT_ENUMERATION_CAP};

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::closed_forms;
use crate::graph::{connected_components, Graph, VertexSet};
use crate::labeling::Labeling;
use crate::tree_dp::{self, TreeDpError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Method {
    ClosedForm,
    TreeDP,
    BruteForce,
    BranchBound,
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brute" => Ok(Method::BruteForce),
            "bb" => Ok(Method::BranchBound),
            "treedp" => Ok(Method::TreeDP),
            "closed" => Ok(Method::ClosedForm),
            _ => Err(format!("unknown method {s:?} (expected brute, bb, treedp or closed)")),
        }
    }
}

/// The five parameters this crate computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Param {
    /// `γ_tR2`, total Roman {2}-domination.
    Tr2,
    /// `γ`, domination.
    Dom,
    /// `γ_t`, total domination.
    Total,
    /// `γ_R2`, Roman {2}-domination.
    R2,
    /// `γ_×2`, double domination.
    Double,
}

impl Param {
    pub const ALL: [Param; 5] = [Param::Tr2, Param::Dom, Param::Total, Param::R2, Param::Double];

    pub fn name(self) -> &'static str {
        match self {
            Param::Tr2 => "tr2",
            Param::Dom => "dom",
            Param::Total => "total",
            Param::R2 => "r2",
            Param::Double => "double",
        }
    }

    /// Parameters that are undefined in the presence of an isolated vertex.
    pub fn needs_min_degree_one(self) -> bool {
        matches!(self, Param::Tr2 | Param::Total | Param::Double)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Param::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown parameter {s:?} (expected tr2, dom, total, r2 or double)"))
    }
}

/// Optimal labeling, or optimal vertex set for the set parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Labeling(Labeling),
    Set(VertexSet),
}

impl Witness {
    pub fn as_labeling(&self) -> Option<&Labeling> {
        match self {
            Witness::Labeling(f) => Some(f),
            Witness::Set(_) => None,
        }
    }

    pub fn as_set(&self) -> Option<&VertexSet> {
        match self {
            Witness::Set(s) => Some(s),
            Witness::Labeling(_) => None,
        }
    }

    /// Weight of a labeling or size of a set.
    pub fn value(&self) -> u32 {
        match self {
            Witness::Labeling(f) => f.weight(),
            Witness::Set(s) => s.len() as u32,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveResult {
    pub value: u32,
    pub witness: Witness,
    pub method: Method,
    #[serde(rename = "nodes")]
    pub nodes_explored: u64,
    #[serde(rename = "millis", serialize_with = "as_millis")]
    pub elapsed: Duration,
}

fn as_millis<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

impl SolveResult {
    pub fn labeling(&self) -> &Labeling {
        self.witness.as_labeling().expect("labeling witness")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolverConfig {
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    pub force_method: Option<Method>,
}

impl SolverConfig {
    pub fn forced(method: Method) -> Self {
        SolverConfig { force_method: Some(method), ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("vertex {0} is isolated; the parameter is undefined")]
    IsolatedVertex(usize),
    #[error("search budget exhausted; best labeling found has weight {}", .incumbent.value)]
    BudgetExceeded { incumbent: Box<SolveResult> },
    #[error("{method:?} cannot handle graphs of order {n} (limit {limit})")]
    TooLarge { method: Method, n: usize, limit: usize },
    #[error("exhaustive enumeration would visit 3^{n} labelings, above the cap of {cap}")]
    CapExceeded { n: usize, cap: u64 },
    #[error("no closed form is known for this graph")]
    NoKnownFormula,
    #[error("{0:?} does not support parameter {1}")]
    Unsupported(Method, Param),
    #[error(transparent)]
    TreeDp(#[from] TreeDpError),
}

/// Node and wall-clock limits shared by the exhaustive searches.
pub(crate) struct Budget {
    pub nodes: u64,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
}

pub(crate) struct Exhausted;

impl Budget {
    pub fn new(cfg: &SolverConfig) -> Self {
        Budget {
            nodes: 0,
            node_limit: cfg.node_budget,
            deadline: cfg.time_budget.map(|d| Instant::now() + d),
        }
    }

    pub fn unlimited() -> Self {
        Budget { nodes: 0, node_limit: None, deadline: None }
    }

    #[inline]
    pub fn tick(&mut self) -> Result<(), Exhausted> {
        self.nodes += 1;
        if self.node_limit.is_some_and(|l| self.nodes > l) {
            return Err(Exhausted);
        }
        if self.nodes & 0x3ff == 0 && self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Exhausted);
        }
        Ok(())
    }
}

fn check_isolated(g: &Graph, param: Param) -> Result<(), SolveError> {
    if param.needs_min_degree_one() {
        if let Some(v) = g.isolated_vertex() {
            return Err(SolveError::IsolatedVertex(v));
        }
    }
    Ok(())
}

/// Solves each component with `solve` and stitches values and witnesses.
fn per_component<F>(g: &Graph, mut solve: F) -> Result<SolveResult, SolveError>
where
    F: FnMut(&Graph) -> Result<SolveResult, SolveError>,
{
    let comps = connected_components(g);
    if comps.len() == 1 {
        return solve(g);
    }
    let start = Instant::now();
    let n = g.order();
    let mut value = 0;
    let mut nodes = 0;
    let mut method = Method::ClosedForm;
    let mut labels: Option<Labeling> = None;
    let mut set: Option<VertexSet> = None;
    for comp in &comps {
        let sub = g.induced(comp);
        let r = match solve(&sub) {
            Ok(r) => r,
            Err(SolveError::BudgetExceeded { .. }) => {
                // Incumbents of individual components do not combine into a
                // meaningful global incumbent unless all were found.
                return Err(budget_fallback(g, start));
            }
            Err(e) => return Err(e),
        };
        value += r.value;
        nodes += r.nodes_explored;
        method = method.max(r.method);
        match r.witness {
            Witness::Labeling(f) => {
                let out = labels.get_or_insert_with(|| Labeling::zeros(n));
                for (i, &v) in comp.iter().enumerate() {
                    out.set(v, f.get(i));
                }
            }
            Witness::Set(s) => {
                set.get_or_insert_with(VertexSet::new).extend(s.iter().map(|&i| comp[i]));
            }
        }
    }
    let witness = match (labels, set) {
        (Some(f), _) => Witness::Labeling(f),
        (None, Some(s)) => Witness::Set(s),
        (None, None) => unreachable!("at least one component"),
    };
    Ok(SolveResult { value, witness, method, nodes_explored: nodes, elapsed: start.elapsed() })
}

fn budget_fallback(g: &Graph, start: Instant) -> SolveError {
    let f = greedy_tr2df(g);
    SolveError::BudgetExceeded {
        incumbent: Box::new(SolveResult {
            value: f.weight(),
            witness: Witness::Labeling(f),
            method: Method::BranchBound,
            nodes_explored: 0,
            elapsed: start.elapsed(),
        }),
    }
}

/// `γ_tR2(G)` with method dispatch: closed form when the component matches a
/// proven family, tree DP on trees, branch and bound otherwise.
pub fn gamma_tr2_exact(g: &Graph, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    check_isolated(g, Param::Tr2)?;
    match cfg.force_method {
        Some(Method::BruteForce) => per_component(g, |c| brute::gamma_tr2(c, &mut Budget::new(cfg))),
        Some(Method::BranchBound) => per_component(g, |c| branch_and_bound(c, cfg)),
        Some(Method::TreeDP) => Ok(tree_dp::tree_gamma_tr2(g)?),
        Some(Method::ClosedForm) => per_component(g, |c| {
            closed_forms::closed_form_solution(c).ok_or(SolveError::NoKnownFormula)
        }),
        None => per_component(g, |c| auto_component(c, cfg)),
    }
}

fn auto_component(c: &Graph, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    if let Some(r) = closed_forms::closed_form_solution(c) {
        return Ok(r);
    }
    if c.size() + 1 == c.order() {
        return Ok(tree_dp::tree_gamma_tr2(c)?);
    }
    branch_and_bound(c, cfg)
}

/// `γ(G)`: smallest dominating set.
pub fn gamma(g: &Graph) -> Result<SolveResult, SolveError> {
    per_component(g, |c| subsets::smallest_set(c, subsets::SetKind::Dominating))
}

/// `γ_t(G)`: smallest total dominating set.
pub fn gamma_t(g: &Graph) -> Result<SolveResult, SolveError> {
    check_isolated(g, Param::Total)?;
    per_component(g, |c| subsets::smallest_set(c, subsets::SetKind::TotalDominating))
}

/// `γ_×2(G)`: smallest double dominating set.
pub fn gamma_x2(g: &Graph) -> Result<SolveResult, SolveError> {
    check_isolated(g, Param::Double)?;
    per_component(g, |c| subsets::smallest_set(c, subsets::SetKind::DoubleDominating))
}

/// `γ_R2(G)`: minimum weight Roman {2}-dominating function.
pub fn gamma_r2(g: &Graph) -> Result<SolveResult, SolveError> {
    per_component(g, |c| brute::gamma_r2(c, &mut Budget::unlimited()))
}

/// Dispatches on the parameter. Only `γ_tR2` honours `cfg.force_method`
/// beyond brute force; the set parameters always use cardinality search.
pub fn solve(g: &Graph, param: Param, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    match (param, cfg.force_method) {
        (Param::Tr2, _) => gamma_tr2_exact(g, cfg),
        (_, Some(m @ (Method::TreeDP | Method::ClosedForm | Method::BranchBound))) => {
            Err(SolveError::Unsupported(m, param))
        }
        (Param::Dom, _) => gamma(g),
        (Param::Total, _) => gamma_t(g),
        (Param::R2, _) => gamma_r2(g),
        (Param::Double, _) => gamma_x2(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_graph6, FamilySpec};
    use crate::labeling::{check_r2f, check_tr2df, is_tr2df};

    fn gen(spec: FamilySpec) -> Graph {
        spec.generate().unwrap()
    }

    fn petersen() -> Graph {
        parse_graph6(b"IheA@GUAo").unwrap()
    }

    fn tr2(g: &Graph, m: Method) -> u32 {
        let r = gamma_tr2_exact(g, &SolverConfig::forced(m)).unwrap();
        assert!(is_tr2df(g, r.labeling()));
        assert_eq!(r.labeling().weight(), r.value);
        r.value
    }

    #[test]
    fn gamma_tr2_examples() {
        let p5 = gen(FamilySpec::Path(5));
        assert_eq!(tr2(&p5, Method::BruteForce), 4);
        assert_eq!(tr2(&p5, Method::BranchBound), 4);
        let c6 = gen(FamilySpec::Cycle(6));
        assert_eq!(tr2(&c6, Method::BruteForce), 4);
        assert_eq!(tr2(&c6, Method::BranchBound), 4);
        let bridge = gen(FamilySpec::TwoStarBridge(4, 4));
        assert_eq!(tr2(&bridge, Method::BruteForce), 6);
        assert_eq!(gamma(&bridge).unwrap().value, 2);
    }

    #[test]
    fn petersen_regression() {
        // Frozen from brute force over all 3^10 labelings.
        let g = petersen();
        assert_eq!(tr2(&g, Method::BruteForce), PETERSEN_TR2);
        assert_eq!(tr2(&g, Method::BranchBound), PETERSEN_TR2);
        let auto = gamma_tr2_exact(&g, &SolverConfig::default()).unwrap();
        assert_eq!(auto.value, PETERSEN_TR2);
        assert_eq!(auto.method, Method::BranchBound);
    }

    const PETERSEN_TR2: u32 = 6;

    #[test]
    fn brute_force_witness_is_lexicographically_smallest() {
        let p4 = gen(FamilySpec::Path(4));
        let r = gamma_tr2_exact(&p4, &SolverConfig::forced(Method::BruteForce)).unwrap();
        assert_eq!(r.labeling().values(), &[0, 2, 1, 1]);
        let c3 = gen(FamilySpec::Cycle(3));
        let r = gamma_tr2_exact(&c3, &SolverConfig::forced(Method::BruteForce)).unwrap();
        assert_eq!(r.labeling().values(), &[0, 1, 1]);
    }

    #[test]
    fn set_parameter_examples() {
        let p7 = gen(FamilySpec::Path(7));
        let r = gamma_x2(&p7).unwrap();
        assert_eq!(r.value, 6);
        assert!(crate::labeling::check_double_dominating(&p7, r.witness.as_set().unwrap()));
        let s33 = gen(FamilySpec::DoubleStar(3, 3));
        assert_eq!(gamma_t(&s33).unwrap().value, 2);
        assert_eq!(tr2(&s33, Method::BruteForce), 4);
        let r2 = gamma_r2(&s33).unwrap();
        assert_eq!(r2.value, 4);
        assert!(check_r2f(&s33, r2.labeling()).is_ok());
    }

    #[test]
    fn isolated_vertices_are_rejected() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(gamma_tr2_exact(&g, &SolverConfig::default()), Err(SolveError::IsolatedVertex(2)));
        assert!(matches!(gamma_t(&g), Err(SolveError::IsolatedVertex(2))));
        assert!(matches!(gamma_x2(&g), Err(SolveError::IsolatedVertex(2))));
        assert_eq!(gamma(&g).unwrap().value, 2);
        assert_eq!(gamma_r2(&g).unwrap().value, 3);
    }

    #[test]
    fn disconnected_graphs_sum_components() {
        let g = gen(FamilySpec::Path(5)).disjoint_union(&gen(FamilySpec::Cycle(6)));
        for m in [Method::BruteForce, Method::BranchBound] {
            let r = gamma_tr2_exact(&g, &SolverConfig::forced(m)).unwrap();
            assert_eq!(r.value, 8);
            assert!(check_tr2df(&g, r.labeling()).is_ok());
        }
        let auto = gamma_tr2_exact(&g, &SolverConfig::default()).unwrap();
        assert_eq!(auto.value, 8);
        let two_k2 = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(gamma_t(&two_k2).unwrap().value, 4);
        assert_eq!(gamma(&two_k2).unwrap().value, 2);
    }

    #[test]
    fn forced_tree_dp_rejects_cycles() {
        let c5 = gen(FamilySpec::Cycle(5));
        assert!(matches!(
            gamma_tr2_exact(&c5, &SolverConfig::forced(Method::TreeDP)),
            Err(SolveError::TreeDp(TreeDpError::NotForest))
        ));
        assert_eq!(
            gamma_tr2_exact(&petersen(), &SolverConfig::forced(Method::ClosedForm)),
            Err(SolveError::NoKnownFormula)
        );
    }

    #[test]
    fn parse_names() {
        assert_eq!("bb".parse::<Method>().unwrap(), Method::BranchBound);
        assert_eq!("double".parse::<Param>().unwrap(), Param::Double);
        assert!("x".parse::<Param>().is_err());
    }
}
