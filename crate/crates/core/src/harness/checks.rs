use std::cell::OnceCell;
use std::collections::HashMap;
use std::sync::Mutex;

use num_rational::Ratio;

use super::{canonical_tree_code, Check, CorpusItem, SweepConfig};
use crate::bounds::{self, bound_report, check_upp1_corollary, check_upp2_equality, ParamValues};
use crate::closed_forms::{classify, formula_value, is_corona_of_tree, ClassKind, Evidence};
use crate::graph::{encode_graph6, profile, FamilySpec, Graph, StructuralProfile};
use crate::labeling::{is_tr2df, Labeling};
use crate::reduction::{
    cover_to_labeling, is_bipartite, is_chordal, reduce, x3c_brute_force, Variant, X3CInstance, DEFAULT_SET_CAP,
};
use crate::solvers::{self, enumerate_optimal_tr2df, Method, SolveError, SolverConfig};
use crate::tree_dp::tree_gamma_tr2_with;

/// Result of one check on one corpus item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skip,
    Budget,
}

/// Order up to which `γ_tR2` is taken from plain exhaustive search.
const BRUTE_ORDER: usize = 12;
/// Trees from this order on reuse exhaustive-search results across
/// isomorphic copies.
const MEMO_ORDER: usize = 8;

/// State shared by all items of one sweep.
#[derive(Default)]
pub(crate) struct Shared {
    tree_values: Mutex<HashMap<Vec<u8>, u32>>,
    tree_params: Mutex<HashMap<Vec<u8>, ParamValues>>,
}

/// Lazily computed facts about one graph.
pub(crate) struct Facts<'a> {
    pub item: &'a CorpusItem,
    pub cfg: &'a SweepConfig,
    shared: &'a Shared,
    graph6: OnceCell<String>,
    profile: OnceCell<StructuralProfile>,
    tree_code: OnceCell<Option<Vec<u8>>>,
    tr2: OnceCell<Result<u32, SolveError>>,
    params: OnceCell<Result<ParamValues, SolveError>>,
    optima: OnceCell<Result<Vec<Labeling>, SolveError>>,
}

impl<'a> Facts<'a> {
    pub fn new(item: &'a CorpusItem, cfg: &'a SweepConfig, shared: &'a Shared) -> Self {
        Facts {
            item,
            cfg,
            shared,
            graph6: OnceCell::new(),
            profile: OnceCell::new(),
            tree_code: OnceCell::new(),
            tr2: OnceCell::new(),
            params: OnceCell::new(),
            optima: OnceCell::new(),
        }
    }

    fn g(&self) -> &'a Graph {
        &self.item.graph
    }

    pub fn graph6(&self) -> &str {
        self.graph6.get_or_init(|| encode_graph6(self.g()))
    }

    fn profile(&self) -> &StructuralProfile {
        self.profile.get_or_init(|| profile(self.g()))
    }

    /// Nontrivial connected: the standing hypothesis of every statement.
    fn ntc(&self) -> bool {
        let p = self.profile();
        p.is_connected && p.order >= 2
    }

    /// Canonical code of trees large enough to be memoized.
    fn tree_code(&self) -> Option<&[u8]> {
        self.tree_code
            .get_or_init(|| {
                let p = self.profile();
                (p.is_tree && p.order >= MEMO_ORDER).then(|| canonical_tree_code(self.g()))
            })
            .as_deref()
    }

    /// `γ_tR2` from a solver independent of the structural recognizers.
    fn tr2(&self) -> Result<u32, SolveError> {
        self.tr2
            .get_or_init(|| {
                let g = self.g();
                if g.order() <= BRUTE_ORDER && self.tree_code().is_some() {
                    return self.tree_oracle();
                }
                let method = if g.order() <= BRUTE_ORDER {
                    Method::BruteForce
                } else if self.profile().is_tree {
                    Method::TreeDP
                } else {
                    Method::BranchBound
                };
                let cfg = SolverConfig { force_method: Some(method), ..self.cfg.solver.clone() };
                solvers::gamma_tr2_exact(g, &cfg).map(|r| r.value)
            })
            .clone()
    }

    fn params(&self) -> Result<ParamValues, SolveError> {
        self.params
            .get_or_init(|| {
                let code = self.tree_code();
                if let Some(c) = code {
                    if let Some(v) = self.shared.tree_params.lock().expect("memo lock").get(c) {
                        return Ok(*v);
                    }
                }
                let g = self.g();
                let v = ParamValues {
                    tr2: self.tr2()?,
                    dom: solvers::gamma(g)?.value,
                    total: solvers::gamma_t(g)?.value,
                    r2: solvers::gamma_r2(g)?.value,
                    double: solvers::gamma_x2(g)?.value,
                };
                if let Some(c) = code {
                    self.shared.tree_params.lock().expect("memo lock").insert(c.to_vec(), v);
                }
                Ok(v)
            })
            .clone()
    }

    fn optima(&self) -> Result<&[Labeling], SolveError> {
        self.optima
            .get_or_init(|| Ok(enumerate_optimal_tr2df(self.g(), self.cfg.enumeration_cap)?.collect()))
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    /// Brute-force value for trees, memoized by isomorphism class.
    fn tree_oracle(&self) -> Result<u32, SolveError> {
        let g = self.g();
        let brute = || {
            let cfg = SolverConfig { force_method: Some(Method::BruteForce), ..self.cfg.solver.clone() };
            solvers::gamma_tr2_exact(g, &cfg).map(|r| r.value)
        };
        let Some(code) = self.tree_code() else { return brute() };
        if let Some(&v) = self.shared.tree_values.lock().expect("memo lock").get(code) {
            return Ok(v);
        }
        let v = brute()?;
        self.shared.tree_values.lock().expect("memo lock").insert(code.to_vec(), v);
        Ok(v)
    }
}

fn from_solve(e: SolveError) -> Outcome {
    match e {
        SolveError::BudgetExceeded { .. } => Outcome::Budget,
        SolveError::IsolatedVertex(_) | SolveError::CapExceeded { .. } | SolveError::TooLarge { .. } => Outcome::Skip,
        e => Outcome::Fail(format!("solver error: {e}")),
    }
}

macro_rules! attempt {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return from_solve(e),
        }
    };
}

fn fail_if(failures: Vec<String>) -> Outcome {
    if failures.is_empty() {
        Outcome::Pass
    } else {
        Outcome::Fail(failures.join("; "))
    }
}

/// Runs `check` on one item; tight bound names are appended to `tight`.
pub(crate) fn run_check(check: Check, facts: &Facts<'_>, tight: &mut Vec<&'static str>) -> Outcome {
    match check {
        Check::Bounds => check_bounds(facts, tight),
        Check::TreeBounds => check_tree_bounds(facts),
        Check::Characterizations => check_characterizations(facts),
        Check::PropPo => check_prop_po(facts),
        Check::EmptyV2 => check_empty_v2(facts),
        Check::DoubleEquiv => check_double_equiv(facts),
        Check::Formulas => check_formulas(facts),
        Check::DpOracle => check_dp_oracle(facts),
        Check::ReductionIff => Outcome::Skip,
    }
}

fn check_bounds(f: &Facts<'_>, tight: &mut Vec<&'static str>) -> Outcome {
    if !f.ntc() {
        return Outcome::Skip;
    }
    let params = attempt!(f.params());
    let report = match bound_report(f.g(), Some(&params)) {
        Ok(r) => r,
        Err(e) => return Outcome::Fail(format!("bound evaluation failed: {e}")),
    };
    let mut failures = Vec::new();
    for e in &report.entries {
        if e.violated() {
            failures.push(format!("{}: {} > {}", e.name, e.lhs, e.rhs));
        }
        if e.tight {
            tight.push(e.name);
        }
    }
    if report.entry("upp1").is_some_and(|e| e.tight) {
        match check_upp1_corollary(f.g(), Some(params.tr2)) {
            Ok(c) if c.holds => tight.push("upp1_corollary"),
            Ok(c) => failures.push(format!("upp1 corollary: vertex pair {:?}", c.counterexample)),
            Err(e) => failures.push(format!("upp1 corollary: {e}")),
        }
    }
    let p = f.profile();
    if 2 * p.order == params.tr2 as usize * (p.max_degree + 1) {
        match check_upp2_equality(f.g(), f.cfg.enumeration_cap) {
            Ok(true) => tight.push("upp2_equality"),
            Ok(false) => failures.push("upp2 equality: an optimum uses the value 2".into()),
            Err(bounds::BoundsError::Solve(SolveError::CapExceeded { .. })) => {}
            Err(e) => failures.push(format!("upp2 equality: {e}")),
        }
    }
    fail_if(failures)
}

fn check_tree_bounds(f: &Facts<'_>) -> Outcome {
    let p = f.profile();
    if !p.is_tree || p.order < 2 {
        return Outcome::Skip;
    }
    let v = attempt!(f.tr2()) as i64;
    let n = p.order as i64;
    let mut failures = Vec::new();
    let lower = (2 * (n - p.leaf_count as i64 + 3) + 2) / 3;
    if v < lower {
        failures.push(format!("tree lower bound: {v} < {lower}"));
    }
    if n >= 4 {
        let upper = Ratio::new(3 * n + 2 * p.support_count as i64, 4);
        let value = Ratio::from_integer(v);
        if value > upper {
            failures.push(format!("tree upper bound: {v} > {upper}"));
        }
        let corona = matches!(is_corona_of_tree(f.g()), Ok(Some(_)));
        if (value == upper) != corona {
            failures.push(format!("tree upper equality {} but corona {}", value == upper, corona));
        }
    }
    if let Some(FamilySpec::PendantPathTree(k)) = f.item.family {
        let bound = Ratio::new(2 * (k as i64 + 3), 3);
        if Ratio::from_integer(v) >= bound {
            failures.push(format!("pendant path tree {k}: {v} >= {bound}"));
        }
    }
    fail_if(failures)
}

/// Labeling certified by classification evidence, if the evidence carries one.
fn evidence_labeling(g: &Graph, ev: &Evidence) -> Option<Labeling> {
    let n = g.order();
    let mut f = Labeling::zeros(n);
    match *ev {
        Evidence::UniversalPair { u, v } => {
            f.set(u, 1);
            f.set(v, 1);
        }
        Evidence::UniversalVertex { u } => {
            f.set(u, 2);
            f.set(*g.neighbors(u).first()?, 1);
        }
        Evidence::Triple { vertices } => vertices.iter().for_each(|&v| f.set(v, 1)),
        Evidence::LeafSupport { .. } | Evidence::SmallGraph { .. } => f = Labeling::constant(n, 1),
        Evidence::Exact { ref witness, .. } => f = witness.clone(),
        Evidence::None => return None,
    }
    Some(f)
}

fn check_characterizations(f: &Facts<'_>) -> Outcome {
    if !f.ntc() {
        return Outcome::Skip;
    }
    let v = attempt!(f.tr2());
    let n = f.g().order() as u32;
    let c = match classify(f.g()) {
        Ok(c) => c,
        Err(e) => return Outcome::Fail(format!("classify failed: {e}")),
    };
    let mut failures = Vec::new();
    let is = |k| c.kind == k;
    if is(ClassKind::ValueTwo) != (v == 2) {
        failures.push(format!("value 2 characterization: kind {:?}, value {v}", c.kind));
    }
    if is(ClassKind::ValueThree) && v != 3 {
        failures.push(format!("classified ValueThree but value {v}"));
    }
    if v == 3 && n >= 5 && !is(ClassKind::ValueThree) {
        failures.push(format!("value 3 on {n} vertices but classified {:?}", c.kind));
    }
    if (is(ClassKind::ValueN) || c.also_value_n) != (v == n) {
        failures.push(format!("value n characterization: kind {:?}, value {v}, n {n}", c.kind));
    }
    if let Some(w) = evidence_labeling(f.g(), &c.evidence) {
        if !is_tr2df(f.g(), &w) {
            failures.push("evidence does not yield a TR2DF".into());
        }
    }
    if let Evidence::LeafSupport { pairs } = &c.evidence {
        if pairs.iter().any(|&(l, s)| f.g().degree(l) != 1 || !f.g().has_edge(l, s)) {
            failures.push("leaf/support evidence is wrong".into());
        }
    }
    fail_if(failures)
}

fn v2_size(f: &Labeling) -> usize {
    f.values().iter().filter(|&&x| x == 2).count()
}

fn check_prop_po(f: &Facts<'_>) -> Outcome {
    if !f.ntc() {
        return Outcome::Skip;
    }
    let optima = attempt!(f.optima());
    let g = f.g();
    let min_twos = optima.iter().map(v2_size).min().unwrap_or(0);
    let mut failures = Vec::new();
    for opt in optima.iter().filter(|o| v2_size(o) == min_twos) {
        let twos: Vec<usize> = (0..g.order()).filter(|&v| opt.get(v) == 2).collect();
        let mut v02 = 0;
        for w in (0..g.order()).filter(|&w| opt.get(w) == 0) {
            let seen: Vec<usize> = g.neighbors(w).iter().copied().filter(|&u| opt.get(u) == 2).collect();
            v02 += usize::from(!seen.is_empty());
        }
        for &v in &twos {
            let private = g
                .neighbors(v)
                .iter()
                .filter(|&&w| opt.get(w) == 0 && g.neighbors(w).iter().all(|&u| u == v || opt.get(u) != 2))
                .count();
            if private < 2 {
                failures.push(format!("optimum {opt}: vertex {v} has {private} private neighbours in V0"));
            }
        }
        if 2 * twos.len() > v02 {
            failures.push(format!("optimum {opt}: 2|V2| = {} > |V02| = {v02}", 2 * twos.len()));
        }
    }
    let p = f.profile();
    let supports = p.weak_supports.iter().chain(&p.strong_supports);
    for &s in supports {
        if optima.iter().any(|o| o.get(s) == 0) {
            failures.push(format!("support vertex {s} labeled 0 in an optimum"));
        }
    }
    for &s in &p.strong_supports {
        if !optima.iter().any(|o| o.get(s) == 2) {
            failures.push(format!("no optimum labels strong support {s} with 2"));
        }
    }
    failures.truncate(3);
    fail_if(failures)
}

fn check_empty_v2(f: &Facts<'_>) -> Outcome {
    if !f.ntc() || f.profile().max_degree > 2 {
        return Outcome::Skip;
    }
    let optima = attempt!(f.optima());
    if optima.iter().any(|o| v2_size(o) == 0) {
        Outcome::Pass
    } else {
        Outcome::Fail("every optimum uses the value 2".into())
    }
}

fn check_double_equiv(f: &Facts<'_>) -> Outcome {
    if !f.ntc() {
        return Outcome::Skip;
    }
    let params = attempt!(f.params());
    let optima = attempt!(f.optima());
    let mut failures = Vec::new();
    if params.tr2 > params.double {
        failures.push(format!("γ_tR2 = {} > γ_×2 = {}", params.tr2, params.double));
    }
    if optima.iter().any(|o| v2_size(o) == 0) && params.tr2 != params.double {
        failures.push(format!("optimum without 2s but γ_tR2 = {} != γ_×2 = {}", params.tr2, params.double));
    }
    fail_if(failures)
}

fn check_formulas(f: &Facts<'_>) -> Outcome {
    let Some(spec) = &f.item.family else { return Outcome::Skip };
    let Ok(want) = formula_value(spec) else { return Outcome::Skip };
    let got = attempt!(f.tr2());
    if got == want {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("{spec}: formula {want}, exact {got}"))
    }
}

fn check_dp_oracle(f: &Facts<'_>) -> Outcome {
    let p = f.profile();
    if !p.is_tree || p.order < 2 {
        return Outcome::Skip;
    }
    let want = attempt!(f.tree_oracle());
    match tree_gamma_tr2_with(f.g(), &f.cfg.dp_table) {
        Ok(r) if r.value == want => Outcome::Pass,
        Ok(r) => Outcome::Fail(format!("tree DP {} != brute force {want}", r.value)),
        Err(e) => Outcome::Fail(format!("tree DP failed: {e} (brute force {want})")),
    }
}

/// Deterministic X3C instances: every instance with `q = 1`, `t <= 1`; with
/// `q = 2`, `t <= 2`; and every nineteenth three-set collection for `q = 2`.
pub fn reduction_instances() -> Vec<X3CInstance> {
    let triples = |q: usize| -> Vec<[usize; 3]> {
        let m = 3 * q;
        (0..m).flat_map(|a| (a + 1..m).flat_map(move |b| (b + 1..m).map(move |c| [a, b, c]))).collect()
    };
    let mk = |q, sets: Vec<[usize; 3]>| X3CInstance::new(q, sets).expect("triples are valid");
    let mut out = vec![mk(1, vec![]), mk(1, vec![[0, 1, 2]]), mk(2, vec![])];
    let t2 = triples(2);
    out.extend(t2.iter().map(|&s| mk(2, vec![s])));
    for i in 0..t2.len() {
        for j in i + 1..t2.len() {
            out.push(mk(2, vec![t2[i], t2[j]]));
        }
    }
    let mut k = 0;
    for i in 0..t2.len() {
        for j in i + 1..t2.len() {
            for l in j + 1..t2.len() {
                if k % 19 == 0 {
                    out.push(mk(2, vec![t2[i], t2[j], t2[l]]));
                }
                k += 1;
            }
        }
    }
    out
}

/// Checks one instance: colourability and chordality of the two variants, the
/// forward direction whenever a cover exists, both directions when the gadget
/// graph is a forest, and a budgeted search otherwise.
pub(crate) fn check_reduction(inst: &X3CInstance, cfg: &SweepConfig) -> (Outcome, String) {
    let bip = reduce(inst, Variant::Bipartite);
    let cho = reduce(inst, Variant::Chordal);
    let graph6 = encode_graph6(&bip.graph);
    let mut failures = Vec::new();
    if !is_bipartite(&bip.graph) {
        failures.push("bipartite variant has an odd cycle".to_string());
    }
    if !is_chordal(&cho.graph) {
        failures.push("chordal variant is not chordal".to_string());
    }
    let cover = match x3c_brute_force(inst, DEFAULT_SET_CAP) {
        Ok(c) => c,
        Err(_) => return (Outcome::Skip, graph6),
    };
    if let Some(cover) = &cover {
        for red in [&bip, &cho] {
            match cover_to_labeling(inst, cover, red) {
                Ok(l) if l.weight() == red.k && is_tr2df(&red.graph, &l) => {}
                Ok(l) => failures.push(format!("{:?} cover labeling weight {} invalid or != k", red.variant, l.weight())),
                Err(e) => failures.push(e.to_string()),
            }
        }
    }
    let mut budget_hit = false;
    for red in [&bip, &cho] {
        let forest = crate::graph::is_forest(&red.graph);
        let value = if forest {
            tree_gamma_tr2_with(&red.graph, &crate::tree_dp::TransitionTable::standard())
                .map(|r| r.value)
                .map_err(|e| e.to_string())
        } else if cover.is_none() {
            let mut budget = cfg.solver.clone();
            budget.node_budget = Some(budget.node_budget.unwrap_or(REDUCTION_NODE_BUDGET));
            match solvers::branch_and_bound(&red.graph, &budget) {
                Ok(r) => Ok(r.value),
                Err(SolveError::BudgetExceeded { .. }) => {
                    budget_hit = true;
                    continue;
                }
                Err(e) => Err(e.to_string()),
            }
        } else {
            continue;
        };
        match value {
            Ok(v) if (v <= red.k) != cover.is_some() => failures.push(format!(
                "{:?}: γ_tR2 = {v}, k = {}, cover exists: {}",
                red.variant,
                red.k,
                cover.is_some()
            )),
            Ok(_) => {}
            Err(e) => failures.push(e),
        }
        if red.variant == Variant::Bipartite && cho.graph == bip.graph {
            break;
        }
    }
    let outcome = match (failures.is_empty(), budget_hit) {
        (false, _) => Outcome::Fail(failures.join("; ")),
        (true, true) => Outcome::Budget,
        (true, false) => Outcome::Pass,
    };
    (outcome, graph6)
}

const REDUCTION_NODE_BUDGET: u64 = 20_000;

